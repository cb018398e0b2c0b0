use std::collections::HashMap;

use crate::algcore::Coalgebra;
use crate::exactlin::{Field, Mat, Scalar};

use super::largest::SparseCoalgebra;
use super::MeasError;

/// A word `φ₀ v₁ φ₁ … v_k φ_k`: points by index, arrows by coordinate of `V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Word {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    fn slice(&self, from: usize, to: usize) -> Word {
        Word {
            vertices: self.vertices[from..=to].to_vec(),
            arrows: self.arrows[from..to].to_vec(),
        }
    }
}

/// Truncated pointed cofree coalgebra on `V` with a given set of points.
///
/// Basis: words of length `≤ n` in the quiver whose vertices are the points
/// and whose arrows `φ → ψ` are a basis of `V_{φψ}`: all of `V` when `φ = ψ`,
/// and otherwise the coordinate complement of `span(φ − ψ)` (drop the
/// coordinate of the first nonzero entry of `φ − ψ`). The difference
/// `g_φ − g_ψ` already projects onto `φ − ψ`, so this keeps the projection
/// injective on skew-primitives. `Δ` is deconcatenation at vertices,
/// `ε` picks out length-0 words, `proj` sends `g_φ ↦ φ`, an arrow word to
/// its coordinate vector and longer words to 0.
///
/// Words are ordered by length, so the truncation at `n` is a coordinate
/// prefix of the one at `n + 1`.
#[derive(Clone, Debug)]
pub struct PathCoalgebra {
    field: Field,
    v_dim: usize,
    degree: usize,
    points: Vec<Vec<Scalar>>,
    arrows: Vec<Vec<Vec<usize>>>,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl PathCoalgebra {
    pub fn new(field: Field, v_dim: usize, points: Vec<Vec<Scalar>>, n: usize) -> Result<PathCoalgebra, MeasError> {
        let s = points.len();
        for (i, p) in points.iter().enumerate() {
            if p.len() != v_dim {
                return Err(MeasError::DimMismatch(format!("point {i} has length {}", p.len())));
            }
            if points[..i].contains(p) {
                return Err(MeasError::DimMismatch(format!("point {i} is repeated")));
            }
        }
        let mut arrows = vec![vec![Vec::new(); s]; s];
        for i in 0..s {
            for j in 0..s {
                let drop = if i == j {
                    None
                } else {
                    (0..v_dim).find(|&c| points[i][c] != points[j][c])
                };
                arrows[i][j] = (0..v_dim).filter(|&c| Some(c) != drop).collect();
            }
        }
        let mut words: Vec<Word> = (0..s)
            .map(|i| Word {
                vertices: vec![i],
                arrows: Vec::new(),
            })
            .collect();
        let mut layer_start = 0;
        for _ in 0..n {
            let layer_end = words.len();
            for w in layer_start..layer_end {
                let last = *words[w].vertices.last().expect("nonempty word");
                for (j, arr) in arrows[last].iter().enumerate() {
                    for &a in arr {
                        let mut nw = words[w].clone();
                        nw.arrows.push(a);
                        nw.vertices.push(j);
                        words.push(nw);
                    }
                }
            }
            layer_start = layer_end;
        }
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Ok(PathCoalgebra {
            field,
            v_dim,
            degree: n,
            points,
            arrows,
            words,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn points(&self) -> &[Vec<Scalar>] {
        &self.points
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word_index(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Basis of `V_{φψ}` as coordinates of `V`.
    pub fn arrow_coordinates(&self, from: usize, to: usize) -> &[usize] {
        &self.arrows[from][to]
    }

    /// Index of the grouplike `g_φ`.
    pub fn grouplike(&self, point: usize) -> usize {
        point
    }

    pub fn label(&self, i: usize) -> String {
        let w = &self.words[i];
        let mut s = format!("g{}", w.vertices[0]);
        for (a, v) in w.arrows.iter().zip(&w.vertices[1..]) {
            s.push_str(&format!(".v{a}.g{v}"));
        }
        s
    }

    /// `proj(e_i)` as a sparse vector of `V`.
    pub fn proj_of(&self, i: usize) -> Vec<(usize, Scalar)> {
        let w = &self.words[i];
        match w.len() {
            0 => self.points[w.vertices[0]]
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(c, s)| (c, s.clone()))
                .collect(),
            1 => vec![(w.arrows[0], self.field.one())],
            _ => Vec::new(),
        }
    }

    /// `proj` as a `dim(V) × dim` matrix.
    pub fn proj(&self) -> Mat {
        let mut m = Mat::zeros(self.field, self.v_dim, self.words.len());
        for i in 0..self.words.len() {
            for (c, s) in self.proj_of(i) {
                m.set(c, i, s);
            }
        }
        m
    }

    /// Dense validated coalgebra; only sensible for small truncations.
    pub fn to_coalgebra(&self) -> Result<Coalgebra, MeasError> {
        let f = self.field;
        let d = self.words.len();
        let mut comult = Mat::zeros(f, d * d, d);
        let mut counit = Mat::zeros(f, 1, d);
        for i in 0..d {
            for (l, r, s) in self.comult_of(i) {
                comult.set(l * d + r, i, s);
            }
            counit.set(0, i, self.counit_of(i));
        }
        let labels = (0..d).map(|i| self.label(i)).collect();
        Ok(Coalgebra::new("T", f, labels, comult, counit)?)
    }
}

impl SparseCoalgebra for PathCoalgebra {
    fn field(&self) -> Field {
        self.field
    }

    fn dim(&self) -> usize {
        self.words.len()
    }

    fn comult_of(&self, i: usize) -> Vec<(usize, usize, Scalar)> {
        let w = &self.words[i];
        let k = w.len();
        (0..=k)
            .map(|j| {
                let l = self.index[&w.slice(0, j)];
                let r = self.index[&w.slice(j, k)];
                (l, r, self.field.one())
            })
            .collect()
    }

    fn counit_of(&self, i: usize) -> Scalar {
        if self.words[i].is_empty() {
            self.field.one()
        } else {
            self.field.zero()
        }
    }
}

/// The truncated pointed cofree coalgebra as a dense coalgebra with its
/// projection `T → V`.
pub fn pointed_cofree_truncation(
    field: Field,
    v_dim: usize,
    points: Vec<Vec<Scalar>>,
    n: usize,
) -> Result<(Coalgebra, Mat), MeasError> {
    let t = PathCoalgebra::new(field, v_dim, points, n)?;
    Ok((t.to_coalgebra()?, t.proj()))
}
