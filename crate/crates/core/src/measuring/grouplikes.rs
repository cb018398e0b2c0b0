use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algcore::Coalgebra;
use crate::exactlin::{intersect, kernel, Field, Mat, Scalar, Subspace};

use super::MeasError;

/// `T_i(c) = Σ e_i*(c₁) c₂`, the left action of the dual basis functional.
fn left_translation(c: &Coalgebra, i: usize) -> Mat {
    let d = c.dim();
    Mat::from_fn(c.field(), d, d, |r, s| c.comult().get(i * d + r, s).clone())
}

/// All grouplike elements of `c`, as coordinate vectors.
///
/// A grouplike `g` is a common eigenvector of every `T_i` with eigenvalue
/// `g_i`; conversely a joint eigenspace is spanned by one grouplike. The
/// joint eigenspaces are refined one functional at a time, trying every
/// field element over `𝔽_p` and every rational root of the characteristic
/// polynomial over ℚ.
pub fn grouplikes(c: &Coalgebra) -> Result<Vec<Vec<Scalar>>, MeasError> {
    let f = c.field();
    let d = c.dim();
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut spaces = vec![Subspace::full(f, d)];
    for i in 0..d {
        let t = left_translation(c, i);
        let cands = eigenvalue_candidates(&t)?;
        let mut next = Vec::new();
        for s in &spaces {
            if s.dim() == 1 {
                let v = s.basis().row_slice(0);
                let tv = t.mul(&Mat::column(f, v.to_vec())).col_vec(0);
                if is_multiple(f, &tv, v) {
                    next.push(s.clone());
                }
                continue;
            }
            for lam in &cands {
                let shifted = t.sub(&Mat::identity(f, d).scale(lam));
                let e = intersect(s, &kernel(&shifted))?;
                if e.dim() > 0 {
                    next.push(e);
                }
            }
        }
        spaces = next;
        if spaces.is_empty() {
            return Ok(Vec::new());
        }
    }
    let mut out = Vec::new();
    for s in spaces {
        for r in 0..s.dim() {
            let v = s.basis().row_slice(r).to_vec();
            let eps = dot(f, c.counit().row_slice(0), &v);
            let Some(inv) = f.inv(&eps) else { continue };
            let g: Vec<Scalar> = v.iter().map(|x| f.mul(x, &inv)).collect();
            if is_grouplike(c, &g) && !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out.sort_by_key(|g: &Vec<Scalar>| g.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    Ok(out)
}

fn dot(f: Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        f.mul_add_assign(&mut acc, x, y);
    }
    acc
}

fn is_multiple(f: Field, tv: &[Scalar], v: &[Scalar]) -> bool {
    let Some(p) = v.iter().position(|x| !x.is_zero()) else {
        return true;
    };
    let lam = f.div(&tv[p], &v[p]).expect("nonzero pivot");
    tv.iter().zip(v).all(|(a, b)| *a == f.mul(&lam, b))
}

pub fn is_grouplike(c: &Coalgebra, g: &[Scalar]) -> bool {
    let f = c.field();
    let col = Mat::column(f, g.to_vec());
    let dg = c.comult().mul(&col);
    let gg = col.kron(&col);
    dg == gg && dot(f, c.counit().row_slice(0), g).is_one()
}

fn eigenvalue_candidates(t: &Mat) -> Result<Vec<Scalar>, MeasError> {
    let f = t.field();
    if let Some(elems) = f.elements() {
        return Ok(elems);
    }
    let poly = char_poly(t);
    Ok(rational_roots(&poly)?.into_iter().map(Scalar::rat).collect())
}

/// Characteristic polynomial `det(λ - T)` by Faddeev–LeVerrier; coefficient
/// of `λ^k` at index `k`.
fn char_poly(t: &Mat) -> Vec<BigRational> {
    let f = t.field();
    let n = t.rows();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = Mat::zeros(f, n, n);
    for k in 1..=n {
        let c = Scalar::rat(coeffs[n - k + 1].clone());
        m = t.mul(&m).add(&Mat::identity(f, n).scale(&c));
        let am = t.mul(&m);
        let mut tr = BigRational::zero();
        for i in 0..n {
            tr += am.get(i, i).as_rational().expect("rational entries");
        }
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    coeffs
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, MeasError> {
    let n = n.abs();
    let v = n
        .to_u64()
        .filter(|&v| v <= DIVISOR_LIMIT)
        .ok_or_else(|| MeasError::Unsupported(format!("rational root search on coefficient {n}")))?;
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= v {
        if v % i == 0 {
            out.push(BigInt::from(i));
            if i * i != v {
                out.push(BigInt::from(v / i));
            }
        }
        i += 1;
    }
    Ok(out)
}

fn rational_roots(poly: &[BigRational]) -> Result<Vec<BigRational>, MeasError> {
    // Scale to integer coefficients.
    let lcm = poly
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = poly.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(BigRational::zero());
    }
    let reduced = &ints[low..];
    if reduced.len() <= 1 {
        return Ok(roots);
    }
    let lead = reduced.last().expect("nonempty");
    for p in divisors(&reduced[0])? {
        for q in divisors(lead)? {
            for sign in [1, -1] {
                let r = BigRational::new(BigInt::from(sign) * &p, q.clone());
                if eval(reduced, &r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    Ok(roots)
}

fn eval(coeffs: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}
