//! Sparse accumulation used by the axiom checkers, which only ever touch the
//! nonzero structure constants.

use std::collections::BTreeMap;

use crate::exactlin::{Field, Mat, Scalar};

/// Nonzero entries of every column: `cols[j] = [(row, value), ...]`.
pub(crate) fn sparse_cols(m: &Mat) -> Vec<Vec<(usize, Scalar)>> {
    let mut out = vec![Vec::new(); m.cols()];
    for i in 0..m.rows() {
        for (j, s) in m.row_slice(i).iter().enumerate() {
            if !s.is_zero() {
                out[j].push((i, s.clone()));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct SparseVec(BTreeMap<usize, Scalar>);

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec(BTreeMap::new())
    }

    pub fn add(&mut self, f: Field, idx: usize, v: Scalar) {
        if v.is_zero() {
            return;
        }
        match self.0.get_mut(&idx) {
            Some(cur) => {
                *cur = f.add(cur, &v);
                if cur.is_zero() {
                    self.0.remove(&idx);
                }
            }
            None => {
                self.0.insert(idx, v);
            }
        }
    }

    pub fn is_unit_at(&self, idx: usize) -> bool {
        self.0.len() == 1 && self.0.get(&idx).is_some_and(Scalar::is_one)
    }
}
