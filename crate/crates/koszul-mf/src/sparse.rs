//! Sparse matrices over `Scalar` with exact rank, kernel and solve.
//!
//! Elimination uses the fraction-free Bareiss update (pivot*a - b*c divided by
//! the previous pivot, an exact division) with deterministic pivoting: columns
//! are scanned left to right and the candidate with the lowest row index wins.

use crate::scalar::Scalar;
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Row-count, column-count and nonzero triples. Invariants: indices in range,
/// stored entries nonzero, no duplicate (row, col) pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut m = SparseMatrix::zero(rows, cols);
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::IndexOutOfRange(r.max(c)));
            }
            if v.is_zero() {
                continue;
            }
            if m.entries.insert((r, c), v).is_some() {
                return Err(Error::Parse(format!("duplicate entry at ({r}, {c})")));
            }
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = SparseMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if *v != 0 {
                    m.set(i, j, Scalar::from_int(*v));
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Set an entry, dropping it if the value is zero.
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zero(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            t.entries.insert((c, r), v.clone());
        }
        t
    }

    /// All scalars must live in one field: rationals mix with at most one
    /// cyclotomic conductor.
    pub fn validate_field(&self) -> Result<Option<u32>> {
        let mut cond: Option<u32> = None;
        for (_, _, v) in self.iter() {
            if let Some(d) = v.conductor() {
                match cond {
                    None => cond = Some(d),
                    Some(e) if e == d => {}
                    Some(_) => return Err(Error::IncompatibleScalarFields),
                }
            }
        }
        Ok(cond)
    }

    pub fn matmul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = SparseMatrix::zero(self.rows, other.cols);
        // index rhs rows once
        let mut rhs_rows: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (r, c, v) in other.iter() {
            rhs_rows.entry(r).or_default().push((c, v));
        }
        for (r, k, a) in self.iter() {
            if let Some(row) = rhs_rows.get(&k) {
                for (c, b) in row {
                    let cur = out.get(r, *c);
                    out.set(r, *c, cur + a * *b);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Scalar::zero(); self.rows];
        for (r, c, a) in self.iter() {
            if !v[c].is_zero() {
                out[r] += &(a * &v[c]);
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            out.set(r, c, v * s);
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (r, c, v) in other.iter() {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Rank over the coefficient field.
    pub fn rank(&self) -> Result<usize> {
        self.validate_field()?;
        Ok(self.echelon().pivots.len())
    }

    /// A basis of ker(m); size is cols - rank. Vectors satisfy m.v = 0 exactly.
    pub fn kernel_basis(&self) -> Result<Vec<Vec<Scalar>>> {
        self.validate_field()?;
        let ech = self.echelon();
        let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut x = vec![Scalar::zero(); self.cols];
            x[free] = Scalar::one();
            // back-substitute through echelon rows in reverse pivot order
            for (row_idx, pc) in ech.pivots.iter().rev() {
                let row = &ech.rows[*row_idx];
                let mut s = Scalar::zero();
                for (c, v) in row {
                    if *c != *pc && !x[*c].is_zero() {
                        s += &(v * &x[*c]);
                    }
                }
                if !s.is_zero() {
                    let pv = row.get(pc).expect("pivot entry");
                    x[*pc] = -(s / pv.clone());
                }
            }
            debug_assert!(self.apply(&x).iter().all(|v| v.is_zero()));
            basis.push(x);
        }
        Ok(basis)
    }

    /// Solve m.x = b exactly, returning any solution if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        assert_eq!(b.len(), self.rows);
        self.validate_field()?;
        // eliminate on the augmented matrix
        let mut aug = SparseMatrix::zero(self.rows, self.cols + 1);
        for (r, c, v) in self.iter() {
            aug.entries.insert((r, c), v.clone());
        }
        for (r, v) in b.iter().enumerate() {
            if !v.is_zero() {
                aug.entries.insert((r, self.cols), v.clone());
            }
        }
        let ech = aug.echelon();
        // inconsistent iff some pivot sits in the augmented column
        if ech.pivots.iter().any(|&(_, c)| c == self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row_idx, pc) in ech.pivots.iter().rev() {
            let row = &ech.rows[*row_idx];
            let mut s = row.get(&self.cols).cloned().unwrap_or_else(Scalar::zero);
            for (c, v) in row {
                if *c != *pc && *c != self.cols && !x[*c].is_zero() {
                    s -= &(v * &x[*c]).clone();
                }
            }
            if !s.is_zero() {
                let pv = row.get(pc).expect("pivot entry");
                x[*pc] = s / pv.clone();
            }
        }
        debug_assert_eq!(self.apply(&x), b.to_vec());
        Ok(Some(x))
    }

    /// Exact inverse by Gauss-Jordan elimination on the augmented matrix;
    /// None when singular.
    pub fn inverse(&self) -> Result<Option<SparseMatrix>> {
        assert_eq!(self.rows, self.cols, "inverse needs a square matrix");
        self.validate_field()?;
        let n = self.rows;
        let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); n];
        for (r, c, v) in self.iter() {
            rows[r].insert(c, v.clone());
        }
        for (r, row) in rows.iter_mut().enumerate() {
            row.insert(n + r, Scalar::one());
        }
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
        let mut used = vec![false; n];
        for col in 0..n {
            let Some(p) = (0..n).find(|&r| !used[r] && rows[r].contains_key(&col)) else {
                return Ok(None);
            };
            used[p] = true;
            pivot_of_col[col] = Some(p);
            let inv = rows[p].get(&col).unwrap().inv();
            let normalized: BTreeMap<usize, Scalar> =
                rows[p].iter().map(|(c, v)| (*c, v * &inv)).collect();
            rows[p] = normalized;
            let pivot_row = rows[p].clone();
            for r in 0..n {
                if r == p {
                    continue;
                }
                let Some(factor) = rows[r].get(&col).cloned() else {
                    continue;
                };
                for (c, w) in &pivot_row {
                    let delta = &factor * w;
                    match rows[r].remove(c) {
                        Some(cur) => {
                            let upd = cur - &delta;
                            if !upd.is_zero() {
                                rows[r].insert(*c, upd);
                            }
                        }
                        None => {
                            rows[r].insert(*c, -delta);
                        }
                    }
                }
            }
        }
        let mut out = SparseMatrix::zero(n, n);
        for col in 0..n {
            let p = pivot_of_col[col].unwrap();
            for (c, v) in &rows[p] {
                if *c >= n {
                    out.set(col, *c - n, v.clone());
                }
            }
        }
        Ok(Some(out))
    }

    /// Sparse fraction-free elimination. Returns echelon rows plus the pivot
    /// list in elimination order.
    fn echelon(&self) -> Echelon {
        let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); self.rows];
        for (r, c, v) in self.iter() {
            rows[r].insert(c, v.clone());
        }
        let mut used = vec![false; self.rows];
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut prev_pivot = Scalar::one();
        for col in 0..self.cols {
            // lowest-index unused row with a nonzero entry in this column
            let Some(p) = (0..self.rows)
                .find(|&r| !used[r] && rows[r].get(&col).is_some())
            else {
                continue;
            };
            used[p] = true;
            pivots.push((p, col));
            let pivot = rows[p].get(&col).unwrap().clone();
            let pivot_row = rows[p].clone();
            for r in 0..self.rows {
                if used[r] || rows[r].get(&col).is_none() {
                    continue;
                }
                let factor = rows[r].remove(&col).unwrap();
                // Bareiss update: row = (pivot*row - factor*pivot_row) / prev_pivot
                let mut new_row = BTreeMap::new();
                for (c, v) in &rows[r] {
                    new_row.insert(*c, &pivot * v);
                }
                for (c, w) in &pivot_row {
                    if *c == col {
                        continue;
                    }
                    let delta = &factor * w;
                    match new_row.remove(c) {
                        Some(cur) => {
                            let upd = cur - &delta;
                            if !upd.is_zero() {
                                new_row.insert(*c, upd);
                            }
                        }
                        None => {
                            new_row.insert(*c, -delta);
                        }
                    }
                }
                if !prev_pivot.is_one() {
                    let inv = prev_pivot.inv();
                    for v in new_row.values_mut() {
                        *v = &*v * &inv;
                    }
                }
                rows[r] = new_row;
            }
            prev_pivot = pivot;
        }
        Echelon { rows, pivots }
    }
}

struct Echelon {
    rows: Vec<BTreeMap<usize, Scalar>>,
    pivots: Vec<(usize, usize)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(SparseMatrix::zero(3, 3).rank().unwrap(), 0);
        assert_eq!(SparseMatrix::identity(4).rank().unwrap(), 4);
        let m = SparseMatrix::from_dense(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank().unwrap(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(SparseMatrix::identity(2).kernel_basis().unwrap().is_empty());
        assert_eq!(SparseMatrix::zero(1, 3).kernel_basis().unwrap().len(), 3);
        let m = SparseMatrix::from_dense(&[vec![1, 1]]);
        let k = m.kernel_basis().unwrap();
        assert_eq!(k.len(), 1);
        // proportional to (1, -1)
        let v = &k[0];
        assert_eq!(v[0].clone() + v[1].clone(), Scalar::zero());
        assert!(!v[0].is_zero());
    }

    #[test]
    fn mixed_conductors_rejected() {
        let mut m = SparseMatrix::zero(1, 2);
        m.set(0, 0, Scalar::zeta(3));
        m.set(0, 1, Scalar::zeta(4));
        assert_eq!(m.rank(), Err(Error::IncompatibleScalarFields));
    }

    #[test]
    fn cyclotomic_rank() {
        // [[1, z], [z, z^2]] over Q(zeta_5) has rank 1
        let z = Scalar::zeta(5);
        let mut m = SparseMatrix::zero(2, 2);
        m.set(0, 0, Scalar::one());
        m.set(0, 1, z.clone());
        m.set(1, 0, z.clone());
        m.set(1, 1, &z * &z);
        assert_eq!(m.rank().unwrap(), 1);
        let k = m.kernel_basis().unwrap();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = SparseMatrix::from_dense(&[vec![1, 2], vec![2, 4]]);
        let b = vec![Scalar::from_int(3), Scalar::from_int(6)];
        let x = m.solve(&b).unwrap().expect("consistent");
        assert_eq!(m.apply(&x), b);
        let bad = vec![Scalar::from_int(3), Scalar::from_int(7)];
        assert!(m.solve(&bad).unwrap().is_none());
    }

    #[test]
    fn rank_plus_nullity() {
        let m = SparseMatrix::from_dense(&[
            vec![1, 0, 2, -1],
            vec![0, 3, 1, 1],
            vec![1, 3, 3, 0],
        ]);
        let r = m.rank().unwrap();
        let k = m.kernel_basis().unwrap().len();
        assert_eq!(r + k, m.cols());
        assert_eq!(m.transpose().rank().unwrap(), r);
    }
}
