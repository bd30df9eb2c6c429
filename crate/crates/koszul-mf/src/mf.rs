//! Matrix factorizations over the polynomial ring: the rank-2^n stabilised
//! generator, verification of Q^2 = W Id, dualization between finite-rank
//! cofactorizations and factorizations, cones, the finite-rank reduction of
//! the Koszul duality image of the cobar algebra, Hom-complex homology for
//! weighted-homogeneous potentials, and the equivariant/graded generator
//! lists.

use crate::coalg::{coproduct, Curvature};
use crate::cobar::{d_minus_word, d_plus_word, Word};
use crate::hodge::{antisymmetrize_word, ext_basis, project_word, ExtWord, Hodge};
use crate::hpl::{ArcOp, Perturbation, Retraction};
use crate::lin::Lin;
use crate::poly::{monomials_of_weighted_degree, Monomial, Poly};
use crate::scalar::Scalar;
use crate::sparse::SparseMatrix;
use crate::{Error, Potential, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Dense square matrix with polynomial entries, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    pub nvars: usize,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            nvars,
            rows,
            cols,
            entries: vec![Poly::zero(nvars); rows * cols],
        }
    }

    pub fn identity_scaled(nvars: usize, n: usize, w: &Poly) -> Self {
        let mut m = PolyMatrix::zero(nvars, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = w.clone();
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Poly {
        &mut self.entries[r * self.cols + c]
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = PolyMatrix::zero(self.nvars, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    let cur = out.at(r, c).add(&prod);
                    *out.at_mut(r, c) = cur;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(r, c) = out.at(r, c).add(other.at(r, c));
            }
        }
        out
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        self.add(&other.scale_int(-1))
    }

    pub fn scale_int(&self, s: i64) -> PolyMatrix {
        let mut out = self.clone();
        let sc = Scalar::from_int(s);
        for e in out.entries.iter_mut() {
            *e = e.scale(&sc);
        }
        out
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.nvars, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// First nonzero entry, as a witness.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Poly)> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if !self.at(r, c).is_zero() {
                    return Some((r, c, self.at(r, c).clone()));
                }
            }
        }
        None
    }
}

/// A matrix factorization: Q odd with Q^2 = W Id. `degrees` holds the scaled
/// internal degrees sigma(v) = d*deg(v) of a graded lift, `twist` a character
/// index for equivariant objects.
#[derive(Debug, Clone)]
pub struct MatrixFactorization {
    pub rank: usize,
    pub parity: Vec<u8>,
    pub q: PolyMatrix,
    pub w: Poly,
    pub degrees: Option<Vec<i64>>,
    pub twist: Option<u32>,
}

/// Outcome of the Q^2 = W Id check.
#[derive(Debug, Clone)]
pub struct MfReport {
    pub ok: bool,
    pub witness: Option<(usize, usize, Poly)>,
}

impl fmt::Display for MfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.ok, &self.witness) {
            (true, _) => write!(f, "Q^2 = W Id"),
            (false, Some((r, c, p))) => {
                write!(f, "Q^2 - W Id nonzero at ({r}, {c}): {p}")
            }
            (false, None) => write!(f, "failed"),
        }
    }
}

impl MatrixFactorization {
    /// Exact check Q^2 - W Id = 0, with the offending entry on failure.
    pub fn verify(&self) -> MfReport {
        let q2 = self.q.mul(&self.q);
        let wid = PolyMatrix::identity_scaled(self.q.nvars, self.rank, &self.w);
        let diff = q2.sub(&wid);
        MfReport {
            ok: diff.is_zero(),
            witness: diff.first_nonzero(),
        }
    }

    /// Parity must be off-diagonal: Q maps even to odd and odd to even.
    pub fn parity_ok(&self) -> bool {
        for r in 0..self.rank {
            for c in 0..self.rank {
                if !self.q.at(r, c).is_zero() && self.parity[r] == self.parity[c] {
                    return false;
                }
            }
        }
        true
    }

    /// Direct sum of two factorizations of the same potential.
    pub fn direct_sum(&self, other: &MatrixFactorization) -> MatrixFactorization {
        assert_eq!(self.w, other.w);
        let n = self.rank + other.rank;
        let mut q = PolyMatrix::zero(self.q.nvars, n, n);
        for r in 0..self.rank {
            for c in 0..self.rank {
                *q.at_mut(r, c) = self.q.at(r, c).clone();
            }
        }
        for r in 0..other.rank {
            for c in 0..other.rank {
                *q.at_mut(self.rank + r, self.rank + c) = other.q.at(r, c).clone();
            }
        }
        let mut parity = self.parity.clone();
        parity.extend(other.parity.iter().copied());
        MatrixFactorization {
            rank: n,
            parity,
            q,
            w: self.w.clone(),
            degrees: None,
            twist: None,
        }
    }
}

/// Dyckerhoff-style stabilised generator on the exterior algebra basis:
/// Q(f (x) a) = sum_i x_i f (x) (y_i -| a) + W_i f (x) (x_i ^ a), with the
/// contraction sign (-1)^(m-1) at the m-th slot and the wedge straightening
/// sign. The exterior basis is ordered by degree then lexicographically.
pub fn kstab(w: &Potential, split: &[Poly]) -> Result<MatrixFactorization> {
    let n = w.nvars();
    // the splitting must reconstruct W
    let mut sum = Poly::zero(n);
    for (i, wi) in split.iter().enumerate() {
        sum = sum.add(&wi.mul(&Poly::var(i, n)));
    }
    if sum != w.poly || split.len() != n {
        return Err(Error::InvalidSplitting);
    }
    let basis = ext_basis(n);
    let index: BTreeMap<&ExtWord, usize> = basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let rank = basis.len();
    let mut q = PolyMatrix::zero(n, rank, rank);
    for (col, s) in basis.iter().enumerate() {
        for i in 0..n {
            // contraction: remove i if present
            if let Some(pos) = s.0.iter().position(|&j| j == i) {
                let mut t = s.0.clone();
                t.remove(pos);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                let row = index[&ExtWord(t)];
                let term = Poly::var(i, n).scale(&Scalar::from_int(sign));
                *q.at_mut(row, col) = q.at(row, col).add(&term);
            } else if !split[i].is_zero() {
                // wedge from the left: straighten [i, j_1, ..., j_k]
                let mut t = vec![i];
                t.extend(s.0.iter().copied());
                if let Some((sorted, sign)) = crate::hodge::wedge_straighten(&t) {
                    let row = index[&sorted];
                    let term = split[i].scale(&Scalar::from_int(sign));
                    *q.at_mut(row, col) = q.at(row, col).add(&term);
                }
            }
        }
    }
    let parity: Vec<u8> = basis.iter().map(|s| s.parity()).collect();
    let degrees = graded_degrees(w, &basis, 0);
    Ok(MatrixFactorization {
        rank,
        parity,
        q,
        w: w.poly.clone(),
        degrees,
        twist: None,
    })
}

/// Scaled internal degrees sigma(e_S) = sum_{i in S} 2 a_i - d |S| + 2 shift
/// when W is weighted-homogeneous.
fn graded_degrees(w: &Potential, basis: &[ExtWord], shift: i64) -> Option<Vec<i64>> {
    let (weights, d) = match (&w.weights, w.weighted_degree) {
        (Some(a), Some(d)) => (a.clone(), d as i64),
        _ => return None,
    };
    Some(
        basis
            .iter()
            .map(|s| {
                let sum: i64 = s.0.iter().map(|&i| 2 * weights[i] as i64).sum();
                sum - d * s.0.len() as i64 + 2 * shift
            })
            .collect(),
    )
}

/// A finite-corank matrix cofactorization, stored through the pairing as a
/// square polynomial matrix together with the curvature functional.
#[derive(Debug, Clone)]
pub struct MatrixCofactorization {
    pub corank: usize,
    pub p: PolyMatrix,
    pub m: Curvature,
}

/// The dualizing functor on objects: transpose under the monomial pairing.
pub fn dualize(c: &MatrixCofactorization, w: &Poly, parity: Vec<u8>) -> MatrixFactorization {
    MatrixFactorization {
        rank: c.corank,
        parity,
        q: c.p.transpose(),
        w: w.clone(),
        degrees: None,
        twist: None,
    }
}

/// Inverse of `dualize` on stored data.
pub fn dualize_inv(m: &MatrixFactorization, curv: &Curvature) -> MatrixCofactorization {
    MatrixCofactorization {
        corank: m.rank,
        p: m.q.transpose(),
        m: curv.clone(),
    }
}

/// Dual of a morphism: the transpose, reversing composition order.
pub fn dualize_morphism(f: &PolyMatrix) -> PolyMatrix {
    f.transpose()
}

/// The cone of a closed morphism f: (E, Q) -> (F, P), with the assembled
/// matrix T = [[Q, 0], [f, P]].
#[derive(Debug, Clone)]
pub struct ConeObject {
    pub t: MatrixFactorization,
}

/// D(f) = P f - (-1)^{|f|} f Q for a morphism of pure parity.
pub fn hom_differential(
    f: &PolyMatrix,
    src: &MatrixFactorization,
    dst: &MatrixFactorization,
    f_parity: u8,
) -> PolyMatrix {
    let pf = dst.q.mul(f);
    let fq = f.mul(&src.q);
    if f_parity % 2 == 0 {
        pf.sub(&fq)
    } else {
        pf.add(&fq)
    }
}

pub fn cone(
    f: &PolyMatrix,
    src: &MatrixFactorization,
    dst: &MatrixFactorization,
) -> Result<ConeObject> {
    if !hom_differential(f, src, dst, 0).is_zero() {
        return Err(Error::MorphismNotClosed);
    }
    let n = src.rank + dst.rank;
    let nv = src.q.nvars;
    let mut t = PolyMatrix::zero(nv, n, n);
    // the shift flips the sign of the source differential
    for r in 0..src.rank {
        for c in 0..src.rank {
            *t.at_mut(r, c) = src.q.at(r, c).scale(&Scalar::from_int(-1));
        }
    }
    for r in 0..dst.rank {
        for c in 0..dst.rank {
            *t.at_mut(src.rank + r, src.rank + c) = dst.q.at(r, c).clone();
        }
    }
    for r in 0..dst.rank {
        for c in 0..src.rank {
            *t.at_mut(src.rank + r, c) = f.at(r, c).clone();
        }
    }
    // E[1] (+) F: source parities flip
    let mut parity: Vec<u8> = src.parity.iter().map(|p| p ^ 1).collect();
    parity.extend(dst.parity.iter().copied());
    Ok(ConeObject {
        t: MatrixFactorization {
            rank: n,
            parity,
            q: t,
            w: src.w.clone(),
            degrees: None,
            twist: None,
        },
    })
}

/// Search for a contracting homotopy: an odd matrix H with TH + HT = Id,
/// entries restricted to weighted degree <= cap. Exact linear solve over the
/// monomial coefficients.
pub fn cone_contraction(
    cone_obj: &ConeObject,
    weights: &[u32],
    degree_cap: u64,
) -> Result<Option<PolyMatrix>> {
    let t = &cone_obj.t;
    let nv = t.q.nvars;
    let n = t.rank;
    // unknowns: coefficient of monomial m in H[r][c], for parities r != c
    let mut unknowns: Vec<(usize, usize, Monomial)> = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if t.parity[r] == t.parity[c] {
                continue; // H is odd
            }
            for wd in 0..=degree_cap {
                for m in monomials_of_weighted_degree(nv, weights, wd) {
                    unknowns.push((r, c, m));
                }
            }
        }
    }
    // equations: coefficient of monomial mu in (TH + HT - Id)[r][c] = 0,
    // for monomials mu reachable as (entry of T) * (unknown monomial)
    let mut rows: Vec<BTreeMap<usize, Scalar>> = Vec::new();
    let mut row_index: BTreeMap<(usize, usize, Monomial), usize> = BTreeMap::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let touch = |key: (usize, usize, Monomial),
                     rows: &mut Vec<BTreeMap<usize, Scalar>>,
                     rhs: &mut Vec<Scalar>,
                     row_index: &mut BTreeMap<(usize, usize, Monomial), usize>|
     -> usize {
        if let Some(&i) = row_index.get(&key) {
            return i;
        }
        let i = rows.len();
        rows.push(BTreeMap::new());
        rhs.push(Scalar::zero());
        row_index.insert(key, i);
        i
    };
    for (uidx, (r, c, m)) in unknowns.iter().enumerate() {
        // T H term: T[i][r] * H[r][c] contributes to entry (i, c)
        for i in 0..n {
            let te = t.q.at(i, *r);
            for (tm, tc) in te.terms() {
                let key = (i, *c, tm.mul(m));
                let row = touch(key, &mut rows, &mut rhs, &mut row_index);
                let cur = rows[row].remove(&uidx).unwrap_or_else(Scalar::zero);
                let nv2 = cur + tc.clone();
                if !nv2.is_zero() {
                    rows[row].insert(uidx, nv2);
                }
            }
        }
        // H T term: H[r][c] * T[c][j] contributes to entry (r, j)
        for j in 0..n {
            let te = t.q.at(*c, j);
            for (tm, tc) in te.terms() {
                let key = (*r, j, tm.mul(m));
                let row = touch(key, &mut rows, &mut rhs, &mut row_index);
                let cur = rows[row].remove(&uidx).unwrap_or_else(Scalar::zero);
                let nv2 = cur + tc.clone();
                if !nv2.is_zero() {
                    rows[row].insert(uidx, nv2);
                }
            }
        }
    }
    // right-hand side: identity matrix
    for r in 0..n {
        let key = (r, r, Monomial::one(nv));
        let row = touch(key, &mut rows, &mut rhs, &mut row_index);
        rhs[row] = Scalar::one();
    }
    let mat = SparseMatrix::from_triplets(
        rows.len(),
        unknowns.len(),
        rows.iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v.clone()))),
    )?;
    let sol = mat.solve(&rhs)?;
    Ok(sol.map(|x| {
        let mut h = PolyMatrix::zero(nv, n, n);
        for (uidx, (r, c, m)) in unknowns.iter().enumerate() {
            if !x[uidx].is_zero() {
                let cur = h.at(*r, *c).add(&Poly::monomial(m.clone(), x[uidx].clone()));
                *h.at_mut(*r, *c) = cur;
            }
        }
        h
    }))
}

/// Basis symbol of the big space C (x) cobar: a monomial against a word.
pub type PsiBasis = (Monomial, Word);
/// Basis symbol of the small space C (x) wedge V.
pub type PsiSmall = (Monomial, ExtWord);

/// The finite-rank reduction of the Koszul-duality image of the cobar
/// algebra: runs the perturbation engine on C (x) cobar over the Hodge
/// retraction extended by the identity on C, extracts the comodule matrix on
/// C (x) wedge V, and returns it with its dual factorization data.
pub struct PsiReduction {
    pub cofactorization: MatrixCofactorization,
    pub dual: MatrixFactorization,
    pub basis: Vec<ExtWord>,
}

pub fn psi_omega_reduced(w: &Potential, window: u32) -> Result<PsiReduction> {
    let n = w.nvars();
    let m = Curvature::from_potential(w);
    let hodge = Arc::new(Hodge::new());
    // operators on C (x) cobar, all weight-non-increasing
    let d_plus_op: ArcOp<PsiBasis, PsiBasis> = Arc::new(move |(c, word)| {
        let mut out = Lin::zero();
        for (w2, s) in d_plus_word(word).iter() {
            out.add_term((c.clone(), w2.clone()), s.clone());
        }
        out
    });
    let m2 = m.clone();
    let d_minus_op: ArcOp<PsiBasis, PsiBasis> = Arc::new(move |(c, word)| {
        let mut out = Lin::zero();
        for (w2, s) in d_minus_word(word, &m2).iter() {
            out.add_term((c.clone(), w2.clone()), s.clone());
        }
        out
    });
    let d_tau_op: ArcOp<PsiBasis, PsiBasis> = Arc::new(move |(c, word)| {
        // tau is minus the letter inclusion: the Maurer-Cartan equation
        // d(tau) + tau * tau + M = 0 forces the sign against our (+1)-signed
        // reduced-coproduct differential
        let mut out = Lin::zero();
        for (l, r) in coproduct(c) {
            if r.is_one() {
                continue;
            }
            let mut letters = Vec::with_capacity(word.len() + 1);
            letters.push(r);
            letters.extend(word.0.iter().cloned());
            out.add_term((l, Word(letters)), Scalar::from_int(-1));
        }
        out
    });
    let m3 = m.clone();
    let curvature_op: ArcOp<PsiBasis, PsiBasis> = Arc::new(move |(c, word)| {
        // F(c (x) w) = sum_{I+J=K} M(e^I) e^J (x) w
        let mut out = Lin::zero();
        for (l, r) in coproduct(c) {
            let s = m3.eval(&l);
            if !s.is_zero() {
                out.add_term((r, word.clone()), s);
            }
        }
        out
    });
    let h2 = hodge.clone();
    let h_op: ArcOp<PsiBasis, PsiBasis> = Arc::new(move |(c, word)| {
        let mut out = Lin::zero();
        for (w2, s) in h2.homotopy(&Lin::basis(word.clone())).iter() {
            out.add_term((c.clone(), w2.clone()), s.clone());
        }
        out
    });
    let i_op: ArcOp<PsiSmall, PsiBasis> = Arc::new(move |(c, s)| {
        let mut out = Lin::zero();
        for (w2, coeff) in antisymmetrize_word(s, c.nvars()).iter() {
            out.add_term((c.clone(), w2.clone()), coeff.clone());
        }
        out
    });
    let p_op: ArcOp<PsiBasis, PsiSmall> = Arc::new(move |(c, word)| {
        let mut out = Lin::zero();
        for (s, coeff) in project_word(word).iter() {
            out.add_term((c.clone(), s.clone()), coeff.clone());
        }
        out
    });
    let retraction: Retraction<PsiSmall, PsiBasis> = Retraction {
        d: d_plus_op,
        b: crate::hpl::op_zero(),
        i: i_op,
        p: p_op,
        h: h_op,
        curvature: None,
    };
    // the curvature part of the cobar differential enters with the opposite
    // sign; together with the negated cochain this puts (d + delta)^2 at
    // exactly +M-coaction, so the dual factorization squares to +W Id
    let d_minus_neg: ArcOp<PsiBasis, PsiBasis> = {
        let dm = d_minus_op.clone();
        Arc::new(move |b| dm(b).neg())
    };
    let delta = crate::hpl::op_add(&d_minus_neg, &d_tau_op);
    let pert = Perturbation::new(delta).with_curvature(curvature_op);
    // verify the curved-perturbation axiom on a small closed window
    let check_cap = (w.poly.max_degree().unwrap_or(2) + 1).min(window).min(6);
    let mut sample: Vec<PsiBasis> = Vec::new();
    for cw in 0..=check_cap {
        for c in crate::poly::monomials_of_degree(n, cw) {
            for ww in 0..=(check_cap - cw) {
                for word in crate::cobar::weight_basis(n, ww) {
                    sample.push((c.clone(), word));
                }
            }
        }
    }
    retraction.check_curved_perturbation(&pert, &sample)?;
    let perturbed = retraction.perturb(&pert);
    // extract the comodule matrix: P[t][s] = sum_J <b1(e^J (x) e_s), 1 (x) e_t> x^J
    let basis = ext_basis(n);
    let index: BTreeMap<&ExtWord, usize> = basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let rank = basis.len();
    let mut p_mat = PolyMatrix::zero(n, rank, rank);
    for (col, s) in basis.iter().enumerate() {
        for deg in 0..=window {
            for j in crate::poly::monomials_of_degree(n, deg) {
                let img = (perturbed.b)(&(j.clone(), s.clone()));
                for ((c, t), coeff) in img.iter() {
                    if c.is_one() {
                        let row = index[t];
                        let cur = p_mat
                            .at(row, col)
                            .add(&Poly::monomial(j.clone(), coeff.clone()));
                        *p_mat.at_mut(row, col) = cur;
                    }
                }
            }
        }
    }
    let cof = MatrixCofactorization {
        corank: rank,
        p: p_mat,
        m,
    };
    let parity: Vec<u8> = basis.iter().map(|s| s.parity()).collect();
    let dual = dualize(&cof, &w.poly, parity);
    Ok(PsiReduction {
        cofactorization: cof,
        dual,
        basis,
    })
}

/// Exhaustive signed-permutation comparison of two factorizations of equal
/// rank; parity classes must match. Returns the witness permutation with
/// signs when the matrices agree after conjugation.
pub fn signed_permutation_match(
    a: &MatrixFactorization,
    b: &MatrixFactorization,
) -> Option<(Vec<usize>, Vec<i64>)> {
    if a.rank != b.rank {
        return None;
    }
    let n = a.rank;
    let perms = permutations(n);
    for perm in &perms {
        // parity must be preserved
        if (0..n).any(|i| a.parity[i] != b.parity[perm[i]]) {
            continue;
        }
        // try all sign vectors
        for bits in 0..(1u32 << n) {
            let signs: Vec<i64> = (0..n)
                .map(|i| if bits & (1 << i) != 0 { -1 } else { 1 })
                .collect();
            // check b.q[perm[r]][perm[c]] = s_r s_c a.q[r][c]
            let mut ok = true;
            'outer: for r in 0..n {
                for c in 0..n {
                    let lhs = b.q.at(perm[r], perm[c]);
                    let rhs = a.q.at(r, c).scale(&Scalar::from_int(signs[r] * signs[c]));
                    if *lhs != rhs {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            if ok {
                return Some((perm.clone(), signs));
            }
        }
    }
    None
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut base: Vec<usize> = (0..n).collect();
    heap_permute(&mut base, n, &mut out);
    out
}

fn heap_permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(v.clone());
        return;
    }
    for i in 0..k {
        heap_permute(v, k - 1, out);
        if k % 2 == 0 {
            v.swap(i, k - 1);
        } else {
            v.swap(0, k - 1);
        }
    }
}

/// Homology ranks of the Hom complex between two graded factorizations, per
/// scaled internal degree sigma (the differential raises sigma by d). Slices
/// are reported with a stabilization flag: stable once two consecutive top
/// slices carry zero homology.
#[derive(Debug, Clone)]
pub struct HomHomology {
    pub ranks: Vec<(i64, usize)>,
    pub stabilized: bool,
    pub total: usize,
}

pub fn hom_homology(
    e: &MatrixFactorization,
    f: &MatrixFactorization,
    w: &Potential,
    slice_cap: usize,
) -> Result<HomHomology> {
    let (weights, d) = match (&w.weights, w.weighted_degree) {
        (Some(a), Some(d)) => (a.clone(), d as i64),
        _ => {
            return Err(Error::BadPotential(
                "hom homology needs a weighted-homogeneous potential".into(),
            ))
        }
    };
    let (de, df) = match (&e.degrees, &f.degrees) {
        (Some(x), Some(y)) => (x.clone(), y.clone()),
        _ => {
            return Err(Error::BadPotential(
                "hom homology needs graded lifts".into(),
            ))
        }
    };
    let nv = w.nvars();
    if e.rank == 0 || f.rank == 0 {
        return Ok(HomHomology {
            ranks: vec![],
            stabilized: true,
            total: 0,
        });
    }
    // basis of the sigma-slice: (u, v, monomial) with
    // sigma = df[v] - de[u] + 2 wt_a(m)
    let sigma_min: i64 = (0..e.rank)
        .flat_map(|u| (0..f.rank).map(move |v| (u, v)))
        .map(|(u, v)| df[v] - de[u])
        .min()
        .unwrap();
    let slice_basis = |sigma: i64| -> Vec<(usize, usize, Monomial)> {
        let mut out = Vec::new();
        for u in 0..e.rank {
            for v in 0..f.rank {
                let need = sigma - (df[v] - de[u]);
                if need < 0 || need % 2 != 0 {
                    continue;
                }
                for m in monomials_of_weighted_degree(nv, &weights, (need / 2) as u64) {
                    out.push((u, v, m));
                }
            }
        }
        out
    };
    // D(phi) = Q_f phi - (-1)^{|phi|} phi Q_e; parity of (u, v): pu ^ pv
    let apply_d = |basis: &[(usize, usize, Monomial)]| -> Vec<Lin<(usize, usize, Monomial)>> {
        basis
            .iter()
            .map(|(u, v, m)| {
                let par = (e.parity[*u] ^ f.parity[*v]) as i64;
                let mut out: Lin<(usize, usize, Monomial)> = Lin::zero();
                for v2 in 0..f.rank {
                    let qe = f.q.at(v2, *v);
                    for (qm, qc) in qe.terms() {
                        out.add_term((*u, v2, qm.mul(m)), qc.clone());
                    }
                }
                let sgn = if par % 2 == 0 { -1 } else { 1 };
                for u2 in 0..e.rank {
                    let qe = e.q.at(*u, u2);
                    for (qm, qc) in qe.terms() {
                        out.add_term(
                            (u2, *v, qm.mul(m)),
                            qc * &Scalar::from_int(sgn),
                        );
                    }
                }
                out
            })
            .collect()
    };
    let rank_of = |from: &[(usize, usize, Monomial)],
                   to_index: &BTreeMap<(usize, usize, Monomial), usize>,
                   to_len: usize|
     -> usize {
        if from.is_empty() || to_len == 0 {
            return 0;
        }
        let images = apply_d(from);
        let mut mat = SparseMatrix::zero(to_len, from.len());
        for (j, img) in images.iter().enumerate() {
            for (b, c) in img.iter() {
                if let Some(&i) = to_index.get(b) {
                    mat.add_to(i, j, c);
                }
            }
        }
        mat.rank().expect("rational hom slice")
    };
    // the differential raises sigma by exactly d, so the complex splits into
    // residue classes of sigma mod d; walk each class from its bottom
    let mut all_ranks: BTreeMap<i64, usize> = BTreeMap::new();
    let mut total = 0usize;
    let mut stabilized = true;
    for r in 0..d {
        let mut sigma = sigma_min + r;
        let mut zero_run = 0usize;
        let mut steps = 0usize;
        let mut class_stable = false;
        while steps < slice_cap {
            let here = slice_basis(sigma);
            let below = slice_basis(sigma - d);
            let here_index: BTreeMap<(usize, usize, Monomial), usize> = here
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, b)| (b, i))
                .collect();
            let above = slice_basis(sigma + d);
            let above_index: BTreeMap<(usize, usize, Monomial), usize> = above
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, b)| (b, i))
                .collect();
            let rank_in = rank_of(&below, &here_index, here.len());
            let rank_out = rank_of(&here, &above_index, above.len());
            let h = here.len() - rank_in - rank_out;
            if !here.is_empty() {
                all_ranks.insert(sigma, h);
            }
            total += h;
            if h == 0 {
                zero_run += 1;
                if zero_run >= 2 && sigma > 0 {
                    class_stable = true;
                    break;
                }
            } else {
                zero_run = 0;
            }
            sigma += d;
            steps += 1;
        }
        stabilized &= class_stable;
    }
    Ok(HomHomology {
        ranks: all_ranks.into_iter().collect(),
        stabilized,
        total,
    })
}

/// The equivariant generator list: the stabilised generator twisted by each
/// character of Z/dZ. Requires the potential to be fixed by the scaling
/// action, i.e. every monomial's weighted degree is divisible by d.
pub fn equivariant_generators(
    w: &Potential,
    split: &[Poly],
    d: u32,
) -> Result<Vec<MatrixFactorization>> {
    let weights = w
        .weights
        .clone()
        .unwrap_or_else(|| vec![1; w.nvars()]);
    for (m, _) in w.poly.terms() {
        if m.weighted_degree(&weights) % d as u64 != 0 {
            return Err(Error::BadPotential(
                "potential is not invariant under the cyclic action".into(),
            ));
        }
    }
    let base = kstab(w, split)?;
    Ok((0..d)
        .map(|j| {
            let mut obj = base.clone();
            obj.twist = Some(j);
            obj
        })
        .collect())
}

/// Graded lifts with internal-degree shifts d-1, ..., 1, 0.
pub fn graded_generators(w: &Potential, split: &[Poly]) -> Result<Vec<MatrixFactorization>> {
    let d = match w.weighted_degree {
        Some(d) if d >= 2 => d as i64,
        _ => {
            return Err(Error::BadPotential(
                "graded generators need weighted degree >= 2".into(),
            ))
        }
    };
    let base = kstab(w, split)?;
    let basis = ext_basis(w.nvars());
    Ok((0..d)
        .rev()
        .map(|j| {
            let mut obj = base.clone();
            obj.degrees = graded_degrees(w, &basis, j);
            obj.twist = Some(j as u32);
            obj
        })
        .collect())
}

/// Entrywise audit that Q has degree one: for every entry monomial m in
/// Q[t][s], sigma(t) + 2 wt_a(m) = sigma(s) + d.
pub fn degree_one_audit(mf: &MatrixFactorization, w: &Potential) -> bool {
    let (weights, d) = match (&w.weights, w.weighted_degree) {
        (Some(a), Some(d)) => (a, d as i64),
        _ => return false,
    };
    let Some(degrees) = &mf.degrees else {
        return false;
    };
    for t in 0..mf.rank {
        for s in 0..mf.rank {
            for (m, _) in mf.q.at(t, s).terms() {
                let lhs = degrees[t] + 2 * m.weighted_degree(weights) as i64;
                if lhs != degrees[s] + d {
                    return false;
                }
            }
        }
    }
    true
}
