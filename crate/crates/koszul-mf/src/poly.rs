//! Multivariate polynomials over `Scalar`: the potential W, its partial
//! derivatives, Euler/greedy splittings W = sum x_i W_i, and the Milnor
//! number computed by exact linear algebra on degree slices (no Groebner
//! machinery).

use crate::scalar::{Rat, Scalar};
use crate::sparse::SparseMatrix;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent multi-index; the length is the session's variable count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// Total degree |K|.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(k, a)| *k as u64 * *a as u64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(
            other
                .0
                .iter()
                .zip(&self.0)
                .map(|(b, a)| b - a)
                .collect(),
        )
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, k) in self.0.iter().enumerate() {
            if *k == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *k == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{k}")?;
            }
        }
        Ok(())
    }
}

/// Finitely supported map Monomial -> nonzero Scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::monomial(Monomial::one(nvars), Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let nvars = m.nvars();
        let mut p = Poly::zero(nvars);
        p.add_term(m, c);
        p
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        Poly::monomial(Monomial::var(i, nvars), Scalar::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        assert_eq!(m.nvars(), self.nvars, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        let cur = self.terms.remove(&m);
        let v = match cur {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        let mut out = Poly::zero(self.nvars);
        if s.is_zero() {
            return out;
        }
        for (m, c) in self.terms() {
            out.terms.insert(m.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (m, a) in self.terms() {
            for (n, b) in other.terms() {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (n, b) in self.terms() {
            out.add_term(m.mul(n), c * b);
        }
        out
    }

    /// Exact formal partial derivative with respect to variable i.
    pub fn partial(&self, i: usize) -> Result<Poly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange(i));
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in self.terms() {
            let k = m.0[i];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            out.add_term(Monomial(e), c * &Scalar::from_int(k as i64));
        }
        Ok(out)
    }

    /// Lowest total degree among terms; None for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> Option<u32> {
        let mut deg = None;
        for m in self.terms.keys() {
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d == m.degree() => {}
                _ => return None,
            }
        }
        deg
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

/// A potential W: order >= 2, optionally weighted-homogeneous with positive
/// integer weights a and total weighted degree d.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    pub poly: Poly,
    pub weights: Option<Vec<u32>>,
    pub weighted_degree: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    Euler,
    Greedy,
}

/// Outcome of the Milnor number computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Milnor {
    Finite(usize),
    NotIsolated,
}

impl Potential {
    /// Build and validate: no constant or linear terms; weighted homogeneity
    /// when weights are given.
    pub fn new(poly: Poly, weights: Option<Vec<u32>>) -> Result<Potential> {
        if poly.terms.keys().any(|m| m.degree() < 2) {
            return Err(Error::BadPotential(
                "potential has constant or linear terms".into(),
            ));
        }
        let weighted_degree = match &weights {
            Some(a) => {
                if a.len() != poly.nvars() || a.iter().any(|&w| w == 0) {
                    return Err(Error::BadPotential("bad weight vector".into()));
                }
                let mut d = None;
                for m in poly.terms.keys() {
                    let wd = m.weighted_degree(a);
                    match d {
                        None => d = Some(wd),
                        Some(e) if e == wd => {}
                        _ => {
                            return Err(Error::BadPotential(
                                "not weighted-homogeneous for the given weights".into(),
                            ))
                        }
                    }
                }
                d
            }
            None => None,
        };
        Ok(Potential {
            poly,
            weights,
            weighted_degree,
        })
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn partial(&self, i: usize) -> Result<Poly> {
        self.poly.partial(i)
    }

    /// W = sum x_i W_i. Euler needs weights (W_i = (a_i/d) dW/dx_i); greedy
    /// assigns each monomial to its lowest-index dividing variable.
    pub fn split(&self, strategy: Splitting) -> Result<Vec<Poly>> {
        let n = self.nvars();
        let out = match strategy {
            Splitting::Euler => {
                let (weights, d) = match (&self.weights, self.weighted_degree) {
                    (Some(w), Some(d)) if d > 0 => (w.clone(), d),
                    _ => {
                        return Err(Error::BadPotential(
                            "Euler splitting needs weights and a positive degree".into(),
                        ))
                    }
                };
                let mut ws = Vec::with_capacity(n);
                for i in 0..n {
                    let factor = Scalar::from_rat(Rat::new(
                        (weights[i] as i64).into(),
                        (d as i64).into(),
                    ));
                    ws.push(self.poly.partial(i)?.scale(&factor));
                }
                ws
            }
            Splitting::Greedy => {
                let mut ws = vec![Poly::zero(n); n];
                for (m, c) in self.poly.terms() {
                    let i = m
                        .0
                        .iter()
                        .position(|&k| k > 0)
                        .expect("order >= 2 excludes the unit monomial");
                    let mut e = m.0.clone();
                    e[i] -= 1;
                    ws[i].add_term(Monomial(e), c.clone());
                }
                ws
            }
        };
        // exactness of the splitting is an invariant, not an assumption
        let mut sum = Poly::zero(n);
        for (i, wi) in out.iter().enumerate() {
            sum = sum.add(&wi.mul(&Poly::var(i, n)));
        }
        if sum != self.poly {
            return Err(Error::InvalidSplitting);
        }
        Ok(out)
    }

    /// Milnor number by degree-slice linear algebra, or the `NotIsolated`
    /// sentinel. `cap` bounds the inspected total degree.
    pub fn milnor_number(&self, cap: u32) -> Result<Milnor> {
        let n = self.nvars();
        if self.poly.is_zero() {
            return Ok(Milnor::NotIsolated);
        }
        let partials: Vec<Poly> = (0..n)
            .map(|i| self.poly.partial(i))
            .collect::<Result<_>>()?;
        // weighted-homogeneous path (standard grading is weights = 1)
        if let Some((weights, d)) = self.homogeneous_data() {
            return self.milnor_weighted(&partials, &weights, d, cap);
        }
        self.milnor_filtered(&partials, cap)
    }

    /// Weights under which W is homogeneous: the declared ones, or all-1 when
    /// W is homogeneous for the standard grading.
    fn homogeneous_data(&self) -> Option<(Vec<u32>, u64)> {
        if let (Some(w), Some(d)) = (&self.weights, self.weighted_degree) {
            return Some((w.clone(), d));
        }
        self.poly
            .is_homogeneous()
            .map(|d| (vec![1; self.nvars()], d as u64))
    }

    fn milnor_weighted(
        &self,
        partials: &[Poly],
        weights: &[u32],
        d: u64,
        cap: u32,
    ) -> Result<Milnor> {
        let n = self.nvars();
        let max_a = *weights.iter().max().unwrap() as u64;
        // socle bound: an isolated weighted-homogeneous singularity has no
        // Jacobian classes above weighted degree sum(d - 2 a_i)
        let socle: i64 = (0..n).map(|i| d as i64 - 2 * weights[i] as i64).sum();
        let mut total = 0usize;
        let mut zero_run = 0u64;
        let mut wdeg: u64 = 0;
        loop {
            let slice_mons = monomials_of_weighted_degree(n, weights, wdeg);
            let s = if slice_mons.is_empty() {
                0 // gap in the weighted grading; counts toward the zero run
            } else {
                slice_dim(&slice_mons, partials, weights, d, wdeg)
            };
            if s == 0 {
                zero_run += 1;
                if zero_run >= max_a {
                    return Ok(Milnor::Finite(total));
                }
            } else {
                if wdeg as i64 > socle {
                    // an isolated weighted-homogeneous singularity has no
                    // Jacobian classes above the socle degree
                    return Ok(Milnor::NotIsolated);
                }
                zero_run = 0;
                total += s;
            }
            wdeg += 1;
            if wdeg > cap as u64 * max_a + max_a {
                return Err(Error::InconclusiveAtCap(cap));
            }
        }
    }

    /// Non-homogeneous case: dimensions of k[x]/(J + m^(N+1)) with an exact
    /// containment certificate (all degree-N monomials land in the ideal).
    fn milnor_filtered(&self, partials: &[Poly], cap: u32) -> Result<Milnor> {
        let n = self.nvars();
        for cut in 2..=cap {
            // monomial basis of degree <= cut, ordered by (degree, lex)
            let mut mons: Vec<Monomial> = Vec::new();
            for t in 0..=cut {
                mons.extend(monomials_of_degree(n, t));
            }
            let index: BTreeMap<&Monomial, usize> =
                mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
            // relations: truncations of x^b d_iW with |b| + ord <= cut
            let mut rows: Vec<Vec<(usize, Scalar)>> = Vec::new();
            for p in partials {
                let ord = match p.order() {
                    Some(o) => o,
                    None => continue,
                };
                for bdeg in 0..=cut.saturating_sub(ord) {
                    for b in monomials_of_degree(n, bdeg) {
                        let mut row = Vec::new();
                        for (m, c) in p.terms() {
                            let prod = b.mul(m);
                            if prod.degree() <= cut {
                                row.push((index[&prod], c.clone()));
                            }
                        }
                        if !row.is_empty() {
                            rows.push(row);
                        }
                    }
                }
            }
            let mat = SparseMatrix::from_triplets(
                rows.len(),
                mons.len(),
                rows.iter()
                    .enumerate()
                    .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v.clone()))),
            )?;
            let rank = mat.rank()?;
            let quotient_dim = mons.len() - rank;
            // containment certificate: every degree-`cut` monomial is in the span
            let top_start = mons
                .iter()
                .position(|m| m.degree() == cut)
                .unwrap_or(mons.len());
            let top_count = mons.len() - top_start;
            let mut aug_rows = rows.clone();
            for c in top_start..mons.len() {
                aug_rows.push(vec![(c, Scalar::one())]);
            }
            let aug = SparseMatrix::from_triplets(
                aug_rows.len(),
                mons.len(),
                aug_rows
                    .iter()
                    .enumerate()
                    .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v.clone()))),
            )?;
            if aug.rank()? == rank {
                // m^cut is inside J + m^(cut+1), so the quotient is the
                // Jacobian ring and no class has degree >= cut
                debug_assert!(quotient_dim >= top_count.min(quotient_dim));
                return Ok(Milnor::Finite(quotient_dim));
            }
        }
        Err(Error::InconclusiveAtCap(cap))
    }
}

/// Dimension of the degree-`wdeg` slice of the Jacobian quotient for a
/// weighted-homogeneous potential.
fn slice_dim(
    slice_mons: &[Monomial],
    partials: &[Poly],
    weights: &[u32],
    d: u64,
    wdeg: u64,
) -> usize {
    let n = weights.len();
    let index: BTreeMap<&Monomial, usize> = slice_mons
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut triplets = Vec::new();
    let mut nrows = 0usize;
    for (i, p) in partials.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        // d_iW is weighted-homogeneous of degree d - a_i
        let pdeg = d - weights[i] as u64;
        if wdeg < pdeg {
            continue;
        }
        for b in monomials_of_weighted_degree(n, weights, wdeg - pdeg) {
            for (m, c) in p.terms() {
                triplets.push((nrows, index[&b.mul(m)], c.clone()));
            }
            nrows += 1;
        }
    }
    let mat = SparseMatrix::from_triplets(nrows, slice_mons.len(), triplets)
        .expect("slice matrix");
    slice_mons.len() - mat.rank().expect("rational slice")
}

/// All monomials in n variables of total degree exactly t, lexicographic.
pub fn monomials_of_degree(n: usize, t: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fn rec(i: usize, rem: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == current.len() {
            current[i] = rem;
            out.push(Monomial(current.clone()));
            return;
        }
        for k in (0..=rem).rev() {
            current[i] = k;
            rec(i + 1, rem - k, current, out);
        }
    }
    if n == 0 {
        if t == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(0, t, &mut current, &mut out);
    out
}

/// All monomials of weighted degree exactly t for positive weights.
pub fn monomials_of_weighted_degree(n: usize, weights: &[u32], t: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fn rec(
        i: usize,
        rem: u64,
        weights: &[u32],
        current: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if i == current.len() {
            if rem == 0 {
                out.push(Monomial(current.clone()));
            }
            return;
        }
        let a = weights[i] as u64;
        let max_k = rem / a;
        for k in (0..=max_k).rev() {
            current[i] = k as u32;
            rec(i + 1, rem - k * a, weights, current, out);
        }
    }
    rec(0, t, weights, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pot(terms: &[(&[u32], i64)], weights: Option<Vec<u32>>) -> Potential {
        let n = terms[0].0.len();
        let mut p = Poly::zero(n);
        for (e, c) in terms {
            p.add_term(Monomial(e.to_vec()), Scalar::from_int(*c));
        }
        Potential::new(p, weights).unwrap()
    }

    #[test]
    fn partial_derivatives() {
        // d/dx (x^3) = 3x^2
        let w = pot(&[(&[3], 1)], None);
        let dx = w.partial(0).unwrap();
        assert_eq!(dx, Poly::monomial(Monomial(vec![2]), Scalar::from_int(3)));
        // W = x^2 y + y^3
        let w = pot(&[(&[2, 1], 1), (&[0, 3], 1)], None);
        let dx = w.partial(0).unwrap();
        assert_eq!(
            dx,
            Poly::monomial(Monomial(vec![1, 1]), Scalar::from_int(2))
        );
        let dy = w.partial(1).unwrap();
        let mut expect = Poly::monomial(Monomial(vec![2, 0]), Scalar::one());
        expect.add_term(Monomial(vec![0, 2]), Scalar::from_int(3));
        assert_eq!(dy, expect);
        assert!(w.partial(2).is_err());
    }

    #[test]
    fn milnor_examples() {
        assert_eq!(
            pot(&[(&[2], 1)], None).milnor_number(40).unwrap(),
            Milnor::Finite(1)
        );
        assert_eq!(
            pot(&[(&[3, 0], 1), (&[0, 3], 1)], None)
                .milnor_number(40)
                .unwrap(),
            Milnor::Finite(4)
        );
        // whole y-axis singular
        assert_eq!(
            pot(&[(&[2, 1], 1)], None).milnor_number(40).unwrap(),
            Milnor::NotIsolated
        );
    }

    #[test]
    fn milnor_non_homogeneous() {
        // x^2 + x^5 is equivalent to A_1 near the origin
        assert_eq!(
            pot(&[(&[2], 1), (&[5], 1)], None).milnor_number(40).unwrap(),
            Milnor::Finite(1)
        );
        // x^3 + x^7: mu = 2
        assert_eq!(
            pot(&[(&[3], 1), (&[7], 1)], None).milnor_number(40).unwrap(),
            Milnor::Finite(2)
        );
        // T-singularity x^3 + y^3 + c x y (c generic): mu = 4 still at c = 0 only;
        // for x^2 y + y^4 (D_5 shape, non-homogeneous in the standard grading
        // but weighted-homogeneous): mu = 5
        assert_eq!(
            pot(&[(&[2, 1], 1), (&[0, 4], 1)], Some(vec![3, 2]))
                .milnor_number(40)
                .unwrap(),
            Milnor::Finite(5)
        );
    }

    #[test]
    fn milnor_invariant_under_variable_permutation() {
        let a = pot(&[(&[3, 0], 1), (&[1, 3], 1)], None); // E7: x^3 + x y^3
        let b = pot(&[(&[0, 3], 1), (&[3, 1], 1)], None); // swapped
        assert_eq!(
            a.milnor_number(40).unwrap(),
            b.milnor_number(40).unwrap()
        );
        assert_eq!(a.milnor_number(40).unwrap(), Milnor::Finite(7));
    }

    #[test]
    fn weighted_homogeneous_oracle() {
        // independent oracle: mu = prod(d/a_i - 1) for isolated
        // weighted-homogeneous potentials, computed with exact rationals
        let cases: Vec<(Potential, Vec<u32>, u64)> = vec![
            (pot(&[(&[4], 1)], Some(vec![1])), vec![1], 4),
            (
                pot(&[(&[3, 0], 1), (&[0, 4], 1)], Some(vec![4, 3])),
                vec![4, 3],
                12,
            ),
            (
                pot(&[(&[3, 0], 1), (&[1, 3], 1)], Some(vec![3, 2])),
                vec![3, 2],
                9,
            ),
            (
                pot(&[(&[3, 0], 1), (&[0, 5], 1)], Some(vec![5, 3])),
                vec![5, 3],
                15,
            ),
            (
                pot(&[(&[2, 1], 1), (&[0, 3], 1)], Some(vec![1, 1])),
                vec![1, 1],
                3,
            ),
        ];
        for (w, a, d) in cases {
            let mut expect = Rat::from_integer(1.into());
            for ai in &a {
                expect *= Rat::new((d as i64 - *ai as i64).into(), (*ai as i64).into());
            }
            let mu = match w.milnor_number(60).unwrap() {
                Milnor::Finite(m) => m,
                other => panic!("expected finite, got {other:?}"),
            };
            assert_eq!(Rat::from_integer((mu as i64).into()), expect, "W = {}", w.poly);
        }
    }

    #[test]
    fn splitting_examples() {
        // W = x^2, Euler weights (1), d = 2 -> W_1 = x
        let w = pot(&[(&[2], 1)], Some(vec![1]));
        let s = w.split(Splitting::Euler).unwrap();
        assert_eq!(s, vec![Poly::var(0, 1)]);
        // W = x^3 + y^3 -> (x^2, y^2)
        let w = pot(&[(&[3, 0], 1), (&[0, 3], 1)], Some(vec![1, 1]));
        let s = w.split(Splitting::Euler).unwrap();
        assert_eq!(
            s,
            vec![
                Poly::monomial(Monomial(vec![2, 0]), Scalar::one()),
                Poly::monomial(Monomial(vec![0, 2]), Scalar::one())
            ]
        );
        // W = xy greedy -> W_1 = y, W_2 = 0
        let w = pot(&[(&[1, 1], 1)], None);
        let s = w.split(Splitting::Greedy).unwrap();
        assert_eq!(s[0], Poly::var(1, 2));
        assert!(s[1].is_zero());
    }

    #[test]
    fn potential_validation() {
        let mut p = Poly::zero(1);
        p.add_term(Monomial(vec![1]), Scalar::one());
        assert!(Potential::new(p, None).is_err());
        let mut p = Poly::zero(2);
        p.add_term(Monomial(vec![3, 0]), Scalar::one());
        p.add_term(Monomial(vec![0, 2]), Scalar::one());
        assert!(Potential::new(p, Some(vec![1, 1])).is_err()); // not homogeneous
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(2, 2).len(), 3);
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(
            monomials_of_weighted_degree(2, &[2, 3], 6).len(),
            2 // x^3 and y^2
        );
    }
}
