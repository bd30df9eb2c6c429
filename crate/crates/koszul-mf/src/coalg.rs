//! The symmetric coalgebra sym(V) in the monomial basis e^K, its curvature
//! functional M dual to a potential, and the smash product coalgebra with a
//! cyclic group acting diagonally by root-of-unity scaling.
//!
//! The dual pairing is <e^K, f^K> = 1 (no factorials), so the coproduct of a
//! monomial is the plain sum over ordered splittings of its exponent vector.
//!
//! Characters of Z/dZ are chi_j(m) = zeta_d^(j m). The group algebra carries
//! the orthogonal idempotents U_j = (1/d) sum_m chi_j(m) g_m; smash elements
//! are stored in this basis, where the diagonal action makes the coproduct
//! rational: with P_j = d U_j,
//!   Delta(e^K (x) P_c) = sum_{I+J=K} (e^I (x) P_{c-|J|}) (x) (e^J (x) P_c).

use crate::poly::Monomial;
use crate::scalar::Scalar;
use crate::{Error, Potential, Result};
use std::collections::BTreeMap;

/// All ordered splittings I + J = K, each with coefficient 1.
pub fn coproduct(m: &Monomial) -> Vec<(Monomial, Monomial)> {
    let mut out = Vec::new();
    let mut left = vec![0u32; m.nvars()];
    fn rec(
        i: usize,
        k: &[u32],
        left: &mut Vec<u32>,
        out: &mut Vec<(Monomial, Monomial)>,
    ) {
        if i == k.len() {
            let l = Monomial(left.clone());
            let r = Monomial(k.iter().zip(left.iter()).map(|(a, b)| a - b).collect());
            out.push((l, r));
            return;
        }
        for v in 0..=k[i] {
            left[i] = v;
            rec(i + 1, k, left, out);
        }
    }
    rec(0, &m.0, &mut left, &mut out);
    out
}

/// Splittings with both factors nonscalar. Errors on the unit monomial.
pub fn reduced_coproduct(m: &Monomial) -> Result<Vec<(Monomial, Monomial)>> {
    if m.is_one() {
        return Err(Error::BadPotential("reduced coproduct of a scalar".into()));
    }
    Ok(coproduct(m)
        .into_iter()
        .filter(|(l, r)| !l.is_one() && !r.is_one())
        .collect())
}

/// The curvature functional M: monomials -> k, vanishing on scalar and linear
/// terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Curvature {
    nvars: usize,
    support: BTreeMap<Monomial, Scalar>,
}

impl Curvature {
    pub fn zero(nvars: usize) -> Self {
        Curvature {
            nvars,
            support: BTreeMap::new(),
        }
    }

    /// M(e^K) = coefficient of x^K in W under the monomial pairing.
    pub fn from_potential(w: &Potential) -> Self {
        let mut support = BTreeMap::new();
        for (m, c) in w.poly.terms() {
            debug_assert!(m.degree() >= 2);
            support.insert(m.clone(), c.clone());
        }
        Curvature {
            nvars: w.nvars(),
            support,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn eval(&self, m: &Monomial) -> Scalar {
        self.support.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.support.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }
}

/// Basis symbol f (x) U_j of the smash coalgebra.
pub type SmashBasis = (Monomial, u32);

/// Scalar combination of smash basis symbols; conductor-d cyclotomic scalars
/// are allowed in coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SmashElement {
    pub d: u32,
    pub terms: BTreeMap<SmashBasis, Scalar>,
}

impl SmashElement {
    pub fn zero(d: u32) -> Self {
        SmashElement {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(d: u32, m: Monomial, j: u32) -> Self {
        let mut e = SmashElement::zero(d);
        e.add_term((m, j % d), Scalar::one());
        e
    }

    pub fn add_term(&mut self, b: SmashBasis, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let cur = self.terms.remove(&b);
        let v = match cur {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(b, v);
        }
    }
}

/// Coproduct of the smash coalgebra in the idempotent basis:
/// Delta(f (x) U_c) = d * sum_{I+J=K} (e^I (x) U_{c-|J|}) (x) (e^J (x) U_c).
/// Returned as (left, right, coefficient) triples.
pub fn smash_coproduct(x: &SmashElement) -> Vec<(SmashBasis, SmashBasis, Scalar)> {
    let d = x.d;
    let mut out: BTreeMap<(SmashBasis, SmashBasis), Scalar> = BTreeMap::new();
    for ((m, c), coeff) in &x.terms {
        for (l, r) in coproduct(m) {
            let shift = ((*c as i64 - r.degree() as i64).rem_euclid(d as i64)) as u32;
            let key = ((l, shift), (r.clone(), *c));
            let v = coeff * &Scalar::from_int(d as i64);
            let cur = out.remove(&key);
            let nv = match cur {
                Some(old) => old + v,
                None => v,
            };
            if !nv.is_zero() {
                out.insert(key, nv);
            }
        }
    }
    out.into_iter().map(|((l, r), c)| (l, r, c)).collect()
}

/// Coefficients of U_j over the group-element basis (g_0, ..., g_{d-1}).
pub fn idempotent_in_group_basis(d: u32, j: u32) -> Vec<Scalar> {
    (0..d)
        .map(|m| Scalar::zeta_pow(d, (j as i64) * (m as i64)) * Scalar::from_frac(1, d as i64))
        .collect()
}

/// Product of two group-algebra elements in the group basis.
pub fn group_algebra_mul(d: u32, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); d as usize];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let k = (i + j) % d as usize;
            out[k] += &(x * y);
        }
    }
    out
}

/// The degree of f (x) U_j in the grading that makes the curvature degree 2:
/// (2/d)(|f| - j + i) with i in [0, d-1], i = j - |f| (mod d). `wdeg` is the
/// weighted degree of f. The coalgebra side carries the negated value.
pub fn smash_degree(wdeg: u64, j: u32, d: u32, coalgebra_side: bool) -> num_rational::BigRational {
    use num_bigint::BigInt;
    let i = (j as i64 - wdeg as i64).rem_euclid(d as i64);
    let val = num_rational::BigRational::new(
        BigInt::from(2 * (wdeg as i64 - j as i64 + i)),
        BigInt::from(d as i64),
    );
    if coalgebra_side {
        -val
    } else {
        val
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{monomials_of_degree, Poly};

    fn mono(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn coproduct_examples() {
        // unit is grouplike
        assert_eq!(coproduct(&mono(&[0])), vec![(mono(&[0]), mono(&[0]))]);
        // linear: e0 (x) e1 + e1 (x) e0 in the (left, right) listing
        let cp = coproduct(&mono(&[1]));
        assert_eq!(cp.len(), 2);
        // e1^2: three splittings
        assert_eq!(coproduct(&mono(&[2])).len(), 3);
        assert!(coproduct(&mono(&[2])).contains(&(mono(&[1]), mono(&[1]))));
    }

    #[test]
    fn reduced_coproduct_examples() {
        assert!(reduced_coproduct(&mono(&[0, 0])).is_err());
        assert!(reduced_coproduct(&mono(&[1])).unwrap().is_empty());
        assert_eq!(
            reduced_coproduct(&mono(&[2])).unwrap(),
            vec![(mono(&[1]), mono(&[1]))]
        );
        let cp = reduced_coproduct(&mono(&[1, 1])).unwrap();
        assert_eq!(cp.len(), 2);
        assert!(cp.contains(&(mono(&[1, 0]), mono(&[0, 1]))));
        assert!(cp.contains(&(mono(&[0, 1]), mono(&[1, 0]))));
    }

    #[test]
    fn coassociativity_up_to_degree_six() {
        for n in 1..=2usize {
            for t in 0..=6u32 {
                for m in monomials_of_degree(n, t) {
                    let mut lhs: BTreeMap<(Monomial, Monomial, Monomial), i64> = BTreeMap::new();
                    for (a, b) in coproduct(&m) {
                        for (a1, a2) in coproduct(&a) {
                            *lhs.entry((a1, a2, b.clone())).or_insert(0) += 1;
                        }
                    }
                    let mut rhs: BTreeMap<(Monomial, Monomial, Monomial), i64> = BTreeMap::new();
                    for (a, b) in coproduct(&m) {
                        for (b1, b2) in coproduct(&b) {
                            *rhs.entry((a.clone(), b1, b2)).or_insert(0) += 1;
                        }
                    }
                    assert_eq!(lhs, rhs, "m = {m}");
                }
            }
        }
    }

    #[test]
    fn counit_law() {
        // counit = coefficient at e^0: (eps (x) id) Delta = id
        for m in monomials_of_degree(2, 4) {
            let hits: Vec<_> = coproduct(&m)
                .into_iter()
                .filter(|(l, _)| l.is_one())
                .collect();
            assert_eq!(hits.len(), 1);
            assert_eq!(hits[0].1, m);
        }
    }

    #[test]
    fn curvature_from_potential() {
        let mut p = Poly::zero(2);
        p.add_term(mono(&[3, 0]), Scalar::one());
        p.add_term(mono(&[1, 2]), Scalar::from_int(2));
        let w = Potential::new(p, None).unwrap();
        let m = Curvature::from_potential(&w);
        assert_eq!(m.eval(&mono(&[3, 0])), Scalar::one());
        assert_eq!(m.eval(&mono(&[1, 2])), Scalar::from_int(2));
        assert_eq!(m.eval(&mono(&[0, 0])), Scalar::zero());
        assert_eq!(m.eval(&mono(&[1, 0])), Scalar::zero());
        let z = Potential::new(Poly::zero(1), None).unwrap();
        assert!(Curvature::from_potential(&z).is_zero());
    }

    #[test]
    fn idempotents_are_orthogonal() {
        for d in [1u32, 2, 3, 4] {
            for a in 0..d {
                for b in 0..d {
                    let ua = idempotent_in_group_basis(d, a);
                    let ub = idempotent_in_group_basis(d, b);
                    let prod = group_algebra_mul(d, &ua, &ub);
                    if a == b {
                        assert_eq!(prod, ua, "U_{a} idempotent, d = {d}");
                    } else {
                        assert!(
                            prod.iter().all(|c| c.is_zero()),
                            "U_{a} U_{b} = 0, d = {d}"
                        );
                    }
                }
            }
        }
    }

    /// Brute-force smash coproduct over the group-element basis, using the
    /// displayed rule with the diagonal action g_m . e^K = zeta^(m |K|) e^K.
    fn smash_coproduct_group_basis(
        d: u32,
        m: &Monomial,
        g: u32,
    ) -> BTreeMap<((Monomial, u32), (Monomial, u32)), Scalar> {
        let mut out: BTreeMap<((Monomial, u32), (Monomial, u32)), Scalar> = BTreeMap::new();
        for g1 in 0..d {
            let g2 = (g + d - g1) % d;
            for (l, r) in coproduct(m) {
                let phase = Scalar::zeta_pow(d, -(g1 as i64) * r.degree() as i64);
                let key = ((l, g1), (r.clone(), g2));
                let cur = out.remove(&key).unwrap_or_else(Scalar::zero);
                let nv = cur + phase;
                if !nv.is_zero() {
                    out.insert(key, nv);
                }
            }
        }
        out
    }

    #[test]
    fn smash_coproduct_matches_group_basis_brute_force() {
        for d in [2u32, 3] {
            for j in 0..d {
                for m in [mono(&[1]), mono(&[2]), mono(&[3])] {
                    let x = SmashElement::basis(d, m.clone(), j);
                    let fast = smash_coproduct(&x);
                    // brute force: U_j = (1/d) sum_g chi_j(g) (x) g
                    let mut slow: BTreeMap<((Monomial, u32), (Monomial, u32)), Scalar> =
                        BTreeMap::new();
                    let uj = idempotent_in_group_basis(d, j);
                    for (g, coeff) in uj.iter().enumerate() {
                        for (key, phase) in smash_coproduct_group_basis(d, &m, g as u32) {
                            let cur = slow.remove(&key).unwrap_or_else(Scalar::zero);
                            let nv = cur + coeff * &phase;
                            if !nv.is_zero() {
                                slow.insert(key, nv);
                            }
                        }
                    }
                    // convert group-basis tensors to the U basis on both legs:
                    // g_a = sum_c zeta^(-c a) U_c
                    let mut slow_u: BTreeMap<((Monomial, u32), (Monomial, u32)), Scalar> =
                        BTreeMap::new();
                    for (((l, a), (r, b)), coeff) in &slow {
                        for c1 in 0..d {
                            for c2 in 0..d {
                                let conv = Scalar::zeta_pow(
                                    d,
                                    -((c1 as i64) * (*a as i64)) - (c2 as i64) * (*b as i64),
                                );
                                let key = ((l.clone(), c1), (r.clone(), c2));
                                let cur = slow_u.remove(&key).unwrap_or_else(Scalar::zero);
                                let nv = cur + coeff * &conv;
                                if !nv.is_zero() {
                                    slow_u.insert(key, nv);
                                }
                            }
                        }
                    }
                    let fast_map: BTreeMap<_, _> =
                        fast.into_iter().map(|(l, r, c)| ((l, r), c)).collect();
                    assert_eq!(fast_map, slow_u, "d = {d}, j = {j}, m = {m}");
                }
            }
        }
    }

    #[test]
    fn trivial_group_reduces_to_plain_coproduct() {
        let m = mono(&[2, 1]);
        let x = SmashElement::basis(1, m.clone(), 0);
        let cp = smash_coproduct(&x);
        assert_eq!(cp.len(), coproduct(&m).len());
        for (_, _, c) in &cp {
            assert_eq!(*c, Scalar::one());
        }
    }

    #[test]
    fn smash_coproduct_coassociative() {
        for d in [2u32, 3, 4] {
            for m in [mono(&[2]), mono(&[3]), mono(&[1])] {
                for j in 0..d {
                    let x = SmashElement::basis(d, m.clone(), j);
                    let mut lhs: BTreeMap<_, Scalar> = BTreeMap::new();
                    for (l, r, c) in smash_coproduct(&x) {
                        let xl = SmashElement::basis(d, l.0.clone(), l.1);
                        for (l1, l2, c2) in smash_coproduct(&xl) {
                            let key = (l1, l2, r.clone());
                            let cur = lhs.remove(&key).unwrap_or_else(Scalar::zero);
                            let nv = cur + &c * &c2;
                            if !nv.is_zero() {
                                lhs.insert(key, nv);
                            }
                        }
                    }
                    let mut rhs: BTreeMap<_, Scalar> = BTreeMap::new();
                    for (l, r, c) in smash_coproduct(&x) {
                        let xr = SmashElement::basis(d, r.0.clone(), r.1);
                        for (r1, r2, c2) in smash_coproduct(&xr) {
                            let key = (l.clone(), r1, r2);
                            let cur = rhs.remove(&key).unwrap_or_else(Scalar::zero);
                            let nv = cur + &c * &c2;
                            if !nv.is_zero() {
                                rhs.insert(key, nv);
                            }
                        }
                    }
                    assert_eq!(lhs, rhs, "d = {d}, m = {m}, j = {j}");
                }
            }
        }
    }

    #[test]
    fn grading_examples() {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        let rat = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        // |f| = d, j = 0 -> degree 2 (the curvature sector)
        for d in [2u32, 3, 5] {
            assert_eq!(smash_degree(d as u64, 0, d, false), rat(2, 1));
        }
        // unit has degree 0
        assert_eq!(smash_degree(0, 0, 3, false), rat(0, 1));
        // d = 3, |f| = 1, j = 0 -> i = 2, degree (2/3)(1 - 0 + 2) = 2
        assert_eq!(smash_degree(1, 0, 3, false), rat(2, 1));
        // coalgebra side negates
        assert_eq!(smash_degree(1, 0, 3, true), rat(-2, 1));
    }

    #[test]
    fn curvature_sector_degree_two() {
        // every idempotent component W (x) U_j of the curvature has degree 2
        for d in [2u32, 3, 4, 6] {
            for j in 0..d {
                assert_eq!(
                    smash_degree(d as u64, j, d, false),
                    num_rational::BigRational::new(2.into(), 1.into()),
                    "d = {d}, j = {j}"
                );
            }
        }
    }
}
