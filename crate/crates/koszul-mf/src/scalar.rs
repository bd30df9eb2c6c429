//! Exact scalars: rational numbers and elements of the cyclotomic field Q(zeta_d).
//!
//! A cyclotomic element is stored as a coefficient vector of length phi(d)
//! representing a residue modulo the d-th cyclotomic polynomial Phi_d, so
//! equality of field elements is equality of representations. Elements whose
//! higher coefficients vanish are demoted to the rational variant, which keeps
//! the representation canonical across mixed arithmetic.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

pub type Rat = BigRational;

/// An exact element of Q or of Q(zeta_d).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rat),
    /// Coefficients of 1, zeta, ..., zeta^(phi(d)-1); always reduced mod Phi_d,
    /// and never actually rational (some coefficient of index >= 1 is nonzero).
    Cyc { d: u32, coeffs: Vec<Rat> },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rat::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rat(Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar::Rat(r)
    }

    /// A primitive d-th root of unity, reduced mod Phi_d.
    pub fn zeta(d: u32) -> Self {
        Self::zeta_pow(d, 1)
    }

    /// zeta_d^k for any integer exponent k.
    pub fn zeta_pow(d: u32, k: i64) -> Self {
        assert!(d >= 1);
        let k = k.rem_euclid(d as i64) as usize;
        let table = cyclo_table(d);
        let mut coeffs = vec![Rat::zero(); table.phi];
        if k < table.phi {
            coeffs[k] = Rat::one();
        } else {
            for (i, c) in table.power_rows[k - table.phi].iter().enumerate() {
                coeffs[i] = c.clone();
            }
        }
        normalize_cyc(d, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Cyc { .. } => false, // canonical form demotes rationals
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    /// Conductor of this element: `None` for rationals.
    pub fn conductor(&self) -> Option<u32> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Cyc { d, .. } => Some(*d),
        }
    }

    /// The common conductor of two elements, or a mismatch error.
    pub fn unify_conductor(&self, other: &Scalar) -> Result<Option<u32>> {
        match (self.conductor(), other.conductor()) {
            (None, c) | (c, None) => Ok(c),
            (Some(a), Some(b)) if a == b => Ok(Some(a)),
            (Some(a), Some(b)) => Err(Error::ConductorMismatch(a, b)),
        }
    }

    /// Exact product reduced modulo the cyclotomic polynomial; errors on a
    /// conductor mismatch.
    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.unify_conductor(other)?;
        Ok(self * other)
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.unify_conductor(other)?;
        Ok(self + other)
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => {
                assert!(!r.is_zero(), "division by zero");
                Scalar::Rat(r.recip())
            }
            Scalar::Cyc { d, coeffs } => {
                let table = cyclo_table(*d);
                let inv = poly_inverse_mod(coeffs, &table.phi_d_rat);
                normalize_cyc(*d, inv)
            }
        }
    }

    /// View as a rational if the element lies in Q.
    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Cyc { .. } => None,
        }
    }

    /// Coefficient vector in the power basis of Q(zeta_d); rationals embed.
    pub fn cyc_coeffs(&self, d: u32) -> Vec<Rat> {
        let phi = cyclo_table(d).phi;
        match self {
            Scalar::Rat(r) => {
                let mut v = vec![Rat::zero(); phi];
                v[0] = r.clone();
                v
            }
            Scalar::Cyc { d: dd, coeffs } => {
                assert_eq!(*dd, d, "conductor mismatch");
                coeffs.clone()
            }
        }
    }
}

fn lift(a: &Scalar, d: u32) -> Vec<Rat> {
    a.cyc_coeffs(d)
}

/// Demote a reduced coefficient vector to `Rat` when possible.
fn normalize_cyc(d: u32, coeffs: Vec<Rat>) -> Scalar {
    if coeffs.iter().skip(1).all(|c| c.is_zero()) {
        Scalar::Rat(coeffs.into_iter().next().unwrap_or_else(Rat::zero))
    } else {
        Scalar::Cyc { d, coeffs }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Cyc { d, coeffs } => {
                let mut first = true;
                for (k, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    if k == 0 {
                        write!(f, "{c}")?;
                    } else if c.is_one() {
                        write!(f, "z{d}^{k}")?;
                    } else {
                        write!(f, "({c})*z{d}^{k}")?;
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::$method(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar::$method(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::$method(&self, rhs)
            }
        }
    };
}

impl Scalar {
    fn add(a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => {
                let d = a
                    .unify_conductor(b)
                    .expect("incompatible scalar fields")
                    .unwrap();
                let (x, y) = (lift(a, d), lift(b, d));
                normalize_cyc(d, x.iter().zip(&y).map(|(p, q)| p + q).collect())
            }
        }
    }

    fn sub(a: &Scalar, b: &Scalar) -> Scalar {
        Scalar::add(a, &-b.clone())
    }

    fn mul(a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => {
                let d = a
                    .unify_conductor(b)
                    .expect("incompatible scalar fields")
                    .unwrap();
                let (x, y) = (lift(a, d), lift(b, d));
                let table = cyclo_table(d);
                // convolve, then fold powers >= phi(d) via the reduction rows
                let phi = table.phi;
                let mut conv = vec![Rat::zero(); 2 * phi - 1];
                for (i, p) in x.iter().enumerate() {
                    if p.is_zero() {
                        continue;
                    }
                    for (j, q) in y.iter().enumerate() {
                        if q.is_zero() {
                            continue;
                        }
                        conv[i + j] += p * q;
                    }
                }
                let mut out = conv[..phi].to_vec();
                for (k, c) in conv.iter().enumerate().skip(phi) {
                    if c.is_zero() {
                        continue;
                    }
                    for (i, r) in table.power_rows[k - phi].iter().enumerate() {
                        out[i] += c * r;
                    }
                }
                normalize_cyc(d, out)
            }
        }
    }

    fn div(a: &Scalar, b: &Scalar) -> Scalar {
        Scalar::mul(a, &b.inv())
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Cyc { d, coeffs } => Scalar::Cyc {
                d,
                coeffs: coeffs.into_iter().map(|c| -c).collect(),
            },
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = Scalar::add(self, rhs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = Scalar::sub(self, rhs);
    }
}

struct CycloTable {
    phi: usize,
    /// Phi_d as rational coefficients (monic), ascending degree.
    phi_d_rat: Vec<Rat>,
    /// Row k holds the reduction of zeta^(phi+k) for k in 0..phi-1.
    power_rows: Vec<Vec<Rat>>,
}

fn cyclo_tables() -> &'static Mutex<HashMap<u32, &'static CycloTable>> {
    static TABLES: OnceLock<Mutex<HashMap<u32, &'static CycloTable>>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cyclo_table(d: u32) -> &'static CycloTable {
    let mut map = cyclo_tables().lock().unwrap();
    if let Some(t) = map.get(&d) {
        return t;
    }
    let phi_poly = cyclotomic_poly(d);
    let phi = phi_poly.len() - 1;
    let phi_d_rat: Vec<Rat> = phi_poly.iter().map(|c| Rat::from_integer(c.clone())).collect();
    // zeta^phi = -(lower coefficients); higher powers reduce recursively
    let mut power_rows: Vec<Vec<Rat>> = Vec::with_capacity(phi.max(1));
    let base: Vec<Rat> = phi_d_rat[..phi].iter().map(|c| -c).collect();
    power_rows.push(base);
    for k in 1..phi {
        let prev = &power_rows[k - 1];
        // multiply by zeta: shift, then reduce the overflow coefficient
        let overflow = prev[phi - 1].clone();
        let mut row = vec![Rat::zero(); phi];
        for i in 1..phi {
            row[i] = prev[i - 1].clone();
        }
        if !overflow.is_zero() {
            for (i, r) in power_rows[0].iter().enumerate() {
                row[i] += &overflow * r;
            }
        }
        power_rows.push(row);
    }
    let table: &'static CycloTable = Box::leak(Box::new(CycloTable {
        phi,
        phi_d_rat,
        power_rows,
    }));
    map.insert(d, table);
    table
}

/// The d-th cyclotomic polynomial with integer coefficients, ascending degree.
/// Computed as (x^d - 1) divided by Phi_e for every proper divisor e of d.
fn cyclotomic_poly(d: u32) -> Vec<BigInt> {
    assert!(d >= 1);
    if d == 1 {
        return vec![BigInt::from(-1), BigInt::from(1)];
    }
    let mut num = vec![BigInt::from(0); d as usize + 1];
    num[0] = BigInt::from(-1);
    num[d as usize] = BigInt::from(1);
    for e in 1..d {
        if d % e == 0 {
            num = int_poly_exact_div(&num, &cyclotomic_poly(e));
        }
    }
    num
}

/// Exact division of integer polynomials (remainder must vanish).
fn int_poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(dn >= dd);
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::from(0); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        debug_assert!((&c % &den[dd]).is_zero());
        let q = &c / &den[dd];
        for i in 0..=dd {
            let t = &den[i] * &q;
            rem[k + i] -= t;
        }
        quot[k] = q;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

/// Inverse of `a` modulo the monic polynomial `m` via the extended Euclidean
/// algorithm over Q[x].
fn poly_inverse_mod(a: &[Rat], m: &[Rat]) -> Vec<Rat> {
    let trim = |v: &mut Vec<Rat>| {
        while v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
    };
    let mut r0: Vec<Rat> = m.to_vec();
    let mut r1: Vec<Rat> = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    assert!(!r1.is_empty(), "division by zero in Q(zeta)");
    let mut s0: Vec<Rat> = vec![];
    let mut s1: Vec<Rat> = vec![Rat::one()];
    while r1.len() > 1 {
        let (q, rem) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = rem;
        trim(&mut r1);
        s0 = s1;
        s1 = s2;
    }
    assert!(
        r1.len() == 1 && !r1[0].is_zero(),
        "element not invertible mod Phi_d"
    );
    let c = r1[0].recip();
    let mut inv: Vec<Rat> = s1.iter().map(|x| x * &c).collect();
    // reduce inv mod m to degree < deg m
    let (_, red) = poly_divmod(&inv, &m.to_vec());
    inv = red;
    inv.resize(m.len() - 1, Rat::zero());
    inv
}

fn poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut den = den.to_vec();
    while den.last().map_or(false, |c| c.is_zero()) {
        den.pop();
    }
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    while rem.last().map_or(false, |c| c.is_zero()) {
        rem.pop();
    }
    if rem.len() <= dd {
        return (vec![], rem);
    }
    let dn = rem.len() - 1;
    let lead = den[dd].recip();
    let mut quot = vec![Rat::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = &rem[k + dd] * &lead;
        if c.is_zero() {
            continue;
        }
        for i in 0..=dd {
            let t = &den[i] * &c;
            rem[k + i] -= t;
        }
        quot[k] = c;
    }
    while rem.last().map_or(false, |c| c.is_zero()) {
        rem.pop();
    }
    (quot, rem)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, p) in a.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (j, q) in b.iter().enumerate() {
            out[i + j] += p * q;
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    out
}

/// Parse a decimal-free rational string like "3", "-7/2".
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rat::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rat::from_integer(n))
    }
}

/// Euler totient, used for coefficient vector lengths.
pub fn euler_phi(d: u32) -> usize {
    cyclo_table(d).phi
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(d: u32, k: i64) -> Scalar {
        Scalar::zeta_pow(d, k)
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(cyclotomic_poly(2), vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(
            cyclotomic_poly(3),
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)]
        );
        assert_eq!(
            cyclotomic_poly(4),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]
        );
        // Phi_6 = x^2 - x + 1
        assert_eq!(
            cyclotomic_poly(6),
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]
        );
        assert_eq!(cyclotomic_poly(12).len() - 1, 4);
    }

    #[test]
    fn zeta4_squares_to_minus_one() {
        let i = z(4, 1);
        assert_eq!(&i * &i, Scalar::from_int(-1));
    }

    #[test]
    fn zeta3_times_zeta3_sq_is_one() {
        assert_eq!(&z(3, 1) * &z(3, 2), Scalar::one());
    }

    #[test]
    fn one_plus_zeta3_product() {
        // (1 + z3)(1 + z3^2) = 1 + z3 + z3^2 + 1 = 1, using z3^2 + z3 + 1 = 0
        let a = Scalar::one() + z(3, 1);
        let b = Scalar::one() + z(3, 2);
        assert_eq!(a * b, Scalar::one());
    }

    #[test]
    fn inverse_in_cyclotomic_field() {
        for d in [3u32, 4, 5, 8, 12] {
            let a = Scalar::one() + z(d, 1) + Scalar::from_frac(2, 3) * z(d, 2);
            let inv = a.inv();
            assert_eq!(&a * &inv, Scalar::one(), "d = {d}");
        }
    }

    #[test]
    fn conductor_mismatch_errors() {
        let a = z(3, 1);
        let b = z(4, 1);
        assert_eq!(a.checked_mul(&b), Err(Error::ConductorMismatch(3, 4)));
        // rationals are compatible with every conductor
        assert!(Scalar::from_int(2).checked_mul(&a).is_ok());
    }

    #[test]
    fn canonical_demotion() {
        // zeta_d^d = 1 must come back as the rational 1
        for d in [1u32, 2, 3, 4, 6, 5] {
            let mut p = Scalar::one();
            for _ in 0..d {
                p = p * z(d, 1);
            }
            assert_eq!(p, Scalar::one(), "zeta_{d}^{d}");
        }
        assert_eq!(z(2, 1), Scalar::from_int(-1));
    }

    #[test]
    fn sum_of_all_roots_is_zero_for_prime() {
        for d in [3u32, 5, 7] {
            let mut s = Scalar::zero();
            for k in 0..d {
                s = s + z(d, k as i64);
            }
            assert!(s.is_zero(), "sum of zeta_{d}^k");
        }
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rat("3").unwrap(), Rat::from_integer(BigInt::from(3)));
        assert_eq!(
            parse_rat("-7/2").unwrap(),
            Rat::new(BigInt::from(-7), BigInt::from(2))
        );
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("1/0").is_err());
    }
}
