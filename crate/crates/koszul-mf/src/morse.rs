//! A combinatorial special retraction of the cobar complex (words, d+) onto
//! the exterior algebra, built from an acyclic matching instead of the metric
//! Green's operator. The homotopy is evaluated by a terminating memoised
//! recursion, so it stays fast on the large windows where exact linear
//! algebra is out of reach.
//!
//! Matching: scan a word left to right for the first reducible position,
//! where a position j is reducible when its letter is nonlinear (split off
//! the largest variable) or when it is linear with index >= every variable
//! of the next letter (merge into the next letter). Words with no reducible
//! position are exactly the strictly increasing linear words, one per
//! square-free multidegree, matching a basis of the exterior algebra.
//!
//! With V the matching operator and Phi = id - dV - Vd the flow, the
//! homotopy is h = sum V Phi^j, which on a mergeable word tau with partner
//! sigma (= the merged word, with <d sigma, tau> = c) reduces to
//!     h(tau) = sigma/c - h((d sigma - c tau)/c)
//! and vanishes on splittable and critical words. The retraction
//!     p(x) = critical part of x - d h(x) - h(d x),    i(s) = s
//! satisfies p i = id, i p = id - d h - h d, h i = 0, p h = 0, h^2 = 0,
//! so (i, p, -h) is a special retraction in the sign convention
//! i p = id + d H + H d used everywhere else in this crate.

use crate::cobar::{d_plus_word, CobarElt, Word};
use crate::hodge::{ExtElt, ExtWord};
use crate::lin::Lin;
use crate::poly::Monomial;
use crate::scalar::Scalar;
use std::collections::HashMap;
use std::sync::RwLock;

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    /// Strictly increasing linear word.
    Critical,
    /// First reducible letter is nonlinear: matched upward by splitting.
    Splittable,
    /// First reducible letter merges into its successor: matched downward.
    /// Holds the merged word and the coefficient c = <d merged, self>.
    Mergeable(Word, Scalar),
}

fn max_var(m: &Monomial) -> usize {
    m.0.iter().rposition(|&k| k > 0).expect("nonscalar letter")
}

fn linear_index(m: &Monomial) -> Option<usize> {
    if m.degree() == 1 {
        Some(max_var(m))
    } else {
        None
    }
}

/// Classify a word by its first reducible position.
fn classify(w: &Word) -> Cell {
    for j in 0..w.len() {
        let letter = &w.0[j];
        match linear_index(letter) {
            None => return Cell::Splittable,
            Some(b) => {
                let Some(next) = w.0.get(j + 1) else {
                    continue;
                };
                if b >= max_var(next) {
                    // merge letter j into letter j+1
                    let mut letters = Vec::with_capacity(w.len() - 1);
                    letters.extend(w.0[..j].iter().cloned());
                    letters.push(letter.mul(next));
                    letters.extend(w.0[j + 2..].iter().cloned());
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    return Cell::Mergeable(Word(letters), Scalar::from_int(sign));
                }
            }
        }
    }
    Cell::Critical
}

/// The matching-based contraction, memoised per word.
pub struct Morse {
    cache: RwLock<HashMap<Word, Lin<Word>>>,
}

impl Default for Morse {
    fn default() -> Self {
        Self::new()
    }
}

impl Morse {
    pub fn new() -> Self {
        Morse {
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// The raw splitting homotopy h (sign convention i p = id - d h - h d).
    fn h_word(&self, w: &Word) -> Lin<Word> {
        let Cell::Mergeable(..) = classify(w) else {
            return Lin::zero();
        };
        if let Some(hit) = self.cache.read().unwrap().get(w) {
            return hit.clone();
        }
        let Cell::Mergeable(sigma, c) = classify(w) else {
            unreachable!()
        };
        let cinv = c.inv();
        // rho = d sigma - c w, supported off w
        let mut rho = d_plus_word(&sigma);
        rho.add_term(w.clone(), -c.clone());
        let mut out = Lin::single(sigma, cinv.clone());
        for (u, coeff) in rho.iter() {
            let hu = self.h_word(u);
            if !hu.is_zero() {
                let factor = -(coeff * &cinv);
                out.add_assign(&hu.scale(&factor));
            }
        }
        self.cache.write().unwrap().insert(w.clone(), out.clone());
        out
    }

    fn h(&self, x: &CobarElt) -> CobarElt {
        x.map(|w| self.h_word(w))
    }

    /// The special homotopy in the crate's sign convention
    /// i p = id + d H + H d.
    pub fn homotopy(&self, x: &CobarElt) -> CobarElt {
        self.h(x).neg()
    }

    /// The projection onto the exterior algebra along the matching.
    pub fn project(&self, x: &CobarElt) -> ExtElt {
        let mut out: ExtElt = Lin::zero();
        for (w, coeff) in x.iter() {
            let mut pi: CobarElt = Lin::single(w.clone(), coeff.clone());
            pi.add_assign(&d_plus_word_lin(&self.h_word(w)).scale(&-coeff.clone()));
            pi.add_assign(&self.h(&d_plus_word(w)).scale(&-coeff.clone()));
            for (u, cu) in pi.iter() {
                if let Some(s) = critical_to_ext(u) {
                    out.add_term(s, cu.clone());
                }
            }
        }
        out
    }

    /// Inclusion of the exterior algebra: the critical word itself.
    pub fn include(&self, x: &ExtElt, nvars: usize) -> CobarElt {
        x.map(|s| Lin::basis(ext_to_critical(s, nvars)))
    }
}

fn d_plus_word_lin(x: &Lin<Word>) -> Lin<Word> {
    x.map(d_plus_word)
}

/// Critical words are strictly increasing linear words.
pub fn critical_to_ext(w: &Word) -> Option<ExtWord> {
    let mut idx = Vec::with_capacity(w.len());
    for letter in &w.0 {
        idx.push(linear_index(letter)?);
    }
    if idx.windows(2).any(|p| p[0] >= p[1]) {
        return None;
    }
    Some(ExtWord(idx))
}

pub fn ext_to_critical(s: &ExtWord, nvars: usize) -> Word {
    Word(s.0.iter().map(|&i| Monomial::var(i, nvars)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobar::{d_plus, weight_basis};
    use crate::hodge::ext_basis;

    fn mono(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    fn word(ms: &[&[u32]]) -> Word {
        Word(ms.iter().map(|e| mono(e)).collect())
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&Word::unit()), Cell::Critical);
        assert_eq!(classify(&word(&[&[1, 0], &[0, 1]])), Cell::Critical);
        assert_eq!(classify(&word(&[&[2]])), Cell::Splittable);
        // [e2|e1] merges into [e1 e2]
        match classify(&word(&[&[0, 1], &[1, 0]])) {
            Cell::Mergeable(sigma, c) => {
                assert_eq!(sigma, word(&[&[1, 1]]));
                assert_eq!(c, Scalar::one());
            }
            other => panic!("expected mergeable, got {other:?}"),
        }
        // [e1|e1] merges into [e1^2]
        assert!(matches!(
            classify(&word(&[&[1], &[1]])),
            Cell::Mergeable(..)
        ));
    }

    #[test]
    fn matching_is_an_involution() {
        // every mergeable word's partner is splittable, and the split of the
        // partner at its first reducible letter returns the original
        for n in 1..=3usize {
            for wt in 1..=5u32 {
                for w in weight_basis(n, wt) {
                    if let Cell::Mergeable(sigma, c) = classify(&w) {
                        assert_eq!(classify(&sigma), Cell::Splittable, "{w} -> {sigma}");
                        // w appears in d sigma with coefficient c
                        assert_eq!(d_plus_word(&sigma).coeff(&w), c, "{w} -> {sigma}");
                    }
                }
            }
        }
    }

    #[test]
    fn counts_match_exterior_algebra() {
        for n in 1..=3usize {
            for wt in 0..=5u32 {
                let crit = weight_basis(n, wt)
                    .into_iter()
                    .filter(|w| classify(w) == Cell::Critical)
                    .count();
                let expect = if wt as usize <= n {
                    binomial(n, wt as usize)
                } else {
                    0
                };
                assert_eq!(crit, expect, "n = {n}, wt = {wt}");
            }
        }
    }

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut r = 1usize;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }

    #[test]
    fn retraction_identities() {
        let m = Morse::new();
        for n in 1..=3usize {
            let cap = if n == 3 { 5 } else { 6 };
            // p i = id and h i = 0 on the exterior basis
            for s in ext_basis(n) {
                let inc = m.include(&Lin::basis(s.clone()), n);
                assert_eq!(m.project(&inc), Lin::basis(s.clone()), "p i on {s}");
                assert!(m.homotopy(&inc).is_zero(), "H i on {s}");
                // the small differential vanishes
                assert!(m.project(&d_plus(&inc)).is_zero(), "b on {s}");
            }
            for wt in 0..=cap {
                for w in weight_basis(n, wt) {
                    let x: CobarElt = Lin::basis(w.clone());
                    let ip = m.include(&m.project(&x), n);
                    let rhs = x
                        .add(&d_plus(&m.homotopy(&x)))
                        .add(&m.homotopy(&d_plus(&x)));
                    assert_eq!(ip, rhs, "i p = id + dH + Hd on {w}");
                    assert!(m.project(&m.homotopy(&x)).is_zero(), "p H on {w}");
                    assert!(m.homotopy(&m.homotopy(&x)).is_zero(), "H^2 on {w}");
                }
            }
        }
    }

    #[test]
    fn homotopy_stays_in_weight_and_drops_length() {
        let m = Morse::new();
        for w in (1..=6u32).flat_map(|wt| weight_basis(2, wt)) {
            for (u, _) in m.homotopy(&Lin::basis(w.clone())).iter() {
                assert_eq!(u.weight(), w.weight());
                assert_eq!(u.len() + 1, w.len());
            }
        }
    }
}
