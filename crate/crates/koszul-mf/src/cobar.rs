//! The cobar dg algebra of the curved symmetric coalgebra: weight-graded word
//! bases, the splitting differential d+ and the curvature differential d-,
//! the concatenation product, and the integer grading used for graded matrix
//! factorizations.
//!
//! Letters are nonscalar monomials and are odd after the shift, so a word of
//! length k has parity k mod 2. Both differentials carry the sign (-1)^(i-1)
//! at position i; d+ preserves the polynomial weight and d- strictly lowers
//! it, which is why every weight-capped window is closed under all operators.

use crate::coalg::{reduced_coproduct, Curvature};
use crate::lin::Lin;
use crate::poly::{monomials_of_degree, Monomial};
use crate::scalar::Scalar;
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;

/// A word [f_1|...|f_k] of nonscalar monomials; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Monomial>);

impl Word {
    pub fn unit() -> Self {
        Word(vec![])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total polynomial weight, the sum of the letters' degrees.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|m| m.degree()).sum()
    }

    pub fn weighted_weight(&self, weights: &[u32]) -> u64 {
        self.0.iter().map(|m| m.weighted_degree(weights)).sum()
    }

    /// Parity: letters are odd, so this is the word length mod 2.
    pub fn parity(&self) -> u8 {
        (self.len() % 2) as u8
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend(other.0.iter().cloned());
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "[]");
        }
        write!(f, "[")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

/// Element of the cobar algebra: a finite combination of words.
pub type CobarElt = Lin<Word>;

fn sign(s: i64) -> Scalar {
    Scalar::from_int(s)
}

/// d+ on a single word: replace each letter by its reduced coproduct with the
/// sign (-1)^(i-1). Weight is preserved, length grows by one.
pub fn d_plus_word(w: &Word) -> CobarElt {
    let mut out = Lin::zero();
    for (i, letter) in w.0.iter().enumerate() {
        let sgn = if i % 2 == 0 { 1 } else { -1 };
        for (l, r) in reduced_coproduct(letter).expect("letters are nonscalar") {
            let mut letters = Vec::with_capacity(w.len() + 1);
            letters.extend(w.0[..i].iter().cloned());
            letters.push(l);
            letters.push(r);
            letters.extend(w.0[i + 1..].iter().cloned());
            out.add_term(Word(letters), sign(sgn));
        }
    }
    out
}

/// d- on a single word: drop each letter against the curvature functional,
/// with the sign (-1)^(i-1). Weight drops by the weight of the letter.
pub fn d_minus_word(w: &Word, m: &Curvature) -> CobarElt {
    let mut out = Lin::zero();
    for (i, letter) in w.0.iter().enumerate() {
        let c = m.eval(letter);
        if c.is_zero() {
            continue;
        }
        let sgn = if i % 2 == 0 { 1 } else { -1 };
        let mut letters = Vec::with_capacity(w.len() - 1);
        letters.extend(w.0[..i].iter().cloned());
        letters.extend(w.0[i + 1..].iter().cloned());
        out.add_term(Word(letters), c * sign(sgn));
    }
    out
}

pub fn d_plus(x: &CobarElt) -> CobarElt {
    x.map(d_plus_word)
}

pub fn d_minus(x: &CobarElt, m: &Curvature) -> CobarElt {
    x.map(|w| d_minus_word(w, m))
}

/// The full cobar differential d = d+ + d-.
pub fn d_total(x: &CobarElt, m: &Curvature) -> CobarElt {
    d_plus(x).add(&d_minus(x, m))
}

/// Concatenation product, bilinear; the empty word is the unit.
pub fn cobar_product(x: &CobarElt, y: &CobarElt) -> CobarElt {
    let mut out = Lin::zero();
    for (w1, c1) in x.iter() {
        for (w2, c2) in y.iter() {
            out.add_term(w1.concat(w2), c1 * c2);
        }
    }
    out
}

/// All words of weight exactly `n`, ordered by length then lexicographically.
pub fn weight_basis(nvars: usize, n: u32) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    // compositions of n into parts >= 1, each part expanded to its monomials
    fn rec(nvars: usize, rem: u32, current: &mut Vec<Monomial>, out: &mut Vec<Word>) {
        if rem == 0 {
            out.push(Word(current.clone()));
            return;
        }
        for part in 1..=rem {
            for m in monomials_of_degree(nvars, part) {
                current.push(m);
                rec(nvars, rem - part, current, out);
                current.pop();
            }
        }
    }
    if n == 0 {
        return vec![Word::unit()];
    }
    let mut current = Vec::new();
    rec(nvars, n, &mut current, &mut out);
    out.sort_by(|a, b| (a.len(), &a.0).cmp(&(b.len(), &b.0)));
    out
}

/// Words of weight exactly `w` and length exactly `k`.
pub fn block_basis(nvars: usize, w: u32, k: usize) -> Vec<Word> {
    weight_basis(nvars, w)
        .into_iter()
        .filter(|word| word.len() == k)
        .collect()
}

/// Enumerated window of all words of weight <= N with index maps, organised
/// per (weight, length) block. Closed under d+, d- and the Hodge operators.
pub struct WeightWindow {
    pub nvars: usize,
    pub max_weight: u32,
    pub blocks: BTreeMap<(u32, usize), Vec<Word>>,
}

impl WeightWindow {
    pub fn build(nvars: usize, max_weight: u32) -> Self {
        let mut blocks: BTreeMap<(u32, usize), Vec<Word>> = BTreeMap::new();
        for w in 0..=max_weight {
            for word in weight_basis(nvars, w) {
                blocks.entry((w, word.len())).or_default().push(word);
            }
        }
        WeightWindow {
            nvars,
            max_weight,
            blocks,
        }
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.blocks.values().flatten()
    }

    pub fn dim(&self) -> usize {
        self.blocks.values().map(|b| b.len()).sum()
    }

    pub fn block(&self, w: u32, k: usize) -> &[Word] {
        self.blocks
            .get(&(w, k))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }
}

/// Outcome of the d^2 = 0 sweep: how many words were checked, and the first
/// word whose image fails to vanish (a sign-convention bug witness).
#[derive(Debug, Clone)]
pub struct DSquaredReport {
    pub checked: usize,
    pub counterexample: Option<(Word, CobarElt)>,
}

impl DSquaredReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Assert (d+ + d-)^2 = 0 on every word of weight <= N.
pub fn check_d_squared(nvars: usize, m: &Curvature, max_weight: u32) -> DSquaredReport {
    let words: Vec<Word> = (0..=max_weight)
        .flat_map(|w| weight_basis(nvars, w))
        .collect();
    let failing = crate::par::first_failure(&words, |word| {
        let once = d_total(&Lin::basis(word.clone()), m);
        d_total(&once, m).is_zero()
    });
    DSquaredReport {
        checked: words.len(),
        counterexample: failing.map(|i| {
            let w = words[i].clone();
            let image = d_total(&d_total(&Lin::basis(w.clone()), m), m);
            (w, image)
        }),
    }
}

/// The graded degree of a word in the sector U_j:
/// -(2/d)(sum |f_l| - j + i) + k with i in [0, d-1], i = j - sum |f_l| (mod d).
pub fn graded_degree(word: &Word, j: u32, d: u32, weights: &[u32]) -> BigRational {
    use num_bigint::BigInt;
    let wt = word.weighted_weight(weights) as i64;
    let i = (j as i64 - wt).rem_euclid(d as i64);
    BigRational::new(BigInt::from(-2 * (wt - j as i64 + i)), BigInt::from(d as i64))
        + BigRational::from_integer(BigInt::from(word.len() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::Potential;

    fn mono(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    fn word(ms: &[&[u32]]) -> Word {
        Word(ms.iter().map(|e| mono(e)).collect())
    }

    fn curv(terms: &[(&[u32], i64)]) -> Curvature {
        let n = terms[0].0.len();
        let mut p = Poly::zero(n);
        for (e, c) in terms {
            p.add_term(mono(e), Scalar::from_int(*c));
        }
        Curvature::from_potential(&Potential::new(p, None).unwrap())
    }

    #[test]
    fn weight_basis_examples() {
        // dim V = 1, N = 2: {[x^2], [x|x]}
        let b = weight_basis(1, 2);
        assert_eq!(b.len(), 2);
        assert_eq!(b[0], word(&[&[2]]));
        assert_eq!(b[1], word(&[&[1], &[1]]));
        // dim V = 1, N = 3: 4 words
        let b = weight_basis(1, 3);
        assert_eq!(b.len(), 4);
        assert_eq!(b[0], word(&[&[3]]));
        assert_eq!(b[3], word(&[&[1], &[1], &[1]]));
        // dim V = 2, N = 1: single letters
        let b = weight_basis(2, 1);
        assert_eq!(b.len(), 2);
        // compositions count 2^(N-1) for one variable
        for n in 1..=8u32 {
            assert_eq!(weight_basis(1, n).len() as u32, 1 << (n - 1));
        }
    }

    #[test]
    fn d_plus_examples() {
        assert!(d_plus_word(&word(&[&[1]])).is_zero());
        let dx2 = d_plus_word(&word(&[&[2]]));
        assert_eq!(dx2, Lin::basis(word(&[&[1], &[1]])));
        // d+ [x^2|x^2] = [x|x|x^2] - [x^2|x|x]
        let d = d_plus_word(&word(&[&[2], &[2]]));
        assert_eq!(d.coeff(&word(&[&[1], &[1], &[2]])), Scalar::one());
        assert_eq!(d.coeff(&word(&[&[2], &[1], &[1]])), Scalar::from_int(-1));
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn d_minus_examples() {
        let m = curv(&[(&[2], 1)]);
        // d- [x^2] = unit word
        assert_eq!(d_minus_word(&word(&[&[2]]), &m), Lin::basis(Word::unit()));
        // d- [x|x] = 0 (M kills linear letters)
        assert!(d_minus_word(&word(&[&[1], &[1]]), &m).is_zero());
        // W = x^3: d- [x^3|x] = [x]
        let m3 = curv(&[(&[3], 1)]);
        assert_eq!(
            d_minus_word(&word(&[&[3], &[1]]), &m3),
            Lin::basis(word(&[&[1]]))
        );
    }

    #[test]
    fn product_examples() {
        let x = Lin::basis(word(&[&[1]]));
        assert_eq!(
            cobar_product(&x, &x),
            Lin::basis(word(&[&[1], &[1]]))
        );
        let unit = Lin::basis(Word::unit());
        let x2 = Lin::basis(word(&[&[2]]));
        assert_eq!(cobar_product(&unit, &x2), x2);
        let sum = x.add(&x2);
        let prod = cobar_product(&sum, &x);
        assert_eq!(prod.coeff(&word(&[&[1], &[1]])), Scalar::one());
        assert_eq!(prod.coeff(&word(&[&[2], &[1]])), Scalar::one());
    }

    #[test]
    fn d_squared_zero_sweeps() {
        // W = 0, dim V = 1 and 2
        for n in 1..=2 {
            let z = Curvature::zero(n);
            assert!(check_d_squared(n, &z, 6).passed());
        }
        // W = x^2 at weight 8
        assert!(check_d_squared(1, &curv(&[(&[2], 1)]), 8).passed());
        // W = x^3 + y^3 at weight 6
        assert!(check_d_squared(2, &curv(&[(&[3, 0], 1), (&[0, 3], 1)]), 6).passed());
    }

    #[test]
    fn d_components_anticommute() {
        // (d+)^2 = 0, (d-)^2 = 0 and the cross terms cancel, separately
        let m = curv(&[(&[3], 1)]);
        for w in (0..=8u32).flat_map(|n| weight_basis(1, n)) {
            let x = Lin::basis(w.clone());
            assert!(d_plus(&d_plus(&x)).is_zero(), "(d+)^2 on {w}");
            assert!(d_minus(&d_minus(&x, &m), &m).is_zero(), "(d-)^2 on {w}");
            let cross = d_plus(&d_minus(&x, &m)).add(&d_minus(&d_plus(&x), &m));
            assert!(cross.is_zero(), "anticommutator on {w}");
        }
    }

    #[test]
    fn leibniz_rule() {
        let m = curv(&[(&[2], 1)]);
        let words = [
            word(&[&[2]]),
            word(&[&[1], &[2]]),
            word(&[&[3]]),
            word(&[&[1], &[1]]),
            word(&[&[2], &[2], &[1]]),
        ];
        for a in &words {
            for b in &words {
                let x = Lin::basis(a.clone());
                let y = Lin::basis(b.clone());
                let lhs = d_total(&cobar_product(&x, &y), &m);
                let sgn = if a.parity() == 0 { 1 } else { -1 };
                let rhs = cobar_product(&d_total(&x, &m), &y)
                    .add(&cobar_product(&x, &d_total(&y, &m)).scale(&Scalar::from_int(sgn)));
                assert_eq!(lhs, rhs, "Leibniz on {a} * {b}");
            }
        }
    }

    #[test]
    fn d_minus_drops_weight_by_deg_w() {
        let m = curv(&[(&[3], 1)]);
        for w in (3..=7u32).flat_map(|n| weight_basis(1, n)) {
            for (img, _) in d_minus_word(&w, &m).iter() {
                assert_eq!(img.weight(), w.weight() - 3);
            }
            for (img, _) in d_plus_word(&w).iter() {
                assert_eq!(img.weight(), w.weight());
            }
        }
    }

    #[test]
    fn graded_degree_examples() {
        use num_bigint::BigInt;
        let rat = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        // empty word
        assert_eq!(graded_degree(&Word::unit(), 0, 3, &[1]), rat(0, 1));
        // d = 3, word [f] with |f| = 3, j = 0: -(2/3)*3 + 1 = -1
        assert_eq!(graded_degree(&word(&[&[3]]), 0, 3, &[1]), rat(-1, 1));
        // the differential raises the graded degree by exactly one
        let m = curv(&[(&[3], 1)]);
        for j in 0..3u32 {
            for w in (1..=6u32).flat_map(|n| weight_basis(1, n)) {
                let deg = graded_degree(&w, j, 3, &[1]);
                let image = d_total(&Lin::basis(w.clone()), &m);
                for (img, _) in image.iter() {
                    assert_eq!(
                        graded_degree(img, j, 3, &[1]),
                        deg.clone() + rat(1, 1),
                        "word {w}, sector {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn window_closure() {
        let win = WeightWindow::build(2, 5);
        let m = curv(&[(&[3, 0], 1), (&[0, 3], 1)]);
        for w in win.words() {
            for (img, _) in d_total(&Lin::basis(w.clone()), &m).iter() {
                assert!(img.weight() <= win.max_weight);
            }
        }
        assert_eq!(
            win.dim(),
            (0..=5u32).map(|n| weight_basis(2, n).len()).sum::<usize>()
        );
    }
}
