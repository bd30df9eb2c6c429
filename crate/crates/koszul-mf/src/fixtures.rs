//! The standard potential corpus used by the verification suites: the ADE
//! singularities in at most two variables plus the small quadratic and cubic
//! fixtures, each with its canonical weights.

use crate::poly::{Monomial, Poly};
use crate::scalar::Scalar;
use crate::Potential;

pub fn potential(terms: &[(&[u32], i64)], weights: Option<Vec<u32>>) -> Potential {
    let n = terms[0].0.len();
    let mut p = Poly::zero(n);
    for (e, c) in terms {
        p.add_term(Monomial(e.to_vec()), Scalar::from_int(*c));
    }
    Potential::new(p, weights).expect("fixture potential")
}

/// Named corpus: (name, potential, expected Milnor number).
pub fn ade_corpus() -> Vec<(&'static str, Potential, usize)> {
    vec![
        ("A1:x^2", potential(&[(&[2], 1)], Some(vec![1])), 1),
        ("A2:x^3", potential(&[(&[3], 1)], Some(vec![1])), 2),
        ("A3:x^4", potential(&[(&[4], 1)], Some(vec![1])), 3),
        (
            "D4:x^2y+y^3",
            potential(&[(&[2, 1], 1), (&[0, 3], 1)], Some(vec![1, 1])),
            4,
        ),
        (
            "E6:x^3+y^4",
            potential(&[(&[3, 0], 1), (&[0, 4], 1)], Some(vec![4, 3])),
            6,
        ),
        (
            "E7:x^3+xy^3",
            potential(&[(&[3, 0], 1), (&[1, 3], 1)], Some(vec![3, 2])),
            7,
        ),
        (
            "E8:x^3+y^5",
            potential(&[(&[3, 0], 1), (&[0, 5], 1)], Some(vec![5, 3])),
            8,
        ),
        (
            "cusp:x^3+y^3",
            potential(&[(&[3, 0], 1), (&[0, 3], 1)], Some(vec![1, 1])),
            4,
        ),
        ("node:xy", potential(&[(&[1, 1], 1)], Some(vec![1, 1])), 1),
        (
            "conic:x^2+y^2",
            potential(&[(&[2, 0], 1), (&[0, 2], 1)], Some(vec![1, 1])),
            1,
        ),
    ]
}

/// The quadratic fixtures for the Clifford comparison.
pub fn quadratic_corpus() -> Vec<(&'static str, Potential)> {
    vec![
        ("x^2", potential(&[(&[2], 1)], Some(vec![1]))),
        (
            "x^2+y^2",
            potential(&[(&[2, 0], 1), (&[0, 2], 1)], Some(vec![1, 1])),
        ),
        ("xy", potential(&[(&[1, 1], 1)], Some(vec![1, 1]))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Milnor;

    #[test]
    fn corpus_milnor_numbers() {
        for (name, w, mu) in ade_corpus() {
            assert_eq!(
                w.milnor_number(60).unwrap(),
                Milnor::Finite(mu),
                "mu({name})"
            );
        }
    }
}
