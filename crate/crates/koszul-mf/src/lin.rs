//! Sparse linear combinations over an ordered basis-symbol type. Every chain
//! space in the crate (cobar words, Hochschild chains, exterior words, tensor
//! bases) is a `Lin<B>` for its own symbol type, and operators act symbolically
//! one basis element at a time.

use crate::scalar::Scalar;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub struct Lin<B: Ord + Clone> {
    pub terms: BTreeMap<B, Scalar>,
}

impl<B: Ord + Clone> Default for Lin<B> {
    fn default() -> Self {
        Lin::zero()
    }
}

impl<B: Ord + Clone> Lin<B> {
    pub fn zero() -> Self {
        Lin {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(b: B) -> Self {
        let mut l = Lin::zero();
        l.terms.insert(b, Scalar::one());
        l
    }

    pub fn single(b: B, c: Scalar) -> Self {
        let mut l = Lin::zero();
        l.add_term(b, c);
        l
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, b: B, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&b) {
            Some(old) => {
                let v = old + c;
                if !v.is_zero() {
                    self.terms.insert(b, v);
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Lin<B>) {
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Lin<B>) -> Lin<B> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Lin<B>) -> Lin<B> {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Lin<B> {
        if s.is_zero() {
            return Lin::zero();
        }
        Lin {
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (b.clone(), c * s))
                .collect(),
        }
    }

    pub fn neg(&self) -> Lin<B> {
        Lin {
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (b.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Scalar)> {
        self.terms.iter()
    }

    /// Linear extension of a map defined on basis symbols.
    pub fn map<C: Ord + Clone>(&self, f: impl Fn(&B) -> Lin<C>) -> Lin<C> {
        let mut out = Lin::zero();
        for (b, c) in &self.terms {
            for (b2, c2) in f(b).terms {
                out.add_term(b2, c2 * c.clone());
            }
        }
        out
    }

    /// Inner product in which the basis is orthonormal. Scalars are not
    /// conjugated; over Q this is the metric used for adjointness checks.
    pub fn dot(&self, other: &Lin<B>) -> Scalar {
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut s = Scalar::zero();
        for (b, c) in &small.terms {
            if let Some(d) = big.terms.get(b) {
                s += &(c * d);
            }
        }
        s
    }
}

/// Assemble a `SparseMatrix` for a linear operator on an indexed basis.
pub fn operator_matrix<B: Ord + Clone>(
    domain: &[B],
    codomain_index: &BTreeMap<B, usize>,
    codomain_len: usize,
    op: impl Fn(&B) -> Lin<B>,
) -> crate::sparse::SparseMatrix {
    let mut m = crate::sparse::SparseMatrix::zero(codomain_len, domain.len());
    for (j, b) in domain.iter().enumerate() {
        for (b2, c) in op(b).terms {
            let i = *codomain_index
                .get(&b2)
                .expect("operator leaves the enumerated window");
            m.add_to(i, j, &c);
        }
    }
    m
}
