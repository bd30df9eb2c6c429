//! Dev probe: degree of the Laplacian minimal polynomial on Krylov subspaces,
//! per (weight, length) block, sampling a few words.

use koszul_mf::cobar::{block_basis, Word};
use koszul_mf::hodge::laplacian;
use koszul_mf::lin::Lin;
use koszul_mf::scalar::Scalar;
use std::collections::BTreeMap;
use std::time::Instant;

// local incremental span copy (the library one is private)
struct Span {
    rows: Vec<(Lin<Word>, Vec<Scalar>)>,
    pivot_of: BTreeMap<Word, usize>,
    inserted: usize,
}

impl Span {
    fn new() -> Self {
        Span { rows: vec![], pivot_of: BTreeMap::new(), inserted: 0 }
    }
    fn insert(&mut self, v: Lin<Word>) -> Option<Vec<Scalar>> {
        let k = self.inserted;
        let mut combo = vec![Scalar::zero(); k + 1];
        combo[k] = Scalar::one();
        let mut red = v;
        while let Some(pivot) = red.terms.keys().next().cloned() {
            let Some(&idx) = self.pivot_of.get(&pivot) else { break };
            let (rv, rc) = &self.rows[idx];
            let f = red.coeff(&pivot) / rv.coeff(&pivot);
            red = red.sub(&rv.scale(&f));
            for (j, c) in rc.iter().enumerate() {
                combo[j] -= &(c * &f);
            }
        }
        self.inserted += 1;
        if red.is_zero() {
            return Some(combo[..k].to_vec());
        }
        let p = red.terms.keys().next().unwrap().clone();
        self.pivot_of.insert(p, self.rows.len());
        self.rows.push((red, combo));
        None
    }
}

fn depth(w: &Word) -> usize {
    let mut span = Span::new();
    let mut v: Lin<Word> = Lin::basis(w.clone());
    span.insert(v.clone());
    let mut d = 1;
    loop {
        v = laplacian(&v);
        if span.insert(v.clone()).is_some() {
            return d;
        }
        d += 1;
        if d > 2000 {
            return d;
        }
    }
}

fn main() {
    for n in [2usize, 3] {
        let cap = if n == 2 { 9 } else { 6 };
        for wt in 3..=cap {
            for k in [2usize, 3, 4] {
                if k > wt as usize {
                    continue;
                }
                let block = block_basis(n, wt, k);
                if block.is_empty() {
                    continue;
                }
                let t = Instant::now();
                let ds: Vec<usize> = block.iter().take(2).map(depth).collect();
                println!(
                    "n={n} wt={wt} k={k} block={} depths={:?} t={:?}",
                    block.len(),
                    ds,
                    t.elapsed()
                );
            }
        }
    }
}
