//! Dev probe: timing of the exact Green's operator per (weight, length) block.

use koszul_mf::cobar::block_basis;
use koszul_mf::hodge::Hodge;
use std::time::Instant;

fn main() {
    let h = Hodge::new();
    for n in [1usize, 2, 3] {
        let cap = match n {
            1 => 12,
            2 => 12,
            _ => 8,
        };
        for wt in 2..=cap {
            for k in [1usize, 2, 3, 4] {
                if k > wt as usize {
                    continue;
                }
                let block = block_basis(n, wt, k);
                if block.is_empty() {
                    continue;
                }
                let t = Instant::now();
                let sample: Vec<_> = block.iter().take(3).collect();
                for w in &sample {
                    let _ = h.green_word(w);
                }
                println!(
                    "n={n} wt={wt} k={k} block_dim={} greens={} elapsed={:?}",
                    block.len(),
                    sample.len(),
                    t.elapsed()
                );
            }
        }
    }
}
