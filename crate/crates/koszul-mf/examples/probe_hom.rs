//! Dev probe: Hom-complex homology slices for End(kstab).

use koszul_mf::fixtures::potential;
use koszul_mf::mf::{hom_homology, kstab};
use koszul_mf::poly::Splitting;

fn main() {
    for (name, w) in [
        ("x^2", potential(&[(&[2], 1)], Some(vec![1]))),
        ("x^3", potential(&[(&[3], 1)], Some(vec![1]))),
        (
            "x^3+y^3",
            potential(&[(&[3, 0], 1), (&[0, 3], 1)], Some(vec![1, 1])),
        ),
    ] {
        let split = w.split(Splitting::Euler).unwrap();
        let k = kstab(&w, &split).unwrap();
        println!("{name}: degrees {:?}", k.degrees);
        let hh = hom_homology(&k, &k, &w, 20).unwrap();
        println!(
            "  ranks {:?} total {} stabilized {}",
            hh.ranks, hh.total, hh.stabilized
        );
    }
}
