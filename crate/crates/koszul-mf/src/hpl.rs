//! The curved homological perturbation engine: special retractions between a
//! big precomplex and a small one, perturbation by an odd map whose square
//! with the differential is a prescribed central curvature, and exact
//! verification of every identity the construction promises.
//!
//! The transfer operator A = sum (delta H)^m delta is evaluated per basis
//! element; local nilpotence makes the series finite and is checked while
//! summing, never assumed. All operators are closures acting on sparse
//! linear combinations, so the same engine drives the cobar/Hodge instance,
//! the finite-rank reduction of the Koszul duality image, and the seeded
//! random suites.

use crate::lin::Lin;
use crate::par;
use crate::scalar::Scalar;
use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

pub trait Basis: Ord + Clone + std::hash::Hash + Send + Sync + fmt::Debug + 'static {}
impl<T: Ord + Clone + std::hash::Hash + Send + Sync + fmt::Debug + 'static> Basis for T {}

pub type ArcOp<A, B> = Arc<dyn Fn(&A) -> Lin<B> + Send + Sync>;

pub fn apply<A: Basis, B: Basis>(op: &ArcOp<A, B>, x: &Lin<A>) -> Lin<B> {
    x.map(|b| op(b))
}

pub fn op_zero<A: Basis, B: Basis>() -> ArcOp<A, B> {
    Arc::new(|_| Lin::zero())
}

pub fn op_add<A: Basis, B: Basis>(f: &ArcOp<A, B>, g: &ArcOp<A, B>) -> ArcOp<A, B> {
    let (f, g) = (f.clone(), g.clone());
    Arc::new(move |x| f(x).add(&g(x)))
}

/// g after f.
pub fn op_comp<A: Basis, B: Basis, C: Basis>(f: &ArcOp<A, B>, g: &ArcOp<B, C>) -> ArcOp<A, C> {
    let (f, g) = (f.clone(), g.clone());
    Arc::new(move |x| f(x).map(|b| g(b)))
}

/// Memoise a linear operator per basis element.
pub fn op_memo<A: Basis, B: Basis>(f: &ArcOp<A, B>) -> ArcOp<A, B> {
    let f = f.clone();
    let cache: Arc<RwLock<HashMap<A, Lin<B>>>> = Arc::new(RwLock::new(HashMap::new()));
    Arc::new(move |x| {
        if let Some(hit) = cache.read().unwrap().get(x) {
            return hit.clone();
        }
        let out = f(x);
        cache.write().unwrap().insert(x.clone(), out.clone());
        out
    })
}

/// Special deformation retraction between precomplexes: p i = id,
/// i p = id + dH + Hd, H i = 0, p H = 0, H^2 = 0; `curvature` is the central
/// element F with d^2 = F (None means an honest complex).
pub struct Retraction<S: Basis, M: Basis> {
    pub d: ArcOp<M, M>,
    pub b: ArcOp<S, S>,
    pub i: ArcOp<S, M>,
    pub p: ArcOp<M, S>,
    pub h: ArcOp<M, M>,
    pub curvature: Option<ArcOp<M, M>>,
}

impl<S: Basis, M: Basis> Clone for Retraction<S, M> {
    fn clone(&self) -> Self {
        Retraction {
            d: self.d.clone(),
            b: self.b.clone(),
            i: self.i.clone(),
            p: self.p.clone(),
            h: self.h.clone(),
            curvature: self.curvature.clone(),
        }
    }
}

/// A curved perturbation: the odd map delta, with (d + delta)^2 equal to the
/// prescribed central curvature (None = zero). `nilpotence_cap` bounds the
/// geometric series per element; exceeding it reports "not small".
pub struct Perturbation<M: Basis> {
    pub delta: ArcOp<M, M>,
    pub curvature: Option<ArcOp<M, M>>,
    pub nilpotence_cap: usize,
}

impl<M: Basis> Perturbation<M> {
    pub fn new(delta: ArcOp<M, M>) -> Self {
        Perturbation {
            delta,
            curvature: None,
            nilpotence_cap: 100_000,
        }
    }

    pub fn with_curvature(mut self, f: ArcOp<M, M>) -> Self {
        self.curvature = Some(f);
        self
    }
}

fn eval_curv<M: Basis>(f: &Option<ArcOp<M, M>>, x: &M) -> Lin<M> {
    match f {
        Some(op) => op(x),
        None => Lin::zero(),
    }
}

/// The transfer series A = sum_m (delta H)^m delta, memoised per element.
pub fn transfer_series<M: Basis>(
    delta: &ArcOp<M, M>,
    h: &ArcOp<M, M>,
    cap: usize,
) -> ArcOp<M, M> {
    let (delta, h) = (delta.clone(), h.clone());
    let raw: ArcOp<M, M> = Arc::new(move |x| {
        let mut acc = delta(x);
        let mut y = acc.clone();
        let mut steps = 0usize;
        while !y.is_zero() {
            y = apply(&delta, &apply(&h, &y));
            if y.is_zero() {
                break;
            }
            acc.add_assign(&y);
            steps += 1;
            assert!(
                steps <= cap,
                "perturbation not small: geometric series exceeded cap {cap}"
            );
        }
        acc
    });
    op_memo(&raw)
}

/// Outcome of a per-identity verification sweep.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub checks: Vec<(String, Option<String>)>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, w)| w.is_none())
    }

    pub fn failures(&self) -> Vec<&(String, Option<String>)> {
        self.checks.iter().filter(|(_, w)| w.is_some()).collect()
    }
}

impl<S: Basis, M: Basis> Retraction<S, M> {
    /// Perturb by Eq-style formulas: b1 = b + pAi, i1 = i + HAi, p1 = p + pAH,
    /// H1 = H + HAH, d1 = d + delta; the small curvature becomes p F i.
    /// Smallness is enforced while the series is summed.
    pub fn perturb(&self, pert: &Perturbation<M>) -> Retraction<S, M> {
        let a = transfer_series(&pert.delta, &self.h, pert.nilpotence_cap);
        let d1 = op_add(&self.d, &pert.delta);
        let b1 = {
            let (b, p, i, a) = (self.b.clone(), self.p.clone(), self.i.clone(), a.clone());
            let op: ArcOp<S, S> =
                Arc::new(move |s| b(s).add(&i(s).map(|m| a(m)).map(|m| p(m))));
            op
        };
        let i1 = {
            let (i, h, a) = (self.i.clone(), self.h.clone(), a.clone());
            let op: ArcOp<S, M> = Arc::new(move |s| i(s).add(&i(s).map(|m| a(m)).map(|m| h(m))));
            op
        };
        let p1 = {
            let (p, h, a) = (self.p.clone(), self.h.clone(), a.clone());
            let op: ArcOp<M, S> = Arc::new(move |m| {
                p(m).add(&h(m).map(|m2| a(m2)).map(|m2| p(m2)))
            });
            op
        };
        let h1 = {
            let (h, a) = (self.h.clone(), a.clone());
            let op: ArcOp<M, M> = Arc::new(move |m| {
                h(m).add(&h(m).map(|m2| a(m2)).map(|m2| h(m2)))
            });
            op
        };
        let curvature = pert.curvature.clone();
        Retraction {
            d: d1,
            b: b1,
            i: i1,
            p: p1,
            h: h1,
            curvature,
        }
    }

    /// Check the retraction identities as exact equations on the given
    /// windows. Returns pass/fail with a witness element per failure.
    pub fn verify(&self, small: &[S], big: &[M]) -> CheckReport {
        let mut checks = Vec::new();
        let r = self;
        let wit_s = |name: &str, pred: &(dyn Fn(&S) -> bool + Sync)| -> (String, Option<String>) {
            let fail = par::first_failure(small, |s| pred(s));
            (name.to_string(), fail.map(|i| format!("{:?}", small[i])))
        };
        let wit_m = |name: &str, pred: &(dyn Fn(&M) -> bool + Sync)| -> (String, Option<String>) {
            let fail = par::first_failure(big, |m| pred(m));
            (name.to_string(), fail.map(|i| format!("{:?}", big[i])))
        };
        checks.push(wit_s("p i = id", &|s| {
            apply(&r.p, &(r.i)(s)) == Lin::basis(s.clone())
        }));
        checks.push(wit_m("i p = id + dH + Hd", &|m| {
            let x: Lin<M> = Lin::basis(m.clone());
            let ip = apply(&r.i, &(r.p)(m));
            let rhs = x
                .add(&apply(&r.d, &(r.h)(m)))
                .add(&apply(&r.h, &(r.d)(m)));
            ip == rhs
        }));
        checks.push(wit_s("H i = 0", &|s| apply(&r.h, &(r.i)(s)).is_zero()));
        checks.push(wit_m("p H = 0", &|m| apply(&r.p, &(r.h)(m)).is_zero()));
        checks.push(wit_m("H H = 0", &|m| apply(&r.h, &(r.h)(m)).is_zero()));
        checks.push(wit_s("d i = i b", &|s| {
            apply(&r.d, &(r.i)(s)) == apply(&r.i, &(r.b)(s))
        }));
        checks.push(wit_m("b p = p d", &|m| {
            apply(&r.b, &(r.p)(m)) == apply(&r.p, &(r.d)(m))
        }));
        checks.push(wit_m("d d = F", &|m| {
            apply(&r.d, &(r.d)(m)) == eval_curv(&r.curvature, m)
        }));
        checks.push(wit_s("b b = p F i", &|s| {
            let bb = apply(&r.b, &(r.b)(s));
            let pfi = (r.i)(s).map(|m| eval_curv(&r.curvature, m)).map(|m| (r.p)(&m));
            bb == pfi
        }));
        CheckReport { checks }
    }

    /// Smallest m with (delta H)^m = 0 on the window; errors past the cap.
    pub fn nilpotence_index(&self, delta: &ArcOp<M, M>, big: &[M]) -> Result<usize> {
        let cap = big.len() + 1;
        let per_elem = par::map_vec(big, |m| {
            let mut y = Lin::basis(m.clone());
            let mut idx = 0usize;
            loop {
                y = apply(delta, &apply(&self.h, &y));
                if y.is_zero() {
                    return Ok(idx + 1);
                }
                idx += 1;
                if idx > cap {
                    return Err(Error::PerturbationNotSmall);
                }
            }
        });
        let mut best = 1usize;
        for r in per_elem {
            best = best.max(r?);
        }
        Ok(best)
    }

    /// Check that (d + delta)^2 equals the prescribed curvature on a window.
    pub fn check_curved_perturbation(
        &self,
        pert: &Perturbation<M>,
        big: &[M],
    ) -> Result<()> {
        let d1 = op_add(&self.d, &pert.delta);
        let bad = par::first_failure(big, |m| {
            apply(&d1, &d1(m)) == eval_curv(&pert.curvature, m)
        });
        match bad {
            None => Ok(()),
            Some(_) => Err(Error::NotCurvedPerturbation),
        }
    }
}

/// The four auxiliary identities of the transfer series, as exact equations
/// on the big window.
pub fn verify_series_identities<S: Basis, M: Basis>(
    r: &Retraction<S, M>,
    pert: &Perturbation<M>,
) -> impl Fn(&[M]) -> CheckReport {
    let delta = pert.delta.clone();
    let h = r.h.clone();
    let d = r.d.clone();
    let i = r.i.clone();
    let p = r.p.clone();
    let f = pert.curvature.clone();
    let a = transfer_series(&delta, &h, pert.nilpotence_cap);
    move |big: &[M]| {
        let mut checks = Vec::new();
        let wit = |name: &str, pred: &(dyn Fn(&M) -> bool + Sync)| -> (String, Option<String>) {
            let fail = par::first_failure(big, |m| pred(m));
            (name.to_string(), fail.map(|idx| format!("{:?}", big[idx])))
        };
        let ap = |op: &ArcOp<M, M>, x: &Lin<M>| apply(op, x);
        checks.push(wit("delta H A = A - delta", &|m| {
            let am = a(m);
            let lhs = ap(&delta, &ap(&h, &am));
            lhs == am.sub(&delta(m))
        }));
        checks.push(wit("A H delta = A - delta", &|m| {
            let dm = delta(m);
            let lhs = ap(&a, &ap(&h, &dm));
            lhs == a(m).sub(&dm)
        }));
        checks.push(wit("(id - delta H)(id + A H) = id", &|m| {
            let x: Lin<M> = Lin::basis(m.clone());
            let y = x.add(&ap(&a, &h(m)));
            let z = y.sub(&ap(&delta, &ap(&h, &y)));
            z == x
        }));
        checks.push(wit("(id + A H)(id - delta H) = id", &|m| {
            let x: Lin<M> = Lin::basis(m.clone());
            let y = x.sub(&ap(&delta, &h(m)));
            let z = y.add(&ap(&a, &ap(&h, &y)));
            z == x
        }));
        checks.push(wit("(id - H delta)(id + H A) = id", &|m| {
            let x: Lin<M> = Lin::basis(m.clone());
            let y = x.add(&ap(&h, &a(m)));
            let z = y.sub(&ap(&h, &ap(&delta, &y)));
            z == x
        }));
        checks.push(wit("(id + H A)(id - H delta) = id", &|m| {
            let x: Lin<M> = Lin::basis(m.clone());
            let y = x.sub(&ap(&h, &delta(m)));
            let z = y.add(&ap(&h, &ap(&a, &y)));
            z == x
        }));
        checks.push(wit("A i p A + A d + d A = F + F A H + F H A", &|m| {
            let am = a(m);
            let lhs = apply(&a, &apply(&i, &apply(&p, &am)))
                .add(&ap(&a, &d(m)))
                .add(&ap(&d, &am));
            let fm = eval_curv(&f, m);
            let fah = ap_curv(&f, &ap(&a, &h(m)));
            let fha = ap_curv(&f, &ap(&h, &am));
            let rhs = fm.add(&fah).add(&fha);
            lhs == rhs
        }));
        CheckReport { checks }
    }
}

fn ap_curv<M: Basis>(f: &Option<ArcOp<M, M>>, x: &Lin<M>) -> Lin<M> {
    match f {
        Some(op) => apply(op, x),
        None => Lin::zero(),
    }
}

/// Synthetic instances for the seeded randomized suites.
pub mod synth {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// Basis of a synthetic carrier: plain indices with a parity table held
    /// in the instance.
    pub type Idx = u32;

    /// A finite special retraction in explicit matrix form, produced from a
    /// seed: the big space is small + paired cells (v_j -> u_j), conjugated
    /// by a random triangular change of basis.
    pub struct SynthInstance {
        pub retraction: Retraction<Idx, Idx>,
        pub small: Vec<Idx>,
        pub big: Vec<Idx>,
        pub parity: Arc<Vec<u8>>,
    }

    type MapMatrix = HashMap<Idx, Lin<Idx>>;

    fn as_op(m: MapMatrix) -> ArcOp<Idx, Idx> {
        let m = Arc::new(m);
        Arc::new(move |x| m.get(x).cloned().unwrap_or_else(Lin::zero))
    }

    fn compose_maps(first: &MapMatrix, then: &MapMatrix, dim: u32) -> MapMatrix {
        let mut out = MapMatrix::new();
        for idx in 0..dim {
            if let Some(v) = first.get(&idx) {
                let mut acc: Lin<Idx> = Lin::zero();
                for (j, c) in v.iter() {
                    if let Some(w) = then.get(j) {
                        acc.add_assign(&w.scale(c));
                    }
                }
                if !acc.is_zero() {
                    out.insert(idx, acc);
                }
            }
        }
        out
    }

    fn small_rand(rng: &mut StdRng) -> Scalar {
        let n = rng.gen_range(-3i64..=3);
        Scalar::from_int(if n == 0 { 1 } else { n })
    }

    /// Random special retraction: s small cells, m matched pairs.
    pub fn random_special_retraction(seed: u64, s: usize, pairs: usize) -> SynthInstance {
        let mut rng = StdRng::seed_from_u64(seed);
        let dim = (s + 2 * pairs) as u32;
        // layout: 0..s small; s + 2j = v_j (source), s + 2j + 1 = u_j (target)
        let mut parity = vec![0u8; dim as usize];
        for b in parity.iter_mut().take(s) {
            *b = rng.gen_range(0..2);
        }
        for j in 0..pairs {
            let pv = rng.gen_range(0..2) as u8;
            parity[s + 2 * j] = pv;
            parity[s + 2 * j + 1] = pv ^ 1;
        }
        // d(v_j) = c_j u_j + lower u_k; H(u) = the triangular inverse, negated
        let mut d = MapMatrix::new();
        for j in 0..pairs {
            let mut img: Lin<Idx> = Lin::single(
                (s + 2 * j + 1) as Idx,
                small_rand(&mut rng),
            );
            for k in 0..j {
                if parity[s + 2 * k + 1] == parity[s + 2 * j + 1] && rng.gen_bool(0.4) {
                    img.add_term((s + 2 * k + 1) as Idx, small_rand(&mut rng));
                }
            }
            d.insert((s + 2 * j) as Idx, img);
        }
        // H(u_j): solve d(H(u_j)) = -u_j by triangular back-substitution
        let mut h = MapMatrix::new();
        for j in 0..pairs {
            let u = (s + 2 * j + 1) as Idx;
            // d(v_j) = c_j u_j + sum_{k<j} r_k u_k
            let dv = d.get(&((s + 2 * j) as Idx)).unwrap().clone();
            let cj = dv.coeff(&u);
            let mut img: Lin<Idx> = Lin::single((s + 2 * j) as Idx, -cj.inv());
            for (uk, rk) in dv.iter() {
                if *uk != u {
                    // correction: -(r_k/c_j) H(u_k), so that d H(u_j) = -u_j
                    let hk = h.get(uk).cloned().unwrap_or_else(Lin::zero);
                    img.add_assign(&hk.scale(&-(rk * &cj.inv())));
                }
            }
            h.insert(u, img);
        }
        // conjugate by g = id + n with n parity-preserving, strictly
        // index-decreasing on the paired block
        let mut n_map = MapMatrix::new();
        for idx in (s as u32)..dim {
            let mut img: Lin<Idx> = Lin::zero();
            for lower in 0..idx.min(s as u32 + 6) {
                if parity[lower as usize] == parity[idx as usize] && rng.gen_bool(0.25) {
                    img.add_term(lower, small_rand(&mut rng));
                }
            }
            if !img.is_zero() {
                n_map.insert(idx, img);
            }
        }
        let conjugate = |x: &MapMatrix, n: &MapMatrix, dim: u32| -> MapMatrix {
            // (id + n) o x o (id + n)^{-1}, the inverse by Neumann series
            let mut inv = MapMatrix::new();
            for idx in 0..dim {
                let mut acc: Lin<Idx> = Lin::basis(idx);
                let mut term: Lin<Idx> = Lin::basis(idx);
                let mut alt = true;
                loop {
                    term = term.map(|b| n.get(b).cloned().unwrap_or_else(Lin::zero));
                    if term.is_zero() {
                        break;
                    }
                    acc = if alt { acc.sub(&term) } else { acc.add(&term) };
                    alt = !alt;
                }
                inv.insert(idx, acc);
            }
            let mut out = MapMatrix::new();
            for idx in 0..dim {
                let pre = inv.get(&idx).cloned().unwrap_or_else(Lin::zero);
                let mid = pre.map(|b| x.get(b).cloned().unwrap_or_else(Lin::zero));
                let extra: Lin<Idx> = mid.map(|b| n.get(b).cloned().unwrap_or_else(Lin::zero));
                let img = mid.add(&extra);
                if !img.is_zero() {
                    out.insert(idx, img);
                }
            }
            out
        };
        let d_c = conjugate(&d, &n_map, dim);
        let h_c = conjugate(&h, &n_map, dim);
        // i, p in the conjugated frame: i = g . include, p = project . g^{-1}
        let mut i_map = MapMatrix::new();
        let mut p_map = MapMatrix::new();
        {
            // p e_idx = small part of g^{-1} e_idx; i e_s = g e_s
            let mut inv = MapMatrix::new();
            for idx in 0..dim {
                let mut acc: Lin<Idx> = Lin::basis(idx);
                let mut term: Lin<Idx> = Lin::basis(idx);
                let mut alt = true;
                loop {
                    term = term.map(|b| n_map.get(b).cloned().unwrap_or_else(Lin::zero));
                    if term.is_zero() {
                        break;
                    }
                    acc = if alt { acc.sub(&term) } else { acc.add(&term) };
                    alt = !alt;
                }
                inv.insert(idx, acc);
            }
            for sidx in 0..s as u32 {
                let mut img: Lin<Idx> = Lin::basis(sidx);
                if let Some(nv) = n_map.get(&sidx) {
                    img.add_assign(nv);
                }
                i_map.insert(sidx, img);
            }
            for idx in 0..dim {
                let pre = inv.get(&idx).cloned().unwrap_or_else(Lin::zero);
                let mut img: Lin<Idx> = Lin::zero();
                for (b, c) in pre.iter() {
                    if (*b as usize) < s {
                        img.add_term(*b, c.clone());
                    }
                }
                if !img.is_zero() {
                    p_map.insert(idx, img);
                }
            }
        }
        let retraction = Retraction {
            d: as_op(d_c),
            b: op_zero(),
            i: as_op(i_map),
            p: as_op(p_map),
            h: as_op(h_c),
            curvature: None,
        };
        SynthInstance {
            retraction,
            small: (0..s as u32).collect(),
            big: (0..dim).collect(),
            parity: Arc::new(parity),
        }
    }

    /// An uncurved random perturbation: delta = g d g^{-1} - d for a random
    /// strictly-decreasing parity-preserving n (g = id + n), so that
    /// (d + delta)^2 = 0 exactly and delta H is nilpotent.
    pub fn random_flat_perturbation(inst: &SynthInstance, seed: u64) -> Perturbation<Idx> {
        let mut rng = StdRng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
        let dim = inst.big.len() as u32;
        let parity = inst.parity.clone();
        let mut n_map: HashMap<Idx, Lin<Idx>> = HashMap::new();
        for idx in 1..dim {
            let mut img: Lin<Idx> = Lin::zero();
            for lower in 0..idx {
                if parity[lower as usize] == parity[idx as usize] && rng.gen_bool(0.2) {
                    img.add_term(lower, small_rand(&mut rng));
                }
            }
            if !img.is_zero() {
                n_map.insert(idx, img);
            }
        }
        let n_arc = Arc::new(n_map);
        let d = inst.retraction.d.clone();
        let n2 = n_arc.clone();
        let delta: ArcOp<Idx, Idx> = Arc::new(move |x| {
            // delta = (id + n) d (id + n)^{-1} - d, with the Neumann series
            let one: Lin<Idx> = Lin::basis(x.clone());
            let mut inv = one.clone();
            let mut term = one;
            let mut alt = true;
            loop {
                term = term.map(|b| n2.get(b).cloned().unwrap_or_else(Lin::zero));
                if term.is_zero() {
                    break;
                }
                inv = if alt { inv.sub(&term) } else { inv.add(&term) };
                alt = !alt;
            }
            let mid = inv.map(|b| d(b));
            let full = {
                let extra = mid.map(|b| n2.get(b).cloned().unwrap_or_else(Lin::zero));
                mid.add(&extra)
            };
            full.sub(&d(x))
        });
        Perturbation::new(op_memo(&delta))
    }

    /// A genuinely curved instance: double the carrier into M + M-shifted,
    /// take d2 = diag(d, -d), H2 = diag(H, -H), i2/p2 diagonal, and perturb
    /// by the off-diagonal [[0, c id],[id, 0]], so (d + delta)^2 = c id.
    pub struct CurvedDouble {
        pub retraction: Retraction<(Idx, u8), (Idx, u8)>,
        pub perturbation: Perturbation<(Idx, u8)>,
        pub small: Vec<(Idx, u8)>,
        pub big: Vec<(Idx, u8)>,
    }

    pub fn curved_double(inst: &SynthInstance, c: i64) -> CurvedDouble {
        let lift = |op: &ArcOp<Idx, Idx>, negate_second: bool| -> ArcOp<(Idx, u8), (Idx, u8)> {
            let op = op.clone();
            Arc::new(move |(x, side): &(Idx, u8)| {
                let img = op(x);
                let flip = *side == 1 && negate_second;
                let mut out: Lin<(Idx, u8)> = Lin::zero();
                for (b, coeff) in img.iter() {
                    let v = if flip { -coeff.clone() } else { coeff.clone() };
                    out.add_term((b.clone(), *side), v);
                }
                out
            })
        };
        let d2 = lift(&inst.retraction.d, true);
        let h2 = lift(&inst.retraction.h, true);
        let i2 = lift(&inst.retraction.i, true);
        let p2 = lift(&inst.retraction.p, true);
        let b2 = lift(&inst.retraction.b, true);
        let cc = Scalar::from_int(c);
        let delta: ArcOp<(Idx, u8), (Idx, u8)> = {
            let cc = cc.clone();
            Arc::new(move |(x, side): &(Idx, u8)| {
                if *side == 0 {
                    Lin::basis((x.clone(), 1u8))
                } else {
                    Lin::single((x.clone(), 0u8), cc.clone())
                }
            })
        };
        let curv: ArcOp<(Idx, u8), (Idx, u8)> = {
            let cc = cc.clone();
            Arc::new(move |m: &(Idx, u8)| Lin::single(m.clone(), cc.clone()))
        };
        let retraction = Retraction {
            d: d2,
            b: b2,
            i: i2,
            p: p2,
            h: h2,
            curvature: None,
        };
        let perturbation = Perturbation::new(delta).with_curvature(curv);
        let small: Vec<(Idx, u8)> = inst
            .small
            .iter()
            .flat_map(|s| [(*s, 0u8), (*s, 1u8)])
            .collect();
        let big: Vec<(Idx, u8)> = inst
            .big
            .iter()
            .flat_map(|m| [(*m, 0u8), (*m, 1u8)])
            .collect();
        CurvedDouble {
            retraction,
            perturbation,
            small,
            big,
        }
    }
}
