//! Oracles shared by the integration tests. They use only the raw root
//! data (simple roots, coroots, reflections), never the engine's own
//! multiplicity, alcove or sign routines.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use lieverify::endoscopy::{EndoMatch, StableClass, INNER_FORM_SIGN};
use lieverify::linalg::{dot, dot_q, Rat};
use lieverify::{build_datum, RootDatum};
use num_traits::{One, Zero};

pub const SMALL_TYPES: [&str; 7] = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"];

pub fn sc(t: &str) -> Arc<RootDatum> {
    Arc::new(build_datum(&format!("{t}:sc")).unwrap())
}

/// Weyl group as (element image of a regular weight, sign), by breadth-first
/// search over reflections.
pub fn regular_orbit(d: &RootDatum, v: &[i64]) -> Vec<(Vec<i64>, i64)> {
    let mut seen: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    seen.insert(v.to_vec(), 1);
    let mut q = VecDeque::from([v.to_vec()]);
    while let Some(u) = q.pop_front() {
        let s = seen[&u];
        for i in 0..d.semisimple_rank() {
            let w = d.reflect(&u, i);
            if !seen.contains_key(&w) {
                seen.insert(w.clone(), -s);
                q.push_back(w);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn rho(d: &RootDatum) -> Vec<i64> {
    // for simply connected types the lattice basis is the fundamental weights
    vec![1; d.rank()]
}

/// Kostant partition function on simple-root coordinates.
pub struct Kostant {
    roots: Vec<Vec<i64>>,
    memo: HashMap<(usize, Vec<i64>), i64>,
}

impl Kostant {
    pub fn new(d: &RootDatum) -> Self {
        Kostant { roots: d.positive_root_coeffs().clone(), memo: HashMap::new() }
    }

    pub fn count(&mut self, k: usize, v: &[i64]) -> i64 {
        if v.iter().any(|&x| x < 0) {
            return 0;
        }
        if v.iter().all(|&x| x == 0) {
            return 1;
        }
        if k == self.roots.len() {
            return 0;
        }
        if let Some(&c) = self.memo.get(&(k, v.to_vec())) {
            return c;
        }
        let r = self.roots[k].clone();
        let less: Vec<i64> = v.iter().zip(&r).map(|(a, b)| a - b).collect();
        let c = self.count(k + 1, v) + self.count(k, &less);
        self.memo.insert((k, v.to_vec()), c);
        c
    }
}

/// Multiplicity of `mu` in `V(lambda)` by Kostant's formula.
pub fn kostant_mult(d: &RootDatum, k: &mut Kostant, orbit: &[(Vec<i64>, i64)], mu: &[i64]) -> i64 {
    let r = rho(d);
    let target: Vec<i64> = mu.iter().zip(&r).map(|(a, b)| a + b).collect();
    let mut total = 0;
    for (w, s) in orbit {
        let diff: Vec<i64> = w.iter().zip(&target).map(|(a, b)| a - b).collect();
        if let Some(c) = d.root_coords(&diff) {
            total += s * k.count(0, &c);
        }
    }
    total
}

/// Dominant weights with all labels at most `bound`.
pub fn dominant_box(rank: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=bound).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

fn frac(x: Rat) -> Rat {
    x - Rat::from_integer(x.floor().to_integer())
}

/// W-orbit of a cocharacter modulo the cocharacter lattice.
fn covector_orbit(d: &RootDatum, x: &[Rat]) -> BTreeSet<Vec<Rat>> {
    let start: Vec<Rat> = x.iter().map(|v| frac(*v)).collect();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut q = VecDeque::from([start]);
    while let Some(u) = q.pop_front() {
        for i in 0..d.semisimple_rank() {
            let p = dot_q(&d.simple_roots()[i], &u);
            let w: Vec<Rat> = u
                .iter()
                .zip(&d.simple_coroots()[i])
                .map(|(a, b)| frac(*a - p * Rat::from_integer(*b)))
                .collect();
            if seen.insert(w.clone()) {
                q.push_back(w);
            }
        }
    }
    seen
}

/// Conjugacy classes of elements with `x^m = 1` in a semisimple group, by
/// orbits on the whole `m`-torsion of the torus: (order, number of roots
/// of the centralizer) per class.
pub fn brute_force_torsion(d: &RootDatum, m: i64) -> Vec<(i64, usize)> {
    let n = d.rank();
    let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut idx = vec![0i64; n];
    loop {
        let x: Vec<Rat> = idx.iter().map(|&k| Rat::new(k, m)).collect();
        let orbit = covector_orbit(d, &x);
        let rep = orbit.iter().next().unwrap().clone();
        if seen.insert(rep.clone()) {
            let order = rep.iter().fold(1i64, |a, v| num_integer::lcm(a, *v.denom()));
            let roots = d.roots().iter().filter(|r| dot_q(r, &rep).is_integer()).count();
            out.push((order, roots));
        }
        let mut k = 0;
        loop {
            if k == n {
                out.sort();
                return out;
            }
            idx[k] += 1;
            if idx[k] < m {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Direct evaluation of the cancellation sum for one match: every bit
/// pattern is visited and weighted by one over the size of its flip orbit.
/// Signs are products of `±1` over `I⁻`, classes of the inner forms carry
/// the inner-form sign.
pub fn cancellation_oracle(s: &StableClass, eta: i8, m: &EndoMatch) -> Rat {
    let n = s.factors.len();
    let flips: Vec<bool> = s.factors.iter().map(|f| f.is_field() && f.degree % 2 == 1).collect();
    let orbit_size = if flips.iter().any(|&f| f) { 2 } else { 1 };
    let mut total = Rat::zero();
    for mask in 0u32..(1 << n) {
        let bit = |i: usize| (mask >> i) & 1;
        if (0..n).any(|i| bit(i) == 1 && !s.factors[i].is_field()) {
            continue;
        }
        let disc: u32 = (0..n).map(bit).sum();
        if disc % 2 == 1 {
            continue;
        }
        let mirror: u32 = s.mirror.iter().map(|&i| bit(i)).sum();
        let inner = (mirror % 2 == 1) != (eta == -1);
        let mut sign = 1i64;
        for &i in &m.minus {
            if s.factors[i].is_field() && bit(i) == 1 {
                sign = -sign;
            }
        }
        let w = if inner { -INNER_FORM_SIGN * sign } else { sign };
        total += Rat::new(w, orbit_size);
    }
    total
}

/// Number of Weyl group elements, by the orbit of a regular weight.
pub fn weyl_order_brute(d: &RootDatum) -> usize {
    regular_orbit(d, &rho(d)).len()
}

pub fn one() -> Rat {
    Rat::one()
}

pub fn pair(a: &[i64], b: &[i64]) -> i64 {
    dot(a, b)
}
