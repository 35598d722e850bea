//! Formal characters: irreducible characters by Freudenthal's formula,
//! Weyl dimensions, tensor and exterior powers, decomposition and
//! Frobenius-Schur indicators.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::rootdata::{RootDatum, WeightMap};

/// A finite weight-to-multiplicity map over a root datum. Intermediate
/// results (virtual characters) may carry negative multiplicities.
#[derive(Debug, Clone)]
pub struct FormalCharacter {
    datum: Arc<RootDatum>,
    mults: WeightMap,
}

impl PartialEq for FormalCharacter {
    fn eq(&self, other: &Self) -> bool {
        same_datum(&self.datum, &other.datum) && self.mults == other.mults
    }
}

impl Eq for FormalCharacter {}

fn same_datum(a: &Arc<RootDatum>, b: &Arc<RootDatum>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightRow {
    pub weight: Vec<i64>,
    pub mult: i64,
}

impl FormalCharacter {
    pub fn new(datum: Arc<RootDatum>, mults: WeightMap) -> Result<Self> {
        for w in mults.keys() {
            datum.check_len(w.len())?;
        }
        let mults = mults.into_iter().filter(|(_, m)| *m != 0).collect();
        Ok(FormalCharacter { datum, mults })
    }

    pub fn zero(datum: Arc<RootDatum>) -> Self {
        FormalCharacter { datum, mults: BTreeMap::new() }
    }

    pub fn trivial(datum: Arc<RootDatum>) -> Self {
        let r = datum.rank();
        FormalCharacter { datum, mults: BTreeMap::from([(vec![0; r], 1)]) }
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn mults(&self) -> &WeightMap {
        &self.mults
    }

    pub fn mult(&self, w: &[i64]) -> i64 {
        self.mults.get(w).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> i64 {
        self.mults.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    /// Sorted (weight, multiplicity) rows.
    pub fn rows(&self) -> Vec<WeightRow> {
        self.mults
            .iter()
            .map(|(w, m)| WeightRow { weight: w.clone(), mult: *m })
            .collect()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_datum(&self.datum, &other.datum) {
            Ok(())
        } else {
            Err(Error::DatumMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut m = self.mults.clone();
        for (w, k) in &other.mults {
            *m.entry(w.clone()).or_insert(0) += k;
        }
        m.retain(|_, v| *v != 0);
        Ok(FormalCharacter { datum: self.datum.clone(), mults: m })
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mults = if k == 0 {
            BTreeMap::new()
        } else {
            self.mults.iter().map(|(w, m)| (w.clone(), m * k)).collect()
        };
        FormalCharacter { datum: self.datum.clone(), mults }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled(-1))
    }

    /// True if multiplicities are constant on Weyl orbits.
    pub fn is_weyl_invariant(&self) -> bool {
        let d = &self.datum;
        self.mults.iter().all(|(w, m)| {
            (0..d.semisimple_rank()).all(|i| self.mult(&d.reflect(w, i)) == *m)
        })
    }
}

/// `<μ, 2ρ^vee>`.
pub fn two_rho_check(d: &RootDatum, w: &[i64]) -> i64 {
    d.positive_coroots().iter().map(|c| dot(w, c)).sum()
}

fn require_dominant(d: &RootDatum, w: &[i64]) -> Result<()> {
    if d.is_dominant(w)? {
        Ok(())
    } else {
        Err(Error::NotDominant(w.to_vec()))
    }
}

/// Multiplicities of the dominant weights of `V(λ)` (Freudenthal).
pub fn dominant_multiplicities(d: &RootDatum, lambda: &[i64]) -> Result<WeightMap> {
    require_dominant(d, lambda)?;
    let pos = d.positive_roots();
    let sym = d.symmetrizer();
    let l = d.semisimple_rank();

    // dominant weights below λ, found by subtracting positive roots
    let mut doms: Vec<Vec<i64>> = vec![lambda.to_vec()];
    let mut seen: std::collections::HashSet<Vec<i64>> = doms.iter().cloned().collect();
    let mut k = 0;
    while k < doms.len() {
        let v = doms[k].clone();
        for a in pos {
            let u: Vec<i64> = v.iter().zip(a).map(|(x, y)| x - y).collect();
            if d.dynkin(&u).iter().all(|&x| x >= 0) && seen.insert(u.clone()) {
                doms.push(u);
            }
        }
        k += 1;
    }
    let depth = |w: &[i64]| -> Vec<i64> {
        let diff: Vec<i64> = lambda.iter().zip(w).map(|(a, b)| a - b).collect();
        d.root_coords(&diff).expect("dominant weight below λ lies in λ - Q")
    };
    let mut keyed: Vec<(i64, Vec<i64>, Vec<i64>)> = doms
        .into_iter()
        .map(|w| {
            let b = depth(&w);
            (b.iter().sum(), b, w)
        })
        .collect();
    keyed.sort();

    let lam_dyn = d.dynkin(lambda);
    let coeffs = d.positive_root_coeffs();
    let mut out: WeightMap = BTreeMap::new();
    let mut cache: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    for (h, b, mu) in keyed {
        if h == 0 {
            out.insert(mu, 1);
            continue;
        }
        let mu_dyn = d.dynkin(&mu);
        let lhs: i64 = (0..l).map(|i| b[i] * sym[i] * (lam_dyn[i] + mu_dyn[i] + 2)).sum();
        let mut rhs: i64 = 0;
        for (a, c) in pos.iter().zip(coeffs) {
            let mut nu = mu.clone();
            loop {
                for (x, y) in nu.iter_mut().zip(a) {
                    *x += y;
                }
                let dom = cache
                    .entry(nu.clone())
                    .or_insert_with(|| d.dominant_conjugate(&nu))
                    .clone();
                let Some(&m) = out.get(&dom) else { break };
                let nu_dyn = d.dynkin(&nu);
                let ip: i64 = (0..l).map(|j| c[j] * sym[j] * nu_dyn[j]).sum();
                rhs += m * ip;
            }
        }
        rhs *= 2;
        if lhs <= 0 || rhs % lhs != 0 {
            return Err(Error::Invalid(format!(
                "Freudenthal recursion failed at {mu:?} ({rhs}/{lhs})"
            )));
        }
        let m = rhs / lhs;
        if m > 0 {
            out.insert(mu, m);
        }
    }
    Ok(out)
}

/// Character of the irreducible representation with highest weight `λ`.
pub fn irrep_character(d: &Arc<RootDatum>, lambda: &[i64]) -> Result<FormalCharacter> {
    let dom = dominant_multiplicities(d, lambda)?;
    let mut mults = BTreeMap::new();
    for (w, m) in dom {
        for u in d.weyl_orbit(&w)? {
            mults.insert(u, m);
        }
    }
    Ok(FormalCharacter { datum: d.clone(), mults })
}

/// Weyl dimension formula.
pub fn dim_weyl(d: &RootDatum, lambda: &[i64]) -> Result<BigUint> {
    require_dominant(d, lambda)?;
    let dl = d.dynkin(lambda);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for c in d.positive_coroot_coeffs() {
        let a: i64 = c.iter().zip(&dl).map(|(x, y)| x * (y + 1)).sum();
        let b: i64 = c.iter().sum();
        num *= BigUint::from(a as u64);
        den *= BigUint::from(b as u64);
    }
    Ok(num / den)
}

pub fn tensor(a: &FormalCharacter, b: &FormalCharacter) -> Result<FormalCharacter> {
    a.check_same(b)?;
    let mut m: WeightMap = BTreeMap::new();
    for (w1, m1) in &a.mults {
        for (w2, m2) in &b.mults {
            let w: Vec<i64> = w1.iter().zip(w2).map(|(x, y)| x + y).collect();
            *m.entry(w).or_insert(0) += m1 * m2;
        }
    }
    m.retain(|_, v| *v != 0);
    Ok(FormalCharacter { datum: a.datum.clone(), mults: m })
}

/// Adams operation: every weight multiplied by `k`.
pub fn adams(chi: &FormalCharacter, k: i64) -> FormalCharacter {
    let mut m: WeightMap = BTreeMap::new();
    for (w, c) in &chi.mults {
        *m.entry(w.iter().map(|x| x * k).collect()).or_insert(0) += c;
    }
    FormalCharacter { datum: chi.datum.clone(), mults: m }
}

pub fn dual(chi: &FormalCharacter) -> FormalCharacter {
    adams(chi, -1)
}

/// Exterior power via Newton's identities
/// `k Λ^k = Σ_{i=1..k} (-1)^{i-1} Λ^{k-i} ψ^i`.
pub fn exterior_power(chi: &FormalCharacter, k: usize) -> Result<FormalCharacter> {
    let dim = chi.dim();
    if dim < 0 {
        return Err(Error::Invalid(format!("exterior power of a {dim}-dimensional character")));
    }
    if k as i64 > dim {
        return Ok(FormalCharacter::zero(chi.datum.clone()));
    }
    let mut e = vec![FormalCharacter::trivial(chi.datum.clone())];
    let psi: Vec<FormalCharacter> = (0..=k).map(|i| adams(chi, i as i64)).collect();
    for n in 1..=k {
        let mut acc = FormalCharacter::zero(chi.datum.clone());
        for i in 1..=n {
            let term = tensor(&e[n - i], &psi[i])?;
            let term = if i % 2 == 1 { term } else { term.scaled(-1) };
            acc = acc.add(&term)?;
        }
        let mut m = BTreeMap::new();
        for (w, c) in acc.mults {
            if c % n as i64 != 0 {
                return Err(Error::Invalid("Newton identity did not divide".into()));
            }
            m.insert(w, c / n as i64);
        }
        e.push(FormalCharacter { datum: chi.datum.clone(), mults: m });
    }
    Ok(e.pop().expect("nonempty"))
}

/// Ordering key used to pick the next highest weight in [`decompose`]:
/// `<μ, 2ρ^vee>`, then Dynkin labels, then lattice coordinates.
pub fn decompose_key(d: &RootDatum, w: &[i64]) -> (i64, Vec<i64>, Vec<i64>) {
    (two_rho_check(d, w), d.dynkin(w), w.to_vec())
}

/// Writes `chi` as a sum of irreducible characters.
pub fn decompose(chi: &FormalCharacter) -> Result<Vec<(Vec<i64>, i64)>> {
    let d = chi.datum.clone();
    let mut rest = chi.clone();
    let mut out: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    while !rest.is_zero() {
        let top = rest
            .mults
            .keys()
            .max_by_key(|w| decompose_key(&d, w))
            .expect("nonempty")
            .clone();
        let m = rest.mult(&top);
        if m < 0 {
            return Err(Error::NotACharacter(format!("negative multiplicity {m} at {top:?}")));
        }
        if !d.is_dominant(&top)? {
            return Err(Error::NotACharacter(format!("top weight {top:?} is not dominant")));
        }
        let irr = irrep_character(&d, &top)?;
        rest = rest.sub(&irr.scaled(m))?;
        *out.entry(top).or_insert(0) += m;
    }
    let mut v: Vec<(Vec<i64>, i64)> = out.into_iter().collect();
    v.sort_by(|a, b| decompose_key(&d, &b.0).cmp(&decompose_key(&d, &a.0)));
    Ok(v)
}

/// Highest weight of the dual representation, `-w_0 λ`.
pub fn dual_highest_weight(d: &RootDatum, lambda: &[i64]) -> Vec<i64> {
    let neg: Vec<i64> = lambda.iter().map(|x| -x).collect();
    d.dominant_conjugate(&neg)
}

/// Frobenius-Schur indicator of `V(λ)`: 0 if not self-dual, otherwise
/// `(-1)^{<λ, 2ρ^vee>}`.
pub fn fs_indicator(d: &RootDatum, lambda: &[i64]) -> Result<i8> {
    require_dominant(d, lambda)?;
    if dual_highest_weight(d, lambda) != lambda {
        return Ok(0);
    }
    Ok(if two_rho_check(d, lambda).rem_euclid(2) == 0 { 1 } else { -1 })
}

/// True if a direct sum is of symplectic type: every self-dual constituent
/// is symplectic and the others occur together with their duals.
pub fn is_symplectic_sum(d: &RootDatum, parts: &[(Vec<i64>, i64)]) -> Result<bool> {
    let mults: BTreeMap<&Vec<i64>, i64> = parts.iter().map(|(w, m)| (w, *m)).collect();
    for (w, m) in parts {
        match fs_indicator(d, w)? {
            -1 => {}
            1 => return Ok(false),
            _ => {
                let dw = dual_highest_weight(d, w);
                if mults.get(&dw).copied().unwrap_or(0) != *m {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// True if the sum is isomorphic to its dual.
pub fn is_self_dual_sum(d: &RootDatum, parts: &[(Vec<i64>, i64)]) -> bool {
    let mults: BTreeMap<&Vec<i64>, i64> = parts.iter().map(|(w, m)| (w, *m)).collect();
    parts.iter().all(|(w, m)| {
        let dw = dual_highest_weight(d, w);
        mults.get(&dw).copied().unwrap_or(0) == *m
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::build_datum;

    fn datum(s: &str) -> Arc<RootDatum> {
        Arc::new(build_datum(s).unwrap())
    }

    #[test]
    fn e7_minuscule() {
        let d = datum("E7:sc");
        let chi = irrep_character(&d, &[0, 0, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(chi.dim(), 56);
        assert_eq!(fs_indicator(&d, &[0, 0, 0, 0, 0, 0, 1]).unwrap(), -1);
    }

    #[test]
    fn a2_adjoint() {
        let d = datum("A2:sc");
        let chi = irrep_character(&d, &[1, 1]).unwrap();
        assert_eq!(chi.dim(), 8);
        assert_eq!(chi.mult(&[0, 0]), 2);
    }

    #[test]
    fn clebsch_gordan() {
        let d = datum("A1:sc");
        let s = irrep_character(&d, &[1]).unwrap();
        let t = tensor(&s, &s).unwrap();
        assert_eq!(decompose(&t).unwrap(), vec![(vec![2], 1), (vec![0], 1)]);
    }

    #[test]
    fn wedge3_of_a5() {
        let d = datum("A5:sc");
        let s = irrep_character(&d, &[1, 0, 0, 0, 0]).unwrap();
        let w = exterior_power(&s, 3).unwrap();
        assert_eq!(w.dim(), 20);
        assert_eq!(decompose(&w).unwrap(), vec![(vec![0, 0, 1, 0, 0], 1)]);
    }

    #[test]
    fn b3_spin_orthogonal() {
        let d = datum("B3:sc");
        assert_eq!(fs_indicator(&d, &[0, 0, 1]).unwrap(), 1);
        assert_eq!(dim_weyl(&d, &[0, 0, 1]).unwrap(), BigUint::from(8u32));
    }

    #[test]
    fn not_a_character() {
        let d = datum("A1:sc");
        let mut m = BTreeMap::new();
        m.insert(vec![1], 1);
        let chi = FormalCharacter::new(d, m).unwrap();
        assert!(matches!(decompose(&chi), Err(Error::NotACharacter(_))));
    }
}
