//! Torsion points of the maximal torus: Kac coordinates, conjugacy classes,
//! centralizers, ellipticity and eigenspace decompositions.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, dot_q, inverse, lattice_basis, smith, to_q, IMat, Rat};
use crate::repchar::FormalCharacter;
use crate::rootdata::{FiniteAbelianGroup, RootDatum};

/// A point `x` of `X^vee ⊗ Q`, standing for the element `exp(2πi x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionPoint {
    pub x: Vec<Rat>,
    /// Least `m` with `m x` integral, i.e. the order of the element.
    pub order: i64,
}

/// Kac coordinates of one simple component: `s_0, ..., s_l` with
/// `order = Σ a_i s_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KacCoordinates {
    pub values: Vec<i64>,
    pub order: i64,
}

impl TorsionPoint {
    pub fn new(d: &RootDatum, x: Vec<Rat>) -> Result<Self> {
        d.check_len(x.len())?;
        let order = linalg::lcm_denominators(&x);
        Ok(TorsionPoint { x, order })
    }

    pub fn identity(d: &RootDatum) -> Self {
        TorsionPoint { x: vec![Rat::zero(); d.rank()], order: 1 }
    }

    /// Order of the image modulo the identity component of the center.
    pub fn order_mod_center(&self, d: &RootDatum) -> i64 {
        d.derived_chars()
            .iter()
            .map(|lam| *dot_q(lam, &self.x).denom())
            .fold(1, |a, b| a.lcm(&b))
    }

    /// Order of the image in the adjoint group.
    pub fn adjoint_order(&self, d: &RootDatum) -> i64 {
        d.simple_roots()
            .iter()
            .map(|a| *dot_q(a, &self.x).denom())
            .fold(1, |a, b| a.lcm(&b))
    }

    pub fn scaled(&self, k: i64) -> Self {
        let x: Vec<Rat> = self.x.iter().map(|v| *v * Rat::from_integer(k)).collect();
        let order = linalg::lcm_denominators(&x);
        TorsionPoint { x, order }
    }

    /// Adds an integral cocharacter so that every coordinate lies in `[0, 1)`.
    pub fn reduced(&self) -> Self {
        TorsionPoint { x: self.x.iter().map(|v| linalg::frac(*v)).collect(), order: self.order }
    }
}

/// Kac coordinates of `p` after moving it into the fundamental alcove,
/// one tuple per simple component.
pub fn point_to_kac(d: &RootDatum, p: &TorsionPoint) -> Vec<KacCoordinates> {
    let y = d.reduce_to_alcove(&p.x);
    d.components()
        .iter()
        .enumerate()
        .map(|(c, comp)| {
            let theta = &d.positive_roots()[d.highest_root(c)];
            let mut fr: Vec<Rat> = vec![Rat::one() - dot_q(theta, &y)];
            fr.extend(comp.simple.iter().map(|&i| dot_q(&d.simple_roots()[i], &y)));
            let m = fr.iter().map(|r| *r.denom()).fold(1, |a, b| a.lcm(&b));
            let values: Vec<i64> = fr.iter().map(|r| (*r * Rat::from_integer(m)).to_integer()).collect();
            let marks = comp.ctype.marks();
            let order = values[0] + values[1..].iter().zip(&marks).map(|(s, a)| s * a).sum::<i64>();
            KacCoordinates { values, order }
        })
        .collect()
}

/// The point `Σ_i (s_i / m) ω_i^vee` for each component, plus a rational
/// central part (in the coordinates of the central cocharacter basis).
pub fn kac_to_point(d: &RootDatum, kac: &[KacCoordinates], central: &[Rat]) -> Result<TorsionPoint> {
    let comps = d.components();
    if kac.len() != comps.len() {
        return Err(Error::Length { expected: comps.len(), got: kac.len() });
    }
    if central.len() != d.central_cochars().len() {
        return Err(Error::Length { expected: d.central_cochars().len(), got: central.len() });
    }
    let cw = d.fundamental_coweights();
    let mut x = vec![Rat::zero(); d.rank()];
    for (k, comp) in kac.iter().zip(comps) {
        let l = comp.simple.len();
        if k.values.len() != l + 1 || k.values.iter().any(|&s| s < 0) {
            return Err(Error::Invalid(format!("bad Kac coordinates {:?}", k.values)));
        }
        let marks = comp.ctype.marks();
        let m = k.values[0] + k.values[1..].iter().zip(&marks).map(|(s, a)| s * a).sum::<i64>();
        if m <= 0 {
            return Err(Error::Invalid("Kac coordinates sum to zero".into()));
        }
        for (i, &g) in comp.simple.iter().enumerate() {
            let f = Rat::new(k.values[i + 1], m);
            for (a, b) in x.iter_mut().zip(&cw[g]) {
                *a += f * *b;
            }
        }
    }
    for (c, z) in central.iter().zip(d.central_cochars()) {
        for (a, b) in x.iter_mut().zip(z) {
            *a += *c * Rat::from_integer(*b);
        }
    }
    TorsionPoint::new(d, x)
}

/// One conjugacy class of torsion elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionClass {
    pub centralizer: String,
    pub order: i64,
    pub elliptic: bool,
    pub kac: Vec<Vec<i64>>,
    #[serde(skip)]
    pub point: TorsionPoint,
}

/// Conjugacy classes of elements of order dividing `m`, taken modulo the
/// identity component of the center. Representatives lie in the fundamental
/// alcove and are identified under the part of the fundamental group that
/// is realised in the group.
pub fn enumerate_torsion(d: &RootDatum, m: i64) -> Result<Vec<TorsionClass>> {
    if m < 1 {
        return Err(Error::Invalid("order must be positive".into()));
    }
    let cw = d.fundamental_coweights();
    let comps = d.components();
    // per component: alcove points with <α_i, x> ∈ (1/m)Z
    let mut per_comp: Vec<Vec<Vec<i64>>> = Vec::new();
    for comp in comps {
        let marks = comp.ctype.marks();
        let mut tuples = Vec::new();
        let mut cur = vec![0i64; marks.len()];
        fill(&marks, 0, m, &mut cur, &mut tuples);
        per_comp.push(tuples);
    }
    let omega: Vec<Vec<Rat>> = d.omega_x().into_iter().map(|o| o.translation).collect();
    let mut seen: BTreeMap<Vec<Rat>, ()> = BTreeMap::new();
    let mut out = Vec::new();
    let mut idx = vec![0usize; comps.len()];
    loop {
        let mut x = vec![Rat::zero(); d.rank()];
        for ((comp, tuples), &k) in comps.iter().zip(&per_comp).zip(&idx) {
            for (i, &g) in comp.simple.iter().enumerate() {
                let f = Rat::new(tuples[k][i], m);
                for (a, b) in x.iter_mut().zip(&cw[g]) {
                    *a += f * *b;
                }
            }
        }
        let integral = d
            .derived_chars()
            .iter()
            .all(|lam| (dot_q(lam, &x) * Rat::from_integer(m)).is_integer());
        if integral && !seen.contains_key(&x) {
            for t in &omega {
                let moved: Vec<Rat> = x.iter().zip(t).map(|(a, b)| *a + *b).collect();
                seen.insert(d.reduce_to_alcove(&moved), ());
            }
            let p = TorsionPoint { order: 1, x: x.clone() };
            let p = TorsionPoint { order: p.order_mod_center(d), x };
            out.push(classify(d, &p)?);
        }
        // odometer over the components
        let mut k = 0;
        loop {
            if k == idx.len() {
                out.sort_by(|a, b| (a.order, &a.kac).cmp(&(b.order, &b.kac)));
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < per_comp[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// All elliptic classes, modulo the identity component of the center. On
/// each simple component an elliptic point sits at a vertex of the alcove,
/// so the list is finite and needs no order bound.
pub fn elliptic_classes(d: &RootDatum) -> Result<Vec<TorsionClass>> {
    let cw = d.fundamental_coweights();
    let comps = d.components();
    let omega: Vec<Vec<Rat>> = d.omega_x().into_iter().map(|o| o.translation).collect();
    let mut seen: BTreeMap<Vec<Rat>, ()> = BTreeMap::new();
    let mut out = Vec::new();
    let mut idx = vec![0usize; comps.len()];
    loop {
        let mut x = vec![Rat::zero(); d.rank()];
        for (comp, &node) in comps.iter().zip(&idx) {
            if node > 0 {
                let a = comp.ctype.marks()[node - 1];
                let g = comp.simple[node - 1];
                for (v, w) in x.iter_mut().zip(&cw[g]) {
                    *v += *w / Rat::from_integer(a);
                }
            }
        }
        let y = d.reduce_to_alcove(&x);
        if !seen.contains_key(&y) {
            for t in &omega {
                let moved: Vec<Rat> = y.iter().zip(t).map(|(a, b)| *a + *b).collect();
                seen.insert(d.reduce_to_alcove(&moved), ());
            }
            let p = TorsionPoint { order: 1, x: y };
            let p = TorsionPoint { order: p.order_mod_center(d), x: p.x };
            out.push(classify(d, &p)?);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                out.sort_by(|a, b| (a.order, &a.kac).cmp(&(b.order, &b.kac)));
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] <= comps[k].simple.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn fill(marks: &[i64], i: usize, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if i == marks.len() {
        out.push(cur.clone());
        return;
    }
    let mut s = 0;
    while s * marks[i] <= budget {
        cur[i] = s;
        fill(marks, i + 1, budget - s * marks[i], cur, out);
        s += 1;
    }
    cur[i] = 0;
}

/// Row describing the class of `p`.
pub fn classify(d: &RootDatum, p: &TorsionPoint) -> Result<TorsionClass> {
    let h = centralizer_subsystem(d, p)?;
    Ok(TorsionClass {
        centralizer: h.type_label(),
        order: p.order,
        elliptic: h.semisimple_rank() == d.semisimple_rank(),
        kac: point_to_kac(d, p).into_iter().map(|k| k.values).collect(),
        point: p.clone(),
    })
}

/// Simple roots (in X) and coroots of `{α : <α, x> ∈ Z}` with respect to the
/// positive system induced from `d`.
fn centralizer_simple(d: &RootDatum, p: &TorsionPoint) -> (IMat, IMat) {
    let keep: Vec<usize> = (0..d.positive_roots().len())
        .filter(|&k| dot_q(&d.positive_roots()[k], &p.x).is_integer())
        .collect();
    let coeffs = d.positive_root_coeffs();
    let set: std::collections::HashSet<&Vec<i64>> = keep.iter().map(|&k| &coeffs[k]).collect();
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    for &k in &keep {
        let c = &coeffs[k];
        let decomposable = keep.iter().any(|&j| {
            let diff: Vec<i64> = c.iter().zip(&coeffs[j]).map(|(a, b)| a - b).collect();
            j != k && set.contains(&diff)
        });
        if !decomposable {
            roots.push(d.positive_roots()[k].clone());
            coroots.push(d.positive_coroots()[k].clone());
        }
    }
    (roots, coroots)
}

/// Centralizer of `exp(2πi x)`: same lattice, roots integral on `x`.
pub fn centralizer_subsystem(d: &RootDatum, p: &TorsionPoint) -> Result<RootDatum> {
    d.check_len(p.x.len())?;
    let (roots, coroots) = centralizer_simple(d, p);
    let mut h = RootDatum::from_simple(d.rank(), roots, coroots, "")?;
    if let Some(a) = d.ambient() {
        h = h.with_ambient(a.clone());
    }
    let label = h.type_label();
    Ok(h.with_label(label))
}

pub fn is_elliptic(d: &RootDatum, p: &TorsionPoint) -> Result<bool> {
    Ok(centralizer_subsystem(d, p)?.semisimple_rank() == d.semisimple_rank())
}

/// Splits `chi` by the eigenvalues of `exp(2πi x)`: weight `μ` goes to class
/// `k = m <μ, x> mod m`, with `m` the order of `p`.
pub fn eigenspace_decomposition(
    chi: &FormalCharacter,
    p: &TorsionPoint,
) -> Result<(Arc<RootDatum>, BTreeMap<i64, FormalCharacter>)> {
    eigenspace_decomposition_mod(chi, p, p.order)
}

/// As [`eigenspace_decomposition`] with an explicit modulus; a weight whose
/// pairing with `x` has denominator not dividing `m` is an error.
pub fn eigenspace_decomposition_mod(
    chi: &FormalCharacter,
    p: &TorsionPoint,
    m: i64,
) -> Result<(Arc<RootDatum>, BTreeMap<i64, FormalCharacter>)> {
    let d = chi.datum();
    let h = Arc::new(centralizer_subsystem(d, p)?);
    let mut parts: BTreeMap<i64, crate::rootdata::WeightMap> = BTreeMap::new();
    for (w, mult) in chi.mults() {
        let v = dot_q(w, &p.x) * Rat::from_integer(m);
        if !v.is_integer() {
            return Err(Error::Denominator { pairing: format!("{}", dot_q(w, &p.x)), order: m });
        }
        let k = v.to_integer().rem_euclid(m);
        parts.entry(k).or_default().insert(w.clone(), *mult);
    }
    let mut out = BTreeMap::new();
    for (k, mults) in parts {
        out.insert(k, FormalCharacter::new(h.clone(), mults)?);
    }
    Ok((h, out))
}

/// Component group of the centralizer of `p` in an adjoint group: the
/// stabilizer of its alcove representative under the fundamental group.
pub fn component_group_adjoint(d: &RootDatum, p: &TorsionPoint) -> Result<FiniteAbelianGroup> {
    if !d.center()?.component_group.is_trivial() {
        return Err(Error::Unsupported(format!("{} is not adjoint", d.type_label())));
    }
    let y = d.reduce_to_alcove(&p.x);
    let stab: Vec<Vec<Rat>> = d
        .omega_elements()
        .into_iter()
        .filter(|o| {
            let moved: Vec<Rat> = y.iter().zip(&o.translation).map(|(a, b)| *a + *b).collect();
            d.reduce_to_alcove(&moved) == y
        })
        .map(|o| o.translation)
        .collect();
    let invariants = subgroup_invariants(d, &stab)?;
    Ok(FiniteAbelianGroup { invariants, elements: stab })
}

/// Invariant factors of the subgroup of `P^vee/Q^vee` spanned by `ts`.
fn subgroup_invariants(d: &RootDatum, ts: &[Vec<Rat>]) -> Result<Vec<i64>> {
    let l = d.semisimple_rank();
    if l == 0 || ts.len() <= 1 {
        return Ok(vec![]);
    }
    let fw = d.fundamental_weights();
    // simple-coroot coordinates of each translation
    let coords: Vec<Vec<Rat>> = ts
        .iter()
        .map(|t| fw.iter().map(|w| w.iter().zip(t).fold(Rat::zero(), |a, (x, y)| a + *x * *y)).collect())
        .collect();
    let n = coords.iter().map(|c| linalg::lcm_denominators(c)).fold(1, |a: i64, b| a.lcm(&b));
    let mut gens: IMat = (0..l)
        .map(|j| (0..l).map(|i| if i == j { n } else { 0 }).collect())
        .collect();
    for c in &coords {
        gens.push(c.iter().map(|v| (*v * Rat::from_integer(n)).to_integer()).collect());
    }
    let basis = lattice_basis(&gens, l)?;
    // express n e_j in the basis; the Smith invariants give L / Z^l
    let bt = inverse(&linalg::transpose(&to_q(&basis), l)).ok_or(Error::Overflow)?;
    let m: IMat = (0..l)
        .map(|j| {
            (0..l)
                .map(|i| (bt[i][j] * Rat::from_integer(n)).to_integer())
                .collect()
        })
        .collect();
    let s = smith(&m, l, l)?;
    Ok(s.diag.into_iter().filter(|&x| x > 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::build_datum;
    use crate::linalg::rat;

    #[test]
    fn sl2_classes() {
        let d = build_datum("A1:sc").unwrap();
        let cl = enumerate_torsion(&d, 2).unwrap();
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[1].kac, vec![vec![0, 1]]);
        assert_eq!(cl[1].centralizer, "A1");
    }

    #[test]
    fn kac_round_trip_e7() {
        let d = build_datum("E7:sc").unwrap();
        let k = KacCoordinates { values: vec![0, 1, 0, 0, 0, 0, 0, 0], order: 2 };
        let p = kac_to_point(&d, &[k.clone()], &[]).unwrap();
        assert_eq!(point_to_kac(&d, &p), vec![k]);
        assert_eq!(centralizer_subsystem(&d, &p).unwrap().type_label(), "D6+A1");
    }

    #[test]
    fn regular_a1_not_elliptic() {
        let d = build_datum("A1:sc").unwrap();
        let p = TorsionPoint::new(&d, vec![rat(1, 4)]).unwrap();
        assert!(!is_elliptic(&d, &p).unwrap());
    }

    #[test]
    fn adjoint_a1_half() {
        let d = build_datum("A1:ad").unwrap();
        let p = TorsionPoint::new(&d, vec![rat(1, 2)]).unwrap();
        assert_eq!(component_group_adjoint(&d, &p).unwrap().invariants, vec![2]);
        let e = TorsionPoint::identity(&d);
        assert!(component_group_adjoint(&d, &e).unwrap().is_trivial());
    }
}
