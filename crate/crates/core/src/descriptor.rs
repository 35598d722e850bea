//! Group-shape descriptors and the constructors behind them.
//!
//! A descriptor is a product of named factors, optionally divided by central
//! elements and cut down by kernels of characters:
//!
//! ```text
//! GSpin7 x GL2 ; ker(0 0 0 2 1 1)
//! D6:sc x A1:sc / <(1 0 0 0 0 0 1/2)>
//! ```
//!
//! Weights and cocharacters may be given in "ambient" coordinates, i.e. the
//! concatenated coordinates of the factors (Dynkin labels for simply
//! connected factors, simple-root coordinates for adjoint ones, the usual
//! `e_i` coordinates for `GL_n` and tori, with a trailing similitude
//! coordinate for the `G*` factors). [`Ambient`] converts them to the
//! coordinates of the final lattice.

use std::sync::Arc;

use num_traits::Zero;

use crate::cartan::{CartanType, Family};
use crate::error::{Error, Result};
use crate::linalg::{
    self, dot_q, integer_kernel, integral, inverse, lattice_basis, lcm_denominators, qmat_vec,
    to_q, to_qv, unimodular_inverse, unimodular_to_first, IMat, QMat, Rat,
};
use crate::rootdata::RootDatum;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Stage {
    /// Passage to a sublattice with basis `B` (columns): weights map by
    /// `B^{-1}`, cocharacters by `B^T`.
    Basis { binv: QMat, bt: IMat },
    /// Kernel of a primitive character `chi`; `u * chi = e_0`.
    Kernel { u: IMat, uinv_t: IMat, chi: Vec<i64> },
}

/// Coordinate conversion from the ambient product of factors to the final lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambient {
    pub dim: usize,
    /// (factor name, first ambient coordinate, number of coordinates)
    pub factors: Vec<(String, usize, usize)>,
    stages: Vec<Stage>,
}

impl Ambient {
    pub fn identity(dim: usize) -> Self {
        Ambient { dim, factors: vec![], stages: vec![] }
    }

    /// Converts an ambient weight to lattice coordinates.
    pub fn weight(&self, w: &[i64]) -> Result<Vec<i64>> {
        if w.len() != self.dim {
            return Err(Error::Length { expected: self.dim, got: w.len() });
        }
        let mut v = w.to_vec();
        for st in &self.stages {
            v = match st {
                Stage::Basis { binv, .. } => integral(&qmat_vec(binv, &to_qv(&v)))
                    .ok_or_else(|| Error::NotInLattice(format!("{w:?}")))?,
                Stage::Kernel { u, .. } => linalg::mat_vec(u, &v)[1..].to_vec(),
            };
        }
        Ok(v)
    }

    /// Converts an ambient rational cocharacter to lattice coordinates.
    /// A cocharacter with integral (nonzero) pairing against a kernel
    /// character is shifted by an integral cocharacter first; a non-integral
    /// pairing means the element is not in the subgroup.
    pub fn covector(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        if x.len() != self.dim {
            return Err(Error::Length { expected: self.dim, got: x.len() });
        }
        let mut v = x.to_vec();
        for st in &self.stages {
            v = match st {
                Stage::Basis { bt, .. } => qmat_vec(&to_q(bt), &v),
                Stage::Kernel { u, uinv_t, chi } => {
                    let k = dot_q(chi, &v);
                    if !k.is_integer() {
                        return Err(Error::NotInLattice(format!(
                            "element pairs to {k} with a defining character"
                        )));
                    }
                    // y = u^T e_0 satisfies <chi, y> = 1
                    for (t, val) in v.iter_mut().enumerate() {
                        *val -= k * Rat::from_integer(u[0][t]);
                    }
                    qmat_vec(&to_q(uinv_t), &v)[1..].to_vec()
                }
            };
        }
        Ok(v)
    }

    /// Parses whitespace/comma separated integers and converts.
    pub fn weight_str(&self, s: &str) -> Result<Vec<i64>> {
        self.weight(&parse_ints(s)?)
    }

    pub fn covector_str(&self, s: &str) -> Result<Vec<Rat>> {
        self.covector(&parse_rats(s)?)
    }
}

struct Factor {
    name: String,
    dim: usize,
    roots: IMat,
    coroots: IMat,
    quotients: Vec<Vec<Rat>>,
}

fn sc_factor(name: &str, t: CartanType) -> Factor {
    let c = t.cartan_matrix();
    let l = t.rank;
    Factor {
        name: name.into(),
        dim: l,
        roots: (0..l).map(|j| (0..l).map(|k| c[k][j]).collect()).collect(),
        coroots: linalg::identity(l),
        quotients: vec![],
    }
}

fn ad_factor(name: &str, t: CartanType) -> Factor {
    let l = t.rank;
    Factor {
        name: name.into(),
        dim: l,
        roots: linalg::identity(l),
        coroots: t.cartan_matrix(),
        quotients: vec![],
    }
}

fn gl_factor(name: &str, n: usize) -> Factor {
    let mut roots = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut v = vec![0; n];
        v[i] = 1;
        v[i + 1] = -1;
        roots.push(v);
    }
    Factor { name: name.into(), dim: n, coroots: roots.clone(), roots, quotients: vec![] }
}

/// Coweight `ω_k^vee` (0-indexed) as a covector in Dynkin-label coordinates.
fn sc_coweight(t: CartanType, k: usize) -> Vec<Rat> {
    let inv = inverse(&to_q(&t.cartan_matrix())).expect("invertible");
    inv[k].clone()
}

/// Appends a similitude coordinate to a simply connected factor and records
/// the central quotients `(coweight, t)`.
fn similitude(name: &str, t: CartanType, gens: &[(Vec<Rat>, Rat)]) -> Factor {
    let mut f = sc_factor(name, t);
    for r in f.roots.iter_mut().chain(f.coroots.iter_mut()) {
        r.push(0);
    }
    f.dim += 1;
    f.quotients = gens
        .iter()
        .map(|(cw, s)| {
            let mut v = cw.clone();
            v.push(*s);
            v
        })
        .collect();
    f
}

fn spin_type(n: usize) -> Result<CartanType> {
    if n >= 5 && n % 2 == 1 {
        CartanType::new(Family::B, n / 2)
    } else if n >= 6 && n % 2 == 0 {
        CartanType::new(Family::D, n / 2)
    } else {
        Err(Error::Unsupported(format!("Spin{n}")))
    }
}

fn split_name(s: &str) -> (String, Option<usize>) {
    let pos = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
    let (a, b) = s.split_at(pos);
    (a.to_string(), b.parse().ok())
}

fn parse_factor(s: &str) -> Result<Factor> {
    let s = s.trim();
    if let Some((ty, iso)) = s.split_once(':') {
        let t = CartanType::parse(ty)?;
        return match iso.trim() {
            "sc" => Ok(sc_factor(s, t)),
            "ad" => Ok(ad_factor(s, t)),
            other => Err(Error::Parse(format!("unknown isogeny '{other}' (use sc or ad)"))),
        };
    }
    let (head, n) = split_name(s);
    let n = n.ok_or_else(|| Error::Parse(format!("factor '{s}' needs a size")))?;
    let half = Rat::new(1, 2);
    match head.as_str() {
        "GL" if n >= 1 => Ok(gl_factor(s, n)),
        "T" => Ok(Factor { name: s.into(), dim: n, roots: vec![], coroots: vec![], quotients: vec![] }),
        "SL" if n >= 2 => Ok(sc_factor(s, CartanType::new(Family::A, n - 1)?)),
        "PGL" if n >= 2 => Ok(ad_factor(s, CartanType::new(Family::A, n - 1)?)),
        "Sp" if n >= 4 && n % 2 == 0 => Ok(sc_factor(s, CartanType::new(Family::C, n / 2)?)),
        "Spin" => Ok(sc_factor(s, spin_type(n)?)),
        "SO" if n % 2 == 1 => Ok(ad_factor(s, spin_type(n)?)),
        "SO" => {
            let t = spin_type(n)?;
            let mut f = sc_factor(s, t);
            f.quotients = vec![sc_coweight(t, 0)];
            Ok(f)
        }
        "GSp" if n >= 4 && n % 2 == 0 => {
            let t = CartanType::new(Family::C, n / 2)?;
            Ok(similitude(s, t, &[(sc_coweight(t, t.rank - 1), half)]))
        }
        "GSpin" => {
            let t = spin_type(n)?;
            Ok(similitude(s, t, &[(sc_coweight(t, 0), half)]))
        }
        "GSO" if n % 2 == 0 => {
            let t = spin_type(n)?;
            Ok(similitude(
                s,
                t,
                &[(sc_coweight(t, 0), Rat::zero()), (sc_coweight(t, t.rank - 1), half)],
            ))
        }
        "GHSpin" if n >= 8 && n % 4 == 0 => {
            let t = spin_type(n)?;
            Ok(similitude(s, t, &[(ghspin_coweight(t), half)]))
        }
        _ => Err(Error::Unsupported(s.to_string())),
    }
}

/// The minuscule coweight among `ω_{l-1}^vee, ω_l^vee` of `D_l` (l even) that
/// pairs integrally with `ω_l`.
pub fn ghspin_coweight(t: CartanType) -> Vec<Rat> {
    let l = t.rank;
    let a = sc_coweight(t, l - 2);
    if a[l - 1].is_integer() {
        a
    } else {
        sc_coweight(t, l - 1)
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            Ok(Rat::new(a, b))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn tokens(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
}

pub fn parse_ints(s: &str) -> Result<Vec<i64>> {
    tokens(s.trim().trim_start_matches('(').trim_end_matches(')'))
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad integer '{t}'"))))
        .collect()
}

pub fn parse_rats(s: &str) -> Result<Vec<Rat>> {
    tokens(s.trim().trim_start_matches('(').trim_end_matches(')'))
        .map(parse_rat)
        .collect()
}

/// Builds a root datum from a descriptor string.
pub fn build_datum(desc: &str) -> Result<RootDatum> {
    let mut parts = desc.split(';');
    let head = parts.next().unwrap_or("").trim();
    let (prod, quot) = match head.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (head, None),
    };
    let factor_strs: Vec<&str> = prod
        .split(|c: char| c == '×' || c == '*')
        .flat_map(|p| p.split(" x "))
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .collect();
    if factor_strs.is_empty() {
        return Err(Error::Parse("empty descriptor".into()));
    }
    let factors = factor_strs.iter().map(|s| parse_factor(s)).collect::<Result<Vec<_>>>()?;
    let dim: usize = factors.iter().map(|f| f.dim).sum();

    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    let mut quotients: Vec<Vec<Rat>> = Vec::new();
    let mut spans = Vec::new();
    let mut off = 0;
    for f in &factors {
        let pad = |v: &[i64]| {
            let mut w = vec![0i64; dim];
            w[off..off + f.dim].copy_from_slice(v);
            w
        };
        roots.extend(f.roots.iter().map(|r| pad(r)));
        coroots.extend(f.coroots.iter().map(|r| pad(r)));
        for q in &f.quotients {
            let mut w = vec![Rat::zero(); dim];
            w[off..off + f.dim].copy_from_slice(q);
            quotients.push(w);
        }
        spans.push((f.name.clone(), off, f.dim));
        off += f.dim;
    }
    if let Some(q) = quot {
        let q = q.trim();
        let inner = q
            .strip_prefix('<')
            .and_then(|r| r.strip_suffix('>'))
            .ok_or_else(|| Error::Parse("quotient must look like <(..), (..)>".into()))?;
        for g in inner.split(')') {
            let g = g.trim().trim_start_matches(',').trim();
            if g.is_empty() {
                continue;
            }
            let v = parse_rats(g.trim_start_matches('('))?;
            if v.len() != dim {
                return Err(Error::Length { expected: dim, got: v.len() });
            }
            quotients.push(v);
        }
    }

    let mut stages = Vec::new();
    let mut cur_roots = roots;
    let mut cur_coroots = coroots;
    let mut cur_dim = dim;

    if !quotients.is_empty() {
        for z in &quotients {
            for r in &cur_roots {
                if !dot_q(r, z).is_integer() {
                    return Err(Error::NotCentral(format!("{z:?}")));
                }
            }
        }
        let basis = quotient_basis(&quotients, dim)?;
        let bq = linalg::transpose(&to_q(&basis), dim); // columns are basis vectors
        let binv = inverse(&bq).ok_or(Error::Invalid("degenerate quotient".into()))?;
        let bt = basis.clone(); // rows = basis vectors; B^T x pairs x with each
        cur_roots = cur_roots
            .iter()
            .map(|r| integral(&qmat_vec(&binv, &to_qv(r))).ok_or(Error::NotInLattice("root".into())))
            .collect::<Result<_>>()?;
        cur_coroots = cur_coroots.iter().map(|c| linalg::mat_vec(&bt, c)).collect();
        stages.push(Stage::Basis { binv, bt });
    }

    for k in parts {
        let k = k.trim();
        if k.is_empty() {
            continue;
        }
        let body = k
            .strip_prefix("ker")
            .map(str::trim)
            .and_then(|r| r.strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected ker(...), got '{k}'")))?;
        let amb = parse_ints(body)?;
        let partial = Ambient { dim, factors: spans.clone(), stages: stages.clone() };
        let chi = partial.weight(&amb)?;
        for c in &cur_coroots {
            if linalg::dot(&chi, c) != 0 {
                return Err(Error::Invalid(format!(
                    "character {amb:?} is nontrivial on a coroot"
                )));
            }
        }
        let (u, g) = unimodular_to_first(&chi)?;
        if g != 1 {
            return Err(Error::Invalid(format!("character {amb:?} is not primitive")));
        }
        let uinv = unimodular_inverse(&u)?;
        let uinv_t = linalg::transpose(&uinv, cur_dim);
        cur_roots = cur_roots.iter().map(|r| linalg::mat_vec(&u, r)[1..].to_vec()).collect();
        cur_coroots = cur_coroots
            .iter()
            .map(|c| linalg::mat_vec(&uinv_t, c)[1..].to_vec())
            .collect();
        stages.push(Stage::Kernel { u, uinv_t, chi });
        cur_dim -= 1;
    }

    let ambient = Ambient { dim, factors: spans, stages };
    let d = RootDatum::from_simple(cur_dim, cur_roots, cur_coroots, desc.trim())?;
    Ok(d.with_ambient(Arc::new(ambient)))
}

/// Basis (rows) of `{λ ∈ Z^n : <λ, z> ∈ Z for all z}`.
fn quotient_basis(zs: &[Vec<Rat>], n: usize) -> Result<IMat> {
    let big = zs.iter().fold(1i64, |acc, z| num_integer::lcm(acc, lcm_denominators(z)));
    let k = zs.len();
    // kernel of [big*Z | -big*I] projected to the first n coordinates
    let m: IMat = zs
        .iter()
        .enumerate()
        .map(|(row, z)| {
            let mut v: Vec<i64> = z.iter().map(|x| (*x * Rat::from_integer(big)).to_integer()).collect();
            v.extend((0..k).map(|j| if j == row { -big } else { 0 }));
            v
        })
        .collect();
    let ker = integer_kernel(&m, n + k)?;
    let proj: IMat = ker.iter().map(|v| v[..n].to_vec()).collect();
    let b = lattice_basis(&proj, n)?;
    if b.len() != n {
        return Err(Error::Invalid("quotient lattice is not full rank".into()));
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gspin7_gl2_kernel() {
        let d = build_datum("GSpin7 x GL2 ; ker(0 0 0 2 1 1)").unwrap();
        assert_eq!(d.rank(), 5);
        assert_eq!(d.type_label(), "B3+A1+T1");
        let c = d.center().unwrap();
        assert_eq!(c.torus_rank, 1);
        assert_eq!(c.component_count(), 2);
    }

    #[test]
    fn spin12_sl2_mod_diagonal() {
        // (ω1^vee of D6, -1 of SL2)
        let d = build_datum("D6:sc x A1:sc / <(1 1 1 1 1/2 1/2 1/2)>").unwrap();
        let c = d.center().unwrap();
        assert_eq!(c.torus_rank, 0);
        assert_eq!(c.component_group.invariants, vec![2, 2]);
    }

    #[test]
    fn gl_kernel_of_det() {
        let d = build_datum("GL4 x GL2 ; ker(1 1 1 1 1 1)").unwrap();
        assert_eq!(d.rank(), 5);
        let a = d.ambient().unwrap();
        let x = a.covector_str("1/2 1/2 1/2 1/2 1/2 1/2").unwrap();
        assert_eq!(x.len(), 5);
        assert!(a.covector_str("1/2 0 0 0 0 0").is_err());
    }

    #[test]
    fn non_central_quotient_rejected() {
        assert!(matches!(
            build_datum("A1:sc / <(1/3)>"),
            Err(Error::NotCentral(_))
        ));
    }
}
