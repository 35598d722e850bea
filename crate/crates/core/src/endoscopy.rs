//! Sign bookkeeping for semisimple classes of unitary similitude groups and
//! their endoscopic groups.
//!
//! A stable class is a list of factors `(F_i, F_{±i}, x_i)`: a split factor
//! or a field factor given by a tag and a degree. A rational class adds a
//! bit `c_i` per field factor, the norm class of the hermitian datum. Local
//! fields are never modelled; a quadratic extension is a tag with a `Z/2`
//! norm class group.
//!
//! Shapes of the form `A | B` describe a class of `GU_4 x GU_2` coming from
//! `H = GU_2 x GU_2`: `A` is the block that also appears in the `GU_2`
//! factor. Each block has total degree 2.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{Item, VerificationReport};

/// Sign carried by classes of the pure inner forms in the cancellation sum.
pub const INNER_FORM_SIGN: i64 = -1;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FactorKind {
    /// `F ⊕ F` over `F`.
    Split,
    /// A quadratic field extension; `"E"` is the field defining the unitary group.
    Field(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Factor {
    pub label: String,
    pub kind: FactorKind,
    pub degree: u32,
}

impl Factor {
    pub fn is_field(&self) -> bool {
        matches!(self.kind, FactorKind::Field(_))
    }

    /// Scaling by `F^×` changes the norm class of a field factor exactly
    /// when its degree is odd.
    pub fn flips(&self) -> bool {
        self.is_field() && self.degree % 2 == 1
    }

    fn signature(&self) -> (FactorKind, u32, &str) {
        (self.kind.clone(), self.degree, &self.label)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, default) = match &self.kind {
            FactorKind::Split => ("S", 1),
            FactorKind::Field(t) => (t.as_str(), if t == "E" { 1 } else { 2 }),
        };
        if self.degree == default {
            write!(f, "{tag}:{}", self.label)
        } else {
            write!(f, "{tag}^{}:{}", self.degree, self.label)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct StableClass {
    pub factors: Vec<Factor>,
    /// Indices of the block repeated in the `GU_2` factor; empty for a
    /// plain class.
    pub mirror: BTreeSet<usize>,
    /// True for `A | B` shapes.
    pub two_block: bool,
}

impl StableClass {
    /// Parses `E:a1 E:a2 | E:b1 E:b2`. A token is `KIND[^DEG][:LABEL]` with
    /// `KIND` one of `E`, `S` (split) or another field tag such as `K1`;
    /// the default degree is 1 for `E` and `S`, 2 otherwise.
    pub fn parse(s: &str) -> Result<Self> {
        let blocks: Vec<&str> = s.split('|').collect();
        if blocks.len() > 2 {
            return Err(Error::Parse(format!("at most one '|' allowed in '{s}'")));
        }
        let mut factors = Vec::new();
        let mut mirror = BTreeSet::new();
        for (b, block) in blocks.iter().enumerate() {
            for tok in block.split_whitespace() {
                let (head, label) = match tok.split_once(':') {
                    Some((h, l)) => (h, l.to_string()),
                    None => (tok, format!("x{}", factors.len() + 1)),
                };
                let (kind_s, deg) = match head.split_once('^') {
                    Some((k, d)) => {
                        let d: u32 = d.parse().map_err(|_| Error::Parse(format!("bad degree in '{tok}'")))?;
                        (k, Some(d))
                    }
                    None => (head, None),
                };
                let (kind, default) = match kind_s {
                    "S" => (FactorKind::Split, 1),
                    "E" => (FactorKind::Field("E".into()), 1),
                    t if !t.is_empty() && t.chars().all(|c| c.is_ascii_alphanumeric()) => {
                        (FactorKind::Field(t.into()), 2)
                    }
                    _ => return Err(Error::Parse(format!("bad factor '{tok}'"))),
                };
                let degree = deg.unwrap_or(default);
                if degree == 0 {
                    return Err(Error::Parse(format!("zero degree in '{tok}'")));
                }
                if blocks.len() == 2 && b == 0 {
                    mirror.insert(factors.len());
                }
                factors.push(Factor { label, kind, degree });
            }
        }
        if factors.is_empty() {
            return Err(Error::Parse("empty class".into()));
        }
        let c = StableClass { factors, mirror, two_block: blocks.len() == 2 };
        if c.two_block {
            c.check_two_block()?;
        }
        Ok(c)
    }

    fn block_degree(&self, in_mirror: bool) -> u32 {
        self.factors
            .iter()
            .enumerate()
            .filter(|(i, _)| self.mirror.contains(i) == in_mirror)
            .map(|(_, f)| f.degree)
            .sum()
    }

    fn check_two_block(&self) -> Result<()> {
        if !self.two_block {
            return Err(Error::Unsupported("class is not of the form A | B".into()));
        }
        if self.block_degree(true) != 2 || self.block_degree(false) != 2 {
            return Err(Error::Unsupported("both blocks must have total degree 2".into()));
        }
        if self.factors.iter().any(|f| !f.is_field()) {
            return Err(Error::Unsupported("split factors do not occur in elliptic classes".into()));
        }
        Ok(())
    }

    fn field_indices(&self) -> Vec<usize> {
        (0..self.factors.len()).filter(|&i| self.factors[i].is_field()).collect()
    }
}

impl fmt::Display for StableClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |pick: &dyn Fn(usize) -> bool| -> String {
            let v: Vec<String> = (0..self.factors.len())
                .filter(|&i| pick(i))
                .map(|i| self.factors[i].to_string())
                .collect();
            v.join(" ")
        };
        if self.two_block {
            write!(f, "{} | {}", show(&|i| self.mirror.contains(&i)), show(&|i| !self.mirror.contains(&i)))
        } else {
            write!(f, "{}", show(&|_| true))
        }
    }
}

/// A rational class: a stable class with one bit per factor (always 0 on
/// split factors), stored with the first flipping bit equal to 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClassDatum {
    pub stable: StableClass,
    pub bits: Vec<u8>,
    /// Which of the two classes related by the outer automorphism, for
    /// similitude orthogonal groups.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outer: Option<u8>,
}

impl ClassDatum {
    pub fn new(stable: StableClass, bits: Vec<u8>) -> Result<Self> {
        if bits.len() != stable.factors.len() {
            return Err(Error::Length { expected: stable.factors.len(), got: bits.len() });
        }
        for (b, f) in bits.iter().zip(&stable.factors) {
            if *b > 1 || (*b == 1 && !f.is_field()) {
                return Err(Error::Invalid("bits are 0 or 1, and 0 on split factors".into()));
            }
        }
        Ok(ClassDatum { stable, bits, outer: None }.canonical())
    }

    /// Multiplies by a non-norm scalar of `F^×`.
    pub fn flipped(&self) -> Self {
        let bits = self
            .bits
            .iter()
            .zip(&self.stable.factors)
            .map(|(b, f)| if f.flips() { b ^ 1 } else { *b })
            .collect();
        ClassDatum { stable: self.stable.clone(), bits, outer: self.outer }
    }

    fn canonical(self) -> Self {
        let first = self.stable.factors.iter().position(Factor::flips);
        match first {
            Some(i) if self.bits[i] == 1 => self.flipped(),
            _ => self,
        }
    }

    /// Parity of the discriminant of the hermitian form on the whole space.
    pub fn parity(&self) -> u8 {
        self.bits.iter().fold(0, |a, b| a ^ b)
    }

    /// Parity of the discriminant on the repeated block.
    pub fn mirror_parity(&self) -> u8 {
        self.stable.mirror.iter().fold(0, |a, &i| a ^ self.bits[i])
    }

    pub fn pattern(&self) -> String {
        self.bits.iter().map(|b| if *b == 0 { '0' } else { '1' }).collect()
    }
}

/// A partition `I = I⁺ ⊔ I⁻`, counted with the number of ordered partitions
/// it stands for after identifying equal factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EndoMatch {
    pub minus: BTreeSet<usize>,
    pub count: u32,
}

impl EndoMatch {
    pub fn new(minus: impl IntoIterator<Item = usize>) -> Self {
        EndoMatch { minus: minus.into_iter().collect(), count: 1 }
    }

    pub fn describe(&self, s: &StableClass) -> String {
        let side = |neg: bool| -> String {
            let v: Vec<&str> = (0..s.factors.len())
                .filter(|i| self.minus.contains(i) == neg)
                .map(|i| s.factors[i].label.as_str())
                .collect();
            if v.is_empty() {
                "-".into()
            } else {
                v.join(",")
            }
        };
        format!("+{{{}}} -{{{}}}", side(false), side(true))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    /// The quasi-split group `H`.
    Group,
    /// The pure inner forms `H_1` and `H_4` entering the cancellation.
    InnerForms,
    /// All rational classes in the stable class.
    Any,
}

/// Every rational class in the stable class, one per flip orbit.
pub fn all_rational_classes(stable: &StableClass) -> Vec<ClassDatum> {
    let fields = stable.field_indices();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << fields.len()) {
        let mut bits = vec![0u8; stable.factors.len()];
        for (k, &i) in fields.iter().enumerate() {
            bits[i] = ((mask >> k) & 1) as u8;
        }
        out.insert(ClassDatum { stable: stable.clone(), bits, outer: None }.canonical());
    }
    out.into_iter().collect()
}

/// Rational classes on one side of the cancellation. For `A | B` shapes the
/// classes with even total parity split between the group and its inner
/// forms by the parity of the repeated block, shifted when `η(-1) = -1`.
pub fn rational_classes(stable: &StableClass, side: Side, eta_minus_one: i8) -> Result<Vec<ClassDatum>> {
    if eta_minus_one != 1 && eta_minus_one != -1 {
        return Err(Error::Invalid("η(-1) must be 1 or -1".into()));
    }
    let all = all_rational_classes(stable);
    if side == Side::Any {
        return Ok(all);
    }
    stable.check_two_block()?;
    let shift = u8::from(eta_minus_one == -1);
    let want = u8::from(side == Side::InnerForms);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in all {
        // a flip orbit is in the family if one of its members has even parity
        let rep = if c.parity() == 0 { c } else { c.flipped() };
        if rep.parity() != 0 {
            continue;
        }
        if (rep.mirror_parity() ^ shift) == want && seen.insert(rep.bits.clone()) {
            out.push(rep);
        }
    }
    Ok(out)
}

/// Stable classes of the endoscopic group matching `stable`: for `A | B`
/// shapes the partitions into two halves of degree 2, otherwise all
/// partitions. Partitions that agree after exchanging equal factors are
/// merged and counted.
pub fn stable_matches(stable: &StableClass) -> Result<Vec<EndoMatch>> {
    if stable.two_block {
        stable.check_two_block()?;
    }
    let n = stable.factors.len();
    if n > 16 {
        return Err(Error::Unsupported("more than 16 factors".into()));
    }
    let mut merged: BTreeMap<(Vec<(FactorKind, u32, String)>, Vec<(FactorKind, u32, String)>), EndoMatch> =
        BTreeMap::new();
    for mask in 0u32..(1 << n) {
        let minus: BTreeSet<usize> = (0..n).filter(|i| (mask >> i) & 1 == 1).collect();
        if stable.two_block {
            let deg: u32 = minus.iter().map(|&i| stable.factors[i].degree).sum();
            if deg != 2 {
                continue;
            }
        }
        let key_of = |neg: bool| {
            let mut v: Vec<(FactorKind, u32, String)> = (0..n)
                .filter(|i| minus.contains(i) == neg)
                .map(|i| {
                    let (k, d, l) = stable.factors[i].signature();
                    (k, d, l.to_string())
                })
                .collect();
            v.sort();
            v
        };
        let key = (key_of(false), key_of(true));
        merged
            .entry(key)
            .and_modify(|m| m.count += 1)
            .or_insert_with(|| EndoMatch::new(minus.iter().copied()));
    }
    Ok(merged.into_values().collect())
}

/// Relative transfer factor: the product over field factors in `I⁻` of
/// `(-1)^{c_i}`. Split factors contribute 1.
pub fn transfer_sign(c: &ClassDatum, m: &EndoMatch) -> i8 {
    let odd = m
        .minus
        .iter()
        .filter(|&&i| i < c.bits.len() && c.stable.factors[i].is_field())
        .fold(0u8, |a, &i| a ^ c.bits[i]);
    if odd == 0 {
        1
    } else {
        -1
    }
}

/// Value of the cancellation sum for one match: classes of `H` count with
/// their transfer sign, classes of the inner forms with the sign times
/// [`INNER_FORM_SIGN`], and the second sum is subtracted.
pub fn cancellation_sum(stable: &StableClass, eta_minus_one: i8, m: &EndoMatch) -> Result<i64> {
    let h = rational_classes(stable, Side::Group, eta_minus_one)?;
    let h14 = rational_classes(stable, Side::InnerForms, eta_minus_one)?;
    let a: i64 = h.iter().map(|c| i64::from(transfer_sign(c, m))).sum();
    let b: i64 = h14.iter().map(|c| INNER_FORM_SIGN * i64::from(transfer_sign(c, m))).sum();
    Ok(a - b)
}

/// Largest absolute value of the cancellation sum over all matches.
pub fn verify_cancellation(stable: &StableClass, eta_minus_one: i8) -> Result<i64> {
    let mut worst = 0;
    for m in stable_matches(stable)? {
        worst = worst.max(cancellation_sum(stable, eta_minus_one, &m)?.abs());
    }
    Ok(worst)
}

/// The two rational classes of a similitude orthogonal group attached to
/// each class datum, related by the outer automorphism.
pub fn with_outer_labels(classes: &[ClassDatum]) -> Vec<ClassDatum> {
    classes
        .iter()
        .flat_map(|c| {
            (0..2u8).map(move |o| ClassDatum { outer: Some(o), ..c.clone() })
        })
        .collect()
}

/// The regular elliptic classes of `GU_4 x GU_2` coming from `GU_2 x GU_2`,
/// up to relabelling: each block is two factors over `E` or one factor of
/// degree 2 over another field.
pub fn sweep_shapes() -> Vec<StableClass> {
    let a_blocks = ["E:a1 E:a2", "K1:a"];
    let b_blocks = ["E:b1 E:b2", "K1:b", "K2:b"];
    let mut out = Vec::new();
    for a in a_blocks {
        for b in b_blocks {
            out.push(StableClass::parse(&format!("{a} | {b}")).expect("valid shape"));
        }
    }
    out
}

/// The class of `GU_4 x GU_2` with four factors over `E`.
pub fn main_shape() -> StableClass {
    StableClass::parse("E:a1 E:a2 | E:b1 E:b2").expect("valid shape")
}

/// One row of the cancellation table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CancelRow {
    pub shape: String,
    pub eta_minus_one: i8,
    pub matching: String,
    pub sum: i64,
}

pub fn cancellation_table(shapes: &[StableClass]) -> Result<Vec<CancelRow>> {
    let mut rows = Vec::new();
    for s in shapes {
        for eta in [1i8, -1] {
            for m in stable_matches(s)? {
                rows.push(CancelRow {
                    shape: s.to_string(),
                    eta_minus_one: eta,
                    matching: m.describe(s),
                    sum: cancellation_sum(s, eta, &m)?,
                });
            }
        }
    }
    Ok(rows)
}

/// Checks on the main class and the sweep over all elliptic shapes.
pub fn verify_endoscopy() -> VerificationReport {
    let sec = "endoscopic cancellation";
    let mut r = VerificationReport::new();
    let main = main_shape();
    let anchor = "GU4 x GU2: rational classes in a stable class of GU2 x GU2";
    for eta in [1i8, -1] {
        let tag = if eta == 1 { "eta+" } else { "eta-" };
        match rational_classes(&main, Side::Group, eta) {
            Ok(h) => {
                let pats: Vec<String> = h.iter().map(ClassDatum::pattern).collect();
                let expected = if eta == 1 { "0000 0011" } else { "0101 0110" };
                r.push(Item::compare(sec, format!("classes/{tag}/H"), anchor, pats.join(" "), expected));
            }
            Err(e) => r.push(Item::error(sec, format!("classes/{tag}/H"), anchor, &e)),
        }
        match rational_classes(&main, Side::InnerForms, eta) {
            Ok(h) => {
                let pats: Vec<String> = h.iter().map(ClassDatum::pattern).collect();
                let expected = if eta == 1 { "0101 0110" } else { "0000 0011" };
                r.push(Item::compare(sec, format!("classes/{tag}/H1+H4"), anchor, pats.join(" "), expected));
            }
            Err(e) => r.push(Item::error(sec, format!("classes/{tag}/H1+H4"), anchor, &e)),
        }
    }
    match stable_matches(&main) {
        Ok(ms) => r.push(Item::compare(
            sec,
            "matches/count",
            "GU4 x GU2: stable classes of the endoscopic group over one class of H",
            ms.len(),
            6,
        )),
        Err(e) => r.push(Item::error(sec, "matches/count", "", &e)),
    }
    match cancellation_table(&sweep_shapes()) {
        Ok(rows) => {
            for row in rows {
                let eta = if row.eta_minus_one == 1 { "eta+" } else { "eta-" };
                r.push(Item::compare(
                    sec,
                    format!("cancel/{}/{eta}/{}", row.shape, row.matching),
                    "cancellation of the elliptic terms for H and its inner forms",
                    row.sum,
                    0,
                ));
            }
        }
        Err(e) => r.push(Item::error(sec, "cancel", "", &e)),
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_factor() {
        let s = StableClass::parse("E:x").unwrap();
        assert_eq!(all_rational_classes(&s).len(), 1);
        assert_eq!(stable_matches(&s).unwrap().len(), 2);
    }

    #[test]
    fn split_factor_sign() {
        let s = StableClass::parse("S:x E:y").unwrap();
        let c = ClassDatum::new(s, vec![0, 1]).unwrap();
        assert_eq!(transfer_sign(&c, &EndoMatch::new([0])), 1);
        assert_eq!(transfer_sign(&c, &EndoMatch::new([0, 1])), 1);
    }

    #[test]
    fn parse_roundtrip() {
        let s = StableClass::parse("E:a1 E:a2 | K1:b").unwrap();
        assert_eq!(s.to_string(), "E:a1 E:a2 | K1:b");
        assert!(StableClass::parse("E:a | E:b E:c").is_err());
    }
}
