//! Restriction of characters to subgroups given by lattice maps, and
//! decomposition of the restriction into irreducibles of the subgroup.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, mat_vec, IMat};
use crate::repchar::{decompose, dim_weyl, FormalCharacter};
use crate::rootdata::{RootDatum, WeightMap};
use crate::torsion::{centralizer_subsystem, TorsionPoint};

/// Restriction of weights from `target` to `source`: `matrix` has one row
/// per source coordinate.
#[derive(Debug, Clone)]
pub struct LatticeMap {
    pub source: Arc<RootDatum>,
    pub target: Arc<RootDatum>,
    pub matrix: IMat,
}

impl LatticeMap {
    pub fn new(source: Arc<RootDatum>, target: Arc<RootDatum>, matrix: IMat) -> Result<Self> {
        if matrix.len() != source.rank() || matrix.iter().any(|r| r.len() != target.rank()) {
            return Err(Error::Invalid("restriction matrix has the wrong shape".into()));
        }
        let restricted: std::collections::HashSet<Vec<i64>> =
            target.roots().iter().map(|r| mat_vec(&matrix, r)).collect();
        if let Some(r) = source.roots().iter().find(|r| !restricted.contains(*r)) {
            return Err(Error::Invalid(format!("subgroup root {r:?} is not a restricted root")));
        }
        Ok(LatticeMap { source, target, matrix })
    }

    pub fn identity(d: Arc<RootDatum>) -> Self {
        let n = d.rank();
        LatticeMap { source: d.clone(), target: d, matrix: linalg::identity(n) }
    }

    pub fn apply(&self, w: &[i64]) -> Vec<i64> {
        mat_vec(&self.matrix, w)
    }
}

/// Levi subgroup generated by the simple roots with the given indices.
pub fn levi_map(d: &Arc<RootDatum>, subset: &[usize]) -> Result<LatticeMap> {
    let l = d.semisimple_rank();
    let mut idx = subset.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if idx.len() != subset.len() || idx.iter().any(|&i| i >= l) {
        return Err(Error::Invalid(format!("bad simple-root subset {subset:?}")));
    }
    if idx.len() == l {
        return Ok(LatticeMap::identity(d.clone()));
    }
    let roots = idx.iter().map(|&i| d.simple_roots()[i].clone()).collect();
    let coroots = idx.iter().map(|&i| d.simple_coroots()[i].clone()).collect();
    let mut m = RootDatum::from_simple(d.rank(), roots, coroots, "")?;
    if let Some(a) = d.ambient() {
        m = m.with_ambient(a.clone());
    }
    let label = m.type_label();
    let src = Arc::new(m.with_label(label));
    Ok(LatticeMap { source: src, target: d.clone(), matrix: linalg::identity(d.rank()) })
}

/// Centralizer of a torsion point, on the same lattice.
pub fn pseudo_levi_map(d: &Arc<RootDatum>, p: &TorsionPoint) -> Result<LatticeMap> {
    let h = Arc::new(centralizer_subsystem(d, p)?);
    Ok(LatticeMap { source: h, target: d.clone(), matrix: linalg::identity(d.rank()) })
}

pub fn restrict(chi: &FormalCharacter, map: &LatticeMap) -> Result<FormalCharacter> {
    if chi.datum().as_ref() != map.target.as_ref() {
        return Err(Error::DatumMismatch);
    }
    let mut m: WeightMap = BTreeMap::new();
    for (w, k) in chi.mults() {
        *m.entry(map.apply(w)).or_insert(0) += k;
    }
    FormalCharacter::new(map.source.clone(), m)
}

/// One irreducible constituent of a restriction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchRow {
    pub highest_weight: Vec<i64>,
    /// Dynkin labels of the semisimple part.
    pub dynkin: Vec<i64>,
    /// Pairings with the central cocharacters.
    pub central: Vec<i64>,
    pub mult: i64,
    pub dim: u64,
}

/// Irreducible constituents of a character of `d`.
pub fn constituents(d: &RootDatum, chi: &FormalCharacter) -> Result<Vec<BranchRow>> {
    decompose(chi)?
        .into_iter()
        .map(|(w, mult)| {
            let dim = dim_weyl(d, &w)?;
            let dim = u64::try_from(dim).map_err(|_| Error::Overflow)?;
            Ok(BranchRow { dynkin: d.dynkin(&w), central: d.central_weight(&w), highest_weight: w, mult, dim })
        })
        .collect()
}

pub fn branch(chi: &FormalCharacter, map: &LatticeMap) -> Result<Vec<BranchRow>> {
    let r = restrict(chi, map)?;
    constituents(&map.source, &r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::build_datum;
    use crate::repchar::irrep_character;
    use crate::torsion::{kac_to_point, KacCoordinates};

    #[test]
    fn e7_on_a7() {
        let d = Arc::new(build_datum("E7:sc").unwrap());
        let k = KacCoordinates { values: vec![0, 0, 1, 0, 0, 0, 0, 0], order: 2 };
        let p = kac_to_point(&d, &[k], &[]).unwrap();
        let map = pseudo_levi_map(&d, &p).unwrap();
        let chi = irrep_character(&d, &[0, 0, 0, 0, 0, 0, 1]).unwrap();
        let rows = branch(&chi, &map).unwrap();
        let dims: Vec<u64> = rows.iter().map(|r| r.dim).collect();
        assert_eq!(dims, vec![28, 28]);
    }

    #[test]
    fn identity_restriction() {
        let d = Arc::new(build_datum("B2:sc").unwrap());
        let chi = irrep_character(&d, &[1, 1]).unwrap();
        let r = restrict(&chi, &LatticeMap::identity(d)).unwrap();
        assert_eq!(r, chi);
    }

    #[test]
    fn levi_subset_checked() {
        let d = Arc::new(build_datum("A3:sc").unwrap());
        assert!(levi_map(&d, &[0, 5]).is_err());
        assert_eq!(levi_map(&d, &[0, 2]).unwrap().source.type_label(), "A1+A1+T1");
    }
}
