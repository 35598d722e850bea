//! Irreducible Cartan types in Bourbaki numbering.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::linalg::IMat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::Unsupported(format!("{}{}", family.letter(), rank)))
        }
    }

    /// Parses labels such as `E7`, `a3`, `D6`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::Parse(format!("unknown Cartan type '{s}'"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in '{s}'")))?;
        CartanType::new(fam, rank)
    }

    /// `c[i][j] = <alpha_j, alpha_i^vee>`, zero-indexed.
    pub fn cartan_matrix(&self) -> IMat {
        let l = self.rank;
        let mut c = vec![vec![0i64; l]; l];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => {
                for i in 0..l.saturating_sub(1) {
                    link(i, i + 1);
                }
            }
            Family::D => {
                for i in 0..l - 2 {
                    link(i, i + 1);
                }
                link(l - 3, l - 1);
            }
            Family::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..l - 1 {
                    link(i, i + 1);
                }
            }
            Family::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Family::G => link(0, 1),
        }
        match self.family {
            Family::B => c[l - 1][l - 2] = -2,
            Family::C => c[l - 2][l - 1] = -2,
            Family::F => c[2][1] = -2,
            Family::G => c[0][1] = -3,
            _ => {}
        }
        c
    }

    /// Marks of the highest root on the simple roots (the affine node has mark 1).
    pub fn marks(&self) -> Vec<i64> {
        let l = self.rank;
        match self.family {
            Family::A => vec![1; l],
            Family::B => {
                let mut m = vec![2; l];
                m[0] = 1;
                m
            }
            Family::C => {
                let mut m = vec![2; l];
                m[l - 1] = 1;
                m
            }
            Family::D => {
                let mut m = vec![2; l];
                m[0] = 1;
                m[l - 1] = 1;
                m[l - 2] = 1;
                if l == 3 {
                    m = vec![1, 1, 1];
                }
                m
            }
            Family::E => match l {
                6 => vec![1, 2, 2, 3, 2, 1],
                7 => vec![2, 2, 3, 4, 3, 2, 1],
                _ => vec![2, 3, 4, 6, 5, 4, 3, 2],
            },
            Family::F => vec![2, 3, 4, 2],
            Family::G => vec![3, 2],
        }
    }

    pub fn degrees(&self) -> Vec<u64> {
        let l = self.rank as u64;
        match self.family {
            Family::A => (2..=l + 1).collect(),
            Family::B | Family::C => (1..=l).map(|i| 2 * i).collect(),
            Family::D => {
                let mut d: Vec<u64> = (1..l).map(|i| 2 * i).collect();
                d.push(l);
                d
            }
            Family::E => match l {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            Family::F => vec![2, 6, 8, 12],
            Family::G => vec![2, 6],
        }
    }

    pub fn weyl_order(&self) -> BigUint {
        self.degrees()
            .into_iter()
            .fold(BigUint::from(1u32), |acc, d| acc * BigUint::from(d))
    }

    pub fn num_positive_roots(&self) -> usize {
        self.degrees().iter().map(|d| (*d - 1) as usize).sum()
    }

    /// Candidate Bourbaki types for an indecomposable Cartan matrix of rank `l`,
    /// in the order they are tried during identification.
    pub fn candidates(l: usize) -> Vec<CartanType> {
        let mut out = vec![CartanType { family: Family::A, rank: l }];
        if l >= 2 {
            out.push(CartanType { family: Family::B, rank: l });
        }
        if l >= 3 {
            out.push(CartanType { family: Family::C, rank: l });
        }
        if l >= 4 {
            out.push(CartanType { family: Family::D, rank: l });
        }
        if (6..=8).contains(&l) {
            out.push(CartanType { family: Family::E, rank: l });
        }
        if l == 4 {
            out.push(CartanType { family: Family::F, rank: 4 });
        }
        if l == 2 {
            out.push(CartanType { family: Family::G, rank: 2 });
        }
        out
    }
}

/// Finds a permutation `p` with `c[p[i]][p[j]] == target[i][j]`.
pub fn match_cartan(c: &[Vec<i64>], target: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = c.len();
    if target.len() != n {
        return None;
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(
        c: &[Vec<i64>],
        t: &[Vec<i64>],
        perm: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let i = perm.len();
        if i == c.len() {
            return true;
        }
        for cand in 0..c.len() {
            if used[cand] {
                continue;
            }
            let fits = perm
                .iter()
                .enumerate()
                .all(|(j, &pj)| c[cand][pj] == t[i][j] && c[pj][cand] == t[j][i]);
            if fits {
                used[cand] = true;
                perm.push(cand);
                if go(c, t, perm, used) {
                    return true;
                }
                perm.pop();
                used[cand] = false;
            }
        }
        false
    }
    go(c, target, &mut perm, &mut used).then_some(perm)
}

/// Identifies an indecomposable Cartan matrix, returning its type and the
/// Bourbaki ordering of the given indices.
pub fn identify(c: &[Vec<i64>]) -> Result<(CartanType, Vec<usize>)> {
    for t in CartanType::candidates(c.len()) {
        if let Some(p) = match_cartan(c, &t.cartan_matrix()) {
            return Ok((t, p));
        }
    }
    Err(Error::Invalid("Cartan matrix of unknown type".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_orders() {
        let w = |s: &str| CartanType::parse(s).unwrap().weyl_order();
        assert_eq!(w("F4"), BigUint::from(1152u32));
        assert_eq!(w("D4"), BigUint::from(192u32));
        assert_eq!(w("E8"), BigUint::from(696729600u64));
        assert_eq!(w("G2"), BigUint::from(12u32));
    }

    #[test]
    fn identify_reordered_b3() {
        let b3 = CartanType::parse("B3").unwrap().cartan_matrix();
        // reverse the node order
        let rev: IMat = (0..3).map(|i| (0..3).map(|j| b3[2 - i][2 - j]).collect()).collect();
        let (t, p) = identify(&rev).unwrap();
        assert_eq!(t.to_string(), "B3");
        assert_eq!(p, vec![2, 1, 0]);
    }

    #[test]
    fn d3_is_a3() {
        let d3 = CartanType::parse("D3").unwrap().cartan_matrix();
        assert_eq!(identify(&d3).unwrap().0.to_string(), "A3");
    }
}
