//! Small exact integer and rational linear algebra.
//!
//! Matrices here are tiny (rank at most a dozen or so), so everything is
//! plain row-major `Vec<Vec<_>>`. Integer reductions run in `i128` and are
//! narrowed back to `i64` with an overflow check.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = Ratio<i64>;
pub type IMat = Vec<Vec<i64>>;
pub type QMat = Vec<Vec<Rat>>;

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow)
}

fn widen(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

fn narrow_mat(m: Vec<Vec<i128>>) -> Result<IMat> {
    m.into_iter()
        .map(|r| r.into_iter().map(narrow).collect())
        .collect()
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_q(a: &[i64], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .fold(Rat::zero(), |acc, (x, y)| acc + *y * Rat::from_integer(*x))
}

pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|r| dot(r, v)).collect()
}

pub fn qmat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|r| r.iter().zip(v).fold(Rat::zero(), |a, (x, y)| a + *x * *y))
        .collect()
}

pub fn qmat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>], inner: usize, cols: usize) -> QMat {
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| (0..inner).fold(Rat::zero(), |acc, k| acc + r[k] * b[k][j]))
                .collect()
        })
        .collect()
}

pub fn to_q(m: &[Vec<i64>]) -> QMat {
    m.iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(x)).collect())
        .collect()
}

pub fn to_qv(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x)).collect()
}

/// Returns the vector if every entry is an integer.
pub fn integral(v: &[Rat]) -> Option<Vec<i64>> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

pub fn lcm_denominators(v: &[Rat]) -> i64 {
    v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()))
}

/// Inverse of a square rational matrix, or `None` when singular.
pub fn inverse(m: &[Vec<Rat>]) -> Option<QMat> {
    let n = m.len();
    let mut a: QMat = m.to_vec();
    let mut inv: QMat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let t = a[col][j];
                    a[r][j] -= f * t;
                    let t = inv[col][j];
                    inv[r][j] -= f * t;
                }
            }
        }
    }
    Some(inv)
}

/// Solves `sum_k c_k * basis[k] = target` for rational `c`, assuming the
/// basis vectors are linearly independent. `None` if no solution exists.
pub fn solve_in_span(basis: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let k = basis.len();
    let n = target.len();
    // augmented system: rows = coordinates, cols = basis vectors + rhs
    let mut a: QMat = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b[i]).collect();
            row.push(target[i]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pv = a[r][c];
        for j in 0..=k {
            a[r][j] /= pv;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..=k {
                    let t = a[r][j];
                    a[i][j] -= f * t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..n).any(|i| !a[i][k].is_zero()) {
        return None;
    }
    let mut sol = vec![Rat::zero(); k];
    for (row, &c) in pivots.iter().enumerate() {
        sol[c] = a[row][k];
    }
    Some(sol)
}

pub fn rank_q(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    let mut a = rows.to_vec();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in (r + 1)..a.len() {
            if !a[i][c].is_zero() {
                let f = a[i][c] / a[r][c];
                for j in c..n {
                    let t = a[r][j];
                    a[i][j] -= f * t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Extended gcd on i128: returns (g, x, y) with a*x + b*y = g >= 0.
fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Basis (as rows, in echelon form) of the Z-span of the given integer rows.
pub fn lattice_basis(rows: &[Vec<i64>], n: usize) -> Result<IMat> {
    let mut a = widen(rows);
    let mut out = Vec::new();
    let mut r = 0;
    for c in 0..n {
        // gcd-combine all rows r.. in column c into row r
        for i in (r + 1)..a.len() {
            if a[i][c] == 0 {
                continue;
            }
            let (g, x, y) = xgcd(a[r][c], a[i][c]);
            let (u, v) = (a[r][c] / g, a[i][c] / g);
            for j in 0..n {
                let (p, q) = (a[r][j], a[i][j]);
                a[r][j] = x * p + y * q;
                a[i][j] = -v * p + u * q;
            }
        }
        if r < a.len() && a[r][c] != 0 {
            if a[r][c] < 0 {
                for j in 0..n {
                    a[r][j] = -a[r][j];
                }
            }
            r += 1;
        }
    }
    for row in a.into_iter().take(r) {
        out.push(row.into_iter().map(narrow).collect::<Result<Vec<_>>>()?);
    }
    Ok(out)
}

/// Basis of the integer kernel `{v in Z^n : m v = 0}`.
pub fn integer_kernel(m: &[Vec<i64>], n: usize) -> Result<IMat> {
    // column operations on m, mirrored on v = identity
    let mut a = widen(m);
    let mut v: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    let rows = a.len();
    let mut piv_col = 0;
    for r in 0..rows {
        if piv_col >= n {
            break;
        }
        for c in (piv_col + 1)..n {
            if a[r][c] == 0 {
                continue;
            }
            let (g, x, y) = xgcd(a[r][piv_col], a[r][c]);
            let (u, w) = (a[r][piv_col] / g, a[r][c] / g);
            for row in a.iter_mut() {
                let (p, q) = (row[piv_col], row[c]);
                row[piv_col] = x * p + y * q;
                row[c] = -w * p + u * q;
            }
            for row in v.iter_mut() {
                let (p, q) = (row[piv_col], row[c]);
                row[piv_col] = x * p + y * q;
                row[c] = -w * p + u * q;
            }
        }
        if a[r][piv_col] != 0 {
            piv_col += 1;
        }
    }
    let kernel: Vec<Vec<i128>> = (piv_col..n)
        .map(|c| (0..n).map(|i| v[i][c]).collect())
        .collect();
    let kernel = narrow_mat(kernel)?;
    lattice_basis(&kernel, n)
}

/// Smith normal form: returns (u, d, v) with `u * m * v = diag(d)` padded
/// with zeros, `u` and `v` unimodular. `d` lists the diagonal (length
/// `min(rows, cols)`), each entry dividing the next, zeros last.
pub struct Smith {
    pub u: IMat,
    pub diag: Vec<i64>,
    pub v: IMat,
}

pub fn smith(m: &[Vec<i64>], rows: usize, cols: usize) -> Result<Smith> {
    let mut a = widen(m);
    let mut u: Vec<Vec<i128>> = (0..rows)
        .map(|i| (0..rows).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let k = rows.min(cols);
    for t in 0..k {
        // find a nonzero pivot with smallest absolute value in the submatrix
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in (t + 1)..rows {
                let q = a[i][t].div_euclid(p);
                if q != 0 {
                    for j in 0..cols {
                        a[i][j] -= q * a[t][j];
                    }
                    for j in 0..rows {
                        u[i][j] -= q * u[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in (t + 1)..cols {
                let q = a[t][j].div_euclid(p);
                if q != 0 {
                    for i in 0..rows {
                        a[i][j] -= q * a[i][t];
                    }
                    for i in 0..cols {
                        v[i][j] -= q * v[i][t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: pivot must divide the rest of the submatrix
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| a[i][j] % p != 0);
            match bad {
                Some((i, _)) => {
                    for j in 0..cols {
                        a[t][j] += a[i][j];
                    }
                    for j in 0..rows {
                        u[t][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for j in 0..cols {
                a[t][j] = -a[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
    }
    let diag = (0..k).map(|i| narrow(a[i][i])).collect::<Result<Vec<_>>>()?;
    Ok(Smith {
        u: narrow_mat(u)?,
        diag,
        v: narrow_mat(v)?,
    })
}

/// Unimodular `u` with `u * c = g * e_0`, `g = gcd(c) > 0`.
pub fn unimodular_to_first(c: &[i64]) -> Result<(IMat, i64)> {
    let n = c.len();
    let col: IMat = c.iter().map(|&x| vec![x]).collect();
    let s = smith(&col, n, 1)?;
    // s.u * c * s.v = (d, 0, ...); v is 1x1 = +-1
    let sign = s.v[0][0];
    let mut u = s.u;
    if sign < 0 {
        for x in u[0].iter_mut() {
            *x = -*x;
        }
    }
    Ok((u, s.diag[0]))
}

/// Integer inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &[Vec<i64>]) -> Result<IMat> {
    let inv = inverse(&to_q(m)).ok_or(Error::Invalid("singular matrix".into()))?;
    inv.iter()
        .map(|r| integral(r).ok_or(Error::Invalid("matrix is not unimodular".into())))
        .collect()
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

/// Fractional part in [0, 1).
pub fn frac(x: Rat) -> Rat {
    x - x.floor()
}

pub fn is_zero_vec(v: &[i64]) -> bool {
    v.iter().all(|x| *x == 0)
}

pub fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[i64], k: i64) -> Vec<i64> {
    a.iter().map(|x| x * k).collect()
}

pub fn abs_rat(x: Rat) -> Rat {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> IMat {
        let inner = b.len();
        let cols = b[0].len();
        a.iter()
            .map(|r| (0..cols).map(|j| (0..inner).map(|k| r[k] * b[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn smith_of_a5_cartan() {
        let c: IMat = vec![
            vec![2, -1, 0, 0, 0],
            vec![-1, 2, -1, 0, 0],
            vec![0, -1, 2, -1, 0],
            vec![0, 0, -1, 2, -1],
            vec![0, 0, 0, -1, 2],
        ];
        let s = smith(&c, 5, 5).unwrap();
        assert_eq!(s.diag, vec![1, 1, 1, 1, 6]);
        let d = mul(&mul(&s.u, &c), &s.v);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(d[i][j], if i == j { s.diag[i] } else { 0 });
            }
        }
    }

    #[test]
    fn kernel_of_row() {
        let k = integer_kernel(&[vec![1, 1, 1]], 3).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v.iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn first_basis_vector() {
        let (u, g) = unimodular_to_first(&[0, 0, 0, 2, 1, 1]).unwrap();
        assert_eq!(g, 1);
        assert_eq!(mat_vec(&u, &[0, 0, 0, 2, 1, 1]), vec![1, 0, 0, 0, 0, 0]);
        unimodular_inverse(&u).unwrap();
    }

    #[test]
    fn span_solve() {
        let b = vec![to_qv(&[1, 0, 1]), to_qv(&[0, 1, 1])];
        assert_eq!(
            solve_in_span(&b, &to_qv(&[2, 3, 5])),
            Some(to_qv(&[2, 3]))
        );
        assert_eq!(solve_in_span(&b, &to_qv(&[2, 3, 4])), None);
    }
}
