//! Small dense exact linear algebra over `Ratio<i64>`.
//!
//! Everything here is sized for root systems of rank at most eight, so plain
//! row-major `Vec`s and Gaussian elimination are enough.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Q = Ratio<i64>;
pub type Vector = Vec<Q>;
pub type Matrix = Vec<Vec<Q>>;

#[inline]
pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

#[inline]
pub fn frac(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn zeros(n: usize) -> Vector {
    vec![Q::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit(n, i)).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: Q, a: &[Q]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[Q]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn mat_vec(m: &Matrix, v: &[Q]) -> Vector {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(Q::zero(), |acc, (x, brow)| acc + x * brow[j])
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let v = m[r][j];
                    m[i][j] -= f * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut m = m.clone();
    rref(&mut m).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vector> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zeros(cols);
            v[f] = Q::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -a[row][f];
            }
            v
        })
        .collect()
}

/// Solves `m x = b` when the system is consistent with a unique solution.
pub fn solve_unique(m: &Matrix, b: &[Q]) -> Option<Vector> {
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) || pivots.len() != cols {
        return None;
    }
    let mut x = zeros(cols);
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = aug[row][cols];
    }
    Some(x)
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit(n, i));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn is_integral(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// Parses `3`, `-2`, `1/3`.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Q::new(n, d))
        }
        None => s.parse::<i64>().ok().map(Q::from_integer),
    }
}

pub fn fmt_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_vector(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("[{}]", parts.join(","))
}

pub fn sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_cartan_a2() {
        let m = vec![vec![q(2), q(-1)], vec![q(-1), q(2)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![frac(2, 3), frac(1, 3)], vec![frac(1, 3), frac(2, 3)]]);
        assert_eq!(mat_mul(&m, &inv), identity(2));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(inverse(&m).is_none());
        assert_eq!(rank(&m), 1);
        let ns = nullspace(&m, 2);
        assert_eq!(ns.len(), 1);
        assert!(is_zero(&mat_vec(&m, &ns[0])));
    }

    #[test]
    fn overdetermined_consistent_system() {
        let m = vec![vec![q(1), q(0)], vec![q(0), q(1)], vec![q(1), q(1)]];
        assert_eq!(solve_unique(&m, &[q(1), q(2), q(3)]), Some(vec![q(1), q(2)]));
        assert_eq!(solve_unique(&m, &[q(1), q(2), q(4)]), None);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/3"), Some(frac(1, 3)));
        assert_eq!(parse_rational(" -4 "), Some(q(-4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(fmt_rational(&frac(-2, 4)), "-1/2");
    }
}
