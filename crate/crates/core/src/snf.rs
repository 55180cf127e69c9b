//! Smith normal form of small integer matrices, with the column transform.
//!
//! Only the pieces needed to present a finite quotient `Z^n / rowspace(M)`
//! are kept: `U M V = D` with `U`, `V` unimodular and `D` diagonal, each
//! diagonal entry dividing the next.

use num_integer::Integer;

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub diagonal: Vec<i64>,
    /// Column transform `V`.
    pub v: IntMatrix,
    /// `V^{-1}`.
    pub v_inv: IntMatrix,
}

fn int_identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Computes the Smith form of a square matrix. The row transform is not
/// tracked: quotients by the row space only need `V`.
pub fn smith(m: &IntMatrix) -> Smith {
    let n = m.len();
    let mut a = m.clone();
    let mut v = int_identity(n);
    let mut v_inv = int_identity(n);

    // column op helpers keep V and V^{-1} in sync
    let col_swap = |a: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        vi.swap(i, j);
    };
    // col_j += k * col_i
    let col_add = |a: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, i: usize, j: usize, k: i64| {
        for row in a.iter_mut() {
            row[j] += k * row[i];
        }
        for row in v.iter_mut() {
            row[j] += k * row[i];
        }
        // inverse: row_i -= k * row_j
        for c in 0..vi[0].len() {
            let t = vi[j][c];
            vi[i][c] -= k * t;
        }
    };

    for t in 0..n {
        loop {
            // pivot: smallest nonzero |entry| in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if a[i][j] != 0
                        && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap(t, pi);
            if pj != t {
                col_swap(&mut a, &mut v, &mut v_inv, t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let f = Integer::div_floor(&a[i][t], &p);
                if f != 0 {
                    for c in 0..n {
                        let x = a[t][c];
                        a[i][c] -= f * x;
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let f = Integer::div_floor(&a[t][j], &p);
                if f != 0 {
                    col_add(&mut a, &mut v, &mut v_inv, t, j, -f);
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the rest of the block
            let bad = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| a[i][j] % p != 0);
            match bad {
                Some((i, _)) => {
                    for c in 0..n {
                        let x = a[i][c];
                        a[t][c] += x;
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for c in 0..n {
                a[t][c] = -a[t][c];
            }
        }
    }
    Smith {
        diagonal: (0..n).map(|i| a[i][i]).collect(),
        v,
        v_inv,
    }
}
