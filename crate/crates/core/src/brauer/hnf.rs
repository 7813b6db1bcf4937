//! Integer solutions of `A x = b` through a column Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `A U = H` with `U` unimodular and `H` in column echelon form.
pub(crate) struct ColumnHnf {
    pub h: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    /// `(row, column)` of each pivot; columns `0..rank` are the pivot columns.
    pub pivots: Vec<(usize, usize)>,
}

fn column_op(m: &mut [Vec<BigInt>], a: usize, b: usize, coeffs: [&BigInt; 4]) {
    // (col_a, col_b) <- (p col_a + q col_b, r col_a + s col_b)
    let [p, q, r, s] = coeffs;
    for row in m.iter_mut() {
        let (x, y) = (row[a].clone(), row[b].clone());
        row[a] = p * &x + q * &y;
        row[b] = r * &x + s * &y;
    }
}

pub(crate) fn column_hnf(a: &[Vec<BigInt>], cols: usize) -> ColumnHnf {
    let rows = a.len();
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> =
        (0..cols).map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut pivots = Vec::new();
    let mut piv = 0;
    for i in 0..rows {
        if piv == cols {
            break;
        }
        for j in piv + 1..cols {
            if h[i][j].is_zero() {
                continue;
            }
            let (x, y) = (h[i][piv].clone(), h[i][j].clone());
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let (xg, yg) = (&x / &g, &y / &g);
            let neg_yg = -&yg;
            // new piv column gives g, new j column gives 0; determinant s*xg + t*yg = 1
            let coeffs = [&s, &t, &neg_yg, &xg];
            column_op(&mut h, piv, j, coeffs);
            column_op(&mut u, piv, j, coeffs);
        }
        if h[i][piv].is_zero() {
            continue;
        }
        if h[i][piv].is_negative() {
            for m in [&mut h, &mut u] {
                for row in m.iter_mut() {
                    row[piv] = -&row[piv];
                }
            }
        }
        pivots.push((i, piv));
        piv += 1;
    }
    ColumnHnf { h, u, pivots }
}

/// Some integer solution of `A x = b`, with a basis of the integer kernel.
pub(crate) fn solve_integer(a: &[Vec<BigInt>], b: &[BigInt], cols: usize) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    let hnf = column_hnf(a, cols);
    let rank = hnf.pivots.len();
    let mut y = vec![BigInt::zero(); cols];
    let mut next = 0;
    for (i, bi) in b.iter().enumerate() {
        let mut r = bi.clone();
        for (c, yc) in y.iter().enumerate().take(next) {
            r -= &hnf.h[i][c] * yc;
        }
        if next < rank && hnf.pivots[next].0 == i {
            let d = &hnf.h[i][next];
            if !(&r % d).is_zero() {
                return None;
            }
            y[next] = &r / d;
            next += 1;
        } else if !r.is_zero() {
            return None;
        }
    }
    let x = (0..cols).map(|i| (0..rank).fold(BigInt::zero(), |acc, c| acc + &hnf.u[i][c] * &y[c])).collect();
    let kernel = (rank..cols).map(|c| (0..cols).map(|i| hnf.u[i][c].clone()).collect()).collect();
    Some((x, kernel))
}

fn l1(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).sum()
}

/// Greedily shortens `x` in the ℓ1 norm by adding integer multiples of kernel vectors.
pub(crate) fn reduce_l1(mut x: Vec<BigInt>, kernel: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut best = l1(&x);
    loop {
        let mut improved = false;
        for k in kernel {
            for sign in [BigInt::one(), -BigInt::one()] {
                loop {
                    let cand: Vec<BigInt> = x.iter().zip(k).map(|(a, b)| a + &sign * b).collect();
                    let n = l1(&cand);
                    if n < best {
                        x = cand;
                        best = n;
                        improved = true;
                    } else {
                        break;
                    }
                }
            }
        }
        if !improved {
            return x;
        }
    }
}
