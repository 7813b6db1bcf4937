//! Dixon's method: diagonalize the class matrices over F_p, then lift to
//! exact cyclotomic values.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modp::{primes_congruent_one, Fp};
use crate::algebra::class_multiplication_coefficients;
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::GroupTable;

const MAX_PRIMES: usize = 8;

pub(crate) struct RawTable {
    pub rows: Vec<Vec<Cyclo>>,
    pub degrees: Vec<u64>,
    pub prime: u64,
}

pub(crate) fn compute(g: &GroupTable, seed: u64) -> Result<RawTable> {
    let n = g.order() as u64;
    let e = g.exponent() as u64;
    let lower = 2 * (n as f64).sqrt().ceil() as u64;
    let m = class_multiplication_coefficients(g);
    let mut last_err = None;
    for (attempt, p) in primes_congruent_one(e, lower).take(MAX_PRIMES).enumerate() {
        match compute_mod(g, &m, Fp { p }, seed.wrapping_add(attempt as u64)) {
            Ok(t) => return Ok(t),
            Err(err) => last_err = Some(err),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Computation("no suitable prime found".into())))
}

fn compute_mod(g: &GroupTable, m: &[Vec<Vec<u64>>], f: Fp, seed: u64) -> Result<RawTable> {
    let classes = g.classes();
    let r = classes.len();
    let n = g.order() as u64;
    let e = g.exponent() as u64;
    let p = f.p;

    // (M_i)_{jk} = m_{ijk}; common eigenvectors are the central characters
    let mats: Vec<Vec<Vec<u64>>> =
        m.iter().map(|mi| mi.iter().map(|row| row.iter().map(|&v| v % p).collect()).collect()).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let identity: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| (i == j) as u64).collect()).collect();
    let mut pending = vec![identity];
    let mut lines: Vec<Vec<u64>> = Vec::new();
    while let Some(space) = pending.pop() {
        if space.len() == 1 {
            lines.push(space.into_iter().next().unwrap());
            continue;
        }
        let mut combo = vec![vec![0u64; r]; r];
        for mi in &mats {
            let c = rng.random_range(0..p);
            for j in 0..r {
                for k in 0..r {
                    combo[j][k] = f.add(combo[j][k], f.mul(c, mi[j][k]));
                }
            }
        }
        let parts = std::iter::once(&combo)
            .chain(mats.iter().skip(1))
            .map(|mat| eigenspaces(f, mat, &space))
            .find(|parts| parts.len() > 1)
            .ok_or_else(|| {
                Error::Computation(format!("eigenspace of dimension {} did not split mod {p}", space.len()))
            })?;
        pending.extend(parts);
    }
    if lines.len() != r {
        return Err(Error::Computation(format!("found {} characters for {r} classes mod {p}", lines.len())));
    }

    let z = f.pow(f.primitive_root(), (p - 1) / e);
    let orders: Vec<u64> = (0..r).map(|k| g.element_order(classes.representative(k)) as u64).collect();
    let power_classes: Vec<Vec<usize>> =
        (0..r).map(|k| (0..orders[k]).map(|l| classes.power_class(g, k, l)).collect()).collect();

    let mut rows = Vec::with_capacity(r);
    let mut degrees = Vec::with_capacity(r);
    for v in lines {
        let v0 = f.inv(v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| f.mul(x, v0)).collect();
        // Σ_k ω_k ω_{k*} / |C_k| = |G| / d²
        let s = (0..r).fold(0, |acc, k| {
            let t = f.mul(f.mul(omega[k], omega[classes.inverse_class(k)]), f.inv(classes.size(k) as u64 % p));
            f.add(acc, t)
        });
        if s == 0 {
            return Err(Error::Computation(format!("degenerate degree equation mod {p}")));
        }
        let d2 = f.mul(n % p, f.inv(s));
        let d = (1..=p / 2)
            .find(|&d| f.mul(d, d) == d2)
            .ok_or_else(|| Error::Computation(format!("no degree with square {d2} mod {p}")))?;
        let theta: Vec<u64> = (0..r).map(|k| f.mul(f.mul(d, omega[k]), f.inv(classes.size(k) as u64 % p))).collect();

        let mut row = Vec::with_capacity(r);
        for k in 0..r {
            let o = orders[k];
            let zo = f.pow(z, e / o);
            let inv_o = f.inv(o % p);
            let mut mult = vec![0i64; o as usize];
            let mut total = 0u64;
            for (s, slot) in mult.iter_mut().enumerate() {
                let acc = (0..o).fold(0, |acc, l| {
                    let expo = (o - (s as u64 * l) % o) % o;
                    f.add(acc, f.mul(theta[power_classes[k][l as usize]], f.pow(zo, expo)))
                });
                let mu = f.mul(acc, inv_o);
                if mu > d {
                    return Err(Error::Computation(format!("eigenvalue multiplicity {mu} exceeds degree {d} mod {p}")));
                }
                total += mu;
                *slot = mu as i64;
            }
            if total != d {
                return Err(Error::Computation(format!("multiplicities sum to {total}, not {d}, mod {p}")));
            }
            row.push(Cyclo::from_root_multiplicities(o as u32, &mult));
        }
        rows.push(row);
        degrees.push(d);
    }
    Ok(RawTable { rows, degrees, prime: p })
}

/// Eigenspaces of `mat` restricted to the invariant subspace spanned by `basis`.
fn eigenspaces(f: Fp, mat: &[Vec<u64>], basis: &[Vec<u64>]) -> Vec<Vec<Vec<u64>>> {
    let r = mat.len();
    let d = basis.len();
    // column t of `image` is mat · basis[t]
    let image: Vec<Vec<u64>> = (0..r)
        .map(|j| (0..d).map(|t| (0..r).fold(0, |acc, k| f.add(acc, f.mul(mat[j][k], basis[t][k])))).collect())
        .collect();
    let mut parts = Vec::new();
    let mut found = 0;
    for lambda in 0..f.p {
        let k: Vec<Vec<u64>> =
            (0..r).map(|j| (0..d).map(|t| f.sub(image[j][t], f.mul(lambda, basis[t][j]))).collect()).collect();
        let null = f.nullspace(&k, d);
        if null.is_empty() {
            continue;
        }
        found += null.len();
        let sub: Vec<Vec<u64>> = null
            .iter()
            .map(|c| (0..r).map(|j| (0..d).fold(0, |s, t| f.add(s, f.mul(c[t], basis[t][j])))).collect())
            .collect();
        parts.push(sub);
        if found == d {
            break;
        }
    }
    parts
}
