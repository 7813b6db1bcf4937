//! Double-precision character table from the class matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::row_order;
use crate::algebra::class_multiplication_coefficients;
use crate::error::{Error, Result};
use crate::group::GroupTable;

/// Character table in floating point, rows in the same order as the exact table.
#[derive(Clone, Debug)]
pub struct NumericCharacterTable {
    pub rows: Vec<Vec<Complex64>>,
    pub degrees: Vec<u64>,
}

/// Diagonalizes a random real combination of the class matrices and reads the
/// central characters off its eigenvectors.
pub fn numeric_character_table(g: &GroupTable, seed: u64) -> Result<NumericCharacterTable> {
    let classes = g.classes();
    let r = classes.len();
    let n = g.order() as f64;
    let m = class_multiplication_coefficients(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<f64> = (0..r).map(|_| rng.random_range(-1.0..1.0)).collect();
    let combo = DMatrix::from_fn(r, r, |j, k| (0..r).map(|i| coeffs[i] * m[i][j][k] as f64).sum::<f64>());
    let eigenvalues = combo.clone().complex_eigenvalues();
    let combo_c = combo.map(|v| Complex64::new(v, 0.0));

    let mut rows = Vec::with_capacity(r);
    let mut degrees = Vec::with_capacity(r);
    for lambda in eigenvalues.iter() {
        let shifted = &combo_c - DMatrix::<Complex64>::identity(r, r) * *lambda;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.ok_or_else(|| Error::Computation("SVD returned no right singular vectors".into()))?;
        let (idx, _) = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .ok_or_else(|| Error::Computation("empty SVD".into()))?;
        let v: Vec<Complex64> = v_t.row(idx).iter().map(|c| c.conj()).collect();
        if v[0].norm() < 1e-12 {
            return Err(Error::Computation("eigenvector with vanishing identity coordinate".into()));
        }
        let omega: Vec<Complex64> = v.iter().map(|x| x / v[0]).collect();
        let s: Complex64 = (0..r).map(|k| omega[k] * omega[classes.inverse_class(k)] / classes.size(k) as f64).sum();
        let d = (n / s.re).sqrt();
        let d_int = d.round();
        if (d - d_int).abs() > 1e-6 || d_int < 1.0 {
            return Err(Error::Computation(format!("non-integral degree {d}")));
        }
        degrees.push(d_int as u64);
        rows.push((0..r).map(|k| omega[k] * d_int / classes.size(k) as f64).collect());
    }
    let order = row_order(&rows, &degrees);
    Ok(NumericCharacterTable {
        rows: order.iter().map(|&i| rows[i].clone()).collect(),
        degrees: order.iter().map(|&i| degrees[i]).collect(),
    })
}
