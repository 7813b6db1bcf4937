//! Irreducible characters and trace-level Fourier analysis on a finite group.

mod dixon;
pub(crate) mod modp;
mod numeric;

use std::cmp::Ordering;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

pub use numeric::{numeric_character_table, NumericCharacterTable};

use crate::algebra::{class_multiplication_coefficients, ClassFunction, GroupFunction};
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::{same_group, GroupTable};
use crate::scalar::Scalar;

/// The irreducible characters of a group, one row per irreducible, one column per class.
///
/// Rows are sorted by degree, then by values (real part, then imaginary part,
/// descending) in class order, so row 0 is the trivial character.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<GroupTable>,
    chars: Vec<Vec<Cyclo>>,
    numeric: Vec<Vec<Complex64>>,
    degrees: Vec<u64>,
    dual_of: Vec<usize>,
    prime: u64,
}

/// Row permutation giving the documented order.
pub(crate) fn row_order(rows: &[Vec<Complex64>], degrees: &[u64]) -> Vec<usize> {
    let key = |v: &Complex64| ((v.re * 1e9).round() as i64, (v.im * 1e9).round() as i64);
    let mut idx: Vec<usize> = (0..rows.len()).collect();
    idx.sort_by(|&a, &b| {
        degrees[a].cmp(&degrees[b]).then_with(|| {
            rows[a]
                .iter()
                .zip(&rows[b])
                .map(|(x, y)| key(y).cmp(&key(x)))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal)
        })
    });
    idx
}

/// Outcome of the structural checks every character table must pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableChecks {
    pub square: bool,
    pub sum_of_squares: bool,
    pub first_orthogonality: bool,
    pub second_orthogonality: bool,
    pub degrees_divide_order: bool,
    pub dual_involution: bool,
}

impl TableChecks {
    pub fn all(&self) -> bool {
        self.square
            && self.sum_of_squares
            && self.first_orthogonality
            && self.second_orthogonality
            && self.degrees_divide_order
            && self.dual_involution
    }
}

/// Evidence that `ω_Π(C_i)` is an eigenvalue of the class matrix `A_i`.
#[derive(Clone, Debug)]
pub struct CentralCharacterCheck {
    pub value: Cyclo,
    /// `A_i v = ω v` holds exactly for `v = (ω_Π(C_k))_k`.
    pub exact_eigenvector: bool,
    /// `|det(A_i − ω I)|` in double precision.
    pub det_abs: f64,
    pub algebraic_integer: bool,
}

impl CharacterTable {
    pub fn compute(group: &Arc<GroupTable>) -> Result<Self> {
        Self::compute_with_seed(group, 0)
    }

    /// Exact table via Dixon's method; `seed` drives the eigenspace splitting.
    pub fn compute_with_seed(group: &Arc<GroupTable>, seed: u64) -> Result<Self> {
        let raw = dixon::compute(group, seed)?;
        let numeric: Vec<Vec<Complex64>> = raw.rows.iter().map(|row| row.iter().map(Cyclo::to_c64).collect()).collect();
        let order = row_order(&numeric, &raw.degrees);
        let chars: Vec<Vec<Cyclo>> = order.iter().map(|&i| raw.rows[i].clone()).collect();
        let numeric: Vec<Vec<Complex64>> = order.iter().map(|&i| numeric[i].clone()).collect();
        let degrees: Vec<u64> = order.iter().map(|&i| raw.degrees[i]).collect();
        let dual_of = chars
            .iter()
            .map(|row| {
                let conj: Vec<Cyclo> = row.iter().map(Cyclo::conj).collect();
                chars
                    .iter()
                    .position(|other| *other == conj)
                    .ok_or_else(|| Error::Computation("conjugate of a row is not a row".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterTable { group: group.clone(), chars, numeric, degrees, dual_of, prime: raw.prime })
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    /// Prime used by the finite-field diagonalization.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn degree(&self, pi: usize) -> u64 {
        self.degrees[pi]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Index of the contragredient `Π*`.
    pub fn dual_of(&self, pi: usize) -> usize {
        self.dual_of[pi]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual_of
    }

    pub fn row(&self, pi: usize) -> &[Cyclo] {
        &self.chars[pi]
    }

    pub fn rows(&self) -> &[Vec<Cyclo>] {
        &self.chars
    }

    pub fn numeric_rows(&self) -> &[Vec<Complex64>] {
        &self.numeric
    }

    pub fn value(&self, pi: usize, class: usize) -> &Cyclo {
        &self.chars[pi][class]
    }

    /// `χ_Π(x)` at a group element.
    pub fn value_at(&self, pi: usize, x: u32) -> &Cyclo {
        &self.chars[pi][self.group.classes().class_of(x)]
    }

    pub fn character(&self, pi: usize) -> ClassFunction<Cyclo> {
        ClassFunction::new(&self.group, self.chars[pi].clone()).expect("row length matches class count")
    }

    fn check_index(&self, pi: usize) -> Result<()> {
        if pi < self.len() {
            Ok(())
        } else {
            Err(Error::OutOfRange { index: pi, len: self.len() })
        }
    }

    fn check_group<S: Scalar>(&self, f: &GroupFunction<S>) -> Result<()> {
        if same_group(&self.group, f.group()) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn row_as<S: Scalar>(&self, pi: usize) -> Vec<S> {
        self.chars[pi].iter().map(S::from_cyclo).collect()
    }

    fn rows_as<S: Scalar>(&self) -> Vec<Vec<S>> {
        (0..self.len()).map(|pi| self.row_as(pi)).collect()
    }

    /// `Σ_{x ∈ C_k} f(x)` for every class.
    fn class_sums<S: Scalar>(&self, f: &GroupFunction<S>) -> Vec<S> {
        let classes = self.group.classes();
        let mut sums = vec![S::zero(); classes.len()];
        for x in self.group.elements() {
            let c = classes.class_of(x);
            sums[c] = sums[c].clone() + f.value(x).clone();
        }
        sums
    }

    fn pair<S: Scalar>(row: &[S], weights: &[S]) -> S {
        row.iter().zip(weights).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// `tr f̂(Π) = Σ_x f(x) χ_Π(x)`.
    pub fn trace_fourier<S: Scalar>(&self, f: &GroupFunction<S>, pi: usize) -> Result<S> {
        self.check_group(f)?;
        self.check_index(pi)?;
        Ok(Self::pair(&self.row_as(pi), &self.class_sums(f)))
    }

    /// `tr f̂(Π)` for every `Π`.
    pub fn trace_fourier_all<S: Scalar>(&self, f: &GroupFunction<S>) -> Result<Vec<S>> {
        self.check_group(f)?;
        let sums = self.class_sums(f);
        Ok(self.rows_as::<S>().iter().map(|row| Self::pair(row, &sums)).collect())
    }

    fn inverse_order<S: Scalar>(&self) -> S {
        S::from_ratio(1, self.group.order() as i64)
    }

    /// `(f(x), (1/|G|) Σ_Π d_Π Σ_y f(y) χ_Π(x⁻¹y))`.
    pub fn inversion_check<S: Scalar>(&self, f: &GroupFunction<S>, x: u32) -> Result<(S, S)> {
        self.check_group(f)?;
        let g = &self.group;
        if x as usize >= g.order() {
            return Err(Error::OutOfRange { index: x as usize, len: g.order() });
        }
        let classes = g.classes();
        let xi = g.inv(x);
        let mut w = vec![S::zero(); classes.len()];
        for y in g.elements() {
            let c = classes.class_of(g.mul(xi, y));
            w[c] = w[c].clone() + f.value(y).clone();
        }
        let rhs = self.degree_weighted_sum(&w) * self.inverse_order();
        Ok((f.value(x).clone(), rhs))
    }

    /// `Σ_Π d_Π Σ_c χ_Π(c) w_c`.
    fn degree_weighted_sum<S: Scalar>(&self, w: &[S]) -> S {
        self.rows_as::<S>()
            .iter()
            .zip(&self.degrees)
            .fold(S::zero(), |acc, (row, &d)| acc + S::from_i64(d as i64) * Self::pair(row, w))
    }

    /// `(Σ_x f1(x) f2(x⁻¹), (1/|G|) Σ_Π d_Π Σ_{x,y} f1(x) f2(y) χ_Π(xy))`.
    pub fn parseval_check<S: Scalar>(&self, f1: &GroupFunction<S>, f2: &GroupFunction<S>) -> Result<(S, S)> {
        self.check_group(f1)?;
        self.check_group(f2)?;
        let g = &self.group;
        let classes = g.classes();
        let lhs = g.elements().fold(S::zero(), |acc, x| acc + f1.value(x).clone() * f2.value(g.inv(x)).clone());
        let mut w = vec![S::zero(); classes.len()];
        for x in g.elements() {
            let a = f1.value(x);
            if a.is_zero() {
                continue;
            }
            for y in g.elements() {
                let b = f2.value(y);
                if b.is_zero() {
                    continue;
                }
                let c = classes.class_of(g.mul(x, y));
                w[c] = w[c].clone() + a.clone() * b.clone();
            }
        }
        let rhs = self.degree_weighted_sum(&w) * self.inverse_order();
        Ok((lhs, rhs))
    }

    /// `(f(e), (1/|G|) Σ_Π d_Π tr f̂(Π))`.
    pub fn plancherel_check<S: Scalar>(&self, f: &GroupFunction<S>) -> Result<(S, S)> {
        let traces = self.trace_fourier_all(f)?;
        let rhs =
            traces.iter().zip(&self.degrees).fold(S::zero(), |acc, (t, &d)| acc + S::from_i64(d as i64) * t.clone())
                * self.inverse_order();
        Ok((f.value(0).clone(), rhs))
    }

    /// `e_Π(y) = (d_Π/|G|) χ_Π(y⁻¹)`.
    pub fn central_idempotent(&self, pi: usize) -> Result<GroupFunction<Cyclo>> {
        self.check_index(pi)?;
        let g = &self.group;
        let c = Cyclo::from_ratio(self.degrees[pi] as i64, g.order() as i64);
        Ok(GroupFunction::from_fn(g, |y| &c * self.value_at(pi, g.inv(y))))
    }

    /// `ω_Π(C_i) = |C_i| χ_Π(x_i) / d_Π`.
    pub fn central_character(&self, pi: usize, class: usize) -> Result<Cyclo> {
        self.check_index(pi)?;
        let classes = self.group.classes();
        if class >= classes.len() {
            return Err(Error::OutOfRange { index: class, len: classes.len() });
        }
        Ok(&self.chars[pi][class] * &Cyclo::from_ratio(classes.size(class) as i64, self.degrees[pi] as i64))
    }

    /// Checks `ω_Π(C_i)` against the class matrix `(A_i)_{jk} = m_{ijk}`.
    pub fn central_character_check(&self, pi: usize, class: usize) -> Result<CentralCharacterCheck> {
        let value = self.central_character(pi, class)?;
        let m = class_multiplication_coefficients(&self.group);
        let r = self.len();
        let omega: Vec<Cyclo> = (0..r).map(|k| self.central_character(pi, k)).collect::<Result<_>>()?;
        let exact_eigenvector = (0..r).all(|j| {
            let lhs: Cyclo = (0..r)
                .filter(|&k| m[class][j][k] != 0)
                .map(|k| &Cyclo::from_integer(m[class][j][k] as i64) * &omega[k])
                .sum();
            lhs == &value * &omega[j]
        });
        let w = value.to_c64();
        let a = DMatrix::from_fn(r, r, |j, k| {
            Complex64::new(m[class][j][k] as f64, 0.0) - if j == k { w } else { Complex64::new(0.0, 0.0) }
        });
        Ok(CentralCharacterCheck {
            algebraic_integer: value.is_algebraic_integer(),
            det_abs: a.determinant().norm(),
            exact_eigenvector,
            value,
        })
    }

    /// `⟨ψ, χ_Π⟩` for every `Π`.
    pub fn decompose<S: Scalar>(&self, psi: &ClassFunction<S>) -> Result<Vec<S>> {
        if !same_group(&self.group, psi.group()) {
            return Err(Error::GroupMismatch);
        }
        (0..self.len())
            .map(|pi| {
                let chi = ClassFunction::new(&self.group, self.row_as(pi))?;
                psi.inner(&chi)
            })
            .collect()
    }

    /// The regular character: `|G|` at the identity, 0 elsewhere.
    pub fn regular_character(&self) -> ClassFunction<Cyclo> {
        ClassFunction::from_fn(&self.group, |i| {
            if i == 0 {
                Cyclo::from_integer(self.group.order() as i64)
            } else {
                Cyclo::zero()
            }
        })
    }

    /// All defining properties of a character table, checked in exact arithmetic.
    pub fn checks(&self) -> TableChecks {
        let g = &self.group;
        let classes = g.classes();
        let n = g.order() as u64;
        let r = classes.len();
        let inverse = |k: usize| classes.inverse_class(k);
        let first = (0..r).all(|i| {
            (0..r).all(|j| {
                let s: Cyclo = (0..r)
                    .map(|k| {
                        &(&self.chars[i][k] * &self.chars[j][inverse(k)]) * &Cyclo::from_integer(classes.size(k) as i64)
                    })
                    .sum();
                s == Cyclo::from_integer(if i == j { n as i64 } else { 0 })
            })
        });
        let second = (0..r).all(|a| {
            (0..r).all(|b| {
                let s: Cyclo = (0..self.len()).map(|pi| &self.chars[pi][a] * &self.chars[pi][inverse(b)]).sum();
                s == Cyclo::from_integer(if a == b { classes.centralizer_order(a) as i64 } else { 0 })
            })
        });
        TableChecks {
            square: self.len() == r,
            sum_of_squares: self.degrees.iter().map(|d| d * d).sum::<u64>() == n,
            first_orthogonality: first,
            second_orthogonality: second,
            degrees_divide_order: self.degrees.iter().all(|d| n.is_multiple_of(*d)),
            dual_involution: (0..self.len()).all(|pi| {
                self.dual_of[self.dual_of[pi]] == pi
                    && self.chars[self.dual_of[pi]].iter().zip(&self.chars[pi]).all(|(a, b)| *a == b.conj())
            }),
        }
    }

    /// Largest deviation from the double-precision table.
    pub fn cross_check_numeric(&self, seed: u64) -> Result<f64> {
        let num = numeric_character_table(&self.group, seed)?;
        if num.degrees != self.degrees {
            return Err(Error::Identity(format!(
                "numeric degrees {:?} differ from exact degrees {:?}",
                num.degrees, self.degrees
            )));
        }
        Ok(num
            .rows
            .iter()
            .zip(&self.numeric)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max))
    }
}
