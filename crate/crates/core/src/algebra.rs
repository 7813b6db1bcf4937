//! Functions on a finite group: convolution algebra, involution, inner
//! products, class functions and class-multiplication coefficients.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{same_group, GroupTable};
use crate::scalar::Scalar;

/// Absolute tolerance for deciding that a floating-point function is constant on classes.
pub const CLASS_FUNCTION_TOL: f64 = 1e-9;

/// An element of `C(G)`, indexed by group element.
#[derive(Clone, Debug)]
pub struct GroupFunction<S> {
    group: Arc<GroupTable>,
    values: Vec<S>,
}

/// A function constant on conjugacy classes, stored per class.
#[derive(Clone, Debug)]
pub struct ClassFunction<S> {
    group: Arc<GroupTable>,
    values: Vec<S>,
}

fn check_same(a: &Arc<GroupTable>, b: &Arc<GroupTable>) -> Result<()> {
    if same_group(a, b) {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

impl<S: Scalar> GroupFunction<S> {
    pub fn new(group: &Arc<GroupTable>, values: Vec<S>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::Input(format!("group function needs {} values, got {}", group.order(), values.len())));
        }
        Ok(GroupFunction { group: group.clone(), values })
    }

    pub fn from_fn(group: &Arc<GroupTable>, f: impl FnMut(u32) -> S) -> Self {
        GroupFunction { group: group.clone(), values: group.elements().map(f).collect() }
    }

    pub fn zero(group: &Arc<GroupTable>) -> Self {
        Self::from_fn(group, |_| S::zero())
    }

    pub fn constant(group: &Arc<GroupTable>, c: S) -> Self {
        Self::from_fn(group, |_| c.clone())
    }

    /// `δ_x`.
    pub fn delta(group: &Arc<GroupTable>, x: u32) -> Self {
        Self::from_fn(group, |y| if y == x { S::one() } else { S::zero() })
    }

    /// The class indicator `χ_C`: 1 on class `i`, 0 elsewhere.
    pub fn class_indicator(group: &Arc<GroupTable>, i: usize) -> Self {
        let classes = group.classes();
        Self::from_fn(group, |y| if classes.class_of(y) == i { S::one() } else { S::zero() })
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn value(&self, x: u32) -> &S {
        &self.values[x as usize]
    }

    /// `(f * g)(x) = Σ_y f(xy⁻¹) g(y)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        check_same(&self.group, &other.group)?;
        let g = &self.group;
        let mut out = vec![S::zero(); g.order()];
        // accumulate f(a) g(b) into (ab), skipping zero terms
        for a in g.elements() {
            let fa = &self.values[a as usize];
            if fa.is_zero() {
                continue;
            }
            for b in g.elements() {
                let gb = &other.values[b as usize];
                if gb.is_zero() {
                    continue;
                }
                let slot = &mut out[g.mul(a, b) as usize];
                *slot = slot.clone() + fa.clone() * gb.clone();
            }
        }
        Ok(GroupFunction { group: g.clone(), values: out })
    }

    /// `f*(x) = conj f(x⁻¹)`.
    pub fn star(&self) -> Self {
        let g = &self.group;
        Self::from_fn(g, |x| self.values[g.inv(x) as usize].conj())
    }

    /// `(1/|G|) Σ_x f(x) conj g(x)`.
    pub fn inner(&self, other: &Self) -> Result<S> {
        check_same(&self.group, &other.group)?;
        let sum: S = self.values.iter().zip(&other.values).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.conj());
        Ok(sum * S::from_ratio(1, self.group.order() as i64))
    }

    pub fn sum(&self) -> S {
        self.values.iter().fold(S::zero(), |acc, v| acc + v.clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(&self.group, &other.group)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same(&self.group, &other.group)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    pub fn scale(&self, c: &S) -> Self {
        GroupFunction { group: self.group.clone(), values: self.values.iter().map(|v| v.clone() * c.clone()).collect() }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        GroupFunction {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Per-class values if `f` is constant on every class, within `tol` for inexact scalars.
    pub fn to_class_function_with_tol(&self, tol: f64) -> Result<ClassFunction<S>> {
        let classes = self.group.classes();
        let mut values = Vec::with_capacity(classes.len());
        for i in 0..classes.len() {
            let members = classes.members(i);
            let v = &self.values[members[0] as usize];
            if members.iter().any(|&x| !self.values[x as usize].is_close(v, tol)) {
                return Err(Error::NotClassFunction { class: i });
            }
            values.push(v.clone());
        }
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    pub fn to_class_function(&self) -> Result<ClassFunction<S>> {
        self.to_class_function_with_tol(CLASS_FUNCTION_TOL)
    }

    /// Whether `f * δ_z = δ_z * f` for every `z`, i.e. `f` is central in `C(G)`.
    pub fn is_central(&self, tol: f64) -> bool {
        let g = &self.group;
        g.elements().all(|z| {
            // (f * δ_z)(x) = f(x z⁻¹), (δ_z * f)(x) = f(z⁻¹ x)
            let zi = g.inv(z);
            g.elements().all(|x| self.values[g.mul(x, zi) as usize].is_close(&self.values[g.mul(zi, x) as usize], tol))
        })
    }

    pub fn to_numeric(&self) -> GroupFunction<Complex64> {
        GroupFunction { group: self.group.clone(), values: self.values.iter().map(Scalar::to_c64).collect() }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| a.abs_diff(b)).fold(0.0, f64::max)
    }
}

impl GroupFunction<crate::Cyclo> {
    pub fn from_integers(group: &Arc<GroupTable>, values: &[i64]) -> Result<Self> {
        Self::new(group, values.iter().map(|&v| crate::Cyclo::from_integer(v)).collect())
    }

    /// Independent uniform integers in `[-bound, bound]`.
    pub fn random_integers(group: &Arc<GroupTable>, rng: &mut impl rand::Rng, bound: i64) -> Self {
        Self::from_fn(group, |_| crate::Cyclo::from_integer(rng.random_range(-bound..=bound)))
    }
}

impl<S: Scalar> PartialEq for GroupFunction<S> {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.values == other.values
    }
}

impl<S: Scalar> ClassFunction<S> {
    pub fn new(group: &Arc<GroupTable>, values: Vec<S>) -> Result<Self> {
        let n = group.classes().len();
        if values.len() != n {
            return Err(Error::Input(format!("class function needs {n} values, got {}", values.len())));
        }
        Ok(ClassFunction { group: group.clone(), values })
    }

    pub fn from_fn(group: &Arc<GroupTable>, f: impl FnMut(usize) -> S) -> Self {
        let n = group.classes().len();
        ClassFunction { group: group.clone(), values: (0..n).map(f).collect() }
    }

    pub fn constant(group: &Arc<GroupTable>, c: S) -> Self {
        Self::from_fn(group, |_| c.clone())
    }

    /// `1_G`.
    pub fn one(group: &Arc<GroupTable>) -> Self {
        Self::constant(group, S::one())
    }

    pub fn zero(group: &Arc<GroupTable>) -> Self {
        Self::constant(group, S::zero())
    }

    /// 1 on class `i`, 0 elsewhere.
    pub fn class_indicator(group: &Arc<GroupTable>, i: usize) -> Self {
        Self::from_fn(group, |j| if i == j { S::one() } else { S::zero() })
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn into_values(self) -> Vec<S> {
        self.values
    }

    pub fn value(&self, class: usize) -> &S {
        &self.values[class]
    }

    /// Value at a group element.
    pub fn at(&self, x: u32) -> &S {
        &self.values[self.group.classes().class_of(x)]
    }

    pub fn to_group_function(&self) -> GroupFunction<S> {
        GroupFunction::from_fn(&self.group, |x| self.at(x).clone())
    }

    /// `(1/|G|) Σ_i |C_i| φ(C_i) conj ψ(C_i)`.
    pub fn inner(&self, other: &Self) -> Result<S> {
        check_same(&self.group, &other.group)?;
        let classes = self.group.classes();
        let sum = (0..classes.len()).fold(S::zero(), |acc, i| {
            acc + S::from_i64(classes.size(i) as i64) * self.values[i].clone() * other.values[i].conj()
        });
        Ok(sum * S::from_ratio(1, self.group.order() as i64))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(&self.group, &other.group)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same(&self.group, &other.group)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.group, &other.group)?;
        Ok(self.zip_with(other, |a, b| a.clone() * b.clone()))
    }

    pub fn scale(&self, c: &S) -> Self {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v.clone() * c.clone()).collect() }
    }

    pub fn conj(&self) -> Self {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(Scalar::conj).collect() }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn to_numeric(&self) -> ClassFunction<Complex64> {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(Scalar::to_c64).collect() }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| a.abs_diff(b)).fold(0.0, f64::max)
    }

    pub fn is_close(&self, other: &Self, tol: f64) -> bool {
        same_group(&self.group, &other.group) && self.values.iter().zip(&other.values).all(|(a, b)| a.is_close(b, tol))
    }
}

impl ClassFunction<crate::Cyclo> {
    pub fn from_integers(group: &Arc<GroupTable>, values: &[i64]) -> Result<Self> {
        Self::new(group, values.iter().map(|&v| crate::Cyclo::from_integer(v)).collect())
    }

    /// Integer values, if every value is a rational integer.
    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.values.iter().map(crate::Cyclo::to_i64).collect()
    }
}

impl<S: Scalar> PartialEq for ClassFunction<S> {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.values == other.values
    }
}

/// `m[i][j][k]`: the number of pairs `(x, y) ∈ C_i × C_j` with `xy = x_k`.
///
/// These are the structure constants `χ_{C_i} * χ_{C_j} = Σ_k m_{ijk} χ_{C_k}`.
pub fn class_multiplication_coefficients(g: &GroupTable) -> Vec<Vec<Vec<u64>>> {
    let classes = g.classes();
    let r = classes.len();
    let mut m = vec![vec![vec![0u64; r]; r]; r];
    for (i, mi) in m.iter_mut().enumerate() {
        for k in 0..r {
            let xk = classes.representative(k);
            for &x in classes.members(i) {
                let y = g.mul(g.inv(x), xk);
                mi[classes.class_of(y)][k] += 1;
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;
    use crate::Cyclo;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn group(name: &str) -> Arc<GroupTable> {
        Arc::new(named::builtin(name).unwrap())
    }

    fn random_fn(g: &Arc<GroupTable>, rng: &mut ChaCha8Rng) -> GroupFunction<Cyclo> {
        GroupFunction::from_fn(g, |_| Cyclo::from_integer(rng.random_range(-5..=5)))
    }

    #[test]
    fn deltas_multiply_like_group_elements() {
        let g = group("S3");
        for x in g.elements() {
            for y in g.elements() {
                let p = GroupFunction::<Cyclo>::delta(&g, x).convolve(&GroupFunction::delta(&g, y)).unwrap();
                assert_eq!(p, GroupFunction::delta(&g, g.mul(x, y)));
            }
        }
    }

    #[test]
    fn identity_and_constant_convolution() {
        let g = group("S3");
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = random_fn(&g, &mut rng);
        assert_eq!(GroupFunction::delta(&g, 0).convolve(&f).unwrap(), f);
        let one = GroupFunction::<Cyclo>::constant(&g, Cyclo::one());
        assert_eq!(one.convolve(&one).unwrap(), one.scale(&Cyclo::from_integer(6)));
    }

    #[test]
    fn convolution_matches_defining_sum() {
        let g = group("D8");
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (f, h) = (random_fn(&g, &mut rng), random_fn(&g, &mut rng));
        let direct = GroupFunction::from_fn(&g, |x| {
            g.elements().map(|y| f.value(g.mul(x, g.inv(y))).clone() * h.value(y).clone()).sum::<Cyclo>()
        });
        assert_eq!(f.convolve(&h).unwrap(), direct);
    }

    #[test]
    fn star_is_an_anti_involution() {
        let g = group("S3");
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = GroupFunction::from_fn(&g, |_| {
            Cyclo::from_integer(rng.random_range(-3..=3)) + Cyclo::root_of_unity(4, rng.random_range(0..4))
        });
        let h = random_fn(&g, &mut rng);
        assert_eq!(f.star().star(), f);
        assert_eq!(f.convolve(&h).unwrap().star(), h.star().convolve(&f.star()).unwrap());
        for x in g.elements() {
            assert_eq!(GroupFunction::<Cyclo>::delta(&g, x).star(), GroupFunction::delta(&g, g.inv(x)));
        }
        let i = GroupFunction::constant(&g, Cyclo::root_of_unity(4, 1));
        assert_eq!(i.star(), GroupFunction::constant(&g, -Cyclo::root_of_unity(4, 1)));
    }

    #[test]
    fn inner_products() {
        let g = group("S3");
        let e = GroupFunction::<Cyclo>::delta(&g, 0);
        assert_eq!(e.inner(&e).unwrap(), Cyclo::from_ratio(1, 6));
        let one = GroupFunction::<Cyclo>::constant(&g, Cyclo::one());
        assert_eq!(one.inner(&one).unwrap(), Cyclo::one());
        // standard character: 2 at e, -1 on 3-cycles, 0 on transpositions
        let std = GroupFunction::from_fn(&g, |x| {
            Cyclo::from_integer(match g.element_order(x) {
                1 => 2,
                3 => -1,
                _ => 0,
            })
        });
        assert_eq!(std.inner(&std).unwrap(), Cyclo::one());
        assert!(matches!(e.inner(&GroupFunction::delta(&group("Z/6"), 0)), Err(Error::GroupMismatch)));
    }

    #[test]
    fn class_function_detection() {
        let g = group("S3");
        let one = GroupFunction::<Cyclo>::constant(&g, Cyclo::one());
        assert_eq!(one.to_class_function().unwrap(), ClassFunction::one(&g));
        let t = g.classes().representative(2);
        assert!(matches!(
            GroupFunction::<Cyclo>::delta(&g, t).to_class_function(),
            Err(Error::NotClassFunction { .. })
        ));
        for x in g.elements() {
            let orbit = g.elements().fold(GroupFunction::<Cyclo>::zero(&g), |acc, y| {
                acc.add(&GroupFunction::delta(&g, g.conjugate(y, x))).unwrap()
            });
            let cls = g.classes().class_of(x);
            let expect = ClassFunction::class_indicator(&g, cls)
                .scale(&Cyclo::from_integer(g.classes().centralizer_order(cls) as i64));
            assert_eq!(orbit.to_class_function().unwrap(), expect);
        }
        let noisy = GroupFunction::from_fn(&g, |x| Complex64::new(1.0 + 1e-12 * x as f64, 0.0));
        assert!(noisy.to_class_function().is_ok());
        let off = GroupFunction::from_fn(&g, |x| Complex64::new(1.0 + 1e-6 * x as f64, 0.0));
        assert!(off.to_class_function().is_err());
    }

    #[test]
    fn centre_is_the_class_functions() {
        for name in ["S3", "Q8"] {
            let g = group(name);
            let mut rng = ChaCha8Rng::seed_from_u64(4);
            let mut candidates: Vec<GroupFunction<Cyclo>> = g.elements().map(|x| GroupFunction::delta(&g, x)).collect();
            candidates.extend((0..g.classes().len()).map(|i| GroupFunction::class_indicator(&g, i)));
            candidates.extend((0..20).map(|_| random_fn(&g, &mut rng)));
            for f in candidates {
                assert_eq!(f.is_central(0.0), f.to_class_function().is_ok());
            }
        }
    }

    #[test]
    fn structure_constants_expand_class_products() {
        for name in ["S3", "S4", "Q8", "D10", "A4", "A5", "S5"] {
            let g = group(name);
            let m = class_multiplication_coefficients(&g);
            let r = g.classes().len();
            let ind: Vec<GroupFunction<Cyclo>> = (0..r).map(|i| GroupFunction::class_indicator(&g, i)).collect();
            for i in 0..r {
                assert_eq!(m[0][i], (0..r).map(|k| (i == k) as u64).collect::<Vec<_>>());
                for j in 0..r {
                    let lhs = ind[i].convolve(&ind[j]).unwrap();
                    let rhs = (0..r).fold(GroupFunction::zero(&g), |acc, k| {
                        acc.add(&ind[k].scale(&Cyclo::from_integer(m[i][j][k] as i64))).unwrap()
                    });
                    assert_eq!(lhs, rhs, "{name} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn structure_constants_small_cases() {
        let g = group("S3");
        let m = class_multiplication_coefficients(&g);
        let t = g.classes().class_of(g.classes().representative(2));
        assert_eq!(g.element_order(g.classes().representative(t)), 2);
        assert_eq!(m[t][t][0], 3);
        let z4 = group("Z/4");
        let m = class_multiplication_coefficients(&z4);
        let c = z4.classes();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let prod = z4.mul(c.representative(i), c.representative(j));
                    assert_eq!(m[i][j][k], (prod == c.representative(k)) as u64);
                }
            }
        }
    }
}
