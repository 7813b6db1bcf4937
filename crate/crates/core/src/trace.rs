//! Orbital sums, the local and global trace formulas, multiplicities in
//! `L(G/Γ)` and Poisson summation.

use std::sync::Arc;

use crate::algebra::{ClassFunction, GroupFunction};
use crate::chartable::CharacterTable;
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::{same_group, GroupTable, SubgroupEmbedding};
use crate::induction::InducedContext;
use crate::scalar::Scalar;

/// Default identity tolerance on the float path.
pub const FLOAT_IDENTITY_TOL: f64 = 1e-8;
/// Absolute slack allowed in the real-line Poisson demo beyond the tail bound.
pub const THETA_FLOAT_TOL: f64 = 1e-12;

/// `O(f, γ) = Σ_x f(xγx⁻¹)`.
pub fn orbital_sum<S: Scalar>(f: &GroupFunction<S>, gamma: u32) -> Result<S> {
    let g = f.group();
    check_element(g, gamma)?;
    Ok(g.elements().fold(S::zero(), |acc, x| acc + f.value(g.conjugate(x, gamma)).clone()))
}

/// `|G_γ| Σ_{x ∈ C(γ)} f(x)`, the same number summed over the class.
pub fn orbital_sum_by_class<S: Scalar>(f: &GroupFunction<S>, gamma: u32) -> Result<S> {
    let g = f.group();
    check_element(g, gamma)?;
    let classes = g.classes();
    let c = classes.class_of(gamma);
    let sum = classes.members(c).iter().fold(S::zero(), |acc, &x| acc + f.value(x).clone());
    Ok(S::from_i64(classes.centralizer_order(c) as i64) * sum)
}

fn check_element(g: &GroupTable, x: u32) -> Result<()> {
    if (x as usize) < g.order() {
        Ok(())
    } else {
        Err(Error::OutOfRange { index: x as usize, len: g.order() })
    }
}

/// Orbital sums at the class representatives of a group, with centralizer weights.
#[derive(Clone, Debug)]
pub struct OrbitalProfile<S> {
    /// Class representatives, as ambient element indices.
    pub representatives: Vec<u32>,
    pub values: Vec<S>,
    /// `1/|G_γ|` (or `1/|Γ_γ|` for a subgroup profile).
    pub weights: Vec<S>,
}

impl<S: Scalar> OrbitalProfile<S> {
    /// `O(f)` as a class function on the ambient group.
    pub fn is_class_function(&self, f: &GroupFunction<S>, tol: f64) -> Result<bool> {
        let g = f.group();
        let classes = g.classes();
        for x in g.elements() {
            let rep = classes.representative(classes.class_of(x));
            if !orbital_sum(f, x)?.is_close(&orbital_sum(f, rep)?, tol) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Orbital sums at the representatives of the classes of `G`.
pub fn orbital_profile<S: Scalar>(f: &GroupFunction<S>) -> Result<OrbitalProfile<S>> {
    let g = f.group();
    let classes = g.classes();
    let representatives = classes.representatives().to_vec();
    let values = representatives.iter().map(|&r| orbital_sum(f, r)).collect::<Result<_>>()?;
    let weights = (0..classes.len()).map(|c| S::from_ratio(1, classes.centralizer_order(c) as i64)).collect();
    Ok(OrbitalProfile { representatives, values, weights })
}

fn check_table<S: Scalar>(table: &CharacterTable, f: &GroupFunction<S>) -> Result<()> {
    if same_group(table.group(), f.group()) {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// `(O(f, γ), Σ_Π tr Π*(f) χ_Π(γ))`.
pub fn orbital_expansion_check<S: Scalar>(table: &CharacterTable, f: &GroupFunction<S>, gamma: u32) -> Result<(S, S)> {
    check_table(table, f)?;
    let lhs = orbital_sum(f, gamma)?;
    let traces = table.trace_fourier_all(f)?;
    let rhs = (0..table.len())
        .fold(S::zero(), |acc, pi| acc + traces[table.dual_of(pi)].clone() * S::from_cyclo(table.value_at(pi, gamma)));
    Ok((lhs, rhs))
}

/// Both sides of a trace formula with their term breakdowns.
#[derive(Clone, Debug)]
pub struct TraceReport<S> {
    pub spectral_side: S,
    pub geometric_side: S,
    /// Kernel-diagonal (local) or pre-trace (global) value.
    pub third_route: S,
    /// One term per irreducible, in table order.
    pub spectral_terms: Vec<S>,
    /// One term per class representative.
    pub geometric_terms: Vec<S>,
    /// Representatives used for the geometric terms, as ambient indices.
    pub representatives: Vec<u32>,
    /// Largest pairwise `|a − b|` among the three values.
    pub abs_error: f64,
}

impl<S: Scalar> TraceReport<S> {
    fn new(spectral_terms: Vec<S>, geometric_terms: Vec<S>, representatives: Vec<u32>, third_route: S) -> Self {
        let spectral_side = spectral_terms.iter().fold(S::zero(), |a, b| a + b.clone());
        let geometric_side = geometric_terms.iter().fold(S::zero(), |a, b| a + b.clone());
        let abs_error = spectral_side
            .abs_diff(&geometric_side)
            .max(spectral_side.abs_diff(&third_route))
            .max(geometric_side.abs_diff(&third_route));
        TraceReport {
            spectral_side,
            geometric_side,
            third_route,
            spectral_terms,
            geometric_terms,
            representatives,
            abs_error,
        }
    }

    /// All three values agree, exactly on the exact path.
    pub fn agrees(&self, tol: f64) -> bool {
        self.spectral_side.is_close(&self.geometric_side, tol) && self.spectral_side.is_close(&self.third_route, tol)
    }
}

/// `Σ_Π tr f̂1(Π) tr f̂2(Π*) = Σ_i O(f1,γ_i) O(f2,γ_i)/|G_{γ_i}| = Σ_x K(x,x)`,
/// with `K(x,y) = Σ_z f1(xz) f2(zy)`.
pub fn local_trace_formula<S: Scalar>(
    table: &CharacterTable,
    f1: &GroupFunction<S>,
    f2: &GroupFunction<S>,
) -> Result<TraceReport<S>> {
    check_table(table, f1)?;
    check_table(table, f2)?;
    let g = f1.group();
    let t1 = table.trace_fourier_all(f1)?;
    let t2 = table.trace_fourier_all(f2)?;
    let spectral = (0..table.len()).map(|pi| t1[pi].clone() * t2[table.dual_of(pi)].clone()).collect();
    let p1 = orbital_profile(f1)?;
    let p2 = orbital_profile(f2)?;
    let geometric =
        (0..p1.values.len()).map(|i| p1.values[i].clone() * p2.values[i].clone() * p1.weights[i].clone()).collect();
    let mut diagonal = S::zero();
    for x in g.elements() {
        for z in g.elements() {
            let a = f1.value(g.mul(x, z));
            if !a.is_zero() {
                diagonal = diagonal + a.clone() * f2.value(g.mul(z, x)).clone();
            }
        }
    }
    Ok(TraceReport::new(spectral, geometric, p1.representatives, diagonal))
}

/// `(Σ_Π χ_Π(x1) χ_{Π*}(x2), |{x : x1 x x2⁻¹ = x}|)`, the character of `L × R`.
pub fn lr_character_check(table: &CharacterTable, x1: u32, x2: u32) -> Result<(Cyclo, Cyclo)> {
    let g = table.group();
    check_element(g, x1)?;
    check_element(g, x2)?;
    let lhs = (0..table.len()).map(|pi| table.value_at(pi, x1) * table.value_at(table.dual_of(pi), x2)).sum();
    let x2i = g.inv(x2);
    let count = g.elements().filter(|&x| g.mul(g.mul(x1, x), x2i) == x).count();
    Ok((lhs, Cyclo::from_integer(count as i64)))
}

fn check_subgroup(table: &CharacterTable, gamma: &SubgroupEmbedding) -> Result<()> {
    if same_group(table.group(), gamma.ambient()) {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

fn multiplicity_exact(table: &CharacterTable, pi: usize, gamma: &SubgroupEmbedding) -> Result<Cyclo> {
    let ctx = InducedContext::new(gamma)?;
    let chi = table.character(pi);
    let restricted = ctx.restrict(&chi)?;
    let m = ClassFunction::one(gamma.table()).inner(&restricted)?;
    let frobenius = ctx.induce(&ClassFunction::one(gamma.table()))?.inner(&chi)?;
    if m != frobenius {
        return Err(Error::Identity(format!("multiplicity {m} differs from Frobenius value {frobenius}")));
    }
    Ok(m)
}

/// `m(Π, L(G/Γ)) = ⟨1_Γ, χ_Π|_Γ⟩`, cross-checked against `⟨i 1_Γ, χ_Π⟩`.
pub fn multiplicity(table: &CharacterTable, pi: usize, gamma: &SubgroupEmbedding) -> Result<u64> {
    check_subgroup(table, gamma)?;
    if pi >= table.len() {
        return Err(Error::OutOfRange { index: pi, len: table.len() });
    }
    let m = multiplicity_exact(table, pi, gamma)?;
    m.to_i64()
        .and_then(|v| u64::try_from(v).ok())
        .ok_or_else(|| Error::Computation(format!("multiplicity {m} is not a nonnegative integer")))
}

/// Γ-class representatives (ambient indices) and their Γ-centralizer orders.
fn subgroup_classes(gamma: &SubgroupEmbedding) -> (Vec<u32>, Vec<usize>) {
    let classes = gamma.table().classes();
    let reps = classes.representatives().iter().map(|&r| gamma.lift(r)).collect();
    (reps, classes.centralizer_orders().to_vec())
}

/// `Σ_Π m(Π) tr f̂(Π) = Σ_{[γ]_Γ} O(f,γ)/|Γ_γ| = Σ_x (1/|Γ|) Σ_γ f(xγx⁻¹)`.
pub fn global_trace_formula<S: Scalar>(
    table: &CharacterTable,
    f: &GroupFunction<S>,
    gamma: &SubgroupEmbedding,
) -> Result<TraceReport<S>> {
    check_table(table, f)?;
    check_subgroup(table, gamma)?;
    let g = f.group();
    let traces = table.trace_fourier_all(f)?;
    let spectral = (0..table.len())
        .map(|pi| Ok(S::from_cyclo(&multiplicity_exact(table, pi, gamma)?) * traces[pi].clone()))
        .collect::<Result<_>>()?;
    let (reps, cent) = subgroup_classes(gamma);
    let geometric = reps
        .iter()
        .zip(&cent)
        .map(|(&r, &c)| Ok(orbital_sum(f, r)? * S::from_ratio(1, c as i64)))
        .collect::<Result<_>>()?;
    let mut pre = S::zero();
    for x in g.elements() {
        for &y in gamma.members() {
            pre = pre + f.value(g.conjugate(x, y)).clone();
        }
    }
    let pre = pre * S::from_ratio(1, gamma.order() as i64);
    Ok(TraceReport::new(spectral, geometric, reps, pre))
}

/// The part of the geometric side coming from the center of `Γ`.
#[derive(Clone, Debug)]
pub struct CentralContribution<S> {
    /// `Σ_{ζ ∈ Z(Γ)} O(f,ζ)/|Γ|`, the geometric terms at central classes.
    pub geometric_subsum: S,
    /// `(|G|/|Γ|) Σ_{ζ ∈ Z(Γ)} f(ζ)`; equal to the subsum when `Z(Γ)` is central in `G`.
    pub closed_form: S,
    /// Elements of `Z(Γ)`, as ambient indices.
    pub center: Vec<u32>,
}

pub fn central_contribution<S: Scalar>(
    f: &GroupFunction<S>,
    gamma: &SubgroupEmbedding,
) -> Result<CentralContribution<S>> {
    if !same_group(f.group(), gamma.ambient()) {
        return Err(Error::GroupMismatch);
    }
    let g = f.group();
    let center: Vec<u32> = gamma.table().center().into_iter().map(|z| gamma.lift(z)).collect();
    let inv = S::from_ratio(1, gamma.order() as i64);
    let mut subsum = S::zero();
    let mut direct = S::zero();
    for &z in &center {
        subsum = subsum + orbital_sum(f, z)?;
        direct = direct + f.value(z).clone();
    }
    Ok(CentralContribution {
        geometric_subsum: subsum * inv.clone(),
        closed_form: direct * S::from_i64(g.order() as i64) * inv,
        center,
    })
}

/// Finite Poisson summation `(1/|G|) Σ_{χ ∈ Γ⊥} f̂(χ) = (1/|Γ|) Σ_{γ} f(γ)`.
#[derive(Clone, Debug)]
pub struct PoissonReport<S> {
    pub dual_side: S,
    pub lattice_side: S,
    /// Rows of the character table trivial on `Γ`.
    pub annihilator: Vec<usize>,
    pub abs_error: f64,
}

impl<S: Scalar> PoissonReport<S> {
    pub fn agrees(&self, tol: f64) -> bool {
        self.dual_side.is_close(&self.lattice_side, tol)
    }
}

pub fn poisson_finite<S: Scalar>(
    table: &CharacterTable,
    f: &GroupFunction<S>,
    gamma: &SubgroupEmbedding,
) -> Result<PoissonReport<S>> {
    check_table(table, f)?;
    check_subgroup(table, gamma)?;
    let g: &Arc<GroupTable> = f.group();
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let annihilator: Vec<usize> = (0..table.len())
        .filter(|&pi| gamma.members().iter().all(|&y| table.value_at(pi, y) == &Cyclo::one()))
        .collect();
    let traces = table.trace_fourier_all(f)?;
    let dual_side =
        annihilator.iter().fold(S::zero(), |acc, &pi| acc + traces[pi].clone()) * S::from_ratio(1, g.order() as i64);
    let lattice_side = gamma.members().iter().fold(S::zero(), |acc, &y| acc + f.value(y).clone())
        * S::from_ratio(1, gamma.order() as i64);
    let abs_error = dual_side.abs_diff(&lattice_side);
    Ok(PoissonReport { dual_side, lattice_side, annihilator, abs_error })
}

/// Truncated sides of `Σ_n e^{−πan²} = a^{−1/2} Σ_k e^{−πk²/a}` with an analytic tail bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaDemo {
    pub a: f64,
    pub n: u32,
    pub lhs: f64,
    pub rhs: f64,
    pub tail_bound: f64,
    pub difference: f64,
}

impl ThetaDemo {
    pub fn within_bound(&self) -> bool {
        self.difference <= self.tail_bound + THETA_FLOAT_TOL
    }
}

/// `Σ_{|n| ≤ N} e^{−πan²}`.
pub fn theta(a: f64, n: u32) -> f64 {
    // small terms first
    (1..=n as i64).rev().map(|k| 2.0 * (-std::f64::consts::PI * a * (k * k) as f64).exp()).sum::<f64>() + 1.0
}

fn gaussian_tail(a: f64, n: u32) -> f64 {
    let pi = std::f64::consts::PI;
    let n = n as f64;
    2.0 * (-pi * a * n * n).exp() / (1.0 - (-pi * a * (2.0 * n + 1.0)).exp())
}

pub fn poisson_real_demo(a: f64, n: u32) -> Result<ThetaDemo> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Input(format!("theta parameter must be positive, got {a}")));
    }
    if n == 0 {
        return Err(Error::Input("truncation N must be at least 1".into()));
    }
    let lhs = theta(a, n);
    let rhs = theta(1.0 / a, n) / a.sqrt();
    let tail_bound = gaussian_tail(a, n) + gaussian_tail(1.0 / a, n) / a.sqrt();
    Ok(ThetaDemo { a, n, lhs, rhs, tail_bound, difference: (lhs - rhs).abs() })
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::group::named::{builtin, resolve_subgroup};

    fn setup(name: &str) -> (Arc<GroupTable>, CharacterTable) {
        let g = Arc::new(builtin(name).unwrap());
        let t = CharacterTable::compute(&g).unwrap();
        (g, t)
    }

    fn random_int(g: &Arc<GroupTable>, rng: &mut ChaCha8Rng) -> GroupFunction<Cyclo> {
        GroupFunction::from_fn(g, |_| Cyclo::from_integer(rng.random_range(-5..=5)))
    }

    fn int(v: i64) -> Cyclo {
        Cyclo::from_integer(v)
    }

    #[test]
    fn orbital_sums() {
        let (g, _) = setup("S4");
        let e = GroupFunction::<Cyclo>::delta(&g, 0);
        assert_eq!(orbital_sum(&e, 0).unwrap(), int(24));
        for x in 1..24 {
            assert!(orbital_sum(&e, x).unwrap().is_zero());
        }
        let (s3, _) = setup("S3");
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_int(&s3, &mut rng);
        let c = (0..6u32).find(|&x| s3.element_order(x) == 3).unwrap();
        let c2 = s3.mul(c, c);
        let expected = int(3) * (f.value(c).clone() + f.value(c2).clone());
        assert_eq!(orbital_sum(&f, c).unwrap(), expected);
        assert_eq!(orbital_sum_by_class(&f, c).unwrap(), expected);
        for x in s3.elements() {
            assert_eq!(orbital_sum(&f, x).unwrap(), orbital_sum_by_class(&f, x).unwrap());
        }
        assert!(orbital_profile(&f).unwrap().is_class_function(&f, 0.0).unwrap());
    }

    #[test]
    fn orbital_expansion() {
        let (g, t) = setup("A4");
        let e = GroupFunction::<Cyclo>::delta(&g, 0);
        for x in g.elements() {
            let (l, r) = orbital_expansion_check(&t, &e, x).unwrap();
            assert_eq!(l, r);
            assert_eq!(l, if x == 0 { int(12) } else { int(0) });
        }
        let idem = t.central_idempotent(3).unwrap();
        for x in g.elements() {
            let (l, r) = orbital_expansion_check(&t, &idem, x).unwrap();
            assert_eq!(l, r);
            // only Π* = Π contributes: tr Π*(e_Π) χ_Π(γ) with tr = d_Π
            let d = int(t.degree(3) as i64);
            assert_eq!(l, &d * t.value_at(t.dual_of(3), x));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f =
            GroupFunction::from_fn(&g, |_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        for x in g.elements() {
            let (l, r) = orbital_expansion_check(&t, &f, x).unwrap();
            assert!((l - r).norm() < 1e-9);
        }
    }

    #[test]
    fn local_formula() {
        let (g, t) = setup("S4");
        let e = GroupFunction::<Cyclo>::delta(&g, 0);
        let r = local_trace_formula(&t, &e, &e).unwrap();
        assert!(r.agrees(0.0));
        assert_eq!(r.spectral_side, int(24));
        let x = (0..24u32).find(|&x| g.element_order(x) == 3).unwrap();
        let r = local_trace_formula(&t, &e, &GroupFunction::delta(&g, x)).unwrap();
        assert!(r.agrees(0.0) && r.spectral_side.is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let phi = GroupFunction::from_fn(&g, |_| Complex64::new(rng.random_range(-1.0..1.0), 0.0));
        let r = local_trace_formula(&t, &phi, &phi).unwrap();
        let moduli: f64 = t.trace_fourier_all(&phi).unwrap().iter().map(|v| v.norm_sqr()).sum();
        assert!(r.agrees(1e-9));
        assert!((r.spectral_side.re - moduli).abs() < 1e-9);
        for (s3, seed) in [("S3", 4), ("S4", 5)] {
            let (g, t) = setup(s3);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..5 {
                let (f1, f2) = (random_int(&g, &mut rng), random_int(&g, &mut rng));
                assert!(local_trace_formula(&t, &f1, &f2).unwrap().agrees(0.0));
            }
        }
    }

    #[test]
    fn lr_character_exhaustive() {
        let (g, t) = setup("S3");
        for x1 in g.elements() {
            for x2 in g.elements() {
                let (l, r) = lr_character_check(&t, x1, x2).unwrap();
                assert_eq!(l, r);
                let classes = g.classes();
                if classes.class_of(x1) != classes.class_of(x2) {
                    assert!(l.is_zero());
                }
                if x1 == x2 {
                    assert_eq!(l, int(classes.centralizer_order(classes.class_of(x1)) as i64));
                }
            }
        }
    }

    #[test]
    fn multiplicities() {
        let (g, t) = setup("S4");
        let trivial = SubgroupEmbedding::trivial(&g);
        for pi in 0..t.len() {
            assert_eq!(multiplicity(&t, pi, &trivial).unwrap(), t.degree(pi));
        }
        let whole = SubgroupEmbedding::whole(&g);
        assert_eq!(multiplicity(&t, 0, &whole).unwrap(), 1);
        let s3 = resolve_subgroup(&g, "S3").unwrap();
        // the standard 3-dimensional character: χ(transposition) = 1
        let standard = (0..t.len())
            .find(|&pi| {
                t.degree(pi) == 3
                    && (0..24u32).any(|x| {
                        g.element_order(x) == 2 && {
                            let p = g.permutation(x).unwrap();
                            p.cycles().len() == 1 && t.value_at(pi, x) == &int(1)
                        }
                    })
            })
            .unwrap();
        assert_eq!(multiplicity(&t, standard, &s3).unwrap(), 1);
        let dims: u64 = (0..t.len()).map(|pi| multiplicity(&t, pi, &s3).unwrap() * t.degree(pi)).sum();
        assert_eq!(dims, 4);
    }

    #[test]
    fn global_formula() {
        for (name, sub) in [("S3", "A3"), ("S4", "S3"), ("S4", "A4"), ("S4", "<(0,1,2,3)>"), ("A5", "A4")] {
            let (g, t) = setup(name);
            let gamma = resolve_subgroup(&g, sub).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(17);
            for _ in 0..3 {
                let f = random_int(&g, &mut rng);
                let r = global_trace_formula(&t, &f, &gamma).unwrap();
                assert!(r.agrees(0.0), "{name} {sub}");
            }
            let dims: u64 = (0..t.len()).map(|pi| multiplicity(&t, pi, &gamma).unwrap() * t.degree(pi)).sum();
            assert_eq!(dims as usize, gamma.index());
        }
        let (g, t) = setup("S4");
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = random_int(&g, &mut rng);
        let r = global_trace_formula(&t, &f, &SubgroupEmbedding::trivial(&g)).unwrap();
        assert_eq!(r.spectral_side, int(24) * f.value(0).clone());
        let r = global_trace_formula(&t, &f, &SubgroupEmbedding::whole(&g)).unwrap();
        assert_eq!(r.geometric_side, f.sum());
    }

    #[test]
    fn central_contributions() {
        let (g, t) = setup("S4");
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = random_int(&g, &mut rng);
        let s3 = resolve_subgroup(&g, "S3").unwrap();
        let c = central_contribution(&f, &s3).unwrap();
        assert_eq!(c.center, vec![0]);
        assert_eq!(c.closed_form, int(4) * f.value(0).clone());
        assert_eq!(c.geometric_subsum, c.closed_form);
        let cyc = resolve_subgroup(&g, "<(0,1,2,3)>").unwrap();
        let c = central_contribution(&f, &cyc).unwrap();
        let r = global_trace_formula(&t, &f, &cyc).unwrap();
        assert_eq!(c.geometric_subsum, r.geometric_side);
        // Z(Γ) = Γ is not central in S4: the closed form misses the conjugates
        let four_cycle = *cyc.members().iter().find(|&&x| g.element_order(x) == 4).unwrap();
        let d = GroupFunction::<Cyclo>::delta(&g, four_cycle);
        let c = central_contribution(&d, &cyc).unwrap();
        assert_eq!(c.closed_form, int(6));
        // both 4-cycles of Γ meet the class of `four_cycle`, each with |C_G| = 4
        assert_eq!(c.geometric_subsum, int(2));
        assert_ne!(c.geometric_subsum, c.closed_form);
        let e = GroupFunction::<Cyclo>::delta(&g, 0);
        let c = central_contribution(&e, &s3).unwrap();
        assert_eq!((c.geometric_subsum, c.closed_form), (int(4), int(4)));
    }

    #[test]
    fn finite_poisson() {
        let (g, t) = setup("Z/4");
        let gamma = resolve_subgroup(&g, "2Z/4").unwrap();
        let r = poisson_finite(&t, &GroupFunction::<Cyclo>::delta(&g, 0), &gamma).unwrap();
        assert_eq!(r.annihilator.len(), 2);
        assert_eq!((r.dual_side.clone(), r.lattice_side.clone()), (Cyclo::from_ratio(1, 2), Cyclo::from_ratio(1, 2)));
        let (g, t) = setup("Z/12");
        let gamma = resolve_subgroup(&g, "4Z/12").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let f = random_int(&g, &mut rng);
        assert!(poisson_finite(&t, &f, &gamma).unwrap().agrees(0.0));
        let whole = SubgroupEmbedding::whole(&g);
        let r = poisson_finite(&t, &f, &whole).unwrap();
        assert_eq!(r.annihilator, vec![0]);
        assert_eq!(r.lattice_side, f.sum() * Cyclo::from_ratio(1, 12));
        let (s3, t3) = setup("S3");
        let e = GroupFunction::<Cyclo>::delta(&s3, 0);
        assert!(matches!(poisson_finite(&t3, &e, &SubgroupEmbedding::whole(&s3)), Err(Error::NotAbelian)));
    }

    /// `∫ e^{−πax²} e^{−2πikx} dx` by the trapezoid rule on a wide interval.
    fn fourier_quadrature(a: f64, k: f64) -> f64 {
        let (lim, steps) = (12.0, 48000);
        let h = 2.0 * lim / steps as f64;
        (0..=steps)
            .map(|i| {
                let x = -lim + i as f64 * h;
                let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
                w * (-std::f64::consts::PI * a * x * x).exp() * (2.0 * std::f64::consts::PI * k * x).cos()
            })
            .sum::<f64>()
            * h
    }

    #[test]
    fn theta_demo() {
        let d = poisson_real_demo(1.0, 10).unwrap();
        assert!(d.difference <= 1e-12 && d.within_bound());
        let d = poisson_real_demo(2.0, 20).unwrap();
        assert!(d.difference <= 1e-12);
        let quad: f64 = (-20..=20).map(|k| fourier_quadrature(2.0, k as f64)).sum();
        assert!((quad - d.rhs).abs() < 1e-10, "{quad} {}", d.rhs);
        assert!((theta(0.5, 20) - 2f64.sqrt() * theta(2.0, 20)).abs() < 1e-12);
        assert!(poisson_real_demo(0.0, 5).is_err());
        assert!(poisson_real_demo(1.0, 0).is_err());
    }
}
