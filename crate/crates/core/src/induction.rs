//! Restriction and induction of class functions, Frobenius reciprocity and
//! Mackey's double-coset formulas.

use std::sync::Arc;

use crate::algebra::ClassFunction;
use crate::error::{Error, Result};
use crate::group::{double_cosets, left_transversal, same_group, GroupTable, SubgroupEmbedding};
use crate::scalar::Scalar;

/// A subgroup `Γ ⊂ G` with its left transversal and class fusion map.
#[derive(Clone, Debug)]
pub struct InducedContext {
    subgroup: SubgroupEmbedding,
    transversal: Vec<u32>,
    class_map: Vec<usize>,
}

impl InducedContext {
    pub fn new(subgroup: &SubgroupEmbedding) -> Result<Self> {
        let ambient = subgroup.ambient();
        let transversal = left_transversal(ambient, subgroup)?;
        let local = subgroup.table().classes();
        let class_map =
            (0..local.len()).map(|c| ambient.classes().class_of(subgroup.lift(local.representative(c)))).collect();
        Ok(InducedContext { subgroup: subgroup.clone(), transversal, class_map })
    }

    pub fn ambient(&self) -> &Arc<GroupTable> {
        self.subgroup.ambient()
    }

    pub fn subgroup(&self) -> &SubgroupEmbedding {
        &self.subgroup
    }

    pub fn transversal(&self) -> &[u32] {
        &self.transversal
    }

    /// Ambient class of each subgroup class.
    pub fn class_map(&self) -> &[usize] {
        &self.class_map
    }

    fn check_ambient<S: Scalar>(&self, psi: &ClassFunction<S>) -> Result<()> {
        if same_group(self.ambient(), psi.group()) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn check_sub<S: Scalar>(&self, phi: &ClassFunction<S>) -> Result<()> {
        if same_group(self.subgroup.table(), phi.group()) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// `φ̊(x)`: `φ(x)` for `x ∈ Γ`, zero otherwise.
    fn extended<S: Scalar>(&self, phi: &ClassFunction<S>, x: u32) -> S {
        match self.subgroup.local_index(x) {
            Some(local) => phi.at(local).clone(),
            None => S::zero(),
        }
    }

    /// `r_{G→Γ} ψ`.
    pub fn restrict<S: Scalar>(&self, psi: &ClassFunction<S>) -> Result<ClassFunction<S>> {
        self.check_ambient(psi)?;
        ClassFunction::new(self.subgroup.table(), self.class_map.iter().map(|&c| psi.value(c).clone()).collect())
    }

    /// `(i φ)(x) = Σ_k φ̊(x_k⁻¹ x x_k)` over the left transversal.
    pub fn induce<S: Scalar>(&self, phi: &ClassFunction<S>) -> Result<ClassFunction<S>> {
        self.check_sub(phi)?;
        let g = self.ambient();
        let classes = g.classes();
        Ok(ClassFunction::from_fn(g, |c| {
            let x = classes.representative(c);
            self.transversal.iter().fold(S::zero(), |acc, &xk| acc + self.extended(phi, g.mul(g.mul(g.inv(xk), x), xk)))
        }))
    }

    /// `(i φ)(x) = (1/|Γ|) Σ_{y∈G} φ̊(y x y⁻¹)`.
    pub fn induce_averaged<S: Scalar>(&self, phi: &ClassFunction<S>) -> Result<ClassFunction<S>> {
        self.check_sub(phi)?;
        let g = self.ambient();
        let classes = g.classes();
        let scale = S::from_ratio(1, self.subgroup.order() as i64);
        Ok(ClassFunction::from_fn(g, |c| {
            let x = classes.representative(c);
            g.elements().fold(S::zero(), |acc, y| acc + self.extended(phi, g.conjugate(y, x))) * scale.clone()
        }))
    }

    /// `χ_π(C) = (|G|/|Γ|) Σ_ℓ (|C_ℓ|/|C|) θ(C_ℓ)` over the `Γ`-classes `C_ℓ ⊂ C`.
    pub fn induced_rep_character<S: Scalar>(&self, theta: &ClassFunction<S>) -> Result<ClassFunction<S>> {
        self.check_sub(theta)?;
        let g = self.ambient();
        let local = self.subgroup.table().classes();
        let mut sums = vec![S::zero(); g.classes().len()];
        for l in 0..local.len() {
            let c = self.class_map[l];
            sums[c] = sums[c].clone() + S::from_i64(local.size(l) as i64) * theta.value(l).clone();
        }
        let index = self.subgroup.index() as i64;
        Ok(ClassFunction::from_fn(g, |c| sums[c].clone() * S::from_ratio(index, g.classes().size(c) as i64)))
    }

    /// `(⟨i φ, ψ⟩_G, ⟨φ, r ψ⟩_Γ)`.
    pub fn frobenius_check<S: Scalar>(&self, phi: &ClassFunction<S>, psi: &ClassFunction<S>) -> Result<(S, S)> {
        let lhs = self.induce(phi)?.inner(psi)?;
        let rhs = phi.inner(&self.restrict(psi)?)?;
        Ok((lhs, rhs))
    }
}

/// `φ^x(y) = φ(x⁻¹ y x)` as a class function on `xΓx⁻¹`.
pub fn conjugate_class_function<S: Scalar>(
    subgroup: &SubgroupEmbedding,
    phi: &ClassFunction<S>,
    x: u32,
) -> Result<(SubgroupEmbedding, ClassFunction<S>)> {
    let g = subgroup.ambient();
    let conj = subgroup.conjugate_by(x);
    let xi = g.inv(x);
    let classes = conj.table().classes();
    let values = (0..classes.len())
        .map(|c| {
            let y = conj.lift(classes.representative(c));
            let local = subgroup.local_index(g.conjugate(xi, y)).expect("conjugate lies in the subgroup");
            phi.at(local).clone()
        })
        .collect();
    let f = ClassFunction::new(conj.table(), values)?;
    Ok((conj, f))
}

/// One double coset's contribution to Mackey's formula.
#[derive(Clone, Debug)]
pub struct MackeyTerm<S> {
    pub representative: u32,
    /// `Γ₂(s) = sΓ₂s⁻¹ ∩ Γ₁` as a subgroup of `Γ₁`.
    pub stabilizer: SubgroupEmbedding,
    /// `φ_s(y) = φ(s⁻¹ y s)` on `Γ₂(s)`.
    pub twisted: ClassFunction<S>,
    /// `i_{Γ₂(s)→Γ₁} φ_s`.
    pub induced: ClassFunction<S>,
}

#[derive(Clone, Debug)]
pub struct MackeyDecomposition<S> {
    /// `r_{G→Γ₁}(i_{Γ₂→G} φ)`.
    pub direct: ClassFunction<S>,
    pub terms: Vec<MackeyTerm<S>>,
    /// `Σ_s i_{Γ₂(s)→Γ₁} φ_s`.
    pub double_coset_sum: ClassFunction<S>,
}

impl<S: Scalar> MackeyDecomposition<S> {
    pub fn agrees(&self, tol: f64) -> bool {
        self.direct.is_close(&self.double_coset_sum, tol)
    }
}

fn check_same_ambient(a: &SubgroupEmbedding, b: &SubgroupEmbedding) -> Result<()> {
    if same_group(a.ambient(), b.ambient()) {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// `φ_s` on `Γ₂(s)`, given `Γ₂(s)` embedded in `Γ₁`.
fn twist<S: Scalar>(
    gamma1: &SubgroupEmbedding,
    gamma2: &SubgroupEmbedding,
    stabilizer: &SubgroupEmbedding,
    phi: &ClassFunction<S>,
    s: u32,
) -> Result<ClassFunction<S>> {
    let g = gamma1.ambient();
    let si = g.inv(s);
    let classes = stabilizer.table().classes();
    let values = (0..classes.len())
        .map(|c| {
            let y = gamma1.lift(stabilizer.lift(classes.representative(c)));
            let local = gamma2.local_index(g.conjugate(si, y)).expect("s⁻¹ y s lies in Γ₂");
            phi.at(local).clone()
        })
        .collect();
    ClassFunction::new(stabilizer.table(), values)
}

/// Restriction to `Γ₁` of the function induced from `φ` on `Γ₂`, computed
/// directly and as a sum over the double cosets `Γ₁\G/Γ₂`.
pub fn mackey_restriction<S: Scalar>(
    gamma1: &SubgroupEmbedding,
    gamma2: &SubgroupEmbedding,
    phi: &ClassFunction<S>,
) -> Result<MackeyDecomposition<S>> {
    check_same_ambient(gamma1, gamma2)?;
    let g = gamma1.ambient();
    let ctx1 = InducedContext::new(gamma1)?;
    let ctx2 = InducedContext::new(gamma2)?;
    let direct = ctx1.restrict(&ctx2.induce(phi)?)?;

    let mut terms = Vec::new();
    let mut total = ClassFunction::zero(gamma1.table());
    for dc in double_cosets(g, gamma1, gamma2)? {
        let stabilizer = dc.stabilizer.within(gamma1)?;
        let twisted = twist(gamma1, gamma2, &stabilizer, phi, dc.representative)?;
        let induced = InducedContext::new(&stabilizer)?.induce(&twisted)?;
        total = total.add(&induced)?;
        terms.push(MackeyTerm { representative: dc.representative, stabilizer, twisted, induced });
    }
    Ok(MackeyDecomposition { direct, terms, double_coset_sum: total })
}

/// `⟨i ψ, i φ⟩_G` directly and as `Σ_s ⟨r ψ, φ_s⟩_{Γ₂(s)}`.
#[derive(Clone, Debug)]
pub struct InducedInner<S> {
    pub direct: S,
    pub double_coset_sum: S,
    /// `(s, ⟨r_{Γ₁→Γ₂(s)} ψ, φ_s⟩)` per double coset.
    pub terms: Vec<(u32, S)>,
}

pub fn induced_inner<S: Scalar>(
    gamma1: &SubgroupEmbedding,
    psi: &ClassFunction<S>,
    gamma2: &SubgroupEmbedding,
    phi: &ClassFunction<S>,
) -> Result<InducedInner<S>> {
    check_same_ambient(gamma1, gamma2)?;
    let g = gamma1.ambient();
    let direct = InducedContext::new(gamma1)?.induce(psi)?.inner(&InducedContext::new(gamma2)?.induce(phi)?)?;
    let mut terms = Vec::new();
    let mut sum = S::zero();
    for dc in double_cosets(g, gamma1, gamma2)? {
        let stabilizer = dc.stabilizer.within(gamma1)?;
        let twisted = twist(gamma1, gamma2, &stabilizer, phi, dc.representative)?;
        let restricted = InducedContext::new(&stabilizer)?.restrict(psi)?;
        let term = restricted.inner(&twisted)?;
        sum = sum + term.clone();
        terms.push((dc.representative, term));
    }
    Ok(InducedInner { direct, double_coset_sum: sum, terms })
}

/// `(i_{Γ₂→G}(i_{Γ₁→Γ₂} φ), i_{Γ₁→G} φ)` for `Γ₁ ⊂ Γ₂ ⊂ G`.
pub fn induction_in_stages<S: Scalar>(
    gamma1: &SubgroupEmbedding,
    gamma2: &SubgroupEmbedding,
    phi: &ClassFunction<S>,
) -> Result<(ClassFunction<S>, ClassFunction<S>)> {
    check_same_ambient(gamma1, gamma2)?;
    let inner = gamma1.within(gamma2)?;
    let phi_inner = ClassFunction::new(inner.table(), phi.values().to_vec())?;
    let middle = InducedContext::new(&inner)?.induce(&phi_inner)?;
    let middle = ClassFunction::new(gamma2.table(), middle.into_values())?;
    let staged = InducedContext::new(gamma2)?.induce(&middle)?;
    let direct = InducedContext::new(gamma1)?.induce(phi)?;
    Ok((staged, direct))
}

/// `⟨i θ, i θ⟩_G` with its per-double-coset contributions; the induced
/// character is irreducible iff the value is 1.
#[derive(Clone, Debug)]
pub struct IrreducibilityCertificate<S> {
    pub norm: S,
    pub terms: Vec<(u32, S)>,
    pub irreducible: bool,
}

pub fn induced_irreducibility<S: Scalar>(
    subgroup: &SubgroupEmbedding,
    theta: &ClassFunction<S>,
    tol: f64,
) -> Result<IrreducibilityCertificate<S>> {
    let r = induced_inner(subgroup, theta, subgroup, theta)?;
    if !r.direct.is_close(&r.double_coset_sum, tol) {
        return Err(Error::Identity("Mackey irreducibility sum differs from the direct inner product".into()));
    }
    let irreducible = r.double_coset_sum.is_close(&S::one(), tol);
    Ok(IrreducibilityCertificate { norm: r.double_coset_sum, terms: r.terms, irreducible })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::CharacterTable;
    use crate::group::named::{builtin, resolve_subgroup};
    use crate::Cyclo;

    fn setup(g: &str, h: &str) -> (Arc<GroupTable>, SubgroupEmbedding) {
        let g = Arc::new(builtin(g).unwrap());
        let h = resolve_subgroup(&g, h).unwrap();
        (g, h)
    }

    fn ints(g: &Arc<GroupTable>, v: &[i64]) -> ClassFunction<Cyclo> {
        ClassFunction::from_integers(g, v).unwrap()
    }

    /// Class values keyed by a predicate on representatives, for readable expectations.
    fn by_cycle_type(g: &Arc<GroupTable>, f: impl Fn(&[usize]) -> i64) -> ClassFunction<Cyclo> {
        ClassFunction::from_fn(g, |c| {
            let p = g.permutation(g.classes().representative(c)).unwrap();
            let mut lens: Vec<usize> = p.cycles().iter().map(Vec::len).collect();
            lens.sort_unstable();
            Cyclo::from_integer(f(&lens))
        })
    }

    #[test]
    fn restriction_examples() {
        let (g, a3) = setup("S3", "A3");
        let ctx = InducedContext::new(&a3).unwrap();
        let one = ClassFunction::<Cyclo>::one(&g);
        assert_eq!(ctx.restrict(&one).unwrap(), ClassFunction::one(a3.table()));
        let std = by_cycle_type(&g, |t| match t {
            [] => 2,
            [3] => -1,
            _ => 0,
        });
        // A3 classes in local order: identity, then the two 3-cycles
        assert_eq!(ctx.restrict(&std).unwrap(), ints(a3.table(), &[2, -1, -1]));
        let whole = InducedContext::new(&SubgroupEmbedding::whole(&g)).unwrap();
        let std_local = ClassFunction::new(whole.subgroup().table(), std.values().to_vec()).unwrap();
        assert_eq!(whole.restrict(&std).unwrap(), std_local);
    }

    #[test]
    fn induction_examples() {
        let (g, a3) = setup("S3", "A3");
        let ctx = InducedContext::new(&a3).unwrap();
        let induced = ctx.induce(&ClassFunction::<Cyclo>::one(a3.table())).unwrap();
        assert_eq!(induced, by_cycle_type(&g, |t| if t == [2] { 0 } else { 2 }));
        assert_eq!(ctx.induce_averaged(&ClassFunction::<Cyclo>::one(a3.table())).unwrap(), induced);

        let (s4, s3) = setup("S4", "S3");
        let ctx = InducedContext::new(&s3).unwrap();
        let perm = ctx.induce(&ClassFunction::<Cyclo>::one(s3.table())).unwrap();
        // fixed points of each cycle type on 4 points
        let expected = by_cycle_type(&s4, |t| match t {
            [] => 4,
            [2] => 2,
            [3] => 1,
            _ => 0,
        });
        assert_eq!(perm, expected);
        // direct fixed-point count
        for c in 0..s4.classes().len() {
            let p = s4.permutation(s4.classes().representative(c)).unwrap();
            let fixed = (0..4).filter(|&i| p.apply(i) == i).count() as i64;
            assert_eq!(perm.value(c), &Cyclo::from_integer(fixed));
        }
        let whole = SubgroupEmbedding::whole(&s4);
        let ctx = InducedContext::new(&whole).unwrap();
        assert_eq!(ctx.induce(&ClassFunction::<Cyclo>::one(whole.table())).unwrap(), ClassFunction::one(&s4));
    }

    #[test]
    fn induced_rep_character_matches_induce() {
        let (g, a3) = setup("S3", "A3");
        let ctx = InducedContext::new(&a3).unwrap();
        let t = CharacterTable::compute(a3.table()).unwrap();
        let omega = t.character(1);
        let a = ctx.induced_rep_character(&omega).unwrap();
        assert_eq!(a, ctx.induce(&omega).unwrap());
        let std = by_cycle_type(&g, |t| match t {
            [] => 2,
            [3] => -1,
            _ => 0,
        });
        assert_eq!(a, std);
        let triv = ctx.induced_rep_character(&ClassFunction::<Cyclo>::one(a3.table())).unwrap();
        let transposition_class =
            g.classes().class_of(g.index_of(&crate::Permutation::parse_cycles("(0 1)", 3).unwrap()).unwrap());
        assert!(triv.value(transposition_class).is_zero());
        assert_eq!(triv.value(0), &Cyclo::from_integer(2));
    }

    #[test]
    fn frobenius_for_point_stabilizer() {
        let (g, s3) = setup("S4", "S3");
        let ctx = InducedContext::new(&s3).unwrap();
        let tg = CharacterTable::compute(&g).unwrap();
        let th = CharacterTable::compute(s3.table()).unwrap();
        for a in 0..th.len() {
            for b in 0..tg.len() {
                let (l, r) = ctx.frobenius_check(&th.character(a), &tg.character(b)).unwrap();
                assert_eq!(l, r);
                assert!(l.to_i64().is_some());
            }
        }
    }

    #[test]
    fn mackey_examples() {
        let (_, a3) = setup("S3", "A3");
        let t = CharacterTable::compute(a3.table()).unwrap();
        let m = mackey_restriction(&a3, &a3, &t.character(1)).unwrap();
        assert_eq!(m.terms.len(), 2);
        assert!(m.agrees(0.0));

        let (g, s3) = setup("S4", "S3");
        let m = mackey_restriction(&s3, &s3, &ClassFunction::<Cyclo>::one(s3.table())).unwrap();
        assert_eq!(m.terms.len(), 2);
        assert_eq!(m.direct, m.double_coset_sum);

        let whole = SubgroupEmbedding::whole(&g);
        let m = mackey_restriction(&s3, &whole, &ClassFunction::<Cyclo>::one(whole.table())).unwrap();
        assert_eq!(m.terms.len(), 1);
        assert!(m.agrees(0.0));
    }

    #[test]
    fn induced_inner_counts_double_cosets() {
        let (g, s3) = setup("S4", "S3");
        let one = ClassFunction::<Cyclo>::one(s3.table());
        let r = induced_inner(&s3, &one, &s3, &one).unwrap();
        assert_eq!(r.direct, Cyclo::from_integer(2));
        assert_eq!(r.double_coset_sum, Cyclo::from_integer(2));
        let whole = SubgroupEmbedding::whole(&g);
        let one = ClassFunction::<Cyclo>::one(whole.table());
        assert_eq!(induced_inner(&whole, &one, &whole, &one).unwrap().direct, Cyclo::one());
    }

    #[test]
    fn stages() {
        let (g, a3) = setup("S3", "A3");
        let trivial = SubgroupEmbedding::trivial(&g);
        let phi = ClassFunction::<Cyclo>::from_integers(trivial.table(), &[5]).unwrap();
        let (a, b) = induction_in_stages(&trivial, &a3, &phi).unwrap();
        assert_eq!(a, b);
        let (s4, s3) = setup("S4", "S3");
        let z2 = resolve_subgroup(&s4, "Z/2").unwrap();
        let sign = ClassFunction::<Cyclo>::from_integers(z2.table(), &[1, -1]).unwrap();
        let (a, b) = induction_in_stages(&z2, &s3, &sign).unwrap();
        assert_eq!(a, b);
        let (a, b) = induction_in_stages(&s3, &s3, &ClassFunction::<Cyclo>::one(s3.table())).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn irreducibility_examples() {
        let (g, a3) = setup("S3", "A3");
        let t = CharacterTable::compute(a3.table()).unwrap();
        let c = induced_irreducibility(&a3, &t.character(1), 0.0).unwrap();
        assert!(c.irreducible);
        assert_eq!(c.norm, Cyclo::one());
        let c = induced_irreducibility(&a3, &ClassFunction::<Cyclo>::one(a3.table()), 0.0).unwrap();
        assert!(!c.irreducible);
        assert!(c.norm.to_i64().unwrap() >= 2);
        let whole = SubgroupEmbedding::whole(&g);
        let c = induced_irreducibility(&whole, &ClassFunction::<Cyclo>::one(whole.table()), 0.0).unwrap();
        assert!(c.irreducible);
    }
}
