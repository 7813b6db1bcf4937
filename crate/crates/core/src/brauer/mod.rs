//! Subgroup catalogs, elementary and semielementary subgroups, the integer
//! decomposition of `1_G` and Brauer's characterization of virtual characters.

mod hnf;

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::algebra::ClassFunction;
use crate::chartable::modp::{is_prime, prime_factors};
use crate::chartable::CharacterTable;
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::{GroupTable, SubgroupEmbedding};
use crate::induction::InducedContext;

/// Default largest group order for which all subgroups are enumerated.
pub const DEFAULT_CATALOG_CAP: usize = 512;

/// Structural flags of one conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: SubgroupEmbedding,
    /// Number of conjugates.
    pub class_size: usize,
    pub is_cyclic: bool,
    /// `Some(p)` if the order is a power of the prime `p` (and > 1).
    pub p_group: Option<u64>,
    /// Primes `p | |G|` for which the subgroup is p-elementary.
    pub elementary_for: Vec<u64>,
    /// Primes `p | |G|` for which the subgroup is p-semielementary.
    pub semielementary_for: Vec<u64>,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.order()
    }

    pub fn is_elementary(&self) -> bool {
        !self.elementary_for.is_empty()
    }

    pub fn is_semielementary(&self) -> bool {
        !self.semielementary_for.is_empty()
    }
}

/// All subgroups of a group up to conjugacy, ordered by order then by members.
#[derive(Clone, Debug)]
pub struct SubgroupCatalog {
    group: Arc<GroupTable>,
    primes: Vec<u64>,
    classes: Vec<SubgroupClass>,
    /// Every subgroup (not only representatives), with its class index.
    all: Vec<(Vec<u32>, usize)>,
}

impl SubgroupCatalog {
    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    /// Primes dividing `|G|`.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn total_subgroups(&self) -> usize {
        self.all.len()
    }

    pub fn semielementary(&self) -> impl Iterator<Item = (usize, &SubgroupClass)> {
        self.classes.iter().enumerate().filter(|(_, c)| c.is_semielementary())
    }

    pub fn elementary(&self) -> impl Iterator<Item = (usize, &SubgroupClass)> {
        self.classes.iter().enumerate().filter(|(_, c)| c.is_elementary())
    }

    /// Flags are inherited by subgroups, and p-elementary implies p-semielementary.
    pub fn hereditary(&self) -> bool {
        let consistent = self.classes.iter().all(|c| c.elementary_for.iter().all(|p| c.semielementary_for.contains(p)));
        consistent
            && self.classes.iter().all(|k| {
                let big = k.representative.members();
                self.all.iter().filter(|(m, _)| m.iter().all(|x| big.binary_search(x).is_ok())).all(|(_, h)| {
                    let h = &self.classes[*h];
                    k.elementary_for.iter().all(|p| h.elementary_for.contains(p))
                        && k.semielementary_for.iter().all(|p| h.semielementary_for.contains(p))
                })
            })
    }
}

struct Bits(Vec<u64>);

fn to_bits(members: &[u32], n: usize) -> Vec<u64> {
    let mut b = vec![0u64; n.div_ceil(64)];
    for &m in members {
        b[m as usize / 64] |= 1 << (m % 64);
    }
    b
}

impl Bits {
    fn contains(&self, x: u32) -> bool {
        self.0[x as usize / 64] >> (x % 64) & 1 == 1
    }
}

fn closure(g: &GroupTable, gens: &[u32]) -> Vec<u32> {
    let mut inside = vec![false; g.order()];
    inside[0] = true;
    let mut members = vec![0u32];
    let mut head = 0;
    while head < members.len() {
        let x = members[head];
        for &s in gens {
            let y = g.mul(x, s);
            if !inside[y as usize] {
                inside[y as usize] = true;
                members.push(y);
            }
        }
        head += 1;
    }
    members.sort_unstable();
    members
}

/// Enumerates every subgroup by joining cyclic subgroups, then groups them by conjugacy.
pub fn subgroup_catalog(g: &Arc<GroupTable>, cap: usize) -> Result<SubgroupCatalog> {
    if g.order() > cap {
        return Err(Error::SizeCap { cap });
    }
    let n = g.order();
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut subgroups: Vec<(Vec<u32>, Vec<u32>)> = Vec::new(); // (members, generators)

    let mut cyclic_gens: Vec<u32> = Vec::new();
    for x in g.elements() {
        let m = closure(g, &[x]);
        let key = to_bits(&m, n);
        if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
            e.insert(subgroups.len());
            subgroups.push((m, if x == 0 { vec![] } else { vec![x] }));
            cyclic_gens.push(x);
        }
    }
    let mut head = 0;
    while head < subgroups.len() {
        let (members, gens) = subgroups[head].clone();
        let bits = Bits(to_bits(&members, n));
        for &c in &cyclic_gens {
            if bits.contains(c) {
                continue;
            }
            let mut new_gens = gens.clone();
            new_gens.push(c);
            let m = closure(g, &new_gens);
            let key = to_bits(&m, n);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                e.insert(subgroups.len());
                subgroups.push((m, new_gens));
            }
        }
        head += 1;
    }

    // conjugacy classes of subgroups
    let mut class_of = vec![usize::MAX; subgroups.len()];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..subgroups.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let cls = groups.len();
        let mut orbit = Vec::new();
        for y in g.elements() {
            let mut conj: Vec<u32> = subgroups[i].0.iter().map(|&x| g.conjugate(y, x)).collect();
            conj.sort_unstable();
            let j = seen[&to_bits(&conj, n)];
            if class_of[j] == usize::MAX {
                class_of[j] = cls;
                orbit.push(j);
            }
        }
        groups.push(orbit);
    }
    let mut order: Vec<usize> = (0..groups.len()).collect();
    let rep_of = |c: usize| groups[c].iter().copied().min_by(|&a, &b| subgroups[a].0.cmp(&subgroups[b].0)).unwrap();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (rep_of(a), rep_of(b));
        subgroups[ra].0.len().cmp(&subgroups[rb].0.len()).then_with(|| subgroups[ra].0.cmp(&subgroups[rb].0))
    });
    let mut renumber = vec![0; groups.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }

    let primes = prime_factors(n as u64);
    let classes = order
        .iter()
        .map(|&c| {
            let rep = SubgroupEmbedding::from_sorted_closed(g, subgroups[rep_of(c)].0.clone());
            classify(rep, groups[c].len(), &primes)
        })
        .collect();
    let all = subgroups.into_iter().enumerate().map(|(i, (m, _))| (m, renumber[class_of[i]])).collect();
    Ok(SubgroupCatalog { group: g.clone(), primes, classes, all })
}

fn p_part(n: u64, p: u64) -> u64 {
    let mut q = 1;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        q *= p;
    }
    q
}

fn classify(rep: SubgroupEmbedding, class_size: usize, primes: &[u64]) -> SubgroupClass {
    let h = rep.table().clone();
    let order = h.order() as u64;
    let is_cyclic = h.elements().any(|x| h.element_order(x) as u64 == order);
    let p_group = prime_factors(order).first().copied().filter(|&p| p_part(order, p) == order);
    let normal_cyclic = |c: u32| {
        let members = closure(&h, &[c]);
        h.elements().all(|y| members.iter().all(|&x| members.binary_search(&h.conjugate(y, x)).is_ok()))
    };
    let center = h.center();
    let mut elementary_for = Vec::new();
    let mut semielementary_for = Vec::new();
    for &p in primes {
        let m = order / p_part(order, p);
        if center.iter().any(|&z| h.element_order(z) as u64 == m) {
            elementary_for.push(p);
        }
        if h.elements().any(|c| h.element_order(c) as u64 == m && normal_cyclic(c)) {
            semielementary_for.push(p);
        }
    }
    SubgroupClass { representative: rep, class_size, is_cyclic, p_group, elementary_for, semielementary_for }
}

/// The subgroup catalog restricted to semielementary classes, with the size cap applied.
pub fn enumerate_semielementary(g: &Arc<GroupTable>, cap: usize) -> Result<Vec<SubgroupClass>> {
    Ok(subgroup_catalog(g, cap)?.semielementary().map(|(_, c)| c.clone()).collect())
}

/// A Sylow p-subgroup, grown one factor of `p` at a time inside normalizers.
pub fn sylow_subgroup(g: &Arc<GroupTable>, p: u64) -> Result<SubgroupEmbedding> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let target = p_part(g.order() as u64, p) as usize;
    let mut members = vec![0u32];
    let mut gens: Vec<u32> = Vec::new();
    while members.len() < target {
        let inside = |x: u32| members.binary_search(&x).is_ok();
        let next = g
            .elements()
            .find(|&x| !inside(x) && inside(g.pow(x, p)) && members.iter().all(|&m| inside(g.conjugate(x, m))));
        let x = next.ok_or_else(|| Error::Computation("Sylow search stalled".into()))?;
        gens.push(x);
        members = closure(g, &gens);
    }
    Ok(SubgroupEmbedding::from_sorted_closed(g, members))
}

/// `Σ_H a_H i_{H→G} 1_H = 1_G` over conjugacy classes of semielementary subgroups.
#[derive(Clone, Debug)]
pub struct IntegerDecomposition {
    /// `(catalog class index, a_H)` for the nonzero coefficients.
    pub coefficients: Vec<(usize, i64)>,
    /// `1_G − Σ_H a_H i 1_H` re-evaluated through induction; all zero on success.
    pub residual: Vec<Cyclo>,
}

impl IntegerDecomposition {
    pub fn residual_is_zero(&self) -> bool {
        self.residual.iter().all(Cyclo::is_zero)
    }
}

fn big_to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64().ok_or_else(|| Error::Computation(format!("coefficient {v} overflows i64")))
}

/// Integer coordinates of algebraic-integer class functions in `Q(ζ_e)`.
fn coordinate_rows(columns: &[Vec<Cyclo>], e: u32) -> Result<Vec<Vec<BigInt>>> {
    let r = columns.first().map_or(0, Vec::len);
    let mut rows = Vec::new();
    for k in 0..r {
        let coords: Vec<Vec<num_rational::BigRational>> = columns.iter().map(|c| c[k].coords_in(e)).collect();
        for t in 0..coords.first().map_or(0, Vec::len) {
            rows.push(
                coords
                    .iter()
                    .map(|c| {
                        if c[t].is_integer() {
                            Ok(c[t].to_integer())
                        } else {
                            Err(Error::Computation("non-integral character coordinate".into()))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
        }
    }
    Ok(rows)
}

/// Integer combination of `columns` equal to `target`, shortened in ℓ1.
fn integer_combination(columns: &[Vec<Cyclo>], target: &[Cyclo], e: u32) -> Result<Option<Vec<i64>>> {
    let a = coordinate_rows(columns, e)?;
    let b = coordinate_rows(&[target.to_vec()], e)?.into_iter().map(|row| row[0].clone()).collect::<Vec<_>>();
    let Some((x, kernel)) = hnf::solve_integer(&a, &b, columns.len()) else {
        return Ok(None);
    };
    let x = hnf::reduce_l1(x, &kernel);
    Ok(Some(x.iter().map(big_to_i64).collect::<Result<_>>()?))
}

fn induced_unit(class: &SubgroupClass) -> Result<ClassFunction<Cyclo>> {
    let h = &class.representative;
    InducedContext::new(h)?.induce(&ClassFunction::one(h.table()))
}

/// Solves `1_G = Σ a_H i_{H→G} 1_H` over the integers, `H` running over the
/// semielementary classes of the catalog.
pub fn decompose_unit(catalog: &SubgroupCatalog) -> Result<IntegerDecomposition> {
    let g = catalog.group();
    let se: Vec<(usize, &SubgroupClass)> = catalog.semielementary().collect();
    let one = ClassFunction::<Cyclo>::one(g);
    let coefficients = if g.order() == 1 {
        vec![(0, 1)]
    } else if let Some((idx, _)) = se.iter().find(|(_, c)| c.order() == g.order()) {
        vec![(*idx, 1)]
    } else {
        let columns: Vec<Vec<Cyclo>> =
            se.iter().map(|(_, c)| induced_unit(c).map(ClassFunction::into_values)).collect::<Result<_>>()?;
        let x = integer_combination(&columns, one.values(), 1)?.ok_or_else(|| {
            Error::Computation(format!(
                "no integer decomposition of 1_G over {} semielementary classes; induced units: {columns:?}",
                se.len()
            ))
        })?;
        se.iter().zip(x).filter(|(_, a)| *a != 0).map(|((i, _), a)| (*i, a)).collect()
    };
    let mut total = ClassFunction::<Cyclo>::zero(g);
    for &(i, a) in &coefficients {
        total = total.add(&induced_unit(&catalog.classes()[i])?.scale(&Cyclo::from_integer(a)))?;
    }
    let residual = one.sub(&total)?.into_values();
    Ok(IntegerDecomposition { coefficients, residual })
}

/// Outcome of the two virtual-character tests.
#[derive(Clone, Debug)]
pub struct VirtualCharacterVerdict {
    /// `⟨f, χ_Π⟩` for every irreducible of `G`.
    pub multiplicities: Vec<Cyclo>,
    /// All multiplicities are integers.
    pub global: bool,
    /// Every restriction to an elementary subgroup is a virtual character there.
    pub by_restriction: bool,
    /// Elementary catalog classes whose test failed.
    pub failing_subgroups: Vec<usize>,
    /// All multiplicities are nonnegative integers.
    pub is_character: bool,
}

fn is_integer(c: &Cyclo) -> bool {
    c.to_integer().is_some()
}

/// Brauer's characterization, answered globally and through elementary subgroups.
///
/// A disagreement between the two answers is reported as an identity failure.
pub fn virtual_character_test(
    catalog: &SubgroupCatalog,
    table: &CharacterTable,
    f: &ClassFunction<Cyclo>,
) -> Result<VirtualCharacterVerdict> {
    let multiplicities = table.decompose(f)?;
    let global = multiplicities.iter().all(is_integer);
    let is_character = global && multiplicities.iter().all(|m| m.to_i64().is_some_and(|v| v >= 0));
    let mut failing = Vec::new();
    for (i, class) in catalog.elementary() {
        let h = &class.representative;
        let restricted = InducedContext::new(h)?.restrict(f)?;
        let th = CharacterTable::compute(h.table())?;
        if !th.decompose(&restricted)?.iter().all(is_integer) {
            failing.push(i);
        }
    }
    let by_restriction = failing.is_empty();
    if global != by_restriction {
        return Err(Error::Identity(format!(
            "virtual-character tests disagree: global {global}, elementary restrictions {by_restriction}"
        )));
    }
    Ok(VirtualCharacterVerdict { multiplicities, global, by_restriction, failing_subgroups: failing, is_character })
}

/// Result of the product-expansion argument for `1 ∈ R`.
#[derive(Clone, Debug)]
pub struct UnitCriterion {
    /// gcd of the values of the generators at each class.
    pub class_gcds: Vec<i64>,
    /// `1 − Π_x (1 − f_x)`, present when every gcd is 1.
    pub witness: Option<Vec<i64>>,
    pub contains_one: bool,
}

/// Decides whether the ring generated by integer-valued class functions contains `1_G`.
///
/// For each class `x` a Bezout combination `f_x` of the generators with
/// `f_x(x) = 1` exists iff the values at `x` have gcd 1; then
/// `1 − Π_x (1 − f_x)` lies in the ring (it has no constant term) and equals 1.
pub fn unit_criterion_check(generators: &[ClassFunction<Cyclo>]) -> Result<UnitCriterion> {
    let Some(first) = generators.first() else {
        return Ok(UnitCriterion { class_gcds: Vec::new(), witness: None, contains_one: false });
    };
    let r = first.values().len();
    let values: Vec<Vec<i64>> = generators
        .iter()
        .map(|f| f.to_integers().ok_or_else(|| Error::Input("generators must be integer valued".into())))
        .collect::<Result<_>>()?;
    let mut class_gcds = Vec::with_capacity(r);
    let mut fx: Vec<Vec<i64>> = Vec::with_capacity(r);
    for x in 0..r {
        // running Bezout combination: coeffs · values[.][x] = gcd
        let mut gcd = 0i64;
        let mut coeffs = vec![0i64; values.len()];
        for (j, v) in values.iter().enumerate() {
            let e = gcd.extended_gcd(&v[x]);
            for c in coeffs.iter_mut() {
                *c *= e.x;
            }
            coeffs[j] += e.y;
            gcd = e.gcd;
        }
        class_gcds.push(gcd.abs());
        let sign = if gcd < 0 { -1 } else { 1 };
        fx.push((0..r).map(|k| sign * values.iter().zip(&coeffs).map(|(v, c)| v[k] * c).sum::<i64>()).collect());
    }
    if class_gcds.iter().any(|&d| d != 1) {
        return Ok(UnitCriterion { class_gcds, witness: None, contains_one: false });
    }
    let mut product = vec![BigInt::one(); r];
    for f in &fx {
        for (p, v) in product.iter_mut().zip(f) {
            *p *= BigInt::from(1 - v);
        }
    }
    let witness: Vec<i64> = product.iter().map(|p| big_to_i64(&(BigInt::one() - p))).collect::<Result<_>>()?;
    let contains_one = witness.iter().all(|&w| w == 1);
    Ok(UnitCriterion { class_gcds, witness: Some(witness), contains_one })
}

/// The induced units `i_{H→G} 1_H` over the semielementary classes.
pub fn induced_units(catalog: &SubgroupCatalog) -> Result<Vec<ClassFunction<Cyclo>>> {
    catalog.semielementary().map(|(_, c)| induced_unit(c)).collect()
}

/// Expression of every irreducible character as an integer combination of
/// characters induced from linear characters of elementary subgroups.
#[derive(Clone, Debug)]
pub struct InductionPrinciple {
    /// `(catalog class index, row index of the linear character in that subgroup's table)`.
    pub sources: Vec<(usize, usize)>,
    /// One coefficient vector over `sources` per irreducible of `G`.
    pub coefficients: Vec<Vec<i64>>,
    /// Every combination reproduces its character exactly.
    pub exact: bool,
}

pub fn induction_principle(catalog: &SubgroupCatalog, table: &CharacterTable) -> Result<InductionPrinciple> {
    let g = catalog.group();
    let e = g.exponent();
    let mut sources = Vec::new();
    let mut columns: Vec<ClassFunction<Cyclo>> = Vec::new();
    for (i, class) in catalog.elementary() {
        let h = &class.representative;
        let ctx = InducedContext::new(h)?;
        let th = CharacterTable::compute(h.table())?;
        for pi in (0..th.len()).filter(|&pi| th.degree(pi) == 1) {
            sources.push((i, pi));
            columns.push(ctx.induce(&th.character(pi))?);
        }
    }
    let raw: Vec<Vec<Cyclo>> = columns.iter().map(|c| c.values().to_vec()).collect();
    let mut coefficients = Vec::new();
    let mut exact = true;
    for pi in 0..table.len() {
        let x = integer_combination(&raw, table.row(pi), e)?
            .ok_or_else(|| Error::Computation(format!("character {pi} is not an integer combination")))?;
        let combo = columns
            .iter()
            .zip(&x)
            .try_fold(ClassFunction::<Cyclo>::zero(g), |acc, (c, &a)| acc.add(&c.scale(&Cyclo::from_integer(a))))?;
        exact &= combo == table.character(pi);
        coefficients.push(x);
    }
    Ok(InductionPrinciple { sources, coefficients, exact })
}
