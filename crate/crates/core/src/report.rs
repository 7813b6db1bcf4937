//! Serializable reports for every command, `verify_all`, and rendering to
//! JSON, CSV or aligned text. Struct field order is the output key order.

use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::algebra::{ClassFunction, GroupFunction};
use crate::brauer::{self, SubgroupCatalog};
use crate::chartable::CharacterTable;
use crate::config::{Format, RunConfig};
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::{double_cosets, GroupTable, SubgroupEmbedding};
use crate::induction::{induced_inner, induction_in_stages, mackey_restriction, InducedContext};
use crate::scalar::Scalar;
use crate::trace;
use crate::weyl::{self, Weight};

/// Largest random integer value used in randomized checks.
pub const RANDOM_BOUND: i64 = 5;

#[derive(Clone, Debug, Serialize)]
pub struct ValueOut {
    pub exact: String,
    pub re: f64,
    pub im: f64,
}

impl ValueOut {
    pub fn new(c: &Cyclo, e: u32) -> Self {
        let z = c.to_c64();
        ValueOut { exact: c.to_string_in(e.max(1)), re: clean(z.re), im: clean(z.im) }
    }
}

/// Rounds float noise so that reports are stable and readable.
fn clean(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn exact(c: &Cyclo, e: u32) -> String {
    c.to_string_in(e.max(1))
}

fn group_name(g: &GroupTable) -> String {
    g.name().map_or_else(|| format!("group of order {}", g.order()), str::to_string)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassOut {
    pub index: usize,
    pub size: usize,
    pub centralizer_order: usize,
    pub element_order: u32,
    pub representative: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterOut {
    pub index: usize,
    pub degree: u64,
    pub dual: usize,
    pub values: Vec<ValueOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableChecksOut {
    pub square: bool,
    pub sum_of_squares: bool,
    pub first_orthogonality: bool,
    pub second_orthogonality: bool,
    pub degrees_divide_order: bool,
    pub dual_involution: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartableReport {
    pub group: String,
    pub order: usize,
    pub exponent: u32,
    pub prime: u64,
    pub root_of_unity: String,
    pub degrees: Vec<u64>,
    pub classes: Vec<ClassOut>,
    pub characters: Vec<CharacterOut>,
    pub checks: TableChecksOut,
}

fn class_data(g: &GroupTable) -> Vec<ClassOut> {
    let classes = g.classes();
    (0..classes.len())
        .map(|i| {
            let r = classes.representative(i);
            ClassOut {
                index: i,
                size: classes.size(i),
                centralizer_order: classes.centralizer_order(i),
                element_order: g.element_order(r),
                representative: g.label(r),
            }
        })
        .collect()
}

pub fn chartable_report(table: &CharacterTable) -> ChartableReport {
    let g = table.group();
    let e = g.exponent();
    let c = table.checks();
    ChartableReport {
        group: group_name(g),
        order: g.order(),
        exponent: e,
        prime: table.prime(),
        root_of_unity: format!("z = exp(2 pi i / {e})"),
        degrees: table.degrees().to_vec(),
        classes: class_data(g),
        characters: (0..table.len())
            .map(|pi| CharacterOut {
                index: pi,
                degree: table.degree(pi),
                dual: table.dual_of(pi),
                values: table.row(pi).iter().map(|v| ValueOut::new(v, e)).collect(),
            })
            .collect(),
        checks: TableChecksOut {
            square: c.square,
            sum_of_squares: c.sum_of_squares,
            first_orthogonality: c.first_orthogonality,
            second_orthogonality: c.second_orthogonality,
            degrees_divide_order: c.degrees_divide_order,
            dual_involution: c.dual_involution,
        },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusOut {
    pub irreducible: usize,
    pub induced_side: String,
    pub restricted_side: String,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InduceReport {
    pub group: String,
    pub subgroup_order: usize,
    pub index: usize,
    pub character: usize,
    pub source_values: Vec<ValueOut>,
    pub induced_values: Vec<ValueOut>,
    pub averaged_formula_agrees: bool,
    pub decomposition: Vec<String>,
    pub frobenius: Vec<FrobeniusOut>,
    pub frobenius_holds: bool,
}

pub fn induce_report(table: &CharacterTable, gamma: &SubgroupEmbedding, character: usize) -> Result<InduceReport> {
    let g = table.group();
    let e = g.exponent();
    let sub_table = CharacterTable::compute(gamma.table())?;
    if character >= sub_table.len() {
        return Err(Error::OutOfRange { index: character, len: sub_table.len() });
    }
    let ctx = InducedContext::new(gamma)?;
    let phi = sub_table.character(character);
    let induced = ctx.induce(&phi)?;
    let averaged = ctx.induce_averaged(&phi)?;
    let decomposition = table.decompose(&induced)?.iter().map(|m| exact(m, e)).collect();
    let frobenius: Vec<FrobeniusOut> = (0..table.len())
        .map(|pi| {
            let (l, r) = ctx.frobenius_check(&phi, &table.character(pi))?;
            Ok(FrobeniusOut {
                irreducible: pi,
                induced_side: exact(&l, e),
                restricted_side: exact(&r, e),
                equal: l == r,
            })
        })
        .collect::<Result<_>>()?;
    Ok(InduceReport {
        group: group_name(g),
        subgroup_order: gamma.order(),
        index: gamma.index(),
        character,
        source_values: phi.values().iter().map(|v| ValueOut::new(v, gamma.table().exponent())).collect(),
        induced_values: induced.values().iter().map(|v| ValueOut::new(v, e)).collect(),
        averaged_formula_agrees: averaged == induced,
        decomposition,
        frobenius_holds: frobenius.iter().all(|f| f.equal),
        frobenius,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupClassOut {
    pub index: usize,
    pub order: usize,
    pub class_size: usize,
    pub cyclic: bool,
    pub p_group: Option<u64>,
    pub elementary_for: Vec<u64>,
    pub semielementary_for: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientOut {
    pub class: usize,
    pub order: usize,
    pub coefficient: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VirtualRowOut {
    pub character: usize,
    pub global: bool,
    pub by_restriction: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BrauerReport {
    pub group: String,
    pub order: usize,
    pub primes: Vec<u64>,
    pub total_subgroups: usize,
    pub subgroup_classes: Vec<SubgroupClassOut>,
    pub hereditary: bool,
    pub decomposition: Vec<CoefficientOut>,
    pub residual: Vec<String>,
    pub residual_zero: bool,
    pub unit_criterion_class_gcds: Vec<i64>,
    pub unit_criterion_contains_one: bool,
    pub virtual_character_rows: Vec<VirtualRowOut>,
}

pub fn brauer_report(table: &CharacterTable, cap: usize) -> Result<BrauerReport> {
    let g = table.group();
    let e = g.exponent();
    let catalog = brauer::subgroup_catalog(g, cap)?;
    let d = brauer::decompose_unit(&catalog)?;
    let unit = brauer::unit_criterion_check(&brauer::induced_units(&catalog)?)?;
    let rows = (0..table.len())
        .map(|pi| {
            let v = brauer::virtual_character_test(&catalog, table, &table.character(pi))?;
            Ok(VirtualRowOut { character: pi, global: v.global, by_restriction: v.by_restriction })
        })
        .collect::<Result<_>>()?;
    Ok(BrauerReport {
        group: group_name(g),
        order: g.order(),
        primes: catalog.primes().to_vec(),
        total_subgroups: catalog.total_subgroups(),
        subgroup_classes: catalog_classes(&catalog),
        hereditary: catalog.hereditary(),
        decomposition: d
            .coefficients
            .iter()
            .map(|&(i, a)| CoefficientOut { class: i, order: catalog.classes()[i].order(), coefficient: a })
            .collect(),
        residual_zero: d.residual_is_zero(),
        residual: d.residual.iter().map(|v| exact(v, e)).collect(),
        unit_criterion_class_gcds: unit.class_gcds,
        unit_criterion_contains_one: unit.contains_one,
        virtual_character_rows: rows,
    })
}

fn catalog_classes(catalog: &SubgroupCatalog) -> Vec<SubgroupClassOut> {
    catalog
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| SubgroupClassOut {
            index: i,
            order: c.order(),
            class_size: c.class_size,
            cyclic: c.is_cyclic,
            p_group: c.p_group,
            elementary_for: c.elementary_for.clone(),
            semielementary_for: c.semielementary_for.clone(),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceOut {
    pub trial: usize,
    pub spectral_side: String,
    pub geometric_side: String,
    pub third_route: String,
    pub spectral_terms: Vec<String>,
    pub geometric_terms: Vec<String>,
    pub abs_error: f64,
    pub agrees: bool,
}

fn trace_out<S: Scalar>(
    trial: usize,
    r: &trace::TraceReport<S>,
    e: u32,
    tol: f64,
    show: impl Fn(&S, u32) -> String,
) -> TraceOut {
    TraceOut {
        trial,
        spectral_side: show(&r.spectral_side, e),
        geometric_side: show(&r.geometric_side, e),
        third_route: show(&r.third_route, e),
        spectral_terms: r.spectral_terms.iter().map(|v| show(v, e)).collect(),
        geometric_terms: r.geometric_terms.iter().map(|v| show(v, e)).collect(),
        abs_error: r.abs_error,
        agrees: r.agrees(tol),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralOut {
    pub center_order: usize,
    pub geometric_subsum: String,
    pub closed_form: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceCommandReport {
    pub group: String,
    pub subgroup_order: usize,
    pub seed: u64,
    pub trials: usize,
    pub multiplicities: Vec<u64>,
    pub dimension_count: u64,
    pub index: usize,
    pub local: Vec<TraceOut>,
    pub global: Vec<TraceOut>,
    pub central_contribution: CentralOut,
    pub max_abs_error: f64,
    pub all_agree: bool,
}

pub fn trace_report(
    table: &CharacterTable,
    gamma: &SubgroupEmbedding,
    config: &RunConfig,
) -> Result<TraceCommandReport> {
    let g = table.group();
    let e = g.exponent();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut local = Vec::new();
    let mut global = Vec::new();
    let mut first = None;
    for trial in 0..config.trials {
        let f1 = GroupFunction::random_integers(g, &mut rng, RANDOM_BOUND);
        let f2 = GroupFunction::random_integers(g, &mut rng, RANDOM_BOUND);
        local.push(trace_out(trial, &trace::local_trace_formula(table, &f1, &f2)?, e, 0.0, exact));
        global.push(trace_out(trial, &trace::global_trace_formula(table, &f1, gamma)?, e, 0.0, exact));
        first.get_or_insert(f1);
    }
    let f = first.expect("trials is positive");
    let c = trace::central_contribution(&f, gamma)?;
    let multiplicities =
        (0..table.len()).map(|pi| trace::multiplicity(table, pi, gamma)).collect::<Result<Vec<_>>>()?;
    let dimension_count = multiplicities.iter().zip(table.degrees()).map(|(m, d)| m * d).sum();
    let max_abs_error = local.iter().chain(&global).map(|t| t.abs_error).fold(0.0, f64::max);
    let all_agree = local.iter().chain(&global).all(|t| t.agrees);
    Ok(TraceCommandReport {
        group: group_name(g),
        subgroup_order: gamma.order(),
        seed: config.seed,
        trials: config.trials,
        multiplicities,
        dimension_count,
        index: gamma.index(),
        local,
        global,
        central_contribution: CentralOut {
            center_order: c.center.len(),
            geometric_subsum: exact(&c.geometric_subsum, e),
            closed_form: exact(&c.closed_form, e),
        },
        max_abs_error,
        all_agree,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PoissonTrialOut {
    pub trial: usize,
    pub dual_side: String,
    pub lattice_side: String,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PoissonCommandReport {
    pub group: String,
    pub subgroup_order: usize,
    pub annihilator: Vec<usize>,
    pub seed: u64,
    pub trials: Vec<PoissonTrialOut>,
    pub all_agree: bool,
}

pub fn poisson_report(
    table: &CharacterTable,
    gamma: &SubgroupEmbedding,
    config: &RunConfig,
) -> Result<PoissonCommandReport> {
    let g = table.group();
    let e = g.exponent();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut trials = Vec::new();
    let mut annihilator = Vec::new();
    for trial in 0..config.trials {
        let f = GroupFunction::random_integers(g, &mut rng, RANDOM_BOUND);
        let r = trace::poisson_finite(table, &f, gamma)?;
        trials.push(PoissonTrialOut {
            trial,
            dual_side: exact(&r.dual_side, e),
            lattice_side: exact(&r.lattice_side, e),
            agrees: r.agrees(0.0),
        });
        annihilator = r.annihilator;
    }
    Ok(PoissonCommandReport {
        group: group_name(g),
        subgroup_order: gamma.order(),
        annihilator,
        seed: config.seed,
        all_agree: trials.iter().all(|t| t.agrees),
        trials,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaReport {
    pub a: f64,
    #[serde(rename = "N")]
    pub n: u32,
    pub lhs: f64,
    pub rhs: f64,
    pub difference: f64,
    pub tail_bound: f64,
    pub tail_bound_formula: String,
    pub within_bound: bool,
    pub theta_inverse_a: f64,
    pub sqrt_a_theta_a: f64,
    pub inversion_difference: f64,
}

pub fn theta_report(a: f64, n: u32) -> Result<ThetaReport> {
    let d = trace::poisson_real_demo(a, n)?;
    let inv = trace::theta(1.0 / a, n);
    let scaled = a.sqrt() * trace::theta(a, n);
    Ok(ThetaReport {
        a,
        n,
        lhs: d.lhs,
        rhs: d.rhs,
        difference: d.difference,
        tail_bound: d.tail_bound,
        tail_bound_formula: "2exp(-pi a N^2)/(1-exp(-pi a (2N+1))) + a^(-1/2) 2exp(-pi N^2/a)/(1-exp(-pi (2N+1)/a))"
            .into(),
        within_bound: d.within_bound(),
        theta_inverse_a: inv,
        sqrt_a_theta_a: scaled,
        inversion_difference: (inv - scaled).abs(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityOut {
    pub lambda1: Vec<i64>,
    pub lambda2: Vec<i64>,
    pub re: f64,
    pub im: f64,
    pub expected: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylReport {
    pub cartan_type: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub weyl_order: usize,
    pub positive_roots: Vec<Vec<i64>>,
    pub rho_half_sum_root_coords: Vec<String>,
    pub rho_half_sum: Vec<String>,
    pub rho_fundamental_sum: Vec<i64>,
    pub rho_agree: bool,
    pub highest_weight: Vec<i64>,
    pub dimension: u64,
    pub character_at_identity: f64,
    pub grid: Option<usize>,
    pub quadrature_tolerance: Option<f64>,
    pub orthogonality: Vec<OrthogonalityOut>,
    pub max_residual: Option<f64>,
    pub notice: Option<String>,
    pub passed: bool,
}

pub fn weyl_report(cartan_type: &str, highest: &[i64], grid: Option<usize>, config: &RunConfig) -> Result<WeylReport> {
    let r = weyl::build_root_system(cartan_type)?;
    let w = weyl::weyl_group(&r, config.caps.weyl_group)?;
    let lambda = Weight::new(highest.to_vec());
    let dimension = weyl::weyl_dimension(&r, &lambda)?;
    let rho = weyl::rho_and_fundamental_weights(&r);
    let at_identity = weyl::weyl_character_value(&r, &w, &lambda, &vec![0.0; r.rank])?;
    let mut orthogonality = Vec::new();
    let mut notice = None;
    let grid = match r.rank {
        1 => Some(grid.unwrap_or(config.weyl.grid_rank1)),
        2 => Some(grid.unwrap_or(config.weyl.grid_rank2)),
        _ => {
            notice = Some(format!("torus quadrature skipped: rank {} exceeds 2", r.rank));
            None
        }
    };
    if let Some(n) = grid {
        let mut others = vec![Weight::zero(r.rank)];
        others.extend(rho.fundamental_weights.iter().cloned());
        others.push(lambda.clone());
        others.dedup();
        let mut seen = Vec::new();
        for mu in others {
            if seen.contains(&mu) {
                continue;
            }
            let v = weyl::weyl_integration_orthogonality(&r, &w, &lambda, &mu, n)?;
            let expected = if mu == lambda { 1.0 } else { 0.0 };
            orthogonality.push(OrthogonalityOut {
                lambda1: lambda.coords.clone(),
                lambda2: mu.coords.clone(),
                re: v.re,
                im: v.im,
                expected,
                residual: (v - Complex64::new(expected, 0.0)).norm(),
            });
            seen.push(mu);
        }
    }
    let max_residual = grid.map(|_| orthogonality.iter().map(|o| o.residual).fold(0.0, f64::max));
    let tolerance = grid.map(weyl::quadrature_tolerance);
    let d = dimension as f64;
    let passed =
        rho.agree && (at_identity.re - d).abs() <= 1e-8 * d && max_residual.zip(tolerance).is_none_or(|(m, t)| m <= t);
    Ok(WeylReport {
        cartan_type: r.cartan_type.clone(),
        rank: r.rank,
        cartan: r.cartan.clone(),
        weyl_order: w.len(),
        positive_roots: r.positive_roots.clone(),
        rho_half_sum_root_coords: rho.half_sum_root_coords.iter().map(ToString::to_string).collect(),
        rho_half_sum: rho.half_sum.iter().map(ToString::to_string).collect(),
        rho_fundamental_sum: rho.fundamental_sum.coords.clone(),
        rho_agree: rho.agree,
        highest_weight: lambda.coords,
        dimension,
        character_at_identity: clean(at_identity.re),
        grid,
        quadrature_tolerance: tolerance,
        orthogonality,
        max_residual,
        notice,
        passed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOut {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub group: String,
    pub order: usize,
    pub subgroup_order: Option<usize>,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckOut>,
    pub failures: Vec<String>,
    pub passed: bool,
}

struct Suite {
    checks: Vec<CheckOut>,
}

impl Suite {
    /// Records a check; identity and computation errors count as failures,
    /// anything else (bad input) aborts the run.
    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> Result<()> {
        let (status, detail) = match f() {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e @ (Error::Identity(_) | Error::Computation(_))) => (Status::Fail, e.to_string()),
            Err(e) => return Err(e),
        };
        self.checks.push(CheckOut { name: name.to_string(), status, detail });
        Ok(())
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.checks.push(CheckOut { name: name.to_string(), status: Status::Skipped, detail: why.to_string() });
    }
}

fn count(ok: usize, total: usize, what: &str) -> (bool, String) {
    (ok == total, format!("{ok}/{total} {what}"))
}

/// Runs every identity suite on `G` (and on `Γ ⊂ G` when given).
pub fn verify_all(
    table: &CharacterTable,
    gamma: Option<&SubgroupEmbedding>,
    config: &RunConfig,
) -> Result<VerifyReport> {
    let g: &Arc<GroupTable> = table.group();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let trials = config.trials;
    let mut randoms: Vec<GroupFunction<Cyclo>> =
        (0..2 * trials).map(|_| GroupFunction::random_integers(g, &mut rng, RANDOM_BOUND)).collect();
    let pairs: Vec<(GroupFunction<Cyclo>, GroupFunction<Cyclo>)> = {
        let second = randoms.split_off(trials);
        randoms.into_iter().zip(second).collect()
    };
    let mut s = Suite { checks: Vec::new() };

    s.run("character table", || {
        let c = table.checks();
        Ok((c.all(), format!("{c:?}")))
    })?;
    s.run("float cross-check", || {
        let err = table.cross_check_numeric(config.seed)?;
        Ok((err <= config.tolerance.identity, format!("max deviation {err:.3e}")))
    })?;
    s.run("regular multiplicities", || {
        let m = table.decompose(&table.regular_character())?;
        let ok = m.iter().zip(table.degrees()).all(|(m, &d)| *m == Cyclo::from_integer(d as i64));
        Ok((ok, format!("{} irreducibles", m.len())))
    })?;
    s.run("central characters", || {
        let mut ok = 0;
        let total = table.len() * table.len();
        for pi in 0..table.len() {
            for i in 0..table.len() {
                let c = table.central_character_check(pi, i)?;
                ok += usize::from(c.exact_eigenvector && c.algebraic_integer);
            }
        }
        Ok(count(ok, total, "eigenvalue checks"))
    })?;
    s.run("inversion", || {
        let mut ok = 0;
        for (f, _) in &pairs {
            ok += usize::from(g.elements().all(|x| table.inversion_check(f, x).is_ok_and(|(l, r)| l == r)));
        }
        Ok(count(ok, trials, "random functions"))
    })?;
    s.run("parseval", || {
        let mut ok = 0;
        for (f1, f2) in &pairs {
            let (l, r) = table.parseval_check(f1, f2)?;
            ok += usize::from(l == r);
        }
        Ok(count(ok, trials, "random pairs"))
    })?;
    s.run("plancherel", || {
        let mut ok = 0;
        for (f, _) in &pairs {
            let (l, r) = table.plancherel_check(f)?;
            ok += usize::from(l == r);
        }
        Ok(count(ok, trials, "random functions"))
    })?;
    s.run("local trace formula", || {
        let mut ok = 0;
        for (f1, f2) in &pairs {
            ok += usize::from(trace::local_trace_formula(table, f1, f2)?.agrees(0.0));
        }
        Ok(count(ok, trials, "random pairs"))
    })?;

    if let Some(gamma) = gamma {
        let sub = CharacterTable::compute(gamma.table())?;
        let ctx = InducedContext::new(gamma)?;
        s.run("frobenius", || {
            let mut ok = 0;
            for a in 0..sub.len() {
                for b in 0..table.len() {
                    let (l, r) = ctx.frobenius_check(&sub.character(a), &table.character(b))?;
                    ok += usize::from(l == r);
                }
            }
            Ok(count(ok, sub.len() * table.len(), "matrix entries"))
        })?;
        s.run("mackey", || {
            let mut ok = 0;
            for a in 0..sub.len() {
                ok += usize::from(mackey_restriction(gamma, gamma, &sub.character(a))?.agrees(0.0));
            }
            let one = ClassFunction::<Cyclo>::one(gamma.table());
            let inner = induced_inner(gamma, &one, gamma, &one)?;
            let cosets = double_cosets(g, gamma, gamma)?.len();
            let counted = inner.direct == Cyclo::from_integer(cosets as i64) && inner.direct == inner.double_coset_sum;
            Ok((ok == sub.len() && counted, format!("{ok}/{} restrictions, {cosets} double cosets", sub.len())))
        })?;
        s.run("induction in stages", || {
            let trivial = SubgroupEmbedding::trivial(g);
            let one = ClassFunction::<Cyclo>::one(trivial.table());
            let (staged, direct) = induction_in_stages(&trivial, gamma, &one)?;
            let mut ok = usize::from(staged == direct);
            for a in 0..sub.len() {
                let (staged, direct) = induction_in_stages(gamma, &SubgroupEmbedding::whole(g), &sub.character(a))?;
                ok += usize::from(staged == direct);
            }
            Ok(count(ok, sub.len() + 1, "chains"))
        })?;
        s.run("global trace formula", || {
            let mut ok = 0;
            for (f, _) in &pairs {
                ok += usize::from(trace::global_trace_formula(table, f, gamma)?.agrees(0.0));
            }
            Ok(count(ok, trials, "random functions"))
        })?;
        s.run("multiplicity dimension count", || {
            let total: u64 = (0..table.len())
                .map(|pi| trace::multiplicity(table, pi, gamma).map(|m| m * table.degree(pi)))
                .sum::<Result<u64>>()?;
            Ok((total as usize == gamma.index(), format!("Σ m d = {total}, index {}", gamma.index())))
        })?;
    } else {
        for name in
            ["frobenius", "mackey", "induction in stages", "global trace formula", "multiplicity dimension count"]
        {
            s.skip(name, "no subgroup given");
        }
    }

    if g.is_abelian() {
        let lattice = gamma.cloned().unwrap_or_else(|| SubgroupEmbedding::whole(g));
        s.run("poisson summation", || {
            let mut ok = 0;
            for (f, _) in &pairs {
                ok += usize::from(trace::poisson_finite(table, f, &lattice)?.agrees(0.0));
            }
            Ok(count(ok, trials, "random functions"))
        })?;
    } else {
        s.skip("poisson summation", "group is not abelian");
    }

    if g.order() <= config.caps.subgroup_catalog {
        s.run("brauer decomposition", || {
            let catalog = brauer::subgroup_catalog(g, config.caps.subgroup_catalog)?;
            let d = brauer::decompose_unit(&catalog)?;
            let rows = (0..table.len())
                .map(|pi| brauer::virtual_character_test(&catalog, table, &table.character(pi)).map(|v| v.global))
                .collect::<Result<Vec<_>>>()?;
            let ok = d.residual_is_zero() && rows.iter().all(|&b| b);
            Ok((ok, format!("{} nonzero coefficients, residual zero: {}", d.coefficients.len(), d.residual_is_zero())))
        })?;
    } else {
        s.skip("brauer decomposition", "group order exceeds the subgroup catalog cap");
    }

    let failures: Vec<String> = s.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.clone()).collect();
    Ok(VerifyReport {
        group: group_name(g),
        order: g.order(),
        subgroup_order: gamma.map(SubgroupEmbedding::order),
        seed: config.seed,
        trials,
        passed: failures.is_empty(),
        failures,
        checks: s.checks,
    })
}

/// Character table with class data and the structural invariants.
#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub group: String,
    pub order: usize,
    pub abelian: bool,
    pub center_order: usize,
    pub exponent: u32,
    pub class_count: usize,
    pub sum_of_squared_degrees: u64,
    pub table: ChartableReport,
}

pub fn group_report(table: &CharacterTable) -> GroupReport {
    let g = table.group();
    GroupReport {
        group: group_name(g),
        order: g.order(),
        abelian: g.is_abelian(),
        center_order: g.center().len(),
        exponent: g.exponent(),
        class_count: table.len(),
        sum_of_squared_degrees: table.degrees().iter().map(|d| d * d).sum(),
        table: chartable_report(table),
    }
}

/// Output in one of the supported formats.
pub trait Render: Serialize {
    fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// `path,value` rows of the flattened JSON document.
    fn to_csv(&self) -> Result<String> {
        let mut rows = Vec::new();
        flatten("", &serde_json::to_value(self)?, &mut rows);
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["key", "value"]).map_err(csv_error)?;
        for (k, v) in rows {
            w.write_record([k, v]).map_err(csv_error)?;
        }
        finish_csv(w)
    }

    fn to_pretty(&self) -> Result<String> {
        let mut rows = Vec::new();
        flatten("", &serde_json::to_value(self)?, &mut rows);
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        Ok(rows.iter().map(|(k, v)| format!("{k:width$}  {v}\n")).collect())
    }

    fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Pretty => self.to_pretty(),
        }
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(std::io::Error::other(e)))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

impl Render for InduceReport {}
impl Render for BrauerReport {}
impl Render for TraceCommandReport {}
impl Render for PoissonCommandReport {}
impl Render for ThetaReport {}
impl Render for WeylReport {}
impl Render for VerifyReport {}

fn table_csv(t: &ChartableReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["character".to_string(), "degree".to_string()];
    header.extend(t.classes.iter().map(|c| format!("{} [{}]", c.representative, c.size)));
    w.write_record(&header).map_err(csv_error)?;
    for ch in &t.characters {
        let mut row = vec![ch.index.to_string(), ch.degree.to_string()];
        row.extend(ch.values.iter().map(|v| v.exact.clone()));
        w.write_record(&row).map_err(csv_error)?;
    }
    finish_csv(w)
}

fn table_pretty(t: &ChartableReport) -> String {
    let mut out = format!("{} (order {}, {} classes)\n", t.group, t.order, t.classes.len());
    out += &format!("degrees {:?}\n", t.degrees);
    out += &format!("{}\n", t.root_of_unity);
    let mut cells: Vec<Vec<String>> =
        vec![std::iter::once("".to_string()).chain(t.classes.iter().map(|c| c.representative.clone())).collect()];
    cells.push(std::iter::once("size".to_string()).chain(t.classes.iter().map(|c| c.size.to_string())).collect());
    for ch in &t.characters {
        cells
            .push(std::iter::once(format!("X{}", ch.index)).chain(ch.values.iter().map(|v| v.exact.clone())).collect());
    }
    let cols = cells[0].len();
    let widths: Vec<usize> = (0..cols).map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0)).collect();
    for row in cells {
        let line: Vec<String> = row.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
        out += line.join("  ").trim_end();
        out.push('\n');
    }
    out
}

impl Render for ChartableReport {
    fn to_csv(&self) -> Result<String> {
        table_csv(self)
    }

    fn to_pretty(&self) -> Result<String> {
        Ok(table_pretty(self))
    }
}

impl Render for GroupReport {
    fn to_csv(&self) -> Result<String> {
        table_csv(&self.table)
    }

    fn to_pretty(&self) -> Result<String> {
        Ok(format!(
            "{}abelian {}, center order {}, exponent {}, sum of squared degrees {}\n",
            table_pretty(&self.table),
            self.abelian,
            self.center_order,
            self.exponent,
            self.sum_of_squared_degrees
        ))
    }
}
