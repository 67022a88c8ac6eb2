//! Subcommand implementations. Each builds a JSON report echoing the parsed
//! input, so a report can be re-read and recombined without loss.

use measure_decomp::spectral::Scalar;
use measure_decomp::{
    band_project, brute_g_support, brute_hahn, brute_nearest, brute_sup, dellacherie_decompose,
    g_atomic_support, hahn_jordan, lattice_sup, lebesgue_decompose, null_family,
    radon_nikodym_density, relation, sigma_close, spectral_control, spectral_decompose,
    vector_decompose, AtomSet, FiniteSpace, LineMeasure, Rational, SetFamily, SignedMeasure,
    SpectralPart, VectorMeasure,
};
use num::Zero;
use serde_json::{json, Value};

use crate::problem::{FamilySpec, Model, Problem, SpectralKind};
use crate::CliError;

/// Environment hook for exercising the oracle-disagreement exit path: when
/// set, `check` corrupts the library-side support before comparing.
pub const CORRUPT_ENV: &str = "MDC_TEST_CORRUPT";

fn labels(space: &FiniteSpace, s: &AtomSet) -> Vec<String> {
    s.blocks().map(|b| space.label(b).to_string()).collect()
}

fn rationals(values: &[Rational]) -> Value {
    Value::from(values.iter().map(|v| v.to_string()).collect::<Vec<_>>())
}

fn scalar_json(mu: &SignedMeasure) -> Value {
    json!({ "values": rationals(mu.values()) })
}

fn vector_json(theta: &VectorMeasure) -> Value {
    let rows: Vec<Value> = theta.values().iter().map(|r| rationals(r)).collect();
    json!({ "vector": rows })
}

fn line_json(mu: &LineMeasure) -> Value {
    let atoms: Vec<Value> = mu
        .atoms()
        .iter()
        .map(|a| json!({ "at": a.location.to_string(), "weight": a.weight.to_string() }))
        .collect();
    json!({ "densities": rationals(mu.densities()), "atoms": atoms })
}

fn spectral_part_json(part: &SpectralPart<impl Scalar + JsonEntry>) -> Value {
    let projections: Vec<Value> = part
        .projections()
        .iter()
        .map(|p| {
            let rows: Vec<Value> = (0..p.dim())
                .map(|i| {
                    let cols: Vec<Value> = (0..p.dim())
                        .map(|j| p.at(i, j).to_json_pair())
                        .collect();
                    Value::from(cols)
                })
                .collect();
            Value::from(rows)
        })
        .collect();
    json!({ "projections": projections })
}

/// Serialization of one matrix entry: a `[re, im]` pair of rational strings
/// on the exact path, plain numbers on the numeric path.
pub trait JsonEntry {
    fn to_json_pair(&self) -> Value;
}

impl JsonEntry for measure_decomp::ComplexRat {
    fn to_json_pair(&self) -> Value {
        json!([self.re.to_string(), self.im.to_string()])
    }
}

impl JsonEntry for num::complex::Complex64 {
    fn to_json_pair(&self) -> Value {
        json!([self.re, self.im])
    }
}

fn finite_parts(
    problem: &Problem,
) -> Result<
    (
        &FiniteSpace,
        &std::collections::BTreeMap<String, SignedMeasure>,
    ),
    CliError,
> {
    match &problem.model {
        Model::Finite { space, scalars, .. } => Ok((space, scalars)),
        Model::Line { .. } => Err(CliError::semantic(
            "this subcommand needs a finite space, not a line model".into(),
        )),
    }
}

fn line_parts(
    problem: &Problem,
) -> Result<&std::collections::BTreeMap<String, LineMeasure>, CliError> {
    match &problem.model {
        Model::Line { measures, .. } => Ok(measures),
        Model::Finite { .. } => Err(CliError::semantic(
            "this subcommand needs a line model".into(),
        )),
    }
}

/// The target of a scalar subcommand: the measure named `mu` if present,
/// otherwise the unique scalar measure not excluded by name.
fn target_scalar<'a>(
    scalars: &'a std::collections::BTreeMap<String, SignedMeasure>,
    exclude: Option<&str>,
) -> Result<(&'a str, &'a SignedMeasure), CliError> {
    if let Some(mu) = scalars.get("mu") {
        if exclude != Some("mu") {
            return Ok(("mu", mu));
        }
    }
    let mut candidates = scalars
        .iter()
        .filter(|(name, _)| exclude != Some(name.as_str()));
    match (candidates.next(), candidates.next()) {
        (Some((name, mu)), None) => Ok((name, mu)),
        (None, _) => Err(CliError::semantic("no scalar measure declared".into())),
        _ => Err(CliError::semantic(
            "ambiguous target: name one measure \"mu\"".into(),
        )),
    }
}

fn target_line<'a>(
    measures: &'a std::collections::BTreeMap<String, LineMeasure>,
) -> Result<(&'a str, &'a LineMeasure), CliError> {
    if let Some(mu) = measures.get("mu") {
        return Ok(("mu", mu));
    }
    let mut it = measures.iter();
    match (it.next(), it.next()) {
        (Some((name, mu)), None) => Ok((name.as_str(), mu)),
        (None, _) => Err(CliError::semantic("no line measure declared".into())),
        _ => Err(CliError::semantic(
            "ambiguous target: name one measure \"mu\"".into(),
        )),
    }
}

/// Resolves the declared family to a sigma-closed [`SetFamily`] on `space`.
/// Builtins: `null-sets-of:<name>` is represented by its pointwise maximum,
/// `positive-sets` by the set of target-nonnegative blocks, and `countable`
/// only applies to the line model.
fn resolve_family(
    problem: &Problem,
    space: &FiniteSpace,
    target: Option<&SignedMeasure>,
) -> Result<SetFamily, CliError> {
    let Some(spec) = &problem.family else {
        return Err(CliError::semantic("this subcommand needs a family".into()));
    };
    match spec {
        FamilySpec::Generators(gens) => {
            let family =
                SetFamily::from_labels(space.clone(), gens).map_err(CliError::semantic_from)?;
            sigma_close(&family).map_err(CliError::semantic_from)
        }
        FamilySpec::NullSetsOf(name) => {
            let (_, scalars) = finite_parts(problem)?;
            let nu = scalars.get(name).ok_or_else(|| {
                CliError::semantic(format!("family refers to unknown measure {name:?}"))
            })?;
            SetFamily::new(space.clone(), [null_family(nu)]).map_err(CliError::semantic_from)
        }
        FamilySpec::PositiveSets => {
            let mu = target.ok_or_else(|| {
                CliError::semantic("positive-sets needs a scalar target measure".into())
            })?;
            let positive = space.set_of(
                &(0..space.block_count())
                    .filter(|&b| !num::Signed::is_negative(mu.block_value(b)))
                    .collect::<Vec<_>>(),
            );
            SetFamily::new(space.clone(), [positive]).map_err(CliError::semantic_from)
        }
        FamilySpec::Countable => Err(CliError::semantic(
            "the countable family only applies to the line model".into(),
        )),
    }
}

pub fn decompose(problem: &Problem, minimal_support: bool) -> Result<Value, CliError> {
    let (space, scalars) = finite_parts(problem)?;
    let (name, mu) = target_scalar(scalars, None)?;
    let family = resolve_family(problem, space, Some(mu))?;
    let d = dellacherie_decompose(mu, &family).map_err(CliError::semantic_from)?;
    let mut report = json!({
        "command": "decompose",
        "input": problem.echo,
        "measure": name,
        "support": labels(space, &d.support),
        "atomic": scalar_json(&d.atomic),
        "diffuse": scalar_json(&d.diffuse),
    });
    if minimal_support {
        report["minimal_support"] = Value::from(labels(space, &d.minimal_support()));
    }
    Ok(report)
}

pub fn hahn(problem: &Problem) -> Result<Value, CliError> {
    let (space, scalars) = finite_parts(problem)?;
    let (name, mu) = target_scalar(scalars, None)?;
    let (positive_set, plus, minus) = hahn_jordan(mu);
    let (variation, norm) = mu.variation();
    Ok(json!({
        "command": "hahn-jordan",
        "input": problem.echo,
        "measure": name,
        "positive_set": labels(space, &positive_set),
        "plus": scalar_json(&plus),
        "minus": scalar_json(&minus),
        "variation": scalar_json(&variation),
        "norm": norm.to_string(),
    }))
}

pub fn lebesgue(problem: &Problem, wrt: &str) -> Result<Value, CliError> {
    let (_, scalars) = finite_parts(problem)?;
    let nu = scalars.get(wrt).ok_or_else(|| {
        CliError::semantic(format!("--wrt refers to unknown measure {wrt:?}"))
    })?;
    let (name, mu) = target_scalar(scalars, Some(wrt))?;
    let (ac, s) = lebesgue_decompose(mu, nu).map_err(CliError::semantic_from)?;
    let density = radon_nikodym_density(&ac, nu).map_err(CliError::semantic_from)?;
    Ok(json!({
        "command": "lebesgue",
        "input": problem.echo,
        "measure": name,
        "wrt": wrt,
        "absolutely_continuous": scalar_json(&ac),
        "singular": scalar_json(&s),
        "density": rationals(&density),
    }))
}

pub fn atomic_diffuse(problem: &Problem) -> Result<Value, CliError> {
    let measures = line_parts(problem)?;
    let (name, mu) = target_line(measures)?;
    let (atomic, diffuse) = mu.atomic_diffuse();
    Ok(json!({
        "command": "atomic-diffuse",
        "input": problem.echo,
        "measure": name,
        "atomic": line_json(&atomic),
        "diffuse": line_json(&diffuse),
    }))
}

pub fn support(problem: &Problem) -> Result<Value, CliError> {
    let measures = line_parts(problem)?;
    let (name, mu) = target_line(measures)?;
    let supp = mu.topological_support().map_err(CliError::semantic_from)?;
    let intervals: Vec<Value> = supp
        .intervals
        .iter()
        .map(|(a, b)| json!([a.to_string(), b.to_string()]))
        .collect();
    Ok(json!({
        "command": "support",
        "input": problem.echo,
        "measure": name,
        "intervals": intervals,
        "points": rationals(&supp.points),
    }))
}

pub fn vector(problem: &Problem, minimal_support: bool) -> Result<Value, CliError> {
    let Model::Finite {
        space, vectors, ..
    } = &problem.model
    else {
        return Err(CliError::semantic(
            "this subcommand needs a finite space, not a line model".into(),
        ));
    };
    let (name, theta) = match (vectors.get("mu"), vectors.len()) {
        (Some(t), _) => ("mu", t),
        (None, 1) => {
            let (n, t) = vectors.iter().next().expect("len checked");
            (n.as_str(), t)
        }
        (None, 0) => return Err(CliError::semantic("no vector measure declared".into())),
        _ => {
            return Err(CliError::semantic(
                "ambiguous target: name one measure \"mu\"".into(),
            ))
        }
    };
    let control = measure_decomp::control_measure(theta);
    let family = resolve_family(problem, space, Some(&control))?;
    let (supp, atomic, diffuse) =
        vector_decompose(theta, &family).map_err(CliError::semantic_from)?;
    let mut report = json!({
        "command": "vector",
        "input": problem.echo,
        "measure": name,
        "support": labels(space, &supp),
        "control": scalar_json(&control),
        "atomic": vector_json(&atomic),
        "diffuse": vector_json(&diffuse),
    });
    if minimal_support {
        report["minimal_support"] =
            Value::from(labels(space, &supp.intersect(&control.support_set())));
    }
    Ok(report)
}

pub fn spectral(problem: &Problem, minimal_support: bool) -> Result<Value, CliError> {
    let Model::Finite {
        space, spectrals, ..
    } = &problem.model
    else {
        return Err(CliError::semantic(
            "this subcommand needs a finite space, not a line model".into(),
        ));
    };
    let (name, e) = match (spectrals.get("mu"), spectrals.len()) {
        (Some(e), _) => ("mu", e),
        (None, 1) => {
            let (n, e) = spectrals.iter().next().expect("len checked");
            (n.as_str(), e)
        }
        (None, 0) => return Err(CliError::semantic("no spectral measure declared".into())),
        _ => {
            return Err(CliError::semantic(
                "ambiguous target: name one measure \"mu\"".into(),
            ))
        }
    };
    let (control, supp, atomic_json, diffuse_json) = match e {
        SpectralKind::Exact(e) => {
            let control = spectral_control(e);
            let family = resolve_family(problem, space, Some(&control))?;
            let (supp, atomic, diffuse) =
                spectral_decompose(e, &family).map_err(CliError::semantic_from)?;
            (
                control,
                supp,
                spectral_part_json(&atomic),
                spectral_part_json(&diffuse),
            )
        }
        SpectralKind::Numeric(e) => {
            let control = spectral_control(e);
            let family = resolve_family(problem, space, Some(&control))?;
            let (supp, atomic, diffuse) =
                spectral_decompose(e, &family).map_err(CliError::semantic_from)?;
            (
                control,
                supp,
                spectral_part_json(&atomic),
                spectral_part_json(&diffuse),
            )
        }
    };
    let mut report = json!({
        "command": "spectral",
        "input": problem.echo,
        "measure": name,
        "support": labels(space, &supp),
        "control": scalar_json(&control),
        "atomic": atomic_json,
        "diffuse": diffuse_json,
    });
    if minimal_support {
        report["minimal_support"] =
            Value::from(labels(space, &supp.intersect(&control.support_set())));
    }
    Ok(report)
}

struct CheckLog {
    checks: Vec<Value>,
    all_ok: bool,
}

impl CheckLog {
    fn new() -> Self {
        Self {
            checks: Vec::new(),
            all_ok: true,
        }
    }

    fn record(&mut self, name: &str, pass: bool, expected: Value, actual: Value) {
        if !pass {
            self.all_ok = false;
        }
        self.checks.push(json!({
            "name": name,
            "pass": pass,
            "expected": expected,
            "actual": actual,
        }));
    }

    fn assert_set_eq(&mut self, name: &str, expected: &AtomSet, actual: &AtomSet) {
        self.record(
            name,
            expected == actual,
            Value::from(expected.to_string()),
            Value::from(actual.to_string()),
        );
    }

    fn assert_measure_eq(&mut self, name: &str, expected: &SignedMeasure, actual: &SignedMeasure) {
        self.record(
            name,
            expected == actual,
            scalar_json(expected),
            scalar_json(actual),
        );
    }

    fn assert_holds(&mut self, name: &str, holds: bool) {
        self.record(name, holds, Value::from(true), Value::from(holds));
    }
}

fn corrupted() -> bool {
    std::env::var_os(CORRUPT_ENV).is_some()
}

// Flips the lowest block so any comparison against an honest oracle fails.
fn corrupt_set(s: &AtomSet, space: &FiniteSpace) -> AtomSet {
    let first = space.set_of(&[0]);
    if s.contains(0) {
        s.difference(&first)
    } else {
        s.union(&first)
    }
}

/// Re-runs the decompositions of the problem file and cross-checks every
/// result against the brute-force oracles. Returns the report and whether all
/// checks passed.
pub fn check(problem: &Problem, seed: u64, samples: usize) -> Result<(Value, bool), CliError> {
    let mut log = CheckLog::new();
    match &problem.model {
        Model::Finite {
            space,
            scalars,
            vectors,
            spectrals,
        } => {
            if let Ok((_, mu)) = target_scalar(scalars, None) {
                check_scalar(problem, space, scalars, mu, seed, samples, &mut log)?;
            }
            for (name, theta) in vectors {
                check_vector(problem, space, name, theta, &mut log)?;
            }
            for (name, e) in spectrals {
                match e {
                    SpectralKind::Exact(e) => check_spectral(problem, space, name, e, &mut log)?,
                    SpectralKind::Numeric(e) => check_spectral(problem, space, name, e, &mut log)?,
                }
            }
        }
        Model::Line { measures, .. } => {
            for (name, mu) in measures {
                check_line(name, mu, &mut log);
            }
        }
    }
    if log.checks.is_empty() {
        return Err(CliError::semantic(
            "nothing to check: declare at least one measure".into(),
        ));
    }
    let ok = log.all_ok;
    let report = json!({
        "command": "check",
        "input": problem.echo,
        "checks": log.checks,
        "ok": ok,
    });
    Ok((report, ok))
}

fn check_scalar(
    problem: &Problem,
    space: &FiniteSpace,
    scalars: &std::collections::BTreeMap<String, SignedMeasure>,
    mu: &SignedMeasure,
    seed: u64,
    samples: usize,
    log: &mut CheckLog,
) -> Result<(), CliError> {
    // Hahn-Jordan against the subset-scan oracle, plus the Jordan identities.
    let (positive_set, plus, minus) = hahn_jordan(mu);
    let lib_positive = if corrupted() {
        corrupt_set(&positive_set, space)
    } else {
        positive_set.clone()
    };
    let oracle_positive = brute_hahn(mu).map_err(CliError::semantic_from)?;
    log.assert_set_eq("hahn-positive-set-vs-oracle", &oracle_positive, &lib_positive);
    let recombined = plus.sub(&minus).map_err(CliError::semantic_from)?;
    log.assert_measure_eq("jordan-difference", mu, &recombined);
    let (variation, _) = mu.variation();
    let summed = plus.add(&minus).map_err(CliError::semantic_from)?;
    log.assert_measure_eq("jordan-variation", &variation, &summed);
    let (_, singular) = relation(&plus, &minus).map_err(CliError::semantic_from)?;
    log.assert_holds("jordan-mutually-singular", singular);

    if problem.family.is_some() {
        let family = resolve_family(problem, space, Some(mu))?;
        let d = dellacherie_decompose(mu, &family).map_err(CliError::semantic_from)?;
        let lib_support = if corrupted() {
            corrupt_set(&d.support, space)
        } else {
            d.support.clone()
        };
        let oracle_support = brute_g_support(mu, &family).map_err(CliError::semantic_from)?;
        log.assert_set_eq("support-vs-oracle", &oracle_support, &lib_support);
        let summed = d.atomic.add(&d.diffuse).map_err(CliError::semantic_from)?;
        log.assert_measure_eq("decomposition-sum", mu, &summed);
        let concentrated = d
            .atomic
            .is_null_set(&d.support.complement())
            .map_err(CliError::semantic_from)?;
        log.assert_holds("atomic-concentrated-on-support", concentrated);
        let members_null = family
            .members()
            .iter()
            .all(|g| d.diffuse.is_null_set(g).unwrap_or(false));
        log.assert_holds("family-members-diffuse-null", members_null);

        // Nearest point: no sampled band member comes closer than the
        // projection, so the sampled minimum distance equals the norm of the
        // diffuse part.
        let (_, diffuse) = band_project(mu, &family).map_err(CliError::semantic_from)?;
        let best = brute_nearest(mu, &family, samples, seed).map_err(CliError::semantic_from)?;
        log.record(
            "nearest-point-distance",
            diffuse.norm() == best,
            Value::from(diffuse.norm().to_string()),
            Value::from(best.to_string()),
        );
    }

    // Lattice supremum against the subset-maximisation oracle whenever a
    // second scalar measure is present and the space is small enough.
    let mut others = scalars.values().filter(|nu| *nu != mu);
    if let Some(nu) = others.next() {
        if space.block_count() <= measure_decomp::oracle::ORACLE_SUP_MAX_BLOCKS {
            let fast = lattice_sup(mu, nu).map_err(CliError::semantic_from)?;
            let slow = brute_sup(mu, nu).map_err(CliError::semantic_from)?;
            log.assert_measure_eq("lattice-sup-vs-oracle", &slow, &fast);
        }
    }
    Ok(())
}

fn check_vector(
    problem: &Problem,
    space: &FiniteSpace,
    name: &str,
    theta: &VectorMeasure,
    log: &mut CheckLog,
) -> Result<(), CliError> {
    let control = measure_decomp::control_measure(theta);
    if problem.family.is_none() {
        return Ok(());
    }
    let family = resolve_family(problem, space, Some(&control))?;
    let (supp, atomic, diffuse) =
        vector_decompose(theta, &family).map_err(CliError::semantic_from)?;
    let lib_supp = if corrupted() {
        corrupt_set(&supp, space)
    } else {
        supp
    };
    let scalar_supp = g_atomic_support(&control, &family).map_err(CliError::semantic_from)?;
    log.assert_set_eq(
        &format!("vector-{name}-support-matches-control"),
        &scalar_supp,
        &lib_supp,
    );
    let summed = atomic.add(&diffuse).map_err(CliError::semantic_from)?;
    log.record(
        &format!("vector-{name}-sum"),
        *theta == summed,
        vector_json(theta),
        vector_json(&summed),
    );
    let members_null = family
        .members()
        .iter()
        .all(|g| diffuse.is_null_set(g).unwrap_or(false));
    log.assert_holds(&format!("vector-{name}-members-diffuse-null"), members_null);
    Ok(())
}

fn check_spectral<T: Scalar>(
    problem: &Problem,
    space: &FiniteSpace,
    name: &str,
    e: &measure_decomp::SpectralMeasure<T>,
    log: &mut CheckLog,
) -> Result<(), CliError> {
    let control = spectral_control(e);
    // Control equivalence: mu(Delta) = 0 iff E(Delta) = 0, over all Delta.
    let equivalent = space.all_subsets().all(|delta| {
        let mu_null = control.evaluate(&delta).map(|v| v.is_zero()).unwrap_or(false);
        let e_null = e.is_null(&delta).unwrap_or(!mu_null);
        mu_null == e_null
    });
    log.assert_holds(&format!("spectral-{name}-control-equivalence"), equivalent);
    if problem.family.is_none() {
        return Ok(());
    }
    let family = resolve_family(problem, space, Some(&control))?;
    let (supp, atomic, diffuse) =
        spectral_decompose(e, &family).map_err(CliError::semantic_from)?;
    let lib_supp = if corrupted() {
        corrupt_set(&supp, space)
    } else {
        supp
    };
    let oracle_supp = brute_g_support(&control, &family).map_err(CliError::semantic_from)?;
    log.assert_set_eq(
        &format!("spectral-{name}-support-vs-oracle"),
        &oracle_supp,
        &lib_supp,
    );
    // The two parts recombine to E on every Delta.
    let recombines = space.all_subsets().all(|delta| {
        let lhs = atomic
            .evaluate(&delta)
            .and_then(|a| diffuse.evaluate(&delta).map(|d| a.add(&d)));
        match (lhs, e.evaluate(&delta)) {
            (Ok(sum), Ok(whole)) => sum.approx_eq(&whole),
            _ => false,
        }
    });
    log.assert_holds(&format!("spectral-{name}-parts-sum"), recombines);
    Ok(())
}

fn check_line(name: &str, mu: &LineMeasure, log: &mut CheckLog) {
    let (atomic, diffuse) = mu.atomic_diffuse();
    let same_densities = diffuse.densities() == mu.densities() && atomic.densities().iter().all(Zero::is_zero);
    let same_atoms = atomic.atoms() == mu.atoms() && diffuse.atoms().is_empty();
    log.assert_holds(
        &format!("line-{name}-atomic-diffuse-split"),
        same_densities && same_atoms,
    );
    let totals_add = atomic.total() + diffuse.total() == mu.total();
    log.assert_holds(&format!("line-{name}-total"), totals_add);
    if mu.is_positive() {
        if let Ok(supp) = mu.topological_support() {
            let atoms_covered = mu.atoms().iter().all(|a| supp.contains(&a.location));
            log.assert_holds(&format!("line-{name}-support-covers-atoms"), atoms_covered);
        }
    }
}
