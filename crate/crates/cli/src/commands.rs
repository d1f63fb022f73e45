//! The subcommands as plain functions from inputs to rendered output and an
//! exit code.

use std::collections::BTreeMap;
use std::fmt;

use anyhow::Context;
use corner_core::antiblocking::projection_product;
use corner_core::godbersen::{proof_chain_audit, proof_chain_audit_profile};
use corner_core::io::{assembly_to_json, AssemblyJson};
use corner_core::mixed::repeat_pair;
use corner_core::random::{random_ab, random_assembly_with, random_non_simplex_glued, trial_rng};
use corner_core::rational::{format_rational, int};
use corner_core::{
    ab_join_volume, ab_opposite_mixed, corollary_mixed_volume, equality_family, godbersen_profile, lemma_mixed_volume,
    mixed_volume_pair, mixed_volume_tuple, simplex_sum_series, validate_ab, AlignedSimplex, AntiBlockingBody,
    CoordSubspace, EqualityCase, OrthantAssembly, Rational, SignVector, Style, VPolytope,
};
use num_traits::{Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{Format, Record, RunConfig, SweepReport, Verdict};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_INAPPLICABLE: u8 = 3;
pub const EXIT_DISAGREEMENT: u8 = 4;

/// Dimension cap for sweeps and for single computations, unless overridden
/// by `CORNER_MIXVOL_MAX_DIM`.
pub const SWEEP_DIM_CAP: usize = 4;
pub const SINGLE_DIM_CAP: usize = 6;

/// An error carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

pub fn fail(code: u8, message: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Failure {
        code,
        message: message.into(),
    })
}

/// Exit code for an error escaping a command.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(f) = err.downcast_ref::<Failure>() {
        return f.code;
    }
    match err.downcast_ref::<corner_core::Error>() {
        Some(corner_core::Error::RouteDisagreement { .. }) => EXIT_DISAGREEMENT,
        Some(corner_core::Error::NotFullDimensional) => EXIT_INAPPLICABLE,
        _ => EXIT_PARSE,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: EXIT_OK }
    }
}

fn cap_override() -> Option<usize> {
    std::env::var(corner_core::polytope::MAX_DIM_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
}

pub fn check_dim(dim: usize, sweep: bool) -> anyhow::Result<()> {
    let cap = cap_override().unwrap_or(if sweep { SWEEP_DIM_CAP } else { SINGLE_DIM_CAP });
    if dim == 0 || dim > cap {
        return Err(fail(
            EXIT_PARSE,
            format!(
                "dimension {dim} outside 1..={cap} (set {} to override)",
                corner_core::polytope::MAX_DIM_ENV
            ),
        ));
    }
    Ok(())
}

fn check_j(j: usize, n: usize) -> anyhow::Result<()> {
    if j > n {
        return Err(fail(EXIT_PARSE, format!("j = {j} outside 0..={n}")));
    }
    Ok(())
}

fn js(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn pretty(v: &impl serde::Serialize) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

// ---------------------------------------------------------------- mixvol

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    /// Volume polynomial of `K + tT` recovered by interpolation.
    Interpolation,
    /// Inclusion-exclusion over Minkowski sub-sums.
    Polarization,
    /// Coordinate-projection formula for anti-blocking bodies in opposite orthants.
    Decomposition,
    /// Closed form for coordinate-aligned simplices in a common orthant.
    ClosedForm,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Interpolation,
        Method::Polarization,
        Method::Decomposition,
        Method::ClosedForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Interpolation => "interpolation",
            Method::Polarization => "polarization",
            Method::Decomposition => "decomposition",
            Method::ClosedForm => "closed-form",
        }
    }
}

/// Whether every vertex lies in the closed orthant of `sigma`.
fn in_orthant(p: &VPolytope, sigma: &SignVector) -> bool {
    p.vertices().iter().all(|v| {
        v.coords().iter().enumerate().all(|(i, c)| {
            if sigma.is_negative(i) {
                !c.is_positive()
            } else {
                !c.is_negative()
            }
        })
    })
}

/// `(a_1, ..., a_n)` when `p = conv(0, a_i e_i)` with `a_i >= 0`.
pub fn aligned_alphas(p: &VPolytope) -> Option<Vec<Rational>> {
    let n = p.dim();
    let mut alphas = vec![Rational::zero(); n];
    let mut has_origin = false;
    for v in p.vertices() {
        let nonzero: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
        match nonzero.as_slice() {
            [] => has_origin = true,
            [i] if v[*i].is_positive() && alphas[*i].is_zero() => alphas[*i] = v[*i].clone(),
            _ => return None,
        }
    }
    has_origin.then_some(alphas)
}

/// `Some(value)` when `method` applies to the pair.
pub fn mixed_by(method: Method, k: &VPolytope, t: &VPolytope, j: usize) -> anyhow::Result<Option<Rational>> {
    let n = k.dim();
    Ok(match method {
        Method::Interpolation => Some(mixed_volume_pair(k, t, j)?),
        Method::Polarization => Some(mixed_volume_tuple(&repeat_pair(k, t, j))?),
        Method::Decomposition => {
            // Mixed volumes are invariant under reflecting both bodies.
            for sigma in SignVector::all(n) {
                if !in_orthant(k, &sigma) || !in_orthant(t, &sigma.negated()) {
                    continue;
                }
                let kr = k.reflect(&sigma);
                let tr = t.reflect(&sigma).negate();
                if validate_ab(&kr) && validate_ab(&tr) {
                    let (kr, tr) = (AntiBlockingBody::new(kr)?, AntiBlockingBody::new(tr)?);
                    return Ok(Some(ab_opposite_mixed(&kr, &tr, j)?));
                }
            }
            None
        }
        Method::ClosedForm => {
            for sigma in SignVector::all(n) {
                if !in_orthant(k, &sigma) || !in_orthant(t, &sigma) {
                    continue;
                }
                if let (Some(a), Some(b)) = (aligned_alphas(&k.reflect(&sigma)), aligned_alphas(&t.reflect(&sigma))) {
                    let (s, t) = (AlignedSimplex::new(a)?, AlignedSimplex::new(b)?);
                    return Ok(Some(corollary_mixed_volume(&s, &t, j)?));
                }
            }
            None
        }
    })
}

pub struct MixvolArgs {
    pub k: VPolytope,
    pub t: VPolytope,
    pub j: usize,
    pub method: Option<Method>,
    pub cross_check: bool,
    pub format: Option<Format>,
}

pub fn mixvol(args: &MixvolArgs) -> anyhow::Result<Outcome> {
    let n = args.k.dim();
    if args.t.dim() != n {
        return Err(fail(EXIT_PARSE, format!("dimensions differ: {n} and {}", args.t.dim())));
    }
    check_dim(n, false)?;
    check_j(args.j, n)?;
    let methods: Vec<Method> = if args.cross_check {
        Method::ALL.to_vec()
    } else {
        vec![args.method.unwrap_or(Method::Interpolation)]
    };
    let mut values: Vec<(Method, Rational)> = Vec::new();
    for m in methods {
        match mixed_by(m, &args.k, &args.t, args.j)? {
            Some(v) => values.push((m, v)),
            None if args.cross_check => {}
            None => {
                return Err(fail(
                    EXIT_INAPPLICABLE,
                    format!("method {} does not apply to these bodies", m.name()),
                ))
            }
        }
    }
    if let Some(m) = args.method {
        if !values.iter().any(|(x, _)| *x == m) {
            return Err(fail(
                EXIT_INAPPLICABLE,
                format!("method {} does not apply to these bodies", m.name()),
            ));
        }
    }
    let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
    let output = match args.format {
        None if agree => format!("{}\n", values[0].1),
        None => values.iter().map(|(m, v)| format!("{}: {v}\n", m.name())).collect(),
        Some(Format::Json) => {
            let methods: BTreeMap<&str, Value> = values.iter().map(|(m, v)| (m.name(), js(v))).collect();
            let mut obj = json!({ "j": args.j, "methods": methods, "agree": agree });
            if agree {
                obj["value"] = js(&values[0].1);
            }
            pretty(&obj)?
        }
        Some(Format::Csv) => {
            let mut s = String::from("method,j,value\n");
            for (m, v) in &values {
                s.push_str(&format!("{},{},{v}\n", m.name(), args.j));
            }
            s
        }
    };
    Ok(Outcome {
        output,
        code: if agree { EXIT_OK } else { EXIT_DISAGREEMENT },
    })
}

// ------------------------------------------------------------- instances

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    /// Random assemblies in the style given by `--style`.
    Random,
    /// `conv(0, a_1 e_1, ..., a_n e_n)`.
    #[value(name = "equality-1")]
    Equality1,
    /// `conv(a_1 e_1, -b e_1, a_2 e_2, ..., a_n e_n)`.
    #[value(name = "equality-2")]
    Equality2,
    /// `[-1, 1]^n`.
    Cube,
    /// `conv(+-e_1, ..., +-e_n)`.
    CrossPolytope,
    /// Random glued bodies that are not simplices and have two or more
    /// distinct full-dimensional pieces.
    NonSimplex,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Equality1 => "equality-1",
            Family::Equality2 => "equality-2",
            Family::Cube => "cube",
            Family::CrossPolytope => "cross-polytope",
            Family::NonSimplex => "non-simplex",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum StyleArg {
    Unconditional,
    Glued,
    /// Unconditional on even trials, glued on odd ones.
    Mixed,
}

impl StyleArg {
    fn name(self) -> &'static str {
        match self {
            StyleArg::Unconditional => "unconditional",
            StyleArg::Glued => "glued",
            StyleArg::Mixed => "mixed",
        }
    }
}

#[derive(Clone, Debug)]
pub struct InstanceSource {
    pub family: Family,
    pub style: StyleArg,
    pub alphas: Option<Vec<Rational>>,
    pub beta: Option<Rational>,
}

impl InstanceSource {
    pub fn params(&self) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        p.insert("family".into(), self.family.name().into());
        p.insert("style".into(), self.style.name().into());
        if let Some(a) = &self.alphas {
            p.insert(
                "alphas".into(),
                a.iter().map(format_rational).collect::<Vec<_>>().join(","),
            );
        }
        if let Some(b) = &self.beta {
            p.insert("beta".into(), format_rational(b));
        }
        p
    }
}

fn random_params<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| int(rng.random_range(1..=4))).collect()
}

/// The instance for one trial, with a short descriptor.
pub fn instance(source: &InstanceSource, n: usize, seed: u64, trial: u64) -> anyhow::Result<(String, OrthantAssembly)> {
    let mut rng = trial_rng(seed, trial);
    let alphas = |rng: &mut _| match &source.alphas {
        Some(a) if a.len() == n => Ok(a.clone()),
        Some(a) => Err(fail(EXIT_PARSE, format!("{} alphas given for dimension {n}", a.len()))),
        None => Ok(random_params(rng, n)),
    };
    let a = match source.family {
        Family::Random => {
            let style = match source.style {
                StyleArg::Unconditional => Style::Unconditional,
                StyleArg::Glued => Style::Glued,
                StyleArg::Mixed if trial.is_multiple_of(2) => Style::Unconditional,
                StyleArg::Mixed => Style::Glued,
            };
            let a = random_assembly_with(&mut rng, n, style)?;
            return Ok((format!("{style}:n={n}:seed={seed}:trial={trial}"), a));
        }
        Family::Equality1 => equality_family(&EqualityCase::Simplex, &alphas(&mut rng)?)?,
        Family::Equality2 => {
            let a = alphas(&mut rng)?;
            let b = source.beta.clone().unwrap_or_else(|| int(rng.random_range(1..=4)));
            equality_family(&EqualityCase::TwoSided(b), &a)?
        }
        Family::Cube => OrthantAssembly::from_unconditional(&AntiBlockingBody::new(VPolytope::unit_cube(n)?)?),
        Family::CrossPolytope => {
            OrthantAssembly::from_unconditional(&AntiBlockingBody::new(VPolytope::standard_simplex(n)?)?)
        }
        Family::NonSimplex => random_non_simplex_glued(&mut rng, n)?,
    };
    Ok((format!("{}:n={n}:seed={seed}:trial={trial}", source.family.name()), a))
}

// -------------------------------------------------------------- godbersen

pub fn godbersen(config: &RunConfig, source: &InstanceSource) -> anyhow::Result<Outcome> {
    let n = config.dim;
    check_dim(n, true)?;
    let trials = config.trials;
    let per_trial: Vec<Vec<Record>> = (0..trials)
        .into_par_iter()
        .map(|trial| -> anyhow::Result<Vec<Record>> {
            let (desc, a) = instance(source, n, config.seed, trial)?;
            let profile = godbersen_profile(&a).with_context(|| format!("instance {desc}"))?;
            let mut body = None;
            Ok(profile
                .into_iter()
                .map(|rep| {
                    let mut r = Record::inequality(
                        trial,
                        &desc,
                        "godbersen",
                        Some(rep.j),
                        rep.mixed,
                        rep.bound,
                        rep.trivial,
                    );
                    if r.needs_body() {
                        r.body = Some(
                            body.get_or_insert_with(|| {
                                serde_json::to_value(AssemblyJson::from_assembly(&a)).expect("string-only structure")
                            })
                            .clone(),
                        );
                    }
                    r
                })
                .collect())
        })
        .collect::<anyhow::Result<_>>()?;
    finish_sweep("godbersen", config, trials, per_trial.into_iter().flatten().collect())
}

fn finish_sweep(command: &str, config: &RunConfig, instances: u64, records: Vec<Record>) -> anyhow::Result<Outcome> {
    let report = SweepReport::new(command, config.clone(), instances, records);
    let code = if report.summary.disagreements > 0 {
        EXIT_DISAGREEMENT
    } else if report.summary.violations > 0 {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        output: report.render()?,
        code,
    })
}

// ------------------------------------------------------------------ audit

pub fn audit(assembly: &OrthantAssembly, j: Option<usize>) -> anyhow::Result<Outcome> {
    let reports = match j {
        Some(j) => {
            check_j(j, assembly.dim())?;
            vec![proof_chain_audit(assembly, j)?]
        }
        None => proof_chain_audit_profile(assembly)?,
    };
    let code = if !reports.iter().all(|r| r.exact_steps_hold()) {
        EXIT_DISAGREEMENT
    } else if !reports.iter().all(|r| r.inequalities_hold()) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    };
    let output = match j {
        Some(_) => pretty(&reports[0])?,
        None => pretty(&reports)?,
    };
    Ok(Outcome { output, code })
}

// -------------------------------------------------------------------- gen

pub fn gen(config: &RunConfig, source: &InstanceSource) -> anyhow::Result<Outcome> {
    check_dim(config.dim, false)?;
    let (_, a) = instance(source, config.dim, config.seed, 0)?;
    Ok(Outcome::ok(assembly_to_json(&a) + "\n"))
}

// ---------------------------------------------------------------- simplex

pub struct SimplexArgs {
    pub alphas: Vec<Rational>,
    pub betas: Option<Vec<Rational>>,
    pub j: Option<usize>,
    pub lambda: Option<Rational>,
    pub cross_check: bool,
    pub format: Option<Format>,
}

pub fn simplex(args: &SimplexArgs) -> anyhow::Result<Outcome> {
    let s = AlignedSimplex::new(args.alphas.clone())?;
    let n = s.dim();
    check_dim(n, false)?;
    let t = match &args.betas {
        Some(b) if b.len() != n => return Err(fail(EXIT_PARSE, format!("{} betas for {n} alphas", b.len()))),
        Some(b) => Some(AlignedSimplex::new(b.clone())?),
        None => None,
    };
    let js_range: Vec<usize> = match args.j {
        Some(j) => {
            check_j(j, n)?;
            vec![j]
        }
        None => (0..=n).collect(),
    };
    let mut rows: Vec<(String, Rational, Option<Rational>)> = Vec::new();
    let (sp, tp) = (s.polytope()?, t.as_ref().map(AlignedSimplex::polytope).transpose()?);
    let delta = VPolytope::standard_simplex(n)?;
    for &j in &js_range {
        let closed = match &t {
            Some(t) => corollary_mixed_volume(&s, t, j)?,
            None => lemma_mixed_volume(&s, j)?,
        };
        let engine = args
            .cross_check
            .then(|| mixed_volume_pair(&sp, tp.as_ref().unwrap_or(&delta), j))
            .transpose()?;
        rows.push((format!("j={j}"), closed, engine));
    }
    if let Some(lambda) = &args.lambda {
        let closed = simplex_sum_series(&s, lambda)?;
        let engine = args
            .cross_check
            .then(|| -> anyhow::Result<Rational> { Ok(delta.minkowski_sum(&sp.scale(lambda)?)?.volume()) })
            .transpose()?;
        rows.push((format!("lambda={lambda}"), closed, engine));
    }
    let agree = rows.iter().all(|(_, c, e)| e.as_ref().is_none_or(|e| e == c));
    let output = match args.format {
        None if rows.len() == 1 && agree => format!("{}\n", rows[0].1),
        None => rows
            .iter()
            .map(|(k, c, e)| match e {
                Some(e) if e != c => format!("{k} {c} (engine {e})\n"),
                _ => format!("{k} {c}\n"),
            })
            .collect(),
        Some(Format::Json) => {
            let values: Vec<Value> = rows
                .iter()
                .map(|(k, c, e)| {
                    let mut o = json!({ "at": k, "value": js(c) });
                    if let Some(e) = e {
                        o["engine"] = js(e);
                    }
                    o
                })
                .collect();
            pretty(&json!({ "dim": n, "values": values, "agree": agree }))?
        }
        Some(Format::Csv) => {
            let mut s = String::from("at,value,engine\n");
            for (k, c, e) in &rows {
                s.push_str(&format!(
                    "{k},{c},{}\n",
                    e.as_ref().map(ToString::to_string).unwrap_or_default()
                ));
            }
            s
        }
    };
    Ok(Outcome {
        output,
        code: if agree { EXIT_OK } else { EXIT_DISAGREEMENT },
    })
}

fn random_scalars<R: Rng>(rng: &mut R, n: usize, max: i64) -> Vec<Rational> {
    (0..n).map(|_| int(rng.random_range(0..=max))).collect()
}

/// Random integer alphas (and betas) in `[0, 4]`: closed forms against the engine.
pub fn simplex_sweep(config: &RunConfig) -> anyhow::Result<Outcome> {
    let n = config.dim;
    check_dim(n, true)?;
    let delta = VPolytope::standard_simplex(n)?;
    let per_trial: Vec<Vec<Record>> = (0..config.trials)
        .into_par_iter()
        .map(|trial| -> anyhow::Result<Vec<Record>> {
            let mut rng = trial_rng(config.seed, trial);
            let s = AlignedSimplex::new(random_scalars(&mut rng, n, 4))?;
            let t = AlignedSimplex::new(random_scalars(&mut rng, n, 4))?;
            let (sp, tp) = (s.polytope()?, t.polytope()?);
            let desc = |x: &AlignedSimplex| x.alphas().iter().map(format_rational).collect::<Vec<_>>().join(",");
            let lemma_desc = format!("alphas={}", desc(&s));
            let cor_desc = format!("alphas={}:betas={}", desc(&s), desc(&t));
            let lemma_poly = corner_core::volume_polynomial(&sp, &delta)?;
            let cor_poly = corner_core::volume_polynomial(&sp, &tp)?;
            let mut out = Vec::new();
            for j in 0..=n {
                out.push(Record::agreement(
                    trial,
                    &lemma_desc,
                    "lemma",
                    Some(j),
                    lemma_mixed_volume(&s, j)?,
                    lemma_poly.mixed(j)?,
                ));
                out.push(Record::agreement(
                    trial,
                    &cor_desc,
                    "corollary",
                    Some(j),
                    corollary_mixed_volume(&s, &t, j)?,
                    cor_poly.mixed(j)?,
                ));
            }
            Ok(out)
        })
        .collect::<anyhow::Result<_>>()?;
    finish_sweep(
        "simplex",
        config,
        config.trials,
        per_trial.into_iter().flatten().collect(),
    )
}

// -------------------------------------------------------------- decompose

pub fn decompose(
    k: &AntiBlockingBody,
    kp: &AntiBlockingBody,
    j: Option<usize>,
    cross_check: bool,
) -> anyhow::Result<Outcome> {
    let n = k.dim();
    if kp.dim() != n {
        return Err(fail(EXIT_PARSE, format!("dimensions differ: {n} and {}", kp.dim())));
    }
    check_dim(n, false)?;
    let js_range: Vec<usize> = match j {
        Some(j) => {
            check_j(j, n)?;
            vec![j]
        }
        None => (0..=n).collect(),
    };
    let neg = kp.body().negate();
    let mut agree = true;
    let mut entries = Vec::new();
    for j in js_range {
        let terms: Vec<Value> = CoordSubspace::all_of_dim(n, j)
            .iter()
            .map(|e| -> anyhow::Result<Value> {
                let ec = e.complement();
                Ok(json!({
                    "subspace": e.to_string(),
                    "projection": js(&k.project(e)?.relative_volume(e)?),
                    "complement_projection": js(&kp.project(&ec)?.relative_volume(&ec)?),
                    "product": js(&projection_product(k, kp, e)?),
                }))
            })
            .collect::<anyhow::Result<_>>()?;
        let value = ab_opposite_mixed(k, kp, j)?;
        let mut entry = json!({ "j": j, "value": js(&value), "terms": terms });
        if cross_check {
            let direct = mixed_volume_pair(k.body(), &neg, j)?;
            agree &= direct == value;
            entry["direct"] = js(&direct);
        }
        entries.push(entry);
    }
    let join = ab_join_volume(k, kp)?;
    let mut obj = json!({ "dim": n, "mixed": entries, "join_volume": js(&join) });
    if cross_check {
        let direct = k.body().join_hull(&neg)?.volume();
        agree &= direct == join;
        obj["join_volume_direct"] = js(&direct);
        obj["agree"] = Value::Bool(agree);
    }
    Ok(Outcome {
        output: pretty(&obj)?,
        code: if agree { EXIT_OK } else { EXIT_DISAGREEMENT },
    })
}

/// Random anti-blocking pairs: the projection formula and the join volume
/// against the engine, and `V(K[j], T[n-j]) <= V(K[j], -T[n-j])`.
pub fn decompose_sweep(config: &RunConfig) -> anyhow::Result<Outcome> {
    let n = config.dim;
    check_dim(n, true)?;
    let per_trial: Vec<Vec<Record>> = (0..config.trials)
        .into_par_iter()
        .map(|trial| -> anyhow::Result<Vec<Record>> {
            let mut rng = trial_rng(config.seed, trial);
            let k = random_ab(&mut rng, n)?;
            let kp = random_ab(&mut rng, n)?;
            let desc = format!(
                "ab-pair:n={n}:seed={config_seed}:trial={trial}",
                config_seed = config.seed
            );
            let neg = kp.body().negate();
            let opposite = corner_core::volume_polynomial(k.body(), &neg)?;
            let same = corner_core::volume_polynomial(k.body(), kp.body())?;
            let mut out = Vec::new();
            for j in 0..=n {
                let direct = opposite.mixed(j)?;
                out.push(Record::agreement(
                    trial,
                    &desc,
                    "opposite-mixed",
                    Some(j),
                    ab_opposite_mixed(&k, &kp, j)?,
                    direct.clone(),
                ));
                out.push(Record::inequality(
                    trial,
                    &desc,
                    "reverse-kleitman",
                    Some(j),
                    same.mixed(j)?,
                    direct,
                    j == 0 || j == n,
                ));
            }
            out.push(Record::agreement(
                trial,
                &desc,
                "join-volume",
                None,
                ab_join_volume(&k, &kp)?,
                k.body().join_hull(&neg)?.volume(),
            ));
            let pair = json!({
                "k": corner_core::io::PolytopeJson::from_anti_blocking(&k),
                "k_prime": corner_core::io::PolytopeJson::from_anti_blocking(&kp),
            });
            for r in out
                .iter_mut()
                .filter(|r| matches!(r.verdict, Verdict::Violated | Verdict::Disagree))
            {
                r.body = Some(pair.clone());
            }
            Ok(out)
        })
        .collect::<anyhow::Result<_>>()?;
    finish_sweep(
        "decompose",
        config,
        config.trials,
        per_trial.into_iter().flatten().collect(),
    )
}
