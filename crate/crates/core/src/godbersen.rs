//! Godbersen's inequality `V(K[j], -K[n-j]) <= C(n,j) Vol(K)` for locally
//! anti-blocking bodies: the check itself, the simplex families attaining
//! equality, and a step-by-step audit of the orthant argument behind it.

use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::antiblocking::{ab_opposite_mixed, projection_product, AntiBlockingBody};
use crate::assembly::{lab_volume, lab_volume_polynomial, OrthantAssembly};
use crate::error::{Error, Result};
use crate::io::{exact, exact_opt};
use crate::mixed::{check_j, mixed_volume_pair, volume_polynomial};
use crate::point::Point;
use crate::polytope::VPolytope;
use crate::rational::{binomial, Rational};
use crate::subspace::{CoordSubspace, SignVector};

/// The two simplex families attaining equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqualityCase {
    /// `conv(0, a_1 e_1, ..., a_n e_n)`.
    Simplex,
    /// `conv(a_1 e_1, -b e_1, a_2 e_2, ..., a_n e_n)`.
    TwoSided(Rational),
}

pub fn equality_family(case: &EqualityCase, alphas: &[Rational]) -> Result<OrthantAssembly> {
    let n = alphas.len();
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if let Some(a) = alphas.iter().find(|a| !a.is_positive()) {
        return Err(Error::NonPositiveParameter(format!("alpha = {a}")));
    }
    if let EqualityCase::TwoSided(b) = case {
        if !b.is_positive() {
            return Err(Error::NonPositiveParameter(format!("beta = {b}")));
        }
    }
    let mut map = BTreeMap::new();
    for sigma in SignVector::all(n) {
        let first = match (case, sigma.is_negative(0)) {
            (_, false) => Some(alphas[0].clone()),
            (EqualityCase::TwoSided(b), true) => Some(b.clone()),
            (EqualityCase::Simplex, true) => None,
        };
        let mut pts = vec![Point::origin(n)];
        pts.extend(first.map(|a| Point::axis(n, 0, a)));
        for (i, a) in alphas.iter().enumerate().skip(1) {
            if !sigma.is_negative(i) {
                pts.push(Point::axis(n, i, a.clone()));
            }
        }
        map.insert(sigma, AntiBlockingBody::new(VPolytope::new(n, &pts)?)?);
    }
    OrthantAssembly::assemble(n, map)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GodbersenReport {
    pub j: usize,
    /// `V(K[j], -K[n-j])`.
    #[serde(with = "exact")]
    pub mixed: Rational,
    /// `C(n,j) Vol(K)`.
    #[serde(with = "exact")]
    pub bound: Rational,
    #[serde(with = "exact_opt")]
    pub ratio: Option<Rational>,
    pub is_equality: bool,
    /// `j` is `0` or `n`, where equality is automatic.
    pub trivial: bool,
}

impl GodbersenReport {
    pub fn holds(&self) -> bool {
        self.mixed <= self.bound
    }
}

fn require_full(a: &OrthantAssembly) -> Result<()> {
    if a.is_full_dimensional() {
        Ok(())
    } else {
        Err(Error::NotFullDimensional)
    }
}

/// Reports for every `j = 0..=n`. The mixed volumes come from the orthant
/// decomposition and, independently, from the volume polynomial of
/// `K + t(-K)` on the global hull; a mismatch is an error.
pub fn godbersen_profile(a: &OrthantAssembly) -> Result<Vec<GodbersenReport>> {
    require_full(a)?;
    let n = a.dim();
    let hull = a.global_hull();
    let (split, direct) = rayon::join(
        || lab_volume_polynomial(a, &a.negate()),
        || volume_polynomial(&hull, &hull.negate()),
    );
    let (split, direct) = (split?, direct?);
    let vol = lab_volume(a);
    if vol != hull.volume() {
        return Err(Error::RouteDisagreement {
            what: "Vol(K)".into(),
            left: vol.to_string(),
            right: hull.volume().to_string(),
        });
    }
    (0..=n)
        .map(|j| {
            let c = Rational::from_integer(binomial(n, j));
            if split[j] != direct.coefficients()[j] {
                return Err(Error::RouteDisagreement {
                    what: format!("V(K[{j}], -K[{}])", n - j),
                    left: (&split[j] / &c).to_string(),
                    right: (&direct.coefficients()[j] / &c).to_string(),
                });
            }
            Ok(report(j, n, &split[j] / &c, c * &vol))
        })
        .collect()
}

pub fn godbersen_check(a: &OrthantAssembly, j: usize) -> Result<GodbersenReport> {
    check_j(j, a.dim())?;
    require_full(a)?;
    let n = a.dim();
    let hull = a.global_hull();
    let split = crate::assembly::lab_mixed(a, &a.negate(), j)?;
    let direct = mixed_volume_pair(&hull, &hull.negate(), j)?;
    if split != direct {
        return Err(Error::RouteDisagreement {
            what: format!("V(K[{j}], -K[{}])", n - j),
            left: split.to_string(),
            right: direct.to_string(),
        });
    }
    let bound = Rational::from_integer(binomial(n, j)) * lab_volume(a);
    Ok(report(j, n, split, bound))
}

fn report(j: usize, n: usize, mixed: Rational, bound: Rational) -> GodbersenReport {
    let ratio = (!bound.is_zero()).then(|| &mixed / &bound);
    GodbersenReport {
        j,
        is_equality: mixed == bound,
        mixed,
        bound,
        ratio,
        trivial: j == 0 || j == n,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    Equality,
    Inequality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditStep {
    pub name: &'static str,
    pub kind: StepKind,
    #[serde(with = "exact")]
    pub left: Rational,
    #[serde(with = "exact")]
    pub right: Rational,
    pub holds: bool,
    /// For inequalities: whether `left < right`.
    pub strict: bool,
}

impl AuditStep {
    fn new(name: &'static str, kind: StepKind, left: Rational, right: Rational, extra_ok: bool) -> Self {
        let holds = extra_ok
            && match kind {
                StepKind::Equality => left == right,
                StepKind::Inequality => left <= right,
            };
        let strict = left < right;
        AuditStep {
            name,
            kind,
            left,
            right,
            holds,
            strict,
        }
    }
}

/// A place where an inequality step is strict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slack {
    pub step: &'static str,
    pub orthant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subspace: Option<String>,
    #[serde(with = "exact")]
    pub left: Rational,
    #[serde(with = "exact")]
    pub right: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub dim: usize,
    pub j: usize,
    #[serde(with = "exact")]
    pub volume: Rational,
    /// `V(K[j], -K[n-j])` on the global hull.
    #[serde(with = "exact")]
    pub mixed: Rational,
    #[serde(with = "exact")]
    pub bound: Rational,
    #[serde(with = "exact_opt")]
    pub ratio: Option<Rational>,
    pub steps: Vec<AuditStep>,
    pub slack: Vec<Slack>,
}

impl AuditReport {
    pub fn exact_steps_hold(&self) -> bool {
        self.steps
            .iter()
            .filter(|s| s.kind == StepKind::Equality)
            .all(|s| s.holds)
    }

    pub fn inequalities_hold(&self) -> bool {
        self.steps
            .iter()
            .filter(|s| s.kind == StepKind::Inequality)
            .all(|s| s.holds)
    }

    pub fn step(&self, name: &str) -> Option<&AuditStep> {
        self.steps.iter().find(|s| s.name == name)
    }
}

pub const STEP_ORTHANT_SPLIT: &str = "orthant-split";
pub const STEP_REVERSE_KLEITMAN: &str = "reverse-kleitman";
pub const STEP_OPPOSITE_EXPANSION: &str = "opposite-orthant-expansion";
pub const STEP_REINDEX: &str = "bijection-reindex";
pub const STEP_ROGERS_SHEPHARD: &str = "rogers-shephard";

fn sum(values: impl IntoIterator<Item = Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |a, b| a + b)
}

/// Walks the chain
///
/// ```text
/// V(K[j],-K[n-j]) = sum_s V(K_s[j], (-K)_s[n-j])              orthant split
///                <= sum_s V(K_s[j], -(-K)_s[n-j])             reverse Kleitman
///                 = sum_s C^-1 sum_E |P_E K_s| |P_E' K_-s|     opposite-orthant expansion
///                 = C^-1 sum_E sum_t |P_E K_t| |P_E' K_t|      re-indexing t = s(t,E)
///                <= C(n,j) Vol(K)                              Rogers-Shephard per orthant
/// ```
///
/// with `C = C(n,j)` and `E' = E^perp`, evaluating every side independently.
/// Pieces are used in positive-orthant coordinates, where `(-K)_s` becomes
/// the stored piece at `-s`.
pub fn proof_chain_audit(a: &OrthantAssembly, j: usize) -> Result<AuditReport> {
    check_j(j, a.dim())?;
    AuditContext::new(a)?.report(j)
}

/// [`proof_chain_audit`] for every `j = 0..=n`, sharing the volume polynomials.
pub fn proof_chain_audit_profile(a: &OrthantAssembly) -> Result<Vec<AuditReport>> {
    let ctx = AuditContext::new(a)?;
    (0..=a.dim()).map(|j| ctx.report(j)).collect()
}

/// Volume polynomials needed by the audit, computed once per distinct pair
/// of stored pieces.
struct AuditContext<'a> {
    a: &'a OrthantAssembly,
    sigmas: Vec<SignVector>,
    volume: Rational,
    /// Coefficients of `Vol(K + t(-K))` on the global hull.
    direct: Vec<Rational>,
    /// Per orthant `s`: coefficients for `K_s + t K_-s` and `K_s - t K_-s`.
    same: Vec<Vec<Rational>>,
    opposite: Vec<Vec<Rational>>,
}

impl<'a> AuditContext<'a> {
    fn new(a: &'a OrthantAssembly) -> Result<Self> {
        require_full(a)?;
        let sigmas: Vec<SignVector> = SignVector::all(a.dim()).collect();
        let mut distinct: Vec<(&AntiBlockingBody, &AntiBlockingBody)> = Vec::new();
        let mut slot = HashMap::new();
        let slots: Vec<usize> = sigmas
            .iter()
            .map(|s| {
                let key = (a.piece(s), a.piece(&s.negated()));
                *slot.entry(key).or_insert_with(|| {
                    distinct.push(key);
                    distinct.len() - 1
                })
            })
            .collect();
        let pairs: Vec<(Vec<Rational>, Vec<Rational>)> = distinct
            .par_iter()
            .map(|(k, kp)| -> Result<_> {
                let same = volume_polynomial(k.body(), kp.body())?;
                let opposite = volume_polynomial(k.body(), &kp.body().negate())?;
                Ok((same.coefficients().to_vec(), opposite.coefficients().to_vec()))
            })
            .collect::<Result<_>>()?;
        let hull = a.global_hull();
        let direct = volume_polynomial(&hull, &hull.negate())?.coefficients().to_vec();
        Ok(AuditContext {
            a,
            volume: lab_volume(a),
            direct,
            same: slots.iter().map(|&i| pairs[i].0.clone()).collect(),
            opposite: slots.iter().map(|&i| pairs[i].1.clone()).collect(),
            sigmas,
        })
    }

    fn report(&self, j: usize) -> Result<AuditReport> {
        let a = self.a;
        let n = a.dim();
        let c = Rational::from_integer(binomial(n, j));
        let mixed = &self.direct[j] / &c;
        let bound = &c * &self.volume;

        struct Orthant {
            same: Rational,
            opposite: Rational,
            expansion: Rational,
        }
        let per_orthant: Vec<Orthant> = self
            .sigmas
            .par_iter()
            .enumerate()
            .map(|(i, s)| -> Result<Orthant> {
                Ok(Orthant {
                    same: &self.same[i][j] / &c,
                    opposite: &self.opposite[i][j] / &c,
                    expansion: ab_opposite_mixed(a.piece(s), a.piece(&s.negated()), j)?,
                })
            })
            .collect::<Result<_>>()?;

        let subspaces = CoordSubspace::all_of_dim(n, j);
        struct Cell {
            sigma: SignVector,
            e: CoordSubspace,
            product: Rational,
            rs_bound: Rational,
            projections_match: bool,
        }
        let cells: Vec<Cell> = self
            .sigmas
            .par_iter()
            .flat_map_iter(|t| subspaces.iter().map(move |e| (*t, *e)))
            .map(|(t, e)| -> Result<Cell> {
                let k = a.piece(&t);
                let ec = e.complement();
                // s(t,E) agrees with t on E and with -t off it.
                let s = t.flip_outside(e.mask());
                let projections_match = k.project(&e)? == a.piece(&s).project(&e)?
                    && k.project(&ec)? == a.piece(&s.negated()).project(&ec)?;
                Ok(Cell {
                    sigma: t,
                    e,
                    product: projection_product(k, k, &e)?,
                    rs_bound: &c * k.volume(),
                    projections_match,
                })
            })
            .collect::<Result<_>>()?;

        let split_total = sum(per_orthant.iter().map(|o| o.same.clone()));
        let opposite_total = sum(per_orthant.iter().map(|o| o.opposite.clone()));
        let expansion_total = sum(per_orthant.iter().map(|o| o.expansion.clone()));
        let reindexed_total = sum(cells.iter().map(|x| x.product.clone())) / &c;
        let per_orthant_ok = per_orthant.iter().all(|o| o.same <= o.opposite);
        let opposite_ok = per_orthant.iter().all(|o| o.opposite == o.expansion);
        let reindex_ok = cells.iter().all(|x| x.projections_match);
        let rs_ok = cells.iter().all(|x| x.product <= x.rs_bound);

        let steps = vec![
            AuditStep::new(
                STEP_ORTHANT_SPLIT,
                StepKind::Equality,
                mixed.clone(),
                split_total.clone(),
                true,
            ),
            AuditStep::new(
                STEP_REVERSE_KLEITMAN,
                StepKind::Inequality,
                split_total,
                opposite_total.clone(),
                per_orthant_ok,
            ),
            AuditStep::new(
                STEP_OPPOSITE_EXPANSION,
                StepKind::Equality,
                opposite_total,
                expansion_total.clone(),
                opposite_ok,
            ),
            AuditStep::new(
                STEP_REINDEX,
                StepKind::Equality,
                expansion_total,
                reindexed_total.clone(),
                reindex_ok,
            ),
            AuditStep::new(
                STEP_ROGERS_SHEPHARD,
                StepKind::Inequality,
                reindexed_total,
                bound.clone(),
                rs_ok,
            ),
        ];

        let mut slack = Vec::new();
        for (s, o) in self.sigmas.iter().zip(&per_orthant) {
            if o.same < o.opposite {
                slack.push(Slack {
                    step: STEP_REVERSE_KLEITMAN,
                    orthant: s.to_string(),
                    subspace: None,
                    left: o.same.clone(),
                    right: o.opposite.clone(),
                });
            }
        }
        for x in &cells {
            if x.product < x.rs_bound {
                slack.push(Slack {
                    step: STEP_ROGERS_SHEPHARD,
                    orthant: x.sigma.to_string(),
                    subspace: Some(x.e.to_string()),
                    left: x.product.clone(),
                    right: x.rs_bound.clone(),
                });
            }
        }
        let ratio = (!bound.is_zero()).then(|| &mixed / &bound);
        Ok(AuditReport {
            dim: n,
            j,
            volume: self.volume.clone(),
            mixed,
            bound,
            ratio,
            steps,
            slack,
        })
    }
}

/// Whether the global hull is a simplex.
pub fn is_simplex(a: &OrthantAssembly) -> bool {
    let hull = a.global_hull();
    hull.is_full_dimensional() && hull.vertices().len() == a.dim() + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn is_one(x: &Option<Rational>) -> bool {
        x.as_ref().is_some_and(num_traits::One::is_one)
    }

    fn ones(n: usize) -> Vec<Rational> {
        vec![int(1); n]
    }

    fn cube(n: usize) -> OrthantAssembly {
        OrthantAssembly::from_unconditional(&AntiBlockingBody::new(VPolytope::unit_cube(n).unwrap()).unwrap())
    }

    #[test]
    fn families_have_the_expected_shape() {
        let a = equality_family(&EqualityCase::Simplex, &ones(3)).unwrap();
        assert_eq!(a.global_hull(), VPolytope::standard_simplex(3).unwrap());
        let seg = equality_family(&EqualityCase::TwoSided(int(1)), &ones(1)).unwrap();
        assert_eq!(
            seg.global_hull(),
            VPolytope::from_int_points(1, &[&[-1], &[1]]).unwrap()
        );
        let tri = equality_family(&EqualityCase::TwoSided(int(1)), &ones(2)).unwrap();
        assert_eq!(
            tri.global_hull(),
            VPolytope::from_int_points(2, &[&[1, 0], &[-1, 0], &[0, 1]]).unwrap()
        );
        let a = equality_family(&EqualityCase::Simplex, &[int(2), int(3), frac(1, 2)]).unwrap();
        assert_eq!(lab_volume(&a), frac(3, 6));
        assert!(matches!(
            equality_family(&EqualityCase::TwoSided(int(0)), &ones(2)),
            Err(Error::NonPositiveParameter(_))
        ));
        assert!(equality_family(&EqualityCase::Simplex, &[int(1), int(-1)]).is_err());
    }

    #[test]
    fn negating_the_simplex_family() {
        let alphas = [int(2), int(3)];
        let a = equality_family(&EqualityCase::Simplex, &alphas).unwrap();
        let neg = a.negate();
        assert_eq!(neg.global_hull(), VPolytope::aligned_simplex(&alphas).unwrap().negate());
        assert_eq!(neg.negate(), a);
    }

    #[test]
    fn simplex_and_cube_reports() {
        let a = equality_family(&EqualityCase::Simplex, &ones(3)).unwrap();
        let r = godbersen_check(&a, 1).unwrap();
        assert_eq!((r.mixed.clone(), r.bound.clone()), (frac(1, 2), frac(1, 2)));
        assert!(r.is_equality && !r.trivial);

        let r = godbersen_check(&cube(2), 1).unwrap();
        assert_eq!(
            (r.mixed.clone(), r.bound.clone(), r.ratio.clone()),
            (int(4), int(8), Some(frac(1, 2)))
        );

        for rep in godbersen_profile(&cube(3)).unwrap() {
            assert_eq!(rep.is_equality, rep.trivial);
            assert!(rep.holds());
        }
        let r = godbersen_check(&cube(3), 0).unwrap();
        assert!(r.is_equality && r.trivial);
    }

    #[test]
    fn profile_matches_single_checks() {
        let a = equality_family(&EqualityCase::TwoSided(int(2)), &[int(1), int(3), int(1)]).unwrap();
        let profile = godbersen_profile(&a).unwrap();
        for (j, rep) in profile.iter().enumerate() {
            assert_eq!(rep, &godbersen_check(&a, j).unwrap());
            assert!(rep.is_equality);
        }
    }

    #[test]
    fn lower_dimensional_assembly_is_refused() {
        let seg = AntiBlockingBody::hull(&[Point::from_ints(&[1, 0])]).unwrap();
        let a = OrthantAssembly::from_unconditional(&seg);
        assert!(matches!(godbersen_check(&a, 1), Err(Error::NotFullDimensional)));
    }

    #[test]
    fn audit_of_equality_families_has_no_slack_in_the_totals() {
        for case in [EqualityCase::Simplex, EqualityCase::TwoSided(int(3))] {
            let a = equality_family(&case, &[int(2), int(1), int(1)]).unwrap();
            for j in 0..=3 {
                let r = proof_chain_audit(&a, j).unwrap();
                assert!(r.exact_steps_hold() && r.inequalities_hold(), "{r:?}");
                assert!(is_one(&r.ratio));
                for s in &r.steps {
                    assert_eq!(s.left, s.right, "{case:?} j={j} {}", s.name);
                }
            }
        }
    }

    #[test]
    fn audit_of_the_cube_is_strict_at_the_last_step() {
        let r = proof_chain_audit(&cube(2), 1).unwrap();
        assert!(r.exact_steps_hold() && r.inequalities_hold());
        assert!(r.step(STEP_ROGERS_SHEPHARD).unwrap().strict);
        assert!(r.slack.iter().any(|s| s.step == STEP_ROGERS_SHEPHARD));
        assert_eq!(r.ratio, Some(frac(1, 2)));
    }

    #[test]
    fn audit_serializes_exact_strings() {
        let a = equality_family(&EqualityCase::Simplex, &ones(2)).unwrap();
        let r = proof_chain_audit(&a, 1).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains(r#""mixed":"1""#), "{text}");
        assert!(text.contains(r#""name":"bijection-reindex""#));
    }
}
