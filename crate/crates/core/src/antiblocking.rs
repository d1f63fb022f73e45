//! Anti-blocking bodies (convex corners) and the identities for pairs of them
//! placed in opposite orthants.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mixed::{check_j, mixed_volume_pair};
use crate::point::Point;
use crate::polytope::VPolytope;
use crate::rational::{binomial, Rational};
use crate::subspace::{full_mask, CoordSubspace};

/// A down-closed polytope in the closed nonnegative orthant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AntiBlockingBody(VPolytope);

impl AntiBlockingBody {
    /// Wraps `body` after checking it is anti-blocking.
    pub fn new(body: VPolytope) -> Result<Self> {
        if let Some(v) = body
            .vertices()
            .iter()
            .find(|v| v.coords().iter().any(Signed::is_negative))
        {
            return Err(Error::NegativeCoordinate(v.to_string()));
        }
        if let Some((v, e)) = down_closure_witness(&body) {
            return Err(Error::NotAntiBlocking(format!(
                "projection of {v} onto {e} is not in the body"
            )));
        }
        Ok(AntiBlockingBody(body))
    }

    /// Smallest anti-blocking body containing `generators`: the hull of every
    /// coordinate-masked copy `g * m`, `m in {0,1}^n`.
    pub fn hull(generators: &[Point]) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyInput)?;
        let n = first.dim();
        let mut pts = Vec::with_capacity(generators.len() << n);
        for g in generators {
            g.check_dim(n)?;
            if g.coords().iter().any(Signed::is_negative) {
                return Err(Error::NegativeCoordinate(g.to_string()));
            }
            for m in 0..=full_mask(n) {
                pts.push(g.masked(m));
            }
        }
        Ok(AntiBlockingBody(VPolytope::new(n, &pts)?))
    }

    pub fn origin(dim: usize) -> Result<Self> {
        Ok(AntiBlockingBody(VPolytope::origin(dim)?))
    }

    pub fn body(&self) -> &VPolytope {
        &self.0
    }

    pub fn into_body(self) -> VPolytope {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn volume(&self) -> Rational {
        self.0.volume()
    }

    /// `P_E K`, which for an anti-blocking body is also `K n E`.
    pub fn project(&self, e: &CoordSubspace) -> Result<VPolytope> {
        self.0.project(e)
    }
}

/// Shorthand for [`AntiBlockingBody::hull`].
pub fn ab_hull(generators: &[Point]) -> Result<AntiBlockingBody> {
    AntiBlockingBody::hull(generators)
}

fn down_closure_witness(p: &VPolytope) -> Option<(Point, CoordSubspace)> {
    let n = p.dim();
    for e in CoordSubspace::all(n) {
        for v in p.vertices() {
            let w = v.masked(e.mask());
            if !p.contains(&w) {
                return Some((v.clone(), e));
            }
        }
    }
    None
}

/// Whether `p` lies in the nonnegative orthant and `P_E p` is inside `p` for
/// every coordinate subspace `E` (equivalently `P_E p = p n E`).
pub fn validate_ab(p: &VPolytope) -> bool {
    p.vertices().iter().all(|v| v.coords().iter().all(|c| !c.is_negative())) && down_closure_witness(p).is_none()
}

/// `C(n,j)^{-1} sum_E Vol_j(P_E K) Vol_{n-j}(P_{E^perp} K')` over `j`-dimensional
/// coordinate subspaces; this is `V_n(K[j], -K'[n-j])`.
pub fn ab_opposite_mixed(k: &AntiBlockingBody, kp: &AntiBlockingBody, j: usize) -> Result<Rational> {
    let n = same_dim(k, kp)?;
    check_j(j, n)?;
    let terms: Vec<Rational> = CoordSubspace::all_of_dim(n, j)
        .into_par_iter()
        .map(|e| projection_product(k, kp, &e))
        .collect::<Result<_>>()?;
    let total = terms.into_iter().fold(Rational::zero(), |a, b| a + b);
    Ok(total / Rational::from_integer(binomial(n, j)))
}

/// `Vol_j(P_E K) * Vol_{n-j}(P_{E^perp} K')`.
pub fn projection_product(k: &AntiBlockingBody, kp: &AntiBlockingBody, e: &CoordSubspace) -> Result<Rational> {
    let ec = e.complement();
    let a = k.project(e)?.relative_volume(e)?;
    if a.is_zero() {
        return Ok(a);
    }
    let b = kp.project(&ec)?.relative_volume(&ec)?;
    Ok(a * b)
}

/// `Vol(K v -K') = sum_j V_n(K[n-j], -K'[j])`, evaluated through [`ab_opposite_mixed`].
pub fn ab_join_volume(k: &AntiBlockingBody, kp: &AntiBlockingBody) -> Result<Rational> {
    let n = same_dim(k, kp)?;
    let mut total = Rational::zero();
    for j in 0..=n {
        total += ab_opposite_mixed(k, kp, n - j)?;
    }
    Ok(total)
}

fn same_dim(k: &AntiBlockingBody, kp: &AntiBlockingBody) -> Result<usize> {
    if k.dim() != kp.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: kp.dim(),
        });
    }
    Ok(k.dim())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleitmanReport {
    pub j: usize,
    /// `V(K[j], T[n-j])`, both bodies in the positive orthant.
    pub lhs: Rational,
    /// `V(K[j], -T[n-j])`.
    pub rhs: Rational,
    pub holds: bool,
}

/// Checks `V(K[j], T[n-j]) <= V(K[j], -T[n-j])`, both sides by interpolation.
pub fn reverse_kleitman_check(k: &AntiBlockingBody, t: &AntiBlockingBody, j: usize) -> Result<KleitmanReport> {
    same_dim(k, t)?;
    let lhs = mixed_volume_pair(k.body(), t.body(), j)?;
    let rhs = mixed_volume_pair(k.body(), &t.body().negate(), j)?;
    let holds = lhs <= rhs;
    Ok(KleitmanReport { j, lhs, rhs, holds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionReport {
    pub subspace: CoordSubspace,
    /// `Vol_j(P_E K) Vol_{n-j}(P_{E^perp} K)`.
    pub product: Rational,
    /// `C(n, j) Vol(K)`.
    pub bound: Rational,
    pub holds: bool,
}

/// Rogers-Shephard bound for the section/projection pair of an anti-blocking body.
pub fn rs_projection_check(k: &AntiBlockingBody, e: &CoordSubspace) -> Result<ProjectionReport> {
    if e.ambient_dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: e.ambient_dim(),
        });
    }
    if !k.body().is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let product = projection_product(k, k, e)?;
    let bound = Rational::from_integer(binomial(k.dim(), e.dim())) * k.volume();
    let holds = product <= bound;
    Ok(ProjectionReport {
        subspace: *e,
        product,
        bound,
        holds,
    })
}
