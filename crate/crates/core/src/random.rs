//! Seeded random instances: anti-blocking bodies and locally anti-blocking
//! assemblies. Every generator is a pure function of its RNG state.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::antiblocking::AntiBlockingBody;
use crate::assembly::OrthantAssembly;
use crate::error::{Error, Result};
use crate::point::Point;
use crate::rational::int;
use crate::subspace::{full_mask, SignVector};

/// Largest coordinate used by the generators.
pub const DEFAULT_MAX_COORD: i64 = 4;
/// Attempts before a generator gives up.
pub const MAX_ATTEMPTS: usize = 64;

/// The RNG for trial `trial` of a run seeded with `seed`. Streams for
/// different trials are independent, so trials may run in any order.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `ab_hull` of `k` generators with integer coordinates in `[0, max]`; a
/// generator with every coordinate at least `1` is added when the result
/// would otherwise be lower-dimensional.
pub fn random_ab_body<R: Rng>(rng: &mut R, n: usize, k: usize, max: i64) -> Result<AntiBlockingBody> {
    let mut gens: Vec<Point> = (0..k)
        .map(|_| Point::new((0..n).map(|_| int(rng.random_range(0..=max))).collect()))
        .collect();
    if !gens.is_empty() {
        let body = AntiBlockingBody::hull(&gens)?;
        if body.body().is_full_dimensional() {
            return Ok(body);
        }
    }
    gens.push(Point::new(
        (0..n).map(|_| int(rng.random_range(1..=max.max(1)))).collect(),
    ));
    AntiBlockingBody::hull(&gens)
}

/// [`random_ab_body`] with `k = n` and coordinates up to [`DEFAULT_MAX_COORD`].
pub fn random_ab<R: Rng>(rng: &mut R, n: usize) -> Result<AntiBlockingBody> {
    random_ab_body(rng, n, n, DEFAULT_MAX_COORD)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Style {
    /// All orthant pieces equal.
    Unconditional,
    /// Different pieces glued along shared coordinate projections.
    Glued,
}

impl FromStr for Style {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unconditional" => Ok(Style::Unconditional),
            "glued" => Ok(Style::Glued),
            _ => Err(Error::Parse(format!("unknown style {s:?}"))),
        }
    }
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Style::Unconditional => "unconditional",
            Style::Glued => "glued",
        })
    }
}

pub fn random_assembly(seed: u64, n: usize, style: Style) -> Result<OrthantAssembly> {
    random_assembly_with(&mut trial_rng(seed, 0), n, style)
}

pub fn random_assembly_with<R: Rng>(rng: &mut R, n: usize, style: Style) -> Result<OrthantAssembly> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    match style {
        Style::Unconditional => Ok(OrthantAssembly::from_unconditional(&random_ab(rng, n)?)),
        Style::Glued => {
            for _ in 0..MAX_ATTEMPTS {
                if let Ok(a) = glued_from_generators(n, &signed_generators(rng, n)) {
                    if a.is_full_dimensional() {
                        return Ok(a);
                    }
                }
            }
            Err(Error::GenerationFailed(MAX_ATTEMPTS))
        }
    }
}

/// A glued assembly with at least two distinct full-dimensional pieces and
/// a global hull that is not a simplex.
pub fn random_non_simplex_glued<R: Rng>(rng: &mut R, n: usize) -> Result<OrthantAssembly> {
    for _ in 0..MAX_ATTEMPTS {
        let a = random_assembly_with(rng, n, Style::Glued)?;
        let hull = a.global_hull();
        if a.distinct_full_dimensional_pieces() >= 2 && hull.vertices().len() > n + 1 {
            return Ok(a);
        }
    }
    Err(Error::GenerationFailed(MAX_ATTEMPTS))
}

/// `n` generators with coordinates in `[-M, M]`, plus one with every
/// coordinate in `[1, M]` and one with every coordinate nonzero and a random
/// sign pattern other than all-plus (for `n >= 1`).
fn signed_generators<R: Rng>(rng: &mut R, n: usize) -> Vec<Point> {
    let m = DEFAULT_MAX_COORD;
    let mut gens: Vec<Point> = (0..n)
        .map(|_| Point::new((0..n).map(|_| int(rng.random_range(-m..=m))).collect()))
        .collect();
    gens.push(Point::new((0..n).map(|_| int(rng.random_range(1..=m))).collect()));
    let pattern = rng.random_range(1..=full_mask(n));
    gens.push(Point::new(
        (0..n)
            .map(|i| {
                let v = rng.random_range(1..=m);
                int(if pattern >> i & 1 == 1 { -v } else { v })
            })
            .collect(),
    ));
    gens
}

/// The assembly whose piece at `sigma` is the down-closure of `|g^sigma|`
/// over the generators, where `g^sigma` zeroes the coordinates of `g` whose
/// sign disagrees with `sigma`. Pieces of orthants sharing signs on `E` then
/// share the projection onto `E` by construction.
pub fn glued_from_generators(n: usize, gens: &[Point]) -> Result<OrthantAssembly> {
    let mut map = BTreeMap::new();
    for sigma in SignVector::all(n) {
        let pts: Vec<Point> = gens
            .iter()
            .map(|g| {
                Point::new(
                    g.coords()
                        .iter()
                        .enumerate()
                        .map(|(i, c)| {
                            let agrees = if sigma.is_negative(i) { c < &int(0) } else { c > &int(0) };
                            if agrees {
                                if sigma.is_negative(i) {
                                    -c.clone()
                                } else {
                                    c.clone()
                                }
                            } else {
                                int(0)
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        map.insert(sigma, AntiBlockingBody::hull(&pts)?);
    }
    OrthantAssembly::assemble(n, map)
}
