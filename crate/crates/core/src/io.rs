//! JSON forms of polytopes and assemblies. Every rational is an exact string
//! such as `"3"` or `"-1/2"`.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::antiblocking::AntiBlockingBody;
use crate::assembly::OrthantAssembly;
use crate::error::{Error, Result};
use crate::point::Point;
use crate::polytope::VPolytope;
use crate::rational::{format_rational, parse_rational};
use crate::subspace::SignVector;

/// `#[serde(with = "exact")]` for a single [`Rational`](crate::Rational).
pub mod exact {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// `#[serde(with = "exact_opt")]` for `Option<Rational>`.
pub mod exact_opt {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&format_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    #[serde(default)]
    pub vertices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssemblyJson {
    pub dim: usize,
    pub pieces: BTreeMap<String, PolytopeJson>,
}

pub const ANTI_BLOCKING_KIND: &str = "anti-blocking";

fn point_strings(p: &Point) -> Vec<String> {
    p.coords().iter().map(format_rational).collect()
}

fn parse_points(dim: usize, rows: &[Vec<String>]) -> Result<Vec<Point>> {
    rows.iter()
        .map(|row| {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            Ok(Point::new(
                row.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?,
            ))
        })
        .collect()
}

impl PolytopeJson {
    pub fn from_polytope(p: &VPolytope) -> Self {
        PolytopeJson {
            dim: p.dim(),
            vertices: p.vertices().iter().map(point_strings).collect(),
            kind: None,
            generators: None,
        }
    }

    pub fn from_anti_blocking(k: &AntiBlockingBody) -> Self {
        PolytopeJson {
            kind: Some(ANTI_BLOCKING_KIND.into()),
            ..Self::from_polytope(k.body())
        }
    }

    pub fn is_anti_blocking(&self) -> bool {
        self.kind.as_deref() == Some(ANTI_BLOCKING_KIND) || self.generators.is_some()
    }

    /// The hull of `vertices`, together with the down-closure of `generators`
    /// when present.
    pub fn to_polytope(&self) -> Result<VPolytope> {
        if let Some(kind) = &self.kind {
            if kind != ANTI_BLOCKING_KIND {
                return Err(Error::Parse(format!("unknown polytope kind {kind:?}")));
            }
        }
        let mut pts = parse_points(self.dim, &self.vertices)?;
        if let Some(gens) = &self.generators {
            let gens = parse_points(self.dim, gens)?;
            if !gens.is_empty() {
                pts.extend(AntiBlockingBody::hull(&gens)?.into_body().vertices().iter().cloned());
            }
        }
        VPolytope::new(self.dim, &pts)
    }

    pub fn to_anti_blocking(&self) -> Result<AntiBlockingBody> {
        AntiBlockingBody::new(self.to_polytope()?)
    }
}

impl AssemblyJson {
    pub fn from_assembly(a: &OrthantAssembly) -> Self {
        let pieces = a
            .pieces()
            .map(|(s, p)| (s.to_string(), PolytopeJson::from_anti_blocking(p)))
            .collect();
        AssemblyJson { dim: a.dim(), pieces }
    }

    /// Pieces may be given either in positive-orthant coordinates or already
    /// reflected into their own orthant.
    pub fn to_assembly(&self) -> Result<OrthantAssembly> {
        let mut map = BTreeMap::new();
        for (key, pj) in &self.pieces {
            let sigma = SignVector::parse(key)?;
            if sigma.dim() != self.dim || pj.dim != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: if sigma.dim() != self.dim { sigma.dim() } else { pj.dim },
                });
            }
            let p = pj.to_polytope()?;
            let stored = if p.vertices().iter().any(|v| v.coords().iter().any(Signed::is_negative)) {
                p.reflect(&sigma)
            } else {
                p
            };
            let piece = AntiBlockingBody::new(stored).map_err(|e| Error::Parse(format!("piece {key}: {e}")))?;
            if map.insert(sigma, piece).is_some() {
                return Err(Error::Parse(format!("duplicate piece {key}")));
            }
        }
        OrthantAssembly::assemble(self.dim, map)
    }
}

pub fn polytope_to_json(p: &VPolytope) -> String {
    serde_json::to_string(&PolytopeJson::from_polytope(p)).expect("string-only structure")
}

pub fn parse_polytope(text: &str) -> Result<VPolytope> {
    let pj: PolytopeJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    pj.to_polytope()
}

pub fn parse_anti_blocking(text: &str) -> Result<AntiBlockingBody> {
    let pj: PolytopeJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    pj.to_anti_blocking()
}

pub fn assembly_to_json(a: &OrthantAssembly) -> String {
    serde_json::to_string(&AssemblyJson::from_assembly(a)).expect("string-only structure")
}

pub fn parse_assembly(text: &str) -> Result<OrthantAssembly> {
    let aj: AssemblyJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    aj.to_assembly()
}
