//! Locally anti-blocking bodies, stored as one anti-blocking piece per orthant.
//!
//! The piece for sign vector `sigma` is kept in positive-orthant coordinates;
//! the geometric piece is `K_sigma = sigma * piece`. Mixed volumes are
//! invariant under coordinate reflections, so all orthant-wise work runs on
//! the stored pieces directly.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use crate::antiblocking::AntiBlockingBody;
use crate::error::{Error, Result};
use crate::mixed::{check_j, volume_polynomial, VolumePolynomial};
use crate::point::Point;
use crate::polytope::VPolytope;
use crate::rational::{binomial, Rational};
use crate::subspace::{full_mask, CoordSubspace, SignVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthantAssembly {
    dim: usize,
    /// Indexed by [`SignVector::index`].
    pieces: Vec<AntiBlockingBody>,
}

impl OrthantAssembly {
    /// Validates the pieces: shared coordinate projections must agree, and the
    /// union of the reflected pieces must be convex. Missing orthants default
    /// to the origin.
    pub fn assemble(dim: usize, pieces: BTreeMap<SignVector, AntiBlockingBody>) -> Result<Self> {
        let origin = AntiBlockingBody::origin(dim)?;
        let mut table = vec![origin; 1 << dim];
        for (sigma, piece) in pieces {
            if sigma.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: sigma.dim(),
                });
            }
            if piece.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: piece.dim(),
                });
            }
            table[sigma.index()] = piece;
        }
        let a = OrthantAssembly { dim, pieces: table };
        a.check_consistency()?;
        a.check_convex_union()?;
        Ok(a)
    }

    #[cfg(test)]
    pub(crate) fn from_table_unchecked(dim: usize, pieces: Vec<AntiBlockingBody>) -> Self {
        debug_assert_eq!(pieces.len(), 1 << dim);
        OrthantAssembly { dim, pieces }
    }

    /// The unconditional body whose positive part is `k_plus`.
    pub fn from_unconditional(k_plus: &AntiBlockingBody) -> Self {
        let dim = k_plus.dim();
        OrthantAssembly {
            dim,
            pieces: vec![k_plus.clone(); 1 << dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Stored piece (positive-orthant coordinates).
    pub fn piece(&self, sigma: &SignVector) -> &AntiBlockingBody {
        &self.pieces[sigma.index()]
    }

    /// `K_sigma` in its own orthant.
    pub fn geometric_piece(&self, sigma: &SignVector) -> VPolytope {
        self.piece(sigma).body().reflect(sigma)
    }

    pub fn pieces(&self) -> impl Iterator<Item = (SignVector, &AntiBlockingBody)> {
        self.pieces
            .iter()
            .enumerate()
            .map(move |(i, p)| (SignVector::from_mask(self.dim, i as u32), p))
    }

    /// `conv(U_sigma K_sigma)`.
    pub fn global_hull(&self) -> VPolytope {
        let pts: Vec<Point> = self
            .pieces()
            .flat_map(|(s, p)| p.body().vertices().iter().map(move |v| v.reflected(s.negative_mask())))
            .collect();
        VPolytope::new(self.dim, &pts).expect("pieces share the assembly dimension")
    }

    /// `(-K)_sigma = -(K_{-sigma})`; in stored coordinates the piece at `sigma`
    /// becomes the piece at `-sigma`.
    pub fn negate(&self) -> Self {
        let pieces = (0..self.pieces.len())
            .map(|i| {
                let s = SignVector::from_mask(self.dim, i as u32);
                self.piece(&s.negated()).clone()
            })
            .collect();
        OrthantAssembly { dim: self.dim, pieces }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.pieces.iter().any(|p| p.body().is_full_dimensional())
    }

    /// Number of distinct full-dimensional stored pieces.
    pub fn distinct_full_dimensional_pieces(&self) -> usize {
        let mut seen: Vec<&AntiBlockingBody> = Vec::new();
        for p in &self.pieces {
            if p.body().is_full_dimensional() && !seen.contains(&p) {
                seen.push(p);
            }
        }
        seen.len()
    }

    /// For every pair of orthants, the projections onto the coordinates where
    /// their signs agree must coincide. Checking the maximal common index set
    /// covers all of its subsets.
    fn check_consistency(&self) -> Result<()> {
        let count = self.pieces.len();
        let pairs: Vec<(usize, usize)> = (0..count).flat_map(|a| (a + 1..count).map(move |b| (a, b))).collect();
        let failure = pairs.par_iter().find_first(|&&(a, b)| {
            let agree = !(a ^ b) as u32 & full_mask(self.dim);
            if agree == 0 {
                return false;
            }
            let e = CoordSubspace::from_mask(self.dim, agree);
            let pa = self.pieces[a].project(&e).expect("matching dimension");
            let pb = self.pieces[b].project(&e).expect("matching dimension");
            pa != pb
        });
        if let Some(&(a, b)) = failure {
            let agree = !(a ^ b) as u32 & full_mask(self.dim);
            return Err(Error::InconsistentPieces {
                sigma: SignVector::from_mask(self.dim, a as u32).to_string(),
                tau: SignVector::from_mask(self.dim, b as u32).to_string(),
                subspace: CoordSubspace::from_mask(self.dim, agree).to_string(),
            });
        }
        Ok(())
    }

    /// Union of the pieces equals their hull iff the volumes agree inside the
    /// coordinate subspace spanned by the pieces (where the hull is full).
    fn check_convex_union(&self) -> Result<()> {
        let support = self
            .pieces
            .iter()
            .flat_map(|p| p.body().vertices().iter().map(Point::support))
            .fold(0u32, |a, b| a | b);
        let s = CoordSubspace::from_mask(self.dim, support);
        let hull = self.global_hull();
        let hull_vol = hull.relative_volume(&s)?;
        // One representative per sign pattern on the support.
        let mut union_vol = Rational::zero();
        for (sigma, p) in self.pieces() {
            if sigma.negative_mask() & !support == 0 {
                union_vol += p.body().relative_volume(&s)?;
            }
        }
        if hull_vol != union_vol {
            return Err(Error::NonConvexUnion(format!(
                "hull volume {hull_vol} exceeds the total piece volume {union_vol}"
            )));
        }
        Ok(())
    }
}

/// `Vol(K) = sum_sigma Vol(K_sigma)`.
pub fn lab_volume(a: &OrthantAssembly) -> Rational {
    a.pieces.iter().fold(Rational::zero(), |acc, p| acc + p.volume())
}

/// Sum over orthants of the volume polynomials `t -> Vol(A_sigma + t B_sigma)`;
/// this is the volume polynomial of `A + tB` for locally anti-blocking `A, B`.
pub fn lab_volume_polynomial(a: &OrthantAssembly, b: &OrthantAssembly) -> Result<Vec<Rational>> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    let n = a.dim;
    let mut distinct: Vec<(&AntiBlockingBody, &AntiBlockingBody)> = Vec::new();
    let mut slot_of = Vec::with_capacity(a.pieces.len());
    let mut index: HashMap<(&AntiBlockingBody, &AntiBlockingBody), usize> = HashMap::new();
    for (pa, pb) in a.pieces.iter().zip(&b.pieces) {
        let slot = *index.entry((pa, pb)).or_insert_with(|| {
            distinct.push((pa, pb));
            distinct.len() - 1
        });
        slot_of.push(slot);
    }
    let polys: Vec<VolumePolynomial> = distinct
        .par_iter()
        .map(|(pa, pb)| volume_polynomial(pa.body(), pb.body()))
        .collect::<Result<_>>()?;
    let mut coeffs = vec![Rational::zero(); n + 1];
    for slot in slot_of {
        for (c, v) in coeffs.iter_mut().zip(polys[slot].coefficients()) {
            *c += v;
        }
    }
    Ok(coeffs)
}

/// `V_n(A[j], B[n-j]) = sum_sigma V_n(A_sigma[j], B_sigma[n-j])`.
pub fn lab_mixed(a: &OrthantAssembly, b: &OrthantAssembly, j: usize) -> Result<Rational> {
    check_j(j, a.dim)?;
    let coeffs = lab_volume_polynomial(a, b)?;
    Ok(&coeffs[j] / Rational::from_integer(binomial(a.dim, j)))
}
