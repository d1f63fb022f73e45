//! Exact volumes and mixed volumes of convex polytopes over the rationals,
//! with closed forms for anti-blocking bodies, locally anti-blocking bodies
//! assembled orthant by orthant, and coordinate-aligned simplices.
//!
//! Everything is tolerance-free: coordinates, volumes and mixed volumes are
//! [`Rational`]s, and equality cases are decided by exact comparison.

pub mod antiblocking;
pub mod assembly;
pub mod error;
pub mod godbersen;
mod hull;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod mixed;
pub mod point;
pub mod polytope;
pub mod random;
pub mod rational;
pub mod simplex;
pub mod subspace;

pub use antiblocking::{
    ab_hull, ab_join_volume, ab_opposite_mixed, reverse_kleitman_check, rs_projection_check, validate_ab,
    AntiBlockingBody, KleitmanReport, ProjectionReport,
};
pub use assembly::{lab_mixed, lab_volume, OrthantAssembly};
pub use error::{Error, Result};
pub use godbersen::{
    equality_family, godbersen_check, godbersen_profile, proof_chain_audit, AuditReport, EqualityCase, GodbersenReport,
};
pub use mixed::{mixed_volume_pair, mixed_volume_tuple, volume_polynomial, VolumePolynomial};
pub use point::Point;
pub use polytope::{convex_hull, VPolytope};
pub use random::{random_assembly, Style};
pub use rational::Rational;
pub use simplex::{
    corollary_mixed_volume, fubini_sum_volume, godbersen_equality_values, lemma_mixed_volume, simplex_sum_series,
    AlignedSimplex,
};
pub use subspace::{CoordSubspace, SignVector};
