//! V-represented polytopes with exact rational vertices.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hull::HullData;
use crate::linalg::det_rational;
use crate::lp::convex_weights;
use crate::point::Point;
use crate::rational::Rational;
use crate::subspace::{CoordSubspace, SignVector};

pub const DEFAULT_MAX_DIM: usize = 8;
pub const MAX_DIM_ENV: &str = "CORNER_MIXVOL_MAX_DIM";

/// Dimension cap, overridable through `CORNER_MIXVOL_MAX_DIM`.
pub fn max_dim() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MAX_DIM_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&v: &usize| (1..=31).contains(&v))
            .unwrap_or(DEFAULT_MAX_DIM)
    })
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let cap = max_dim();
    if dim > cap {
        return Err(Error::DimensionTooLarge { dim, cap });
    }
    Ok(())
}

/// A polytope given by its extreme points, kept in lexicographic order.
///
/// Equality and hashing are on the canonical vertex list, so two polytopes
/// compare equal exactly when they are the same set.
#[derive(Clone)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Point>,
    hull: Arc<HullData>,
}

impl VPolytope {
    /// Convex hull of `points`, all of dimension `dim`.
    pub fn new(dim: usize, points: &[Point]) -> Result<Self> {
        check_dim(dim)?;
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        for p in points {
            p.check_dim(dim)?;
        }
        let hull = HullData::compute(points)?;
        Ok(VPolytope {
            dim,
            vertices: hull.vertices.clone(),
            hull: Arc::new(hull),
        })
    }

    pub fn from_int_points(dim: usize, points: &[&[i64]]) -> Result<Self> {
        let pts: Vec<Point> = points.iter().map(|c| Point::from_ints(c)).collect();
        Self::new(dim, &pts)
    }

    pub fn point(p: Point) -> Result<Self> {
        let dim = p.dim();
        Self::new(dim, &[p])
    }

    pub fn origin(dim: usize) -> Result<Self> {
        Self::point(Point::origin(dim))
    }

    /// `[0, 1]^n`.
    pub fn unit_cube(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let pts: Vec<Point> = (0u32..1 << dim)
            .map(|m| Point::from_ints(&(0..dim).map(|i| (m >> i & 1) as i64).collect::<Vec<_>>()))
            .collect();
        Self::new(dim, &pts)
    }

    /// `conv{0, e_1, ..., e_n}`.
    pub fn standard_simplex(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let mut pts = vec![Point::origin(dim)];
        pts.extend((0..dim).map(|i| Point::axis(dim, i, Rational::from_integer(1.into()))));
        Self::new(dim, &pts)
    }

    /// `conv{0, alpha_1 e_1, ..., alpha_n e_n}`.
    pub fn aligned_simplex(alphas: &[Rational]) -> Result<Self> {
        let dim = alphas.len();
        check_dim(dim)?;
        let mut pts = vec![Point::origin(dim)];
        pts.extend(alphas.iter().enumerate().map(|(i, a)| Point::axis(dim, i, a.clone())));
        Self::new(dim, &pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn affine_dim(&self) -> usize {
        self.hull.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.hull.affine_dim == self.dim
    }

    /// Exact `n`-dimensional volume; zero for lower-dimensional polytopes.
    pub fn volume(&self) -> Rational {
        self.hull.volume()
    }

    /// `|I|`-dimensional volume of a polytope lying inside `E = sp{e_i : i in I}`.
    ///
    /// The zero-dimensional volume of a nonempty set is 1.
    pub fn relative_volume(&self, e: &CoordSubspace) -> Result<Rational> {
        self.check_same_dim(e.ambient_dim())?;
        let outside = e.complement().mask();
        if self.vertices.iter().any(|v| v.support() & outside != 0) {
            return Err(Error::NotInSubspace(e.to_string()));
        }
        let k = e.dim();
        if k == 0 {
            return Ok(Rational::from_integer(1.into()));
        }
        let idx = e.indices();
        let dropped: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| Point::new(idx.iter().map(|&i| v[i].clone()).collect()))
            .collect();
        Ok(HullData::compute(&dropped)?.volume())
    }

    pub fn minkowski_sum(&self, other: &VPolytope) -> Result<VPolytope> {
        self.check_same_dim(other.dim)?;
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a + b);
            }
        }
        VPolytope::new(self.dim, &pts)
    }

    pub fn translate(&self, t: &Point) -> Result<VPolytope> {
        self.check_same_dim(t.dim())?;
        let pts: Vec<Point> = self.vertices.iter().map(|v| v + t).collect();
        VPolytope::new(self.dim, &pts)
    }

    /// `lambda * P` for `lambda >= 0`; `lambda = 0` collapses to the origin.
    pub fn scale(&self, lambda: &Rational) -> Result<VPolytope> {
        if lambda.is_negative() {
            return Err(Error::NegativeScale(lambda.to_string()));
        }
        if lambda.is_zero() {
            return VPolytope::origin(self.dim);
        }
        let pts: Vec<Point> = self.vertices.iter().map(|v| v.scaled(lambda)).collect();
        VPolytope::new(self.dim, &pts)
    }

    /// Coordinate-wise sign change `sigma P`.
    pub fn reflect(&self, sigma: &SignVector) -> VPolytope {
        assert_eq!(sigma.dim(), self.dim, "sign vector dimension");
        let pts: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| v.reflected(sigma.negative_mask()))
            .collect();
        VPolytope::new(self.dim, &pts).expect("reflection of a valid polytope")
    }

    pub fn negate(&self) -> VPolytope {
        self.reflect(&SignVector::negative(self.dim))
    }

    /// Orthogonal projection onto `E`, kept embedded in the ambient space.
    pub fn project(&self, e: &CoordSubspace) -> Result<VPolytope> {
        self.check_same_dim(e.ambient_dim())?;
        let pts: Vec<Point> = self.vertices.iter().map(|v| v.masked(e.mask())).collect();
        VPolytope::new(self.dim, &pts)
    }

    /// Exact point-in-hull test by linear feasibility over the vertices.
    pub fn member(&self, x: &Point) -> Result<bool> {
        x.check_dim(self.dim)?;
        Ok(convex_weights(&self.vertices, x).is_some())
    }

    /// Point-in-hull test against the facet description of the cached hull.
    pub fn contains(&self, x: &Point) -> bool {
        self.hull.contains(x)
    }

    /// Whether every vertex of `other` lies in `self`.
    pub fn contains_polytope(&self, other: &VPolytope) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    /// `conv(P u Q)`.
    pub fn join_hull(&self, other: &VPolytope) -> Result<VPolytope> {
        self.check_same_dim(other.dim)?;
        let mut pts = self.vertices.clone();
        pts.extend(other.vertices.iter().cloned());
        VPolytope::new(self.dim, &pts)
    }

    /// Image under `x -> A x` with `A` given row-major. Singular maps are allowed
    /// and simply produce a lower-dimensional image.
    pub fn linear_map(&self, a: &[Vec<Rational>]) -> Result<VPolytope> {
        if a.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: a.len(),
            });
        }
        for row in a {
            if row.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: row.len(),
                });
            }
        }
        let pts: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| Point::new(a.iter().map(|row| v.dot(row)).collect()))
            .collect();
        VPolytope::new(self.dim, &pts)
    }

    fn check_same_dim(&self, other: usize) -> Result<()> {
        if other != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other,
            });
        }
        Ok(())
    }
}

/// Convex hull of a nonempty point list, dimension taken from the points.
pub fn convex_hull(points: &[Point]) -> Result<VPolytope> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    VPolytope::new(first.dim(), points)
}

/// Whether a linear map is singular (its image may drop dimension).
pub fn is_singular(a: &[Vec<Rational>]) -> bool {
    det_rational(a).is_zero()
}

impl PartialEq for VPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for VPolytope {}

impl Hash for VPolytope {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.vertices.hash(state);
    }
}

impl fmt::Debug for VPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VPolytope(dim={}, [", self.dim)?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn poly(dim: usize, pts: &[&[i64]]) -> VPolytope {
        VPolytope::from_int_points(dim, pts).unwrap()
    }

    fn pentagon() -> VPolytope {
        poly(2, &[&[0, 0], &[2, 0], &[2, 1], &[1, 2], &[0, 2]])
    }

    #[test]
    fn hull_drops_interior_points() {
        let p = VPolytope::new(
            2,
            &[
                Point::from_ints(&[0, 0]),
                Point::from_ints(&[1, 0]),
                Point::from_ints(&[0, 1]),
                Point::new(vec![frac(1, 2), frac(1, 4)]),
            ],
        )
        .unwrap();
        assert_eq!(p, poly(2, &[&[0, 0], &[1, 0], &[0, 1]]));
        let seg = poly(2, &[&[0, 0], &[1, 1]]);
        assert_eq!(seg.vertices().len(), 2);
        assert_eq!(seg.affine_dim(), 1);
    }

    #[test]
    fn hull_errors() {
        assert_eq!(VPolytope::new(2, &[]).unwrap_err(), Error::EmptyInput);
        assert!(matches!(
            VPolytope::new(2, &[Point::from_ints(&[0, 0]), Point::from_ints(&[0, 0, 0])]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            convex_hull(&[Point::origin(9)]),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn square_plus_triangle_is_the_pentagon() {
        let sum = VPolytope::unit_cube(2)
            .unwrap()
            .minkowski_sum(&VPolytope::standard_simplex(2).unwrap())
            .unwrap();
        assert_eq!(sum, pentagon());
        assert_eq!(sum.volume(), frac(7, 2));
    }

    #[test]
    fn basic_volumes() {
        assert_eq!(VPolytope::unit_cube(3).unwrap().volume(), int(1));
        assert_eq!(VPolytope::standard_simplex(3).unwrap().volume(), frac(1, 6));
        assert_eq!(pentagon().volume(), frac(7, 2));
        assert_eq!(poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]).volume(), int(0));
    }

    #[test]
    fn relative_volumes() {
        let seg = poly(3, &[&[0, 0, 0], &[0, 3, 0]]);
        assert_eq!(
            seg.relative_volume(&CoordSubspace::new(3, &[1]).unwrap()).unwrap(),
            int(3)
        );
        let tri = poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(
            tri.relative_volume(&CoordSubspace::new(3, &[0, 1]).unwrap()).unwrap(),
            frac(1, 2)
        );
        let tri13 = poly(3, &[&[0, 0, 0], &[2, 0, 0], &[0, 0, 3]]);
        assert_eq!(
            tri13.relative_volume(&CoordSubspace::new(3, &[0, 2]).unwrap()).unwrap(),
            int(3)
        );
        assert!(matches!(
            tri13.relative_volume(&CoordSubspace::new(3, &[0]).unwrap()),
            Err(Error::NotInSubspace(_))
        ));
    }

    #[test]
    fn sums_with_points_and_segments() {
        let d2 = VPolytope::standard_simplex(2).unwrap();
        let t = Point::new(vec![int(3), frac(-1, 2)]);
        assert_eq!(
            d2.minkowski_sum(&VPolytope::point(t.clone()).unwrap()).unwrap(),
            d2.translate(&t).unwrap()
        );
        let alpha = frac(5, 3);
        let seg = VPolytope::new(2, &[Point::origin(2), Point::axis(2, 1, alpha.clone())]).unwrap();
        let quad = d2.minkowski_sum(&seg).unwrap();
        let expected = VPolytope::new(
            2,
            &[
                Point::from_ints(&[0, 0]),
                Point::from_ints(&[1, 0]),
                Point::new(vec![int(1), alpha.clone()]),
                Point::new(vec![int(0), int(1) + &alpha]),
            ],
        )
        .unwrap();
        assert_eq!(quad, expected);
        assert_eq!(quad.volume(), frac(1, 2) + alpha);
    }

    #[test]
    fn scaling() {
        let d2 = VPolytope::standard_simplex(2).unwrap();
        assert_eq!(d2.scale(&int(2)).unwrap(), poly(2, &[&[0, 0], &[2, 0], &[0, 2]]));
        assert_eq!(d2.scale(&int(1)).unwrap(), d2);
        assert_eq!(d2.scale(&int(0)).unwrap(), VPolytope::origin(2).unwrap());
        assert!(matches!(d2.scale(&int(-1)), Err(Error::NegativeScale(_))));
        let d3 = VPolytope::standard_simplex(3).unwrap();
        assert_eq!(d3.scale(&frac(1, 2)).unwrap().volume(), frac(1, 48));
    }

    #[test]
    fn reflections() {
        let d2 = VPolytope::standard_simplex(2).unwrap();
        assert_eq!(d2.negate(), poly(2, &[&[0, 0], &[-1, 0], &[0, -1]]));
        assert_eq!(d2.reflect(&SignVector::positive(2)), d2);
        for s in SignVector::all(2) {
            assert_eq!(pentagon().reflect(&s).volume(), frac(7, 2));
        }
    }

    #[test]
    fn projections() {
        let e1 = CoordSubspace::new(2, &[0]).unwrap();
        let e2 = CoordSubspace::new(2, &[1]).unwrap();
        let d2 = VPolytope::standard_simplex(2).unwrap();
        assert_eq!(d2.project(&e1).unwrap(), poly(2, &[&[0, 0], &[1, 0]]));
        assert_eq!(
            poly(2, &[&[0, 0], &[2, 0], &[0, 3]]).project(&e2).unwrap(),
            poly(2, &[&[0, 0], &[0, 3]])
        );
        let sq = poly(2, &[&[-1, -1], &[1, -1], &[1, 1], &[-1, 1]]);
        assert_eq!(sq.project(&e1).unwrap(), poly(2, &[&[-1, 0], &[1, 0]]));
    }

    #[test]
    fn membership() {
        let d2 = VPolytope::standard_simplex(2).unwrap();
        let third = Point::new(vec![frac(1, 3), frac(1, 3)]);
        assert!(d2.member(&third).unwrap());
        assert!(!d2.member(&Point::from_ints(&[1, 1])).unwrap());
        assert!(pentagon().member(&Point::from_ints(&[2, 1])).unwrap());
        assert!(d2.member(&Point::from_ints(&[0, 0, 0])).is_err());
        assert!(d2.contains(&third));
        assert!(!d2.contains(&Point::from_ints(&[1, 1])));
    }

    #[test]
    fn joins() {
        let d2 = VPolytope::standard_simplex(2).unwrap();
        let cross = d2.join_hull(&d2.negate()).unwrap();
        assert_eq!(cross, poly(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]));
        assert_eq!(cross.volume(), int(2));
        assert_eq!(d2.join_hull(&d2).unwrap(), d2);
        let a = poly(1, &[&[0], &[1]]);
        let b = poly(1, &[&[-1], &[0]]);
        assert_eq!(a.join_hull(&b).unwrap(), poly(1, &[&[-1], &[1]]));
    }

    #[test]
    fn diagonal_map_normalises_an_aligned_simplex() {
        let betas = [int(2), frac(1, 3), int(5)];
        let t = VPolytope::aligned_simplex(&betas).unwrap();
        let a: Vec<Vec<Rational>> = (0..3)
            .map(|i| (0..3).map(|k| if i == k { betas[i].recip() } else { int(0) }).collect())
            .collect();
        assert_eq!(t.linear_map(&a).unwrap(), VPolytope::standard_simplex(3).unwrap());
        let id: Vec<Vec<Rational>> = (0..3).map(|i| (0..3).map(|k| int((i == k) as i64)).collect()).collect();
        assert_eq!(t.linear_map(&id).unwrap(), t);
        assert!(t.linear_map(&id[..2]).is_err());
    }
}
