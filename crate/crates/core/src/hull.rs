//! Exact convex hulls in arbitrary (small) dimension.
//!
//! The point set is first reduced to its affine hull: an affine rank `d` is
//! found, `d` coordinates on which the projection is injective are picked, and
//! the points are rescaled to integers. In that chart the hull is grown by
//! beneath-beyond insertion over a triangulated boundary. Each boundary simplex
//! carries an oriented integer hyperplane; a new point replaces the simplices
//! it sees strictly and is coned over the horizon ridges. Coplanar points are
//! never "beyond", so the boundary stays a valid triangulation.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{nullspace, rref};
use crate::point::Point;
use crate::rational::{factorial, lcm_of_denominators, Rational};

/// Oriented integer hyperplane `normal . y <= offset` in the reduced chart.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Halfspace {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl Halfspace {
    fn holds_rational(&self, y: &[Rational]) -> bool {
        let lhs = self.normal.iter().zip(y).fold(Rational::zero(), |acc, (a, b)| {
            acc + Rational::from_integer(a.clone()) * b
        });
        lhs <= Rational::from_integer(self.offset.clone())
    }
}

/// Integer arithmetic for the hull kernel. Operations return `None` on
/// overflow; the kernel then restarts with big integers.
trait Exact: Clone + Ord + std::hash::Hash + Sized {
    fn zero() -> Self;
    fn from_usize(v: usize) -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    /// Division known to be exact.
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn to_big(&self) -> BigInt;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn abs(&self) -> Option<Self> {
        if self.is_positive() || self.is_zero() {
            Some(self.clone())
        } else {
            self.neg()
        }
    }
}

impl Exact for i128 {
    fn zero() -> Self {
        0
    }
    fn from_usize(v: usize) -> Self {
        v as i128
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Exact for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_usize(v: usize) -> Self {
        BigInt::from(v)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

fn dot<T: Exact>(a: &[T], b: &[T]) -> Option<T> {
    a.iter().zip(b).try_fold(T::zero(), |acc, (x, y)| acc.add(&x.mul(y)?))
}

/// Bareiss fraction-free determinant.
fn det<T: Exact>(m: &[Vec<T>]) -> Option<T> {
    let n = m.len();
    if n == 0 {
        return Some(T::from_usize(1));
    }
    let mut a = m.to_vec();
    let mut negate = false;
    let mut prev = T::from_usize(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Some(T::zero());
            };
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k])?.sub(&a[i][k].mul(&a[k][j])?)?;
                a[i][j] = v.div(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        Some(d)
    }
}

#[allow(clippy::needless_range_loop)]
fn rank<T: Exact>(rows: &[Vec<T>]) -> Option<usize> {
    let mut a = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let (piv, f) = (a[r][c].clone(), a[i][c].clone());
            for k in c..ncols {
                a[i][k] = a[i][k].mul(&piv)?.sub(&f.mul(&a[r][k])?)?;
            }
            let g = a[i].iter().fold(T::zero(), |g, v| g.gcd(v));
            if !g.is_zero() {
                for v in a[i].iter_mut() {
                    *v = v.div(&g);
                }
            }
        }
        r += 1;
    }
    Some(r)
}

/// Everything derived from one hull computation.
#[derive(Debug)]
pub(crate) struct HullData {
    pub ambient_dim: usize,
    /// Affine dimension of the point set.
    pub affine_dim: usize,
    base: Point,
    /// Rows `c` with `c . (x - base) = 0` on the affine hull.
    equations: Vec<Vec<Rational>>,
    /// Chart coordinates (pivot columns), `affine_dim` of them.
    chart: Vec<usize>,
    /// Common denominator used to make chart coordinates integral.
    scale: BigInt,
    facets: Vec<Halfspace>,
    /// Extreme points in lexicographic order.
    pub vertices: Vec<Point>,
    /// Volume of the hull measured in the chart coordinates (`affine_dim`-dimensional).
    pub chart_volume: Rational,
}

impl HullData {
    pub fn compute(points: &[Point]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput)?;
        let n = first.dim();
        for p in points {
            p.check_dim(n)?;
        }
        let mut uniq: Vec<Point> = points.to_vec();
        uniq.sort();
        uniq.dedup();

        let base = uniq[0].clone();
        let diffs: Vec<Vec<Rational>> = uniq[1..].iter().map(|p| (p - &base).into_coords()).collect();
        let (basis, chart) = if diffs.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            rref(diffs)
        };
        let d = chart.len();
        let equations = if d == n { Vec::new() } else { nullspace(basis, n) };

        let scale = lcm_of_denominators(uniq.iter().flat_map(|p| chart.iter().map(move |&c| &p[c])));
        let reduced: Vec<Vec<BigInt>> = uniq
            .iter()
            .map(|p| {
                chart
                    .iter()
                    .map(|&c| (&p[c] * Rational::from_integer(scale.clone())).to_integer())
                    .collect()
            })
            .collect();

        let (vertex_idx, facets, scaled_volume) = match d {
            0 => (vec![0], Vec::new(), Rational::one()),
            1 => hull_1d(&reduced),
            _ => {
                let small: Option<Vec<Vec<i128>>> = reduced
                    .iter()
                    .map(|p| p.iter().map(|v| v.to_i64().map(i128::from)).collect())
                    .collect();
                small
                    .and_then(|pts| hull_nd(&pts, d))
                    .or_else(|| hull_nd(&reduced, d))
                    .expect("big-integer arithmetic cannot overflow")
            }
        };
        let denom = num_traits::pow(scale.clone(), d);
        let chart_volume = scaled_volume / Rational::from_integer(denom);

        let mut vertices: Vec<Point> = vertex_idx.into_iter().map(|i| uniq[i].clone()).collect();
        vertices.sort();
        Ok(HullData {
            ambient_dim: n,
            affine_dim: d,
            base,
            equations,
            chart,
            scale,
            facets,
            vertices,
            chart_volume,
        })
    }

    /// Full-dimensional Lebesgue volume; zero for lower-dimensional sets.
    pub fn volume(&self) -> Rational {
        if self.affine_dim == self.ambient_dim {
            self.chart_volume.clone()
        } else {
            Rational::zero()
        }
    }

    /// Exact containment test against the facet description.
    pub fn contains(&self, x: &Point) -> bool {
        if x.dim() != self.ambient_dim {
            return false;
        }
        let diff = x - &self.base;
        if self.equations.iter().any(|c| !diff.dot(c).is_zero()) {
            return false;
        }
        if self.affine_dim == 0 {
            return true;
        }
        let s = Rational::from_integer(self.scale.clone());
        let y: Vec<Rational> = self.chart.iter().map(|&c| &x[c] * &s).collect();
        self.facets.iter().all(|h| h.holds_rational(&y))
    }
}

type Kernel = (Vec<usize>, Vec<Halfspace>, Rational);

fn hull_1d(reduced: &[Vec<BigInt>]) -> Kernel {
    let (mut lo, mut hi) = (0, 0);
    for (i, p) in reduced.iter().enumerate() {
        if p[0] < reduced[lo][0] {
            lo = i;
        }
        if p[0] > reduced[hi][0] {
            hi = i;
        }
    }
    let facets = vec![
        Halfspace {
            normal: vec![-BigInt::one()],
            offset: -reduced[lo][0].clone(),
        },
        Halfspace {
            normal: vec![BigInt::one()],
            offset: reduced[hi][0].clone(),
        },
    ];
    let len = Rational::from_integer(&reduced[hi][0] - &reduced[lo][0]);
    (vec![lo, hi], facets, len)
}

struct Plane<T> {
    normal: Vec<T>,
    offset: T,
}

impl<T: Exact> Plane<T> {
    /// The hyperplane through `d` points, oriented so the interior point
    /// `interior_sum / weight` lies on the `<=` side.
    fn through(points: &[&Vec<T>], interior_sum: &[T], weight: &T) -> Option<Self> {
        let d = points[0].len();
        let q0 = points[0];
        let rows: Vec<Vec<T>> = points[1..]
            .iter()
            .map(|q| q.iter().zip(q0).map(|(a, b)| a.sub(b)).collect::<Option<_>>())
            .collect::<Option<_>>()?;
        let mut normal: Vec<T> = Vec::with_capacity(d);
        for k in 0..d {
            let minor: Vec<Vec<T>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != k)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let m = det(&minor)?;
            normal.push(if k % 2 == 0 { m } else { m.neg()? });
        }
        let g = normal.iter().fold(T::zero(), |g, v| g.gcd(v));
        debug_assert!(!g.is_zero(), "degenerate boundary simplex");
        for v in normal.iter_mut() {
            *v = v.div(&g);
        }
        let mut offset = dot(&normal, q0)?;
        let side = dot(&normal, interior_sum)?.sub(&offset.mul(weight)?)?;
        if side.is_positive() {
            for v in normal.iter_mut() {
                *v = v.neg()?;
            }
            offset = offset.neg()?;
        }
        Some(Plane { normal, offset })
    }

    fn sees(&self, p: &[T]) -> Option<bool> {
        Some(dot(&self.normal, p)? > self.offset)
    }

    fn to_halfspace(&self) -> Halfspace {
        Halfspace {
            normal: self.normal.iter().map(Exact::to_big).collect(),
            offset: self.offset.to_big(),
        }
    }
}

struct Cell<T> {
    verts: Vec<usize>,
    plane: Plane<T>,
}

fn make_cell<T: Exact>(pts: &[Vec<T>], mut verts: Vec<usize>, interior_sum: &[T], weight: &T) -> Option<Cell<T>> {
    // Ridges are keyed by sorted vertex lists.
    verts.sort_unstable();
    let refs: Vec<&Vec<T>> = verts.iter().map(|&v| &pts[v]).collect();
    let plane = Plane::through(&refs, interior_sum, weight)?;
    Some(Cell { verts, plane })
}

fn hull_nd<T: Exact>(pts: &[Vec<T>], d: usize) -> Option<Kernel> {
    let start = initial_simplex(pts, d)?;
    let interior_sum: Vec<T> = (0..d)
        .map(|k| start.iter().try_fold(T::zero(), |acc, &i| acc.add(&pts[i][k])))
        .collect::<Option<_>>()?;
    let w = T::from_usize(d + 1);

    let mut cells: Vec<Cell<T>> = (0..=d)
        .map(|skip| {
            let verts: Vec<usize> = start
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != skip)
                .map(|(_, &i)| i)
                .collect();
            make_cell(pts, verts, &interior_sum, &w)
        })
        .collect::<Option<_>>()?;

    // Farthest points first.
    let in_start: HashSet<usize> = start.iter().copied().collect();
    let mut order: Vec<(T, usize)> = Vec::with_capacity(pts.len());
    for i in (0..pts.len()).filter(|i| !in_start.contains(i)) {
        let mut dist = T::zero();
        for (q, s) in pts[i].iter().zip(&interior_sum) {
            let t = q.mul(&w)?.sub(s)?;
            dist = dist.add(&t.mul(&t)?)?;
        }
        order.push((dist, i));
    }
    order.sort_by(|a, b| b.cmp(a));

    for (_, pi) in order {
        let p = &pts[pi];
        let mut visible = Vec::new();
        for (c, cell) in cells.iter().enumerate() {
            if cell.plane.sees(p)? {
                visible.push(c);
            }
        }
        if visible.is_empty() {
            continue;
        }
        let mut ridge_count: HashMap<Vec<usize>, usize> = HashMap::new();
        for &c in &visible {
            let vs = &cells[c].verts;
            for skip in 0..vs.len() {
                let ridge: Vec<usize> = vs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                *ridge_count.entry(ridge).or_insert(0) += 1;
            }
        }
        let mut horizon: Vec<Vec<usize>> = ridge_count
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort();
        let visible_set: HashSet<usize> = visible.into_iter().collect();
        let mut next: Vec<Cell<T>> = cells
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !visible_set.contains(i))
            .map(|(_, c)| c)
            .collect();
        for ridge in horizon {
            let mut verts = ridge;
            verts.push(pi);
            next.push(make_cell(pts, verts, &interior_sum, &w)?);
        }
        cells = next;
    }

    // Cone volume over the boundary from the interior point S / (d + 1):
    // det((d+1) q_i - S) / ((d+1)^d d!).
    let mut total = <BigInt as Zero>::zero();
    for cell in &cells {
        let rows: Vec<Vec<T>> = cell
            .verts
            .iter()
            .map(|&v| {
                pts[v]
                    .iter()
                    .zip(&interior_sum)
                    .map(|(q, s)| q.mul(&w)?.sub(s))
                    .collect::<Option<_>>()
            })
            .collect::<Option<_>>()?;
        total += det(&rows)?.abs()?.to_big();
    }
    let volume = Rational::new(total, num_traits::pow(BigInt::from(d + 1), d) * factorial(d));

    let mut planes: Vec<&Plane<T>> = Vec::new();
    let mut seen: HashSet<(&Vec<T>, &T)> = HashSet::new();
    for cell in &cells {
        if seen.insert((&cell.plane.normal, &cell.plane.offset)) {
            planes.push(&cell.plane);
        }
    }
    let mut candidates: Vec<usize> = cells.iter().flat_map(|c| c.verts.iter().copied()).collect();
    candidates.sort_unstable();
    candidates.dedup();
    let mut vertices = Vec::new();
    for v in candidates {
        let mut active: Vec<Vec<T>> = Vec::new();
        for h in &planes {
            if dot(&h.normal, &pts[v])? == h.offset {
                active.push(h.normal.clone());
            }
        }
        if active.len() >= d && rank(&active)? == d {
            vertices.push(v);
        }
    }
    let facets = planes.iter().map(|p| p.to_halfspace()).collect();
    Some((vertices, facets, volume))
}

/// Greedily picks `d + 1` affinely independent points, preferring extreme ones.
fn initial_simplex<T: Exact>(pts: &[Vec<T>], d: usize) -> Option<Vec<usize>> {
    let lo = (0..pts.len()).min_by(|&a, &b| pts[a].cmp(&pts[b])).unwrap_or(0);
    let hi = (0..pts.len()).max_by(|&a, &b| pts[a].cmp(&pts[b])).unwrap_or(0);
    let mut chosen = vec![lo];
    let mut rows: Vec<Vec<T>> = Vec::new();
    let order = std::iter::once(hi).chain(0..pts.len());
    for i in order {
        if chosen.len() == d + 1 {
            break;
        }
        if chosen.contains(&i) {
            continue;
        }
        let diff: Vec<T> = pts[i]
            .iter()
            .zip(&pts[lo])
            .map(|(a, b)| a.sub(b))
            .collect::<Option<_>>()?;
        rows.push(diff);
        if rank(&rows)? == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    debug_assert_eq!(chosen.len(), d + 1);
    Some(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn pts(raw: &[&[i64]]) -> Vec<Point> {
        raw.iter().map(|c| Point::from_ints(c)).collect()
    }

    #[test]
    fn square_with_interior_and_edge_points() {
        let h = HullData::compute(&pts(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2], &[1, 1], &[1, 0], &[2, 1]])).unwrap();
        assert_eq!(h.vertices, pts(&[&[0, 0], &[0, 2], &[2, 0], &[2, 2]]));
        assert_eq!(h.volume(), int(4));
        assert!(h.contains(&Point::from_ints(&[1, 0])));
        assert!(!h.contains(&Point::from_ints(&[3, 0])));
    }

    #[test]
    fn collinear_points_in_three_space() {
        let h = HullData::compute(&pts(&[&[0, 0, 0], &[1, 1, 1], &[2, 2, 2], &[3, 3, 3]])).unwrap();
        assert_eq!(h.affine_dim, 1);
        assert_eq!(h.vertices, pts(&[&[0, 0, 0], &[3, 3, 3]]));
        assert_eq!(h.volume(), int(0));
        assert!(h.contains(&Point::from_ints(&[1, 1, 1])));
        assert!(!h.contains(&Point::from_ints(&[1, 1, 0])));
        assert!(!h.contains(&Point::from_ints(&[4, 4, 4])));
    }

    #[test]
    fn tetrahedron_volume_and_rational_coordinates() {
        let h = HullData::compute(&pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(h.volume(), frac(1, 6));
        let half: Vec<Point> = h.vertices.iter().map(|p| p.scaled(&frac(1, 2))).collect();
        assert_eq!(HullData::compute(&half).unwrap().volume(), frac(1, 48));
    }

    #[test]
    fn cube_from_a_grid_with_many_coplanar_points() {
        let mut grid = Vec::new();
        for x in -1..=1 {
            for y in -1..=1 {
                for z in -1..=1 {
                    grid.push(Point::from_ints(&[x, y, z]));
                }
            }
        }
        let h = HullData::compute(&grid).unwrap();
        assert_eq!(h.volume(), int(8));
        assert_eq!(h.vertices.len(), 8);
    }

    #[test]
    fn big_coordinates_take_the_big_integer_path() {
        let big = 1i64 << 62;
        let h = HullData::compute(&pts(&[
            &[0, 0, 0],
            &[big, 0, 0],
            &[0, big, 0],
            &[0, 0, big],
            &[1, 1, 1],
        ]))
        .unwrap();
        let b = Rational::from_integer(BigInt::from(big));
        assert_eq!(h.volume(), &b * &b * &b / int(6));
        assert_eq!(h.vertices.len(), 4);
    }

    #[test]
    fn planar_polygon_in_three_space() {
        let h = HullData::compute(&pts(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]])).unwrap();
        assert_eq!(h.affine_dim, 2);
        assert_eq!(h.chart_volume, int(1));
        assert_eq!(h.vertices.len(), 4);
    }
}
