use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, Rational};

/// A point of `Q^n`. Ordering is lexicographic on the coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    /// `scale * e_index` in dimension `dim`.
    pub fn axis(dim: usize, index: usize, scale: Rational) -> Self {
        let mut p = Self::origin(dim);
        p.0[index] = scale;
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        Point(self.0.iter().map(|c| c * s).collect())
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(other)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Keeps the coordinates listed in `mask`, zeroing the rest.
    pub fn masked(&self, mask: u32) -> Self {
        Point(
            self.0
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    if mask >> i & 1 == 1 {
                        c.clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        )
    }

    /// Sign flip of every coordinate whose bit is set in `negative_mask`.
    pub fn reflected(&self, negative_mask: u32) -> Self {
        Point(
            self.0
                .iter()
                .enumerate()
                .map(|(i, c)| if negative_mask >> i & 1 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Bit mask of the coordinates that are nonzero.
    pub fn support(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for Point {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl<'a> Add<&'a Point> for &'a Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Point> for &'a Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}
