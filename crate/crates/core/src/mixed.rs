//! Mixed volumes.
//!
//! Two routes: the pairwise form `V(K[j], T[n-j])` read off the volume
//! polynomial `t -> Vol(K + tT)`, recovered by exact interpolation at
//! `t = 0..=n`; and the general `n`-tuple form by inclusion-exclusion over
//! partial Minkowski sums.

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::polytope::VPolytope;
use crate::rational::{binomial, factorial, int, pow, Rational};

/// `Vol(K + tT) = sum_j coeffs[j] * t^(n-j)`, with `coeffs[j] = C(n,j) V(K[j], T[n-j])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumePolynomial {
    dim: usize,
    coeffs: Vec<Rational>,
}

impl VolumePolynomial {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c_j`, the coefficient of `t^(n-j)`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `V(K[j], T[n-j])`.
    pub fn mixed(&self, j: usize) -> Result<Rational> {
        check_j(j, self.dim)?;
        Ok(&self.coeffs[j] / Rational::from_integer(binomial(self.dim, j)))
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (j, c)| acc + c * pow(t, self.dim - j))
    }
}

pub(crate) fn check_j(j: usize, n: usize) -> Result<()> {
    if j > n {
        return Err(Error::IndexJOutOfRange { j, n });
    }
    Ok(())
}

fn check_pair(k: &VPolytope, t: &VPolytope) -> Result<usize> {
    if k.dim() != t.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: t.dim(),
        });
    }
    Ok(k.dim())
}

pub fn volume_polynomial(k: &VPolytope, t: &VPolytope) -> Result<VolumePolynomial> {
    let n = check_pair(k, t)?;
    let samples: Vec<Rational> = (0..=n)
        .into_par_iter()
        .map(|s| -> Result<Rational> {
            if s == 0 {
                return Ok(k.volume());
            }
            Ok(k.minkowski_sum(&t.scale(&int(s as i64))?)?.volume())
        })
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<Rational>> = (0..=n)
        .map(|s| (0..=n).map(|p| pow(&int(s as i64), p)).collect())
        .collect();
    let by_power = solve(rows, samples).expect("Vandermonde matrix on distinct nodes");
    // by_power[p] multiplies t^p, so c_j = by_power[n - j].
    let coeffs = (0..=n).map(|j| by_power[n - j].clone()).collect();
    Ok(VolumePolynomial { dim: n, coeffs })
}

/// `V_n(K[j], T[n-j])`.
pub fn mixed_volume_pair(k: &VPolytope, t: &VPolytope, j: usize) -> Result<Rational> {
    let n = check_pair(k, t)?;
    check_j(j, n)?;
    if j == n {
        return Ok(k.volume());
    }
    if j == 0 {
        return Ok(t.volume());
    }
    volume_polynomial(k, t)?.mixed(j)
}

/// `V_n(K_1, ..., K_n)` by inclusion-exclusion over the `2^n - 1` partial sums.
pub fn mixed_volume_tuple(bodies: &[VPolytope]) -> Result<Rational> {
    let n = bodies.first().ok_or(Error::EmptyInput)?.dim();
    if bodies.len() != n {
        return Err(Error::WrongBodyCount {
            expected: n,
            found: bodies.len(),
        });
    }
    for b in bodies {
        check_pair(&bodies[0], b)?;
    }
    let terms: Vec<Rational> = (1u32..1 << n)
        .into_par_iter()
        .map(|subset| -> Result<Rational> {
            let mut members = (0..n).filter(|i| subset >> i & 1 == 1);
            let first = members.next().expect("nonempty subset");
            let mut sum = bodies[first].clone();
            for i in members {
                sum = sum.minkowski_sum(&bodies[i])?;
            }
            let v = sum.volume();
            Ok(if (n - subset.count_ones() as usize).is_multiple_of(2) {
                v
            } else {
                -v
            })
        })
        .collect::<Result<_>>()?;
    let total = terms.into_iter().fold(Rational::zero(), |a, b| a + b);
    Ok(total / Rational::from_integer(factorial(n)))
}

/// `j` copies of `k` followed by `n - j` copies of `t`.
pub fn repeat_pair(k: &VPolytope, t: &VPolytope, j: usize) -> Vec<VPolytope> {
    let n = k.dim();
    std::iter::repeat_n(k.clone(), j)
        .chain(std::iter::repeat_n(t.clone(), n - j))
        .collect()
}
