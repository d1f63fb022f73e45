//! Closed forms for coordinate-aligned simplices `conv(0, a_1 e_1, ..., a_n e_n)`
//! and a volume oracle for `Vol(D_n + K)` built from a Fubini recursion.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::mixed::{check_j, volume_polynomial};
use crate::point::Point;
use crate::polytope::VPolytope;
use crate::rational::{binomial, factorial, pow, Rational};
use crate::subspace::CoordSubspace;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlignedSimplex {
    alphas: Vec<Rational>,
}

impl AlignedSimplex {
    pub fn new(alphas: Vec<Rational>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(a) = alphas.iter().find(|a| a.is_negative()) {
            return Err(Error::NegativeCoordinate(a.to_string()));
        }
        Ok(AlignedSimplex { alphas })
    }

    /// `D_n`.
    pub fn standard(n: usize) -> Result<Self> {
        Self::new(vec![Rational::from_integer(1.into()); n])
    }

    pub fn dim(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    pub fn polytope(&self) -> Result<VPolytope> {
        VPolytope::aligned_simplex(&self.alphas)
    }

    /// Alphas in descending order.
    pub fn sorted_alphas(&self) -> Vec<Rational> {
        let mut a = self.alphas.clone();
        a.sort_by(|x, y| y.cmp(x));
        a
    }
}

fn inv_factorial(n: usize) -> Rational {
    Rational::new(1.into(), factorial(n))
}

fn product<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values
        .into_iter()
        .fold(Rational::from_integer(1.into()), |acc, v| acc * v)
}

/// `V(K[j], D_n[n-j]) = (1/n!) max_{|I|=j} prod_{i in I} a_i`, the product of
/// the `j` largest alphas.
pub fn lemma_mixed_volume(s: &AlignedSimplex, j: usize) -> Result<Rational> {
    let n = s.dim();
    check_j(j, n)?;
    Ok(product(&s.sorted_alphas()[..j]) * inv_factorial(n))
}

/// `V(S[j], T[n-j]) = (1/n!) max_{|I|=j} prod_{i in I} a_i prod_{i not in I} b_i`.
///
/// With every `b_i > 0` the maximizing `I` collects the `j` largest ratios
/// `a_i / b_i`; otherwise all `C(n, j)` index sets are tried.
pub fn corollary_mixed_volume(s: &AlignedSimplex, t: &AlignedSimplex, j: usize) -> Result<Rational> {
    let n = s.dim();
    if t.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: t.dim(),
        });
    }
    check_j(j, n)?;
    let (a, b) = (s.alphas(), t.alphas());
    let value = |mask: u32| -> Rational { product((0..n).map(|i| if mask >> i & 1 == 1 { &a[i] } else { &b[i] })) };
    let best = if b.iter().all(Signed::is_positive) {
        let mut order: Vec<usize> = (0..n).collect();
        // Stable sort keeps the lower index first among equal ratios.
        order.sort_by(|&x, &y| (&a[y] / &b[y]).cmp(&(&a[x] / &b[x])));
        value(order[..j].iter().fold(0u32, |m, &i| m | 1 << i))
    } else {
        CoordSubspace::all_of_dim(n, j)
            .iter()
            .map(|e| value(e.mask()))
            .max()
            .expect("at least one index set")
    };
    Ok(best * inv_factorial(n))
}

/// `int_{D_m} (1 - t_1 - ... - t_m)^p dt = p! / (p + m)!`.
pub fn dirichlet_constant(m: usize, p: usize) -> Rational {
    Rational::new(factorial(p), factorial(p + m))
}

/// `Vol(D_n + K)` for `K` inside the span of the last `k` coordinates, as
///
/// ```text
/// int_{t in D_(n-k)} Vol_k((1 - sum t) D_k + K) dt
///     = sum_i c_i int_{D_(n-k)} (1 - sum t)^(k-i) dt,
/// ```
///
/// where `Vol_k(K + s D_k) = sum_i c_i s^(k-i)` comes from the mixed-volume
/// engine in dimension `k`.
pub fn fubini_sum_volume(n: usize, k: usize, k_sub: &VPolytope) -> Result<Rational> {
    if k_sub.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: k_sub.dim(),
        });
    }
    if k > n {
        return Err(Error::IndexOutOfRange { index: k, dim: n });
    }
    let m = n - k;
    if let Some(v) = k_sub
        .vertices()
        .iter()
        .find(|v| v.coords()[..m].iter().any(|c| !c.is_zero()))
    {
        return Err(Error::NotInSubspace(format!(
            "vertex {v} leaves the span of the last {k} coordinates"
        )));
    }
    if k == 0 {
        return Ok(inv_factorial(n));
    }
    let pts: Vec<Point> = k_sub
        .vertices()
        .iter()
        .map(|v| Point::new(v.coords()[m..].to_vec()))
        .collect();
    let low = VPolytope::new(k, &pts)?;
    let poly = volume_polynomial(&low, &VPolytope::standard_simplex(k)?)?;
    Ok(poly
        .coefficients()
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (i, c)| acc + c * dirichlet_constant(m, k - i)))
}

/// `Vol(D_n + lambda K) = (1/n!) sum_j C(n,j) lambda^j prod_{i<=j} a_(i)`
/// with the alphas sorted in descending order.
pub fn simplex_sum_series(s: &AlignedSimplex, lambda: &Rational) -> Result<Rational> {
    if lambda.is_negative() {
        return Err(Error::NegativeScale(lambda.to_string()));
    }
    let n = s.dim();
    let sorted = s.sorted_alphas();
    let mut prefix = Rational::from_integer(1.into());
    let mut total = Rational::zero();
    for j in 0..=n {
        if j > 0 {
            prefix *= &sorted[j - 1];
        }
        total += Rational::from_integer(binomial(n, j)) * pow(lambda, j) * &prefix;
    }
    Ok(total * inv_factorial(n))
}

/// The two sides of the equality condition for `D_k` against the simplex
/// `L = conv(0, a_i e_i)`: the same-orthant value `V(D_k[j], L[k-j])` and the
/// opposite-orthant value `V(D_k[j], -L[k-j])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityValues {
    /// `(1/k!)` times the product of the `k-j` largest alphas.
    pub same_orthant: Rational,
    /// `(1/k!)` times the sum of all products of `k-j` alphas.
    pub opposite_orthant: Rational,
}

impl EqualityValues {
    /// `opposite_orthant - same_orthant`, which is `>= 0`.
    pub fn gap(&self) -> Rational {
        &self.opposite_orthant - &self.same_orthant
    }
}

pub fn godbersen_equality_values(alphas: &[Rational], j: usize) -> Result<EqualityValues> {
    let s = AlignedSimplex::new(alphas.to_vec())?;
    let k = s.dim();
    check_j(j, k)?;
    let same_orthant = lemma_mixed_volume(&s, k - j)?;
    let sum = CoordSubspace::all_of_dim(k, k - j)
        .iter()
        .fold(Rational::zero(), |acc, e| {
            acc + product(e.indices().iter().map(|&i| &alphas[i]))
        });
    Ok(EqualityValues {
        same_orthant,
        opposite_orthant: sum * inv_factorial(k),
    })
}

/// Both sides of `Vol(D_n + K) = Vol(e_n + K) + Vol(D_n + P K)`, where `K` is
/// the aligned simplex with its alphas sorted so that `a_n` is the smallest
/// and `P` projects onto `e_n^perp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub whole: Rational,
    pub translated: Rational,
    pub projected: Rational,
}

impl Decomposition {
    pub fn holds(&self) -> bool {
        self.whole == &self.translated + &self.projected
    }
}

pub fn decomposition_identity(s: &AlignedSimplex) -> Result<Decomposition> {
    let n = s.dim();
    let k = VPolytope::aligned_simplex(&s.sorted_alphas())?;
    let delta = VPolytope::standard_simplex(n)?;
    let last = Point::axis(n, n - 1, Rational::from_integer(1.into()));
    let flat = k.project(&CoordSubspace::from_mask(n, (1u32 << (n - 1)) - 1))?;
    Ok(Decomposition {
        whole: delta.minkowski_sum(&k)?.volume(),
        translated: k.translate(&last)?.volume(),
        projected: delta.minkowski_sum(&flat)?.volume(),
    })
}
