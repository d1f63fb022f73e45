//! Exact phase-one simplex for linear feasibility `A x = b, x >= 0`.
//!
//! Used for point-in-hull queries, where `x` are convex weights. Pivoting
//! follows Bland's rule, so the method terminates on degenerate systems.

use num_traits::{One, Signed, Zero};

use crate::point::Point;
use crate::rational::Rational;

/// Returns a nonnegative solution of `a x = b` if one exists.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    // Tableau columns: original vars, artificials, rhs.
    let width = cols + rows + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(rows + 1);
    for (r, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut line = vec![Rational::zero(); width];
        for (c, v) in row.iter().enumerate() {
            line[c] = if flip { -v } else { v.clone() };
        }
        line[cols + r] = Rational::one();
        line[width - 1] = if flip { -rhs } else { rhs.clone() };
        t.push(line);
    }
    // Objective: minimise the sum of artificials, expressed in the nonbasic variables.
    let mut obj = vec![Rational::zero(); width];
    for line in &t {
        for c in 0..cols {
            obj[c] -= &line[c];
        }
        obj[width - 1] -= &line[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (cols..cols + rows).collect();

    while let Some(enter) = (0..cols + rows).find(|&c| t[rows][c].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..rows {
            if t[r][enter].is_positive() {
                let ratio = &t[r][width - 1] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // Phase-one objective is bounded below by zero.
            unreachable!("unbounded phase-one objective");
        };
        pivot(&mut t, pr, enter);
        basis[pr] = enter;
    }

    if !t[rows][width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &bv) in basis.iter().enumerate() {
        if bv < cols {
            x[bv] = t[r][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], pr: usize, pc: usize) {
    let inv = t[pr][pc].recip();
    for v in t[pr].iter_mut() {
        *v *= &inv;
    }
    let pivot_row = t[pr].clone();
    for (r, line) in t.iter_mut().enumerate() {
        if r == pr || line[pc].is_zero() {
            continue;
        }
        let f = line[pc].clone();
        for (v, p) in line.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
    }
}

/// Convex weights expressing `x` over `vertices`, if `x` lies in their hull.
pub fn convex_weights(vertices: &[Point], x: &Point) -> Option<Vec<Rational>> {
    if vertices.is_empty() {
        return None;
    }
    let n = x.dim();
    let m = vertices.len();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|k| vertices.iter().map(|v| v[k].clone()).collect())
        .collect();
    a.push(vec![Rational::one(); m]);
    let mut b: Vec<Rational> = x.coords().to_vec();
    b.push(Rational::one());
    feasible_point(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn weights_reconstruct_the_point() {
        let tri = vec![
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[3, 0]),
            Point::from_ints(&[0, 3]),
        ];
        let x = Point::new(vec![int(1), frac(1, 2)]);
        let w = convex_weights(&tri, &x).unwrap();
        let sum = w.iter().fold(Rational::zero(), |a, b| a + b);
        assert_eq!(sum, int(1));
        for k in 0..2 {
            let c = tri.iter().zip(&w).fold(Rational::zero(), |a, (v, l)| a + &v[k] * l);
            assert_eq!(c, x[k]);
        }
        assert!(convex_weights(&tri, &Point::from_ints(&[2, 2])).is_none());
    }

    #[test]
    fn degenerate_repeated_columns() {
        let pts = vec![
            Point::from_ints(&[1, 1]),
            Point::from_ints(&[1, 1]),
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[2, 2]),
        ];
        assert!(convex_weights(&pts, &Point::from_ints(&[1, 1])).is_some());
        assert!(convex_weights(&pts, &Point::from_ints(&[1, 0])).is_none());
        assert!(convex_weights(&pts, &Point::from_ints(&[-1, -1])).is_none());
    }
}
