//! Coordinate subspaces `sp{e_i : i in I}` and orthant sign vectors.
//!
//! Both are stored as bit masks over the coordinate indices, which caps the
//! ambient dimension at 32; the polytope layer caps it far lower anyway.

use std::fmt;

use crate::error::{Error, Result};

/// The coordinate subspace spanned by `e_i` for `i` in the index set.
///
/// Some texts write the same object as `E^c_J` and then refer to it as `E`;
/// here every coordinate subspace is simply identified by its index set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordSubspace {
    ambient_dim: usize,
    mask: u32,
}

impl CoordSubspace {
    /// Indices are zero-based.
    pub fn new(ambient_dim: usize, indices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &i in indices {
            if i >= ambient_dim {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    dim: ambient_dim,
                });
            }
            if mask >> i & 1 == 1 {
                return Err(Error::Parse(format!("repeated subspace index {i}")));
            }
            mask |= 1 << i;
        }
        Ok(CoordSubspace { ambient_dim, mask })
    }

    pub fn from_mask(ambient_dim: usize, mask: u32) -> Self {
        debug_assert!(ambient_dim >= 32 || mask >> ambient_dim == 0);
        CoordSubspace { ambient_dim, mask }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_mask(ambient_dim, full_mask(ambient_dim))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn dim(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|i| self.mask >> i & 1 == 1).collect()
    }

    pub fn complement(&self) -> Self {
        Self::from_mask(self.ambient_dim, full_mask(self.ambient_dim) & !self.mask)
    }

    /// All `C(n, j)` coordinate subspaces of dimension `j`, in increasing mask order.
    pub fn all_of_dim(ambient_dim: usize, j: usize) -> Vec<Self> {
        (0..=full_mask(ambient_dim))
            .filter(|m| m.count_ones() as usize == j)
            .map(|m| Self::from_mask(ambient_dim, m))
            .collect()
    }

    /// All `2^n` coordinate subspaces.
    pub fn all(ambient_dim: usize) -> Vec<Self> {
        (0..=full_mask(ambient_dim))
            .map(|m| Self::from_mask(ambient_dim, m))
            .collect()
    }
}

impl fmt::Display for CoordSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "sp{{{}}}", idx.join(","))
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// A sign vector in `{-1, 1}^n`; bit `i` set means `sigma_i = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector {
    dim: usize,
    negatives: u32,
}

impl SignVector {
    pub fn from_mask(dim: usize, negatives: u32) -> Self {
        SignVector {
            dim,
            negatives: negatives & full_mask(dim),
        }
    }

    pub fn positive(dim: usize) -> Self {
        Self::from_mask(dim, 0)
    }

    pub fn negative(dim: usize) -> Self {
        Self::from_mask(dim, full_mask(dim))
    }

    pub fn all(dim: usize) -> impl Iterator<Item = SignVector> {
        (0..=full_mask(dim)).map(move |m| Self::from_mask(dim, m))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Mask of the coordinates with sign `-1`.
    pub fn negative_mask(&self) -> u32 {
        self.negatives
    }

    /// Index into a `2^n`-long table of orthant pieces.
    pub fn index(&self) -> usize {
        self.negatives as usize
    }

    pub fn is_negative(&self, i: usize) -> bool {
        self.negatives >> i & 1 == 1
    }

    pub fn negated(&self) -> Self {
        Self::from_mask(self.dim, !self.negatives)
    }

    /// Whether `self` and `other` agree on every coordinate in `mask`.
    pub fn agrees_on(&self, other: &SignVector, mask: u32) -> bool {
        (self.negatives ^ other.negatives) & mask == 0
    }

    /// The sign vector equal to `self` on `mask` and to `-self` off it.
    pub fn flip_outside(&self, mask: u32) -> Self {
        Self::from_mask(self.dim, self.negatives ^ (!mask & full_mask(self.dim)))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut neg = 0u32;
        let chars: Vec<char> = s.chars().collect();
        if chars.is_empty() || chars.len() > 32 {
            return Err(Error::Parse(format!("bad sign vector {s:?}")));
        }
        for (i, c) in chars.iter().enumerate() {
            match c {
                '+' => {}
                '-' => neg |= 1 << i,
                _ => return Err(Error::Parse(format!("bad sign vector {s:?}"))),
            }
        }
        Ok(Self::from_mask(chars.len(), neg))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            f.write_str(if self.is_negative(i) { "-" } else { "+" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_enumeration() {
        assert_eq!(CoordSubspace::all_of_dim(4, 2).len(), 6);
        assert_eq!(CoordSubspace::all(3).len(), 8);
        let e = CoordSubspace::new(3, &[0, 2]).unwrap();
        assert_eq!(e.complement().indices(), vec![1]);
        assert_eq!(e.to_string(), "sp{1,3}");
        assert!(CoordSubspace::new(3, &[3]).is_err());
        assert!(CoordSubspace::new(3, &[1, 1]).is_err());
    }

    #[test]
    fn sign_vector_roundtrip_and_flip() {
        let s = SignVector::parse("+-+").unwrap();
        assert_eq!(s.to_string(), "+-+");
        assert_eq!(s.negated().to_string(), "-+-");
        // equal on {1}, opposite on {2,3}
        assert_eq!(s.flip_outside(0b001).to_string(), "++-");
        assert_eq!(s.flip_outside(0b001).flip_outside(0b001), s);
        assert!(SignVector::parse("+x").is_err());
        assert_eq!(SignVector::all(3).count(), 8);
    }
}
