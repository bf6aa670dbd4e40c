//! Elements of the symmetric group `S_n`, acting on variable indices.
//!
//! Points are 1-indexed at the API boundary. Composition is function
//! composition: `s.compose(&r)` applies `r` first, then `s`, so that the
//! twisted product `(M, s) * (M', s') = (M * sM', s s')` is associative when
//! `s` acts on variables by `t_k -> t_{s(k)}`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    // 0-indexed images
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree).collect() }
    }

    /// The transposition `(a, b)` in `S_degree`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self> {
        for x in [a, b] {
            if x == 0 || x > degree {
                return Err(Error::IndexOutOfRange { index: x, lo: 1, hi: degree });
            }
        }
        let mut images: Vec<usize> = (0..degree).collect();
        images.swap(a - 1, b - 1);
        Ok(Self { images })
    }

    /// Builds a permutation from its 1-indexed image list `[s(1), ..., s(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::NotAPermutation(images.to_vec()));
            }
            seen[x - 1] = true;
        }
        Ok(Self { images: images.iter().map(|x| x - 1).collect() })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-indexed point `k`.
    pub fn image(&self, k: usize) -> usize {
        self.images[k - 1] + 1
    }

    pub(crate) fn image0(&self, k: usize) -> usize {
        self.images[k]
    }

    /// 1-indexed image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DimensionMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(Self { images: other.images.iter().map(|&k| self.images[k]).collect() })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (k, &s) in self.images.iter().enumerate() {
            images[s] = k;
        }
        Self { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &s)| k == s)
    }

    /// Disjoint cycle notation, fixed points omitted; `e` for the identity.
    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                cycle.push((k + 1).to_string());
                k = self.images[k];
            }
            out.push('(');
            out.push_str(&cycle.join(","));
            out.push(')');
        }
        if out.is_empty() {
            out.push('e');
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_first() {
        let a = Permutation::from_images(&[2, 3, 1]).unwrap();
        let b = Permutation::transposition(3, 1, 2).unwrap();
        // a(b(1)) = a(2) = 3
        assert_eq!(a.compose(&b).unwrap().image(1), 3);
        assert_eq!(b.compose(&a).unwrap().image(1), 1);
    }

    #[test]
    fn inverse_and_cycles() {
        let a = Permutation::from_images(&[2, 3, 1, 4]).unwrap();
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        assert_eq!(a.cycle_string(), "(1,2,3)");
        assert_eq!(Permutation::identity(3).cycle_string(), "e");
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::transposition(3, 3, 4).is_err());
    }
}
