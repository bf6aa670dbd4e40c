//! Square matrices over the rationals, exact.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Renders `p` or `p/q`.
pub fn rat_string(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

impl RatMatrix {
    pub fn zero(n: usize) -> Self {
        Self { n, entries: vec![BigRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for k in 0..n {
            m.entries[k * n + k] = BigRational::one();
        }
        m
    }

    /// Row-major integer literal; panics if not square.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            entries.extend(r.iter().map(|&v| rat(v)));
        }
        Self { n, entries }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for r in 1..=n {
            for c in 1..=n {
                entries.push(f(r, c));
            }
        }
        Self { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry at 1-indexed `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[(row - 1) * self.n + (col - 1)]
    }

    pub fn set(&mut self, row: usize, col: usize, v: BigRational) {
        self.entries[(row - 1) * self.n + (col - 1)] = v;
    }

    pub fn column(&self, col: usize) -> Vec<BigRational> {
        (1..=self.n).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(BigRational::is_integer)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch { left: self.n, right: rhs.n });
        }
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch { left: self.n, right: rhs.n });
        }
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect();
        Ok(Self { n: self.n, entries })
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: v.len() });
        }
        Ok((0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|k| &self.entries[i * self.n + k] * &v[k])
                    .fold(BigRational::zero(), |acc, x| acc + x)
            })
            .collect())
    }

    /// Reduced row echelon form, with the pivot columns (0-indexed).
    fn rref(&self) -> (Vec<BigRational>, Vec<usize>) {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..n).find(|&r| !a[r * n + col].is_zero()) else {
                continue;
            };
            for c in 0..n {
                a.swap(row * n + c, p * n + c);
            }
            let inv = a[row * n + col].recip();
            for c in 0..n {
                a[row * n + c] *= &inv;
            }
            for r in 0..n {
                if r != row && !a[r * n + col].is_zero() {
                    let f = a[r * n + col].clone();
                    for c in 0..n {
                        let delta = &f * &a[row * n + c];
                        a[r * n + c] -= delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn determinant(&self) -> BigRational {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return BigRational::zero();
            };
            if p != col {
                for c in 0..n {
                    a.swap(col * n + c, p * n + c);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let f = &a[r * n + col] / &pivot;
                for c in col..n {
                    let delta = &f * &a[col * n + c];
                    a[r * n + c] -= delta;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let w = 2 * n;
        let mut a = vec![BigRational::zero(); n * w];
        for r in 0..n {
            for c in 0..n {
                a[r * w + c] = self.entries[r * n + c].clone();
            }
            a[r * w + n + r] = BigRational::one();
        }
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r * w + col].is_zero()).ok_or(Error::Singular)?;
            for c in 0..w {
                a.swap(col * w + c, p * w + c);
            }
            let inv = a[col * w + col].recip();
            for c in 0..w {
                a[col * w + c] *= &inv;
            }
            for r in 0..n {
                if r != col && !a[r * w + col].is_zero() {
                    let f = a[r * w + col].clone();
                    for c in 0..w {
                        let delta = &f * &a[col * w + c];
                        a[r * w + c] -= delta;
                    }
                }
            }
        }
        let entries = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .map(|(r, c)| a[r * w + n + c].clone())
            .collect();
        Ok(Self { n, entries })
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::identity(self.n);
        for _ in 0..k.unsigned_abs() {
            acc = acc.try_mul(&base)?;
        }
        Ok(acc)
    }

    /// `P^{-1} M P`.
    pub fn conjugate_by(&self, p: &Self) -> Result<Self> {
        p.inverse()?.try_mul(self)?.try_mul(p)
    }

    pub fn rows_strings(&self) -> Vec<Vec<String>> {
        (1..=self.n)
            .map(|r| (1..=self.n).map(|c| rat_string(self.get(r, c))).collect())
            .collect()
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            n: usize,
            rows: Vec<Vec<String>>,
        }
        Wire { n: self.n, rows: self.rows_strings() }.serialize(serializer)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows_strings().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
