//! Square matrices over the Laurent ring.
//!
//! Rows and columns are numbered from 1 in every public method. The column
//! builders [`col_vector`] and [`col_embed`] follow the usual convention for
//! writing Gassner-type matrices as the identity plus a few nonzero columns:
//! `value_{i->j}` is the length-`n` column with `value` in rows `i..j-1`, and
//! `c_s(v)` is the matrix whose column `s` is `v`.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::perm::Permutation;
use crate::rational::RatMatrix;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "MatrixWire", into = "MatrixWire")]
pub struct PolyMatrix {
    n: usize,
    nvars: usize,
    entries: Vec<LaurentPoly>,
}

/// `value_{i->j}`: `value` in positions `i` through `j - 1`, zero elsewhere.
/// `j = n + 1` fills through the last row.
pub fn col_vector(value: &LaurentPoly, i: usize, j: usize, n: usize) -> Result<Vec<LaurentPoly>> {
    if i < 1 || i > n {
        return Err(Error::IndexOutOfRange { index: i, lo: 1, hi: n });
    }
    if j <= i || j > n + 1 {
        return Err(Error::IndexOutOfRange { index: j, lo: i + 1, hi: n + 1 });
    }
    let nvars = value.nvars();
    Ok((1..=n)
        .map(|r| if (i..j).contains(&r) { value.clone() } else { LaurentPoly::zero(nvars) })
        .collect())
}

/// `c_s(v)`: the matrix whose column `s` is `v`, zero elsewhere.
pub fn col_embed(s: usize, v: &[LaurentPoly]) -> Result<PolyMatrix> {
    let n = v.len();
    if s < 1 || s > n {
        return Err(Error::IndexOutOfRange { index: s, lo: 1, hi: n });
    }
    let nvars = v[0].nvars();
    if let Some(bad) = v.iter().find(|p| p.nvars() != nvars) {
        return Err(Error::VarCountMismatch { left: nvars, right: bad.nvars() });
    }
    let mut m = PolyMatrix::zero(n, nvars);
    for (r, p) in v.iter().enumerate() {
        m.set(r + 1, s, p.clone());
    }
    Ok(m)
}

impl PolyMatrix {
    pub fn zero(n: usize, nvars: usize) -> Self {
        Self { n, nvars, entries: vec![LaurentPoly::zero(nvars); n * n] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zero(n, nvars);
        for k in 1..=n {
            m.set(k, k, LaurentPoly::one(nvars));
        }
        m
    }

    /// Builds from row-major rows; all entries must share one variable count.
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch { left: 0, right: 1 });
        }
        let nvars = rows[0].first().map(LaurentPoly::nvars).unwrap_or(0);
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: row.len() });
            }
            for p in row {
                if p.nvars() != nvars {
                    return Err(Error::VarCountMismatch { left: nvars, right: p.nvars() });
                }
                entries.push(p);
            }
        }
        Ok(Self { n, nvars, entries })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, row: usize, col: usize) -> &LaurentPoly {
        assert!(row >= 1 && row <= self.n && col >= 1 && col <= self.n, "({row},{col}) outside {}x{}", self.n, self.n);
        &self.entries[(row - 1) * self.n + (col - 1)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: LaurentPoly) {
        assert!(row >= 1 && row <= self.n && col >= 1 && col <= self.n, "({row},{col}) outside {}x{}", self.n, self.n);
        assert_eq!(value.nvars(), self.nvars, "entry variable count");
        self.entries[(row - 1) * self.n + (col - 1)] = value;
    }

    pub fn rows(&self) -> Vec<Vec<LaurentPoly>> {
        self.entries.chunks(self.n.max(1)).map(<[_]>::to_vec).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.nvars)
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        if self.nvars != other.nvars {
            return Err(Error::VarCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { n: self.n, nvars: self.nvars, entries })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let n = self.n;
        let mut out = Self::zero(n, self.nvars);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j].add_product(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise variable permutation `^s M`.
    pub fn permute_vars(&self, s: &Permutation) -> Result<Self> {
        let entries = self.entries.iter().map(|p| p.permute_vars(s)).collect::<Result<_>>()?;
        Ok(Self { n: self.n, nvars: self.nvars, entries })
    }

    pub fn map_entries(&self, nvars: usize, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let entries = self.entries.iter().map(f).collect::<Vec<_>>();
        debug_assert!(entries.iter().all(|p| p.nvars() == nvars));
        Self { n: self.n, nvars, entries }
    }

    pub fn eval(&self, point: &[BigRational]) -> Result<RatMatrix> {
        let values = self.entries.iter().map(|p| p.eval(point)).collect::<Result<Vec<_>>>()?;
        Ok(RatMatrix::from_fn(self.n, |r, c| values[(r - 1) * self.n + (c - 1)].clone()))
    }

    /// Exact determinant. Columns holding a unit entry `±t^e` are cleared by
    /// row operations with that pivot, which needs no division outside the
    /// ring; pivots are picked to limit fill-in. Whatever is left without a
    /// unit pivot is expanded by cofactors.
    pub fn det(&self) -> LaurentPoly {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut rows: Vec<usize> = (0..n).collect();
        let mut cols: Vec<usize> = (0..n).collect();
        let mut factor = LaurentPoly::one(self.nvars);
        loop {
            if rows.is_empty() {
                return factor;
            }
            let nnz_row = |r: usize| cols.iter().filter(|&&c| !a[r * n + c].is_zero()).count();
            let nnz_col = |c: usize| rows.iter().filter(|&&r| !a[r * n + c].is_zero()).count();
            let mut pivot: Option<(usize, usize, usize)> = None;
            for (p, &r) in rows.iter().enumerate() {
                for (q, &c) in cols.iter().enumerate() {
                    if a[r * n + c].is_unit() {
                        let cost = (nnz_row(r) - 1) * (nnz_col(c) - 1);
                        if pivot.is_none_or(|(_, _, best)| cost < best) {
                            pivot = Some((p, q, cost));
                        }
                    }
                }
            }
            let Some((p, q, _)) = pivot else {
                let rest = PolyMatrix {
                    n: rows.len(),
                    nvars: self.nvars,
                    entries: rows.iter().flat_map(|&r| cols.iter().map(move |&c| (r, c))).map(|(r, c)| a[r * n + c].clone()).collect(),
                };
                return &factor * &rest.cofactor_det();
            };
            let (r, c) = (rows[p], cols[q]);
            let inv = a[r * n + c].unit_inverse().expect("unit pivot");
            factor = &factor * &a[r * n + c];
            if (p + q) % 2 == 1 {
                factor = -factor;
            }
            let pivot_row: Vec<(usize, LaurentPoly)> =
                cols.iter().filter(|&&j| j != c && !a[r * n + j].is_zero()).map(|&j| (j, a[r * n + j].clone())).collect();
            for &i in &rows {
                if i == r || a[i * n + c].is_zero() {
                    continue;
                }
                let f = -(&a[i * n + c] * &inv);
                for (j, v) in &pivot_row {
                    a[i * n + j].add_product(&f, v);
                }
            }
            rows.remove(p);
            cols.remove(q);
        }
    }

    /// Division-free determinant by cofactor expansion along the sparsest
    /// remaining row or column, with minors memoized on their (row set,
    /// column set).
    fn cofactor_det(&self) -> LaurentPoly {
        assert!(self.n <= 64, "cofactor expansion supports n <= 64");
        if self.n == 0 {
            return LaurentPoly::one(self.nvars);
        }
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let mut memo = HashMap::new();
        self.minor_det(full, full, &mut memo)
    }

    fn minor_det(&self, rows: u64, cols: u64, memo: &mut HashMap<(u64, u64), LaurentPoly>) -> LaurentPoly {
        let k = rows.count_ones();
        if k == 0 {
            return LaurentPoly::one(self.nvars);
        }
        if let Some(d) = memo.get(&(rows, cols)) {
            return d.clone();
        }
        let row_idx: Vec<usize> = (0..self.n).filter(|r| rows >> r & 1 == 1).collect();
        let col_idx: Vec<usize> = (0..self.n).filter(|c| cols >> c & 1 == 1).collect();
        let at = |r: usize, c: usize| &self.entries[r * self.n + c];

        if k == 1 {
            let d = at(row_idx[0], col_idx[0]).clone();
            memo.insert((rows, cols), d.clone());
            return d;
        }

        let count_col = |c: usize| row_idx.iter().filter(|&&r| !at(r, c).is_zero()).count();
        let count_row = |r: usize| col_idx.iter().filter(|&&c| !at(r, c).is_zero()).count();
        let (best_col_pos, best_col_nnz) = col_idx
            .iter()
            .enumerate()
            .map(|(p, &c)| (p, count_col(c)))
            .min_by_key(|&(_, nnz)| nnz)
            .unwrap();
        let (best_row_pos, best_row_nnz) = row_idx
            .iter()
            .enumerate()
            .map(|(p, &r)| (p, count_row(r)))
            .min_by_key(|&(_, nnz)| nnz)
            .unwrap();

        let mut total = LaurentPoly::zero(self.nvars);
        if best_col_nnz <= best_row_nnz {
            let c = col_idx[best_col_pos];
            for (p, &r) in row_idx.iter().enumerate() {
                let a = at(r, c);
                if a.is_zero() {
                    continue;
                }
                let minor = self.minor_det(rows & !(1 << r), cols & !(1 << c), memo);
                let term = a * &minor;
                total = if (p + best_col_pos) % 2 == 0 { &total + &term } else { &total - &term };
            }
        } else {
            let r = row_idx[best_row_pos];
            for (p, &c) in col_idx.iter().enumerate() {
                let a = at(r, c);
                if a.is_zero() {
                    continue;
                }
                let minor = self.minor_det(rows & !(1 << r), cols & !(1 << c), memo);
                let term = a * &minor;
                total = if (p + best_row_pos) % 2 == 0 { &total + &term } else { &total - &term };
            }
        }
        memo.insert((rows, cols), total.clone());
        total
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    n: usize,
    rows: Vec<Vec<LaurentPoly>>,
}

impl From<PolyMatrix> for MatrixWire {
    fn from(m: PolyMatrix) -> Self {
        MatrixWire { n: m.n, rows: m.rows() }
    }
}

impl TryFrom<MatrixWire> for PolyMatrix {
    type Error = Error;
    fn try_from(w: MatrixWire) -> Result<Self> {
        let m = PolyMatrix::from_rows(w.rows)?;
        if m.n != w.n {
            return Err(Error::DimensionMismatch { left: w.n, right: m.n });
        }
        Ok(m)
    }
}
