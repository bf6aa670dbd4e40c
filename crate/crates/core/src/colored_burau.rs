//! The Colored-Burau representation `CB: B_n -> GL_n(L_n) ⋊ S_n`.
//!
//! An element of the target group is a pair `(M, s)`; the product twists the
//! right factor by the left permutation,
//! `(M, s) ⋆ (M', s') = (M · ^sM', s ∘ s')`, where `^sM'` renames every
//! variable `t_k` to `t_{s(k)}`. Restricted to pure braids the permutation is
//! trivial and the matrix part is the Gassner representation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Permutation};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::poly_matrix::{col_embed, col_vector, PolyMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ElementWire", into = "ElementWire")]
pub struct CBElement {
    pub matrix: PolyMatrix,
    pub perm: Permutation,
}

impl CBElement {
    /// Checks the shape invariants and that `det(matrix)` is a unit.
    pub fn new(matrix: PolyMatrix, perm: Permutation) -> Result<Self> {
        let el = Self::unchecked(matrix, perm)?;
        let det = el.matrix.det();
        if !det.is_unit() {
            return Err(Error::NotInvertible(det.to_string()));
        }
        Ok(el)
    }

    fn unchecked(matrix: PolyMatrix, perm: Permutation) -> Result<Self> {
        let n = matrix.size();
        if matrix.nvars() != n {
            return Err(Error::VarCountMismatch { left: n, right: matrix.nvars() });
        }
        if perm.degree() != n {
            return Err(Error::DimensionMismatch { left: n, right: perm.degree() });
        }
        Ok(Self { matrix, perm })
    }

    pub fn identity(n: usize) -> Self {
        Self { matrix: PolyMatrix::identity(n, n), perm: Permutation::identity(n) }
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.matrix.is_identity()
    }

    /// `(M, s) ⋆ (M', s') = (M · ^sM', s ∘ s')`.
    pub fn star_mul(&self, rhs: &Self) -> Result<Self> {
        if self.size() != rhs.size() {
            return Err(Error::DimensionMismatch { left: self.size(), right: rhs.size() });
        }
        let twisted = rhs.matrix.permute_vars(&self.perm)?;
        Ok(Self { matrix: self.matrix.try_mul(&twisted)?, perm: self.perm.compose(&rhs.perm)? })
    }
}

impl fmt::Display for CBElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "matrix:")?;
        writeln!(f, "{}", self.matrix)?;
        write!(f, "perm: {}", self.perm)
    }
}

#[derive(Serialize, Deserialize)]
struct ElementWire {
    matrix: PolyMatrix,
    perm: Vec<usize>,
}

impl From<CBElement> for ElementWire {
    fn from(e: CBElement) -> Self {
        ElementWire { perm: e.perm.images(), matrix: e.matrix }
    }
}

impl TryFrom<ElementWire> for CBElement {
    type Error = Error;
    fn try_from(w: ElementWire) -> Result<Self> {
        CBElement::new(w.matrix, Permutation::from_images(&w.perm)?)
    }
}

fn t(n: usize, k: usize) -> LaurentPoly {
    LaurentPoly::var(n, k)
}

fn t_inv(n: usize, k: usize) -> LaurentPoly {
    LaurentPoly::var_pow(n, k, -1)
}

fn one(n: usize) -> LaurentPoly {
    LaurentPoly::one(n)
}

fn check_pair(i: usize, j: usize, n: usize) -> Result<()> {
    if i < 1 || i >= j || j > n {
        return Err(Error::InvalidPair { i, j, n });
    }
    Ok(())
}

/// `CB(σ_i)` or `CB(σ_i^{-1})` on `n` strands.
///
/// `cb(σ_i)` is the identity except row `i`, which reads `t_i, -t_i, 1` in
/// columns `i-1, i, i+1` (the first entry is dropped when `i = 1`). The
/// inverse element is `(^s(cb(σ_i)^{-1}), s)` with `s = (i, i+1)`, whose row
/// `i` reads `1, -t_{i+1}^{-1}, t_{i+1}^{-1}`.
pub fn cb_generator(i: usize, n: usize, inverse: bool) -> Result<CBElement> {
    if n < 2 || i < 1 || i > n - 1 {
        return Err(Error::IndexOutOfRange { index: i, lo: 1, hi: n.saturating_sub(1) });
    }
    let mut m = PolyMatrix::identity(n, n);
    if inverse {
        if i > 1 {
            m.set(i, i - 1, one(n));
        }
        m.set(i, i, -t_inv(n, i + 1));
        m.set(i, i + 1, t_inv(n, i + 1));
    } else {
        if i > 1 {
            m.set(i, i - 1, t(n, i));
        }
        m.set(i, i, -t(n, i));
        m.set(i, i + 1, one(n));
    }
    Ok(CBElement { matrix: m, perm: Permutation::transposition(n, i, i + 1)? })
}

/// `CB(w)`: the left-to-right ⋆-product of the generator images.
pub fn cb_apply(word: &BraidWord) -> CBElement {
    let n = word.strands();
    word.letters().iter().fold(CBElement::identity(n), |acc, l| {
        let g = cb_generator(l.generator, n, l.inverse).expect("word letters are in range");
        acc.star_mul(&g).expect("same size")
    })
}

/// Sum of `c_col(value_{i->j})` terms on top of the identity.
fn identity_plus_columns(n: usize, i: usize, j: usize, cols: &[(usize, LaurentPoly)]) -> Result<PolyMatrix> {
    let mut m = PolyMatrix::identity(n, n);
    for (col, value) in cols {
        m = m.try_add(&col_embed(*col, &col_vector(value, i, j, n)?)?)?;
    }
    Ok(m)
}

/// Closed form of `cb(A_{i,j})`:
/// `I + c_{i-1}((t_i - t_i t_j)_{i->j}) + c_i((t_j - 1)_{i->j})
///    + c_{j-1}((t_i t_j - t_j)_{i->j}) + c_j((1 - t_i)_{i->j})`,
/// with the `c_{i-1}` term absent for `i = 1`. When `j = i + 1` the `c_i` and
/// `c_{j-1}` terms land in the same column and add.
pub fn cb_pure_closed_form(i: usize, j: usize, n: usize) -> Result<PolyMatrix> {
    check_pair(i, j, n)?;
    let (ti, tj) = (t(n, i), t(n, j));
    let titj = &ti * &tj;
    let mut cols = Vec::with_capacity(4);
    if i > 1 {
        cols.push((i - 1, &ti - &titj));
    }
    cols.push((i, &tj - &one(n)));
    cols.push((j - 1, &titj - &tj));
    cols.push((j, &one(n) - &ti));
    identity_plus_columns(n, i, j, &cols)
}

/// Closed form of `cb(A_{i,j})^{-1}`:
/// `I + c_{i-1}(((t_j - 1)/t_j)_{i->j}) + c_i(((1 - t_j)/(t_i t_j))_{i->j})`
/// `+ c_{j-1}(((1 - t_i)/t_i)_{i->j}) + c_j(((t_i - 1)/(t_i t_j))_{i->j})`.
/// All denominators are monomials, so the entries stay Laurent polynomials.
pub fn cb_pure_inverse_closed_form(i: usize, j: usize, n: usize) -> Result<PolyMatrix> {
    check_pair(i, j, n)?;
    let (ti, tj) = (t(n, i), t(n, j));
    let inv_ti = t_inv(n, i);
    let inv_tj = t_inv(n, j);
    let inv_titj = &inv_ti * &inv_tj;
    let mut cols = Vec::with_capacity(4);
    if i > 1 {
        cols.push((i - 1, &(&tj - &one(n)) * &inv_tj));
    }
    cols.push((i, &(&one(n) - &tj) * &inv_titj));
    cols.push((j - 1, &(&one(n) - &ti) * &inv_ti));
    cols.push((j, &(&ti - &one(n)) * &inv_titj));
    identity_plus_columns(n, i, j, &cols)
}

/// `det(cb(A_{i,j})) = t_i t_j`.
pub fn cb_pure_det(i: usize, j: usize, n: usize) -> Result<LaurentPoly> {
    check_pair(i, j, n)?;
    Ok(&t(n, i) * &t(n, j))
}

/// `(t_1 ⋯ t_n)^e`: the determinant of the `k`-th power of the full twist is
/// this with `e = k (n - 1)`.
pub fn all_vars_power(n: usize, e: i32) -> LaurentPoly {
    LaurentPoly::monomial(n, 1, vec![e; n])
}

/// Entrywise `t_i -> t`, recovering the (unreduced) Burau matrix.
pub fn burau_specialize(m: &PolyMatrix) -> PolyMatrix {
    m.map_entries(1, LaurentPoly::burau_quotient)
}
