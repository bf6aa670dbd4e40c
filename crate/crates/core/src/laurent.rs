//! Sparse multivariate Laurent polynomials over the integers,
//! `Z[t_1^{±1}, ..., t_n^{±1}]`.
//!
//! A polynomial is a map from exponent vectors to nonzero `BigInt`
//! coefficients. The map is kept canonical (no zero coefficients), so derived
//! equality is ring equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub type Exponents = Vec<i32>;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "PolyWire", into = "PolyWire")]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, c, vec![0; nvars])
    }

    /// The variable `t_k` (1-indexed).
    pub fn var(nvars: usize, k: usize) -> Self {
        Self::var_pow(nvars, k, 1)
    }

    /// `t_k^e`, with `e` possibly negative.
    pub fn var_pow(nvars: usize, k: usize, e: i32) -> Self {
        assert!(k >= 1 && k <= nvars, "variable t{k} out of range for {nvars} variables");
        let mut exps = vec![0; nvars];
        exps[k - 1] = e;
        Self::monomial(nvars, 1, exps)
    }

    pub fn monomial(nvars: usize, c: impl Into<BigInt>, exps: Exponents) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { nvars, terms }
    }

    /// Builds a polynomial from possibly repeated or zero terms.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Exponents, BigInt)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::VarCountMismatch { left: nvars, right: exps.len() });
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    /// Units of the Laurent ring are exactly the signed monomials `±t^e`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    /// `±t^-e` for a unit `±t^e`, `None` otherwise.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Self::monomial(self.nvars, c.clone(), e.iter().map(|x| -x).collect()))
    }

    /// Coefficient of the constant monomial `t^0`.
    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_default()
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VarCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.nvars);
        out.add_product(self, other);
        Ok(out)
    }

    /// `self += a * b`, without an intermediate allocation for the product.
    pub(crate) fn add_product(&mut self, a: &Self, b: &Self) {
        debug_assert!(self.nvars == a.nvars && a.nvars == b.nvars);
        if a.terms.len() * b.terms.len() >= PACKED_MIN_WORK {
            if let Some(product) = packed_product(a, b) {
                for (e, c) in product {
                    self.add_term(e, c);
                }
                return;
            }
        }
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                let exps = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                self.add_term(exps, c1 * c2);
            }
        }
    }

    /// Nonnegative integer power.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Applies `t_k -> t_{s(k)}` to every variable.
    pub fn permute_vars(&self, s: &Permutation) -> Result<Self> {
        if s.degree() != self.nvars {
            return Err(Error::DimensionMismatch { left: self.nvars, right: s.degree() });
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut out = vec![0; self.nvars];
                for (k, &x) in e.iter().enumerate() {
                    out[s.image0(k)] = x;
                }
                (out, c.clone())
            })
            .collect();
        Ok(Self { nvars: self.nvars, terms })
    }

    /// Identifies every `t_i` with a single variable `t`.
    pub fn burau_quotient(&self) -> Self {
        let mut out = Self::zero(1);
        for (e, c) in &self.terms {
            out.add_term(vec![e.iter().sum()], c.clone());
        }
        out
    }

    /// Exact value at a point with rational coordinates.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars {
            return Err(Error::PointLength { expected: self.nvars, got: point.len() });
        }
        for (k, v) in point.iter().enumerate() {
            if v.is_zero() && self.terms.keys().any(|e| e[k] < 0) {
                return Err(Error::ZeroDivision { var: k + 1 });
            }
        }
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (&x, v) in e.iter().zip(point) {
                if x != 0 {
                    term *= v.pow(x);
                }
            }
            total += term;
        }
        Ok(total)
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending lexicographic term order, e.g. `1 - t1 + t1*t2^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(k, &x)| if x == 1 { format!("t{}", k + 1) } else { format!("t{}^{}", k + 1, x) })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

const PACKED_MIN_WORK: usize = 256;

fn exponent_bounds(p: &LaurentPoly) -> (Vec<i64>, Vec<i64>) {
    let mut lo = vec![i64::MAX; p.nvars];
    let mut hi = vec![i64::MIN; p.nvars];
    for e in p.terms.keys() {
        for (v, &x) in e.iter().enumerate() {
            lo[v] = lo[v].min(x as i64);
            hi[v] = hi[v].max(x as i64);
        }
    }
    (lo, hi)
}

/// `a * b` with exponent vectors packed into one `u64` (fixed-width fields
/// offset by the minimum exponents) and `i128` coefficients. Returns `None`
/// when the product does not provably fit, so the caller can fall back to
/// the general routine.
fn packed_product(a: &LaurentPoly, b: &LaurentPoly) -> Option<Vec<(Exponents, BigInt)>> {
    let nvars = a.nvars;
    if nvars == 0 {
        return None;
    }
    let (lo_a, hi_a) = exponent_bounds(a);
    let (lo_b, hi_b) = exponent_bounds(b);
    let span = (0..nvars).map(|v| hi_a[v] - lo_a[v] + hi_b[v] - lo_b[v]).max()?;
    let width = 64 - (span as u64).leading_zeros().min(63);
    if width as usize * nvars > 64 {
        return None;
    }
    let max_abs = |p: &LaurentPoly| p.terms.values().map(|c| c.abs().to_u64()).try_fold(0u64, |m, c| Some(m.max(c?)));
    let bound = (max_abs(a)? as u128)
        .checked_mul(max_abs(b)? as u128)?
        .checked_mul(a.terms.len().min(b.terms.len()) as u128)?;
    if bound > i128::MAX as u128 {
        return None;
    }
    let pack = |p: &LaurentPoly, lo: &[i64]| -> Vec<(u64, i128)> {
        p.terms
            .iter()
            .map(|(e, c)| {
                let key = e.iter().enumerate().fold(0u64, |k, (v, &x)| k | ((x as i64 - lo[v]) as u64) << (width as usize * v));
                (key, c.to_i128().expect("bounded above"))
            })
            .collect()
    };
    let (pa, pb) = (pack(a, &lo_a), pack(b, &lo_b));
    let mut acc: FxHashMap<u64, i128> = FxHashMap::default();
    acc.reserve(pa.len().max(pb.len()));
    for &(ka, ca) in &pa {
        for &(kb, cb) in &pb {
            *acc.entry(ka + kb).or_insert(0) += ca * cb;
        }
    }
    let mask = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
    Some(
        acc.into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(key, c)| {
                let e = (0..nvars)
                    .map(|v| ((key >> (width as usize * v)) & mask) as i64 + lo_a[v] + lo_b[v])
                    .map(|x| i32::try_from(x).expect("exponent overflow"))
                    .collect();
                (e, BigInt::from(c))
            })
            .collect(),
    )
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            /// Panics on a variable-count mismatch; see the `try_` form.
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("Laurent polynomial operands")
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    coeff: String,
    exps: Exponents,
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    nvars: usize,
    terms: Vec<TermWire>,
}

impl From<LaurentPoly> for PolyWire {
    fn from(p: LaurentPoly) -> Self {
        PolyWire {
            nvars: p.nvars,
            terms: p
                .terms
                .into_iter()
                .map(|(exps, c)| TermWire { coeff: c.to_string(), exps })
                .collect(),
        }
    }
}

impl TryFrom<PolyWire> for LaurentPoly {
    type Error = Error;
    fn try_from(w: PolyWire) -> Result<Self> {
        let terms = w
            .terms
            .into_iter()
            .map(|t| {
                let c: BigInt = t
                    .coeff
                    .parse()
                    .map_err(|_| Error::Json(format!("bad coefficient {:?}", t.coeff)))?;
                Ok((t.exps, c))
            })
            .collect::<Result<Vec<_>>>()?;
        LaurentPoly::from_terms(w.nvars, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, k: usize) -> LaurentPoly {
        LaurentPoly::var(n, k)
    }

    fn c(n: usize, v: i64) -> LaurentPoly {
        LaurentPoly::constant(n, v)
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn addition_cancels_to_canonical_form() {
        assert_eq!(&(&t(2, 1) + &c(2, 1)) + &c(2, -1), t(2, 1));
        assert_eq!(&t(2, 1) + &LaurentPoly::zero(2), t(2, 1));
        let lhs = &(&t(2, 2) - &c(2, 1)) + &(&(&t(2, 1) * &t(2, 2)) - &t(2, 2));
        assert_eq!(lhs, &(&t(2, 1) * &t(2, 2)) - &c(2, 1));
        assert!((&t(3, 2) - &t(3, 2)).is_zero());
    }

    #[test]
    fn multiplication_examples() {
        assert!((&LaurentPoly::var_pow(1, 1, -1) * &t(1, 1)).is_one());
        assert_eq!(&(-t(2, 1)) * &(-t(2, 2)), &t(2, 1) * &t(2, 2));
        let lhs = &(&c(1, 1) - &t(1, 1)) * &(&c(1, 1) + &t(1, 1));
        assert_eq!(lhs, &c(1, 1) - &t(1, 1).pow(2));
    }

    #[test]
    fn mismatched_variable_counts_are_errors() {
        assert_eq!(
            t(2, 1).try_add(&t(3, 1)),
            Err(Error::VarCountMismatch { left: 2, right: 3 })
        );
        assert!(t(2, 1).try_mul(&t(3, 1)).is_err());
    }

    #[test]
    fn evaluation_at_minus_one() {
        let m1 = vec![q(-1); 3];
        assert_eq!((&t(3, 1) * &t(3, 2)).eval(&m1).unwrap(), q(1));
        assert_eq!((&c(3, 1) - &t(3, 1)).eval(&m1).unwrap(), q(2));
        assert_eq!((&t(3, 3) - &c(3, 1)).eval(&m1).unwrap(), q(-2));
    }

    #[test]
    fn evaluation_errors() {
        let p = LaurentPoly::var_pow(2, 2, -1);
        assert_eq!(p.eval(&[q(1), q(0)]), Err(Error::ZeroDivision { var: 2 }));
        assert!(p.eval(&[q(1)]).is_err());
        // zero with a positive exponent is fine
        assert_eq!(t(2, 1).eval(&[q(0), q(5)]).unwrap(), q(0));
    }

    #[test]
    fn permuting_variables() {
        let s = Permutation::transposition(2, 1, 2).unwrap();
        assert_eq!((-t(2, 1)).permute_vars(&s).unwrap(), -t(2, 2));
        let s = Permutation::transposition(5, 4, 5).unwrap();
        assert_eq!(t(5, 4).permute_vars(&s).unwrap(), t(5, 5));
        let p = &(&t(3, 1) * &t(3, 3)) - &c(3, 7);
        assert_eq!(p.permute_vars(&Permutation::identity(3)).unwrap(), p);
        assert!(p.permute_vars(&Permutation::identity(2)).is_err());
    }

    #[test]
    fn burau_quotient_examples() {
        assert_eq!((&t(2, 1) * &t(2, 2)).burau_quotient(), t(1, 1).pow(2));
        assert_eq!((&c(3, 1) - &t(3, 3)).burau_quotient(), &c(1, 1) - &t(1, 1));
        assert_eq!(c(4, 5).burau_quotient(), c(1, 5));
    }

    #[test]
    fn display_uses_lex_order_and_negative_powers() {
        let p = &(&c(2, 1) - &t(2, 1)) + &(&t(2, 1) * &LaurentPoly::var_pow(2, 2, -1));
        assert_eq!(p.to_string(), "1 + t1*t2^-1 - t1");
        assert_eq!((-&c(1, 3)).to_string(), "-3");
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
    }

    #[test]
    fn json_form() {
        let p = &c(2, 1) - &(&t(2, 1) * &t(2, 2));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"nvars":2,"terms":[{"coeff":"1","exps":[0,0]},{"coeff":"-1","exps":[1,1]}]}"#
        );
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"nvars":2,"terms":[{"coeff":"1","exps":[0]}]}"#;
        assert!(serde_json::from_str::<LaurentPoly>(bad).is_err());
    }

    fn schoolbook(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(a.nvars);
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                out.add_term(e1.iter().zip(e2).map(|(x, y)| x + y).collect(), c1 * c2);
            }
        }
        out
    }

    fn dense(nvars: usize, seed: i64, coeff: BigInt) -> LaurentPoly {
        let terms = (0..60i64).map(|k| {
            let e = (0..nvars as i64).map(|v| if v == 0 { k - 30 } else { (k * (v + 3) + seed) % 9 - 4 } as i32).collect();
            (e, &coeff * (k % 7 - 3 + seed))
        });
        LaurentPoly::from_terms(nvars, terms).unwrap()
    }

    #[test]
    fn packed_product_agrees_with_schoolbook() {
        for nvars in [1, 3, 6] {
            let (a, b) = (dense(nvars, 1, 1.into()), dense(nvars, 5, 1.into()));
            assert!(a.num_terms() * b.num_terms() >= PACKED_MIN_WORK);
            assert!(packed_product(&a, &b).is_some());
            assert_eq!(&a * &b, schoolbook(&a, &b));
        }
        // coefficients too large for i128 accumulation take the general path
        let big = BigInt::from(1u64 << 62) * BigInt::from(1u64 << 62);
        let (a, b) = (dense(3, 2, big.clone()), dense(3, 4, big));
        assert!(packed_product(&a, &b).is_none());
        assert_eq!(&a * &b, schoolbook(&a, &b));
    }
}
