//! Freeness of pairs of generator images at `t_i = -1`.
//!
//! Write `M_j = τ(cb(A_{1,j}))` for the integer matrix obtained by setting
//! every variable to `-1`. Each `M_j` is unipotent with `M_j - I` of rank
//! one. For `j < j'`, the vectors `w_j = e_1 + ... + e_{j-1}` and
//! `w_{j'}` span a plane invariant under both matrices, on which `M_j` acts as
//! `X = [[1,2],[0,1]]` and `M_{j'}` as `Y = [[1,0],[-2,1]]`. The pair `X`,
//! `Y^{-1}` plays ping-pong on the regions `|x| > |y|` and `|x| < |y|` of
//! `R^2`, hence generates a free group, and any relation between `M_j` and
//! `M_{j'}` would restrict to one between `X` and `Y`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::FreeWord;
use crate::colored_burau::cb_pure_closed_form;
use crate::error::{Error, Result};
use crate::poly_matrix::PolyMatrix;
use crate::rational::{rat, RatMatrix};
use crate::search::relation_search;

/// `τ`: evaluate every variable at `-1`.
pub fn eval_minus_one(m: &PolyMatrix) -> RatMatrix {
    let point = vec![rat(-1); m.nvars()];
    m.eval(&point).expect("-1 is a unit, so every entry evaluates")
}

/// `M_j = τ(cb(A_{1,j}))` on `n` strands.
pub fn minus_one_generator(j: usize, n: usize) -> Result<RatMatrix> {
    Ok(eval_minus_one(&cb_pure_closed_form(1, j, n)?))
}

/// True iff `(M - I)^n = 0`, i.e. 1 is the only eigenvalue.
pub fn unipotency_check(m: &RatMatrix) -> bool {
    let n = m.size();
    let nil = m.try_sub(&RatMatrix::identity(n)).expect("square");
    let mut acc = RatMatrix::identity(n);
    for _ in 0..n {
        acc = acc.try_mul(&nil).expect("square");
        if acc.is_zero() {
            return true;
        }
    }
    acc.is_zero()
}

fn unit(n: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[k - 1] = 1;
    v
}

/// `w_j = e_1 + ... + e_{j-1}`.
pub fn w_vector(j: usize, n: usize) -> Vec<i64> {
    (1..=n).map(|k| i64::from(k < j)).collect()
}

/// `v_j = e_1 + e_j`.
pub fn v_vector(j: usize, n: usize) -> Vec<i64> {
    let mut v = unit(n, 1);
    v[j - 1] += 1;
    v
}

/// The fixed vectors of `M_j`: `e_k` for `k != 2` when `j = 2`; otherwise
/// `e_k` for `k ∉ {1, j-1, j}`, then `v_j` and `w_j`. Always `n - 1`
/// vectors.
pub fn eigenvector_basis(j: usize, n: usize) -> Result<Vec<Vec<i64>>> {
    if j < 2 || j > n {
        return Err(Error::IndexOutOfRange { index: j, lo: 2, hi: n });
    }
    if j == 2 {
        return Ok((1..=n).filter(|&k| k != 2).map(|k| unit(n, k)).collect());
    }
    let mut out: Vec<Vec<i64>> = (1..=n)
        .filter(|&k| k != 1 && k != j - 1 && k != j)
        .map(|k| unit(n, k))
        .collect();
    out.push(v_vector(j, n));
    out.push(w_vector(j, n));
    Ok(out)
}

pub fn to_rational(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| rat(x)).collect()
}

fn check_pair(j: usize, jprime: usize, n: usize) -> Result<()> {
    if j < 2 || j >= jprime || jprime > n {
        return Err(Error::InvalidPair { i: j, j: jprime, n });
    }
    Ok(())
}

fn with_columns(n: usize, replaced: &[(usize, Vec<i64>)]) -> RatMatrix {
    let mut p = RatMatrix::identity(n);
    for (col, v) in replaced {
        for (r, &x) in v.iter().enumerate() {
            p.set(r + 1, *col, rat(x));
        }
    }
    p
}

/// The change of basis as literally prescribed for the two cases: for
/// `j = 2`, column `j'-1` becomes `e_1 + e_{j'-1}`; for `j > 2`, column
/// `j-1` becomes `w_j` and column `j` becomes `w_{j'}`. The pair `(2, 3)` is
/// excluded.
///
/// For `j = 2` this basis produces the `X`, `Y` blocks in the upper-left
/// corner, but the span of the first two basis vectors is not invariant under
/// `M_{j'}`; [`invariant_block_basis`] is what [`free_pair_certificate`]
/// uses.
pub fn change_of_basis(j: usize, jprime: usize, n: usize) -> Result<RatMatrix> {
    check_pair(j, jprime, n)?;
    if (j, jprime) == (2, 3) {
        return Err(Error::ExcludedPair);
    }
    Ok(if j == 2 {
        with_columns(n, &[(jprime - 1, v_vector(jprime - 1, n))])
    } else {
        with_columns(n, &[(j - 1, w_vector(j, n)), (j, w_vector(jprime, n))])
    })
}

/// Column `j-1` replaced by `w_j` and column `j` by `w_{j'}`, for every
/// `2 <= j < j'`. With `w_2 = e_1` this leaves column 1 alone when `j = 2`.
/// Agrees with [`change_of_basis`] for `j > 2`.
pub fn invariant_block_basis(j: usize, jprime: usize, n: usize) -> Result<RatMatrix> {
    check_pair(j, jprime, n)?;
    Ok(with_columns(n, &[(j - 1, w_vector(j, n)), (j, w_vector(jprime, n))]))
}

/// The 2x2 block at rows and columns `r, r+1`.
pub fn block_extract(m: &RatMatrix, r: usize) -> Result<RatMatrix> {
    let n = m.size();
    if r < 1 || r + 1 > n {
        return Err(Error::IndexOutOfRange { index: r, lo: 1, hi: n.saturating_sub(1) });
    }
    Ok(RatMatrix::from_fn(2, |a, b| m.get(r + a - 1, r + b - 1).clone()))
}

/// True when columns `r` and `r+1` vanish outside rows `r, r+1`, so the
/// span of basis vectors `r, r+1` is invariant.
pub fn block_columns_isolated(m: &RatMatrix, r: usize) -> bool {
    (1..=m.size())
        .filter(|&row| row != r && row != r + 1)
        .all(|row| m.get(row, r).is_zero() && m.get(row, r + 1).is_zero())
}

pub fn x_block() -> RatMatrix {
    RatMatrix::from_rows(&[&[1, 2], &[0, 1]])
}

pub fn y_block() -> RatMatrix {
    RatMatrix::from_rows(&[&[1, 0], &[-2, 1]])
}

/// The ping-pong pair `A = [[1,2],[0,1]]`, `B = [[1,0],[2,1]]`.
pub fn pingpong_pair() -> (RatMatrix, RatMatrix) {
    (x_block(), RatMatrix::from_rows(&[&[1, 0], &[2, 1]]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Region {
    /// `|x| > |y|`
    X1,
    /// `|x| < |y|`
    X2,
    /// `|x| = |y|`, including the origin.
    Boundary,
}

pub fn pingpong_region(v: &[BigRational; 2]) -> Region {
    let (x, y) = (v[0].abs(), v[1].abs());
    match x.cmp(&y) {
        std::cmp::Ordering::Greater => Region::X1,
        std::cmp::Ordering::Less => Region::X2,
        std::cmp::Ordering::Equal => Region::Boundary,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PingPongReport {
    pub samples: usize,
    /// Samples `v ∈ X2`, `k != 0` with `A^k v ∈ X1`.
    pub a_into_x1: usize,
    /// Samples `v ∈ X1`, `k != 0` with `B^k v ∈ X2`.
    pub b_into_x2: usize,
}

impl PingPongReport {
    pub fn holds(&self) -> bool {
        self.a_into_x1 == self.samples && self.b_into_x2 == self.samples
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num: i64 = rng.gen_range(-1_000_000..=1_000_000);
    let den: i64 = rng.gen_range(1..=1_000);
    BigRational::new(num.into(), den.into())
}

/// A seeded random vector strictly inside `target`.
fn random_in_region(rng: &mut ChaCha8Rng, target: Region) -> [BigRational; 2] {
    loop {
        let v = [random_rational(rng), random_rational(rng)];
        match pingpong_region(&v) {
            Region::Boundary => continue,
            r if r == target => return v,
            _ => return [v[1].clone(), v[0].clone()],
        }
    }
}

/// Samples the two containments `A^k(X2) ⊆ X1` and `B^k(X1) ⊆ X2` with
/// random nonzero `k` in `-20..=20` and random rational vectors.
pub fn pingpong_containment(samples: usize, seed: u64) -> PingPongReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b) = pingpong_pair();
    let mut report = PingPongReport { samples, a_into_x1: 0, b_into_x2: 0 };
    let power = |rng: &mut ChaCha8Rng| loop {
        let k: i64 = rng.gen_range(-20..=20);
        if k != 0 {
            return k;
        }
    };
    for _ in 0..samples {
        let v = random_in_region(&mut rng, Region::X2);
        let image = a.pow(power(&mut rng)).unwrap().mul_vec(&v).unwrap();
        if pingpong_region(&[image[0].clone(), image[1].clone()]) == Region::X1 {
            report.a_into_x1 += 1;
        }
        let v = random_in_region(&mut rng, Region::X1);
        let image = b.pow(power(&mut rng)).unwrap().mul_vec(&v).unwrap();
        if pingpong_region(&[image[0].clone(), image[1].clone()]) == Region::X2 {
            report.b_into_x2 += 1;
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreePairCertificate {
    pub n: usize,
    pub j: usize,
    pub jprime: usize,
    /// `None` for the search-only pair `(2, 3)`.
    pub basis_matrix: Option<RatMatrix>,
    pub block_row: Option<usize>,
    pub block_j: Option<RatMatrix>,
    pub block_jprime: Option<RatMatrix>,
    pub zero_pattern_ok: bool,
    pub search_depth: usize,
    pub relation_found: Option<FreeWord>,
}

impl FreePairCertificate {
    pub fn is_search_only(&self) -> bool {
        self.basis_matrix.is_none()
    }

    pub fn blocks_ok(&self) -> bool {
        self.block_j.as_ref() == Some(&x_block()) && self.block_jprime.as_ref() == Some(&y_block())
    }

    /// Blocks and zero pattern verified and no relation up to the depth.
    /// For the search-only pair this is just the absence of a relation.
    pub fn verified(&self) -> bool {
        let structural = self.is_search_only() || (self.blocks_ok() && self.zero_pattern_ok);
        structural && self.relation_found.is_none()
    }

    pub fn relation_text(&self) -> Option<String> {
        let names: Vec<String> = [self.j, self.jprime].iter().map(|k| format!("A[1,{k}]")).collect();
        self.relation_found.as_ref().map(|w| w.render(&names))
    }
}

impl Serialize for FreePairCertificate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Blocks {
            j: Vec<Vec<String>>,
            jprime: Vec<Vec<String>>,
        }
        #[derive(Serialize)]
        struct Wire<'a> {
            n: usize,
            j: usize,
            jprime: usize,
            #[serde(rename = "P")]
            p: Option<&'a RatMatrix>,
            blocks: Option<Blocks>,
            zero_pattern_ok: bool,
            search_depth: usize,
            relation: Option<String>,
        }
        let blocks = match (&self.block_j, &self.block_jprime) {
            (Some(a), Some(b)) => Some(Blocks { j: a.rows_strings(), jprime: b.rows_strings() }),
            _ => None,
        };
        Wire {
            n: self.n,
            j: self.j,
            jprime: self.jprime,
            p: self.basis_matrix.as_ref(),
            blocks,
            zero_pattern_ok: self.zero_pattern_ok,
            search_depth: self.search_depth,
            relation: self.relation_text(),
        }
        .serialize(serializer)
    }
}

/// Certifies that `M_j` and `M_{j'}` generate a free group: conjugates both
/// into the invariant-block basis, checks the `X`/`Y` blocks at row `j-1` and
/// that the block columns vanish elsewhere, then searches the full pair for a
/// relation up to `depth`. The pair `(2, 3)` gets the search only.
pub fn free_pair_certificate(j: usize, jprime: usize, n: usize, depth: usize, jobs: usize) -> Result<FreePairCertificate> {
    if n < 4 {
        return Err(Error::TooFewStrands { n, min: 4 });
    }
    check_pair(j, jprime, n)?;
    let mj = minus_one_generator(j, n)?;
    let mjp = minus_one_generator(jprime, n)?;
    let relation_found = relation_search(&[mj.clone(), mjp.clone()], depth, jobs)?;

    let mut cert = FreePairCertificate {
        n,
        j,
        jprime,
        basis_matrix: None,
        block_row: None,
        block_j: None,
        block_jprime: None,
        zero_pattern_ok: false,
        search_depth: depth,
        relation_found,
    };
    if (j, jprime) == (2, 3) {
        return Ok(cert);
    }
    let p = invariant_block_basis(j, jprime, n)?;
    let cj = mj.conjugate_by(&p)?;
    let cjp = mjp.conjugate_by(&p)?;
    let r = j - 1;
    cert.block_j = Some(block_extract(&cj, r)?);
    cert.block_jprime = Some(block_extract(&cjp, r)?);
    cert.zero_pattern_ok = block_columns_isolated(&cj, r) && block_columns_isolated(&cjp, r);
    cert.basis_matrix = Some(p);
    cert.block_row = Some(r);
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows)
    }

    #[test]
    fn minus_one_images() {
        let m2 = minus_one_generator(2, 4).unwrap();
        assert_eq!(m2, ints(&[&[1, 2, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]));
        assert!(eval_minus_one(&PolyMatrix::identity(5, 5)).is_identity());
        for j in 3..=6 {
            let m = minus_one_generator(j, 6).unwrap();
            for r in 1..j {
                assert_eq!(*m.get(r, 1), rat(-2) + if r == 1 { rat(1) } else { rat(0) });
            }
        }
    }

    #[test]
    fn unipotency() {
        assert!(unipotency_check(&RatMatrix::identity(3)));
        assert!(!unipotency_check(&ints(&[&[2, 0], &[0, 2]])));
        assert!(!unipotency_check(&ints(&[&[0, -1], &[1, 0]])));
        for n in 2..=6 {
            for j in 2..=n {
                assert!(unipotency_check(&minus_one_generator(j, n).unwrap()));
            }
        }
    }

    #[test]
    fn eigenvectors() {
        assert_eq!(
            eigenvector_basis(2, 4).unwrap(),
            vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]
        );
        assert_eq!(
            eigenvector_basis(3, 4).unwrap(),
            vec![vec![0, 0, 0, 1], vec![1, 0, 1, 0], vec![1, 1, 0, 0]]
        );
        for n in 2..=7 {
            for j in 2..=n {
                let m = minus_one_generator(j, n).unwrap();
                let basis = eigenvector_basis(j, n).unwrap();
                assert_eq!(basis.len(), n - 1);
                for v in basis {
                    let v = to_rational(&v);
                    assert_eq!(m.mul_vec(&v).unwrap(), v);
                }
            }
        }
        assert!(eigenvector_basis(1, 4).is_err());
        assert!(eigenvector_basis(5, 4).is_err());
    }

    #[test]
    fn literal_change_of_basis() {
        assert_eq!(
            change_of_basis(2, 4, 4).unwrap(),
            ints(&[&[1, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])
        );
        assert_eq!(
            change_of_basis(3, 4, 4).unwrap(),
            // columns e_1, w_3, w_4, e_4
            ints(&[&[1, 1, 1, 0], &[0, 1, 1, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])
        );
        assert_eq!(change_of_basis(2, 3, 4), Err(Error::ExcludedPair));
        assert!(change_of_basis(3, 3, 4).is_err());
        for n in 4..=6 {
            for j in 2..n {
                for jp in j + 1..=n {
                    if (j, jp) != (2, 3) {
                        assert_eq!(change_of_basis(j, jp, n).unwrap().determinant().abs(), rat(1));
                    }
                }
            }
        }
    }

    #[test]
    fn literal_basis_for_j2_gives_blocks_but_no_invariant_plane() {
        let n = 5;
        for jp in 4..=n {
            let p = change_of_basis(2, jp, n).unwrap();
            let a = minus_one_generator(2, n).unwrap().conjugate_by(&p).unwrap();
            let b = minus_one_generator(jp, n).unwrap().conjugate_by(&p).unwrap();
            assert_eq!(block_extract(&a, 1).unwrap(), x_block());
            assert_eq!(block_extract(&b, 1).unwrap(), y_block());
            assert!(!block_columns_isolated(&b, 1));
        }
    }

    #[test]
    fn shifted_index_for_v_is_not_a_basis() {
        // e_{j'-1} replaced by e_1 + e_{j'} instead of e_1 + e_{j'-1}
        let n = 5;
        let jp = 4;
        let p = with_columns(n, &[(jp - 1, v_vector(jp, n))]);
        assert_eq!(p.determinant(), rat(0));
    }

    #[test]
    fn blocks() {
        let m = ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(block_extract(&m, 2).unwrap(), ints(&[&[5, 6], &[8, 9]]));
        assert_eq!(block_extract(&RatMatrix::identity(4), 3).unwrap(), RatMatrix::identity(2));
        assert!(block_extract(&m, 3).is_err());
        assert!(block_extract(&m, 0).is_err());
    }

    #[test]
    fn regions() {
        assert_eq!(pingpong_region(&[rat(3), rat(1)]), Region::X1);
        assert_eq!(pingpong_region(&[rat(1), rat(3)]), Region::X2);
        assert_eq!(pingpong_region(&[rat(1), rat(1)]), Region::Boundary);
        assert_eq!(pingpong_region(&[rat(-2), rat(2)]), Region::Boundary);
        assert_eq!(pingpong_region(&[rat(0), rat(0)]), Region::Boundary);
    }

    #[test]
    fn pingpong_sampled() {
        let report = pingpong_containment(200, 7);
        assert!(report.holds(), "{report:?}");
        assert_eq!(report, pingpong_containment(200, 7));
    }

    #[test]
    fn certificates() {
        let c = free_pair_certificate(2, 4, 4, 6, 1).unwrap();
        assert!(c.blocks_ok() && c.zero_pattern_ok && c.verified());
        assert_eq!(c.block_row, Some(1));
        let c = free_pair_certificate(3, 5, 5, 4, 1).unwrap();
        assert_eq!(c.block_row, Some(2));
        assert_eq!(c.basis_matrix, Some(change_of_basis(3, 5, 5).unwrap()));
        assert!(c.verified());
        let c = free_pair_certificate(2, 3, 4, 6, 1).unwrap();
        assert!(c.is_search_only() && c.verified());
        assert!(free_pair_certificate(2, 4, 3, 4, 1).is_err());
        assert!(free_pair_certificate(4, 4, 5, 4, 1).is_err());
    }

    #[test]
    fn certificate_json() {
        let c = free_pair_certificate(2, 3, 4, 2, 1).unwrap();
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"n":4,"j":2,"jprime":3,"P":null,"blocks":null,"zero_pattern_ok":false,"search_depth":2,"relation":null}"#
        );
        let c = free_pair_certificate(3, 4, 4, 2, 1).unwrap();
        let v: serde_json::Value = serde_json::to_value(&c).unwrap();
        assert_eq!(v["blocks"]["j"], serde_json::json!([["1", "2"], ["0", "1"]]));
        assert_eq!(v["blocks"]["jprime"], serde_json::json!([["1", "0"], ["-2", "1"]]));
        assert_eq!(v["P"]["n"], 4);
    }
}
