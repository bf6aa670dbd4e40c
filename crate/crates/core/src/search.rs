//! Bounded searches for relations among matrices.
//!
//! Words are explored depth-first in shortlex order with the product carried
//! along the tree, so each node costs one multiplication by a generator. The
//! result is the shortest reduced word whose product is the identity, ties
//! broken lexicographically, or `None` if there is no such word up to the
//! length bound. Subtrees under each first letter are independent and may
//! run on separate threads; the answer does not depend on the thread count.

use rayon::prelude::*;

use crate::braid::{FreeLetter, FreeWord};
use crate::colored_burau::{cb_pure_closed_form, cb_pure_inverse_closed_form};
use crate::error::{Error, Result};
use crate::poly_matrix::PolyMatrix;
use crate::rational::RatMatrix;

pub trait SearchElement: Clone + Send + Sync {
    fn multiply(&self, rhs: &Self) -> Self;
    fn is_identity(&self) -> bool;
}

impl SearchElement for RatMatrix {
    fn multiply(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("generators share a size")
    }

    fn is_identity(&self) -> bool {
        RatMatrix::is_identity(self)
    }
}

impl SearchElement for PolyMatrix {
    fn multiply(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("generators share a shape")
    }

    fn is_identity(&self) -> bool {
        PolyMatrix::is_identity(self)
    }
}

/// Shortest identity word over `alphabet`, where `alphabet[2g]` is generator
/// `g` and `alphabet[2g + 1]` its inverse.
pub fn shortest_relation<E: SearchElement>(
    alphabet: &[E],
    identity: &E,
    max_len: usize,
    jobs: usize,
) -> Option<FreeWord> {
    assert!(alphabet.len().is_multiple_of(2), "alphabet holds generator/inverse pairs");
    if max_len == 0 || alphabet.is_empty() {
        return None;
    }
    let subtree = |first: usize| {
        let mut word = vec![first];
        let mut best = None;
        dfs(alphabet, &mut word, &alphabet[first], max_len, &mut best);
        best
    };
    let found: Vec<Option<Vec<usize>>> = if jobs <= 1 {
        (0..alphabet.len()).map(subtree).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| (0..alphabet.len()).into_par_iter().map(subtree).collect())
    };
    let best = found.into_iter().flatten().min_by(|a, b| (a.len(), a).cmp(&(b.len(), b)))?;

    // independent re-evaluation of the witness
    let product = best.iter().fold(identity.clone(), |acc, &c| acc.multiply(&alphabet[c]));
    assert!(product.is_identity(), "search produced a non-relation {best:?}");
    Some(FreeWord { letters: best.into_iter().map(FreeLetter::from_code).collect() })
}

fn dfs<E: SearchElement>(
    alphabet: &[E],
    word: &mut Vec<usize>,
    value: &E,
    max_len: usize,
    best: &mut Option<Vec<usize>>,
) {
    if value.is_identity() {
        // preorder visits equal lengths in lexicographic order
        if best.as_ref().is_none_or(|b| word.len() < b.len()) {
            *best = Some(word.clone());
        }
        return;
    }
    let limit = best.as_ref().map_or(max_len, |b| b.len() - 1);
    if word.len() >= limit {
        return;
    }
    let forbidden = word[word.len() - 1] ^ 1;
    for c in 0..alphabet.len() {
        if c == forbidden {
            continue;
        }
        let next = value.multiply(&alphabet[c]);
        word.push(c);
        dfs(alphabet, word, &next, max_len, best);
        word.pop();
    }
}

/// Shortest reduced word of length at most `max_len` in `gens` evaluating to
/// the identity.
pub fn relation_search(gens: &[RatMatrix], max_len: usize, jobs: usize) -> Result<Option<FreeWord>> {
    let Some(first) = gens.first() else {
        return Ok(None);
    };
    let n = first.size();
    let mut alphabet = Vec::with_capacity(2 * gens.len());
    for g in gens {
        if g.size() != n {
            return Err(Error::DimensionMismatch { left: n, right: g.size() });
        }
        alphabet.push(g.clone());
        alphabet.push(g.inverse()?);
    }
    Ok(shortest_relation(&alphabet, &RatMatrix::identity(n), max_len, jobs))
}

/// Names `A[1,2], ..., A[1,n]` of the free generators of `F_{n-1}`; a
/// rendered witness parses back as a braid word.
pub fn kernel_generator_names(n: usize) -> Vec<String> {
    (2..=n).map(|j| format!("A[1,{j}]")).collect()
}

/// Bounded probe of the kernel of `cb` restricted to `F_{n-1} = <A_{1,j}>`:
/// the shortest reduced word in `A_{1,2}, ..., A_{1,n}` whose symbolic image
/// is the identity. Uses the closed-form matrices and inverses. A `None`
/// result says nothing about words longer than `max_len`.
pub fn kernel_search(n: usize, max_len: usize, jobs: usize) -> Result<Option<FreeWord>> {
    if n < 3 {
        return Err(Error::TooFewStrands { n, min: 3 });
    }
    let mut alphabet = Vec::with_capacity(2 * (n - 1));
    for j in 2..=n {
        alphabet.push(cb_pure_closed_form(1, j, n)?);
        alphabet.push(cb_pure_inverse_closed_form(1, j, n)?);
    }
    Ok(shortest_relation(&alphabet, &PolyMatrix::identity(n, n), max_len, jobs))
}
