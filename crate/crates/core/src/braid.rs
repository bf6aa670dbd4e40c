//! Braid words in the Artin generators, and abstract words in free
//! generators used by the relation searches.

use std::fmt;

use crate::error::{Error, Result};
pub use crate::perm::Permutation;

/// `σ_generator` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidLetter {
    pub generator: usize,
    pub inverse: bool,
}

impl BraidLetter {
    pub fn pos(generator: usize) -> Self {
        Self { generator, inverse: false }
    }

    pub fn neg(generator: usize) -> Self {
        Self { generator, inverse: true }
    }

    pub fn inv(self) -> Self {
        Self { generator: self.generator, inverse: !self.inverse }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn empty(strands: usize) -> Self {
        Self { strands, letters: Vec::new() }
    }

    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self> {
        for l in &letters {
            check_generator(l.generator, strands)?;
        }
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::DimensionMismatch { left: self.strands, right: other.strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { strands: self.strands, letters })
    }

    /// The inverse braid: letters reversed and inverted.
    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        Self { strands: self.strands, letters: self.letters.repeat(k) }
    }

    /// True when no letter is adjacent to its own inverse.
    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inv())
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<BraidLetter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { strands: self.strands, letters: out }
    }

    /// The image under `B_n -> S_n`, `σ_i -> (i, i+1)`. Letters compose
    /// left to right: `π(uw) = π(u) ∘ π(w)`.
    pub fn underlying_permutation(&self) -> Permutation {
        self.letters.iter().fold(Permutation::identity(self.strands), |acc, l| {
            let s = Permutation::transposition(self.strands, l.generator, l.generator + 1)
                .expect("generator checked at construction");
            acc.compose(&s).expect("same degree")
        })
    }

    pub fn is_pure(&self) -> bool {
        self.underlying_permutation().is_identity()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|l| if l.inverse { format!("s{}^-1", l.generator) } else { format!("s{}", l.generator) })
            .collect();
        f.write_str(&toks.join(" "))
    }
}

fn check_generator(i: usize, n: usize) -> Result<()> {
    if n < 2 || i < 1 || i > n - 1 {
        return Err(Error::IndexOutOfRange { index: i, lo: 1, hi: n.saturating_sub(1) });
    }
    Ok(())
}

/// Birman's generator `A_{i,j}`, built by `A_{j-1,j} = σ_{j-1}^2` and
/// `A_{i,j} = σ_i A_{i+1,j} σ_i^{-1}`, i.e.
/// `σ_i ⋯ σ_{j-2} σ_{j-1}^2 σ_{j-2}^{-1} ⋯ σ_i^{-1}`.
pub fn pure_generator_word(i: usize, j: usize, n: usize) -> Result<BraidWord> {
    if i < 1 || i >= j || j > n {
        return Err(Error::InvalidPair { i, j, n });
    }
    let mut letters: Vec<BraidLetter> = (i..j - 1).map(BraidLetter::pos).collect();
    letters.push(BraidLetter::pos(j - 1));
    letters.push(BraidLetter::pos(j - 1));
    letters.extend((i..j - 1).rev().map(BraidLetter::neg));
    Ok(BraidWord { strands: n, letters })
}

/// The product `A_{1,2} (A_{1,3} A_{2,3}) ⋯ (A_{1,n} ⋯ A_{n-1,n})` of the
/// generators from [`pure_generator_word`]. This is the usual generator of
/// the center when `A_{i,j}` is conjugated from the other side
/// (`σ_{j-1} ⋯ σ_{i+1} σ_i^2 σ_{i+1}^{-1} ⋯ σ_{j-1}^{-1}`); with the
/// convention used here it is pure, has the same determinant under `cb`, but
/// is not central for `n >= 3`.
pub fn center_word(n: usize) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::TooFewStrands { n, min: 2 });
    }
    let mut w = BraidWord::empty(n);
    for j in 2..=n {
        for i in 1..j {
            w.letters.extend(pure_generator_word(i, j, n)?.letters);
        }
    }
    Ok(w)
}

/// Parses whitespace-separated tokens: `s<k>`, `s<k>^-1`, `A[i,j]`,
/// `A[i,j]^-1`, `center`, `center^-1`. No reduction is applied.
pub fn parse_word(text: &str, n: usize) -> Result<BraidWord> {
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let syntax = |reason: &str| Error::Syntax { token: token.to_string(), reason: reason.to_string() };
        let (body, inverse) = match token.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (token, false),
        };
        let word = if body == "center" {
            center_word(n)?
        } else if let Some(rest) = body.strip_prefix("A[") {
            let inner = rest.strip_suffix(']').ok_or_else(|| syntax("expected A[i,j]"))?;
            let (a, b) = inner.split_once(',').ok_or_else(|| syntax("expected A[i,j]"))?;
            let i: usize = a.trim().parse().map_err(|_| syntax("bad index"))?;
            let j: usize = b.trim().parse().map_err(|_| syntax("bad index"))?;
            pure_generator_word(i, j, n)?
        } else if let Some(k) = body.strip_prefix('s') {
            let k: usize = k.parse().map_err(|_| syntax("expected s<k>"))?;
            check_generator(k, n)?;
            BraidWord { strands: n, letters: vec![BraidLetter::pos(k)] }
        } else {
            return Err(syntax("unknown token"));
        };
        let word = if inverse { word.inverse() } else { word };
        letters.extend(word.letters);
    }
    Ok(BraidWord { strands: n, letters })
}

/// A letter over abstract free generators `0..k`. Ordered `a < a^-1 < b < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeLetter {
    pub generator: usize,
    pub inverse: bool,
}

impl FreeLetter {
    pub(crate) fn from_code(code: usize) -> Self {
        Self { generator: code / 2, inverse: code % 2 == 1 }
    }

    pub fn inv(self) -> Self {
        Self { generator: self.generator, inverse: !self.inverse }
    }
}

/// A word in abstract free generators, e.g. a relation witness.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    pub letters: Vec<FreeLetter>,
}

impl FreeWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inv())
    }

    /// Renders with the given generator names, e.g. `a b^-1`.
    pub fn render(&self, names: &[String]) -> String {
        self.letters
            .iter()
            .map(|l| {
                let name = &names[l.generator];
                if l.inverse { format!("{name}^-1") } else { name.clone() }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Order used to pick a canonical witness: shorter first, then
    /// lexicographic.
    pub fn shortlex_key(&self) -> (usize, &[FreeLetter]) {
        (self.letters.len(), &self.letters)
    }
}

/// `a, b, c, ...` for up to 26 generators, `g1, g2, ...` beyond.
pub fn default_names(k: usize) -> Vec<String> {
    if k <= 26 {
        (0..k).map(|g| ((b'a' + g as u8) as char).to_string()).collect()
    } else {
        (1..=k).map(|g| format!("g{g}")).collect()
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.letters.iter().map(|l| l.generator + 1).max().unwrap_or(0);
        f.write_str(&self.render(&default_names(k)))
    }
}

/// Every freely reduced word over `k` generators of length `1..=max_len`,
/// in shortlex order.
pub fn enumerate_reduced_words(k: usize, max_len: usize) -> ReducedWords {
    ReducedWords { alphabet: 2 * k, max_len, current: None, done: k == 0 || max_len == 0 }
}

pub struct ReducedWords {
    alphabet: usize,
    max_len: usize,
    current: Option<Vec<usize>>,
    done: bool,
}

/// Smallest letter code that may follow `prev` in a reduced word.
fn least_after(prev: usize) -> usize {
    if prev ^ 1 == 0 { 1 } else { 0 }
}

impl ReducedWords {
    fn first_of_len(len: usize) -> Vec<usize> {
        vec![0; len]
    }

    fn advance(&self, w: &mut [usize]) -> bool {
        for pos in (0..w.len()).rev() {
            let mut c = w[pos] + 1;
            if pos > 0 && c == w[pos - 1] ^ 1 {
                c += 1;
            }
            if c < self.alphabet {
                w[pos] = c;
                for q in pos + 1..w.len() {
                    w[q] = least_after(w[q - 1]);
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for ReducedWords {
    type Item = FreeWord;

    fn next(&mut self) -> Option<FreeWord> {
        if self.done {
            return None;
        }
        let next = match self.current.take() {
            None => Self::first_of_len(1),
            Some(mut w) => {
                if self.advance(&mut w) {
                    w
                } else if w.len() < self.max_len {
                    Self::first_of_len(w.len() + 1)
                } else {
                    self.done = true;
                    return None;
                }
            }
        };
        let word = FreeWord { letters: next.iter().map(|&c| FreeLetter::from_code(c)).collect() };
        self.current = Some(next);
        Some(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, n: usize) -> BraidWord {
        parse_word(text, n).unwrap()
    }

    #[test]
    fn parsing_tokens() {
        assert_eq!(w("s1 s1", 2).letters(), &[BraidLetter::pos(1), BraidLetter::pos(1)]);
        assert_eq!(w("s1 s2^-1", 3).letters(), &[BraidLetter::pos(1), BraidLetter::neg(2)]);
        assert_eq!(w("A[1,3]", 3), w("s1 s2 s2 s1^-1", 3));
        assert_eq!(w("A[1,3]^-1", 3), w("s1 s2^-1 s2^-1 s1^-1", 3));
        assert_eq!(w("center", 3), w("A[1,2] A[1,3] A[2,3]", 3));
        assert!(w("", 3).is_empty());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_word("s3", 3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(parse_word("s0", 3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(parse_word("x1", 3), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("s1^2", 3), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("A[1,3", 3), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("A[2,2]", 3), Err(Error::InvalidPair { .. })));
        assert!(matches!(parse_word("A[1,4]", 3), Err(Error::InvalidPair { .. })));
    }

    #[test]
    fn free_reduction() {
        assert!(w("s1 s1^-1", 2).free_reduce().is_empty());
        assert_eq!(w("s1 s2 s2^-1 s1", 3).free_reduce(), w("s1 s1", 3));
        let r = w("s1 s2^-1 s1", 3);
        assert_eq!(r.free_reduce(), r);
        assert!(w("s2 s1 s1^-1 s2^-1", 3).free_reduce().is_empty());
        assert!(w("s1 s1^-1 s2", 3).free_reduce().is_reduced());
    }

    #[test]
    fn permutation_image() {
        for n in 2..=6 {
            for i in 1..n {
                let p = w(&format!("s{i}"), n).underlying_permutation();
                assert_eq!(p, Permutation::transposition(n, i, i + 1).unwrap());
            }
        }
        assert!(BraidWord::empty(4).underlying_permutation().is_identity());
        // composition order: π(s1 s2) = (1,2)∘(2,3) sends 3 -> 2 -> 1
        assert_eq!(w("s1 s2", 3).underlying_permutation().image(3), 1);
    }

    #[test]
    fn pure_generators() {
        assert_eq!(pure_generator_word(1, 2, 2).unwrap(), w("s1 s1", 2));
        assert_eq!(pure_generator_word(4, 5, 5).unwrap(), w("s4 s4", 5));
        assert_eq!(pure_generator_word(1, 3, 3).unwrap(), w("s1 s2 s2 s1^-1", 3));
        assert_eq!(pure_generator_word(2, 5, 6).unwrap(), w("s2 s3 s4 s4 s3^-1 s2^-1", 6));
        for n in 2..=8 {
            for j in 2..=n {
                for i in 1..j {
                    let g = pure_generator_word(i, j, n).unwrap();
                    assert_eq!(g.len(), 2 * (j - i - 1) + 2);
                    assert!(g.is_pure());
                }
            }
        }
        assert!(pure_generator_word(3, 3, 4).is_err());
        assert!(pure_generator_word(0, 2, 4).is_err());
    }

    #[test]
    fn center_words() {
        assert_eq!(center_word(2).unwrap(), w("A[1,2]", 2));
        assert_eq!(center_word(3).unwrap(), w("A[1,2] A[1,3] A[2,3]", 3));
        for n in 2..=7 {
            assert!(center_word(n).unwrap().is_pure());
        }
        assert_eq!(center_word(1), Err(Error::TooFewStrands { n: 1, min: 2 }));
    }

    #[test]
    fn reduced_word_enumeration() {
        let words: Vec<String> = enumerate_reduced_words(2, 1).map(|w| w.to_string()).collect();
        assert_eq!(words, ["a", "a^-1", "b", "b^-1"]);
        assert_eq!(enumerate_reduced_words(2, 2).count(), 16);
        let words: Vec<String> = enumerate_reduced_words(1, 3).map(|w| w.to_string()).collect();
        assert_eq!(words, ["a", "a^-1", "a a", "a^-1 a^-1", "a a a", "a^-1 a^-1 a^-1"]);
        assert_eq!(enumerate_reduced_words(2, 0).count(), 0);
        assert_eq!(enumerate_reduced_words(0, 3).count(), 0);
    }

    #[test]
    fn enumeration_is_shortlex_sorted() {
        let words: Vec<FreeWord> = enumerate_reduced_words(3, 4).collect();
        for pair in words.windows(2) {
            assert!(pair[0].shortlex_key() < pair[1].shortlex_key());
        }
    }
}
