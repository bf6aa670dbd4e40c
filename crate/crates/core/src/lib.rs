//! Exact computations with the Colored-Burau representation of the braid
//! groups: Laurent polynomial matrices, the semidirect-product action, closed
//! forms for the pure braid generators, and freeness certificates for pairs
//! of generator images evaluated at `t_i = -1`.

pub mod braid;
pub mod cli;
pub mod colored_burau;
pub mod error;
pub mod freeness;
pub mod laurent;
pub mod perm;
pub mod poly_matrix;
pub mod rational;
pub mod search;

pub use braid::{BraidLetter, BraidWord, FreeLetter, FreeWord, Permutation};
pub use colored_burau::CBElement;
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use poly_matrix::PolyMatrix;
pub use rational::RatMatrix;
