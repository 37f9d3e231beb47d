pub mod bits;
pub mod error;
pub mod primes;
pub mod reproduce;
pub mod search;
pub mod sequences;
pub mod sets;

pub use error::{MstdError, Result};
pub use sets::{Classification, IntSet, Verdict};
