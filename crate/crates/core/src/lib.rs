pub mod cli;
pub mod error;
pub mod exact_moments;
pub mod ferro;
pub mod gausspoly;
pub mod poly;
pub mod rational;
pub mod real;
pub mod seq_tools;
pub mod typel_cert;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::Verdict;
