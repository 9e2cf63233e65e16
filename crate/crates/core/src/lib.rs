#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod exact_cdf;
pub mod limit_laws;
pub mod norming;
pub mod rng;
pub mod samplers;
pub mod specfun;
pub mod stats;
pub mod summation;

pub use error::{Error, Result};
