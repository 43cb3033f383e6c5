//! Exact-arithmetic toolkit for deciding non-isogeny of superelliptic jacobians
//! from the Galois data of their defining polynomials.

pub mod base;
pub mod corpus;
pub mod cyclo;
pub mod error;
pub mod exactmath;
pub mod factor;
pub mod galmod;
pub mod galois;
pub mod lab;
pub mod par;
pub mod parse;
pub mod permgrp;
pub mod qbound;
pub mod verdict;

pub use error::{Error, Result};
