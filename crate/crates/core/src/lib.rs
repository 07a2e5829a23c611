//! Models of imperfect information connected through channel theory.
//!
//! The [`channel`] module provides classifications, infomorphisms, channels and
//! local logics. The remaining modules are numeric and symbolic models
//! (probability, belief functions, rough sets, possibility, defaults, epistemic
//! logic, vague predicates, retrieval) that can be read as classifications and
//! compared through the same vocabulary.

pub mod audit;
pub mod bits;
pub mod channel;
pub mod defaults;
pub mod epistemic;
pub mod error;
pub mod evidence;
pub mod logic;
pub mod possibility;
pub mod probability;
pub mod retrieval;
pub mod rough;
pub mod vagueness;

pub use error::{Error, Result, TOLERANCE};
