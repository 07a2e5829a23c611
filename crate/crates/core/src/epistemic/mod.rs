//! Epistemic logic: S5 and general Kripke model checking, probabilistic Kripke
//! models with linear probability constraints, product update, and a sampled
//! check of probabilistic validity.

mod kripke;
mod update;
mod validity;

pub use kripke::{model_check, prob_model_check, KripkeModel, ProbabilisticKripkeModel, ProbabilityAssignment};
pub use update::{product_update, UpdateModel};
pub use validity::{probabilistic_validity, ValidityReport, VALIDITY_MAX_ATOMS};
