//! Classifications, infomorphisms, channels, local logics and perspectives.

mod classification;
mod infomorphism;
mod infon;
mod local_logic;
mod perspective;

pub use classification::Classification;
pub use infomorphism::{check_infomorphism, pullback_logic, Channel, Infomorphism, InfomorphismCheck};
pub use infon::Infon;
pub use local_logic::{
    derive_local_logic, derive_local_logic_over, meet_logics, sequent_holds, LocalLogic, Sequent,
};
pub use perspective::{
    check_perspective, Perspective, FACTICITY, LOCAL_PRECLUSION, MUTUAL_PRECLUSION, XEROX,
};
