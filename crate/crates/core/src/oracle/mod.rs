//! Independent algebraic models of the three groups, used as ground truth
//! by the differential tests.

pub mod dyadic;
pub mod free;
pub mod lamp;
pub mod pl;

pub use dyadic::Dyadic;
pub use free::{F2Word, Letter};
pub use lamp::{LampConfigF2, LampConfigZ2, Z2Point};
pub use pl::{pl_compose, pl_eval_normalform, pl_word, DyadicPL, PlGen};
