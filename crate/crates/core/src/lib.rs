//! Generating-function solutions of Riccati equations `y' = a + b y + c y^2`,
//! with numerical verification and an application to damped oscillators.

pub mod error;
pub mod expr;
pub mod numerics;
pub mod riccati;
pub mod verify;
pub mod catalog;
pub mod oscillator;
pub mod cli;

pub use error::{Error, Result};
pub use expr::{Bindings, Expr};
pub use numerics::{Grid, Interval, ScalarField};
pub use riccati::{Branch, GeneratingSpec, RiccatiSystem, SolutionFamily};
