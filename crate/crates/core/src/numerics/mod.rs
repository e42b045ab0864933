//! Numerical substrate: intervals and grids, scalar fields, adaptive
//! quadrature with cumulative antiderivative tables, Bessel functions and
//! finite-difference derivatives.

pub mod bessel;
mod fd;
mod field;
mod interp;
mod interval;
pub mod quadrature;

pub use bessel::besselj;
pub use fd::{fd_derivative, fd_second_derivative};
pub use field::{DerivativePath, ScalarField};
pub use interp::{MonotoneCubic, QuinticHermite};
pub use interval::{Grid, Interval};
pub use quadrature::{antiderivative, integrate, DEFAULT_QUAD_TOL, DEFAULT_TABLE_TOL};
