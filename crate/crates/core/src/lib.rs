//! Exact computations in the Hecke-algebra module spanned by the twisted
//! involutions of a Coxeter group: the action of the generators, the bar
//! operator, r-polynomials and the canonical basis with its polynomials `P±`,
//! plus classical Kazhdan–Lusztig data, double cosets, spherical submodules,
//! the inversion formula for finite groups and affine scans.

pub mod affine;
pub mod canonical;
pub mod classic;
pub mod cli;
pub mod coxeter;
pub mod cosets;
pub mod duality;
pub mod error;
pub mod io;
pub mod laurent;
pub mod module;
pub mod systems;
pub mod verify;

pub use coxeter::{CoxeterGroup, CoxeterSystem, Element, Side};
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use module::{InvolutionModule, ModuleVector};
