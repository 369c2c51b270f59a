//! Group cohomology of translation groups with polynomial phase cochains:
//! coboundary operators, the pentagon defect of a 3-cochain, and coboundary
//! solving both exactly and modulo torus-trivial characters.

pub mod cochain;
pub mod poly;
pub mod solve;

pub use cochain::{
    coboundary, coboundary_value, pentagon_defect, Action, CohomologyError, PolyExponentCochain,
};
pub use poly::{binomial_coords, Poly};
pub use solve::{cobound_solve, EqualityMode, SolveOutcome};
