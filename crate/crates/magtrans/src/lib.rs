//! Exact-arithmetic engine for phase cocycles of non-associative magnetic
//! translations.
//!
//! Every unitary phase `exp(2*pi*i*q)` is carried as the exact rational turn
//! exponent `q`, so group-cohomology identities hold on the nose instead of
//! up to a float tolerance.  The layers build on one another:
//!
//! - [`phase`]: turn exponents mod 1, affine exponents in a base point, and
//!   exact rational vectors;
//! - [`simplicial`]: oriented affine simplices, chains, boundary, and exact
//!   integration of constant 3-forms / affine 2-forms;
//! - [`cohomology`]: polynomial group cochains on `Z^n` with a translation
//!   action, coboundaries, the pentagon check, and coboundary solving both
//!   exactly and modulo torus-trivial characters;
//! - [`magnetic`]: the translation-system layer tying a constant flux tensor
//!   to its 3-cocycle, face phases, and lattice obstruction;
//! - [`loop_space`]: trigonometric-polynomial loops, the loop 2-cocycle and
//!   its primitive, transgressed integrals over loop families, and a float
//!   cross-check on SU(2)-valued loops;
//! - [`fock`]: a truncated gauge-twisted fermionic realization whose operator
//!   products reproduce the same cocycles.

pub mod cohomology;
pub mod fock;
pub mod loop_space;
pub mod magnetic;
pub mod phase;
pub mod simplicial;

pub use phase::{AffineTurnExponent, RationalVector, TurnExponent};
