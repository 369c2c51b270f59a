//! Loop-space layer: transgression of the exact 3-form data to loops.
//!
//! The submodules provide exact rational Fourier loops with the loop
//! 2-cocycle and its gauge trivializer (`trig`), piecewise-affine paths
//! with exact transgression integrals (`piecewise`), swept families of
//! loops with exact surface holonomy (`family`), and a floating-point SU(2)
//! verification of the level-one identity (`su2`).

pub mod family;
pub mod piecewise;
pub mod su2;
pub mod trig;

pub use family::{holonomy, standard_triangle_family, ConeSegment, LoopFamily};
pub use piecewise::{transgress2_affine, transgress2_trig, transgress3, PiecewiseLoop};
pub use su2::{transgression_check, Su2AlgLoop, Su2Factor, Su2Loop, TransgressionReport};
pub use trig::{
    b1, c2_loop, c2_torus, crat, delta_b1, gauge_shift, pairing, CRat, GaugePotential,
    LoopError, TorusLoop, TrigLoop,
};

use crate::phase::{Rat, RationalVector};
use crate::simplicial::AffineForm2;

/// A path argument for transgression: either an exact Fourier loop or a
/// piecewise-affine path.
#[derive(Debug, Clone)]
pub enum LoopPath {
    Trig(TrigLoop),
    Affine(PiecewiseLoop),
}

/// Transgression of a 2-form along either loop representation; dispatches
/// to the exact Fourier or exact piecewise evaluation.
pub fn transgress2(
    b: &AffineForm2,
    f: &LoopPath,
    x: &RationalVector,
) -> Result<Rat, LoopError> {
    match f {
        LoopPath::Trig(l) => transgress2_trig(b, l, x),
        LoopPath::Affine(l) => transgress2_affine(b, l, x),
    }
}
