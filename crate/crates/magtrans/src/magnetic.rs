//! Magnetic translation systems: a constant flux 3-tensor on `R^n` or `T^n`
//! together with the phase cocycles it generates.
//!
//! The non-associativity 3-cocycle is computed along two independent routes
//! (closed-form determinant vs. simplex integration), trivialized by face
//! phases of a global primitive on `R^n`, and compared against the lattice
//! extension obstruction on the torus.

use crate::cohomology::{CohomologyError, Poly, PolyExponentCochain};
use crate::phase::{Rat, RationalVector, TurnExponent};
use crate::simplicial::{
    boundary, delta3_simplex, integrate2, integrate3, potential, s_chain, AffineForm2,
    AntisymTensor3, Chain, SimplicialError,
};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MagneticError {
    #[error("argument dimension {found} does not match system dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("torus systems require an integral tensor (a lattice 3-form class)")]
    NotIntegralOnTorus,
    #[error("no global primitive exists on the torus; face phases are defined on R^n only")]
    NoGlobalPotentialOnTorus,
    #[error("the two face chains have different boundaries: difference {0}")]
    BoundaryMismatch(String),
    #[error("the filling does not bound the difference of the face chains: leftover {0}")]
    FillingMismatch(String),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// The underlying configuration space of the translation group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Rn,
    Tn,
}

/// A translation system: dimension, constant flux tensor, and group kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagneticSystem {
    n: usize,
    a: AntisymTensor3,
    group: GroupKind,
}

/// True exactly when every tensor coefficient is an integer, i.e. when the
/// 3-form defines an integral class admissible on the torus.
pub fn torus_admissible(a: &AntisymTensor3) -> bool {
    a.is_integral()
}

impl MagneticSystem {
    pub fn new(n: usize, a: AntisymTensor3, group: GroupKind) -> Result<Self, MagneticError> {
        if a.dim() != n {
            return Err(MagneticError::DimensionMismatch {
                expected: n,
                found: a.dim(),
            });
        }
        if group == GroupKind::Tn && !torus_admissible(&a) {
            return Err(MagneticError::NotIntegralOnTorus);
        }
        Ok(MagneticSystem { n, a, group })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tensor(&self) -> &AntisymTensor3 {
        &self.a
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    fn check_dim(&self, v: &RationalVector) -> Result<(), MagneticError> {
        if v.dim() != self.n {
            return Err(MagneticError::DimensionMismatch {
                expected: self.n,
                found: v.dim(),
            });
        }
        Ok(())
    }

    /// Closed-form non-associativity cocycle: exponent
    /// `(1/6) * omega_a(X, Y, Z)` mod 1.
    pub fn c3(
        &self,
        x: &RationalVector,
        y: &RationalVector,
        z: &RationalVector,
    ) -> Result<TurnExponent, MagneticError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        self.check_dim(z)?;
        let sixth = Rat::new(BigInt::from(1), BigInt::from(6));
        Ok(TurnExponent::new(self.a.eval(x, y, z) * sixth))
    }

    /// The same cocycle via exact integration of the 3-form over the
    /// partial-sum tetrahedron `[0, X, X+Y, X+Y+Z]`.
    pub fn c3_by_integration(
        &self,
        x: &RationalVector,
        y: &RationalVector,
        z: &RationalVector,
    ) -> Result<TurnExponent, MagneticError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        self.check_dim(z)?;
        let tet = Chain::single(delta3_simplex(x, y, z));
        Ok(TurnExponent::new(integrate3(&self.a, &tet)?))
    }

    /// The global primitive of the flux form; only `R^n` systems have one.
    pub fn primitive(&self) -> Result<AffineForm2, MagneticError> {
        if self.group == GroupKind::Tn {
            return Err(MagneticError::NoGlobalPotentialOnTorus);
        }
        Ok(potential(&self.a))
    }

    /// Exact exponent of the face phase: the integral of the primitive over
    /// the composition triangle `[0, g1, g1+g2]` (not reduced mod 1).
    pub fn face_integral(
        &self,
        g1: &RationalVector,
        g2: &RationalVector,
    ) -> Result<Rat, MagneticError> {
        self.check_dim(g1)?;
        self.check_dim(g2)?;
        let b = self.primitive()?;
        Ok(integrate2(&b, &s_chain(g1, g2))?)
    }

    /// Face phase `d(g1, g2)` as a turn exponent.
    pub fn face_phase(
        &self,
        g1: &RationalVector,
        g2: &RationalVector,
    ) -> Result<TurnExponent, MagneticError> {
        Ok(TurnExponent::new(self.face_integral(g1, g2)?))
    }

    /// Exact exponent of the coboundary combination of face phases,
    ///
    /// `g1.d(g2,g3) - d(g1+g2, g3) + d(g1, g2+g3) - d(g1, g2)`,
    ///
    /// where the first term integrates the primitive over the triangle
    /// translated by `g1`.  By Stokes applied to the partial-sum tetrahedron
    /// this equals the exact `c3` exponent before reduction mod 1.
    pub fn face_product_exponent(
        &self,
        g1: &RationalVector,
        g2: &RationalVector,
        g3: &RationalVector,
    ) -> Result<Rat, MagneticError> {
        self.check_dim(g1)?;
        self.check_dim(g2)?;
        self.check_dim(g3)?;
        let b = self.primitive()?;
        let translated = integrate2(&b, &s_chain(g2, g3).translated(g1))?;
        let merged_left = integrate2(&b, &s_chain(&(g1 + g2), g3))?;
        let merged_right = integrate2(&b, &s_chain(g1, &(g2 + g3)))?;
        let inner = integrate2(&b, &s_chain(g1, g2))?;
        Ok(translated - merged_left + merged_right - inner)
    }

    /// The face-phase combination reduced mod 1; equals `c3` exactly.
    pub fn face_product(
        &self,
        g1: &RationalVector,
        g2: &RationalVector,
        g3: &RationalVector,
    ) -> Result<TurnExponent, MagneticError> {
        Ok(TurnExponent::new(self.face_product_exponent(g1, g2, g3)?))
    }

    /// Phase mismatch between two face chains with common boundary, given a
    /// 3-chain filling their difference: the flux through the filling.
    pub fn lift_mismatch(
        &self,
        delta: &Chain,
        delta_prime: &Chain,
        filling: &Chain,
    ) -> Result<TurnExponent, MagneticError> {
        let boundary_gap = &boundary(delta) - &boundary(delta_prime);
        if !boundary_gap.is_zero() {
            return Err(MagneticError::BoundaryMismatch(format!("{boundary_gap:?}")));
        }
        let leftover = &boundary(filling) - &(delta - delta_prime);
        if !leftover.is_zero() {
            return Err(MagneticError::FillingMismatch(format!("{leftover:?}")));
        }
        Ok(TurnExponent::new(integrate3(&self.a, filling)?))
    }

    /// Obstruction phase of the lattice translation extension: exponent
    /// `omega_a(p, q, r)` mod 1, without the simplex-volume factor `1/6`.
    ///
    /// This is the coboundary of the base-dependent extension 2-cochain
    /// `omega_a(u, p, q)` and vanishes identically on integer arguments for
    /// every integral tensor, which is the precise sense in which integral
    /// flux acts consistently on the lattice.  The simplex-normalized `c3`
    /// itself does not vanish there (witness: the unit tensor on basis
    /// vectors gives `1/6`).
    pub fn zn_obstruction(
        &self,
        p: &RationalVector,
        q: &RationalVector,
        r: &RationalVector,
    ) -> Result<TurnExponent, MagneticError> {
        self.check_dim(p)?;
        self.check_dim(q)?;
        self.check_dim(r)?;
        Ok(TurnExponent::new(self.a.eval(p, q, r)))
    }

    /// `c3` as a symbolic 3-cochain without base point: exponent
    /// `(1/6) omega_a(g1, g2, g3)`.
    pub fn c3_cochain(&self) -> PolyExponentCochain {
        let sixth = Rat::new(BigInt::from(1), BigInt::from(6));
        let exponent = trilinear_exponent(&self.a, 3 * self.n, [0, self.n, 2 * self.n], &sixth);
        PolyExponentCochain::new(self.n, 3, false, exponent)
            .expect("trilinear exponent is degree 3")
    }

    /// `c3` as a symbolic 3-cochain carrying an (unused) base point, for
    /// comparison against coboundaries of base-dependent 2-cochains.
    pub fn c3_cochain_based(&self) -> PolyExponentCochain {
        let sixth = Rat::new(BigInt::from(1), BigInt::from(6));
        let exponent = trilinear_exponent(
            &self.a,
            4 * self.n,
            [self.n, 2 * self.n, 3 * self.n],
            &sixth,
        );
        PolyExponentCochain::new(self.n, 3, true, exponent)
            .expect("trilinear exponent is degree 3")
    }

    /// The groupoid trivializer `b(u; X, Y)` with exponent
    /// `(1/6) omega_a(u, X, Y)`: a 2-cochain with base point whose
    /// translation coboundary reproduces `c3` exactly.
    pub fn groupoid_cochain(&self) -> PolyExponentCochain {
        let sixth = Rat::new(BigInt::from(1), BigInt::from(6));
        let exponent =
            trilinear_exponent(&self.a, 3 * self.n, [0, self.n, 2 * self.n], &sixth);
        PolyExponentCochain::new(self.n, 2, true, exponent)
            .expect("trilinear exponent is affine in the base point")
    }
}

/// The 2-cochain with base point on `Q^3` whose exponent is the plain
/// determinant `det(u, X, Y)`.  Scaling it by a coefficient `beta` gives the
/// one-parameter family whose coboundary is `beta * det(X, Y, Z)`; the
/// coboundary solver determines the unique `beta` matching `c3`.
pub fn det_base_2cochain() -> PolyExponentCochain {
    let eps = AntisymTensor3::from_terms(3, &[(1, 2, 3, Rat::from_integer(BigInt::from(1)))]);
    let exponent = trilinear_exponent(&eps, 9, [0, 3, 6], &Rat::from_integer(BigInt::from(1)));
    PolyExponentCochain::new(3, 2, true, exponent).expect("determinant exponent is degree 3")
}

/// Exponent polynomial `scale * omega_a(v1, v2, v3)` where block `b` of the
/// arguments starts at variable offset `offsets[b]` in an `nvars`-variable
/// polynomial ring.
fn trilinear_exponent(a: &AntisymTensor3, nvars: usize, offsets: [usize; 3], scale: &Rat) -> Poly {
    let mut p = Poly::zero(nvars);
    for (&(i, j, k), coeff) in a.terms() {
        let c = coeff * scale;
        // Leibniz expansion of the 3x3 determinant on coordinates (i, j, k).
        let perms: [(i64, [usize; 3]); 6] = [
            (1, [i, j, k]),
            (-1, [i, k, j]),
            (-1, [j, i, k]),
            (1, [j, k, i]),
            (1, [k, i, j]),
            (-1, [k, j, i]),
        ];
        for (sign, [pi, qi, ri]) in perms {
            let mut key = vec![0u8; nvars];
            key[offsets[0] + pi - 1] += 1;
            key[offsets[1] + qi - 1] += 1;
            key[offsets[2] + ri - 1] += 1;
            p.add_term(key, &c * Rat::from_integer(BigInt::from(sign)));
        }
    }
    p
}
