//! Affine simplices, chains, and exact integration of low-degree forms.
//!
//! Forms live on `Q^n` with constant or affine coefficients, so every
//! integral over an affine simplex is a rational number and is computed
//! exactly: a degree-3 constant form integrates to a determinant over 6, and
//! a degree-2 affine form integrates to its barycenter value times the
//! projected parallelogram area over 2 (the barycenter rule is exact for
//! affine integrands).

use crate::phase::{Rat, RationalVector};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("expected a {expected}-simplex, found one with {found} vertices")]
    WrongDegree { expected: usize, found: usize },
    #[error("simplex lives in dimension {found}, form in dimension {expected}")]
    WrongDimension { expected: usize, found: usize },
    #[error("index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),
}

/// Sorts a triple of distinct 1-based indices, returning the permutation sign.
/// Returns `None` when two indices coincide (the form component vanishes).
fn sort3(mut i: usize, mut j: usize, mut k: usize) -> Option<((usize, usize, usize), i32)> {
    let mut sign = 1;
    if i > j {
        std::mem::swap(&mut i, &mut j);
        sign = -sign;
    }
    if j > k {
        std::mem::swap(&mut j, &mut k);
        sign = -sign;
    }
    if i > j {
        std::mem::swap(&mut i, &mut j);
        sign = -sign;
    }
    if i == j || j == k {
        None
    } else {
        Some(((i, j, k), sign))
    }
}

/// A constant-coefficient antisymmetric 3-tensor on `Q^n`
/// (a translation-invariant 3-form `sum a_ijk dx_i ^ dx_j ^ dx_k`).
///
/// Coefficients are stored on strictly increasing 1-based triples; setting or
/// reading an arbitrary triple routes through the permutation sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntisymTensor3 {
    n: usize,
    coeffs: BTreeMap<(usize, usize, usize), Rat>,
}

impl AntisymTensor3 {
    pub fn new(n: usize) -> Self {
        AntisymTensor3 {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Adds `value` to the component on `(i, j, k)` (any order of indices).
    pub fn add_term(&mut self, i: usize, j: usize, k: usize, value: Rat) {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j) && (1..=self.n).contains(&k),
            "tensor index out of range"
        );
        let Some((key, sign)) = sort3(i, j, k) else {
            assert!(value.is_zero(), "repeated index with nonzero coefficient");
            return;
        };
        let signed = if sign < 0 { -value } else { value };
        let entry = self.coeffs.entry(key).or_insert_with(Rat::zero);
        *entry += signed;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    /// Builds a tensor from `(i, j, k, value)` terms.
    pub fn from_terms(n: usize, terms: &[(usize, usize, usize, Rat)]) -> Self {
        let mut t = AntisymTensor3::new(n);
        for (i, j, k, v) in terms {
            t.add_term(*i, *j, *k, v.clone());
        }
        t
    }

    /// The component on `(i, j, k)` with the sign of the permutation applied.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Rat {
        match sort3(i, j, k) {
            None => Rat::zero(),
            Some((key, sign)) => {
                let v = self.coeffs.get(&key).cloned().unwrap_or_else(Rat::zero);
                if sign < 0 {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// Iterates over the stored strictly increasing triples.
    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Rat)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(Rat::is_integer)
    }

    /// Full evaluation `omega(x, y, z)` as a trilinear alternating form.
    pub fn eval(&self, x: &RationalVector, y: &RationalVector, z: &RationalVector) -> Rat {
        assert_eq!(x.dim(), self.n, "argument dimension mismatch");
        assert_eq!(y.dim(), self.n, "argument dimension mismatch");
        assert_eq!(z.dim(), self.n, "argument dimension mismatch");
        let mut total = Rat::zero();
        for (&(i, j, k), a) in &self.coeffs {
            let (i, j, k) = (i - 1, j - 1, k - 1);
            let det = &x.0[i] * (&y.0[j] * &z.0[k] - &y.0[k] * &z.0[j])
                - &y.0[i] * (&x.0[j] * &z.0[k] - &x.0[k] * &z.0[j])
                + &z.0[i] * (&x.0[j] * &y.0[k] - &x.0[k] * &y.0[j]);
            total += a * det;
        }
        total
    }

    /// All elementary tensors `dx_i ^ dx_j ^ dx_k`, `i < j < k`, in
    /// lexicographic order.
    pub fn basis(n: usize) -> Vec<AntisymTensor3> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                for k in (j + 1)..=n {
                    out.push(AntisymTensor3::from_terms(n, &[(i, j, k, Rat::one())]));
                }
            }
        }
        out
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return AntisymTensor3::new(self.n);
        }
        AntisymTensor3 {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }
}

impl Add for &AntisymTensor3 {
    type Output = AntisymTensor3;
    fn add(self, rhs: &AntisymTensor3) -> AntisymTensor3 {
        assert_eq!(self.n, rhs.n, "tensor dimension mismatch");
        let mut out = self.clone();
        for (&(i, j, k), v) in &rhs.coeffs {
            out.add_term(i, j, k, v.clone());
        }
        out
    }
}

impl Sub for &AntisymTensor3 {
    type Output = AntisymTensor3;
    fn sub(self, rhs: &AntisymTensor3) -> AntisymTensor3 {
        self + &rhs.scaled(&-Rat::one())
    }
}

/// An affine function `c + l . x` on `Q^n` (plain value, not reduced mod 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineCoeff {
    pub constant: Rat,
    pub linear: Vec<Rat>,
}

impl AffineCoeff {
    pub fn zero(n: usize) -> Self {
        AffineCoeff {
            constant: Rat::zero(),
            linear: vec![Rat::zero(); n],
        }
    }

    pub fn constant_only(n: usize, c: Rat) -> Self {
        AffineCoeff {
            constant: c,
            linear: vec![Rat::zero(); n],
        }
    }

    /// The monomial `c * x_i` (1-based `i`).
    pub fn linear_term(n: usize, i: usize, c: Rat) -> Self {
        assert!((1..=n).contains(&i), "linear index out of range");
        let mut linear = vec![Rat::zero(); n];
        linear[i - 1] = c;
        AffineCoeff {
            constant: Rat::zero(),
            linear,
        }
    }

    pub fn eval(&self, x: &RationalVector) -> Rat {
        assert_eq!(x.dim(), self.linear.len(), "evaluation dimension mismatch");
        let mut v = self.constant.clone();
        for (l, xi) in self.linear.iter().zip(&x.0) {
            v += l * xi;
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.iter().all(Rat::is_zero)
    }

    fn add_in(&mut self, rhs: &AffineCoeff) {
        self.constant += &rhs.constant;
        for (a, b) in self.linear.iter_mut().zip(&rhs.linear) {
            *a += b;
        }
    }

    fn negated(&self) -> Self {
        AffineCoeff {
            constant: -&self.constant,
            linear: self.linear.iter().map(Neg::neg).collect(),
        }
    }

    fn scaled(&self, c: &Rat) -> Self {
        AffineCoeff {
            constant: &self.constant * c,
            linear: self.linear.iter().map(|l| l * c).collect(),
        }
    }
}

/// A 2-form `sum c_jk(x) dx_j ^ dx_k` with affine coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineForm2 {
    n: usize,
    coeffs: BTreeMap<(usize, usize), AffineCoeff>,
}

impl AffineForm2 {
    pub fn new(n: usize) -> Self {
        AffineForm2 {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Adds `coeff * dx_j ^ dx_k` (any index order; equal indices need a zero
    /// coefficient).
    pub fn add_term(&mut self, j: usize, k: usize, coeff: AffineCoeff) {
        assert!(
            (1..=self.n).contains(&j) && (1..=self.n).contains(&k),
            "form index out of range"
        );
        assert_eq!(coeff.linear.len(), self.n, "coefficient dimension mismatch");
        if j == k {
            assert!(coeff.is_zero(), "repeated index with nonzero coefficient");
            return;
        }
        let (key, flip) = if j < k { ((j, k), false) } else { ((k, j), true) };
        let signed = if flip { coeff.negated() } else { coeff };
        let entry = self
            .coeffs
            .entry(key)
            .or_insert_with(|| AffineCoeff::zero(self.n));
        entry.add_in(&signed);
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    /// The coefficient function on `(j, k)` with permutation sign applied.
    pub fn coeff(&self, j: usize, k: usize) -> AffineCoeff {
        if j == k {
            return AffineCoeff::zero(self.n);
        }
        let (key, flip) = if j < k { ((j, k), false) } else { ((k, j), true) };
        let c = self
            .coeffs
            .get(&key)
            .cloned()
            .unwrap_or_else(|| AffineCoeff::zero(self.n));
        if flip {
            c.negated()
        } else {
            c
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &AffineCoeff)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Pointwise evaluation `beta_x(u, w)` of the 2-form at base point `x` on
    /// a pair of vectors.
    pub fn eval(&self, x: &RationalVector, u: &RationalVector, w: &RationalVector) -> Rat {
        assert_eq!(u.dim(), self.n, "argument dimension mismatch");
        assert_eq!(w.dim(), self.n, "argument dimension mismatch");
        let mut total = Rat::zero();
        for (&(j, k), c) in &self.coeffs {
            let (j0, k0) = (j - 1, k - 1);
            let area = &u.0[j0] * &w.0[k0] - &u.0[k0] * &w.0[j0];
            if !area.is_zero() {
                total += c.eval(x) * area;
            }
        }
        total
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return AffineForm2::new(self.n);
        }
        AffineForm2 {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (*k, v.scaled(c)))
                .collect(),
        }
    }
}

impl Add for &AffineForm2 {
    type Output = AffineForm2;
    fn add(self, rhs: &AffineForm2) -> AffineForm2 {
        assert_eq!(self.n, rhs.n, "form dimension mismatch");
        let mut out = self.clone();
        for (&(j, k), c) in &rhs.coeffs {
            out.add_term(j, k, c.clone());
        }
        out
    }
}

impl Sub for &AffineForm2 {
    type Output = AffineForm2;
    fn sub(self, rhs: &AffineForm2) -> AffineForm2 {
        self + &rhs.scaled(&-Rat::one())
    }
}

/// Exterior derivative of an affine 2-form; the result has constant
/// coefficients, hence is an [`AntisymTensor3`].
pub fn exterior_d(beta: &AffineForm2) -> AntisymTensor3 {
    let mut out = AntisymTensor3::new(beta.n);
    for (&(j, k), c) in &beta.coeffs {
        for (idx, slope) in c.linear.iter().enumerate() {
            if slope.is_zero() {
                continue;
            }
            let i = idx + 1;
            if i == j || i == k {
                continue;
            }
            // d(c x_i) ^ dx_j ^ dx_k contributes c dx_i ^ dx_j ^ dx_k.
            out.add_term(i, j, k, slope.clone());
        }
    }
    out
}

/// A primitive of a constant 3-form: an affine 2-form `A` with
/// `exterior_d(A) = omega`, chosen symmetrically as
/// `sum (a_ijk / 3) (x_i dx_j^dx_k - x_j dx_i^dx_k + x_k dx_i^dx_j)`.
pub fn potential(omega: &AntisymTensor3) -> AffineForm2 {
    let n = omega.n;
    let third = Rat::new(BigInt::one(), BigInt::from(3));
    let mut out = AffineForm2::new(n);
    for (&(i, j, k), a) in &omega.coeffs {
        let c = a * &third;
        out.add_term(j, k, AffineCoeff::linear_term(n, i, c.clone()));
        out.add_term(i, k, AffineCoeff::linear_term(n, j, -c.clone()));
        out.add_term(i, j, AffineCoeff::linear_term(n, k, c));
    }
    out
}

/// An oriented affine simplex given by its ordered vertex list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AffineSimplex {
    pub vertices: Vec<RationalVector>,
}

impl AffineSimplex {
    pub fn new(vertices: Vec<RationalVector>) -> Self {
        assert!(!vertices.is_empty(), "simplex needs at least one vertex");
        let n = vertices[0].dim();
        assert!(
            vertices.iter().all(|v| v.dim() == n),
            "simplex vertices of mixed dimension"
        );
        AffineSimplex { vertices }
    }

    /// Geometric degree: number of vertices minus one.
    pub fn degree(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn translated(&self, v: &RationalVector) -> Self {
        AffineSimplex {
            vertices: self.vertices.iter().map(|p| p + v).collect(),
        }
    }

    /// Barycenter of the vertex set.
    pub fn barycenter(&self) -> RationalVector {
        let n = self.dim();
        let mut acc = RationalVector::zeros(n);
        for v in &self.vertices {
            acc = &acc + v;
        }
        let count = Rat::from_integer(BigInt::from(self.vertices.len()));
        acc.scaled(&(Rat::one() / count))
    }

    /// Edge vectors from the first vertex.
    pub fn edge_vectors(&self) -> Vec<RationalVector> {
        self.vertices[1..]
            .iter()
            .map(|v| v - &self.vertices[0])
            .collect()
    }
}

/// An integer-weighted formal sum of oriented simplices.
///
/// Terms are kept normalized (sorted, merged, zero weights dropped), so
/// structural equality coincides with equality of chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    terms: Vec<(BigInt, AffineSimplex)>,
}

impl Chain {
    pub fn zero() -> Self {
        Chain { terms: Vec::new() }
    }

    pub fn single(simplex: AffineSimplex) -> Self {
        Chain {
            terms: vec![(BigInt::one(), simplex)],
        }
    }

    pub fn from_terms(terms: Vec<(BigInt, AffineSimplex)>) -> Self {
        let mut merged: BTreeMap<AffineSimplex, BigInt> = BTreeMap::new();
        for (w, s) in terms {
            let entry = merged.entry(s).or_insert_with(BigInt::zero);
            *entry += w;
        }
        Chain {
            terms: merged
                .into_iter()
                .filter(|(_, w)| !w.is_zero())
                .map(|(s, w)| (w, s))
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(BigInt, AffineSimplex)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn translated(&self, v: &RationalVector) -> Self {
        Chain {
            terms: self
                .terms
                .iter()
                .map(|(w, s)| (w.clone(), s.translated(v)))
                .collect(),
        }
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Chain::zero();
        }
        Chain {
            terms: self
                .terms
                .iter()
                .map(|(w, s)| (w * k, s.clone()))
                .collect(),
        }
    }
}

impl Add for &Chain {
    type Output = Chain;
    fn add(self, rhs: &Chain) -> Chain {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        Chain::from_terms(terms)
    }
}

impl Sub for &Chain {
    type Output = Chain;
    fn sub(self, rhs: &Chain) -> Chain {
        self + &rhs.scaled(&-BigInt::one())
    }
}

impl Neg for &Chain {
    type Output = Chain;
    fn neg(self) -> Chain {
        self.scaled(&-BigInt::one())
    }
}

/// Boundary operator: `d[v0..vk] = sum_i (-1)^i [v0.. (drop v_i) ..vk]`.
pub fn boundary(chain: &Chain) -> Chain {
    let mut terms = Vec::new();
    for (w, s) in chain.terms() {
        if s.degree() == 0 {
            continue;
        }
        for i in 0..s.vertices.len() {
            let mut verts = s.vertices.clone();
            verts.remove(i);
            let sign = if i % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            terms.push((w * sign, AffineSimplex::new(verts)));
        }
    }
    Chain::from_terms(terms)
}

/// Exact integral of a constant 3-form over a chain of 3-simplices:
/// each simplex contributes `omega(v1-v0, v2-v0, v3-v0) / 6`.
pub fn integrate3(omega: &AntisymTensor3, chain: &Chain) -> Result<Rat, SimplicialError> {
    let six = Rat::from_integer(BigInt::from(6));
    let mut total = Rat::zero();
    for (w, s) in chain.terms() {
        if s.degree() != 3 {
            return Err(SimplicialError::WrongDegree {
                expected: 4,
                found: s.vertices.len(),
            });
        }
        if s.dim() != omega.dim() {
            return Err(SimplicialError::WrongDimension {
                expected: omega.dim(),
                found: s.dim(),
            });
        }
        let e = s.edge_vectors();
        total += Rat::from_integer(w.clone()) * omega.eval(&e[0], &e[1], &e[2]) / &six;
    }
    Ok(total)
}

/// Exact integral of an affine-coefficient 2-form over a chain of
/// 2-simplices.
///
/// Pulling `c_jk(x) dx_j ^ dx_k` back along `x = v0 + s u + t w`
/// (`u = v1 - v0`, `w = v2 - v0`) gives `c_jk(x) (u_j w_k - u_k w_j) ds^dt`;
/// the affine integrand averages to its barycenter value, and the parameter
/// triangle has area 1/2.
pub fn integrate2(beta: &AffineForm2, chain: &Chain) -> Result<Rat, SimplicialError> {
    let two = Rat::from_integer(BigInt::from(2));
    let mut total = Rat::zero();
    for (w, s) in chain.terms() {
        if s.degree() != 2 {
            return Err(SimplicialError::WrongDegree {
                expected: 3,
                found: s.vertices.len(),
            });
        }
        if s.dim() != beta.dim() {
            return Err(SimplicialError::WrongDimension {
                expected: beta.dim(),
                found: s.dim(),
            });
        }
        let e = s.edge_vectors();
        let value = beta.eval(&s.barycenter(), &e[0], &e[1]);
        total += Rat::from_integer(w.clone()) * value / &two;
    }
    Ok(total)
}

/// The 2-simplex `[0, g1, g1+g2]` filling the composition triangle of the
/// translations `g1`, `g2`.
pub fn s_chain(g1: &RationalVector, g2: &RationalVector) -> Chain {
    let zero = RationalVector::zeros(g1.dim());
    let g12 = g1 + g2;
    Chain::single(AffineSimplex::new(vec![zero, g1.clone(), g12]))
}

/// The 1-chain `(0 -> g1) + (g1 -> g1+g2) - (0 -> g1+g2)`: the boundary of
/// the composition triangle.
pub fn ell_chain(g1: &RationalVector, g2: &RationalVector) -> Chain {
    let zero = RationalVector::zeros(g1.dim());
    let g12 = g1 + g2;
    let edge = |a: &RationalVector, b: &RationalVector| {
        Chain::single(AffineSimplex::new(vec![a.clone(), b.clone()]))
    };
    &(&edge(&zero, g1) + &edge(g1, &g12)) - &edge(&zero, &g12)
}

/// The 3-simplex `[0, g1, g1+g2, g1+g2+g3]` built on partial sums.
pub fn delta3_simplex(
    g1: &RationalVector,
    g2: &RationalVector,
    g3: &RationalVector,
) -> AffineSimplex {
    let zero = RationalVector::zeros(g1.dim());
    let p1 = g1.clone();
    let p2 = &p1 + g2;
    let p3 = &p2 + g3;
    AffineSimplex::new(vec![zero, p1, p2, p3])
}

/// The 3-chain combining the five partial-sum tetrahedra of four
/// translations with alternating signs:
///
/// `D(g1,g2,g3) - D(g1+g2,g3,g4) + D(g1,g2+g3,g4) - D(g1,g2,g3+g4)
///  + (D(g2,g3,g4) translated by g1)`.
///
/// This is exactly the boundary of the 4-simplex on the partial sums of
/// `g1..g4`, so its own boundary vanishes.
pub fn v_chain(
    g1: &RationalVector,
    g2: &RationalVector,
    g3: &RationalVector,
    g4: &RationalVector,
) -> Chain {
    let d = |a: &RationalVector, b: &RationalVector, c: &RationalVector| {
        Chain::single(delta3_simplex(a, b, c))
    };
    let t0 = d(g1, g2, g3);
    let t1 = d(&(g1 + g2), g3, g4);
    let t2 = d(g1, &(g2 + g3), g4);
    let t3 = d(g1, g2, &(g3 + g4));
    let t4 = d(g2, g3, g4).translated(g1);
    &(&(&(&t0 - &t1) + &t2) - &t3) + &t4
}

/// The 4-simplex on the partial sums of `g1..g4`; its boundary is
/// [`v_chain`].
pub fn partial_sum_4simplex(
    g1: &RationalVector,
    g2: &RationalVector,
    g3: &RationalVector,
    g4: &RationalVector,
) -> AffineSimplex {
    let zero = RationalVector::zeros(g1.dim());
    let p1 = g1.clone();
    let p2 = &p1 + g2;
    let p3 = &p2 + g3;
    let p4 = &p3 + g4;
    AffineSimplex::new(vec![zero, p1, p2, p3, p4])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::{rat, rat_int};
    use proptest::prelude::*;

    fn v(coords: &[i64]) -> RationalVector {
        RationalVector::from_ints(coords)
    }

    #[test]
    fn tensor_normalizes_index_order() {
        let mut t = AntisymTensor3::new(3);
        t.add_term(2, 1, 3, rat_int(5));
        assert_eq!(t.get(1, 2, 3), rat_int(-5));
        assert_eq!(t.get(2, 1, 3), rat_int(5));
        assert_eq!(t.get(3, 1, 2), rat_int(-5));
        assert_eq!(t.get(1, 1, 3), rat_int(0));
    }

    #[test]
    fn tensor_eval_is_a_determinant() {
        let t = AntisymTensor3::from_terms(3, &[(1, 2, 3, rat_int(1))]);
        assert_eq!(t.eval(&v(&[1, 0, 0]), &v(&[0, 1, 0]), &v(&[0, 0, 1])), rat_int(1));
        assert_eq!(t.eval(&v(&[0, 1, 0]), &v(&[1, 0, 0]), &v(&[0, 0, 1])), rat_int(-1));
        assert_eq!(
            t.eval(&v(&[1, 2, 3]), &v(&[4, 5, 6]), &v(&[7, 8, 9])),
            rat_int(0)
        );
        // det of the column matrix [[2,1,0],[0,3,1],[1,0,4]] is 25.
        assert_eq!(
            t.eval(&v(&[2, 0, 1]), &v(&[1, 3, 0]), &v(&[0, 1, 4])),
            rat_int(25)
        );
    }

    #[test]
    fn basis_count() {
        assert_eq!(AntisymTensor3::basis(3).len(), 1);
        assert_eq!(AntisymTensor3::basis(4).len(), 4);
        assert_eq!(AntisymTensor3::basis(5).len(), 10);
    }

    #[test]
    fn potential_is_a_primitive() {
        for n in 3..=5 {
            for b in AntisymTensor3::basis(n) {
                let omega = b.scaled(&rat(7, 3));
                assert_eq!(exterior_d(&potential(&omega)), omega);
            }
        }
    }

    #[test]
    fn boundary_of_s_chain_is_ell_chain() {
        let g1 = v(&[1, 0, 0]);
        let g2 = v(&[0, 2, 0]);
        assert_eq!(boundary(&s_chain(&g1, &g2)), ell_chain(&g1, &g2));
    }

    #[test]
    fn v_chain_is_boundary_of_4simplex() {
        let g1 = v(&[1, 0, 0]);
        let g2 = v(&[0, 1, 0]);
        let g3 = v(&[0, 0, 1]);
        let g4 = v(&[1, 1, 0]);
        let simp = Chain::single(partial_sum_4simplex(&g1, &g2, &g3, &g4));
        assert_eq!(v_chain(&g1, &g2, &g3, &g4), boundary(&simp));
        assert!(boundary(&v_chain(&g1, &g2, &g3, &g4)).is_zero());
    }

    #[test]
    fn unit_tetrahedron_volume_form() {
        // omega = dx1^dx2^dx3 over [0, e1, e1+e2, e1+e2+e3]: edge vectors are
        // e1, e1+e2, e1+e2+e3 with determinant 1, so the integral is 1/6.
        let omega = AntisymTensor3::from_terms(3, &[(1, 2, 3, rat_int(1))]);
        let tet = Chain::single(delta3_simplex(&v(&[1, 0, 0]), &v(&[0, 1, 0]), &v(&[0, 0, 1])));
        assert_eq!(integrate3(&omega, &tet).unwrap(), rat(1, 6));
    }

    #[test]
    fn stokes_on_the_unit_tetrahedron() {
        let omega = AntisymTensor3::from_terms(3, &[(1, 2, 3, rat_int(1))]);
        let tet = Chain::single(delta3_simplex(&v(&[1, 0, 0]), &v(&[0, 1, 0]), &v(&[0, 0, 1])));
        let lhs = integrate3(&omega, &tet).unwrap();
        let rhs = integrate2(&potential(&omega), &boundary(&tet)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, rat(1, 6));
    }

    #[test]
    fn integrate3_rejects_wrong_degree() {
        let omega = AntisymTensor3::from_terms(3, &[(1, 2, 3, rat_int(1))]);
        let tri = s_chain(&v(&[1, 0, 0]), &v(&[0, 1, 0]));
        assert!(integrate3(&omega, &tri).is_err());
    }

    #[test]
    fn integrate2_barycenter_rule_vs_direct_computation() {
        // beta = x1 dx1^dx2 over the triangle [0, e1, e2]:
        // direct integral of s over {s,t>=0, s+t<=1} is 1/6.
        let mut beta = AffineForm2::new(2);
        beta.add_term(1, 2, AffineCoeff::linear_term(2, 1, rat_int(1)));
        let tri = Chain::single(AffineSimplex::new(vec![v(&[0, 0]), v(&[1, 0]), v(&[0, 1])]));
        assert_eq!(integrate2(&beta, &tri).unwrap(), rat(1, 6));
        // Reversing the orientation negates the integral.
        let tri_rev = Chain::single(AffineSimplex::new(vec![v(&[0, 0]), v(&[0, 1]), v(&[1, 0])]));
        assert_eq!(integrate2(&beta, &tri_rev).unwrap(), rat(-1, 6));
    }

    fn arb_vec(n: usize) -> impl Strategy<Value = RationalVector> {
        proptest::collection::vec((-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q)), n)
            .prop_map(RationalVector)
    }

    fn arb_tensor(n: usize) -> impl Strategy<Value = AntisymTensor3> {
        let basis_len = AntisymTensor3::basis(n).len();
        proptest::collection::vec((-5i64..=5, 1i64..=3).prop_map(|(p, q)| rat(p, q)), basis_len)
            .prop_map(move |cs| {
                let mut t = AntisymTensor3::new(n);
                for (b, c) in AntisymTensor3::basis(n).iter().zip(cs) {
                    t = &t + &b.scaled(&c);
                }
                t
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn boundary_squares_to_zero(
            a in arb_vec(3), b in arb_vec(3), c in arb_vec(3), d in arb_vec(3)
        ) {
            let s = Chain::single(AffineSimplex::new(vec![a, b, c, d]));
            prop_assert!(boundary(&boundary(&s)).is_zero());
        }

        #[test]
        fn stokes_for_random_tetrahedra(
            omega in arb_tensor(4),
            v0 in arb_vec(4), g1 in arb_vec(4), g2 in arb_vec(4), g3 in arb_vec(4)
        ) {
            let tet = Chain::single(delta3_simplex(&g1, &g2, &g3).translated(&v0));
            let lhs = integrate3(&omega, &tet).unwrap();
            let rhs = integrate2(&potential(&omega), &boundary(&tet)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn integrate3_alternates_and_kills_degenerate(
            omega in arb_tensor(3),
            v0 in arb_vec(3), a in arb_vec(3), b in arb_vec(3), c in arb_vec(3)
        ) {
            let verts = |order: [&RationalVector; 3]| {
                AffineSimplex::new(vec![
                    v0.clone(),
                    &v0 + order[0],
                    &v0 + order[1],
                    &v0 + order[2],
                ])
            };
            // Here the orderings share the leading vertex, so swapping two of
            // the remaining vertices is an odd permutation.
            let plus = integrate3(&omega, &Chain::single(
                AffineSimplex::new(vec![v0.clone(), &v0 + &a, &(&v0 + &a) + &b, &(&(&v0 + &a) + &b) + &c]))).unwrap();
            let _ = plus;
            let s1 = integrate3(&omega, &Chain::single(verts([&a, &b, &c]))).unwrap();
            let s2 = integrate3(&omega, &Chain::single(verts([&b, &a, &c]))).unwrap();
            prop_assert_eq!(s1, -s2);
            let degenerate = AffineSimplex::new(vec![v0.clone(), &v0 + &a, &v0 + &a, &v0 + &b]);
            prop_assert_eq!(integrate3(&omega, &Chain::single(degenerate)).unwrap(), Rat::zero());
        }

        #[test]
        fn translation_invariance_of_constant_forms(
            omega in arb_tensor(3),
            v0 in arb_vec(3), t in arb_vec(3),
            g1 in arb_vec(3), g2 in arb_vec(3), g3 in arb_vec(3)
        ) {
            let tet = Chain::single(delta3_simplex(&g1, &g2, &g3).translated(&v0));
            let moved = tet.translated(&t);
            prop_assert_eq!(
                integrate3(&omega, &tet).unwrap(),
                integrate3(&omega, &moved).unwrap()
            );
        }

        #[test]
        fn chain_cancellation(a in arb_vec(3), b in arb_vec(3), c in arb_vec(3)) {
            let s = AffineSimplex::new(vec![a, b, c]);
            let chain = &Chain::single(s.clone()) - &Chain::single(s);
            prop_assert!(chain.is_zero());
        }
    }
}
