//! Generalized splines on edge-labeled graphs over exact polynomial rings.
//!
//! The computational core is generic over the coefficient field: use
//! [`Rational`] for ℚ or [`Fp`] for a prime field. The aliases below fix
//! the field to ℚ.

pub mod decompose;
pub mod error;
pub mod field;
pub mod graph;
pub mod groebner;
pub mod poly;
pub mod spline;

pub use error::{Error, Result};
pub use field::{Field, Fp, Rational};
pub use poly::{Monomial, MonomialOrder, Ring};

pub type QPolynomial = poly::Polynomial<Rational>;
pub type QModuleElement = groebner::ModuleElement<Rational>;
pub type QSubmodule = groebner::Submodule<Rational>;
pub type QGroebnerBasis = groebner::GroebnerBasis<Rational>;
pub type QGraph = graph::EdgeLabeledGraph<Rational>;
pub type QSpline = graph::Spline<Rational>;
pub type QBoundaryMatrix = graph::BoundaryMatrix<Rational>;
pub type QFreeResolution = groebner::FreeResolution<Rational>;
pub type QFreenessCertificate = spline::FreenessCertificate<Rational>;

pub type FpPolynomial<const P: u32> = poly::Polynomial<Fp<P>>;
pub type FpGraph<const P: u32> = graph::EdgeLabeledGraph<Fp<P>>;
