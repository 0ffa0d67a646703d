//! Rational cohomology of moduli stacks of degree-`d` line bundles on nodal
//! curves of compact type.
//!
//! The pipeline is: describe a curve ([`parser`]) → inspect its dual graph
//! ([`curve`]) → build the cohomology algebra ([`moduli`]) on top of the exact
//! graded-commutative engine ([`algebra`]) → read off bases, cup products,
//! Betti numbers and Poincaré series. [`oracle`] recounts everything by brute
//! force.
//!
//! Algebra elements are generic over their coefficient ring (see
//! [`Coefficient`]); the aliases below fix it to arbitrary-precision
//! rationals, which is what every builder and the CLI use.

pub mod algebra;
pub mod cli;
pub mod curve;
pub mod error;
pub mod moduli;
pub mod oracle;
pub mod parser;
mod scalar;

pub use algebra::{
    basis_in_degree, direct_sum, exterior_algebra, monomial_product, multiply, poincare_series,
    polynomial_algebra, series_coefficients, tensor_product, AlgebraPresentation, GeneratorInfo,
    Monomial, PoincareSeries,
};
pub use curve::{
    dual_graph, enumerate_multidegrees, first_betti, is_compact_type, picard_extension_profile,
    CompactTypeVerdict, CompactTypeWitness, DualGraph, NodalCurve, PicardProfile,
};
pub use error::{AlgebraError, CurveError, ModuliError};
pub use moduli::{
    betti_table, classifying_stack, jacobian, nodal_moduli, smooth_moduli, ModuliCohomology,
    NodalMode, Provenance, Warning,
};
pub use parser::{parse_curve, parse_curve_bytes, serialize_curve, CurveDocument, ParseError};
pub use scalar::Coefficient;

/// Exact rationals with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;
/// Rationals over `i64`, for callers who know their coefficients stay small.
pub type Rational64 = num_rational::Rational64;

/// Algebra element over [`Rational`].
pub type Element = algebra::Element<Rational>;
/// Algebra element over [`Rational64`].
pub type Element64 = algebra::Element<Rational64>;
