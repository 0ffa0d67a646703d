use thiserror::Error;

use crate::curve::CompactTypeWitness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("a curve needs at least one component")]
    NoComponents,
    #[error("node {node} references component {component}, but the curve has {component_count}")]
    InvalidComponentReference {
        node: usize,
        component: usize,
        component_count: usize,
    },
    #[error("degree range for component {component} is empty")]
    EmptyBounds { component: usize },
    #[error("expected {expected} degree ranges (one per component), found {found}")]
    BoundsLengthMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),
    #[error(
        "generator `{label}` has degree {degree}; polynomial generators need an even degree >= 2"
    )]
    OddDegreeForPolynomialGenerator { label: String, degree: u32 },
    #[error("generator `{0}` must have positive degree")]
    ZeroDegreeGenerator(String),
    #[error("malformed element: {0}")]
    MalformedElement(String),
    #[error("series expansion produced negative coefficient {value} in degree {degree}")]
    NegativeCoefficient { degree: usize, value: String },
    #[error("a direct sum needs at least one block")]
    EmptyDirectSum,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("ambiguous expression `{0}`: name the block with a `@<block>` suffix")]
    AmbiguousBlock(String),
    #[error("cannot parse monomial expression `{0}`")]
    BadExpression(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuliError {
    #[error("curve is not of compact type: {0}")]
    NotCompactType(CompactTypeWitness),
    #[error("multidegree {index} has length {found}, expected {expected}")]
    MultidegreeLengthMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("the multidegree set is empty")]
    EmptyMultidegreeSet,
    #[error(
        "Betti number mismatch in degree {degree}: series gives {series}, basis gives {basis}"
    )]
    InternalMismatch {
        degree: usize,
        series: String,
        basis: usize,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
