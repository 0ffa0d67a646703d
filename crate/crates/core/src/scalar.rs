use std::fmt::{Debug, Display};

use num_traits::Signed;

/// Coefficient ring for algebra elements.
///
/// Anything signed with exact `+`, `*` and negation qualifies. The crate
/// computes over [`crate::Rational`] (arbitrary precision); `Rational64` and
/// machine integers also satisfy the bound and are handy in tests.
pub trait Coefficient: Signed + Clone + Debug + Display {}

impl<T> Coefficient for T where T: Signed + Clone + Debug + Display {}
