use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::{AlgebraPresentation, Monomial};
use crate::error::AlgebraError;
use crate::scalar::Coefficient;

/// A finite linear combination of monomials with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element<R = BigRational> {
    terms: BTreeMap<Monomial, R>,
}

impl<R: Coefficient> Default for Element<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Coefficient> Element<R> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, R::one())
    }

    pub fn term(m: Monomial, coefficient: R) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(m, coefficient);
        }
        Element { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    pub fn add_term(&mut self, m: Monomial, coefficient: R) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + coefficient;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &R) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * factor.clone()))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-R::one())
    }

    pub fn display<'a>(&'a self, alg: &'a AlgebraPresentation) -> ElementDisplay<'a, R> {
        ElementDisplay { alg, element: self }
    }
}

/// Product of two basis monomials: `None` when it vanishes, otherwise the
/// sign (`true` = negative) and the resulting monomial.
///
/// Products across blocks vanish, as do products whose odd parts overlap.
/// Otherwise the odd parts are merged and the sign is the parity of the
/// number of inversions in the merge.
pub fn monomial_product(x: &Monomial, y: &Monomial) -> Option<(bool, Monomial)> {
    if x.block != y.block {
        return None;
    }
    let mut merged = Vec::with_capacity(x.odd.len() + y.odd.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < x.odd.len() && j < y.odd.len() {
        match x.odd[i].cmp(&y.odd[j]) {
            std::cmp::Ordering::Less => {
                merged.push(x.odd[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                // y.odd[j] jumps over the rest of x
                inversions += x.odd.len() - i;
                merged.push(y.odd[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    merged.extend_from_slice(&x.odd[i..]);
    merged.extend_from_slice(&y.odd[j..]);
    let even = x.even.iter().zip(&y.even).map(|(a, b)| a + b).collect();
    Some((
        inversions % 2 == 1,
        Monomial {
            block: x.block,
            odd: merged,
            even,
        },
    ))
}

/// Bilinear product of two elements of `alg`.
pub fn multiply<R: Coefficient>(
    alg: &AlgebraPresentation,
    x: &Element<R>,
    y: &Element<R>,
) -> Result<Element<R>, AlgebraError> {
    for m in x.terms.keys().chain(y.terms.keys()) {
        alg.check_monomial(m)?;
    }
    let mut out = Element::zero();
    for (mx, cx) in &x.terms {
        for (my, cy) in &y.terms {
            if let Some((negative, m)) = monomial_product(mx, my) {
                let c = cx.clone() * cy.clone();
                out.add_term(m, if negative { -c } else { c });
            }
        }
    }
    Ok(out)
}

pub struct ElementDisplay<'a, R> {
    alg: &'a AlgebraPresentation,
    element: &'a Element<R>,
}

impl<R: Coefficient> fmt::Display for ElementDisplay<'_, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.element.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            let shown = self.alg.display_monomial(m).to_string();
            if magnitude.is_one() {
                f.write_str(&shown)?;
            } else if m.is_unit() && !self.alg.is_direct_sum() {
                write!(f, "{magnitude}")?;
            } else {
                write!(f, "{magnitude}*{shown}")?;
            }
        }
        Ok(())
    }
}
