//! Closed-form Poincaré series of free graded-commutative algebras.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use super::AlgebraPresentation;
use crate::error::AlgebraError;

/// A binomial factor `1 + t^e` or `1 − t^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesFactor {
    OnePlus(u32),
    OneMinus(u32),
}

impl SeriesFactor {
    fn polynomial(self) -> Vec<BigInt> {
        let (e, sign) = match self {
            SeriesFactor::OnePlus(e) => (e, 1),
            SeriesFactor::OneMinus(e) => (e, -1),
        };
        let mut p = vec![BigInt::zero(); e as usize + 1];
        p[0] += 1;
        p[e as usize] += sign;
        p
    }
}

/// `multiplicity · ∏ factor^power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTerm {
    pub multiplicity: u64,
    pub factors: BTreeMap<SeriesFactor, u32>,
}

/// A rational function `(Σ terms) / ∏ (1 − t^e)^p` in one variable.
///
/// The numerator is kept factored so the closed form prints as written
/// (`(1+t)^4/(1-t^2)`); [`PoincareSeries::numerator`] expands it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincareSeries {
    terms: Vec<SeriesTerm>,
    denominator: BTreeMap<u32, u32>,
}

impl PoincareSeries {
    pub fn one() -> Self {
        PoincareSeries {
            terms: vec![SeriesTerm {
                multiplicity: 1,
                factors: BTreeMap::new(),
            }],
            denominator: BTreeMap::new(),
        }
    }

    pub fn terms(&self) -> &[SeriesTerm] {
        &self.terms
    }

    /// Expanded integer numerator, lowest degree first.
    pub fn numerator(&self) -> Vec<BigInt> {
        let mut total: Vec<BigInt> = vec![BigInt::zero()];
        for term in &self.terms {
            let mut p = vec![BigInt::from(term.multiplicity)];
            for (&factor, &power) in &term.factors {
                for _ in 0..power {
                    p = poly_mul(&p, &factor.polynomial());
                }
            }
            if total.len() < p.len() {
                total.resize(p.len(), BigInt::zero());
            }
            for (slot, c) in total.iter_mut().zip(p) {
                *slot += c;
            }
        }
        while total.len() > 1 && total.last().is_some_and(Zero::is_zero) {
            total.pop();
        }
        total
    }

    /// Exponents `e` of the denominator factors `(1 − t^e)`, with repetition,
    /// ascending.
    pub fn denominator_exponents(&self) -> Vec<u32> {
        self.denominator
            .iter()
            .flat_map(|(&e, &p)| std::iter::repeat_n(e, p as usize))
            .collect()
    }

    fn factor_odd(degree: u32) -> Self {
        let mut s = Self::one();
        s.terms[0].factors.insert(SeriesFactor::OnePlus(degree), 1);
        s
    }

    fn factor_even(degree: u32) -> Self {
        let mut s = Self::one();
        s.denominator.insert(degree, 1);
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let mut factors = a.factors.clone();
                for (&f, &p) in &b.factors {
                    *factors.entry(f).or_insert(0) += p;
                }
                terms.push(SeriesTerm {
                    multiplicity: a.multiplicity * b.multiplicity,
                    factors,
                });
            }
        }
        let mut denominator = self.denominator.clone();
        for (&e, &p) in &other.denominator {
            *denominator.entry(e).or_insert(0) += p;
        }
        PoincareSeries { terms, denominator }.merged()
    }

    /// Sum over a common denominator (factor-wise maximum of the two).
    pub fn add(&self, other: &Self) -> Self {
        let mut denominator = self.denominator.clone();
        for (&e, &p) in &other.denominator {
            let slot = denominator.entry(e).or_insert(0);
            *slot = (*slot).max(p);
        }
        let lift = |s: &Self| -> Vec<SeriesTerm> {
            s.terms
                .iter()
                .map(|t| {
                    let mut t = t.clone();
                    for (&e, &p) in &denominator {
                        let have = s.denominator.get(&e).copied().unwrap_or(0);
                        if p > have {
                            *t.factors.entry(SeriesFactor::OneMinus(e)).or_insert(0) += p - have;
                        }
                    }
                    t
                })
                .collect()
        };
        let mut terms = lift(self);
        terms.extend(lift(other));
        PoincareSeries { terms, denominator }.merged()
    }

    /// Collapses terms with identical factors, keeping first-seen order.
    fn merged(self) -> Self {
        let mut terms: Vec<SeriesTerm> = Vec::new();
        for t in self.terms {
            match terms.iter_mut().find(|u| u.factors == t.factors) {
                Some(u) => u.multiplicity += t.multiplicity,
                None => terms.push(t),
            }
        }
        PoincareSeries {
            terms,
            denominator: self.denominator,
        }
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn write_power(f: &mut fmt::Formatter<'_>, base: &str, power: u32) -> fmt::Result {
    if power == 1 {
        write!(f, "({base})")
    } else {
        write!(f, "({base})^{power}")
    }
}

fn factor_base(factor: SeriesFactor) -> String {
    let (sign, e) = match factor {
        SeriesFactor::OnePlus(e) => ('+', e),
        SeriesFactor::OneMinus(e) => ('-', e),
    };
    if e == 1 {
        format!("1{sign}t")
    } else {
        format!("1{sign}t^{e}")
    }
}

impl fmt::Display for SeriesTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.multiplicity);
        }
        if self.multiplicity != 1 {
            write!(f, "{}", self.multiplicity)?;
        }
        for (&factor, &power) in &self.factors {
            write_power(f, &factor_base(factor), power)?;
        }
        Ok(())
    }
}

impl fmt::Display for PoincareSeries {
    /// Plain-text closed form, e.g. `((1+t)^4+(1+t)^6)/(1-t^2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let numerator = self
            .terms
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join("+");
        if self.denominator.is_empty() {
            return f.write_str(&numerator);
        }
        if self.terms.len() > 1 {
            write!(f, "({numerator})/")?;
        } else {
            write!(f, "{numerator}/")?;
        }
        for (&e, &p) in &self.denominator {
            write_power(f, &factor_base(SeriesFactor::OneMinus(e)), p)?;
        }
        Ok(())
    }
}

/// Each odd generator of degree `e` contributes `(1 + t^e)`, each even one
/// `1/(1 − t^e)`; blocks of a direct sum add.
pub fn poincare_series(alg: &AlgebraPresentation) -> PoincareSeries {
    let mut total: Option<PoincareSeries> = None;
    for block in alg.blocks() {
        let mut s = PoincareSeries::one();
        for d in block.odd_degrees() {
            s = s.mul(&PoincareSeries::factor_odd(d));
        }
        for d in block.even_degrees() {
            s = s.mul(&PoincareSeries::factor_even(d));
        }
        total = Some(match total {
            None => s,
            Some(t) => t.add(&s),
        });
    }
    total.unwrap_or_else(PoincareSeries::one)
}

/// Power-series coefficients of `s` in degrees `0..=n_max`.
pub fn series_coefficients(s: &PoincareSeries, n_max: usize) -> Result<Vec<BigUint>, AlgebraError> {
    let mut c = s.numerator();
    c.resize(c.len().max(n_max + 1), BigInt::zero());
    c.truncate(n_max + 1);
    // dividing by (1 − t^e) is the recurrence c[k] += c[k − e]
    for e in s.denominator_exponents() {
        let e = e as usize;
        for k in e..=n_max {
            let prev = c[k - e].clone();
            c[k] += prev;
        }
    }
    c.into_iter()
        .enumerate()
        .map(|(degree, v)| {
            if v.is_negative() {
                Err(AlgebraError::NegativeCoefficient {
                    degree,
                    value: v.to_string(),
                })
            } else {
                Ok(v.magnitude().clone())
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_sum, exterior_algebra, polynomial_algebra, tensor_product};
    use num_traits::ToPrimitive;

    fn coeffs(s: &PoincareSeries, n: usize) -> Vec<u64> {
        series_coefficients(s, n)
            .unwrap()
            .iter()
            .map(|c| c.to_u64().unwrap())
            .collect()
    }

    fn lam(n: usize) -> AlgebraPresentation {
        exterior_algebra((1..=n).map(|j| format!("a{j}"))).unwrap()
    }

    #[test]
    fn exterior_series_is_binomial() {
        let s = poincare_series(&lam(4));
        assert_eq!(s.to_string(), "(1+t)^4");
        assert_eq!(s.denominator_exponents(), Vec::<u32>::new());
        assert_eq!(coeffs(&s, 5), vec![1, 4, 6, 4, 1, 0]);
    }

    #[test]
    fn polynomial_series_is_geometric() {
        let s = poincare_series(&polynomial_algebra("c1", 2).unwrap());
        assert_eq!(s.to_string(), "1/(1-t^2)");
        assert_eq!(coeffs(&s, 6), vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn smooth_genus_one_series() {
        let alg = tensor_product(&lam(2), &polynomial_algebra("c1", 2).unwrap());
        let s = poincare_series(&alg);
        assert_eq!(s.to_string(), "(1+t)^2/(1-t^2)");
        let mut expected = vec![2u64; 21];
        expected[0] = 1;
        assert_eq!(coeffs(&s, 20), expected);
    }

    #[test]
    fn genus_two_expansion() {
        let alg = tensor_product(&lam(4), &polynomial_algebra("c1", 2).unwrap());
        assert_eq!(coeffs(&poincare_series(&alg), 6), vec![1, 4, 7, 8, 8, 8, 8]);
    }

    #[test]
    fn sums_share_a_denominator() {
        let c = polynomial_algebra("c1", 2).unwrap();
        let sum = direct_sum(&[tensor_product(&lam(4), &c), tensor_product(&lam(6), &c)]).unwrap();
        let s = poincare_series(&sum);
        assert_eq!(s.to_string(), "((1+t)^4+(1+t)^6)/(1-t^2)");
        assert_eq!(coeffs(&s, 3), vec![2, 10, 23, 34]);

        let twice =
            direct_sum(&[tensor_product(&lam(4), &c), tensor_product(&lam(4), &c)]).unwrap();
        assert_eq!(poincare_series(&twice).to_string(), "2(1+t)^4/(1-t^2)");
    }

    #[test]
    fn sums_with_different_denominators() {
        // Λ(1) ⊕ ℚ[c] : (1+t) + 1/(1−t²) = ((1+t)(1−t²) + 1)/(1−t²)
        let sum = direct_sum(&[lam(1), polynomial_algebra("c", 2).unwrap()]).unwrap();
        let s = poincare_series(&sum);
        assert_eq!(s.to_string(), "((1+t)(1-t^2)+1)/(1-t^2)");
        assert_eq!(coeffs(&s, 5), vec![2, 1, 1, 0, 1, 0]);
    }

    #[test]
    fn numerator_expands() {
        let alg = tensor_product(&lam(4), &polynomial_algebra("c1", 2).unwrap());
        let num: Vec<i64> = poincare_series(&alg)
            .numerator()
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect();
        assert_eq!(num, vec![1, 4, 6, 4, 1]);
    }
}
