//! Cohomology algebras of the classifying stack of `ℂ*`, of Jacobians, and of
//! moduli stacks of degree-`d` line bundles on smooth curves and on nodal
//! curves of compact type.
//!
//! Generators are labelled `α_j^(i)` for the `j`-th degree-1 class of
//! component `i` (both 1-based) and `c1` for the degree-2 Chern class.

use std::fmt;

use num_bigint::BigUint;

use crate::algebra::{
    basis_in_degree, direct_sum, exterior_algebra, poincare_series, polynomial_algebra,
    series_coefficients, tensor_product, AlgebraPresentation, PoincareSeries,
};
use crate::curve::{is_compact_type, NodalCurve};
use crate::error::ModuliError;

pub const CHERN_CLASS_LABEL: &str = "c1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    ClassifyingStack,
    Jacobian,
    SmoothModuli,
    NodalAsStated,
    NodalKunneth,
}

/// How the per-component pieces of a nodal curve are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum NodalMode {
    /// `[⊕ᵢ Λ(α^(i))] ⊗ ℚ[c1]`: one summand per component.
    #[default]
    AsStated,
    /// `⊕_{d̲} [⊗ᵢ Λ(α^(i))] ⊗ ℚ[c1]`: one summand per multidegree, each the
    /// Künneth product over components.
    Kunneth,
}

impl NodalMode {
    pub fn name(self) -> &'static str {
        match self {
            NodalMode::AsStated => "as-stated",
            NodalMode::Kunneth => "kunneth",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// Component of genus below 2; the formulas are applied anyway.
    LowGenusComponent { component: usize, genus: u32 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::LowGenusComponent { component, genus } => {
                write!(f, "low-genus component {component} (g={genus})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliCohomology {
    pub algebra: AlgebraPresentation,
    pub series: PoincareSeries,
    pub provenance: Provenance,
    pub warnings: Vec<Warning>,
    pub multidegree_count: Option<usize>,
    /// Genera of the components the algebra was built from.
    pub genera: Vec<u32>,
}

impl ModuliCohomology {
    fn new(algebra: AlgebraPresentation, provenance: Provenance, genera: Vec<u32>) -> Self {
        let series = poincare_series(&algebra);
        ModuliCohomology {
            algebra,
            series,
            provenance,
            warnings: Vec::new(),
            multidegree_count: None,
            genera,
        }
    }

    fn with_low_genus_warnings(mut self) -> Self {
        self.warnings = self
            .genera
            .iter()
            .enumerate()
            .filter(|(_, &g)| g < 2)
            .map(|(component, &genus)| Warning::LowGenusComponent { component, genus })
            .collect();
        self
    }
}

pub fn alpha_label(component: usize, index: usize) -> String {
    format!("α_{index}^({component})")
}

fn component_exterior(component: usize, genus: u32, qualifier: &str) -> AlgebraPresentation {
    exterior_algebra(
        (1..=2 * genus as usize).map(|j| format!("{}{qualifier}", alpha_label(component, j))),
    )
    .expect("α labels are distinct")
}

fn chern_algebra(qualifier: &str) -> AlgebraPresentation {
    polynomial_algebra(format!("{CHERN_CLASS_LABEL}{qualifier}"), 2).expect("c1 has degree 2")
}

pub fn classifying_stack() -> ModuliCohomology {
    ModuliCohomology::new(chern_algebra(""), Provenance::ClassifyingStack, Vec::new())
}

pub fn jacobian(genus: u32) -> ModuliCohomology {
    ModuliCohomology::new(
        component_exterior(1, genus, ""),
        Provenance::Jacobian,
        vec![genus],
    )
}

pub fn smooth_moduli(genus: u32) -> ModuliCohomology {
    let algebra = tensor_product(&component_exterior(1, genus, ""), &chern_algebra(""));
    ModuliCohomology::new(algebra, Provenance::SmoothModuli, vec![genus]).with_low_genus_warnings()
}

fn multidegree_qualifier(d: &[i64]) -> String {
    let parts: Vec<String> = d.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// Cohomology of the moduli stack of line bundles on a nodal curve of
/// compact type.
///
/// `multidegrees` only matters in [`NodalMode::Kunneth`], where each vector
/// contributes one summand; without a list a single summand is built. In
/// [`NodalMode::AsStated`] the list is validated and its size recorded, but
/// the algebra does not depend on it.
pub fn nodal_moduli(
    curve: &NodalCurve,
    mode: NodalMode,
    multidegrees: Option<&[Vec<i64>]>,
) -> Result<ModuliCohomology, ModuliError> {
    let verdict = is_compact_type(curve);
    if let Some(witness) = verdict.witness {
        return Err(ModuliError::NotCompactType(witness));
    }
    let m = curve.component_count();
    if let Some(list) = multidegrees {
        if let Some((index, d)) = list.iter().enumerate().find(|(_, d)| d.len() != m) {
            return Err(ModuliError::MultidegreeLengthMismatch {
                index,
                expected: m,
                found: d.len(),
            });
        }
        if list.is_empty() {
            return Err(ModuliError::EmptyMultidegreeSet);
        }
    }
    let genera = curve.genera();
    let algebra = match mode {
        NodalMode::AsStated => {
            let parts: Vec<AlgebraPresentation> = genera
                .iter()
                .enumerate()
                .map(|(i, &g)| component_exterior(i + 1, g, ""))
                .collect();
            tensor_product(&direct_sum(&parts)?, &chern_algebra(""))
        }
        NodalMode::Kunneth => {
            let kunneth_block = |qualifier: &str| {
                let product = genera
                    .iter()
                    .enumerate()
                    .fold(AlgebraPresentation::unit(), |acc, (i, &g)| {
                        tensor_product(&acc, &component_exterior(i + 1, g, qualifier))
                    });
                tensor_product(&product, &chern_algebra(qualifier))
            };
            match multidegrees {
                None => kunneth_block(""),
                Some(list) => {
                    let blocks: Vec<AlgebraPresentation> = list
                        .iter()
                        .map(|d| kunneth_block(&multidegree_qualifier(d)))
                        .collect();
                    direct_sum(&blocks)?
                }
            }
        }
    };
    let provenance = match mode {
        NodalMode::AsStated => Provenance::NodalAsStated,
        NodalMode::Kunneth => Provenance::NodalKunneth,
    };
    let mut mc = ModuliCohomology::new(algebra, provenance, genera).with_low_genus_warnings();
    mc.multidegree_count = match (mode, multidegrees) {
        (_, Some(list)) => Some(list.len()),
        (NodalMode::Kunneth, None) => Some(1),
        (NodalMode::AsStated, None) => None,
    };
    Ok(mc)
}

/// Betti numbers `b_0..=b_{n_max}`, computed both from the closed-form
/// series and by counting basis monomials; any disagreement is an error.
pub fn betti_table(mc: &ModuliCohomology, n_max: usize) -> Result<Vec<u64>, ModuliError> {
    let from_series = series_coefficients(&mc.series, n_max)?;
    from_series
        .into_iter()
        .enumerate()
        .map(|(k, s)| {
            let basis = basis_in_degree(&mc.algebra, k as u32).len();
            if s != BigUint::from(basis) {
                return Err(ModuliError::InternalMismatch {
                    degree: k,
                    series: s.to_string(),
                    basis,
                });
            }
            Ok(basis as u64)
        })
        .collect()
}
