//! Free graded-commutative algebras over a field of characteristic zero.
//!
//! A presentation is a list of blocks. A single block is a tensor product of
//! exterior generators (odd degree) and polynomial generators (even degree);
//! several blocks form a direct sum in which products across blocks vanish.
//! Odd generators square to zero by construction of the multiplication, so no
//! relations are ever stored.

mod element;
mod series;

use std::collections::HashSet;
use std::fmt;

pub use element::{monomial_product, multiply, Element};
pub use series::{poincare_series, series_coefficients, PoincareSeries, SeriesFactor, SeriesTerm};

use crate::error::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorInfo {
    pub label: String,
    pub degree: u32,
}

impl GeneratorInfo {
    pub fn new(label: impl Into<String>, degree: u32) -> Self {
        GeneratorInfo {
            label: label.into(),
            degree,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// One tensor-product summand: its generators in order, split by parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    generators: Vec<GeneratorInfo>,
    odd: Vec<usize>,
    even: Vec<usize>,
}

impl Block {
    fn new(generators: Vec<GeneratorInfo>) -> Result<Self, AlgebraError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if g.degree == 0 {
                return Err(AlgebraError::ZeroDegreeGenerator(g.label.clone()));
            }
            if !seen.insert(g.label.as_str()) {
                return Err(AlgebraError::DuplicateLabel(g.label.clone()));
            }
        }
        let odd = (0..generators.len())
            .filter(|&i| generators[i].is_odd())
            .collect();
        let even = (0..generators.len())
            .filter(|&i| !generators[i].is_odd())
            .collect();
        Ok(Block {
            generators,
            odd,
            even,
        })
    }

    pub fn generators(&self) -> &[GeneratorInfo] {
        &self.generators
    }

    /// The `i`-th odd generator, in presentation order.
    pub fn odd_generator(&self, i: usize) -> &GeneratorInfo {
        &self.generators[self.odd[i]]
    }

    /// The `i`-th even generator, in presentation order.
    pub fn even_generator(&self, i: usize) -> &GeneratorInfo {
        &self.generators[self.even[i]]
    }

    pub fn odd_count(&self) -> usize {
        self.odd.len()
    }

    pub fn even_count(&self) -> usize {
        self.even.len()
    }

    pub fn odd_degrees(&self) -> Vec<u32> {
        self.odd
            .iter()
            .map(|&i| self.generators[i].degree)
            .collect()
    }

    pub fn even_degrees(&self) -> Vec<u32> {
        self.even
            .iter()
            .map(|&i| self.generators[i].degree)
            .collect()
    }

    /// The monomial spelled as generator positions in presentation order,
    /// each even generator repeated by its exponent. Basis order within a
    /// block is lexicographic in this word.
    fn word(&self, m: &Monomial) -> Vec<usize> {
        let mut word = Vec::new();
        let mut odd = m.odd.iter().peekable();
        let mut even = m.even.iter();
        for (pos, g) in self.generators.iter().enumerate() {
            if g.is_odd() {
                let i = self.odd.binary_search(&pos).expect("odd slot") as u16;
                if odd.peek() == Some(&&i) {
                    odd.next();
                    word.push(pos);
                }
            } else {
                let e = *even.next().expect("one exponent per even generator");
                word.extend(std::iter::repeat_n(pos, e as usize));
            }
        }
        word
    }

    fn find(&self, label: &str) -> Option<GeneratorSlot> {
        let pos = self.generators.iter().position(|g| g.label == label)?;
        Some(match self.odd.binary_search(&pos) {
            Ok(i) => GeneratorSlot::Odd(i),
            Err(_) => GeneratorSlot::Even(self.even.binary_search(&pos).expect("parity split")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GeneratorSlot {
    Odd(usize),
    Even(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    blocks: Vec<Block>,
}

impl AlgebraPresentation {
    /// A single-block algebra freely generated by `generators`.
    pub fn free(generators: Vec<GeneratorInfo>) -> Result<Self, AlgebraError> {
        Ok(AlgebraPresentation {
            blocks: vec![Block::new(generators)?],
        })
    }

    /// The ground field, concentrated in degree 0.
    pub fn unit() -> Self {
        AlgebraPresentation {
            blocks: vec![Block::new(Vec::new()).expect("empty block is valid")],
        }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_direct_sum(&self) -> bool {
        self.blocks.len() > 1
    }

    /// All generators, tagged with their block index.
    pub fn generators(&self) -> impl Iterator<Item = (usize, &GeneratorInfo)> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(b, block)| block.generators.iter().map(move |g| (b, g)))
    }

    pub fn dimension(&self, degree: u32) -> usize {
        basis_in_degree(self, degree).len()
    }

    /// Degree of a monomial, or `None` if it does not belong to this algebra.
    pub fn monomial_degree(&self, m: &Monomial) -> Option<u32> {
        let block = self.check_monomial(m).ok()?;
        let odd: u32 = m
            .odd
            .iter()
            .map(|&i| block.odd_generator(i as usize).degree)
            .sum();
        let even: u32 = m
            .even
            .iter()
            .enumerate()
            .map(|(i, &e)| e * block.even_generator(i).degree)
            .sum();
        Some(odd + even)
    }

    pub(crate) fn check_monomial(&self, m: &Monomial) -> Result<&Block, AlgebraError> {
        let block = self
            .blocks
            .get(m.block)
            .ok_or_else(|| AlgebraError::MalformedElement(format!("no block {}", m.block)))?;
        if m.even.len() != block.even_count() {
            return Err(AlgebraError::MalformedElement(format!(
                "even exponent vector has length {}, block {} has {} even generators",
                m.even.len(),
                m.block,
                block.even_count()
            )));
        }
        if m.odd.windows(2).any(|w| w[0] >= w[1]) {
            return Err(AlgebraError::MalformedElement(
                "odd part is not strictly increasing".into(),
            ));
        }
        if let Some(&i) = m.odd.iter().find(|&&i| i as usize >= block.odd_count()) {
            return Err(AlgebraError::MalformedElement(format!(
                "odd generator index {i} out of range in block {}",
                m.block
            )));
        }
        Ok(block)
    }

    /// Looks up a generator by label and returns it as a degree-one monomial.
    /// `block` restricts the search; without it the label must be unique
    /// across blocks.
    pub fn generator_monomial(
        &self,
        label: &str,
        block: Option<usize>,
    ) -> Result<Monomial, AlgebraError> {
        let mut hits = self
            .blocks
            .iter()
            .enumerate()
            .filter(|(b, _)| block.is_none_or(|want| want == *b))
            .filter_map(|(b, blk)| blk.find(label).map(|slot| (b, slot)));
        let (b, slot) = hits
            .next()
            .ok_or_else(|| AlgebraError::UnknownGenerator(label.to_string()))?;
        if hits.next().is_some() {
            return Err(AlgebraError::AmbiguousBlock(label.to_string()));
        }
        let mut m = Monomial::unit(b, self.blocks[b].even_count());
        match slot {
            GeneratorSlot::Odd(i) => m.odd.push(i as u16),
            GeneratorSlot::Even(i) => m.even[i] = 1,
        }
        Ok(m)
    }

    /// Blocks that contain a generator with this label.
    pub fn blocks_with_label(&self, label: &str) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, blk)| blk.find(label).is_some())
            .map(|(b, _)| b)
            .collect()
    }

    /// Every label in the algebra, longest first (for greedy tokenizing).
    pub fn labels_longest_first(&self) -> Vec<&str> {
        let mut labels: Vec<&str> = self.generators().map(|(_, g)| g.label.as_str()).collect();
        labels.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        labels.dedup();
        labels
    }

    pub fn display_monomial<'a>(&'a self, m: &'a Monomial) -> MonomialDisplay<'a> {
        MonomialDisplay { alg: self, m }
    }
}

/// A basis monomial: a square-free product of odd generators times a power
/// product of even generators, inside one block.
///
/// `odd` holds strictly increasing indices into the block's odd generators;
/// `even` has one exponent per even generator of the block. The derived
/// ordering (block, odd part, even exponents) is the storage order of
/// element terms; [`basis_in_degree`] lists monomials block by block in
/// lexicographic order of their spelling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub block: usize,
    pub odd: Vec<u16>,
    pub even: Vec<u32>,
}

impl Monomial {
    pub fn unit(block: usize, even_count: usize) -> Self {
        Monomial {
            block,
            odd: Vec::new(),
            even: vec![0; even_count],
        }
    }

    pub fn is_unit(&self) -> bool {
        self.odd.is_empty() && self.even.iter().all(|&e| e == 0)
    }

    pub fn odd_len(&self) -> usize {
        self.odd.len()
    }
}

pub struct MonomialDisplay<'a> {
    alg: &'a AlgebraPresentation,
    m: &'a Monomial,
}

impl fmt::Display for MonomialDisplay<'_> {
    /// Generators are written in presentation order; `c1^2` style powers for
    /// even generators; `1` for the unit. Direct sums append `@<block>`
    /// (1-based) so equal labels in different blocks stay distinguishable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let block = &self.alg.blocks[self.m.block];
        let mut wrote = false;
        let mut odd = self.m.odd.iter().peekable();
        let mut even_iter = 0usize;
        for (pos, g) in block.generators.iter().enumerate() {
            if g.is_odd() {
                let i = block.odd.binary_search(&pos).expect("odd slot");
                if odd.peek() == Some(&&(i as u16)) {
                    odd.next();
                    f.write_str(&g.label)?;
                    wrote = true;
                }
            } else {
                let e = self.m.even[even_iter];
                even_iter += 1;
                if e > 0 {
                    f.write_str(&g.label)?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                    wrote = true;
                }
            }
        }
        if !wrote {
            f.write_str("1")?;
        }
        if self.alg.is_direct_sum() {
            write!(f, "@{}", self.m.block + 1)?;
        }
        Ok(())
    }
}

/// Exterior algebra on degree-1 generators with the given labels.
pub fn exterior_algebra<S: Into<String>>(
    labels: impl IntoIterator<Item = S>,
) -> Result<AlgebraPresentation, AlgebraError> {
    AlgebraPresentation::free(
        labels
            .into_iter()
            .map(|l| GeneratorInfo::new(l, 1))
            .collect(),
    )
}

/// Polynomial algebra on a single even generator.
pub fn polynomial_algebra(
    label: impl Into<String>,
    degree: u32,
) -> Result<AlgebraPresentation, AlgebraError> {
    let label = label.into();
    if degree < 2 || degree % 2 == 1 {
        return Err(AlgebraError::OddDegreeForPolynomialGenerator { label, degree });
    }
    AlgebraPresentation::free(vec![GeneratorInfo::new(label, degree)])
}

/// Graded tensor product. Summands distribute: block `(i, j)` of the result
/// is `a.blocks[i] ⊗ b.blocks[j]`, ordered with `i` major. Labels from `b`
/// that clash with labels of `a` are primed until unique.
pub fn tensor_product(a: &AlgebraPresentation, b: &AlgebraPresentation) -> AlgebraPresentation {
    let mut blocks = Vec::with_capacity(a.blocks.len() * b.blocks.len());
    for left in &a.blocks {
        for right in &b.blocks {
            let mut generators = left.generators.clone();
            let mut taken: HashSet<String> = generators.iter().map(|g| g.label.clone()).collect();
            for g in &right.generators {
                let mut label = g.label.clone();
                while taken.contains(&label) {
                    label.push('\'');
                }
                taken.insert(label.clone());
                generators.push(GeneratorInfo::new(label, g.degree));
            }
            blocks.push(Block::new(generators).expect("labels made unique"));
        }
    }
    AlgebraPresentation { blocks }
}

/// Direct sum: blocks are concatenated and products across them vanish.
pub fn direct_sum(parts: &[AlgebraPresentation]) -> Result<AlgebraPresentation, AlgebraError> {
    if parts.is_empty() {
        return Err(AlgebraError::EmptyDirectSum);
    }
    Ok(AlgebraPresentation {
        blocks: parts
            .iter()
            .flat_map(|p| p.blocks.iter().cloned())
            .collect(),
    })
}

/// All monomials of total degree `k`: block by block, and within a block
/// lexicographic in the monomial written out in generator order (so
/// `a1a2 < a1c1 < a2c1 < c1^2`).
pub fn basis_in_degree(alg: &AlgebraPresentation, k: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for (b, block) in alg.blocks.iter().enumerate() {
        let odd_degrees = block.odd_degrees();
        let even_degrees = block.even_degrees();
        let mut found = Vec::new();
        let mut odd = Vec::new();
        odd_subsets(&odd_degrees, 0, k, &mut odd, &mut |subset, remaining| {
            let mut even = vec![0u32; even_degrees.len()];
            even_vectors(&even_degrees, 0, remaining, &mut even, &mut |exps| {
                found.push(Monomial {
                    block: b,
                    odd: subset.to_vec(),
                    even: exps.to_vec(),
                });
            });
        });
        found.sort_by_cached_key(|m| block.word(m));
        out.extend(found);
    }
    out
}

fn odd_subsets(
    degrees: &[u32],
    start: usize,
    budget: u32,
    chosen: &mut Vec<u16>,
    emit: &mut dyn FnMut(&[u16], u32),
) {
    emit(chosen, budget);
    for i in start..degrees.len() {
        if degrees[i] <= budget {
            chosen.push(i as u16);
            odd_subsets(degrees, i + 1, budget - degrees[i], chosen, emit);
            chosen.pop();
        }
    }
}

fn even_vectors(
    degrees: &[u32],
    i: usize,
    remaining: u32,
    exps: &mut [u32],
    emit: &mut dyn FnMut(&[u32]),
) {
    if i == degrees.len() {
        if remaining == 0 {
            emit(exps);
        }
        return;
    }
    let mut e = 0;
    while e * degrees[i] <= remaining {
        exps[i] = e;
        even_vectors(degrees, i + 1, remaining - e * degrees[i], exps, emit);
        e += 1;
    }
    exps[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alphas(n: usize) -> Vec<String> {
        (1..=n).map(|j| format!("a{j}")).collect()
    }

    fn dims(alg: &AlgebraPresentation, upto: u32) -> Vec<usize> {
        (0..=upto).map(|k| alg.dimension(k)).collect()
    }

    #[test]
    fn exterior_examples() {
        let unit = exterior_algebra(Vec::<String>::new()).unwrap();
        assert_eq!(dims(&unit, 3), vec![1, 0, 0, 0]);

        let four = exterior_algebra(alphas(4)).unwrap();
        assert_eq!(dims(&four, 6).iter().sum::<usize>(), 16);

        let two = exterior_algebra(alphas(2)).unwrap();
        let shown: Vec<String> = (0..=2)
            .flat_map(|k| basis_in_degree(&two, k))
            .map(|m| two.display_monomial(&m).to_string())
            .collect();
        assert_eq!(shown, vec!["1", "a1", "a2", "a1a2"]);

        assert_eq!(
            exterior_algebra(["x", "x"]).unwrap_err(),
            AlgebraError::DuplicateLabel("x".into())
        );
    }

    #[test]
    fn polynomial_examples() {
        let c = polynomial_algebra("c1", 2).unwrap();
        assert_eq!(c.dimension(6), 1);
        assert_eq!(c.dimension(5), 0);
        let basis = basis_in_degree(&c, 4);
        assert_eq!(basis.len(), 1);
        assert_eq!(c.display_monomial(&basis[0]).to_string(), "c1^2");
        assert!(matches!(
            polynomial_algebra("c1", 3),
            Err(AlgebraError::OddDegreeForPolynomialGenerator { degree: 3, .. })
        ));
        assert!(polynomial_algebra("c0", 0).is_err());
    }

    #[test]
    fn tensor_examples() {
        let lam2 = exterior_algebra(alphas(2)).unwrap();
        let c = polynomial_algebra("c1", 2).unwrap();
        let t = tensor_product(&lam2, &c);
        assert_eq!(t.dimension(2), 2);

        let unit = AlgebraPresentation::unit();
        let lam4 = exterior_algebra(alphas(4)).unwrap();
        assert_eq!(dims(&tensor_product(&lam4, &unit), 20), dims(&lam4, 20));

        let cc = tensor_product(&c, &c);
        assert_eq!(cc.dimension(4), 3);
        let labels: Vec<&str> = cc.generators().map(|(_, g)| g.label.as_str()).collect();
        assert_eq!(labels, vec!["c1", "c1'"]);
    }

    #[test]
    fn tensor_distributes_over_sums() {
        let lam4 = exterior_algebra(alphas(4)).unwrap();
        let lam6 = exterior_algebra(alphas(6)).unwrap();
        let sum = direct_sum(&[lam4, lam6]).unwrap();
        let c = polynomial_algebra("c1", 2).unwrap();
        let t = tensor_product(&sum, &c);
        assert_eq!(t.block_count(), 2);
        assert_eq!(t.dimension(2), 6 + 15 + 2);
    }

    #[test]
    fn direct_sum_examples() {
        let lam4 = exterior_algebra(alphas(4)).unwrap();
        let lam6 = exterior_algebra(alphas(6)).unwrap();
        let sum = direct_sum(&[lam4.clone(), lam6]).unwrap();
        assert_eq!(sum.dimension(1), 10);
        assert_eq!(sum.dimension(0), 2);
        assert_eq!(
            dims(&direct_sum(std::slice::from_ref(&lam4)).unwrap(), 6),
            dims(&lam4, 6)
        );
        assert_eq!(direct_sum(&[]).unwrap_err(), AlgebraError::EmptyDirectSum);
    }

    #[test]
    fn basis_examples() {
        let lam4 = exterior_algebra(alphas(4)).unwrap();
        let b2 = basis_in_degree(&lam4, 2);
        assert_eq!(b2.len(), 6);
        let shown: Vec<String> = b2
            .iter()
            .map(|m| lam4.display_monomial(m).to_string())
            .collect();
        assert_eq!(shown, vec!["a1a2", "a1a3", "a1a4", "a2a3", "a2a4", "a3a4"]);

        let sum = direct_sum(&[lam4.clone(), exterior_algebra(alphas(2)).unwrap()]).unwrap();
        let units = basis_in_degree(&sum, 0);
        assert_eq!(units.len(), 2);
        assert!(units.iter().all(Monomial::is_unit));
        assert_eq!(sum.display_monomial(&units[1]).to_string(), "1@2");

        let t = tensor_product(&lam4, &polynomial_algebra("c1", 2).unwrap());
        let b3 = basis_in_degree(&t, 3);
        assert_eq!(b3.len(), 8);
        let shown: Vec<String> = b3
            .iter()
            .map(|m| t.display_monomial(m).to_string())
            .collect();
        assert_eq!(
            shown,
            vec!["a1a2a3", "a1a2a4", "a1a3a4", "a1c1", "a2a3a4", "a2c1", "a3c1", "a4c1"]
        );
    }

    #[test]
    fn mixed_degree_generators() {
        // odd generator of degree 3 and even generator of degree 4
        let alg = AlgebraPresentation::free(vec![
            GeneratorInfo::new("x", 3),
            GeneratorInfo::new("y", 4),
            GeneratorInfo::new("z", 1),
        ])
        .unwrap();
        // degree 4: xz, y; degree 5: yz; degree 7: xy; degree 8: y^2, xyz
        assert_eq!(alg.dimension(4), 2);
        assert_eq!(alg.dimension(5), 1);
        assert_eq!(alg.dimension(7), 1);
        assert_eq!(alg.dimension(8), 2);
    }

    #[test]
    fn generator_lookup() {
        let lam = exterior_algebra(alphas(2)).unwrap();
        let c = polynomial_algebra("c1", 2).unwrap();
        let sum = direct_sum(&[tensor_product(&lam, &c), tensor_product(&lam, &c)]).unwrap();
        assert_eq!(
            sum.generator_monomial("c1", None).unwrap_err(),
            AlgebraError::AmbiguousBlock("c1".into())
        );
        let m = sum.generator_monomial("c1", Some(1)).unwrap();
        assert_eq!(m.block, 1);
        assert_eq!(m.even, vec![1]);
        assert_eq!(
            sum.generator_monomial("zz", None).unwrap_err(),
            AlgebraError::UnknownGenerator("zz".into())
        );
    }
}
