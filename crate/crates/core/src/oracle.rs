//! Brute-force cross-checks.
//!
//! Nothing here calls into the algebra engine or the graph traversal in
//! [`crate::curve`]: monomials are enumerated as bitmasks times a full box of
//! exponent vectors, and graph questions go through a union-find.

use thiserror::Error;

use crate::algebra::AlgebraPresentation;
use crate::curve::{DualGraph, NodalCurve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("exponent cap {cap} cannot reach degree {degree} with a generator of degree {generator_degree}")]
    CapTooSmall {
        cap: u32,
        degree: u32,
        generator_degree: u32,
    },
    #[error("{0} odd generators is beyond the brute-force limit of 24")]
    TooManyOddGenerators(usize),
}

/// A monomial as the oracle sees it: a bitmask of odd generators (bit `i` =
/// `i`-th odd generator in the input order) and even exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RawMonomial {
    pub odd_mask: u32,
    pub even: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCount {
    pub count: usize,
    pub monomials: Vec<RawMonomial>,
}

/// Every square-free odd subset times every even exponent vector in
/// `[0, even_cap]^r`, filtered to total degree `k`.
pub fn enumerate_monomials_bruteforce(
    degrees: &[u32],
    k: u32,
    even_cap: u32,
) -> Result<OracleCount, OracleError> {
    let odd: Vec<u32> = degrees.iter().copied().filter(|d| d % 2 == 1).collect();
    let even: Vec<u32> = degrees.iter().copied().filter(|d| d % 2 == 0).collect();
    if odd.len() > 24 {
        return Err(OracleError::TooManyOddGenerators(odd.len()));
    }
    if let Some(&d) = even.iter().min() {
        if even_cap < k / d {
            return Err(OracleError::CapTooSmall {
                cap: even_cap,
                degree: k,
                generator_degree: d,
            });
        }
    }
    let mut monomials = Vec::new();
    for mask in 0u32..(1u32 << odd.len()) {
        let mut odd_degree = 0u32;
        for (bit, d) in odd.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                odd_degree += d;
            }
        }
        // odometer over the exponent box
        let mut exps = vec![0u32; even.len()];
        loop {
            let even_degree: u32 = exps.iter().zip(&even).map(|(e, d)| e * d).sum();
            if odd_degree + even_degree == k {
                monomials.push(RawMonomial {
                    odd_mask: mask,
                    even: exps.clone(),
                });
            }
            let mut slot = 0;
            loop {
                if slot == exps.len() {
                    break;
                }
                if exps[slot] < even_cap {
                    exps[slot] += 1;
                    break;
                }
                exps[slot] = 0;
                slot += 1;
            }
            if slot == exps.len() {
                break;
            }
        }
    }
    Ok(OracleCount {
        count: monomials.len(),
        monomials,
    })
}

/// Oracle dimension of an algebra in degree `k`: brute force per block, with
/// the exponent cap chosen so nothing of degree `k` is missed.
pub fn oracle_dimension(alg: &AlgebraPresentation, k: u32) -> Result<usize, OracleError> {
    let mut total = 0;
    for block in alg.blocks() {
        let degrees: Vec<u32> = block.generators().iter().map(|g| g.degree).collect();
        let cap = degrees
            .iter()
            .filter(|d| *d % 2 == 0)
            .map(|d| k / d)
            .max()
            .unwrap_or(0);
        total += enumerate_monomials_bruteforce(&degrees, k, cap)?.count;
    }
    Ok(total)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Returns `false` if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// `δ − |spanning forest|`; loops never enter the forest.
pub fn spanning_forest_rank(graph: &DualGraph) -> usize {
    let mut uf = UnionFind::new(graph.vertex_count());
    let forest = graph
        .edges()
        .iter()
        .filter(|&&(u, v)| uf.union(u, v))
        .count();
    graph.edge_count() - forest
}

fn components_without(vertex_count: usize, edges: &[(usize, usize)], skip: Option<usize>) -> usize {
    let mut uf = UnionFind::new(vertex_count);
    let mut count = vertex_count;
    for (i, &(u, v)) in edges.iter().enumerate() {
        if Some(i) != skip && uf.union(u, v) {
            count -= 1;
        }
    }
    count
}

/// Normalizes the curve at each node in turn (deletes that edge) and checks
/// the number of connected components goes up. A loop never does.
pub fn separating_node_check(curve: &NodalCurve) -> bool {
    let n = curve.component_count();
    let edges: Vec<(usize, usize)> = curve.nodes().iter().map(|p| (p.left, p.right)).collect();
    let base = components_without(n, &edges, None);
    (0..edges.len()).all(|i| components_without(n, &edges, Some(i)) > base)
}

/// Connected and every node separating: the definition of compact type,
/// evaluated directly.
pub fn compact_type_by_definition(curve: &NodalCurve) -> bool {
    let edges: Vec<(usize, usize)> = curve.nodes().iter().map(|p| (p.left, p.right)).collect();
    components_without(curve.component_count(), &edges, None) == 1 && separating_node_check(curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{dual_graph, first_betti};

    #[test]
    fn monomial_counts() {
        assert_eq!(
            enumerate_monomials_bruteforce(&[1, 1, 1, 1], 2, 0)
                .unwrap()
                .count,
            6
        );
        assert_eq!(enumerate_monomials_bruteforce(&[2], 8, 4).unwrap().count, 1);
        let r = enumerate_monomials_bruteforce(&[1, 1, 2], 3, 1).unwrap();
        assert_eq!(r.count, 2);
        assert!(r.monomials.iter().all(|m| m.even == vec![1]));
    }

    #[test]
    fn cap_too_small() {
        assert_eq!(
            enumerate_monomials_bruteforce(&[2], 8, 3).unwrap_err(),
            OracleError::CapTooSmall {
                cap: 3,
                degree: 8,
                generator_degree: 2
            }
        );
        // odd contributions can't rescue a small cap for c^4
        assert!(enumerate_monomials_bruteforce(&[1, 2], 9, 3).is_err());
    }

    #[test]
    fn forest_rank_examples() {
        let tree = DualGraph::from_edges(4, vec![(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(spanning_forest_rank(&tree), 0);
        let loops = DualGraph::from_edges(1, vec![(0, 0), (0, 0)]).unwrap();
        assert_eq!(spanning_forest_rank(&loops), 2);
        let triangle = DualGraph::from_edges(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(spanning_forest_rank(&triangle), 1);
        assert_eq!(first_betti(&triangle), 1);
    }

    #[test]
    fn separating_examples() {
        assert!(separating_node_check(
            &NodalCurve::new(&[1, 1], &[(0, 1)]).unwrap()
        ));
        assert!(!separating_node_check(
            &NodalCurve::new(&[1], &[(0, 0)]).unwrap()
        ));
        let triangle = NodalCurve::new(&[1, 1, 1], &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!separating_node_check(&triangle));
        assert_eq!(first_betti(&dual_graph(&triangle)), 1);
    }
}
