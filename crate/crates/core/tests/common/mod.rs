#![allow(dead_code)]

use nodal_cohomology::algebra::{AlgebraPresentation, GeneratorInfo, Monomial};
use nodal_cohomology::NodalCurve;
use rand::Rng;

/// Random multigraph as a curve: up to `max_vertices` components and
/// `max_edges` nodes, loops allowed.
pub fn random_curve<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> NodalCurve {
    let n = rng.gen_range(1..=max_vertices);
    let genera: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
    let e = rng.gen_range(0..=max_edges);
    let nodes: Vec<(usize, usize)> = (0..e)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    NodalCurve::new(&genera, &nodes).unwrap()
}

/// Random connected curve: a random spanning tree plus a few extra nodes
/// (possibly loops).
pub fn random_connected_curve<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    max_extra: usize,
) -> NodalCurve {
    let n = rng.gen_range(1..=max_vertices);
    let genera: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
    let mut nodes: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for _ in 0..rng.gen_range(0..=max_extra) {
        nodes.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    // shuffle endpoints and order so trees are not always parent-first
    for node in nodes.iter_mut() {
        if rng.gen_bool(0.5) {
            *node = (node.1, node.0);
        }
    }
    for i in (1..nodes.len()).rev() {
        let j = rng.gen_range(0..=i);
        nodes.swap(i, j);
    }
    NodalCurve::new(&genera, &nodes).unwrap()
}

/// Random compact-type curve: a random tree on up to `max_vertices`
/// components with genera drawn from `genus_range`.
pub fn random_tree_curve<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    genus_range: std::ops::RangeInclusive<u32>,
) -> NodalCurve {
    let n = rng.gen_range(1..=max_vertices);
    let genera: Vec<u32> = (0..n).map(|_| rng.gen_range(genus_range.clone())).collect();
    let nodes: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    NodalCurve::new(&genera, &nodes).unwrap()
}

/// Random single-block presentation with the given numbers of odd and even
/// generators; odd degrees in {1,3}, even degrees in {2,4}.
pub fn random_presentation<R: Rng>(rng: &mut R, odd: usize, even: usize) -> AlgebraPresentation {
    let mut gens = Vec::new();
    for i in 0..odd {
        gens.push(GeneratorInfo::new(
            format!("x{i}"),
            if rng.gen_bool(0.8) { 1 } else { 3 },
        ));
    }
    for i in 0..even {
        gens.push(GeneratorInfo::new(
            format!("y{i}"),
            if rng.gen_bool(0.7) { 2 } else { 4 },
        ));
    }
    // interleave parities so presentation order is not parity-sorted
    for i in (1..gens.len()).rev() {
        let j = rng.gen_range(0..=i);
        gens.swap(i, j);
    }
    AlgebraPresentation::free(gens).unwrap()
}

/// Random monomial of `alg` (any block).
pub fn random_monomial<R: Rng>(rng: &mut R, alg: &AlgebraPresentation) -> Monomial {
    let block = rng.gen_range(0..alg.block_count());
    let b = &alg.blocks()[block];
    let odd: Vec<u16> = (0..b.odd_count())
        .filter(|_| rng.gen_bool(0.3))
        .map(|i| i as u16)
        .collect();
    let even: Vec<u32> = (0..b.even_count()).map(|_| rng.gen_range(0..=2)).collect();
    Monomial { block, odd, even }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}
