//! Combinatorial model of a nodal curve: components with genera, nodes joining
//! them, and the dual graph invariants derived from that data.

use std::collections::VecDeque;
use std::fmt;
use std::ops::RangeInclusive;

use crate::error::CurveError;

/// An irreducible component, identified by its dense 0-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComponentSpec {
    pub id: usize,
    pub genus: u32,
}

/// A node joining two components. `left == right` is a node lying on a
/// single component, which shows up as a loop in the dual graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeSpec {
    pub left: usize,
    pub right: usize,
}

impl NodeSpec {
    pub fn new(left: usize, right: usize) -> Self {
        NodeSpec { left, right }
    }

    pub fn is_loop(&self) -> bool {
        self.left == self.right
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodalCurve {
    components: Vec<ComponentSpec>,
    nodes: Vec<NodeSpec>,
}

impl NodalCurve {
    /// Builds a curve from per-component genera (ids assigned in order) and
    /// node endpoints.
    pub fn new(genera: &[u32], nodes: &[(usize, usize)]) -> Result<Self, CurveError> {
        if genera.is_empty() {
            return Err(CurveError::NoComponents);
        }
        let components = genera
            .iter()
            .enumerate()
            .map(|(id, &genus)| ComponentSpec { id, genus })
            .collect::<Vec<_>>();
        let nodes = nodes
            .iter()
            .map(|&(l, r)| NodeSpec::new(l, r))
            .collect::<Vec<_>>();
        for (index, node) in nodes.iter().enumerate() {
            for id in [node.left, node.right] {
                if id >= components.len() {
                    return Err(CurveError::InvalidComponentReference {
                        node: index,
                        component: id,
                        component_count: components.len(),
                    });
                }
            }
        }
        Ok(NodalCurve { components, nodes })
    }

    /// A smooth curve: one component, no nodes.
    pub fn smooth(genus: u32) -> Self {
        NodalCurve {
            components: vec![ComponentSpec { id: 0, genus }],
            nodes: Vec::new(),
        }
    }

    pub fn components(&self) -> &[ComponentSpec] {
        &self.components
    }

    pub fn nodes(&self) -> &[NodeSpec] {
        &self.nodes
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn genera(&self) -> Vec<u32> {
        self.components.iter().map(|c| c.genus).collect()
    }

    /// Returns a copy of this curve with one more node.
    pub fn with_node(&self, left: usize, right: usize) -> Result<Self, CurveError> {
        let mut nodes: Vec<(usize, usize)> = self.nodes.iter().map(|n| (n.left, n.right)).collect();
        nodes.push((left, right));
        NodalCurve::new(&self.genera(), &nodes)
    }
}

/// Dual graph of a nodal curve: one vertex per component, one edge per node.
/// No orientation is stored; nothing computed here depends on one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    connected_components: usize,
}

impl DualGraph {
    /// Builds a graph directly from an edge list. Endpoints must be
    /// `< vertex_count`.
    pub fn from_edges(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, CurveError> {
        for (index, &(u, v)) in edges.iter().enumerate() {
            for id in [u, v] {
                if id >= vertex_count {
                    return Err(CurveError::InvalidComponentReference {
                        node: index,
                        component: id,
                        component_count: vertex_count,
                    });
                }
            }
        }
        let connected_components = count_components(vertex_count, &edges, None);
        Ok(DualGraph {
            vertex_count,
            edges,
            connected_components,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn connected_components(&self) -> usize {
        self.connected_components
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        adjacency(self.vertex_count, &self.edges, None)
    }
}

fn adjacency(
    vertex_count: usize,
    edges: &[(usize, usize)],
    skip: Option<usize>,
) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); vertex_count];
    for (index, &(u, v)) in edges.iter().enumerate() {
        if Some(index) == skip {
            continue;
        }
        adj[u].push((v, index));
        if u != v {
            adj[v].push((u, index));
        }
    }
    adj
}

/// Breadth-first component count, optionally ignoring one edge.
pub(crate) fn count_components(
    vertex_count: usize,
    edges: &[(usize, usize)],
    skip: Option<usize>,
) -> usize {
    let adj = adjacency(vertex_count, edges, skip);
    let mut seen = vec![false; vertex_count];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..vertex_count {
        if seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    count
}

pub fn dual_graph(curve: &NodalCurve) -> DualGraph {
    let edges = curve.nodes.iter().map(|n| (n.left, n.right)).collect();
    // node references were validated when the curve was built
    DualGraph::from_edges(curve.component_count(), edges)
        .expect("curve nodes reference existing components")
}

/// `b₁ = δ − γ + c`, the rank of the cycle space of the graph.
pub fn first_betti(graph: &DualGraph) -> usize {
    graph.edge_count() + graph.connected_components() - graph.vertex_count()
}

/// Why a curve fails to be of compact type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompactTypeWitness {
    /// The curve has this many connected components (more than one).
    Disconnected { components: usize },
    /// A node lying on a single component.
    Loop { node: usize, component: usize },
    /// A closed walk in the dual graph; `nodes` lists the node indices along
    /// it and `components` the component ids visited, starting and ending at
    /// `components[0]`.
    Cycle {
        nodes: Vec<usize>,
        components: Vec<usize>,
    },
}

impl fmt::Display for CompactTypeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompactTypeWitness::Disconnected { components } => {
                write!(f, "disconnected({components} connected components)")
            }
            CompactTypeWitness::Loop { node, component } => {
                write!(f, "loop(node {node} on component {component})")
            }
            CompactTypeWitness::Cycle { nodes, components } => {
                let nodes = nodes
                    .iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                let path = components
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join("-");
                write!(f, "cycle(nodes {nodes}; components {path})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactTypeVerdict {
    pub compact_type: bool,
    pub witness: Option<CompactTypeWitness>,
}

/// A curve is of compact type when it is connected and its dual graph is a
/// tree. On failure the verdict carries a witness: disconnection first, then
/// a loop node, then a cycle of non-loop nodes.
pub fn is_compact_type(curve: &NodalCurve) -> CompactTypeVerdict {
    let graph = dual_graph(curve);
    if graph.connected_components() > 1 {
        return CompactTypeVerdict {
            compact_type: false,
            witness: Some(CompactTypeWitness::Disconnected {
                components: graph.connected_components(),
            }),
        };
    }
    if first_betti(&graph) == 0 {
        return CompactTypeVerdict {
            compact_type: true,
            witness: None,
        };
    }
    if let Some((node, &(component, _))) =
        graph.edges().iter().enumerate().find(|(_, (u, v))| u == v)
    {
        return CompactTypeVerdict {
            compact_type: false,
            witness: Some(CompactTypeWitness::Loop { node, component }),
        };
    }
    let witness = find_cycle(&graph).expect("positive first Betti number implies a cycle");
    CompactTypeVerdict {
        compact_type: false,
        witness: Some(witness),
    }
}

/// Grows a BFS spanning forest and closes the first non-tree edge into a
/// cycle through the lowest common ancestor.
fn find_cycle(graph: &DualGraph) -> Option<CompactTypeWitness> {
    let n = graph.vertex_count();
    let adj = graph.adjacency();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree_edge = vec![false; graph.edge_count()];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(v, e) in &adj[u] {
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = Some((u, e));
                    tree_edge[e] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    let (closing, &(a, b)) = graph
        .edges()
        .iter()
        .enumerate()
        .find(|(e, _)| !tree_edge[*e])?;
    if a == b {
        return Some(CompactTypeWitness::Loop {
            node: closing,
            component: a,
        });
    }
    // walk both endpoints up to their common ancestor
    let (mut x, mut y) = (a, b);
    let mut from_a = vec![(a, None)];
    let mut from_b = vec![(b, None)];
    while x != y {
        if depth[x] >= depth[y] {
            let (p, e) = parent[x].expect("non-root has a parent");
            from_a.last_mut().unwrap().1 = Some(e);
            from_a.push((p, None));
            x = p;
        } else {
            let (p, e) = parent[y].expect("non-root has a parent");
            from_b.last_mut().unwrap().1 = Some(e);
            from_b.push((p, None));
            y = p;
        }
    }
    // a → ... → lca, then lca → ... → b, then closing edge back to a
    let mut components: Vec<usize> = from_a.iter().map(|(v, _)| *v).collect();
    let mut nodes: Vec<usize> = from_a.iter().filter_map(|(_, e)| *e).collect();
    from_b.pop();
    for &(v, e) in from_b.iter().rev() {
        nodes.push(e.expect("inner path vertices carry their parent edge"));
        components.push(v);
    }
    nodes.push(closing);
    components.push(a);
    Some(CompactTypeWitness::Cycle { nodes, components })
}

/// Ranks read off the Picard extension `1 → torus → Pic(Y) → ∏ Pic(Cᵢ) → 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicardProfile {
    pub torus_rank: usize,
    pub abelian_dims: Vec<u32>,
}

pub fn picard_extension_profile(curve: &NodalCurve) -> PicardProfile {
    PicardProfile {
        torus_rank: first_betti(&dual_graph(curve)),
        abelian_dims: curve.components().iter().map(|c| 2 * c.genus).collect(),
    }
}

/// Every multidegree `(d₁,…,dₘ)` with `dᵢ ∈ bounds[i]` and `Σdᵢ = total`, in
/// lexicographic order.
pub fn enumerate_multidegrees(
    curve: &NodalCurve,
    total: i64,
    bounds: &[RangeInclusive<i64>],
) -> Result<Vec<Vec<i64>>, CurveError> {
    if bounds.len() != curve.component_count() {
        return Err(CurveError::BoundsLengthMismatch {
            expected: curve.component_count(),
            found: bounds.len(),
        });
    }
    if let Some(component) = bounds.iter().position(|r| r.is_empty()) {
        return Err(CurveError::EmptyBounds { component });
    }
    // suffix_min[i] / suffix_max[i]: attainable sum range of components i..m
    let m = bounds.len();
    let mut suffix_min = vec![0i128; m + 1];
    let mut suffix_max = vec![0i128; m + 1];
    for i in (0..m).rev() {
        suffix_min[i] = suffix_min[i + 1] + *bounds[i].start() as i128;
        suffix_max[i] = suffix_max[i + 1] + *bounds[i].end() as i128;
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fill_multidegrees(
        bounds,
        total as i128,
        &suffix_min,
        &suffix_max,
        &mut current,
        &mut out,
    );
    Ok(out)
}

fn fill_multidegrees(
    bounds: &[RangeInclusive<i64>],
    remaining: i128,
    suffix_min: &[i128],
    suffix_max: &[i128],
    current: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let i = current.len();
    if i == bounds.len() {
        if remaining == 0 {
            out.push(current.clone());
        }
        return;
    }
    if remaining < suffix_min[i] || remaining > suffix_max[i] {
        return;
    }
    let lo = (*bounds[i].start() as i128).max(remaining - suffix_max[i + 1]);
    let hi = (*bounds[i].end() as i128).min(remaining - suffix_min[i + 1]);
    let mut d = lo;
    while d <= hi {
        current.push(d as i64);
        fill_multidegrees(bounds, remaining - d, suffix_min, suffix_max, current, out);
        current.pop();
        d += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(genera: &[u32]) -> NodalCurve {
        let nodes: Vec<_> = (1..genera.len()).map(|i| (i - 1, i)).collect();
        NodalCurve::new(genera, &nodes).unwrap()
    }

    #[test]
    fn dual_graph_counts() {
        let g = dual_graph(&NodalCurve::smooth(2));
        assert_eq!(
            (g.vertex_count(), g.edge_count(), g.connected_components()),
            (1, 0, 1)
        );

        let g = dual_graph(&chain(&[1, 1]));
        assert_eq!(
            (g.vertex_count(), g.edge_count(), g.connected_components()),
            (2, 1, 1)
        );

        let looped = NodalCurve::new(&[1], &[(0, 0)]).unwrap();
        let g = dual_graph(&looped);
        assert_eq!(
            (g.vertex_count(), g.edge_count(), g.connected_components()),
            (1, 1, 1)
        );
        assert_eq!(g.loop_count(), 1);
    }

    #[test]
    fn dangling_node_is_rejected() {
        let err = NodalCurve::new(&[2, 3], &[(0, 7)]).unwrap_err();
        assert_eq!(
            err,
            CurveError::InvalidComponentReference {
                node: 0,
                component: 7,
                component_count: 2
            }
        );
        assert_eq!(
            NodalCurve::new(&[], &[]).unwrap_err(),
            CurveError::NoComponents
        );
    }

    #[test]
    fn first_betti_examples() {
        assert_eq!(first_betti(&dual_graph(&NodalCurve::smooth(0))), 0);
        let triangle = NodalCurve::new(&[1, 1, 1], &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(first_betti(&dual_graph(&triangle)), 1);
        assert_eq!(first_betti(&dual_graph(&chain(&[0, 0]))), 0);
        let two_loops = DualGraph::from_edges(1, vec![(0, 0), (0, 0)]).unwrap();
        assert_eq!(first_betti(&two_loops), 2);
    }

    #[test]
    fn compact_type_examples() {
        let verdict = is_compact_type(&chain(&[1, 2, 3]));
        assert!(verdict.compact_type);
        assert_eq!(verdict.witness, None);

        let looped = NodalCurve::new(&[1], &[(0, 0)]).unwrap();
        assert_eq!(
            is_compact_type(&looped),
            CompactTypeVerdict {
                compact_type: false,
                witness: Some(CompactTypeWitness::Loop {
                    node: 0,
                    component: 0
                })
            }
        );

        let triangle = NodalCurve::new(&[1, 1, 1], &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let verdict = is_compact_type(&triangle);
        assert!(!verdict.compact_type);
        match verdict.witness {
            Some(CompactTypeWitness::Cycle {
                mut nodes,
                components,
            }) => {
                assert_eq!(components.first(), components.last());
                assert_eq!(components.len(), 4);
                nodes.sort();
                assert_eq!(nodes, vec![0, 1, 2]);
            }
            other => panic!("expected a cycle witness, got {other:?}"),
        }

        let disjoint = NodalCurve::new(&[2, 2], &[]).unwrap();
        assert_eq!(
            is_compact_type(&disjoint).witness,
            Some(CompactTypeWitness::Disconnected { components: 2 })
        );
    }

    #[test]
    fn double_edge_cycle_witness() {
        let curve = NodalCurve::new(&[1, 1, 1], &[(0, 1), (1, 2), (2, 1)]).unwrap();
        match is_compact_type(&curve).witness {
            Some(CompactTypeWitness::Cycle { nodes, components }) => {
                assert_eq!(nodes.len(), 2);
                assert_eq!(components.len(), 3);
                for (k, &node) in nodes.iter().enumerate() {
                    let (u, v) = (components[k], components[k + 1]);
                    let NodeSpec { left, right } = curve.nodes()[node];
                    assert!((left, right) == (u, v) || (left, right) == (v, u));
                }
            }
            other => panic!("expected a cycle witness, got {other:?}"),
        }
    }

    #[test]
    fn picard_profile_examples() {
        assert_eq!(
            picard_extension_profile(&NodalCurve::smooth(2)),
            PicardProfile {
                torus_rank: 0,
                abelian_dims: vec![4]
            }
        );
        let looped = NodalCurve::new(&[1], &[(0, 0)]).unwrap();
        assert_eq!(
            picard_extension_profile(&looped),
            PicardProfile {
                torus_rank: 1,
                abelian_dims: vec![2]
            }
        );
        assert_eq!(
            picard_extension_profile(&chain(&[2, 3])),
            PicardProfile {
                torus_rank: 0,
                abelian_dims: vec![4, 6]
            }
        );
    }

    #[test]
    fn multidegree_examples() {
        let two = chain(&[2, 3]);
        assert_eq!(
            enumerate_multidegrees(&two, 1, &[0..=1, 0..=1]).unwrap(),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert!(enumerate_multidegrees(&two, 5, &[0..=1, 0..=1])
            .unwrap()
            .is_empty());
        let one = NodalCurve::smooth(2);
        assert_eq!(
            enumerate_multidegrees(&one, 7, &[7..=7]).unwrap(),
            vec![vec![7]]
        );
        #[allow(clippy::reversed_empty_ranges)]
        let empty = enumerate_multidegrees(&two, 0, &[0..=1, 3..=2]);
        assert_eq!(empty.unwrap_err(), CurveError::EmptyBounds { component: 1 });
        assert!(matches!(
            enumerate_multidegrees(&two, 0, &[0..=1]),
            Err(CurveError::BoundsLengthMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn multidegrees_handle_negative_bounds() {
        let two = chain(&[1, 1]);
        let out = enumerate_multidegrees(&two, 0, &[-1..=1, -1..=1]).unwrap();
        assert_eq!(out, vec![vec![-1, 1], vec![0, 0], vec![1, -1]]);
    }
}
