//! Reaction graph analysis: strong components, cross-component edges and
//! weak reversibility.

use alloc::collections::btree_set;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::network::KirchhoffMatrix;
use crate::Scalar;

/// Directed reaction `source -> target` between complex indices (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
}

impl Edge {
    pub const fn new(source: usize, target: usize) -> Self {
        Self { source, target }
    }
}

impl fmt::Display for Edge {
    /// 1-based, matching the usual complex numbering `C1..Cm`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.source + 1, self.target + 1)
    }
}

impl From<(usize, usize)> for Edge {
    fn from((source, target): (usize, usize)) -> Self {
        Self { source, target }
    }
}

/// Ordered set of distinct directed edges without self-loops.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeSet(BTreeSet<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts an edge; self-loops are ignored. Returns whether it was new.
    pub fn insert(&mut self, edge: Edge) -> bool {
        edge.source != edge.target && self.0.insert(edge)
    }

    pub fn contains(&self, edge: &Edge) -> bool {
        self.0.contains(edge)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> btree_set::Iter<'_, Edge> {
        self.0.iter()
    }

    pub fn union_with(&mut self, other: &EdgeSet) {
        self.0.extend(other.iter().copied());
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.difference(&other.0).copied().collect())
    }

    /// Largest vertex index referenced plus one.
    pub fn vertex_bound(&self) -> usize {
        self.iter().map(|e| e.source.max(e.target) + 1).max().unwrap_or(0)
    }

    /// Relabels both endpoints with `map[old] = new`.
    pub fn relabel(&self, map: &[usize]) -> EdgeSet {
        self.iter().map(|e| Edge::new(map[e.source], map[e.target])).collect()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        let mut set = EdgeSet::new();
        for e in iter {
            set.insert(e);
        }
        set
    }
}

impl FromIterator<(usize, usize)> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        iter.into_iter().map(Edge::from).collect()
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = btree_set::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Unweighted reaction graph over `vertex_count` complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReactionGraph {
    vertex_count: usize,
    edges: EdgeSet,
    successors: Vec<Vec<usize>>,
    predecessors: Vec<Vec<usize>>,
}

impl ReactionGraph {
    /// # Panics
    /// If an edge references a vertex `>= vertex_count`.
    pub fn new(vertex_count: usize, edges: EdgeSet) -> Self {
        assert!(edges.vertex_bound() <= vertex_count, "edge index out of range");
        let mut successors = vec![Vec::new(); vertex_count];
        let mut predecessors = vec![Vec::new(); vertex_count];
        for e in &edges {
            successors[e.source].push(e.target);
            predecessors[e.target].push(e.source);
        }
        Self {
            vertex_count,
            edges,
            successors,
            predecessors,
        }
    }

    /// Support graph of a Kirchhoff matrix: edges with rate above `threshold`.
    pub fn from_kirchhoff<S: Scalar>(a: &KirchhoffMatrix<S>, threshold: S) -> Self {
        Self::new(a.size(), a.support_above(threshold))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.successors[v]
    }

    /// Weakly connected components, each sorted, ordered by smallest vertex.
    /// Isolated vertices form singleton components.
    pub fn linkage_classes(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut classes = Vec::new();
        for start in 0..self.vertex_count {
            if label[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            let mut stack = vec![start];
            label[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for &w in self.successors[v].iter().chain(&self.predecessors[v]) {
                    if label[w] == usize::MAX {
                        label[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }
}

/// Strong component labelling of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccPartition {
    /// Component label of each vertex.
    pub component_id: Vec<usize>,
    /// Sorted vertex lists, ordered by their smallest vertex.
    pub components: Vec<Vec<usize>>,
}

impl SccPartition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.components.iter().filter(|c| c.len() > 1)
    }

    pub fn same_component(&self, a: usize, b: usize) -> bool {
        self.component_id[a] == self.component_id[b]
    }

    /// Edges of the graph obtained by contracting each component to a vertex.
    pub fn condensation(&self, graph: &ReactionGraph) -> EdgeSet {
        graph
            .edges()
            .iter()
            .filter(|e| !self.same_component(e.source, e.target))
            .map(|e| Edge::new(self.component_id[e.source], self.component_id[e.target]))
            .collect()
    }
}

/// Kosaraju's algorithm, iterative.
pub fn strong_components(graph: &ReactionGraph) -> SccPartition {
    let n = graph.vertex_count;
    // first pass: finishing order on the forward graph
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut stack = vec![(start, 0usize)];
        while let Some((v, next)) = stack.last_mut() {
            if let Some(&w) = graph.successors[*v].get(*next) {
                *next += 1;
                if !visited[w] {
                    visited[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(*v);
                stack.pop();
            }
        }
    }

    // second pass: reverse graph in decreasing finishing time
    let mut raw = vec![usize::MAX; n];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &root in order.iter().rev() {
        if raw[root] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut members = vec![root];
        raw[root] = id;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &graph.predecessors[v] {
                if raw[w] == usize::MAX {
                    raw[w] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        groups.push(members);
    }

    groups.sort_by_key(|g| g[0]);
    let mut component_id = vec![0; n];
    for (id, g) in groups.iter().enumerate() {
        for &v in g {
            component_id[v] = id;
        }
    }
    SccPartition {
        component_id,
        components: groups,
    }
}

/// Reactions of `a` whose endpoints lie in different strong components.
pub fn find_cross_component_edges<S: Scalar>(a: &KirchhoffMatrix<S>) -> EdgeSet {
    cross_component_edges(&ReactionGraph::from_kirchhoff(a, S::zero()))
}

pub(crate) fn cross_component_edges(graph: &ReactionGraph) -> EdgeSet {
    let scc = strong_components(graph);
    graph
        .edges()
        .iter()
        .filter(|e| !scc.same_component(e.source, e.target))
        .copied()
        .collect()
}

/// True iff the network has at least two reactions and every reaction lies
/// inside a strong component.
pub fn is_weakly_reversible<S: Scalar>(a: &KirchhoffMatrix<S>) -> bool {
    graph_is_weakly_reversible(&ReactionGraph::from_kirchhoff(a, S::zero()))
}

pub(crate) fn graph_is_weakly_reversible(graph: &ReactionGraph) -> bool {
    graph.edges().len() >= 2 && cross_component_edges(graph).is_empty()
}
