//! Finite simplicial graphs and the exact combinatorial kernel: complement,
//! induced subgraphs, join decomposition, and the exhaustive induced-subgraph
//! isomorphism solver everything else relies on.
//!
//! Vertices are always `0..order`. The adjacency relation is symmetric and
//! irreflexive; edges are unordered pairs.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
}

/// Undirected simple graph backed by a bit matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// Graph on `order` vertices with no edges.
    pub fn empty(order: usize) -> Graph {
        let words = order.div_ceil(64).max(1);
        Graph {
            order,
            words,
            bits: vec![0u64; order * words],
        }
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(order);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.order {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.order,
            })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.bits[u * self.words + v / 64] |= 1u64 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1u64 << (u % 64);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.adjacent(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        self.bits[u * self.words + v / 64] &= !(1u64 << (v % 64));
        self.bits[v * self.words + u / 64] &= !(1u64 << (u % 64));
        Ok(())
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.order && v < self.order);
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        let row = &self.bits[v * self.words..(v + 1) * self.words];
        row.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order {
            for v in (u + 1)..self.order {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.order).filter(|&u| self.adjacent(v, u)).collect()
    }

    /// Complement graph: same vertices, edges exactly the non-edges.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.order);
        for u in 0..self.order {
            for v in (u + 1)..self.order {
                if !self.adjacent(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    /// Full subgraph induced by `vs`, relabelled canonically by ascending
    /// original index. Returns the graph together with the relabelling map
    /// (new index -> original index). Duplicates in `vs` are rejected via the
    /// sort-dedup; out-of-range vertices are an error.
    pub fn induced(&self, vs: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        let mut sel: Vec<usize> = vs.to_vec();
        sel.sort_unstable();
        sel.dedup();
        for &v in &sel {
            self.check_vertex(v)?;
        }
        let mut g = Graph::empty(sel.len());
        for i in 0..sel.len() {
            for j in (i + 1)..sel.len() {
                if self.adjacent(sel[i], sel[j]) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        Ok((g, sel))
    }

    /// Link and star of `v`: `Lk(v)` is the neighbor set, `St(v) = Lk(v) + {v}`.
    pub fn local_structure(&self, v: usize) -> Result<LocalStructure, GraphError> {
        self.check_vertex(v)?;
        let link = self.neighbors(v);
        let mut star = link.clone();
        star.push(v);
        star.sort_unstable();
        Ok(LocalStructure {
            degree: link.len(),
            link,
            star,
        })
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut comps = Vec::new();
        for start in 0..self.order {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Join-components: the connected components of the complement, each
    /// returned as (vertex set, induced subgraph of `self`).
    pub fn join_decomposition(&self) -> Vec<(Vec<usize>, Graph)> {
        self.complement()
            .connected_components()
            .into_iter()
            .map(|vs| {
                let (g, _) = self.induced(&vs).unwrap();
                (vs, g)
            })
            .collect()
    }

    // Named families.

    /// Path graph `P_n` (0-1-2-...-(n-1)); `P_1` is a single vertex.
    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.add_edge(i - 1, i).unwrap();
        }
        g
    }

    /// Cycle graph `C_n`, `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle graph requires at least 3 vertices");
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0).unwrap();
        g
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// Complete r-partite graph with all parts of size 2: the complement of
    /// r disjoint edges. Part i is {2i, 2i+1}.
    pub fn kr2(r: usize) -> Graph {
        let mut g = Graph::complete(2 * r);
        for i in 0..r {
            g.remove_edge(2 * i, 2 * i + 1).unwrap();
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.order;
        let mut g = Graph::empty(n + other.order);
        for (u, v) in self.edges() {
            g.add_edge(u, v).unwrap();
        }
        for (u, v) in other.edges() {
            g.add_edge(n + u, n + v).unwrap();
        }
        g
    }

    /// Join: disjoint union plus all cross edges.
    pub fn join(&self, other: &Graph) -> Graph {
        let n = self.order;
        let mut g = self.disjoint_union(other);
        for u in 0..n {
            for v in 0..other.order {
                g.add_edge(u, n + v).unwrap();
            }
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(order={}, edges={:?})", self.order, self.edges())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalStructure {
    pub degree: usize,
    pub link: Vec<usize>,
    pub star: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("map length {got} does not match source order {want}")]
    MapLength { got: usize, want: usize },
    #[error("map value {0} out of range for target")]
    MapOutOfRange(usize),
    #[error("map is not injective: {0} and {1} share image {2}")]
    NotInjective(usize, usize, usize),
    #[error("adjacency mismatch on source pair ({0}, {1})")]
    NotFull(usize, usize),
}

/// An injective vertex map certifying `source` as a full (induced) subgraph
/// of `target`: edges and non-edges are both preserved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingWitness {
    pub source: Graph,
    pub target: Graph,
    pub map: Vec<usize>,
}

impl EmbeddingWitness {
    pub fn identity(g: &Graph) -> EmbeddingWitness {
        EmbeddingWitness {
            source: g.clone(),
            target: g.clone(),
            map: (0..g.order()).collect(),
        }
    }

    pub fn validate(&self) -> Result<(), WitnessError> {
        let n = self.source.order();
        if self.map.len() != n {
            return Err(WitnessError::MapLength {
                got: self.map.len(),
                want: n,
            });
        }
        for &img in &self.map {
            if img >= self.target.order() {
                return Err(WitnessError::MapOutOfRange(img));
            }
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if self.map[u] == self.map[v] {
                    return Err(WitnessError::NotInjective(u, v, self.map[u]));
                }
                if self.source.adjacent(u, v) != self.target.adjacent(self.map[u], self.map[v]) {
                    return Err(WitnessError::NotFull(u, v));
                }
            }
        }
        Ok(())
    }
}

/// Outcome of the budgeted exact search. `Absent` is only returned when the
/// search tree was exhausted, so it is a proof of non-embeddability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search {
    Found(EmbeddingWitness),
    Absent { nodes: u64 },
    OutOfBudget { nodes: u64 },
}

impl Search {
    pub fn witness(&self) -> Option<&EmbeddingWitness> {
        match self {
            Search::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }
}

pub const DEFAULT_SOLVER_BUDGET: u64 = 10_000_000;

struct SearchState<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    order: Vec<usize>,
    assigned: Vec<usize>,
    used: Vec<bool>,
    pat_deg: Vec<usize>,
    host_deg: Vec<usize>,
    nodes: u64,
    budget: u64,
    out_of_budget: bool,
}

impl<'a> SearchState<'a> {
    fn new(pattern: &'a Graph, host: &'a Graph, budget: u64) -> SearchState<'a> {
        let pat_deg: Vec<usize> = (0..pattern.order()).map(|v| pattern.degree(v)).collect();
        let host_deg: Vec<usize> = (0..host.order()).map(|v| host.degree(v)).collect();
        // Most-constrained first: descending pattern degree, ties by index.
        let mut order: Vec<usize> = (0..pattern.order()).collect();
        order.sort_by(|&a, &b| pat_deg[b].cmp(&pat_deg[a]).then(a.cmp(&b)));
        SearchState {
            pattern,
            host,
            order,
            assigned: vec![usize::MAX; pattern.order()],
            used: vec![false; host.order()],
            pat_deg,
            host_deg,
            nodes: 0,
            budget,
            out_of_budget: false,
        }
    }

    /// Returns false if the visitor asked to stop.
    fn run<F: FnMut(&[usize]) -> bool>(&mut self, depth: usize, visit: &mut F) -> bool {
        if depth == self.order.len() {
            return visit(&self.assigned);
        }
        let pv = self.order[depth];
        let pn = self.pattern.order();
        let hn = self.host.order();
        for hv in 0..hn {
            if self.used[hv] {
                continue;
            }
            if self.host_deg[hv] < self.pat_deg[pv] {
                continue;
            }
            if hn - 1 - self.host_deg[hv] < pn - 1 - self.pat_deg[pv] {
                continue;
            }
            let mut ok = true;
            for d in 0..depth {
                let pu = self.order[d];
                let hu = self.assigned[pu];
                if self.pattern.adjacent(pv, pu) != self.host.adjacent(hv, hu) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.out_of_budget = true;
                return false;
            }
            self.assigned[pv] = hv;
            self.used[hv] = true;
            let go_on = self.run(depth + 1, visit);
            self.used[hv] = false;
            self.assigned[pv] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Exact search for a full (induced) embedding of `pattern` into `host`.
/// Exhaustive backtracking over injective maps with degree and adjacency
/// pruning; `budget` caps the number of node expansions.
pub fn find_full_embedding(pattern: &Graph, host: &Graph, budget: u64) -> Search {
    let mut state = SearchState::new(pattern, host, budget);
    let mut found: Option<Vec<usize>> = None;
    state.run(0, &mut |map| {
        found = Some(map.to_vec());
        false
    });
    if let Some(map) = found {
        return Search::Found(EmbeddingWitness {
            source: pattern.clone(),
            target: host.clone(),
            map,
        });
    }
    if state.out_of_budget {
        Search::OutOfBudget { nodes: state.nodes }
    } else {
        Search::Absent { nodes: state.nodes }
    }
}

/// All full embeddings of `pattern` into `host`. The `complete` flag is false
/// when the budget ran out before the search tree was exhausted.
pub fn enumerate_full_embeddings(
    pattern: &Graph,
    host: &Graph,
    budget: u64,
) -> (Vec<Vec<usize>>, bool) {
    let mut state = SearchState::new(pattern, host, budget);
    let mut all = Vec::new();
    state.run(0, &mut |map| {
        all.push(map.to_vec());
        true
    });
    (all, !state.out_of_budget)
}

/// Isomorphism test via full embeddings in both directions at equal order.
pub fn isomorphic(a: &Graph, b: &Graph, budget: u64) -> bool {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.order()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.order()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    // At equal order a full embedding is a bijection, hence an isomorphism.
    find_full_embedding(a, b, budget).is_found()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_examples() {
        // C_4 complement is two disjoint edges.
        let c4 = Graph::cycle(4);
        let cc = c4.complement();
        assert_eq!(cc.edge_count(), 2);
        assert_eq!(cc.edges(), vec![(0, 2), (1, 3)]);
        // P_4 is self-complementary up to isomorphism.
        let p4 = Graph::path(4);
        assert!(isomorphic(&p4, &p4.complement(), 1 << 20));
        // A single vertex is fixed.
        let p1 = Graph::path(1);
        assert_eq!(p1.complement(), p1);
    }

    #[test]
    fn complement_involution_small_exhaustive() {
        for n in 0..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                assert_eq!(g.complement().complement(), g);
            }
        }
    }

    #[test]
    fn induced_examples() {
        let p3 = Graph::path(3);
        let (g, map) = p3.induced(&[0, 2]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(map, vec![0, 2]);

        let c4 = Graph::cycle(4);
        for omit in 0..4 {
            let vs: Vec<usize> = (0..4).filter(|&v| v != omit).collect();
            let (g, _) = c4.induced(&vs).unwrap();
            assert!(isomorphic(&g, &Graph::path(3), 1 << 16));
        }

        let k3 = Graph::complete(3);
        let (g, _) = k3.induced(&[0, 1]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);

        assert!(p3.induced(&[0, 5]).is_err());
    }

    #[test]
    fn induced_consistency_with_subsets() {
        // Taking an induced subgraph of an induced subgraph matches taking
        // it directly from the ambient graph.
        let c5 = Graph::cycle(5);
        let (h, map) = c5.induced(&[0, 1, 2, 3]).unwrap();
        let (hh, submap) = h.induced(&[0, 1, 2]).unwrap();
        let orig: Vec<usize> = submap.iter().map(|&i| map[i]).collect();
        let (direct, _) = c5.induced(&orig).unwrap();
        assert_eq!(hh, direct);
    }

    #[test]
    fn local_structure_examples() {
        // K_{1,3}: center 0 adjacent to 1,2,3.
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let ls = star.local_structure(0).unwrap();
        assert_eq!(ls.degree, 3);
        assert_eq!(ls.link, vec![1, 2, 3]);
        assert_eq!(ls.star, vec![0, 1, 2, 3]);

        let iso = Graph::empty(2);
        let ls = iso.local_structure(1).unwrap();
        assert_eq!(ls.degree, 0);
        assert!(ls.link.is_empty());
        assert_eq!(ls.star, vec![1]);

        let c6 = Graph::cycle(6);
        for v in 0..6 {
            assert_eq!(c6.degree(v), 2);
        }
        assert!(c6.local_structure(6).is_err());
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)]).unwrap();
        let sum: usize = (0..5).map(|v| g.degree(v)).sum();
        assert_eq!(sum, 2 * g.edge_count());
    }

    #[test]
    fn solver_examples() {
        // K_3 has no full embedding into K_2.
        let res = find_full_embedding(&Graph::complete(3), &Graph::complete(2), 1 << 16);
        assert!(matches!(res, Search::Absent { .. }));

        // P_4 embeds into C_5 as four consecutive cycle vertices.
        let res = find_full_embedding(&Graph::path(4), &Graph::cycle(5), 1 << 16);
        let w = res.witness().expect("P_4 <= C_5");
        w.validate().unwrap();

        // Any graph embeds into itself.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let res = find_full_embedding(&g, &g, 1 << 16);
        assert!(res.is_found());

        // The empty pattern embeds everywhere.
        let res = find_full_embedding(&Graph::empty(0), &Graph::complete(3), 16);
        assert!(res.is_found());
    }

    #[test]
    fn solver_is_exhaustive_not_heuristic() {
        // C_5 is not an induced subgraph of C_6 even though degrees match.
        let res = find_full_embedding(&Graph::cycle(5), &Graph::cycle(6), 1 << 20);
        assert!(matches!(res, Search::Absent { .. }));
    }

    #[test]
    fn out_of_budget_is_distinct_from_absent() {
        let res = find_full_embedding(&Graph::complete(5), &Graph::complete(9), 3);
        assert!(matches!(res, Search::OutOfBudget { .. }));
    }

    #[test]
    fn join_decomposition_examples() {
        // K_2 is the join of two points.
        let k2 = Graph::complete(2);
        let comps = k2.join_decomposition();
        assert_eq!(comps.len(), 2);
        for (vs, g) in &comps {
            assert_eq!(vs.len(), 1);
            assert_eq!(g.order(), 1);
        }

        // Two disjoint edges have a connected complement (C_4): one component.
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_edges.join_decomposition().len(), 1);

        // C_4 splits as the join of two non-adjacent pairs.
        let c4 = Graph::cycle(4);
        let comps = c4.join_decomposition();
        assert_eq!(comps.len(), 2);
        for (vs, g) in &comps {
            assert_eq!(vs.len(), 2);
            assert_eq!(g.edge_count(), 0);
        }
    }

    #[test]
    fn join_decomposition_reassembles_the_graph() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)]).unwrap();
        let comps = g.join_decomposition();
        let mut joined = Graph::empty(0);
        for (_, part) in &comps {
            joined = joined.join(part);
        }
        assert!(isomorphic(&joined, &g, 1 << 20));
    }

    #[test]
    fn isomorphic_basic() {
        assert!(isomorphic(&Graph::path(4), &Graph::path(4), 1 << 16));
        assert!(!isomorphic(&Graph::path(4), &Graph::cycle(4), 1 << 16));
        assert!(isomorphic(&Graph::empty(0), &Graph::empty(0), 16));
    }
}
