//! Recognizers and degree-class bookkeeping: linear forests, paths, cycles,
//! trees, the degree classes V_n / V_3^e / V_3^k / V_3^*, the tree excess m,
//! and condition (C).

use crate::graph::Graph;

/// Multiset of path orders of a linear forest, sorted ascending. Isolated
/// vertices count as paths of order 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForestDecomposition {
    pub path_lengths: Vec<usize>,
}

/// Constructive witness that a graph is not a linear forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForestRefusal {
    /// A vertex of degree at least 3.
    HighDegreeVertex(usize),
    /// An induced cycle, listed in traversal order.
    InducedCycle(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearForestOutcome {
    Forest(LinearForestDecomposition),
    Refusal(ForestRefusal),
}

impl LinearForestOutcome {
    pub fn decomposition(&self) -> Option<&LinearForestDecomposition> {
        match self {
            LinearForestOutcome::Forest(d) => Some(d),
            LinearForestOutcome::Refusal(_) => None,
        }
    }

    pub fn is_forest(&self) -> bool {
        matches!(self, LinearForestOutcome::Forest(_))
    }
}

/// Decide whether `g` is a disjoint union of paths. On refusal the witness is
/// the smallest-index vertex of degree >= 3 when one exists, otherwise a
/// cycle found by walking a component in which every degree is <= 2.
pub fn linear_forest(g: &Graph) -> LinearForestOutcome {
    for v in 0..g.order() {
        if g.degree(v) >= 3 {
            return LinearForestOutcome::Refusal(ForestRefusal::HighDegreeVertex(v));
        }
    }
    let mut path_lengths = Vec::new();
    for comp in g.connected_components() {
        // All degrees are <= 2, so each component is a path or a cycle; it is
        // a path exactly when some vertex has degree <= 1 within it.
        let start = comp.iter().copied().find(|&v| g.degree(v) <= 1);
        match start {
            Some(s) => {
                debug_assert_eq!(trace_from(g, s).len(), comp.len());
                path_lengths.push(comp.len());
            }
            None => {
                let cycle = trace_from(g, comp[0]);
                return LinearForestOutcome::Refusal(ForestRefusal::InducedCycle(cycle));
            }
        }
    }
    path_lengths.sort_unstable();
    LinearForestOutcome::Forest(LinearForestDecomposition { path_lengths })
}

/// Walk a component of max degree <= 2 starting at `start`, never revisiting.
/// Starting from an endpoint yields the path order; starting inside a cycle
/// yields the cycle order.
fn trace_from(g: &Graph, start: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g
            .neighbors(cur)
            .into_iter()
            .find(|&u| u != prev && u != start);
        match next {
            Some(u) => {
                order.push(u);
                prev = cur;
                cur = u;
            }
            None => return order,
        }
    }
}

/// If `g` is a path, return its vertices in traversal order (smaller-index
/// endpoint first). `P_1` is a single vertex; the empty graph is not a path.
pub fn as_path(g: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    if n == 0 || !g.is_connected() {
        return None;
    }
    if n == 1 {
        return Some(vec![0]);
    }
    let ends: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 1).collect();
    if ends.len() != 2 || (0..n).any(|v| g.degree(v) > 2) {
        return None;
    }
    let order = trace_from(g, ends[0]);
    (order.len() == n).then_some(order)
}

/// If `g` is a cycle, return its vertices in traversal order starting at
/// vertex 0.
pub fn as_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    if n < 3 || !g.is_connected() || (0..n).any(|v| g.degree(v) != 2) {
        return None;
    }
    let order = trace_from(g, 0);
    (order.len() == n).then_some(order)
}

/// The degree classes the case analyses pivot on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeClasses {
    /// `by_degree[n]` = vertices of degree exactly n.
    pub by_degree: Vec<Vec<usize>>,
    /// Degree-3 vertices whose link is edgeless.
    pub v3_edgeless: Vec<usize>,
    /// Degree-3 vertices whose link is complete.
    pub v3_complete: Vec<usize>,
    /// Degree-3 vertices whose link contains an edge (V_3 minus v3_edgeless).
    pub v3_star: Vec<usize>,
}

impl DegreeClasses {
    pub fn degree_class(&self, n: usize) -> &[usize] {
        self.by_degree.get(n).map_or(&[], |v| v.as_slice())
    }
}

pub fn degree_classes(g: &Graph) -> DegreeClasses {
    let mut by_degree = vec![Vec::new(); g.max_degree() + 1];
    for v in 0..g.order() {
        by_degree[g.degree(v)].push(v);
    }
    let mut v3_edgeless = Vec::new();
    let mut v3_complete = Vec::new();
    let mut v3_star = Vec::new();
    if by_degree.len() > 3 {
        for &v in &by_degree[3] {
            let link = g.neighbors(v);
            let mut link_edges = 0;
            for i in 0..link.len() {
                for j in (i + 1)..link.len() {
                    if g.adjacent(link[i], link[j]) {
                        link_edges += 1;
                    }
                }
            }
            if link_edges == 0 {
                v3_edgeless.push(v);
            } else {
                v3_star.push(v);
                if link_edges == 3 {
                    v3_complete.push(v);
                }
            }
        }
    }
    DegreeClasses {
        by_degree,
        v3_edgeless,
        v3_complete,
        v3_star,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeMeasures {
    pub is_tree: bool,
    /// Tree excess m = sum over vertices of max(deg - 3, 0).
    pub m: usize,
    /// Every degree-3 vertex has only degree-2 neighbors. Vacuously true
    /// when there is no degree-3 vertex; callers gate on `is_tree`.
    pub condition_c: bool,
    pub max_degree: usize,
}

pub fn tree_measures(g: &Graph) -> TreeMeasures {
    let n = g.order();
    let is_tree = n >= 1 && g.is_connected() && g.edge_count() == n - 1;
    let m = (0..n).map(|v| g.degree(v).saturating_sub(3)).sum();
    let condition_c = (0..n)
        .filter(|&v| g.degree(v) == 3)
        .all(|v| g.neighbors(v).iter().all(|&u| g.degree(u) == 2));
    TreeMeasures {
        is_tree,
        m,
        condition_c,
        max_degree: g.max_degree(),
    }
}
