//! Shared helpers for the integration suites: exhaustive enumeration of
//! small graphs and trees up to isomorphism, and seeded random trees.

use rand::Rng;
use raag::graph::{isomorphic, Graph};

const ISO_BUDGET: u64 = 1 << 22;

/// Cheap isomorphism invariant used to bucket candidates before running the
/// exact check: order, edge count, sorted degrees, sorted per-vertex
/// triangle counts.
fn invariant_key(g: &Graph) -> (usize, usize, Vec<usize>, Vec<usize>) {
    let n = g.order();
    let mut degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut triangles = vec![0usize; n];
    for u in 0..n {
        for v in (u + 1)..n {
            if !g.adjacent(u, v) {
                continue;
            }
            for w in (v + 1)..n {
                if g.adjacent(u, w) && g.adjacent(v, w) {
                    triangles[u] += 1;
                    triangles[v] += 1;
                    triangles[w] += 1;
                }
            }
        }
    }
    degrees.sort_unstable();
    triangles.sort_unstable();
    (n, g.edge_count(), degrees, triangles)
}

fn insert_up_to_iso(
    buckets: &mut std::collections::HashMap<(usize, usize, Vec<usize>, Vec<usize>), Vec<Graph>>,
    g: Graph,
) {
    let key = invariant_key(&g);
    let bucket = buckets.entry(key).or_default();
    if !bucket.iter().any(|h| isomorphic(h, &g, ISO_BUDGET)) {
        bucket.push(g);
    }
}

/// All graphs on exactly `n` vertices, one representative per isomorphism
/// class, built by extending the (n-1)-vertex representatives with a fresh
/// vertex over every neighborhood.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let mut current = vec![Graph::empty(0)];
    for k in 1..=n {
        let mut buckets = std::collections::HashMap::new();
        for g in &current {
            for mask in 0u64..(1 << (k - 1)) {
                let mut edges: Vec<(usize, usize)> = g.edges();
                for u in 0..(k - 1) {
                    if mask >> u & 1 == 1 {
                        edges.push((u, k - 1));
                    }
                }
                insert_up_to_iso(&mut buckets, Graph::from_edges(k, &edges).unwrap());
            }
        }
        current = buckets.into_values().flatten().collect();
        current.sort_by_key(|g| (g.edge_count(), g.edges()));
    }
    current
}

/// Representatives of every isomorphism class with between 1 and `max`
/// vertices.
pub fn all_graphs_up_to_iso(max: usize) -> Vec<Graph> {
    (1..=max).flat_map(graphs_up_to_iso).collect()
}

/// All trees on exactly `n` vertices up to isomorphism, built by attaching
/// a leaf everywhere on the (n-1)-vertex trees.
pub fn trees_up_to_iso(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut current = vec![Graph::empty(1)];
    for k in 2..=n {
        let mut buckets = std::collections::HashMap::new();
        for t in &current {
            for attach in 0..(k - 1) {
                let mut edges = t.edges();
                edges.push((attach, k - 1));
                insert_up_to_iso(&mut buckets, Graph::from_edges(k, &edges).unwrap());
            }
        }
        current = buckets.into_values().flatten().collect();
        current.sort_by_key(|g| g.edges());
    }
    current
}

/// Uniform random labeled tree on `n >= 2` vertices from a Prüfer sequence.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    assert!(n >= 2);
    if n == 2 {
        return Graph::path(2);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).unwrap();
        edges.push(if leaf < v { (leaf, v) } else { (v, leaf) });
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, &edges).unwrap()
}
