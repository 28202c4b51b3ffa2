//! Graph-building moves: the double along a star, edge subdivision, the
//! (+/-)-constructions, tree flattening, the counterexample generator for
//! non-linear-forest sources, and the constructive retraction of a full
//! embedding out of a double.

use thiserror::Error;

use crate::certificates::{Certificate, Convention, NonEmbedReport, Step};
use crate::classify::{as_cycle, as_path, degree_classes, linear_forest, tree_measures};
use crate::graph::{find_full_embedding, EmbeddingWitness, Graph, GraphError, Search, WitnessError};

/// The double of a graph along the star of a vertex, with both canonical
/// injections of the original graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleResult {
    pub graph: Graph,
    pub v: usize,
    /// St(v) in the original graph, ascending.
    pub star: Vec<usize>,
    /// Vertices outside St(v), ascending; the copy of `off_star[i]` is
    /// vertex `n + i` of the double, where n is the original order.
    pub off_star: Vec<usize>,
    /// Embedding of the original graph as the base copy (the identity).
    pub base_injection: Vec<usize>,
    /// Embedding of the original graph as the second copy; agrees with the
    /// base injection exactly on St(v).
    pub copy_injection: Vec<usize>,
}

/// The double D_v of a graph along St(v): two copies glued along the star.
/// The base copy keeps the original indices 0..n-1; the duplicated off-star
/// vertices get fresh indices n.. in ascending original order.
pub fn double(g: &Graph, v: usize) -> Result<DoubleResult, GraphError> {
    let n = g.order();
    let star = g.local_structure(v)?.star;
    let in_star = {
        let mut b = vec![false; n];
        for &s in &star {
            b[s] = true;
        }
        b
    };
    let off_star: Vec<usize> = (0..n).filter(|&u| !in_star[u]).collect();
    let mut copy_injection: Vec<usize> = (0..n).collect();
    for (i, &u) in off_star.iter().enumerate() {
        copy_injection[u] = n + i;
    }
    let mut d = Graph::empty(n + off_star.len());
    for (a, b) in g.edges() {
        d.add_edge(a, b).unwrap();
        if copy_injection[a] != a || copy_injection[b] != b {
            d.add_edge(copy_injection[a], copy_injection[b]).unwrap();
        }
    }
    Ok(DoubleResult {
        graph: d,
        v,
        star,
        off_star,
        base_injection: (0..n).collect(),
        copy_injection,
    })
}

/// Subdivide the edge (u, w): remove it and route it through a fresh vertex,
/// whose index (the old order) is returned alongside the new graph.
pub fn subdivide(g: &Graph, u: usize, w: usize) -> Result<(Graph, usize), GraphError> {
    if u >= g.order() || w >= g.order() || !g.adjacent(u, w) {
        if u >= g.order() {
            return Err(GraphError::VertexOutOfRange {
                vertex: u,
                order: g.order(),
            });
        }
        if w >= g.order() {
            return Err(GraphError::VertexOutOfRange {
                vertex: w,
                order: g.order(),
            });
        }
        return Err(GraphError::NotAnEdge(u, w));
    }
    let fresh = g.order();
    let mut out = Graph::empty(fresh + 1);
    for (a, b) in g.edges() {
        out.add_edge(a, b).unwrap();
    }
    out.remove_edge(u, w).unwrap();
    out.add_edge(u, fresh).unwrap();
    out.add_edge(w, fresh).unwrap();
    Ok((out, fresh))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PMError {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("degree of {0} is less than 2")]
    DegreeTooSmall(usize),
    #[error("w1 and w2 must be distinct")]
    EqualWs,
    #[error("{0} is not in the link of {1}")]
    NotInLink(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PMResult {
    pub graph: Graph,
    pub new_vertex: usize,
    pub sign: Sign,
    pub u: usize,
    pub w1: usize,
    pub w2: usize,
}

/// The (+/-)-construction: rewire the star edges [u,w1], [u,w2] through a
/// fresh degree-3 vertex; the (+) variant restores the edge [u,w2].
pub fn pm_construction(
    g: &Graph,
    u: usize,
    w1: usize,
    w2: usize,
    sign: Sign,
) -> Result<PMResult, PMError> {
    for x in [u, w1, w2] {
        if x >= g.order() {
            return Err(PMError::VertexOutOfRange {
                vertex: x,
                order: g.order(),
            });
        }
    }
    if g.degree(u) < 2 {
        return Err(PMError::DegreeTooSmall(u));
    }
    if w1 == w2 {
        return Err(PMError::EqualWs);
    }
    for w in [w1, w2] {
        if !g.adjacent(u, w) {
            return Err(PMError::NotInLink(w, u));
        }
    }
    let v = g.order();
    let mut out = Graph::empty(v + 1);
    for (a, b) in g.edges() {
        out.add_edge(a, b).unwrap();
    }
    out.remove_edge(u, w1).unwrap();
    out.remove_edge(u, w2).unwrap();
    out.add_edge(v, w1).unwrap();
    out.add_edge(v, u).unwrap();
    out.add_edge(v, w2).unwrap();
    if sign == Sign::Plus {
        out.add_edge(u, w2).unwrap();
    }
    Ok(PMResult {
        graph: out,
        new_vertex: v,
        sign,
        u,
        w1,
        w2,
    })
}

/// Certificate steps for the group embedding induced by a (+/-) move, on the
/// complement side: the source complement sits inside the double of the
/// result's complement along the star of the new vertex, identically except
/// that u lands on its copy; collapsing the double finishes the chain.
pub fn pm_steps(source: &Graph, pm: &PMResult) -> Vec<Step> {
    let target_c = pm.graph.complement();
    let dbl = double(&target_c, pm.new_vertex).expect("new vertex is in range");
    let mut map: Vec<usize> = (0..source.order()).collect();
    map[pm.u] = dbl.copy_injection[pm.u];
    vec![
        Step::Full {
            target: dbl.graph.clone(),
            map,
        },
        Step::DoubleCollapse {
            v: pm.new_vertex,
            target: target_c,
            iso_map: (0..dbl.graph.order()).collect(),
        },
    ]
}

/// Subdivide edge (a, b) of `x` and emit the certificate steps for the group
/// embedding of `x` into the subdivision, on the complement side: the source
/// complement embeds into the double of the subdivision's complement along
/// the star of the fresh vertex, identically except that b lands on its
/// copy. Returns the subdivided graph, the fresh vertex, and the steps.
pub fn subdivision_steps(
    x: &Graph,
    a: usize,
    b: usize,
) -> Result<(Graph, usize, Vec<Step>), GraphError> {
    let (subdivided, fresh) = subdivide(x, a, b)?;
    let target_c = subdivided.complement();
    let dbl = double(&target_c, fresh).unwrap();
    let mut map: Vec<usize> = (0..x.order()).collect();
    map[b] = dbl.copy_injection[b];
    let steps = vec![
        Step::Full {
            target: dbl.graph.clone(),
            map,
        },
        Step::DoubleCollapse {
            v: fresh,
            target: target_c,
            iso_map: (0..dbl.graph.order()).collect(),
        },
    ];
    Ok((subdivided, fresh, steps))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FlattenError {
    #[error("input is not a tree")]
    NotATree,
}

/// Repeatedly apply (-) moves at vertices of degree >= 4 until the maximum
/// degree drops to 3. Each move grows the tree by one vertex and lowers the
/// excess m by one, so the result has order |t| + m(t). The certificate
/// witnesses the group embedding of the input into the result.
pub fn flatten_tree(t: &Graph) -> Result<(Graph, Certificate), FlattenError> {
    if !tree_measures(t).is_tree {
        return Err(FlattenError::NotATree);
    }
    let mut current = t.clone();
    let mut steps = Vec::new();
    while current.max_degree() >= 4 {
        let u = (0..current.order())
            .find(|&v| current.degree(v) >= 4)
            .unwrap();
        let nb = current.neighbors(u);
        let pm = pm_construction(&current, u, nb[0], nb[1], Sign::Minus).unwrap();
        steps.extend(pm_steps(&current, &pm));
        current = pm.graph;
    }
    let cert = Certificate {
        convention: Convention::G,
        lhs: t.clone(),
        rhs: current.clone(),
        steps,
    };
    Ok((current, cert))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CounterexampleError {
    #[error("input is a linear forest")]
    InputIsLinearForest,
    #[error("solver budget exhausted after {nodes} nodes while re-verifying non-embeddability")]
    BudgetExhausted { nodes: u64 },
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleResult {
    pub gamma: Graph,
    pub certificate: Certificate,
    pub report: NonEmbedReport,
}

/// For a source that is not a linear forest, produce a host graph admitting
/// the group embedding but not the graph embedding. The dispatch: maximum
/// degree <= 2 uses disjoint long cycles; >= 4 uses a (-) move at a
/// max-degree vertex; degree 3 with all degree-3 links edgeless uses a (+)
/// move (preferring a low-degree w2); degree 3 with an edge in some link
/// uses a (-) move there. Non-embeddability is re-verified by exhaustive
/// search rather than trusted.
pub fn counterexample(
    g: &Graph,
    solver_budget: u64,
) -> Result<CounterexampleResult, CounterexampleError> {
    if linear_forest(g).is_forest() {
        return Err(CounterexampleError::InputIsLinearForest);
    }
    let (gamma, steps) = if g.max_degree() <= 2 {
        disjoint_cycle_host(g)?
    } else {
        let (u, w1, w2, sign) = pm_choice(g);
        let pm = pm_construction(g, u, w1, w2, sign)
            .map_err(|e| CounterexampleError::Internal(e.to_string()))?;
        let steps = pm_steps(g, &pm);
        (pm.graph, steps)
    };
    let certificate = Certificate {
        convention: Convention::G,
        lhs: g.clone(),
        rhs: gamma.clone(),
        steps,
    };
    if !certificate.validate().is_ok() {
        return Err(CounterexampleError::Internal(
            "constructed certificate failed validation".into(),
        ));
    }
    let report = match find_full_embedding(g, &gamma, solver_budget) {
        Search::Absent { nodes } => NonEmbedReport {
            pattern: g.clone(),
            host: gamma.clone(),
            search_nodes: nodes,
            exhaustive: true,
        },
        Search::OutOfBudget { nodes } => {
            return Err(CounterexampleError::BudgetExhausted { nodes })
        }
        Search::Found(_) => {
            return Err(CounterexampleError::Internal(
                "constructed host unexpectedly admits a full embedding".into(),
            ))
        }
    };
    Ok(CounterexampleResult {
        gamma,
        certificate,
        report,
    })
}

/// Max degree <= 2 and not a linear forest: every component is a path or a
/// cycle and at least one cycle exists. Embed each path of order k as an arc
/// of a fresh cycle of order l = 1 + (largest component order), then grow
/// every cycle to order l by subdivision. The result is a disjoint union of
/// l-cycles which the source cannot embed into (its cycles are too short).
fn disjoint_cycle_host(g: &Graph) -> Result<(Graph, Vec<Step>), CounterexampleError> {
    let comps = g.connected_components();
    let l = 1 + comps.iter().map(|c| c.len()).max().unwrap_or(0);
    let mut host = Graph::empty(0);
    let mut map = vec![usize::MAX; g.order()];
    // Vertex orders of the cycle blocks in the evolving host graph.
    let mut block_orders: Vec<Vec<usize>> = Vec::new();
    for comp in &comps {
        let (sub, relabel) = g.induced(comp).unwrap();
        let base = host.order();
        if let Some(order) = as_cycle(&sub) {
            host = host.disjoint_union(&Graph::cycle(comp.len()));
            for (i, &sv) in order.iter().enumerate() {
                map[relabel[sv]] = base + i;
            }
            block_orders.push((base..base + comp.len()).collect());
        } else if let Some(order) = as_path(&sub) {
            host = host.disjoint_union(&Graph::cycle(l));
            for (i, &sv) in order.iter().enumerate() {
                map[relabel[sv]] = base + i;
            }
            block_orders.push((base..base + l).collect());
        } else {
            return Err(CounterexampleError::Internal(
                "component of max degree <= 2 is neither a path nor a cycle".into(),
            ));
        }
    }
    let mut steps = vec![Step::Full {
        target: host.complement(),
        map,
    }];
    let mut current = host;
    for order in &mut block_orders {
        while order.len() < l {
            let (next, fresh, mut s) =
                subdivision_steps(&current, *order.last().unwrap(), order[0]).unwrap();
            steps.append(&mut s);
            order.push(fresh);
            current = next;
        }
    }
    Ok((current, steps))
}

/// Deterministic choice of (u, w1, w2, sign) for the max degree >= 3 cases.
fn pm_choice(g: &Graph) -> (usize, usize, usize, Sign) {
    if g.max_degree() >= 4 {
        let u = (0..g.order())
            .find(|&v| g.degree(v) == g.max_degree())
            .unwrap();
        let nb = g.neighbors(u);
        return (u, nb[0], nb[1], Sign::Minus);
    }
    let dc = degree_classes(g);
    if dc.v3_star.is_empty() {
        // Every degree-3 link is edgeless: (+) move, preferring a w2 of
        // degree <= 2 when any exists (lexicographically smallest choice).
        for &u in &dc.v3_edgeless {
            let nb = g.neighbors(u);
            if let Some(&w2) = nb.iter().find(|&&w| g.degree(w) <= 2) {
                let w1 = *nb.iter().find(|&&w| w != w2).unwrap();
                return (u, w1, w2, Sign::Plus);
            }
        }
        let u = dc.v3_edgeless[0];
        let nb = g.neighbors(u);
        (u, nb[0], nb[1], Sign::Plus)
    } else {
        // Some degree-3 link contains an edge: (-) move there. If the link
        // is complete, any pair spans an edge; otherwise pick a pair that
        // does not span one.
        let u = dc.v3_star[0];
        let nb = g.neighbors(u);
        if dc.v3_complete.contains(&u) {
            (u, nb[0], nb[1], Sign::Minus)
        } else {
            for i in 0..nb.len() {
                for j in (i + 1)..nb.len() {
                    if !g.adjacent(nb[i], nb[j]) {
                        return (u, nb[i], nb[j], Sign::Minus);
                    }
                }
            }
            unreachable!("an incomplete link has a non-adjacent pair")
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RetractError {
    #[error("source is not the complement of a linear forest")]
    SourceNotComplementOfLinearForest,
    #[error("embedding witness invalid: {0}")]
    InvalidWitness(WitnessError),
    #[error("double result does not match double({0}, {1})")]
    DoubleMismatch(String, usize),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Given a full embedding `phi` of a complement-of-linear-forest into the
/// double of `gamma` along `v`, produce a full embedding into `gamma`
/// itself. If the image lies in one copy, project through that copy;
/// otherwise the off-star image spans two or three vertices of a single
/// join-component and is repaired by substituting `v` or the base-side
/// counterpart of a copy vertex, or, when both candidate vertices are
/// adjacent, by re-threading the component along a one-longer path.
pub fn retract_full_embedding(
    gamma: &Graph,
    v: usize,
    dbl: &DoubleResult,
    phi: &EmbeddingWitness,
) -> Result<EmbeddingWitness, RetractError> {
    let recomputed = double(gamma, v)
        .map_err(|_| RetractError::DoubleMismatch(format!("{gamma:?}"), v))?;
    if recomputed != *dbl || phi.target != dbl.graph {
        return Err(RetractError::DoubleMismatch(format!("{gamma:?}"), v));
    }
    phi.validate().map_err(RetractError::InvalidWitness)?;
    if !linear_forest(&phi.source.complement()).is_forest() {
        return Err(RetractError::SourceNotComplementOfLinearForest);
    }

    let n = gamma.order();
    let source = &phi.source;
    let in_star = {
        let mut b = vec![false; n];
        for &s in &dbl.star {
            b[s] = true;
        }
        b
    };
    // Original vertex behind an image of phi; `copy_off` marks images on the
    // duplicated side.
    let original = |img: usize| if img < n { img } else { dbl.off_star[img - n] };
    let base_off: Vec<usize> = (0..source.order())
        .filter(|&x| phi.map[x] < n && !in_star[phi.map[x]])
        .collect();
    let copy_off: Vec<usize> = (0..source.order())
        .filter(|&x| phi.map[x] >= n)
        .collect();

    let finish = |map: Vec<usize>| -> Result<EmbeddingWitness, RetractError> {
        let w = EmbeddingWitness {
            source: source.clone(),
            target: gamma.clone(),
            map,
        };
        w.validate()
            .map_err(|e| RetractError::Internal(format!("retracted witness invalid: {e}")))?;
        Ok(w)
    };

    if copy_off.is_empty() {
        return finish(phi.map.clone());
    }
    if base_off.is_empty() {
        return finish(phi.map.iter().map(|&img| original(img)).collect());
    }

    // Mixed case: the off-star image is confined to one join-component and
    // spans two or three vertices.
    let off: Vec<usize> = base_off.iter().chain(copy_off.iter()).copied().collect();
    let component = source
        .join_decomposition()
        .into_iter()
        .map(|(vs, _)| vs)
        .find(|vs| off.iter().all(|x| vs.contains(x)))
        .ok_or_else(|| {
            RetractError::Internal("off-star image spans several join-components".into())
        })?;

    if off.len() == 3 {
        // The complement of the off-star triple is a path; its two edges
        // meet at the middle vertex, whose image sits alone on its side.
        // Replace that image by v and project the rest to the pair's side.
        let (lone, pair_on_copy) = if base_off.len() == 1 {
            (base_off[0], true)
        } else if copy_off.len() == 1 {
            (copy_off[0], false)
        } else {
            return Err(RetractError::Internal(
                "three off-star vertices split 3-0 across the copies".into(),
            ));
        };
        let map = (0..source.order())
            .map(|x| {
                if x == lone {
                    v
                } else if pair_on_copy {
                    original(phi.map[x])
                } else {
                    phi.map[x]
                }
            })
            .collect();
        return finish(map);
    }
    if off.len() != 2 {
        return Err(RetractError::Internal(format!(
            "off-star image has {} vertices; expected 2 or 3",
            off.len()
        )));
    }

    let lam_c = copy_off[0];
    let lam_b = base_off[0];
    let comp_src = source.complement();
    if comp_src.degree(lam_c) == 1 {
        // Copy-side vertex is an endpoint of its complement path: send it
        // to v and keep everything else on the base side.
        let map = (0..source.order())
            .map(|x| if x == lam_c { v } else { phi.map[x] })
            .collect();
        return finish(map);
    }
    if comp_src.degree(lam_b) == 1 {
        // Symmetric: the base-side vertex goes to v, the rest projects to
        // the copy side.
        let map = (0..source.order())
            .map(|x| if x == lam_b { v } else { original(phi.map[x]) })
            .collect();
        return finish(map);
    }

    // Both are interior vertices of the complement path.
    let v1 = original(phi.map[lam_c]);
    let v2 = phi.map[lam_b];
    if !gamma.adjacent(v1, v2) {
        // The base counterpart of the copy image keeps every star
        // adjacency, so substituting it lands the whole component in the
        // base copy.
        let map = (0..source.order())
            .map(|x| if x == lam_c { v1 } else { phi.map[x] })
            .collect();
        return finish(map);
    }

    // Adjacent case: adjoin both v and v1; the component's image then spans
    // a one-longer path in the complement of gamma. Drop one endpoint and
    // lay the component's complement path along what remains.
    let mut w_set: Vec<usize> = component
        .iter()
        .filter(|&&x| x != lam_c)
        .map(|&x| phi.map[x])
        .collect();
    w_set.push(v);
    w_set.push(v1);
    let (gw, relabel) = gamma
        .induced(&w_set)
        .map_err(|e| RetractError::Internal(format!("bad replacement set: {e}")))?;
    let gpath = as_path(&gw.complement()).ok_or_else(|| {
        RetractError::Internal("replacement set does not induce a complement path".into())
    })?;
    if gpath.len() != component.len() + 1 {
        return Err(RetractError::Internal(
            "replacement path has unexpected order".into(),
        ));
    }
    let (sub, rel) = source.induced(&component).unwrap();
    let spath = as_path(&sub.complement()).ok_or_else(|| {
        RetractError::Internal("join-component is not a complement path".into())
    })?;
    let mut map = vec![usize::MAX; source.order()];
    for x in 0..source.order() {
        if !component.contains(&x) {
            map[x] = phi.map[x];
        }
    }
    for (i, &sv) in spath.iter().enumerate() {
        map[rel[sv]] = relabel[gpath[i]];
    }
    finish(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::isomorphic;

    #[test]
    fn double_examples() {
        // Doubling P_3 complement (P_1 + P_2) at the isolated vertex gives
        // P_1 + P_2 + P_2.
        let p3c = Graph::path(3).complement();
        let d = double(&p3c, 1).unwrap();
        let expect = Graph::from_edges(5, &[(1, 2), (3, 4)]).unwrap();
        assert!(isomorphic(&d.graph, &expect, 1 << 16));

        // A vertex adjacent to everything has nothing to duplicate.
        let k4 = Graph::complete(4);
        let d = double(&k4, 2).unwrap();
        assert_eq!(d.graph, k4);
        assert!(d.off_star.is_empty());

        // Doubling P_3 (0-1-2) at an endpoint gives the claw centred at 1.
        let d = double(&Graph::path(3), 0).unwrap();
        let claw = Graph::from_edges(4, &[(1, 0), (1, 2), (1, 3)]).unwrap();
        assert!(isomorphic(&d.graph, &claw, 1 << 16));

        assert!(double(&Graph::path(3), 3).is_err());
    }

    #[test]
    fn double_invariants_small_exhaustive() {
        for n in 1..=5usize {
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
                for v in 0..n {
                    let d = double(&g, v).unwrap();
                    let star = g.local_structure(v).unwrap().star;
                    assert_eq!(d.graph.order(), 2 * n - star.len());
                    for inj in [&d.base_injection, &d.copy_injection] {
                        let w = EmbeddingWitness {
                            source: g.clone(),
                            target: d.graph.clone(),
                            map: inj.clone(),
                        };
                        w.validate().unwrap();
                    }
                    for u in 0..n {
                        let agree = d.base_injection[u] == d.copy_injection[u];
                        assert_eq!(agree, star.contains(&u));
                    }
                    // Off-star base and off-star copy vertices never span
                    // an edge in the double.
                    for &a in &d.off_star {
                        for (i, _) in d.off_star.iter().enumerate() {
                            assert!(!d.graph.adjacent(a, n + i));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn subdivide_examples() {
        let (g, fresh) = subdivide(&Graph::cycle(3), 2, 0).unwrap();
        assert_eq!(fresh, 3);
        assert_eq!(g, Graph::cycle(4));

        let (g, _) = subdivide(&Graph::path(2), 0, 1).unwrap();
        assert!(isomorphic(&g, &Graph::path(3), 1 << 16));

        assert!(subdivide(&Graph::path(3), 0, 2).is_err());
    }

    #[test]
    fn repeated_subdivision_of_a_cycle() {
        let mut g = Graph::cycle(3);
        let mut last = 2;
        for n in 4..=8 {
            let (next, fresh) = subdivide(&g, last, 0).unwrap();
            g = next;
            last = fresh;
            assert_eq!(g, Graph::cycle(n));
        }
    }

    #[test]
    fn pm_examples() {
        // K_{1,4} centre 0, minus move at two leaves.
        let k14 = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let pm = pm_construction(&k14, 0, 1, 2, Sign::Minus).unwrap();
        assert_eq!(pm.graph.order(), 6);
        assert_eq!(pm.graph.degree(0), 3);
        assert_eq!(pm.graph.degree(pm.new_vertex), 3);
        assert_eq!(pm.graph.degree(1), 1);
        assert_eq!(pm.graph.degree(2), 1);
        assert!(tree_measures(&pm.graph).is_tree);

        let k4 = Graph::complete(4);
        let pm = pm_construction(&k4, 0, 1, 2, Sign::Plus).unwrap();
        assert_eq!(pm.graph.order(), 5);
        assert_eq!(pm.graph.degree(2), 4);
        assert_eq!(pm.graph.degree(pm.new_vertex), 3);

        assert!(pm_construction(&k4, 0, 1, 1, Sign::Plus).is_err());
        assert!(pm_construction(&Graph::path(2), 0, 1, 1, Sign::Minus).is_err());
        let p3 = Graph::path(3);
        assert!(pm_construction(&p3, 0, 1, 2, Sign::Minus).is_err());
        assert!(pm_construction(&p3, 1, 0, 2, Sign::Minus).is_ok());
    }

    #[test]
    fn pm_degree_tables_small_exhaustive() {
        for n in 3..=5usize {
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
                for u in 0..n {
                    let nb = g.neighbors(u);
                    if nb.len() < 2 {
                        continue;
                    }
                    for &w1 in &nb {
                        for &w2 in &nb {
                            if w1 == w2 {
                                continue;
                            }
                            for sign in [Sign::Minus, Sign::Plus] {
                                let pm = pm_construction(&g, u, w1, w2, sign).unwrap();
                                assert_eq!(pm.graph.order(), n + 1);
                                assert_eq!(pm.graph.degree(pm.new_vertex), 3);
                                for x in 0..n {
                                    let want = match sign {
                                        Sign::Minus if x == u => g.degree(x) - 1,
                                        Sign::Plus if x == w2 => g.degree(x) + 1,
                                        _ => g.degree(x),
                                    };
                                    assert_eq!(pm.graph.degree(x), want);
                                }
                                if sign == Sign::Minus {
                                    // A minus move adds one vertex and one
                                    // net edge.
                                    assert_eq!(pm.graph.edge_count(), g.edge_count() + 1);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pm_steps_validate() {
        let k14 = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        for sign in [Sign::Minus, Sign::Plus] {
            let pm = pm_construction(&k14, 0, 1, 2, sign).unwrap();
            let cert = Certificate {
                convention: Convention::G,
                lhs: k14.clone(),
                rhs: pm.graph.clone(),
                steps: pm_steps(&k14, &pm),
            };
            assert!(cert.validate().is_ok(), "{sign:?}");
        }
    }

    #[test]
    fn subdivision_steps_validate() {
        let c5 = Graph::cycle(5);
        let (sub, _, steps) = subdivision_steps(&c5, 4, 0).unwrap();
        let cert = Certificate {
            convention: Convention::G,
            lhs: c5,
            rhs: sub,
            steps,
        };
        assert!(cert.validate().is_ok());
    }

    #[test]
    fn flatten_examples() {
        let k14 = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let (t, cert) = flatten_tree(&k14).unwrap();
        assert_eq!(t.order(), 6);
        assert!(t.max_degree() <= 3);
        assert!(tree_measures(&t).is_tree);
        assert!(cert.validate().is_ok());
        assert!(t.order() <= 2 * 5 - 4);

        let k13 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let (t, cert) = flatten_tree(&k13).unwrap();
        assert_eq!(t, k13);
        assert!(cert.steps.is_empty());
        assert!(cert.validate().is_ok());

        let k16 =
            Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6)]).unwrap();
        let (t, cert) = flatten_tree(&k16).unwrap();
        assert_eq!(t.order(), 10);
        assert!(t.max_degree() <= 3);
        assert!(cert.validate().is_ok());
        assert_eq!(t.order(), 2 * 7 - 4);

        assert!(flatten_tree(&Graph::cycle(4)).is_err());
    }

    #[test]
    fn counterexample_examples() {
        // C_3 grows into C_4 via one subdivision.
        let res = counterexample(&Graph::cycle(3), 1 << 20).unwrap();
        assert_eq!(res.gamma, Graph::cycle(4));
        assert!(res.certificate.validate().is_ok());
        assert!(res.report.exhaustive);

        // K_{1,4} takes a minus move at the centre.
        let k14 = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let res = counterexample(&k14, 1 << 20).unwrap();
        assert_eq!(res.gamma.order(), 6);
        assert!(res.certificate.validate().is_ok());
        assert!(res.report.exhaustive);

        // K_4 has complete degree-3 links: minus move with adjacent pair.
        let res = counterexample(&Graph::complete(4), 1 << 20).unwrap();
        assert!(res.certificate.validate().is_ok());
        assert!(res.report.exhaustive);

        // The claw's link is edgeless: plus move.
        let k13 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let res = counterexample(&k13, 1 << 20).unwrap();
        assert!(res.certificate.validate().is_ok());
        assert!(res.report.exhaustive);

        assert_eq!(
            counterexample(&Graph::path(4), 1 << 20),
            Err(CounterexampleError::InputIsLinearForest)
        );
    }

    #[test]
    fn retract_cross_copy_pair() {
        // Two isolated vertices embedded onto an endpoint and its copy in
        // the double of P_3 at the other endpoint.
        let gamma = Graph::path(3);
        let dbl = double(&gamma, 0).unwrap();
        // Star of 0 is {0,1}; off-star is {2}, copied as vertex 3.
        let phi = EmbeddingWitness {
            source: Graph::empty(2),
            target: dbl.graph.clone(),
            map: vec![2, 3],
        };
        phi.validate().unwrap();
        let w = retract_full_embedding(&gamma, 0, &dbl, &phi).unwrap();
        w.validate().unwrap();
        let mut image = w.map.clone();
        image.sort_unstable();
        assert_eq!(image, vec![0, 2]);
    }

    #[test]
    fn retract_single_copy_images() {
        let gamma = Graph::cycle(5);
        let dbl = double(&gamma, 0).unwrap();
        // An image entirely inside the base copy projects as-is.
        let phi = EmbeddingWitness {
            source: Graph::path(3),
            target: dbl.graph.clone(),
            map: vec![1, 2, 3],
        };
        phi.validate().unwrap();
        let w = retract_full_embedding(&gamma, 0, &dbl, &phi).unwrap();
        assert_eq!(w.map, vec![1, 2, 3]);
    }
}
