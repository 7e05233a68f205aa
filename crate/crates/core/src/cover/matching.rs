//! Vertex–edge matching on graphs without isolated vertices: every vertex
//! except one root per component is matched to a distinct incident edge, so
//! the matching has at least `⌈|V|/2⌉` pairs.

use std::collections::BTreeSet;
use std::collections::VecDeque;

use crate::{Error, Result};

/// Simple undirected graph over vertex ids `0..vertex_count`.
#[derive(Clone, Debug)]
pub struct IncidenceGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl IncidenceGraph {
    /// Builds a simple graph; self-loops are rejected and duplicate edges
    /// collapse.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Precondition(format!(
                    "self-loop at vertex {u} in a simple graph"
                )));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Precondition(format!(
                    "edge ({u}, {v}) out of range for {vertex_count} vertices"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(IncidenceGraph {
            vertex_count,
            edges: set.into_iter().collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }
}

/// Matches vertices to distinct incident edges by BFS: per component,
/// rooted at its smallest vertex id, every non-root vertex `u` takes the
/// edge toward its BFS parent (a vertex at distance `d(u) − 1`). Each
/// component of size `c ≥ 2` matches `c − 1 ≥ c/2` vertices, so the
/// matching covers at least `⌈|V|/2⌉` vertices.
///
/// Errors if the graph has an isolated vertex.
pub fn greedy_matching(graph: &IncidenceGraph) -> Result<Vec<(usize, (usize, usize))>> {
    let adj = graph.adjacency();
    if let Some(v) = adj.iter().position(Vec::is_empty) {
        if graph.vertex_count > 0 {
            return Err(Error::IsolatedVertex(v));
        }
    }

    let mut matched = Vec::new();
    let mut visited = vec![false; graph.vertex_count];
    for root in 0..graph.vertex_count {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !visited[w] {
                    visited[w] = true;
                    matched.push((w, (w.min(u), w.max(u))));
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(matched)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_matching(graph: &IncidenceGraph, matching: &[(usize, (usize, usize))]) {
        // Distinct vertices, distinct edges, incidence.
        let mut vertices = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for &(v, e) in matching {
            assert!(vertices.insert(v), "vertex {v} matched twice");
            assert!(edges.insert(e), "edge {e:?} matched twice");
            assert!(e.0 == v || e.1 == v, "vertex {v} not on edge {e:?}");
            assert!(graph.edges().contains(&e));
        }
        assert!(matching.len() >= graph.vertex_count().div_ceil(2));
    }

    #[test]
    fn path_matches_both_non_roots() {
        let g = IncidenceGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let m = greedy_matching(&g).unwrap();
        assert_eq!(m, vec![(1, (0, 1)), (2, (1, 2))]);
        check_matching(&g, &m);
    }

    #[test]
    fn single_edge() {
        let g = IncidenceGraph::new(2, [(0, 1)]).unwrap();
        let m = greedy_matching(&g).unwrap();
        assert_eq!(m.len(), 1);
        check_matching(&g, &m);
    }

    #[test]
    fn triangle_matches_two() {
        let g = IncidenceGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let m = greedy_matching(&g).unwrap();
        assert_eq!(m.len(), 2);
        check_matching(&g, &m);
    }

    #[test]
    fn isolated_vertex_is_an_error() {
        let g = IncidenceGraph::new(3, [(0, 1)]).unwrap();
        assert_eq!(greedy_matching(&g).unwrap_err(), Error::IsolatedVertex(2));
    }

    #[test]
    fn self_loop_rejected() {
        assert!(IncidenceGraph::new(2, [(1, 1)]).is_err());
    }

    #[test]
    fn empty_graph_is_fine() {
        let g = IncidenceGraph::new(0, []).unwrap();
        assert!(greedy_matching(&g).unwrap().is_empty());
    }

    #[test]
    fn random_graphs_satisfy_the_bound() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.random_range(2usize..=40);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.1) {
                        edges.push((u, v));
                    }
                }
            }
            // Repair isolated vertices with one extra edge each.
            let mut degree = vec![0usize; n];
            for &(u, v) in &edges {
                degree[u] += 1;
                degree[v] += 1;
            }
            for v in 0..n {
                if degree[v] == 0 {
                    let w = if v == 0 { 1 } else { v - 1 };
                    edges.push((v.min(w), v.max(w)));
                    degree[v] += 1;
                    degree[w] += 1;
                }
            }
            let g = IncidenceGraph::new(n, edges).unwrap();
            let m = greedy_matching(&g).unwrap();
            check_matching(&g, &m);
        }
    }
}
