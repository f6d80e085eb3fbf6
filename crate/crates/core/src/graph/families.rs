//! Standard graph families used throughout the crate and its tests.

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

fn expect(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

/// C_k on `0..k` with edges `i ~ i+1 (mod k)`.
pub fn cycle(k: usize) -> Result<Graph> {
    expect(k >= 3, || format!("cycle needs k >= 3, got {k}"))?;
    let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    Graph::from_edge_list(k, &edges)
}

/// P_n on `0..n`.
pub fn path(n: usize) -> Result<Graph> {
    expect(n >= 1, || "path needs n >= 1".into())?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edge_list(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    let full = VertexSet::full(n).0;
    for v in 0..n {
        g.adj[v] = full & !(1 << v);
    }
    Ok(g)
}

/// K_{a,b}; the first part is `0..a`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    expect(a >= 1 && b >= 1, || {
        format!("K_{{{a},{b}}} needs both parts nonempty")
    })?;
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    Graph::from_edge_list(a + b, &edges)
}

/// K_{1,s} with center 0.
pub fn star(s: usize) -> Result<Graph> {
    complete_bipartite(1, s)
}

/// Circulant graph: `i ~ j` iff the circular distance between them lies in `dists`.
pub fn circulant(k: usize, dists: &[usize]) -> Result<Graph> {
    expect(k >= 1, || "circulant needs k >= 1".into())?;
    for &d in dists {
        expect(d >= 1 && d <= k / 2, || {
            format!("distance {d} invalid for k={k}")
        })?;
    }
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let d = (j - i).min(k - (j - i));
            if dists.contains(&d) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edge_list(k, &edges)
}

/// K_4 minus the edge 1-3; vertices 0 and 2 have degree 3.
pub fn diamond() -> Graph {
    Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap()
}

/// Path 0-1-2-3 plus the universal vertex 4.
pub fn gem() -> Graph {
    Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)]).unwrap()
}

/// Triangle 0-1-2 with a pendant 3 on vertex 0.
pub fn paw() -> Graph {
    Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap()
}

/// Two universal vertices 0, 1 joined to an independent triple 2, 3, 4
/// (the join of K_2 with three isolated vertices).
pub fn crown() -> Graph {
    let mut edges = vec![(0, 1)];
    for t in 2..5 {
        edges.push((0, t));
        edges.push((1, t));
    }
    Graph::from_edge_list(5, &edges).unwrap()
}

/// C_k with one pendant attached to each cycle vertex listed in `with_pendant`.
/// Pendants are numbered from `k` in the order given.
pub fn cycle_with_pendants(k: usize, with_pendant: &[usize]) -> Result<Graph> {
    let mut g = cycle(k)?;
    for &v in with_pendant {
        expect(v < k, || format!("cycle vertex {v} out of range"))?;
        g = g.add_vertex(VertexSet::singleton(v))?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_ranges() {
        assert!(cycle(2).is_err());
        assert!(complete_bipartite(0, 3).is_err());
        assert!(circulant(5, &[3]).is_err());
        assert!(star(0).is_err());
    }

    #[test]
    fn circulant_covering_all_distances_is_complete() {
        assert_eq!(circulant(5, &[1, 2]).unwrap(), complete(5).unwrap());
        assert_eq!(circulant(6, &[1]).unwrap(), cycle(6).unwrap());
    }

    #[test]
    fn star_degrees() {
        assert_eq!(star(3).unwrap().degree_sequence(), vec![3, 1, 1, 1]);
    }

    #[test]
    fn named_graphs() {
        assert_eq!(diamond().degree_sequence(), vec![3, 3, 2, 2]);
        assert_eq!(gem().degree_sequence(), vec![4, 3, 3, 2, 2]);
        assert_eq!(crown().degree_sequence(), vec![4, 4, 2, 2, 2]);
        assert_eq!(paw().edge_count(), 4);
        for g in [diamond(), gem(), crown(), paw()] {
            assert!(g.validate().is_ok() && g.is_connected());
        }
        let c = cycle_with_pendants(7, &[0, 3]).unwrap();
        assert_eq!(c.n(), 9);
        assert!(c.has_edge(7, 0) && c.has_edge(8, 3));
    }
}
