//! Simple undirected graphs on at most [`MAX_VERTICES`] vertices.
//!
//! Vertices are dense indices `0..n`. Adjacency is one `u64` mask per
//! vertex, so every vertex set fits a single machine word. Graph values
//! are immutable; operations that drop or reorder vertices return a new
//! graph together with a [`Relabeling`].

mod families;
mod format;

pub use families::*;
pub use format::{parse_edge_list, parse_graph6, to_dot, to_edge_list, to_graph6};

use std::fmt;

use crate::error::{Error, Result};

/// Build-time vertex cap: one adjacency row per `u64`.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_slice(vs: &[usize]) -> Self {
        vs.iter().fold(VertexSet::EMPTY, |s, &v| s.with(v))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::EMPTY, |s, v| s.with(v))
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Old-to-new vertex correspondence produced by operations that delete,
/// add, or reorder vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    /// `old_to_new[v]` is the new index of old vertex `v`, or `None` if `v` was dropped.
    pub old_to_new: Vec<Option<usize>>,
    /// `new_to_old[i]` is the old vertex that became `i`, or `None` for added vertices.
    pub new_to_old: Vec<Option<usize>>,
}

impl Relabeling {
    pub fn identity(n: usize) -> Self {
        Relabeling {
            old_to_new: (0..n).map(Some).collect(),
            new_to_old: (0..n).map(Some).collect(),
        }
    }
}

/// Finite simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Build from adjacency masks, validating symmetry and loop-freeness.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        check_order(adj.len())?;
        let g = Graph { n: adj.len(), adj };
        g.validate()?;
        Ok(g)
    }

    /// Internal constructor used after a caller has already built valid rows.
    pub(crate) fn from_rows_unchecked(adj: Vec<u64>) -> Self {
        debug_assert!(adj.len() <= MAX_VERTICES);
        let g = Graph { n: adj.len(), adj };
        debug_assert!(g.validate().is_ok());
        g
    }

    /// Check the structural invariants: in-range neighbors, symmetry, no loops.
    pub fn validate(&self) -> Result<()> {
        let full = VertexSet::full(self.n).0;
        for v in 0..self.n {
            let row = self.adj[v];
            if row & !full != 0 {
                let bad = (row & !full).trailing_zeros() as usize;
                return Err(Error::VertexOutOfRange {
                    vertex: bad,
                    n: self.n,
                });
            }
            if row >> v & 1 == 1 {
                return Err(Error::SelfLoop(v));
            }
            for u in VertexSet(row) {
                if self.adj[u] >> v & 1 == 0 {
                    return Err(Error::InvalidParameter(format!(
                        "asymmetric adjacency between {v} and {u}"
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Open neighborhood N(v).
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// Closed neighborhood N[v].
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v] | 1 << v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(self.adj[u] & !((2u64 << u).wrapping_sub(1)))
                .iter()
                .map(move |v| (u, v))
        })
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    pub fn check_set(&self, s: VertexSet) -> Result<()> {
        match s.difference(self.vertices()).first() {
            Some(v) => Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            }),
            None => Ok(()),
        }
    }

    pub fn is_independent_set(&self, s: VertexSet) -> Result<bool> {
        self.check_set(s)?;
        Ok(s.iter().all(|v| !self.neighbors(v).intersects(s)))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.component_of(0) == self.vertices()
    }

    /// Vertex set of the connected component containing `v`.
    pub fn component_of(&self, v: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(v);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                next = next.union(self.neighbors(u));
            }
            frontier = next.difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Induced subgraph on `s`, vertices relabeled in ascending original order.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<(Graph, Relabeling)> {
        self.check_set(s)?;
        if s.is_empty() && self.n != 0 {
            return Err(Error::InvalidParameter(
                "empty vertex set for a nonempty graph".into(),
            ));
        }
        let new_to_old: Vec<usize> = s.to_vec();
        let mut old_to_new = vec![None; self.n];
        for (i, &v) in new_to_old.iter().enumerate() {
            old_to_new[v] = Some(i);
        }
        let adj = new_to_old
            .iter()
            .map(|&v| {
                self.neighbors(v)
                    .intersection(s)
                    .iter()
                    .fold(0u64, |row, u| row | 1 << old_to_new[u].unwrap())
            })
            .collect();
        Ok((
            Graph::from_rows_unchecked(adj),
            Relabeling {
                old_to_new,
                new_to_old: new_to_old.into_iter().map(Some).collect(),
            },
        ))
    }

    pub fn remove_vertex(&self, v: usize) -> Result<(Graph, Relabeling)> {
        self.check_vertex(v)?;
        if self.n == 1 {
            return Ok((
                Graph { n: 0, adj: vec![] },
                Relabeling {
                    old_to_new: vec![None],
                    new_to_old: vec![],
                },
            ));
        }
        self.induced_subgraph(self.vertices().without(v))
    }

    pub fn remove_vertices(&self, vs: VertexSet) -> Result<(Graph, Relabeling)> {
        self.check_set(vs)?;
        let keep = self.vertices().difference(vs);
        if keep.is_empty() {
            return Ok((
                Graph { n: 0, adj: vec![] },
                Relabeling {
                    old_to_new: vec![None; self.n],
                    new_to_old: vec![],
                },
            ));
        }
        self.induced_subgraph(keep)
    }

    /// Append a vertex adjacent to `nbrs`; its index is the old `n`.
    pub fn add_vertex(&self, nbrs: VertexSet) -> Result<Graph> {
        self.check_set(nbrs)?;
        check_order(self.n + 1)?;
        let new = self.n;
        let mut adj = self.adj.clone();
        for u in nbrs {
            adj[u] |= 1 << new;
        }
        adj.push(nbrs.0);
        Ok(Graph::from_rows_unchecked(adj))
    }

    /// Relabel so that old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(
                "permutation length mismatch".into(),
            ));
        }
        let mut seen = VertexSet::EMPTY;
        for &p in perm {
            if p >= self.n || seen.contains(p) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen = seen.with(p);
        }
        Ok(self.permute_unchecked(perm))
    }

    pub(crate) fn permute_unchecked(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            adj[perm[v]] = VertexSet(self.adj[v])
                .iter()
                .fold(0u64, |row, u| row | 1 << perm[u]);
        }
        Graph { n: self.n, adj }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooManyVertices {
            n,
            limit: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_dedups_and_validates() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.validate().is_ok());
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::from_edge_list(3, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert!(matches!(
            Graph::empty(65),
            Err(Error::TooManyVertices { .. })
        ));
    }

    #[test]
    fn diamond_from_edges() {
        let g = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert!(!g.has_edge(1, 3));
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(2), 3);
        let (k2, map) = g.induced_subgraph(VertexSet::from_slice(&[0, 2])).unwrap();
        assert_eq!(k2, complete(2).unwrap());
        assert_eq!(map.new_to_old, vec![Some(0), Some(2)]);
    }

    #[test]
    fn remove_vertex_from_cycle_gives_path() {
        let c7 = cycle(7).unwrap();
        for v in 0..7 {
            let (g, map) = c7.remove_vertex(v).unwrap();
            assert_eq!(g.n(), 6);
            assert_eq!(g.edge_count(), 5);
            assert_eq!(g.degree_sequence(), path(6).unwrap().degree_sequence());
            assert!(g.is_connected());
            assert_eq!(map.old_to_new[v], None);
        }
    }

    #[test]
    fn induced_on_everything_is_identity() {
        let g = gem();
        let (h, map) = g.induced_subgraph(g.vertices()).unwrap();
        assert_eq!(h, g);
        assert_eq!(map, Relabeling::identity(g.n()));
    }

    #[test]
    fn induced_subgraph_errors() {
        let g = cycle(5).unwrap();
        assert!(g.induced_subgraph(VertexSet::singleton(5)).is_err());
        assert!(g.induced_subgraph(VertexSet::EMPTY).is_err());
        let (e, _) = Graph::empty(0)
            .unwrap()
            .induced_subgraph(VertexSet::EMPTY)
            .unwrap();
        assert_eq!(e.n(), 0);
    }

    #[test]
    fn independent_sets() {
        let c4 = cycle(4).unwrap();
        assert!(c4
            .is_independent_set(VertexSet::from_slice(&[0, 2]))
            .unwrap());
        let k3 = complete(3).unwrap();
        assert!(!k3
            .is_independent_set(VertexSet::from_slice(&[0, 1]))
            .unwrap());
        assert!(k3.is_independent_set(VertexSet::EMPTY).unwrap());
        assert!(k3.is_independent_set(VertexSet::singleton(7)).is_err());
    }

    #[test]
    fn neighborhoods() {
        let s = star(3).unwrap();
        assert_eq!(s.neighbors(0), VertexSet::from_slice(&[1, 2, 3]));
        assert_eq!(s.closed_neighbors(1), VertexSet::from_slice(&[0, 1]));
    }

    #[test]
    fn permute_rejects_non_permutations() {
        let g = path(3).unwrap();
        assert!(g.permute(&[0, 0, 1]).is_err());
        assert!(g.permute(&[0, 1]).is_err());
        let h = g.permute(&[1, 0, 2]).unwrap();
        assert!(h.has_edge(0, 1) && h.has_edge(0, 2) && !h.has_edge(1, 2));
    }

    #[test]
    fn remove_vertex_edge_count() {
        let g = gem();
        for v in 0..g.n() {
            let (h, _) = g.remove_vertex(v).unwrap();
            assert_eq!(h.edge_count(), g.edge_count() - g.degree(v));
        }
    }
}
