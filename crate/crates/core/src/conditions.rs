//! The necessary condition for biclique graphs: every induced P3 lies in an
//! induced diamond or an induced gem. A violating P3 certifies that a graph
//! is not a biclique graph.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Induced path `x - y - z` with `x < z` and `x`, `z` nonadjacent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct P3 {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl P3 {
    pub fn vertices(&self) -> VertexSet {
        VertexSet::from_slice(&[self.x, self.y, self.z])
    }

    pub fn is_induced_in(&self, g: &Graph) -> bool {
        let (x, y, z) = (self.x, self.y, self.z);
        x < g.n()
            && y < g.n()
            && z < g.n()
            && x != z
            && g.has_edge(x, y)
            && g.has_edge(y, z)
            && !g.has_edge(x, z)
    }
}

/// How a P3 is covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Containment {
    /// `w` is adjacent to `x`, `y`, `z`; `{x, y, z, w}` is K_4 minus `xz`.
    Diamond { w: usize },
    /// `{x, y, z, w1, w2}` induces a gem.
    Gem { w1: usize, w2: usize },
}

impl Containment {
    pub fn extra_vertices(&self) -> VertexSet {
        match *self {
            Containment::Diamond { w } => VertexSet::singleton(w),
            Containment::Gem { w1, w2 } => VertexSet::from_slice(&[w1, w2]),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct P3Report {
    pub verdict: Verdict,
    /// The first uncovered P3, for a failing graph.
    pub witness: Option<P3>,
    /// Per-P3 covering witnesses; filled only by [`check_theorem1_traced`].
    pub containment: Vec<(P3, Containment)>,
}

pub fn induced_p3s(g: &Graph) -> Vec<P3> {
    let mut out = Vec::new();
    for y in 0..g.n() {
        let nb = g.neighbors(y);
        for x in nb {
            for z in nb.difference(VertexSet::full(x + 1)) {
                if !g.has_edge(x, z) {
                    out.push(P3 { x, y, z });
                }
            }
        }
    }
    out.sort();
    out
}

/// `s` has four vertices inducing exactly five edges.
pub fn induces_diamond(g: &Graph, s: VertexSet) -> bool {
    s.len() == 4 && induced_edges(g, s) == 5
}

/// `s` has five vertices: one adjacent to the other four, which induce P4.
pub fn induces_gem(g: &Graph, s: VertexSet) -> bool {
    if s.len() != 5 || induced_edges(g, s) != 7 {
        return false;
    }
    let universal: Vec<usize> = s
        .iter()
        .filter(|&v| g.neighbors(v).intersection(s).len() == 4)
        .collect();
    if universal.len() != 1 {
        return false;
    }
    let rest = s.without(universal[0]);
    let degs: Vec<usize> = rest
        .iter()
        .map(|v| g.neighbors(v).intersection(rest).len())
        .collect();
    // Three edges on four vertices with a connected spread of degrees 1,1,2,2 is P4.
    let mut sorted = degs.clone();
    sorted.sort_unstable();
    sorted == [1, 1, 2, 2] && {
        let start = rest.first().unwrap();
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                next = next.union(g.neighbors(u).intersection(rest));
            }
            frontier = next.difference(seen);
            seen = seen.union(frontier);
        }
        seen == rest
    }
}

fn induced_edges(g: &Graph, s: VertexSet) -> usize {
    s.iter()
        .map(|v| g.neighbors(v).intersection(s).len())
        .sum::<usize>()
        / 2
}

/// Find a diamond (preferred) or gem containing the P3 `p`.
///
/// Diamond vertices are the common neighbors of `x`, `y`, `z`. Gem extra
/// vertices each need a neighbor in `{x, y, z}`, since gem degrees are at
/// least two.
pub fn p3_contained(g: &Graph, p: P3) -> Result<Option<Containment>> {
    if !p.is_induced_in(g) {
        return Err(Error::NotInducedP3(p.x, p.y, p.z));
    }
    Ok(find_containment(g, p))
}

fn find_containment(g: &Graph, p: P3) -> Option<Containment> {
    let base = p.vertices();
    let common = g
        .neighbors(p.x)
        .intersection(g.neighbors(p.y))
        .intersection(g.neighbors(p.z));
    if let Some(w) = common.first() {
        let c = Containment::Diamond { w };
        debug_assert!(verify_containment(g, p, c));
        return Some(c);
    }
    let touching = g
        .neighbors(p.x)
        .union(g.neighbors(p.y))
        .union(g.neighbors(p.z))
        .difference(base);
    for w1 in touching {
        for w2 in touching.difference(VertexSet::full(w1 + 1)) {
            if induces_gem(g, base.with(w1).with(w2)) {
                return Some(Containment::Gem { w1, w2 });
            }
        }
    }
    None
}

/// Structural re-check of a covering witness.
pub fn verify_containment(g: &Graph, p: P3, c: Containment) -> bool {
    if !p.is_induced_in(g) || g.check_set(c.extra_vertices()).is_err() {
        return false;
    }
    let extra = c.extra_vertices();
    if extra.intersects(p.vertices()) {
        return false;
    }
    let s = p.vertices().union(extra);
    match c {
        Containment::Diamond { .. } => induces_diamond(g, s),
        Containment::Gem { w1, w2 } => w1 != w2 && induces_gem(g, s),
    }
}

/// Independent re-check that `p` is an uncovered induced P3: scans every
/// vertex and vertex pair outside it without the search's filters.
pub fn verify_violation(g: &Graph, p: P3) -> bool {
    if !p.is_induced_in(g) {
        return false;
    }
    let base = p.vertices();
    let others = g.vertices().difference(base).to_vec();
    for (i, &a) in others.iter().enumerate() {
        if induces_diamond(g, base.with(a)) {
            return false;
        }
        for &b in &others[i + 1..] {
            if induces_gem(g, base.with(a).with(b)) {
                return false;
            }
        }
    }
    true
}

pub fn check_theorem1(g: &Graph) -> P3Report {
    for p in induced_p3s(g) {
        if find_containment(g, p).is_none() {
            return P3Report {
                verdict: Verdict::Fail,
                witness: Some(p),
                containment: vec![],
            };
        }
    }
    P3Report {
        verdict: Verdict::Pass,
        witness: None,
        containment: vec![],
    }
}

/// Like [`check_theorem1`] but records the covering witness of every P3
/// up to the first failure.
pub fn check_theorem1_traced(g: &Graph) -> P3Report {
    let mut containment = Vec::new();
    for p in induced_p3s(g) {
        match find_containment(g, p) {
            Some(c) => containment.push((p, c)),
            None => {
                return P3Report {
                    verdict: Verdict::Fail,
                    witness: Some(p),
                    containment,
                };
            }
        }
    }
    P3Report {
        verdict: Verdict::Pass,
        witness: None,
        containment,
    }
}
