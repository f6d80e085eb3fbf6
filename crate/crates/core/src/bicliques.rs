//! Bicliques: maximal induced complete bipartite subgraphs.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest host accepted by [`brute_force_bicliques`].
pub const BRUTE_FORCE_MAX_VERTICES: usize = 20;

/// A biclique stored as its two parts. The part holding the smallest vertex
/// is always `left`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Biclique {
    left: VertexSet,
    right: VertexSet,
}

impl Biclique {
    /// Build from two parts in either order; fails if either is empty or
    /// they overlap.
    pub fn new(a: VertexSet, b: VertexSet) -> Result<Self> {
        if a.is_empty() || b.is_empty() || a.intersects(b) {
            return Err(Error::NotABiclique);
        }
        Ok(Self::normalized(a, b))
    }

    fn normalized(a: VertexSet, b: VertexSet) -> Self {
        if a.first() < b.first() {
            Biclique { left: a, right: b }
        } else {
            Biclique { left: b, right: a }
        }
    }

    pub fn left(&self) -> VertexSet {
        self.left
    }

    pub fn right(&self) -> VertexSet {
        self.right
    }

    pub fn vertices(&self) -> VertexSet {
        self.left.union(self.right)
    }

    /// Part sizes, smaller first: `(1, 1)` is K_{1,1}, `(2, 2)` is C_4.
    pub fn shape(&self) -> (usize, usize) {
        let (a, b) = (self.left.len(), self.right.len());
        (a.min(b), a.max(b))
    }

    pub fn contains_claw(&self) -> bool {
        self.shape().1 >= 3
    }

    pub fn is_c4(&self) -> bool {
        self.shape() == (2, 2)
    }

    pub fn intersects(&self, other: &Biclique) -> bool {
        self.vertices().intersects(other.vertices())
    }
}

impl fmt::Debug for Biclique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}|{:?}", self.left, self.right)
    }
}

impl Serialize for Biclique {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Biclique", 2)?;
        st.serialize_field("left", &self.left.to_vec())?;
        st.serialize_field("right", &self.right.to_vec())?;
        st.end()
    }
}

fn check_host(g: &Graph) -> Result<()> {
    if g.n() < 2 {
        return Err(Error::TooSmallForBicliques);
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(())
}

/// Vertices outside `l ∪ r` that could join `l` (resp. `r`) and keep the pair
/// an induced complete bipartite subgraph.
fn extenders(g: &Graph, l: VertexSet, r: VertexSet) -> (VertexSet, VertexSet) {
    let mut to_left = VertexSet::EMPTY;
    let mut to_right = VertexSet::EMPTY;
    for w in g.vertices().difference(l.union(r)) {
        let nb = g.neighbors(w);
        if !nb.intersects(l) && r.is_subset(nb) {
            to_left = to_left.with(w);
        }
        if !nb.intersects(r) && l.is_subset(nb) {
            to_right = to_right.with(w);
        }
    }
    (to_left, to_right)
}

/// Check all biclique conditions of `cand` in `g`, maximality included.
pub fn is_biclique(g: &Graph, cand: &Biclique) -> bool {
    let (l, r) = (cand.left, cand.right);
    if g.check_set(l.union(r)).is_err() || l.is_empty() || r.is_empty() || l.intersects(r) {
        return false;
    }
    let independent = |s: VertexSet| s.iter().all(|v| !g.neighbors(v).intersects(s));
    if !independent(l) || !independent(r) {
        return false;
    }
    if !l.iter().all(|v| r.is_subset(g.neighbors(v))) {
        return false;
    }
    let (a, b) = extenders(g, l, r);
    a.is_empty() && b.is_empty()
}

/// All bicliques of a connected graph, sorted.
///
/// Vertices are decided in increasing order: each joins the left part, the
/// right part, or is excluded. A vertex is only offered to a part it is
/// compatible with, the first chosen vertex always goes left (so each
/// unordered pair is produced once), and a branch is cut as soon as an
/// excluded vertex is addable and nothing left to decide could block it.
pub fn enumerate_bicliques(g: &Graph) -> Result<Vec<Biclique>> {
    check_host(g)?;
    let mut out = Vec::new();
    let mut search = Enumerator { g, out: &mut out };
    search.step(0, VertexSet::EMPTY, VertexSet::EMPTY);
    out.sort();
    Ok(out)
}

struct Enumerator<'a> {
    g: &'a Graph,
    out: &'a mut Vec<Biclique>,
}

impl Enumerator<'_> {
    fn step(&mut self, pos: usize, l: VertexSet, r: VertexSet) {
        let g = self.g;
        let n = g.n();
        let upcoming = VertexSet::full(n).difference(VertexSet::full(pos));

        // Candidates among undecided vertices.
        let mut cand_l = VertexSet::EMPTY;
        let mut cand_r = VertexSet::EMPTY;
        for u in upcoming {
            let nb = g.neighbors(u);
            if !nb.intersects(l) && r.is_subset(nb) {
                cand_l = cand_l.with(u);
            }
            if !nb.intersects(r) && l.is_subset(nb) {
                cand_r = cand_r.with(u);
            }
        }
        // Excluded vertices that are addable now must remain blockable.
        let decided_out = VertexSet::full(pos).difference(l.union(r));
        for w in decided_out {
            let nb = g.neighbors(w);
            if !nb.intersects(l) && r.is_subset(nb) {
                let blockers = cand_l.intersection(nb).union(cand_r.difference(nb));
                if blockers.is_empty() {
                    return;
                }
            }
            if !nb.intersects(r) && l.is_subset(nb) {
                let blockers = cand_r.intersection(nb).union(cand_l.difference(nb));
                if blockers.is_empty() {
                    return;
                }
            }
        }

        if l.is_empty() {
            // The first chosen vertex goes left.
            cand_r = VertexSet::EMPTY;
        }
        let Some(u) = cand_l.union(cand_r).first() else {
            if !l.is_empty() && !r.is_empty() {
                let (a, b) = extenders(g, l, r);
                if a.is_empty() && b.is_empty() {
                    self.out.push(Biclique::normalized(l, r));
                }
            }
            return;
        };
        if cand_l.contains(u) {
            self.step(u + 1, l.with(u), r);
        }
        if cand_r.contains(u) {
            self.step(u + 1, l, r.with(u));
        }
        self.step(u + 1, l, r);
    }
}

/// Subset-scan oracle: test every vertex subset for inducing a complete
/// bipartite graph with both parts nonempty, then drop sets strictly
/// contained in another such set.
pub fn brute_force_bicliques(g: &Graph) -> Result<Vec<Biclique>> {
    check_host(g)?;
    let n = g.n();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            limit: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    let mut found: Vec<(VertexSet, Biclique)> = Vec::new();
    for mask in 1u64..1u64 << n {
        let s = VertexSet(mask);
        if s.len() < 2 {
            continue;
        }
        let first = s.first().unwrap();
        let side_b = s.intersection(g.neighbors(first));
        let side_a = s.difference(side_b);
        if side_b.is_empty() {
            continue;
        }
        let ok = side_a.iter().all(|v| {
            let nb = g.neighbors(v);
            !nb.intersects(side_a) && side_b.is_subset(nb)
        }) && side_b.iter().all(|v| !g.neighbors(v).intersects(side_b));
        if ok {
            found.push((s, Biclique::normalized(side_a, side_b)));
        }
    }
    let sets: Vec<VertexSet> = found.iter().map(|(s, _)| *s).collect();
    let maximal: BTreeSet<Biclique> = found
        .iter()
        .filter(|(s, _)| !sets.iter().any(|t| t != s && s.is_subset(*t)))
        .map(|(_, b)| *b)
        .collect();
    Ok(maximal.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_slice(v)
    }

    #[test]
    fn p3_has_one_biclique() {
        let b = enumerate_bicliques(&path(3).unwrap()).unwrap();
        assert_eq!(b, vec![Biclique::new(vs(&[1]), vs(&[0, 2])).unwrap()]);
        assert_eq!(b[0].left(), vs(&[0, 2]));
    }

    #[test]
    fn k4_bicliques_are_edges() {
        let k4 = complete(4).unwrap();
        let b = enumerate_bicliques(&k4).unwrap();
        assert_eq!(b.len(), 6);
        assert!(b.iter().all(|x| x.shape() == (1, 1)));
    }

    #[test]
    fn c5_bicliques_are_consecutive_triples() {
        let c5 = cycle(5).unwrap();
        let b = enumerate_bicliques(&c5).unwrap();
        assert_eq!(b, brute_force_bicliques(&c5).unwrap());
        assert_eq!(b.len(), 5);
        for i in 0..5 {
            let want = Biclique::new(vs(&[i]), vs(&[(i + 1) % 5, (i + 4) % 5])).unwrap();
            assert!(b.contains(&want));
        }
    }

    #[test]
    fn k23_and_diamond() {
        let k23 = complete_bipartite(2, 3).unwrap();
        assert_eq!(brute_force_bicliques(&k23).unwrap().len(), 1);
        assert_eq!(enumerate_bicliques(&k23).unwrap().len(), 1);
        let d = diamond();
        let want = vec![
            Biclique::new(vs(&[0]), vs(&[1, 3])).unwrap(),
            Biclique::new(vs(&[0]), vs(&[2])).unwrap(),
            Biclique::new(vs(&[2]), vs(&[1, 3])).unwrap(),
        ];
        let mut want_sorted = want.clone();
        want_sorted.sort();
        assert_eq!(brute_force_bicliques(&d).unwrap(), want_sorted);
        assert_eq!(enumerate_bicliques(&d).unwrap(), want_sorted);
    }

    #[test]
    fn is_biclique_cases() {
        assert!(is_biclique(
            &cycle(4).unwrap(),
            &Biclique::new(vs(&[0, 2]), vs(&[1, 3])).unwrap()
        ));
        assert!(is_biclique(
            &complete(3).unwrap(),
            &Biclique::new(vs(&[0]), vs(&[2])).unwrap()
        ));
        // P4 a-b-c-d: {b}|{a} extends to {b}|{a,c}.
        let p4 = path(4).unwrap();
        assert!(!is_biclique(
            &p4,
            &Biclique::new(vs(&[1]), vs(&[0])).unwrap()
        ));
        assert!(is_biclique(
            &p4,
            &Biclique::new(vs(&[1]), vs(&[0, 2])).unwrap()
        ));
        assert!(!is_biclique(
            &p4,
            &Biclique::new(vs(&[1]), vs(&[0, 9])).unwrap()
        ));
        assert!(!is_biclique(
            &p4,
            &Biclique::new(vs(&[0]), vs(&[2])).unwrap()
        ));
    }

    #[test]
    fn constructor_rejects_bad_parts() {
        assert!(Biclique::new(VertexSet::EMPTY, vs(&[1])).is_err());
        assert!(Biclique::new(vs(&[1, 2]), vs(&[2])).is_err());
    }

    #[test]
    fn host_preconditions() {
        assert_eq!(
            enumerate_bicliques(&Graph::empty(1).unwrap()),
            Err(Error::TooSmallForBicliques)
        );
        assert_eq!(
            enumerate_bicliques(&Graph::empty(3).unwrap()),
            Err(Error::NotConnected)
        );
        assert!(matches!(
            brute_force_bicliques(&cycle(21).unwrap()),
            Err(Error::TooManyVertices { .. })
        ));
    }

    #[test]
    fn cycles_have_k_bicliques() {
        for k in 5..=12 {
            let c = cycle(k).unwrap();
            let b = enumerate_bicliques(&c).unwrap();
            assert_eq!(b.len(), k);
            assert!(b.iter().all(|x| x.shape() == (1, 2)));
        }
    }
}
