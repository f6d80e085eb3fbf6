//! Canonical labeling by individualization and refinement.
//!
//! The search tree branches on the vertices of the first non-singleton cell
//! of an equitable ordered partition. Every leaf is a vertex ordering; the
//! canonical ordering is the one whose relabeled upper-triangle bit string
//! (graph6 bit order) is lexicographically smallest. Leaves that produce the
//! same relabeled graph yield automorphisms, which prune sibling branches
//! lying in the same orbit of the stabilizer of the current prefix.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest graph accepted by [`canonical_form`].
pub const CANON_MAX_VERTICES: usize = crate::graph::MAX_VERTICES;

// Automorphisms beyond this count are discarded; pruning stays sound either way.
const MAX_STORED_AUTOMORPHISMS: usize = 128;

/// A key equal for two graphs exactly when they are isomorphic.
///
/// Layout: the vertex count as one byte, then the upper-triangle adjacency
/// bits of the canonically relabeled graph in graph6 order, packed MSB-first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0[0] as usize
    }
}

/// Result of canonical labeling: the key plus the labeling that realizes it.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub form: CanonicalForm,
    /// `labeling[v]` is the canonical index of input vertex `v`.
    pub labeling: Vec<usize>,
}

impl Canonical {
    pub fn graph(&self, g: &Graph) -> Graph {
        g.permute_unchecked(&self.labeling)
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    Ok(canonicalize(g)?.form)
}

pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    Ok(canonicalize(g)?.graph(g))
}

pub fn canonicalize(g: &Graph) -> Result<Canonical> {
    let n = g.n();
    if n > CANON_MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            limit: CANON_MAX_VERTICES,
        });
    }
    if n == 0 {
        return Ok(Canonical {
            form: CanonicalForm(vec![0]),
            labeling: vec![],
        });
    }
    let mut search = Search {
        g,
        first: None,
        best: None,
        automorphisms: Vec::new(),
        jump: None,
    };
    let root = refine(g, vec![VertexSet::full(n)]);
    search.descend(root, &mut Vec::new());
    let (_, order, bits) = search.best.expect("search visits at least one leaf");
    let mut labeling = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        labeling[v] = pos;
    }
    let mut key = Vec::with_capacity(1 + bits.len());
    key.push(n as u8);
    key.extend_from_slice(&bits);
    Ok(Canonical {
        form: CanonicalForm(key),
        labeling,
    })
}

struct Search<'a> {
    g: &'a Graph,
    /// First leaf: individualization sequence, vertex order, bit string.
    first: Option<(Vec<usize>, Vec<usize>, Vec<u8>)>,
    /// Best leaf so far: individualization sequence, vertex order, bit string.
    best: Option<(Vec<usize>, Vec<usize>, Vec<u8>)>,
    automorphisms: Vec<Vec<usize>>,
    /// Depth of the node to resume at after an automorphism was found.
    jump: Option<usize>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<VertexSet>, prefix: &mut Vec<usize>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells, prefix);
            return;
        };
        let depth = prefix.len();
        let cell = cells[target];
        let mut tried = VertexSet::EMPTY;
        for v in cell {
            if !tried.is_empty() && self.equivalent_to_tried(prefix, tried, v) {
                continue;
            }
            tried = tried.with(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(VertexSet::singleton(v));
            child.push(cell.without(v));
            child.extend_from_slice(&cells[target + 1..]);
            prefix.push(v);
            self.descend(refine(self.g, child), prefix);
            prefix.pop();
            match self.jump {
                Some(t) if t < depth => return,
                Some(t) if t == depth => self.jump = None,
                _ => {}
            }
        }
    }

    /// Whether `v` shares an orbit with an already explored sibling under the
    /// known automorphisms that fix `prefix` pointwise.
    fn equivalent_to_tried(&self, prefix: &[usize], tried: VertexSet, v: usize) -> bool {
        let n = self.g.n();
        let mut uf = UnionFind::new(n);
        let mut any = false;
        for gamma in &self.automorphisms {
            if prefix.iter().all(|&p| gamma[p] == p) {
                any = true;
                for (x, &y) in gamma.iter().enumerate() {
                    uf.union(x, y);
                }
            }
        }
        if !any {
            return false;
        }
        let root = uf.find(v);
        tried.iter().any(|u| uf.find(u) == root)
    }

    /// An automorphism maps the earlier leaf's path onto this one, so the
    /// subtree below their divergence point is a copy of one already seen.
    fn record_automorphism(
        &mut self,
        from_order: &[usize],
        to_order: &[usize],
        from_seq: &[usize],
        to_seq: &[usize],
    ) {
        if self.automorphisms.len() < MAX_STORED_AUTOMORPHISMS {
            let mut gamma = vec![0; to_order.len()];
            for (a, b) in from_order.iter().zip(to_order) {
                gamma[*a] = *b;
            }
            self.automorphisms.push(gamma);
        }
        let diverge = from_seq
            .iter()
            .zip(to_seq)
            .position(|(a, b)| a != b)
            .unwrap_or(from_seq.len().min(to_seq.len()));
        self.jump = Some(diverge);
    }

    fn leaf(&mut self, cells: &[VertexSet], prefix: &[usize]) {
        let order: Vec<usize> = cells.iter().map(|c| c.first().unwrap()).collect();
        let bits = relabeled_bits(self.g, &order);
        let Some((first_seq, first_order, first_bits)) = &self.first else {
            self.first = Some((prefix.to_vec(), order.clone(), bits.clone()));
            self.best = Some((prefix.to_vec(), order, bits));
            return;
        };
        if &bits == first_bits {
            let (fs, fo) = (first_seq.clone(), first_order.clone());
            self.record_automorphism(&fo, &order, &fs, prefix);
            return;
        }
        let (best_seq, best_order, best_bits) = self.best.as_ref().unwrap();
        match bits.cmp(best_bits) {
            Ordering::Less => self.best = Some((prefix.to_vec(), order, bits)),
            Ordering::Equal => {
                let (bs, bo) = (best_seq.clone(), best_order.clone());
                self.record_automorphism(&bo, &order, &bs, prefix);
            }
            Ordering::Greater => {}
        }
    }
}

/// Upper-triangle bits of `g` relabeled by `order` (position -> vertex), in
/// graph6 column order, packed MSB-first.
pub(crate) fn relabeled_bits(g: &Graph, order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let nbits = n * n.saturating_sub(1) / 2;
    let mut out = vec![0u8; nbits.div_ceil(8)];
    let mut k = 0;
    for j in 1..n {
        let row = g.neighbors(order[j]);
        for &oi in &order[..j] {
            if row.contains(oi) {
                out[k / 8] |= 0x80 >> (k % 8);
            }
            k += 1;
        }
    }
    out
}

/// Refine an ordered partition to the coarsest equitable partition below it.
///
/// Each round splits every cell by the vector of neighbor counts into all
/// current cells; sub-cells are ordered by that vector, which depends only on
/// the structure, so refinement commutes with relabeling.
pub(crate) fn refine(g: &Graph, mut cells: Vec<VertexSet>) -> Vec<VertexSet> {
    loop {
        let mut next = Vec::with_capacity(cells.len());
        for &cell in &cells {
            if cell.len() == 1 {
                next.push(cell);
                continue;
            }
            let mut sigs: Vec<(Vec<u8>, usize)> = cell
                .iter()
                .map(|v| {
                    let nb = g.neighbors(v);
                    let sig = cells
                        .iter()
                        .map(|c| nb.intersection(*c).len() as u8)
                        .collect();
                    (sig, v)
                })
                .collect();
            sigs.sort();
            let mut current = VertexSet::singleton(sigs[0].1);
            for w in sigs.windows(2) {
                if w[0].0 == w[1].0 {
                    current = current.with(w[1].1);
                } else {
                    next.push(current);
                    current = VertexSet::singleton(w[1].1);
                }
            }
            next.push(current);
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
