//! The biclique graph KB(H): the intersection graph of all bicliques of H.

use serde::Serialize;

use crate::bicliques::{enumerate_bicliques, Biclique};
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

/// KB(H) with the correspondence between KB-vertices and bicliques of H.
#[derive(Clone, Debug)]
pub struct LabeledKB {
    pub graph: Graph,
    /// `bicliques[i]` is the biclique of the host behind KB-vertex `i`.
    pub bicliques: Vec<Biclique>,
    pub host_n: usize,
}

impl LabeledKB {
    pub fn degree(&self, q: usize) -> usize {
        self.graph.degree(q)
    }

    pub fn index_of(&self, b: &Biclique) -> Option<usize> {
        self.bicliques.iter().position(|x| x == b)
    }

    pub fn check_vertex(&self, q: usize) -> Result<()> {
        if q < self.bicliques.len() {
            Ok(())
        } else {
            Err(Error::NoSuchKbVertex {
                vertex: q,
                count: self.bicliques.len(),
            })
        }
    }

    /// Serializable vertex -> biclique map.
    pub fn vertex_map(&self) -> Vec<KbVertexEntry> {
        self.bicliques
            .iter()
            .enumerate()
            .map(|(vertex, b)| KbVertexEntry {
                vertex,
                biclique: *b,
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KbVertexEntry {
    pub vertex: usize,
    pub biclique: Biclique,
}

/// Intersection graph of an explicit biclique family.
pub fn intersection_graph(family: &[Biclique]) -> Result<Graph> {
    if family.len() > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n: family.len(),
            limit: MAX_VERTICES,
        });
    }
    let masks: Vec<u64> = family.iter().map(|b| b.vertices().bits()).collect();
    let adj = masks
        .iter()
        .enumerate()
        .map(|(i, &mi)| {
            masks.iter().enumerate().fold(0u64, |row, (j, &mj)| {
                if i != j && mi & mj != 0 {
                    row | 1 << j
                } else {
                    row
                }
            })
        })
        .collect();
    Graph::from_adjacency(adj)
}

pub fn biclique_graph(h: &Graph) -> Result<LabeledKB> {
    let bicliques = enumerate_bicliques(h)?;
    let graph = intersection_graph(&bicliques)?;
    Ok(LabeledKB {
        graph,
        bicliques,
        host_n: h.n(),
    })
}

/// Number of other bicliques of `h` meeting `b`.
pub fn kb_degree(h: &Graph, b: &Biclique) -> Result<usize> {
    let all = enumerate_bicliques(h)?;
    if !all.contains(b) {
        return Err(Error::NotABiclique);
    }
    Ok(all.iter().filter(|x| *x != b && x.intersects(b)).count())
}
