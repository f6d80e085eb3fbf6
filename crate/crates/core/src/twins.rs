//! False twins (vertices with equal open neighborhoods) and the Tw(G)
//! reduction that keeps one representative per twin class.

use serde::Serialize;

use crate::graph::{Graph, Relabeling, VertexSet};

/// Partition of the vertices into maximal false-twin classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwinPartition {
    /// Classes ordered by their smallest member.
    pub classes: Vec<Vec<usize>>,
    /// `representatives[i]` is the smallest vertex of `classes[i]`.
    pub representatives: Vec<usize>,
    /// `class_of[v]` is the index of the class containing `v`.
    pub class_of: Vec<usize>,
}

impl TwinPartition {
    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    pub fn representative_of(&self, v: usize) -> usize {
        self.representatives[self.class_of[v]]
    }
}

/// Group vertices by open neighborhood, sorting `(mask, vertex)` pairs.
pub fn false_twin_classes(g: &Graph) -> TwinPartition {
    let mut keyed: Vec<(u64, usize)> = (0..g.n()).map(|v| (g.neighbors(v).bits(), v)).collect();
    keyed.sort_unstable();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, &(mask, v)) in keyed.iter().enumerate() {
        if i > 0 && keyed[i - 1].0 == mask {
            groups.last_mut().unwrap().push(v);
        } else {
            groups.push(vec![v]);
        }
    }
    // Vertices within a group are already ascending; order groups by minimum.
    groups.sort_unstable_by_key(|c| c[0]);
    let mut class_of = vec![0; g.n()];
    for (i, class) in groups.iter().enumerate() {
        for &v in class {
            class_of[v] = i;
        }
    }
    TwinPartition {
        representatives: groups.iter().map(|c| c[0]).collect(),
        classes: groups,
        class_of,
    }
}

pub fn is_twin_free(g: &Graph) -> bool {
    let mut masks: Vec<u64> = (0..g.n()).map(|v| g.neighbors(v).bits()).collect();
    masks.sort_unstable();
    masks.windows(2).all(|w| w[0] != w[1])
}

/// Tw(G) together with the partition it came from.
#[derive(Clone, Debug)]
pub struct TwinReduction {
    pub graph: Graph,
    /// `old_to_new[v]` is `Some` exactly for representatives.
    pub relabeling: Relabeling,
    pub partition: TwinPartition,
}

impl TwinReduction {
    /// New index of the kept vertex standing in for old vertex `v`.
    pub fn image_of(&self, v: usize) -> usize {
        self.relabeling.old_to_new[self.partition.representative_of(v)]
            .expect("representatives are kept")
    }
}

/// Delete every non-representative of each twin class in one pass.
///
/// One pass always suffices: if kept vertices `u`, `w` differed only on a
/// deleted `z`, then `z`'s representative has the same neighborhood as `z`
/// and still separates them. The result is asserted twin-free.
pub fn twin_reduce(g: &Graph) -> TwinReduction {
    let partition = false_twin_classes(g);
    let keep: VertexSet = partition.representatives.iter().copied().collect();
    let (graph, relabeling) = if g.n() == 0 {
        (g.clone(), Relabeling::identity(0))
    } else {
        g.induced_subgraph(keep)
            .expect("representatives are valid vertices")
    };
    assert!(
        is_twin_free(&graph),
        "false twins remain after one reduction pass"
    );
    TwinReduction {
        graph,
        relabeling,
        partition,
    }
}
