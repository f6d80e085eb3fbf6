//! Canonical forms, isomorphism, and exhaustive generation of small
//! connected graphs up to isomorphism.

mod canon;

pub use canon::{
    canonical_form, canonical_graph, canonicalize, Canonical, CanonicalForm, CANON_MAX_VERTICES,
};

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{parse_graph6, to_graph6, Graph, VertexSet};
use crate::twins::is_twin_free;

/// Largest order [`connected_graphs`] will generate.
pub const MAX_GENERATION_ORDER: usize = 8;

/// Isomorphism test. Returns a bijection `phi` with `u ~ v` in `g1` iff
/// `phi[u] ~ phi[v]` in `g2`, verified edge by edge before it is returned.
pub fn isomorphism(g1: &Graph, g2: &Graph) -> Result<Option<Vec<usize>>> {
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    if g1.degree_sequence() != g2.degree_sequence() {
        return Ok(None);
    }
    let c1 = canonicalize(g1)?;
    let c2 = canonicalize(g2)?;
    if c1.form != c2.form {
        return Ok(None);
    }
    let mut inv2 = vec![0; g2.n()];
    for (v, &pos) in c2.labeling.iter().enumerate() {
        inv2[pos] = v;
    }
    let phi: Vec<usize> = c1.labeling.iter().map(|&pos| inv2[pos]).collect();
    if !is_isomorphism(g1, g2, &phi) {
        return Err(Error::VerificationFailed(
            "canonical keys agree but the derived bijection is not an isomorphism".into(),
        ));
    }
    Ok(Some(phi))
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    Ok(isomorphism(g1, g2)?.is_some())
}

/// Edge-by-edge check that `phi` maps `g1` onto `g2`.
pub fn is_isomorphism(g1: &Graph, g2: &Graph, phi: &[usize]) -> bool {
    if g1.n() != g2.n() || phi.len() != g1.n() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let image: VertexSet = phi.iter().copied().filter(|&v| v < g2.n()).collect();
    if image.len() != g1.n() {
        return false;
    }
    g1.edges().all(|(u, v)| g2.has_edge(phi[u], phi[v]))
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_GENERATION_ORDER {
        Err(Error::InvalidParameter(format!(
            "generation order must be in 1..={MAX_GENERATION_ORDER}, got {n}"
        )))
    } else {
        Ok(())
    }
}

fn level_cache() -> &'static Mutex<Vec<Arc<Vec<Graph>>>> {
    static CACHE: OnceLock<Mutex<Vec<Arc<Vec<Graph>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// Every connected graph on `n` vertices, one per isomorphism class, each in
/// its canonical labeling, sorted by canonical key.
///
/// Level `n` is built from level `n - 1` by appending a vertex with every
/// nonempty neighborhood, canonicalizing, and deduplicating. Removing a
/// non-cut vertex of a connected graph leaves a connected graph, so no class
/// is missed. Levels are cached for the life of the process.
pub fn connected_graphs(n: usize) -> Result<Arc<Vec<Graph>>> {
    check_order(n)?;
    let mut cache = level_cache().lock().unwrap_or_else(|e| e.into_inner());
    if cache.is_empty() {
        cache.push(Arc::new(vec![Graph::empty(1)?]));
    }
    while cache.len() < n {
        let next = extend_level(cache.last().unwrap())?;
        cache.push(Arc::new(next));
    }
    Ok(cache[n - 1].clone())
}

fn extend_level(parents: &[Graph]) -> Result<Vec<Graph>> {
    let m = parents[0].n();
    let children: Vec<(CanonicalForm, Graph)> = parents
        .par_iter()
        .map(|g| {
            (1u64..1 << m)
                .map(|mask| {
                    let h = g.add_vertex(VertexSet(mask))?;
                    let c = canonicalize(&h)?;
                    let cg = c.graph(&h);
                    Ok((c.form, cg))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let unique: BTreeMap<CanonicalForm, Graph> = children.into_iter().collect();
    Ok(unique.into_values().collect())
}

/// Alias matching the operation name used by the CLI and reports.
pub fn generate_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(connected_graphs(n)?.as_ref().clone())
}

/// Connected graphs on `n` vertices without a false-twin pair.
pub fn generate_twin_free_connected(n: usize) -> Result<Vec<Graph>> {
    Ok(connected_graphs(n)?
        .iter()
        .filter(|g| is_twin_free(g))
        .cloned()
        .collect())
}

/// Connected twin-free graphs with `lo <= n <= hi` in increasing order of
/// `n`, then generation order.
pub fn twin_free_range(lo: usize, hi: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in lo.max(1)..=hi {
        out.extend(generate_twin_free_connected(n)?);
    }
    Ok(out)
}

/// Read one graph6 record per nonempty line.
pub fn read_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_graph6)
        .collect()
}

pub fn write_graph6_lines(graphs: &[Graph]) -> String {
    let mut out = String::new();
    for g in graphs {
        out.push_str(&to_graph6(g));
        out.push('\n');
    }
    out
}

/// Deduplicate externally supplied graphs by isomorphism class, keeping the
/// first representative of each class in input order.
pub fn dedup_isomorphic(graphs: &[Graph]) -> Result<Vec<Graph>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for g in graphs {
        if seen.insert(canonical_form(g)?) {
            out.push(g.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CountSummary {
    pub n: usize,
    pub connected: usize,
    pub twin_free: usize,
}

pub fn count_summary(n: usize) -> Result<CountSummary> {
    let all = connected_graphs(n)?;
    Ok(CountSummary {
        n,
        connected: all.len(),
        twin_free: all.iter().filter(|g| is_twin_free(g)).count(),
    })
}
