//! Sound but incomplete biclique-graph membership: search small twin-free
//! hosts for one whose KB is isomorphic to the query.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::atlas::{
    canonical_form, isomorphism, twin_free_range, CanonicalForm, MAX_GENERATION_ORDER,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kb::biclique_graph;

/// Default host-order cap for preimage search.
pub const DEFAULT_PREIMAGE_ORDER: usize = 8;

/// Every connected twin-free host up to `max_n` vertices, in search order
/// (increasing order, then generation order), keyed by the canonical form of
/// its KB. Only the first host for each key is kept, so lookups return a
/// minimum-order witness.
#[derive(Debug)]
pub struct PreimageIndex {
    pub max_n: usize,
    /// Distinct KB graphs as `(kb, first host)` in search order.
    pub entries: Vec<(Graph, Graph)>,
    lookup: HashMap<CanonicalForm, usize>,
}

impl PreimageIndex {
    fn build(max_n: usize) -> Result<PreimageIndex> {
        let hosts = if max_n >= 2 {
            twin_free_range(2, max_n)?
        } else {
            Vec::new()
        };
        let keyed: Vec<(CanonicalForm, Graph)> = hosts
            .par_iter()
            .map(|h| {
                let kb = biclique_graph(h)?.graph;
                Ok((canonical_form(&kb)?, kb))
            })
            .collect::<Result<_>>()?;
        let mut lookup = HashMap::new();
        let mut entries = Vec::new();
        for ((key, kb), host) in keyed.into_iter().zip(hosts) {
            lookup.entry(key).or_insert_with(|| {
                entries.push((kb, host));
                entries.len() - 1
            });
        }
        Ok(PreimageIndex {
            max_n,
            entries,
            lookup,
        })
    }

    pub fn get(&self, g: &Graph) -> Result<Option<&Graph>> {
        Ok(self
            .lookup
            .get(&canonical_form(g)?)
            .map(|&i| &self.entries[i].1))
    }
}

/// Cached index for host orders `<= max_n`.
pub fn preimage_index(max_n: usize) -> Result<Arc<PreimageIndex>> {
    check_cap(max_n)?;
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<PreimageIndex>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(ix) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&max_n) {
        return Ok(ix.clone());
    }
    // Built outside the lock so concurrent callers with other caps proceed.
    let ix = Arc::new(PreimageIndex::build(max_n)?);
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    Ok(guard.entry(max_n).or_insert(ix).clone())
}

fn check_cap(max_n: usize) -> Result<()> {
    if max_n > MAX_GENERATION_ORDER {
        Err(Error::InvalidParameter(format!(
            "preimage host order cap is {MAX_GENERATION_ORDER}, got {max_n}"
        )))
    } else {
        Ok(())
    }
}

/// First connected twin-free `H` with at most `max_n` vertices and
/// `KB(H) ≅ g`, re-verified by an explicit isomorphism. `None` means unknown,
/// not a proof that `g` is not a biclique graph.
pub fn find_preimage(g: &Graph, max_n: usize) -> Result<Option<Graph>> {
    check_cap(max_n)?;
    if g.n() == 0 || !g.is_connected() {
        return Ok(None);
    }
    let ix = preimage_index(max_n)?;
    let Some(h) = ix.get(g)? else { return Ok(None) };
    if isomorphism(&biclique_graph(h)?.graph, g)?.is_none() {
        return Err(Error::VerificationFailed(
            "indexed preimage does not re-verify".into(),
        ));
    }
    Ok(Some(h.clone()))
}
