//! Evidence harnesses for the three open conjectures. Every status is
//! three-valued: a preimage proves membership, a diamond/gem violation proves
//! non-membership, and anything else stays unknown.

use std::time::Instant;

use rayon::prelude::*;

use crate::atlas::{are_isomorphic, connected_graphs, MAX_GENERATION_ORDER};
use crate::conditions::{check_theorem1, Verdict};
use crate::error::{Error, Result};
use crate::graph::{circulant, cycle_with_pendants, to_graph6, Graph, VertexSet};
use crate::kb::biclique_graph;
use crate::twins::{false_twin_classes, twin_reduce};

use super::{cycle_shape, find_preimage, preimage_index, with_jobs};
use super::{Certificate, LabItem, LabOptions, LabReport, Status};

/// Largest cycle length for the KB(C_k) harness.
pub const CONJECTURE2_MAX_K: usize = 12;

fn check_max_n(max_n: usize) -> Result<()> {
    if (2..=MAX_GENERATION_ORDER).contains(&max_n) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "host order cap must be in 2..={MAX_GENERATION_ORDER}, got {max_n}"
        )))
    }
}

/// `g ≅ KB(C_k) = circulant(k, {1, 2})` for some `k >= 7`.
fn is_cycle_kb(g: &Graph) -> Result<bool> {
    let k = g.n();
    if k < 7 || (0..k).any(|v| g.degree(v) != 4) {
        return Ok(false);
    }
    are_isomorphic(g, &circulant(k, &[1, 2])?)
}

/// Membership status of `g` from the sound certificates alone.
fn membership(g: &Graph, subject_kind: &str, preimage_max_n: usize) -> Result<LabItem> {
    if let Some(h) = find_preimage(g, preimage_max_n)? {
        return Ok(LabItem::new(
            g,
            subject_kind,
            Status::ProvedYes,
            Some(Certificate::preimage(g, &h)),
        ));
    }
    let r = check_theorem1(g);
    Ok(match (r.verdict, r.witness) {
        (Verdict::Fail, Some(p)) => LabItem::new(
            g,
            subject_kind,
            Status::ProvedNo,
            Some(Certificate::violation(g, p)),
        ),
        _ => LabItem::new(g, subject_kind, Status::Unknown, None),
    })
}

fn finish(
    mut report: LabReport,
    start: Instant,
    counterexample_status: Status,
) -> Result<LabReport> {
    report.tally_items();
    let bad: Vec<String> = report
        .items
        .iter()
        .filter(|i| i.status == counterexample_status)
        .map(|i| i.subject.clone())
        .collect();
    report.counts.insert("counterexamples".into(), bad.len());
    for s in &bad {
        report.notes.push(format!("COUNTEREXAMPLE CANDIDATE: {s}"));
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    report.ensure_certificates()
}

/// For every distinct biclique graph `G = KB(H)` over connected twin-free
/// hosts with at most `max_n` vertices, other than `KB(C_k)`, look for a
/// vertex `q` with `G - q` certified a biclique graph.
///
/// `proved-no` needs every `G - q` to fail the diamond/gem condition and is
/// a counterexample.
pub fn test_conjecture1(max_n: usize, opts: LabOptions) -> Result<LabReport> {
    check_max_n(max_n)?;
    let start = Instant::now();
    let ix = preimage_index(max_n)?;
    let graphs: Vec<&Graph> = ix.entries.iter().map(|(kb, _)| kb).collect();
    let results: Vec<Option<LabItem>> = with_jobs(opts.jobs, || {
        graphs
            .par_iter()
            .map(|g| {
                if g.n() < 2 || is_cycle_kb(g)? {
                    return Ok(None);
                }
                let mut witnesses = Vec::with_capacity(g.n());
                for q in 0..g.n() {
                    let (h, _) = g.remove_vertex(q)?;
                    if let Some(pre) = find_preimage(&h, opts.preimage_max_n)? {
                        return Ok(Some(LabItem::new(
                            g,
                            "removable-vertex",
                            Status::ProvedYes,
                            Some(Certificate::preimage(&h, &pre)),
                        )));
                    }
                    let r = check_theorem1(&h);
                    if r.verdict == Verdict::Fail {
                        witnesses.push(r.witness.unwrap());
                    }
                }
                Ok(Some(if witnesses.len() == g.n() {
                    LabItem::new(
                        g,
                        "removable-vertex",
                        Status::ProvedNo,
                        Some(Certificate::EveryRemovalViolates {
                            graph: to_graph6(g),
                            witnesses,
                        }),
                    )
                } else {
                    LabItem::new(g, "removable-vertex", Status::Unknown, None)
                }))
            })
            .collect::<Result<Vec<_>>>()
    })??;

    let mut report = LabReport::new("conjecture1")
        .param("max_n", max_n)
        .param("preimage_max_n", opts.preimage_max_n);
    report.counts.insert("biclique_graphs".into(), graphs.len());
    report.counts.insert(
        "excluded".into(),
        results.iter().filter(|r| r.is_none()).count(),
    );
    report.items = results.into_iter().flatten().collect();
    report.notes.push(format!(
        "coverage: only biclique graphs of connected hosts with at most {max_n} vertices; \
         one-vertex graphs and KB(C_k) are excluded"
    ));
    finish(report, start, Status::ProvedNo)
}

/// Hosts built from `C_k` by hanging pendants on cycle vertices and adding
/// false twins; all have `KB ≅ KB(C_k)`.
pub fn conjecture2_positive_family(k: usize) -> Result<Vec<Graph>> {
    let all: Vec<usize> = (0..k).collect();
    let alternate: Vec<usize> = (0..k).step_by(2).collect();
    let bare = cycle_with_pendants(k, &[])?;
    let every = cycle_with_pendants(k, &all)?;
    let alt = cycle_with_pendants(k, &alternate)?;
    let doubled = cycle_with_pendants(k, &[0, 1])?.add_vertex(VertexSet::singleton(0))?;
    let twin_of_zero = every.add_vertex(every.neighbors(0))?;
    let twin_of_one = bare.add_vertex(bare.neighbors(1))?;
    Ok(vec![bare, every, alt, doubled, twin_of_zero, twin_of_one])
}

/// For every connected host `H` with at most `max_n` vertices and
/// `KB(H) ≅ KB(C_k)`, `7 <= k <= k_max`, check the shape of `Tw(H)`; also
/// check the constructed positive family for each such `k`.
///
/// `proved-yes` means the instance agrees with the conjecture and
/// `proved-no` is a counterexample.
pub fn test_conjecture2(k_max: usize, max_n: usize, opts: LabOptions) -> Result<LabReport> {
    check_max_n(max_n)?;
    if !(7..=CONJECTURE2_MAX_K).contains(&k_max) {
        return Err(Error::InvalidParameter(format!(
            "k_max must be in 7..={CONJECTURE2_MAX_K}, got {k_max}"
        )));
    }
    let start = Instant::now();
    let mut hosts = Vec::new();
    for n in 2..=max_n {
        hosts.extend(connected_graphs(n)?.iter().cloned());
    }
    let classify = |h: &Graph, kind: &str| -> Result<Option<LabItem>> {
        let kb = biclique_graph(h)?.graph;
        let k = kb.n();
        if !(7..=k_max).contains(&k) || !is_cycle_kb(&kb)? {
            return Ok(None);
        }
        let shape_ok = cycle_shape(&twin_reduce(h).graph, k);
        let status = if shape_ok {
            Status::ProvedYes
        } else {
            Status::ProvedNo
        };
        let cert = Certificate::CycleKb {
            host: to_graph6(h),
            k,
            shape_ok,
        };
        Ok(Some(LabItem::new(h, kind, status, Some(cert))))
    };

    let scanned: Vec<Option<LabItem>> = with_jobs(opts.jobs, || {
        hosts
            .par_iter()
            .map(|h| classify(h, "atlas-host"))
            .collect::<Result<Vec<_>>>()
    })??;

    let mut positive = 0;
    let mut positive_consistent = 0;
    let mut report = LabReport::new("conjecture2")
        .param("k_max", k_max)
        .param("max_n", max_n);
    report.items = scanned.into_iter().flatten().collect();
    report.counts.insert("hosts_scanned".into(), hosts.len());
    report
        .counts
        .insert("cycle_kb_hosts".into(), report.items.len());
    for k in 7..=k_max {
        for h in conjecture2_positive_family(k)? {
            positive += 1;
            match classify(&h, "positive-family")? {
                Some(item) => {
                    if item.status == Status::ProvedYes {
                        positive_consistent += 1;
                    }
                    report.items.push(item);
                }
                None => {
                    report.notes.push(format!(
                        "positive-family host {} has KB ≇ KB(C_{k})",
                        to_graph6(&h)
                    ));
                    report
                        .items
                        .push(LabItem::new(&h, "positive-family", Status::Unknown, None));
                }
            }
        }
    }
    report.counts.insert("positive_family".into(), positive);
    report
        .counts
        .insert("positive_consistent".into(), positive_consistent);
    report.notes.push(format!(
        "coverage: atlas hosts with at most {max_n} vertices and the constructed cycle-plus-pendant family"
    ));
    finish(report, start, Status::ProvedNo)
}

/// For every distinct biclique graph `G` over connected twin-free hosts with
/// at most `max_n` vertices and every false-twin class of `G`, the status of
/// `G - q` for one member `q`, and of `Tw(G)`. A `proved-no` is a
/// counterexample.
pub fn test_conjecture3(max_n: usize, opts: LabOptions) -> Result<LabReport> {
    check_max_n(max_n)?;
    let start = Instant::now();
    let ix = preimage_index(max_n)?;
    let graphs: Vec<&Graph> = ix.entries.iter().map(|(kb, _)| kb).collect();
    let per_graph: Vec<Vec<LabItem>> = with_jobs(opts.jobs, || {
        graphs
            .par_iter()
            .map(|g| {
                let classes = false_twin_classes(g);
                let mut items = Vec::new();
                for class in classes.classes.iter().filter(|c| c.len() > 1) {
                    let (h, _) = g.remove_vertex(class[1])?;
                    items.push(membership(&h, "remove-false-twin", opts.preimage_max_n)?);
                }
                if !items.is_empty() {
                    let tw = twin_reduce(g).graph;
                    items.push(membership(&tw, "twin-reduction", opts.preimage_max_n)?);
                }
                Ok(items)
            })
            .collect::<Result<Vec<_>>>()
    })??;

    let mut report = LabReport::new("conjecture3")
        .param("max_n", max_n)
        .param("preimage_max_n", opts.preimage_max_n);
    report.counts.insert("biclique_graphs".into(), graphs.len());
    report.counts.insert(
        "graphs_with_twins".into(),
        per_graph.iter().filter(|items| !items.is_empty()).count(),
    );
    report.items = per_graph.into_iter().flatten().collect();
    report.notes.push(format!(
        "coverage: only biclique graphs of connected hosts with at most {max_n} vertices"
    ));
    finish(report, start, Status::ProvedNo)
}
