//! Removing a degree-2 vertex from a biclique graph.
//!
//! For a twin-free host `H` with at least seven vertices, a KB-vertex `q` of
//! degree 2 comes from one of two host shapes:
//!
//! * family 1: `B = {v} ∪ {w}` with `N[v] = N[w] = {v, w, x}` and
//!   `I = N(x) - {v, w}` independent;
//! * family 2: `B = {b} ∪ {a, c}` with `N(a) = {b}` and `N(b) = {a, c}`.
//!
//! Each shape has a direct construction of `H'` with `KB(H') ≅ KB(H) - q`.
//! Smaller hosts fall back to a search over small twin-free preimages. Every
//! result is checked by isomorphism before it is returned.

use std::collections::HashSet;

use serde::Serialize;

use crate::atlas::{canonical_form, isomorphism};
use crate::bicliques::{is_biclique, Biclique};
use crate::conditions::{check_theorem1, verify_violation, Verdict, P3};
use crate::error::{Error, Result};
use crate::graph::{to_graph6, Graph, Relabeling, VertexSet};
use crate::kb::{biclique_graph, LabeledKB};
use crate::lab::find_preimage;
use crate::twins::{is_twin_free, twin_reduce, TwinReduction};

/// Hosts at least this large always match a family.
pub const FAMILY_GUARANTEE_ORDER: usize = 7;

/// Host order bound for the preimage fallback.
pub const FALLBACK_PREIMAGE_ORDER: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum Family {
    #[serde(rename = "1")]
    One {
        v: usize,
        w: usize,
        x: usize,
        #[serde(serialize_with = "ser_set")]
        independent: VertexSet,
    },
    #[serde(rename = "2")]
    Two { a: usize, b: usize, c: usize },
}

fn ser_set<S: serde::Serializer>(s: &VertexSet, ser: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize as _;
    s.to_vec().serialize(ser)
}

/// Classification of a degree-2 KB-vertex by the shape of its host.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Degree2Plan {
    pub biclique: Biclique,
    #[serde(flatten)]
    pub family: Family,
}

impl Degree2Plan {
    pub fn family_number(&self) -> u8 {
        match self.family {
            Family::One { .. } => 1,
            Family::Two { .. } => 2,
        }
    }

    /// Literal re-check of every structural condition against `h`.
    pub fn validate(&self, h: &Graph) -> bool {
        if !is_biclique(h, &self.biclique) {
            return false;
        }
        match self.family {
            Family::One {
                v,
                w,
                x,
                independent,
            } => {
                let vw_x = VertexSet::from_slice(&[v, w, x]);
                let expect_b = Biclique::new(VertexSet::singleton(v), VertexSet::singleton(w));
                v < h.n()
                    && w < h.n()
                    && x < h.n()
                    && expect_b.is_ok_and(|b| b == self.biclique)
                    && h.closed_neighbors(v) == vw_x
                    && h.closed_neighbors(w) == vw_x
                    && independent == h.neighbors(x).without(v).without(w)
                    && h.is_independent_set(independent).unwrap_or(false)
            }
            Family::Two { a, b, c } => {
                let expect_b =
                    Biclique::new(VertexSet::singleton(b), VertexSet::from_slice(&[a, c]));
                a < h.n()
                    && b < h.n()
                    && c < h.n()
                    && expect_b.is_ok_and(|b| b == self.biclique)
                    && h.neighbors(a) == VertexSet::singleton(b)
                    && h.neighbors(b) == VertexSet::from_slice(&[a, c])
            }
        }
    }
}

/// For a family-1 plan, the two bicliques that meet `B`:
/// `{x} ∪ (N(x) - {w})` and `{x} ∪ (N(x) - {v})`.
pub fn family1_neighbor_bicliques(h: &Graph, plan: &Degree2Plan) -> Option<(Biclique, Biclique)> {
    let Family::One { v, w, x, .. } = plan.family else {
        return None;
    };
    let nx = h.neighbors(x);
    let b1 = Biclique::new(VertexSet::singleton(x), nx.without(w)).ok()?;
    let b2 = Biclique::new(VertexSet::singleton(x), nx.without(v)).ok()?;
    Some((b1, b2))
}

/// Match the biclique behind `q` to one of the two families.
pub fn classify_degree2(h: &Graph, kb: &LabeledKB, q: usize) -> Result<Degree2Plan> {
    kb.check_vertex(q)?;
    let degree = kb.degree(q);
    if degree != 2 {
        return Err(Error::NotDegreeTwo { vertex: q, degree });
    }
    if !is_twin_free(h) {
        return Err(Error::HasFalseTwins);
    }
    let biclique = kb.bicliques[q];
    let (small, large) = if biclique.left().len() <= biclique.right().len() {
        (biclique.left(), biclique.right())
    } else {
        (biclique.right(), biclique.left())
    };
    let plan = match biclique.shape() {
        (1, 1) => {
            let v = small.first().unwrap();
            let w = large.first().unwrap();
            let nv = h.closed_neighbors(v);
            if nv != h.closed_neighbors(w) || nv.len() != 3 {
                return Err(Error::NoFamilyMatches);
            }
            let x = nv.without(v).without(w).first().unwrap();
            let independent = h.neighbors(x).without(v).without(w);
            if independent.is_empty() || !h.is_independent_set(independent)? {
                return Err(Error::NoFamilyMatches);
            }
            Degree2Plan {
                biclique,
                family: Family::One {
                    v,
                    w,
                    x,
                    independent,
                },
            }
        }
        (1, 2) => {
            let b = small.first().unwrap();
            let ends = large.to_vec();
            let found = [(ends[0], ends[1]), (ends[1], ends[0])]
                .into_iter()
                .find(|&(a, c)| {
                    h.neighbors(a) == VertexSet::singleton(b)
                        && h.neighbors(b) == VertexSet::from_slice(&[a, c])
                });
            match found {
                Some((a, c)) => Degree2Plan {
                    biclique,
                    family: Family::Two { a, b, c },
                },
                None => return Err(Error::NoFamilyMatches),
            }
        }
        _ => return Err(Error::NoFamilyMatches),
    };
    debug_assert!(plan.validate(h));
    Ok(plan)
}

/// Build `H'` from a validated plan.
///
/// Family 1 deletes `v` and `w`, adds a copy `y` of `x` (so
/// `N(y) = N(x) - {v, w}`), and hangs a pendant on each of `x` and `y`; the
/// three new vertices are appended in the order `y`, `x'`, `y'`. Family 2
/// deletes `a`.
///
/// When `|I| >= 2` and no vertex other than `x` is adjacent to all of `I`,
/// the family-1 result has the extra biclique `{x, y} ∪ I` and its KB has
/// one vertex too many; see [`construct_h_prime_repaired`].
pub fn construct_h_prime(h: &Graph, plan: &Degree2Plan) -> Result<(Graph, Relabeling)> {
    if !plan.validate(h) {
        return Err(Error::StalePlan);
    }
    match plan.family {
        Family::One { v, w, x, .. } => {
            let (base, mut rel) = h.remove_vertices(VertexSet::from_slice(&[v, w]))?;
            let x_new = rel.old_to_new[x].expect("x survives");
            let y = base.n();
            let with_y = base.add_vertex(base.neighbors(x_new))?;
            let with_xp = with_y.add_vertex(VertexSet::singleton(x_new))?;
            let h_prime = with_xp.add_vertex(VertexSet::singleton(y))?;
            rel.new_to_old.extend([None, None, None]);
            connected_or_fail(h_prime, rel)
        }
        Family::Two { a, .. } => h.remove_vertex(a),
    }
}

/// Family-1 construction valid for every `I`: delete only `w`, add a copy
/// `y` of `x` (so `N(y) = I ∪ {v}`), and hang a pendant `y'` on `y`; `y` and
/// `y'` are appended in that order.
///
/// In `H - w` the bicliques are those of `H` minus `B` and
/// `B2 = {x} ∪ (N(x) - {v})`. Every biclique containing `x` gains `y`, and
/// the only new one is the star `{y} ∪ I ∪ {v, y'}`, which meets exactly
/// what the (enlarged) `B1` meets. `B1` and `B2` are true twins in
/// `KB(H) - q`, so the star restores `B2`.
pub fn construct_h_prime_repaired(h: &Graph, plan: &Degree2Plan) -> Result<(Graph, Relabeling)> {
    if !plan.validate(h) {
        return Err(Error::StalePlan);
    }
    let Family::One { w, x, .. } = plan.family else {
        return construct_h_prime(h, plan);
    };
    let (base, mut rel) = h.remove_vertex(w)?;
    let x_new = rel.old_to_new[x].expect("x survives");
    let y = base.n();
    let h_prime = base
        .add_vertex(base.neighbors(x_new))?
        .add_vertex(VertexSet::singleton(y))?;
    rel.new_to_old.extend([None, None]);
    connected_or_fail(h_prime, rel)
}

fn connected_or_fail(g: Graph, rel: Relabeling) -> Result<(Graph, Relabeling)> {
    if g.is_connected() {
        Ok((g, rel))
    } else {
        Err(Error::VerificationFailed(
            "family-1 construction produced a disconnected graph".into(),
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RemovalMethod {
    /// [`construct_h_prime`].
    Construction,
    /// [`construct_h_prime_repaired`], after the plain construction failed
    /// verification.
    RepairedConstruction,
    PreimageSearch,
}

#[derive(Clone, Debug, Serialize)]
pub struct RemovalResult {
    #[serde(serialize_with = "ser_graph")]
    pub h_prime: Graph,
    /// `None` when the preimage fallback was used.
    pub plan: Option<Degree2Plan>,
    pub method: RemovalMethod,
    /// `KB(h_prime) ≅ KB(H) - q`, checked by an explicit isomorphism.
    pub verified: bool,
    /// Attempts that were built but failed verification, in order.
    pub rejected: Vec<RejectedAttempt>,
    /// `q` as a vertex of `KB(Tw(H))`, the graph the plan refers to.
    pub reduced_kb_vertex: usize,
    #[serde(serialize_with = "ser_graph")]
    pub reduced_host: Graph,
    /// Maps vertices of `KB(h_prime)` to vertices of `KB(H) - q`.
    pub isomorphism: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RejectedAttempt {
    pub method: RemovalMethod,
    pub h_prime: String,
    /// Vertex count of `KB(h_prime)` against that of `KB(H) - q`.
    pub kb_order: usize,
    pub target_order: usize,
}

fn ser_graph<S: serde::Serializer>(g: &Graph, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&to_graph6(g))
}

/// The biclique of `Tw(H)` corresponding to biclique `b` of `H`: maximality
/// puts all twins of a member on the member's side, so dropping
/// non-representatives is a bijection between the two families.
pub fn project_biclique(tw: &TwinReduction, b: &Biclique) -> Result<Biclique> {
    let map = |s: VertexSet| -> VertexSet {
        s.iter()
            .filter_map(|v| tw.relabeling.old_to_new[v])
            .collect()
    };
    Biclique::new(map(b.left()), map(b.right()))
}

/// Construct `H'` with `KB(H') ≅ KB(H) - q` for a KB-vertex `q` of degree 2.
///
/// `q` indexes `KB(H)` as returned by [`biclique_graph`]. The host is
/// twin-reduced first. The plain construction is tried first, then for
/// family 1 the repaired one; every result is verified. A reduced host with
/// at least seven vertices where both fail is a hard error; smaller hosts
/// fall back to preimage search.
pub fn remove_degree2(h: &Graph, q: usize) -> Result<RemovalResult> {
    if !h.is_connected() {
        return Err(Error::NotConnected);
    }
    let kb = biclique_graph(h)?;
    kb.check_vertex(q)?;
    if kb.degree(q) != 2 {
        return Err(Error::NotDegreeTwo {
            vertex: q,
            degree: kb.degree(q),
        });
    }
    let (target, _) = kb.graph.remove_vertex(q)?;

    let tw = twin_reduce(h);
    let reduced = tw.graph.clone();
    let rkb = biclique_graph(&reduced)?;
    let rq = rkb
        .index_of(&project_biclique(&tw, &kb.bicliques[q])?)
        .ok_or_else(|| Error::VerificationFailed("biclique lost by twin reduction".into()))?;

    let large = reduced.n() >= FAMILY_GUARANTEE_ORDER;
    let mut rejected = Vec::new();
    let done = |hp: Graph, plan, method, phi, rejected| RemovalResult {
        h_prime: hp,
        plan,
        method,
        verified: true,
        rejected,
        reduced_kb_vertex: rq,
        reduced_host: reduced.clone(),
        isomorphism: phi,
    };

    match classify_degree2(&reduced, &rkb, rq) {
        Ok(plan) => {
            let mut attempts = vec![(
                RemovalMethod::Construction,
                construct_h_prime(&reduced, &plan)?.0,
            )];
            if plan.family_number() == 1 {
                let repaired = construct_h_prime_repaired(&reduced, &plan)?.0;
                attempts.push((RemovalMethod::RepairedConstruction, repaired));
            }
            for (method, hp) in attempts {
                if let Some(phi) = verify_against(&hp, &target)? {
                    return Ok(done(hp, Some(plan), method, phi, rejected));
                }
                rejected.push(RejectedAttempt {
                    method,
                    h_prime: to_graph6(&hp),
                    kb_order: biclique_graph(&hp).map(|k| k.graph.n()).unwrap_or(0),
                    target_order: target.n(),
                });
            }
            if large {
                return Err(Error::VerificationFailed(format!(
                    "KB(H') is not isomorphic to KB(H) - q for H = {}, q = {q}",
                    to_graph6(h)
                )));
            }
        }
        Err(e) if large => return Err(e),
        Err(_) => {}
    }

    let hp = find_preimage(&target, FALLBACK_PREIMAGE_ORDER)?.ok_or(Error::NoPreimage {
        max_n: FALLBACK_PREIMAGE_ORDER,
    })?;
    let phi = verify_against(&hp, &target)?
        .ok_or_else(|| Error::VerificationFailed("preimage does not re-verify".into()))?;
    Ok(done(hp, None, RemovalMethod::PreimageSearch, phi, rejected))
}

fn verify_against(h_prime: &Graph, target: &Graph) -> Result<Option<Vec<usize>>> {
    if !h_prime.is_connected() || h_prime.n() < 2 {
        return Ok(None);
    }
    let kb = biclique_graph(h_prime)?;
    isomorphism(&kb.graph, target)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BicliqueVerdict {
    NotBiclique,
    IsBiclique,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    #[serde(serialize_with = "ser_graph")]
    pub graph: Graph,
    /// Vertex of the previous chain graph removed to obtain this one.
    pub removed: Option<usize>,
    /// An induced P3 in no diamond or gem, if one exists.
    pub violation: Option<P3>,
    #[serde(serialize_with = "ser_opt_graph")]
    pub preimage: Option<Graph>,
}

fn ser_opt_graph<S: serde::Serializer>(
    g: &Option<Graph>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    match g {
        Some(g) => ser.serialize_some(&to_graph6(g)),
        None => ser.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub verdict: BicliqueVerdict,
    pub chain: Vec<ChainStep>,
    /// Chain index carrying the certificate behind a definite verdict.
    pub certificate_step: Option<usize>,
}

impl Analysis {
    /// Re-verify the stored certificate independently of the search that
    /// produced it.
    pub fn certificate_holds(&self) -> Result<bool> {
        match self.verdict {
            BicliqueVerdict::Inconclusive => Ok(true),
            BicliqueVerdict::NotBiclique => {
                let Some(i) = self.certificate_step else {
                    return Ok(false);
                };
                let step = &self.chain[i];
                Ok(step
                    .violation
                    .is_some_and(|p| verify_violation(&step.graph, p))
                    && self
                        .chain
                        .windows(2)
                        .all(|w| w[1].graph.n() + 1 == w[0].graph.n()))
            }
            BicliqueVerdict::IsBiclique => {
                let Some(0) = self.certificate_step else {
                    return Ok(false);
                };
                let step = &self.chain[0];
                match &step.preimage {
                    Some(h) => Ok(verify_against(h, &step.graph)?.is_some()),
                    None => Ok(false),
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalyzeOptions {
    /// Explore every degree-2 removal order instead of one greedy chain.
    pub exhaustive_orders: bool,
}

/// Strip degree-2 vertices and look for sound certificates along the way.
///
/// A diamond/gem violation on any chain graph proves that graph and every
/// earlier one are not biclique graphs (each step removes a degree-2 vertex,
/// and removing one from a biclique graph leaves a biclique graph). A
/// preimage proves membership only for the graph it belongs to; once one is
/// found later in the chain nothing more can be concluded, so the walk stops.
pub fn analyze_not_biclique(g: &Graph, max_preimage_n: usize) -> Result<Analysis> {
    analyze_with(g, max_preimage_n, AnalyzeOptions::default())
}

pub fn analyze_with(g: &Graph, max_preimage_n: usize, opts: AnalyzeOptions) -> Result<Analysis> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if opts.exhaustive_orders {
        return analyze_all_orders(g, max_preimage_n);
    }
    let mut chain = Vec::new();
    let mut current = g.clone();
    let mut removed = None;
    loop {
        let step = inspect(&current, removed, max_preimage_n)?;
        let idx = chain.len();
        let violated = step.violation.is_some();
        let has_preimage = step.preimage.is_some();
        chain.push(step);
        if violated {
            return Ok(Analysis {
                verdict: BicliqueVerdict::NotBiclique,
                chain,
                certificate_step: Some(idx),
            });
        }
        if has_preimage {
            let verdict = if idx == 0 {
                BicliqueVerdict::IsBiclique
            } else {
                BicliqueVerdict::Inconclusive
            };
            return Ok(Analysis {
                verdict,
                certificate_step: (idx == 0).then_some(0),
                chain,
            });
        }
        match next_degree2(&current) {
            Some(v) => {
                current = current.remove_vertex(v)?.0;
                removed = Some(v);
            }
            None => {
                return Ok(Analysis {
                    verdict: BicliqueVerdict::Inconclusive,
                    chain,
                    certificate_step: None,
                })
            }
        }
    }
}

fn inspect(g: &Graph, removed: Option<usize>, max_preimage_n: usize) -> Result<ChainStep> {
    let report = check_theorem1(g);
    let violation = (report.verdict == Verdict::Fail).then(|| report.witness.unwrap());
    let preimage = if violation.is_none() {
        find_preimage(g, max_preimage_n)?
    } else {
        None
    };
    Ok(ChainStep {
        graph: g.clone(),
        removed,
        violation,
        preimage,
    })
}

/// Smallest-index degree-2 vertex whose removal keeps the graph connected.
fn next_degree2(g: &Graph) -> Option<usize> {
    (0..g.n()).find(|&v| {
        g.degree(v) == 2
            && g.remove_vertex(v)
                .map(|(h, _)| h.is_connected())
                .unwrap_or(false)
    })
}

/// Depth-first search over all degree-2 removal orders, deduplicated by
/// isomorphism class; stops at the first violation found.
fn analyze_all_orders(g: &Graph, max_preimage_n: usize) -> Result<Analysis> {
    let root = inspect(g, None, max_preimage_n)?;
    if root.violation.is_some() {
        return Ok(Analysis {
            verdict: BicliqueVerdict::NotBiclique,
            chain: vec![root],
            certificate_step: Some(0),
        });
    }
    if root.preimage.is_some() {
        return Ok(Analysis {
            verdict: BicliqueVerdict::IsBiclique,
            chain: vec![root],
            certificate_step: Some(0),
        });
    }
    let mut seen = HashSet::new();
    seen.insert(canonical_form(g)?);
    let mut chain = vec![root];
    if dfs_orders(&mut chain, &mut seen, max_preimage_n)? {
        let idx = chain.len() - 1;
        return Ok(Analysis {
            verdict: BicliqueVerdict::NotBiclique,
            chain,
            certificate_step: Some(idx),
        });
    }
    Ok(Analysis {
        verdict: BicliqueVerdict::Inconclusive,
        chain,
        certificate_step: None,
    })
}

fn dfs_orders(
    chain: &mut Vec<ChainStep>,
    seen: &mut HashSet<crate::atlas::CanonicalForm>,
    max_preimage_n: usize,
) -> Result<bool> {
    let current = chain.last().unwrap().graph.clone();
    for v in (0..current.n()).filter(|&v| current.degree(v) == 2) {
        let (next, _) = current.remove_vertex(v)?;
        if !next.is_connected() || !seen.insert(canonical_form(&next)?) {
            continue;
        }
        let step = inspect(&next, Some(v), max_preimage_n)?;
        let violated = step.violation.is_some();
        let dead_end = step.preimage.is_some();
        chain.push(step);
        if violated {
            return Ok(true);
        }
        if !dead_end && dfs_orders(chain, seen, max_preimage_n)? {
            return Ok(true);
        }
        chain.pop();
    }
    Ok(false)
}
