#![allow(dead_code)]

use kbgraph::graph::{Graph, VertexSet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Erdős–Rényi graph conditioned on connectivity by rejection.
pub fn random_connected(rng: &mut StdRng, n: usize) -> Graph {
    loop {
        let p: f64 = rng.gen_range(0.2..0.75);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edge_list(n, &edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

/// All permutations of `0..n` (Heap's algorithm), passed to `f`.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Number of automorphisms by trying every permutation.
pub fn automorphism_count(g: &Graph) -> u64 {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut count = 0;
    for_each_permutation(g.n(), |p| {
        if edges.iter().all(|&(u, v)| g.has_edge(p[u], p[v])) {
            count += 1;
        }
    });
    count
}

/// Labeled connected graphs on `n` vertices, by the standard recurrence
/// over the component containing vertex 0.
pub fn labeled_connected_count(n: usize) -> u128 {
    let binom = |n: usize, k: usize| -> u128 {
        (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
    };
    let total = |m: usize| -> u128 { 1u128 << (m * m.saturating_sub(1) / 2) };
    let mut c = vec![0u128; n + 1];
    for m in 1..=n {
        let mut disconnected = 0;
        #[allow(clippy::needless_range_loop)]
        for k in 1..m {
            disconnected += binom(m - 1, k - 1) * c[k] * total(m - k);
        }
        c[m] = total(m) - disconnected;
    }
    c[n]
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Every vertex subset of size 4 or 5 around a P3, scanned without filters.
pub fn p3_covered_brute(g: &Graph, x: usize, y: usize, z: usize) -> bool {
    let base = VertexSet::from_slice(&[x, y, z]);
    let others: Vec<usize> = (0..g.n()).filter(|v| !base.contains(*v)).collect();
    let edges_in = |s: VertexSet| -> usize {
        g.edges()
            .filter(|&(u, v)| s.contains(u) && s.contains(v))
            .count()
    };
    for (i, &a) in others.iter().enumerate() {
        if edges_in(base.with(a)) == 5 {
            return true;
        }
        for &b in &others[i + 1..] {
            let s = base.with(a).with(b);
            if edges_in(s) != 7 {
                continue;
            }
            // One vertex adjacent to the other four, which then form a P4.
            for u in s.iter() {
                let rest = s.without(u);
                if g.neighbors(u).intersection(s).len() == 4 {
                    let mut degs: Vec<usize> = rest
                        .iter()
                        .map(|v| g.neighbors(v).intersection(rest).len())
                        .collect();
                    degs.sort();
                    let ends: Vec<usize> = rest
                        .iter()
                        .filter(|&v| g.neighbors(v).intersection(rest).len() == 1)
                        .collect();
                    if degs == [1, 1, 2, 2] && !g.has_edge(ends[0], ends[1]) {
                        return true;
                    }
                }
            }
        }
    }
    false
}
