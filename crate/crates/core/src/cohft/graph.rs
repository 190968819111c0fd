//! Stable graphs of a given genus with labeled legs, enumerated up to
//! isomorphism with exact automorphism counts.
//!
//! A stable graph has vertices carrying genera, labeled legs attached to
//! vertices, and edges (loops allowed). Connectedness and per-vertex
//! stability 2g(v) - 2 + valence(v) > 0 are required; the total genus is
//! Σ g(v) + b1. Isomorphisms permute vertices only (legs keep their
//! labels); the automorphism count additionally includes half-edge swaps
//! of loops and permutations of parallel edges.

use crate::error::{Error, Result};
use std::collections::HashSet;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StableGraph {
    /// Genus per vertex.
    pub genera: Vec<u32>,
    /// Sorted leg labels per vertex (labels 0..r-1).
    pub legs: Vec<Vec<usize>>,
    /// Unordered edges (v ≤ w); loops have v = w.
    pub edges: Vec<(usize, usize)>,
    /// |Aut|: graph automorphisms including loop flips and parallel-edge
    /// permutations.
    pub aut: u64,
}

impl StableGraph {
    pub fn vertex_count(&self) -> usize {
        self.genera.len()
    }

    pub fn valence(&self, v: usize) -> usize {
        let mut val = self.legs[v].len();
        for &(a, b) in &self.edges {
            if a == v {
                val += 1;
            }
            if b == v {
                val += 1;
            }
        }
        val
    }

    pub fn total_genus(&self) -> u32 {
        let b1 = self.edges.len() as i64 - self.genera.len() as i64 + 1;
        self.genera.iter().sum::<u32>() + b1 as u32
    }
}

fn is_connected(v_count: usize, edges: &[(usize, usize)]) -> bool {
    if v_count == 0 {
        return false;
    }
    let mut seen = vec![false; v_count];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            if a == v && !seen[b] {
                seen[b] = true;
                stack.push(b);
            }
            if b == v && !seen[a] {
                seen[a] = true;
                stack.push(a);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

type Encoding = (Vec<(u32, Vec<usize>)>, Vec<Vec<usize>>);

fn encode(g: &StableGraph, perm: &[usize]) -> Encoding {
    // perm[i] = new position of old vertex i
    let v = g.genera.len();
    let mut verts = vec![(0u32, Vec::new()); v];
    for i in 0..v {
        verts[perm[i]] = (g.genera[i], g.legs[i].clone());
    }
    let mut adj = vec![vec![0usize; v]; v];
    for &(a, b) in &g.edges {
        let (x, y) = (perm[a].min(perm[b]), perm[a].max(perm[b]));
        adj[x][y] += 1;
    }
    (verts, adj)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    // Heap's algorithm, iterative
    let mut c = vec![0usize; n];
    out.push(idx.clone());
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                idx.swap(0, i);
            } else {
                idx.swap(c[i], i);
            }
            out.push(idx.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// All stable graphs of type (g, r); legs are labeled 0..r-1.
pub fn enumerate_stable_graphs(genus: u32, r: usize) -> Result<Vec<StableGraph>> {
    let stability = 2 * genus as i64 - 2 + r as i64;
    if stability <= 0 {
        return Err(Error::Unstable(genus, r));
    }
    let max_vertices = stability as usize;
    let mut found: Vec<StableGraph> = Vec::new();
    let mut seen: HashSet<Encoding> = HashSet::new();

    for v_count in 1..=max_vertices {
        let perms = permutations(v_count);
        // genus assignments with Σ g_v ≤ genus
        let mut genus_assignments: Vec<Vec<u32>> = vec![vec![]];
        for _ in 0..v_count {
            let mut next = Vec::new();
            for partial in &genus_assignments {
                let used: u32 = partial.iter().sum();
                for gv in 0..=(genus - used.min(genus)) {
                    let mut p = partial.clone();
                    p.push(gv);
                    next.push(p);
                }
            }
            genus_assignments = next;
        }
        for genera in genus_assignments {
            let sum: u32 = genera.iter().sum();
            if sum > genus {
                continue;
            }
            let e_count = (genus - sum) as usize + v_count - 1;
            // leg assignments: r labeled legs onto v_count vertices
            let leg_maps = {
                let mut maps: Vec<Vec<usize>> = vec![vec![]];
                for _ in 0..r {
                    let mut next = Vec::new();
                    for partial in &maps {
                        for v in 0..v_count {
                            let mut p = partial.clone();
                            p.push(v);
                            next.push(p);
                        }
                    }
                    maps = next;
                }
                maps
            };
            // edge multisets: distribute e_count among slots (v ≤ w)
            let slots: Vec<(usize, usize)> = (0..v_count)
                .flat_map(|a| (a..v_count).map(move |b| (a, b)))
                .collect();
            let mut edge_choices: Vec<Vec<usize>> = vec![vec![]];
            for _ in 0..slots.len() {
                let mut next = Vec::new();
                for partial in &edge_choices {
                    let used: usize = partial.iter().sum();
                    for k in 0..=(e_count - used.min(e_count)) {
                        let mut p = partial.clone();
                        p.push(k);
                        next.push(p);
                    }
                }
                edge_choices = next;
            }
            for leg_map in &leg_maps {
                for counts in &edge_choices {
                    if counts.iter().sum::<usize>() != e_count {
                        continue;
                    }
                    let mut edges = Vec::new();
                    for (slot, &k) in slots.iter().zip(counts.iter()) {
                        for _ in 0..k {
                            edges.push(*slot);
                        }
                    }
                    if !is_connected(v_count, &edges) {
                        continue;
                    }
                    let mut legs = vec![Vec::new(); v_count];
                    for (label, &v) in leg_map.iter().enumerate() {
                        legs[v].push(label);
                    }
                    let candidate = StableGraph {
                        genera: genera.clone(),
                        legs,
                        edges,
                        aut: 0,
                    };
                    // stability
                    let stable = (0..v_count).all(|v| {
                        2 * candidate.genera[v] as i64 - 2 + candidate.valence(v) as i64 > 0
                    });
                    if !stable {
                        continue;
                    }
                    // canonical form over vertex permutations
                    let encodings: Vec<Encoding> =
                        perms.iter().map(|p| encode(&candidate, p)).collect();
                    let canonical = encodings.iter().min().unwrap().clone();
                    if seen.contains(&canonical) {
                        continue;
                    }
                    seen.insert(canonical.clone());
                    // |Aut|: vertex symmetries × loop flips × parallel edges
                    let identity = &encodings[0];
                    let vertex_aut =
                        encodings.iter().filter(|e| *e == identity).count() as u64;
                    let mut extra = 1u64;
                    for a in 0..v_count {
                        for b in a..v_count {
                            let m = candidate
                                .edges
                                .iter()
                                .filter(|&&(x, y)| (x, y) == (a, b))
                                .count();
                            extra *= factorial(m);
                            if a == b {
                                extra *= 2u64.pow(m as u32);
                            }
                        }
                    }
                    let mut graph = candidate;
                    graph.aut = vertex_aut * extra;
                    debug_assert_eq!(graph.total_genus(), genus);
                    found.push(graph);
                }
            }
        }
    }
    // deterministic order: by vertex count, then encoding
    found.sort_by_key(|g| {
        let id: Vec<usize> = (0..g.genera.len()).collect();
        (g.genera.len(), g.edges.len(), format!("{:?}", encode(g, &id)))
    });
    Ok(found)
}
