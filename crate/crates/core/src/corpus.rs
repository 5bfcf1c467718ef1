//! Small graph corpora: labeled trees from Prüfer sequences, unlabeled trees
//! by leaf growth, and a brute-force isomorphism key used to check the
//! canonical forms in [`crate::graph`].

use std::collections::BTreeSet;

use crate::graph::{Graph, Vertex};

/// All labeled trees on `n` vertices, in lexicographic order of their Prüfer
/// sequences. There are `n^(n-2)` of them for `n >= 2`.
pub fn labeled_trees(n: usize) -> Vec<Graph> {
    match n {
        0 => return Vec::new(),
        1 => return vec![Graph::empty(1)],
        2 => return vec![Graph::path(2)],
        _ => {}
    }
    let len = n - 2;
    let mut seq = vec![1 as Vertex; len];
    let mut out = Vec::new();
    loop {
        out.push(from_pruefer(n, &seq));
        let Some(k) = (0..len).rev().find(|&k| (seq[k] as usize) < n) else {
            return out;
        };
        seq[k] += 1;
        for s in &mut seq[k + 1..] {
            *s = 1;
        }
    }
}

/// Tree on `seq.len() + 2` vertices with the given Prüfer sequence.
pub fn from_pruefer(n: usize, seq: &[Vertex]) -> Graph {
    assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n + 1];
    for &v in seq {
        degree[v as usize] += 1;
    }
    let mut g = Graph::empty(n);
    for &v in seq {
        let leaf = (1..=n).find(|&u| degree[u] == 1).expect("a leaf remains");
        g.add_edge(leaf as Vertex, v).expect("Pruefer edge");
        degree[leaf] -= 1;
        degree[v as usize] -= 1;
    }
    let rest: Vec<Vertex> = (1..=n).filter(|&u| degree[u] == 1).map(|u| u as Vertex).collect();
    g.add_edge(rest[0], rest[1]).expect("last Pruefer edge");
    g
}

/// One representative of every isomorphism class of trees on `n` vertices.
pub fn unlabeled_trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![Graph::empty(1)];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in t.vertices() {
                let mut edges = t.edges();
                edges.push((v, size as Vertex));
                let g = Graph::from_edges(size, &edges).expect("leaf growth keeps a tree");
                if seen.insert(brute_force_key(&g)) {
                    next.push(g);
                }
            }
        }
        level = next;
    }
    level
}

/// Lexicographically smallest sorted edge list over all relabelings.
pub fn brute_force_key(g: &Graph) -> Vec<(Vertex, Vertex)> {
    let n = g.n();
    let edges = g.edges();
    let mut perm: Vec<Vertex> = (1..=n as Vertex).collect();
    let mut best: Option<Vec<(Vertex, Vertex)>> = None;
    let mut c = vec![0usize; n];
    let mut consider = |perm: &[Vertex]| {
        let mut e: Vec<(Vertex, Vertex)> = edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a as usize - 1], perm[b as usize - 1]);
                (x.min(y), x.max(y))
            })
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| &e < b) {
            best = Some(e);
        }
    };
    consider(&perm);
    // Heap's algorithm
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            consider(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best.unwrap_or_default()
}

pub fn isomorphic_brute_force(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && brute_force_key(a) == brute_force_key(b)
}

/// All labeled trees on at most `max_n` vertices, the 4-cycle, and the
/// edgeless graphs on `1..=max_n` vertices.
pub fn small_graph_corpus(max_n: usize) -> Vec<Graph> {
    let mut out: Vec<Graph> = (1..=max_n).flat_map(labeled_trees).collect();
    if max_n >= 4 {
        out.push(Graph::cycle(4));
    }
    out.extend((2..=max_n).map(Graph::empty));
    out
}
