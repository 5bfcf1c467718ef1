//! Finite simple graphs with totally ordered vertices `x1 < x2 < … < xn`.
//!
//! Besides the basic connectivity queries this module holds the tree surgery
//! used by the universal-equivalence decider: the non-endpoint core `T*`,
//! pruning of unnecessary endpoints `T'`, and an AHU canonical encoding.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// 1-based vertex index. The order on indices is the order on generators.
pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<Vertex>>,
}

/// An induced subgraph together with the map from its vertices back to the
/// parent graph: vertex `k` of `graph` is `origin[k - 1]` in the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeled {
    pub graph: Graph,
    pub origin: Vec<Vertex>,
}

impl Relabeled {
    /// Index in the relabeled graph of a parent vertex, if it was kept.
    pub fn position(&self, parent: Vertex) -> Option<Vertex> {
        self.origin
            .binary_search(&parent)
            .ok()
            .map(|k| k as Vertex + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexClasses {
    pub endpoints: Vec<Vertex>,
    pub non_endpoints: Vec<Vertex>,
    pub unnecessary_endpoints: Vec<Vertex>,
}

impl Graph {
    /// Totally disconnected graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Path `x1 - x2 - … - xn`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n as Vertex).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    /// Cycle `x1 - x2 - … - xn - x1`, `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut g = Graph::path(n);
        g.add_edge(1, n as Vertex).expect("cycle edge is valid");
        g
    }

    /// Star `K_{1,k}` whose center is the last vertex `x_{k+1}`.
    pub fn star(k: usize) -> Self {
        let c = k as Vertex + 1;
        let edges: Vec<_> = (1..c).map(|i| (i, c)).collect();
        Graph::from_edges(k + 1, &edges).expect("star edges are valid")
    }

    pub fn add_edge(&mut self, i: Vertex, j: Vertex) -> Result<()> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::InvalidInput(format!("loop at x{i}")));
        }
        if self.has_edge(i, j) {
            return Err(Error::InvalidInput(format!("duplicate edge {{x{i},x{j}}}")));
        }
        for (a, b) in [(i, j), (j, i)] {
            let list = &mut self.adj[a as usize - 1];
            let pos = list.partition_point(|&v| v < b);
            list.insert(pos, b);
        }
        Ok(())
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v == 0 || v as usize > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n as Vertex
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize - 1]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize - 1].len()
    }

    pub fn has_edge(&self, i: Vertex, j: Vertex) -> bool {
        i != j
            && (1..=self.n as Vertex).contains(&i)
            && (1..=self.n as Vertex).contains(&j)
            && self.adj[i as usize - 1].binary_search(&j).is_ok()
    }

    /// Edges `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for i in self.vertices() {
            for &j in self.neighbors(i) {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Connected components of the subgraph induced on `subset`. Each block is
    /// sorted and blocks are ordered by their least element.
    pub fn connected_components(&self, subset: &[Vertex]) -> Vec<Vec<Vertex>> {
        let members: BTreeSet<Vertex> = subset.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut blocks = Vec::new();
        for &start in &members {
            if !seen.insert(start) {
                continue;
            }
            let mut block = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if members.contains(&w) && seen.insert(w) {
                        block.push(w);
                        queue.push_back(w);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<Vertex> = self.vertices().collect();
        self.connected_components(&all).len() <= 1
    }

    pub fn is_forest(&self) -> bool {
        let all: Vec<Vertex> = self.vertices().collect();
        self.edge_count() + self.connected_components(&all).len() == self.n
    }

    /// Connected and acyclic. The 0-vertex graph is not a tree.
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.is_forest() && self.is_connected()
    }

    /// Subgraph induced on `subset`, with vertices renumbered `1..=|subset|`
    /// in increasing order of their original indices.
    pub fn induced_subgraph(&self, subset: &[Vertex]) -> Relabeled {
        let origin: Vec<Vertex> = subset
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut graph = Graph::empty(origin.len());
        for (a, &u) in origin.iter().enumerate() {
            for (b, &v) in origin.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    graph
                        .add_edge(a as Vertex + 1, b as Vertex + 1)
                        .expect("induced edge is valid");
                }
            }
        }
        Relabeled { graph, origin }
    }

    /// All simple paths from `i` to `j`, each reported by its interior vertex
    /// sequence, in lexicographic order of the full vertex sequence.
    pub fn simple_paths(&self, i: Vertex, j: Vertex) -> Vec<Vec<Vertex>> {
        let mut out = Vec::new();
        if i == j {
            return out;
        }
        let mut on_path = vec![false; self.n + 1];
        let mut stack = vec![i];
        on_path[i as usize] = true;
        self.paths_dfs(j, &mut stack, &mut on_path, &mut out);
        out
    }

    fn paths_dfs(
        &self,
        target: Vertex,
        stack: &mut Vec<Vertex>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let v = *stack.last().expect("path is non-empty");
        for &w in self.neighbors(v) {
            if w == target {
                out.push(stack[1..].to_vec());
            } else if !on_path[w as usize] {
                on_path[w as usize] = true;
                stack.push(w);
                self.paths_dfs(target, stack, on_path, out);
                stack.pop();
                on_path[w as usize] = false;
            }
        }
    }

    /// Endpoints are the vertices of degree 1; an endpoint is unnecessary when
    /// its neighbor has degree at least 3.
    pub fn classify_vertices(&self) -> VertexClasses {
        let mut classes = VertexClasses::default();
        for v in self.vertices() {
            if self.degree(v) == 1 {
                classes.endpoints.push(v);
                if self.degree(self.neighbors(v)[0]) >= 3 {
                    classes.unnecessary_endpoints.push(v);
                }
            } else {
                classes.non_endpoints.push(v);
            }
        }
        classes
    }

    fn require_tree(&self) -> Result<()> {
        if !self.is_tree() {
            return Err(Error::NotATree);
        }
        if self.n < 2 {
            return Err(Error::TooSmall(self.n));
        }
        Ok(())
    }

    /// `T*`: the subgraph induced on the vertices that are not endpoints.
    /// Empty for the two-vertex tree.
    pub fn t_star(&self) -> Result<Relabeled> {
        self.require_tree()?;
        Ok(self.induced_subgraph(&self.classify_vertices().non_endpoints))
    }

    /// `T'`: delete unnecessary endpoints one at a time, always the one with the
    /// smallest index, until none is left.
    pub fn t_prime(&self) -> Result<Relabeled> {
        self.require_tree()?;
        let mut alive: Vec<Vertex> = self.vertices().collect();
        loop {
            let current = self.induced_subgraph(&alive);
            match current.graph.classify_vertices().unnecessary_endpoints.first() {
                Some(&v) => {
                    let parent = current.origin[v as usize - 1];
                    alive.retain(|&w| w != parent);
                }
                None => return Ok(current),
            }
        }
    }

    /// AHU encoding of a forest. Each tree is rooted at its center (the
    /// smaller of the two encodings when there are two centers); tree codes
    /// are sorted and joined with `+`. The empty graph encodes as `empty`.
    pub fn tree_canonical_form(&self) -> Result<String> {
        if !self.is_forest() {
            return Err(Error::NotAForest);
        }
        if self.n == 0 {
            return Ok(EMPTY_CANONICAL_FORM.to_string());
        }
        let all: Vec<Vertex> = self.vertices().collect();
        let mut codes: Vec<String> = self
            .connected_components(&all)
            .iter()
            .map(|block| {
                self.centers(block)
                    .into_iter()
                    .map(|c| self.ahu(c, 0))
                    .min()
                    .expect("a tree has a center")
            })
            .collect();
        codes.sort();
        Ok(codes.join("+"))
    }

    fn centers(&self, block: &[Vertex]) -> Vec<Vertex> {
        let mut degree: Vec<usize> = vec![0; self.n + 1];
        let mut leaves = Vec::new();
        for &v in block {
            degree[v as usize] = self.degree(v);
            if degree[v as usize] <= 1 {
                leaves.push(v);
            }
        }
        let mut remaining = block.len();
        while remaining > 2 {
            remaining -= leaves.len();
            let mut next = Vec::new();
            for &leaf in &leaves {
                for &w in self.neighbors(leaf) {
                    degree[w as usize] -= 1;
                    if degree[w as usize] == 1 {
                        next.push(w);
                    }
                }
            }
            leaves = next;
        }
        leaves.sort_unstable();
        leaves
    }

    fn ahu(&self, v: Vertex, parent: Vertex) -> String {
        let mut children: Vec<String> = self
            .neighbors(v)
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| self.ahu(w, v))
            .collect();
        children.sort();
        format!("({})", children.concat())
    }

    /// Image of the graph under the vertex permutation `v -> perm[v - 1]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (i, j) in self.edges() {
            g.add_edge(perm[i as usize - 1], perm[j as usize - 1])
                .expect("permutation preserves simplicity");
        }
        g
    }

    /// Parses the line-based graph format: `vertices N`, then `edge I J`
    /// lines with `1 <= I < J <= N`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut graph: Option<Graph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let mut words = content.split_whitespace();
            let Some(keyword) = words.next() else {
                continue;
            };
            let args: Vec<&str> = words.collect();
            let column = raw.find(keyword).map_or(1, |c| c + 1);
            match keyword {
                "vertices" => {
                    if graph.is_some() {
                        return Err(Error::semantic(line, "repeated `vertices` line"));
                    }
                    let [count] = args[..] else {
                        return Err(Error::syntax(line, column, "expected `vertices N`"));
                    };
                    let n = parse_number(count, line, raw)?;
                    graph = Some(Graph::empty(n));
                }
                "edge" => {
                    let Some(g) = graph.as_mut() else {
                        return Err(Error::semantic(line, "`edge` before `vertices`"));
                    };
                    let [a, b] = args[..] else {
                        return Err(Error::syntax(line, column, "expected `edge I J`"));
                    };
                    let i = parse_number(a, line, raw)? as Vertex;
                    let j = parse_number(b, line, raw)? as Vertex;
                    if i == j {
                        return Err(Error::semantic(line, format!("loop edge at x{i}")));
                    }
                    for v in [i, j] {
                        if v == 0 || v as usize > g.n {
                            return Err(Error::semantic(
                                line,
                                format!("vertex {v} out of range 1..={}", g.n),
                            ));
                        }
                    }
                    if i > j {
                        return Err(Error::semantic(line, "edge must be written as `edge I J` with I < J"));
                    }
                    if g.has_edge(i, j) {
                        return Err(Error::semantic(line, format!("duplicate edge {i} {j}")));
                    }
                    g.add_edge(i, j)?;
                }
                other => {
                    return Err(Error::syntax(line, column, format!("unknown keyword `{other}`")));
                }
            }
        }
        graph.ok_or_else(|| Error::semantic(1, "missing `vertices N` line"))
    }

    /// Serializes in the format accepted by [`Graph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.n);
        for (i, j) in self.edges() {
            out.push_str(&format!("edge {i} {j}\n"));
        }
        out
    }
}

pub const EMPTY_CANONICAL_FORM: &str = "empty";

fn parse_number(word: &str, line: usize, raw: &str) -> Result<usize> {
    word.parse().map_err(|_| {
        let column = raw.find(word).map_or(1, |c| c + 1);
        Error::syntax(line, column, format!("expected a non-negative integer, found `{word}`"))
    })
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph on {} vertices {{", self.n)?;
        for (k, (i, j)) in self.edges().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, " x{i}-x{j}")?;
        }
        write!(f, " }}")
    }
}
