//! Coupling graphs, shortest paths and approximate Steiner trees.

use std::collections::VecDeque;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

/// Undirected connected hardware graph with precomputed hop distances.
#[derive(Clone, PartialEq, Eq)]
pub struct CouplingGraph {
    name: String,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    dist: Vec<Vec<u32>>,
}

const MELBOURNE: [(usize, usize); 18] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 5),
    (5, 6),
    (6, 8),
    (8, 9),
    (9, 10),
    (10, 11),
    (11, 12),
    (12, 13),
    (13, 1),
    (2, 12),
    (3, 11),
    (4, 10),
    (5, 9),
    (8, 7),
];

impl CouplingGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Disconnected);
        }
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidEdge(u, v));
            }
            let e = (u.min(v), u.max(v));
            if !list.contains(&e) {
                list.push(e);
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        list.sort_unstable();
        for a in &mut adj {
            a.sort_unstable();
        }
        let dist: Vec<Vec<u32>> = (0..n).map(|s| bfs(&adj, s)).collect();
        if dist[0].contains(&u32::MAX) {
            return Err(Error::Disconnected);
        }
        Ok(CouplingGraph {
            name: format!("custom:{n}"),
            adj,
            edges: list,
            dist,
        })
    }

    fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `melbourne`, `aspen`, `grid:RxC`, `lnn:N` or `all2all:N`.
    pub fn preset(name: &str) -> Result<Self> {
        let malformed = || Error::MalformedPreset(name.to_string());
        let size = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .ok()
                .filter(|&k| k > 0)
                .ok_or_else(malformed)
        };
        let graph = match name.split_once(':') {
            None => match name {
                "melbourne" => CouplingGraph::new(14, MELBOURNE)?,
                "aspen" => {
                    let ring = |o: usize| (0..8).map(move |i| (o + i, o + (i + 1) % 8));
                    CouplingGraph::new(16, ring(0).chain(ring(8)).chain([(2, 13), (1, 14)]))?
                }
                _ => return Err(Error::UnknownPreset(name.to_string())),
            },
            Some(("lnn", n)) => {
                let n = size(n)?;
                CouplingGraph::new(n, (1..n).map(|i| (i - 1, i)))?
            }
            Some(("all2all", n)) => {
                let n = size(n)?;
                CouplingGraph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))?
            }
            Some(("grid", dims)) => {
                let (r, c) = dims.split_once('x').ok_or_else(malformed)?;
                let (r, c) = (size(r)?, size(c)?);
                let mut edges = Vec::new();
                for i in 0..r {
                    for j in 0..c {
                        let v = i * c + j;
                        if j + 1 < c {
                            edges.push((v, v + 1));
                        }
                        if i + 1 < r {
                            edges.push((v, v + c));
                        }
                    }
                }
                CouplingGraph::new(r * c, edges)?
            }
            Some(_) => return Err(Error::UnknownPreset(name.to_string())),
        };
        Ok(graph.named(name))
    }

    /// Parses `qubits N` followed by `u v` edge lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: &str| Error::GraphFile {
                line,
                message: message.to_string(),
            };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            match (n, fields.as_slice()) {
                (None, ["qubits", k]) => {
                    n = Some(k.parse::<usize>().map_err(|_| err("bad qubit count"))?);
                }
                (None, _) => return Err(err("expected `qubits N`")),
                (Some(_), [u, v]) => {
                    let u = u.parse().map_err(|_| err("bad vertex"))?;
                    let v = v.parse().map_err(|_| err("bad vertex"))?;
                    edges.push((u, v));
                }
                (Some(_), _) => return Err(err("expected `u v`")),
            }
        }
        let n = n.ok_or(Error::GraphFile {
            line: 0,
            message: "missing `qubits N` header".into(),
        })?;
        CouplingGraph::new(n, edges)
    }

    /// A preset name, or `file:<path>` for a graph file.
    pub fn load(spec: &str) -> Result<Self> {
        match spec.strip_prefix("file:") {
            Some(path) => {
                let text = std::fs::read_to_string(Path::new(path)).map_err(|e| Error::GraphFile {
                    line: 0,
                    message: e.to_string(),
                })?;
                Ok(CouplingGraph::parse(&text)?.named(spec))
            }
            None => CouplingGraph::preset(spec),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn dist(&self, a: usize, b: usize) -> usize {
        self.dist[a][b] as usize
    }

    /// Lexicographically smallest shortest path from `a` to `b`, both included.
    pub fn shortest_path(&self, a: usize, b: usize) -> Vec<usize> {
        let mut path = vec![a];
        let mut cur = a;
        while cur != b {
            let d = self.dist[cur][b];
            cur = *self.adj[cur]
                .iter()
                .find(|&&w| self.dist[w][b] + 1 == d)
                .expect("connected graph");
            path.push(cur);
        }
        path
    }

    /// Takahashi–Matsuyama approximation seeded at the lowest terminal.
    pub fn steiner_tree(&self, terminals: &[usize]) -> Result<SteinerTree> {
        let mut terms: Vec<usize> = terminals.to_vec();
        terms.sort_unstable();
        terms.dedup();
        let Some(&seed) = terms.first() else {
            return Err(Error::EmptyTerminals);
        };
        if let Some(&v) = terms.iter().find(|&&v| v >= self.n_vertices()) {
            return Err(Error::NotInTree(v));
        }
        let n = self.n_vertices();
        let mut in_tree = vec![false; n];
        in_tree[seed] = true;
        let mut vertices = vec![seed];
        let mut edges = Vec::new();
        let mut remaining: Vec<usize> = terms[1..].iter().copied().filter(|&t| t != seed).collect();
        while !remaining.is_empty() {
            let mut best = (usize::MAX, 0, 0, 0);
            for (idx, &t) in remaining.iter().enumerate() {
                for &v in &vertices {
                    let key = (self.dist(t, v), t, v, idx);
                    if key < best {
                        best = key;
                    }
                }
            }
            let (_, _, v, idx) = best;
            let t = remaining.remove(idx);
            if in_tree[t] {
                continue;
            }
            let path = self.shortest_path(v, t);
            for w in path.windows(2) {
                edges.push((w[0].min(w[1]), w[0].max(w[1])));
                if !in_tree[w[1]] {
                    in_tree[w[1]] = true;
                    vertices.push(w[1]);
                }
            }
        }
        let mut tree = SteinerTree::from_parts(vertices, edges, terms);
        tree.prune();
        Ok(tree)
    }
}

fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == u32::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

impl fmt::Debug for CouplingGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CouplingGraph")
            .field("name", &self.name)
            .field("n", &self.n_vertices())
            .field("edges", &self.edges)
            .finish()
    }
}

/// A subtree of a coupling graph spanning a terminal set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerTree {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
    terminals: Vec<usize>,
}

impl SteinerTree {
    /// Builds a tree from explicit edges; a single terminal with no edges is allowed.
    pub fn from_edges(edges: &[(usize, usize)], terminals: &[usize]) -> Result<Self> {
        let mut vertices: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        vertices.extend_from_slice(terminals);
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(Error::EmptyTerminals);
        }
        let edges = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        let mut terms = terminals.to_vec();
        terms.sort_unstable();
        terms.dedup();
        let tree = SteinerTree::from_parts(vertices, edges, terms);
        if !tree.is_tree() {
            return Err(Error::Disconnected);
        }
        Ok(tree)
    }

    fn from_parts(mut vertices: Vec<usize>, mut edges: Vec<(usize, usize)>, terminals: Vec<usize>) -> Self {
        vertices.sort_unstable();
        edges.sort_unstable();
        SteinerTree {
            vertices,
            edges,
            terminals,
        }
    }

    fn prune(&mut self) {
        loop {
            let leaf = self
                .vertices
                .iter()
                .copied()
                .find(|&v| self.degree(v) == 1 && !self.is_terminal(v));
            match leaf {
                Some(v) => {
                    self.vertices.retain(|&w| w != v);
                    self.edges.retain(|&(a, b)| a != v && b != v);
                }
                None => break,
            }
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_terminal(&self, v: usize) -> bool {
        self.terminals.binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Tree neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Connected and acyclic over its vertex set.
    pub fn is_tree(&self) -> bool {
        if self.edges.len() + 1 != self.vertices.len() {
            return false;
        }
        let mut seen = vec![self.vertices[0]];
        let mut stack = vec![self.vertices[0]];
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen.contains(&w) {
                    seen.push(w);
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }
}
