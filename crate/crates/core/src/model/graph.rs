use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One parallel class of edge orbits between two distinct vertex orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiEdge {
    pub from: usize,
    pub to: usize,
    pub multiplicity: usize,
}

/// Loop-free connected quotient multigraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, try_from = "RawGraph")]
pub struct QuotientMultigraph {
    n: usize,
    edges: Vec<MultiEdge>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    n: usize,
    edges: Vec<MultiEdge>,
}

impl TryFrom<RawGraph> for QuotientMultigraph {
    type Error = Error;
    fn try_from(raw: RawGraph) -> Result<Self> {
        QuotientMultigraph::new(raw.n, raw.edges)
    }
}

impl QuotientMultigraph {
    pub fn new(n: usize, edges: Vec<MultiEdge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::usage("multigraph needs at least one vertex"));
        }
        for (k, e) in edges.iter().enumerate() {
            if e.from >= n || e.to >= n {
                return Err(Error::usage(format!("edge {k}: endpoint out of range 0..{n}")));
            }
            if e.from == e.to {
                return Err(Error::usage(format!("edge {k}: loop at vertex {}", e.from)));
            }
            if e.multiplicity == 0 {
                return Err(Error::usage(format!("edge {k}: multiplicity must be at least 1")));
            }
        }
        let g = QuotientMultigraph { n, edges };
        if !g.is_connected() {
            return Err(Error::usage("multigraph is disconnected"));
        }
        Ok(g)
    }

    /// Convenience constructor from `(i, j, multiplicity)` triples.
    pub fn from_triples(n: usize, triples: &[(usize, usize, usize)]) -> Result<Self> {
        Self::new(
            n,
            triples
                .iter()
                .map(|&(from, to, multiplicity)| MultiEdge { from, to, multiplicity })
                .collect(),
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[MultiEdge] {
        &self.edges
    }

    /// Total number of edge orbits.
    pub fn m(&self) -> usize {
        self.edges.iter().map(|e| e.multiplicity).sum()
    }

    fn is_connected(&self) -> bool {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.from, e.to)).collect();
        connected(self.n, &pairs)
    }

    /// Same multigraph with vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        Self::new(
            self.n,
            self.edges
                .iter()
                .map(|e| MultiEdge {
                    from: perm[e.from],
                    to: perm[e.to],
                    multiplicity: e.multiplicity,
                })
                .collect(),
        )
    }

    pub fn reduced(&self) -> Result<ReducedGraph> {
        ReducedGraph::from_pairs(self.n, self.edges.iter().map(|e| (e.from, e.to, e.multiplicity)))
    }

    /// `n` vertices on a cycle, each consecutive pair joined `multiplicity` times.
    pub fn cycle(n: usize, multiplicity: usize) -> Result<Self> {
        let triples: Vec<_> = if n == 2 {
            vec![(0, 1, multiplicity)]
        } else {
            (0..n).map(|i| (i, (i + 1) % n, multiplicity)).collect()
        };
        Self::from_triples(n, &triples)
    }

    /// Complete graph on `n` vertices with every pair joined `multiplicity` times.
    pub fn complete(n: usize, multiplicity: usize) -> Result<Self> {
        let mut triples = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                triples.push((i, j, multiplicity));
            }
        }
        Self::from_triples(n, &triples)
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::usage(format!("not a permutation of 0..{n}")));
    }
    Ok(())
}

fn connected(n: usize, pairs: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in pairs {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !std::mem::replace(&mut seen[w], true) {
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Simple edge of the reduced graph, stored with `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedEdge {
    pub lo: usize,
    pub hi: usize,
    pub multiplicity: usize,
}

/// A closed walk through reduced edges; `forward` means traversal `lo → hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub steps: Vec<(usize, bool)>,
}

impl Cycle {
    /// Vertices visited, starting at the tail of the first step.
    pub fn vertices(&self, g: &ReducedGraph) -> Vec<usize> {
        self.steps
            .iter()
            .map(|&(k, fwd)| {
                let e = &g.edges[k];
                if fwd {
                    e.lo
                } else {
                    e.hi
                }
            })
            .collect()
    }
}

/// Reduced quotient graph with a BFS spanning tree (root 0, neighbors in
/// index order) and the fundamental cycles of its non-tree edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGraph {
    n: usize,
    edges: Vec<ReducedEdge>,
    /// `parent[v] = (parent vertex, reduced edge)`; `None` for the root.
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    cycles: Vec<Cycle>,
}

impl ReducedGraph {
    /// Collapses parallel pairs (in either orientation). Loops are rejected.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize, usize)>) -> Result<Self> {
        let mut edges: Vec<ReducedEdge> = Vec::new();
        for (a, b, mult) in pairs {
            if a == b {
                return Err(Error::usage(format!("loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::usage(format!("endpoint out of range 0..{n}")));
            }
            let (lo, hi) = (a.min(b), a.max(b));
            match edges.iter_mut().find(|e| e.lo == lo && e.hi == hi) {
                Some(e) => e.multiplicity += mult,
                None => edges.push(ReducedEdge { lo, hi, multiplicity: mult }),
            }
        }
        edges.sort_by_key(|e| (e.lo, e.hi));
        if !connected(n, &edges.iter().map(|e| (e.lo, e.hi)).collect::<Vec<_>>()) {
            return Err(Error::usage("graph is disconnected"));
        }

        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (k, e) in edges.iter().enumerate() {
            adj[e.lo].push((e.hi, k));
            adj[e.hi].push((e.lo, k));
        }
        for a in &mut adj {
            a.sort();
        }
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        let mut tree_edge = vec![false; edges.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(w, k) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, k));
                    depth[w] = depth[v] + 1;
                    tree_edge[k] = true;
                    queue.push_back(w);
                }
            }
        }

        let mut g = ReducedGraph {
            n,
            edges,
            parent,
            depth,
            cycles: Vec::new(),
        };
        g.cycles = (0..g.edges.len())
            .filter(|&k| !tree_edge[k])
            .map(|k| g.fundamental_cycle(k))
            .collect();
        Ok(g)
    }

    /// Cycle `lo → hi` along edge `k`, then back to `lo` through the tree.
    fn fundamental_cycle(&self, k: usize) -> Cycle {
        let e = &self.edges[k];
        let mut steps = vec![(k, true)];
        steps.extend(self.tree_path(e.hi, e.lo));
        Cycle { steps }
    }

    /// Oriented tree edges walking from `a` to `b`.
    pub fn tree_path(&self, a: usize, b: usize) -> Vec<(usize, bool)> {
        let (mut x, mut y) = (a, b);
        let mut up = Vec::new();
        let mut down = Vec::new();
        while x != y {
            if self.depth[x] >= self.depth[y] {
                let (p, k) = self.parent[x].expect("non-root");
                up.push((k, self.edges[k].lo == x));
                x = p;
            } else {
                let (p, k) = self.parent[y].expect("non-root");
                down.push((k, self.edges[k].lo == p));
                y = p;
            }
        }
        down.reverse();
        up.extend(down);
        up
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[ReducedEdge] {
        &self.edges
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let (lo, hi) = (a.min(b), a.max(b));
        self.edges.iter().position(|e| e.lo == lo && e.hi == hi)
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    /// Tree parent of `v` and the connecting reduced edge.
    pub fn parent(&self, v: usize) -> Option<(usize, usize)> {
        self.parent[v]
    }

    /// Vertices in BFS order.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let v = out[i];
            out.extend((0..self.n).filter(|&w| self.parent[w].is_some_and(|(p, _)| p == v)));
            i += 1;
        }
        out
    }
}
