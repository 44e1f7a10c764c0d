//! Maximum matching on general graphs and Tutte–Berge upper bounds.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_rational::Ratio;
use thiserror::Error;

use crate::drawing::{CombinatorialDrawing, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("edge ({0}, {0}) is a loop")]
    Loop(VertexId),
    #[error("edge references unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("brute force limited to {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("vertex {0} of the separator is not in the graph")]
    SeparatorNotSubset(VertexId),
}

/// A simple undirected graph. Edges are stored as `(min, max)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UndirectedSimpleGraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<(VertexId, VertexId)>,
}

impl UndirectedSimpleGraph {
    /// Duplicate edges collapse; loops are rejected.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, MatchingError> {
        let vertices: BTreeSet<VertexId> = vertices.into_iter().collect();
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(MatchingError::Loop(u));
            }
            for w in [u, v] {
                if !vertices.contains(&w) {
                    return Err(MatchingError::UnknownVertex(w));
                }
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(UndirectedSimpleGraph {
            vertices,
            edges: set,
        })
    }

    /// Graph on `0..n` from index pairs.
    pub fn from_indices(n: u32, edges: &[(u32, u32)]) -> Result<Self, MatchingError> {
        Self::new(
            (0..n).map(VertexId),
            edges.iter().map(|&(u, v)| (VertexId(u), VertexId(v))),
        )
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    fn indexed(&self) -> (Vec<VertexId>, Vec<Vec<usize>>) {
        let ids: Vec<VertexId> = self.vertices.iter().copied().collect();
        let index: HashMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for &(u, v) in &self.edges {
            adj[index[&u]].push(index[&v]);
            adj[index[&v]].push(index[&u]);
        }
        (ids, adj)
    }

    fn without(&self, removed: &BTreeSet<VertexId>) -> UndirectedSimpleGraph {
        UndirectedSimpleGraph {
            vertices: self.vertices.difference(removed).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|(u, v)| !removed.contains(u) && !removed.contains(v))
                .copied()
                .collect(),
        }
    }

    /// Sizes of the connected components.
    pub fn component_sizes(&self) -> Vec<usize> {
        let (_, adj) = self.indexed();
        let mut seen = vec![false; adj.len()];
        let mut sizes = Vec::new();
        for s in 0..adj.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut size = 0;
            while let Some(v) = stack.pop() {
                size += 1;
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            sizes.push(size);
        }
        sizes
    }
}

/// The graph underlying a drawing: parallel edges collapse, loops drop.
pub fn underlying_graph(d: &CombinatorialDrawing) -> UndirectedSimpleGraph {
    UndirectedSimpleGraph::new(
        d.vertices(),
        d.edges().map(|(_, uv)| uv).filter(|(u, v)| u != v),
    )
    .expect("drawing endpoints are vertices")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TutteBergeCertificate {
    pub separator: BTreeSet<VertexId>,
    pub odd_components: usize,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingResult {
    pub matching: Vec<(VertexId, VertexId)>,
    pub certificate: Option<TutteBergeCertificate>,
}

impl MatchingResult {
    pub fn size(&self) -> usize {
        self.matching.len()
    }

    pub fn is_disjoint(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.matching
            .iter()
            .all(|&(u, v)| u != v && seen.insert(u) && seen.insert(v))
    }

    pub fn with_certificate(mut self, certificate: TutteBergeCertificate) -> Self {
        self.certificate = Some(certificate);
        self
    }
}

/// Maximum matching by Edmonds' blossom search, one BFS tree per exposed
/// vertex, vertices scanned in ascending order.
pub fn maximum_matching(g: &UndirectedSimpleGraph) -> MatchingResult {
    let (ids, adj) = g.indexed();
    let mate = Blossom::new(&adj).run();
    let matching = mate
        .iter()
        .enumerate()
        .filter_map(|(v, &m)| match m {
            Some(w) if v < w => Some((ids[v], ids[w])),
            _ => None,
        })
        .collect();
    MatchingResult {
        matching,
        certificate: None,
    }
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    in_tree: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![None; n],
            parent: vec![None; n],
            base: (0..n).collect(),
            in_tree: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn run(mut self) -> Vec<Option<usize>> {
        for root in 0..self.adj.len() {
            if self.mate[root].is_none() {
                if let Some(end) = self.search(root) {
                    self.augment(end);
                }
            }
        }
        self.mate
    }

    fn lca(&self, a: usize, b: usize) -> usize {
        let mut on_path = vec![false; self.adj.len()];
        let mut a = a;
        loop {
            a = self.base[a];
            on_path[a] = true;
            match self.mate[a] {
                Some(m) => a = self.parent[m].expect("outer vertex has a parent"),
                None => break,
            }
        }
        let mut b = b;
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b].expect("non-root has a mate")].expect("parent");
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v].expect("blossom path vertex is matched");
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("parent");
        }
    }

    fn contract(&mut self, v: usize, u: usize) {
        let b = self.lca(v, u);
        self.in_blossom.iter_mut().for_each(|x| *x = false);
        self.mark_path(v, b, u);
        self.mark_path(u, b, v);
        for w in 0..self.adj.len() {
            if self.in_blossom[self.base[w]] {
                self.base[w] = b;
                if !self.in_tree[w] {
                    self.in_tree[w] = true;
                    self.queue.push_back(w);
                }
            }
        }
    }

    /// Returns the exposed endpoint of an augmenting path from `root`.
    fn search(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.in_tree = vec![false; n];
        self.parent = vec![None; n];
        self.base = (0..n).collect();
        self.queue.clear();
        self.in_tree[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let u = self.adj[v][i];
                if self.base[v] == self.base[u] || self.mate[v] == Some(u) {
                    continue;
                }
                let u_outer = u == root || self.mate[u].is_some_and(|m| self.parent[m].is_some());
                if u_outer {
                    self.contract(v, u);
                } else if self.parent[u].is_none() {
                    self.parent[u] = Some(v);
                    match self.mate[u] {
                        None => return Some(u),
                        Some(m) => {
                            self.in_tree[m] = true;
                            self.queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        loop {
            let pv = self.parent[v].expect("augmenting path parent");
            let next = self.mate[pv];
            self.mate[v] = Some(pv);
            self.mate[pv] = Some(v);
            match next {
                Some(w) => v = w,
                None => break,
            }
        }
    }
}

pub const BRUTE_FORCE_LIMIT: usize = 16;

/// Exact maximum matching size by memoised exhaustive search.
pub fn brute_force_matching_size(g: &UndirectedSimpleGraph) -> Result<usize, MatchingError> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(MatchingError::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let (_, adj) = g.indexed();
    let nbr: Vec<u32> = adj
        .iter()
        .map(|ws| ws.iter().fold(0u32, |acc, &w| acc | (1 << w)))
        .collect();
    let mut memo: HashMap<u32, usize> = HashMap::new();
    fn best(avail: u32, nbr: &[u32], memo: &mut HashMap<u32, usize>) -> usize {
        if avail == 0 {
            return 0;
        }
        if let Some(&r) = memo.get(&avail) {
            return r;
        }
        let v = avail.trailing_zeros() as usize;
        let rest = avail & !(1 << v);
        let mut result = best(rest, nbr, memo);
        let mut cand = nbr[v] & rest;
        while cand != 0 {
            let w = cand.trailing_zeros();
            cand &= cand - 1;
            result = result.max(1 + best(rest & !(1 << w), nbr, memo));
        }
        memo.insert(avail, result);
        result
    }
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    Ok(best(all, &nbr, &mut memo))
}

/// Tutte–Berge bound `floor((n - (oc(G - U) - |U|)) / 2)`.
pub fn tutte_berge_certificate(
    g: &UndirectedSimpleGraph,
    separator: &BTreeSet<VertexId>,
) -> Result<TutteBergeCertificate, MatchingError> {
    if let Some(&v) = separator.iter().find(|v| !g.vertices.contains(v)) {
        return Err(MatchingError::SeparatorNotSubset(v));
    }
    let odd = g
        .without(separator)
        .component_sizes()
        .into_iter()
        .filter(|s| s % 2 == 1)
        .count();
    let n = g.vertex_count() as i64;
    let bound = (n - (odd as i64 - separator.len() as i64)).div_euclid(2);
    Ok(TutteBergeCertificate {
        separator: separator.clone(),
        odd_components: odd,
        bound: bound as usize,
    })
}

pub fn tutte_berge_upper_bound(
    g: &UndirectedSimpleGraph,
    separator: &BTreeSet<VertexId>,
) -> Result<usize, MatchingError> {
    tutte_berge_certificate(g, separator).map(|c| c.bound)
}

/// Separator from the Gallai–Edmonds decomposition: the neighbours of the
/// vertices missed by some maximum matching. Its Tutte–Berge bound equals
/// the maximum matching size.
pub fn gallai_edmonds_certificate(g: &UndirectedSimpleGraph) -> TutteBergeCertificate {
    let nu = maximum_matching(g).size();
    let missable: BTreeSet<VertexId> = g
        .vertices()
        .filter(|&v| maximum_matching(&g.without(&BTreeSet::from([v]))).size() == nu)
        .collect();
    let separator: BTreeSet<VertexId> = g
        .edges()
        .flat_map(|(u, v)| [(u, v), (v, u)])
        .filter(|(u, v)| missable.contains(u) && !missable.contains(v))
        .map(|(_, v)| v)
        .collect();
    tutte_berge_certificate(g, &separator).expect("separator is a vertex subset")
}

/// `(11n + 12) / 23`, the matching bound for the glued family on `n`
/// vertices.
pub fn lemma_matching_bound(n: i64) -> Ratio<i64> {
    Ratio::new(11 * n + 12, 23)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: u32) -> UndirectedSimpleGraph {
        let edges: Vec<(u32, u32)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        UndirectedSimpleGraph::from_indices(n, &edges).unwrap()
    }

    fn cycle(n: u32) -> UndirectedSimpleGraph {
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        UndirectedSimpleGraph::from_indices(n, &edges).unwrap()
    }

    fn petersen() -> UndirectedSimpleGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        UndirectedSimpleGraph::from_indices(10, &edges).unwrap()
    }

    #[test]
    fn small_matchings() {
        assert_eq!(maximum_matching(&complete(4)).size(), 2);
        assert_eq!(maximum_matching(&cycle(5)).size(), 2);
        let p = petersen();
        assert_eq!(brute_force_matching_size(&p).unwrap(), 5);
        let m = maximum_matching(&p);
        assert_eq!(m.size(), 5);
        assert!(m.is_disjoint());
    }

    #[test]
    fn blossom_needed() {
        // Triangle 0-1-2 with pendant paths; greedy orders get stuck without
        // contracting the odd cycle.
        let g = UndirectedSimpleGraph::from_indices(
            6,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (0, 4), (4, 5)],
        )
        .unwrap();
        assert_eq!(maximum_matching(&g).size(), 3);
    }

    #[test]
    fn brute_force_basics() {
        assert_eq!(
            brute_force_matching_size(&UndirectedSimpleGraph::from_indices(2, &[(0, 1)]).unwrap()),
            Ok(1)
        );
        assert_eq!(
            brute_force_matching_size(&UndirectedSimpleGraph::from_indices(5, &[]).unwrap()),
            Ok(0)
        );
        assert_eq!(brute_force_matching_size(&complete(5)), Ok(2));
        assert_eq!(
            brute_force_matching_size(&complete(17)),
            Err(MatchingError::TooLarge { n: 17, limit: 16 })
        );
    }

    #[test]
    fn tutte_berge_examples() {
        assert_eq!(
            tutte_berge_upper_bound(&complete(4), &BTreeSet::new()),
            Ok(2)
        );
        let path = UndirectedSimpleGraph::from_indices(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            tutte_berge_upper_bound(&path, &BTreeSet::from([VertexId(1)])),
            Ok(1)
        );
        assert_eq!(
            tutte_berge_upper_bound(&path, &BTreeSet::from([VertexId(9)])),
            Err(MatchingError::SeparatorNotSubset(VertexId(9)))
        );
    }

    #[test]
    fn gallai_edmonds_is_tight() {
        for g in [petersen(), cycle(7), complete(5)] {
            let cert = gallai_edmonds_certificate(&g);
            assert_eq!(cert.bound, maximum_matching(&g).size());
        }
        // Star: the centre is the separator.
        let star =
            UndirectedSimpleGraph::from_indices(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let cert = gallai_edmonds_certificate(&star);
        assert_eq!(cert.separator, BTreeSet::from([VertexId(0)]));
        assert_eq!(cert.bound, 1);
    }

    #[test]
    fn lemma_bound_values() {
        assert_eq!(lemma_matching_bound(24), Ratio::from_integer(12));
        assert_eq!(lemma_matching_bound(47), Ratio::from_integer(23));
        assert_eq!(lemma_matching_bound(70), Ratio::from_integer(34));
        assert_eq!(lemma_matching_bound(25), Ratio::new(287, 23));
    }

    #[test]
    fn loops_are_rejected() {
        assert_eq!(
            UndirectedSimpleGraph::from_indices(2, &[(1, 1)]),
            Err(MatchingError::Loop(VertexId(1)))
        );
    }
}
