//! Simple undirected graphs, the `H_{p,q}` family, vertex expansion and
//! minimal vertex cover enumeration.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// A simple graph on vertices `0..n` with a label per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    labels: Vec<String>,
}

/// Position `x_{i,j}` in `H_{p,q}`: column `i` in `1..=q`, row `j` in `0..p`.
///
/// The flat vertex index is `(i - 1) * p + j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridLabel {
    pub i: usize,
    pub j: usize,
}

impl GridLabel {
    pub fn new(i: usize, j: usize) -> Self {
        GridLabel { i, j }
    }

    pub fn index(self, p: usize) -> usize {
        (self.i - 1) * p + self.j
    }

    pub fn from_index(index: usize, p: usize) -> Self {
        GridLabel { i: index / p + 1, j: index % p }
    }
}

impl fmt::Display for GridLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{},{}", self.i, self.j)
    }
}

/// A vertex cover, stored as sorted vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexCover {
    pub vertices: Vec<usize>,
}

impl VertexCover {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Edgeless graph on `n` vertices labelled by their index.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![VertexSet::new(n); n],
            labels: (0..n).map(|v| v.to_string()).collect(),
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("in range");
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("in range")
    }

    /// Repeated edges collapse; loops are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.n() {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = labels;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lex order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// `H_{p,q}`: `q` columns of `K_p`, row paths `x_{i,j} - x_{i+1,j}`, and
    /// twist edges `x_{1,j} - x_{q,p-1-j}`.
    pub fn build_hpq(p: usize, q: usize) -> Result<Self> {
        if p < 3 || q < 4 {
            return Err(Error::InvalidArgument(format!(
                "H_(p,q) needs p >= 3 and q >= 4, got p = {p}, q = {q}"
            )));
        }
        let idx = |i: usize, j: usize| GridLabel::new(i, j).index(p);
        let mut g = Graph::empty(p * q);
        for i in 1..=q {
            for a in 0..p {
                for b in a + 1..p {
                    g.add_edge(idx(i, a), idx(i, b))?;
                }
            }
        }
        for i in 1..q {
            for j in 0..p {
                g.add_edge(idx(i, j), idx(i + 1, j))?;
            }
        }
        for j in 0..p {
            g.add_edge(idx(1, j), idx(q, p - 1 - j))?;
        }
        g.labels = (0..p * q).map(|v| GridLabel::from_index(v, p).to_string()).collect();
        Ok(g)
    }

    /// Add a twin of `v` adjacent to `v` and to every neighbor of `v`.
    pub fn expand(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let n = self.n();
        let mut g = Graph::empty(n + 1);
        for (u, w) in self.edges() {
            g.add_edge(u, w)?;
        }
        g.add_edge(v, n)?;
        for w in self.adj[v].iter() {
            g.add_edge(w, n)?;
        }
        g.labels = self.labels.clone();
        g.labels.push(format!("{}'", self.labels[v]));
        Ok(g)
    }

    /// Expand successively at each original vertex of `w`, in ascending order.
    pub fn expand_at(&self, w: &[usize]) -> Result<Graph> {
        let mut order = w.to_vec();
        order.sort_unstable();
        order.dedup();
        for &v in &order {
            self.check_vertex(v)?;
        }
        let mut g = self.clone();
        for v in order {
            g = g.expand(v)?;
        }
        Ok(g)
    }

    /// Induced subgraph on `keep` (sorted), with compacted indices.
    pub fn induced(&self, keep: &[usize]) -> Result<Graph> {
        for &v in keep {
            self.check_vertex(v)?;
        }
        let mut pos = vec![usize::MAX; self.n()];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        let mut g = Graph::empty(keep.len());
        for (u, v) in self.edges() {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                g.add_edge(pos[u], pos[v])?;
            }
        }
        g.labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        Ok(g)
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.n()).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    pub fn is_vertex_cover(&self, cover: &VertexSet) -> bool {
        self.edges().iter().all(|&(u, v)| cover.contains(u) || cover.contains(v))
    }

    pub fn is_minimal_vertex_cover(&self, cover: &VertexSet) -> bool {
        self.is_vertex_cover(cover)
            && cover.iter().all(|v| {
                let mut smaller = cover.clone();
                smaller.remove(v);
                !self.is_vertex_cover(&smaller)
            })
    }

    /// All maximal independent sets, via Bron–Kerbosch with pivoting on the
    /// complement graph. Sorted lexicographically by vertex list.
    pub fn maximal_independent_sets(&self) -> Vec<VertexSet> {
        let n = self.n();
        // closed neighborhoods: a vertex excludes itself and its neighbors
        let closed: Vec<VertexSet> = (0..n)
            .map(|v| {
                let mut s = self.adj[v].clone();
                s.insert(v);
                s
            })
            .collect();
        let mut out = Vec::new();
        let mut current = VertexSet::new(n);
        mis_recurse(&closed, &mut current, VertexSet::full(n), VertexSet::new(n), &mut out);
        let mut keyed: Vec<(Vec<usize>, VertexSet)> =
            out.into_iter().map(|s| (s.iter().collect(), s)).collect();
        keyed.sort();
        keyed.into_iter().map(|(_, s)| s).collect()
    }

    /// All inclusion-minimal vertex covers, as complements of the maximal
    /// independent sets. Sorted lexicographically.
    pub fn minimal_vertex_covers(&self) -> Vec<VertexCover> {
        let n = self.n();
        let mut covers: Vec<VertexCover> = self
            .maximal_independent_sets()
            .into_iter()
            .map(|s| VertexCover { vertices: (0..n).filter(|&v| !s.contains(v)).collect() })
            .collect();
        covers.sort();
        covers
    }

    pub fn to_json(&self) -> Result<String> {
        let default_labels = (0..self.n()).all(|v| self.labels[v] == v.to_string());
        let repr = GraphRepr {
            n: self.n(),
            labels: (!default_labels).then(|| self.labels.clone()),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        };
        Ok(serde_json::to_string(&repr)?)
    }

    /// Edge-list text: an `n <count>` header then one `u v` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parse either the JSON form or the edge-list text form.
    ///
    /// In the text form blank lines and `#` comments are skipped; without an
    /// `n` header the vertex count is one past the largest index.
    pub fn parse(s: &str) -> Result<Graph> {
        let t = s.trim_start();
        if t.starts_with('{') {
            let repr: GraphRepr = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
            let mut g = Graph::from_edges(repr.n, repr.edges.iter().map(|e| (e[0], e[1])))?;
            if let Some(labels) = repr.labels {
                g.set_labels(labels)?;
            }
            return Ok(g);
        }
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Parse(format!("line {}: cannot read {line:?}", lineno + 1));
            match parts.as_slice() {
                ["n", count] => n = Some(count.parse().map_err(|_| bad())?),
                [u, v] => edges.push((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?)),
                _ => return Err(bad()),
            }
        }
        let n = n.unwrap_or_else(|| edges.iter().map(|&(u, v): &(usize, usize)| u.max(v) + 1).max().unwrap_or(0));
        Graph::from_edges(n, edges)
    }
}

fn mis_recurse(
    closed: &[VertexSet],
    current: &mut VertexSet,
    candidates: VertexSet,
    mut excluded: VertexSet,
    out: &mut Vec<VertexSet>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(current.clone());
        }
        return;
    }
    // pivot: vertex whose complement-neighborhood covers most candidates,
    // i.e. the one excluding the fewest candidates
    let pivot = candidates
        .iter()
        .chain(excluded.iter())
        .min_by_key(|&u| candidates.intersection_len(&closed[u]))
        .expect("nonempty");
    let mut candidates = candidates;
    let branch: Vec<usize> = candidates.intersection(&closed[pivot]).iter().collect();
    for v in branch {
        current.insert(v);
        mis_recurse(
            closed,
            current,
            candidates.difference(&closed[v]),
            excluded.difference(&closed[v]),
            out,
        );
        current.remove(v);
        candidates.remove(v);
        excluded.insert(v);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n = {}, edges = {:?})", self.n(), self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_minimal_covers(g: &Graph) -> Vec<VertexCover> {
        let n = g.n();
        let mut out = Vec::new();
        for mask in 0u64..(1 << n) {
            let s = VertexSet::from_iter(n, (0..n).filter(|v| mask >> v & 1 == 1));
            if g.is_minimal_vertex_cover(&s) {
                out.push(VertexCover { vertices: s.iter().collect() });
            }
        }
        out.sort();
        out
    }

    #[test]
    fn hpq_counts() {
        let h = Graph::build_hpq(3, 4).unwrap();
        assert_eq!(h.n(), 12);
        assert_eq!(h.edge_count(), 24);
        let h = Graph::build_hpq(4, 5).unwrap();
        assert_eq!(h.n(), 20);
        assert_eq!(h.edge_count(), 50);
        assert_eq!(Graph::build_hpq(7, 9).unwrap().n(), 63);
    }

    #[test]
    fn hpq_rejects_small_parameters() {
        assert!(Graph::build_hpq(2, 5).is_err());
        assert!(Graph::build_hpq(3, 3).is_err());
    }

    #[test]
    fn hpq_structure() {
        for p in 3..=6 {
            for q in 4..=8 {
                let h = Graph::build_hpq(p, q).unwrap();
                for v in 0..h.n() {
                    assert_eq!(h.degree(v), p - 1 + 2, "p={p} q={q} v={v}");
                }
                for i in 1..=q {
                    for a in 0..p {
                        for b in a + 1..p {
                            let (u, w) = (GridLabel::new(i, a).index(p), GridLabel::new(i, b).index(p));
                            assert!(h.has_edge(u, w));
                        }
                    }
                }
                for j in 0..p {
                    let u = GridLabel::new(1, j).index(p);
                    let w = GridLabel::new(q, p - 1 - j).index(p);
                    assert!(h.has_edge(u, w));
                }
            }
        }
    }

    #[test]
    fn grid_label_round_trip() {
        let l = GridLabel::new(3, 2);
        assert_eq!(l.index(3), 8);
        assert_eq!(GridLabel::from_index(8, 3), l);
        let h = Graph::build_hpq(3, 4).unwrap();
        assert_eq!(h.label(8), "x3,2");
    }

    #[test]
    fn expand_examples() {
        let k2 = Graph::complete(2);
        let g = k2.expand(0).unwrap();
        assert_eq!(g, {
            let mut k3 = Graph::complete(3);
            k3.set_labels(vec!["0".into(), "1".into(), "0'".into()]).unwrap();
            k3
        });
        let k3 = Graph::complete(3);
        assert_eq!(k3.expand_at(&[]).unwrap(), k3);
        let e = k3.expand(1).unwrap();
        assert_eq!((e.n(), e.edge_count()), (4, 6));
        assert!(matches!(k3.expand(3), Err(Error::VertexOutOfRange { vertex: 3, n: 3 })));
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.expand_at(&[0, 2, 4]).unwrap().n(), 8);
    }

    #[test]
    fn delete_vertex_examples() {
        let k3 = Graph::complete(3);
        let d = k3.delete_vertex(1).unwrap();
        assert_eq!((d.n(), d.edge_count()), (2, 1));
        assert_eq!(d.labels(), &["0".to_string(), "2".to_string()]);
        let e = Graph::complete(2).delete_vertex(0).unwrap();
        assert_eq!((e.n(), e.edge_count()), (1, 0));
        let h = Graph::build_hpq(3, 4).unwrap();
        let v = GridLabel::new(1, 0).index(3);
        assert_eq!(h.degree(v), 4);
        let d = h.delete_vertex(v).unwrap();
        assert_eq!((d.n(), d.edge_count()), (11, 20));
        assert!(h.delete_vertex(12).is_err());
    }

    #[test]
    fn covers_small() {
        let k3 = Graph::complete(3);
        let covers = k3.minimal_vertex_covers();
        let lists: Vec<Vec<usize>> = covers.iter().map(|c| c.vertices.clone()).collect();
        assert_eq!(lists, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let edge = Graph::complete(2);
        let lists: Vec<Vec<usize>> =
            edge.minimal_vertex_covers().iter().map(|c| c.vertices.clone()).collect();
        assert_eq!(lists, vec![vec![0], vec![1]]);
        // edgeless: the empty set is the unique minimal cover
        assert_eq!(Graph::empty(3).minimal_vertex_covers(), vec![VertexCover { vertices: vec![] }]);
    }

    #[test]
    fn covers_h4_match_brute_force() {
        let h = Graph::build_hpq(3, 4).unwrap();
        let covers = h.minimal_vertex_covers();
        assert_eq!(covers, brute_minimal_covers(&h));
        for c in &covers {
            for i in 1..=4 {
                let in_triangle = (0..3).filter(|&j| c.contains(GridLabel::new(i, j).index(3))).count();
                assert!(in_triangle >= 2);
            }
        }
    }

    #[test]
    fn covers_match_brute_force_on_assorted_graphs() {
        let mut graphs = vec![Graph::cycle(5).unwrap(), Graph::cycle(6).unwrap(), Graph::path(7)];
        graphs.push(Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (0, 5)]).unwrap());
        graphs.push(Graph::complete(5).expand(2).unwrap());
        for g in graphs {
            assert_eq!(g.minimal_vertex_covers(), brute_minimal_covers(&g), "{g:?}");
        }
    }

    #[test]
    fn io_round_trip() {
        let h = Graph::build_hpq(3, 4).unwrap();
        let json = h.to_json().unwrap();
        assert_eq!(Graph::parse(&json).unwrap(), h);
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(Graph::parse(&c5.to_edge_list()).unwrap(), c5);
        let g = Graph::parse("# triangle\n0 1\n1 2\n\n0 2\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        assert!(Graph::parse("0 1 2\n").is_err());
        assert!(Graph::parse("n 2\n0 5\n").is_err());
        assert!(Graph::parse("1 1\n").is_err());
    }
}
