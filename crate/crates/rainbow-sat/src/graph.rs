//! Core representation of `t`-edge-coloured simple graphs and uncoloured
//! pattern graphs.
//!
//! Vertices are dense integers `0..n-1`; colours are integers `1..=t`.
//! Unordered pairs are stored canonically as `(min, max)`.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {{{0},{1}}} already present")]
    DuplicateEdge(usize, usize),
    #[error("colour {got} outside palette 1..={t}")]
    BadColor { got: u32, t: u32 },
    #[error("vertex {got} out of range for n={n}")]
    BadVertex { got: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {{{0},{1}}} not present")]
    MissingEdge(usize, usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

/// A simple undirected graph with a total edge colouring from the palette
/// `1..=t`. Immutable after construction in practice; mutation requires
/// exclusive access.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    n: usize,
    t: u32,
    words: usize,
    /// Bitset adjacency rows, `words` u64 words per vertex.
    adj: Vec<u64>,
    /// Row-major n*n colour matrix; 0 means no edge.
    color: Vec<u32>,
    edge_count: usize,
}

impl ColoredGraph {
    pub fn new(n: usize, t: u32) -> Self {
        let words = n.div_ceil(64).max(1);
        ColoredGraph {
            n,
            t,
            words,
            adj: vec![0; n * words],
            color: vec![0; n * n],
            edge_count: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::BadVertex { got: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, c: u32) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if c == 0 || c > self.t {
            return Err(GraphError::BadColor { got: c, t: self.t });
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
        self.color[u * self.n + v] = c;
        self.color[v * self.n + u] = c;
        self.edge_count += 1;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<u32, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u.min(v), u.max(v)));
        }
        let c = self.color[u * self.n + v];
        self.adj[u * self.words + v / 64] &= !(1 << (v % 64));
        self.adj[v * self.words + u / 64] &= !(1 << (u % 64));
        self.color[u * self.n + v] = 0;
        self.color[v * self.n + u] = 0;
        self.edge_count -= 1;
        Ok(c)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Colour of the edge `{u,v}`, or `None` if absent.
    #[inline]
    pub fn color_of(&self, u: usize, v: usize) -> Option<u32> {
        let c = self.color[u * self.n + v];
        if c == 0 {
            None
        } else {
            Some(c)
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v * self.words..(v + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.adj[v * self.words..(v + 1) * self.words];
        row.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Edges in lexicographic `(u,v)` order with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).filter_map(move |v| self.color_of(u, v).map(|c| (u, v, c)))
        })
    }

    /// Non-edges in lexicographic `(u,v)` order with `u < v`.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// True iff some edge at `v` has colour `c`.
    pub fn sees_color(&self, v: usize, c: u32) -> bool {
        self.neighbors(v).any(|u| self.color[v * self.n + u] == c)
    }

    /// Serializes into the shared text format: line 1 = `n t`, then one
    /// `u v c` line per edge, sorted lexicographically, LF endings.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n, self.t);
        for (u, v, c) in self.edges() {
            let _ = writeln!(s, "{} {} {}", u, v, c);
        }
        s
    }

    pub fn from_text(input: &str) -> Result<Self, ParseError> {
        let mut g: Option<ColoredGraph> = None;
        for (idx, raw) in input.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match g {
                None => {
                    if fields.len() != 2 {
                        return Err(ParseError {
                            line: lineno,
                            msg: "expected header `n t`".into(),
                        });
                    }
                    let n = fields[0].parse().map_err(|_| ParseError {
                        line: lineno,
                        msg: "bad vertex count".into(),
                    })?;
                    let t = fields[1].parse().map_err(|_| ParseError {
                        line: lineno,
                        msg: "bad palette size".into(),
                    })?;
                    g = Some(ColoredGraph::new(n, t));
                }
                Some(ref mut graph) => {
                    if fields.len() != 3 {
                        return Err(ParseError {
                            line: lineno,
                            msg: "expected `u v c`".into(),
                        });
                    }
                    let parse = |s: &str| -> Result<usize, ParseError> {
                        s.parse().map_err(|_| ParseError {
                            line: lineno,
                            msg: format!("bad integer `{s}`"),
                        })
                    };
                    let u = parse(fields[0])?;
                    let v = parse(fields[1])?;
                    let c = parse(fields[2])? as u32;
                    graph.add_edge(u, v, c).map_err(|e| ParseError {
                        line: lineno,
                        msg: e.to_string(),
                    })?;
                }
            }
        }
        g.ok_or(ParseError {
            line: 0,
            msg: "empty input".into(),
        })
    }

    /// DOT export with the colour rendered as an edge label.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in 0..self.n {
            let _ = writeln!(s, "  {v};");
        }
        for (u, v, c) in self.edges() {
            let _ = writeln!(s, "  {u} -- {v} [label=\"{c}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// An uncoloured target graph `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    n: usize,
    /// Sorted canonical `(min,max)` pairs.
    edges: Vec<(usize, usize)>,
    adj: Vec<bool>,
}

impl Pattern {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut p = Pattern {
            n,
            edges: Vec::with_capacity(edges.len()),
            adj: vec![false; n * n],
        };
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::BadVertex { got: u, n });
            }
            if v >= n {
                return Err(GraphError::BadVertex { got: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let (a, b) = (u.min(v), u.max(v));
            if p.adj[a * n + b] {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            p.adj[a * n + b] = true;
            p.adj[b * n + a] = true;
            p.edges.push((a, b));
        }
        p.edges.sort_unstable();
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.adj[v * self.n + u]).count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.adj[v * self.n + u])
    }

    /// Disjoint union, vertices of `other` shifted past `self`.
    pub fn union(&self, other: &Pattern) -> Pattern {
        let n = self.n + other.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + self.n, v + self.n)));
        Pattern::new(n, &edges).expect("union of valid patterns is valid")
    }

    /// Connected components as sub-patterns, each with its sorted original
    /// vertex set.
    pub fn components(&self) -> Vec<(Vec<usize>, Pattern)> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut stack = vec![s];
            let mut comp = Vec::new();
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            let index: std::collections::HashMap<usize, usize> =
                comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let edges: Vec<(usize, usize)> = self
                .edges
                .iter()
                .filter(|(u, _)| index.contains_key(u))
                .map(|&(u, v)| (index[&u], index[&v]))
                .collect();
            out.push((comp.clone(), Pattern::new(comp.len(), &edges).unwrap()));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Pattern with vertices `remove` deleted and the rest renumbered in
    /// ascending order.
    pub fn without_vertices(&self, remove: &[usize]) -> Pattern {
        let keep: Vec<usize> = (0..self.n).filter(|v| !remove.contains(v)).collect();
        let index: std::collections::HashMap<usize, usize> =
            keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| index.contains_key(&u) && index.contains_key(&v))
            .map(|&(u, v)| (index[&u], index[&v]))
            .collect();
        Pattern::new(keep.len(), &edges).unwrap()
    }
}

/// Backtracking isomorphism test for tiny graphs.
pub fn isomorphic(a: &Pattern, b: &Pattern) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut map = vec![usize::MAX; a.n()];
    let mut used = vec![false; b.n()];
    fn go(a: &Pattern, b: &Pattern, k: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if k == a.n() {
            return true;
        }
        for cand in 0..b.n() {
            if used[cand] || a.degree(k) != b.degree(cand) {
                continue;
            }
            let ok = (0..k).all(|w| a.has_edge(k, w) == b.has_edge(cand, map[w]));
            if ok {
                map[k] = cand;
                used[cand] = true;
                if go(a, b, k + 1, map, used) {
                    return true;
                }
                used[cand] = false;
                map[k] = usize::MAX;
            }
        }
        false
    }
    go(a, b, 0, &mut map, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_and_query() {
        let mut g = ColoredGraph::new(3, 3);
        g.add_edge(0, 1, 2).unwrap();
        assert!(g.has_edge(1, 0));
        assert_eq!(g.color_of(0, 1), Some(2));
        assert_eq!(
            g.add_edge(1, 0, 3),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(g.add_edge(0, 2, 4), Err(GraphError::BadColor { got: 4, t: 3 }));
        assert_eq!(g.add_edge(0, 3, 1), Err(GraphError::BadVertex { got: 3, n: 3 }));
        assert_eq!(g.add_edge(2, 2, 1), Err(GraphError::SelfLoop(2)));
    }

    #[test]
    fn k3_incident_colors() {
        let mut g = ColoredGraph::new(3, 3);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(0, 2, 2).unwrap();
        g.add_edge(1, 2, 3).unwrap();
        // vertex 0 sees the colours of its two incident edges
        assert!(g.sees_color(0, 1) && g.sees_color(0, 2) && !g.sees_color(0, 3));
    }

    #[test]
    fn non_edges_examples() {
        let mut k4 = ColoredGraph::new(4, 1);
        for u in 0..4 {
            for v in u + 1..4 {
                k4.add_edge(u, v, 1).unwrap();
            }
        }
        assert!(k4.non_edges().is_empty());

        let empty = ColoredGraph::new(3, 1);
        assert_eq!(empty.non_edges(), vec![(0, 1), (0, 2), (1, 2)]);

        let mut path = ColoredGraph::new(3, 2);
        path.add_edge(0, 1, 1).unwrap();
        path.add_edge(1, 2, 2).unwrap();
        assert_eq!(path.non_edges(), vec![(0, 2)]);
    }

    #[test]
    fn star_sees_color() {
        let mut g = ColoredGraph::new(4, 3);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(0, 2, 2).unwrap();
        g.add_edge(0, 3, 3).unwrap();
        assert!(g.sees_color(0, 2));
        assert!(!g.sees_color(1, 2));
    }

    #[test]
    fn insert_remove_round_trip() {
        let mut g = ColoredGraph::new(5, 3);
        g.add_edge(1, 3, 2).unwrap();
        let before = g.clone();
        g.add_edge(0, 4, 1).unwrap();
        g.remove_edge(4, 0).unwrap();
        assert_eq!(g, before);
    }

    #[test]
    fn degree_sum() {
        let mut g = ColoredGraph::new(6, 2);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(2, 5, 2).unwrap();
        g.add_edge(1, 4, 1).unwrap();
        let sum: usize = (0..6).map(|v| g.degree(v)).sum();
        assert_eq!(sum, 2 * g.edge_count());
    }

    #[test]
    fn text_format_round_trip() {
        let mut g = ColoredGraph::new(4, 3);
        g.add_edge(2, 0, 3).unwrap();
        g.add_edge(0, 1, 1).unwrap();
        let text = g.to_text();
        assert_eq!(text, "4 3\n0 1 1\n0 2 3\n");
        let h = ColoredGraph::from_text(&text).unwrap();
        assert_eq!(g, h);
        // comments and blank lines are tolerated
        let h2 = ColoredGraph::from_text("# comment\n4 3\n\n0 1 1\n0 2 3\n").unwrap();
        assert_eq!(g, h2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = ColoredGraph::from_text("4 3\n0 1\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = ColoredGraph::from_text("4 3\n0 1 9\n").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn pattern_components_and_union() {
        let k3 = Pattern::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let k2 = Pattern::new(2, &[(0, 1)]).unwrap();
        let h = k3.union(&k2);
        assert_eq!(h.n(), 5);
        assert_eq!(h.edge_count(), 4);
        let comps = h.components();
        assert_eq!(comps.len(), 2);
        assert!(isomorphic(&comps[0].1, &k3));
        assert!(isomorphic(&comps[1].1, &k2));
    }

    #[test]
    fn isomorphism_distinguishes() {
        let p4 = Pattern::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let s3 = Pattern::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let p4b = Pattern::new(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert!(!isomorphic(&p4, &s3));
        assert!(isomorphic(&p4, &p4b));
    }
}
