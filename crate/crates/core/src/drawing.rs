//! Outer-1-plane drawings: vertices sit on a circle in index order, edges are
//! straight chords, and two edges cross exactly when their endpoints
//! interleave around the circle.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::coloring::EdgeColoring;

pub type Vertex = usize;

/// An undirected edge stored with its smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Builds the normalized edge `{a, b}`. The endpoints must differ.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        debug_assert_ne!(a, b, "edge endpoints must differ");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(self) -> Vertex {
        self.0
    }

    pub fn v(self) -> Vertex {
        self.1
    }

    pub fn endpoints(self) -> [Vertex; 2] {
        [self.0, self.1]
    }

    pub fn touches(self, x: Vertex) -> bool {
        self.0 == x || self.1 == x
    }

    /// True when the two edges are distinct and share an endpoint.
    pub fn is_adjacent(self, other: Edge) -> bool {
        self != other
            && (self.0 == other.0 || self.0 == other.1 || self.1 == other.0 || self.1 == other.1)
    }

    /// The endpoint opposite to `x`.
    pub fn other(self, x: Vertex) -> Vertex {
        if self.0 == x {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid edge key {0:?}, expected \"u-v\"")]
pub struct ParseEdgeError(pub String);

impl FromStr for Edge {
    type Err = ParseEdgeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseEdgeError(s.to_string());
        let (a, b) = s.split_once('-').ok_or_else(err)?;
        let a: Vertex = a.trim().parse().map_err(|_| err())?;
        let b: Vertex = b.trim().parse().map_err(|_| err())?;
        if a == b {
            return Err(err());
        }
        Ok(Edge::new(a, b))
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0, self.1].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b] = <[Vertex; 2]>::deserialize(d)?;
        if a == b {
            return Err(serde::de::Error::custom(format!("self-loop at vertex {a}")));
        }
        Ok(Edge::new(a, b))
    }
}

/// Serde helpers for maps keyed by edges, written as `"u-v"` strings.
pub mod edge_map {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::Edge;

    pub fn serialize<T: Serialize, S: Serializer>(
        map: &BTreeMap<Edge, T>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_map(map.iter().map(|(e, v)| (e.to_string(), v)))
    }

    pub fn deserialize<'de, T: Deserialize<'de>, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<Edge, T>, D::Error> {
        let raw = BTreeMap::<String, T>::deserialize(d)?;
        let mut out = BTreeMap::new();
        for (k, v) in raw {
            let e: Edge = k.parse().map_err(D::Error::custom)?;
            if out.insert(e, v).is_some() {
                return Err(D::Error::custom(format!("edge {e} listed twice")));
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DrawingError {
    #[error("a drawing needs at least one vertex")]
    NoVertices,
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("drawing is not outer-1-planar; edges crossed more than once: {}", list_edges(.0))]
    NotOuter1Planar(Vec<Edge>),
}

fn list_edges(edges: &[Edge]) -> String {
    edges.iter().map(Edge::to_string).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Boundary,
    Chord,
}

/// Two crossing edges and the four endpoints they span.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Crossing {
    pub endpoints: [Vertex; 4],
    pub edge_a: Edge,
    pub edge_b: Edge,
}

/// Crossing distance of a drawing. `Infinite` when fewer than two crossings exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Theta {
    Finite(usize),
    Infinite,
}

impl Theta {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Theta::Finite(d) => d >= k,
            Theta::Infinite => true,
        }
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theta::Finite(d) => write!(f, "{d}"),
            Theta::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Theta {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Theta::Finite(d) => s.serialize_u64(*d as u64),
            Theta::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Theta {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Finite(usize),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Finite(k) => Ok(Theta::Finite(k)),
            Raw::Text(t) if t == "inf" => Ok(Theta::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("invalid crossing distance {t}"))),
        }
    }
}

/// Edges crossed more than once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub offending_edges: Vec<Edge>,
}

/// Interchange form: `{"n": 5, "edges": [[0, 1], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
}

/// True when `e` and `f` have four distinct endpoints that alternate around the circle.
pub fn edges_cross(e: Edge, f: Edge) -> bool {
    let inside = |x: Vertex| e.0 < x && x < e.1;
    let distinct = e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1;
    distinct && (inside(f.0) != inside(f.1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterDrawing {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
}

impl OuterDrawing {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, DrawingError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n == 0 {
            return Err(DrawingError::NoVertices);
        }
        let mut list = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(DrawingError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(DrawingError::SelfLoop(a));
            }
            list.push(Edge::new(a, b));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(DrawingError::DuplicateEdge(w[0]));
        }
        Ok(Self::from_sorted(n, list))
    }

    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, DrawingError> {
        Self::new(n, edges.iter().map(|e| (e.0, e.1)))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        OuterDrawing { n, edges, adj }
    }

    pub fn from_json(text: &str) -> Result<Self, GraphParseError> {
        let g: GraphJson = serde_json::from_str(text)?;
        Ok(Self::new(g.n, g.edges.iter().map(|&[a, b]| (a, b)))?)
    }

    pub fn to_graph_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|e| [e.0, e.1]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_graph_json()).expect("graph serializes")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in ascending order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.n && b < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.0, e.1)
    }

    pub fn edge_kind(&self, e: Edge) -> EdgeKind {
        let gap = e.1 - e.0;
        if gap == 1 || gap + 1 == self.n {
            EdgeKind::Boundary
        } else {
            EdgeKind::Chord
        }
    }

    /// The same vertex set with the given edges deleted.
    pub fn without_edges(&self, removed: &[Edge]) -> OuterDrawing {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| !removed.contains(e))
            .collect();
        Self::from_sorted(self.n, edges)
    }

    /// All crossing pairs, ordered by their sorted endpoint sets.
    pub fn crossings(&self) -> Vec<Crossing> {
        let chords: Vec<Edge> = self
            .edges
            .iter()
            .copied()
            .filter(|&e| self.edge_kind(e) == EdgeKind::Chord)
            .collect();
        let mut out = Vec::new();
        for (i, &e) in chords.iter().enumerate() {
            for &f in &chords[i + 1..] {
                if edges_cross(e, f) {
                    let mut endpoints = [e.0, e.1, f.0, f.1];
                    endpoints.sort_unstable();
                    out.push(Crossing {
                        endpoints,
                        edge_a: e,
                        edge_b: f,
                    });
                }
            }
        }
        out.sort();
        out
    }

    pub fn validate_outer1planarity(&self) -> Result<(), ViolationReport> {
        let mut count = std::collections::BTreeMap::<Edge, usize>::new();
        for c in self.crossings() {
            *count.entry(c.edge_a).or_default() += 1;
            *count.entry(c.edge_b).or_default() += 1;
        }
        let offending: Vec<Edge> = count
            .into_iter()
            .filter(|&(_, k)| k > 1)
            .map(|(e, _)| e)
            .collect();
        if offending.is_empty() {
            Ok(())
        } else {
            Err(ViolationReport {
                offending_edges: offending,
            })
        }
    }

    pub fn is_outer1planar(&self) -> bool {
        self.validate_outer1planarity().is_ok()
    }

    /// BFS distances from `src`; `None` marks unreachable vertices.
    pub fn distances_from(&self, src: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn graph_distance(&self, u: Vertex, w: Vertex) -> Result<Option<usize>, DrawingError> {
        for x in [u, w] {
            if x >= self.n {
                return Err(DrawingError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        Ok(self.distances_from(u)[w])
    }

    /// Minimum graph distance between the endpoint sets of two distinct crossings.
    pub fn crossing_distance(&self) -> Result<Theta, DrawingError> {
        if let Err(report) = self.validate_outer1planarity() {
            return Err(DrawingError::NotOuter1Planar(report.offending_edges));
        }
        Ok(self.theta_of(&self.crossings()))
    }

    pub(crate) fn theta_of(&self, crossings: &[Crossing]) -> Theta {
        if crossings.len() < 2 {
            return Theta::Infinite;
        }
        let mut best = Theta::Infinite;
        for (i, c) in crossings.iter().enumerate().take(crossings.len() - 1) {
            let dist = self.multi_source_distances(&c.endpoints);
            for d in &crossings[i + 1..] {
                for &x in &d.endpoints {
                    if let Some(k) = dist[x] {
                        best = best.min(Theta::Finite(k));
                    }
                }
            }
        }
        best
    }

    fn multi_source_distances(&self, sources: &[Vertex]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// (maximum degree, minimum degree)
    pub fn degree_stats(&self) -> (usize, usize) {
        let degs = self.adj.iter().map(Vec::len);
        (degs.clone().max().unwrap_or(0), degs.min().unwrap_or(0))
    }

    pub fn max_degree(&self) -> usize {
        self.degree_stats().0
    }

    /// Components as sorted vertex lists, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected, at least three vertices, and no articulation point.
    pub fn is_two_connected(&self) -> bool {
        if self.n < 3 || self.connected_components().len() != 1 {
            return false;
        }
        self.articulation_points().is_empty()
    }

    pub fn articulation_points(&self) -> Vec<Vertex> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbor index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (x, parent, idx) = *top;
                if idx < self.adj[x].len() {
                    top.2 += 1;
                    let y = self.adj[x][idx];
                    if y == parent {
                        continue;
                    }
                    if disc[y] == usize::MAX {
                        disc[y] = timer;
                        low[y] = timer;
                        timer += 1;
                        if x == root {
                            root_children += 1;
                        }
                        stack.push((y, x, 0));
                    } else {
                        low[x] = low[x].min(disc[y]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[x]);
                        if parent != root && low[x] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// Graphviz text with vertices pinned clockwise on a circle.
    pub fn to_dot(&self, coloring: Option<&EdgeColoring>) -> String {
        let mut out = String::from("graph drawing {\n  layout=neato;\n  node [shape=circle];\n");
        let radius = (self.n as f64 / 4.0).max(1.5);
        for v in 0..self.n {
            let angle = std::f64::consts::FRAC_PI_2
                - 2.0 * std::f64::consts::PI * v as f64 / self.n as f64;
            let x = tidy(radius * angle.cos());
            let y = tidy(radius * angle.sin());
            out.push_str(&format!("  {v} [pos=\"{x:.3},{y:.3}!\"];\n"));
        }
        for e in &self.edges {
            match coloring.and_then(|c| c.get(*e)) {
                Some(c) => out.push_str(&format!("  {} -- {} [label=\"{c}\"];\n", e.0, e.1)),
                None => out.push_str(&format!("  {} -- {};\n", e.0, e.1)),
            }
        }
        out.push_str("}\n");
        out
    }
}

// Keeps tiny negative values from printing as "-0.000".
fn tidy(x: f64) -> f64 {
    if x.abs() < 5e-4 {
        0.0
    } else {
        x
    }
}

#[derive(Debug, Error)]
pub enum GraphParseError {
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_with(n: usize, chords: &[(usize, usize)]) -> OuterDrawing {
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.extend_from_slice(chords);
        OuterDrawing::new(n, edges).unwrap()
    }

    fn k4() -> OuterDrawing {
        OuterDrawing::new(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(k4().edge_count(), 6);
        assert_eq!(
            OuterDrawing::new(3, [(0, 1), (1, 0)]),
            Err(DrawingError::DuplicateEdge(Edge::new(0, 1)))
        );
        assert_eq!(OuterDrawing::new(5, [(0, 0)]), Err(DrawingError::SelfLoop(0)));
        assert_eq!(
            OuterDrawing::new(3, [(0, 3)]),
            Err(DrawingError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(OuterDrawing::new(0, []), Err(DrawingError::NoVertices));
    }

    #[test]
    fn k4_has_one_crossing() {
        let c = k4().crossings();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].edge_a, Edge::new(0, 2));
        assert_eq!(c[0].edge_b, Edge::new(1, 3));
        assert_eq!(c[0].endpoints, [0, 1, 2, 3]);
        assert!(k4().validate_outer1planarity().is_ok());
        assert_eq!(k4().crossing_distance().unwrap(), Theta::Infinite);
    }

    #[test]
    fn cycle_has_no_crossings() {
        assert!(cycle_with(5, &[]).crossings().is_empty());
    }

    #[test]
    fn two_separated_crossings() {
        let d = cycle_with(10, &[(1, 3), (2, 4), (6, 8), (7, 9)]);
        let c = d.crossings();
        assert_eq!(c.len(), 2);
        assert_eq!((c[0].edge_a, c[0].edge_b), (Edge::new(1, 3), Edge::new(2, 4)));
        assert_eq!((c[1].edge_a, c[1].edge_b), (Edge::new(6, 8), Edge::new(7, 9)));
        assert_eq!(d.crossing_distance().unwrap(), Theta::Finite(2));

        let d = cycle_with(13, &[(1, 3), (2, 4), (8, 10), (9, 11)]);
        assert_eq!(d.crossing_distance().unwrap(), Theta::Finite(3));
    }

    #[test]
    fn doubly_crossed_edge_is_reported() {
        let d = cycle_with(5, &[(0, 2), (1, 3), (2, 4)]);
        let report = d.validate_outer1planarity().unwrap_err();
        assert_eq!(report.offending_edges, vec![Edge::new(1, 3)]);
        assert!(matches!(
            d.crossing_distance(),
            Err(DrawingError::NotOuter1Planar(_))
        ));
        assert!(OuterDrawing::new(4, []).unwrap().validate_outer1planarity().is_ok());
    }

    #[test]
    fn distances() {
        let c5 = cycle_with(5, &[]);
        assert_eq!(c5.graph_distance(0, 2).unwrap(), Some(2));
        assert_eq!(c5.graph_distance(3, 3).unwrap(), Some(0));
        let split = OuterDrawing::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(split.graph_distance(0, 3).unwrap(), None);
        assert!(split.graph_distance(0, 9).is_err());
    }

    #[test]
    fn degrees_and_connectivity() {
        assert_eq!(k4().degree_stats(), (3, 3));
        assert!(k4().is_two_connected());
        let p3 = OuterDrawing::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.degree_stats(), (2, 1));
        assert!(!p3.is_two_connected());
        assert_eq!(p3.articulation_points(), vec![1]);
        let c5 = cycle_with(5, &[]);
        assert!(c5.is_two_connected());
        assert_eq!(c5.connected_components().len(), 1);
        let split = OuterDrawing::new(5, [(3, 4), (0, 2)]).unwrap();
        assert_eq!(
            split.connected_components(),
            vec![vec![0, 2], vec![1], vec![3, 4]]
        );
    }

    #[test]
    fn edge_kinds() {
        let d = cycle_with(6, &[(0, 3)]);
        assert_eq!(d.edge_kind(Edge::new(0, 5)), EdgeKind::Boundary);
        assert_eq!(d.edge_kind(Edge::new(2, 3)), EdgeKind::Boundary);
        assert_eq!(d.edge_kind(Edge::new(0, 3)), EdgeKind::Chord);
    }

    #[test]
    fn dot_output() {
        let c3 = cycle_with(3, &[]);
        let dot = c3.to_dot(None);
        assert_eq!(dot.matches("pos=").count(), 3);
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert_eq!(dot, c3.to_dot(None));

        let mut coloring = EdgeColoring::default();
        for (i, e) in k4().edges().iter().enumerate() {
            coloring.insert(*e, i as u32 % 3 + 1);
        }
        let dot = k4().to_dot(Some(&coloring));
        assert_eq!(dot.matches("label=").count(), 6);

        let single = OuterDrawing::new(1, []).unwrap().to_dot(None);
        assert_eq!(single.matches("pos=").count(), 1);
        assert!(!single.contains("--"));
    }

    #[test]
    fn json_round_trip() {
        let d = OuterDrawing::from_json(r#"{"n": 4, "edges": [[2, 1], [0, 3], [1, 0]]}"#).unwrap();
        assert_eq!(d.edges(), &[Edge::new(0, 1), Edge::new(0, 3), Edge::new(1, 2)]);
        assert_eq!(OuterDrawing::from_json(&d.to_json()).unwrap(), d);
        assert!(OuterDrawing::from_json(r#"{"n": 2, "edges": [[0, 0]]}"#).is_err());
    }

    #[test]
    fn edge_keys() {
        assert_eq!("3-1".parse::<Edge>().unwrap(), Edge::new(1, 3));
        assert!("3-3".parse::<Edge>().is_err());
        assert!("x".parse::<Edge>().is_err());
        assert_eq!(Edge::new(4, 2).to_string(), "2-4");
    }
}
