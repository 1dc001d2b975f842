//! List edge coloring: lists, colorings, the backtracking search, canonical
//! enumeration of list assignments and gadget verification.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drawing::{edge_map, Edge, OuterDrawing};

mod canonical;
mod engine;
mod lemmas;
mod verify;

pub use canonical::{canonical_list_assignments, CanonicalCursor};
pub use engine::MaskGraph;
pub use lemmas::{
    verify_below_xy_lemma, verify_kite_lemma, verify_triangle_lemma, LemmaReport,
};
pub use verify::{
    verify_conditional_gadget, verify_gadget, verify_gadget_plan, Mode, VerificationReport,
};

pub type Color = u32;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("edge {0} is not in the graph")]
    EdgeNotInGraph(Edge),
    #[error("no list given for edge {0}")]
    MissingList(Edge),
    #[error("palette cap {cap} is smaller than the largest list size {needed}")]
    CapTooSmall { cap: usize, needed: usize },
    #[error("graph has {edges} edges; the limit is {limit}")]
    TooLarge { edges: usize, limit: usize },
    #[error("condition {0} does not belong to the gadget")]
    UnknownCondition(String),
    #[error("invalid verification request: {0}")]
    InvalidRequest(String),
}

/// Color lists per edge, kept sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLists")]
pub struct ListAssignment {
    #[serde(with = "edge_map")]
    pub lists: BTreeMap<Edge, Vec<Color>>,
}

#[derive(Deserialize)]
struct RawLists {
    #[serde(with = "edge_map")]
    lists: BTreeMap<Edge, Vec<Color>>,
}

impl TryFrom<RawLists> for ListAssignment {
    type Error = String;

    fn try_from(raw: RawLists) -> Result<Self, String> {
        let mut out = ListAssignment::new();
        for (e, l) in raw.lists {
            if l.is_empty() {
                return Err(format!("empty list on edge {e}"));
            }
            out.insert(e, l);
        }
        Ok(out)
    }
}

impl ListAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// The same list on every edge of `graph`.
    pub fn uniform(graph: &OuterDrawing, colors: &[Color]) -> Self {
        let mut out = Self::new();
        for &e in graph.edges() {
            out.insert(e, colors.iter().copied());
        }
        out
    }

    pub fn insert(&mut self, e: Edge, colors: impl IntoIterator<Item = Color>) {
        let mut list: Vec<Color> = colors.into_iter().collect();
        list.sort_unstable();
        list.dedup();
        self.lists.insert(e, list);
    }

    pub fn get(&self, e: Edge) -> Option<&[Color]> {
        self.lists.get(&e).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, &[Color])> {
        self.lists.iter().map(|(e, l)| (*e, l.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    /// Applies a color renaming to every list.
    pub fn relabeled(&self, f: impl Fn(Color) -> Color) -> Self {
        let mut out = Self::new();
        for (e, l) in self.iter() {
            out.insert(e, l.iter().map(|&c| f(c)));
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("lists serialize")
    }

    /// Builds lists from color bit masks aligned with `edges`.
    pub fn from_masks(edges: &[Edge], masks: &[u64]) -> Self {
        let mut out = Self::new();
        for (&e, &m) in edges.iter().zip(masks) {
            out.insert(e, mask_colors(m));
        }
        out
    }
}

/// One color per edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeColoring {
    #[serde(with = "edge_map")]
    colors: BTreeMap<Edge, Color>,
}

impl EdgeColoring {
    pub fn get(&self, e: Edge) -> Option<Color> {
        self.colors.get(&e).copied()
    }

    pub fn insert(&mut self, e: Edge, c: Color) {
        self.colors.insert(e, c);
    }

    pub fn remove(&mut self, e: Edge) -> Option<Color> {
        self.colors.remove(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, Color)> + '_ {
        self.colors.iter().map(|(e, c)| (*e, *c))
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn extend(&mut self, other: &EdgeColoring) {
        for (e, c) in other.iter() {
            self.insert(e, c);
        }
    }
}

impl FromIterator<(Edge, Color)> for EdgeColoring {
    fn from_iter<I: IntoIterator<Item = (Edge, Color)>>(iter: I) -> Self {
        EdgeColoring {
            colors: iter.into_iter().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// Two edges at `vertex` share a color.
    Conflict {
        a: Edge,
        b: Edge,
        vertex: usize,
        color: Color,
    },
    NotInList { edge: Edge, color: Color },
    Uncolored { edge: Edge },
    UnknownEdge { edge: Edge },
}

pub(crate) fn mask_colors(mut m: u64) -> Vec<Color> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros());
        m &= m - 1;
    }
    out
}

/// `L(e)` minus the colors already used on colored edges adjacent to `e`.
pub fn available_colors(
    graph: &OuterDrawing,
    partial: &EdgeColoring,
    lists: &ListAssignment,
    e: Edge,
) -> Result<Vec<Color>, ColoringError> {
    if !graph.contains_edge(e) {
        return Err(ColoringError::EdgeNotInGraph(e));
    }
    let list = lists.get(e).ok_or(ColoringError::MissingList(e))?;
    let used = used_around(graph, partial, e);
    Ok(list.iter().copied().filter(|c| !used.contains(c)).collect())
}

fn used_around(graph: &OuterDrawing, partial: &EdgeColoring, e: Edge) -> Vec<Color> {
    let mut used = Vec::new();
    for x in e.endpoints() {
        for &y in graph.neighbors(x) {
            let f = Edge::new(x, y);
            if f != e {
                if let Some(c) = partial.get(f) {
                    used.push(c);
                }
            }
        }
    }
    used
}

/// Outcome of [`backtrack_color_counted`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub coloring: Option<EdgeColoring>,
    /// Color assignments tried.
    pub nodes: u64,
}

/// Extends `frozen` to a proper list coloring of every edge of `graph`, or
/// returns `None` when no extension exists. Edges without a list cannot be
/// colored.
pub fn backtrack_color(
    graph: &OuterDrawing,
    lists: &ListAssignment,
    frozen: &EdgeColoring,
) -> Option<EdgeColoring> {
    backtrack_color_counted(graph, lists, frozen).coloring
}

/// [`backtrack_color`] with a node count. Picks the uncolored edge with the
/// fewest available colors (ties: smallest edge), tries colors in ascending order.
pub fn backtrack_color_counted(
    graph: &OuterDrawing,
    lists: &ListAssignment,
    frozen: &EdgeColoring,
) -> SearchOutcome {
    let targets: Vec<Edge> = graph
        .edges()
        .iter()
        .copied()
        .filter(|&e| frozen.get(e).is_none())
        .collect();
    let index: BTreeMap<Edge, usize> = targets.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut nbrs = vec![Vec::new(); targets.len()];
    let mut options = Vec::with_capacity(targets.len());
    for (i, &e) in targets.iter().enumerate() {
        for x in e.endpoints() {
            for &y in graph.neighbors(x) {
                if let Some(&j) = index.get(&Edge::new(x, y)) {
                    if j != i {
                        nbrs[i].push(j);
                    }
                }
            }
        }
        let used = used_around(graph, frozen, e);
        let opts: Vec<Color> = lists
            .get(e)
            .unwrap_or(&[])
            .iter()
            .copied()
            .filter(|c| !used.contains(c))
            .collect();
        options.push(opts);
    }
    let mut search = Search {
        nbrs,
        options,
        color: vec![None; targets.len()],
        nodes: 0,
    };
    let found = search.run(targets.len());
    let coloring = found.then(|| {
        let mut out = frozen.clone();
        for (i, &e) in targets.iter().enumerate() {
            out.insert(e, search.color[i].expect("complete"));
        }
        out
    });
    SearchOutcome {
        coloring,
        nodes: search.nodes,
    }
}

struct Search {
    nbrs: Vec<Vec<usize>>,
    options: Vec<Vec<Color>>,
    color: Vec<Option<Color>>,
    nodes: u64,
}

impl Search {
    fn free(&self, i: usize, c: Color) -> bool {
        self.nbrs[i].iter().all(|&j| self.color[j] != Some(c))
    }

    fn run(&mut self, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        let mut best: Option<(usize, usize)> = None;
        for i in 0..self.color.len() {
            if self.color[i].is_some() {
                continue;
            }
            let count = self.options[i].iter().filter(|&&c| self.free(i, c)).count();
            if best.is_none_or(|(_, k)| count < k) {
                best = Some((i, count));
                if count == 0 {
                    return false;
                }
            }
        }
        let (i, _) = best.expect("an uncolored edge remains");
        for k in 0..self.options[i].len() {
            let c = self.options[i][k];
            if !self.free(i, c) {
                continue;
            }
            self.nodes += 1;
            self.color[i] = Some(c);
            if self.run(remaining - 1) {
                return true;
            }
            self.color[i] = None;
        }
        false
    }
}

/// Checks properness, totality and (when given) list membership.
pub fn check_coloring(
    graph: &OuterDrawing,
    lists: Option<&ListAssignment>,
    coloring: &EdgeColoring,
) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    for (e, _) in coloring.iter() {
        if !graph.contains_edge(e) {
            out.push(Violation::UnknownEdge { edge: e });
        }
    }
    for &e in graph.edges() {
        match coloring.get(e) {
            None => out.push(Violation::Uncolored { edge: e }),
            Some(c) => {
                if let Some(l) = lists {
                    if !l.get(e).is_some_and(|l| l.contains(&c)) {
                        out.push(Violation::NotInList { edge: e, color: c });
                    }
                }
            }
        }
    }
    for v in 0..graph.n() {
        let nb = graph.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                let (ea, eb) = (Edge::new(v, a), Edge::new(v, b));
                if let (Some(ca), Some(cb)) = (coloring.get(ea), coloring.get(eb)) {
                    if ca == cb {
                        out.push(Violation::Conflict {
                            a: ea,
                            b: eb,
                            vertex: v,
                            color: ca,
                        });
                    }
                }
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

pub const CHROMATIC_INDEX_EDGE_LIMIT: usize = 16;

/// Smallest k with a proper edge coloring from `{0..k-1}`.
pub fn brute_force_chromatic_index(graph: &OuterDrawing) -> Result<usize, ColoringError> {
    let m = graph.edge_count();
    if m > CHROMATIC_INDEX_EDGE_LIMIT {
        return Err(ColoringError::TooLarge {
            edges: m,
            limit: CHROMATIC_INDEX_EDGE_LIMIT,
        });
    }
    if m == 0 {
        return Ok(0);
    }
    let mut k = graph.max_degree();
    loop {
        let palette: Vec<Color> = (0..k as Color).collect();
        let lists = ListAssignment::uniform(graph, &palette);
        if backtrack_color(graph, &lists, &EdgeColoring::default()).is_some() {
            return Ok(k);
        }
        k += 1;
    }
}
