//! Reduce, recurse, extend: list edge coloring of outer-1-plane drawings with
//! maximum degree at most four and 4-lists.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Catalog, DEGREE_CAP};
use crate::coloring::{
    available_colors, backtrack_color_counted, check_coloring, Color, EdgeColoring, ListAssignment,
    Violation,
};
use crate::drawing::{edge_map, Edge, GraphJson, OuterDrawing, Theta, Vertex};
use crate::factory::{for_each_drawing, DrawingFilters, FactoryError, ENUMERATION_LIMIT};
use crate::matcher::{find_first_occurrence, find_first_occurrence_among, validate_occurrence, Occurrence};

pub const MIN_LIST_SIZE: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Precondition {
    NotOuter1Planar { offending_edges: Vec<Edge> },
    DegreeTooLarge { max_degree: usize },
    MissingList { edge: Edge },
    ListTooShort { edge: Edge, size: usize },
    ListForUnknownEdge { edge: Edge },
    CrossingDistanceTooSmall { theta: Theta },
}

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Precondition::NotOuter1Planar { offending_edges } => {
                write!(f, "drawing is not outer-1-plane ({} edges crossed twice or more)", offending_edges.len())
            }
            Precondition::DegreeTooLarge { max_degree } => {
                write!(f, "maximum degree {max_degree} exceeds {DEGREE_CAP}")
            }
            Precondition::MissingList { edge } => write!(f, "edge {edge} has no list"),
            Precondition::ListTooShort { edge, size } => {
                write!(f, "list of edge {edge} has {size} colors, needs {MIN_LIST_SIZE}")
            }
            Precondition::ListForUnknownEdge { edge } => write!(f, "list given for non-edge {edge}"),
            Precondition::CrossingDistanceTooSmall { theta } => {
                write!(f, "maximum degree 4 with crossing distance {theta} below 3")
            }
        }
    }
}

/// Everything needed to reproduce and inspect a failed reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: String,
    pub graph: GraphJson,
    pub lists: ListAssignment,
    /// The graph left when the failure happened.
    pub remaining: GraphJson,
    pub occurrence: Option<Occurrence>,
    /// Colors still available on each removed edge at the failed extension.
    pub residual_lists: Option<ListAssignment>,
}

impl Witness {
    /// Writes `<stem>.json`, `<stem>-graph.json` and `<stem>-lists.json` into
    /// `dir` and returns the first path with a command that replays the run.
    pub fn write_to(&self, dir: &Path, stem: &str) -> std::io::Result<(PathBuf, String)> {
        std::fs::create_dir_all(dir)?;
        let main = dir.join(format!("{stem}.json"));
        let graph = dir.join(format!("{stem}-graph.json"));
        let lists = dir.join(format!("{stem}-lists.json"));
        std::fs::write(&main, serde_json::to_string_pretty(self).expect("witness serializes"))?;
        std::fs::write(&graph, serde_json::to_string(&self.graph).expect("graph serializes"))?;
        std::fs::write(&lists, self.lists.to_json())?;
        let cmd = format!("o1p color --graph {} --lists {}", graph.display(), lists.display());
        Ok((main, cmd))
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(Precondition),
    #[error("no configuration found in a graph of minimum degree at least 2")]
    NoConfigurationFound(Box<Witness>),
    #[error("extension over the removed edges failed")]
    ExtensionFailed(Box<Witness>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Pendant,
    Configuration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub kind: StepKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub configuration: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_map: Option<BTreeMap<String, Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pendant_edge: Option<Edge>,
    pub removed_edges: Vec<Edge>,
    #[serde(with = "edge_map")]
    pub extension: BTreeMap<Edge, Color>,
    pub search_nodes: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverStats {
    pub steps: usize,
    pub pendant_steps: usize,
    pub configuration_steps: usize,
    pub max_search_nodes: u64,
    pub configurations: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverResult {
    pub coloring: EdgeColoring,
    pub trace: ReductionTrace,
    pub stats: SolverStats,
}

impl SolverResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serializes")
    }
}

/// Checks the solver's input conditions.
pub fn check_preconditions(d: &OuterDrawing, lists: &ListAssignment) -> Result<(), Precondition> {
    if let Err(r) = d.validate_outer1planarity() {
        return Err(Precondition::NotOuter1Planar {
            offending_edges: r.offending_edges,
        });
    }
    let max_degree = d.max_degree();
    if max_degree > DEGREE_CAP {
        return Err(Precondition::DegreeTooLarge { max_degree });
    }
    for &e in d.edges() {
        match lists.get(e) {
            None => return Err(Precondition::MissingList { edge: e }),
            Some(l) if l.len() < MIN_LIST_SIZE => {
                return Err(Precondition::ListTooShort { edge: e, size: l.len() })
            }
            _ => {}
        }
    }
    if let Some((e, _)) = lists.iter().find(|(e, _)| !d.contains_edge(*e)) {
        return Err(Precondition::ListForUnknownEdge { edge: e });
    }
    if max_degree == DEGREE_CAP && d.crossings().len() >= 2 {
        let theta = d.crossing_distance().expect("validated above");
        if !theta.at_least(3) {
            return Err(Precondition::CrossingDistanceTooSmall { theta });
        }
    }
    Ok(())
}

struct Reduction {
    kind: StepKind,
    occurrence: Option<Occurrence>,
    pendant: Option<Edge>,
    removed: Vec<Edge>,
}

/// The component holding the smallest vertex that still has an edge.
fn first_component(h: &OuterDrawing) -> Option<Vec<Vertex>> {
    h.connected_components().into_iter().find(|c| c.len() > 1)
}

/// Colors `d` from `lists`. Per component (smallest vertex first) a pendant
/// edge is removed if one exists, otherwise the first catalog occurrence;
/// after the rest is colored, the removed edges are colored by search.
pub fn color_outer1planar(
    d: &OuterDrawing,
    lists: &ListAssignment,
    catalog: &Catalog,
) -> Result<SolverResult, SolveError> {
    check_preconditions(d, lists).map_err(SolveError::PreconditionViolated)?;

    let witness = |kind: &str, h: &OuterDrawing, occ: Option<Occurrence>, residual| Witness {
        kind: kind.to_string(),
        graph: d.to_graph_json(),
        lists: lists.clone(),
        remaining: h.to_graph_json(),
        occurrence: occ,
        residual_lists: residual,
    };

    let mut graphs = Vec::new();
    let mut reductions = Vec::new();
    let mut h = d.clone();
    while let Some(comp) = first_component(&h) {
        let pendant = comp.iter().copied().find(|&v| h.degree(v) == 1);
        let red = match pendant {
            Some(v) => {
                let e = Edge::new(v, h.neighbors(v)[0]);
                Reduction {
                    kind: StepKind::Pendant,
                    occurrence: None,
                    pendant: Some(e),
                    removed: vec![e],
                }
            }
            None => match find_first_occurrence_among(&h, catalog, &comp) {
                Some(occ) => Reduction {
                    kind: StepKind::Configuration,
                    removed: occ.removed_edges.clone(),
                    occurrence: Some(occ),
                    pendant: None,
                },
                None => {
                    return Err(SolveError::NoConfigurationFound(Box::new(witness(
                        "no-configuration",
                        &h,
                        None,
                        None,
                    ))))
                }
            },
        };
        let next = h.without_edges(&red.removed);
        graphs.push(h);
        reductions.push(red);
        h = next;
    }

    let mut coloring = EdgeColoring::default();
    let mut steps = Vec::with_capacity(reductions.len());
    let mut stats = SolverStats::default();
    for (red, g) in reductions.into_iter().zip(graphs).rev() {
        let outcome = backtrack_color_counted(&g, lists, &coloring);
        let Some(full) = outcome.coloring else {
            let mut residual = ListAssignment::new();
            for &e in &red.removed {
                let avail = available_colors(&g, &coloring, lists, e).expect("edge of g");
                residual.lists.insert(e, avail);
            }
            return Err(SolveError::ExtensionFailed(Box::new(witness(
                "extension-failed",
                &g.without_edges(&red.removed),
                red.occurrence,
                Some(residual),
            ))));
        };
        let extension: BTreeMap<Edge, Color> = red
            .removed
            .iter()
            .map(|&e| (e, full.get(e).expect("extension is total")))
            .collect();
        coloring = full;
        stats.steps += 1;
        stats.max_search_nodes = stats.max_search_nodes.max(outcome.nodes);
        match red.kind {
            StepKind::Pendant => stats.pendant_steps += 1,
            StepKind::Configuration => {
                stats.configuration_steps += 1;
                let id = &red.occurrence.as_ref().expect("configuration step").configuration;
                *stats.configurations.entry(id.clone()).or_default() += 1;
            }
        }
        steps.push(TraceStep {
            kind: red.kind,
            configuration: red.occurrence.as_ref().map(|o| o.configuration.clone()),
            vertex_map: red.occurrence.map(|o| o.vertex_map),
            pendant_edge: red.pendant,
            removed_edges: red.removed,
            extension,
            search_nodes: outcome.nodes,
        });
    }
    steps.reverse();
    Ok(SolverResult {
        coloring,
        trace: ReductionTrace { steps },
        stats,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceViolation {
    pub step: Option<usize>,
    pub detail: String,
}

impl std::fmt::Display for TraceViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.step {
            Some(i) => write!(f, "step {i}: {}", self.detail),
            None => write!(f, "{}", self.detail),
        }
    }
}

/// Replays a trace without the solver: every reduction is re-validated on the
/// graph it was taken from, the removed edges must exhaust the input, and the
/// extensions, applied last step first, must rebuild the reported coloring.
pub fn verify_trace(
    d: &OuterDrawing,
    lists: &ListAssignment,
    catalog: &Catalog,
    result: &SolverResult,
) -> Result<(), TraceViolation> {
    let fail = |step: Option<usize>, detail: String| Err(TraceViolation { step, detail });
    let mut h = d.clone();
    for (i, s) in result.trace.steps.iter().enumerate() {
        let set: BTreeSet<Edge> = s.removed_edges.iter().copied().collect();
        if set.len() != s.removed_edges.len() || set.is_empty() {
            return fail(Some(i), "removed edges are empty or repeated".into());
        }
        if let Some(e) = set.iter().find(|e| !h.contains_edge(**e)) {
            return fail(Some(i), format!("removed edge {e} is not in the remaining graph"));
        }
        match s.kind {
            StepKind::Pendant => {
                let Some(e) = s.pendant_edge else {
                    return fail(Some(i), "pendant step without edge".into());
                };
                if s.removed_edges != [e] || (h.degree(e.u()) != 1 && h.degree(e.v()) != 1) {
                    return fail(Some(i), format!("{e} is not a pendant edge"));
                }
            }
            StepKind::Configuration => {
                let (Some(id), Some(map)) = (&s.configuration, &s.vertex_map) else {
                    return fail(Some(i), "configuration step without occurrence".into());
                };
                let occ = Occurrence {
                    configuration: id.clone(),
                    vertex_map: map.clone(),
                    removed_edges: s.removed_edges.clone(),
                };
                if let Err(m) = validate_occurrence(&h, catalog, &occ) {
                    return fail(Some(i), m);
                }
            }
        }
        h = h.without_edges(&s.removed_edges);
    }
    if h.edge_count() != 0 {
        return fail(None, format!("{} edges are never removed", h.edge_count()));
    }
    let mut coloring = EdgeColoring::default();
    for (i, s) in result.trace.steps.iter().enumerate().rev() {
        let keys: Vec<Edge> = s.extension.keys().copied().collect();
        let mut removed = s.removed_edges.clone();
        removed.sort();
        if keys != removed {
            return fail(Some(i), "extension does not cover exactly the removed edges".into());
        }
        for (&e, &c) in &s.extension {
            if !lists.get(e).is_some_and(|l| l.contains(&c)) {
                return fail(Some(i), format!("color {c} is not in the list of {e}"));
            }
            if let Some((f, _)) = coloring.iter().find(|&(f, fc)| fc == c && f.is_adjacent(e)) {
                return fail(Some(i), format!("{e} and {f} share color {c}"));
            }
            coloring.insert(e, c);
        }
    }
    if coloring != result.coloring {
        return fail(None, "replayed coloring differs from the reported one".into());
    }
    check_coloring(d, Some(lists), &coloring).map_err(|v: Vec<Violation>| TraceViolation {
        step: None,
        detail: format!("final coloring invalid: {v:?}"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditFailure {
    pub n: usize,
    pub graph: GraphJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n_max: usize,
    pub filters: DrawingFilters,
    /// Drawings checked per number of vertices.
    pub drawings: BTreeMap<usize, u64>,
    pub configurations: BTreeMap<String, u64>,
    pub failures: Vec<AuditFailure>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs the matcher on every drawing with 3..=n_max vertices that passes
/// `filters`. Sizes above the enumeration limit need `force`.
pub fn audit_structure(
    n_max: usize,
    filters: &DrawingFilters,
    catalog: &Catalog,
    force: bool,
) -> Result<AuditReport, FactoryError> {
    if n_max > ENUMERATION_LIMIT && !force {
        return Err(FactoryError::TooLarge {
            n: n_max,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut report = AuditReport {
        n_max,
        filters: filters.clone(),
        drawings: BTreeMap::new(),
        configurations: BTreeMap::new(),
        failures: Vec::new(),
    };
    for n in 3..=n_max {
        let mut all = Vec::new();
        for_each_drawing(n, filters, force, |d| all.push(d))?;
        let found: Vec<Option<String>> = all
            .par_iter()
            .map(|d| find_first_occurrence(d, catalog).map(|o| o.configuration))
            .collect();
        report.drawings.insert(n, all.len() as u64);
        for (d, f) in all.iter().zip(found) {
            match f {
                Some(id) => *report.configurations.entry(id).or_default() += 1,
                None => report.failures.push(AuditFailure {
                    n,
                    graph: d.to_graph_json(),
                }),
            }
        }
    }
    Ok(report)
}
