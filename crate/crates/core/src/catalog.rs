//! Reducible configurations and the list-colorable gadgets they reduce to.
//!
//! The shipped data lives in `data/catalog.json`. Loading validates degrees,
//! references and derived gadgets; [`availability_consistency_check`] ties each
//! configuration to its gadget through worst-case available-color counts.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drawing::Edge;

/// Maximum degree of any host graph the solver accepts.
pub const DEGREE_CAP: usize = 4;

/// Order in which the solver tries configurations.
pub const SOLVER_ORDER: [&str; 16] = [
    "G1", "G2", "G3", "G4", "G5", "G6", "G7", "G8", "G9", "G10", "G12", "G13", "G14", "S1", "S2",
    "S3",
];

const BUILTIN_JSON: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("catalog schema error: {0}")]
    Schema(String),
    #[error("configuration {configuration} references unknown gadget {gadget}")]
    UnknownGadgetReference { configuration: String, gadget: String },
    #[error("configuration {configuration}, vertex {vertex}: {detail}")]
    DegreeInconsistency {
        configuration: String,
        vertex: String,
        detail: String,
    },
    #[error("configuration {configuration}: correspondence with {gadget} is incomplete: {detail}")]
    MissingCorrespondence {
        configuration: String,
        gadget: String,
        detail: String,
    },
    #[error("unknown configuration {0}")]
    UnknownConfiguration(String),
    #[error("unknown gadget {0}")]
    UnknownGadget(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Solid,
    Hollow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSpec {
    pub name: String,
    pub kind: VertexKind,
    pub min_deg: usize,
    pub max_deg: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reduction {
    Gadget(String),
    Adhoc(String),
}

impl Reduction {
    /// The gadget whose list sizes the reduction must respect. Ad-hoc rules
    /// are backed by small gadgets of their own.
    pub fn gadget_id(&self) -> Option<&str> {
        match self {
            Reduction::Gadget(id) => Some(id),
            Reduction::Adhoc(rule) => match rule.as_str() {
                "path" => Some("P3"),
                "4-cycle" => Some("C4"),
                _ => None,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationSpec {
    pub id: String,
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<[String; 2]>,
    pub identifiable: bool,
    pub reduction: Option<Reduction>,
    pub correspondence: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<String>,
    pub figure_ref: String,
}

impl ConfigurationSpec {
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    /// Edges as index pairs into `vertices`.
    pub fn indexed_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .map(|[a, b]| {
                (
                    self.vertex_index(a).expect("validated edge"),
                    self.vertex_index(b).expect("validated edge"),
                )
            })
            .collect()
    }

    /// Number of pictured edges at each vertex.
    pub fn pictured_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for (a, b) in self.indexed_edges() {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConditionTag {
    /// The two edges have disjoint lists.
    DisjointLists { edges: [String; 2] },
    /// Two opposite edges of the 4-cycle share a color.
    OppositeSharedColor { cycle: [String; 4] },
    /// The two edges have identical lists.
    EqualLists { edges: [String; 2] },
    /// The assignment avoids the pattern where every color of `edge` lies in
    /// the lists of exactly two edges of the cycle, and those two are adjacent.
    #[serde(rename = "R0_EXCEPTION")]
    R0Exception { edge: String, cycle: [String; 4] },
    AnyOf { alternatives: Vec<ConditionTag> },
}

impl ConditionTag {
    pub fn name(&self) -> String {
        match self {
            ConditionTag::DisjointLists { edges } => {
                format!("DISJOINT_LISTS({},{})", edges[0], edges[1])
            }
            ConditionTag::OppositeSharedColor { cycle } => {
                format!("OPPOSITE_SHARED_COLOR({})", cycle.concat())
            }
            ConditionTag::EqualLists { edges } => format!("EQUAL_LISTS({},{})", edges[0], edges[1]),
            ConditionTag::R0Exception { edge, .. } => format!("NOT_R0_EXCEPTION({edge})"),
            ConditionTag::AnyOf { alternatives } => alternatives
                .iter()
                .map(ConditionTag::name)
                .collect::<Vec<_>>()
                .join(" OR "),
        }
    }

    /// The individual conditions a claim is stated under.
    pub fn alternatives(&self) -> Vec<&ConditionTag> {
        match self {
            ConditionTag::AnyOf { alternatives } => {
                alternatives.iter().flat_map(|c| c.alternatives()).collect()
            }
            other => vec![other],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    AlwaysColorable,
    ColorableUnderCondition,
    ColorableUnlessException,
    /// Carried for completeness; nothing is asserted about its colorability.
    NoClaim,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlanMode {
    ExhaustiveCanonical,
    BoundedPalette,
}

/// Shipped verification settings for a gadget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationPlan {
    pub cap: usize,
    pub mode: PlanMode,
    /// Edges split off as a separately enumerated part.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random_samples: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetSpec {
    pub id: String,
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub list_sizes: BTreeMap<String, usize>,
    pub condition: Option<ConditionTag>,
    pub claim: Claim,
    pub verification: VerificationPlan,
    pub figure_ref: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived_from: Option<String>,
}

/// A gadget flattened to integer vertices, with edges sorted and sizes aligned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub sizes: Vec<usize>,
}

impl GadgetGraph {
    pub fn edge_name(&self, i: usize) -> String {
        let e = self.edges[i];
        format!("{}-{}", self.vertices[e.u()], self.vertices[e.v()])
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        let (a, b) = name.split_once('-')?;
        let a = self.vertices.iter().position(|v| v == a)?;
        let b = self.vertices.iter().position(|v| v == b)?;
        if a == b {
            return None;
        }
        self.edges.iter().position(|&e| e == Edge::new(a, b))
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn size_sum(&self) -> usize {
        self.sizes.iter().sum()
    }
}

impl GadgetSpec {
    /// Looks up the size of edge `a-b` in either orientation.
    pub fn size_of(&self, a: &str, b: &str) -> Option<usize> {
        self.list_sizes
            .get(&format!("{a}-{b}"))
            .or_else(|| self.list_sizes.get(&format!("{b}-{a}")))
            .copied()
    }

    pub fn graph(&self) -> GadgetGraph {
        let idx = |n: &str| self.vertices.iter().position(|v| v == n).expect("validated");
        let mut pairs: Vec<(Edge, usize)> = self
            .edges
            .iter()
            .map(|[a, b]| (Edge::new(idx(a), idx(b)), self.size_of(a, b).expect("validated")))
            .collect();
        pairs.sort();
        GadgetGraph {
            vertices: self.vertices.clone(),
            edges: pairs.iter().map(|p| p.0).collect(),
            sizes: pairs.iter().map(|p| p.1).collect(),
        }
    }

    fn has_edge(&self, a: &str, b: &str) -> bool {
        self.edges
            .iter()
            .any(|[p, q]| (p == a && q == b) || (p == b && q == a))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub configurations: Vec<ConfigurationSpec>,
    pub gadgets: Vec<GadgetSpec>,
}

impl Catalog {
    pub fn configuration(&self, id: &str) -> Result<&ConfigurationSpec, CatalogError> {
        self.configurations
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| CatalogError::UnknownConfiguration(id.to_string()))
    }

    pub fn gadget(&self, id: &str) -> Result<&GadgetSpec, CatalogError> {
        self.gadgets
            .iter()
            .find(|g| g.id == id)
            .ok_or_else(|| CatalogError::UnknownGadget(id.to_string()))
    }

    /// Configurations with a reduction, in solver order.
    pub fn solver_configurations(&self) -> Vec<&ConfigurationSpec> {
        SOLVER_ORDER
            .iter()
            .filter_map(|id| self.configuration(id).ok())
            .filter(|c| c.reduction.is_some())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serializes")
    }
}

/// The shipped catalog, parsed and validated once.
pub fn builtin_catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| load_catalog(BUILTIN_JSON).expect("shipped catalog is valid"))
}

pub fn builtin_catalog_json() -> &'static str {
    BUILTIN_JSON
}

pub fn load_catalog(text: &str) -> Result<Catalog, CatalogError> {
    let catalog: Catalog =
        serde_json::from_str(text).map_err(|e| CatalogError::Schema(e.to_string()))?;
    let mut ids = BTreeSet::new();
    for g in &catalog.gadgets {
        if !ids.insert(g.id.as_str()) {
            return Err(schema(format!("duplicate gadget id {}", g.id)));
        }
        validate_gadget(g)?;
    }
    for g in &catalog.gadgets {
        if let Some(base) = &g.derived_from {
            let base = catalog
                .gadget(base)
                .map_err(|_| schema(format!("{} derives from unknown gadget {base}", g.id)))?;
            validate_apex_derivation(base, g)?;
        }
    }
    let mut ids = BTreeSet::new();
    for c in &catalog.configurations {
        if !ids.insert(c.id.as_str()) {
            return Err(schema(format!("duplicate configuration id {}", c.id)));
        }
        validate_configuration(c, &catalog)?;
    }
    Ok(catalog)
}

fn schema(msg: String) -> CatalogError {
    CatalogError::Schema(msg)
}

fn validate_gadget(g: &GadgetSpec) -> Result<(), CatalogError> {
    let names: BTreeSet<&str> = g.vertices.iter().map(String::as_str).collect();
    if names.len() != g.vertices.len() {
        return Err(schema(format!("gadget {}: repeated vertex name", g.id)));
    }
    if g.edges.is_empty() || g.edges.len() > 64 {
        return Err(schema(format!("gadget {}: needs 1..=64 edges", g.id)));
    }
    let mut seen = BTreeSet::new();
    for [a, b] in &g.edges {
        if !names.contains(a.as_str()) || !names.contains(b.as_str()) || a == b {
            return Err(schema(format!("gadget {}: bad edge {a}-{b}", g.id)));
        }
        let key = if a < b { (a, b) } else { (b, a) };
        if !seen.insert(key) {
            return Err(schema(format!("gadget {}: duplicate edge {a}-{b}", g.id)));
        }
        match g.size_of(a, b) {
            Some(k) if (1..=4).contains(&k) => {}
            Some(k) => {
                return Err(schema(format!("gadget {}: list size {k} on {a}-{b}", g.id)));
            }
            None => return Err(schema(format!("gadget {}: no list size for {a}-{b}", g.id))),
        }
    }
    for key in g.list_sizes.keys() {
        let ok = key
            .split_once('-')
            .map(|(a, b)| g.has_edge(a, b))
            .unwrap_or(false);
        if !ok {
            return Err(schema(format!("gadget {}: list size for non-edge {key}", g.id)));
        }
    }
    if g.list_sizes.len() != g.edges.len() {
        return Err(schema(format!("gadget {}: edge listed with two sizes", g.id)));
    }
    match (&g.condition, g.claim) {
        (None, Claim::AlwaysColorable | Claim::NoClaim) => {}
        (Some(ConditionTag::R0Exception { .. }), Claim::ColorableUnlessException) => {}
        (Some(ConditionTag::R0Exception { .. }), _) | (Some(_), Claim::ColorableUnlessException) => {
            return Err(schema(format!("gadget {}: claim does not fit condition", g.id)));
        }
        (Some(_), Claim::ColorableUnderCondition) => {}
        _ => return Err(schema(format!("gadget {}: claim does not fit condition", g.id))),
    }
    if let Some(c) = &g.condition {
        validate_condition(g, c)?;
    }
    let plan = &g.verification;
    let max_size = g.list_sizes.values().copied().max().unwrap_or(1);
    if plan.cap < max_size || plan.cap > 64 {
        return Err(schema(format!("gadget {}: verification cap {}", g.id, plan.cap)));
    }
    if let Some(split) = &plan.split {
        for e in split {
            let ok = e.split_once('-').map(|(a, b)| g.has_edge(a, b)).unwrap_or(false);
            if !ok {
                return Err(schema(format!("gadget {}: split edge {e} not in gadget", g.id)));
            }
        }
    }
    Ok(())
}

fn validate_condition(g: &GadgetSpec, c: &ConditionTag) -> Result<(), CatalogError> {
    let edge_ok = |e: &str| e.split_once('-').map(|(a, b)| g.has_edge(a, b)).unwrap_or(false);
    let cycle_ok = |cy: &[String; 4]| (0..4).all(|i| g.has_edge(&cy[i], &cy[(i + 1) % 4]));
    let ok = match c {
        ConditionTag::DisjointLists { edges } | ConditionTag::EqualLists { edges } => {
            edges.iter().all(|e| edge_ok(e))
        }
        ConditionTag::OppositeSharedColor { cycle } => cycle_ok(cycle),
        ConditionTag::R0Exception { edge, cycle } => edge_ok(edge) && cycle_ok(cycle),
        ConditionTag::AnyOf { alternatives } => {
            for a in alternatives {
                validate_condition(g, a)?;
            }
            !alternatives.is_empty()
        }
    };
    if ok {
        Ok(())
    } else {
        Err(schema(format!(
            "gadget {}: condition {} references missing edges",
            g.id,
            c.name()
        )))
    }
}

/// An apex gadget is its base plus a fresh vertex `u` joined to `v` and `w` by 4-lists.
fn validate_apex_derivation(base: &GadgetSpec, hat: &GadgetSpec) -> Result<(), CatalogError> {
    let err = |d: &str| schema(format!("{} is not {} plus apex u: {d}", hat.id, base.id));
    if base.vertices.iter().any(|v| v == "u") || !hat.vertices.iter().any(|v| v == "u") {
        return Err(err("apex vertex u missing or already present"));
    }
    let base_vertices: BTreeSet<&String> = base.vertices.iter().collect();
    let hat_vertices: BTreeSet<&String> = hat.vertices.iter().filter(|v| *v != "u").collect();
    if base_vertices != hat_vertices {
        return Err(err("vertex sets differ"));
    }
    if hat.edges.len() != base.edges.len() + 2 {
        return Err(err("edge counts differ"));
    }
    for [a, b] in &base.edges {
        if hat.size_of(a, b) != base.size_of(a, b) {
            return Err(err(&format!("edge {a}-{b} differs")));
        }
    }
    for w in ["v", "w"] {
        if hat.size_of("u", w) != Some(4) {
            return Err(err(&format!("edge u-{w} must carry a 4-list")));
        }
    }
    Ok(())
}

fn validate_configuration(c: &ConfigurationSpec, catalog: &Catalog) -> Result<(), CatalogError> {
    let names: BTreeSet<&str> = c.vertices.iter().map(|v| v.name.as_str()).collect();
    if names.len() != c.vertices.len() || c.vertices.is_empty() {
        return Err(schema(format!("configuration {}: bad vertex list", c.id)));
    }
    let mut seen = BTreeSet::new();
    for [a, b] in &c.edges {
        if !names.contains(a.as_str()) || !names.contains(b.as_str()) || a == b {
            return Err(schema(format!("configuration {}: bad edge {a}-{b}", c.id)));
        }
        if !seen.insert(if a < b { (a, b) } else { (b, a) }) {
            return Err(schema(format!("configuration {}: duplicate edge {a}-{b}", c.id)));
        }
    }
    let deg = c.pictured_degrees();
    for (v, &d) in c.vertices.iter().zip(&deg) {
        let bad = |detail: String| CatalogError::DegreeInconsistency {
            configuration: c.id.clone(),
            vertex: v.name.clone(),
            detail,
        };
        match v.kind {
            VertexKind::Solid if v.min_deg != d || v.max_deg != d => {
                return Err(bad(format!(
                    "solid vertex declares degree {}..={} but has {d} pictured edges",
                    v.min_deg, v.max_deg
                )));
            }
            VertexKind::Hollow if v.min_deg != d => {
                return Err(bad(format!(
                    "hollow vertex declares minimum {} but has {d} pictured edges",
                    v.min_deg
                )));
            }
            _ => {}
        }
        if v.max_deg < v.min_deg || v.max_deg > DEGREE_CAP {
            return Err(bad(format!("degree bound {} out of range", v.max_deg)));
        }
    }
    if !c.vertices.iter().any(|v| v.kind == VertexKind::Solid) {
        return Err(schema(format!("configuration {}: no solid vertex", c.id)));
    }
    if !is_connected(c.vertices.len(), &c.indexed_edges()) {
        return Err(schema(format!("configuration {}: picture is disconnected", c.id)));
    }
    if let Some(a) = &c.anchor {
        if !names.contains(a.as_str()) {
            return Err(schema(format!("configuration {}: unknown anchor {a}", c.id)));
        }
    }
    if let Some(r) = &c.reduction {
        let missing = || CatalogError::UnknownGadgetReference {
            configuration: c.id.clone(),
            gadget: match r {
                Reduction::Gadget(g) | Reduction::Adhoc(g) => g.clone(),
            },
        };
        let gid = r.gadget_id().ok_or_else(missing)?;
        catalog.gadget(gid).map_err(|_| missing())?;
    }
    Ok(())
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(a, b) in edges {
            for (p, q) in [(a, b), (b, a)] {
                if p == x && !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeAvailability {
    pub edge: String,
    pub gadget_edge: String,
    pub bound: i64,
    pub required: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AvailabilityReport {
    pub configuration: String,
    pub gadget: String,
    pub edges: Vec<EdgeAvailability>,
}

impl AvailabilityReport {
    pub fn ok(&self) -> bool {
        self.edges.iter().all(|e| e.ok)
    }

    pub fn failing(&self) -> Vec<&EdgeAvailability> {
        self.edges.iter().filter(|e| !e.ok).collect()
    }
}

/// Compares, edge by edge, the colors a removed edge is guaranteed to keep
/// under 4-lists with the list size its gadget image demands. A hollow end
/// with degree bound `b` and `p` pictured edges can carry `b - p` surviving
/// colored edges.
pub fn availability_consistency_check(
    cfg: &ConfigurationSpec,
    gadget: &GadgetSpec,
) -> Result<AvailabilityReport, CatalogError> {
    let missing = |detail: String| CatalogError::MissingCorrespondence {
        configuration: cfg.id.clone(),
        gadget: gadget.id.clone(),
        detail,
    };
    let corr = cfg
        .correspondence
        .as_ref()
        .ok_or_else(|| missing("no correspondence stored".into()))?;
    let deg = cfg.pictured_degrees();
    let mut images = BTreeSet::new();
    let mut edges = Vec::new();
    for (i, [a, b]) in cfg.edges.iter().enumerate() {
        let ga = corr.get(a).ok_or_else(|| missing(format!("vertex {a} unmapped")))?;
        let gb = corr.get(b).ok_or_else(|| missing(format!("vertex {b} unmapped")))?;
        let required = gadget
            .size_of(ga, gb)
            .ok_or_else(|| missing(format!("edge {a}-{b} maps to non-edge {ga}-{gb}")))?;
        let key = if ga < gb { (ga, gb) } else { (gb, ga) };
        if !images.insert(key) {
            return Err(missing(format!("two edges map onto {ga}-{gb}")));
        }
        let (ia, ib) = cfg.indexed_edges()[i];
        let mut bound = DEGREE_CAP as i64;
        for x in [ia, ib] {
            let v = &cfg.vertices[x];
            if v.kind == VertexKind::Hollow {
                bound -= v.max_deg as i64 - deg[x] as i64;
            }
        }
        edges.push(EdgeAvailability {
            edge: format!("{a}-{b}"),
            gadget_edge: format!("{ga}-{gb}"),
            bound,
            required,
            ok: bound >= required as i64,
        });
    }
    if images.len() != gadget.edges.len() {
        return Err(missing(format!(
            "{} pictured edges but {} gadget edges",
            images.len(),
            gadget.edges.len()
        )));
    }
    Ok(AvailabilityReport {
        configuration: cfg.id.clone(),
        gadget: gadget.id.clone(),
        edges,
    })
}
