//! Finding catalog configurations inside a host drawing.
//!
//! Solid vertices must have exactly their pictured degree in the host, hollow
//! vertices a degree between their pictured count and stored upper bound.
//! Every pictured edge must map to a distinct host edge. Matching is purely
//! combinatorial; crossings play no role.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, CatalogError, ConfigurationSpec, VertexKind};
use crate::drawing::{Edge, OuterDrawing, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Occurrence {
    pub configuration: String,
    pub vertex_map: BTreeMap<String, Vertex>,
    /// Host edges that are images of pictured edges, sorted.
    pub removed_edges: Vec<Edge>,
}

impl Occurrence {
    /// Whether two hollow vertices share a host vertex.
    pub fn identifies_vertices(&self) -> bool {
        let images: BTreeSet<Vertex> = self.vertex_map.values().copied().collect();
        images.len() < self.vertex_map.len()
    }
}

struct Pattern<'a> {
    spec: &'a ConfigurationSpec,
    solid: Vec<bool>,
    min_deg: Vec<usize>,
    max_deg: Vec<usize>,
    adj: Vec<Vec<bool>>,
    edges: Vec<(usize, usize)>,
    /// Search order: a solid of largest degree first, then vertices adjacent
    /// to placed ones, solids and higher degrees preferred.
    order: Vec<usize>,
}

impl<'a> Pattern<'a> {
    fn new(spec: &'a ConfigurationSpec) -> Self {
        let k = spec.vertices.len();
        let edges = spec.indexed_edges();
        let mut adj = vec![vec![false; k]; k];
        for &(a, b) in &edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        let solid: Vec<bool> = spec.vertices.iter().map(|v| v.kind == VertexKind::Solid).collect();
        let min_deg: Vec<usize> = spec.vertices.iter().map(|v| v.min_deg).collect();
        let max_deg: Vec<usize> = spec.vertices.iter().map(|v| v.max_deg).collect();
        let key = |v: usize| (solid[v], min_deg[v], std::cmp::Reverse(v));
        let mut order = Vec::with_capacity(k);
        let mut placed = vec![false; k];
        while order.len() < k {
            let frontier = (0..k).filter(|&v| !placed[v] && order.iter().any(|&p: &usize| adj[p][v]));
            let next = if order.is_empty() {
                (0..k).max_by_key(|&v| key(v))
            } else {
                frontier.max_by_key(|&v| key(v))
            }
            .expect("configurations are connected");
            placed[next] = true;
            order.push(next);
        }
        Pattern {
            spec,
            solid,
            min_deg,
            max_deg,
            adj,
            edges,
            order,
        }
    }

    fn may_share(&self, a: usize, b: usize, identify: bool) -> bool {
        identify && !self.solid[a] && !self.solid[b] && !self.adj[a][b]
    }

    /// Calls `visit` on every complete map; stops when it returns true.
    fn search(
        &self,
        host: &OuterDrawing,
        roots: &mut dyn Iterator<Item = Vertex>,
        identify: bool,
        visit: &mut dyn FnMut(&[Vertex]) -> bool,
    ) -> bool {
        let mut image = vec![usize::MAX; self.spec.vertices.len()];
        for r in roots {
            if self.extend(host, 0, r, identify, &mut image, visit) {
                return true;
            }
        }
        false
    }

    fn fits(&self, host: &OuterDrawing, c: usize, h: Vertex, identify: bool, image: &[Vertex]) -> bool {
        let deg = host.degree(h);
        if self.solid[c] {
            if deg != self.min_deg[c] {
                return false;
            }
        } else if deg < self.min_deg[c] || deg > self.max_deg[c] {
            return false;
        }
        for (q, &img) in image.iter().enumerate() {
            if img == usize::MAX {
                continue;
            }
            if img == h && !self.may_share(c, q, identify) {
                return false;
            }
            if self.adj[c][q] && !host.has_edge(h, img) {
                return false;
            }
        }
        true
    }

    fn extend(
        &self,
        host: &OuterDrawing,
        depth: usize,
        h: Vertex,
        identify: bool,
        image: &mut Vec<Vertex>,
        visit: &mut dyn FnMut(&[Vertex]) -> bool,
    ) -> bool {
        let c = self.order[depth];
        if !self.fits(host, c, h, identify, image) {
            return false;
        }
        image[c] = h;
        let done = if depth + 1 == self.order.len() {
            self.edge_images_distinct(image) && visit(image)
        } else {
            let next = self.order[depth + 1];
            let anchor = self.order[..=depth]
                .iter()
                .copied()
                .find(|&p| self.adj[p][next])
                .expect("search order follows adjacency");
            host.neighbors(image[anchor])
                .to_vec()
                .into_iter()
                .any(|n| self.extend(host, depth + 1, n, identify, image, visit))
        };
        image[c] = usize::MAX;
        done
    }

    fn edge_images_distinct(&self, image: &[Vertex]) -> bool {
        let set: BTreeSet<Edge> = self.edges.iter().map(|&(a, b)| Edge::new(image[a], image[b])).collect();
        set.len() == self.edges.len()
    }

    fn occurrence(&self, image: &[Vertex]) -> Occurrence {
        let mut removed: Vec<Edge> = self.edges.iter().map(|&(a, b)| Edge::new(image[a], image[b])).collect();
        removed.sort();
        Occurrence {
            configuration: self.spec.id.clone(),
            vertex_map: self
                .spec
                .vertices
                .iter()
                .zip(image)
                .map(|(v, &h)| (v.name.clone(), h))
                .collect(),
            removed_edges: removed,
        }
    }
}

/// First occurrence of a solver configuration, trying configurations in
/// solver order and root vertices in ascending order. Maps that identify
/// hollow vertices are tried only after every configuration has failed to
/// match injectively.
pub fn find_first_occurrence(d: &OuterDrawing, catalog: &Catalog) -> Option<Occurrence> {
    find_first_occurrence_among(d, catalog, &(0..d.n()).collect::<Vec<_>>())
}

/// As [`find_first_occurrence`], with the first matched vertex restricted to
/// `roots`. Since configurations are connected, passing one component's
/// vertices confines the search to that component.
pub fn find_first_occurrence_among(
    d: &OuterDrawing,
    catalog: &Catalog,
    roots: &[Vertex],
) -> Option<Occurrence> {
    let patterns: Vec<Pattern> = catalog.solver_configurations().into_iter().map(Pattern::new).collect();
    for identify in [false, true] {
        for p in &patterns {
            if identify && !p.spec.identifiable {
                continue;
            }
            let mut found = None;
            p.search(d, &mut roots.iter().copied(), identify, &mut |img| {
                found = Some(p.occurrence(img));
                true
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// Every occurrence of one configuration, one per removed-edge set (the map
/// found first in search order is kept), ordered by removed edges.
pub fn enumerate_occurrences(
    d: &OuterDrawing,
    catalog: &Catalog,
    cfg_id: &str,
) -> Result<Vec<Occurrence>, CatalogError> {
    let spec = catalog.configuration(cfg_id)?;
    let p = Pattern::new(spec);
    let mut by_edges: BTreeMap<Vec<Edge>, Occurrence> = BTreeMap::new();
    let passes: &[bool] = if spec.identifiable { &[false, true] } else { &[false] };
    for &identify in passes {
        p.search(d, &mut (0..d.n()), identify, &mut |img| {
            let occ = p.occurrence(img);
            by_edges.entry(occ.removed_edges.clone()).or_insert(occ);
            false
        });
    }
    Ok(by_edges.into_values().collect())
}

/// The host edges an occurrence removes.
pub fn removed_edges_of(_d: &OuterDrawing, occ: &Occurrence) -> BTreeSet<Edge> {
    occ.removed_edges.iter().copied().collect()
}

/// Checks an occurrence against its configuration without using the search.
pub fn validate_occurrence(
    d: &OuterDrawing,
    catalog: &Catalog,
    occ: &Occurrence,
) -> Result<(), String> {
    let spec = catalog
        .configuration(&occ.configuration)
        .map_err(|e| e.to_string())?;
    let img = |name: &str| {
        occ.vertex_map
            .get(name)
            .copied()
            .ok_or_else(|| format!("vertex {name} is unmapped"))
    };
    let mut seen: BTreeMap<Vertex, &str> = BTreeMap::new();
    for v in &spec.vertices {
        let h = img(&v.name)?;
        if h >= d.n() {
            return Err(format!("vertex {} maps outside the host", v.name));
        }
        let deg = d.degree(h);
        match v.kind {
            VertexKind::Solid if deg != v.min_deg => {
                return Err(format!("solid {} has host degree {deg}, needs {}", v.name, v.min_deg))
            }
            VertexKind::Hollow if deg < v.min_deg || deg > v.max_deg => {
                return Err(format!(
                    "hollow {} has host degree {deg}, needs {}..={}",
                    v.name, v.min_deg, v.max_deg
                ))
            }
            _ => {}
        }
        if let Some(other) = seen.insert(h, &v.name) {
            let kinds = [spec.vertices[spec.vertex_index(other).unwrap()].kind, v.kind];
            let adjacent = spec
                .edges
                .iter()
                .any(|[a, b]| (a == other && *b == v.name) || (*a == v.name && b == other));
            if !spec.identifiable || kinds.contains(&VertexKind::Solid) || adjacent {
                return Err(format!("{other} and {} share host vertex {h}", v.name));
            }
        }
    }
    let mut images = BTreeSet::new();
    for [a, b] in &spec.edges {
        let e = Edge::new(img(a)?, img(b)?);
        if !d.has_edge(e.u(), e.v()) {
            return Err(format!("pictured edge {a}-{b} maps to non-edge {e}"));
        }
        if !images.insert(e) {
            return Err(format!("two pictured edges map to {e}"));
        }
    }
    let listed: BTreeSet<Edge> = occ.removed_edges.iter().copied().collect();
    if listed != images || listed.len() != occ.removed_edges.len() {
        return Err("removed edges differ from pictured edge images".into());
    }
    Ok(())
}
