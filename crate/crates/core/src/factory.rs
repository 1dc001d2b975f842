//! Random instances, exhaustive small drawings and random list assignments.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::ListAssignment;
use crate::drawing::{edges_cross, Edge, OuterDrawing, Vertex};

/// Largest n accepted by [`enumerate_drawings`] without forcing.
pub const ENUMERATION_LIMIT: usize = 8;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FactoryError {
    #[error("no instance met the requested flags within {attempts} attempts")]
    GenerationExhausted { attempts: usize },
    #[error("n = {n} exceeds the enumeration limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("palette of {palette} colors cannot hold lists of size {list_size}")]
    PaletteTooSmall { palette: usize, list_size: usize },
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n: usize,
    pub seed: u64,
    pub min_crossings: usize,
    pub max_crossings: usize,
    /// Probability of keeping each edge of the boundary cycle.
    pub boundary_density: f64,
    /// Non-crossing chords attempted per vertex.
    pub chord_density: f64,
    pub require_two_connected: bool,
    pub require_min_degree_two: bool,
    pub require_theta_at_least_three: bool,
    pub max_degree: usize,
    pub retry_budget: usize,
}

impl GeneratorConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        GeneratorConfig {
            n,
            seed,
            min_crossings: 0,
            max_crossings: 0,
            boundary_density: 1.0,
            chord_density: 0.5,
            require_two_connected: false,
            require_min_degree_two: false,
            require_theta_at_least_three: false,
            max_degree: 4,
            retry_budget: 10_000,
        }
    }

    pub fn crossings(mut self, min: usize, max: usize) -> Self {
        self.min_crossings = min;
        self.max_crossings = max;
        self
    }

    fn validate(&self) -> Result<(), FactoryError> {
        let bad = |m: &str| Err(FactoryError::InvalidConfig(m.to_string()));
        if self.n < 3 {
            return bad("n must be at least 3");
        }
        if self.min_crossings > self.max_crossings {
            return bad("min_crossings exceeds max_crossings");
        }
        if !(0.0..=1.0).contains(&self.boundary_density) || self.chord_density < 0.0 {
            return bad("densities out of range");
        }
        if self.max_degree < 2 {
            return bad("max_degree must be at least 2");
        }
        Ok(())
    }
}

/// Working edge set with incremental degree and crossing bookkeeping.
struct Builder {
    n: usize,
    edges: Vec<Edge>,
    degree: Vec<usize>,
    crossed: Vec<bool>,
    max_degree: usize,
}

impl Builder {
    fn new(n: usize, max_degree: usize) -> Self {
        Builder {
            n,
            edges: Vec::new(),
            degree: vec![0; n],
            crossed: Vec::new(),
            max_degree,
        }
    }

    fn has(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    fn room(&self, e: Edge) -> bool {
        self.degree[e.u()] < self.max_degree && self.degree[e.v()] < self.max_degree
    }

    fn crossing_edges(&self, e: Edge) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| edges_cross(e, self.edges[i])).collect()
    }

    fn push(&mut self, e: Edge, crossed: bool) {
        self.degree[e.u()] += 1;
        self.degree[e.v()] += 1;
        self.edges.push(e);
        self.crossed.push(crossed);
    }

    fn pop(&mut self) {
        let e = self.edges.pop().expect("edge to pop");
        self.crossed.pop();
        self.degree[e.u()] -= 1;
        self.degree[e.v()] -= 1;
    }

    fn drawing(&self) -> OuterDrawing {
        OuterDrawing::from_edges(self.n, &self.edges).expect("builder keeps edges simple")
    }
}

fn theta_ok(b: &Builder) -> bool {
    b.drawing().crossing_distance().map(|t| t.at_least(3)).unwrap_or(false)
}

fn attempt(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Option<OuterDrawing> {
    let n = cfg.n;
    let mut b = Builder::new(n, cfg.max_degree);
    for i in 0..n {
        if rng.gen_bool(cfg.boundary_density) {
            b.push(Edge::new(i, (i + 1) % n), false);
        }
    }
    let target = rng.gen_range(cfg.min_crossings..=cfg.max_crossings);
    let mut placed = 0;
    let mut tries = 0;
    while placed < target && tries < 50 * n {
        tries += 1;
        let (g1, g2, g3) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
        if g1 + g2 + g3 >= n {
            continue;
        }
        let i = rng.gen_range(0..n);
        let k = (i + g1) % n;
        let j = (k + g2) % n;
        let l = (j + g3) % n;
        let (e, f) = (Edge::new(i, j), Edge::new(k, l));
        if b.has(e) || b.has(f) || !b.room(e) || !b.room(f) {
            continue;
        }
        if !b.crossing_edges(e).is_empty() || !b.crossing_edges(f).is_empty() {
            continue;
        }
        b.push(e, true);
        b.push(f, true);
        if cfg.require_theta_at_least_three && !theta_ok(&b) {
            b.pop();
            b.pop();
            continue;
        }
        placed += 1;
    }
    if placed < target {
        return None;
    }
    let chords = (cfg.chord_density * n as f64).round() as usize;
    for _ in 0..chords {
        if n < 4 {
            break;
        }
        let a = rng.gen_range(0..n);
        let gap = rng.gen_range(2..=n - 2);
        let e = Edge::new(a, (a + gap) % n);
        if b.has(e) || !b.room(e) || !b.crossing_edges(e).is_empty() {
            continue;
        }
        b.push(e, false);
        if cfg.require_theta_at_least_three && placed >= 2 && !theta_ok(&b) {
            b.pop();
        }
    }
    let d = b.drawing();
    let crossings = d.crossings().len();
    let (max_deg, min_deg) = d.degree_stats();
    let ok = d.is_outer1planar()
        && max_deg <= cfg.max_degree
        && (cfg.min_crossings..=cfg.max_crossings).contains(&crossings)
        && (!cfg.require_two_connected || d.is_two_connected())
        && (!cfg.require_min_degree_two || min_deg >= 2)
        && (!cfg.require_theta_at_least_three || d.crossing_distance().is_ok_and(|t| t.at_least(3)));
    ok.then_some(d)
}

/// A seeded random outer-1-plane drawing meeting every requested flag: a
/// boundary cycle, crossing pairs of chords spanning at most three boundary
/// steps each, then non-crossing chords, all under the degree cap, followed by
/// a final check of every flag. Failed attempts are retried.
pub fn random_instance(cfg: &GeneratorConfig) -> Result<OuterDrawing, FactoryError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.retry_budget {
        if let Some(d) = attempt(cfg, &mut rng) {
            return Ok(d);
        }
    }
    Err(FactoryError::GenerationExhausted {
        attempts: cfg.retry_budget,
    })
}

/// Independent uniform `list_size`-subsets of `0..palette`, one per edge.
pub fn random_lists(
    graph: &OuterDrawing,
    list_size: usize,
    palette: usize,
    seed: u64,
) -> Result<ListAssignment, FactoryError> {
    if palette < list_size || list_size == 0 {
        return Err(FactoryError::PaletteTooSmall { palette, list_size });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = ListAssignment::new();
    for &e in graph.edges() {
        out.insert(e, sample(&mut rng, palette, list_size).into_iter().map(|c| c as u32));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawingFilters {
    pub max_degree: usize,
    pub min_degree_two: bool,
    pub theta_at_least_three: bool,
    pub two_connected: bool,
    pub min_crossings: usize,
}

impl Default for DrawingFilters {
    fn default() -> Self {
        DrawingFilters {
            max_degree: 4,
            min_degree_two: false,
            theta_at_least_three: false,
            two_connected: false,
            min_crossings: 0,
        }
    }
}

impl DrawingFilters {
    pub fn accepts(&self, d: &OuterDrawing) -> bool {
        let (max_deg, min_deg) = d.degree_stats();
        max_deg <= self.max_degree
            && (!self.min_degree_two || min_deg >= 2)
            && (self.min_crossings == 0 || d.crossings().len() >= self.min_crossings)
            && (!self.two_connected || d.is_two_connected())
            && (!self.theta_at_least_three || d.crossing_distance().is_ok_and(|t| t.at_least(3)))
    }
}

fn relabelings(n: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::with_capacity(2 * n);
    for r in 0..n {
        out.push((0..n).map(|v| (v + r) % n).collect());
        out.push((0..n).map(|v| (r + n - v) % n).collect());
    }
    out
}

fn relabeled(edges: &[Edge], map: &[Vertex]) -> Vec<Edge> {
    let mut out: Vec<Edge> = edges.iter().map(|e| Edge::new(map[e.u()], map[e.v()])).collect();
    out.sort_unstable();
    out
}

fn is_canonical(edges: &[Edge], maps: &[Vec<Vertex>]) -> bool {
    maps.iter().all(|m| relabeled(edges, m).as_slice() >= edges)
}

fn form_string(n: usize, edges: &[Edge]) -> String {
    let body: Vec<String> = edges.iter().map(|e| e.to_string()).collect();
    format!("{n}:{}", body.join(","))
}

/// The least sorted edge list over the 2n rotations and reflections of the
/// cyclic order, written as `n:u-v,u-v,...`.
pub fn canonical_form(d: &OuterDrawing) -> String {
    let best = relabelings(d.n())
        .iter()
        .map(|m| relabeled(d.edges(), m))
        .min()
        .unwrap_or_default();
    form_string(d.n(), &best)
}

/// Every outer-1-plane drawing on `n` cyclically ordered vertices, one per
/// class under rotation and reflection, in a fixed order.
pub fn enumerate_drawings(n: usize, filters: &DrawingFilters) -> Result<Vec<OuterDrawing>, FactoryError> {
    let mut out = Vec::new();
    for_each_drawing(n, filters, false, |d| out.push(d))?;
    Ok(out)
}

/// Streaming form of [`enumerate_drawings`]; `force` lifts the size guard.
pub fn for_each_drawing(
    n: usize,
    filters: &DrawingFilters,
    force: bool,
    mut visit: impl FnMut(OuterDrawing),
) -> Result<(), FactoryError> {
    if n > ENUMERATION_LIMIT && !force {
        return Err(FactoryError::TooLarge {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    if n == 0 {
        return Ok(());
    }
    let pairs: Vec<Edge> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| Edge::new(a, b)))
        .collect();
    let maps = relabelings(n);
    let mut b = Builder::new(n, filters.max_degree.min(n.saturating_sub(1)).max(1));
    let mut e = Enumerator {
        pairs: &pairs,
        maps: &maps,
        filters,
        visit: &mut visit,
    };
    e.rec(&mut b, 0);
    Ok(())
}

struct Enumerator<'a, F: FnMut(OuterDrawing)> {
    pairs: &'a [Edge],
    maps: &'a [Vec<Vertex>],
    filters: &'a DrawingFilters,
    visit: &'a mut F,
}

impl<F: FnMut(OuterDrawing)> Enumerator<'_, F> {
    fn rec(&mut self, b: &mut Builder, i: usize) {
        if i == self.pairs.len() {
            let mut edges = b.edges.clone();
            edges.sort_unstable();
            if !is_canonical(&edges, self.maps) {
                return;
            }
            let d = b.drawing();
            if self.filters.accepts(&d) {
                (self.visit)(d);
            }
            return;
        }
        let e = self.pairs[i];
        // the last pair at vertex e.u() is (u, n-1): its degree is final after it
        let closes = e.v() == b.n - 1;
        if b.room(e) {
            let hits = b.crossing_edges(e);
            if hits.len() <= 1 && hits.iter().all(|&h| !b.crossed[h]) {
                if let Some(&h) = hits.first() {
                    b.crossed[h] = true;
                }
                b.push(e, !hits.is_empty());
                if !closes || self.degree_final_ok(b, e.u()) {
                    self.rec(b, i + 1);
                }
                b.pop();
                if let Some(&h) = hits.first() {
                    b.crossed[h] = false;
                }
            }
        }
        if !closes || self.degree_final_ok(b, e.u()) {
            self.rec(b, i + 1);
        }
    }

    fn degree_final_ok(&self, b: &Builder, v: Vertex) -> bool {
        !self.filters.min_degree_two || b.degree[v] >= 2
    }
}
