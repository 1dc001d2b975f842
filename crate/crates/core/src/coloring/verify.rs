//! Universal list-colorability checks for gadgets.
//!
//! Three methods are available:
//! * direct: every canonical assignment over the palette is searched;
//! * split: the gadget is cut into a top and a bottom part that meet in a few
//!   vertices. For each bottom assignment the set of achievable colorings of
//!   the bottom edges at the cut ("port tuples") is computed, closed under
//!   color renaming and reduced to its inclusion-minimal members. Each
//!   canonical top assignment then has to accept at least one tuple of every
//!   minimal set. This covers exactly the same assignments as the direct
//!   method;
//! * sampling: uniformly random lists over a palette, from a seed.

use std::collections::HashMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{ConditionTag, GadgetGraph, GadgetSpec, PlanMode};

use super::{mask_colors, CanonicalCursor, ColoringError, ListAssignment, MaskGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    ExhaustiveCanonical,
    BoundedPalette,
    Randomized { samples: u64, seed: u64 },
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::ExhaustiveCanonical => "exhaustive-canonical",
            Mode::BoundedPalette => "bounded-palette",
            Mode::Randomized { .. } => "randomized",
        }
    }
}

impl From<PlanMode> for Mode {
    fn from(m: PlanMode) -> Self {
        match m {
            PlanMode::ExhaustiveCanonical => Mode::ExhaustiveCanonical,
            PlanMode::BoundedPalette => Mode::BoundedPalette,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub gadget: String,
    pub condition: Option<String>,
    pub mode: &'static str,
    pub method: &'static str,
    pub palette_cap: usize,
    /// The palette is at least the sum of all list sizes, so every assignment
    /// over any palette is a renaming of one that was checked.
    pub palette_complete: bool,
    pub assignments_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Names of the integer vertices used in `counterexample`.
    pub vertices: Vec<String>,
    pub counterexample: Option<ListAssignment>,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks the gadget's claim under its own condition, if any.
pub fn verify_gadget(
    g: &GadgetSpec,
    palette_cap: usize,
    mode: Mode,
) -> Result<VerificationReport, ColoringError> {
    run(g, g.condition.as_ref(), palette_cap, mode)
}

/// Checks the claim restricted to assignments meeting `condition`, which must
/// be the gadget's condition or one of its alternatives.
pub fn verify_conditional_gadget(
    g: &GadgetSpec,
    condition: &ConditionTag,
    palette_cap: usize,
    mode: Mode,
) -> Result<VerificationReport, ColoringError> {
    let known = g
        .condition
        .as_ref()
        .is_some_and(|c| c == condition || c.alternatives().contains(&condition));
    if !known {
        return Err(ColoringError::UnknownCondition(condition.name()));
    }
    run(g, Some(condition), palette_cap, mode)
}

/// Runs the shipped plan: the exhaustive pass at the plan's cap, then the
/// sampling pass when one is configured. Conditions with alternatives are
/// checked one alternative at a time.
pub fn verify_gadget_plan(
    g: &GadgetSpec,
    seed: u64,
) -> Result<Vec<VerificationReport>, ColoringError> {
    let plan = &g.verification;
    let conditions: Vec<Option<&ConditionTag>> = match &g.condition {
        None => vec![None],
        Some(c) => c.alternatives().into_iter().map(Some).collect(),
    };
    let mut out = Vec::new();
    for cond in conditions {
        out.push(run(g, cond, plan.cap, plan.mode.into())?);
        if let (Some(cap), Some(samples)) = (plan.random_cap, plan.random_samples) {
            out.push(run(g, cond, cap, Mode::Randomized { samples, seed })?);
        }
    }
    Ok(out)
}

fn run(
    g: &GadgetSpec,
    condition: Option<&ConditionTag>,
    cap: usize,
    mode: Mode,
) -> Result<VerificationReport, ColoringError> {
    let graph = g.graph();
    let needed = graph.sizes.iter().copied().max().unwrap_or(1);
    if cap < needed {
        return Err(ColoringError::CapTooSmall { cap, needed });
    }
    if cap > 64 {
        return Err(ColoringError::InvalidRequest("palette cap above 64".into()));
    }
    let compiled = condition.map(|c| Compiled::new(c, &graph)).transpose()?;
    let (method, checked, counterexample) = match mode {
        Mode::Randomized { samples, seed } => {
            let (checked, cex) = sampled(&graph, compiled.as_ref(), cap, samples, seed)?;
            ("sampling", checked, cex)
        }
        _ => {
            let split = g
                .verification
                .split
                .as_ref()
                .filter(|_| compiled.is_none())
                .map(|names| {
                    names
                        .iter()
                        .map(|n| graph.edge_index(n).expect("validated split edge"))
                        .collect::<Vec<_>>()
                })
                .filter(|bottom| split_tuple_count(&graph, bottom, cap).is_some());
            match split {
                Some(bottom) => {
                    let (checked, cex) = split_exhaustive(&graph, &bottom, cap)?;
                    ("split", checked, cex)
                }
                None => {
                    let (checked, cex) = direct(&graph, compiled.as_ref(), cap)?;
                    ("direct", checked, cex)
                }
            }
        }
    };
    Ok(VerificationReport {
        gadget: g.id.clone(),
        condition: condition.map(ConditionTag::name),
        mode: mode.name(),
        method,
        palette_cap: cap,
        palette_complete: !matches!(mode, Mode::Randomized { .. }) && cap >= graph.size_sum(),
        assignments_checked: checked,
        seed: match mode {
            Mode::Randomized { seed, .. } => Some(seed),
            _ => None,
        },
        vertices: graph.vertices.clone(),
        counterexample: counterexample.map(|m| ListAssignment::from_masks(&graph.edges, &m)),
    })
}

/// A condition resolved to edge indices.
#[derive(Clone, Debug)]
pub(crate) enum Compiled {
    Disjoint(usize, usize),
    Equal(usize, usize),
    /// Cycle edges in order; opposite pairs are (0, 2) and (1, 3).
    Opposite([usize; 4]),
    NotR0Exception { center: usize, cycle: [usize; 4] },
    Any(Vec<Compiled>),
}

impl Compiled {
    pub(crate) fn new(c: &ConditionTag, g: &GadgetGraph) -> Result<Self, ColoringError> {
        let edge = |name: &str| {
            g.edge_index(name)
                .ok_or_else(|| ColoringError::UnknownCondition(c.name()))
        };
        let cycle = |cy: &[String; 4]| -> Result<[usize; 4], ColoringError> {
            let mut out = [0; 4];
            for i in 0..4 {
                out[i] = edge(&format!("{}-{}", cy[i], cy[(i + 1) % 4]))?;
            }
            Ok(out)
        };
        Ok(match c {
            ConditionTag::DisjointLists { edges } => {
                Compiled::Disjoint(edge(&edges[0])?, edge(&edges[1])?)
            }
            ConditionTag::EqualLists { edges } => Compiled::Equal(edge(&edges[0])?, edge(&edges[1])?),
            ConditionTag::OppositeSharedColor { cycle: cy } => Compiled::Opposite(cycle(cy)?),
            ConditionTag::R0Exception { edge: e, cycle: cy } => Compiled::NotR0Exception {
                center: edge(e)?,
                cycle: cycle(cy)?,
            },
            ConditionTag::AnyOf { alternatives } => Compiled::Any(
                alternatives
                    .iter()
                    .map(|a| Compiled::new(a, g))
                    .collect::<Result<_, _>>()?,
            ),
        })
    }

    /// Largest edge index the condition reads.
    pub(crate) fn depth(&self) -> usize {
        match self {
            Compiled::Disjoint(a, b) | Compiled::Equal(a, b) => *a.max(b),
            Compiled::Opposite(c) => *c.iter().max().unwrap(),
            Compiled::NotR0Exception { center, cycle } => {
                (*center).max(*cycle.iter().max().unwrap())
            }
            Compiled::Any(all) => all.iter().map(Compiled::depth).max().unwrap_or(0),
        }
    }

    pub(crate) fn holds(&self, lists: &[u64]) -> bool {
        match self {
            Compiled::Disjoint(a, b) => lists[*a] & lists[*b] == 0,
            Compiled::Equal(a, b) => lists[*a] == lists[*b],
            Compiled::Opposite(c) => {
                lists[c[0]] & lists[c[2]] != 0 || lists[c[1]] & lists[c[3]] != 0
            }
            Compiled::NotR0Exception { center, cycle } => !is_r0_exception(lists, *center, cycle),
            Compiled::Any(all) => all.iter().any(|c| c.holds(lists)),
        }
    }
}

/// Every color of the center list lies in exactly two cycle lists, and those
/// two cycle edges are consecutive.
fn is_r0_exception(lists: &[u64], center: usize, cycle: &[usize; 4]) -> bool {
    mask_colors(lists[center]).into_iter().all(|c| {
        let bit = 1u64 << c;
        let hits: Vec<usize> = (0..4).filter(|&i| lists[cycle[i]] & bit != 0).collect();
        hits.len() == 2 && (hits[1] - hits[0] == 1 || (hits[0] == 0 && hits[1] == 3))
    })
}

fn fits(lists: &[u64], coloring: &[u8]) -> bool {
    lists.iter().zip(coloring).all(|(&l, &c)| l >> c & 1 == 1)
}

fn direct(
    g: &GadgetGraph,
    cond: Option<&Compiled>,
    cap: usize,
) -> Result<(u64, Option<Vec<u64>>), ColoringError> {
    let mg = MaskGraph::new(g.vertices.len(), &g.edges);
    let mut cursor = CanonicalCursor::new(&g.sizes, cap)?;
    let mut witness = vec![0u8; g.edges.len()];
    let mut scratch = vec![0u8; g.edges.len()];
    let mut have = false;
    let mut checked = 0;
    while let Some(d) = cursor.advance() {
        let lists = cursor.lists();
        if let Some(c) = cond {
            let depth = c.depth();
            if d <= depth && !c.holds(lists) {
                cursor.skip_subtree(depth);
                continue;
            }
        }
        checked += 1;
        if have && fits(lists, &witness) {
            continue;
        }
        if mg.colorable(lists, &mut scratch) {
            std::mem::swap(&mut witness, &mut scratch);
            have = true;
        } else {
            return Ok((checked, Some(lists.to_vec())));
        }
    }
    Ok((checked, None))
}

fn sampled(
    g: &GadgetGraph,
    cond: Option<&Compiled>,
    cap: usize,
    samples: u64,
    seed: u64,
) -> Result<(u64, Option<Vec<u64>>), ColoringError> {
    let mg = MaskGraph::new(g.vertices.len(), &g.edges);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lists = vec![0u64; g.edges.len()];
    let mut witness = vec![0u8; g.edges.len()];
    let mut have = false;
    let mut checked = 0;
    let mut attempts: u64 = 0;
    let budget = samples.saturating_mul(1000).max(1000);
    while checked < samples {
        attempts += 1;
        if attempts > budget {
            return Err(ColoringError::InvalidRequest(
                "condition is too rare for random sampling".into(),
            ));
        }
        for (l, &k) in lists.iter_mut().zip(&g.sizes) {
            *l = sample(&mut rng, cap, k).into_iter().fold(0, |m, c| m | 1 << c);
        }
        if cond.is_some_and(|c| !c.holds(&lists)) {
            continue;
        }
        checked += 1;
        if have && fits(&lists, &witness) {
            continue;
        }
        if mg.colorable(&lists, &mut witness) {
            have = true;
        } else {
            return Ok((checked, Some(lists)));
        }
    }
    Ok((checked, None))
}

struct SplitShape {
    bottom: Vec<usize>,
    top: Vec<usize>,
    /// Bottom edge positions (within `bottom`) that touch the cut.
    ports: Vec<usize>,
    /// Cut vertices touched by each port.
    port_cut_vertices: Vec<Vec<usize>>,
    tuples: usize,
}

fn split_shape(g: &GadgetGraph, bottom: &[usize], cap: usize) -> Option<SplitShape> {
    let m = g.edges.len();
    if bottom.is_empty() || bottom.len() >= m {
        return None;
    }
    let mut in_bottom = vec![false; m];
    for &b in bottom {
        in_bottom[b] = true;
    }
    let top: Vec<usize> = (0..m).filter(|&e| !in_bottom[e]).collect();
    let mut bottom: Vec<usize> = bottom.to_vec();
    bottom.sort_unstable();
    bottom.dedup();
    let touches = |edges: &[usize], v: usize| edges.iter().any(|&e| g.edges[e].touches(v));
    let cut: Vec<usize> = (0..g.vertices.len())
        .filter(|&v| touches(&bottom, v) && touches(&top, v))
        .collect();
    let mut ports = Vec::new();
    let mut port_cut_vertices = Vec::new();
    for (i, &e) in bottom.iter().enumerate() {
        let on_cut: Vec<usize> = cut.iter().copied().filter(|&v| g.edges[e].touches(v)).collect();
        if !on_cut.is_empty() {
            ports.push(i);
            port_cut_vertices.push(on_cut);
        }
    }
    let tuples = cap.checked_pow(ports.len() as u32)?;
    if tuples > 64 || ports.is_empty() {
        return None;
    }
    Some(SplitShape {
        bottom,
        top,
        ports,
        port_cut_vertices,
        tuples,
    })
}

fn split_tuple_count(g: &GadgetGraph, bottom: &[usize], cap: usize) -> Option<usize> {
    split_shape(g, bottom, cap).map(|s| s.tuples)
}

fn tuple_index(colors: impl Iterator<Item = usize>, cap: usize) -> usize {
    let mut idx = 0;
    let mut scale = 1;
    for c in colors {
        idx += c * scale;
        scale *= cap;
    }
    idx
}

fn tuple_colors(mut idx: usize, ports: usize, cap: usize) -> Vec<usize> {
    (0..ports)
        .map(|_| {
            let c = idx % cap;
            idx /= cap;
            c
        })
        .collect()
}

fn sub_graph(g: &GadgetGraph, edges: &[usize]) -> (MaskGraph, Vec<usize>) {
    let list: Vec<_> = edges.iter().map(|&e| g.edges[e]).collect();
    let sizes = edges.iter().map(|&e| g.sizes[e]).collect();
    (MaskGraph::new(g.vertices.len(), &list), sizes)
}

/// All port tuples realised by proper colorings of the bottom part.
fn achievable(
    mg: &MaskGraph,
    lists: &[u64],
    ports: &[usize],
    cap: usize,
    used: &mut [u64],
    coloring: &mut [u8],
    e: usize,
    acc: &mut u64,
) {
    if e == lists.len() {
        *acc |= 1u64 << tuple_index(ports.iter().map(|&p| coloring[p] as usize), cap);
        return;
    }
    let (a, b) = mg.ends(e);
    let mut avail = lists[e] & !(used[a] | used[b]);
    while avail != 0 {
        let c = avail.trailing_zeros();
        avail &= avail - 1;
        let bit = 1u64 << c;
        used[a] |= bit;
        used[b] |= bit;
        coloring[e] = c as u8;
        achievable(mg, lists, ports, cap, used, coloring, e + 1, acc);
        used[a] &= !bit;
        used[b] &= !bit;
    }
}

fn permutations(cap: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..cap).collect();
    heap_permute(&mut p, cap, &mut out);
    out.sort();
    out
}

fn heap_permute(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap_permute(p, k - 1, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}

fn permute_mask(m: u64, perm: &[usize]) -> u64 {
    let mut out = 0;
    let mut rest = m;
    while rest != 0 {
        let c = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= 1u64 << perm[c];
    }
    out
}

fn split_exhaustive(
    g: &GadgetGraph,
    bottom_edges: &[usize],
    cap: usize,
) -> Result<(u64, Option<Vec<u64>>), ColoringError> {
    let shape = split_shape(g, bottom_edges, cap)
        .ok_or_else(|| ColoringError::InvalidRequest("split is not usable at this cap".into()))?;
    let np = shape.ports.len();
    let (bottom_mg, bottom_sizes) = sub_graph(g, &shape.bottom);
    let (top_mg, top_sizes) = sub_graph(g, &shape.top);
    let assemble = |top: &[u64], bottom: &[u64]| {
        let mut full = vec![0u64; g.edges.len()];
        for (i, &e) in shape.top.iter().enumerate() {
            full[e] = top[i];
        }
        for (i, &e) in shape.bottom.iter().enumerate() {
            full[e] = bottom[i];
        }
        full
    };

    // Tuple permutation tables, one per color permutation.
    let perms = permutations(cap);
    let tuple_perm: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            (0..shape.tuples)
                .map(|t| {
                    let cs = tuple_colors(t, np, cap);
                    tuple_index(cs.into_iter().map(|c| p[c]), cap)
                })
                .collect()
        })
        .collect();

    let mut family: HashMap<u64, Vec<u64>> = HashMap::new();
    let mut cursor = CanonicalCursor::new(&bottom_sizes, cap)?;
    let mut used = vec![0u64; g.vertices.len()];
    let mut coloring = vec![0u8; shape.bottom.len()];
    while cursor.advance().is_some() {
        let lists = cursor.lists();
        let mut acc = 0u64;
        achievable(&bottom_mg, lists, &shape.ports, cap, &mut used, &mut coloring, 0, &mut acc);
        if acc == 0 {
            let top: Vec<u64> = top_sizes.iter().map(|&k| (1u64 << k) - 1).collect();
            return Ok((1, Some(assemble(&top, lists))));
        }
        for (p, tp) in perms.iter().zip(&tuple_perm) {
            let mut image = 0u64;
            let mut rest = acc;
            while rest != 0 {
                let t = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                image |= 1u64 << tp[t];
            }
            family
                .entry(image)
                .or_insert_with(|| lists.iter().map(|&l| permute_mask(l, p)).collect());
        }
    }
    let mut sets: Vec<(u64, Vec<u64>)> = family.into_iter().collect();
    sets.sort_by_key(|(s, _)| (s.count_ones(), *s));
    let mut minimal: Vec<(u64, Vec<u64>)> = Vec::new();
    for (s, l) in sets {
        if !minimal.iter().any(|(k, _)| k & s == *k) {
            minimal.push((s, l));
        }
    }

    let palette = if cap == 64 { u64::MAX } else { (1u64 << cap) - 1 };
    // Port p's colour may not appear at its cut vertices in the top coloring.
    let rect = |top_coloring: &[u8]| -> u64 {
        let mut at = vec![0u64; g.vertices.len()];
        for (i, &e) in shape.top.iter().enumerate() {
            let edge = g.edges[e];
            at[edge.u()] |= 1 << top_coloring[i];
            at[edge.v()] |= 1 << top_coloring[i];
        }
        let allowed: Vec<u64> = shape
            .port_cut_vertices
            .iter()
            .map(|vs| vs.iter().fold(palette, |m, &v| m & !at[v]))
            .collect();
        let mut out = 0u64;
        for t in 0..shape.tuples {
            let cs = tuple_colors(t, np, cap);
            if cs.iter().zip(&allowed).all(|(&c, &a)| a >> c & 1 == 1) {
                out |= 1 << t;
            }
        }
        out
    };

    let mut cursor = CanonicalCursor::new(&top_sizes, cap)?;
    let mut cache: Vec<Vec<u8>> = Vec::new();
    let mut out = vec![0u8; shape.top.len()];
    let mut checked = 0;
    while cursor.advance().is_some() {
        let lists = cursor.lists();
        checked += 1;
        let mut yes = 0u64;
        let mut no = 0u64;
        for w in &cache {
            if fits(lists, w) {
                yes |= rect(w);
            }
        }
        for (set, bottom_lists) in &minimal {
            if set & yes != 0 {
                continue;
            }
            let mut found = false;
            let mut rest = set & !no;
            while rest != 0 {
                let t = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let cs = tuple_colors(t, np, cap);
                for (p, vs) in shape.port_cut_vertices.iter().enumerate() {
                    for &v in vs {
                        used[v] |= 1 << cs[p];
                    }
                }
                let all = (1u64 << shape.top.len()) - 1;
                let ok = top_mg.solve_subset(lists, &mut used, all, &mut out);
                used.iter_mut().for_each(|u| *u = 0);
                if ok {
                    yes |= rect(&out);
                    if cache.len() == 16 {
                        cache.remove(0);
                    }
                    cache.push(out.clone());
                    found = true;
                    break;
                }
                no |= 1 << t;
            }
            if !found {
                return Ok((checked, Some(assemble(lists, bottom_lists))));
            }
        }
    }
    Ok((checked, None))
}
