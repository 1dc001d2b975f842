#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use o1p_core::catalog::{ConfigurationSpec, VertexKind};
use o1p_core::OuterDrawing;

pub type Pairs = Vec<(usize, usize)>;

pub fn pairs_of(d: &OuterDrawing) -> Pairs {
    d.edges().iter().map(|e| (e.u(), e.v())).collect()
}

/// Chords a<b and c<d interleave on the circle.
pub fn interleave((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

pub fn at_most_one_crossing_each(edges: &[(usize, usize)]) -> bool {
    edges
        .iter()
        .all(|&e| edges.iter().filter(|&&f| interleave(e, f)).count() <= 1)
}

/// Least sorted edge list over all rotations and reflections.
pub fn dihedral_min(n: usize, edges: &[(usize, usize)]) -> Pairs {
    let mut best: Option<Pairs> = None;
    for r in 0..n {
        for flip in [false, true] {
            let map = |v: usize| if flip { (r + n - v) % n } else { (v + r) % n };
            let mut img: Pairs = edges
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (map(a), map(b));
                    (x.min(y), x.max(y))
                })
                .collect();
            img.sort_unstable();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
    }
    best.unwrap_or_default()
}

/// Every drawing on n cyclically ordered vertices with each edge crossed at
/// most once and maximum degree at most `max_deg`, one per dihedral class.
pub fn brute_force_drawings(n: usize, max_deg: usize) -> BTreeSet<Pairs> {
    let all: Pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << all.len()) {
        let edges: Pairs = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i]).collect();
        let mut deg = vec![0; n];
        for &(a, b) in &edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.iter().any(|&k| k > max_deg) || !at_most_one_crossing_each(&edges) {
            continue;
        }
        out.insert(dihedral_min(n, &edges));
    }
    out
}

/// Removed-edge sets of every valid map of `spec` into `d`, found by trying
/// each pictured vertex in declaration order against every host vertex.
pub fn naive_occurrences(d: &OuterDrawing, spec: &ConfigurationSpec) -> BTreeSet<Pairs> {
    let k = spec.vertices.len();
    let edges = spec.indexed_edges();
    let mut out = BTreeSet::new();
    let mut img = vec![usize::MAX; k];
    naive_extend(d, spec, &edges, 0, &mut img, &mut out);
    out
}

fn naive_extend(
    d: &OuterDrawing,
    spec: &ConfigurationSpec,
    edges: &[(usize, usize)],
    i: usize,
    img: &mut Vec<usize>,
    out: &mut BTreeSet<Pairs>,
) {
    let k = spec.vertices.len();
    if i == k {
        let mut set: Pairs = edges
            .iter()
            .map(|&(a, b)| (img[a].min(img[b]), img[a].max(img[b])))
            .collect();
        set.sort_unstable();
        let before = set.len();
        set.dedup();
        if set.len() == before {
            out.insert(set);
        }
        return;
    }
    let v = &spec.vertices[i];
    for h in 0..d.n() {
        let deg = d.degree(h);
        let fits = match v.kind {
            VertexKind::Solid => deg == v.min_deg,
            VertexKind::Hollow => deg >= v.min_deg && deg <= v.max_deg,
        };
        if !fits {
            continue;
        }
        let clash = (0..i).any(|j| {
            img[j] == h
                && (!spec.identifiable
                    || v.kind == VertexKind::Solid
                    || spec.vertices[j].kind == VertexKind::Solid
                    || edges.contains(&(i, j))
                    || edges.contains(&(j, i)))
        });
        if clash {
            continue;
        }
        let edges_ok = edges.iter().all(|&(a, b)| {
            let other = if a == i { b } else if b == i { a } else { return true };
            other > i || d.has_edge(img[other], h)
        });
        if !edges_ok {
            continue;
        }
        img[i] = h;
        naive_extend(d, spec, edges, i + 1, img, out);
        img[i] = usize::MAX;
    }
}

/// Connected simple graphs with 1..=max_edges edges, one per isomorphism class.
pub fn connected_graphs(max_edges: usize) -> Vec<(usize, Pairs)> {
    let mut seen: BTreeMap<(usize, Pairs), ()> = BTreeMap::new();
    let mut layer: Vec<(usize, Pairs)> = vec![(2, vec![(0, 1)])];
    seen.insert((2, vec![(0, 1)]), ());
    let mut out = layer.clone();
    for _ in 1..max_edges {
        let mut next = Vec::new();
        for (n, edges) in &layer {
            let mut grow: Vec<(usize, Pairs)> = Vec::new();
            for a in 0..*n {
                for b in a + 1..*n {
                    if !edges.contains(&(a, b)) {
                        let mut e = edges.clone();
                        e.push((a, b));
                        grow.push((*n, e));
                    }
                }
                let mut e = edges.clone();
                e.push((a, *n));
                grow.push((n + 1, e));
            }
            for (m, e) in grow {
                let key = (m, iso_canonical(m, &e));
                if seen.insert(key.clone(), ()).is_none() {
                    next.push(key);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn iso_canonical(n: usize, edges: &[(usize, usize)]) -> Pairs {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Pairs> = None;
    loop {
        let mut img: Pairs = edges
            .iter()
            .map(|&(a, b)| (perm[a].min(perm[b]), perm[a].max(perm[b])))
            .collect();
        img.sort_unstable();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Whether some choice from each list is a proper edge coloring, by trying
/// the full product.
pub fn naive_colorable(edges: &[(usize, usize)], lists: &[Vec<usize>]) -> bool {
    fn go(edges: &[(usize, usize)], lists: &[Vec<usize>], chosen: &mut Vec<usize>) -> bool {
        let i = chosen.len();
        if i == edges.len() {
            return (0..i).all(|a| {
                (a + 1..i).all(|b| {
                    let (e, f) = (edges[a], edges[b]);
                    let share = e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1;
                    !share || chosen[a] != chosen[b]
                })
            });
        }
        for &c in &lists[i] {
            chosen.push(c);
            if go(edges, lists, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(edges, lists, &mut Vec::new())
}

/// Orbits of list assignments with the given sizes over `cap` colors under
/// color permutations, counted by listing every assignment and keeping the
/// least relabeling of each.
pub fn brute_force_orbits(sizes: &[usize], cap: usize) -> usize {
    let subsets = |k: usize| -> Vec<u32> { (0u32..1 << cap).filter(|s| s.count_ones() as usize == k).collect() };
    let choices: Vec<Vec<u32>> = sizes.iter().map(|&k| subsets(k)).collect();
    let mut perms = Vec::new();
    let mut p: Vec<usize> = (0..cap).collect();
    loop {
        perms.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    let apply = |perm: &[usize], s: u32| (0..cap).filter(|&c| s >> c & 1 == 1).fold(0u32, |acc, c| acc | 1 << perm[c]);
    let mut reps = BTreeSet::new();
    let mut idx = vec![0usize; sizes.len()];
    if choices.iter().any(Vec::is_empty) {
        return 0;
    }
    loop {
        let lists: Vec<u32> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        let rep = perms
            .iter()
            .map(|perm| lists.iter().map(|&s| apply(perm, s)).collect::<Vec<u32>>())
            .min()
            .unwrap();
        reps.insert(rep);
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return reps.len();
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
