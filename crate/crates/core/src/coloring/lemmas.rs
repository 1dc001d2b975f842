//! Exhaustive checks of the small extension facts the reductions rely on.

use serde::Serialize;

use crate::drawing::Edge;

use super::{mask_colors, CanonicalCursor, ColoringError, ListAssignment, MaskGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: &'static str,
    pub palette_cap: usize,
    /// Vertex names for the integer vertices in `first_failure`.
    pub vertices: Vec<&'static str>,
    pub assignments_checked: u64,
    pub failures: u64,
    pub first_failure: Option<ListAssignment>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

struct Frame {
    lemma: &'static str,
    vertices: Vec<&'static str>,
    edges: Vec<Edge>,
    sizes: Vec<usize>,
}

impl Frame {
    fn new(lemma: &'static str, vertices: &[&'static str], spec: &[(&str, &str, usize)]) -> Self {
        let idx = |n: &str| vertices.iter().position(|v| *v == n).expect("known vertex");
        let mut pairs: Vec<(Edge, usize)> = spec
            .iter()
            .map(|&(a, b, k)| (Edge::new(idx(a), idx(b)), k))
            .collect();
        pairs.sort();
        Frame {
            lemma,
            vertices: vertices.to_vec(),
            edges: pairs.iter().map(|p| p.0).collect(),
            sizes: pairs.iter().map(|p| p.1).collect(),
        }
    }

    fn edge(&self, a: &str, b: &str) -> usize {
        let idx = |n: &str| self.vertices.iter().position(|v| *v == n).expect("known vertex");
        let e = Edge::new(idx(a), idx(b));
        self.edges.iter().position(|&f| f == e).expect("known edge")
    }

    fn run(
        &self,
        cap: usize,
        mut holds: impl FnMut(&[u64]) -> Option<bool>,
    ) -> Result<LemmaReport, ColoringError> {
        let mut cursor = CanonicalCursor::new(&self.sizes, cap)?;
        let mut checked = 0;
        let mut failures = 0;
        let mut first = None;
        while cursor.advance().is_some() {
            let lists = cursor.lists();
            match holds(lists) {
                None => continue,
                Some(true) => checked += 1,
                Some(false) => {
                    checked += 1;
                    failures += 1;
                    if first.is_none() {
                        first = Some(ListAssignment::from_masks(&self.edges, lists));
                    }
                }
            }
        }
        Ok(LemmaReport {
            lemma: self.lemma,
            palette_cap: cap,
            vertices: self.vertices.clone(),
            assignments_checked: checked,
            failures,
            first_failure: first,
        })
    }
}

fn bit(c: u32) -> u64 {
    1u64 << c
}

/// Triangle s, y, z with |L(sz)| = |L(yz)| = 2 and |L(sy)| = 4. Writing
/// L(yz) = {a, c}, there are distinct b, d in L(sy) minus {a, c} such that the
/// triangle can be completed with (yz, sy) colored (a, b), (c, b) and (c, d).
pub fn verify_triangle_lemma(palette_cap: usize) -> Result<LemmaReport, ColoringError> {
    let f = Frame::new(
        "triangle",
        &["s", "y", "z"],
        &[("s", "z", 2), ("y", "z", 2), ("s", "y", 4)],
    );
    let (sz, yz, sy) = (f.edge("s", "z"), f.edge("y", "z"), f.edge("s", "y"));
    f.run(palette_cap, |l| {
        let completes = |y: u32, s: u32| l[sz] & !(bit(y) | bit(s)) != 0;
        let pair = mask_colors(l[yz]);
        let rest = mask_colors(l[sy] & !l[yz]);
        let found = [(pair[0], pair[1]), (pair[1], pair[0])].iter().any(|&(a, c)| {
            rest.iter().any(|&b| {
                rest.iter().any(|&d| {
                    b != d && completes(a, b) && completes(c, b) && completes(c, d)
                })
            })
        });
        Some(found)
    })
}

/// Edges vy, wx, vx with 2-lists, vy and wx disjoint, and vw with a 4-list.
/// If L(vw) differs from L(vy) ∪ L(wx), or L(vx) is not inside L(vw), then
/// vy, wx, vx can be colored so that vw keeps at least two colors.
pub fn verify_kite_lemma(palette_cap: usize) -> Result<LemmaReport, ColoringError> {
    let f = Frame::new(
        "kite",
        &["v", "w", "x", "y"],
        &[("v", "y", 2), ("w", "x", 2), ("v", "x", 2), ("v", "w", 4)],
    );
    let (vy, wx, vx, vw) = (f.edge("v", "y"), f.edge("w", "x"), f.edge("v", "x"), f.edge("v", "w"));
    f.run(palette_cap, |l| {
        if l[vy] & l[wx] != 0 {
            return None;
        }
        let first = l[vw] != l[vy] | l[wx];
        let second = l[vx] & !l[vw] != 0;
        if !first && !second {
            return None;
        }
        let found = mask_colors(l[vy]).into_iter().any(|a| {
            mask_colors(l[wx]).into_iter().any(|b| {
                mask_colors(l[vx] & !bit(a) & !bit(b))
                    .into_iter()
                    .any(|c| (l[vw] & !(bit(a) | bit(b) | bit(c))).count_ones() >= 2)
            })
        });
        Some(found)
    })
}

/// The part below xy: xx', x'y', y'z, zs with 2-lists and yy', sy' with
/// 4-lists. For every color p there are colorings with c(xx') ≠ c(yy'), with
/// c(xx') ≠ p, and with c(yy') ≠ p.
pub fn verify_below_xy_lemma(palette_cap: usize) -> Result<LemmaReport, ColoringError> {
    let f = Frame::new(
        "below-xy",
        &["x", "y", "x'", "y'", "z", "s"],
        &[
            ("x", "x'", 2),
            ("y", "y'", 4),
            ("x'", "y'", 2),
            ("y'", "z", 2),
            ("z", "s", 2),
            ("s", "y'", 4),
        ],
    );
    let mg = MaskGraph::new(f.vertices.len(), &f.edges);
    let (xx, yy) = (f.edge("x", "x'"), f.edge("y", "y'"));
    let m = f.edges.len();
    f.run(palette_cap, |l| {
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for a in mask_colors(l[xx]) {
            for b in mask_colors(l[yy]) {
                let mut fixed = l.to_vec();
                fixed[xx] = bit(a);
                fixed[yy] = bit(b);
                let mut out = vec![0u8; m];
                if mg.colorable(&fixed, &mut out) {
                    pairs.push((a, b));
                }
            }
        }
        let c1 = pairs.iter().any(|&(a, b)| a != b);
        // one color beyond the palette stands for any color in no list
        let c23 = (0..=palette_cap as u32).all(|p| {
            pairs.iter().any(|&(a, _)| a != p) && pairs.iter().any(|&(_, b)| b != p)
        });
        Some(c1 && c23)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_example_lists() {
        // L(yz) = {1,2}, L(sz) = {1,4}, L(sy) = {1,2,3,5}
        let l = [0b10010u64, 0b00110, 0b101110];
        let f = Frame::new(
            "triangle",
            &["s", "y", "z"],
            &[("s", "z", 2), ("y", "z", 2), ("s", "y", 4)],
        );
        let mut lists = [0u64; 3];
        lists[f.edge("s", "z")] = l[0];
        lists[f.edge("y", "z")] = l[1];
        lists[f.edge("s", "y")] = l[2];
        // a = 2, c = 1, b = 3, d = 5: (2,3), (1,3), (1,5) all leave a color for sz
        let free = |y: u32, s: u32| lists[f.edge("s", "z")] & !(bit(y) | bit(s)) != 0;
        assert!(free(2, 3) && free(1, 3) && free(1, 5));
    }

    #[test]
    fn lemmas_hold_on_small_palettes() {
        assert!(verify_triangle_lemma(6).unwrap().holds());
        assert!(verify_kite_lemma(6).unwrap().holds());
        assert!(verify_below_xy_lemma(5).unwrap().holds());
    }

    #[test]
    fn kite_needs_its_hypothesis() {
        // with L(vw) = L(vy) ∪ L(wx) and L(vx) inside L(vw) the claim can fail
        let f = Frame::new(
            "kite",
            &["v", "w", "x", "y"],
            &[("v", "y", 2), ("w", "x", 2), ("v", "x", 2), ("v", "w", 4)],
        );
        let (vy, wx, vx, vw) =
            (f.edge("v", "y"), f.edge("w", "x"), f.edge("v", "x"), f.edge("v", "w"));
        let mut l = [0u64; 4];
        l[vy] = 0b0011;
        l[wx] = 0b1100;
        l[vx] = 0b0110;
        l[vw] = 0b1111;
        let best = mask_colors(l[vy])
            .into_iter()
            .flat_map(|a| mask_colors(l[wx]).into_iter().map(move |b| (a, b)))
            .flat_map(|(a, b)| {
                mask_colors(l[vx] & !bit(a) & !bit(b))
                    .into_iter()
                    .map(move |c| (l[vw] & !(bit(a) | bit(b) | bit(c))).count_ones())
            })
            .max()
            .unwrap();
        assert_eq!(best, 1);
    }
}
