//! Bitmask list-coloring search for small graphs (at most 64 edges and colors).
//! Lists are `u64` color masks aligned with the edge order.

use crate::drawing::Edge;

#[derive(Clone, Debug)]
pub struct MaskGraph {
    ends: Vec<(usize, usize)>,
    vertices: usize,
}

impl MaskGraph {
    /// `edges` should be sorted so that ties in the search break towards the
    /// lexicographically smallest edge.
    pub fn new(vertices: usize, edges: &[Edge]) -> Self {
        assert!(edges.len() <= 64, "mask search supports at most 64 edges");
        MaskGraph {
            ends: edges.iter().map(|e| (e.u(), e.v())).collect(),
            vertices,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn ends(&self, e: usize) -> (usize, usize) {
        self.ends[e]
    }

    /// Bit set of edges sharing an endpoint with `e`.
    pub fn adjacency(&self, e: usize) -> u64 {
        let (a, b) = self.ends[e];
        let mut out = 0;
        for (f, &(c, d)) in self.ends.iter().enumerate() {
            if f != e && (c == a || c == b || d == a || d == b) {
                out |= 1 << f;
            }
        }
        out
    }

    /// Colors every edge in `subset` from its list, avoiding colors already
    /// marked in `used` (per vertex). On success `out[e]` holds the color of
    /// each edge in `subset` and `used` is restored.
    pub fn solve_subset(&self, lists: &[u64], used: &mut [u64], subset: u64, out: &mut [u8]) -> bool {
        self.dfs(lists, used, subset, out)
    }

    pub fn colorable(&self, lists: &[u64], out: &mut [u8]) -> bool {
        let mut used = [0u64; 64];
        let all = if self.ends.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.ends.len()) - 1
        };
        self.dfs(lists, &mut used[..self.vertices.max(1)], all, out)
    }

    fn dfs(&self, lists: &[u64], used: &mut [u64], uncolored: u64, out: &mut [u8]) -> bool {
        if uncolored == 0 {
            return true;
        }
        let mut best_e = usize::MAX;
        let mut best_avail = 0u64;
        let mut best_count = u32::MAX;
        let mut rest = uncolored;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (a, b) = self.ends[e];
            let avail = lists[e] & !(used[a] | used[b]);
            let c = avail.count_ones();
            if c < best_count {
                if c == 0 {
                    return false;
                }
                best_count = c;
                best_e = e;
                best_avail = avail;
            }
        }
        let (a, b) = self.ends[best_e];
        let next = uncolored & !(1u64 << best_e);
        let mut avail = best_avail;
        while avail != 0 {
            let c = avail.trailing_zeros();
            avail &= avail - 1;
            let bit = 1u64 << c;
            used[a] |= bit;
            used[b] |= bit;
            let found = self.dfs(lists, used, next, out);
            used[a] &= !bit;
            used[b] &= !bit;
            if found {
                out[best_e] = c as u8;
                return true;
            }
        }
        false
    }

    /// True when `coloring` is proper on this graph and respects `lists`.
    pub fn is_list_coloring(&self, lists: &[u64], coloring: &[u8]) -> bool {
        let mut used = [0u64; 64];
        for (e, &(a, b)) in self.ends.iter().enumerate() {
            let bit = 1u64 << coloring[e];
            if lists[e] & bit == 0 || (used[a] | used[b]) & bit != 0 {
                return false;
            }
            used[a] |= bit;
            used[b] |= bit;
        }
        true
    }

    /// Full product enumeration; the independent oracle for the search.
    pub fn colorable_naive(&self, lists: &[u64]) -> bool {
        let m = self.ends.len();
        let options: Vec<Vec<u8>> = lists
            .iter()
            .map(|&l| super::mask_colors(l).into_iter().map(|c| c as u8).collect())
            .collect();
        if options.iter().any(Vec::is_empty) {
            return false;
        }
        let mut idx = vec![0usize; m];
        let mut coloring: Vec<u8> = options.iter().map(|o| o[0]).collect();
        loop {
            if self.is_list_coloring(lists, &coloring) {
                return true;
            }
            let mut k = 0;
            loop {
                if k == m {
                    return false;
                }
                idx[k] += 1;
                if idx[k] < options[k].len() {
                    coloring[k] = options[k][idx[k]];
                    break;
                }
                idx[k] = 0;
                coloring[k] = options[k][0];
                k += 1;
            }
        }
    }
}
