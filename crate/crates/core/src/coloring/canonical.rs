//! One list assignment per orbit under renaming of colors.
//!
//! Lists are chosen edge by edge. After the first `d` lists are fixed, colors
//! with identical membership in those lists form a cell, and any two colors of
//! a cell are interchangeable. The next list is therefore determined, up to
//! renaming, by how many colors it takes from each cell; taking the smallest
//! colors of each cell gives the representative.

use crate::drawing::Edge;

use super::{ColoringError, ListAssignment};

/// Streaming enumerator over canonical assignments, as color masks.
#[derive(Clone, Debug)]
pub struct CanonicalCursor {
    sizes: Vec<usize>,
    /// `cells[d]`: the cells before list `d` is chosen.
    cells: Vec<Vec<u64>>,
    /// `counts[d][i]`: colors list `d` takes from `cells[d][i]`.
    counts: Vec<Vec<usize>>,
    lists: Vec<u64>,
    started: bool,
    done: bool,
    skip_below: Option<usize>,
}

impl CanonicalCursor {
    pub fn new(sizes: &[usize], cap: usize) -> Result<Self, ColoringError> {
        let needed = sizes.iter().copied().max().unwrap_or(0);
        if sizes.contains(&0) {
            return Err(ColoringError::InvalidRequest("list sizes must be positive".into()));
        }
        if cap < needed {
            return Err(ColoringError::CapTooSmall { cap, needed });
        }
        if cap > 64 {
            return Err(ColoringError::InvalidRequest("palette cap above 64".into()));
        }
        let m = sizes.len();
        let full = if cap == 64 { u64::MAX } else { (1u64 << cap) - 1 };
        let mut cursor = CanonicalCursor {
            sizes: sizes.to_vec(),
            cells: vec![Vec::new(); m + 1],
            counts: vec![Vec::new(); m],
            lists: vec![0; m],
            started: false,
            done: false,
            skip_below: None,
        };
        cursor.cells[0] = if cap == 0 { Vec::new() } else { vec![full] };
        Ok(cursor)
    }

    pub fn lists(&self) -> &[u64] {
        &self.lists
    }

    /// Moves to the next assignment. Returns the first position whose list
    /// changed, or `None` once the enumeration is exhausted.
    pub fn advance(&mut self) -> Option<usize> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill(0);
            if self.sizes.is_empty() {
                self.done = true;
            }
            return Some(0);
        }
        let mut d = match self.skip_below.take() {
            Some(p) => p + 1,
            None => self.sizes.len(),
        };
        loop {
            if d == 0 {
                self.done = true;
                return None;
            }
            d -= 1;
            if next_counts(&mut self.counts[d], &self.cells[d]) {
                self.apply(d);
                break;
            }
        }
        self.fill(d + 1);
        Some(d)
    }

    /// Skips the remaining assignments that agree with the current one on
    /// positions `0..=d`.
    pub fn skip_subtree(&mut self, d: usize) {
        self.skip_below = Some(d.min(self.sizes.len().saturating_sub(1)));
    }

    fn fill(&mut self, from: usize) {
        for d in from..self.sizes.len() {
            first_counts(&mut self.counts[d], &self.cells[d], self.sizes[d]);
            self.apply(d);
        }
    }

    fn apply(&mut self, d: usize) {
        let mut list = 0u64;
        for (cell, &t) in self.cells[d].iter().zip(&self.counts[d]) {
            list |= lowest_bits(*cell, t);
        }
        self.lists[d] = list;
        let mut next = std::mem::take(&mut self.cells[d + 1]);
        next.clear();
        for &cell in &self.cells[d] {
            let inside = cell & list;
            let outside = cell & !list;
            if inside != 0 {
                next.push(inside);
            }
            if outside != 0 {
                next.push(outside);
            }
        }
        self.cells[d + 1] = next;
    }
}

fn lowest_bits(mut mask: u64, t: usize) -> u64 {
    let mut out = 0;
    for _ in 0..t {
        let low = mask & mask.wrapping_neg();
        out |= low;
        mask &= !low;
    }
    out
}

/// Greedy fill from the left: the lexicographically largest count vector.
fn first_counts(t: &mut Vec<usize>, cells: &[u64], k: usize) {
    t.clear();
    let mut rem = k;
    for c in cells {
        let x = (c.count_ones() as usize).min(rem);
        rem -= x;
        t.push(x);
    }
}

/// Steps to the next count vector in decreasing lexicographic order.
fn next_counts(t: &mut [usize], cells: &[u64]) -> bool {
    let r = t.len();
    let mut suffix = 0;
    let mut room = 0;
    for i in (0..r).rev() {
        if t[i] > 0 && room > suffix {
            t[i] -= 1;
            let mut rem = suffix + 1;
            for j in i + 1..r {
                t[j] = (cells[j].count_ones() as usize).min(rem);
                rem -= t[j];
            }
            return true;
        }
        suffix += t[i];
        room += cells[i].count_ones() as usize;
    }
    false
}

/// Every assignment of lists with the given sizes over colors `0..cap`, one
/// per orbit under color renaming, in a fixed order.
pub fn canonical_list_assignments(
    edges: &[(Edge, usize)],
    cap: usize,
) -> Result<impl Iterator<Item = ListAssignment>, ColoringError> {
    let sizes: Vec<usize> = edges.iter().map(|p| p.1).collect();
    let edge_ids: Vec<Edge> = edges.iter().map(|p| p.0).collect();
    let mut cursor = CanonicalCursor::new(&sizes, cap)?;
    Ok(std::iter::from_fn(move || {
        cursor.advance()?;
        Some(ListAssignment::from_masks(&edge_ids, cursor.lists()))
    }))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn count(sizes: &[usize], cap: usize) -> usize {
        let mut c = CanonicalCursor::new(sizes, cap).unwrap();
        let mut n = 0;
        while c.advance().is_some() {
            n += 1;
        }
        n
    }

    fn edges(sizes: &[usize]) -> Vec<(Edge, usize)> {
        sizes.iter().enumerate().map(|(i, &k)| (Edge::new(2 * i, 2 * i + 1), k)).collect()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(&[2], 4), 1);
        assert_eq!(count(&[2, 2], 4), 3);
        assert_eq!(count(&[1, 1], 2), 2);
        assert_eq!(count(&[], 3), 1);
    }

    #[test]
    fn first_list_is_prefix_of_palette() {
        let all: Vec<ListAssignment> = canonical_list_assignments(&edges(&[2, 2]), 4)
            .unwrap()
            .collect();
        assert_eq!(all.len(), 3);
        for a in &all {
            assert_eq!(a.get(Edge::new(0, 1)), Some(&[0, 1][..]));
        }
        let seconds: BTreeSet<Vec<u32>> =
            all.iter().map(|a| a.get(Edge::new(2, 3)).unwrap().to_vec()).collect();
        let expected: BTreeSet<Vec<u32>> = [vec![0, 1], vec![0, 2], vec![2, 3]].into_iter().collect();
        assert_eq!(seconds, expected);
    }

    #[test]
    fn cap_too_small() {
        assert!(matches!(
            canonical_list_assignments(&edges(&[3]), 2),
            Err(ColoringError::CapTooSmall { cap: 2, needed: 3 })
        ));
    }

    #[test]
    fn changed_position_is_reported() {
        let mut c = CanonicalCursor::new(&[1, 1, 1], 3).unwrap();
        assert_eq!(c.advance(), Some(0));
        let mut prev = c.lists().to_vec();
        while let Some(d) = c.advance() {
            assert_eq!(&c.lists()[..d], &prev[..d]);
            assert_ne!(c.lists()[d], prev[d]);
            prev = c.lists().to_vec();
        }
    }

    #[test]
    fn skipping_matches_filtering() {
        let sizes = [2, 1, 2, 2];
        let mut plain = CanonicalCursor::new(&sizes, 5).unwrap();
        let mut kept = Vec::new();
        while plain.advance().is_some() {
            let l = plain.lists();
            if l[0] & l[1] == 0 {
                kept.push(l.to_vec());
            }
        }
        let mut fast = CanonicalCursor::new(&sizes, 5).unwrap();
        let mut seen = Vec::new();
        while let Some(d) = fast.advance() {
            let l = fast.lists();
            if d <= 1 && l[0] & l[1] != 0 {
                fast.skip_subtree(1);
                continue;
            }
            seen.push(l.to_vec());
        }
        assert_eq!(seen, kept);
    }

    #[test]
    fn count_vectors_in_order() {
        let cells = [0b00011, 0b00100, 0b11000];
        let mut t = Vec::new();
        first_counts(&mut t, &cells, 2);
        let mut seen = vec![t.clone()];
        while next_counts(&mut t, &cells) {
            seen.push(t.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
    }
}
