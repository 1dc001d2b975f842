mod common;

use o1p_core::factory::{enumerate_drawings, random_lists, DrawingFilters};
use o1p_core::solver::check_preconditions;
use o1p_core::{builtin_catalog, check_coloring, color_outer1planar, verify_trace, OuterDrawing};

fn proper_and_listed(d: &OuterDrawing, lists: &o1p_core::ListAssignment, c: &o1p_core::EdgeColoring) -> bool {
    let edges = d.edges();
    edges.iter().all(|&e| c.get(e).is_some_and(|x| lists.get(e).unwrap().contains(&x)))
        && edges.iter().enumerate().all(|(i, &e)| {
            edges[i + 1..]
                .iter()
                .all(|&f| !e.is_adjacent(f) || c.get(e) != c.get(f))
        })
}

fn solve_all(n: usize, per_drawing: u64) -> usize {
    let f = DrawingFilters { theta_at_least_three: true, ..Default::default() };
    let catalog = builtin_catalog();
    let mut solved = 0;
    for (i, d) in enumerate_drawings(n, &f).unwrap().iter().enumerate() {
        if d.edge_count() == 0 {
            continue;
        }
        for s in 0..per_drawing {
            let palette = [4, 5, 6, 8][(s % 4) as usize];
            let lists = random_lists(d, 4, palette, s * 7919 + i as u64).unwrap();
            check_preconditions(d, &lists).unwrap();
            let r = color_outer1planar(d, &lists, catalog)
                .unwrap_or_else(|e| panic!("{} failed: {e}", d.to_json()));
            check_coloring(d, Some(&lists), &r.coloring).unwrap();
            assert!(proper_and_listed(d, &lists, &r.coloring));
            verify_trace(d, &lists, catalog, &r).unwrap();
            solved += 1;
        }
    }
    solved
}

#[test]
fn every_small_drawing_is_colored() {
    let mut total = 0;
    for n in 3..=6 {
        total += solve_all(n, 100);
    }
    assert!(total > 0);
}

#[test]
fn every_seven_vertex_drawing_is_colored() {
    assert!(solve_all(7, 10) > 0);
}
