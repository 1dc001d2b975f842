mod common;

use std::collections::BTreeSet;

use common::{naive_occurrences, Pairs};
use o1p_core::builtin_catalog;
use o1p_core::factory::{enumerate_drawings, DrawingFilters};
use o1p_core::matcher::{enumerate_occurrences, find_first_occurrence, validate_occurrence};
use o1p_core::OuterDrawing;

fn hosts() -> Vec<OuterDrawing> {
    let mut out = Vec::new();
    for n in 3..=6 {
        out.extend(enumerate_drawings(n, &DrawingFilters::default()).unwrap());
    }
    let f = DrawingFilters { min_degree_two: true, ..Default::default() };
    out.extend(enumerate_drawings(7, &f).unwrap());
    out
}

#[test]
fn occurrences_match_exhaustive_maps() {
    let catalog = builtin_catalog();
    let configs = catalog.solver_configurations();
    for d in hosts() {
        let mut any = false;
        for spec in &configs {
            let expected = naive_occurrences(&d, spec);
            let found = enumerate_occurrences(&d, catalog, &spec.id).unwrap();
            for occ in &found {
                validate_occurrence(&d, catalog, occ).unwrap();
            }
            let got: BTreeSet<Pairs> = found
                .iter()
                .map(|o| o.removed_edges.iter().map(|e| (e.u(), e.v())).collect())
                .collect();
            assert_eq!(got.len(), found.len());
            assert_eq!(got, expected, "{} in {}", spec.id, d.to_json());
            any |= !expected.is_empty();
        }
        let first = find_first_occurrence(&d, catalog);
        assert_eq!(first.is_some(), any, "{}", d.to_json());
        if let Some(occ) = first {
            validate_occurrence(&d, catalog, &occ).unwrap();
        }
    }
}

#[test]
fn first_occurrence_prefers_injective_maps() {
    let catalog = builtin_catalog();
    for d in hosts() {
        let Some(occ) = find_first_occurrence(&d, catalog) else { continue };
        if occ.identifies_vertices() {
            for spec in catalog.solver_configurations() {
                let injective = enumerate_occurrences(&d, catalog, &spec.id)
                    .unwrap()
                    .iter()
                    .any(|o| !o.identifies_vertices());
                assert!(!injective, "{} maps injectively into {}", spec.id, d.to_json());
            }
        }
    }
}
