//! Exhaustive structural checks of the primary-component decomposition on
//! every zigzag stack with at most ten vertices.

use std::collections::BTreeSet;

use stacklab::decompose::{
    classify_intervals, localization_agrees, primary_component, recompose, substructure, IntervalType,
};
use stacklab::diagram::{check_with_boundary, is_m_reduced, is_zigzag, Diagram};
use stacklab::enumerate::{visit_class, DiagramClass, EnumerationConfig};

fn for_each_zigzag(n_max: usize, mut f: impl FnMut(&Diagram)) {
    let config = EnumerationConfig::default();
    for n in 0..=n_max {
        visit_class(n, &DiagramClass::zigzag(), &config, |d| f(&d)).unwrap();
    }
}

/// True when the arcs on `vertices` form a single path.
fn is_path(vertices: &[usize], arcs: &[(usize, usize)]) -> bool {
    if vertices.is_empty() {
        return arcs.is_empty();
    }
    if arcs.len() + 1 != vertices.len() {
        return false;
    }
    let mut degree = std::collections::HashMap::new();
    for &(i, j) in arcs {
        *degree.entry(i).or_insert(0) += 1;
        *degree.entry(j).or_insert(0) += 1;
    }
    if degree.values().any(|&d| d > 2) {
        return false;
    }
    // A forest with |V| - 1 edges is connected iff it has no cycle; walk
    // from the first vertex and count what is reached.
    let mut seen = BTreeSet::from([vertices[0]]);
    let mut stack = vec![vertices[0]];
    while let Some(v) = stack.pop() {
        for &(i, j) in arcs {
            for (a, b) in [(i, j), (j, i)] {
                if a == v && seen.insert(b) {
                    stack.push(b);
                }
            }
        }
    }
    seen.len() == vertices.len()
}

#[test]
fn component_is_a_path_through_vertex_one() {
    for_each_zigzag(10, |d| {
        let dec = primary_component(d).unwrap();
        if d.n() > 0 {
            assert_eq!(dec.component[0], 1, "{d}");
        }
        assert!(dec.component.windows(2).all(|w| w[0] < w[1]));
        assert!(is_path(&dec.component, &dec.component_arcs), "{d}");
    });
}

#[test]
fn intervals_partition_the_rest_and_hold_every_other_arc() {
    for_each_zigzag(10, |d| {
        let dec = primary_component(d).unwrap();
        let k = dec.k_intervals();
        assert_eq!(k.len(), dec.component.len());
        let covered: usize = k.iter().map(|iv| iv.len()).sum();
        assert_eq!(covered + dec.component.len(), d.n(), "{d}");
        for &(i, j) in d.arcs() {
            if dec.component.contains(&i) {
                continue;
            }
            assert!(!dec.component.iter().any(|&c| i < c && c < j), "arc {i}-{j} spans a component vertex in {d}");
        }
        assert_eq!(recompose(d, &dec), d.arcs().to_vec());
        for iv in dec.intervals() {
            assert!(is_zigzag(&substructure(d, &iv)));
        }
        // The public list drops only an empty trailing interval.
        let public = dec.intervals();
        assert!(public.len() == k.len() || (public.len() + 1 == k.len() && k.last().unwrap().is_empty()));
        assert_eq!(dec.jsets().len(), public.len());
    });
}

#[test]
fn types_follow_boundary_degrees() {
    for_each_zigzag(9, |d| {
        let dec = primary_component(d).unwrap();
        let p = d.degrees();
        for (iv, t) in dec.k_intervals().iter().zip(classify_intervals(&dec)) {
            let left = p.ld[iv.left] as u8;
            let right = iv.right.map_or(0, |v| p.rd[v] as u8);
            assert_eq!(IntervalType::from_boundary((left, right)), Some(t));
        }
    });
}

#[test]
fn reduced_stacks_have_reduced_substructures() {
    for m in 2..=4 {
        for_each_zigzag(10, |d| {
            assert!(localization_agrees(d, m).unwrap(), "m = {m}: {d}");
            if !is_m_reduced(d, m).unwrap() {
                return;
            }
            let dec = primary_component(d).unwrap();
            for iv in dec.intervals() {
                let (l, r) = dec.boundary(&iv);
                let sub = substructure(d, &iv);
                assert!(check_with_boundary(&sub, m, l, r).unwrap(), "m = {m}: {d} at {}..{}", iv.lo, iv.hi);
            }
        });
    }
}
