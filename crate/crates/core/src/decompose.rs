//! Primary-component decomposition of zigzag stacks.
//!
//! The component of vertex 1 cuts `[n]` into intervals: one between each
//! pair of consecutive component vertices and one after the last. Since the
//! diagram is noncrossing no arc joins two intervals, so the rest of the
//! diagram splits into independent zigzag stacks, one per interval.

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{components, is_m_reduced, is_zigzag, Arc, Diagram, DiagramError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("the diagram is not a zigzag stack")]
    NotZigzag,
    #[error("arc {0}-{1} joins two different intervals")]
    CrossIntervalArc(usize, usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// The vertices strictly between component vertex `left` and `right`, or
/// after `left` when `right` is `None`. Empty when `lo > hi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
    pub left: usize,
    pub right: Option<usize>,
}

impl Interval {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.hi + 1 - self.lo
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// The closed range from the left component vertex to the right one (or
    /// to `n` for the trailing interval).
    pub fn jset(&self, n: usize) -> (usize, usize) {
        (self.left, self.right.unwrap_or(n))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub n: usize,
    /// Vertices of the component of vertex 1, in increasing order.
    pub component: Vec<usize>,
    pub component_arcs: Vec<Arc>,
    /// Left degree of each component vertex and right degree, in `S`.
    ld: Vec<u32>,
    rd: Vec<u32>,
    /// One interval per component vertex; the last may be empty.
    k_intervals: Vec<Interval>,
}

impl Decomposition {
    /// Intervals without an empty trailing one.
    pub fn intervals(&self) -> Vec<Interval> {
        let mut out = self.k_intervals.clone();
        if out.last().is_some_and(|iv| iv.right.is_none() && iv.is_empty()) {
            out.pop();
        }
        out
    }

    /// All `k` intervals for a component on `k` vertices, keeping an empty
    /// trailing interval when the component contains `n`.
    pub fn k_intervals(&self) -> &[Interval] {
        &self.k_intervals
    }

    /// The closed ranges `J_t` matching `intervals()`.
    pub fn jsets(&self) -> Vec<(usize, usize)> {
        self.intervals().iter().map(|iv| iv.jset(self.n)).collect()
    }

    fn degrees_of(&self, v: usize) -> (u32, u32) {
        let k = self.component.binary_search(&v).expect("component vertex");
        (self.ld[k], self.rd[k])
    }

    /// Boundary pair of an interval: left degree of its left component
    /// vertex, right degree of its right one (zero when right-open).
    pub fn boundary(&self, iv: &Interval) -> (u8, u8) {
        let l = self.degrees_of(iv.left).0;
        let r = iv.right.map_or(0, |v| self.degrees_of(v).1);
        (l as u8, r as u8)
    }
}

/// Extracts the component of vertex 1 and its intervals.
pub fn primary_component(s: &Diagram) -> Result<Decomposition, DecomposeError> {
    if !is_zigzag(s) {
        return Err(DecomposeError::NotZigzag);
    }
    let n = s.n();
    let p = s.degrees();
    let component = if n == 0 { Vec::new() } else { components(s).into_iter().next().unwrap_or_default() };
    let component_arcs: Vec<Arc> =
        s.arcs().iter().copied().filter(|(i, _)| component.binary_search(i).is_ok()).collect();
    let mut k_intervals = Vec::with_capacity(component.len());
    for (t, &u) in component.iter().enumerate() {
        let right = component.get(t + 1).copied();
        let hi = right.map_or(n, |v| v - 1);
        k_intervals.push(Interval { lo: u + 1, hi, left: u, right });
    }
    for &(i, j) in s.arcs() {
        if component.binary_search(&i).is_ok() {
            continue;
        }
        let iv = k_intervals.iter().find(|iv| iv.contains(i)).expect("every vertex is covered");
        if !iv.contains(j) {
            return Err(DecomposeError::CrossIntervalArc(i, j));
        }
    }
    let ld = component.iter().map(|&v| p.ld[v]).collect();
    let rd = component.iter().map(|&v| p.rd[v]).collect();
    Ok(Decomposition { n, component, component_arcs, ld, rd, k_intervals })
}

/// Interval types by boundary pair, up to reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum IntervalType {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
}

impl IntervalType {
    pub fn from_boundary(pair: (u8, u8)) -> Option<IntervalType> {
        let (a, b) = (pair.0.max(pair.1), pair.0.min(pair.1));
        Some(match (a, b) {
            (0, 0) => IntervalType::T1,
            (1, 0) => IntervalType::T2,
            (1, 1) => IntervalType::T3,
            (2, 0) => IntervalType::T4,
            (2, 1) => IntervalType::T5,
            (2, 2) => IntervalType::T6,
            _ => return None,
        })
    }

    pub fn index(self) -> u8 {
        self as u8 + 1
    }
}

/// Type of each of the `k` intervals, the possibly empty trailing one
/// included.
pub fn classify_intervals(dec: &Decomposition) -> Vec<IntervalType> {
    dec.k_intervals
        .iter()
        .map(|iv| IntervalType::from_boundary(dec.boundary(iv)).expect("zigzag degrees are at most two"))
        .collect()
}

/// Both reduction conditions on the closed range `lo..=hi`, with the
/// degrees of the whole diagram.
fn conditions_hold_on(ld: &[u32], rd: &[u32], lo: usize, hi: usize, m: usize) -> bool {
    for i in lo..=hi {
        let k = i + m - 1;
        if k <= hi && ld[i] + rd[k] > 2 {
            return false;
        }
    }
    for i in lo..=hi {
        if ld[i] == 0 {
            continue;
        }
        for j in i + 1..=hi.min(i + m - 2) {
            if rd[j] > 0 {
                return false;
            }
        }
    }
    true
}

/// m-reducedness checked only inside each `J_t`. For zigzag stacks this
/// agrees with the global check.
pub fn verify_localization(s: &Diagram, m: usize) -> Result<bool, DecomposeError> {
    if m < 2 {
        return Err(DiagramError::BadM(m).into());
    }
    let dec = primary_component(s)?;
    let p = s.degrees();
    Ok(dec.jsets().iter().all(|&(lo, hi)| conditions_hold_on(&p.ld, &p.rd, lo, hi, m)))
}

/// Arcs of the component and of every interval substructure; equal to the
/// arcs of the decomposed diagram.
pub fn recompose(s: &Diagram, dec: &Decomposition) -> Vec<Arc> {
    let mut arcs = dec.component_arcs.clone();
    for iv in dec.intervals() {
        if iv.is_empty() {
            continue;
        }
        let sub = s.restrict(iv.lo, iv.hi);
        arcs.extend(sub.arcs().iter().map(|&(i, j)| (i + iv.lo - 1, j + iv.lo - 1)));
    }
    arcs.sort_unstable();
    arcs
}

/// The substructure on an interval, relabelled to start at 1.
pub fn substructure(s: &Diagram, iv: &Interval) -> Diagram {
    if iv.is_empty() {
        Diagram::empty(0)
    } else {
        s.restrict(iv.lo, iv.hi)
    }
}

/// Agreement of the localized check with the global one, for tests and
/// the verification suite.
pub fn localization_agrees(s: &Diagram, m: usize) -> Result<bool, DecomposeError> {
    Ok(verify_localization(s, m)? == is_m_reduced(s, m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use IntervalType::*;

    fn dg(n: usize, arcs: &[Arc]) -> Diagram {
        Diagram::new(n, arcs.iter().copied()).unwrap()
    }

    fn printed_example() -> Diagram {
        dg(17, &[(1, 7), (1, 13), (9, 13), (2, 3), (5, 6), (10, 11), (10, 12), (16, 17)])
    }

    #[test]
    fn printed_decomposition() {
        let s = printed_example();
        let dec = primary_component(&s).unwrap();
        assert_eq!(dec.component, vec![1, 7, 9, 13]);
        let ranges: Vec<(usize, usize)> = dec.intervals().iter().map(|iv| (iv.lo, iv.hi)).collect();
        assert_eq!(ranges, vec![(2, 6), (8, 8), (10, 12), (14, 17)]);
        assert_eq!(dec.jsets(), vec![(1, 7), (7, 9), (9, 13), (13, 17)]);
        assert_eq!(recompose(&s, &dec), s.arcs().to_vec());
    }

    #[test]
    fn isolated_first_vertex_and_single_arc() {
        let s = dg(5, &[(2, 4)]);
        let dec = primary_component(&s).unwrap();
        assert_eq!(dec.component, vec![1]);
        assert!(dec.component_arcs.is_empty());
        let ivs = dec.intervals();
        assert_eq!((ivs.len(), ivs[0].lo, ivs[0].hi), (1, 2, 5));
        assert_eq!(classify_intervals(&dec), vec![T1]);

        let s = dg(6, &[(1, 6)]);
        let dec = primary_component(&s).unwrap();
        assert_eq!(dec.component, vec![1, 6]);
        let ivs = dec.intervals();
        assert_eq!((ivs.len(), ivs[0].lo, ivs[0].hi), (1, 2, 5));
        // The k-interval view keeps the empty trailing interval.
        assert_eq!(classify_intervals(&dec), vec![T1, T2]);
    }

    #[test]
    fn empty_diagram() {
        let dec = primary_component(&Diagram::empty(0)).unwrap();
        assert!(dec.component.is_empty() && dec.intervals().is_empty());
        assert!(verify_localization(&Diagram::empty(0), 3).unwrap());
    }

    #[test]
    fn printed_counterexample_on_seven_vertices() {
        let s = dg(7, &[(1, 3), (2, 3), (4, 6), (1, 7)]);
        assert!(!is_m_reduced(&s, 3).unwrap());
        assert!(!verify_localization(&s, 3).unwrap());
        let dec = primary_component(&s).unwrap();
        assert_eq!(dec.component, vec![1, 2, 3, 7]);
        let middle = dec.intervals().into_iter().find(|iv| !iv.is_empty()).unwrap();
        assert_eq!((middle.lo, middle.hi), (4, 6));
        let sub = substructure(&s, &middle);
        assert!(is_m_reduced(&sub, 3).unwrap());
    }

    #[test]
    fn non_zigzag_rejected() {
        assert_eq!(primary_component(&dg(4, &[(1, 2), (2, 3)])), Err(DecomposeError::NotZigzag));
    }
}
