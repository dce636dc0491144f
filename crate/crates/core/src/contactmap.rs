//! Contact maps of self-avoiding walks on the square lattice, and their
//! decomposition into at most two stacks and one queue.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{is_queue, is_stack, Arc, Diagram, DiagramError};

/// Bounds a fold on other lattices puts on its contact map, kept as
/// documentation of where the regularity and degree parameters come from:
/// (minimum arc length, maximum contacts per interior vertex).
pub const SQUARE_LATTICE: (usize, u32) = (3, 2);
pub const TRIANGULAR_LATTICE: (usize, u32) = (2, 4);
pub const HEXAGONAL_LATTICE: (usize, u32) = (5, 1);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContactError {
    #[error("unknown move {0:?} at position {1}; expected U, D, L or R")]
    BadMove(char, usize),
    #[error("the walk revisits a lattice point at step {0}")]
    NotSelfAvoiding(usize),
    #[error("arc {0}-{1} is not in the diagram or appears in two parts")]
    NotAPartition(usize, usize),
    #[error("{0} arcs of the diagram are missing from the parts")]
    Missing(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    U,
    D,
    L,
    R,
}

impl Move {
    fn delta(self) -> (i64, i64) {
        match self {
            Move::U => (0, 1),
            Move::D => (0, -1),
            Move::L => (-1, 0),
            Move::R => (1, 0),
        }
    }

    fn letter(self) -> char {
        match self {
            Move::U => 'U',
            Move::D => 'D',
            Move::L => 'L',
            Move::R => 'R',
        }
    }
}

/// A self-avoiding walk: `moves.len() + 1` vertices starting at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeWalk {
    moves: Vec<Move>,
    coords: Vec<(i64, i64)>,
}

impl LatticeWalk {
    pub fn new(moves: Vec<Move>) -> Result<Self, ContactError> {
        let mut coords = vec![(0, 0)];
        let mut seen: HashMap<(i64, i64), usize> = HashMap::from([((0, 0), 0)]);
        for (k, mv) in moves.iter().enumerate() {
            let (x, y) = coords[k];
            let (dx, dy) = mv.delta();
            let next = (x + dx, y + dy);
            if seen.insert(next, k + 1).is_some() {
                return Err(ContactError::NotSelfAvoiding(k + 1));
            }
            coords.push(next);
        }
        Ok(LatticeWalk { moves, coords })
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    /// Coordinates of vertices `1..=n`, at index `v - 1`.
    pub fn coords(&self) -> &[(i64, i64)] {
        &self.coords
    }
}

impl FromStr for LatticeWalk {
    type Err = ContactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let moves = s
            .trim()
            .chars()
            .enumerate()
            .map(|(k, c)| match c.to_ascii_uppercase() {
                'U' => Ok(Move::U),
                'D' => Ok(Move::D),
                'L' => Ok(Move::L),
                'R' => Ok(Move::R),
                _ => Err(ContactError::BadMove(c, k + 1)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        LatticeWalk::new(moves)
    }
}

impl fmt::Display for LatticeWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.moves.iter().try_for_each(|m| write!(f, "{}", m.letter()))
    }
}

/// Arcs between lattice neighbours that are not consecutive on the chain.
pub fn contacts(w: &LatticeWalk) -> Diagram {
    let index: HashMap<(i64, i64), usize> = w.coords.iter().enumerate().map(|(k, &c)| (c, k + 1)).collect();
    let mut arcs = Vec::new();
    for (k, &(x, y)) in w.coords.iter().enumerate() {
        let i = k + 1;
        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            if let Some(&j) = index.get(&(x + dx, y + dy)) {
                if j > i + 1 {
                    arcs.push((i, j));
                }
            }
        }
    }
    let d = Diagram::new(w.n(), arcs).expect("contacts are valid arcs");
    let p = d.degrees();
    debug_assert!((1..=d.n()).all(|v| p.deg(v) <= if v == 1 || v == d.n() { 3 } else { SQUARE_LATTICE.1 }));
    d
}

/// Whether a part is meant as a stack or as a queue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PartKind {
    Stack,
    Queue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Part {
    pub kind: PartKind,
    pub arcs: Vec<Arc>,
}

impl Part {
    pub fn stack(arcs: Vec<Arc>) -> Part {
        Part { kind: PartKind::Stack, arcs }
    }

    pub fn queue(arcs: Vec<Arc>) -> Part {
        Part { kind: PartKind::Queue, arcs }
    }
}

fn check_partition(d: &Diagram, parts: &[Part]) -> Result<(), ContactError> {
    let mut left: std::collections::HashSet<Arc> = d.arcs().iter().copied().collect();
    for &(i, j) in parts.iter().flat_map(|p| &p.arcs) {
        if !left.remove(&(i, j)) {
            return Err(ContactError::NotAPartition(i, j));
        }
    }
    if !left.is_empty() {
        return Err(ContactError::Missing(left.len()));
    }
    Ok(())
}

/// True iff there are at most two stack parts and at most one queue part,
/// and each part passes its predicate as a diagram on the same vertices.
pub fn verify_decomposition(d: &Diagram, parts: &[Part]) -> Result<bool, ContactError> {
    check_partition(d, parts)?;
    let count = |k: PartKind| parts.iter().filter(|p| p.kind == k).count();
    if count(PartKind::Stack) > 2 || count(PartKind::Queue) > 1 {
        return Ok(false);
    }
    for p in parts {
        let sub = Diagram::new(d.n(), p.arcs.iter().copied())?;
        let ok = match p.kind {
            PartKind::Stack => is_stack(&sub),
            PartKind::Queue => is_queue(&sub),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn crosses(a: Arc, b: Arc) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

fn nests(a: Arc, b: Arc) -> bool {
    (a.0 < b.0 && b.1 < a.1) || (b.0 < a.0 && a.1 < b.1)
}

/// Search budget, in assignment attempts, for `decompose_heuristic`.
pub const SEARCH_BUDGET: usize = 1_000_000;

/// Tries to split the arcs into two stacks and a queue by depth-first
/// search over arcs in left-endpoint order, with stacks tried before the
/// queue. Returns `None` when no split exists or the budget runs out.
pub fn decompose_heuristic(d: &Diagram) -> Option<Vec<Part>> {
    let arcs = d.arcs().to_vec();
    let mut colour = vec![usize::MAX; arcs.len()];
    let mut budget = SEARCH_BUDGET;
    fn fits(arcs: &[Arc], colour: &[usize], k: usize, c: usize) -> bool {
        (0..k).filter(|&l| colour[l] == c).all(|l| {
            if c == 2 {
                !nests(arcs[l], arcs[k])
            } else {
                !crosses(arcs[l], arcs[k])
            }
        })
    }
    fn search(arcs: &[Arc], colour: &mut [usize], k: usize, budget: &mut usize) -> bool {
        if k == arcs.len() {
            return true;
        }
        // The two stacks are interchangeable: open the second only after
        // the first is in use.
        let stack_limit = if colour[..k].contains(&0) { 2 } else { 1 };
        for c in (0..stack_limit).chain(std::iter::once(2)) {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            if fits(arcs, colour, k, c) {
                colour[k] = c;
                if search(arcs, colour, k + 1, budget) {
                    return true;
                }
                colour[k] = usize::MAX;
            }
        }
        false
    }
    if !search(&arcs, &mut colour, 0, &mut budget) {
        return None;
    }
    let mut parts = vec![Part::stack(Vec::new()), Part::stack(Vec::new()), Part::queue(Vec::new())];
    for (a, c) in arcs.iter().zip(colour) {
        parts[c].arcs.push(*a);
    }
    parts.retain(|p| !p.arcs.is_empty());
    Some(parts)
}

/// A walk whose contact map is the fifteen-arc example used throughout
/// the tests.
pub const EXAMPLE_WALK: &str = "RRRUUUULLLLDRRRDLLLDRRR";

#[cfg(test)]
mod tests {
    use super::*;

    fn dg(n: usize, arcs: &[Arc]) -> Diagram {
        Diagram::new(n, arcs.iter().copied()).unwrap()
    }

    fn example_parts() -> Vec<Part> {
        vec![
            Part::stack(vec![(6, 17), (7, 16), (9, 16), (10, 15), (11, 14), (17, 24), (18, 23), (19, 22)]),
            Part::stack(vec![(13, 20), (14, 19), (15, 18)]),
            Part::queue(vec![(1, 22), (2, 23), (3, 24), (5, 24)]),
        ]
    }

    fn all_arcs(parts: &[Part]) -> Vec<Arc> {
        parts.iter().flat_map(|p| p.arcs.iter().copied()).collect()
    }

    #[test]
    fn small_walks() {
        let w: LatticeWalk = "RRRR".parse().unwrap();
        assert_eq!(contacts(&w), Diagram::empty(5));
        let w: LatticeWalk = "RUL".parse().unwrap();
        assert_eq!(w.coords(), &[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(contacts(&w), dg(4, &[(1, 4)]));
        assert_eq!("RUX".parse::<LatticeWalk>(), Err(ContactError::BadMove('X', 3)));
        assert_eq!("RULD".parse::<LatticeWalk>(), Err(ContactError::NotSelfAvoiding(4)));
    }

    #[test]
    fn example_walk_gives_the_printed_arcs() {
        let w: LatticeWalk = EXAMPLE_WALK.parse().unwrap();
        let d = contacts(&w);
        let mut want = all_arcs(&example_parts());
        want.sort_unstable();
        assert_eq!(d.n(), 24);
        assert_eq!(d.arcs(), &want[..]);
    }

    #[test]
    fn printed_decomposition_verifies() {
        let d = dg(24, &all_arcs(&example_parts()));
        assert!(verify_decomposition(&d, &example_parts()).unwrap());
        let parts = decompose_heuristic(&d).unwrap();
        assert!(verify_decomposition(&d, &parts).unwrap());
    }

    #[test]
    fn trivial_cases() {
        let d = dg(3, &[(1, 3)]);
        assert!(verify_decomposition(&d, &[Part::stack(vec![(1, 3)])]).unwrap());
        let d = dg(4, &[(1, 3), (2, 4)]);
        assert!(!verify_decomposition(&d, &[Part::stack(vec![(1, 3), (2, 4)])]).unwrap());
        assert!(verify_decomposition(&d, &[Part::queue(vec![(1, 3), (2, 4)])]).unwrap());
        assert!(verify_decomposition(&d, &[Part::stack(vec![(1, 3)]), Part::stack(vec![(2, 4)])]).unwrap());
        let too_many = [Part::queue(vec![(1, 3)]), Part::queue(vec![(2, 4)])];
        assert!(!verify_decomposition(&d, &too_many).unwrap());
        assert_eq!(verify_decomposition(&d, &[Part::stack(vec![(1, 3)])]), Err(ContactError::Missing(1)));
        let doubled = [Part::stack(vec![(1, 3), (1, 3)]), Part::stack(vec![(2, 4)])];
        assert_eq!(verify_decomposition(&d, &doubled), Err(ContactError::NotAPartition(1, 3)));
        let parts = decompose_heuristic(&d).unwrap();
        assert!(verify_decomposition(&d, &parts).unwrap());
    }

    #[test]
    fn impossible_split_reported() {
        // Two families of five mutually crossing arcs, one nested inside the
        // other. Each family puts at most two arcs in the stacks, so the
        // queue would hold nested arcs.
        let mut arcs: Vec<Arc> = (1..=5).map(|i| (i, i + 30)).collect();
        arcs.extend((1..=5).map(|i| (10 + i, 15 + i)));
        let d = dg(35, &arcs);
        assert_eq!(decompose_heuristic(&d), None);
    }
}
