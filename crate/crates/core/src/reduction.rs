//! The bijection between m-regular linear stacks on `n + m - 1` vertices
//! and m-reduced zigzag stacks on `n` vertices: `reduce` shortens every arc
//! `(i, j)` to `(i, j - m + 1)` and drops the last `m - 1` vertices, and
//! `expand` undoes it.

use thiserror::Error;

use crate::diagram::{is_m_reduced, is_stack, Diagram, DiagramError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("a diagram on {n} vertices has no reduction for m = {m}; at least m - 1 vertices are needed")]
    TooFewVertices { n: usize, m: usize },
    #[error("arc {i}-{j} is shorter than m = {m}")]
    ShortArc { i: usize, j: usize, m: usize },
    #[error("the diagram is not a stack")]
    NotStack,
    #[error("vertex {0} has degree greater than two")]
    DegreeTooHigh(usize),
    #[error("the diagram is not an m-reduced zigzag stack for m = {0}")]
    NotReduced(usize),
}

fn check_m(m: usize) -> Result<(), ReductionError> {
    if m < 2 {
        return Err(DiagramError::BadM(m).into());
    }
    Ok(())
}

/// Checks every part of m-regular linearity and names the first failure.
fn validate_regular_linear(s: &Diagram, m: usize) -> Result<(), ReductionError> {
    if let Some(&(i, j)) = s.arcs().iter().find(|&&(i, j)| j - i < m) {
        return Err(ReductionError::ShortArc { i, j, m });
    }
    if !is_stack(s) {
        return Err(ReductionError::NotStack);
    }
    let p = s.degrees();
    if let Some(v) = (1..=s.n()).find(|&v| p.deg(v) > 2) {
        return Err(ReductionError::DegreeTooHigh(v));
    }
    Ok(())
}

/// `theta_m`: from an m-regular linear stack to an m-reduced zigzag stack.
pub fn reduce(s: &Diagram, m: usize) -> Result<Diagram, ReductionError> {
    check_m(m)?;
    if s.n() + 1 < m {
        return Err(ReductionError::TooFewVertices { n: s.n(), m });
    }
    validate_regular_linear(s, m)?;
    let arcs = s.arcs().iter().map(|&(i, j)| (i, j + 1 - m));
    Ok(Diagram::new(s.n() + 1 - m, arcs)?)
}

/// `phi_m`: the inverse of `reduce`.
pub fn expand(t: &Diagram, m: usize) -> Result<Diagram, ReductionError> {
    check_m(m)?;
    if !is_m_reduced(t, m)? {
        return Err(ReductionError::NotReduced(m));
    }
    let arcs = t.arcs().iter().map(|&(i, j)| (i, j + m - 1));
    Ok(Diagram::new(t.n() + m - 1, arcs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Arc;

    fn dg(n: usize, arcs: &[Arc]) -> Diagram {
        Diagram::new(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn printed_examples_round_trip() {
        let s = dg(6, &[(1, 3), (3, 6), (1, 6)]);
        let t = dg(5, &[(1, 2), (3, 5), (1, 5)]);
        assert_eq!(reduce(&s, 2).unwrap(), t);
        assert_eq!(expand(&t, 2).unwrap(), s);
        let s = dg(8, &[(1, 5), (2, 5), (5, 8)]);
        let t = dg(6, &[(1, 3), (2, 3), (5, 6)]);
        assert_eq!(reduce(&s, 3), Err(ReductionError::DegreeTooHigh(5)));
        assert!(expand(&t, 3).is_err());
    }

    #[test]
    fn empty_cases() {
        for m in 2..=6 {
            assert_eq!(reduce(&Diagram::empty(m - 1), m).unwrap(), Diagram::empty(0));
            assert_eq!(expand(&Diagram::empty(0), m).unwrap(), Diagram::empty(m - 1));
        }
        assert_eq!(expand(&Diagram::empty(1), 3).unwrap(), Diagram::empty(3));
    }

    #[test]
    fn violations_named() {
        assert_eq!(reduce(&Diagram::empty(1), 3), Err(ReductionError::TooFewVertices { n: 1, m: 3 }));
        assert_eq!(reduce(&dg(4, &[(1, 2)]), 2), Err(ReductionError::ShortArc { i: 1, j: 2, m: 2 }));
        assert_eq!(reduce(&dg(6, &[(1, 4), (2, 6)]), 3), Err(ReductionError::NotStack));
        assert!(matches!(reduce(&Diagram::empty(3), 1), Err(ReductionError::Diagram(DiagramError::BadM(1)))));
    }
}
