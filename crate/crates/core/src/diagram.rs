//! Diagrams on a line and the membership predicates for every diagram class.
//!
//! A diagram has vertices `1..=n` laid out left to right and a set of arcs
//! `(i, j)` with `i < j` drawn above the line. Crossings and nestings are
//! strict: two arcs that share an endpoint never cross and never nest.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An arc `(i, j)` with `1 <= i < j <= n`.
pub type Arc = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed diagram text: {0}")]
    Malformed(String),
    #[error("arc {i}-{j} has an endpoint outside 1..={n}")]
    OutOfRange { i: usize, j: usize, n: usize },
    #[error("arc {i}-{j} must satisfy i < j")]
    NotIncreasing { i: usize, j: usize },
    #[error("duplicate arc {i}-{j}")]
    Duplicate { i: usize, j: usize },
    #[error("regularity parameter m = {0} must be at least 2")]
    BadM(usize),
    #[error("boundary degree {0} must be 0, 1 or 2")]
    BadBoundary(u8),
}

/// A vertex count plus a canonical (sorted, duplicate-free) arc list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diagram {
    n: usize,
    arcs: Vec<Arc>,
}

impl Diagram {
    /// The diagram on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Diagram { n, arcs: Vec::new() }
    }

    /// Builds a diagram, validating every arc and canonicalising the order.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self, DiagramError> {
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        for &(i, j) in &arcs {
            if i >= j {
                return Err(DiagramError::NotIncreasing { i, j });
            }
            if i < 1 || j > n {
                return Err(DiagramError::OutOfRange { i, j, n });
            }
        }
        arcs.sort_unstable();
        if let Some(w) = arcs.windows(2).find(|w| w[0] == w[1]) {
            let (i, j) = w[0];
            return Err(DiagramError::Duplicate { i, j });
        }
        Ok(Diagram { n, arcs })
    }

    /// Builds a diagram from arcs already known to be valid and sorted.
    pub(crate) fn from_sorted_unchecked(n: usize, arcs: Vec<Arc>) -> Self {
        debug_assert!(arcs.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(arcs.iter().all(|&(i, j)| 1 <= i && i < j && j <= n));
        Diagram { n, arcs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn contains_arc(&self, arc: Arc) -> bool {
        self.arcs.binary_search(&arc).is_ok()
    }

    pub fn degrees(&self) -> DegreeProfile {
        DegreeProfile::of(self)
    }

    /// Mirror image: vertex `i` becomes `n + 1 - i`.
    pub fn reflect(&self) -> Diagram {
        let n = self.n;
        let mut arcs: Vec<Arc> = self.arcs.iter().map(|&(i, j)| (n + 1 - j, n + 1 - i)).collect();
        arcs.sort_unstable();
        Diagram { n, arcs }
    }

    /// The sub-diagram induced on the consecutive vertices `lo..=hi`,
    /// relabelled to `1..=hi-lo+1`. Arcs leaving the range are dropped.
    pub fn restrict(&self, lo: usize, hi: usize) -> Diagram {
        if hi < lo {
            return Diagram::empty(0);
        }
        let arcs =
            self.arcs.iter().filter(|&&(i, j)| i >= lo && j <= hi).map(|&(i, j)| (i + 1 - lo, j + 1 - lo)).collect();
        Diagram { n: hi + 1 - lo, arcs }
    }

    /// Renders the one-line text format, e.g. `n=7; 1-7 2-5`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};", self.n)?;
        for (i, j) in &self.arcs {
            write!(f, " {i}-{j}")?;
        }
        Ok(())
    }
}

impl FromStr for Diagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_diagram(s)
    }
}

/// Parses `n=<int>;` followed by whitespace-separated `<i>-<j>` arcs.
pub fn parse_diagram(text: &str) -> Result<Diagram, DiagramError> {
    let text = text.trim();
    let malformed = || DiagramError::Malformed(text.to_string());
    let rest = text.strip_prefix("n=").ok_or_else(malformed)?;
    let (head, tail) = rest.split_once(';').ok_or_else(malformed)?;
    let n: usize = head.trim().parse().map_err(|_| malformed())?;
    let mut arcs = Vec::new();
    for token in tail.split_whitespace() {
        let (a, b) = token.split_once('-').ok_or_else(malformed)?;
        let i: usize = a.parse().map_err(|_| malformed())?;
        let j: usize = b.parse().map_err(|_| malformed())?;
        arcs.push((i, j));
    }
    Diagram::new(n, arcs)
}

/// Left, right and total degree of each vertex. Index 0 is unused so that
/// `ld[v]` refers to vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub ld: Vec<u32>,
    pub rd: Vec<u32>,
}

impl DegreeProfile {
    pub fn of(d: &Diagram) -> Self {
        let mut ld = vec![0u32; d.n + 1];
        let mut rd = vec![0u32; d.n + 1];
        for &(i, j) in &d.arcs {
            rd[i] += 1;
            ld[j] += 1;
        }
        DegreeProfile { ld, rd }
    }

    pub fn deg(&self, v: usize) -> u32 {
        self.ld[v] + self.rd[v]
    }

    pub fn n(&self) -> usize {
        self.ld.len() - 1
    }
}

fn check_m(m: usize) -> Result<(), DiagramError> {
    if m < 2 {
        Err(DiagramError::BadM(m))
    } else {
        Ok(())
    }
}

/// True iff no two arcs satisfy `i1 < i2 < j1 < j2`.
pub fn is_stack(d: &Diagram) -> bool {
    // Sweep by left end (longer arcs first on ties); for a noncrossing set
    // the open arcs are nested, so their right ends form a stack.
    let mut events: Vec<Arc> = d.arcs.clone();
    events.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut open: Vec<usize> = Vec::new(); // right ends of arcs still open
    for &(i, j) in &events {
        while let Some(&top) = open.last() {
            if top <= i {
                open.pop();
            } else {
                break;
            }
        }
        if let Some(&top) = open.last() {
            // i < top: the new arc starts inside the top arc, so it must end
            // no later than it.
            if j > top {
                return false;
            }
        }
        open.push(j);
    }
    true
}

/// True iff no two arcs satisfy `i1 < i2 < j2 < j1`.
pub fn is_queue(d: &Diagram) -> bool {
    for (a, &(i1, j1)) in d.arcs.iter().enumerate() {
        for &(i2, j2) in &d.arcs[a + 1..] {
            if (i1 < i2 && j2 < j1) || (i2 < i1 && j1 < j2) {
                return false;
            }
        }
    }
    true
}

/// Stack, every degree at most two, and both arcs of a degree-two vertex on
/// the same side.
pub fn is_zigzag(d: &Diagram) -> bool {
    if !is_stack(d) {
        return false;
    }
    let p = d.degrees();
    (1..=d.n).all(|v| p.deg(v) <= 2 && p.ld[v].min(p.rd[v]) == 0)
}

/// Stack with every arc of length at least `m` and every degree at most two.
pub fn is_m_regular_linear(d: &Diagram, m: usize) -> Result<bool, DiagramError> {
    check_m(m)?;
    if d.arcs.iter().any(|&(i, j)| j - i < m) {
        return Ok(false);
    }
    if !is_stack(d) {
        return Ok(false);
    }
    let p = d.degrees();
    Ok((1..=d.n).all(|v| p.deg(v) <= 2))
}

/// Zigzag stack satisfying `ld(i) + rd(i+m-1) <= 2` for `1 <= i <= n-m+1`
/// and `j - i >= m - 1` whenever `i < j`, `ld(i) > 0`, `rd(j) > 0`.
pub fn is_m_reduced(d: &Diagram, m: usize) -> Result<bool, DiagramError> {
    check_m(m)?;
    if !is_zigzag(d) {
        return Ok(false);
    }
    let n = d.n;
    let p = d.degrees();
    if n + 1 >= m {
        for i in 1..=(n + 1 - m) {
            if p.ld[i] + p.rd[i + m - 1] > 2 {
                return Ok(false);
            }
        }
    }
    for i in 1..=n {
        if p.ld[i] == 0 {
            continue;
        }
        for j in (i + 1)..=n {
            if p.rd[j] > 0 && j - i < m - 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks a diagram as the contents of an interval sitting between a virtual
/// left endpoint (position 0, left-degree `ld_left`) and a virtual right
/// endpoint (position `n+1`, right-degree `rd_right`).
///
/// Returns true iff `d` is zigzag and both reduction conditions hold over
/// the extended positions `0..=n+1`. Only the left-degree of the left
/// endpoint and the right-degree of the right endpoint take part.
pub fn check_with_boundary(d: &Diagram, m: usize, ld_left: u8, rd_right: u8) -> Result<bool, DiagramError> {
    check_m(m)?;
    for b in [ld_left, rd_right] {
        if b > 2 {
            return Err(DiagramError::BadBoundary(b));
        }
    }
    if !is_zigzag(d) {
        return Ok(false);
    }
    let n = d.n;
    let p = d.degrees();
    // Extended degree tables over positions 0..=n+1.
    let mut ld = vec![0u32; n + 2];
    let mut rd = vec![0u32; n + 2];
    ld[0] = ld_left as u32;
    rd[n + 1] = rd_right as u32;
    ld[1..=n].copy_from_slice(&p.ld[1..=n]);
    rd[1..=n].copy_from_slice(&p.rd[1..=n]);

    let last = n + 1;
    for i in 0..=last {
        let k = i + m - 1;
        if k > last {
            break;
        }
        if ld[i] + rd[k] > 2 {
            return Ok(false);
        }
    }
    for i in 0..=last {
        if ld[i] == 0 {
            continue;
        }
        for j in (i + 1)..=last {
            if rd[j] > 0 && j - i < m - 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Connected components of the arc graph, each as a sorted vertex list.
/// Isolated vertices form singleton components.
pub fn components(d: &Diagram) -> Vec<Vec<usize>> {
    let n = d.n;
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for &(i, j) in &d.arcs {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 1..=n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

pub fn is_connected(d: &Diagram) -> bool {
    components(d).len() <= 1
}
