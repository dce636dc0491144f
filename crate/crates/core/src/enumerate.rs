//! Exhaustive generation and counting of diagram classes.
//!
//! Vertices are scanned left to right. At each vertex the search chooses how
//! many pending arcs close there and how many new arcs open. Pending arcs
//! live in a double-ended buffer: stacks close from the back (last opened,
//! first closed), queues from the front. That discipline alone makes every
//! generated stack noncrossing and every queue nonnesting, and each diagram
//! corresponds to exactly one sequence of choices.
//!
//! Every other constraint (degree caps, arc lengths, the zigzag rule and the
//! two reduction conditions) is violation-monotone under adding arcs, so it
//! is checked as soon as the degrees it mentions are fixed.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{self, Arc, Diagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("n = {n} exceeds the {what} limit of {limit}")]
    LimitExceeded { n: usize, limit: usize, what: &'static str },
    #[error("class {0} requires a regularity parameter m >= 2")]
    MissingM(ClassKind),
    #[error("class {0} does not take a regularity parameter")]
    UnexpectedM(ClassKind),
    #[error("interval type index {0} is outside 1..=6")]
    BadType(u8),
    #[error("unknown class name {0:?}")]
    UnknownClass(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassKind {
    Stack,
    Queue,
    Zigzag,
    ConnectedZigzag,
    MRegularLinear,
    MReducedZigzag,
    RnaSecondary,
    /// Interval type `T1..=T6`: m-reduced contents of an interval whose
    /// enclosing endpoints carry the given boundary degrees.
    TypeT(u8),
    /// m-reduced zigzag stacks with `deg(1) <= 1`.
    TypeG,
    /// m-reduced zigzag stacks with `deg(1) <= 1` and `deg(n) <= 1`.
    TypeH,
}

impl ClassKind {
    pub fn needs_m(self) -> bool {
        matches!(
            self,
            ClassKind::MRegularLinear
                | ClassKind::MReducedZigzag
                | ClassKind::TypeT(_)
                | ClassKind::TypeG
                | ClassKind::TypeH
        )
    }

    pub fn name(self) -> String {
        match self {
            ClassKind::Stack => "stack".into(),
            ClassKind::Queue => "queue".into(),
            ClassKind::Zigzag => "zigzag".into(),
            ClassKind::ConnectedZigzag => "connected-zigzag".into(),
            ClassKind::MRegularLinear => "regular-linear".into(),
            ClassKind::MReducedZigzag => "reduced-zigzag".into(),
            ClassKind::RnaSecondary => "rna".into(),
            ClassKind::TypeT(i) => format!("type-t{i}"),
            ClassKind::TypeG => "type-g".into(),
            ClassKind::TypeH => "type-h".into(),
        }
    }

    pub fn parse(name: &str) -> Result<Self, EnumError> {
        let lower = name.to_ascii_lowercase();
        let kind = match lower.as_str() {
            "stack" => ClassKind::Stack,
            "queue" => ClassKind::Queue,
            "zigzag" => ClassKind::Zigzag,
            "connected-zigzag" => ClassKind::ConnectedZigzag,
            "regular-linear" | "rm" => ClassKind::MRegularLinear,
            "reduced-zigzag" | "zm" => ClassKind::MReducedZigzag,
            "rna" => ClassKind::RnaSecondary,
            "type-g" | "g" => ClassKind::TypeG,
            "type-h" | "h" => ClassKind::TypeH,
            other => {
                let idx = other
                    .strip_prefix("type-t")
                    .and_then(|s| s.parse::<u8>().ok())
                    .ok_or_else(|| EnumError::UnknownClass(name.to_string()))?;
                if !(1..=6).contains(&idx) {
                    return Err(EnumError::BadType(idx));
                }
                ClassKind::TypeT(idx)
            }
        };
        Ok(kind)
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Boundary degrees `(ld of the left endpoint, rd of the right endpoint)` for
/// interval types `T1..=T6`.
pub fn type_boundary(i: u8) -> Result<(u8, u8), EnumError> {
    match i {
        1 => Ok((0, 0)),
        2 => Ok((1, 0)),
        3 => Ok((1, 1)),
        4 => Ok((2, 0)),
        5 => Ok((2, 1)),
        6 => Ok((2, 2)),
        _ => Err(EnumError::BadType(i)),
    }
}

/// A diagram class together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagramClass {
    kind: ClassKind,
    m: Option<usize>,
    boundary: Option<(u8, u8)>,
}

impl DiagramClass {
    pub fn new(kind: ClassKind, m: Option<usize>) -> Result<Self, EnumError> {
        match (kind.needs_m(), m) {
            (true, None) => return Err(EnumError::MissingM(kind)),
            (true, Some(m)) if m < 2 => return Err(EnumError::MissingM(kind)),
            (false, Some(_)) => return Err(EnumError::UnexpectedM(kind)),
            _ => {}
        }
        let boundary = match kind {
            ClassKind::TypeT(i) => Some(type_boundary(i)?),
            _ => None,
        };
        Ok(DiagramClass { kind, m, boundary })
    }

    pub fn stack() -> Self {
        Self::new(ClassKind::Stack, None).unwrap()
    }
    pub fn queue() -> Self {
        Self::new(ClassKind::Queue, None).unwrap()
    }
    pub fn zigzag() -> Self {
        Self::new(ClassKind::Zigzag, None).unwrap()
    }
    pub fn connected_zigzag() -> Self {
        Self::new(ClassKind::ConnectedZigzag, None).unwrap()
    }
    pub fn rna_secondary() -> Self {
        Self::new(ClassKind::RnaSecondary, None).unwrap()
    }
    pub fn regular_linear(m: usize) -> Result<Self, EnumError> {
        Self::new(ClassKind::MRegularLinear, Some(m))
    }
    pub fn reduced_zigzag(m: usize) -> Result<Self, EnumError> {
        Self::new(ClassKind::MReducedZigzag, Some(m))
    }
    pub fn interval_type(m: usize, i: u8) -> Result<Self, EnumError> {
        Self::new(ClassKind::TypeT(i), Some(m))
    }
    pub fn type_g(m: usize) -> Result<Self, EnumError> {
        Self::new(ClassKind::TypeG, Some(m))
    }
    pub fn type_h(m: usize) -> Result<Self, EnumError> {
        Self::new(ClassKind::TypeH, Some(m))
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }
    pub fn m(&self) -> Option<usize> {
        self.m
    }
    pub fn boundary(&self) -> Option<(u8, u8)> {
        self.boundary
    }

    /// Membership test through the `diagram` predicates; independent of the
    /// search rules below.
    pub fn contains(&self, d: &Diagram) -> bool {
        let m = self.m.unwrap_or(2);
        let reduced = || diagram::is_m_reduced(d, m).unwrap_or(false);
        match self.kind {
            ClassKind::Stack => diagram::is_stack(d),
            ClassKind::Queue => diagram::is_queue(d),
            ClassKind::Zigzag => diagram::is_zigzag(d),
            ClassKind::ConnectedZigzag => diagram::is_zigzag(d) && diagram::is_connected(d),
            ClassKind::MRegularLinear => diagram::is_m_regular_linear(d, m).unwrap_or(false),
            ClassKind::MReducedZigzag => reduced(),
            ClassKind::RnaSecondary => {
                let p = d.degrees();
                diagram::is_stack(d) && d.arcs().iter().all(|&(i, j)| j - i >= 2) && (1..=d.n()).all(|v| p.deg(v) <= 1)
            }
            ClassKind::TypeT(_) => {
                let (l, r) = self.boundary.unwrap();
                diagram::check_with_boundary(d, m, l, r).unwrap_or(false)
            }
            ClassKind::TypeG => {
                let p = d.degrees();
                reduced() && (d.n() == 0 || p.deg(1) <= 1)
            }
            ClassKind::TypeH => {
                let p = d.degrees();
                reduced() && (d.n() == 0 || (p.deg(1) <= 1 && p.deg(d.n()) <= 1))
            }
        }
    }

    fn rules(&self) -> Rules {
        let m = self.m.unwrap_or(2);
        let base = Rules {
            queue: false,
            max_deg: u32::MAX,
            min_deg: 0,
            min_len: 1,
            zigzag: false,
            reduced: None,
            first_max: None,
            last_max: None,
            connected: false,
        };
        let reduced = |b: (u8, u8)| Rules {
            max_deg: 2,
            zigzag: true,
            reduced: Some(Reduction { m, ld_left: b.0 as u32, rd_right: b.1 as u32 }),
            ..base
        };
        match self.kind {
            ClassKind::Stack => base,
            ClassKind::Queue => Rules { queue: true, ..base },
            ClassKind::Zigzag => Rules { max_deg: 2, zigzag: true, ..base },
            ClassKind::ConnectedZigzag => Rules { max_deg: 2, zigzag: true, connected: true, ..base },
            ClassKind::MRegularLinear => Rules { max_deg: 2, min_len: m, ..base },
            ClassKind::RnaSecondary => Rules { max_deg: 1, min_len: 2, ..base },
            ClassKind::MReducedZigzag => reduced((0, 0)),
            ClassKind::TypeT(_) => reduced(self.boundary.unwrap()),
            ClassKind::TypeG => Rules { first_max: Some(1), ..reduced((0, 0)) },
            ClassKind::TypeH => Rules { first_max: Some(1), last_max: Some(1), ..reduced((0, 0)) },
        }
    }
}

impl fmt::Display for DiagramClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.m {
            Some(m) => write!(f, "{}(m={m})", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

/// Which stacks count as "stacks" in the noncrossing-graph identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackConvention {
    /// Arcs may share endpoints (vertex degree above one).
    pub shared_endpoints: bool,
    /// Vertices of degree zero are permitted.
    pub isolated_vertices: bool,
}

impl StackConvention {
    pub const ALL: [StackConvention; 4] = [
        StackConvention { shared_endpoints: true, isolated_vertices: true },
        StackConvention { shared_endpoints: true, isolated_vertices: false },
        StackConvention { shared_endpoints: false, isolated_vertices: true },
        StackConvention { shared_endpoints: false, isolated_vertices: false },
    ];

    fn rules(self) -> Rules {
        Rules {
            queue: false,
            max_deg: if self.shared_endpoints { u32::MAX } else { 1 },
            min_deg: if self.isolated_vertices { 0 } else { 1 },
            min_len: 1,
            zigzag: false,
            reduced: None,
            first_max: None,
            last_max: None,
            connected: false,
        }
    }
}

/// Brute-force count of stacks on `[n]` under a given convention.
pub fn count_stacks_with(n: usize, convention: StackConvention) -> BigUint {
    BigUint::from(Search::new(n, convention.rules()).count_serial().total())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationConfig {
    /// Largest `n` for which diagrams are materialised.
    pub object_limit: usize,
    /// Largest `n` for which counts are computed by search.
    pub count_limit: usize,
    /// Worker threads for counting; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { object_limit: 14, count_limit: 16, workers: None }
    }
}

/// Every diagram on `[n]` in the class, in canonical order.
pub fn enumerate_class(n: usize, class: &DiagramClass) -> Result<Vec<Diagram>, EnumError> {
    enumerate_class_with(n, class, &EnumerationConfig::default())
}

pub fn enumerate_class_with(
    n: usize,
    class: &DiagramClass,
    config: &EnumerationConfig,
) -> Result<Vec<Diagram>, EnumError> {
    if n > config.object_limit {
        return Err(EnumError::LimitExceeded { n, limit: config.object_limit, what: "enumeration" });
    }
    let mut out = Vec::new();
    Search::new(n, class.rules()).for_each(|d| out.push(d));
    out.sort_unstable();
    Ok(out)
}

/// Calls `f` on every diagram of the class on `[n]` without collecting them.
pub fn visit_class(
    n: usize,
    class: &DiagramClass,
    config: &EnumerationConfig,
    f: impl FnMut(Diagram),
) -> Result<(), EnumError> {
    if n > config.object_limit {
        return Err(EnumError::LimitExceeded { n, limit: config.object_limit, what: "enumeration" });
    }
    Search::new(n, class.rules()).for_each(f);
    Ok(())
}

/// Exact cardinality of the class on `[n]`.
pub fn count_class(n: usize, class: &DiagramClass) -> Result<BigUint, EnumError> {
    count_class_with(n, class, &EnumerationConfig::default())
}

pub fn count_class_with(n: usize, class: &DiagramClass, config: &EnumerationConfig) -> Result<BigUint, EnumError> {
    Ok(count_by_arcs_with(n, class, config)?.into_iter().sum())
}

/// Counts of the class on `[n]` split by number of arcs (index = arc count).
pub fn count_by_arcs_with(
    n: usize,
    class: &DiagramClass,
    config: &EnumerationConfig,
) -> Result<Vec<BigUint>, EnumError> {
    if n > config.count_limit {
        return Err(EnumError::LimitExceeded { n, limit: config.count_limit, what: "counting" });
    }
    let search = Search::new(n, class.rules());
    let tally = match config.workers {
        Some(1) => search.count_serial(),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(k).build().expect("thread pool");
            pool.install(|| search.count_parallel())
        }
        None => search.count_parallel(),
    };
    Ok(tally.by_arcs.into_iter().map(BigUint::from).collect())
}

/// Counts for `n = 0..=n_max`.
pub fn count_row(n_max: usize, class: &DiagramClass) -> Result<Vec<BigUint>, EnumError> {
    (0..=n_max).map(|n| count_class(n, class)).collect()
}

/// Number of connected zigzag stacks on `[n]`: `n - 1` for `n >= 2`, and 1
/// for `n` in `{0, 1}` by convention.
pub fn count_connected_zigzag(n: usize) -> u64 {
    if n <= 1 {
        1
    } else {
        n as u64 - 1
    }
}

fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for t in 0..k {
        acc = acc * BigUint::from(n - t) / BigUint::from(t + 1);
    }
    acc
}

/// Closed-form count of secondary structures on `[n]` with exactly `k` arcs:
/// `(1/k) C(n-k, k+1) C(n-k-1, k-1)` for `k >= 1`, and 1 for `k = 0`.
pub fn count_rna_secondary(n: usize, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    let (n, k) = (n as i64, k as i64);
    let prod = binomial(n - k, k + 1) * binomial(n - k - 1, k - 1);
    debug_assert!((&prod % BigUint::from(k as u64)).is_zero());
    prod / BigUint::from(k as u64)
}

/// `t_i(n)`: m-reduced contents of an interval of type `T_i`.
pub fn count_type(n: usize, m: usize, i: u8) -> Result<BigUint, EnumError> {
    count_class(n, &DiagramClass::interval_type(m, i)?)
}

pub fn count_type_g(n: usize, m: usize) -> Result<BigUint, EnumError> {
    count_class(n, &DiagramClass::type_g(m)?)
}

pub fn count_type_h(n: usize, m: usize) -> Result<BigUint, EnumError> {
    count_class(n, &DiagramClass::type_h(m)?)
}

/// One row of the stack-convention experiment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConventionRow {
    pub convention: StackConvention,
    /// Brute-force counts for `n = 2..=n_max`.
    pub counts: Vec<BigUint>,
    /// True iff every count equals `2^(n-1) a(n-2)`.
    pub matches: bool,
}

/// Brute-forces every stack convention for `2 <= n <= n_max` and compares
/// with `2^(n-1) a(n-2)`, where `a` is read off the supplied sequence.
pub fn stack_convention_experiment(n_max: usize, schroeder: &[BigUint]) -> Vec<ConventionRow> {
    assert!(n_max >= 2 && schroeder.len() + 1 >= n_max);
    StackConvention::ALL
        .iter()
        .map(|&convention| {
            let counts: Vec<BigUint> = (2..=n_max).map(|n| count_stacks_with(n, convention)).collect();
            let matches = (2..=n_max).zip(&counts).all(|(n, c)| {
                let target = (BigUint::one() << (n - 1)) * &schroeder[n - 2];
                *c == target
            });
            ConventionRow { convention, counts, matches }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// search engine

#[derive(Debug, Clone, Copy)]
struct Reduction {
    m: usize,
    ld_left: u32,
    rd_right: u32,
}

#[derive(Debug, Clone, Copy)]
struct Rules {
    queue: bool,
    max_deg: u32,
    min_deg: u32,
    min_len: usize,
    zigzag: bool,
    reduced: Option<Reduction>,
    first_max: Option<u32>,
    last_max: Option<u32>,
    connected: bool,
}

#[derive(Debug, Default, Clone)]
struct Tally {
    by_arcs: Vec<u64>,
}

impl Tally {
    fn add(&mut self, arcs: usize) {
        if self.by_arcs.len() <= arcs {
            self.by_arcs.resize(arcs + 1, 0);
        }
        self.by_arcs[arcs] += 1;
    }

    fn merge(mut self, other: Tally) -> Tally {
        if self.by_arcs.len() < other.by_arcs.len() {
            self.by_arcs.resize(other.by_arcs.len(), 0);
        }
        for (a, b) in self.by_arcs.iter_mut().zip(other.by_arcs) {
            *a += b;
        }
        self
    }

    fn total(&self) -> u64 {
        self.by_arcs.iter().sum()
    }
}

#[derive(Debug, Clone)]
struct Search {
    n: usize,
    rules: Rules,
    /// Pending arcs, identified by their left endpoint.
    open: VecDeque<usize>,
    /// Degrees over positions `0..=n+1`; 0 and n+1 are the virtual
    /// endpoints used by interval types.
    ld: Vec<u32>,
    rd: Vec<u32>,
    arcs: Vec<Arc>,
    /// Union-find parents, only used for connectivity classes.
    parent: Vec<usize>,
}

/// How a subtree continues after a prefix of vertices has been decided.
enum Step {
    Leaf,
    Into(usize),
}

impl Search {
    fn new(n: usize, rules: Rules) -> Self {
        let mut ld = vec![0; n + 2];
        let mut rd = vec![0; n + 2];
        if let Some(r) = rules.reduced {
            ld[0] = r.ld_left;
            rd[n + 1] = r.rd_right;
        }
        Search { n, rules, open: VecDeque::new(), ld, rd, arcs: Vec::new(), parent: (0..=n).collect() }
    }

    fn count_serial(mut self) -> Tally {
        let mut tally = Tally::default();
        self.descend(1, &mut |s: &Search| tally.add(s.arcs.len()));
        tally
    }

    fn count_parallel(self) -> Tally {
        // Split on the decisions at the first few vertices.
        let split = self.n.min(3);
        let mut frontier: Vec<Search> = Vec::new();
        let mut shallow = Tally::default();
        self.clone().expand(1, split, &mut frontier, &mut shallow);
        frontier
            .into_par_iter()
            .map(|s| s.count_serial_from(split + 1))
            .reduce(Tally::default, Tally::merge)
            .merge(shallow)
    }

    fn count_serial_from(mut self, v: usize) -> Tally {
        let mut tally = Tally::default();
        self.descend(v, &mut |s: &Search| tally.add(s.arcs.len()));
        tally
    }

    fn expand(&mut self, v: usize, last: usize, out: &mut Vec<Search>, leaves: &mut Tally) {
        if v > last {
            out.push(self.clone());
            return;
        }
        // `last < n` whenever frontier states are produced, so leaves only
        // appear here when n itself is small.
        let mut children: Vec<(Search, Step)> = Vec::new();
        self.branch(v, &mut |s: &mut Search, step| children.push((s.clone(), step)));
        for (mut child, step) in children {
            match step {
                Step::Leaf => leaves.add(child.arcs.len()),
                Step::Into(next) => child.expand(next, last, out, leaves),
            }
        }
    }

    fn for_each(mut self, mut f: impl FnMut(Diagram)) {
        let n = self.n;
        self.descend(1, &mut |s: &Search| {
            let mut arcs = s.arcs.clone();
            arcs.sort_unstable();
            f(Diagram::from_sorted_unchecked(n, arcs));
        });
    }

    fn descend(&mut self, v: usize, leaf: &mut dyn FnMut(&Search)) {
        self.branch(v, &mut |s: &mut Search, step| match step {
            Step::Leaf => leaf(s),
            Step::Into(next) => s.descend(next, leaf),
        });
    }

    /// Tries every admissible decision at vertex `v` and hands each resulting
    /// state to `k`, restoring the state afterwards.
    fn branch(&mut self, v: usize, k: &mut dyn FnMut(&mut Search, Step)) {
        let n = self.n;
        if v > n {
            if self.open.is_empty() && self.final_checks() {
                k(self, Step::Leaf);
            }
            return;
        }
        let r = self.rules;
        let max_close = (r.max_deg as usize).min(self.open.len());
        let max_close = match (v == n, r.last_max) {
            (true, Some(cap)) => max_close.min(cap as usize),
            _ => max_close,
        };
        for t in 0..=max_close {
            if !self.can_close(v, t) {
                // Closing more arcs only adds violations.
                break;
            }
            let closed = self.close(v, t);
            self.ld[v] = t as u32;
            let mut max_open = (r.max_deg as usize).saturating_sub(t);
            if r.zigzag && t > 0 {
                max_open = 0;
            }
            if v == 1 {
                if let Some(cap) = r.first_max {
                    max_open = max_open.min(cap as usize);
                }
            }
            // Opened arcs need distinct right ends at distance >= min_len.
            let room = (n + 1).saturating_sub(v + r.min_len);
            max_open = max_open.min(room);
            for o in 0..=max_open {
                if (t + o) < r.min_deg as usize {
                    continue;
                }
                if !self.reduction_ok(v, o as u32) {
                    // Larger right-degrees only tighten both conditions.
                    break;
                }
                if !self.capacity_ok(v, o) {
                    break;
                }
                self.rd[v] = o as u32;
                for _ in 0..o {
                    self.open.push_back(v);
                }
                k(self, Step::Into(v + 1));
                for _ in 0..o {
                    self.open.pop_back();
                }
                self.rd[v] = 0;
            }
            self.ld[v] = 0;
            self.reopen(v, closed);
        }
    }

    fn can_close(&self, v: usize, t: usize) -> bool {
        if t == 0 {
            return true;
        }
        // The t-th pending arc from the closing end.
        let idx = if self.rules.queue { t - 1 } else { self.open.len() - t };
        let start = self.open[idx];
        if v - start < self.rules.min_len {
            return false;
        }
        if t >= 2 {
            let prev = if self.rules.queue { self.open[t - 2] } else { self.open[idx + 1] };
            if prev == start {
                // Two arcs between the same pair of vertices.
                return false;
            }
        }
        true
    }

    fn close(&mut self, v: usize, t: usize) -> Vec<usize> {
        let mut closed = Vec::with_capacity(t);
        for _ in 0..t {
            let s = if self.rules.queue { self.open.pop_front().unwrap() } else { self.open.pop_back().unwrap() };
            self.arcs.push((s, v));
            closed.push(s);
        }
        closed
    }

    fn reopen(&mut self, _v: usize, closed: Vec<usize>) {
        for s in closed.into_iter().rev() {
            self.arcs.pop();
            if self.rules.queue {
                self.open.push_front(s);
            } else {
                self.open.push_back(s);
            }
        }
    }

    /// Checks the pending arcs can still all be closed by the vertices after `v`.
    fn capacity_ok(&self, v: usize, opening: usize) -> bool {
        if self.rules.max_deg == u32::MAX {
            return true;
        }
        let remaining = self.n - v;
        self.open.len() + opening <= (self.rules.max_deg as usize) * remaining
    }

    /// Both reduction conditions for every pair whose degrees are now fixed,
    /// given `ld(v)` already set and a candidate `rd(v) = o`.
    fn reduction_ok(&self, v: usize, o: u32) -> bool {
        let Some(red) = self.rules.reduced else { return true };
        let m = red.m;
        // ld(i) + rd(i+m-1) <= 2 with i+m-1 = v.
        if v + 1 >= m {
            let i = v + 1 - m;
            if self.ld[i] + o > 2 {
                return false;
            }
        }
        // ld(i) > 0 and rd(v) > 0 need v - i >= m - 1.
        if o > 0 {
            let lo = (v + 2).saturating_sub(m);
            if (lo..v).any(|i| self.ld[i] > 0) {
                return false;
            }
        }
        true
    }

    fn final_checks(&self) -> bool {
        if let Some(red) = self.rules.reduced {
            let last = self.n + 1;
            let m = red.m;
            if last + 1 >= m {
                let i = last + 1 - m;
                if self.ld[i] + self.rd[last] > 2 {
                    return false;
                }
            }
            if self.rd[last] > 0 {
                let lo = (last + 2).saturating_sub(m);
                if (lo..last).any(|i| self.ld[i] > 0) {
                    return false;
                }
            }
        }
        if self.rules.connected && !self.is_connected() {
            return false;
        }
        true
    }

    fn is_connected(&self) -> bool {
        let n = self.n;
        if n <= 1 {
            return true;
        }
        let mut parent = self.parent.clone();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = n;
        for &(i, j) in &self.arcs {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(class: &DiagramClass, n_max: usize) -> Vec<u64> {
        (0..=n_max).map(|n| count_class(n, class).unwrap().try_into().unwrap()).collect()
    }

    /// Subset brute force: every arc set on [n], filtered by the predicate.
    fn brute(n: usize, class: &DiagramClass) -> u64 {
        let all: Vec<Arc> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        let mut count = 0;
        for mask in 0u64..(1u64 << all.len()) {
            let arcs = all.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &a)| a);
            let d = Diagram::new(n, arcs).unwrap();
            if class.contains(&d) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn zigzag_row_small() {
        assert_eq!(row(&DiagramClass::zigzag(), 8), vec![1, 1, 2, 6, 20, 70, 255, 959, 3696]);
    }

    #[test]
    fn search_agrees_with_subset_brute_force() {
        let mut classes = vec![
            DiagramClass::stack(),
            DiagramClass::queue(),
            DiagramClass::zigzag(),
            DiagramClass::connected_zigzag(),
            DiagramClass::rna_secondary(),
        ];
        for m in 2..=4 {
            classes.push(DiagramClass::regular_linear(m).unwrap());
            classes.push(DiagramClass::reduced_zigzag(m).unwrap());
            classes.push(DiagramClass::type_g(m).unwrap());
            classes.push(DiagramClass::type_h(m).unwrap());
            for i in 1..=6 {
                classes.push(DiagramClass::interval_type(m, i).unwrap());
            }
        }
        for class in &classes {
            for n in 0..=6 {
                let fast: u64 = count_class(n, class).unwrap().try_into().unwrap();
                assert_eq!(fast, brute(n, class), "{class} n={n}");
            }
        }
    }

    #[test]
    fn enumeration_matches_count_and_predicate() {
        for class in [
            DiagramClass::zigzag(),
            DiagramClass::queue(),
            DiagramClass::reduced_zigzag(3).unwrap(),
            DiagramClass::interval_type(3, 5).unwrap(),
        ] {
            for n in 0..=8 {
                let list = enumerate_class(n, &class).unwrap();
                assert_eq!(BigUint::from(list.len()), count_class(n, &class).unwrap());
                assert!(list.windows(2).all(|w| w[0] < w[1]), "canonical order");
                assert!(list.iter().all(|d| class.contains(d)));
            }
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(enumerate_class(3, &DiagramClass::zigzag()).unwrap().len(), 6);
        let c2 = enumerate_class(2, &DiagramClass::connected_zigzag()).unwrap();
        assert_eq!(c2, vec![Diagram::new(2, [(1, 2)]).unwrap()]);
        for class in [DiagramClass::stack(), DiagramClass::zigzag(), DiagramClass::type_h(3).unwrap()] {
            assert_eq!(enumerate_class(0, &class).unwrap(), vec![Diagram::empty(0)]);
        }
    }

    #[test]
    fn limits_enforced() {
        let cfg = EnumerationConfig { object_limit: 4, count_limit: 5, workers: Some(1) };
        assert!(matches!(enumerate_class_with(5, &DiagramClass::zigzag(), &cfg), Err(EnumError::LimitExceeded { .. })));
        assert!(count_class_with(5, &DiagramClass::zigzag(), &cfg).is_ok());
        assert!(count_class_with(6, &DiagramClass::zigzag(), &cfg).is_err());
    }

    #[test]
    fn class_parameter_validation() {
        assert!(matches!(DiagramClass::new(ClassKind::MRegularLinear, None), Err(EnumError::MissingM(_))));
        assert!(matches!(DiagramClass::new(ClassKind::Zigzag, Some(3)), Err(EnumError::UnexpectedM(_))));
        assert!(matches!(DiagramClass::interval_type(3, 7), Err(EnumError::BadType(7))));
        assert_eq!(ClassKind::parse("type-t4").unwrap(), ClassKind::TypeT(4));
        assert!(ClassKind::parse("bogus").is_err());
    }

    #[test]
    fn connected_zigzag_closed_form() {
        assert_eq!(count_connected_zigzag(5), 4);
        assert_eq!(count_connected_zigzag(1), 1);
        assert_eq!(count_connected_zigzag(0), 1);
        assert_eq!(count_connected_zigzag(4), 3);
        let brute = row(&DiagramClass::connected_zigzag(), 9);
        for n in 2..=9 {
            assert_eq!(brute[n], count_connected_zigzag(n));
        }
    }

    #[test]
    fn rna_formula() {
        assert_eq!(count_rna_secondary(5, 1), BigUint::from(6u32));
        assert_eq!(count_rna_secondary(4, 0), BigUint::from(1u32));
        // (1/4) C(9,5) C(8,3) = 126 * 56 / 4
        assert_eq!(count_rna_secondary(13, 4), BigUint::from(1764u32));
        let cfg = EnumerationConfig::default();
        for n in 0..=10 {
            let by_k = count_by_arcs_with(n, &DiagramClass::rna_secondary(), &cfg).unwrap();
            for (k, c) in by_k.iter().enumerate() {
                assert_eq!(*c, count_rna_secondary(n, k), "n={n} k={k}");
            }
            for k in by_k.len()..=n {
                assert!(count_rna_secondary(n, k).is_zero());
            }
        }
    }

    #[test]
    fn type_examples() {
        let t = |n, m, i| -> u64 { count_type(n, m, i).unwrap().try_into().unwrap() };
        assert_eq!((t(0, 3, 3), t(1, 3, 3)), (0, 1));
        assert_eq!((t(1, 3, 6), t(2, 3, 6)), (0, 1));
        for m in 2..=4 {
            for n in 0..=9 {
                assert_eq!(
                    t(n, m, 1),
                    u64::try_from(count_class(n, &DiagramClass::reduced_zigzag(m).unwrap()).unwrap()).unwrap()
                );
            }
        }
        assert_eq!(count_type_h(1, 3).unwrap(), BigUint::one());
        assert_eq!(count_type_h(0, 3).unwrap(), BigUint::one());
        assert_eq!(count_type_g(0, 3).unwrap(), BigUint::one());
    }

    #[test]
    fn worker_count_does_not_change_counts() {
        let class = DiagramClass::regular_linear(3).unwrap();
        for workers in [Some(1), Some(2), Some(4), None] {
            let cfg = EnumerationConfig { workers, ..Default::default() };
            assert_eq!(count_class_with(11, &class, &cfg).unwrap(), BigUint::from(4692u32));
        }
    }
}
