//! Exhaustive search for avoiding colorings.
//!
//! A coloring of `K_N` is grown one edge at a time in column order
//! `(0,1), (0,2), (1,2), (0,3), …`, so the first `j(j−1)/2` entries of the
//! color sequence always describe the coloring induced on vertices `0..j`.
//!
//! With [`Pruning::Full`] three filters apply to every partial coloring:
//!
//! * a rainbow triangle through the new edge (Gallai mode only);
//! * a monochromatic star union on the placed edges, which can only newly
//!   appear with one of the new edge's endpoints as a center;
//! * orderly isomorph rejection: colors must appear in first-use order, and
//!   each completed vertex prefix must be the lexicographically least color
//!   sequence over all vertex relabelings combined with color renamings.
//!   The parent of a least sequence is least, so every isomorphism class of
//!   avoider keeps exactly one representative.
//!
//! The tree is cut at a fixed edge depth into shards that are explored
//! independently and merged in order, so verdicts, witnesses and node counts
//! do not depend on the worker count.

use std::fs;
use std::io;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{ColoredComplete, StarUnionPattern};
use crate::exec::{self, Threads};

pub const MAX_ORDER: usize = 64;
pub const MAX_COLORS: usize = 16;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search problem: {0}")]
    InvalidProblem(String),
    #[error("budget must allow at least one node")]
    InvalidBudget,
    #[error("inconclusive: budget exhausted after {nodes_explored} nodes")]
    Inconclusive { nodes_explored: u64 },
    #[error("checkpoint belongs to a different problem (hash {found:016x}, expected {expected:016x})")]
    ProblemMismatch { expected: u64, found: u64 },
    #[error("malformed checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Forbid rainbow triangles.
    Gallai,
    /// Classical two-color Ramsey search.
    Ramsey,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SearchProblem {
    pub k: usize,
    pub pattern: StarUnionPattern,
    pub mode: Mode,
    pub order: usize,
}

impl SearchProblem {
    pub fn new(k: usize, pattern: StarUnionPattern, mode: Mode, order: usize) -> Result<Self, SearchError> {
        if order == 0 || order > MAX_ORDER {
            return Err(SearchError::InvalidProblem(format!(
                "order must be in 1..={MAX_ORDER}, got {order}"
            )));
        }
        if k == 0 || k > MAX_COLORS {
            return Err(SearchError::InvalidProblem(format!("k must be in 1..={MAX_COLORS}, got {k}")));
        }
        if mode == Mode::Ramsey && k != 2 {
            return Err(SearchError::InvalidProblem(format!("Ramsey mode needs k = 2, got {k}")));
        }
        Ok(SearchProblem { k, pattern, mode, order })
    }

    fn key_bytes(&self) -> Vec<u8> {
        let mut b = Vec::with_capacity(14);
        b.push(self.k as u8);
        b.push(match self.mode {
            Mode::Gallai => 0,
            Mode::Ramsey => 1,
        });
        b.extend_from_slice(&(self.pattern.n() as u32).to_le_bytes());
        b.extend_from_slice(&(self.pattern.m() as u32).to_le_bytes());
        b.extend_from_slice(&(self.order as u32).to_le_bytes());
        b
    }

    /// FNV-1a over `k, mode, n, m, order` as laid out in the checkpoint header.
    pub fn hash(&self) -> u64 {
        self.key_bytes()
            .iter()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, &b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pruning {
    /// Incremental pattern pruning plus orderly isomorph rejection.
    Full,
    /// Plain enumeration of every coloring, checked only when complete.
    Off,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub threads: Threads,
    pub pruning: Pruning,
    /// Edge depth at which the tree is split into shards.
    pub shard_depth: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            threads: Threads::default(),
            pruning: Pruning::Full,
            shard_depth: 10,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_nodes: u64,
    /// Wall-clock cap; unlike the node cap this makes inconclusive runs timing dependent.
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes, max_time: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    AvoiderFound,
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub witness: Option<ColoredComplete>,
    pub nodes_explored: u64,
    pub wall_time: Duration,
}

/// Persisted search state: a completed verdict or the shards still to explore.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub problem: SearchProblem,
    pub pruning: Pruning,
    pub shard_depth: usize,
    pub nodes_explored: u64,
    pub status: CheckpointStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckpointStatus {
    InProgress { frontier: Vec<Vec<u8>> },
    Exhausted,
    AvoiderFound { witness: Vec<u8> },
}

impl Checkpoint {
    pub fn is_done(&self) -> bool {
        !matches!(self.status, CheckpointStatus::InProgress { .. })
    }

    pub fn remaining_shards(&self) -> usize {
        match &self.status {
            CheckpointStatus::InProgress { frontier } => frontier.len(),
            _ => 0,
        }
    }
}

/// `(i, j)` for every edge in column order.
fn column_edges(order: usize) -> Vec<(usize, usize)> {
    (1..order).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// Rebuilds a coloring from a column-order color sequence.
pub fn coloring_from_columns(order: usize, k: usize, seq: &[u8]) -> Result<ColoredComplete, SearchError> {
    let edges = column_edges(order);
    if seq.len() != edges.len() {
        return Err(SearchError::Checkpoint(format!(
            "witness has {} edges, expected {}",
            seq.len(),
            edges.len()
        )));
    }
    let mut m = vec![0usize; order * order];
    for (&(i, j), &c) in edges.iter().zip(seq) {
        m[i * order + j] = c as usize;
    }
    ColoredComplete::from_fn(order, k, |i, j| m[i * order + j]).map_err(|e| SearchError::Checkpoint(e.to_string()))
}

/// Column-order color sequence of a coloring.
pub fn columns_of(g: &ColoredComplete) -> Vec<u8> {
    column_edges(g.order()).into_iter().map(|(i, j)| g.color(i, j)).collect()
}

struct Spec {
    order: usize,
    k: u8,
    n: u32,
    m: u32,
    gallai: bool,
    full: bool,
    edges: Vec<(usize, usize)>,
}

impl Spec {
    fn new(p: &SearchProblem, pruning: Pruning) -> Self {
        Spec {
            order: p.order,
            k: p.k as u8,
            n: p.pattern.n() as u32,
            m: p.pattern.m() as u32,
            gallai: p.mode == Mode::Gallai,
            full: pruning == Pruning::Full,
            edges: column_edges(p.order),
        }
    }
}

#[derive(Clone)]
struct State {
    color: Vec<[u8; MAX_ORDER]>,
    /// `nbrs[v][c - 1]`
    nbrs: Vec<[u64; MAX_COLORS]>,
    seq: Vec<u8>,
    max_color: Vec<u8>,
}

impl State {
    fn new(order: usize) -> Self {
        State {
            color: vec![[0; MAX_ORDER]; order],
            nbrs: vec![[0; MAX_COLORS]; order],
            seq: Vec::new(),
            max_color: vec![0],
        }
    }

    fn top_color(&self) -> u8 {
        *self.max_color.last().unwrap()
    }

    fn push(&mut self, i: usize, j: usize, c: u8) {
        self.color[i][j] = c;
        self.color[j][i] = c;
        self.nbrs[i][c as usize - 1] |= 1 << j;
        self.nbrs[j][c as usize - 1] |= 1 << i;
        self.seq.push(c);
        let top = self.top_color().max(c);
        self.max_color.push(top);
    }

    fn pop(&mut self, i: usize, j: usize) {
        let c = self.seq.pop().unwrap();
        self.max_color.pop();
        self.nbrs[i][c as usize - 1] &= !(1 << j);
        self.nbrs[j][c as usize - 1] &= !(1 << i);
        self.color[i][j] = 0;
        self.color[j][i] = 0;
    }

    #[inline]
    fn pair_carries(&self, c: usize, u: usize, v: usize, n: u32, m: u32) -> bool {
        let nu = self.nbrs[u][c];
        let nv = self.nbrs[v][c];
        let uv = ((nu >> v) & 1) as u32;
        nu.count_ones() - uv >= n && nv.count_ones() - uv >= m && (nu | nv).count_ones() - 2 * uv >= n + m
    }

    /// Star union in colour `c` with `x` as one of the centers.
    fn star_union_at(&self, spec: &Spec, c: usize, x: usize, limit: usize) -> bool {
        let dx = self.nbrs[x][c].count_ones();
        if dx < spec.m {
            return false;
        }
        (0..limit).any(|y| y != x && (self.pair_carries(c, x, y, spec.n, spec.m) || self.pair_carries(c, y, x, spec.n, spec.m)))
    }

    /// Filters for the freshly placed edge `(i, j)` of color `c`.
    fn edge_ok(&self, spec: &Spec, i: usize, j: usize, c: u8) -> bool {
        if spec.gallai {
            for a in 0..i {
                let (ai, aj) = (self.color[a][i], self.color[a][j]);
                if ai != aj && ai != c && aj != c {
                    return false;
                }
            }
        }
        let ci = c as usize - 1;
        !(self.star_union_at(spec, ci, i, j + 1) || self.star_union_at(spec, ci, j, j + 1))
    }

    /// Whole-coloring check used without pruning.
    fn complete_ok(&self, spec: &Spec) -> bool {
        let n = spec.order;
        if spec.gallai {
            for x in 0..n {
                for y in x + 1..n {
                    for z in y + 1..n {
                        let (a, b, c) = (self.color[x][y], self.color[x][z], self.color[y][z]);
                        if a != b && a != c && b != c {
                            return false;
                        }
                    }
                }
            }
        }
        for c in 0..spec.k as usize {
            for u in 0..n {
                for v in 0..n {
                    if u != v && self.pair_carries(c, u, v, spec.n, spec.m) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Is the coloring on `0..size` the least column sequence over all vertex
    /// orders, each with colors renamed in first-use order?
    fn is_canonical(&self, size: usize) -> bool {
        let mut search = CanonSearch {
            color: &self.color,
            size,
            perm: [0; MAX_ORDER],
            used: 0,
            relabel: [0; MAX_COLORS + 1],
            next_label: 1,
        };
        search.place(0)
    }
}

struct CanonSearch<'a> {
    color: &'a [[u8; MAX_ORDER]],
    size: usize,
    perm: [usize; MAX_ORDER],
    used: u64,
    relabel: [u8; MAX_COLORS + 1],
    next_label: u8,
}

impl CanonSearch<'_> {
    /// `false` as soon as a strictly smaller sequence is found.
    fn place(&mut self, pos: usize) -> bool {
        if pos == self.size {
            return true;
        }
        for cand in 0..self.size {
            if self.used & (1 << cand) != 0 {
                continue;
            }
            let mut fresh: [u8; MAX_COLORS] = [0; MAX_COLORS];
            let mut n_fresh = 0;
            let mut cmp = std::cmp::Ordering::Equal;
            for i in 0..pos {
                let old = self.color[self.perm[i]][cand];
                if self.relabel[old as usize] == 0 {
                    self.relabel[old as usize] = self.next_label;
                    self.next_label += 1;
                    fresh[n_fresh] = old;
                    n_fresh += 1;
                }
                let mapped = self.relabel[old as usize];
                let target = self.color[i][pos];
                cmp = mapped.cmp(&target);
                if cmp != std::cmp::Ordering::Equal {
                    break;
                }
            }
            if cmp == std::cmp::Ordering::Less {
                return false;
            }
            if cmp == std::cmp::Ordering::Equal {
                self.perm[pos] = cand;
                self.used |= 1 << cand;
                let ok = self.place(pos + 1);
                self.used &= !(1 << cand);
                if !ok {
                    return false;
                }
            }
            for &old in &fresh[..n_fresh] {
                self.relabel[old as usize] = 0;
                self.next_label -= 1;
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Found,
    Capped,
    TimedOut,
    Cancelled,
}

struct Walker<'a> {
    spec: &'a Spec,
    st: State,
    nodes: u64,
    cap: u64,
    deadline: Option<Instant>,
    cancel: Option<(&'a AtomicUsize, usize)>,
    collect_at: Option<usize>,
    frontier: Vec<Vec<u8>>,
}

impl<'a> Walker<'a> {
    fn new(spec: &'a Spec, cap: u64, deadline: Option<Instant>) -> Self {
        Walker {
            spec,
            st: State::new(spec.order),
            nodes: 0,
            cap,
            deadline,
            cancel: None,
            collect_at: None,
            frontier: Vec::new(),
        }
    }

    /// Replays an already-accepted prefix without filtering or counting.
    fn replay(&mut self, prefix: &[u8]) -> Result<(), SearchError> {
        if prefix.len() > self.spec.edges.len() {
            return Err(SearchError::Checkpoint("frontier record longer than the coloring".into()));
        }
        for (e, &c) in prefix.iter().enumerate() {
            if c == 0 || c > self.spec.k {
                return Err(SearchError::Checkpoint(format!("color {c} out of range in frontier record")));
            }
            let (i, j) = self.spec.edges[e];
            self.st.push(i, j, c);
        }
        Ok(())
    }

    fn explore(&mut self) -> Flow {
        let spec = self.spec;
        let e = self.st.seq.len();
        if e == spec.edges.len() {
            return if spec.full || self.st.complete_ok(spec) {
                Flow::Found
            } else {
                Flow::Continue
            };
        }
        if self.collect_at == Some(e) {
            self.frontier.push(self.st.seq.clone());
            return Flow::Continue;
        }
        let (i, j) = spec.edges[e];
        let top = if spec.full { spec.k.min(self.st.top_color() + 1) } else { spec.k };
        for c in 1..=top {
            self.st.push(i, j, c);
            let ok = !spec.full || (self.st.edge_ok(spec, i, j, c) && (i + 1 != j || self.st.is_canonical(j + 1)));
            if ok {
                self.nodes += 1;
                if self.nodes > self.cap {
                    return Flow::Capped;
                }
                if self.nodes & 0xfff == 0 {
                    if let Some(flow) = self.interrupted() {
                        return flow;
                    }
                }
                match self.explore() {
                    Flow::Continue => {}
                    other => return other,
                }
            }
            self.st.pop(i, j);
        }
        Flow::Continue
    }

    fn interrupted(&self) -> Option<Flow> {
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Some(Flow::TimedOut);
        }
        match self.cancel {
            Some((flag, me)) if flag.load(Ordering::Relaxed) < me => Some(Flow::Cancelled),
            _ => None,
        }
    }
}

struct ShardResult {
    nodes: u64,
    flow: Flow,
    witness: Option<Vec<u8>>,
}

fn validate_budget(budget: &Budget) -> Result<Option<Instant>, SearchError> {
    if budget.max_nodes == 0 {
        return Err(SearchError::InvalidBudget);
    }
    Ok(budget.max_time.map(|t| Instant::now() + t))
}

/// Expands the tree down to the shard depth. Small problems finish here.
pub fn start(problem: &SearchProblem, config: &SearchConfig, budget: &Budget) -> Result<Checkpoint, SearchError> {
    let deadline = validate_budget(budget)?;
    let checkpoint = |nodes_explored, status| Checkpoint {
        problem: *problem,
        pruning: config.pruning,
        shard_depth: config.shard_depth,
        nodes_explored,
        status,
    };
    // a one-color host on n + m + 2 vertices is the pattern itself
    if problem.k == 1 && problem.order >= problem.pattern.span() {
        return Ok(checkpoint(0, CheckpointStatus::Exhausted));
    }
    let spec = Spec::new(problem, config.pruning);
    let mut w = Walker::new(&spec, budget.max_nodes, deadline);
    // the root counts as a node
    w.nodes = 1;
    if spec.edges.len() > config.shard_depth {
        w.collect_at = Some(config.shard_depth);
    }
    match w.explore() {
        Flow::Found => Ok(checkpoint(w.nodes, CheckpointStatus::AvoiderFound { witness: w.st.seq })),
        Flow::Continue if w.collect_at.is_some() => Ok(checkpoint(w.nodes, CheckpointStatus::InProgress { frontier: w.frontier })),
        Flow::Continue => Ok(checkpoint(w.nodes, CheckpointStatus::Exhausted)),
        _ => Err(SearchError::Inconclusive { nodes_explored: w.nodes }),
    }
}

/// Explores up to `max_shards` of the remaining shards (all when `None`).
pub fn advance(
    mut ckpt: Checkpoint,
    problem: &SearchProblem,
    threads: Threads,
    budget: &Budget,
    max_shards: Option<usize>,
) -> Result<Checkpoint, SearchError> {
    if ckpt.problem != *problem {
        return Err(SearchError::ProblemMismatch {
            expected: problem.hash(),
            found: ckpt.problem.hash(),
        });
    }
    let deadline = validate_budget(budget)?;
    let frontier = match &mut ckpt.status {
        CheckpointStatus::InProgress { frontier } => std::mem::take(frontier),
        _ => return Ok(ckpt),
    };
    let take = max_shards.unwrap_or(frontier.len()).min(frontier.len());
    let (batch, rest) = frontier.split_at(take);
    let cap = budget.max_nodes.saturating_sub(ckpt.nodes_explored);
    let spec = Spec::new(problem, ckpt.pruning);
    let first_found = AtomicUsize::new(usize::MAX);
    let indexed: Vec<(usize, &Vec<u8>)> = batch.iter().enumerate().collect();
    let results: Vec<Result<ShardResult, SearchError>> = exec::map(threads, &indexed, |&(idx, prefix)| {
        if first_found.load(Ordering::Relaxed) < idx {
            return Ok(ShardResult {
                nodes: 0,
                flow: Flow::Cancelled,
                witness: None,
            });
        }
        let mut w = Walker::new(&spec, cap, deadline);
        w.cancel = Some((&first_found, idx));
        w.replay(prefix)?;
        let flow = w.explore();
        if flow == Flow::Found {
            first_found.fetch_min(idx, Ordering::Relaxed);
        }
        Ok(ShardResult {
            nodes: w.nodes,
            witness: (flow == Flow::Found).then(|| w.st.seq.clone()),
            flow,
        })
    });

    let mut total = ckpt.nodes_explored;
    for r in results {
        let r = r?;
        total += r.nodes;
        match r.flow {
            Flow::Capped | Flow::TimedOut => return Err(SearchError::Inconclusive { nodes_explored: total }),
            _ if total > budget.max_nodes => return Err(SearchError::Inconclusive { nodes_explored: total }),
            Flow::Found => {
                ckpt.nodes_explored = total;
                ckpt.status = CheckpointStatus::AvoiderFound {
                    witness: r.witness.expect("found shard carries its witness"),
                };
                return Ok(ckpt);
            }
            Flow::Continue => {}
            Flow::Cancelled => unreachable!("shards before the first success are never cancelled"),
        }
    }
    ckpt.nodes_explored = total;
    ckpt.status = if rest.is_empty() {
        CheckpointStatus::Exhausted
    } else {
        CheckpointStatus::InProgress { frontier: rest.to_vec() }
    };
    Ok(ckpt)
}

/// Finishes a checkpointed search.
pub fn resume(ckpt: Checkpoint, problem: &SearchProblem, threads: Threads, budget: &Budget) -> Result<SearchOutcome, SearchError> {
    let t0 = Instant::now();
    let done = advance(ckpt, problem, threads, budget, None)?;
    outcome_of(&done, t0.elapsed())
}

/// Converts a finished checkpoint into an outcome.
pub fn outcome_of(ckpt: &Checkpoint, wall_time: Duration) -> Result<SearchOutcome, SearchError> {
    let (verdict, witness) = match &ckpt.status {
        CheckpointStatus::Exhausted => (Verdict::Exhausted, None),
        CheckpointStatus::AvoiderFound { witness } => (
            Verdict::AvoiderFound,
            Some(coloring_from_columns(ckpt.problem.order, ckpt.problem.k, witness)?),
        ),
        CheckpointStatus::InProgress { .. } => {
            return Err(SearchError::Inconclusive {
                nodes_explored: ckpt.nodes_explored,
            })
        }
    };
    Ok(SearchOutcome {
        verdict,
        witness,
        nodes_explored: ckpt.nodes_explored,
        wall_time,
    })
}

/// Decides whether some coloring of `K_N` avoids the pattern (and rainbow
/// triangles in Gallai mode). Budget exhaustion is an error, never a verdict.
pub fn decide(problem: &SearchProblem, budget: &Budget, config: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    let t0 = Instant::now();
    let ckpt = start(problem, config, budget)?;
    let done = advance(ckpt, problem, config.threads, budget, None)?;
    outcome_of(&done, t0.elapsed())
}

/// Smallest `N ≤ n_max` at which no avoider exists, searching upwards.
pub fn compute_threshold(
    k: usize,
    pattern: StarUnionPattern,
    mode: Mode,
    n_max: usize,
    budget: &Budget,
    config: &SearchConfig,
) -> Result<Option<usize>, SearchError> {
    if n_max < 2 {
        return Err(SearchError::InvalidProblem(format!("n_max must be at least 2, got {n_max}")));
    }
    for order in 1..=n_max {
        let problem = SearchProblem::new(k, pattern, mode, order)?;
        if decide(&problem, budget, config)?.verdict == Verdict::Exhausted {
            return Ok(Some(order));
        }
    }
    Ok(None)
}

const CKPT_MAGIC: &[u8; 4] = b"GRCK";
const CKPT_VERSION: u16 = 1;

impl Checkpoint {
    /// Little-endian layout:
    ///
    /// ```text
    /// magic "GRCK" | version u16 | k u8 | mode u8 | n u32 | m u32 | order u32
    /// | hash u64 | pruning u8 | shard_depth u32 | nodes u64 | status u8
    /// status 0: count u32, then count × (len u16, len × color u8)
    /// status 1: nothing
    /// status 2: len u32, len × color u8 (witness, column order)
    /// ```
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut b = Vec::new();
        b.extend_from_slice(CKPT_MAGIC);
        b.extend_from_slice(&CKPT_VERSION.to_le_bytes());
        b.extend_from_slice(&self.problem.key_bytes());
        b.extend_from_slice(&self.problem.hash().to_le_bytes());
        b.push(match self.pruning {
            Pruning::Full => 0,
            Pruning::Off => 1,
        });
        b.extend_from_slice(&(self.shard_depth as u32).to_le_bytes());
        b.extend_from_slice(&self.nodes_explored.to_le_bytes());
        match &self.status {
            CheckpointStatus::InProgress { frontier } => {
                b.push(0);
                b.extend_from_slice(&(frontier.len() as u32).to_le_bytes());
                for rec in frontier {
                    b.extend_from_slice(&(rec.len() as u16).to_le_bytes());
                    b.extend_from_slice(rec);
                }
            }
            CheckpointStatus::Exhausted => b.push(1),
            CheckpointStatus::AvoiderFound { witness } => {
                b.push(2);
                b.extend_from_slice(&(witness.len() as u32).to_le_bytes());
                b.extend_from_slice(witness);
            }
        }
        b
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, SearchError> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(4)? != CKPT_MAGIC {
            return Err(SearchError::Checkpoint("bad magic".into()));
        }
        let version = r.u16()?;
        if version != CKPT_VERSION {
            return Err(SearchError::Checkpoint(format!("unsupported version {version}")));
        }
        let k = r.u8()? as usize;
        let mode = match r.u8()? {
            0 => Mode::Gallai,
            1 => Mode::Ramsey,
            other => return Err(SearchError::Checkpoint(format!("bad mode byte {other}"))),
        };
        let n = r.u32()? as usize;
        let m = r.u32()? as usize;
        let order = r.u32()? as usize;
        let pattern = StarUnionPattern::new(n, m).map_err(|e| SearchError::Checkpoint(e.to_string()))?;
        let problem = SearchProblem::new(k, pattern, mode, order)?;
        let stored_hash = r.u64()?;
        if stored_hash != problem.hash() {
            return Err(SearchError::Checkpoint("problem hash does not match header fields".into()));
        }
        let pruning = match r.u8()? {
            0 => Pruning::Full,
            1 => Pruning::Off,
            other => return Err(SearchError::Checkpoint(format!("bad pruning byte {other}"))),
        };
        let shard_depth = r.u32()? as usize;
        let nodes_explored = r.u64()?;
        let status = match r.u8()? {
            0 => {
                let count = r.u32()? as usize;
                let mut frontier = Vec::with_capacity(count.min(1 << 20));
                for _ in 0..count {
                    let len = r.u16()? as usize;
                    frontier.push(r.take(len)?.to_vec());
                }
                CheckpointStatus::InProgress { frontier }
            }
            1 => CheckpointStatus::Exhausted,
            2 => {
                let len = r.u32()? as usize;
                CheckpointStatus::AvoiderFound {
                    witness: r.take(len)?.to_vec(),
                }
            }
            other => return Err(SearchError::Checkpoint(format!("bad status byte {other}"))),
        };
        if r.pos != bytes.len() {
            return Err(SearchError::Checkpoint("trailing bytes".into()));
        }
        Ok(Checkpoint {
            problem,
            pruning,
            shard_depth,
            nodes_explored,
            status,
        })
    }

    pub fn write_to(&self, path: &Path) -> Result<(), SearchError> {
        Ok(fs::write(path, self.to_bytes())?)
    }

    pub fn read_from(path: &Path) -> Result<Self, SearchError> {
        Self::from_bytes(&fs::read(path)?)
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8], SearchError> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| SearchError::Checkpoint("truncated".into()))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8, SearchError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, SearchError> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32, SearchError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, SearchError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}
