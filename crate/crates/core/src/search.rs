//! Exhaustive search for representations, one vertex at a time.
//!
//! Colourings are grown by appending a vertex together with the colours of
//! its edges to all earlier vertices. Any completed triangle of a forbidden
//! type kills the branch. With symmetry breaking on, colours are introduced
//! in first-occurrence order and isomorphic children are suppressed by
//! canonical augmentation: a child is kept only when the appended vertex is
//! equivalent to a canonically chosen vertex, and siblings are deduplicated
//! by canonical form. Each isomorphism class at each size is then visited
//! once.
//!
//! A qualitative representation of a finite algebra can always be taken on at
//! most three points per atom, so for `n` colours the default size range is
//! `2..=3(n + 1)`. If no colouring of `K_m` avoids the forbidden triangles,
//! none of any larger complete graph does either (each contains a `K_m`); the
//! search reports this as a certificate covering all sizes and all levels.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Signature;
use crate::colouring::{EdgeColouring, Equivalence, Level};
use crate::constructions::{construct, Construction, ConstructionRequest};
use crate::error::{Error, Result};
use crate::quasigroup::Quasigroup;

/// Depth at which the tree is split into independent subtrees for workers.
const SPLIT_DEPTH: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchLimits {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Sizes to try, smallest first. Defaults to `2..=3(n + 1)`.
    pub m_range: Option<RangeInclusive<usize>>,
    pub limits: SearchLimits,
    /// Worker threads; `0` uses rayon's default.
    pub threads: usize,
    /// Forces sequential exploration.
    pub strict_determinism: bool,
    /// Colour normalization and canonical augmentation. Turning this off
    /// enumerates labelled colourings and is only practical at tiny sizes.
    pub symmetry_breaking: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            m_range: None,
            limits: SearchLimits::default(),
            threads: 1,
            strict_determinism: false,
            symmetry_breaking: true,
        }
    }
}

impl SearchOptions {
    pub fn with_max_nodes(mut self, nodes: u64) -> Self {
        self.limits.max_nodes = Some(nodes);
        self
    }

    pub fn with_range(mut self, range: RangeInclusive<usize>) -> Self {
        self.m_range = Some(range);
        self
    }
}

/// Default size bound: three points per atom.
pub fn default_max_m(n: usize) -> usize {
    3 * (n + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "limit", content = "value")]
pub enum AbortReason {
    NodeBudget(u64),
    TimeBudget(u64),
}

impl fmt::Display for AbortReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbortReason::NodeBudget(n) => write!(f, "node budget of {n} exhausted"),
            AbortReason::TimeBudget(ms) => write!(f, "time budget of {ms} ms exhausted"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchStatus {
    Found(EdgeColouring),
    /// Every size up to and including this one was searched completely.
    ExhaustedUpTo(usize),
    Aborted(AbortReason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelStatus {
    Found,
    Empty,
    /// Empty because a smaller complete graph already has no admissible colouring.
    ImpliedEmpty,
    Aborted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub m: usize,
    pub status: LevelStatus,
    pub nodes: u64,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub nodes_explored: u64,
    pub per_m: Vec<LevelRecord>,
    /// Set when some `K_m` has no colouring avoiding the forbidden triangles,
    /// which rules out representations of every size at every level.
    pub exhausted_all_sizes: bool,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&EdgeColouring> {
        match &self.status {
            SearchStatus::Found(c) => Some(c),
            _ => None,
        }
    }

    /// Whether the outcome proves that no representation exists at all.
    pub fn certifies_nonexistence(&self, sig: Signature, level: Level) -> bool {
        match self.status {
            SearchStatus::ExhaustedUpTo(m) => {
                self.exhausted_all_sizes
                    || (level == Level::Qualitative && m >= default_max_m(sig.n()))
            }
            _ => false,
        }
    }

    /// One JSON object per searched size.
    pub fn transcript(&self) -> String {
        self.per_m
            .iter()
            .map(|r| serde_json::to_string(r).expect("plain data serializes") + "\n")
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Canonical forms, sorted.
    pub colourings: Vec<EdgeColouring>,
    /// Set when a budget ran out; the list is then incomplete.
    pub partial: bool,
    pub nodes: u64,
}

#[derive(Clone)]
struct Node {
    col: EdgeColouring,
    used: usize,
    realized: Vec<bool>,
    missing: usize,
}

struct Budget {
    nodes: AtomicU64,
    aborted: AtomicBool,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    max_time: Option<Duration>,
}

impl Budget {
    fn new(limits: SearchLimits) -> Self {
        Budget {
            nodes: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
            max_nodes: limits.max_nodes,
            deadline: limits.max_time.map(|t| Instant::now() + t),
            max_time: limits.max_time,
        }
    }

    /// Counts one node; false once any limit is hit.
    fn tick(&self) -> bool {
        if self.aborted.load(Ordering::Relaxed) {
            return false;
        }
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.max_nodes.is_some_and(|max| count > max);
        let over_time =
            count.is_multiple_of(256) && self.deadline.is_some_and(|d| Instant::now() > d);
        if over_nodes || over_time {
            self.aborted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn is_aborted(&self) -> bool {
        self.aborted.load(Ordering::Relaxed)
    }

    fn count(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    fn reason(&self) -> AbortReason {
        match (self.max_nodes, self.max_time) {
            (Some(max), _) if self.count() > max => AbortReason::NodeBudget(max),
            (_, Some(t)) => AbortReason::TimeBudget(t.as_millis() as u64),
            (Some(max), None) => AbortReason::NodeBudget(max),
            (None, None) => AbortReason::NodeBudget(u64::MAX),
        }
    }
}

struct Ctx<'a> {
    sig: Signature,
    /// `None` searches for any colouring avoiding forbidden triangles.
    level: Option<Level>,
    m: usize,
    n: usize,
    symmetry: bool,
    required_id: Vec<u16>,
    required_count: usize,
    budget: &'a Budget,
}

const NOT_REQUIRED: u16 = u16::MAX;

fn choose2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

fn choose3(k: usize) -> usize {
    if k < 3 {
        0
    } else {
        k * (k - 1) * (k - 2) / 6
    }
}

impl<'a> Ctx<'a> {
    fn new(
        sig: Signature,
        level: Option<Level>,
        m: usize,
        symmetry: bool,
        budget: &'a Budget,
    ) -> Self {
        let n = sig.n();
        let mut required_id = vec![NOT_REQUIRED; n * n * n];
        let required = sig.required_multisets();
        for (id, [a, b, c]) in required.iter().enumerate() {
            required_id[((a - 1) * n + b - 1) * n + c - 1] = id as u16;
        }
        Ctx {
            sig,
            level,
            m,
            n,
            symmetry,
            required_id,
            required_count: required.len(),
            budget,
        }
    }

    fn root(&self) -> Node {
        Node {
            col: EdgeColouring::from_raw(1, self.n, Vec::new()),
            used: 0,
            realized: vec![false; self.required_count],
            missing: self.required_count,
        }
    }

    fn multiset_id(&self, a: usize, b: usize, c: usize) -> u16 {
        let mut t = [a, b, c];
        t.sort_unstable();
        let n = self.n;
        self.required_id[((t[0] - 1) * n + t[1] - 1) * n + t[2] - 1]
    }

    /// All rows for a new vertex that create no forbidden triangle, in
    /// lexicographic order. Each row counts as one node against the budget;
    /// the list is cut short once the budget runs out.
    fn rows(&self, node: &Node) -> Vec<Vec<usize>> {
        let k = node.col.vertex_count();
        let mut out = Vec::new();
        let mut row = vec![0usize; k];
        self.extend_row(node, &mut row, 0, node.used, &mut out);
        out
    }

    fn extend_row(
        &self,
        node: &Node,
        row: &mut Vec<usize>,
        i: usize,
        used: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if self.budget.is_aborted() {
            return;
        }
        if i == row.len() {
            if self.budget.tick() {
                out.push(row.clone());
            }
            return;
        }
        let limit = if self.symmetry {
            (used + 1).min(self.n)
        } else {
            self.n
        };
        for c in 1..=limit {
            if (0..i).all(|j| self.sig.allows(node.col.colour(j, i), c, row[j])) {
                row[i] = c;
                self.extend_row(node, row, i + 1, used.max(c), out);
            }
        }
    }

    fn child(&self, node: &Node, row: &[usize]) -> Option<Node> {
        let k = node.col.vertex_count();
        let used = row.iter().copied().fold(node.used, usize::max);
        let mut realized = node.realized.clone();
        let mut missing = node.missing;
        for i in 0..k {
            for j in 0..i {
                let id = self.multiset_id(node.col.colour(j, i), row[i], row[j]);
                if id != NOT_REQUIRED && !realized[id as usize] {
                    realized[id as usize] = true;
                    missing -= 1;
                }
            }
        }
        if let Some(level) = self.level {
            let size = k + 1;
            let distinct_used = if self.symmetry {
                used
            } else {
                let mut seen = vec![false; self.n + 1];
                node.col.raw().iter().for_each(|&c| seen[c as usize] = true);
                row.iter().for_each(|&c| seen[c] = true);
                seen.iter().filter(|&&s| s).count()
            };
            if self.n - distinct_used > choose2(self.m) - choose2(size) {
                return None;
            }
            if level >= Level::Qualitative && missing > choose3(self.m) - choose3(size) {
                return None;
            }
        }
        let col = node.col.extended(row).expect("row colours are in range");
        Some(Node {
            col,
            used,
            realized,
            missing,
        })
    }

    /// Accepted children of `node`, in row order, one per isomorphism class
    /// when symmetry breaking is on.
    fn children(&self, node: &Node) -> Vec<Node> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for row in self.rows(node) {
            let Some(child) = self.child(node, &row) else {
                continue;
            };
            if self.symmetry {
                match accept(&child.col) {
                    Some(canon) => {
                        if !seen.insert(canon) {
                            continue;
                        }
                    }
                    None => continue,
                }
            }
            out.push(child);
        }
        out
    }

    fn is_solution(&self, node: &Node) -> bool {
        match self.level {
            None => true,
            Some(level) => {
                node.col
                    .verify(self.sig, level)
                    .expect("search colourings share the signature's colour count")
                    .passed
            }
        }
    }

    fn find(&self, node: &Node) -> Option<EdgeColouring> {
        if node.col.vertex_count() == self.m {
            return self.is_solution(node).then(|| node.col.clone());
        }
        for child in self.children(node) {
            if self.budget.is_aborted() {
                return None;
            }
            if let Some(found) = self.find(&child) {
                return Some(found);
            }
        }
        None
    }

    fn collect(&self, node: &Node, out: &mut Vec<EdgeColouring>) {
        if node.col.vertex_count() == self.m {
            if self.is_solution(node) {
                out.push(node.col.clone());
            }
            return;
        }
        for child in self.children(node) {
            if self.budget.is_aborted() {
                return;
            }
            self.collect(&child, out);
        }
    }

    /// Nodes at `depth` (or solutions-in-waiting at `self.m` if shallower),
    /// in the order the sequential search would meet them.
    fn frontier(&self, node: Node, depth: usize, out: &mut Vec<Node>) {
        if node.col.vertex_count() >= depth {
            out.push(node);
            return;
        }
        for child in self.children(&node) {
            if self.budget.is_aborted() {
                return;
            }
            self.frontier(child, depth, out);
        }
    }
}

fn vertex_invariant(col: &EdgeColouring, v: usize) -> Vec<u16> {
    let mut counts = vec![0u16; col.colour_count()];
    for w in (0..col.vertex_count()).filter(|&w| w != v) {
        counts[col.colour(v, w) - 1] += 1;
    }
    counts.sort_unstable_by(|a, b| b.cmp(a));
    counts
}

/// Canonical-augmentation test for the last vertex of `col`; returns the
/// canonical form when accepted.
fn accept(col: &EdgeColouring) -> Option<EdgeColouring> {
    let m = col.vertex_count();
    let v = m - 1;
    let invariants: Vec<Vec<u16>> = (0..m).map(|x| vertex_invariant(col, x)).collect();
    let best = invariants.iter().max().expect("nonempty");
    if invariants[v] != *best {
        return None;
    }
    let (canon, order) = col.canonical_with_order(Equivalence::VertexAndColour);
    let w = *order
        .iter()
        .rev()
        .find(|&&x| invariants[x] == *best)
        .expect("some vertex attains the maximum");
    if w == v {
        return Some(canon);
    }
    let others = |skip: usize| -> Vec<usize> { (0..m).filter(|&x| x != skip).collect() };
    let without_v = col
        .induced(&others(v))
        .canonical_form(Equivalence::VertexAndColour);
    let without_w = col
        .induced(&others(w))
        .canonical_form(Equivalence::VertexAndColour);
    (without_v == without_w).then_some(canon)
}

fn run_parallel<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(job),
        Err(_) => job(),
    }
}

fn sequential(options: &SearchOptions) -> bool {
    options.strict_determinism || options.threads == 1
}

/// Whether any colouring of `K_m` with at most `n` colours avoids every
/// forbidden triangle type. `None` when the budget ran out first.
fn admissible_exists(
    sig: Signature,
    m: usize,
    options: &SearchOptions,
    budget: &Budget,
) -> Option<bool> {
    let ctx = Ctx::new(sig, None, m, options.symmetry_breaking, budget);
    let found = ctx.find(&ctx.root()).is_some();
    if found {
        Some(true)
    } else if budget.is_aborted() {
        None
    } else {
        Some(false)
    }
}

fn search_level(ctx: &Ctx<'_>, options: &SearchOptions) -> Option<EdgeColouring> {
    let root = ctx.root();
    if sequential(options) || ctx.m <= SPLIT_DEPTH {
        return ctx.find(&root);
    }
    let mut frontier = Vec::new();
    ctx.frontier(root, SPLIT_DEPTH, &mut frontier);
    if ctx.budget.is_aborted() {
        return None;
    }
    run_parallel(options.threads, || {
        frontier.par_iter().find_map_first(|node| ctx.find(node))
    })
}

/// Looks for a colouring of some `K_m` representing `sig` at `level`,
/// trying sizes in increasing order.
pub fn search(sig: Signature, level: Level, options: &SearchOptions) -> Result<SearchOutcome> {
    let range = options
        .m_range
        .clone()
        .unwrap_or(2..=default_max_m(sig.n()));
    if *range.start() < 2 || range.is_empty() {
        return Err(Error::Precondition(format!(
            "size range {}..={} must start at 2 or more and be nonempty",
            range.start(),
            range.end()
        )));
    }
    let budget = Budget::new(options.limits);
    let mut per_m = Vec::new();
    let mut all_sizes = false;
    for m in range.clone() {
        let start = Instant::now();
        let before = budget.count();
        let record = |status, budget: &Budget| LevelRecord {
            m,
            status,
            nodes: budget.count() - before,
            seconds: start.elapsed().as_secs_f64(),
        };
        if all_sizes {
            per_m.push(LevelRecord {
                m,
                status: LevelStatus::ImpliedEmpty,
                nodes: 0,
                seconds: 0.0,
            });
            continue;
        }
        let ctx = Ctx::new(sig, Some(level), m, options.symmetry_breaking, &budget);
        if let Some(found) = search_level(&ctx, options) {
            let report = found.verify(sig, level)?;
            assert!(
                report.passed,
                "search returned a colouring that fails verification"
            );
            per_m.push(record(LevelStatus::Found, &budget));
            return Ok(SearchOutcome {
                status: SearchStatus::Found(found),
                nodes_explored: budget.count(),
                per_m,
                exhausted_all_sizes: false,
            });
        }
        if budget.is_aborted() {
            per_m.push(record(LevelStatus::Aborted, &budget));
            return Ok(SearchOutcome {
                status: SearchStatus::Aborted(budget.reason()),
                nodes_explored: budget.count(),
                per_m,
                exhausted_all_sizes: false,
            });
        }
        match admissible_exists(sig, m, options, &budget) {
            Some(false) => all_sizes = true,
            Some(true) => {}
            None => {
                per_m.push(record(LevelStatus::Aborted, &budget));
                return Ok(SearchOutcome {
                    status: SearchStatus::Aborted(budget.reason()),
                    nodes_explored: budget.count(),
                    per_m,
                    exhausted_all_sizes: false,
                });
            }
        }
        per_m.push(record(LevelStatus::Empty, &budget));
    }
    Ok(SearchOutcome {
        status: SearchStatus::ExhaustedUpTo(*range.end()),
        nodes_explored: budget.count(),
        per_m,
        exhausted_all_sizes: all_sizes,
    })
}

/// All representations of `sig` at `level` on exactly `m` vertices, up to
/// vertex and colour relabelling.
pub fn enumerate(
    sig: Signature,
    level: Level,
    m: usize,
    options: &SearchOptions,
) -> Result<Enumeration> {
    if m < 1 {
        return Err(Error::Precondition("need at least one vertex".into()));
    }
    let budget = Budget::new(options.limits);
    let ctx = Ctx::new(sig, Some(level), m, options.symmetry_breaking, &budget);
    let mut found = Vec::new();
    let root = ctx.root();
    if sequential(options) || m <= SPLIT_DEPTH {
        ctx.collect(&root, &mut found);
    } else {
        let mut frontier = Vec::new();
        ctx.frontier(root, SPLIT_DEPTH, &mut frontier);
        let parts: Vec<Vec<EdgeColouring>> = run_parallel(options.threads, || {
            frontier
                .par_iter()
                .map(|node| {
                    let mut part = Vec::new();
                    ctx.collect(node, &mut part);
                    part
                })
                .collect()
        });
        found = parts.concat();
    }
    let canonical: BTreeSet<EdgeColouring> = found
        .iter()
        .map(|c| c.canonical_form(Equivalence::VertexAndColour))
        .collect();
    Ok(Enumeration {
        colourings: canonical.into_iter().collect(),
        partial: budget.is_aborted(),
        nodes: budget.count(),
    })
}

/// Every commutative idempotent quasigroup on `0..order`, as labelled tables.
pub fn commutative_idempotent_quasigroups(order: usize) -> Vec<Quasigroup> {
    fn fill(
        t: &mut Vec<Vec<usize>>,
        cells: &[(usize, usize)],
        idx: usize,
        out: &mut Vec<Quasigroup>,
    ) {
        let n = t.len();
        if idx == cells.len() {
            out.push(Quasigroup::from_table(t.clone()).expect("square table in range"));
            return;
        }
        let (i, j) = cells[idx];
        for v in 0..n {
            let clash = (0..n).any(|k| (k != j && t[i][k] == v) || (k != i && t[k][j] == v))
                || (0..n).any(|k| (k != i && t[j][k] == v) || (k != j && t[k][i] == v));
            if !clash {
                t[i][j] = v;
                t[j][i] = v;
                fill(t, cells, idx + 1, out);
                t[i][j] = usize::MAX;
                t[j][i] = usize::MAX;
            }
        }
    }
    let mut t = vec![vec![usize::MAX; order]; order];
    for (i, row) in t.iter_mut().enumerate() {
        row[i] = i;
    }
    let cells: Vec<(usize, usize)> = (0..order)
        .flat_map(|i| (i + 1..order).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    fill(&mut t, &cells, 0, &mut out);
    out
}

/// How one cell of the summary table was settled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum Verdict {
    Constructed {
        vertices: usize,
    },
    Found {
        vertices: usize,
    },
    /// No representation exists at all.
    Certified {
        up_to: usize,
    },
    /// None on at most `up_to` points; larger bases were not ruled out.
    Exhausted {
        up_to: usize,
    },
    OutOfScope,
    Unknown,
    /// Search and the constructions disagree.
    Conflict,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Constructed { vertices } => write!(f, "Constructed(m={vertices})"),
            Verdict::Found { vertices } => write!(f, "Search(m={vertices})"),
            Verdict::Certified { up_to } => write!(f, "Certified(m<={up_to})"),
            Verdict::Exhausted { up_to } => write!(f, "Exhausted(m<={up_to})"),
            Verdict::OutOfScope => f.write_str("OutOfScope"),
            Verdict::Unknown => f.write_str("Unknown(budget)"),
            Verdict::Conflict => f.write_str("Conflict"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub n: usize,
    pub level: Level,
    pub verdict: Verdict,
}

/// Settles one cell: by construction when possible, otherwise by search.
pub fn certify_cell(sig: Signature, level: Level, options: &SearchOptions) -> Result<Verdict> {
    let settled_no = match construct(ConstructionRequest { sig, level }) {
        Construction::Built(c) => {
            return Ok(Verdict::Constructed {
                vertices: c.vertex_count(),
            })
        }
        Construction::NotConstructible { settled: false, .. } => return Ok(Verdict::OutOfScope),
        Construction::NotConstructible { settled: true, .. } => true,
        Construction::DelegatedToSearch { .. } => false,
    };
    let outcome = search(sig, level, options)?;
    Ok(match &outcome.status {
        SearchStatus::Found(_) if settled_no => Verdict::Conflict,
        SearchStatus::Found(c) => Verdict::Found {
            vertices: c.vertex_count(),
        },
        SearchStatus::ExhaustedUpTo(m) if outcome.certifies_nonexistence(sig, level) => {
            Verdict::Certified { up_to: *m }
        }
        SearchStatus::ExhaustedUpTo(m) => Verdict::Exhausted { up_to: *m },
        SearchStatus::Aborted(_) => Verdict::Unknown,
    })
}

/// One row of the summary table: a type set and every `(n, level)` cell.
pub fn certify_summary_row(
    s: &[usize],
    n_range: RangeInclusive<usize>,
    options: &SearchOptions,
) -> Result<Vec<TableCell>> {
    let mut cells = Vec::new();
    for n in n_range {
        let sig = Signature::new(s, n)?;
        let mut verdicts = Vec::with_capacity(Level::ALL.len());
        for level in Level::ALL {
            verdicts.push(certify_cell(sig, level, options)?);
        }
        // A strong representation is qualitative, so a qualitative
        // certificate settles the strong cell as well.
        if let Verdict::Certified { up_to } = verdicts[1] {
            verdicts[2] = match verdicts[2] {
                Verdict::Exhausted { .. } | Verdict::Unknown => Verdict::Certified { up_to },
                Verdict::Constructed { .. } | Verdict::Found { .. } => Verdict::Conflict,
                ref other => other.clone(),
            };
        }
        for (level, verdict) in Level::ALL.into_iter().zip(verdicts) {
            cells.push(TableCell { n, level, verdict });
        }
    }
    Ok(cells)
}

/// Type sets in the order the table lists them.
pub const TABLE_ROWS: [&[usize]; 8] =
    [&[1, 2, 3], &[2, 3], &[1, 3], &[1, 2], &[3], &[2], &[1], &[]];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryTable {
    pub max_n: usize,
    pub rows: Vec<(Vec<usize>, Vec<TableCell>)>,
}

pub fn summary_table(max_n: usize, options: &SearchOptions) -> Result<SummaryTable> {
    let mut rows = Vec::new();
    for s in TABLE_ROWS {
        rows.push((s.to_vec(), certify_summary_row(s, 1..=max_n, options)?));
    }
    Ok(SummaryTable { max_n, rows })
}

impl SummaryTable {
    pub fn cell(&self, s: &[usize], n: usize, level: Level) -> Option<&Verdict> {
        self.rows
            .iter()
            .find(|(row, _)| row == s)
            .and_then(|(_, cells)| cells.iter().find(|c| c.n == n && c.level == level))
            .map(|c| &c.verdict)
    }

    /// Plain-text rendering; contains no timings, so it is reproducible.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let width = 20;
        let mut header = format!("{:<10}{:<13}", "S", "level");
        for n in 1..=self.max_n {
            header.push_str(&format!("{:<width$}", format!("n={n}")));
        }
        out.push_str(header.trim_end());
        out.push('\n');
        for (s, cells) in &self.rows {
            let name = format!(
                "{{{}}}",
                s.iter()
                    .map(|k| k.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            for level in Level::ALL {
                let mut line = format!("{name:<10}{:<13}", level.as_str());
                for n in 1..=self.max_n {
                    let v = cells
                        .iter()
                        .find(|c| c.n == n && c.level == level)
                        .map(|c| c.verdict.to_string())
                        .unwrap_or_default();
                    line.push_str(&format!("{v:<width$}"));
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
        }
        if let Some(v) = self.cell(&[1, 3], 3, Level::Qualitative) {
            out.push_str(&format!(
                "note: S={{1,3}}, n=3, qualitative decided by exhaustive search: {v}\n"
            ));
        }
        out
    }
}
