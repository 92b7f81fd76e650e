//! Exhaustive isomorph-free generation of connected k-regular graphs at
//! desk scale, plus ingestion of externally produced graph6 corpora.
//!
//! The generator grows graphs one vertex at a time in the encoding's own
//! column order and keeps a partial labeling only while it is canonically
//! minimal. Minimality is prefix-hereditary for this order: relabeling a
//! prefix to something smaller and fixing the remaining vertices would
//! shrink the full encoding at a bit inside the prefix columns, so every
//! canonical graph is reached through canonical prefixes and each
//! isomorphism class surfaces exactly once, already canonically labeled.
//! Leaves therefore stream out in strictly ascending canonical order.
//!
//! A deliberately separate oracle, [`naive_connected_k_regular`], decides
//! adjacency-matrix entries pair by pair in row-major order and dedupes
//! the labeled survivors afterwards. It shares no search logic with the
//! orderly generator, which is the point: agreement between the two on
//! overlapping sizes is the correctness evidence for both.

use std::io::{self, BufRead};
use std::ops::ControlFlow;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::is_canonically_labeled;
use crate::graph::{bit_indices, full_mask, Graph, MAX_VERTICES};
use crate::graph6::{self, Graph6Error};
use crate::hamilton::{hamiltonian_cycle, hamiltonian_path};
use crate::structure::{components_within, is_connected, is_two_connected, reachable_within};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("cannot enumerate graphs on zero vertices")]
    ZeroVertices,
    #[error("{n} vertices exceeds the supported {MAX_VERTICES}")]
    TooManyVertices { n: usize },
    #[error("degree {k} needs more than {n} vertices")]
    DegreeBound { k: usize, n: usize },
}

/// Post-generation predicate on emitted graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFilter {
    Connected,
    TwoConnected,
    Hamiltonian,
    NonHamiltonian,
    HasHamiltonPath,
    NoHamiltonPath,
}

impl GraphFilter {
    pub fn accepts(&self, g: &Graph) -> bool {
        match self {
            GraphFilter::Connected => is_connected(g),
            GraphFilter::TwoConnected => is_two_connected(g),
            GraphFilter::Hamiltonian => hamiltonian_cycle(g).is_some(),
            GraphFilter::NonHamiltonian => hamiltonian_cycle(g).is_none(),
            GraphFilter::HasHamiltonPath => hamiltonian_path(g).is_some(),
            GraphFilter::NoHamiltonPath => hamiltonian_path(g).is_none(),
        }
    }
}

/// One enumeration request: all connected k-regular graphs on n vertices
/// up to isomorphism, optionally filtered and capped.
#[derive(Debug, Clone)]
pub struct EnumerationTask {
    pub k: usize,
    pub n: usize,
    pub filters: Vec<GraphFilter>,
    pub limit: Option<usize>,
}

impl EnumerationTask {
    pub fn new(k: usize, n: usize) -> EnumerationTask {
        EnumerationTask {
            k,
            n,
            filters: Vec::new(),
            limit: None,
        }
    }

    /// Odd degree sum: no k-regular graph on n vertices exists at all.
    pub fn parity_infeasible(&self) -> bool {
        self.k % 2 == 1 && self.n % 2 == 1
    }

    fn validate(&self) -> Result<(), EnumerateError> {
        if self.n == 0 {
            return Err(EnumerateError::ZeroVertices);
        }
        if self.n > MAX_VERTICES {
            return Err(EnumerateError::TooManyVertices { n: self.n });
        }
        if self.k >= self.n {
            return Err(EnumerateError::DegreeBound { k: self.k, n: self.n });
        }
        Ok(())
    }

    fn accepts(&self, g: &Graph) -> bool {
        self.filters.iter().all(|f| f.accepts(g))
    }
}

/// Streams the task's graphs in ascending canonical order through `f`,
/// sequentially. Returns how many graphs were emitted; `f` can stop the
/// stream early, and `limit` caps emission after filtering.
pub fn for_each_connected_k_regular(
    task: &EnumerationTask,
    mut f: impl FnMut(&Graph) -> ControlFlow<()>,
) -> Result<u64, EnumerateError> {
    task.validate()?;
    if task.parity_infeasible() {
        return Ok(0);
    }
    let mut emitted = 0u64;
    let mut sink = |g: &Graph| -> ControlFlow<()> {
        if !task.accepts(g) {
            return ControlFlow::Continue(());
        }
        emitted += 1;
        let flow = f(g);
        match task.limit {
            Some(limit) if emitted >= limit as u64 => ControlFlow::Break(()),
            _ => flow,
        }
    };
    let mut gen = Gen::fresh(task.k, task.n);
    let _ = gen.dfs(&mut sink);
    Ok(emitted)
}

/// Collects the task's graphs in ascending canonical order.
pub fn enumerate_connected_k_regular(
    task: &EnumerationTask,
) -> Result<Vec<Graph>, EnumerateError> {
    let mut out = Vec::new();
    for_each_connected_k_regular(task, |g| {
        out.push(g.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Feeds every graph of the task to `f` from parallel workers. The call
/// order is nondeterministic but the multiset of graphs is exactly the
/// sequential stream's; `limit` is not supported here because a cap only
/// makes sense on an ordered stream.
pub fn par_for_each_connected_k_regular(
    task: &EnumerationTask,
    f: impl Fn(&Graph) + Sync,
) -> Result<u64, EnumerateError> {
    assert!(
        task.limit.is_none(),
        "limits require the sequential, ordered stream"
    );
    task.validate()?;
    if task.parity_infeasible() {
        return Ok(0);
    }
    // Grow the search tree sequentially to a shallow frontier, then hand
    // the disjoint subtrees to the thread pool.
    let depth = frontier_depth(task.n);
    let mut frontier = Vec::new();
    let mut gen = Gen::fresh(task.k, task.n);
    gen.collect_frontier(depth, &mut frontier);
    let count = AtomicU64::new(0);
    frontier.into_par_iter().for_each(|state| {
        let mut gen = Gen::resume(task.k, task.n, state);
        let mut sink = |g: &Graph| -> ControlFlow<()> {
            if task.accepts(g) {
                count.fetch_add(1, Ordering::Relaxed);
                f(g);
            }
            ControlFlow::Continue(())
        };
        let _ = gen.dfs(&mut sink);
    });
    Ok(count.load(Ordering::Relaxed))
}

/// Number of connected k-regular graphs on n vertices up to isomorphism.
pub fn count_connected_k_regular(k: usize, n: usize) -> Result<u64, EnumerateError> {
    par_for_each_connected_k_regular(&EnumerationTask::new(k, n), |_| {})
}

fn frontier_depth(n: usize) -> usize {
    // Deep enough to feed every worker, shallow enough that the
    // sequential prefix pass stays negligible.
    if n <= 7 {
        n
    } else {
        n - 4
    }
}

struct GenState {
    rows: Vec<u64>,
    degs: Vec<usize>,
}

struct Gen {
    k: usize,
    n: usize,
    rows: Vec<u64>,
    degs: Vec<usize>,
}

impl Gen {
    fn fresh(k: usize, n: usize) -> Gen {
        Gen {
            k,
            n,
            rows: vec![0],
            degs: vec![0],
        }
    }

    fn resume(k: usize, n: usize, state: GenState) -> Gen {
        Gen {
            k,
            n,
            rows: state.rows,
            degs: state.degs,
        }
    }

    fn dfs(&mut self, sink: &mut impl FnMut(&Graph) -> ControlFlow<()>) -> ControlFlow<()> {
        let j = self.rows.len();
        if j == self.n {
            debug_assert!(self.degs.iter().all(|&d| d == self.k));
            if reachable_within(&self.rows, 0, full_mask(j)) == full_mask(j) {
                return sink(&Graph::from_rows_unchecked(j, &self.rows));
            }
            return ControlFlow::Continue(());
        }
        for col in self.columns() {
            self.push(col);
            let flow = if self.extendable() && is_canonically_labeled(j + 1, &self.rows) {
                self.dfs(sink)
            } else {
                ControlFlow::Continue(())
            };
            self.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Walks the tree only to `depth` vertices and stores the surviving
    /// states instead of recursing further.
    fn collect_frontier(&mut self, depth: usize, out: &mut Vec<GenState>) {
        let j = self.rows.len();
        if j == depth {
            out.push(GenState {
                rows: self.rows.clone(),
                degs: self.degs.clone(),
            });
            return;
        }
        for col in self.columns() {
            self.push(col);
            if self.extendable() && is_canonically_labeled(j + 1, &self.rows) {
                self.collect_frontier(depth, out);
            }
            self.pop();
        }
    }

    /// Candidate adjacency columns for the next vertex, in ascending
    /// encoding order: the bit toward vertex 0 is decided first and 0
    /// sorts before 1.
    fn columns(&self) -> Vec<u64> {
        let j = self.rows.len();
        let future = self.n - j - 1;
        let wmin = self.k.saturating_sub(future);
        let mut out = Vec::new();
        self.build_column(0, 0, 0, wmin, &mut out);
        out
    }

    fn build_column(&self, i: usize, col: u64, w: usize, wmin: usize, out: &mut Vec<u64>) {
        let j = self.rows.len();
        if w + (j - i) < wmin {
            return;
        }
        if i == j {
            out.push(col);
            return;
        }
        self.build_column(i + 1, col, w, wmin, out);
        if w < self.k && self.degs[i] < self.k {
            self.build_column(i + 1, col | (1 << i), w + 1, wmin, out);
        }
    }

    fn push(&mut self, col: u64) {
        let j = self.rows.len();
        for i in bit_indices(col) {
            self.rows[i] |= 1 << j;
            self.degs[i] += 1;
        }
        self.rows.push(col);
        self.degs.push(col.count_ones() as usize);
    }

    fn pop(&mut self) {
        let col = self.rows.pop().expect("pop matches push");
        self.degs.pop();
        let j = self.rows.len();
        for i in bit_indices(col) {
            self.rows[i] &= !(1 << j);
            self.degs[i] -= 1;
        }
    }

    /// Necessary conditions for the current partial graph to extend to a
    /// connected k-regular graph on n vertices.
    fn extendable(&self) -> bool {
        let j = self.rows.len();
        let m = self.n - j;
        let mut deficiency = 0usize;
        for &d in &self.degs {
            let def = self.k - d;
            // Each future vertex can serve a current vertex at most once.
            if def > m {
                return false;
            }
            deficiency += def;
        }
        // Crossing edges x and internal future edges y satisfy
        // x = deficiency and x + 2y = k·m, within simple-graph capacity.
        let supply = self.k * m;
        if deficiency > supply || (supply - deficiency) % 2 != 0 {
            return false;
        }
        if m > 0 && supply - deficiency > m * (m - 1) {
            return false;
        }
        if m > 0 {
            // A component whose vertices are all saturated can never reach
            // the vertices still to come.
            let mut saturated = 0u64;
            for (i, &d) in self.degs.iter().enumerate() {
                if d == self.k {
                    saturated |= 1 << i;
                }
            }
            if saturated != 0 {
                for comp in components_within(&self.rows, full_mask(j)) {
                    if comp & !saturated == 0 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Streams every connected graph on `n` vertices, one per isomorphism
/// class, in ascending canonical order. Same orderly scheme as the
/// regular generator minus the degree bookkeeping, so no feasibility
/// pruning applies and the tree is pruned by canonicity alone. Class
/// counts grow superexponentially; n = 10 is the practical ceiling.
pub fn for_each_connected_graph(
    n: usize,
    mut f: impl FnMut(&Graph) -> ControlFlow<()>,
) -> Result<u64, EnumerateError> {
    validate_order(n)?;
    let mut emitted = 0u64;
    let mut sink = |g: &Graph| -> ControlFlow<()> {
        emitted += 1;
        f(g)
    };
    let mut gen = AllGen { n, rows: vec![0] };
    let _ = gen.dfs(&mut sink);
    Ok(emitted)
}

/// Parallel counterpart of [`for_each_connected_graph`]: nondeterministic
/// call order, same multiset of graphs.
pub fn par_for_each_connected_graph(
    n: usize,
    f: impl Fn(&Graph) + Sync,
) -> Result<u64, EnumerateError> {
    validate_order(n)?;
    let depth = frontier_depth(n);
    let mut frontier = Vec::new();
    let mut gen = AllGen { n, rows: vec![0] };
    gen.collect_frontier(depth, &mut frontier);
    let count = AtomicU64::new(0);
    frontier.into_par_iter().for_each(|rows| {
        let mut gen = AllGen { n, rows };
        let mut sink = |g: &Graph| -> ControlFlow<()> {
            count.fetch_add(1, Ordering::Relaxed);
            f(g);
            ControlFlow::Continue(())
        };
        let _ = gen.dfs(&mut sink);
    });
    Ok(count.load(Ordering::Relaxed))
}

fn validate_order(n: usize) -> Result<(), EnumerateError> {
    if n == 0 {
        return Err(EnumerateError::ZeroVertices);
    }
    if n > MAX_VERTICES {
        return Err(EnumerateError::TooManyVertices { n });
    }
    Ok(())
}

struct AllGen {
    n: usize,
    rows: Vec<u64>,
}

impl AllGen {
    fn dfs(&mut self, sink: &mut impl FnMut(&Graph) -> ControlFlow<()>) -> ControlFlow<()> {
        let j = self.rows.len();
        if j == self.n {
            if reachable_within(&self.rows, 0, full_mask(j)) == full_mask(j) {
                return sink(&Graph::from_rows_unchecked(j, &self.rows));
            }
            return ControlFlow::Continue(());
        }
        self.descend(0, 0, &mut |gen| gen.dfs(sink))
    }

    fn collect_frontier(&mut self, depth: usize, out: &mut Vec<Vec<u64>>) {
        if self.rows.len() == depth {
            out.push(self.rows.clone());
            return;
        }
        let _ = self.descend(0, 0, &mut |gen| {
            gen.collect_frontier(depth, out);
            ControlFlow::Continue(())
        });
    }

    /// Tries every adjacency column for the next vertex in ascending
    /// encoding order (bit toward vertex 0 decided first, 0 before 1),
    /// recursing through `next` on the canonically labeled extensions.
    fn descend(
        &mut self,
        i: usize,
        col: u64,
        next: &mut impl FnMut(&mut AllGen) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let j = self.rows.len();
        if i == j {
            for b in bit_indices(col) {
                self.rows[b] |= 1 << j;
            }
            self.rows.push(col);
            let flow = if is_canonically_labeled(j + 1, &self.rows) {
                next(self)
            } else {
                ControlFlow::Continue(())
            };
            self.rows.pop();
            for b in bit_indices(col) {
                self.rows[b] &= !(1 << j);
            }
            return flow;
        }
        self.descend(i + 1, col, next)?;
        self.descend(i + 1, col | (1 << i), next)
    }
}

/// Independent oracle for cross-checking the orderly generator: decides
/// each adjacency-matrix entry in row-major pair order with degree
/// feasibility pruning, then dedupes the connected labeled survivors by
/// keeping exactly the canonically labeled ones. The result certifies its
/// own completeness: each kept graph is verified to be its canonical
/// form's fixed point (so no class appears twice), and the orbit-size
/// identity sum of n!/|Aut| over kept graphs = number of connected
/// labeled survivors proves no class was dropped. Exponential in
/// labeled-graph count; meant for n around 10 and below.
pub fn naive_connected_k_regular(k: usize, n: usize) -> Result<Vec<Graph>, EnumerateError> {
    let task = EnumerationTask::new(k, n);
    task.validate()?;
    let (labeled, mut survivors) = naive_scan(k, n, true);
    survivors.sort_by_key(graph6::encode);
    let mut orbit_sum = 0u64;
    let factorial: u64 = (1..=n as u64).product();
    for g in &survivors {
        let form = crate::canon::canonical_form(g);
        assert_eq!(
            form.bytes,
            graph6::encode(g).into_bytes(),
            "kept labeling is not the canonical fixed point"
        );
        orbit_sum += factorial / crate::canon::automorphism_count(g);
    }
    assert_eq!(
        orbit_sum, labeled,
        "orbit sizes of kept graphs do not cover the labeled survivors"
    );
    Ok(survivors)
}

/// Labeled count companion to the naive oracle: how many connected
/// k-regular graphs exist on n *labeled* vertices. Ties enumeration to
/// the automorphism counter through the orbit-size identity
/// sum over classes of n!/|Aut| = labeled count.
pub fn naive_labeled_connected_count(k: usize, n: usize) -> Result<u64, EnumerateError> {
    let task = EnumerationTask::new(k, n);
    task.validate()?;
    Ok(naive_scan(k, n, false).0)
}

/// Runs the labeled backtracking scan, counting connected survivors and
/// optionally keeping the canonically labeled ones. The scan splits on
/// the completions of vertex 0's row so the subtrees can run in
/// parallel; each labeled graph lands in exactly one subtree.
fn naive_scan(k: usize, n: usize, keep_canonical: bool) -> (u64, Vec<Graph>) {
    if k % 2 == 1 && n % 2 == 1 {
        return (0, Vec::new());
    }
    let mut roots = Vec::new();
    if n == 1 {
        roots.push((vec![0u64], vec![0usize]));
    } else {
        // Row 0 in full: every k-subset of {1..n-1} as vertex 0's
        // neighborhood.
        let mut neighbors = Vec::new();
        row0_subsets(n, k, 1, 0u64, 0, &mut neighbors);
        for mask in neighbors {
            let mut rows = vec![0u64; n];
            let mut degs = vec![0usize; n];
            rows[0] = mask;
            degs[0] = k;
            for j in bit_indices(mask) {
                rows[j] = 1;
                degs[j] = 1;
            }
            roots.push((rows, degs));
        }
    }
    let shards: Vec<(u64, Vec<Graph>)> = roots
        .into_par_iter()
        .map(|(mut rows, mut degs)| {
            let mut labeled = 0u64;
            let mut kept = Vec::new();
            naive_pair(k, n, 1, 2, &mut rows, &mut degs, &mut |rows: &[u64]| {
                if reachable_within(rows, 0, full_mask(n)) == full_mask(n) {
                    labeled += 1;
                    if keep_canonical && is_canonically_labeled(n, rows) {
                        kept.push(Graph::from_rows_unchecked(n, rows));
                    }
                }
            });
            (labeled, kept)
        })
        .collect();
    let mut labeled = 0u64;
    let mut survivors = Vec::new();
    for (count, kept) in shards {
        labeled += count;
        survivors.extend(kept);
    }
    (labeled, survivors)
}

fn row0_subsets(n: usize, k: usize, from: usize, mask: u64, size: usize, out: &mut Vec<u64>) {
    if size == k {
        out.push(mask);
        return;
    }
    if from == n || n - from < k - size {
        return;
    }
    row0_subsets(n, k, from + 1, mask | (1 << from), size + 1, out);
    row0_subsets(n, k, from + 1, mask, size, out);
}

fn naive_pair(
    k: usize,
    n: usize,
    i: usize,
    j: usize,
    rows: &mut Vec<u64>,
    degs: &mut Vec<usize>,
    emit: &mut impl FnMut(&[u64]),
) {
    if i >= n - 1 {
        // All pairs are decided; the last row's degree is the one row
        // closure below never checks.
        if degs[n - 1] == k {
            emit(rows);
        }
        return;
    }
    let (ni, nj) = if j == n - 1 { (i + 1, i + 2) } else { (i, j + 1) };
    // Row i closes at j = n-1, so among its remaining entries it must
    // still be able to reach exactly k; at closure the bound is an
    // equality test.
    let slack = n - 1 - j;
    if degs[i] + slack >= k {
        naive_pair(k, n, ni, nj, rows, degs, emit);
    }
    if degs[i] < k && degs[j] < k && degs[i] + 1 + slack >= k {
        rows[i] |= 1 << j;
        rows[j] |= 1 << i;
        degs[i] += 1;
        degs[j] += 1;
        naive_pair(k, n, ni, nj, rows, degs, emit);
        rows[i] &= !(1 << j);
        rows[j] &= !(1 << i);
        degs[i] -= 1;
        degs[j] -= 1;
    }
}

/// One decoded line of a graph6 file that failed to parse.
#[derive(Debug)]
pub struct IngestIssue {
    pub line: usize,
    pub error: Graph6Error,
}

/// Graphs decoded from a graph6 file, in file order, with per-line
/// diagnostics for the lines that failed. Blank lines are skipped.
#[derive(Debug, Default)]
pub struct Ingested {
    pub graphs: Vec<Graph>,
    pub issues: Vec<IngestIssue>,
}

pub fn ingest_graph6(path: &Path) -> io::Result<Ingested> {
    let file = std::fs::File::open(path)?;
    let mut out = Ingested::default();
    for (idx, line) in io::BufReader::new(file).lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        match graph6::decode(trimmed) {
            Ok(g) => out.graphs.push(g),
            Err(error) => out.issues.push(IngestIssue {
                line: idx + 1,
                error,
            }),
        }
    }
    Ok(out)
}
