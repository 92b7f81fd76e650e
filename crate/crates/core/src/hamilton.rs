//! Exact Hamilton cycle and path deciders with verifiable certificates.
//!
//! Two engines answer the same questions by different means and are kept
//! deliberately independent so they can cross-check each other:
//!
//! * subset dynamic programming over endpoint sets, exact up to
//!   [`SUBSET_DP_MAX_VERTICES`] vertices, no heuristics and no prechecks;
//! * depth-first backtracking with individually toggleable prunings
//!   (availability degrees, reachability of the unvisited region, and a
//!   structural precheck on cut vertices).
//!
//! Every positive answer carries a [`Certificate`] that
//! [`verify_certificate`] can replay against the graph by edge lookups
//! alone. Negative answers are exhaustive by construction.
//!
//! The prunings are sound for existence: a pruned branch cannot complete to
//! a solution. The structural precheck rests on two facts: a graph with a
//! cut vertex has no spanning cycle, and if deleting one vertex leaves three
//! or more components there is no spanning path. The tests exercise every
//! pruning combination against the DP engine on seeded random graphs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bit_indices, Graph};
use crate::structure::{components_after_deletion, cut_vertices, is_connected, reachable_within};

/// Upper bound for the subset DP engine; the endpoint table needs one `u64`
/// per vertex subset.
pub const SUBSET_DP_MAX_VERTICES: usize = 24;

/// Witness for a positive answer: the vertices of a cycle or path in visit
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// Vertices in traversal order. For a cycle the closing edge from the
    /// last vertex back to the first is implied.
    pub order: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Cycle,
    Path,
}

/// Why a certificate failed verification.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("certificate names vertex {vertex} but the graph has {n}")]
    UnknownVertex { vertex: usize, n: usize },
    #[error("vertex {vertex} appears more than once")]
    Repeated { vertex: usize },
    #[error("a cycle needs at least 3 vertices, certificate has {len}")]
    CycleTooShort { len: usize },
    #[error("a path certificate must list at least one vertex")]
    PathEmpty,
    #[error("certificate uses missing edge {u}-{v}")]
    MissingEdge { u: usize, v: usize },
    #[error("path covers {covered} of {n} vertices")]
    NotSpanning { covered: usize, n: usize },
}

/// Replays a certificate against the graph.
///
/// Cycle certificates assert a simple cycle through exactly the listed
/// vertices; they need not span the graph, which lets the same witness type
/// serve constrained cycle searches. Path certificates assert a spanning
/// path, so the order must list every vertex exactly once.
pub fn verify_certificate(g: &Graph, cert: &Certificate) -> Result<(), CertificateError> {
    let mut seen = 0u64;
    for &v in &cert.order {
        if v >= g.n() {
            return Err(CertificateError::UnknownVertex { vertex: v, n: g.n() });
        }
        if seen & (1 << v) != 0 {
            return Err(CertificateError::Repeated { vertex: v });
        }
        seen |= 1 << v;
    }
    for pair in cert.order.windows(2) {
        if !g.has_edge(pair[0], pair[1]) {
            return Err(CertificateError::MissingEdge {
                u: pair[0],
                v: pair[1],
            });
        }
    }
    match cert.kind {
        CertificateKind::Cycle => {
            if cert.order.len() < 3 {
                return Err(CertificateError::CycleTooShort {
                    len: cert.order.len(),
                });
            }
            let (first, last) = (cert.order[0], *cert.order.last().unwrap());
            if !g.has_edge(last, first) {
                return Err(CertificateError::MissingEdge { u: last, v: first });
            }
            Ok(())
        }
        CertificateKind::Path => {
            if cert.order.is_empty() {
                return Err(CertificateError::PathEmpty);
            }
            if cert.order.len() != g.n() {
                return Err(CertificateError::NotSpanning {
                    covered: cert.order.len(),
                    n: g.n(),
                });
            }
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Subset DP while the table fits comfortably, backtracking beyond.
    Auto,
    SubsetDp,
    Backtracking,
}

/// Engine choice plus the individual backtracking prunings. Disabling
/// prunings never changes an answer, only the work needed to reach it; the
/// switches exist so the prunings can be validated against unpruned runs.
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub engine: Engine,
    /// Discard branches where an unvisited vertex has fewer available
    /// neighbors than the tour still needs.
    pub degree_prune: bool,
    /// Discard branches whose unvisited region is unreachable from the
    /// current endpoint.
    pub connectivity_prune: bool,
    /// Decide by cut structure before searching: cut vertices forbid
    /// spanning cycles, three-way separations forbid spanning paths.
    pub structural_precheck: bool,
}

impl Default for SearchOptions {
    fn default() -> SearchOptions {
        SearchOptions {
            engine: Engine::Auto,
            degree_prune: true,
            connectivity_prune: true,
            structural_precheck: true,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HamiltonError {
    #[error("subset DP holds one u64 per vertex subset and supports at most {SUBSET_DP_MAX_VERTICES} vertices, got {0}")]
    TooLargeForSubsetDp(usize),
}

/// Keep the automatic engine's DP tables at or below 32 MiB.
const AUTO_DP_MAX: usize = 22;

/// Finds a Hamilton cycle, or proves there is none.
pub fn hamiltonian_cycle(g: &Graph) -> Option<Certificate> {
    hamiltonian_cycle_with(g, &SearchOptions::default()).expect("auto engine has no size limit")
}

pub fn hamiltonian_cycle_with(
    g: &Graph,
    opts: &SearchOptions,
) -> Result<Option<Certificate>, HamiltonError> {
    if g.n() < 3 {
        return Ok(None);
    }
    let order = match pick(g, opts)? {
        Engine::SubsetDp => dp_cycle(g),
        _ => backtrack_cycle(g, opts),
    };
    Ok(order.map(|order| Certificate {
        kind: CertificateKind::Cycle,
        order,
    }))
}

/// Finds a Hamilton path with free endpoints, or proves there is none.
pub fn hamiltonian_path(g: &Graph) -> Option<Certificate> {
    hamiltonian_path_with(g, &SearchOptions::default()).expect("auto engine has no size limit")
}

pub fn hamiltonian_path_with(
    g: &Graph,
    opts: &SearchOptions,
) -> Result<Option<Certificate>, HamiltonError> {
    let order = match pick(g, opts)? {
        Engine::SubsetDp => dp_path_free(g),
        _ => {
            if opts.structural_precheck && !path_precheck(g) {
                None
            } else {
                let mut inner = *opts;
                inner.structural_precheck = false;
                (0..g.n()).find_map(|s| backtrack_path_from(g, s, &inner))
            }
        }
    };
    Ok(order.map(|order| Certificate {
        kind: CertificateKind::Path,
        order,
    }))
}

/// Finds a Hamilton path starting at `start`, or proves there is none.
pub fn hamiltonian_path_from(g: &Graph, start: usize) -> Option<Certificate> {
    hamiltonian_path_from_with(g, start, &SearchOptions::default())
        .expect("auto engine has no size limit")
}

pub fn hamiltonian_path_from_with(
    g: &Graph,
    start: usize,
    opts: &SearchOptions,
) -> Result<Option<Certificate>, HamiltonError> {
    assert!(start < g.n(), "start vertex {start} out of range");
    let order = match pick(g, opts)? {
        Engine::SubsetDp => dp_path_from(g, start),
        _ => {
            if opts.structural_precheck && !path_precheck(g) {
                None
            } else {
                backtrack_path_from(g, start, opts)
            }
        }
    };
    Ok(order.map(|order| Certificate {
        kind: CertificateKind::Path,
        order,
    }))
}

/// Finds any simple cycle through every vertex of `required`, spanning or
/// not. An empty requirement asks for any cycle at all. Always the
/// backtracking engine; the certificate has kind `Cycle`.
pub fn cycle_through(g: &Graph, required: u64) -> Option<Certificate> {
    cycle_through_with(g, required, &SearchOptions::default())
}

pub fn cycle_through_with(
    g: &Graph,
    required: u64,
    opts: &SearchOptions,
) -> Option<Certificate> {
    assert_eq!(
        required & !g.vertex_mask(),
        0,
        "required set names vertices outside the graph"
    );
    let order = if required == 0 {
        any_cycle(g)
    } else {
        if opts.structural_precheck && !required_in_one_block(g, required) {
            return None;
        }
        backtrack_cycle_through(g, required, opts)
    };
    order.map(|order| Certificate {
        kind: CertificateKind::Cycle,
        order,
    })
}

fn pick(g: &Graph, opts: &SearchOptions) -> Result<Engine, HamiltonError> {
    match opts.engine {
        Engine::Auto => {
            if g.n() <= AUTO_DP_MAX {
                Ok(Engine::SubsetDp)
            } else {
                Ok(Engine::Backtracking)
            }
        }
        Engine::SubsetDp => {
            if g.n() > SUBSET_DP_MAX_VERTICES {
                Err(HamiltonError::TooLargeForSubsetDp(g.n()))
            } else {
                Ok(Engine::SubsetDp)
            }
        }
        Engine::Backtracking => Ok(Engine::Backtracking),
    }
}

// ---------------------------------------------------------------------------
// Subset DP. dp[mask] holds the endpoint set of simple paths covering
// exactly `mask`. Anchored variants index subsets of V minus the anchor in
// compressed coordinates.

struct Anchored {
    /// Original labels of the compressed vertices.
    others: Vec<usize>,
    /// Compressed adjacency among the non-anchor vertices.
    cadj: Vec<u64>,
    /// Compressed neighbors of the anchor.
    anchor_adj: u64,
    dp: Vec<u64>,
}

impl Anchored {
    fn solve(g: &Graph, anchor: usize) -> Anchored {
        let others: Vec<usize> = (0..g.n()).filter(|&v| v != anchor).collect();
        let m = others.len();
        let mut cadj = vec![0u64; m];
        let mut anchor_adj = 0u64;
        for (i, &u) in others.iter().enumerate() {
            if g.has_edge(anchor, u) {
                anchor_adj |= 1 << i;
            }
            for (j, &v) in others.iter().enumerate() {
                if g.has_edge(u, v) {
                    cadj[i] |= 1 << j;
                }
            }
        }
        let mut dp = vec![0u64; 1usize << m];
        for i in bit_indices(anchor_adj) {
            dp[1 << i] = 1 << i;
        }
        for mask in 1..dp.len() {
            let ends = dp[mask];
            if ends == 0 {
                continue;
            }
            for e in bit_indices(ends) {
                for w in bit_indices(cadj[e] & !(mask as u64)) {
                    dp[mask | (1 << w)] |= 1 << w;
                }
            }
        }
        Anchored {
            others,
            cadj,
            anchor_adj,
            dp,
        }
    }

    /// Walks one covering path backwards from `end`, returning original
    /// labels with the anchor prepended.
    fn reconstruct(&self, anchor: usize, end: usize) -> Vec<usize> {
        let full = self.dp.len() - 1;
        let mut mask = full;
        let mut e = end;
        let mut rev = vec![self.others[e]];
        while mask != 1 << e {
            let prev_mask = mask & !(1 << e);
            let e2 = bit_indices(self.dp[prev_mask])
                .find(|&c| self.cadj[c] & (1 << e) != 0)
                .expect("dp tables always contain a predecessor");
            mask = prev_mask;
            e = e2;
            rev.push(self.others[e]);
        }
        debug_assert_ne!(self.anchor_adj & (1 << e), 0);
        rev.push(anchor);
        rev.reverse();
        rev
    }
}

fn dp_cycle(g: &Graph) -> Option<Vec<usize>> {
    debug_assert!(g.n() >= 3);
    let a = Anchored::solve(g, 0);
    let full = a.dp.len() - 1;
    let closing = a.dp[full] & a.anchor_adj;
    let end = bit_indices(closing).next()?;
    Some(a.reconstruct(0, end))
}

fn dp_path_from(g: &Graph, start: usize) -> Option<Vec<usize>> {
    if g.n() == 1 {
        return Some(vec![0]);
    }
    let a = Anchored::solve(g, start);
    let full = a.dp.len() - 1;
    let end = bit_indices(a.dp[full]).next()?;
    Some(a.reconstruct(start, end))
}

fn dp_path_free(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n == 1 {
        return Some(vec![0]);
    }
    let mut dp = vec![0u64; 1usize << n];
    for v in 0..n {
        dp[1 << v] = 1 << v;
    }
    for mask in 1..dp.len() {
        let ends = dp[mask];
        if ends == 0 {
            continue;
        }
        for e in bit_indices(ends) {
            for w in bit_indices(g.neighbors(e) & !(mask as u64)) {
                dp[mask | (1 << w)] |= 1 << w;
            }
        }
    }
    let full = dp.len() - 1;
    let mut e = bit_indices(dp[full]).next()?;
    let mut mask = full;
    let mut rev = vec![e];
    while mask != 1 << e {
        let prev_mask = mask & !(1 << e);
        let e2 = bit_indices(dp[prev_mask])
            .find(|&c| g.has_edge(c, e))
            .expect("dp tables always contain a predecessor");
        mask = prev_mask;
        e = e2;
        rev.push(e);
    }
    rev.reverse();
    Some(rev)
}

// ---------------------------------------------------------------------------
// Backtracking engine.

fn backtrack_cycle(g: &Graph, opts: &SearchOptions) -> Option<Vec<usize>> {
    if opts.structural_precheck && (!is_connected(g) || !cut_vertices(g).is_empty()) {
        return None;
    }
    let mut order = vec![0usize];
    if extend_cycle(g, 1 << 0, 0, &mut order, opts) {
        Some(order)
    } else {
        None
    }
}

fn extend_cycle(
    g: &Graph,
    visited: u64,
    end: usize,
    order: &mut Vec<usize>,
    opts: &SearchOptions,
) -> bool {
    let all = g.vertex_mask();
    if visited == all {
        return g.has_edge(end, 0);
    }
    let unvisited = all & !visited;
    if opts.degree_prune {
        // Each unvisited vertex still needs two cycle neighbors drawn from
        // the unvisited region, the current endpoint, or the anchor; the
        // anchor still needs its closing neighbor.
        let open = unvisited | (1 << end) | 1;
        for w in bit_indices(unvisited) {
            if (g.neighbors(w) & open).count_ones() < 2 {
                return false;
            }
        }
        if g.neighbors(0) & (unvisited | (1 << end)) == 0 {
            return false;
        }
    }
    if opts.connectivity_prune
        && reachable_within(g.rows(), end, unvisited | (1 << end)) & unvisited != unvisited
    {
        return false;
    }
    for w in bit_indices(g.neighbors(end) & unvisited) {
        order.push(w);
        if extend_cycle(g, visited | (1 << w), w, order, opts) {
            return true;
        }
        order.pop();
    }
    false
}

/// Spanning-path precheck: connected, and no single deletion splits the
/// graph three ways (a spanning path survives one deletion as at most two
/// pieces).
fn path_precheck(g: &Graph) -> bool {
    if !is_connected(g) {
        return false;
    }
    (0..g.n()).all(|v| components_after_deletion(g, 1 << v).len() <= 2)
}

fn backtrack_path_from(g: &Graph, start: usize, opts: &SearchOptions) -> Option<Vec<usize>> {
    if opts.structural_precheck && !path_precheck(g) {
        return None;
    }
    let mut order = vec![start];
    if extend_path(g, 1 << start, start, &mut order, opts) {
        Some(order)
    } else {
        None
    }
}

fn extend_path(
    g: &Graph,
    visited: u64,
    end: usize,
    order: &mut Vec<usize>,
    opts: &SearchOptions,
) -> bool {
    let all = g.vertex_mask();
    if visited == all {
        return true;
    }
    let unvisited = all & !visited;
    if opts.degree_prune {
        // Unvisited vertices need two available neighbors each, except the
        // one that will become the far endpoint.
        let open = unvisited | (1 << end);
        let mut singles = 0u32;
        for w in bit_indices(unvisited) {
            match (g.neighbors(w) & open).count_ones() {
                0 => return false,
                1 => {
                    singles += 1;
                    if singles > 1 {
                        return false;
                    }
                }
                _ => {}
            }
        }
    }
    if opts.connectivity_prune
        && reachable_within(g.rows(), end, unvisited | (1 << end)) & unvisited != unvisited
    {
        return false;
    }
    for w in bit_indices(g.neighbors(end) & unvisited) {
        order.push(w);
        if extend_path(g, visited | (1 << w), w, order, opts) {
            return true;
        }
        order.pop();
    }
    false
}

/// Any cycle at all: first back edge of a depth-first search.
fn any_cycle(g: &Graph) -> Option<Vec<usize>> {
    fn dfs(g: &Graph, v: usize, parent: Option<usize>, stack: &mut Vec<usize>, seen: &mut u64) -> Option<Vec<usize>> {
        *seen |= 1 << v;
        stack.push(v);
        for w in bit_indices(g.neighbors(v)) {
            if Some(w) == parent {
                continue;
            }
            if let Some(at) = stack.iter().position(|&s| s == w) {
                return Some(stack[at..].to_vec());
            }
            if *seen & (1 << w) == 0 {
                if let Some(c) = dfs(g, w, Some(v), stack, seen) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        None
    }
    let mut seen = 0u64;
    for root in 0..g.n() {
        if seen & (1 << root) != 0 {
            continue;
        }
        if let Some(c) = dfs(g, root, None, &mut Vec::new(), &mut seen) {
            return Some(c);
        }
    }
    None
}

/// A cycle lies inside a single block, so a requirement that no block
/// covers is hopeless.
fn required_in_one_block(g: &Graph, required: u64) -> bool {
    crate::structure::block_decomposition(g).iter().any(|block| {
        let mut mask = 0u64;
        for &(a, b) in block {
            mask |= (1 << a) | (1 << b);
        }
        block.len() >= 3 && required & !mask == 0
    })
}

fn backtrack_cycle_through(g: &Graph, required: u64, opts: &SearchOptions) -> Option<Vec<usize>> {
    let anchor = required.trailing_zeros() as usize;
    let mut order = vec![anchor];
    if extend_through(g, required, anchor, 1 << anchor, anchor, &mut order, opts) {
        Some(order)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_through(
    g: &Graph,
    required: u64,
    anchor: usize,
    visited: u64,
    end: usize,
    order: &mut Vec<usize>,
    opts: &SearchOptions,
) -> bool {
    let unvisited = g.vertex_mask() & !visited;
    let remaining = required & unvisited;
    if remaining == 0 && order.len() >= 3 && g.has_edge(end, anchor) {
        return true;
    }
    if opts.degree_prune && order.len() >= 2 {
        let open = unvisited | (1 << end) | (1 << anchor);
        for w in bit_indices(remaining) {
            if (g.neighbors(w) & open).count_ones() < 2 {
                return false;
            }
        }
        if g.neighbors(anchor) & (unvisited | (1 << end)) == 0 {
            return false;
        }
    }
    if opts.connectivity_prune
        && reachable_within(g.rows(), end, unvisited | (1 << end)) & remaining != remaining
    {
        return false;
    }
    for w in bit_indices(g.neighbors(end) & unvisited) {
        order.push(w);
        if extend_through(g, required, anchor, visited | (1 << w), w, order, opts) {
            return true;
        }
        order.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn cycle_graph(n: usize) -> Graph {
        graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn path_graph(n: usize) -> Graph {
        graph(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    fn petersen() -> Graph {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..5).map(|i| (i, i + 5)));
        edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        graph(10, &edges)
    }

    struct SplitMix(u64);

    impl SplitMix {
        fn next(&mut self) -> u64 {
            self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = self.0;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        }

        fn graph(&mut self, n: usize, density_num: u64, density_den: u64) -> Graph {
            let mut rows = vec![0u64; n];
            for u in 0..n {
                for v in (u + 1)..n {
                    if self.next() % density_den < density_num {
                        rows[u] |= 1 << v;
                        rows[v] |= 1 << u;
                    }
                }
            }
            Graph::from_adj_rows(rows).unwrap()
        }
    }

    fn assert_spanning_cycle(g: &Graph, cert: &Certificate) {
        assert_eq!(cert.kind, CertificateKind::Cycle);
        assert_eq!(cert.order.len(), g.n(), "cycle must span");
        verify_certificate(g, cert).unwrap();
    }

    #[test]
    fn classics() {
        for n in 3..=9 {
            let k = Graph::complete(n).unwrap();
            assert_spanning_cycle(&k, &hamiltonian_cycle(&k).unwrap());
            let c = cycle_graph(n);
            assert_spanning_cycle(&c, &hamiltonian_cycle(&c).unwrap());
        }
        let p6 = path_graph(6);
        assert!(hamiltonian_cycle(&p6).is_none());
        verify_certificate(&p6, &hamiltonian_path(&p6).unwrap()).unwrap();
    }

    #[test]
    fn petersen_is_hypohamiltonian_flavored() {
        let p = petersen();
        assert!(hamiltonian_cycle(&p).is_none());
        let path = hamiltonian_path(&p).unwrap();
        verify_certificate(&p, &path).unwrap();
        for s in 0..10 {
            // Vertex transitivity: a spanning path leaves every start.
            assert!(hamiltonian_path_from(&p, s).is_some());
        }
    }

    #[test]
    fn bipartite_parity_obstructions() {
        let mut k23 = Vec::new();
        for u in 0..2 {
            for v in 2..5 {
                k23.push((u, v));
            }
        }
        let g = graph(5, &k23);
        assert!(hamiltonian_cycle(&g).is_none());
        assert!(hamiltonian_path(&g).is_some());
        let mut k33 = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                k33.push((u, v));
            }
        }
        let g = graph(6, &k33);
        assert_spanning_cycle(&g, &hamiltonian_cycle(&g).unwrap());
        // Star: center repeats immediately, no spanning path.
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(hamiltonian_path(&star).is_none());
    }

    #[test]
    fn tiny_orders() {
        let k1 = graph(1, &[]);
        assert!(hamiltonian_cycle(&k1).is_none());
        assert_eq!(hamiltonian_path(&k1).unwrap().order, vec![0]);
        let k2 = graph(2, &[(0, 1)]);
        assert!(hamiltonian_cycle(&k2).is_none());
        assert_eq!(hamiltonian_path(&k2).unwrap().order.len(), 2);
        assert!(hamiltonian_path(&graph(2, &[])).is_none());
    }

    #[test]
    fn engines_and_prunings_agree_on_random_graphs() {
        let mut rng = SplitMix(0x4a35eed);
        let mut cycles_found = 0u32;
        let mut paths_found = 0u32;
        for trial in 0..180 {
            let n = 3 + (rng.next() % 9) as usize;
            let g = rng.graph(n, 1 + (trial % 3) as u64, 4);
            let dp = SearchOptions {
                engine: Engine::SubsetDp,
                ..SearchOptions::default()
            };
            let dp_cycle = hamiltonian_cycle_with(&g, &dp).unwrap();
            let dp_path = hamiltonian_path_with(&g, &dp).unwrap();
            for mask in 0..8u32 {
                let bt = SearchOptions {
                    engine: Engine::Backtracking,
                    degree_prune: mask & 1 != 0,
                    connectivity_prune: mask & 2 != 0,
                    structural_precheck: mask & 4 != 0,
                };
                let bt_cycle = hamiltonian_cycle_with(&g, &bt).unwrap();
                assert_eq!(bt_cycle.is_some(), dp_cycle.is_some(), "cycle on {g:?}");
                if let Some(c) = &bt_cycle {
                    assert_spanning_cycle(&g, c);
                }
                let bt_path = hamiltonian_path_with(&g, &bt).unwrap();
                assert_eq!(bt_path.is_some(), dp_path.is_some(), "path on {g:?}");
                if let Some(p) = &bt_path {
                    verify_certificate(&g, p).unwrap();
                }
            }
            if let Some(c) = &dp_cycle {
                assert_spanning_cycle(&g, c);
                cycles_found += 1;
            }
            if let Some(p) = &dp_path {
                verify_certificate(&g, p).unwrap();
                paths_found += 1;
            }
        }
        // The sample must exercise both outcomes.
        assert!(cycles_found >= 20 && paths_found > cycles_found);
    }

    #[test]
    fn anchored_paths_match_free_paths() {
        let mut rng = SplitMix(0x70_70);
        for _ in 0..120 {
            let n = 2 + (rng.next() % 8) as usize;
            let density = 1 + rng.next() % 2;
            let g = rng.graph(n, density, 3);
            let free = hamiltonian_path(&g).is_some();
            let anchored = (0..n).any(|s| hamiltonian_path_from(&g, s).is_some());
            assert_eq!(free, anchored, "on {g:?}");
            if let Some(p) = hamiltonian_path_from(&g, 0) {
                assert_eq!(p.order[0], 0);
                verify_certificate(&g, &p).unwrap();
            }
        }
    }

    #[test]
    fn cut_vertex_blocks_cycles_but_search_agrees_anyway() {
        // Two K_15 blocks sharing vertex 0: the precheck answers instantly,
        // and the pruned search must answer the same without it.
        let mut edges = Vec::new();
        for u in 0..15 {
            for v in (u + 1)..15 {
                edges.push((u, v));
            }
        }
        for u in 15..29 {
            for v in (u + 1)..29 {
                edges.push((u, v));
            }
            edges.push((0, u));
        }
        let g = graph(29, &edges);
        assert_eq!(cut_vertices(&g), vec![0]);
        let with = SearchOptions {
            engine: Engine::Backtracking,
            ..SearchOptions::default()
        };
        assert!(hamiltonian_cycle_with(&g, &with).unwrap().is_none());
        // It still has a spanning path through the cut vertex.
        let path = hamiltonian_path_with(&g, &with).unwrap().unwrap();
        verify_certificate(&g, &path).unwrap();
    }

    #[test]
    fn dp_size_limit_is_enforced() {
        let g = Graph::complete(25).unwrap();
        let dp = SearchOptions {
            engine: Engine::SubsetDp,
            ..SearchOptions::default()
        };
        assert_eq!(
            hamiltonian_cycle_with(&g, &dp),
            Err(HamiltonError::TooLargeForSubsetDp(25))
        );
        // Auto falls back to backtracking and still answers.
        assert!(hamiltonian_cycle(&g).is_some());
    }

    #[test]
    fn cycle_through_basics() {
        // Triangle with a pendant vertex.
        let g = graph(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        assert!(cycle_through(&g, 1 << 3).is_none());
        let c = cycle_through(&g, (1 << 0) | (1 << 1)).unwrap();
        verify_certificate(&g, &c).unwrap();
        assert_eq!(c.order.len(), 3);
        // Empty requirement: any cycle.
        let c = cycle_through(&g, 0).unwrap();
        verify_certificate(&g, &c).unwrap();
        assert!(cycle_through(&path_graph(5), 0).is_none());
        assert!(cycle_through(&path_graph(5), 1 << 2).is_none());
    }

    #[test]
    fn cycle_through_matches_induced_subgraph_oracle() {
        // A cycle through S with vertex set T is exactly a spanning cycle of
        // the subgraph induced by T, so existence can be decided by sweeping
        // all supersets of S.
        fn oracle(g: &Graph, required: u64) -> bool {
            let n = g.n();
            let rest: Vec<usize> = (0..n).filter(|&v| (required >> v) & 1 == 0).collect();
            for pick in 0u64..(1 << rest.len()) {
                let mut mask = required;
                for (i, &v) in rest.iter().enumerate() {
                    if (pick >> i) & 1 == 1 {
                        mask |= 1 << v;
                    }
                }
                if mask.count_ones() < 3 {
                    continue;
                }
                let (sub, _) = g.induced_subgraph(mask).unwrap();
                if hamiltonian_cycle(&sub).is_some() {
                    return true;
                }
            }
            false
        }

        let mut rng = SplitMix(0xcafe);
        for trial in 0..150 {
            let n = 3 + (rng.next() % 6) as usize;
            let g = rng.graph(n, 1 + (trial % 2) as u64, 3);
            let size = 1 + (rng.next() % 3).min(n as u64 - 1) as usize;
            let mut required = 0u64;
            while required.count_ones() < size as u32 {
                required |= 1 << (rng.next() % n as u64);
            }
            let found = cycle_through(&g, required);
            assert_eq!(found.is_some(), oracle(&g, required), "S={required:b} on {g:?}");
            if let Some(c) = found {
                verify_certificate(&g, &c).unwrap();
                for v in bit_indices(required) {
                    assert!(c.order.contains(&v));
                }
            }
        }
    }

    #[test]
    fn certificate_rejections() {
        let g = cycle_graph(5);
        let bad = Certificate {
            kind: CertificateKind::Cycle,
            order: vec![0, 1, 2, 3],
        };
        assert_eq!(
            verify_certificate(&g, &bad),
            Err(CertificateError::MissingEdge { u: 3, v: 0 })
        );
        let bad = Certificate {
            kind: CertificateKind::Cycle,
            order: vec![0, 1],
        };
        assert!(matches!(
            verify_certificate(&g, &bad),
            Err(CertificateError::CycleTooShort { len: 2 })
        ));
        let bad = Certificate {
            kind: CertificateKind::Path,
            order: vec![0, 1, 2],
        };
        assert_eq!(
            verify_certificate(&g, &bad),
            Err(CertificateError::NotSpanning { covered: 3, n: 5 })
        );
        let bad = Certificate {
            kind: CertificateKind::Path,
            order: vec![0, 1, 2, 3, 9],
        };
        assert_eq!(
            verify_certificate(&g, &bad),
            Err(CertificateError::UnknownVertex { vertex: 9, n: 5 })
        );
        let bad = Certificate {
            kind: CertificateKind::Cycle,
            order: vec![0, 1, 2, 1, 4],
        };
        assert_eq!(
            verify_certificate(&g, &bad),
            Err(CertificateError::Repeated { vertex: 1 })
        );
        let bad = Certificate {
            kind: CertificateKind::Path,
            order: vec![],
        };
        assert_eq!(verify_certificate(&g, &bad), Err(CertificateError::PathEmpty));
    }
}
