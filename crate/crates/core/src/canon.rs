//! Canonical forms, isomorphism testing, and automorphism counting.
//!
//! The canonical form of a graph is the lexicographically least graph6
//! encoding over all `n!` relabelings. Because graph6 stores the upper
//! triangle in column order with byte values monotone in the bit groups,
//! minimizing the encoding is the same as minimizing the column-major bit
//! string of the adjacency matrix.
//!
//! The search assigns canonical positions one vertex at a time. Placing a
//! vertex at position `p` fixes the whole column `p` of the relabeled matrix
//! (its adjacency pattern to the already-placed prefix), so the encoding
//! grows by a fully determined chunk per step and branch-and-bound applies:
//! only vertices whose pattern chunk is minimal among the unassigned can
//! extend an optimal prefix. Ties branch. Two further prunings keep highly
//! symmetric graphs tractable, both standard:
//!
//! * every leaf that reproduces the incumbent encoding yields an
//!   automorphism, and the subtree below the point where that leaf diverged
//!   from the incumbent path can be abandoned (its leaf encodings are a
//!   permutation of encodings already seen);
//! * recorded automorphisms that fix the current prefix pointwise partition
//!   the candidate set into orbits, and only one candidate per orbit needs
//!   exploring.
//!
//! Exactness does not depend on either pruning; they only cut symmetric
//! branches. A brute-force permutation oracle for small orders lives in the
//! tests.

use crate::graph::{bit_indices, full_mask, Graph};
use crate::graph6::encode_rows;

/// A canonical labeling: the least graph6 bytes plus a permutation
/// achieving them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// graph6 encoding of the canonically relabeled graph.
    pub bytes: Vec<u8>,
    /// `perm[v]` is the canonical position of original vertex `v`.
    pub perm: Vec<usize>,
}

/// Computes the canonical form of `g`.
///
/// Two graphs are isomorphic iff their canonical bytes are equal, and
/// `g.relabel(&form.perm)` re-encodes to exactly `form.bytes`.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let mut search = Search::new(g.n(), g.rows(), Mode::Minimize);
    search.seed_identity_incumbent(false);
    search.dfs(0, true);
    let n = g.n();
    let mut perm = vec![0usize; n];
    for (pos, &v) in search.best_assigned.iter().enumerate() {
        perm[v] = pos;
    }
    CanonicalForm {
        bytes: canonical_rows_bytes(n, g.rows(), &search.best_assigned),
        perm,
    }
}

/// True iff the graph's own labeling is already the canonical one, i.e. no
/// relabeling produces a lexicographically smaller encoding.
pub(crate) fn is_canonically_labeled(n: usize, rows: &[u64]) -> bool {
    let mut search = Search::new(n, rows, Mode::TestIdentity);
    search.seed_identity_incumbent(true);
    search.dfs(0, true);
    !search.found_smaller
}

/// Isomorphism test via canonical forms, with cheap invariant prefilters.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    if a.degree_profile().degrees != b.degree_profile().degrees {
        return false;
    }
    canonical_form(a).bytes == canonical_form(b).bytes
}

/// Order of the automorphism group, by exhaustive enumeration of the
/// relabelings that reproduce the canonical encoding. Intended for small
/// graphs; the count equals the number of such relabelings exactly.
pub fn automorphism_count(g: &Graph) -> u64 {
    let canon = canonical_form(g);
    let relabeled = g.relabel(&canon.perm);
    let mut search = Search::new(g.n(), relabeled.rows(), Mode::CountEqual);
    search.seed_identity_incumbent(true);
    search.dfs(0, true);
    search.equal_leaves
}

fn canonical_rows_bytes(n: usize, rows: &[u64], assigned: &[usize]) -> Vec<u8> {
    let mut out = vec![0u64; n];
    for p in 0..n {
        for q in 0..n {
            if rows[assigned[p]] & (1 << assigned[q]) != 0 {
                out[p] |= 1 << q;
            }
        }
    }
    encode_rows(n, &out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Find the least encoding over all relabelings.
    Minimize,
    /// Decide whether any relabeling beats the identity labeling.
    TestIdentity,
    /// Count relabelings whose encoding equals the identity labeling's.
    CountEqual,
}

struct UnionFind {
    parent: [u8; 64],
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        let mut parent = [0u8; 64];
        for (v, slot) in parent.iter_mut().enumerate().take(n) {
            *slot = v as u8;
        }
        UnionFind { parent }
    }

    fn find(&mut self, v: usize) -> usize {
        let mut v = v;
        while self.parent[v] as usize != v {
            let up = self.parent[self.parent[v] as usize];
            self.parent[v] = up;
            v = up as usize;
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb as u8;
        }
    }
}

/// Bound on stored automorphism generators. Soundness never depends on the
/// list being complete, so overflow only costs pruning power.
const MAX_GENS: usize = 256;

struct Search<'a> {
    n: usize,
    rows: &'a [u64],
    mode: Mode,
    /// Positions filled so far, as original vertex indices.
    assigned: Vec<usize>,
    assigned_mask: u64,
    /// For each vertex, its adjacency bits to `assigned`, most recent in the
    /// low bit. Comparable as integers while lengths agree.
    patterns: Vec<u64>,
    /// Chunk values of the current path, one per position.
    cur_chunks: Vec<u64>,
    /// Incumbent encoding as per-position chunks, plus the assignment
    /// achieving it.
    best_chunks: Vec<u64>,
    best_assigned: Vec<usize>,
    have_best: bool,
    /// Bumped whenever the incumbent changes, so stale frames can refresh
    /// their comparison state.
    generation: u64,
    /// When set, frames deeper than this position unwind immediately.
    abort_to: Option<usize>,
    found_smaller: bool,
    equal_leaves: u64,
    gens: Vec<Vec<usize>>,
    /// Candidate ordering heuristic: explore low degree first.
    degree_order: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(n: usize, rows: &'a [u64], mode: Mode) -> Search<'a> {
        debug_assert_eq!(rows.len(), n);
        let mut degree_order: Vec<usize> = (0..n).collect();
        degree_order.sort_by_key(|&v| (rows[v].count_ones(), v));
        Search {
            n,
            rows,
            mode,
            assigned: Vec::with_capacity(n),
            assigned_mask: 0,
            patterns: vec![0; n],
            cur_chunks: Vec::with_capacity(n),
            best_chunks: vec![0; n],
            best_assigned: (0..n).collect(),
            have_best: false,
            generation: 0,
            abort_to: None,
            found_smaller: false,
            equal_leaves: 0,
            gens: Vec::new(),
            degree_order,
        }
    }

    /// For `TestIdentity` and `CountEqual`, the incumbent is the input's own
    /// labeling and never moves.
    fn seed_identity_incumbent(&mut self, seed: bool) {
        if !seed {
            return;
        }
        for p in 0..self.n {
            let mut chunk = 0u64;
            for i in 0..p {
                chunk = (chunk << 1) | ((self.rows[p] >> i) & 1);
            }
            self.best_chunks[p] = chunk;
        }
        self.have_best = true;
    }

    fn assign(&mut self, v: usize, chunk: u64) {
        self.assigned.push(v);
        self.assigned_mask |= 1 << v;
        self.cur_chunks.push(chunk);
        let free = full_mask(self.n) & !self.assigned_mask;
        for w in bit_indices(free) {
            self.patterns[w] = (self.patterns[w] << 1) | ((self.rows[w] >> v) & 1);
        }
    }

    fn unassign(&mut self) {
        let v = self.assigned.pop().expect("assign/unassign are balanced");
        self.cur_chunks.pop();
        let free = full_mask(self.n) & !self.assigned_mask;
        for w in bit_indices(free) {
            self.patterns[w] >>= 1;
        }
        self.assigned_mask &= !(1 << v);
    }

    fn install_incumbent(&mut self) {
        self.best_chunks[..self.n].copy_from_slice(&self.cur_chunks);
        self.best_assigned.copy_from_slice(&self.assigned);
        self.have_best = true;
        self.generation += 1;
    }

    /// First position where the current path leaves the incumbent path.
    fn divergence_depth(&self) -> usize {
        for p in 0..self.n {
            if self.assigned[p] != self.best_assigned[p] {
                return p;
            }
        }
        self.n
    }

    fn record_automorphism(&mut self) {
        if self.gens.len() >= MAX_GENS {
            return;
        }
        let mut g = vec![0usize; self.n];
        for q in 0..self.n {
            g[self.best_assigned[q]] = self.assigned[q];
        }
        self.gens.push(g);
    }

    /// True when `cand` lies in the orbit of an already explored sibling
    /// under recorded automorphisms fixing the current prefix pointwise.
    fn orbit_pruned(&mut self, cand: usize, explored: u64, depth: usize) -> bool {
        if self.gens.is_empty() || explored == 0 {
            return false;
        }
        let mut uf = UnionFind::new(self.n);
        let mut any = false;
        'gens: for g in &self.gens {
            for &a in &self.assigned[..depth] {
                if g[a] != a {
                    continue 'gens;
                }
            }
            any = true;
            for v in 0..self.n {
                uf.union(v, g[v]);
            }
        }
        if !any {
            return false;
        }
        let root = uf.find(cand);
        bit_indices(explored).any(|e| uf.find(e) == root)
    }

    /// Explores position `p`. `tight` means the path so far matches the
    /// incumbent chunks exactly. Returns true if the incumbent was replaced
    /// somewhere inside, so callers can refresh their own `tight`.
    fn dfs(&mut self, p: usize, tight: bool) -> bool {
        if self.found_smaller {
            return false;
        }
        if p == self.n {
            return self.leaf(tight);
        }
        // Minimal pattern chunk among unassigned vertices decides the
        // candidate set; anything larger cannot extend an optimal prefix.
        let free = full_mask(self.n) & !self.assigned_mask;
        let mut min_chunk = u64::MAX;
        for w in bit_indices(free) {
            min_chunk = min_chunk.min(self.patterns[w]);
        }
        let mut tight_here = tight;
        if tight && self.have_best {
            if min_chunk > self.best_chunks[p] {
                return false;
            }
            if min_chunk < self.best_chunks[p] {
                match self.mode {
                    // Any completion of this prefix beats the identity.
                    Mode::TestIdentity => {
                        self.found_smaller = true;
                        return false;
                    }
                    Mode::CountEqual => return false,
                    Mode::Minimize => tight_here = false,
                }
            }
        }
        let mut replaced_any = false;
        let mut explored = 0u64;
        let order: Vec<usize> = self
            .degree_order
            .iter()
            .copied()
            .filter(|&w| free & (1 << w) != 0 && self.patterns[w] == min_chunk)
            .collect();
        for cand in order {
            if self.mode != Mode::CountEqual && self.orbit_pruned(cand, explored, p) {
                continue;
            }
            explored |= 1 << cand;
            self.assign(cand, min_chunk);
            let replaced = self.dfs(p + 1, tight_here);
            self.unassign();
            if self.found_smaller {
                return replaced_any;
            }
            if replaced {
                replaced_any = true;
                // The new incumbent runs through this very node, so the
                // prefix (and this chunk) match it exactly.
                tight_here = true;
            }
            if let Some(d) = self.abort_to {
                if d < p {
                    return replaced_any;
                }
                // This node is where the equal leaf diverged from the
                // incumbent; resuming here is what the abort asked for.
                self.abort_to = None;
                tight_here = true;
            }
        }
        replaced_any
    }

    fn leaf(&mut self, tight: bool) -> bool {
        if !self.have_best {
            self.install_incumbent();
            return true;
        }
        if tight {
            match self.mode {
                Mode::CountEqual => {
                    self.equal_leaves += 1;
                    false
                }
                _ => {
                    // Same encoding as the incumbent: an automorphism. The
                    // subtree between here and the divergence point only
                    // permutes encodings already covered by the incumbent
                    // side, so unwind back to the divergence node.
                    self.record_automorphism();
                    self.abort_to = Some(self.divergence_depth());
                    false
                }
            }
        } else {
            debug_assert!(self.mode == Mode::Minimize);
            self.install_incumbent();
            true
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph6;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn c5() -> Graph {
        graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    }

    fn petersen() -> Graph {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..5).map(|i| (i, i + 5)));
        edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        graph(10, &edges)
    }

    // Reference implementation: minimum encoding over every permutation.
    fn brute_canonical_bytes(g: &Graph) -> Vec<u8> {
        let n = g.n();
        assert!(n <= 8, "factorial oracle is for small orders only");
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<u8>> = None;
        permute(&mut perm, 0, &mut |perm| {
            let mut inv = vec![0usize; n];
            for (pos, &v) in perm.iter().enumerate() {
                inv[v] = pos;
            }
            let bytes = graph6::encode(&g.relabel(&inv)).into_bytes();
            if best.as_ref().is_none_or(|b| bytes < *b) {
                best = Some(bytes);
            }
        });
        best.unwrap()
    }

    fn permute(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == perm.len() {
            f(perm);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            permute(perm, k + 1, f);
            perm.swap(k, i);
        }
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

        fn below(&mut self, bound: usize) -> usize {
            (self.next() % bound as u64) as usize
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

        fn perm(&mut self, n: usize) -> Vec<usize> {
            let mut p: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                p.swap(i, self.below(i + 1));
            }
            p
        }
    }

    #[test]
    fn canonical_bytes_match_factorial_oracle() {
        let mut rng = SplitMix(0x5eed);
        let mut checked = 0;
        for n in 2..=7usize {
            for density in [(1u64, 4u64), (1, 2), (3, 4)] {
                for _ in 0..12 {
                    let g = rng.graph(n, density.0, density.1);
                    assert_eq!(
                        canonical_form(&g).bytes,
                        brute_canonical_bytes(&g),
                        "mismatch on {g:?}"
                    );
                    checked += 1;
                }
            }
        }
        assert!(checked >= 200);
    }

    #[test]
    fn perm_reproduces_bytes_and_relabeling_is_stable() {
        let mut rng = SplitMix(0xfeed);
        for trial in 0..100 {
            let n = 2 + rng.below(12);
            let g = rng.graph(n, 1 + (trial % 3) as u64, 4);
            let form = canonical_form(&g);
            assert_eq!(
                graph6::encode(&g.relabel(&form.perm)).into_bytes(),
                form.bytes
            );
            let shuffled = g.relabel(&rng.perm(n));
            assert_eq!(canonical_form(&shuffled).bytes, form.bytes);
        }
    }

    #[test]
    fn highly_symmetric_graphs_stay_fast_and_exact() {
        // Complete, empty, and complete bipartite graphs have factorial-sized
        // automorphism groups; the symmetry prunings must collapse them.
        let k24 = Graph::complete(24).unwrap();
        assert_eq!(
            canonical_form(&k24).bytes,
            graph6::encode(&k24).into_bytes()
        );
        let e24 = k24.complement();
        assert_eq!(
            canonical_form(&e24).bytes,
            graph6::encode(&e24).into_bytes()
        );
        let mut edges = Vec::new();
        for u in 0..8 {
            for v in 8..16 {
                edges.push((u, v));
            }
        }
        let k88 = graph(16, &edges);
        let shuffled = k88.relabel(&SplitMix(7).perm(16));
        assert_eq!(canonical_form(&k88).bytes, canonical_form(&shuffled).bytes);
    }

    #[test]
    fn distinguishes_cospectral_looking_cubics() {
        // Petersen vs. a Hamiltonian 3-regular graph on 10 vertices: same
        // order and degree sequence, different canonical forms.
        let p = petersen();
        let mut edges: Vec<(usize, usize)> = (0..10).map(|i| (i, (i + 1) % 10)).collect();
        edges.extend((0..5).map(|i| (i, i + 5)));
        let circ = graph(10, &edges);
        assert!(!are_isomorphic(&p, &circ));
        assert!(are_isomorphic(&p, &p.relabel(&SplitMix(3).perm(10))));
    }

    #[test]
    fn isomorphism_agrees_with_brute_force_on_small_pairs() {
        fn brute_iso(a: &Graph, b: &Graph) -> bool {
            if a.n() != b.n() || a.edge_count() != b.edge_count() {
                return false;
            }
            fn extend(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: u64) -> bool {
                let u = map.len();
                if u == a.n() {
                    return true;
                }
                for v in 0..b.n() {
                    if used & (1 << v) != 0 {
                        continue;
                    }
                    if (0..u).all(|w| a.has_edge(w, u) == b.has_edge(map[w], v)) {
                        map.push(v);
                        if extend(a, b, map, used | (1 << v)) {
                            return true;
                        }
                        map.pop();
                    }
                }
                false
            }
            extend(a, b, &mut Vec::new(), 0)
        }

        let mut rng = SplitMix(0xabcd);
        let mut pairs = 0;
        while pairs < 1100 {
            let n = 2 + rng.below(7);
            let density = 1 + rng.next() % 3;
            let a = rng.graph(n, density, 4);
            // Mix relabeled copies with independent draws so both outcomes
            // appear.
            let b = if rng.next() % 2 == 0 {
                a.relabel(&rng.perm(n))
            } else {
                rng.graph(n, density, 4)
            };
            assert_eq!(are_isomorphic(&a, &b), brute_iso(&a, &b));
            pairs += 1;
        }
    }

    #[test]
    fn self_complementary_five_cycle() {
        assert!(are_isomorphic(&c5(), &c5().complement()));
    }

    #[test]
    fn automorphism_counts_on_known_groups() {
        assert_eq!(automorphism_count(&c5()), 10); // dihedral D_5
        assert_eq!(automorphism_count(&petersen()), 120); // S_5
        assert_eq!(automorphism_count(&Graph::complete(6).unwrap()), 720);
        assert_eq!(automorphism_count(&graph(4, &[(0, 1), (1, 2), (2, 3)])), 2);
        assert_eq!(automorphism_count(&graph(1, &[])), 1);
        // Triangle plus an isolated vertex: S_3 on the triangle.
        assert_eq!(
            automorphism_count(&graph(4, &[(0, 1), (1, 2), (2, 0)])),
            6
        );
    }

    #[test]
    fn canonical_labeling_test_matches_full_form() {
        let mut rng = SplitMix(0xc0de);
        for _ in 0..300 {
            let n = 2 + rng.below(8);
            let density = 1 + rng.next() % 3;
            let g = rng.graph(n, density, 4);
            let is_canon = is_canonically_labeled(g.n(), g.rows());
            let expected = canonical_form(&g).bytes == graph6::encode(&g).into_bytes();
            assert_eq!(is_canon, expected, "on {g:?}");
        }
    }
}
