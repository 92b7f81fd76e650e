//! Deterministic generators for the extremal families at the connectivity
//! barrier, plus structural membership deciders for the two characterization
//! families.
//!
//! All generators follow one labeling convention so identical parameters
//! give bit-identical encodings: base cliques occupy consecutive indices
//! starting at 0 within their range, deleted matchings pair the lowest
//! indices as (0,1), (2,3), ..., and a glue vertex takes the highest index
//! of its side. Sizes stay within the 64-vertex graph type; anything larger
//! is a parameter error, not a panic.
//!
//! The deciders do not compare against generator output. They read the
//! structure directly: split at the unique cut vertex and test the forced
//! complement shape of each side. That keeps them complete for every valid
//! variant, including ones no generator here materializes.

use thiserror::Error;

use crate::graph::{bit_indices, Graph, MAX_VERTICES};
use crate::structure::{components_after_deletion, cut_vertices};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("{family} needs r of at least {min}, got {r}")]
    RTooSmall {
        family: &'static str,
        r: usize,
        min: usize,
    },
    #[error("{family} needs even t with 2 <= t <= {max}, got {t}")]
    TOutOfRange {
        family: &'static str,
        t: usize,
        max: usize,
    },
    #[error("{family} needs {parity} k of at least {min}, got {k}")]
    KOutOfRange {
        family: &'static str,
        parity: &'static str,
        k: usize,
        min: usize,
    },
    #[error("order must be {parity} and at least {min} for k = {k}, got {n}")]
    OrderOutOfRange {
        parity: &'static str,
        n: usize,
        k: usize,
        min: usize,
    },
    #[error("parameters give {n} vertices, more than the supported {MAX_VERTICES}")]
    TooManyVertices { n: usize },
    #[error("connection set must be nonempty")]
    EmptyConnectionSet,
    #[error("connection offset {offset} outside 1..={max}")]
    OffsetOutOfRange { offset: usize, max: usize },
    #[error("variant needs exactly {expected} paths, got {got}")]
    VariantPathCount { expected: usize, got: usize },
    #[error("variant cycle on {len} vertices is shorter than 3")]
    VariantCycleTooShort { len: usize },
    #[error("variant path on {len} vertices has no edge")]
    VariantPathTooShort { len: usize },
    #[error("variant covers {got} vertices, the deleted subgraph must span {expected}")]
    VariantCoverage { expected: usize, got: usize },
}

/// Shape of the spanning subgraph deleted from a clique to form an H'
/// member: disjoint cycles and paths given by their vertex counts. The
/// profile constraint fixes the number of paths at (t+2)/2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPrimeVariant {
    pub cycles: Vec<usize>,
    pub paths: Vec<usize>,
}

impl HPrimeVariant {
    /// The matching-union shape: t/2 single-edge paths and one long path
    /// covering the rest.
    pub fn default_for(r: usize, t: usize) -> HPrimeVariant {
        let mut paths = vec![2; t / 2];
        paths.push(2 * r + 3 - t);
        HPrimeVariant {
            cycles: Vec::new(),
            paths,
        }
    }

    /// Every realizable shape for the (r, t) profile, deterministically
    /// ordered: variants with fewer and shorter cycles first, path
    /// multisets nondecreasing. Distinct shapes delete non-isomorphic
    /// spanning subgraphs, so each yields a different member.
    pub fn enumerate_for(r: usize, t: usize) -> Result<Vec<HPrimeVariant>, ConstructError> {
        guard_h_params("h_prime_variants", r, t)?;
        let total = 2 * r + 3;
        let slots = (t + 2) / 2;
        let mut out = Vec::new();
        let mut cycles = Vec::new();
        Self::with_cycles(3, 0, total, slots, &mut cycles, &mut out);
        Ok(out)
    }

    fn with_cycles(
        min_cycle: usize,
        used: usize,
        total: usize,
        slots: usize,
        cycles: &mut Vec<usize>,
        out: &mut Vec<HPrimeVariant>,
    ) {
        let mut paths = Vec::new();
        Self::with_paths(2, total - used, slots, &mut paths, &mut |paths| {
            out.push(HPrimeVariant {
                cycles: cycles.clone(),
                paths: paths.to_vec(),
            });
        });
        let mut c = min_cycle;
        while used + c + 2 * slots <= total {
            cycles.push(c);
            Self::with_cycles(c, used + c, total, slots, cycles, out);
            cycles.pop();
            c += 1;
        }
    }

    fn with_paths(
        min: usize,
        left: usize,
        slots: usize,
        acc: &mut Vec<usize>,
        sink: &mut impl FnMut(&[usize]),
    ) {
        if slots == 0 {
            if left == 0 {
                sink(acc);
            }
            return;
        }
        let mut p = min;
        while p * slots <= left {
            acc.push(p);
            Self::with_paths(p, left - p, slots - 1, acc, sink);
            acc.pop();
            p += 1;
        }
    }

    fn validate(&self, r: usize, t: usize) -> Result<(), ConstructError> {
        let expected_paths = (t + 2) / 2;
        if self.paths.len() != expected_paths {
            return Err(ConstructError::VariantPathCount {
                expected: expected_paths,
                got: self.paths.len(),
            });
        }
        for &len in &self.cycles {
            if len < 3 {
                return Err(ConstructError::VariantCycleTooShort { len });
            }
        }
        for &len in &self.paths {
            if len < 2 {
                return Err(ConstructError::VariantPathTooShort { len });
            }
        }
        let covered: usize = self.cycles.iter().chain(&self.paths).sum();
        if covered != 2 * r + 3 {
            return Err(ConstructError::VariantCoverage {
                expected: 2 * r + 3,
                got: covered,
            });
        }
        Ok(())
    }
}

struct Build {
    rows: Vec<u64>,
}

impl Build {
    fn new(n: usize) -> Build {
        debug_assert!(n <= MAX_VERTICES);
        Build { rows: vec![0; n] }
    }

    fn add(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    fn del(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
    }

    fn clique(&mut self, lo: usize, hi: usize) {
        for u in lo..hi {
            for v in (u + 1)..hi {
                self.add(u, v);
            }
        }
    }

    /// Delete the matching (lo, lo+1), (lo+2, lo+3), ... covering `count`
    /// vertices.
    fn del_matching(&mut self, lo: usize, count: usize) {
        debug_assert!(count % 2 == 0);
        for i in 0..count / 2 {
            self.del(lo + 2 * i, lo + 2 * i + 1);
        }
    }

    fn finish(self) -> Graph {
        Graph::from_adj_rows(self.rows).expect("constructions build valid adjacency")
    }
}

fn guard_order(n: usize) -> Result<(), ConstructError> {
    if n > MAX_VERTICES {
        Err(ConstructError::TooManyVertices { n })
    } else {
        Ok(())
    }
}

fn guard_f_params(family: &'static str, r: usize, t: usize) -> Result<(), ConstructError> {
    if r < 2 {
        return Err(ConstructError::RTooSmall { family, r, min: 2 });
    }
    if t < 2 || t % 2 != 0 || t > 2 * r - 2 {
        return Err(ConstructError::TOutOfRange {
            family,
            t,
            max: 2 * r - 2,
        });
    }
    Ok(())
}

fn guard_h_params(family: &'static str, r: usize, t: usize) -> Result<(), ConstructError> {
    if r < 1 {
        return Err(ConstructError::RTooSmall { family, r, min: 1 });
    }
    if t < 2 || t % 2 != 0 || t > 2 * r {
        return Err(ConstructError::TOutOfRange {
            family,
            t,
            max: 2 * r,
        });
    }
    Ok(())
}

/// The Petersen graph: outer 5-cycle 0..4, spokes to 5..9, inner pentagram.
pub fn petersen() -> Graph {
    let mut b = Build::new(10);
    for i in 0..5 {
        b.add(i, (i + 1) % 5);
        b.add(i, i + 5);
        b.add(5 + i, 5 + (i + 2) % 5);
    }
    b.finish()
}

/// The Petersen graph with vertex 9 replaced by a triangle {9, 10, 11},
/// each triangle vertex adopting one of the three old neighbors.
pub fn petersen_prime() -> Graph {
    let p = petersen();
    let mut b = Build::new(12);
    for (u, v) in p.edges() {
        if u != 9 && v != 9 {
            b.add(u, v);
        }
    }
    b.add(9, 10);
    b.add(9, 11);
    b.add(10, 11);
    // Old neighbors of 9 were 4, 6, 7.
    b.add(9, 4);
    b.add(10, 6);
    b.add(11, 7);
    b.finish()
}

/// K_{2r+1} with a matching on t vertices deleted, plus a new vertex
/// (index 2r+1) adjacent to the t matched vertices. One vertex of degree t,
/// the rest of degree 2r.
pub fn f_rt(r: usize, t: usize) -> Result<Graph, ConstructError> {
    guard_f_params("f_rt", r, t)?;
    let n = 2 * r + 2;
    guard_order(n)?;
    let mut b = Build::new(n);
    b.clique(0, 2 * r + 1);
    b.del_matching(0, t);
    for u in 0..t {
        b.add(u, 2 * r + 1);
    }
    Ok(b.finish())
}

/// K_{2r+1} with a matching on 2r−t vertices deleted: t+1 vertices of
/// degree 2r and 2r−t of degree 2r−1.
pub fn f_prime_rt(r: usize, t: usize) -> Result<Graph, ConstructError> {
    guard_f_params("f_prime_rt", r, t)?;
    let n = 2 * r + 1;
    guard_order(n)?;
    let mut b = Build::new(n);
    b.clique(0, n);
    b.del_matching(0, 2 * r - t);
    Ok(b.finish())
}

/// The 2r-regular characterization member on 4r+3 vertices: f_rt(r,t) on
/// indices 0..2r+2 glued at its degree-t vertex (index 2r+1) to the 2r−t
/// deficient vertices of f_prime_rt(r,t) on indices 2r+2..4r+3. The glue
/// vertex is the unique cut vertex.
pub fn family_f(r: usize, t: usize) -> Result<Graph, ConstructError> {
    guard_f_params("family_f", r, t)?;
    let n = 4 * r + 3;
    guard_order(n)?;
    let glue = 2 * r + 1;
    let shift = 2 * r + 2;
    let mut b = Build::new(n);
    b.clique(0, 2 * r + 1);
    b.del_matching(0, t);
    for u in 0..t {
        b.add(u, glue);
    }
    b.clique(shift, n);
    b.del_matching(shift, 2 * r - t);
    for u in 0..(2 * r - t) {
        b.add(glue, shift + u);
    }
    Ok(b.finish())
}

/// K_{2r+2} with a matching on t vertices deleted, plus a new vertex
/// (index 2r+2) adjacent to the t matched vertices.
pub fn h_rt(r: usize, t: usize) -> Result<Graph, ConstructError> {
    guard_h_params("h_rt", r, t)?;
    let n = 2 * r + 3;
    guard_order(n)?;
    let mut b = Build::new(n);
    b.clique(0, 2 * r + 2);
    b.del_matching(0, t);
    for u in 0..t {
        b.add(u, 2 * r + 2);
    }
    Ok(b.finish())
}

/// K_{2r+3} minus a spanning union of disjoint cycles and exactly (t+2)/2
/// disjoint paths: t+2 vertices of degree 2r+1 and 2r+1−t of degree 2r.
/// `variant` picks the deleted shape; `None` is the matching-union default.
pub fn h_prime_rt(
    r: usize,
    t: usize,
    variant: Option<&HPrimeVariant>,
) -> Result<Graph, ConstructError> {
    guard_h_params("h_prime_rt", r, t)?;
    let n = 2 * r + 3;
    guard_order(n)?;
    let default = HPrimeVariant::default_for(r, t);
    let variant = variant.unwrap_or(&default);
    variant.validate(r, t)?;
    let mut b = Build::new(n);
    b.clique(0, n);
    delete_variant(&mut b, 0, variant);
    Ok(b.finish())
}

/// Deletes the variant's cycles and paths over consecutive indices from
/// `base`: cycles first, then paths, each component on its own interval.
fn delete_variant(b: &mut Build, base: usize, variant: &HPrimeVariant) {
    let mut at = base;
    for &len in &variant.cycles {
        for i in 0..len {
            b.del(at + i, at + (i + 1) % len);
        }
        at += len;
    }
    for &len in &variant.paths {
        for i in 0..len - 1 {
            b.del(at + i, at + i + 1);
        }
        at += len;
    }
}

/// Interior vertices of the variant layout: the deleted subgraph's
/// degree-2 vertices (cycle vertices and path interiors), as offsets from
/// the layout base.
fn variant_interior(variant: &HPrimeVariant) -> Vec<usize> {
    let mut out = Vec::new();
    let mut at = 0usize;
    for &len in &variant.cycles {
        out.extend(at..at + len);
        at += len;
    }
    for &len in &variant.paths {
        out.extend(at + 1..at + len - 1);
        at += len;
    }
    out
}

/// The (2r+1)-regular characterization member on 4r+6 vertices: h_rt(r,t)
/// on indices 0..2r+3 glued at its degree-t vertex (index 2r+2) to the
/// 2r+1−t deficient vertices of h_prime_rt(r,t,variant) on indices
/// 2r+3..4r+6.
pub fn family_h(
    r: usize,
    t: usize,
    variant: Option<&HPrimeVariant>,
) -> Result<Graph, ConstructError> {
    guard_h_params("family_h", r, t)?;
    let n = 4 * r + 6;
    guard_order(n)?;
    let default = HPrimeVariant::default_for(r, t);
    let variant = variant.unwrap_or(&default);
    variant.validate(r, t)?;
    let glue = 2 * r + 2;
    let shift = 2 * r + 3;
    let mut b = Build::new(n);
    b.clique(0, 2 * r + 2);
    b.del_matching(0, t);
    for u in 0..t {
        b.add(u, glue);
    }
    b.clique(shift, n);
    delete_variant(&mut b, shift, variant);
    for off in variant_interior(variant) {
        b.add(glue, shift + off);
    }
    Ok(b.finish())
}

/// Connected k-regular graph on 3k+4 vertices with no spanning path, for
/// even k ≥ 6: two copies of K_{k+1} minus an edge, one K_{k+1} minus a
/// matching on k−4 vertices, and a hub (index 3k+3) adjacent to every
/// deficient vertex. Deleting the hub leaves three components.
pub fn no_path_f(k: usize) -> Result<Graph, ConstructError> {
    if k % 2 != 0 || k < 6 {
        return Err(ConstructError::KOutOfRange {
            family: "no_path_f",
            parity: "even",
            k,
            min: 6,
        });
    }
    let n = 3 * k + 4;
    guard_order(n)?;
    let hub = 3 * k + 3;
    let mut b = Build::new(n);
    for copy in 0..2 {
        let lo = copy * (k + 1);
        b.clique(lo, lo + k + 1);
        b.del(lo, lo + 1);
        b.add(lo, hub);
        b.add(lo + 1, hub);
    }
    let lo = 2 * (k + 1);
    b.clique(lo, lo + k + 1);
    b.del_matching(lo, k - 4);
    for u in 0..(k - 4) {
        b.add(lo + u, hub);
    }
    Ok(b.finish())
}

/// Connected k-regular graph on 3k+5 vertices with no spanning path, for
/// odd k ≥ 5: two copies of K_{k+1} minus an edge, one H' member with t=4
/// on k+2 vertices, and a hub (index 3k+4) adjacent to every deficient
/// vertex.
pub fn no_path_h(k: usize) -> Result<Graph, ConstructError> {
    if k % 2 == 0 || k < 5 {
        return Err(ConstructError::KOutOfRange {
            family: "no_path_h",
            parity: "odd",
            k,
            min: 5,
        });
    }
    let n = 3 * k + 5;
    guard_order(n)?;
    let hub = 3 * k + 4;
    let r = (k - 1) / 2;
    let variant = HPrimeVariant::default_for(r, 4);
    let mut b = Build::new(n);
    for copy in 0..2 {
        let lo = copy * (k + 1);
        b.clique(lo, lo + k + 1);
        b.del(lo, lo + 1);
        b.add(lo, hub);
        b.add(lo + 1, hub);
    }
    let lo = 2 * (k + 1);
    b.clique(lo, lo + k + 2);
    delete_variant(&mut b, lo, &variant);
    for off in variant_interior(&variant) {
        b.add(lo + off, hub);
    }
    Ok(b.finish())
}

/// Circulant graph: vertex i adjacent to i ± s (mod n) for each offset s.
/// Offsets live in 1..=n/2; the half-order offset contributes one edge per
/// vertex, every other offset two.
pub fn circulant(n: usize, offsets: &[usize]) -> Result<Graph, ConstructError> {
    guard_order(n)?;
    if offsets.is_empty() {
        return Err(ConstructError::EmptyConnectionSet);
    }
    let max = n / 2;
    let mut b = Build::new(n);
    for &s in offsets {
        if s == 0 || s > max {
            return Err(ConstructError::OffsetOutOfRange { offset: s, max });
        }
        for i in 0..n {
            b.add(i, (i + s) % n);
        }
    }
    Ok(b.finish())
}

/// Connected k-regular non-Hamiltonian graph on exactly n vertices, for
/// every feasible (k, n) beyond the characterization orders.
///
/// Even k ≥ 4 with odd n ≥ 2k+3: a k-regular circulant on n−k−2 vertices
/// plays the big clique's role. One of its edges is deleted and a glue
/// vertex picks up the two endpoints plus the k−2 deficient vertices of a
/// K_{k+1} minus a matching on the other side.
///
/// Odd k ≥ 3 with even n ≥ 2k+4: a (k+1)-regular circulant on n−k−2
/// vertices loses a spanning union of paths (one on k vertices, the rest
/// single edges over consecutive indices), and the glue vertex joins its
/// k−2 interior vertices plus the two matched vertices of a K_{k+1} minus
/// a one-edge matching.
///
/// Both shapes have the glue vertex as a cut vertex, so neither is
/// Hamiltonian; the orders land on exactly n by construction and are
/// re-checked before returning.
pub fn generalized_no_hamilton(k: usize, n: usize) -> Result<Graph, ConstructError> {
    guard_order(n)?;
    let g = if k % 2 == 0 {
        if k < 4 {
            return Err(ConstructError::KOutOfRange {
                family: "generalized_no_hamilton",
                parity: "even",
                k,
                min: 4,
            });
        }
        if n % 2 == 0 || n < 2 * k + 3 {
            return Err(ConstructError::OrderOutOfRange {
                parity: "odd",
                n,
                k,
                min: 2 * k + 3,
            });
        }
        let m = n - k - 2;
        let offsets: Vec<usize> = (1..=k / 2).collect();
        let base = circulant(m, &offsets)?;
        let glue = m;
        let shift = m + 1;
        let mut b = Build::new(n);
        for (u, v) in base.edges() {
            b.add(u, v);
        }
        b.del(0, 1);
        b.add(0, glue);
        b.add(1, glue);
        b.clique(shift, n);
        b.del_matching(shift, k - 2);
        for u in 0..(k - 2) {
            b.add(glue, shift + u);
        }
        b.finish()
    } else {
        if k < 3 {
            return Err(ConstructError::KOutOfRange {
                family: "generalized_no_hamilton",
                parity: "odd",
                k,
                min: 3,
            });
        }
        if n % 2 != 0 || n < 2 * k + 4 {
            return Err(ConstructError::OrderOutOfRange {
                parity: "even",
                n,
                k,
                min: 2 * k + 4,
            });
        }
        let m = n - k - 2;
        let offsets: Vec<usize> = (1..=(k + 1) / 2).collect();
        let base = circulant(m, &offsets)?;
        // Spanning deletion: a path on k consecutive vertices, then single
        // edges; its interiors are the k−2 future glue neighbors.
        let mut paths = vec![k];
        paths.extend(std::iter::repeat(2).take((m - k) / 2));
        let variant = HPrimeVariant {
            cycles: Vec::new(),
            paths,
        };
        let glue = m;
        let shift = m + 1;
        let mut b = Build::new(n);
        for (u, v) in base.edges() {
            b.add(u, v);
        }
        delete_variant(&mut b, 0, &variant);
        for off in variant_interior(&variant) {
            b.add(glue, off);
        }
        b.clique(shift, n);
        b.del(shift, shift + 1);
        b.add(glue, shift);
        b.add(glue, shift + 1);
        b.finish()
    };
    debug_assert_eq!(g.n(), n);
    debug_assert_eq!(g.degree_profile().is_regular_of, Some(k));
    Ok(g)
}

/// Decides membership in the 2r-regular characterization family and
/// recovers the parameters.
///
/// The two sides of the cut vertex both look like a clique minus a perfect
/// matching on exactly the cut vertex's neighbors, one matching on t
/// vertices and one on 2r−t, and swapping the roles of the sides shows the
/// member for t is isomorphic to the member for 2r−t. The returned t is
/// the smaller of the two side counts, which makes the answer well defined
/// on isomorphism classes.
pub fn is_family_f_member(g: &Graph) -> Option<(usize, usize)> {
    let n = g.n();
    if n < 11 || (n - 3) % 4 != 0 {
        return None;
    }
    let r = (n - 3) / 4;
    if g.degree_profile().is_regular_of != Some(2 * r) {
        return None;
    }
    // Members always have exactly one cut vertex: the glue picks up at
    // least two vertices on each side and the sides are 2-connected.
    let [v] = cut_vertices(g)[..] else {
        return None;
    };
    let comps = components_after_deletion(g, 1 << v);
    if comps.len() != 2 {
        return None;
    }
    let mut counts = [0usize; 2];
    for (side, &comp) in comps.iter().enumerate() {
        if comp.count_ones() as usize != 2 * r + 1 {
            return None;
        }
        counts[side] = matched_side_count(g, v, comp)?;
    }
    let t = counts[0].min(counts[1]);
    if t < 2 || t % 2 != 0 || t > 2 * r - 2 {
        return None;
    }
    Some((r, t))
}

/// Decides membership in the (2r+1)-regular characterization family and
/// recovers the parameters. The sides differ in size, so (r, t) is unique:
/// t is read off the clique-minus-matching side, and the larger side's
/// complement must be a spanning union of cycles and paths whose degree-2
/// vertices are exactly the cut vertex's neighbors there.
///
/// For t = 2r the glue vertex reaches the larger side through a single
/// vertex, so the member has two cut vertices and both of them decode to
/// the same parameters; every cut vertex is tried as the glue candidate.
pub fn is_family_h_member(g: &Graph) -> Option<(usize, usize)> {
    let n = g.n();
    if n < 10 || (n - 6) % 4 != 0 {
        return None;
    }
    let r = (n - 6) / 4;
    if r < 1 || g.degree_profile().is_regular_of != Some(2 * r + 1) {
        return None;
    }
    cut_vertices(g)
        .into_iter()
        .find_map(|v| family_h_split_at(g, r, v))
}

fn family_h_split_at(g: &Graph, r: usize, v: usize) -> Option<(usize, usize)> {
    let comps = components_after_deletion(g, 1 << v);
    if comps.len() != 2 {
        return None;
    }
    let (small, large) = if comps[0].count_ones() <= comps[1].count_ones() {
        (comps[0], comps[1])
    } else {
        (comps[1], comps[0])
    };
    if small.count_ones() as usize != 2 * r + 2 || large.count_ones() as usize != 2 * r + 3 {
        return None;
    }
    let t = matched_side_count(g, v, small)?;
    if t < 2 || t % 2 != 0 || t > 2 * r {
        return None;
    }
    // Large side: complement degrees must be 1 or 2, with the 2s exactly
    // the neighbors of v. Its components are then automatically disjoint
    // cycles and the right number of paths.
    let nv = g.neighbors(v) & large;
    for u in bit_indices(large) {
        let missing = large & !g.neighbors(u) & !(1 << u);
        let want_two = nv & (1 << u) != 0;
        match missing.count_ones() {
            1 if !want_two => {}
            2 if want_two => {}
            _ => return None,
        }
    }
    Some((r, t))
}

/// If the complement of the side induced on `side` is a perfect matching
/// on exactly the neighbors of `v` there, returns how many vertices it
/// covers.
fn matched_side_count(g: &Graph, v: usize, side: u64) -> Option<usize> {
    let nv = g.neighbors(v) & side;
    for u in bit_indices(side) {
        let missing = side & !g.neighbors(u) & !(1 << u);
        if nv & (1 << u) != 0 {
            if missing.count_ones() != 1 || missing & !nv != 0 {
                return None;
            }
        } else if missing != 0 {
            return None;
        }
    }
    Some(nv.count_ones() as usize)
}
