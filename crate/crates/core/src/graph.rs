//! Undirected simple graphs on at most 64 vertices.
//!
//! Every graph stores one `u64` adjacency bitset per vertex, so adjacency
//! tests, degree counts, and neighborhood intersections are single machine
//! operations. Graphs are immutable after construction: every operation that
//! "changes" a graph returns a new one. Vertices are `0..n`.

use std::fmt;

use thiserror::Error;

/// Hard capacity of the bitset representation.
pub const MAX_VERTICES: usize = 64;

/// Errors raised while building a graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {n} exceeds the capacity of {MAX_VERTICES} vertices")]
    TooManyVertices { n: usize },
    #[error("graphs must have at least one vertex")]
    Empty,
    #[error("loop edge at vertex {v}")]
    Loop { v: usize },
    #[error("vertex {v} out of range for order {n}")]
    OutOfRange { v: usize, n: usize },
    #[error("adjacency rows are not symmetric at ({u},{v})")]
    Asymmetric { u: usize, v: usize },
    #[error("vertex selection is empty")]
    EmptySelection,
}

/// Bitmask with the low `n` bits set: the full vertex set of an order-`n` graph.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    debug_assert!(n <= MAX_VERTICES);
    if n == MAX_VERTICES {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the vertex indices present in a bitmask, in ascending order.
#[inline]
pub fn bit_indices(mask: u64) -> impl Iterator<Item = usize> {
    std::iter::successors(
        if mask == 0 { None } else { Some(mask) },
        |&m| {
            let m = m & (m - 1);
            if m == 0 {
                None
            } else {
                Some(m)
            }
        },
    )
    .map(|m| m.trailing_zeros() as usize)
}

/// Degree statistics of a graph: the sorted degree multiset plus the two
/// summaries most checks branch on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    /// All `n` vertex degrees, sorted ascending.
    pub degrees: Vec<usize>,
    /// Maximum degree.
    pub delta_max: usize,
    /// `Some(k)` iff every vertex has degree exactly `k`.
    pub is_regular_of: Option<usize>,
}

/// An undirected simple graph with `1..=64` vertices.
///
/// Invariants, enforced at construction and assumed everywhere else:
/// the adjacency matrix is symmetric, the diagonal is zero, and no row has
/// bits at or above index `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an explicit vertex count and edge list.
    ///
    /// Duplicate pairs and swapped orientations collapse to a single edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::OutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::OutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::Loop { v });
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { n, adj })
    }

    /// Builds a graph directly from adjacency rows, validating the
    /// representation invariants.
    pub fn from_adj_rows(rows: Vec<u64>) -> Result<Graph, GraphError> {
        let n = rows.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        let full = full_mask(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !full != 0 {
                let bad = (row & !full).trailing_zeros() as usize;
                return Err(GraphError::OutOfRange { v: bad, n });
            }
            if row & (1 << v) != 0 {
                return Err(GraphError::Loop { v });
            }
        }
        for u in 0..n {
            for v in bit_indices(rows[u]) {
                if rows[v] & (1 << u) == 0 {
                    return Err(GraphError::Asymmetric { u, v });
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        let full = full_mask(n);
        let adj = (0..n).map(|v| full & !(1 << v)).collect();
        Ok(Graph { n, adj })
    }

    /// Internal constructor for callers that already guarantee the invariants.
    /// Validates them in debug builds.
    pub(crate) fn from_rows_unchecked(n: usize, rows: &[u64]) -> Graph {
        debug_assert_eq!(rows.len(), n);
        debug_assert!(
            Graph::from_adj_rows(rows.to_vec()).is_ok(),
            "internal adjacency rows violate graph invariants"
        );
        Graph {
            n,
            adj: rows.to_vec(),
        }
    }

    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2
    }

    /// Bitmask of the full vertex set.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u] & (1 << v) != 0
    }

    /// Neighborhood of `v` as a bitmask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        debug_assert!(v < self.n);
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Raw adjacency rows; row `v` is the neighborhood bitmask of `v`.
    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    /// Vertex indices `0..n`.
    #[inline]
    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n)
            .flat_map(move |u| bit_indices(self.adj[u] & !full_mask(u + 1)).map(move |v| (u, v)))
    }

    /// Graph on the same vertices with exactly the missing pairs as edges.
    pub fn complement(&self) -> Graph {
        let full = self.vertex_mask();
        let adj = (0..self.n)
            .map(|v| full & !self.adj[v] & !(1 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Subgraph induced by the vertex set `verts` (a bitmask), relabeled to
    /// `0..|verts|` in ascending original order. The returned map sends each
    /// new index to the original vertex it came from.
    pub fn induced_subgraph(&self, verts: u64) -> Result<(Graph, Vec<usize>), GraphError> {
        if verts == 0 {
            return Err(GraphError::EmptySelection);
        }
        if verts & !self.vertex_mask() != 0 {
            let bad = (verts & !self.vertex_mask()).trailing_zeros() as usize;
            return Err(GraphError::OutOfRange { v: bad, n: self.n });
        }
        let map: Vec<usize> = bit_indices(verts).collect();
        let m = map.len();
        let mut adj = vec![0u64; m];
        for (new_u, &old_u) in map.iter().enumerate() {
            for (new_v, &old_v) in map.iter().enumerate() {
                if self.has_edge(old_u, old_v) {
                    adj[new_u] |= 1 << new_v;
                }
            }
        }
        Ok((Graph { n: m, adj }, map))
    }

    /// Applies a relabeling: vertex `v` of `self` becomes `perm[v]` of the
    /// result. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must match order");
        let mut seen = 0u64;
        for &p in perm {
            assert!(p < self.n && seen & (1 << p) == 0, "not a permutation");
            seen |= 1 << p;
        }
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            for v in bit_indices(self.adj[u]) {
                adj[perm[u]] |= 1 << perm[v];
            }
        }
        Graph { n: self.n, adj }
    }

    /// Sorted degree multiset with summaries.
    pub fn degree_profile(&self) -> DegreeProfile {
        let mut degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        degrees.sort_unstable();
        let delta_max = *degrees.last().expect("graphs are nonempty");
        let is_regular_of = if degrees[0] == delta_max {
            Some(delta_max)
        } else {
            None
        };
        DegreeProfile {
            degrees,
            delta_max,
            is_regular_of,
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={};", self.n)?;
        for (u, v) in self.edges() {
            write!(f, " {u}-{v}")?;
        }
        write!(f, ")")
    }
}
