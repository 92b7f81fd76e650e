//! Connectivity structure: components, cut vertices, blocks.
//!
//! Everything here is exact and deterministic. Components come back ordered
//! by their smallest vertex, cut vertices ascending, blocks as normalized
//! edge lists. The cut machinery is lowpoint DFS; the tests cross-check it
//! against literal delete-and-count on small graphs.

use crate::graph::{bit_indices, Graph};

/// Vertices reachable from `start` by paths inside `allowed`.
///
/// Returns 0 when `start` itself is outside `allowed`.
pub(crate) fn reachable_within(rows: &[u64], start: usize, allowed: u64) -> u64 {
    let seed = (1u64 << start) & allowed;
    if seed == 0 {
        return 0;
    }
    let mut seen = seed;
    let mut frontier = seed;
    while frontier != 0 {
        let mut next = 0u64;
        for v in bit_indices(frontier) {
            next |= rows[v];
        }
        next &= allowed & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Connected components of the subgraph induced by `allowed`, as vertex
/// masks ordered by smallest member.
pub(crate) fn components_within(rows: &[u64], allowed: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut remaining = allowed;
    while remaining != 0 {
        let start = remaining.trailing_zeros() as usize;
        let comp = reachable_within(rows, start, allowed);
        out.push(comp);
        remaining &= !comp;
    }
    out
}

/// True iff the graph is connected. The single-vertex graph counts.
pub fn is_connected(g: &Graph) -> bool {
    reachable_within(g.rows(), 0, g.vertex_mask()) == g.vertex_mask()
}

/// Connected components as vertex masks, ordered by smallest member.
pub fn components(g: &Graph) -> Vec<u64> {
    components_within(g.rows(), g.vertex_mask())
}

/// Components left after deleting the vertices in `deleted`, ordered by
/// smallest member. Deleting everything leaves none.
pub fn components_after_deletion(g: &Graph, deleted: u64) -> Vec<u64> {
    components_within(g.rows(), g.vertex_mask() & !deleted)
}

/// Cut vertices (articulation points) in ascending order: the vertices
/// whose deletion increases the number of components.
pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    CutDfs::run(g).cuts()
}

/// Blocks (maximal 2-connected subgraphs and bridges) as edge lists.
///
/// Each block's edges are normalized `(min, max)` pairs in lexicographic
/// order, and the blocks themselves are sorted by their edge lists, so the
/// output is independent of traversal order. Isolated vertices span no
/// block.
pub fn block_decomposition(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let mut dfs = CutDfs::run(g);
    for block in &mut dfs.blocks {
        block.sort_unstable();
    }
    dfs.blocks.sort();
    dfs.blocks
}

/// True iff the graph is 2-connected: at least 3 vertices, connected, and
/// free of cut vertices.
pub fn is_two_connected(g: &Graph) -> bool {
    g.n() >= 3 && is_connected(g) && cut_vertices(g).is_empty()
}

const UNVISITED: u32 = u32::MAX;

struct CutDfs<'a> {
    g: &'a Graph,
    disc: Vec<u32>,
    low: Vec<u32>,
    clock: u32,
    is_cut: u64,
    edge_stack: Vec<(usize, usize)>,
    blocks: Vec<Vec<(usize, usize)>>,
}

impl<'a> CutDfs<'a> {
    fn run(g: &'a Graph) -> CutDfs<'a> {
        let mut dfs = CutDfs {
            g,
            disc: vec![UNVISITED; g.n()],
            low: vec![0; g.n()],
            clock: 0,
            is_cut: 0,
            edge_stack: Vec::new(),
            blocks: Vec::new(),
        };
        for root in 0..g.n() {
            if dfs.disc[root] == UNVISITED {
                dfs.visit(root, None);
            }
        }
        dfs
    }

    fn visit(&mut self, v: usize, parent: Option<usize>) {
        self.disc[v] = self.clock;
        self.low[v] = self.clock;
        self.clock += 1;
        let mut children = 0u32;
        for w in bit_indices(self.g.neighbors(v)) {
            if Some(w) == parent {
                continue;
            }
            if self.disc[w] == UNVISITED {
                children += 1;
                self.edge_stack.push((v, w));
                self.visit(w, Some(v));
                self.low[v] = self.low[v].min(self.low[w]);
                if self.low[w] >= self.disc[v] {
                    // v separates w's subtree: close off one block.
                    if parent.is_some() || children >= 2 {
                        self.is_cut |= 1 << v;
                    }
                    self.pop_block(v, w);
                }
            } else if self.disc[w] < self.disc[v] {
                // Back edge, recorded once at its lower endpoint.
                self.edge_stack.push((v, w));
                self.low[v] = self.low[v].min(self.disc[w]);
            }
        }
    }

    fn pop_block(&mut self, v: usize, w: usize) {
        let mut block = Vec::new();
        while let Some((a, b)) = self.edge_stack.pop() {
            block.push((a.min(b), a.max(b)));
            if (a, b) == (v, w) {
                break;
            }
        }
        self.blocks.push(block);
    }

    fn cuts(&self) -> Vec<usize> {
        bit_indices(self.is_cut).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        graph(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    fn cycle(n: usize) -> Graph {
        graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    // Literal definition: deleting v leaves more components among the
    // remaining vertices than the graph had.
    fn cut_vertices_by_deletion(g: &Graph) -> Vec<usize> {
        let before = components(g).len();
        (0..g.n())
            .filter(|&v| components_after_deletion(g, 1 << v).len() > before)
            .collect()
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

    #[test]
    fn connectivity_basics() {
        assert!(is_connected(&graph(1, &[])));
        assert!(!is_connected(&graph(2, &[])));
        assert!(is_connected(&path(7)));
        assert!(!is_connected(&graph(4, &[(0, 1), (2, 3)])));
        assert_eq!(components(&graph(4, &[(0, 1), (2, 3)])), vec![0b0011, 0b1100]);
        assert_eq!(components(&graph(3, &[])).len(), 3);
    }

    #[test]
    fn deletion_components_are_ordered_by_smallest_vertex() {
        // Star center deletion isolates the leaves.
        let star = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(
            components_after_deletion(&star, 1 << 0),
            vec![0b00010, 0b00100, 0b01000, 0b10000]
        );
        assert_eq!(components_after_deletion(&star, star.vertex_mask()), vec![]);
    }

    #[test]
    fn path_interior_vertices_are_cut() {
        assert_eq!(cut_vertices(&path(6)), vec![1, 2, 3, 4]);
        assert_eq!(cut_vertices(&cycle(6)), vec![]);
        assert_eq!(cut_vertices(&graph(2, &[(0, 1)])), vec![]);
    }

    #[test]
    fn two_triangles_sharing_a_vertex() {
        let bowtie = graph(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(cut_vertices(&bowtie), vec![2]);
        assert!(!is_two_connected(&bowtie));
        let blocks = block_decomposition(&bowtie);
        assert_eq!(
            blocks,
            vec![
                vec![(0, 1), (0, 2), (1, 2)],
                vec![(2, 3), (2, 4), (3, 4)],
            ]
        );
    }

    #[test]
    fn bridges_become_single_edge_blocks() {
        // Two 4-cycles joined by an edge.
        let mut edges: Vec<(usize, usize)> = (0..4).map(|i| (i, (i + 1) % 4)).collect();
        edges.extend((0..4).map(|i| (4 + i, 4 + (i + 1) % 4)));
        edges.push((3, 4));
        let g = graph(8, &edges);
        assert_eq!(cut_vertices(&g), vec![3, 4]);
        let blocks = block_decomposition(&g);
        assert_eq!(blocks.len(), 3);
        assert!(blocks.contains(&vec![(3, 4)]));
    }

    #[test]
    fn two_connected_examples() {
        assert!(is_two_connected(&cycle(3)));
        assert!(!is_two_connected(&graph(2, &[(0, 1)])));
        assert!(!is_two_connected(&path(4)));
        let petersen = {
            let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
            edges.extend((0..5).map(|i| (i, i + 5)));
            edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
            graph(10, &edges)
        };
        assert!(is_two_connected(&petersen));
        assert_eq!(cut_vertices(&petersen), vec![]);
    }

    #[test]
    fn lowpoint_cuts_match_deletion_counting() {
        let mut rng = SplitMix(0x517);
        for trial in 0..400 {
            let n = 2 + (rng.next() % 15) as usize;
            let g = rng.graph(n, 1 + (trial % 3) as u64, 5);
            assert_eq!(cut_vertices(&g), cut_vertices_by_deletion(&g), "on {g:?}");
        }
    }

    #[test]
    fn blocks_partition_edges_and_are_two_connected() {
        let mut rng = SplitMix(0xb10c);
        for _ in 0..200 {
            let n = 3 + (rng.next() % 12) as usize;
            let density = 1 + rng.next() % 3;
            let g = rng.graph(n, density, 5);
            let blocks = block_decomposition(&g);
            let mut covered: Vec<(usize, usize)> = blocks.concat();
            covered.sort_unstable();
            let mut all: Vec<(usize, usize)> = g.edges().collect();
            all.sort_unstable();
            assert_eq!(covered, all, "blocks must partition the edge set");
            for block in &blocks {
                let mut mask = 0u64;
                for &(a, b) in block {
                    mask |= (1 << a) | (1 << b);
                }
                let (sub, _) = g.induced_subgraph(mask).unwrap();
                if block.len() >= 2 {
                    assert!(is_two_connected(&sub), "multi-edge block on {g:?}");
                } else {
                    assert_eq!(sub.n(), 2);
                }
            }
        }
    }
}
