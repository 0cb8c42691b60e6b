//! Undirected simple graphs stored as a packed link field.
//!
//! Nodes are `0..n`; the unordered pair `(i,j)` with `i < j` owns position
//! `j(j-1)/2 + i` of the link field, so the field lists pairs in the order
//! (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...

use std::fmt;

use crate::bits::BitString;
use crate::error::Error;
use crate::Result;

/// Position of pair `(i,j)`, `i < j`, in the link field. Callers guarantee
/// the ordering; use [`edge_index`] for a checked version.
#[inline]
pub(crate) fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// Checked link-field position of the pair `(i,j)`.
pub fn edge_index(i: usize, j: usize, n: usize) -> Result<usize> {
    if i == j {
        return Err(Error::SelfLoop(i));
    }
    if i > j {
        return Err(Error::UnorderedPair { i, j });
    }
    if j >= n {
        return Err(Error::NodeOutOfRange { index: j, n });
    }
    Ok(pair_index(i, j))
}

/// Number of unordered pairs over `n` nodes.
#[inline]
pub fn link_field_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// An undirected simple graph: node count plus one membership flag per
/// unordered node pair. Immutable after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    links: BitString,
}

impl Graph {
    /// Graph on `n` nodes with no edges.
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            links: BitString::zeros(link_field_len(n)),
        }
    }

    /// Complete graph on `n` nodes.
    pub fn complete(n: usize) -> Graph {
        Graph::empty(n).complement()
    }

    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Graph> {
        let mut links = BitString::zeros(link_field_len(n));
        for &(i, j) in pairs {
            links.set(edge_index(i, j, n)?, true);
        }
        Ok(Graph { n, links })
    }

    /// Wraps an existing link field; its length must match `n`.
    pub fn from_link_field(n: usize, links: BitString) -> Result<Graph> {
        if links.len() != link_field_len(n) {
            return Err(Error::MalformedDescription(format!(
                "link field has {} bits, expected {} for {} nodes",
                links.len(),
                link_field_len(n),
                n
            )));
        }
        Ok(Graph { n, links })
    }

    pub(crate) fn from_lsb_u64(n: usize, field: u64) -> Graph {
        Graph {
            n,
            links: BitString::from_lsb_u64(link_field_len(n), field),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn link_field(&self) -> &BitString {
        &self.links
    }

    pub(crate) fn link_field_lsb_u64(&self) -> u64 {
        self.links.to_lsb_u64()
    }

    pub fn link_count(&self) -> usize {
        self.links.count_ones()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.links.get(pair_index(i, j))
    }

    /// Edges as `(i,j)` pairs with `i < j`, in link-field order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.link_count());
        for j in 1..self.n {
            for i in 0..j {
                if self.links.get(pair_index(i, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The graph with a link exactly where this one has none.
    pub fn complement(&self) -> Graph {
        Graph {
            n: self.n,
            links: self.links.complemented(),
        }
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degrees = vec![0usize; self.n];
        for (i, j) in self.edges() {
            degrees[i] += 1;
            degrees[j] += 1;
        }
        degrees
    }

    /// Relabels nodes: node `i` of this graph becomes node `perm[i]`.
    pub fn apply_permutation(&self, perm: &[usize]) -> Result<Graph> {
        crate::perm::check_permutation(perm, self.n)?;
        let mut links = BitString::zeros(self.links.len());
        for (i, j) in self.edges() {
            let (a, b) = if perm[i] < perm[j] {
                (perm[i], perm[j])
            } else {
                (perm[j], perm[i])
            };
            links.set(pair_index(a, b), true);
        }
        Ok(Graph { n: self.n, links })
    }

    /// Parses the edge-list text format: first line `n`, then one `i j` pair
    /// per line (0-based). Blank lines are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::MalformedEdgeList("missing node-count line".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::MalformedEdgeList(format!("bad node count {header:?}")))?;
        let mut pairs = Vec::new();
        for line in lines {
            let mut fields = line.split_whitespace();
            let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::MalformedEdgeList(format!("bad edge line {line:?}")));
            };
            let i: usize = a
                .parse()
                .map_err(|_| Error::MalformedEdgeList(format!("bad node index {a:?}")))?;
            let j: usize = b
                .parse()
                .map_err(|_| Error::MalformedEdgeList(format!("bad node index {b:?}")))?;
            let (i, j) = if i <= j { (i, j) } else { (j, i) };
            pairs.push((i, j));
        }
        Graph::from_edge_list(n, &pairs)
    }

    /// Renders the edge-list text format accepted by [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (i, j) in self.edges() {
            out.push_str(&format!("{i} {j}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, links={})", self.n, self.links)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_edge_link_field() {
        let g = Graph::from_edge_list(3, &[(0, 1)]).unwrap();
        assert_eq!(g.link_field().to_string(), "100");
    }

    #[test]
    fn star_link_field() {
        let g = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(g.link_field().to_string(), "110100");
    }

    #[test]
    fn zero_node_graph() {
        let g = Graph::from_edge_list(0, &[]).unwrap();
        assert_eq!(g.n(), 0);
        assert!(g.link_field().is_empty());
    }

    #[test]
    fn duplicate_pairs_collapse() {
        let g = Graph::from_edge_list(3, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(g.link_count(), 1);
    }

    #[test]
    fn rejects_self_loop_and_range() {
        assert!(matches!(
            Graph::from_edge_list(3, &[(1, 1)]),
            Err(Error::SelfLoop(1))
        ));
        assert!(matches!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(Error::NodeOutOfRange { index: 3, n: 3 })
        ));
        assert!(matches!(
            Graph::from_edge_list(3, &[(2, 1)]),
            Err(Error::UnorderedPair { i: 2, j: 1 })
        ));
    }

    #[test]
    fn edge_index_examples() {
        assert_eq!(edge_index(0, 1, 3).unwrap(), 0);
        assert_eq!(edge_index(1, 2, 3).unwrap(), 2);
        assert_eq!(edge_index(2, 3, 4).unwrap(), 5);
    }

    #[test]
    fn edge_index_bijection_up_to_12() {
        for n in 0..=12usize {
            let mut seen = vec![false; link_field_len(n)];
            for j in 0..n {
                for i in 0..j {
                    let pos = edge_index(i, j, n).unwrap();
                    assert!(!seen[pos], "collision at ({i},{j}) for n={n}");
                    seen[pos] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn complement_examples() {
        let g = Graph::from_edge_list(3, &[(0, 1)]).unwrap();
        assert_eq!(g.complement().edges(), vec![(0, 2), (1, 2)]);
        assert_eq!(Graph::empty(4).complement(), Graph::complete(4));

        // 3-edge path on 4 nodes is in the self-complementary class
        let path = Graph::from_edge_list(4, &[(0, 1), (1, 3), (2, 3)]).unwrap();
        let comp = path.complement();
        assert_eq!(comp.link_count(), 3);
        let mut degrees = comp.degree_sequence();
        degrees.sort();
        assert_eq!(degrees, vec![1, 1, 2, 2]);
    }

    #[test]
    fn degree_sequences() {
        assert_eq!(Graph::complete(4).degree_sequence(), vec![3, 3, 3, 3]);
        let star = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.degree_sequence(), vec![3, 1, 1, 1]);
        let path = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.degree_sequence(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn edge_list_text_round_trip() {
        let g = Graph::from_edge_list(5, &[(0, 1), (2, 4), (1, 3)]).unwrap();
        let text = g.to_edge_list();
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
        assert!(Graph::parse_edge_list("").is_err());
        assert!(Graph::parse_edge_list("3\n0 1 2\n").is_err());
    }

    proptest! {
        #[test]
        fn complement_involution_and_count(n in 0usize..12, seed in any::<u64>()) {
            let g = random_graph(n, seed);
            let c = g.complement();
            prop_assert_eq!(c.link_count(), link_field_len(n) - g.link_count());
            prop_assert_eq!(c.complement(), g);
        }

        #[test]
        fn edges_round_trip(n in 0usize..12, seed in any::<u64>()) {
            let g = random_graph(n, seed);
            let rebuilt = Graph::from_edge_list(n, &g.edges()).unwrap();
            prop_assert_eq!(rebuilt, g);
        }

        #[test]
        fn degree_sum_is_twice_links(n in 0usize..12, seed in any::<u64>()) {
            let g = random_graph(n, seed);
            let sum: usize = g.degree_sequence().iter().sum();
            prop_assert_eq!(sum, 2 * g.link_count());
        }
    }

    fn random_graph(n: usize, seed: u64) -> Graph {
        crate::ensemble::er_random(n, 0.5, seed)
    }
}
