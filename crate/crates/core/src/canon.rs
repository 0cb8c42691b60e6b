//! Canonical labeling, automorphism group order, and omega.
//!
//! The canonical form of a graph is the lexicographically smallest link
//! field over all relabelings, found by equitable partition refinement with
//! individualization and backtracking. Automorphisms discovered as leaf
//! collisions prune branches that lead into already-explored orbits.
//!
//! The group order is computed separately by an orbit-stabilizer chain:
//! fix a vertex, count its orbit by comparing canonical forms of the graph
//! with one candidate vertex marked, multiply, and recurse on the stabilizer
//! (the marked coloring). That keeps highly symmetric graphs (where |Aut|
//! reaches n!) exact without enumerating the group.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bits::BitString;
use crate::codec::Description;
use crate::graph::{pair_index, Graph};
use crate::perm::factorial;

/// Isomorphism certificate: two graphs share a `CanonicalForm` exactly when
/// they are isomorphic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm(pub Description);

impl CanonicalForm {
    pub fn description(&self) -> &Description {
        &self.0
    }

    pub fn graph(&self) -> Graph {
        self.0.graph()
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.n();
    let links = if n <= 11 {
        let field = crate::canon_fast::canonical_field_u64(n, g.link_field_lsb_u64());
        BitString::from_lsb_u64(g.link_field().len(), field)
    } else {
        let adj = Adjacency::from_graph(g);
        canonical_field(&adj, None)
    };
    CanonicalForm(
        Description::from_bits(&{
            let mut bits = BitString::new();
            bits.extend_repeat(true, n);
            bits.push(false);
            bits.extend_from(&links);
            bits
        })
        .expect("canonical field has the right length"),
    )
}

/// The canonically relabeled graph itself.
pub fn canonical_graph(g: &Graph) -> Graph {
    canonical_form(g).graph()
}

/// Order of the automorphism group of `g`.
pub fn automorphism_order(g: &Graph) -> BigUint {
    let n = g.n();
    if n <= 1 {
        return BigUint::one();
    }
    let adj = Adjacency::from_graph(g);
    let mut colors = vec![0u32; n];
    let mut next_color = 1u32;
    let mut order = BigUint::one();
    loop {
        let partition = refined_partition(&adj, &colors);
        let Some(cell) = partition.first_non_singleton() else {
            break;
        };
        let members = partition.cell_members(cell);
        let v0 = members[0] as usize;

        colors[v0] = next_color;
        let base = canonical_field(&adj, Some(&colors));
        colors[v0] = 0;

        let mut orbit = 1u64;
        for &u in &members[1..] {
            let u = u as usize;
            colors[u] = next_color;
            let form = canonical_field(&adj, Some(&colors));
            colors[u] = 0;
            if form == base {
                orbit += 1;
            }
        }

        order *= orbit;
        colors[v0] = next_color;
        next_color += 1;
    }
    order
}

/// Number of distinct descriptions of `g`: `n! / |Aut(g)|`.
pub fn omega(g: &Graph) -> BigUint {
    let fact = factorial(g.n());
    let aut = automorphism_order(g);
    debug_assert!((&fact % &aut).is_zero());
    fact / aut
}

// ---------------------------------------------------------------------------
// adjacency bitsets
// ---------------------------------------------------------------------------

pub(crate) struct Adjacency {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl Adjacency {
    pub(crate) fn from_graph(g: &Graph) -> Adjacency {
        let n = g.n();
        let stride = n.div_ceil(64).max(1);
        let mut rows = vec![0u64; n * stride];
        for (i, j) in g.edges() {
            rows[i * stride + j / 64] |= 1 << (j % 64);
            rows[j * stride + i / 64] |= 1 << (i % 64);
        }
        Adjacency { n, stride, rows }
    }

    #[inline]
    fn count_in(&self, v: usize, mask: &[u64]) -> u32 {
        self.rows[v * self.stride..][..self.stride]
            .iter()
            .zip(mask)
            .map(|(r, m)| (r & m).count_ones())
            .sum()
    }

    #[inline]
    fn has_edge(&self, i: usize, j: usize) -> bool {
        (self.rows[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }
}

// ---------------------------------------------------------------------------
// ordered partitions
// ---------------------------------------------------------------------------

#[derive(Clone)]
struct Partition {
    order: Vec<u32>,
    cells: Vec<(u32, u32)>, // (start, len)
}

impl Partition {
    fn unit(n: usize) -> Partition {
        Partition {
            order: (0..n as u32).collect(),
            cells: if n == 0 { vec![] } else { vec![(0, n as u32)] },
        }
    }

    /// Cells grouped by color value, ascending; vertex ids ascending inside.
    fn from_colors(colors: &[u32]) -> Partition {
        let n = colors.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&v| (colors[v as usize], v));
        let mut cells = Vec::new();
        let mut start = 0u32;
        for k in 1..=n {
            if k == n || colors[order[k] as usize] != colors[order[start as usize] as usize] {
                cells.push((start, k as u32 - start));
                start = k as u32;
            }
        }
        Partition { order, cells }
    }

    fn is_discrete(&self) -> bool {
        self.cells.iter().all(|&(_, len)| len == 1)
    }

    fn first_non_singleton(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for (idx, &(_, len)) in self.cells.iter().enumerate() {
            if len > 1 && best.map_or(true, |(l, _)| len < l) {
                best = Some((len, idx));
            }
        }
        best.map(|(_, idx)| idx)
    }

    fn cell_members(&self, cell: usize) -> Vec<u32> {
        let (start, len) = self.cells[cell];
        self.order[start as usize..(start + len) as usize].to_vec()
    }

    /// Splits `cell` into `[{v}, rest]`, keeping the remainder's order.
    fn individualize(&self, cell: usize, v: u32) -> Partition {
        let mut out = self.clone();
        let (start, len) = out.cells[cell];
        let range = &mut out.order[start as usize..(start + len) as usize];
        let pos = range.iter().position(|&x| x == v).expect("v in cell");
        range[..=pos].rotate_right(1);
        out.cells[cell] = (start, 1);
        out.cells.insert(cell + 1, (start + 1, len - 1));
        out
    }
}

fn refined_partition(adj: &Adjacency, colors: &[u32]) -> Partition {
    let mut partition = Partition::from_colors(colors);
    let mut scratch = RefineScratch::default();
    refine(adj, &mut partition, &mut scratch);
    partition
}

#[derive(Default)]
struct RefineScratch {
    masks: Vec<u64>,
    keys: Vec<u32>,
}

/// Equitable refinement: repeatedly split every cell by the vector of
/// neighbor counts against all current cells (ascending key order, stable)
/// until nothing splits. Label-free, so isomorphic inputs refine alike.
fn refine(adj: &Adjacency, partition: &mut Partition, scratch: &mut RefineScratch) {
    let n = adj.n;
    if n == 0 {
        return;
    }
    loop {
        let ncells = partition.cells.len();
        if ncells == n {
            return;
        }
        scratch.masks.clear();
        scratch.masks.resize(ncells * adj.stride, 0);
        for (c, &(start, len)) in partition.cells.iter().enumerate() {
            for &v in &partition.order[start as usize..(start + len) as usize] {
                scratch.masks[c * adj.stride + v as usize / 64] |= 1 << (v % 64);
            }
        }
        scratch.keys.clear();
        scratch.keys.resize(n * ncells, 0);
        for &v in &partition.order {
            for c in 0..ncells {
                scratch.keys[v as usize * ncells + c] =
                    adj.count_in(v as usize, &scratch.masks[c * adj.stride..][..adj.stride]);
            }
        }

        let mut new_cells = Vec::with_capacity(ncells);
        let keys = &scratch.keys;
        for &(start, len) in &partition.cells {
            if len == 1 {
                new_cells.push((start, 1));
                continue;
            }
            let range = &mut partition.order[start as usize..(start + len) as usize];
            range.sort_by(|&a, &b| {
                keys[a as usize * ncells..][..ncells].cmp(&keys[b as usize * ncells..][..ncells])
            });
            let mut cell_start = 0u32;
            for k in 1..=len {
                let split = k == len
                    || keys[range[k as usize] as usize * ncells..][..ncells]
                        != keys[range[cell_start as usize] as usize * ncells..][..ncells];
                if split {
                    new_cells.push((start + cell_start, k - cell_start));
                    cell_start = k;
                }
            }
        }

        let done = new_cells.len() == partition.cells.len();
        partition.cells = new_cells;
        if done {
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// individualization-refinement search
// ---------------------------------------------------------------------------

struct CanonSearch<'a> {
    adj: &'a Adjacency,
    path: Vec<u32>,
    gens: Vec<Vec<u32>>,
    first: Option<(BitString, Vec<u32>)>,
    best: Option<(BitString, Vec<u32>)>,
    scratch: RefineScratch,
}

/// Lexicographically smallest link field over all labelings compatible with
/// the initial coloring (`None` = all vertices alike).
pub(crate) fn canonical_field(adj: &Adjacency, colors: Option<&[u32]>) -> BitString {
    let n = adj.n;
    if n == 0 {
        return BitString::new();
    }
    let partition = match colors {
        Some(c) => Partition::from_colors(c),
        None => Partition::unit(n),
    };
    let mut search = CanonSearch {
        adj,
        path: Vec::new(),
        gens: Vec::new(),
        first: None,
        best: None,
        scratch: RefineScratch::default(),
    };
    search.explore(partition);
    search.best.expect("at least one leaf").0
}

impl CanonSearch<'_> {
    fn explore(&mut self, mut partition: Partition) {
        refine(self.adj, &mut partition, &mut self.scratch);
        if partition.is_discrete() {
            self.visit_leaf(&partition.order);
            return;
        }

        let cell = partition.first_non_singleton().expect("non-discrete");
        let members = partition.cell_members(cell);
        let mut explored: Vec<u32> = Vec::new();
        let mut uf: Option<(usize, Vec<u32>)> = None;
        for &u in &members {
            if !explored.is_empty() {
                if uf.as_ref().map_or(true, |(glen, _)| *glen != self.gens.len()) {
                    uf = Some((self.gens.len(), self.orbits_fixing_path()));
                }
                let parents = &uf.as_ref().unwrap().1;
                let root = find(parents, u);
                if explored.iter().any(|&w| find(parents, w) == root) {
                    continue;
                }
            }
            let child = partition.individualize(cell, u);
            self.path.push(u);
            self.explore(child);
            self.path.pop();
            explored.push(u);
        }
    }

    fn visit_leaf(&mut self, lab: &[u32]) {
        let field = leaf_field(self.adj, lab);
        match &self.best {
            None => {
                self.first = Some((field.clone(), lab.to_vec()));
                self.best = Some((field, lab.to_vec()));
            }
            Some((best_field, best_lab)) => match field.cmp(best_field) {
                std::cmp::Ordering::Less => {
                    self.best = Some((field, lab.to_vec()));
                }
                std::cmp::Ordering::Equal => {
                    let gen = collision_automorphism(best_lab, lab);
                    self.push_generator(gen);
                }
                std::cmp::Ordering::Greater => {
                    if let Some((first_field, first_lab)) = &self.first {
                        if field == *first_field {
                            let gen = collision_automorphism(first_lab, lab);
                            self.push_generator(gen);
                        }
                    }
                }
            },
        }
    }

    fn push_generator(&mut self, gen: Vec<u32>) {
        debug_assert!(is_automorphism(self.adj, &gen));
        if gen.iter().enumerate().any(|(i, &x)| x != i as u32) {
            self.gens.push(gen);
        }
    }

    /// Union-find of vertex orbits under the generators that fix the current
    /// path pointwise. Conservative: a subset of the true stabilizer.
    fn orbits_fixing_path(&self) -> Vec<u32> {
        let n = self.adj.n;
        let mut parents: Vec<u32> = (0..n as u32).collect();
        for gen in &self.gens {
            if !self.path.iter().all(|&p| gen[p as usize] == p) {
                continue;
            }
            for x in 0..n as u32 {
                union(&mut parents, x, gen[x as usize]);
            }
        }
        parents
    }
}

fn find(parents: &[u32], mut x: u32) -> u32 {
    while parents[x as usize] != x {
        x = parents[x as usize];
    }
    x
}

fn union(parents: &mut [u32], a: u32, b: u32) {
    let ra = find(parents, a);
    let rb = find(parents, b);
    if ra != rb {
        parents[rb as usize] = ra;
    }
}

/// Link field of the graph relabeled so that position `k` holds `lab[k]`.
fn leaf_field(adj: &Adjacency, lab: &[u32]) -> BitString {
    let n = lab.len();
    let mut field = BitString::zeros(n * (n - 1) / 2);
    for b in 1..n {
        for a in 0..b {
            if adj.has_edge(lab[a] as usize, lab[b] as usize) {
                field.set(pair_index(a, b), true);
            }
        }
    }
    field
}

/// The automorphism mapping witnessed by two leaves with equal fields.
fn collision_automorphism(stored_lab: &[u32], current_lab: &[u32]) -> Vec<u32> {
    let n = stored_lab.len();
    let mut inv_current = vec![0u32; n];
    for (pos, &v) in current_lab.iter().enumerate() {
        inv_current[v as usize] = pos as u32;
    }
    (0..n)
        .map(|x| stored_lab[inv_current[x] as usize])
        .collect()
}

fn is_automorphism(adj: &Adjacency, gen: &[u32]) -> bool {
    for i in 0..adj.n {
        for j in (i + 1)..adj.n {
            if adj.has_edge(i, j) != adj.has_edge(gen[i] as usize, gen[j] as usize) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::all_descriptions;
    use crate::ensemble::{er_random, random_permutation};
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn brute_aut(g: &Graph) -> u64 {
        let mut count = 0;
        crate::perm::for_each_permutation(g.n(), |p| {
            if &g.apply_permutation(p).unwrap() == g {
                count += 1;
            }
        });
        count
    }

    #[test]
    fn table_descriptions_share_canonical_form() {
        let forms: Vec<CanonicalForm> = ["1110100", "1110010", "1110001"]
            .iter()
            .map(|s| canonical_form(&s.parse::<Description>().unwrap().graph()))
            .collect();
        assert_eq!(forms[0], forms[1]);
        assert_eq!(forms[1], forms[2]);
    }

    #[test]
    fn complete_graph_is_its_own_form() {
        let k4 = Graph::complete(4);
        assert_eq!(
            canonical_form(&k4).description().to_string(),
            "11110111111"
        );
        assert_eq!(omega(&k4), BigUint::one());
    }

    #[test]
    fn automorphism_orders_of_known_graphs() {
        let single = Graph::from_edge_list(3, &[(0, 1)]).unwrap();
        assert_eq!(automorphism_order(&single), BigUint::from(2u32));
        assert_eq!(omega(&single), BigUint::from(3u32));

        let two_adjacent = Graph::from_edge_list(4, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(automorphism_order(&two_adjacent), BigUint::from(2u32));
        assert_eq!(omega(&two_adjacent), BigUint::from(12u32));

        let c5 = cycle(5);
        assert_eq!(automorphism_order(&c5), BigUint::from(10u32));

        let matching = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(omega(&matching), BigUint::from(3u32));

        let triangle_plus_isolated = Graph::from_edge_list(4, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(omega(&triangle_plus_isolated), BigUint::from(4u32));
    }

    #[test]
    fn highly_symmetric_groups() {
        assert_eq!(automorphism_order(&Graph::empty(8)), factorial(8));
        assert_eq!(automorphism_order(&Graph::complete(16)), factorial(16));
        assert_eq!(automorphism_order(&cycle(12)), BigUint::from(24u32));
        let star = Graph::from_edge_list(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert_eq!(automorphism_order(&star), factorial(5));
        assert_eq!(automorphism_order(&petersen()), BigUint::from(120u32));
        let k33 = Graph::from_edge_list(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        assert_eq!(automorphism_order(&k33), BigUint::from(72u32));
    }

    #[test]
    fn degenerate_graphs() {
        assert_eq!(automorphism_order(&Graph::empty(0)), BigUint::one());
        assert_eq!(omega(&Graph::empty(0)), BigUint::one());
        assert_eq!(canonical_form(&Graph::empty(1)).description().to_string(), "10");
    }

    #[test]
    fn matches_brute_force_small() {
        for n in 0..=5usize {
            let fields = 1u64 << (n * (n - 1) / 2);
            for field in 0..fields {
                let g = Graph::from_lsb_u64(n, field);
                let aut = automorphism_order(&g).to_u64().unwrap();
                assert_eq!(aut, brute_aut(&g), "n={n} field={field:b}");
                let om = omega(&g).to_usize().unwrap();
                assert_eq!(om, all_descriptions(&g, 10).unwrap().len());
            }
        }
    }

    #[test]
    fn colored_field_separates_marked_vertices() {
        // a path 0-1-2: marking an endpoint vs the middle vertex must differ
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let adj = Adjacency::from_graph(&g);
        let end = canonical_field(&adj, Some(&[1, 0, 0]));
        let mid = canonical_field(&adj, Some(&[0, 1, 0]));
        let other_end = canonical_field(&adj, Some(&[0, 0, 1]));
        assert_eq!(end, other_end);
        assert_ne!(end, mid);
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n)
            .map(|i| {
                let j = (i + 1) % n;
                (i.min(j), i.max(j))
            })
            .collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i.min((i + 1) % 5), i.max((i + 1) % 5)));
            edges.push((i, i + 5));
            let j = 5 + (i + 2) % 5;
            edges.push(((i + 5).min(j), (i + 5).max(j)));
        }
        Graph::from_edge_list(10, &edges).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn invariant_under_relabeling(n in 1usize..8, seed in any::<u64>(), pseed in any::<u64>()) {
            let g = er_random(n, 0.5, seed);
            let relabeled = g.apply_permutation(&random_permutation(n, pseed)).unwrap();
            prop_assert_eq!(canonical_form(&g), canonical_form(&relabeled));
            prop_assert_eq!(automorphism_order(&g), automorphism_order(&relabeled));
        }

        #[test]
        fn idempotent(n in 1usize..9, seed in any::<u64>()) {
            let g = er_random(n, 0.5, seed);
            let canon = canonical_graph(&g);
            prop_assert_eq!(canonical_graph(&canon), canon.clone());
        }

        #[test]
        fn omega_matches_description_count(n in 1usize..7, seed in any::<u64>()) {
            let g = er_random(n, 0.5, seed);
            let om = omega(&g).to_usize().unwrap();
            prop_assert_eq!(om, all_descriptions(&g, 10).unwrap().len());
        }

        #[test]
        fn complement_preserves_omega(n in 1usize..8, seed in any::<u64>()) {
            let g = er_random(n, 0.5, seed);
            prop_assert_eq!(omega(&g), omega(&g.complement()));
        }
    }
}
