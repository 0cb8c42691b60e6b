//! The complexity measures: C, zcomplexity, offdiagonal complexity.
//!
//! `C = S_max - log2(omega)` where `S_max = n(n+1)/2 + 1` is the description
//! length and omega counts the distinct descriptions. zcomplexity replaces
//! the flat count with a sum over descriptions weighted by their compressed
//! length, `C_z = 1 - log2 sum_b 2^-min(zeta(b), S_max)`; the leading bit
//! flags compressed versus uncompressed, giving `C_z <= C + 1` with equality
//! exactly when no description compresses below the cap.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::canon::{self, CanonicalForm};
use crate::codec;
use crate::error::Error;
use crate::graph::{link_field_len, Graph};
use crate::perm::{binomial, factorial};
use crate::rle::GrammarVariant;
use crate::rle_fast;
use crate::Result;

/// Feasibility guards for the enumeration-backed operations.
#[derive(Copy, Clone, Debug)]
pub struct Limits {
    /// Largest node count for which `n!` permutation sweeps run (method 2).
    pub max_perm_n: usize,
    /// Largest number of link fields a fixed-link-count sweep may visit
    /// (method 1).
    pub max_fields: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_perm_n: codec::DEFAULT_PERMUTATION_BOUND,
            max_fields: 20_000_000,
        }
    }
}

/// Uncompressed description length `n(n+1)/2 + 1`: the largest value C can
/// take, attained by the empty and full graphs.
pub fn s_max(n: usize) -> usize {
    n * (n + 1) / 2 + 1
}

pub(crate) fn log2_biguint(x: &BigUint) -> f64 {
    x.to_f64().expect("finite").log2()
}

/// Information-content complexity in bits.
pub fn complexity(g: &Graph) -> f64 {
    s_max(g.n()) as f64 - log2_biguint(&canon::omega(g))
}

/// The entropy split off by the labeling redundancy: `log2(omega)`,
/// i.e. `S_max - C`.
pub fn derived_entropy(g: &Graph) -> f64 {
    log2_biguint(&canon::omega(g))
}

// ---------------------------------------------------------------------------
// zcomplexity
// ---------------------------------------------------------------------------

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Method {
    Method1,
    Method2,
}

/// Chooses the cheaper zcomplexity enumeration: link-field combinations
/// (method 1) when `binom(n(n-1)/2, l) < n!`, permutations otherwise.
pub fn method_selector(n: usize, l: usize) -> Method {
    if BigUint::from(binomial(link_field_len(n), l)) < factorial(n) {
        Method::Method1
    } else {
        Method::Method2
    }
}

fn c_z_from_sum(cap: usize, sum: u128) -> f64 {
    debug_assert!(sum > 0);
    1.0 + cap as f64 - (sum as f64).log2()
}

/// zcomplexity by iterating the node-label permutations of `g` (method 2).
pub fn zcomplexity_method2(g: &Graph, variant: GrammarVariant, limits: &Limits) -> Result<f64> {
    let n = g.n();
    if n > limits.max_perm_n || n > 11 {
        return Err(Error::InfeasibleSize {
            what: "zcomplexity by permutation sweep",
            n,
            bound: limits.max_perm_n.min(11),
        });
    }
    let fields = codec::distinct_link_fields_u64(g)?;
    let cap = s_max(n);
    let sum: u128 = fields
        .par_iter()
        .with_min_len(4096)
        .map(|&field| {
            let z = rle_fast::zeta_capped_u64(n, field, variant);
            1u128 << (cap - z)
        })
        .sum();
    Ok(c_z_from_sum(cap, sum))
}

/// Per-class accumulators from one pass over all link fields with `l` links:
/// canonical field -> (sum of `2^(cap - min(zeta, cap))`, field count).
pub(crate) fn sweep_accumulators_u64(
    n: usize,
    l: usize,
    variant: GrammarVariant,
) -> HashMap<u64, (u128, u64)> {
    let total_bits = link_field_len(n);
    debug_assert!(n <= 11 && l <= total_bits);
    let cap = s_max(n);

    let visit_range = |fields: &mut dyn Iterator<Item = u64>| -> HashMap<u64, (u128, u64)> {
        let mut map: HashMap<u64, (u128, u64)> = HashMap::new();
        for field in fields {
            let canon_field = crate::canon_fast::canonical_field_u64(n, field);
            let z = rle_fast::zeta_capped_u64(n, field, variant);
            let entry = map.entry(canon_field).or_insert((0, 0));
            entry.0 += 1u128 << (cap - z);
            entry.1 += 1;
        }
        map
    };

    if l == 0 {
        return visit_range(&mut std::iter::once(0u64));
    }
    // split on the highest set bit for parallelism
    (l - 1..total_bits)
        .into_par_iter()
        .map(|top| {
            let mut fields = Vec::new();
            for_each_combination(top, l - 1, |low| fields.push(low | (1u64 << top)));
            visit_range(&mut fields.into_iter())
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                let entry = a.entry(k).or_insert((0, 0));
                entry.0 += v.0;
                entry.1 += v.1;
            }
            a
        })
}

/// All fields with exactly `ones` bits set among the low `bits` positions,
/// in Gosper order. `ones == 0` yields the single zero field.
fn for_each_combination<F: FnMut(u64)>(bits: usize, ones: usize, mut f: F) {
    if ones > bits {
        return;
    }
    if ones == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << bits;
    let mut v = (1u64 << ones) - 1;
    while v < limit {
        f(v);
        let c = v & v.wrapping_neg();
        let r = v + c;
        if r >= limit || c == 0 {
            break;
        }
        v = r | (((v ^ r) >> 2) / c);
    }
}

/// zcomplexity of every isomorphism class with `n` nodes and `l` links in
/// one pass over the `binom(n(n-1)/2, l)` link fields (method 1).
pub fn zcomplexity_class_sweep(
    n: usize,
    l: usize,
    variant: GrammarVariant,
    limits: &Limits,
) -> Result<HashMap<CanonicalForm, f64>> {
    let count = binomial(link_field_len(n), l);
    if count > limits.max_fields || n > 11 {
        return Err(Error::InfeasibleCount {
            what: "zcomplexity by link-field sweep",
            count,
            bound: limits.max_fields,
        });
    }
    let cap = s_max(n);
    Ok(sweep_accumulators_u64(n, l, variant)
        .into_iter()
        .map(|(field, (sum, _))| {
            let graph = Graph::from_lsb_u64(n, field);
            (canon::canonical_form(&graph), c_z_from_sum(cap, sum))
        })
        .collect())
}

/// zcomplexity of `g`, dispatching between the two enumerations.
pub fn zcomplexity(g: &Graph, variant: GrammarVariant, limits: &Limits) -> Result<f64> {
    zcomplexity_with_method(g, variant, None, limits)
}

pub fn zcomplexity_with_method(
    g: &Graph,
    variant: GrammarVariant,
    method: Option<Method>,
    limits: &Limits,
) -> Result<f64> {
    let n = g.n();
    let l = g.link_count();
    let method = method.unwrap_or_else(|| method_selector(n, l));
    match method {
        Method::Method1 => {
            let classes = zcomplexity_class_sweep(n, l, variant, limits)?;
            let form = canon::canonical_form(g);
            Ok(*classes.get(&form).expect("own class present in sweep"))
        }
        Method::Method2 => zcomplexity_method2(g, variant, limits),
    }
}

/// `(C - C_z) / C`: large for regular (compressible) graphs, around
/// `-1/C` for incompressible ones.
pub fn compression_error(g: &Graph, variant: GrammarVariant, limits: &Limits) -> Result<f64> {
    let c = complexity(g);
    let c_z = zcomplexity(g, variant, limits)?;
    Ok((c - c_z) / c)
}

// ---------------------------------------------------------------------------
// offdiagonal complexity
// ---------------------------------------------------------------------------

/// Edge counts between degree classes: `count(k, l)` is the number of edges
/// joining a degree-`k` node to a degree-`l` node, `k <= l`.
#[derive(Clone, Debug)]
pub struct DegreeCorrelationMatrix {
    max_degree: usize,
    counts: Vec<u64>,
}

impl DegreeCorrelationMatrix {
    pub fn from_graph(g: &Graph) -> DegreeCorrelationMatrix {
        let degrees = g.degree_sequence();
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        let side = max_degree + 1;
        let mut counts = vec![0u64; side * (side + 1) / 2];
        for (i, j) in g.edges() {
            let (k, l) = if degrees[i] <= degrees[j] {
                (degrees[i], degrees[j])
            } else {
                (degrees[j], degrees[i])
            };
            counts[l * (l + 1) / 2 + k] += 1;
        }
        DegreeCorrelationMatrix { max_degree, counts }
    }

    pub fn count(&self, k: usize, l: usize) -> u64 {
        let (k, l) = if k <= l { (k, l) } else { (l, k) };
        if l > self.max_degree {
            0
        } else {
            self.counts[l * (l + 1) / 2 + k]
        }
    }

    pub fn edge_total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `a_m = sum_k count(k, k+m)`, the total weight on the m-th offdiagonal.
    pub fn diagonal_sums(&self) -> Vec<u64> {
        let side = self.max_degree + 1;
        let mut sums = vec![0u64; side];
        for l in 0..side {
            for k in 0..=l {
                sums[l - k] += self.counts[l * (l + 1) / 2 + k];
            }
        }
        sums
    }
}

pub fn degree_correlation_matrix(g: &Graph) -> DegreeCorrelationMatrix {
    DegreeCorrelationMatrix::from_graph(g)
}

/// Entropy (base 2) of the edge distribution over the offdiagonals of the
/// degree-degree matrix. Zero for regular graphs; zero by convention for
/// edgeless ones.
pub fn offdiagonal_complexity(g: &Graph) -> f64 {
    let matrix = DegreeCorrelationMatrix::from_graph(g);
    let total = matrix.edge_total();
    if total == 0 {
        return 0.0;
    }
    let total = total as f64;
    -matrix
        .diagonal_sums()
        .iter()
        .filter(|&&a| a > 0)
        .map(|&a| {
            let p = a as f64 / total;
            p * p.log2()
        })
        .sum::<f64>()
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

/// Per-graph record of everything the measures produce.
#[derive(Clone, Debug)]
pub struct ComplexityReport {
    pub n: usize,
    pub links: usize,
    pub aut_order: BigUint,
    pub omega: BigUint,
    pub c: f64,
    pub c_z: Option<f64>,
    pub odc: f64,
    pub compression_error: Option<f64>,
}

impl ComplexityReport {
    /// Builds the report; `variant: Some(..)` also runs zcomplexity, which
    /// is subject to the feasibility limits.
    pub fn build(g: &Graph, variant: Option<GrammarVariant>, limits: &Limits) -> Result<Self> {
        let aut_order = canon::automorphism_order(g);
        let omega = &factorial(g.n()) / &aut_order;
        let c = s_max(g.n()) as f64 - log2_biguint(&omega);
        let c_z = match variant {
            Some(v) => Some(zcomplexity(g, v, limits)?),
            None => None,
        };
        Ok(ComplexityReport {
            n: g.n(),
            links: g.link_count(),
            aut_order,
            omega,
            c,
            c_z,
            odc: offdiagonal_complexity(g),
            compression_error: c_z.map(|z| (c - z) / c),
        })
    }

    pub const CSV_HEADER: &'static str = "n,links,aut_order,omega,C,C_z,odc,compression_error";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.links,
            self.aut_order,
            self.omega,
            fmt_float(self.c),
            self.c_z.map_or(String::new(), fmt_float),
            fmt_float(self.odc),
            self.compression_error.map_or(String::new(), fmt_float),
        )
    }
}

/// Fixed six-decimal formatting so CSV output is stable across runs.
pub(crate) fn fmt_float(x: f64) -> String {
    format!("{x:.6}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, edges).unwrap()
    }

    #[test]
    fn complexity_anchors() {
        assert_eq!(complexity(&Graph::complete(3)), 7.0);
        let single = graph(3, &[(0, 1)]);
        assert!((complexity(&single) - (7.0 - 3f64.log2())).abs() < 1e-12);
        let single4 = graph(4, &[(0, 1)]);
        assert!((complexity(&single4) - (11.0 - 6f64.log2())).abs() < 1e-12);
    }

    #[test]
    fn entropy_anchors() {
        assert_eq!(derived_entropy(&Graph::complete(4)), 0.0);
        let two_adjacent = graph(4, &[(0, 1), (1, 2)]);
        assert!((derived_entropy(&two_adjacent) - 12f64.log2()).abs() < 1e-12);
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        assert!((derived_entropy(&c5) - 12f64.log2()).abs() < 1e-12);
        // S_max = C + S exactly
        assert!(
            (complexity(&c5) + derived_entropy(&c5) - s_max(5) as f64).abs() < 1e-12
        );
    }

    #[test]
    fn method_selection() {
        assert_eq!(method_selector(10, 6), Method::Method2); // 8,145,060 >= 10!
        assert_eq!(method_selector(10, 3), Method::Method1); // 14,190 < 10!
        assert_eq!(method_selector(4, 2), Method::Method1); // 15 < 24
    }

    #[test]
    fn five_node_empty_anchor() {
        let limits = Limits::default();
        let empty = Graph::empty(5);
        assert_eq!(complexity(&empty), 16.0);
        assert_eq!(
            zcomplexity(&empty, GrammarVariant::ImplicitFinalLen, &limits).unwrap(),
            13.0
        );
        let err = compression_error(&empty, GrammarVariant::ImplicitFinalLen, &limits).unwrap();
        assert!((err - 0.1875).abs() < 1e-12);
    }

    #[test]
    fn cap_saturation_means_c_plus_one() {
        let limits = Limits::default();
        // a 2-node single edge admits no compression below the cap
        let g = Graph::complete(2);
        let c = complexity(&g);
        let cz = zcomplexity(&g, GrammarVariant::ExplicitLen, &limits).unwrap();
        assert!((cz - (c + 1.0)).abs() < 1e-12);
        let err = compression_error(&g, GrammarVariant::ExplicitLen, &limits).unwrap();
        assert!((err + 1.0 / c).abs() < 1e-12);
    }

    #[test]
    fn full_eight_node_graph_compresses() {
        let limits = Limits::default();
        let k8 = Graph::complete(8);
        assert_eq!(complexity(&k8), 37.0);
        let cz = zcomplexity(&k8, GrammarVariant::ImplicitFinalLen, &limits).unwrap();
        assert!(cz < 37.0, "C_z = {cz}");
    }

    #[test]
    fn sweep_matches_method2_for_small_cases() {
        let limits = Limits::default();
        for (n, l) in [(3usize, 1usize), (4, 2), (4, 6), (5, 4)] {
            for variant in [GrammarVariant::ExplicitLen, GrammarVariant::ImplicitFinalLen] {
                let classes = zcomplexity_class_sweep(n, l, variant, &limits).unwrap();
                for (form, &cz) in &classes {
                    let g = form.graph();
                    let direct = zcomplexity_method2(&g, variant, &limits).unwrap();
                    assert_eq!(cz, direct, "n={n} l={l} {variant}");
                }
            }
        }
    }

    #[test]
    fn sweep_k4_single_class() {
        let limits = Limits::default();
        let classes =
            zcomplexity_class_sweep(4, 6, GrammarVariant::ImplicitFinalLen, &limits).unwrap();
        assert_eq!(classes.len(), 1);
    }

    #[test]
    fn infeasible_guards() {
        let limits = Limits {
            max_perm_n: 4,
            max_fields: 10,
        };
        let g = Graph::empty(5);
        assert!(zcomplexity_method2(&g, GrammarVariant::ExplicitLen, &limits).is_err());
        assert!(zcomplexity_class_sweep(5, 5, GrammarVariant::ExplicitLen, &limits).is_err());
    }

    #[test]
    fn odc_values() {
        assert_eq!(offdiagonal_complexity(&Graph::complete(4)), 0.0);
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        assert_eq!(offdiagonal_complexity(&c5), 0.0);
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(offdiagonal_complexity(&star), 0.0);
        let path = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let expected = -((1.0f64 / 3.0) * (1.0f64 / 3.0).log2()
            + (2.0f64 / 3.0) * (2.0f64 / 3.0).log2());
        assert!((offdiagonal_complexity(&path) - expected).abs() < 1e-12);
        assert_eq!(offdiagonal_complexity(&Graph::empty(6)), 0.0);
    }

    #[test]
    fn degree_matrix_entries() {
        let path = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let m = degree_correlation_matrix(&path);
        assert_eq!(m.count(1, 2), 2);
        assert_eq!(m.count(2, 2), 1);
        assert_eq!(m.count(2, 1), 2);
        assert_eq!(m.edge_total(), 3);
        assert_eq!(m.diagonal_sums(), vec![1, 2]);
    }

    #[test]
    fn report_round_trip() {
        let limits = Limits::default();
        let g = graph(4, &[(0, 1), (1, 2)]);
        let report = ComplexityReport::build(
            &g,
            Some(GrammarVariant::ImplicitFinalLen),
            &limits,
        )
        .unwrap();
        assert_eq!(report.n, 4);
        assert_eq!(report.links, 2);
        assert_eq!(report.omega, BigUint::from(12u32));
        let row = report.csv_row();
        assert_eq!(row.split(',').count(), 8);
        assert!(row.starts_with("4,2,2,12,"));
    }
}
