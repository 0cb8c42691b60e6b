//! Exhaustive enumeration of isomorphism classes, seeded random graphs, and
//! the sparse-versus-random sweep experiment.
//!
//! Enumeration scans every one of the `2^(n(n-1)/2)` link fields, tallying
//! them under their canonical form; the per-class tally must come out equal
//! to `n!/|Aut|`, which cross-checks the canonical machinery against plain
//! counting. The sweep experiment reproduces the two-group design: every
//! class with few links measured by the link-field sweep, plus a seeded
//! random sample of denser graphs measured by the permutation sweep.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::canon;
use crate::error::Error;
use crate::graph::{link_field_len, Graph};
use crate::measures::{
    fmt_float, log2_biguint, s_max, sweep_accumulators_u64, zcomplexity_method2,
    ComplexityReport, Limits,
};
use crate::perm::{binomial, factorial};
use crate::rle::GrammarVariant;
use crate::Result;

/// Largest node count `enumerate_graphs` accepts unless overridden
/// (`2^28` link fields at 8 nodes).
pub const DEFAULT_ENUMERATION_BOUND: usize = 8;

/// One isomorphism class: its canonical representative, how many link
/// fields landed in it during the scan, and the measures.
#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub representative: Graph,
    pub count: u64,
    pub report: ComplexityReport,
}

#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub n: usize,
    pub records: Vec<ClassRecord>,
}

impl EnumerationResult {
    pub fn class_count(&self) -> usize {
        self.records.len()
    }

    /// Sum of omega over all classes; `2^(n(n-1)/2)` when everything is
    /// consistent.
    pub fn total_omega(&self) -> BigUint {
        self.records
            .iter()
            .fold(BigUint::zero(), |acc, r| acc + &r.report.omega)
    }
}

/// Enumerates every isomorphism class on `n` nodes by scanning all link
/// fields and deduplicating canonically.
pub fn enumerate_graphs(n: usize, max_n: usize) -> Result<EnumerationResult> {
    if n > max_n || n > 11 {
        return Err(Error::InfeasibleSize {
            what: "exhaustive enumeration",
            n,
            bound: max_n.min(11),
        });
    }
    let bits = link_field_len(n);
    let total: u64 = 1u64 << bits;
    let chunks: u64 = if bits > 16 { 512 } else { 1 };
    let chunk_len = total.div_ceil(chunks);

    let tally: HashMap<u64, u64> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * chunk_len;
            let hi = ((chunk + 1) * chunk_len).min(total);
            let mut local: HashMap<u64, u64> = HashMap::new();
            for field in lo..hi {
                let canon_field = crate::canon_fast::canonical_field_u64(n, field);
                *local.entry(canon_field).or_insert(0) += 1;
            }
            local
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });

    let mut classes: Vec<(u64, u64)> = tally.into_iter().collect();
    classes.sort_unstable();

    let fact = factorial(n);
    let records: Vec<ClassRecord> = classes
        .into_par_iter()
        .map(|(field, count)| {
            let representative = Graph::from_lsb_u64(n, field);
            let aut_order = canon::automorphism_order(&representative);
            let omega = &fact / &aut_order;
            assert_eq!(
                omega,
                BigUint::from(count),
                "class tally disagrees with n!/|Aut| for field {field:b}"
            );
            let c = s_max(n) as f64 - log2_biguint(&omega);
            let report = ComplexityReport {
                n,
                links: representative.link_count(),
                aut_order,
                omega,
                c,
                c_z: None,
                odc: crate::measures::offdiagonal_complexity(&representative),
                compression_error: None,
            };
            ClassRecord {
                representative,
                count,
                report,
            }
        })
        .collect();

    Ok(EnumerationResult { n, records })
}

/// Fills in `C_z` and the compression error for every enumerated class.
pub fn attach_zcomplexity(
    result: &mut EnumerationResult,
    variant: GrammarVariant,
    limits: &Limits,
) -> Result<()> {
    result
        .records
        .par_iter_mut()
        .try_for_each(|record| -> Result<()> {
            let c_z = zcomplexity_method2(&record.representative, variant, limits)?;
            record.report.c_z = Some(c_z);
            record.report.compression_error = Some((record.report.c - c_z) / record.report.c);
            Ok(())
        })
}

// ---------------------------------------------------------------------------
// random graphs
// ---------------------------------------------------------------------------

/// Erdős–Rényi G(n, p): each of the `n(n-1)/2` links present independently
/// with probability `p`. Deterministic per seed.
pub fn er_random(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut links = crate::bits::BitString::zeros(link_field_len(n));
    for pos in 0..links.len() {
        if rng.random::<f64>() < p {
            links.set(pos, true);
        }
    }
    Graph::from_link_field(n, links).expect("lengths match")
}

/// Barabási–Albert preferential attachment: an `m`-clique seed, then each
/// new node attaches `m` edges to distinct existing nodes chosen with
/// probability proportional to current degree (uniformly while all degrees
/// are zero). Deterministic per seed.
pub fn ba_random(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m < 1 || m >= n {
        return Err(Error::InvalidParameter(format!(
            "preferential attachment needs 1 <= m < n, got m={m}, n={n}"
        )));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut endpoints: Vec<usize> = Vec::new();
    for j in 1..m {
        for i in 0..j {
            edges.push((i, j));
            endpoints.push(i);
            endpoints.push(j);
        }
    }
    for new in m..n {
        let mut chosen: Vec<usize> = Vec::with_capacity(m);
        while chosen.len() < m {
            let target = if endpoints.is_empty() {
                rng.random_range(0..new)
            } else {
                endpoints[rng.random_range(0..endpoints.len())]
            };
            if !chosen.contains(&target) {
                chosen.push(target);
            }
        }
        for target in chosen {
            edges.push((target.min(new), target.max(new)));
            endpoints.push(target);
            endpoints.push(new);
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Seeded Fisher–Yates shuffle of `0..n`.
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    perm
}

// ---------------------------------------------------------------------------
// the sweep experiment
// ---------------------------------------------------------------------------

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum RowSource {
    ExhaustiveSparse,
    RandomSample,
}

impl fmt::Display for RowSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowSource::ExhaustiveSparse => "exhaustive-sparse",
            RowSource::RandomSample => "random-sample",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentRow {
    pub id: String,
    pub n: usize,
    pub links: usize,
    pub aut_order: BigUint,
    pub omega: BigUint,
    pub c: f64,
    pub c_z: f64,
    pub odc: f64,
    pub compression_error: f64,
    pub source: RowSource,
}

impl ExperimentRow {
    pub const CSV_HEADER: &'static str =
        "id,n,links,aut_order,omega,C,C_z,odc,compression_error,source";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.id,
            self.n,
            self.links,
            self.aut_order,
            self.omega,
            fmt_float(self.c),
            fmt_float(self.c_z),
            fmt_float(self.odc),
            fmt_float(self.compression_error),
            self.source,
        )
    }
}

pub fn write_csv<W: Write>(rows: &[ExperimentRow], out: &mut W) -> std::io::Result<()> {
    writeln!(out, "{}", ExperimentRow::CSV_HEADER)?;
    for row in rows {
        writeln!(out, "{}", row.csv_row())?;
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub n: usize,
    pub max_links: usize,
    pub sample_count: usize,
    pub seed: u64,
    pub variant: GrammarVariant,
    pub limits: Limits,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n: 10,
            max_links: 6,
            sample_count: 740,
            seed: 1,
            variant: GrammarVariant::ImplicitFinalLen,
            limits: Limits::default(),
        }
    }
}

/// Every class with at most `max_links` links (link-field sweep), plus a
/// seeded uniform sample of denser link fields deduplicated by canonical
/// form (permutation sweep per sampled graph).
pub fn sparse_sweep_experiment(cfg: &SweepConfig) -> Result<Vec<ExperimentRow>> {
    let n = cfg.n;
    if n > 11 {
        return Err(Error::InfeasibleSize {
            what: "sweep experiment",
            n,
            bound: 11,
        });
    }
    let bits = link_field_len(n);
    let cap = s_max(n);
    let fact = factorial(n);
    let mut rows = Vec::new();

    // sparse side: one pass per link count
    for l in 0..=cfg.max_links.min(bits) {
        let count = binomial(bits, l);
        if count > cfg.limits.max_fields {
            return Err(Error::InfeasibleCount {
                what: "link-field sweep",
                count,
                bound: cfg.limits.max_fields,
            });
        }
        let mut classes: Vec<(u64, (u128, u64))> =
            sweep_accumulators_u64(n, l, cfg.variant).into_iter().collect();
        classes.sort_unstable_by_key(|&(field, _)| field);
        for (field, (sum, class_count)) in classes {
            let representative = Graph::from_lsb_u64(n, field);
            let omega = BigUint::from(class_count);
            let aut_order = &fact / &omega;
            let c = cap as f64 - log2_biguint(&omega);
            let c_z = 1.0 + cap as f64 - (sum as f64).log2();
            rows.push(ExperimentRow {
                id: format!("{field:0width$x}", width = bits.div_ceil(4)),
                n,
                links: l,
                aut_order,
                omega,
                c,
                c_z,
                odc: crate::measures::offdiagonal_complexity(&representative),
                compression_error: (c - c_z) / c,
                source: RowSource::ExhaustiveSparse,
            });
        }
    }

    // random side: uniform link fields above the sparse cutoff, deduplicated
    // by canonical form
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let mask = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
    let mut sampled: Vec<u64> = Vec::with_capacity(cfg.sample_count);
    while sampled.len() < cfg.sample_count {
        let field = rng.random::<u64>() & mask;
        if (field.count_ones() as usize) > cfg.max_links {
            sampled.push(field);
        }
    }
    let mut distinct: Vec<(u64, u64)> = Vec::new(); // (canonical field, witness)
    {
        let mut seen: HashMap<u64, u64> = HashMap::new();
        for field in sampled {
            let canon_field = crate::canon_fast::canonical_field_u64(n, field);
            seen.entry(canon_field).or_insert(field);
        }
        distinct.extend(seen.into_iter());
        distinct.sort_unstable();
    }

    let sample_rows: Result<Vec<ExperimentRow>> = distinct
        .into_par_iter()
        .map(|(canon_field, _witness)| {
            let representative = Graph::from_lsb_u64(n, canon_field);
            let aut_order = canon::automorphism_order(&representative);
            let omega = &fact / &aut_order;
            let c = cap as f64 - log2_biguint(&omega);
            let c_z = zcomplexity_method2(&representative, cfg.variant, &cfg.limits)?;
            Ok(ExperimentRow {
                id: format!("{canon_field:0width$x}", width = bits.div_ceil(4)),
                n,
                links: representative.link_count(),
                aut_order,
                omega,
                c,
                c_z,
                odc: crate::measures::offdiagonal_complexity(&representative),
                compression_error: (c - c_z) / c,
                source: RowSource::RandomSample,
            })
        })
        .collect();
    rows.extend(sample_rows?);

    Ok(rows)
}

// ---------------------------------------------------------------------------
// correlation
// ---------------------------------------------------------------------------

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum ExperimentField {
    Complexity,
    Zcomplexity,
    Odc,
    CompressionError,
}

impl ExperimentField {
    fn get(&self, row: &ExperimentRow) -> f64 {
        match self {
            ExperimentField::Complexity => row.c,
            ExperimentField::Zcomplexity => row.c_z,
            ExperimentField::Odc => row.odc,
            ExperimentField::CompressionError => row.compression_error,
        }
    }
}

impl FromStr for ExperimentField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C" => Ok(ExperimentField::Complexity),
            "C_z" => Ok(ExperimentField::Zcomplexity),
            "odc" => Ok(ExperimentField::Odc),
            "compression_error" => Ok(ExperimentField::CompressionError),
            other => Err(Error::InvalidParameter(format!(
                "unknown field {other:?}; use C, C_z, odc or compression_error"
            ))),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Correlation {
    pub r: f64,
    pub slope: f64,
    pub intercept: f64,
}

/// Pearson correlation and the least-squares line of `y` on `x`.
pub fn pearson(points: &[(f64, f64)]) -> Result<Correlation> {
    let count = points.len();
    if count < 2 {
        return Err(Error::DegenerateVariance);
    }
    let nf = count as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for &(x, y) in points {
        cov += (x - mean_x) * (y - mean_y);
        var_x += (x - mean_x) * (x - mean_x);
        var_y += (y - mean_y) * (y - mean_y);
    }
    if var_x == 0.0 {
        return Err(Error::DegenerateVariance);
    }
    if var_y == 0.0 {
        return Ok(Correlation {
            r: 0.0,
            slope: 0.0,
            intercept: mean_y,
        });
    }
    let slope = cov / var_x;
    Ok(Correlation {
        r: cov / (var_x * var_y).sqrt(),
        slope,
        intercept: mean_y - slope * mean_x,
    })
}

pub fn correlate(
    rows: &[ExperimentRow],
    x: ExperimentField,
    y: ExperimentField,
) -> Result<Correlation> {
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (x.get(r), y.get(r))).collect();
    pearson(&points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn enumerate_three_nodes() {
        let result = enumerate_graphs(3, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(result.class_count(), 4);
        let mut omegas: Vec<u64> = result
            .records
            .iter()
            .map(|r| r.report.omega.to_u64().unwrap())
            .collect();
        omegas.sort_unstable();
        assert_eq!(omegas, vec![1, 1, 3, 3]);
        assert_eq!(result.total_omega(), BigUint::from(8u32));
    }

    #[test]
    fn enumerate_four_nodes() {
        let result = enumerate_graphs(4, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(result.class_count(), 11);
        assert_eq!(result.total_omega(), BigUint::from(64u32));
    }

    #[test]
    fn enumerate_guard() {
        assert!(enumerate_graphs(9, 8).is_err());
        assert!(enumerate_graphs(12, 12).is_err());
    }

    #[test]
    fn representatives_are_canonical() {
        let result = enumerate_graphs(5, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(result.class_count(), 34);
        for record in &result.records {
            assert_eq!(
                canon::canonical_graph(&record.representative),
                record.representative
            );
        }
    }

    #[test]
    fn er_extremes() {
        assert_eq!(er_random(7, 0.0, 3), Graph::empty(7));
        assert_eq!(er_random(7, 1.0, 3), Graph::complete(7));
        assert_eq!(er_random(7, 0.5, 42), er_random(7, 0.5, 42));
    }

    #[test]
    fn er_mean_link_count() {
        let total: usize = (0..1000).map(|seed| er_random(10, 0.5, seed).link_count()).sum();
        let mean = total as f64 / 1000.0;
        assert!((mean - 22.5).abs() < 1.0, "mean {mean}");
    }

    #[test]
    fn ba_clique_plus_one_is_complete() {
        for m in 1..=4usize {
            let g = ba_random(m + 1, m, 11).unwrap();
            assert_eq!(g, Graph::complete(m + 1));
        }
    }

    #[test]
    fn ba_tree_link_count() {
        let g = ba_random(50, 1, 5).unwrap();
        assert_eq!(g.link_count(), 49);
        assert_eq!(ba_random(50, 1, 5).unwrap(), g);
    }

    #[test]
    fn ba_rejects_bad_m() {
        assert!(ba_random(5, 0, 1).is_err());
        assert!(ba_random(5, 5, 1).is_err());
    }

    #[test]
    fn ba_tail_heavier_than_er() {
        // at matched density, preferential attachment grows a heavier
        // degree tail than the uniform model
        let mut ba_max_sum = 0usize;
        let mut er_max_sum = 0usize;
        for seed in 0..30u64 {
            let ba = ba_random(200, 2, seed).unwrap();
            let p = ba.link_count() as f64 / link_field_len(200) as f64;
            let er = er_random(200, p, seed + 1000);
            ba_max_sum += ba.degree_sequence().into_iter().max().unwrap();
            er_max_sum += er.degree_sequence().into_iter().max().unwrap();
        }
        assert!(
            ba_max_sum > er_max_sum,
            "ba {ba_max_sum} vs er {er_max_sum}"
        );
    }

    #[test]
    fn pearson_lines() {
        let exact = pearson(&[(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)]).unwrap();
        assert!((exact.r - 1.0).abs() < 1e-12);
        assert!((exact.slope - 2.0).abs() < 1e-12);
        assert!((exact.intercept - 1.0).abs() < 1e-12);

        let flipped = pearson(&[(0.0, 5.0), (1.0, 3.0), (2.0, 1.0)]).unwrap();
        assert!((flipped.r + 1.0).abs() < 1e-12);

        let constant = pearson(&[(0.0, 2.0), (1.0, 2.0), (2.0, 2.0)]).unwrap();
        assert_eq!(constant.r, 0.0);
        assert_eq!(constant.slope, 0.0);

        assert!(pearson(&[(1.0, 2.0), (1.0, 3.0)]).is_err());
        assert!(pearson(&[(1.0, 2.0)]).is_err());
    }

    #[test]
    fn small_sweep_round_trip() {
        let cfg = SweepConfig {
            n: 6,
            max_links: 2,
            sample_count: 25,
            seed: 9,
            variant: GrammarVariant::ImplicitFinalLen,
            limits: Limits::default(),
        };
        let rows = sparse_sweep_experiment(&cfg).unwrap();
        let sparse: Vec<&ExperimentRow> = rows
            .iter()
            .filter(|r| r.source == RowSource::ExhaustiveSparse)
            .collect();
        // classes with 0..=2 links on 6 nodes: empty, one edge, two disjoint,
        // two adjacent
        assert_eq!(sparse.len(), 4);
        for row in &rows {
            assert!(row.c_z <= row.c + 1.0 + 1e-9, "row {}", row.id);
            match row.source {
                RowSource::ExhaustiveSparse => assert!(row.links <= 2),
                RowSource::RandomSample => assert!(row.links > 2),
            }
        }
        let mut csv = Vec::new();
        write_csv(&rows, &mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with(ExperimentRow::CSV_HEADER));
        assert_eq!(text.lines().count(), rows.len() + 1);
    }
}
