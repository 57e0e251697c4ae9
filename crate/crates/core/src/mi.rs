//! Pairwise mutual information between units, estimated from 1D/2D
//! histograms of paired activation values.
//!
//! Each unit's value distribution is discretized into percentile bins that
//! each capture an equal share of the strictly-positive mass, plus a
//! dedicated bin `(-inf, zero_threshold]` for the large spike of
//! post-nonlinearity zeros. Bin edges are computed from the same subsample
//! that feeds the joint histograms. The estimate is the plug-in
//! `sum p(a,b) ln(p(a,b)/(p(a)p(b)))` in nats, clamped at 0.
//!
//! Units whose samples all land in the zero bin are flagged degenerate and
//! get MI 0 against everything, mirroring the dead-unit correlation
//! convention.

use alloc::vec::Vec;

use crate::acts::{subsample_indices, ActivationMatrix};
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::par::map_indexed;

/// Values at or below this threshold fall into the dedicated zero bin.
pub const DEFAULT_ZERO_THRESHOLD: f64 = 1e-6;
/// Number of equal-mass bins over the strictly-positive part.
pub const DEFAULT_MASS_BINS: usize = 20;
/// Default number of activation samples per estimate.
pub const DEFAULT_MI_SAMPLES: usize = 60_000;

/// Per-unit binning: bin 0 is `(-inf, zero_threshold]`, bin `k >= 1` is
/// bounded above by `edges[k-1]`, with the last bin open above. Duplicate
/// percentile edges are merged, reducing the effective bin count; a value
/// equal to an edge goes to the lower of the two adjacent bins.
#[derive(Debug, Clone, PartialEq)]
pub struct BinSpec {
    pub zero_threshold: f64,
    /// Strictly ascending, all > `zero_threshold`.
    pub edges: Vec<f64>,
    /// True when every sample fell in the zero bin.
    pub degenerate: bool,
}

impl BinSpec {
    /// Structural bin count: zero bin + interior bins + open top bin.
    #[inline]
    pub fn num_bins(&self) -> usize {
        self.edges.len() + 2
    }

    #[inline]
    pub fn bin_of(&self, v: f64) -> usize {
        if v <= self.zero_threshold {
            return 0;
        }
        // first edge >= v bounds the bin from above; past the end -> top bin
        self.edges.partition_point(|&e| e < v) + 1
    }
}

/// Equal-mass percentile bins from one unit's sample column.
pub fn make_bins(column: &[f64]) -> Result<BinSpec> {
    make_bins_with(column, DEFAULT_ZERO_THRESHOLD, DEFAULT_MASS_BINS)
}

pub fn make_bins_with(column: &[f64], zero_threshold: f64, mass_bins: usize) -> Result<BinSpec> {
    if mass_bins < 2 {
        return Err(Error::InvalidArgument("need at least 2 mass bins".into()));
    }
    if column.len() < mass_bins {
        return Err(Error::InvalidArgument(alloc::format!(
            "need at least {mass_bins} samples to place bin edges, got {}",
            column.len()
        )));
    }
    let mut pos: Vec<f64> = column.iter().copied().filter(|&v| v > zero_threshold).collect();
    if pos.is_empty() {
        return Ok(BinSpec { zero_threshold, edges: Vec::new(), degenerate: true });
    }
    pos.sort_unstable_by(f64::total_cmp);
    let n = pos.len();
    let mut edges: Vec<f64> = Vec::with_capacity(mass_bins - 1);
    for k in 1..mass_bins {
        let idx = k * n / mass_bins;
        if idx == 0 {
            continue;
        }
        let e = pos[idx - 1];
        if edges.last().is_none_or(|&last| e > last) {
            edges.push(e);
        }
    }
    Ok(BinSpec { zero_threshold, edges, degenerate: false })
}

/// Plug-in MI (nats) of two equal-length sample vectors under prepared bins.
/// Exactly symmetric in its arguments.
pub fn mutual_information(x: &[f64], y: &[f64], bins_x: &BinSpec, bins_y: &BinSpec) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::SampleMismatch { left: x.len(), right: y.len() });
    }
    if x.is_empty() {
        return Err(Error::InvalidArgument("empty sample vectors".into()));
    }
    if bins_x.degenerate || bins_y.degenerate {
        return Ok(0.0);
    }
    let ids_x: Vec<u16> = x.iter().map(|&v| bins_x.bin_of(v) as u16).collect();
    let ids_y: Vec<u16> = y.iter().map(|&v| bins_y.bin_of(v) as u16).collect();
    Ok(mi_from_ids(&ids_x, bins_x.num_bins(), &ids_y, bins_y.num_bins()))
}

/// Core plug-in estimate on pre-digitized ids. Contributions are summed in
/// a canonical (sorted) order so the result is independent of which
/// argument came first.
fn mi_from_ids(ids_x: &[u16], nx: usize, ids_y: &[u16], ny: usize) -> f64 {
    let n = ids_x.len();
    debug_assert_eq!(n, ids_y.len());
    let mut joint = alloc::vec![0u64; nx * ny];
    for (&a, &b) in ids_x.iter().zip(ids_y) {
        joint[a as usize * ny + b as usize] += 1;
    }
    let mut px = alloc::vec![0u64; nx];
    let mut py = alloc::vec![0u64; ny];
    for a in 0..nx {
        for b in 0..ny {
            let c = joint[a * ny + b];
            px[a] += c;
            py[b] += c;
        }
    }
    let nf = n as f64;
    let mut terms: Vec<f64> = Vec::new();
    for a in 0..nx {
        for b in 0..ny {
            let c = joint[a * ny + b];
            if c == 0 {
                continue;
            }
            let p = c as f64 / nf;
            let ratio = (c as f64 * nf) / (px[a] as f64 * py[b] as f64);
            terms.push(p * ratio.ln());
        }
    }
    terms.sort_unstable_by(f64::total_cmp);
    let mi: f64 = terms.iter().sum();
    mi.max(0.0)
}

/// Pairwise MI matrix between two nets' units.
#[derive(Debug, Clone, PartialEq)]
pub struct MIMatrix {
    /// Entry (i, j) is MI of unit i in the row net and unit j in the column
    /// net, in nats.
    pub values: Mat,
    /// Rows actually used for the histograms.
    pub sample_count: usize,
}

/// Full pairwise MI matrix over a shared row subsample of two row-aligned
/// matrices. At most `n_samples` rows are drawn (seeded, without
/// replacement); the same rows feed every pair and the bin edges. Pass `a`
/// for both arguments to get the within-net matrix.
pub fn mi_between(
    a: &ActivationMatrix,
    b: &ActivationMatrix,
    n_samples: usize,
    seed: u64,
) -> Result<MIMatrix> {
    if a.num_samples() != b.num_samples() {
        return Err(Error::SampleMismatch { left: a.num_samples(), right: b.num_samples() });
    }
    let n = n_samples.min(a.num_samples());
    if n < DEFAULT_MASS_BINS {
        return Err(Error::InvalidArgument(alloc::format!(
            "need at least {DEFAULT_MASS_BINS} samples, got {n}"
        )));
    }
    let rows = subsample_indices(a.num_samples(), n, seed);
    let digitize = |acts: &ActivationMatrix| -> Result<Vec<(Vec<u16>, BinSpec)>> {
        (0..acts.num_units())
            .map(|u| {
                let col: Vec<f64> = rows.iter().map(|&s| acts.value(s, u) as f64).collect();
                let spec = make_bins(&col)?;
                let ids = col.iter().map(|&v| spec.bin_of(v) as u16).collect();
                Ok((ids, spec))
            })
            .collect()
    };
    let cols_a = digitize(a)?;
    let cols_b = digitize(b)?;
    let ua = a.num_units();
    let ub = b.num_units();
    let row_vals: Vec<Vec<f64>> = map_indexed(ua, |i| {
        let (ids_a, spec_a) = &cols_a[i];
        (0..ub)
            .map(|j| {
                let (ids_b, spec_b) = &cols_b[j];
                if spec_a.degenerate || spec_b.degenerate {
                    0.0
                } else {
                    mi_from_ids(ids_a, spec_a.num_bins(), ids_b, spec_b.num_bins())
                }
            })
            .collect()
    });
    let mut values = Mat::zeros(ua, ub);
    for (i, row) in row_vals.iter().enumerate() {
        values.row_mut(i).copy_from_slice(row);
    }
    Ok(MIMatrix { values, sample_count: n })
}

/// Binned Shannon entropy (nats) of one unit under its bin spec; the
/// within-net MI diagonal equals this.
pub fn binned_entropy(column: &[f64], bins: &BinSpec) -> f64 {
    if bins.degenerate {
        return 0.0;
    }
    let mut counts = alloc::vec![0u64; bins.num_bins()];
    for &v in column {
        counts[bins.bin_of(v)] += 1;
    }
    let n = column.len() as f64;
    let mut terms: Vec<f64> = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .collect();
    terms.sort_unstable_by(f64::total_cmp);
    terms.iter().sum::<f64>().max(0.0)
}
