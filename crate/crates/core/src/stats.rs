//! Per-unit activation statistics and unit-pair correlation matrices.
//!
//! For unit `i` of one net, `mean[i]` and `std[i]` are the population mean
//! and standard deviation of its activation series. Within-net and
//! between-net similarity is plain Pearson correlation of the centered
//! series; between-net entries require row-aligned sample sets.
//!
//! Units with zero variance ("dead" units) get correlation 0 by convention
//! so that matching and clustering stay total; they are listed in
//! [`LayerStats::dead_units`].

use alloc::string::String;
use alloc::vec::Vec;

use crate::acts::ActivationMatrix;
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::par::map_indexed;

/// Per-unit mean and population standard deviation for one layer.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerStats {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
    /// Indices of units with zero variance, ascending.
    pub dead_units: Vec<usize>,
}

impl LayerStats {
    #[inline]
    pub fn is_dead(&self, unit: usize) -> bool {
        self.std[unit] == 0.0
    }
}

/// Whether a correlation matrix compares units of one net or of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CorrKind {
    Within,
    Between,
}

/// Unit-pair Pearson correlations; square symmetric for `Within`,
/// rectangular (rows net x cols net) for `Between`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrMatrix {
    pub kind: CorrKind,
    pub rows_net: String,
    pub cols_net: String,
    pub values: Mat,
}

/// Means and population (1/M) standard deviations, accumulated in f64 in
/// fixed sample order. Two passes: mean first, then centered second moments.
pub fn layer_stats(acts: &ActivationMatrix) -> LayerStats {
    let m = acts.num_samples();
    let u = acts.num_units();
    let inv_m = 1.0 / m as f64;
    let mut mean = alloc::vec![0.0; u];
    for s in 0..m {
        let row = acts.sample_row(s);
        for (acc, v) in mean.iter_mut().zip(row) {
            *acc += *v as f64;
        }
    }
    for v in mean.iter_mut() {
        *v *= inv_m;
    }
    let mut sq = alloc::vec![0.0; u];
    for s in 0..m {
        let row = acts.sample_row(s);
        for ((acc, mu), v) in sq.iter_mut().zip(&mean).zip(row) {
            let d = *v as f64 - mu;
            *acc += d * d;
        }
    }
    let std: Vec<f64> = sq.iter().map(|&s| (s * inv_m).sqrt()).collect();
    let dead_units = std
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == 0.0)
        .map(|(i, _)| i)
        .collect();
    LayerStats { mean, std, dead_units }
}

/// Unit-major centered copies of the columns, f64.
fn centered_columns(acts: &ActivationMatrix, stats: &LayerStats) -> Vec<Vec<f64>> {
    let m = acts.num_samples();
    (0..acts.num_units())
        .map(|u| {
            let mu = stats.mean[u];
            (0..m).map(|s| acts.value(s, u) as f64 - mu).collect()
        })
        .collect()
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Within-net correlation matrix (U x U, symmetric). Diagonal entries of
/// non-dead units are exactly 1; rows/cols of dead units are 0.
pub fn corr_within(acts: &ActivationMatrix) -> CorrMatrix {
    let u = acts.num_units();
    let m = acts.num_samples() as f64;
    let stats = layer_stats(acts);
    let cols = centered_columns(acts, &stats);
    let rows: Vec<Vec<f64>> = map_indexed(u, |i| {
        if stats.is_dead(i) {
            return alloc::vec![0.0; u - i];
        }
        (i..u)
            .map(|j| {
                if j == i {
                    1.0
                } else if stats.is_dead(j) {
                    0.0
                } else {
                    dot(&cols[i], &cols[j]) / (m * (stats.std[i] * stats.std[j]))
                }
            })
            .collect()
    });
    let mut values = Mat::zeros(u, u);
    for (i, upper) in rows.iter().enumerate() {
        for (off, &c) in upper.iter().enumerate() {
            let j = i + off;
            values.set(i, j, c);
            values.set(j, i, c);
        }
    }
    CorrMatrix {
        kind: CorrKind::Within,
        rows_net: acts.net().into(),
        cols_net: acts.net().into(),
        values,
    }
}

/// Between-net correlation matrix (a.U x b.U) over row-aligned samples.
pub fn corr_between(a: &ActivationMatrix, b: &ActivationMatrix) -> Result<CorrMatrix> {
    if a.num_samples() != b.num_samples() {
        return Err(Error::SampleMismatch { left: a.num_samples(), right: b.num_samples() });
    }
    let m = a.num_samples() as f64;
    let stats_a = layer_stats(a);
    let stats_b = layer_stats(b);
    let cols_a = centered_columns(a, &stats_a);
    let cols_b = centered_columns(b, &stats_b);
    let ua = a.num_units();
    let ub = b.num_units();
    let rows: Vec<Vec<f64>> = map_indexed(ua, |i| {
        if stats_a.is_dead(i) {
            return alloc::vec![0.0; ub];
        }
        (0..ub)
            .map(|j| {
                if stats_b.is_dead(j) {
                    0.0
                } else {
                    dot(&cols_a[i], &cols_b[j]) / (m * (stats_a.std[i] * stats_b.std[j]))
                }
            })
            .collect()
    });
    let mut values = Mat::zeros(ua, ub);
    for (i, row) in rows.iter().enumerate() {
        values.row_mut(i).copy_from_slice(row);
    }
    Ok(CorrMatrix {
        kind: CorrKind::Between,
        rows_net: a.net().into(),
        cols_net: b.net().into(),
        values,
    })
}

/// Per-net mean-activation spectra: each net's unit means sorted descending,
/// side by side, with the max/min ratio (None when the minimum is not
/// strictly positive).
#[derive(Debug, Clone, PartialEq)]
pub struct MeanSpectrum {
    pub nets: Vec<String>,
    pub sorted_means: Vec<Vec<f64>>,
    pub max_min_ratio: Vec<Option<f64>>,
}

pub fn sorted_mean_spectrum(per_net: &[(&str, &LayerStats)]) -> Result<MeanSpectrum> {
    if per_net.is_empty() {
        return Err(Error::InvalidArgument("need at least one net".into()));
    }
    let u = per_net[0].1.mean.len();
    if per_net.iter().any(|(_, s)| s.mean.len() != u) {
        return Err(Error::InvalidArgument(
            "all nets must have the same unit count".into(),
        ));
    }
    let mut nets = Vec::new();
    let mut sorted_means = Vec::new();
    let mut max_min_ratio = Vec::new();
    for (name, stats) in per_net {
        let mut means = stats.mean.clone();
        means.sort_by(|a, b| b.total_cmp(a));
        let hi = means[0];
        let lo = means[u - 1];
        max_min_ratio.push(if lo > 0.0 { Some(hi / lo) } else { None });
        nets.push(String::from(*name));
        sorted_means.push(means);
    }
    Ok(MeanSpectrum { nets, sorted_means, max_min_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn acts(m: usize, u: usize, values: Vec<f32>) -> ActivationMatrix {
        ActivationMatrix::new("l", "n", m, u, values).unwrap()
    }

    #[test]
    fn constant_column_is_dead() {
        let a = acts(3, 1, vec![5.0, 5.0, 5.0]);
        let s = layer_stats(&a);
        assert_eq!(s.mean, vec![5.0]);
        assert_eq!(s.std, vec![0.0]);
        assert_eq!(s.dead_units, vec![0]);
    }

    #[test]
    fn two_point_column() {
        let a = acts(2, 1, vec![0.0, 2.0]);
        let s = layer_stats(&a);
        assert_eq!(s.mean, vec![1.0]);
        assert_eq!(s.std, vec![1.0]);
        assert!(s.dead_units.is_empty());
    }

    #[test]
    fn perfect_anticorrelation() {
        let a = acts(3, 2, vec![1.0, 3.0, 2.0, 2.0, 3.0, 1.0]);
        let c = corr_within(&a);
        assert!((c.values.at(0, 1) + 1.0).abs() <= 1e-12);
        assert_eq!(c.values.at(0, 0), 1.0);
    }

    #[test]
    fn duplicated_column_correlates_exactly() {
        let data: Vec<f32> = (0..40).flat_map(|i| [i as f32 * 0.7 + 1.0; 2]).collect();
        let a = acts(40, 2, data);
        let c = corr_within(&a);
        assert!((c.values.at(0, 1) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn dead_units_zeroed_in_correlation() {
        let a = acts(3, 2, vec![1.0, 7.0, 2.0, 7.0, 3.0, 7.0]);
        let c = corr_within(&a);
        assert_eq!(c.values.at(0, 1), 0.0);
        assert_eq!(c.values.at(1, 1), 0.0);
        assert_eq!(c.values.at(0, 0), 1.0);
    }

    #[test]
    fn between_same_matrix_matches_within() {
        let data: Vec<f32> = (0..60).map(|i| ((i * 37 % 11) as f32).sin()).collect();
        let a = acts(20, 3, data);
        let w = corr_within(&a);
        let b = corr_between(&a, &a).unwrap();
        assert!(w.values.max_abs_diff(&b.values) <= 1e-12);
    }

    #[test]
    fn between_rejects_sample_mismatch() {
        let a = acts(3, 1, vec![1.0, 2.0, 3.0]);
        let b = acts(2, 1, vec![1.0, 2.0]);
        assert!(matches!(corr_between(&a, &b), Err(Error::SampleMismatch { .. })));
    }

    #[test]
    fn spectrum_sorts_descending() {
        let s = LayerStats { mean: vec![1.0, 3.0, 2.0], std: vec![1.0; 3], dead_units: vec![] };
        let spec = sorted_mean_spectrum(&[("n", &s)]).unwrap();
        assert_eq!(spec.sorted_means[0], vec![3.0, 2.0, 1.0]);
        assert_eq!(spec.max_min_ratio[0], Some(3.0));
    }

    #[test]
    fn spectrum_is_order_invariant() {
        let s1 = LayerStats { mean: vec![1.0, 3.0, 2.0], std: vec![1.0; 3], dead_units: vec![] };
        let s2 = LayerStats { mean: vec![2.0, 1.0, 3.0], std: vec![1.0; 3], dead_units: vec![] };
        let spec = sorted_mean_spectrum(&[("a", &s1), ("b", &s2)]).unwrap();
        assert_eq!(spec.sorted_means[0], spec.sorted_means[1]);
    }

    #[test]
    fn spectrum_ratio_none_for_nonpositive_min() {
        let s = LayerStats { mean: vec![1.0, 0.0], std: vec![1.0; 2], dead_units: vec![] };
        let spec = sorted_mean_spectrum(&[("n", &s)]).unwrap();
        assert_eq!(spec.max_min_ratio[0], None);
    }
}
