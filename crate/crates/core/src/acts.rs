//! Activation data model: a per-layer (samples x units) table of
//! post-nonlinearity activation values for one network.
//!
//! Rows are i.i.d. samples (one per image, or one per image x spatial
//! position for convolutional layers); column `i` is the sample series of
//! unit `i`. Between-net comparisons require row-aligned matrices: the same
//! sample index must refer to the same image/position in both networks.

use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Immutable (samples x units) activation table for one layer of one net.
#[derive(Debug, Clone, PartialEq)]
pub struct ActivationMatrix {
    layer: String,
    net: String,
    num_samples: usize,
    num_units: usize,
    values: Vec<f32>,
}

impl ActivationMatrix {
    /// Validates shape and finiteness. Needs at least two samples and one
    /// unit; rejects NaN/Inf, reporting the first offending (row, col).
    pub fn new(
        layer: impl Into<String>,
        net: impl Into<String>,
        num_samples: usize,
        num_units: usize,
        values: Vec<f32>,
    ) -> Result<Self> {
        if num_samples < 2 {
            return Err(Error::InvalidArgument(alloc::format!(
                "need at least 2 samples, got {num_samples}"
            )));
        }
        if num_units == 0 {
            return Err(Error::InvalidArgument("need at least 1 unit".into()));
        }
        if values.len() != num_samples * num_units {
            return Err(Error::InvalidArgument(alloc::format!(
                "payload has {} values, expected {}x{}",
                values.len(),
                num_samples,
                num_units
            )));
        }
        for (idx, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    row: idx / num_units,
                    col: idx % num_units,
                });
            }
        }
        Ok(ActivationMatrix { layer: layer.into(), net: net.into(), num_samples, num_units, values })
    }

    #[inline]
    pub fn layer(&self) -> &str {
        &self.layer
    }

    #[inline]
    pub fn net(&self) -> &str {
        &self.net
    }

    /// Number of samples M.
    #[inline]
    pub fn num_samples(&self) -> usize {
        self.num_samples
    }

    /// Number of units U.
    #[inline]
    pub fn num_units(&self) -> usize {
        self.num_units
    }

    #[inline]
    pub fn value(&self, sample: usize, unit: usize) -> f32 {
        debug_assert!(sample < self.num_samples && unit < self.num_units);
        self.values[sample * self.num_units + unit]
    }

    #[inline]
    pub fn sample_row(&self, sample: usize) -> &[f32] {
        &self.values[sample * self.num_units..(sample + 1) * self.num_units]
    }

    pub fn values(&self) -> &[f32] {
        &self.values
    }

    /// Copies one unit's sample series, widened to f64.
    pub fn unit_column(&self, unit: usize) -> Vec<f64> {
        (0..self.num_samples)
            .map(|s| self.value(s, unit) as f64)
            .collect()
    }

    /// Draws `n` rows uniformly without replacement, deterministically for a
    /// given seed; column order is preserved. With `n == M` this is a row
    /// permutation containing every original row exactly once.
    pub fn subsample(&self, n: usize, seed: u64) -> Result<ActivationMatrix> {
        if n > self.num_samples {
            return Err(Error::InvalidArgument(alloc::format!(
                "cannot draw {n} rows from {} samples",
                self.num_samples
            )));
        }
        if n < 2 {
            return Err(Error::InvalidArgument("need at least 2 rows".into()));
        }
        let idx = subsample_indices(self.num_samples, n, seed);
        let mut values = Vec::with_capacity(n * self.num_units);
        for &s in &idx {
            values.extend_from_slice(self.sample_row(s));
        }
        Ok(ActivationMatrix {
            layer: self.layer.clone(),
            net: self.net.clone(),
            num_samples: n,
            num_units: self.num_units,
            values,
        })
    }

    /// Indices of the `k` largest activations of `unit`, descending, ties
    /// broken toward the lowest sample index.
    pub fn top_activating(&self, unit: usize, k: usize) -> Result<Vec<(usize, f32)>> {
        if unit >= self.num_units {
            return Err(Error::InvalidArgument(alloc::format!(
                "unit {unit} out of range (U = {})",
                self.num_units
            )));
        }
        if k == 0 || k > self.num_samples {
            return Err(Error::InvalidArgument(alloc::format!(
                "k = {k} out of range (M = {})",
                self.num_samples
            )));
        }
        let mut ranked: Vec<(usize, f32)> =
            (0..self.num_samples).map(|s| (s, self.value(s, unit))).collect();
        // descending by value, ascending by index on ties
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        ranked.truncate(k);
        Ok(ranked)
    }
}

/// First `n` entries of a seeded uniform random permutation of `0..m`
/// (partial Fisher-Yates). Shared by subsampling so that two row-aligned
/// matrices subsampled with the same seed keep their rows aligned.
pub fn subsample_indices(m: usize, n: usize, seed: u64) -> Vec<usize> {
    assert!(n <= m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<usize> = (0..m).collect();
    for i in 0..n {
        let j = rng.gen_range(i..m);
        pool.swap(i, j);
    }
    pool.truncate(n);
    pool
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> ActivationMatrix {
        ActivationMatrix::new("l", "n", 3, 2, alloc::vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap()
    }

    #[test]
    fn rejects_non_finite_with_position() {
        let err = ActivationMatrix::new("l", "n", 2, 2, alloc::vec![1.0, f32::NAN, 3.0, 4.0])
            .unwrap_err();
        assert_eq!(err, Error::NonFinite { row: 0, col: 1 });
        let err = ActivationMatrix::new(
            "l",
            "n",
            2,
            2,
            alloc::vec![1.0, 2.0, 3.0, f32::INFINITY],
        )
        .unwrap_err();
        assert_eq!(err, Error::NonFinite { row: 1, col: 1 });
    }

    #[test]
    fn rejects_bad_shape() {
        assert!(ActivationMatrix::new("l", "n", 1, 2, alloc::vec![1.0, 2.0]).is_err());
        assert!(ActivationMatrix::new("l", "n", 2, 0, alloc::vec![]).is_err());
        assert!(ActivationMatrix::new("l", "n", 2, 2, alloc::vec![1.0]).is_err());
    }

    #[test]
    fn subsample_full_draw_is_permutation() {
        let m = toy();
        let sub = m.subsample(3, 42).unwrap();
        let mut rows: Vec<Vec<f32>> = (0..3).map(|s| sub.sample_row(s).to_vec()).collect();
        rows.sort_by(|a, b| a[0].total_cmp(&b[0]));
        assert_eq!(rows, alloc::vec![
            alloc::vec![1.0, 2.0],
            alloc::vec![3.0, 4.0],
            alloc::vec![5.0, 6.0]
        ]);
    }

    #[test]
    fn subsample_is_deterministic() {
        let m = toy();
        assert_eq!(m.subsample(2, 7).unwrap(), m.subsample(2, 7).unwrap());
        assert_eq!(subsample_indices(1000, 100, 9), subsample_indices(1000, 100, 9));
    }

    #[test]
    fn subsample_rejects_oversized_draw() {
        assert!(toy().subsample(4, 0).is_err());
    }

    #[test]
    fn subsample_indices_are_distinct() {
        for seed in 0..20 {
            let idx = subsample_indices(50, 30, seed);
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), 30);
        }
    }

    #[test]
    fn top_activating_orders_and_breaks_ties_low() {
        let m = ActivationMatrix::new("l", "n", 3, 1, alloc::vec![3.0, 1.0, 2.0]).unwrap();
        assert_eq!(m.top_activating(0, 2).unwrap(), alloc::vec![(0, 3.0), (2, 2.0)]);
        let c = ActivationMatrix::new("l", "n", 4, 1, alloc::vec![5.0, 5.0, 5.0, 5.0]).unwrap();
        let idx: Vec<usize> = c.top_activating(0, 3).unwrap().into_iter().map(|p| p.0).collect();
        assert_eq!(idx, alloc::vec![0, 1, 2]);
    }
}
