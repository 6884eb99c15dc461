//! Parameter tuning: maps a target mean chunk size to concrete algorithm
//! parameters.
//!
//! The extremum chunkers are tuned through the distribution of the
//! maximum among `h` uniform random bytes (`ByteMaxDistribution`): its
//! CDF is `((m+1)/256)^h`, so the PMF and mean follow in closed form.
//! The expected chunk size of the first-window-then-threshold scheme is
//!
//! ```text
//! mean(h) = h + (1 - E[max_h] / 256)^-1
//! ```
//!
//! which is strictly increasing in `h` and solved by integer search. The
//! right-window scheme has no tractable closed form for small targets;
//! it uses empirically determined horizons below 2 KiB and `target - 256`
//! from 2 KiB up (for large horizons the chunk maximum is almost surely
//! 255, matched with probability 1/256).
//!
//! The increasing-interval chunker is tuned by inverting
//! `mean(w) = (C(256,w) / 256^w)^-1 + w`, evaluated in log space. The
//! popcount chunker has no usable closed form at all (window overlap
//! correlates positions), so it is tuned by simulation over seeded
//! random data, with a binomial prior pruning the threshold candidates.
//! Divisor selection for byte-pair chunking greedily minimizes the
//! difference between the target and the predicted mean
//! `len / (1 + sum of divisor counts) + min_chunk`.

use serde::Serialize;

use crate::algorithms::bfbc::DivisorSet;
use crate::algorithms::gear::NcPolicy;
use crate::algorithms::pci::PciChunker;
use crate::config::{Algorithm, ChunkerSpec, Params};
use crate::error::TuneError;
use crate::rng::{self, SplitMix64};
use crate::stream::ChunkStream;

/// Default sliding-window size for the Rabin and Buzhash chunkers.
pub const BSW_WINDOW: usize = 32;

/// Empirically determined horizons for sub-2-KiB targets of the
/// asymmetric-extremum chunker.
pub const AE_SMALL_TARGET_HORIZONS: &[(u64, u64)] = &[(512, 348), (770, 563), (1024, 793)];

/// Offset of the large-target rule `horizon = target - 256`.
pub const AE_LARGE_TARGET_OFFSET: u64 = 256;

/// Simulation-derived `(target, window, threshold)` presets for the
/// popcount chunker.
pub const PCI_PRESETS: &[(u64, usize, u32)] = &[
    (512, 58, 253),
    (770, 40, 181),
    (1024, 34, 157),
    (2048, 61, 273),
    (4096, 39, 183),
    (5482, 56, 256),
    (8192, 57, 262),
];

/// Where a resolved parameter value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Table,
    Formula,
    Interpolated,
    Simulation,
    FrequencyAnalysis,
}

/// Distribution of the maximum among `horizon` uniform random bytes,
/// optionally conditioned on the maximum being at least `lower_bound`.
#[derive(Debug, Clone)]
pub struct ByteMaxDistribution {
    horizon: u32,
    lower_bound: u8,
    pmf: Box<[f64; 256]>,
}

impl ByteMaxDistribution {
    pub fn new(horizon: u32) -> Result<Self, TuneError> {
        Self::with_lower_bound(horizon, 0)
    }

    pub fn with_lower_bound(horizon: u32, lower_bound: u8) -> Result<Self, TuneError> {
        if horizon == 0 {
            return Err(TuneError::ZeroHorizon);
        }
        let mut pmf = Box::new([0f64; 256]);
        for (m, slot) in pmf.iter_mut().enumerate() {
            *slot = max_byte_pmf_bounded(horizon, m as u32, lower_bound as u32)?;
        }
        Ok(ByteMaxDistribution {
            horizon,
            lower_bound,
            pmf,
        })
    }

    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    pub fn lower_bound(&self) -> u8 {
        self.lower_bound
    }

    pub fn pmf(&self, m: u8) -> f64 {
        self.pmf[m as usize]
    }

    pub fn cdf(&self, m: u8) -> f64 {
        self.pmf[..=m as usize].iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.pmf
            .iter()
            .enumerate()
            .map(|(m, p)| m as f64 * p)
            .sum()
    }
}

/// `P(max of h bytes = m)`: `((m+1)/256)^h - (m/256)^h`.
pub fn max_byte_pmf(horizon: u32, m: u32) -> Result<f64, TuneError> {
    max_byte_pmf_bounded(horizon, m, 0)
}

/// PMF of the maximum conditioned on it being at least `lower_bound`.
pub fn max_byte_pmf_bounded(horizon: u32, m: u32, lower_bound: u32) -> Result<f64, TuneError> {
    if horizon == 0 {
        return Err(TuneError::ZeroHorizon);
    }
    if m > 255 {
        return Err(TuneError::ByteDomain(m));
    }
    if lower_bound > 255 {
        return Err(TuneError::ByteDomain(lower_bound));
    }
    if m < lower_bound {
        return Ok(0.0);
    }
    let range = (256 - lower_bound) as f64;
    let hi = ((m - lower_bound + 1) as f64 / range).powi(horizon as i32);
    let lo = ((m - lower_bound) as f64 / range).powi(horizon as i32);
    Ok(hi - lo)
}

fn round_half_down(value: f64) -> u64 {
    (value - 0.5).ceil() as u64
}

/// Mask bit count for the Rabin/Buzhash cut test: `log2(target - window)`
/// rounded to the nearest integer, ties down.
pub fn bsw_mask_bits(target: u64, window: usize) -> Result<u32, TuneError> {
    if target <= window as u64 {
        return Err(TuneError::UnsupportedTarget {
            algorithm: "bsw",
            target,
        });
    }
    let bits = round_half_down(((target - window as u64) as f64).log2());
    Ok(bits.max(1) as u32)
}

/// Mask bit count for Gear: `log2(target)` rounded to nearest, ties down.
pub fn gear_mask_bits(target: u64) -> Result<u32, TuneError> {
    if target < 2 {
        return Err(TuneError::UnsupportedTarget {
            algorithm: "gear",
            target,
        });
    }
    let bits = round_half_down((target as f64).log2());
    Ok(bits.max(1) as u32)
}

/// Horizon for the asymmetric-extremum chunker: preset table below
/// 2 KiB, `target - 256` from 2 KiB on, linear interpolation (flagged)
/// in between.
pub fn ae_horizon_for_target(target: u64) -> Result<(u64, Provenance), TuneError> {
    const FORMULA_FLOOR: u64 = 2048;
    if target < AE_SMALL_TARGET_HORIZONS[0].0 {
        return Err(TuneError::UnsupportedTarget {
            algorithm: "ae",
            target,
        });
    }
    if target >= FORMULA_FLOOR {
        return Ok((target - AE_LARGE_TARGET_OFFSET, Provenance::Formula));
    }
    if let Some(&(_, horizon)) = AE_SMALL_TARGET_HORIZONS
        .iter()
        .find(|&&(anchor, _)| anchor == target)
    {
        return Ok((horizon, Provenance::Table));
    }
    // Interpolate between the surrounding anchors; the formula point at
    // 2 KiB closes the range.
    let mut anchors: Vec<(u64, u64)> = AE_SMALL_TARGET_HORIZONS.to_vec();
    anchors.push((FORMULA_FLOOR, FORMULA_FLOOR - AE_LARGE_TARGET_OFFSET));
    let right = anchors.iter().position(|&(a, _)| a > target).unwrap();
    let (t0, h0) = anchors[right - 1];
    let (t1, h1) = anchors[right];
    let fraction = (target - t0) as f64 / (t1 - t0) as f64;
    let horizon = (h0 as f64 + fraction * (h1 as f64 - h0 as f64)).round() as u64;
    Ok((horizon, Provenance::Interpolated))
}

/// Expected chunk size of the rapid-asymmetric-extremum chunker for a
/// given horizon: `h + (1 - E[max_h]/256)^-1`.
pub fn ram_mean_for_horizon(horizon: u64) -> f64 {
    let expected_max = byte_max_mean(horizon);
    horizon as f64 + 1.0 / (1.0 - expected_max / 256.0)
}

/// `E[max of h bytes]` without building the full distribution; valid for
/// arbitrary horizons.
fn byte_max_mean(horizon: u64) -> f64 {
    // E[M] = 255 - sum_{m<255} CDF(m).
    let h = horizon.min(i32::MAX as u64) as i32;
    let mut cdf_sum = 0.0;
    for m in 0..255u32 {
        cdf_sum += ((m + 1) as f64 / 256.0).powi(h);
    }
    255.0 - cdf_sum
}

/// Horizon whose predicted mean is closest to the target; the predicted
/// mean is strictly increasing in the horizon, so a binary search
/// followed by a neighbor comparison suffices.
pub fn ram_horizon_for_target(target: u64) -> Result<u64, TuneError> {
    if target < 3 {
        return Err(TuneError::UnsupportedTarget {
            algorithm: "ram",
            target,
        });
    }
    let goal = target as f64;
    let (mut lo, mut hi) = (1u64, target.max(2));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if ram_mean_for_horizon(mid) < goal {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    // lo is the smallest horizon with mean >= goal; its predecessor may
    // be closer.
    if lo > 1 {
        let below = ram_mean_for_horizon(lo - 1);
        let above = ram_mean_for_horizon(lo);
        if (goal - below).abs() <= (above - goal).abs() {
            return Ok(lo - 1);
        }
    }
    Ok(lo)
}

/// Expected chunk size of the increasing-interval chunker:
/// `(C(256,w)/256^w)^-1 + w`, evaluated in log space. Overflows to
/// infinity for large windows, which is the honest answer in f64.
pub fn mii_mean_for_window(window: u32) -> Result<f64, TuneError> {
    if window == 0 || window > 256 {
        return Err(TuneError::WindowOutOfRange(window));
    }
    let ln_choose: f64 = (1..=window)
        .map(|k| ((257 - k) as f64).ln() - (k as f64).ln())
        .sum();
    let log_excess = window as f64 * 256f64.ln() - ln_choose;
    Ok(log_excess.exp() + window as f64)
}

/// Window whose predicted mean is closest to the target.
pub fn mii_window_for_target(target: u64) -> u32 {
    let goal = target as f64;
    let mut best = (1u32, f64::INFINITY);
    for window in 1..=256u32 {
        let mean = mii_mean_for_window(window).expect("window in range");
        if !mean.is_finite() {
            break;
        }
        let distance = (mean - goal).abs();
        if distance < best.1 {
            best = (window, distance);
        }
    }
    best.0
}

fn ln_choose(n: u64, k: u64) -> f64 {
    (1..=k)
        .map(|j| ((n - j + 1) as f64).ln() - (j as f64).ln())
        .sum()
}

/// Threshold candidates for one popcount window size: thresholds in the
/// upper binomial tail whose prior probability `C(8w,t)·2^(-8w)` lies in
/// `[1/(4·target), 4/target]`.
pub fn pci_candidate_thresholds(target: u64, window: usize) -> Vec<u32> {
    let bits = window as u64 * 8;
    let ln2 = std::f64::consts::LN_2;
    let lower = (4.0 * target as f64).recip().ln();
    let upper = (4.0 / target as f64).ln();
    let mut candidates = Vec::new();
    for threshold in (bits / 2 + 1)..=bits {
        let ln_pmf = ln_choose(bits, threshold) - bits as f64 * ln2;
        if ln_pmf > upper {
            continue;
        }
        if ln_pmf < lower {
            break;
        }
        candidates.push(threshold as u32);
    }
    candidates
}

/// Result of the popcount simulation tuner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PciTuning {
    pub window: usize,
    pub threshold: u32,
    pub empirical_mean: f64,
}

/// Tunes the popcount chunker by simulation: runs every candidate
/// `(window, threshold)` pair over `sim_len` bytes of seeded random data
/// and picks the pair whose empirical mean lands closest to the target.
/// Each candidate gets an independent stream derived from
/// `(seed, window, threshold)`, so evaluation order cannot matter.
/// `full_grid` disables the binomial pruning and sweeps every threshold.
pub fn pci_tune(
    target: u64,
    sim_len: usize,
    seed: u64,
    full_grid: bool,
) -> Result<PciTuning, TuneError> {
    const MIN_SIM_LEN: usize = 1 << 20;
    if sim_len < MIN_SIM_LEN {
        return Err(TuneError::SimulationTooShort(MIN_SIM_LEN));
    }
    let mut best: Option<PciTuning> = None;
    for window in 32..=64usize {
        let thresholds = if full_grid {
            (0..=window as u32 * 8).collect()
        } else {
            pci_candidate_thresholds(target, window)
        };
        for threshold in thresholds {
            let stream_seed = rng::derive_seed(seed, &[window as u64, threshold as u64]);
            let Some(mean) = simulate_pci_mean(window, threshold, sim_len, stream_seed) else {
                continue;
            };
            let better = match &best {
                Some(current) => {
                    (mean - target as f64).abs() < (current.empirical_mean - target as f64).abs()
                }
                None => true,
            };
            if better {
                best = Some(PciTuning {
                    window,
                    threshold,
                    empirical_mean: mean,
                });
            }
        }
    }
    match best {
        Some(tuning)
            if (tuning.empirical_mean - target as f64).abs() <= target as f64 * 0.5 =>
        {
            Ok(tuning)
        }
        _ => Err(TuneError::NoCandidate {
            target,
            tolerance: 50,
        }),
    }
}

fn simulate_pci_mean(window: usize, threshold: u32, sim_len: usize, seed: u64) -> Option<f64> {
    const BLOCK: usize = 256 << 10;
    let chunker = PciChunker::new(window, threshold).ok()?;
    let mut stream = ChunkStream::new(Box::new(chunker));
    let mut rng = SplitMix64::new(seed);
    let mut block = vec![0u8; BLOCK];
    let mut remaining = sim_len;
    let mut cuts = 0u64;
    let mut last_cut = 0u64;
    while remaining > 0 {
        let len = remaining.min(BLOCK);
        rng.fill_bytes(&mut block[..len]);
        let block_cuts = stream.push_block(&block[..len]).expect("stream open");
        if let Some(&last) = block_cuts.last() {
            cuts += block_cuts.len() as u64;
            last_cut = last;
        }
        remaining -= len;
    }
    if cuts < 2 {
        return None;
    }
    Some(last_cut as f64 / cuts as f64)
}

/// Counts all overlapping byte pairs of `data`, sorted by count
/// descending; equal counts order by pair value so the list is
/// deterministic.
pub fn pair_frequencies(data: &[u8]) -> Result<Vec<((u8, u8), u64)>, TuneError> {
    if data.len() < 2 {
        return Err(TuneError::InputTooShort);
    }
    let mut counts = vec![0u64; 65536];
    for pair in data.windows(2) {
        counts[(pair[0] as usize) << 8 | pair[1] as usize] += 1;
    }
    let mut list: Vec<((u8, u8), u64)> = counts
        .iter()
        .enumerate()
        .filter(|&(_, &count)| count > 0)
        .map(|(index, &count)| (((index >> 8) as u8, index as u8), count))
        .collect();
    // Stable by index already; sort by descending count keeps the value
    // order within equal counts.
    list.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    Ok(list)
}

/// Predicted mean chunk size for a divisor selection:
/// `len / (1 + sum of counts) + min_chunk`.
pub fn bfbc_predicted_mean(total_count: u64, len: u64, min_chunk: u64) -> f64 {
    len as f64 / (1 + total_count) as f64 + min_chunk as f64
}

/// Greedy divisor selection. Walks the frequency list in rank order: the
/// first pair whose solo prediction is at or above the target seeds the
/// set, and every later pair joins if it moves the prediction strictly
/// closer to the target.
pub fn bfbc_divisors(
    frequencies: &[((u8, u8), u64)],
    target: u64,
    len: u64,
    min_chunk: u64,
) -> Result<DivisorSet, TuneError> {
    if frequencies.is_empty() {
        return Err(TuneError::EmptyFrequencies);
    }
    debug_assert!(
        frequencies.windows(2).all(|w| w[0].1 >= w[1].1),
        "frequency list must be sorted descending"
    );
    let goal = target as f64;
    let mut selected: Vec<crate::algorithms::bfbc::Divisor> = Vec::new();
    let mut total = 0u64;
    for (rank, &(pair, count)) in frequencies.iter().enumerate() {
        if selected.is_empty() {
            if bfbc_predicted_mean(count, len, min_chunk) >= goal {
                selected.push(crate::algorithms::bfbc::Divisor { pair, count, rank });
                total = count;
            }
        } else {
            let current = bfbc_predicted_mean(total, len, min_chunk);
            let with_pair = bfbc_predicted_mean(total + count, len, min_chunk);
            if (goal - with_pair).abs() < (goal - current).abs() {
                selected.push(crate::algorithms::bfbc::Divisor { pair, count, rank });
                total += count;
            }
        }
    }
    if selected.is_empty() {
        return Err(TuneError::EmptyDivisors);
    }
    DivisorSet::from_divisors(selected).map_err(|_| TuneError::EmptyDivisors)
}

/// Knobs for tuning steps that run simulations.
#[derive(Debug, Clone)]
pub struct TuneOptions {
    pub seed: u64,
    pub pci_sim_len: usize,
    pub pci_full_grid: bool,
}

impl Default for TuneOptions {
    fn default() -> Self {
        TuneOptions {
            seed: 0,
            // Ten megabytes of simulated data per candidate pair.
            pci_sim_len: 10_000_000,
            pci_full_grid: false,
        }
    }
}

/// A tuned spec plus where its parameters came from.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedSpec {
    pub spec: ChunkerSpec,
    pub provenance: Provenance,
}

/// Resolves parameters for every algorithm whose tuning depends only on
/// the target size. The byte-pair variants need input frequencies; see
/// [`resolve_bfbc`].
pub fn resolve(
    algorithm: Algorithm,
    target: u64,
    options: &TuneOptions,
) -> Result<ResolvedSpec, TuneError> {
    let (params, provenance) = match algorithm {
        Algorithm::Fsc => (Params::Fsc { fixed_size: target }, Provenance::Formula),
        Algorithm::Rabin | Algorithm::Buzhash => (
            Params::Bsw {
                window: BSW_WINDOW,
                mask_bits: bsw_mask_bits(target, BSW_WINDOW)?,
            },
            Provenance::Formula,
        ),
        Algorithm::Gear => (
            Params::Gear {
                mask_bits: gear_mask_bits(target)?,
            },
            Provenance::Formula,
        ),
        Algorithm::GearNc(level) => {
            let base = gear_mask_bits(target)?;
            let policy = NcPolicy::new(base, level, target)?;
            (Params::GearNc { policy }, Provenance::Formula)
        }
        Algorithm::Ae => {
            let (horizon, provenance) = ae_horizon_for_target(target)?;
            (Params::Ae { horizon }, provenance)
        }
        Algorithm::Ram => (
            Params::Ram {
                horizon: ram_horizon_for_target(target)?,
            },
            Provenance::Formula,
        ),
        Algorithm::Mii => (
            Params::Mii {
                window: mii_window_for_target(target),
            },
            Provenance::Formula,
        ),
        Algorithm::Pci => {
            if let Some(&(_, window, threshold)) =
                PCI_PRESETS.iter().find(|&&(preset, _, _)| preset == target)
            {
                (Params::Pci { window, threshold }, Provenance::Table)
            } else {
                let tuning = pci_tune(
                    target,
                    options.pci_sim_len,
                    options.seed,
                    options.pci_full_grid,
                )?;
                (
                    Params::Pci {
                        window: tuning.window,
                        threshold: tuning.threshold,
                    },
                    Provenance::Simulation,
                )
            }
        }
        Algorithm::Bfbc | Algorithm::BfbcStar => {
            return Err(TuneError::DataDependent {
                algorithm: algorithm.name(),
            })
        }
    };
    let spec = ChunkerSpec::new(algorithm, target, params)?;
    Ok(ResolvedSpec { spec, provenance })
}

/// Resolves the byte-pair chunkers from a frequency list: the plain
/// variant takes the top three pairs and a minimum of `target - 128`;
/// the starred variant selects divisors greedily and uses no minimum.
pub fn resolve_bfbc(
    algorithm: Algorithm,
    target: u64,
    frequencies: &[((u8, u8), u64)],
    len: u64,
) -> Result<ResolvedSpec, TuneError> {
    let (divisors, min_chunk) = match algorithm {
        Algorithm::Bfbc => {
            if frequencies.is_empty() {
                return Err(TuneError::EmptyFrequencies);
            }
            let divisors = DivisorSet::top_k(frequencies, 3)
                .map_err(|_| TuneError::EmptyFrequencies)?;
            (divisors, target.saturating_sub(128))
        }
        Algorithm::BfbcStar => (bfbc_divisors(frequencies, target, len, 0)?, 0),
        other => {
            return Err(TuneError::UnsupportedTarget {
                algorithm: other.name(),
                target,
            })
        }
    };
    let spec = ChunkerSpec::new(algorithm, target, Params::Bfbc { divisors, min_chunk })?;
    Ok(ResolvedSpec {
        spec,
        provenance: Provenance::FrequencyAnalysis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pmf_of_single_byte_is_uniform() {
        for m in 0..=255 {
            assert_eq!(max_byte_pmf(1, m).unwrap(), 1.0 / 256.0);
        }
    }

    #[test]
    fn long_horizon_concentrates_at_255() {
        assert!(max_byte_pmf(2000, 255).unwrap() > 0.999);
    }

    #[test]
    fn zero_lower_bound_changes_nothing() {
        for m in (0..=255).step_by(17) {
            assert_eq!(
                max_byte_pmf_bounded(37, m, 0).unwrap(),
                max_byte_pmf(37, m).unwrap()
            );
        }
    }

    #[test]
    fn lower_bound_zeroes_smaller_values_and_renormalizes() {
        let dist = ByteMaxDistribution::with_lower_bound(16, 100).unwrap();
        for m in 0..100 {
            assert_eq!(dist.pmf(m), 0.0);
        }
        let total: f64 = (0..=255u8).map(|m| dist.pmf(m)).sum();
        assert!((total - 1.0).abs() < 1e-12);
        // The conditioned maximum stochastically dominates the plain one:
        // its CDF sits at or below the unconditioned CDF everywhere.
        let plain = ByteMaxDistribution::new(16).unwrap();
        for m in 0..=255u8 {
            assert!(dist.cdf(m) <= plain.cdf(m) + 1e-12, "m = {m}");
        }
    }

    #[test]
    fn domain_errors() {
        assert_eq!(max_byte_pmf(1, 256).unwrap_err(), TuneError::ByteDomain(256));
        assert_eq!(
            max_byte_pmf_bounded(1, 0, 300).unwrap_err(),
            TuneError::ByteDomain(300)
        );
        assert_eq!(max_byte_pmf(0, 0).unwrap_err(), TuneError::ZeroHorizon);
    }

    #[test]
    fn single_byte_mean_is_exact() {
        assert_eq!(ByteMaxDistribution::new(1).unwrap().mean(), 127.5);
    }

    #[test]
    fn expected_max_is_increasing_toward_255() {
        let mut previous = 0.0;
        for horizon in 1..=512u32 {
            let mean = ByteMaxDistribution::new(horizon).unwrap().mean();
            assert!(mean > previous, "horizon {horizon}");
            previous = mean;
        }
        assert!(previous < 255.0);
        assert!(ByteMaxDistribution::new(4096).unwrap().mean() > 254.99);
    }

    #[test]
    fn ram_mean_of_horizon_one() {
        // 1 + (1 - 127.5/256)^-1 = 1 + 256/128.5.
        let expected = 1.0 + 256.0 / 128.5;
        assert!((ram_mean_for_horizon(1) - expected).abs() < 1e-12);
    }

    #[test]
    fn ram_mean_is_strictly_increasing() {
        let mut previous = ram_mean_for_horizon(1);
        for horizon in 2..=2048 {
            let mean = ram_mean_for_horizon(horizon);
            assert!(mean > previous, "horizon {horizon}");
            previous = mean;
        }
    }

    #[test]
    fn ram_solver_round_trips() {
        for target in [512u64, 2048, 8192] {
            let horizon = ram_horizon_for_target(target).unwrap();
            let mean = ram_mean_for_horizon(horizon);
            assert!(
                (mean - target as f64).abs() <= 1.0,
                "target {target}: horizon {horizon} gives {mean}"
            );
        }
    }

    #[test]
    fn ae_horizon_sources() {
        assert_eq!(ae_horizon_for_target(512).unwrap(), (348, Provenance::Table));
        assert_eq!(ae_horizon_for_target(770).unwrap(), (563, Provenance::Table));
        assert_eq!(ae_horizon_for_target(1024).unwrap(), (793, Provenance::Table));
        assert_eq!(
            ae_horizon_for_target(2048).unwrap(),
            (1792, Provenance::Formula)
        );
        assert_eq!(
            ae_horizon_for_target(8192).unwrap(),
            (7936, Provenance::Formula)
        );
        assert!(matches!(
            ae_horizon_for_target(511),
            Err(TuneError::UnsupportedTarget { .. })
        ));
        let (mid, provenance) = ae_horizon_for_target(1536).unwrap();
        assert_eq!(provenance, Provenance::Interpolated);
        assert!(mid > 793 && mid < 1792);
    }

    #[test]
    fn mii_mean_known_points() {
        assert_eq!(mii_mean_for_window(1).unwrap(), 2.0);
        assert_eq!(mii_mean_for_window(5).unwrap().round() as u64, 130);
        assert_eq!(mii_mean_for_window(6).unwrap().round() as u64, 770);
        assert_eq!(mii_mean_for_window(7).unwrap().round() as u64, 5482);
    }

    #[test]
    fn mii_log_space_matches_exact_rationals() {
        // Oracle: exact integer evaluation in u128 for small windows.
        for window in 1..=10u32 {
            let mut choose: u128 = 1;
            for k in 1..=window as u128 {
                choose = choose * (257 - k) / k;
            }
            let power = (256u128).pow(window);
            let exact = power as f64 / choose as f64 + window as f64;
            let log_space = mii_mean_for_window(window).unwrap();
            assert!(
                ((log_space - exact) / exact).abs() < 1e-9,
                "window {window}: {log_space} vs {exact}"
            );
        }
    }

    #[test]
    fn mii_window_for_paper_targets() {
        assert_eq!(mii_window_for_target(130), 5);
        assert_eq!(mii_window_for_target(770), 6);
        assert_eq!(mii_window_for_target(5482), 7);
    }

    #[test]
    fn mask_bit_rules() {
        assert_eq!(bsw_mask_bits(2048, 32).unwrap(), 11);
        assert_eq!(bsw_mask_bits(1024, 32).unwrap(), 10);
        assert_eq!(bsw_mask_bits(4096, 32).unwrap(), 12);
        assert_eq!(gear_mask_bits(2048).unwrap(), 11);
        assert_eq!(gear_mask_bits(1024).unwrap(), 10);
    }

    #[test]
    fn pci_pruning_keeps_known_presets() {
        for &(target, window, threshold) in PCI_PRESETS {
            let candidates = pci_candidate_thresholds(target, window);
            assert!(
                candidates.contains(&threshold),
                "target {target}: ({window}, {threshold}) not in {candidates:?}"
            );
        }
    }

    #[test]
    fn pci_extreme_threshold_is_pruned() {
        // All bits set fires with probability 2^(-8w): excluded.
        for window in [32usize, 64] {
            let candidates = pci_candidate_thresholds(1024, window);
            assert!(!candidates.contains(&(window as u32 * 8)));
        }
    }

    #[test]
    fn divisor_selection_hand_trace() {
        // Predictions: rank 1 alone 9.90, ranks 1-2 6.62, adding rank 3
        // would move to 6.21, away from 8.
        let frequencies = vec![((0, 1), 100), ((0, 2), 50), ((0, 3), 10)];
        let set = bfbc_divisors(&frequencies, 8, 1000, 0).unwrap();
        let ranks: Vec<usize> = set.divisors().iter().map(|d| d.rank).collect();
        assert_eq!(ranks, vec![0, 1]);
    }

    #[test]
    fn exact_frequency_hits_target_exactly() {
        // One pair occurring len/target - 1 times predicts the target.
        assert_eq!(bfbc_predicted_mean(99, 1000, 0), 10.0);
        let set = bfbc_divisors(&[((9, 9), 99)], 10, 1000, 0).unwrap();
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn zero_frequency_tail_changes_nothing() {
        let base = vec![((0, 1), 100), ((0, 2), 50), ((0, 3), 10)];
        let mut padded = base.clone();
        padded.push(((9, 9), 0));
        padded.push(((9, 8), 0));
        let a = bfbc_divisors(&base, 8, 1000, 0).unwrap();
        let b = bfbc_divisors(&padded, 8, 1000, 0).unwrap();
        let ranks = |set: &DivisorSet| set.divisors().iter().map(|d| d.rank).collect::<Vec<_>>();
        assert_eq!(ranks(&a), ranks(&b));
    }

    #[test]
    fn divisor_errors() {
        assert_eq!(
            bfbc_divisors(&[], 8, 1000, 0).unwrap_err(),
            TuneError::EmptyFrequencies
        );
        // No single pair reaches the target mean: seed condition fails.
        let frequencies = vec![((0, 1), 900)];
        assert_eq!(
            bfbc_divisors(&frequencies, 500, 1000, 0).unwrap_err(),
            TuneError::EmptyDivisors
        );
    }

    #[test]
    fn pair_counting() {
        assert_eq!(
            pair_frequencies(b"aaaa").unwrap(),
            vec![((b'a', b'a'), 3)]
        );
        assert_eq!(
            pair_frequencies(b"abab").unwrap(),
            vec![((b'a', b'b'), 2), ((b'b', b'a'), 1)]
        );
        assert_eq!(pair_frequencies(b"x").unwrap_err(), TuneError::InputTooShort);
    }

    #[test]
    fn pair_ties_order_by_value() {
        let list = pair_frequencies(b"abba").unwrap();
        assert_eq!(
            list,
            vec![((b'a', b'b'), 1), ((b'b', b'a'), 1), ((b'b', b'b'), 1)]
        );
    }

    #[test]
    fn resolve_rejects_data_dependent_algorithms() {
        assert!(matches!(
            resolve(Algorithm::Bfbc, 2048, &TuneOptions::default()),
            Err(TuneError::DataDependent { .. })
        ));
    }

    #[test]
    fn resolve_known_targets() {
        let options = TuneOptions::default();
        let ae = resolve(Algorithm::Ae, 512, &options).unwrap();
        assert!(matches!(ae.spec.params, Params::Ae { horizon: 348 }));
        assert_eq!(ae.provenance, Provenance::Table);

        let pci = resolve(Algorithm::Pci, 1024, &options).unwrap();
        assert!(matches!(
            pci.spec.params,
            Params::Pci { window: 34, threshold: 157 }
        ));
        assert_eq!(pci.provenance, Provenance::Table);

        let mii = resolve(Algorithm::Mii, 770, &options).unwrap();
        assert!(matches!(mii.spec.params, Params::Mii { window: 6 }));
    }
}
