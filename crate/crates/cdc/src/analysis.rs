//! Chunk statistics: size distribution, deduplication ratio, and the
//! timed throughput harness.
//!
//! Statistics cover non-trailing chunks only; the trailing partial chunk
//! of a stream carries no information about the algorithm and is dropped
//! here (it stays flagged in the record stream so nothing is lost).

use std::collections::HashMap;
use std::time::Instant;

use serde::Serialize;

use crate::algorithms::build_chunker_with_table;
use crate::config::ChunkerSpec;
use crate::error::AnalysisError;
use crate::rolling::ByteTable;
use crate::stream::{ChunkRecord, ChunkStream};

/// Distinct-fingerprint index with byte totals.
///
/// Insertion order cannot matter: the totals are a function of the set
/// of records, so indexes built from disjoint shards merge into exactly
/// the totals of a single pass.
#[derive(Debug, Clone, Default)]
pub struct FingerprintIndex {
    seen: HashMap<[u8; 32], u64>,
    bytes_seen: u64,
}

impl FingerprintIndex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Counts one non-trailing record.
    pub fn ingest(&mut self, record: &ChunkRecord) {
        debug_assert!(!record.trailing, "trailing chunks are dropped by the caller");
        self.bytes_seen += record.length;
        self.seen.entry(record.fingerprint).or_insert(record.length);
    }

    pub fn merge(&mut self, other: FingerprintIndex) {
        self.bytes_seen += other.bytes_seen;
        for (fingerprint, length) in other.seen {
            self.seen.entry(fingerprint).or_insert(length);
        }
    }

    pub fn bytes_seen(&self) -> u64 {
        self.bytes_seen
    }

    pub fn bytes_unique(&self) -> u64 {
        self.seen.values().sum()
    }

    pub fn distinct_chunks(&self) -> u64 {
        self.seen.len() as u64
    }

    /// Fraction of bytes that deduplication would save:
    /// `1 - unique/total`, in `[0, 1)`.
    pub fn dedup_ratio(&self) -> f64 {
        if self.bytes_seen == 0 {
            return 0.0;
        }
        1.0 - self.bytes_unique() as f64 / self.bytes_seen as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramBucket {
    pub start: u64,
    pub count: u64,
}

/// Sparse histogram of chunk sizes; `start` is the inclusive lower edge
/// of a `bucket_width`-wide bucket. Empty buckets are omitted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub bucket_width: u64,
    pub buckets: Vec<HistogramBucket>,
}

/// Summary statistics over the non-trailing chunks of one run.
/// The standard deviation is the population form (divide by N).
#[derive(Debug, Clone, Serialize)]
pub struct StatsSummary {
    pub chunk_count: u64,
    pub mean: f64,
    pub sd: f64,
    pub min: u64,
    pub max: u64,
    pub histogram: Histogram,
    pub dedup_ratio: f64,
    pub trailing_omitted: bool,
}

/// Summarizes chunk records, dropping trailing ones. `bucket_width`
/// controls the histogram granularity (clamped to at least 1).
pub fn summarize(records: &[ChunkRecord], bucket_width: u64) -> Result<StatsSummary, AnalysisError> {
    let bucket_width = bucket_width.max(1);
    let mut index = FingerprintIndex::new();
    let mut count = 0u64;
    let mut sum = 0u64;
    let mut min = u64::MAX;
    let mut max = 0u64;
    let mut buckets: HashMap<u64, u64> = HashMap::new();
    for record in records.iter().filter(|r| !r.trailing) {
        index.ingest(record);
        count += 1;
        sum += record.length;
        min = min.min(record.length);
        max = max.max(record.length);
        *buckets.entry(record.length / bucket_width * bucket_width).or_default() += 1;
    }
    if count == 0 {
        return Err(AnalysisError::NoRecords);
    }
    let mean = sum as f64 / count as f64;
    let variance = records
        .iter()
        .filter(|r| !r.trailing)
        .map(|r| {
            let d = r.length as f64 - mean;
            d * d
        })
        .sum::<f64>()
        / count as f64;
    let mut buckets: Vec<HistogramBucket> = buckets
        .into_iter()
        .map(|(start, count)| HistogramBucket { start, count })
        .collect();
    buckets.sort_by_key(|b| b.start);
    Ok(StatsSummary {
        chunk_count: count,
        mean,
        sd: variance.sqrt(),
        min,
        max,
        histogram: Histogram {
            bucket_width,
            buckets,
        },
        dedup_ratio: index.dedup_ratio(),
        trailing_omitted: true,
    })
}

/// Throughput measurement over in-memory input.
#[derive(Debug, Clone, Serialize)]
pub struct ThroughputReport {
    pub median_mibps: f64,
    pub iqr_mibps: f64,
    pub reps: usize,
    /// Sum of all chunk sizes of the last run; always equals the input
    /// length (checked).
    pub sum_of_sizes: u64,
    pub runs_mibps: Vec<f64>,
}

/// Block size the timed loop feeds to the chunker.
pub const BENCH_BLOCK: usize = 1 << 20;

/// Runs the chunker `reps` times over `input` and reports the median and
/// interquartile range of the throughput. One untimed warm-up run comes
/// first. The timed region chunks and sums sizes, nothing else: no
/// fingerprinting happens and no [`FingerprintIndex`] exists here. Each
/// run checks that the chunk sizes sum to the input length.
pub fn throughput_run(
    spec: &ChunkerSpec,
    table: &ByteTable,
    input: &[u8],
    reps: usize,
) -> Result<ThroughputReport, BenchError> {
    if reps == 0 {
        return Err(AnalysisError::ZeroRepetitions.into());
    }
    let mibs = input.len() as f64 / (1 << 20) as f64;
    let mut runs = Vec::with_capacity(reps);
    let mut sum_of_sizes = 0;
    for rep in 0..=reps {
        let chunker = build_chunker_with_table(spec, table)?;
        let mut stream = ChunkStream::new(chunker);
        let started = Instant::now();
        let mut sum = 0u64;
        let mut last_cut = 0u64;
        for block in input.chunks(BENCH_BLOCK) {
            let cuts = stream.push_block(block).expect("stream open");
            for cut in cuts {
                sum += cut - last_cut;
                last_cut = cut;
            }
        }
        let trailing = stream.finalize().expect("single finalize");
        sum += trailing.length;
        let elapsed = started.elapsed().as_secs_f64();
        std::hint::black_box(sum);
        if sum != input.len() as u64 {
            return Err(AnalysisError::SizeSumMismatch {
                sum,
                expected: input.len() as u64,
            }
            .into());
        }
        sum_of_sizes = sum;
        if rep > 0 {
            // Run zero is the warm-up.
            runs.push(mibs / elapsed);
        }
    }
    let median = quantile(&runs, 0.5);
    let iqr = quantile(&runs, 0.75) - quantile(&runs, 0.25);
    Ok(ThroughputReport {
        median_mibps: median,
        iqr_mibps: iqr,
        reps,
        sum_of_sizes,
        runs_mibps: runs,
    })
}

/// Errors from [`throughput_run`]: either a stats-layer error or a bad
/// spec.
#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Config(#[from] crate::error::ConfigError),
}

/// Quantile with linear interpolation between order statistics.
pub fn quantile(values: &[f64], q: f64) -> f64 {
    debug_assert!(!values.is_empty());
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let position = q * (sorted.len() - 1) as f64;
    let lower = position.floor() as usize;
    let upper = position.ceil() as usize;
    let weight = position - lower as f64;
    sorted[lower] * (1.0 - weight) + sorted[upper] * weight
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn record(ordinal: u64, length: u64, tag: u64) -> ChunkRecord {
        // Fabricated fingerprint: equal tags mean equal content.
        let mut fingerprint = [0u8; 32];
        fingerprint[..8].copy_from_slice(&tag.to_le_bytes());
        ChunkRecord {
            ordinal,
            length,
            fingerprint,
            trailing: false,
        }
    }

    #[test]
    fn equal_lengths_have_zero_sd() {
        let records = vec![record(0, 4, 1), record(1, 4, 2), record(2, 4, 3)];
        let stats = summarize(&records, 1).unwrap();
        assert_eq!(stats.mean, 4.0);
        assert_eq!(stats.sd, 0.0);
        assert_eq!(stats.min, 4);
        assert_eq!(stats.max, 4);
    }

    #[test]
    fn population_sd() {
        let records = vec![record(0, 2, 1), record(1, 6, 2)];
        let stats = summarize(&records, 1).unwrap();
        assert_eq!(stats.mean, 4.0);
        assert_eq!(stats.sd, 2.0);
    }

    #[test]
    fn trailing_is_omitted() {
        let mut records = vec![record(0, 4, 1)];
        records.push(ChunkRecord {
            trailing: true,
            ..record(1, 999, 2)
        });
        let stats = summarize(&records, 1).unwrap();
        assert_eq!(stats.chunk_count, 1);
        assert_eq!(stats.max, 4);
        assert!(stats.trailing_omitted);
    }

    #[test]
    fn only_trailing_records_is_an_error() {
        let records = vec![ChunkRecord {
            trailing: true,
            ..record(0, 5, 1)
        }];
        assert_eq!(summarize(&records, 1).unwrap_err(), AnalysisError::NoRecords);
        assert_eq!(summarize(&[], 1).unwrap_err(), AnalysisError::NoRecords);
    }

    #[test]
    fn duplicate_chunks_count_once() {
        let mut index = FingerprintIndex::new();
        index.ingest(&record(0, 10, 7));
        index.ingest(&record(1, 10, 7));
        assert_eq!(index.bytes_seen(), 20);
        assert_eq!(index.bytes_unique(), 10);
        assert_eq!(index.dedup_ratio(), 0.5);
    }

    #[test]
    fn ratio_is_permutation_invariant() {
        let mut rng = SplitMix64::new(404);
        let records: Vec<ChunkRecord> = (0..200)
            .map(|i| record(i, 64 + rng.next_below(1024), rng.next_below(50)))
            .collect();
        let forward = {
            let mut index = FingerprintIndex::new();
            records.iter().for_each(|r| index.ingest(r));
            index.dedup_ratio()
        };
        let backward = {
            let mut index = FingerprintIndex::new();
            records.iter().rev().for_each(|r| index.ingest(r));
            index.dedup_ratio()
        };
        assert_eq!(forward, backward);
    }

    #[test]
    fn sharded_merge_equals_single_pass() {
        let mut rng = SplitMix64::new(405);
        let records: Vec<ChunkRecord> = (0..300)
            .map(|i| record(i, 64 + rng.next_below(1024), rng.next_below(40)))
            .collect();
        let single = {
            let mut index = FingerprintIndex::new();
            records.iter().for_each(|r| index.ingest(r));
            index
        };
        let merged = {
            let (left, right) = records.split_at(120);
            let mut a = FingerprintIndex::new();
            left.iter().for_each(|r| a.ingest(r));
            let mut b = FingerprintIndex::new();
            right.iter().for_each(|r| b.ingest(r));
            a.merge(b);
            a
        };
        assert_eq!(single.bytes_seen(), merged.bytes_seen());
        assert_eq!(single.bytes_unique(), merged.bytes_unique());
        assert_eq!(single.distinct_chunks(), merged.distinct_chunks());
    }

    #[test]
    fn histogram_buckets_cover_all_chunks() {
        let records = vec![record(0, 100, 1), record(1, 130, 2), record(2, 512, 3)];
        let stats = summarize(&records, 64).unwrap();
        assert_eq!(stats.histogram.bucket_width, 64);
        let total: u64 = stats.histogram.buckets.iter().map(|b| b.count).sum();
        assert_eq!(total, 3);
        assert_eq!(stats.histogram.buckets[0].start, 64);
        assert_eq!(stats.histogram.buckets[0].count, 1);
        assert_eq!(stats.histogram.buckets[1].start, 128, "130 buckets at 128");
    }

    #[test]
    fn quantiles_interpolate() {
        let values = vec![1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&values, 0.5), 2.5);
        assert_eq!(quantile(&values, 0.0), 1.0);
        assert_eq!(quantile(&values, 1.0), 4.0);
        assert_eq!(quantile(&values, 0.25), 1.75);
    }

    #[test]
    fn throughput_checks_reassembly_and_rep_count() {
        use crate::config::{Algorithm, Params};
        let spec = ChunkerSpec::new(Algorithm::Fsc, 1024, Params::Fsc { fixed_size: 1024 })
            .unwrap();
        let table = ByteTable::default();
        let input = vec![7u8; 256 << 10];
        let report = throughput_run(&spec, &table, &input, 3).unwrap();
        assert_eq!(report.sum_of_sizes, input.len() as u64);
        assert_eq!(report.runs_mibps.len(), 3);
        assert!(report.median_mibps > 0.0);
        assert!(matches!(
            throughput_run(&spec, &table, &input, 0),
            Err(BenchError::Analysis(AnalysisError::ZeroRepetitions))
        ));
    }
}
