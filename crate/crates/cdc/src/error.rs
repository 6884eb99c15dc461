use thiserror::Error;

/// Errors raised while validating or constructing a chunker configuration.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("target chunk size {0} out of range [64, 2^30]")]
    TargetOutOfRange(u64),
    #[error("fixed chunk size must be at least 1")]
    ZeroFixedSize,
    #[error("window size {0} out of range {1}")]
    WindowOutOfRange(usize, &'static str),
    #[error("mask bit count {0} out of range {1}")]
    MaskBitsOutOfRange(u32, &'static str),
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error("popcount threshold {theta} exceeds window capacity of {capacity} bits")]
    ThresholdTooLarge { theta: u32, capacity: u32 },
    #[error("normalization level {0} must be in [1, 3]")]
    BadNormalizationLevel(u8),
    #[error("normalization level {level} leaves no mask bits below base {base}")]
    NormalizationUnderflow { base: u32, level: u8 },
    #[error("divisor set is empty")]
    EmptyDivisorSet,
    #[error("parameters do not match algorithm {0}")]
    ParamsMismatch(&'static str),
}

/// Misuse of the streaming protocol.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum StreamError {
    #[error("push_block called after finalize")]
    PushAfterFinalize,
    #[error("finalize called twice")]
    DoubleFinalize,
}

/// Errors from parameter tuning.
#[derive(Debug, Error, PartialEq)]
pub enum TuneError {
    #[error("value {0} outside the byte domain [0, 255]")]
    ByteDomain(u32),
    #[error("{algorithm} parameters depend on the input; derive byte-pair frequencies first")]
    DataDependent { algorithm: &'static str },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error("target chunk size {target} is not supported for {algorithm}")]
    UnsupportedTarget { algorithm: &'static str, target: u64 },
    #[error("window size {0} out of range [1, 256]")]
    WindowOutOfRange(u32),
    #[error("simulation found no parameters within {tolerance}% of target {target}")]
    NoCandidate { target: u64, tolerance: u32 },
    #[error("frequency list is empty")]
    EmptyFrequencies,
    #[error("no single divisor reaches the target mean; divisor set stays empty")]
    EmptyDivisors,
    #[error("input must contain at least 2 bytes to count byte pairs")]
    InputTooShort,
    #[error("simulation length must be at least {0} bytes")]
    SimulationTooShort(usize),
}

/// Errors from the statistics layer.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("no non-trailing chunk records to summarize")]
    NoRecords,
    #[error("at least one repetition is required")]
    ZeroRepetitions,
    #[error("sum of chunk sizes {sum} does not equal input length {expected}")]
    SizeSumMismatch { sum: u64, expected: u64 },
}
