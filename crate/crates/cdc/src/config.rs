//! Chunker configuration: which algorithm, which target size, which
//! resolved parameters. A validated [`ChunkerSpec`] is everything needed
//! to reproduce a chunking run.

use serde::{Serialize, Serializer};

use crate::algorithms::bfbc::DivisorSet;
use crate::algorithms::gear::NcPolicy;
use crate::error::ConfigError;

pub const MIN_TARGET: u64 = 64;
pub const MAX_TARGET: u64 = 1 << 30;

/// The algorithm family. Normalized Gear carries its level so that the
/// three levels register as distinct named variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Fsc,
    Rabin,
    Buzhash,
    Gear,
    GearNc(u8),
    Ae,
    Ram,
    Mii,
    Pci,
    Bfbc,
    BfbcStar,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Fsc => "fsc",
            Algorithm::Rabin => "rabin",
            Algorithm::Buzhash => "buzhash",
            Algorithm::Gear => "gear",
            Algorithm::GearNc(1) => "gear-nc1",
            Algorithm::GearNc(2) => "gear-nc2",
            Algorithm::GearNc(3) => "gear-nc3",
            Algorithm::GearNc(_) => "gear-nc?",
            Algorithm::Ae => "ae",
            Algorithm::Ram => "ram",
            Algorithm::Mii => "mii",
            Algorithm::Pci => "pci",
            Algorithm::Bfbc => "bfbc",
            Algorithm::BfbcStar => "bfbc-star",
        }
    }

    /// Whether the parameters can be derived from the target size alone.
    /// The BFBC variants additionally need byte-pair frequencies of the
    /// input.
    pub fn is_data_dependent(&self) -> bool {
        matches!(self, Algorithm::Bfbc | Algorithm::BfbcStar)
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Algorithm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Resolved, algorithm-specific parameters. Exactly the fields that the
/// algorithm consumes, nothing else.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Params {
    Fsc { fixed_size: u64 },
    Bsw { window: usize, mask_bits: u32 },
    Gear { mask_bits: u32 },
    GearNc { policy: NcPolicy },
    Ae { horizon: u64 },
    Ram { horizon: u64 },
    Mii { window: u32 },
    Pci { window: usize, threshold: u32 },
    Bfbc { divisors: DivisorSet, min_chunk: u64 },
}

/// A fully resolved chunking configuration.
#[derive(Debug, Clone, Serialize)]
pub struct ChunkerSpec {
    pub algorithm: Algorithm,
    pub target: u64,
    pub params: Params,
}

impl ChunkerSpec {
    pub fn new(algorithm: Algorithm, target: u64, params: Params) -> Result<Self, ConfigError> {
        let spec = ChunkerSpec {
            algorithm,
            target,
            params,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.target < MIN_TARGET || self.target > MAX_TARGET {
            return Err(ConfigError::TargetOutOfRange(self.target));
        }
        match (&self.algorithm, &self.params) {
            (Algorithm::Fsc, Params::Fsc { fixed_size }) => {
                if *fixed_size == 0 {
                    return Err(ConfigError::ZeroFixedSize);
                }
            }
            (Algorithm::Rabin | Algorithm::Buzhash, Params::Bsw { window, mask_bits }) => {
                if *window == 0 {
                    return Err(ConfigError::WindowOutOfRange(*window, "[1, ..)"));
                }
                if *mask_bits == 0 || *mask_bits > 63 {
                    return Err(ConfigError::MaskBitsOutOfRange(*mask_bits, "[1, 63]"));
                }
            }
            (Algorithm::Gear, Params::Gear { mask_bits }) => {
                if *mask_bits == 0 || *mask_bits > 32 {
                    return Err(ConfigError::MaskBitsOutOfRange(*mask_bits, "[1, 32]"));
                }
            }
            (Algorithm::GearNc(level), Params::GearNc { policy }) => {
                if policy.level != *level {
                    return Err(ConfigError::ParamsMismatch("gear-nc level"));
                }
                // Re-run the policy invariants.
                NcPolicy::new(policy.base_bits, policy.level, policy.switch_point)?;
            }
            (Algorithm::Ae, Params::Ae { horizon })
            | (Algorithm::Ram, Params::Ram { horizon }) => {
                if *horizon == 0 {
                    return Err(ConfigError::ZeroHorizon);
                }
            }
            (Algorithm::Mii, Params::Mii { window }) => {
                if *window == 0 || *window > 256 {
                    return Err(ConfigError::WindowOutOfRange(*window as usize, "[1, 256]"));
                }
            }
            (Algorithm::Pci, Params::Pci { window, threshold }) => {
                if *window == 0 {
                    return Err(ConfigError::WindowOutOfRange(*window, "[1, ..)"));
                }
                let capacity = *window as u32 * 8;
                if *threshold > capacity {
                    return Err(ConfigError::ThresholdTooLarge {
                        theta: *threshold,
                        capacity,
                    });
                }
            }
            (Algorithm::Bfbc | Algorithm::BfbcStar, Params::Bfbc { divisors, .. }) => {
                if divisors.is_empty() {
                    return Err(ConfigError::EmptyDivisorSet);
                }
            }
            _ => return Err(ConfigError::ParamsMismatch(self.algorithm.name())),
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_bounds() {
        let spec = ChunkerSpec::new(Algorithm::Fsc, 63, Params::Fsc { fixed_size: 63 });
        assert!(matches!(spec, Err(ConfigError::TargetOutOfRange(63))));
        assert!(ChunkerSpec::new(Algorithm::Fsc, 64, Params::Fsc { fixed_size: 64 }).is_ok());
        assert!(
            ChunkerSpec::new(Algorithm::Fsc, (1 << 30) + 1, Params::Fsc { fixed_size: 1 })
                .is_err()
        );
    }

    #[test]
    fn mismatched_params_rejected() {
        let spec = ChunkerSpec::new(Algorithm::Ae, 2048, Params::Fsc { fixed_size: 2048 });
        assert!(matches!(spec, Err(ConfigError::ParamsMismatch(_))));
    }

    #[test]
    fn nc_level_must_agree() {
        let policy = NcPolicy::new(11, 2, 2048).unwrap();
        assert!(
            ChunkerSpec::new(Algorithm::GearNc(3), 2048, Params::GearNc { policy }).is_err()
        );
        assert!(
            ChunkerSpec::new(Algorithm::GearNc(2), 2048, Params::GearNc { policy }).is_ok()
        );
    }
}
