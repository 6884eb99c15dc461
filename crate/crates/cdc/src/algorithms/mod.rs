//! The chunking strategies, one module per algorithm, plus the registry
//! that maps names to algorithms and specs to boxed state machines.

pub mod ae;
pub mod bfbc;
pub mod bsw;
pub mod fsc;
pub mod gear;
pub mod mii;
pub mod pci;
pub mod ram;

pub use ae::AeChunker;
pub use bfbc::{BfbcChunker, Divisor, DivisorSet};
pub use bsw::{BswChunker, BuzhashChunker, RabinChunker};
pub use fsc::FixedChunker;
pub use gear::{GearChunker, NcGearChunker, NcPolicy};
pub use mii::MiiChunker;
pub use pci::PciChunker;
pub use ram::RamChunker;

use crate::config::{Algorithm, ChunkerSpec, Params};
use crate::error::ConfigError;
use crate::rolling::ByteTable;
use crate::stream::Chunker;

/// Registry row: a runtime-selectable algorithm variant.
pub struct AlgorithmInfo {
    pub name: &'static str,
    pub algorithm: Algorithm,
    pub summary: &'static str,
}

pub const REGISTRY: &[AlgorithmInfo] = &[
    AlgorithmInfo {
        name: "fsc",
        algorithm: Algorithm::Fsc,
        summary: "fixed-size chunking (baseline, not content-defined)",
    },
    AlgorithmInfo {
        name: "rabin",
        algorithm: Algorithm::Rabin,
        summary: "sliding window over a Rabin polynomial fingerprint",
    },
    AlgorithmInfo {
        name: "buzhash",
        algorithm: Algorithm::Buzhash,
        summary: "sliding window over a cyclic-polynomial (Buzhash) hash",
    },
    AlgorithmInfo {
        name: "gear",
        algorithm: Algorithm::Gear,
        summary: "Gear hash judged on its most significant bits",
    },
    AlgorithmInfo {
        name: "gear-nc1",
        algorithm: Algorithm::GearNc(1),
        summary: "Gear with normalized chunking, level 1 (±1 mask bit)",
    },
    AlgorithmInfo {
        name: "gear-nc2",
        algorithm: Algorithm::GearNc(2),
        summary: "Gear with normalized chunking, level 2 (±2 mask bits)",
    },
    AlgorithmInfo {
        name: "gear-nc3",
        algorithm: Algorithm::GearNc(3),
        summary: "Gear with normalized chunking, level 3 (±3 mask bits)",
    },
    AlgorithmInfo {
        name: "ae",
        algorithm: Algorithm::Ae,
        summary: "asymmetric extremum: cut a fixed horizon past the chunk maximum",
    },
    AlgorithmInfo {
        name: "ram",
        algorithm: Algorithm::Ram,
        summary: "rapid asymmetric extremum: fixed window first, then first byte >= its maximum",
    },
    AlgorithmInfo {
        name: "mii",
        algorithm: Algorithm::Mii,
        summary: "cut after a strictly increasing interval of fixed length",
    },
    AlgorithmInfo {
        name: "pci",
        algorithm: Algorithm::Pci,
        summary: "sliding-window popcount against a threshold",
    },
    AlgorithmInfo {
        name: "bfbc",
        algorithm: Algorithm::Bfbc,
        summary: "cut on the top-3 most frequent byte pairs past a minimum length",
    },
    AlgorithmInfo {
        name: "bfbc-star",
        algorithm: Algorithm::BfbcStar,
        summary: "BFBC with a tuned divisor set and no minimum length",
    },
];

/// Resolves an algorithm by registry name (case-insensitive; `bfbc*` is
/// accepted for `bfbc-star`).
pub fn lookup(name: &str) -> Option<Algorithm> {
    let lowered = name.to_ascii_lowercase();
    let canonical = match lowered.as_str() {
        "bfbc*" => "bfbc-star",
        other => other,
    };
    REGISTRY
        .iter()
        .find(|info| info.name == canonical)
        .map(|info| info.algorithm)
}

/// Builds the boundary state machine for a validated spec, using the
/// default byte table for the hash-based algorithms.
pub fn build_chunker(spec: &ChunkerSpec) -> Result<Box<dyn Chunker>, ConfigError> {
    build_chunker_with_table(spec, &ByteTable::default())
}

pub fn build_chunker_with_table(
    spec: &ChunkerSpec,
    table: &ByteTable,
) -> Result<Box<dyn Chunker>, ConfigError> {
    spec.validate()?;
    let chunker: Box<dyn Chunker> = match (&spec.algorithm, &spec.params) {
        (Algorithm::Fsc, Params::Fsc { fixed_size }) => Box::new(FixedChunker::new(*fixed_size)?),
        (Algorithm::Rabin, Params::Bsw { window, mask_bits }) => {
            Box::new(RabinChunker::new(*window, *mask_bits)?)
        }
        (Algorithm::Buzhash, Params::Bsw { window, mask_bits }) => {
            Box::new(BuzhashChunker::new(*window, *mask_bits, table.clone())?)
        }
        (Algorithm::Gear, Params::Gear { mask_bits }) => {
            Box::new(GearChunker::new(*mask_bits, table.clone())?)
        }
        (Algorithm::GearNc(_), Params::GearNc { policy }) => {
            Box::new(NcGearChunker::new(*policy, table.clone())?)
        }
        (Algorithm::Ae, Params::Ae { horizon }) => Box::new(AeChunker::new(*horizon)?),
        (Algorithm::Ram, Params::Ram { horizon }) => Box::new(RamChunker::new(*horizon)?),
        (Algorithm::Mii, Params::Mii { window }) => Box::new(MiiChunker::new(*window)?),
        (Algorithm::Pci, Params::Pci { window, threshold }) => {
            Box::new(PciChunker::new(*window, *threshold)?)
        }
        (Algorithm::Bfbc | Algorithm::BfbcStar, Params::Bfbc { divisors, min_chunk }) => {
            Box::new(BfbcChunker::new(divisors.clone(), *min_chunk)?)
        }
        _ => return Err(ConfigError::ParamsMismatch(spec.algorithm.name())),
    };
    Ok(chunker)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_resolve() {
        for info in REGISTRY {
            assert_eq!(lookup(info.name), Some(info.algorithm), "{}", info.name);
        }
        assert_eq!(lookup("BFBC*"), Some(Algorithm::BfbcStar));
        assert_eq!(lookup("no-such-algorithm"), None);
    }

    #[test]
    fn registry_names_are_unique() {
        let mut names: Vec<_> = REGISTRY.iter().map(|i| i.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), REGISTRY.len());
    }

    #[test]
    fn build_covers_every_registered_algorithm() {
        use crate::algorithms::bfbc::DivisorSet;
        for info in REGISTRY {
            let params = match info.algorithm {
                Algorithm::Fsc => Params::Fsc { fixed_size: 2048 },
                Algorithm::Rabin | Algorithm::Buzhash => Params::Bsw {
                    window: 32,
                    mask_bits: 11,
                },
                Algorithm::Gear => Params::Gear { mask_bits: 11 },
                Algorithm::GearNc(level) => Params::GearNc {
                    policy: NcPolicy::new(11, level, 2048).unwrap(),
                },
                Algorithm::Ae | Algorithm::Ram => Params::Ae { horizon: 1792 },
                Algorithm::Mii => Params::Mii { window: 6 },
                Algorithm::Pci => Params::Pci {
                    window: 61,
                    threshold: 273,
                },
                Algorithm::Bfbc | Algorithm::BfbcStar => Params::Bfbc {
                    divisors: DivisorSet::from_pairs(&[(0, 0)]).unwrap(),
                    min_chunk: 0,
                },
            };
            let params = match (info.algorithm, params) {
                (Algorithm::Ram, Params::Ae { horizon }) => Params::Ram { horizon },
                (_, params) => params,
            };
            let spec = ChunkerSpec::new(info.algorithm, 2048, params).unwrap();
            build_chunker(&spec).unwrap();
        }
    }
}
