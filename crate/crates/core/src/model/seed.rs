//! Deterministic derivation of per-component random substreams.
//!
//! Every stochastic quantity in the simulator (sense-amp offsets, cell
//! perturbations, retention constants, transient noise, sampling decisions)
//! is drawn from a substream keyed by `(master_seed, component kind,
//! component address, trial)`. The derivation is a pure function, so results
//! are identical across runs, call orders, and thread counts.
//!
//! The mixing function is fixed and documented so that independent
//! implementations can reproduce the exact same streams: starting from
//! `master_seed ^ GAMMA`, each key field `f` is folded in as
//! `state = mix64(state ^ f) + GAMMA`, and the output is `mix64(state)`.
//! `mix64` is the SplitMix64 finalizer and `GAMMA = 0x9E3779B97F4A7C15`.
//! Each fold is a bijection of the state for a fixed field value, so two
//! distinct key tuples can never collide for the same master seed.

use crate::model::Address;

pub const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// What a derived substream feeds. The discriminants are part of the stream
/// definition and must not be reordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u64)]
pub enum ComponentKind {
    /// Fabrication offset of one sense amplifier (z-score).
    SaOffset = 1,
    /// Fabrication perturbation of one DRAM cell (z-score).
    CellOffset = 2,
    /// Per-cell capacitance variation (z-score).
    CellCap = 3,
    /// Per-cell retention time constant (lognormal draw).
    CellTau = 4,
    /// Per-trial transient noise at a sense amplifier.
    SaNoise = 5,
    /// Per-trial transient noise at a cell-connected sensing.
    CellNoise = 6,
    /// Per-cell temperature-coupling direction.
    CellTempCoupling = 7,
    /// Per-cell accelerated-aging drift.
    AgingDrift = 8,
    /// Latency-PUF per-cell failure strength.
    LatencyStrength = 9,
    /// Latency-PUF per-segment strength shift.
    LatencySegmentShift = 10,
    /// Latency-PUF per-trial failure draw.
    LatencyFail = 11,
    /// Pair sampling for Jaccard experiments.
    PairSampling = 12,
    /// Trial scheduling and other experiment-level draws.
    Experiment = 13,
}

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the 64-bit seed of the substream for one component.
///
/// Pure function: distinct `(kind, address, trial)` tuples yield distinct,
/// statistically independent seeds; identical tuples always yield the same
/// seed.
pub fn derive_component_seed(
    master_seed: u64,
    kind: ComponentKind,
    address: &Address,
    trial: u64,
) -> u64 {
    let fields = [
        kind as u64,
        address.channel as u64,
        address.rank as u64,
        address.bank as u64,
        address.subarray as u64,
        address.row as u64,
        address.column as u64,
        trial,
    ];
    let mut state = master_seed ^ GAMMA;
    for f in fields {
        state = mix64(state ^ f).wrapping_add(GAMMA);
    }
    mix64(state)
}

/// SplitMix64 stream over a derived seed.
#[derive(Debug, Clone)]
pub struct SeedStream {
    state: u64,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        SeedStream { state: seed }
    }

    pub fn for_component(
        master_seed: u64,
        kind: ComponentKind,
        address: &Address,
        trial: u64,
    ) -> Self {
        SeedStream::new(derive_component_seed(master_seed, kind, address, trial))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix64(self.state)
    }

    /// Uniform in [0, 1).
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in (0, 1]; safe to feed into a logarithm.
    #[inline]
    pub fn next_f64_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via the Box-Muller transform.
    #[inline]
    pub fn next_standard_normal(&mut self) -> f64 {
        let u1 = self.next_f64_open();
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}

/// One standard-normal z-score for a fabrication-time component property.
#[inline]
pub fn component_z(master_seed: u64, kind: ComponentKind, address: &Address) -> f64 {
    SeedStream::for_component(master_seed, kind, address, 0).next_standard_normal()
}

/// One standard-normal z-score for a per-trial transient quantity.
#[inline]
pub fn trial_z(master_seed: u64, kind: ComponentKind, address: &Address, trial: u64) -> f64 {
    SeedStream::for_component(master_seed, kind, address, trial).next_standard_normal()
}
