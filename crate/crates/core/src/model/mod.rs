//! Configuration, addressing, and deterministic randomness derivation.

mod address;
mod config;
mod seed;

pub use address::{segment_addresses, Address, Segment};
pub use config::{
    format_capacity, DestructionParams, DeviceFamily, DramConfig, DramGeometry, ElectricalParams,
    EnergyParams, EvalCtx, ModeRegisters, PufParams, TimingParams, ValidatedConfig,
    VariationModel, ENERGY_REFERENCE_ROW_BYTES, MR3_PARTITIONS, REFERENCE_TEMP_C,
};
pub use seed::{component_z, derive_component_seed, mix64, trial_z, ComponentKind, SeedStream};
