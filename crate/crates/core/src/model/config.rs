//! Device configuration: geometry, timing, electrical, energy, and
//! process-variation parameters, plus named profiles and validation.

use crate::error::ConfigError;
use crate::model::seed::{component_z, trial_z, ComponentKind, SeedStream};
use crate::model::Address;
use serde::{Deserialize, Serialize};

/// Physical organization of one simulated device.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DramGeometry {
    pub channels: usize,
    pub ranks_per_channel: usize,
    pub banks_per_rank: usize,
    pub subarrays_per_bank: usize,
    pub rows_per_subarray: usize,
    /// Row (page) size shared by one wordline. 8 KB for DDR3/DDR4 x8 ranks,
    /// 2 KB for LPDDR4-style pages.
    #[serde(default = "default_row_size")]
    pub row_size_bytes: u64,
    #[serde(default = "default_bus_width")]
    pub bus_width_bits: u32,
    /// Data rate in mega-transfers per second.
    #[serde(default = "default_data_rate")]
    pub data_rate: u32,
}

fn default_row_size() -> u64 {
    8192
}
fn default_bus_width() -> u32 {
    64
}
fn default_data_rate() -> u32 {
    1600
}

/// DDR timing parameters in nanoseconds unless stated otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimingParams {
    pub cycle_time: f64,
    #[serde(rename = "tRCD")]
    pub t_rcd: f64,
    #[serde(rename = "tRP")]
    pub t_rp: f64,
    #[serde(rename = "tRAS")]
    pub t_ras: f64,
    #[serde(rename = "tRRD")]
    pub t_rrd: f64,
    #[serde(rename = "tFAW")]
    pub t_faw: f64,
    #[serde(rename = "tRFC")]
    pub t_rfc: f64,
    #[serde(rename = "tREFI")]
    pub t_refi: f64,
    /// Refresh/self-refresh window in milliseconds. Defaults to 64 ms, or
    /// 32 ms for LPDDR profiles.
    #[serde(rename = "tREFW", default)]
    pub t_refw_ms: Option<f64>,
    /// Row-level generation latency of activation-class primitives.
    #[serde(default = "default_act_latency")]
    pub act_latency: f64,
    /// Row-level generation latency of precharge-class primitives.
    #[serde(default = "default_pre_latency")]
    pub pre_latency: f64,
}

fn default_act_latency() -> f64 {
    35.0
}
fn default_pre_latency() -> f64 {
    13.0
}

/// Device family, which fixes the refresh-window default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeviceFamily {
    Ddr,
    Lpddr,
}

impl DeviceFamily {
    pub fn default_refw_ms(self) -> f64 {
        match self {
            DeviceFamily::Ddr => 64.0,
            DeviceFamily::Lpddr => 32.0,
        }
    }
}

/// Cell/bitline electrical parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElectricalParams {
    #[serde(default = "default_vdd")]
    pub vdd: f64,
    /// Must equal vdd/2 exactly.
    #[serde(default = "default_precharge_level")]
    pub precharge_level: f64,
    /// Cell capacitance in farads.
    #[serde(default = "default_c_cell")]
    pub c_cell: f64,
    /// C_bitline = c_bitline_ratio * c_cell.
    #[serde(default = "default_c_bitline_ratio")]
    pub c_bitline_ratio: f64,
}

fn default_vdd() -> f64 {
    1.0
}
fn default_precharge_level() -> f64 {
    0.5
}
fn default_c_cell() -> f64 {
    22e-15
}
fn default_c_bitline_ratio() -> f64 {
    10.0
}

impl ElectricalParams {
    pub fn c_bitline(&self) -> f64 {
        self.c_bitline_ratio * self.c_cell
    }

    /// Charge-transfer ratio C_cell / (C_cell + C_bitline).
    pub fn transfer_ratio(&self) -> f64 {
        self.c_cell / (self.c_cell + self.c_bitline())
    }
}

/// Per-8KB-row energies in nanojoules.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnergyParams {
    #[serde(default = "d_baseline_write")]
    pub baseline_write: f64,
    #[serde(default = "d_lisa")]
    pub lisa: f64,
    #[serde(default = "d_rowclone")]
    pub rowclone: f64,
    #[serde(default = "d_activation")]
    pub activation: f64,
    #[serde(default = "d_precharge")]
    pub precharge: f64,
    #[serde(default = "d_ue_sa_generate")]
    pub ue_sa_generate: f64,
    #[serde(default = "d_ue_sa_writeback")]
    pub ue_sa_writeback: f64,
    #[serde(default = "d_uc_pla")]
    pub uc_pla: f64,
    #[serde(default = "d_d_tran_generate")]
    pub d_tran_generate: f64,
    #[serde(default = "d_d_tran_writeback")]
    pub d_tran_writeback: f64,
    /// Extra bus energy charged per external command (command-based
    /// destruction only). Defaults to zero.
    #[serde(default)]
    pub bus_energy_per_command: f64,
    /// Linear dependence of the activation-class generation energy on the
    /// prior cell content (all-ones prior: +5%, all-zeros: -5%).
    #[serde(default = "d_ue_sa_data_dependence")]
    pub ue_sa_data_dependence: f64,
}

fn d_ue_sa_data_dependence() -> f64 {
    0.05
}

fn d_baseline_write() -> f64 {
    2000.0
}
fn d_lisa() -> f64 {
    90.0
}
fn d_rowclone() -> f64 {
    50.0
}
fn d_activation() -> f64 {
    17.3
}
fn d_precharge() -> f64 {
    17.2
}
fn d_ue_sa_generate() -> f64 {
    7.3
}
fn d_ue_sa_writeback() -> f64 {
    10.0
}
fn d_uc_pla() -> f64 {
    17.2
}
fn d_d_tran_generate() -> f64 {
    8.0
}
fn d_d_tran_writeback() -> f64 {
    10.0
}

pub const REFERENCE_TEMP_C: f64 = 30.0;
/// Reference row size the per-row energy constants are quoted for.
pub const ENERGY_REFERENCE_ROW_BYTES: f64 = 8192.0;

/// Deterministic per-component process-variation sampler.
///
/// Fabrication-time quantities (sense-amp offsets, cell perturbations,
/// retention constants) are fixed per `(master_seed, address)`; transient
/// noise is resampled per trial. A `variation_percent` of zero collapses
/// every sense-amp offset to `sa_offset_bias`, which makes the design
/// generate all-one values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariationModel {
    #[serde(default = "d_master_seed")]
    pub master_seed: u64,
    /// Process-variation level as a fraction (0.04 = "4%").
    #[serde(default = "d_variation_percent")]
    pub variation_percent: f64,
    /// Design-direction bias of the sense-amp offset toward '1', volts.
    #[serde(default = "d_sa_offset_bias")]
    pub sa_offset_bias: f64,
    /// Sense-amp offset sigma per unit of variation, volts.
    #[serde(default = "d_sa_offset_sigma")]
    pub sa_offset_sigma_per_percent: f64,
    /// Cell perturbation bias toward '1', volts.
    #[serde(default = "d_cell_offset_bias")]
    pub cell_offset_bias: f64,
    /// Cell perturbation sigma per unit of variation, volts.
    #[serde(default = "d_cell_offset_sigma")]
    pub cell_offset_sigma_per_percent: f64,
    /// How much of the sense-amp offset leaks into cell-connected sensing.
    #[serde(default = "d_sa_coupling")]
    pub sa_coupling: f64,
    /// Transient noise sigma per sensing trial, volts.
    #[serde(default = "d_cell_noise_sigma")]
    pub cell_noise_sigma: f64,
    /// Nominal operating temperature, degrees Celsius.
    #[serde(default = "d_temperature")]
    pub temperature: f64,
    /// Fractional sense-amp sigma change per degree Celsius.
    #[serde(default = "d_temp_sensitivity")]
    pub temp_sensitivity: f64,
    /// Cell threshold shift per degree Celsius, volts.
    #[serde(default = "d_cell_temp_coupling")]
    pub cell_temp_coupling: f64,
    /// Sigma of the permanent cell drift applied by accelerated aging, volts.
    #[serde(default = "d_aging_drift_sigma")]
    pub aging_drift_sigma: f64,
    /// Median of the per-cell retention time constant, seconds.
    #[serde(default = "d_tau_median")]
    pub retention_tau_median_s: f64,
    /// Lognormal sigma of the retention time constant.
    #[serde(default = "d_tau_sigma_log")]
    pub retention_tau_sigma_log: f64,
}

fn d_master_seed() -> u64 {
    0x0DA7A_u64
}
fn d_variation_percent() -> f64 {
    0.04
}
fn d_sa_offset_bias() -> f64 {
    0.005
}
fn d_sa_offset_sigma() -> f64 {
    // bias / (3.6 * 0.04): a 4% variation level leaves ~0.016% of sense
    // amps below zero, anchoring the Monte Carlo unpredictability table.
    0.034_722_222_222_222_22
}
fn d_cell_offset_bias() -> f64 {
    0.002
}
fn d_cell_offset_sigma() -> f64 {
    0.017_516
}
fn d_sa_coupling() -> f64 {
    0.1
}
fn d_cell_noise_sigma() -> f64 {
    2.3e-8
}
fn d_temperature() -> f64 {
    REFERENCE_TEMP_C
}
fn d_temp_sensitivity() -> f64 {
    0.0039
}
fn d_cell_temp_coupling() -> f64 {
    8.0e-8
}
fn d_aging_drift_sigma() -> f64 {
    4.0e-6
}
fn d_tau_median() -> f64 {
    36_000.0
}
fn d_tau_sigma_log() -> f64 {
    1.0
}

/// Evaluation conditions for one sensing pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalCtx {
    /// Operating temperature in degrees Celsius.
    pub temperature: f64,
    /// Scale applied to the permanent aging drift (0 = fresh device).
    pub aging_scale: f64,
    /// Trial index keying the transient noise substream.
    pub trial: u64,
}

impl EvalCtx {
    pub fn nominal(trial: u64) -> Self {
        EvalCtx { temperature: REFERENCE_TEMP_C, aging_scale: 0.0, trial }
    }

    pub fn at_temperature(temperature: f64, trial: u64) -> Self {
        EvalCtx { temperature, aging_scale: 0.0, trial }
    }
}

impl VariationModel {
    /// Sense-amp offset sigma at the given temperature, volts.
    pub fn sa_sigma_at(&self, temperature: f64) -> f64 {
        let base = self.sa_offset_sigma_per_percent * self.variation_percent;
        base * (1.0 + self.temp_sensitivity * (temperature - REFERENCE_TEMP_C))
    }

    /// Fabrication offset of the sense amp at `address` (row field must be
    /// zero; a sense amp is per (subarray, column)). Fixed for the device
    /// lifetime; temperature scales the variation component at evaluation.
    pub fn sa_offset(&self, address: &Address, temperature: f64) -> f64 {
        debug_assert_eq!(address.row, 0, "sense amps are addressed with row 0");
        let z = component_z(self.master_seed, ComponentKind::SaOffset, address);
        self.sa_offset_bias + self.sa_sigma_at(temperature) * z
    }

    /// Static perturbation of the cell at `address` under the evaluation
    /// conditions (temperature coupling plus any applied aging drift).
    pub fn cell_offset(&self, address: &Address, ctx: &EvalCtx) -> f64 {
        let z = component_z(self.master_seed, ComponentKind::CellOffset, address);
        let sigma = self.cell_offset_sigma_per_percent * self.variation_percent;
        let mut v = self.cell_offset_bias + sigma * z;
        if ctx.temperature != REFERENCE_TEMP_C {
            let dir = component_z(self.master_seed, ComponentKind::CellTempCoupling, address);
            v += self.cell_temp_coupling * (ctx.temperature - REFERENCE_TEMP_C) * dir;
        }
        if ctx.aging_scale != 0.0 {
            let drift = component_z(self.master_seed, ComponentKind::AgingDrift, address);
            v += ctx.aging_scale * self.aging_drift_sigma * drift;
        }
        v
    }

    /// Per-cell capacitance in farads, perturbed by process variation.
    pub fn cell_capacitance(&self, address: &Address, electrical: &ElectricalParams) -> f64 {
        let z = component_z(self.master_seed, ComponentKind::CellCap, address);
        let c = electrical.c_cell * (1.0 + self.variation_percent * z);
        c.max(electrical.c_cell * 0.1)
    }

    /// Per-cell retention time constant in seconds (lognormal).
    pub fn cell_tau(&self, address: &Address) -> f64 {
        let z = component_z(self.master_seed, ComponentKind::CellTau, address);
        self.retention_tau_median_s * (self.retention_tau_sigma_log * z).exp()
    }

    /// Transient noise for a sense-amp-only sensing (no wordline).
    pub fn sa_noise(&self, address: &Address, trial: u64) -> f64 {
        self.cell_noise_sigma * trial_z(self.master_seed, ComponentKind::SaNoise, address, trial)
    }

    /// Transient noise for a cell-connected sensing.
    pub fn cell_noise(&self, address: &Address, trial: u64) -> f64 {
        self.cell_noise_sigma * trial_z(self.master_seed, ComponentKind::CellNoise, address, trial)
    }

    /// Effective sense decision threshold of a sense-amp-only generation
    /// (the UE-SA latent value): offset at temperature.
    pub fn ue_sa_latent(&self, sa_address: &Address, ctx: &EvalCtx) -> f64 {
        self.sa_offset(sa_address, ctx.temperature)
    }

    /// Effective latent value of a cell-connected generation from an armed
    /// cell (the UC-PLA latent): cell perturbation plus coupled SA offset.
    /// The coupled offset is taken at the reference temperature: with the
    /// cell attached, the sense decision is dominated by cell variation
    /// and the second-order SA contribution does not track temperature.
    pub fn uc_pla_latent(&self, cell_address: &Address, ctx: &EvalCtx) -> f64 {
        let sa_addr = Address { row: 0, ..*cell_address };
        self.cell_offset(cell_address, ctx)
            + self.sa_coupling * self.sa_offset(&sa_addr, REFERENCE_TEMP_C)
    }
}

/// Mode-register file holding one primitive-select bit per partition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeRegisters {
    /// One bit per selectable partition; false selects UE-SA, true UC-PLA.
    #[serde(default = "d_mr3")]
    pub mr3_partition_bits: Vec<bool>,
}

pub const MR3_PARTITIONS: usize = 13;

fn d_mr3() -> Vec<bool> {
    vec![false; MR3_PARTITIONS]
}

impl Default for ModeRegisters {
    fn default() -> Self {
        ModeRegisters { mr3_partition_bits: d_mr3() }
    }
}

/// Destruction-mechanism constants and power constraints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DestructionParams {
    /// Per-row latency of baseline overwrite-by-write, ns.
    #[serde(default = "d_baseline_row_ns")]
    pub baseline_row_ns: f64,
    /// Per-row latency of Lisa-clone, ns.
    #[serde(default = "d_lisa_row_ns")]
    pub lisa_row_ns: f64,
    /// Per-row latency of Rowclone, ns.
    #[serde(default = "d_rowclone_row_ns")]
    pub rowclone_row_ns: f64,
    /// Effective per-row time of a burst destructive refresh, ns.
    /// Calibrated once so a 4 GB DDR4-class profile destroys in ~9 ms.
    #[serde(default = "d_burst_row_ns")]
    pub burst_row_ns: f64,
    /// Minimum spacing between row operations during destruction, ns.
    /// Stricter than the runtime tRRD: the initialization power budget
    /// throttles row-op issue no matter which primitive is used.
    #[serde(rename = "tRRD", default = "d_destruct_rrd")]
    pub t_rrd: f64,
    /// Rolling four-activation window during destruction, ns.
    #[serde(rename = "tFAW", default = "d_destruct_faw")]
    pub t_faw: f64,
    #[serde(default = "d_banks_parallel")]
    pub banks_parallel: usize,
}

fn d_baseline_row_ns() -> f64 {
    546.0
}
fn d_lisa_row_ns() -> f64 {
    148.5
}
fn d_rowclone_row_ns() -> f64 {
    90.0
}
fn d_burst_row_ns() -> f64 {
    // 9 ms / 2^21 rows, the 4 GB burst-refresh anchor.
    4.291_534_423_828_125
}
fn d_destruct_rrd() -> f64 {
    10.0
}
fn d_destruct_faw() -> f64 {
    140.0
}
fn d_banks_parallel() -> usize {
    1
}

impl Default for DestructionParams {
    fn default() -> Self {
        serde_json::from_str("{}").unwrap()
    }
}

/// Evaluation-latency platform constants and filter defaults for the PUF
/// experiments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PufParams {
    /// Measured platform cost of one read round of an 8 KB segment, ms.
    #[serde(default = "d_per_read_cost_ms")]
    pub per_read_cost_ms: f64,
    /// Published evaluation time of the precharge-latency PUF, ms.
    #[serde(default = "d_prelat_eval_ms")]
    pub prelat_eval_ms: f64,
    /// Default number of reads in the conservative response filter.
    #[serde(default = "d_filter_reads")]
    pub filter_reads: usize,
    /// Keep a position present in at least this fraction of reads.
    #[serde(default = "d_filter_threshold")]
    pub filter_threshold: f64,
    /// Reduced tRCD used by the latency-PUF comparison foil, ns.
    #[serde(default = "d_reduced_trcd")]
    pub reduced_trcd_ns: f64,
    /// Latency-PUF per-cell strength sigma (logit scale).
    #[serde(default = "d_lat_strength_sigma")]
    pub latency_strength_sigma: f64,
    /// Latency-PUF per-segment strength shift sigma (logit scale).
    #[serde(default = "d_lat_shift_sigma")]
    pub latency_segment_shift_sigma: f64,
    /// Latency-PUF mean strength (logit scale).
    #[serde(default = "d_lat_strength_mean")]
    pub latency_strength_mean: f64,
    /// Latency-PUF temperature coupling (logit units per degree Celsius).
    #[serde(default = "d_lat_temp_kappa")]
    pub latency_temp_kappa: f64,
}

fn d_per_read_cost_ms() -> f64 {
    0.88
}
fn d_prelat_eval_ms() -> f64 {
    1.59
}
fn d_filter_reads() -> usize {
    10
}
fn d_filter_threshold() -> f64 {
    0.9
}
fn d_reduced_trcd() -> f64 {
    2.5
}
fn d_lat_strength_sigma() -> f64 {
    // wide logit spread: most cells fail either never or always, which is
    // what makes the 100-read majority filter able to stabilize responses
    4.0
}
fn d_lat_shift_sigma() -> f64 {
    // segment-to-segment spread wide enough that unfiltered intra indices
    // range over the whole spectrum
    12.0
}
fn d_lat_strength_mean() -> f64 {
    0.0
}
fn d_lat_temp_kappa() -> f64 {
    0.15
}

impl Default for PufParams {
    fn default() -> Self {
        serde_json::from_str("{}").unwrap()
    }
}

/// Raw device configuration as parsed from file or built from a profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DramConfig {
    /// Free-form profile name carried into reports.
    #[serde(default)]
    pub profile: Option<String>,
    #[serde(default = "d_family")]
    pub family: DeviceFamily,
    /// Optional declared capacity; must match the geometry product exactly.
    #[serde(default)]
    pub capacity_bytes: Option<u64>,
    pub geometry: DramGeometry,
    pub timing: TimingParams,
    #[serde(default = "d_electrical")]
    pub electrical: ElectricalParams,
    #[serde(default = "d_energy")]
    pub energy: EnergyParams,
    #[serde(default = "d_variation")]
    pub variation: VariationModel,
    #[serde(default)]
    pub mode_registers: ModeRegisters,
    #[serde(default)]
    pub destruction: DestructionParams,
    #[serde(default)]
    pub puf: PufParams,
}

fn d_family() -> DeviceFamily {
    DeviceFamily::Ddr
}
fn d_electrical() -> ElectricalParams {
    serde_json::from_str("{}").unwrap()
}
fn d_energy() -> EnergyParams {
    serde_json::from_str("{}").unwrap()
}
fn d_variation() -> VariationModel {
    serde_json::from_str("{}").unwrap()
}

/// A configuration whose invariants have been checked, with derived
/// quantities cached. Immutable after validation and safe to share across
/// worker threads.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidatedConfig {
    #[serde(flatten)]
    config: DramConfig,
    /// Refresh window actually in effect (family default when omitted), ms.
    pub t_refw_ms: f64,
    pub rows_total: usize,
    pub total_capacity_bytes: u64,
    /// Refresh commands issued per refresh window.
    pub refresh_cmds_per_window: u64,
    /// Rows covered by a single refresh command.
    pub rows_per_refresh: usize,
}

impl std::ops::Deref for ValidatedConfig {
    type Target = DramConfig;
    fn deref(&self) -> &DramConfig {
        &self.config
    }
}

fn require(cond: bool, msg: &str) -> Result<(), ConfigError> {
    if cond {
        Ok(())
    } else {
        Err(ConfigError::invariant(msg.to_string()))
    }
}

fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

impl DramConfig {
    pub fn from_json(text: &str) -> Result<DramConfig, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Checks every type invariant and caches derived quantities.
    ///
    /// The error names the first violated invariant.
    pub fn validate(self) -> Result<ValidatedConfig, ConfigError> {
        let g = &self.geometry;
        require(g.channels >= 1, "geometry.channels must be >= 1")?;
        require(g.ranks_per_channel >= 1, "geometry.ranks_per_channel must be >= 1")?;
        require(g.banks_per_rank >= 1, "geometry.banks_per_rank must be >= 1")?;
        require(g.subarrays_per_bank >= 1, "geometry.subarrays_per_bank must be >= 1")?;
        require(g.rows_per_subarray >= 1, "geometry.rows_per_subarray must be >= 1")?;
        require(
            g.row_size_bytes >= 1 && g.row_size_bytes.is_power_of_two(),
            "geometry.row_size_bytes must be a power of two",
        )?;
        require(g.bus_width_bits >= 1, "geometry.bus_width_bits must be >= 1")?;
        require(g.data_rate >= 1, "geometry.data_rate must be >= 1")?;

        let total_capacity = g.total_capacity_bytes();
        if let Some(declared) = self.capacity_bytes {
            require(
                declared == total_capacity,
                &format!(
                    "capacity_bytes {declared} does not match geometry capacity {total_capacity}"
                ),
            )?;
        }

        let t = &self.timing;
        for (name, v) in [
            ("cycle_time", t.cycle_time),
            ("tRCD", t.t_rcd),
            ("tRP", t.t_rp),
            ("tRAS", t.t_ras),
            ("tRRD", t.t_rrd),
            ("tFAW", t.t_faw),
            ("tRFC", t.t_rfc),
            ("tREFI", t.t_refi),
            ("act_latency", t.act_latency),
            ("pre_latency", t.pre_latency),
        ] {
            require(v > 0.0, &format!("timing.{name} must be > 0"))?;
        }
        let t_refw_ms = t.t_refw_ms.unwrap_or_else(|| self.family.default_refw_ms());
        require(t_refw_ms > 0.0, "timing.tREFW must be > 0")?;

        let e = &self.electrical;
        require(e.vdd > 0.0, "electrical.vdd must be > 0")?;
        require(
            approx_eq(e.precharge_level, e.vdd / 2.0),
            "electrical.precharge_level must equal vdd/2 exactly",
        )?;
        require(e.c_cell > 0.0, "electrical.c_cell must be > 0")?;
        require(e.c_bitline_ratio > 0.0, "electrical.c_bitline_ratio must be > 0")?;

        let en = &self.energy;
        for (name, v) in [
            ("baseline_write", en.baseline_write),
            ("lisa", en.lisa),
            ("rowclone", en.rowclone),
            ("activation", en.activation),
            ("precharge", en.precharge),
            ("ue_sa_generate", en.ue_sa_generate),
            ("ue_sa_writeback", en.ue_sa_writeback),
            ("uc_pla", en.uc_pla),
            ("d_tran_generate", en.d_tran_generate),
            ("d_tran_writeback", en.d_tran_writeback),
        ] {
            require(v > 0.0, &format!("energy.{name} must be > 0"))?;
        }
        require(
            approx_eq(en.ue_sa_generate + en.ue_sa_writeback, en.activation),
            "energy.ue_sa_generate + energy.ue_sa_writeback must equal energy.activation",
        )?;
        require(
            approx_eq(en.d_tran_generate + en.d_tran_writeback, 18.0),
            "energy.d_tran_generate + energy.d_tran_writeback must equal 18",
        )?;
        require(en.bus_energy_per_command >= 0.0, "energy.bus_energy_per_command must be >= 0")?;

        let v = &self.variation;
        require(v.variation_percent >= 0.0, "variation.variation_percent must be >= 0")?;
        require(
            v.sa_offset_sigma_per_percent >= 0.0,
            "variation.sa_offset_sigma_per_percent must be >= 0",
        )?;
        require(v.cell_noise_sigma >= 0.0, "variation.cell_noise_sigma must be >= 0")?;
        require(v.retention_tau_median_s > 0.0, "variation.retention_tau_median_s must be > 0")?;
        require(v.aging_drift_sigma >= 0.0, "variation.aging_drift_sigma must be >= 0")?;

        require(
            self.mode_registers.mr3_partition_bits.len() == MR3_PARTITIONS,
            "mode_registers.mr3_partition_bits must hold exactly 13 bits",
        )?;

        let d = &self.destruction;
        for (name, v) in [
            ("baseline_row_ns", d.baseline_row_ns),
            ("lisa_row_ns", d.lisa_row_ns),
            ("rowclone_row_ns", d.rowclone_row_ns),
            ("burst_row_ns", d.burst_row_ns),
            ("tRRD", d.t_rrd),
            ("tFAW", d.t_faw),
        ] {
            require(v > 0.0, &format!("destruction.{name} must be > 0"))?;
        }
        require(d.banks_parallel >= 1, "destruction.banks_parallel must be >= 1")?;

        let p = &self.puf;
        require(p.per_read_cost_ms > 0.0, "puf.per_read_cost_ms must be > 0")?;
        require(p.filter_reads >= 1, "puf.filter_reads must be >= 1")?;
        require(
            p.filter_threshold > 0.0 && p.filter_threshold <= 1.0,
            "puf.filter_threshold must lie in (0, 1]",
        )?;

        let rows_total = g.rows_total();
        let refresh_cmds_per_window = ((t_refw_ms * 1e6) / t.t_refi).round().max(1.0) as u64;
        let rows_per_refresh = rows_total.div_ceil(refresh_cmds_per_window as usize).max(1);

        Ok(ValidatedConfig {
            config: self,
            t_refw_ms,
            rows_total,
            total_capacity_bytes: total_capacity,
            refresh_cmds_per_window,
            rows_per_refresh,
        })
    }

    /// Default desk-scale device: one channel of DDR3-1600 with 8 KB rows,
    /// 64 MB total.
    pub fn ddr3_1600_desk() -> DramConfig {
        DramConfig {
            profile: Some("ddr3-1600-64mb".to_string()),
            family: DeviceFamily::Ddr,
            capacity_bytes: None,
            geometry: DramGeometry {
                channels: 1,
                ranks_per_channel: 1,
                banks_per_rank: 8,
                subarrays_per_bank: 8,
                rows_per_subarray: 128,
                row_size_bytes: 8192,
                bus_width_bits: 64,
                data_rate: 1600,
            },
            timing: TimingParams {
                cycle_time: 1.25,
                t_rcd: 13.75,
                t_rp: 13.75,
                t_ras: 35.0,
                t_rrd: 7.5,
                t_faw: 40.0,
                t_rfc: 260.0,
                t_refi: 7812.5,
                t_refw_ms: None,
                act_latency: 35.0,
                pre_latency: 13.0,
            },
            electrical: d_electrical(),
            energy: d_energy(),
            variation: d_variation(),
            mode_registers: ModeRegisters::default(),
            destruction: DestructionParams::default(),
            puf: PufParams::default(),
        }
    }

    /// 4 GB DDR4-class module with burst-refresh support and LPDDR4-style
    /// 2 KB pages; the calibration anchor for burst destruction.
    pub fn ddr4_4gb_burst() -> DramConfig {
        let mut cfg = DramConfig::ddr3_1600_desk();
        cfg.profile = Some("ddr4-4gb-burst".to_string());
        cfg.geometry = DramGeometry {
            channels: 1,
            ranks_per_channel: 1,
            banks_per_rank: 16,
            subarrays_per_bank: 32,
            rows_per_subarray: 4096,
            row_size_bytes: 2048,
            bus_width_bits: 64,
            data_rate: 2400,
        };
        cfg.timing.cycle_time = 0.833;
        cfg.timing.t_rfc = 350.0;
        cfg
    }

    /// LPDDR variant of the 4 GB module (32 ms refresh window).
    pub fn lpddr4_4gb() -> DramConfig {
        let mut cfg = DramConfig::ddr4_4gb_burst();
        cfg.profile = Some("lpddr4-4gb".to_string());
        cfg.family = DeviceFamily::Lpddr;
        cfg.timing.t_refi = 3906.25;
        cfg
    }

    /// Capacity-scaled profile from the burst-anchor family. Capacities are
    /// produced by scaling subarray and row counts; timing parameters are
    /// carried over unchanged (the extrapolation is reported with each
    /// result).
    pub fn scaled_capacity(bytes: u64) -> Result<DramConfig, ConfigError> {
        let mut cfg = DramConfig::ddr4_4gb_burst();
        let row = cfg.geometry.row_size_bytes;
        require(
            bytes >= row && bytes.is_multiple_of(row),
            &format!("capacity {bytes} must be a multiple of the {row}-byte row size"),
        )?;
        let rows_total = bytes / row;
        // Keep 16 banks; fold the remaining factor into subarrays and rows.
        let per_bank = rows_total / 16;
        require(per_bank >= 1 && rows_total.is_multiple_of(16), "capacity too small for 16 banks")?;
        let rows_per_subarray = 4096.min(per_bank);
        let subarrays = per_bank / rows_per_subarray;
        require(
            subarrays * rows_per_subarray == per_bank,
            &format!("capacity {bytes} does not factor into whole subarrays"),
        )?;
        cfg.geometry.subarrays_per_bank = subarrays as usize;
        cfg.geometry.rows_per_subarray = rows_per_subarray as usize;
        cfg.profile = Some(format!("ddr4-burst-{}", format_capacity(bytes)));
        Ok(cfg)
    }
}

pub fn format_capacity(bytes: u64) -> String {
    const GB: u64 = 1 << 30;
    const MB: u64 = 1 << 20;
    if bytes >= GB && bytes.is_multiple_of(GB) {
        format!("{}gb", bytes / GB)
    } else if bytes >= MB && bytes.is_multiple_of(MB) {
        format!("{}mb", bytes / MB)
    } else {
        format!("{bytes}b")
    }
}

impl ValidatedConfig {
    /// Per-row energy scale relative to the 8 KB reference row.
    pub fn row_energy_scale(&self) -> f64 {
        self.geometry.row_size_bytes as f64 / ENERGY_REFERENCE_ROW_BYTES
    }

    /// Canonical JSON of the underlying raw configuration.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string_pretty(&self.config).expect("config serializes")
    }

    pub fn raw(&self) -> &DramConfig {
        &self.config
    }

    /// Deterministic stream for experiment-level sampling decisions.
    pub fn experiment_stream(&self, label: u64) -> SeedStream {
        let addr = Address { channel: 0, rank: 0, bank: 0, subarray: 0, row: 0, column: 0 };
        let seed = crate::model::derive_component_seed(
            self.variation.master_seed,
            ComponentKind::Experiment,
            &addr,
            label,
        );
        SeedStream::new(seed)
    }
}
