//! The in-DRAM value-generation primitives and the hybrid mode-register
//! selection, with per-operation latency/energy receipts.

use crate::bits::BitSequence;
use crate::circuit::SubarrayState;
use crate::error::SimError;
use crate::model::{EvalCtx, ModeRegisters, ValidatedConfig, MR3_PARTITIONS};
use serde::{Deserialize, Serialize};

/// Which primitive to execute.
///
/// The precharge-class generation has no writeback flag: destroying the
/// previous cell content and generating the new value are indivisible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrimitiveKind {
    UeSa { writeback: bool },
    UcPla,
    DTran { value: bool, writeback: bool },
}

/// Primitive family tag, as selected by the mode registers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PrimitiveTag {
    UeSa,
    UcPla,
    DTran,
}

/// What one primitive execution cost and produced.
#[derive(Debug, Clone, PartialEq)]
pub struct OpReceipt {
    pub latency_ns: f64,
    pub energy_nj: f64,
    pub destroyed_cell_content: bool,
    pub generated_bits: BitSequence,
}

/// Activation-class generation: fires the sense amps with the wordline low,
/// so each bit is decided purely by its sense amp's offset at zero bitline
/// deviation. With `writeback` the wordline is raised after the trigger and
/// the row is overwritten with the generated bits.
pub fn ue_sa(
    state: &mut SubarrayState,
    cfg: &ValidatedConfig,
    row: usize,
    writeback: bool,
    ctx: &EvalCtx,
) -> Result<OpReceipt, SimError> {
    state.require_precharged()?;
    let elec = &cfg.electrical;
    let mut bits = BitSequence::with_capacity(state.columns);
    // prior content only affects the power draw
    let prior_ones = state.read_cells(row, elec.precharge_level).count_ones();
    for c in 0..state.columns {
        let offset = state.sa_offset_at(cfg, c, ctx);
        let noise = cfg.variation.sa_noise(&state.id.sa_address(c), ctx.trial);
        state.sense_amps[c].enabled = true;
        // bitline is at the precharge level: zero deviation
        let bit = offset + noise > 0.0;
        let rail = if bit { elec.vdd } else { 0.0 };
        state.bitlines[c].v_bl = rail;
        state.bitlines[c].v_blbar = elec.vdd - rail;
        state.bitlines[c].precharged = false;
        bits.push(bit);
    }
    if writeback {
        for c in 0..state.columns {
            state.cells[row][c].voltage = if bits.get(c) { elec.vdd } else { 0.0 };
        }
    }
    state.row_buffer = Some(crate::circuit::RowBuffer { source_row: row, bits: bits.clone() });

    let scale = state.energy_scale();
    let ones_fraction = prior_ones as f64 / state.columns as f64;
    let data_term = 1.0 + cfg.energy.ue_sa_data_dependence * (2.0 * ones_fraction - 1.0);
    let mut energy = cfg.energy.ue_sa_generate * data_term;
    if writeback {
        energy += cfg.energy.ue_sa_writeback * data_term;
    }
    let energy = energy * scale;
    let latency = cfg.timing.act_latency;
    state.ledger.charge(latency, energy);
    Ok(OpReceipt {
        latency_ns: latency,
        energy_nj: energy,
        destroyed_cell_content: writeback,
        generated_bits: bits,
    })
}

/// Precharge-class arming: raises the wordline together with the precharge
/// logic, dragging every cell of the row to exactly Vdd/2. The value is
/// generated on the next activation. Works from any row state and consumes
/// the same energy regardless of the prior content.
pub fn uc_pla_arm(
    state: &mut SubarrayState,
    cfg: &ValidatedConfig,
    row: usize,
) -> Result<OpReceipt, SimError> {
    let level = cfg.electrical.precharge_level;
    for cell in &mut state.cells[row] {
        cell.voltage = level;
    }
    // this is a precharge variant: the subarray ends precharged
    for bl in &mut state.bitlines {
        *bl = crate::circuit::BitlinePair::precharged_at(level);
    }
    for sa in &mut state.sense_amps {
        sa.enabled = false;
    }
    state.row_buffer = None;
    let energy = cfg.energy.uc_pla * state.energy_scale();
    let latency = cfg.timing.pre_latency;
    state.ledger.charge(latency, energy);
    Ok(OpReceipt {
        latency_ns: latency,
        energy_nj: energy,
        destroyed_cell_content: true,
        generated_bits: BitSequence::new(),
    })
}

/// Deterministic generation: an extra per-SA transistor drives every bitline
/// to the chosen rail. Output is independent of seed, temperature, and
/// prior content.
pub fn d_tran(
    state: &mut SubarrayState,
    cfg: &ValidatedConfig,
    row: usize,
    value: bool,
    writeback: bool,
) -> Result<OpReceipt, SimError> {
    state.require_precharged()?;
    let elec = &cfg.electrical;
    let rail = if value { elec.vdd } else { 0.0 };
    let mut bits = BitSequence::with_capacity(state.columns);
    for c in 0..state.columns {
        state.sense_amps[c].enabled = true;
        state.bitlines[c].v_bl = rail;
        state.bitlines[c].v_blbar = elec.vdd - rail;
        state.bitlines[c].precharged = false;
        bits.push(value);
    }
    if writeback {
        for cell in &mut state.cells[row] {
            cell.voltage = rail;
        }
    }
    state.row_buffer = Some(crate::circuit::RowBuffer { source_row: row, bits: bits.clone() });
    let scale = state.energy_scale();
    let mut energy = cfg.energy.d_tran_generate;
    if writeback {
        energy += cfg.energy.d_tran_writeback;
    }
    let energy = energy * scale;
    let latency = cfg.timing.act_latency;
    state.ledger.charge(latency, energy);
    Ok(OpReceipt {
        latency_ns: latency,
        energy_nj: energy,
        destroyed_cell_content: writeback,
        generated_bits: bits,
    })
}

/// Runs the primitive described by `kind` on `row`.
pub fn run_primitive(
    state: &mut SubarrayState,
    cfg: &ValidatedConfig,
    row: usize,
    kind: PrimitiveKind,
    ctx: &EvalCtx,
) -> Result<OpReceipt, SimError> {
    match kind {
        PrimitiveKind::UeSa { writeback } => ue_sa(state, cfg, row, writeback, ctx),
        PrimitiveKind::UcPla => uc_pla_arm(state, cfg, row),
        PrimitiveKind::DTran { value, writeback } => d_tran(state, cfg, row, value, writeback),
    }
}

/// Reads the primitive selected for `partition` from the mode registers.
pub fn select_primitive(mrs: &ModeRegisters, partition: usize) -> Result<PrimitiveTag, SimError> {
    if partition >= MR3_PARTITIONS {
        return Err(SimError::PartitionOutOfRange(partition));
    }
    Ok(if mrs.mr3_partition_bits[partition] { PrimitiveTag::UcPla } else { PrimitiveTag::UeSa })
}

/// Load-mode-register update: reselects the primitive of one partition at
/// runtime.
pub fn load_mode_register(
    mrs: &mut ModeRegisters,
    partition: usize,
    select_uc_pla: bool,
) -> Result<(), SimError> {
    if partition >= MR3_PARTITIONS {
        return Err(SimError::PartitionOutOfRange(partition));
    }
    mrs.mr3_partition_bits[partition] = select_uc_pla;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::SubarrayId;
    use crate::model::DramConfig;

    fn tiny(noise: f64) -> (ValidatedConfig, SubarrayState) {
        let mut raw = DramConfig::ddr3_1600_desk();
        raw.geometry.row_size_bytes = 8;
        raw.geometry.rows_per_subarray = 4;
        raw.variation.cell_noise_sigma = noise;
        let cfg = raw.validate().unwrap();
        let st = SubarrayState::new(&cfg, SubarrayId { channel: 0, rank: 0, bank: 0, subarray: 0 });
        (cfg, st)
    }

    fn full(noise: f64) -> (ValidatedConfig, SubarrayState) {
        let mut raw = DramConfig::ddr3_1600_desk();
        raw.variation.cell_noise_sigma = noise;
        let cfg = raw.validate().unwrap();
        let st = SubarrayState::new(&cfg, SubarrayId { channel: 0, rank: 0, bank: 0, subarray: 0 });
        (cfg, st)
    }

    fn checker_pattern(columns: usize) -> BitSequence {
        let mut bits = BitSequence::new();
        for i in 0..columns {
            bits.push(i % 2 == 0);
        }
        bits
    }

    #[test]
    fn ue_sa_without_writeback_is_non_destructive() {
        let (cfg, mut st) = tiny(0.0);
        let pattern = checker_pattern(st.columns);
        st.set_row(2, &pattern, cfg.electrical.vdd);
        st.precharge(&cfg);
        let receipt = ue_sa(&mut st, &cfg, 2, false, &EvalCtx::nominal(0)).unwrap();
        assert!(!receipt.destroyed_cell_content);
        st.precharge(&cfg);
        let read_back = st.activate(&cfg, 2, &EvalCtx::nominal(1)).unwrap().clone();
        assert_eq!(read_back, pattern, "original data must be intact");
    }

    #[test]
    fn ue_sa_with_writeback_overwrites_cells() {
        let (cfg, mut st) = tiny(0.0);
        let pattern = checker_pattern(st.columns);
        st.set_row(1, &pattern, cfg.electrical.vdd);
        st.precharge(&cfg);
        let receipt = ue_sa(&mut st, &cfg, 1, true, &EvalCtx::nominal(0)).unwrap();
        assert!(receipt.destroyed_cell_content);
        assert_eq!(st.read_cells(1, 0.5), receipt.generated_bits);
    }

    #[test]
    fn ue_sa_is_repeatable_at_zero_noise() {
        let (cfg, mut st) = tiny(0.0);
        st.precharge(&cfg);
        let a = ue_sa(&mut st, &cfg, 0, false, &EvalCtx::nominal(0)).unwrap().generated_bits;
        st.precharge(&cfg);
        let b = ue_sa(&mut st, &cfg, 0, false, &EvalCtx::nominal(7)).unwrap().generated_bits;
        assert_eq!(a, b, "offsets are fixed per device");
    }

    #[test]
    fn ue_sa_receipt_matches_constants_on_neutral_row() {
        let (cfg, mut st) = full(0.0);
        let half: BitSequence = checker_pattern(st.columns);
        st.set_row(0, &half, cfg.electrical.vdd);
        st.precharge(&cfg);
        let r = ue_sa(&mut st, &cfg, 0, false, &EvalCtx::nominal(0)).unwrap();
        assert_eq!(r.latency_ns, 35.0);
        assert!((r.energy_nj - 7.3).abs() < 1e-12, "energy {}", r.energy_nj);
        st.precharge(&cfg);
        let r = ue_sa(&mut st, &cfg, 0, true, &EvalCtx::nominal(1)).unwrap();
        assert!((r.energy_nj - 17.3).abs() < 1e-12, "energy {}", r.energy_nj);
    }

    #[test]
    fn ue_sa_energy_varies_up_to_5_percent_with_prior_content() {
        let (cfg, mut st) = full(0.0);
        let mut ones = BitSequence::new();
        for _ in 0..st.columns {
            ones.push(true);
        }
        st.set_row(0, &ones, cfg.electrical.vdd);
        st.precharge(&cfg);
        let hi = ue_sa(&mut st, &cfg, 0, false, &EvalCtx::nominal(0)).unwrap();
        assert!((hi.energy_nj - 7.3 * 1.05).abs() < 1e-12);
        let mut zeros = BitSequence::new();
        for _ in 0..st.columns {
            zeros.push(false);
        }
        st.set_row(0, &zeros, cfg.electrical.vdd);
        st.precharge(&cfg);
        let lo = ue_sa(&mut st, &cfg, 0, false, &EvalCtx::nominal(1)).unwrap();
        assert!((lo.energy_nj - 7.3 * 0.95).abs() < 1e-12);
    }

    #[test]
    fn uc_pla_arm_sets_cells_to_half_vdd_with_content_independent_energy() {
        let (cfg, mut st) = full(0.0);
        let mut ones = BitSequence::new();
        for _ in 0..st.columns {
            ones.push(true);
        }
        st.set_row(3, &ones, cfg.electrical.vdd);
        let r1 = uc_pla_arm(&mut st, &cfg, 3).unwrap();
        assert!(st.cells[3].iter().all(|c| c.voltage == 0.5));
        assert!(r1.destroyed_cell_content);
        assert_eq!(r1.latency_ns, 13.0);
        assert!((r1.energy_nj - 17.2).abs() < 1e-12);

        let mut zeros = BitSequence::new();
        for _ in 0..st.columns {
            zeros.push(false);
        }
        st.set_row(3, &zeros, cfg.electrical.vdd);
        let r2 = uc_pla_arm(&mut st, &cfg, 3).unwrap();
        assert_eq!(r1.energy_nj, r2.energy_nj, "energy independent of prior value");
    }

    #[test]
    fn uc_pla_then_activate_decides_from_cell_variation() {
        let (cfg, mut st) = tiny(0.0);
        uc_pla_arm(&mut st, &cfg, 1).unwrap();
        let ctx = EvalCtx::nominal(0);
        let bits = st.activate(&cfg, 1, &ctx).unwrap().clone();
        for c in 0..st.columns {
            let latent = cfg.variation.uc_pla_latent(&st.id.cell_address(1, c), &ctx);
            assert_eq!(bits.get(c), latent > 0.0, "column {c}");
        }
    }

    #[test]
    fn d_tran_zero_writeback_clears_row() {
        let (cfg, mut st) = tiny(0.0);
        let pattern = checker_pattern(st.columns);
        st.set_row(0, &pattern, cfg.electrical.vdd);
        st.precharge(&cfg);
        let r = d_tran(&mut st, &cfg, 0, false, true).unwrap();
        assert!(st.cells[0].iter().all(|c| c.voltage == 0.0));
        assert_eq!(r.generated_bits.count_ones(), 0);
        assert!((r.energy_nj * 1024.0 - 18.0).abs() < 1e-9, "8-byte row scales 18 nJ by 1/1024");
    }

    #[test]
    fn d_tran_ones_without_writeback_leaves_cells() {
        let (cfg, mut st) = tiny(0.0);
        let pattern = checker_pattern(st.columns);
        st.set_row(0, &pattern, cfg.electrical.vdd);
        st.precharge(&cfg);
        let r = d_tran(&mut st, &cfg, 0, true, false).unwrap();
        assert_eq!(r.generated_bits.count_ones(), st.columns);
        assert_eq!(st.read_cells(0, 0.5), pattern, "cells untouched");
        assert_eq!(r.latency_ns, 35.0);
    }

    #[test]
    fn d_tran_full_row_energy_is_18nj() {
        let (cfg, mut st) = full(0.0);
        st.precharge(&cfg);
        let r = d_tran(&mut st, &cfg, 0, false, true).unwrap();
        assert!((r.energy_nj - 18.0).abs() < 1e-12);
    }

    #[test]
    fn mode_register_selection() {
        let mut mrs = ModeRegisters::default();
        assert_eq!(select_primitive(&mrs, 0).unwrap(), PrimitiveTag::UeSa);
        load_mode_register(&mut mrs, 5, true).unwrap();
        assert_eq!(select_primitive(&mrs, 5).unwrap(), PrimitiveTag::UcPla);
        assert_eq!(select_primitive(&mrs, 4).unwrap(), PrimitiveTag::UeSa);
        assert!(select_primitive(&mrs, 13).is_err());
        assert!(load_mode_register(&mut mrs, 13, true).is_err());
    }
}
