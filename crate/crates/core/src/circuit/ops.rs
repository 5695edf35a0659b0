//! Circuit operations: precharge, charge sharing, sensing, activation,
//! and retention leakage.

use crate::bits::BitSequence;
use crate::circuit::state::{BitlinePair, CellState, SenseAmpInstance, SubarrayState};
use crate::error::SimError;
use crate::model::{ElectricalParams, EvalCtx, ValidatedConfig, REFERENCE_TEMP_C};

/// Shares the cell charge with its precharged bitline pair.
///
/// Returns the deviation `delta = (V_cell - V_pre) * C_cell / (C_cell +
/// C_bitline)`. Both the bitline and the cell end at the shared voltage, so
/// charge is conserved exactly:
/// `(C_cell + C_bl) * V_shared = C_cell * V_cell + C_bl * V_bl`.
pub fn charge_share(
    cell: &mut CellState,
    bitline: &mut BitlinePair,
    electrical: &ElectricalParams,
) -> f64 {
    debug_assert!(bitline.precharged, "charge sharing needs a precharged bitline");
    let c_cell = cell.capacitance;
    let c_bl = electrical.c_bitline();
    let v_shared = (c_cell * cell.voltage + c_bl * bitline.v_bl) / (c_cell + c_bl);
    let delta = v_shared - bitline.v_bl;
    bitline.v_bl = v_shared;
    bitline.v_blbar = electrical.precharge_level - delta;
    bitline.precharged = false;
    cell.voltage = v_shared;
    delta
}

/// Regenerative amplification decision of one sense amp.
///
/// The bit is 1 when `deviation + offset + noise > 0`; the bitline is driven
/// to the matching rail. With zero noise the output is a pure function of
/// `(deviation, offset)`.
pub fn sense(
    sa: &SenseAmpInstance,
    bitline: &mut BitlinePair,
    electrical: &ElectricalParams,
    noise: f64,
) -> bool {
    debug_assert!(sa.enabled, "sense amp must be enabled by the waveform");
    let bit = bitline.delta(electrical.precharge_level) + sa.offset + noise > 0.0;
    let rail = if bit { electrical.vdd } else { 0.0 };
    bitline.v_bl = rail;
    bitline.v_blbar = electrical.vdd - rail;
    bitline.precharged = false;
    bit
}

/// Leaks a cell toward Vdd/2 for `dt` seconds.
///
/// `tau_eff = tau * 2^((30 - temperature)/10)`: retention halves for every
/// 10C above the 30C reference.
pub fn leak(cell: &mut CellState, dt_s: f64, temperature: f64, tau_s: f64, precharge_level: f64) {
    debug_assert!(dt_s >= 0.0);
    let tau_eff = tau_s * ((REFERENCE_TEMP_C - temperature) / 10.0).exp2();
    let factor = (-dt_s / tau_eff).exp();
    cell.voltage = precharge_level + (cell.voltage - precharge_level) * factor;
}

impl SubarrayState {
    /// PRE: precharges all bitlines and clears the row buffer. Idempotent.
    pub fn precharge(&mut self, cfg: &ValidatedConfig) {
        let level = cfg.electrical.precharge_level;
        for bl in &mut self.bitlines {
            *bl = BitlinePair::precharged_at(level);
        }
        for sa in &mut self.sense_amps {
            sa.enabled = false;
        }
        self.row_buffer = None;
        self.ledger.charge(cfg.timing.pre_latency, cfg.energy.precharge * self.energy_scale());
    }

    /// ACT: opens `row` into the row buffer and restores the cells.
    ///
    /// Per column the composed waveform is wordline raise, charge sharing,
    /// then sensing. Cell-connected sensing adds the cell's static
    /// perturbation and the coupling-scaled sense-amp offset to the bitline
    /// deviation, which is what decides the bit when the cell sits exactly
    /// at the precharge level.
    pub fn activate(
        &mut self,
        cfg: &ValidatedConfig,
        row: usize,
        ctx: &EvalCtx,
    ) -> Result<&BitSequence, SimError> {
        self.require_precharged()?;
        let elec = &cfg.electrical;
        let model = &cfg.variation;
        let mut bits = BitSequence::with_capacity(self.columns);
        for c in 0..self.columns {
            let addr = self.id.cell_address(row, c);
            let cell = &mut self.cells[row][c];
            let bl = &mut self.bitlines[c];
            let delta = charge_share(cell, bl, elec);
            let epsilon = model.cell_offset(&addr, ctx);
            let sa_offset = model.sa_offset_bias
                + model.sa_sigma_at(ctx.temperature) * self.sense_amps[c].z;
            let noise = model.cell_noise(&addr, ctx.trial);
            self.sense_amps[c].enabled = true;
            let bit = delta + epsilon + model.sa_coupling * sa_offset + noise > 0.0;
            let rail = if bit { elec.vdd } else { 0.0 };
            bl.v_bl = rail;
            bl.v_blbar = elec.vdd - rail;
            cell.voltage = rail;
            bits.push(bit);
        }
        self.ledger.charge(cfg.timing.act_latency, cfg.energy.activation * self.energy_scale());
        self.row_buffer = Some(crate::circuit::RowBuffer { source_row: row, bits });
        Ok(&self.row_buffer.as_ref().unwrap().bits)
    }

    /// Applies retention leakage to every cell of the subarray.
    pub fn leak_all(&mut self, cfg: &ValidatedConfig, dt_s: f64, temperature: f64) {
        let model = &cfg.variation;
        let level = cfg.electrical.precharge_level;
        for r in 0..self.rows {
            for c in 0..self.columns {
                let tau = model.cell_tau(&self.id.cell_address(r, c));
                leak(&mut self.cells[r][c], dt_s, temperature, tau, level);
            }
        }
    }
}
