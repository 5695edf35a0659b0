//! Mutable circuit state of one subarray.

use crate::bits::BitSequence;
use crate::error::SimError;
use crate::model::{Address, EvalCtx, ValidatedConfig};

/// One DRAM cell: a capacitor holding charge as a voltage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellState {
    /// Stored voltage, clamped to [0, vdd].
    pub voltage: f64,
    /// Variation-perturbed capacitance in farads.
    pub capacitance: f64,
}

/// Differential bitline pair feeding one sense amplifier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BitlinePair {
    pub v_bl: f64,
    pub v_blbar: f64,
    pub precharged: bool,
}

impl BitlinePair {
    pub fn precharged_at(level: f64) -> Self {
        BitlinePair { v_bl: level, v_blbar: level, precharged: true }
    }

    /// Deviation from the precharge level.
    pub fn delta(&self, precharge_level: f64) -> f64 {
        self.v_bl - precharge_level
    }
}

/// One sense amplifier instance. The offset is a fabrication-time property
/// fixed for the lifetime of a device instance; `z` is the underlying
/// standard-normal draw so the variation component can be rescaled for
/// temperature at evaluation time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SenseAmpInstance {
    /// Offset at the 30C reference temperature, volts (signed).
    pub offset: f64,
    pub z: f64,
    pub enabled: bool,
}

/// Latency/energy accumulator for one subarray.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Ledger {
    pub latency_ns: f64,
    pub energy_nj: f64,
}

impl Ledger {
    pub fn charge(&mut self, latency_ns: f64, energy_nj: f64) {
        self.latency_ns += latency_ns;
        self.energy_nj += energy_nj;
    }
}

/// Open-row contents.
#[derive(Debug, Clone, PartialEq)]
pub struct RowBuffer {
    pub source_row: usize,
    pub bits: BitSequence,
}

/// Cell grid, sense amps, bitlines and row buffer of one subarray.
///
/// Single-owner mutable; concurrent simulations operate on disjoint
/// instances and draw all randomness through the seed-derivation scheme, so
/// results are order-independent.
#[derive(Debug, Clone, PartialEq)]
pub struct SubarrayState {
    pub id: SubarrayId,
    pub rows: usize,
    pub columns: usize,
    pub cells: Vec<Vec<CellState>>,
    pub sense_amps: Vec<SenseAmpInstance>,
    pub bitlines: Vec<BitlinePair>,
    pub row_buffer: Option<RowBuffer>,
    pub ledger: Ledger,
}

/// Which subarray of the device this state models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubarrayId {
    pub channel: usize,
    pub rank: usize,
    pub bank: usize,
    pub subarray: usize,
}

impl SubarrayId {
    pub fn cell_address(&self, row: usize, column: usize) -> Address {
        Address {
            channel: self.channel,
            rank: self.rank,
            bank: self.bank,
            subarray: self.subarray,
            row,
            column,
        }
    }

    pub fn sa_address(&self, column: usize) -> Address {
        self.cell_address(0, column)
    }
}

impl SubarrayState {
    /// Builds the subarray in the precharged state with all cells at 0 V.
    ///
    /// Sense-amp offsets and per-cell capacitances are drawn once here; they
    /// model fabrication and never change afterwards.
    pub fn new(cfg: &ValidatedConfig, id: SubarrayId) -> Self {
        let rows = cfg.geometry.rows_per_subarray;
        let columns = cfg.geometry.row_size_bytes as usize * 8;
        let elec = &cfg.electrical;
        let model = &cfg.variation;
        let cells = (0..rows)
            .map(|r| {
                (0..columns)
                    .map(|c| CellState {
                        voltage: 0.0,
                        capacitance: model.cell_capacitance(&id.cell_address(r, c), elec),
                    })
                    .collect()
            })
            .collect();
        let sense_amps = (0..columns)
            .map(|c| {
                let addr = id.sa_address(c);
                SenseAmpInstance {
                    offset: model.sa_offset(&addr, crate::model::REFERENCE_TEMP_C),
                    z: crate::model::component_z(
                        model.master_seed,
                        crate::model::ComponentKind::SaOffset,
                        &addr,
                    ),
                    enabled: false,
                }
            })
            .collect();
        let bitlines = vec![BitlinePair::precharged_at(elec.precharge_level); columns];
        SubarrayState {
            id,
            rows,
            columns,
            cells,
            sense_amps,
            bitlines,
            row_buffer: None,
            ledger: Ledger::default(),
        }
    }

    pub fn precharged(&self) -> bool {
        self.bitlines.iter().all(|b| b.precharged)
    }

    /// Drives the cells of `row` to full rail per `bits` (data-load shortcut
    /// standing in for an ACT/WR/PRE sequence).
    pub fn set_row(&mut self, row: usize, bits: &BitSequence, vdd: f64) {
        assert_eq!(bits.len(), self.columns);
        for (c, cell) in self.cells[row].iter_mut().enumerate() {
            cell.voltage = if bits.get(c) { vdd } else { 0.0 };
        }
    }

    /// Current full-rail interpretation of the cells of `row`.
    pub fn read_cells(&self, row: usize, precharge_level: f64) -> BitSequence {
        let mut bits = BitSequence::with_capacity(self.columns);
        for cell in &self.cells[row] {
            bits.push(cell.voltage > precharge_level);
        }
        bits
    }

    pub fn require_precharged(&self) -> Result<(), SimError> {
        if self.precharged() {
            Ok(())
        } else {
            Err(SimError::NotPrecharged)
        }
    }

    /// Effective sense-amp offset at the evaluation temperature.
    pub fn sa_offset_at(&self, cfg: &ValidatedConfig, column: usize, ctx: &EvalCtx) -> f64 {
        let model = &cfg.variation;
        model.sa_offset_bias + model.sa_sigma_at(ctx.temperature) * self.sense_amps[column].z
    }

    /// Per-row energy scale of this subarray relative to the 8 KB reference.
    pub fn energy_scale(&self) -> f64 {
        (self.columns as f64 / 8.0) / crate::model::ENERGY_REFERENCE_ROW_BYTES
    }
}
