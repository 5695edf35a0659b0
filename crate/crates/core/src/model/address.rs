//! Device addressing and segment/bit-position mapping.

use crate::error::SimError;
use crate::model::DramGeometry;
use serde::{Deserialize, Serialize};

/// Location of one cell (bit) inside a device. `column` is the bit index
/// within the row; one column pairs with one bitline and one sense amp.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Address {
    pub channel: usize,
    pub rank: usize,
    pub bank: usize,
    pub subarray: usize,
    pub row: usize,
    pub column: usize,
}

impl Address {
    pub fn row_start(channel: usize, rank: usize, bank: usize, subarray: usize, row: usize) -> Self {
        Address { channel, rank, bank, subarray, row, column: 0 }
    }

    /// Checks every index against the geometry bounds.
    pub fn validate(&self, geom: &DramGeometry) -> Result<(), SimError> {
        let ok = self.channel < geom.channels
            && self.rank < geom.ranks_per_channel
            && self.bank < geom.banks_per_rank
            && self.subarray < geom.subarrays_per_bank
            && self.row < geom.rows_per_subarray
            && self.column < geom.row_size_bytes as usize * 8;
        if ok {
            Ok(())
        } else {
            Err(SimError::AddressOutOfRange(format!("{self:?}")))
        }
    }
}

impl DramGeometry {
    /// Linear row index over the whole device, row-major across
    /// channel/rank/bank/subarray/row.
    pub fn row_index(&self, addr: &Address) -> usize {
        (((addr.channel * self.ranks_per_channel + addr.rank) * self.banks_per_rank + addr.bank)
            * self.subarrays_per_bank
            + addr.subarray)
            * self.rows_per_subarray
            + addr.row
    }

    /// Inverse of [`DramGeometry::row_index`]; yields the row-start address.
    pub fn row_address(&self, mut index: usize) -> Address {
        let row = index % self.rows_per_subarray;
        index /= self.rows_per_subarray;
        let subarray = index % self.subarrays_per_bank;
        index /= self.subarrays_per_bank;
        let bank = index % self.banks_per_rank;
        index /= self.banks_per_rank;
        let rank = index % self.ranks_per_channel;
        let channel = index / self.ranks_per_channel;
        Address { channel, rank, bank, subarray, row, column: 0 }
    }

    pub fn rows_total(&self) -> usize {
        self.channels
            * self.ranks_per_channel
            * self.banks_per_rank
            * self.subarrays_per_bank
            * self.rows_per_subarray
    }

    pub fn total_capacity_bytes(&self) -> u64 {
        self.rows_total() as u64 * self.row_size_bytes
    }
}

/// A contiguous run of whole rows, addressable bit by bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub rows: Vec<Address>,
    pub row_bits: usize,
}

impl Segment {
    pub fn len_bits(&self) -> usize {
        self.rows.len() * self.row_bits
    }

    /// Maps a bit position within the segment to the cell address holding it.
    pub fn position_to_address(&self, position: usize) -> Result<Address, SimError> {
        if position >= self.len_bits() {
            return Err(SimError::SegmentOutOfRange(format!("bit position {position}")));
        }
        let row = position / self.row_bits;
        let mut addr = self.rows[row];
        addr.column = position % self.row_bits;
        Ok(addr)
    }

    /// Inverse of [`Segment::position_to_address`].
    pub fn address_to_position(&self, addr: &Address) -> Result<usize, SimError> {
        let row_start = Address { column: 0, ..*addr };
        let row = self
            .rows
            .iter()
            .position(|r| *r == row_start)
            .ok_or_else(|| SimError::SegmentOutOfRange(format!("{addr:?} not in segment")))?;
        Ok(row * self.row_bits + addr.column)
    }
}

/// Enumerates the rows covered by a byte range starting at `start`.
///
/// The start address must be row-aligned (column 0) and the length a whole
/// number of rows lying inside the device.
pub fn segment_addresses(
    start: &Address,
    length_bytes: u64,
    geom: &DramGeometry,
) -> Result<Segment, SimError> {
    start.validate(geom)?;
    if start.column != 0 {
        return Err(SimError::SegmentOutOfRange(format!(
            "segment start not row-aligned: column {}",
            start.column
        )));
    }
    if length_bytes == 0 || !length_bytes.is_multiple_of(geom.row_size_bytes) {
        return Err(SimError::SegmentOutOfRange(format!(
            "segment length {length_bytes} is not a whole number of {}-byte rows",
            geom.row_size_bytes
        )));
    }
    let n_rows = (length_bytes / geom.row_size_bytes) as usize;
    let first = geom.row_index(start);
    if first + n_rows > geom.rows_total() {
        return Err(SimError::SegmentOutOfRange(format!(
            "segment of {n_rows} rows starting at row index {first} exceeds device"
        )));
    }
    let rows = (first..first + n_rows).map(|i| geom.row_address(i)).collect();
    Ok(Segment { rows, row_bits: geom.row_size_bytes as usize * 8 })
}
