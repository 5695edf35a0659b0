//! Position-to-bitstream encoding.
//!
//! A response is a set of unpredictable bit positions; the entropy source
//! is where those positions fall within a cache line. Each position is
//! reduced modulo the cache-line width and emitted as a fixed-width binary
//! code, responses concatenated in order.

use crate::bits::BitSequence;
use crate::error::SimError;
use crate::puf::PufResponse;

pub fn positions_to_bitstream(
    responses: &[PufResponse],
    cacheline_bits: u32,
) -> Result<BitSequence, SimError> {
    if responses.is_empty() {
        return Err(SimError::EmptyInput("no responses to encode".to_string()));
    }
    assert!(
        cacheline_bits.is_power_of_two() && cacheline_bits > 1,
        "cacheline width must be a power of two"
    );
    let width = cacheline_bits.trailing_zeros();
    let mut out = BitSequence::new();
    for resp in responses {
        for &pos in resp.positions() {
            out.push_uint((pos % cacheline_bits) as u64, width);
        }
    }
    Ok(out)
}
