//! Classic pairwise debiaser: non-overlapping bit pairs map 01 to 0 and
//! 10 to 1; 00 and 11 pairs plus any trailing odd bit are discarded.

use crate::bits::BitSequence;

pub fn von_neumann(bits: &BitSequence) -> BitSequence {
    let mut out = BitSequence::with_capacity(bits.len() / 4);
    let mut i = 0;
    while i + 1 < bits.len() {
        let (a, b) = (bits.get(i), bits.get(i + 1));
        if a != b {
            out.push(a); // 10 -> 1, 01 -> 0
        }
        i += 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let input = BitSequence::from_ascii("00011011");
        assert_eq!(von_neumann(&input).to_ascii(), "01");
    }

    #[test]
    fn constant_input_yields_nothing() {
        let zeros = BitSequence::from_ascii(&"0".repeat(100));
        assert!(von_neumann(&zeros).is_empty());
        let ones = BitSequence::from_ascii(&"1".repeat(101));
        assert!(von_neumann(&ones).is_empty());
    }

    #[test]
    fn trailing_odd_bit_is_discarded() {
        let input = BitSequence::from_ascii("011");
        assert_eq!(von_neumann(&input).to_ascii(), "0");
    }

    #[test]
    fn output_never_exceeds_half_the_input() {
        for pattern in ["0101010101", "1010", "1100110011001"] {
            let input = BitSequence::from_ascii(pattern);
            assert!(von_neumann(&input).len() <= input.len() / 2);
        }
    }

    #[test]
    fn debiases_biased_iid_sources() {
        // Bernoulli(p) sources at several biases: extracted ones-fraction
        // approaches 1/2.
        use crate::model::SeedStream;
        for (seed, p) in [(11u64, 0.1f64), (12, 0.5), (13, 0.9)] {
            let mut stream = SeedStream::new(seed);
            let mut bits = BitSequence::with_capacity(400_000);
            for _ in 0..400_000 {
                bits.push(stream.next_f64() < p);
            }
            let out = von_neumann(&bits);
            assert!(out.len() > 1000, "p={p}: too few extracted bits");
            let ones = out.count_ones() as f64 / out.len() as f64;
            assert!((ones - 0.5).abs() < 0.02, "p={p}: ones fraction {ones}");
        }
    }
}
