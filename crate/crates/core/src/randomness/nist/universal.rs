//! Maurer's universal statistical test.

use super::{erfc, NistParams, NistResult};
use crate::bits::BitSequence;

/// (expected value, variance) of the per-block statistic for L = 6..=16,
/// published constants.
const TABLE: [(usize, f64, f64); 11] = [
    (6, 5.2177052, 2.954),
    (7, 6.1962507, 3.125),
    (8, 7.1836656, 3.238),
    (9, 8.1764248, 3.311),
    (10, 9.1723243, 3.356),
    (11, 10.170032, 3.384),
    (12, 11.168765, 3.401),
    (13, 12.168070, 3.410),
    (14, 13.167693, 3.416),
    (15, 14.167488, 3.419),
    (16, 15.167379, 3.421),
];

/// Smallest input sizes for each L: n >= (Q + K) * L with Q = 10 * 2^L and
/// K >= 1000 * 2^L.
fn choose_l(n: usize) -> Option<usize> {
    let mut best = None;
    for &(l, _, _) in &TABLE {
        let q = 10 * (1usize << l);
        let needed = (q + 1000 * (1usize << l)) * l;
        if n >= needed {
            best = Some(l);
        }
    }
    best
}

pub fn maurers_universal(bits: &BitSequence, params: &NistParams) -> NistResult {
    let name = "maurers_universal";
    let n = bits.len();
    let Some(l) = choose_l(n) else {
        return NistResult::skipped(name, format!("needs at least 387840 bits, n={n}"));
    };
    let (_, expected, variance) = *TABLE.iter().find(|&&(tl, _, _)| tl == l).unwrap();
    let q = 10 * (1usize << l);
    let blocks = n / l;
    let k = blocks - q;

    let mut last_seen = vec![0usize; 1 << l];
    let block_value = |i: usize| -> usize {
        let mut v = 0usize;
        for j in 0..l {
            v = (v << 1) | bits.get(i * l + j) as usize;
        }
        v
    };
    for i in 0..q {
        last_seen[block_value(i)] = i + 1;
    }
    let mut sum = 0.0;
    for i in q..blocks {
        let v = block_value(i);
        let distance = (i + 1) - last_seen[v];
        sum += (distance as f64).ln() / std::f64::consts::LN_2;
        last_seen[v] = i + 1;
    }
    let fn_stat = sum / k as f64;
    let c = 0.7 - 0.8 / l as f64 + (4.0 + 32.0 / l as f64) * (k as f64).powf(-3.0 / l as f64) / 15.0;
    let sigma = c * (variance / k as f64).sqrt();
    let p = erfc(((fn_stat - expected) / sigma).abs() / std::f64::consts::SQRT_2);
    NistResult::from_p_values(name, vec![p], params.alpha, format!("L={l}, Q={q}, K={k}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SeedStream;

    #[test]
    fn short_input_is_skipped() {
        let bits = BitSequence::from_ascii(&"10".repeat(1000));
        let r = maurers_universal(&bits, &NistParams::default());
        assert!(r.skipped.is_some());
    }

    #[test]
    fn l_selection_thresholds() {
        assert_eq!(choose_l(387_840), Some(6));
        assert_eq!(choose_l(387_839), None);
        assert_eq!(choose_l(904_960), Some(7));
        assert_eq!(choose_l(2_068_480), Some(8));
    }

    #[test]
    fn random_input_passes_and_periodic_input_fails() {
        let mut stream = SeedStream::new(5);
        let mut bits = BitSequence::with_capacity(400_000);
        for _ in 0..400_000 {
            bits.push(stream.next_u64() & 1 == 1);
        }
        let r = maurers_universal(&bits, &NistParams::default());
        assert!(r.pass, "random stream p {}", r.p_value);

        let periodic = BitSequence::from_ascii(&"100101".repeat(70_000));
        let r = maurers_universal(&periodic, &NistParams::default());
        assert!(!r.pass, "periodic stream p {}", r.p_value);
    }
}
