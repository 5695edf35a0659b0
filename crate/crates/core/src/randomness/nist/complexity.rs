//! Linear complexity test (Berlekamp-Massey per block).

use super::{igamc, NistParams, NistResult};
use crate::bits::BitSequence;

const PI: [f64; 7] = [0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833];

/// Linear complexity of a bit block via Berlekamp-Massey over GF(2).
/// Connection polynomials are packed into u64 words.
pub(crate) fn berlekamp_massey(block: &[bool]) -> usize {
    let n = block.len();
    let words = (n + 1).div_ceil(64);
    let mut c = vec![0u64; words];
    let mut b = vec![0u64; words];
    c[0] = 1;
    b[0] = 1;
    let (mut l, mut m) = (0usize, -1isize);
    let mut t = vec![0u64; words];
    for nn in 0..n {
        // discrepancy d = s[nn] + sum_{i=1..L} c[i] * s[nn-i]
        let mut d = block[nn] as u64;
        for i in 1..=l {
            if c[i / 64] >> (i % 64) & 1 == 1 && block[nn - i] {
                d ^= 1;
            }
        }
        if d == 1 {
            t.copy_from_slice(&c);
            let shift = (nn as isize - m) as usize;
            // c ^= b << shift
            let (word_shift, bit_shift) = (shift / 64, shift % 64);
            for w in (0..words).rev() {
                if w < word_shift {
                    break;
                }
                let mut v = b[w - word_shift] << bit_shift;
                if bit_shift > 0 && w > word_shift {
                    v |= b[w - word_shift - 1] >> (64 - bit_shift);
                }
                c[w] ^= v;
            }
            if 2 * l <= nn {
                l = nn + 1 - l;
                m = nn as isize;
                b.copy_from_slice(&t);
            }
        }
    }
    l
}

pub fn linear_complexity(bits: &BitSequence, params: &NistParams) -> NistResult {
    let name = "linear_complexity";
    let m = params.linear_complexity_m;
    let n = bits.len();
    let blocks = n / m;
    if blocks < 4 {
        return NistResult::skipped(name, format!("needs at least 4 blocks of {m} bits, n={n}"));
    }
    let m_f = m as f64;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mu = m_f / 2.0 + (9.0 - sign) / 36.0 - (m_f / 3.0 + 2.0 / 9.0) / 2f64.powi(m as i32);
    let mut nu = [0usize; 7];
    let mut block = vec![false; m];
    for b in 0..blocks {
        for (i, slot) in block.iter_mut().enumerate() {
            *slot = bits.get(b * m + i);
        }
        let l = berlekamp_massey(&block) as f64;
        let t = sign * (l - mu) + 2.0 / 9.0;
        let idx = if t <= -2.5 {
            0
        } else if t <= -1.5 {
            1
        } else if t <= -0.5 {
            2
        } else if t <= 0.5 {
            3
        } else if t <= 1.5 {
            4
        } else if t <= 2.5 {
            5
        } else {
            6
        };
        nu[idx] += 1;
    }
    let n_f = blocks as f64;
    let mut chi2 = 0.0;
    for (i, &pi) in PI.iter().enumerate() {
        chi2 += (nu[i] as f64 - n_f * pi) * (nu[i] as f64 - n_f * pi) / (n_f * pi);
    }
    let p = igamc(3.0, chi2 / 2.0);
    NistResult::from_p_values(name, vec![p], params.alpha, format!("M={m}, N={blocks}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SeedStream;

    fn bools(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn known_complexities() {
        // worked example: 1101011110001 has linear complexity 4
        assert_eq!(berlekamp_massey(&bools("1101011110001")), 4);
        // an m-sequence of period 7 from x^3 + x + 1 has complexity 3
        assert_eq!(berlekamp_massey(&bools("1001011100101110010111")), 3);
        // all zeros: complexity 0; single one at the end: complexity n
        assert_eq!(berlekamp_massey(&bools("000000")), 0);
        assert_eq!(berlekamp_massey(&bools("000001")), 6);
        // alternating sequence has complexity 2
        assert_eq!(berlekamp_massey(&bools("10101010101010")), 2);
    }

    #[test]
    fn bm_reproduces_lfsr_length() {
        // order-17 linear recurrence from the primitive trinomial
        // x^17 + x^3 + 1: s[n] = s[n-14] ^ s[n-17]
        let mut seq: Vec<bool> = Vec::with_capacity(600);
        seq.extend((0..17).map(|i| i % 5 == 0));
        for n in 17..600 {
            let bit = seq[n - 14] ^ seq[n - 17];
            seq.push(bit);
        }
        assert_eq!(berlekamp_massey(&seq), 17);
    }

    #[test]
    fn random_stream_passes() {
        let mut stream = SeedStream::new(9);
        let mut bits = BitSequence::with_capacity(200_000);
        for _ in 0..200_000 {
            bits.push(stream.next_u64() & 1 == 1);
        }
        let r = linear_complexity(&bits, &NistParams::default());
        assert!(r.pass, "p {}", r.p_value);
    }

    #[test]
    fn low_complexity_stream_fails() {
        let bits = BitSequence::from_ascii(&"10".repeat(100_000));
        let r = linear_complexity(&bits, &NistParams::default());
        assert!(!r.pass);
    }
}
