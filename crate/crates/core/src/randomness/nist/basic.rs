//! Frequency-family tests: monobit, frequency within block, runs, longest
//! run of ones, and cumulative sums.

use super::{erfc, igamc, phi, NistParams, NistResult};
use crate::bits::BitSequence;

pub fn monobit(bits: &BitSequence, params: &NistParams) -> NistResult {
    let n = bits.len();
    if n == 0 {
        return NistResult::skipped("monobit", "empty input".to_string());
    }
    let ones = bits.count_ones() as f64;
    let s = 2.0 * ones - n as f64;
    let s_obs = s.abs() / (n as f64).sqrt();
    let p = erfc(s_obs / std::f64::consts::SQRT_2);
    NistResult::from_p_values("monobit", vec![p], params.alpha, format!("n={n}"))
}

pub fn frequency_within_block(bits: &BitSequence, params: &NistParams) -> NistResult {
    let name = "frequency_within_block";
    let n = bits.len();
    let m = params.block_frequency_m.unwrap_or_else(|| (n / 64).max(20));
    let blocks = n / m;
    if blocks == 0 {
        return NistResult::skipped(name, format!("needs at least one block of {m} bits, n={n}"));
    }
    let mut chi2 = 0.0;
    for b in 0..blocks {
        let ones = (b * m..(b + 1) * m).filter(|&i| bits.get(i)).count();
        let pi = ones as f64 / m as f64;
        chi2 += (pi - 0.5) * (pi - 0.5);
    }
    chi2 *= 4.0 * m as f64;
    let p = igamc(blocks as f64 / 2.0, chi2 / 2.0);
    NistResult::from_p_values(name, vec![p], params.alpha, format!("M={m}, N={blocks}"))
}

pub fn runs(bits: &BitSequence, params: &NistParams) -> NistResult {
    let name = "runs";
    let n = bits.len();
    if n < 2 {
        return NistResult::skipped(name, format!("needs at least 2 bits, n={n}"));
    }
    let pi = bits.count_ones() as f64 / n as f64;
    let tau = 2.0 / (n as f64).sqrt();
    if (pi - 0.5).abs() >= tau {
        // monobit precondition failed: the test is decided at p = 0
        return NistResult::from_p_values(name, vec![0.0], params.alpha, format!("n={n}, pi={pi:.4}"));
    }
    let mut v_obs = 1.0;
    for i in 0..n - 1 {
        if bits.get(i) != bits.get(i + 1) {
            v_obs += 1.0;
        }
    }
    let num = (v_obs - 2.0 * n as f64 * pi * (1.0 - pi)).abs();
    let den = 2.0 * (2.0 * n as f64).sqrt() * pi * (1.0 - pi);
    let p = erfc(num / den);
    NistResult::from_p_values(name, vec![p], params.alpha, format!("n={n}"))
}

pub fn longest_run_of_ones(bits: &BitSequence, params: &NistParams) -> NistResult {
    let name = "longest_run_ones_in_a_block";
    let n = bits.len();
    // published parameterizations by input size
    let (m, classes, pi): (usize, &[usize], &[f64]) = if n < 128 {
        return NistResult::skipped(name, format!("needs at least 128 bits, n={n}"));
    } else if n < 6272 {
        (8, &[1, 2, 3, 4], &[0.2148, 0.3672, 0.2305, 0.1875])
    } else if n < 750_000 {
        (128, &[4, 5, 6, 7, 8, 9], &[0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124])
    } else {
        (
            10_000,
            &[10, 11, 12, 13, 14, 15, 16],
            &[0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727],
        )
    };
    let blocks = n / m;
    let k = classes.len() - 1;
    let mut nu = vec![0usize; classes.len()];
    for b in 0..blocks {
        let mut longest = 0usize;
        let mut run = 0usize;
        for i in b * m..(b + 1) * m {
            if bits.get(i) {
                run += 1;
                longest = longest.max(run);
            } else {
                run = 0;
            }
        }
        // first class absorbs everything at or below its bound, the last
        // everything at or above
        let idx = if longest <= classes[0] {
            0
        } else if longest >= classes[k] {
            k
        } else {
            classes.iter().position(|&c| c == longest).unwrap()
        };
        nu[idx] += 1;
    }
    let mut chi2 = 0.0;
    for (i, &p_i) in pi.iter().enumerate() {
        let expected = blocks as f64 * p_i;
        chi2 += (nu[i] as f64 - expected) * (nu[i] as f64 - expected) / expected;
    }
    let p = igamc(k as f64 / 2.0, chi2 / 2.0);
    NistResult::from_p_values(name, vec![p], params.alpha, format!("M={m}, N={blocks}"))
}

pub fn cumulative_sums(bits: &BitSequence, params: &NistParams) -> NistResult {
    let name = "cumulative_sums";
    let n = bits.len();
    if n < 2 {
        return NistResult::skipped(name, format!("needs at least 2 bits, n={n}"));
    }
    let p_forward = cusum_p(bits, n, false);
    let p_backward = cusum_p(bits, n, true);
    NistResult::from_p_values(name, vec![p_forward, p_backward], params.alpha, format!("n={n}"))
}

fn cusum_p(bits: &BitSequence, n: usize, backward: bool) -> f64 {
    let mut sum = 0i64;
    let mut z = 0i64;
    for k in 0..n {
        let idx = if backward { n - 1 - k } else { k };
        sum += if bits.get(idx) { 1 } else { -1 };
        z = z.max(sum.abs());
    }
    let z = z as f64;
    if z == 0.0 {
        return 0.0;
    }
    let n_f = n as f64;
    let sqrt_n = n_f.sqrt();
    let mut p = 1.0;
    let lo = (((-n_f / z) + 1.0) / 4.0).floor() as i64;
    let hi = (((n_f / z) - 1.0) / 4.0).floor() as i64;
    for k in lo..=hi {
        let k = k as f64;
        p -= phi((4.0 * k + 1.0) * z / sqrt_n) - phi((4.0 * k - 1.0) * z / sqrt_n);
    }
    let lo = (((-n_f / z) - 3.0) / 4.0).floor() as i64;
    let hi = (((n_f / z) - 1.0) / 4.0).floor() as i64;
    for k in lo..=hi {
        let k = k as f64;
        p += phi((4.0 * k + 3.0) * z / sqrt_n) - phi((4.0 * k + 1.0) * z / sqrt_n);
    }
    p.clamp(0.0, 1.0)
}
