//! Serial and approximate-entropy tests (overlapping m-pattern counts with
//! wraparound).

use super::{igamc, NistParams, NistResult};
use crate::bits::BitSequence;

/// Counts of every overlapping m-bit pattern, the sequence extended by its
/// own first m-1 bits.
fn pattern_counts(bits: &BitSequence, m: usize) -> Vec<u64> {
    let n = bits.len();
    if m == 0 {
        return vec![n as u64];
    }
    let mut counts = vec![0u64; 1 << m];
    let mask = (1usize << m) - 1;
    let mut window = 0usize;
    // warm up with the first m-1 bits
    for i in 0..m - 1 {
        window = (window << 1) | bits.get(i) as usize;
    }
    for i in m - 1..n + m - 1 {
        let bit = bits.get(i % n) as usize;
        window = ((window << 1) | bit) & mask;
        counts[window] += 1;
    }
    counts
}

fn psi_squared(bits: &BitSequence, m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let n = bits.len() as f64;
    let counts = pattern_counts(bits, m);
    let sum_sq: f64 = counts.iter().map(|&c| (c as f64) * (c as f64)).sum();
    (1u64 << m) as f64 / n * sum_sq - n
}

fn auto_serial_m(n: usize) -> usize {
    // m < floor(log2 n) - 2, capped at 16
    let limit = (n as f64).log2().floor() as isize - 3;
    limit.clamp(2, 16) as usize
}

pub fn serial(bits: &BitSequence, params: &NistParams) -> NistResult {
    let name = "serial";
    let n = bits.len();
    if n < 8 {
        return NistResult::skipped(name, format!("needs at least 8 bits, n={n}"));
    }
    let m = params.serial_m.unwrap_or_else(|| auto_serial_m(n));
    let psi_m = psi_squared(bits, m);
    let psi_m1 = psi_squared(bits, m - 1);
    let psi_m2 = if m >= 2 { psi_squared(bits, m - 2) } else { 0.0 };
    let d1 = psi_m - psi_m1;
    let d2 = psi_m - 2.0 * psi_m1 + psi_m2;
    let p1 = igamc(2f64.powi(m as i32 - 2), d1 / 2.0);
    let p2 = igamc(2f64.powi(m as i32 - 3), d2 / 2.0);
    NistResult::from_p_values(name, vec![p1, p2], params.alpha, format!("m={m}, n={n}"))
}

fn auto_apen_m(n: usize) -> usize {
    // m < floor(log2 n) - 5, capped at 10
    let limit = (n as f64).log2().floor() as isize - 6;
    limit.clamp(2, 10) as usize
}

pub fn approximate_entropy(bits: &BitSequence, params: &NistParams) -> NistResult {
    let name = "approximate_entropy";
    let n = bits.len();
    if n < 64 {
        return NistResult::skipped(name, format!("needs at least 64 bits, n={n}"));
    }
    let m = params.approximate_entropy_m.unwrap_or_else(|| auto_apen_m(n));
    let phi = |mm: usize| -> f64 {
        let counts = pattern_counts(bits, mm);
        let n_f = n as f64;
        counts
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let frac = c as f64 / n_f;
                frac * frac.ln()
            })
            .sum()
    };
    let apen = phi(m) - phi(m + 1);
    let chi2 = 2.0 * n as f64 * (std::f64::consts::LN_2 - apen);
    let p = igamc(2f64.powi(m as i32 - 1), chi2 / 2.0);
    NistResult::from_p_values(name, vec![p], params.alpha, format!("m={m}, n={n}"))
}
