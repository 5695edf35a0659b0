//! Non-overlapping and overlapping template matching tests.

use super::{igamc, NistParams, NistResult};
use crate::bits::BitSequence;

/// All aperiodic templates of length `m`, ascending. A template is
/// aperiodic when no proper shift of it matches itself, so occurrences
/// cannot overlap.
pub(crate) fn aperiodic_templates(m: usize) -> Vec<u16> {
    debug_assert!(m <= 16);
    let mut out = Vec::new();
    'candidates: for t in 0u32..(1 << m) {
        for shift in 1..m {
            // compare the (m - shift)-bit prefix with the suffix
            let mask = (1u32 << (m - shift)) - 1;
            if (t >> shift) == (t & mask) {
                continue 'candidates;
            }
        }
        out.push(t as u16);
    }
    out
}

/// Window values of every position: bits i..i+m read MSB-first.
fn window_values(bits: &BitSequence, m: usize) -> Vec<u16> {
    let n = bits.len();
    if n < m {
        return Vec::new();
    }
    let mask = (1u32 << m) - 1;
    let mut out = Vec::with_capacity(n - m + 1);
    let mut window = 0u32;
    for i in 0..n {
        window = ((window << 1) | bits.get(i) as u32) & mask;
        if i + 1 >= m {
            out.push(window as u16);
        }
    }
    out
}

pub fn non_overlapping(bits: &BitSequence, params: &NistParams) -> NistResult {
    let name = "non_overlapping_template_matching";
    let m = params.template_length;
    let n = bits.len();
    let blocks = 8usize;
    let block_len = n / blocks;
    if block_len < 4 * m {
        return NistResult::skipped(
            name,
            format!("needs blocks of at least {} bits, n={n}", 4 * m),
        );
    }
    let mu = (block_len - m + 1) as f64 / 2f64.powi(m as i32);
    let sigma2 = block_len as f64
        * (2f64.powi(-(m as i32)) - (2.0 * m as f64 - 1.0) * 2f64.powi(-2 * m as i32));
    let windows = window_values(bits, m);
    let per_block = block_len - m + 1;

    let templates = aperiodic_templates(m);
    let mut p_values = Vec::with_capacity(templates.len());
    for &t in &templates {
        let mut chi2 = 0.0;
        for b in 0..blocks {
            let start = b * block_len;
            let mut count = 0usize;
            let mut i = 0usize;
            while i < per_block {
                if windows[start + i] == t {
                    count += 1;
                    i += m; // non-overlapping: jump past the match
                } else {
                    i += 1;
                }
            }
            chi2 += (count as f64 - mu) * (count as f64 - mu) / sigma2;
        }
        p_values.push(igamc(blocks as f64 / 2.0, chi2 / 2.0));
    }
    NistResult::from_p_values(
        name,
        p_values,
        params.alpha,
        format!("m={m}, N={blocks}, M={block_len}, templates={}", templates.len()),
    )
}

/// Class probabilities of the overlapping test (published constants for
/// m = 9, M = 1032).
const OVERLAPPING_PI: [f64; 6] = [0.364091, 0.185659, 0.139381, 0.100571, 0.070432, 0.139865];

pub fn overlapping(bits: &BitSequence, params: &NistParams) -> NistResult {
    let name = "overlapping_template_matching";
    let m = params.template_length;
    let block_len = params.overlapping_block_length;
    let n = bits.len();
    let blocks = n / block_len;
    if blocks < 5 {
        return NistResult::skipped(
            name,
            format!("needs at least 5 blocks of {block_len} bits, n={n}"),
        );
    }
    let target = ((1u32 << m) - 1) as u16; // all-ones template
    let windows = window_values(bits, m);
    let mut nu = [0usize; 6];
    for b in 0..blocks {
        let start = b * block_len;
        let count = (0..block_len - m + 1)
            .filter(|&i| windows[start + i] == target)
            .count();
        nu[count.min(5)] += 1;
    }
    let n_f = blocks as f64;
    let mut chi2 = 0.0;
    for (i, &pi) in OVERLAPPING_PI.iter().enumerate() {
        chi2 += (nu[i] as f64 - n_f * pi) * (nu[i] as f64 - n_f * pi) / (n_f * pi);
    }
    let p = igamc(5.0 / 2.0, chi2 / 2.0);
    NistResult::from_p_values(name, vec![p], params.alpha, format!("m={m}, M={block_len}, N={blocks}"))
}
