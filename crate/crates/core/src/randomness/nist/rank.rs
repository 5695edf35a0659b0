//! Binary matrix rank test.

use super::{igamc, NistParams, NistResult};
use crate::bits::BitSequence;

/// Rank of a square bit matrix over GF(2); rows packed into u64 words.
pub(crate) fn gf2_rank(rows: &mut [u64]) -> usize {
    let m = rows.len();
    let mut rank = 0;
    for col in 0..m {
        let mask = 1u64 << col;
        if let Some(pivot) = (rank..m).find(|&r| rows[r] & mask != 0) {
            rows.swap(rank, pivot);
            let pivot_row = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row & mask != 0 {
                    *row ^= pivot_row;
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Probability that a random m-by-m GF(2) matrix has rank m - deficiency.
fn rank_probability(m: usize, deficiency: usize) -> f64 {
    let r = m - deficiency;
    let mut p = 2f64.powi(-((deficiency * deficiency) as i32));
    for i in 0..r {
        let num = (1.0 - 2f64.powi(i as i32 - m as i32)).powi(2);
        let den = 1.0 - 2f64.powi(i as i32 - r as i32);
        p *= num / den;
    }
    p
}

pub fn binary_matrix_rank(bits: &BitSequence, params: &NistParams) -> NistResult {
    let name = "binary_matrix_rank";
    let m = params.matrix_size;
    let n = bits.len();
    let matrices = n / (m * m);
    if matrices < 38 {
        return NistResult::skipped(
            name,
            format!("needs at least 38 matrices of {m}x{m} bits, n={n}"),
        );
    }
    let p_full = rank_probability(m, 0);
    let p_minus1 = rank_probability(m, 1);
    let p_rest = 1.0 - p_full - p_minus1;

    let (mut f_full, mut f_minus1) = (0usize, 0usize);
    let mut rows = vec![0u64; m];
    for block in 0..matrices {
        let base = block * m * m;
        for (r, row) in rows.iter_mut().enumerate() {
            let mut value = 0u64;
            for c in 0..m {
                if bits.get(base + r * m + c) {
                    value |= 1 << c;
                }
            }
            *row = value;
        }
        match m - gf2_rank(&mut rows) {
            0 => f_full += 1,
            1 => f_minus1 += 1,
            _ => {}
        }
    }
    let f_rest = matrices - f_full - f_minus1;
    let n_f = matrices as f64;
    let chi2 = (f_full as f64 - n_f * p_full).powi(2) / (n_f * p_full)
        + (f_minus1 as f64 - n_f * p_minus1).powi(2) / (n_f * p_minus1)
        + (f_rest as f64 - n_f * p_rest).powi(2) / (n_f * p_rest);
    let p = igamc(1.0, chi2 / 2.0);
    NistResult::from_p_values(name, vec![p], params.alpha, format!("{m}x{m}, N={matrices}"))
}
