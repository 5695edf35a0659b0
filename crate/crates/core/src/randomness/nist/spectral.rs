//! Discrete Fourier transform (spectral) test.

use super::{erfc, NistParams, NistResult};
use crate::bits::BitSequence;
use rustfft::{num_complex::Complex64, FftPlanner};

pub fn dft(bits: &BitSequence, params: &NistParams) -> NistResult {
    let name = "dft";
    let n = bits.len();
    if n < 10 {
        return NistResult::skipped(name, format!("needs at least 10 bits, n={n}"));
    }
    let mut buf: Vec<Complex64> = bits
        .iter()
        .map(|b| Complex64::new(if b { 1.0 } else { -1.0 }, 0.0))
        .collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);

    let n_f = n as f64;
    let threshold = ((1.0 / 0.05f64).ln() * n_f).sqrt();
    let below = buf[..n / 2].iter().filter(|c| c.norm() < threshold).count();
    let expected = 0.95 * n_f / 2.0;
    let d = (below as f64 - expected) / (n_f * 0.95 * 0.05 / 4.0).sqrt();
    let p = erfc(d.abs() / std::f64::consts::SQRT_2);
    NistResult::from_p_values(name, vec![p], params.alpha, format!("n={n}, T={threshold:.2}"))
}
