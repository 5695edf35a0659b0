//! Random excursions and random excursions variant tests.

use super::{erfc, igamc, NistParams, NistResult};
use crate::bits::BitSequence;

/// Cycle decomposition of the cumulative-sum walk: the walk starts and
/// ends at zero, cycles are delimited by zero crossings. Returns per-cycle
/// visit counts for states -4..=4 and total visits for states -9..=9.
struct Walk {
    cycles: usize,
    /// per_cycle[state_idx][k] = cycles visiting the state exactly k times
    /// (k pooled at 5); state_idx maps -4..=4 (without 0) to 0..8.
    per_cycle: [[u64; 6]; 8],
    /// total visits to each of -9..=9 (without 0), index 0..18.
    totals: [u64; 18],
}

fn state_idx_4(x: i64) -> Option<usize> {
    match x {
        -4..=-1 => Some((x + 4) as usize),
        1..=4 => Some((x + 3) as usize),
        _ => None,
    }
}

fn state_idx_9(x: i64) -> Option<usize> {
    match x {
        -9..=-1 => Some((x + 9) as usize),
        1..=9 => Some((x + 8) as usize),
        _ => None,
    }
}

fn decompose(bits: &BitSequence) -> Walk {
    let mut walk = Walk { cycles: 0, per_cycle: [[0; 6]; 8], totals: [0; 18] };
    let mut sum = 0i64;
    let mut cycle_counts = [0u64; 8];
    let close_cycle = |counts: &mut [u64; 8], walk: &mut Walk| {
        for (i, c) in counts.iter().enumerate() {
            walk.per_cycle[i][(*c).min(5) as usize] += 1;
        }
        walk.cycles += 1;
        *counts = [0; 8];
    };
    for b in bits.iter() {
        sum += if b { 1 } else { -1 };
        if sum == 0 {
            close_cycle(&mut cycle_counts, &mut walk);
        } else {
            if let Some(i) = state_idx_4(sum) {
                cycle_counts[i] += 1;
            }
            if let Some(i) = state_idx_9(sum) {
                walk.totals[i] += 1;
            }
        }
    }
    if sum != 0 {
        // the appended zero closes the final partial cycle
        close_cycle(&mut cycle_counts, &mut walk);
    }
    walk
}

/// Probability that a cycle visits state x exactly k times (k pooled at 5).
fn pi_k(x: i64, k: usize) -> f64 {
    let ax = x.abs() as f64;
    let stay = 1.0 - 1.0 / (2.0 * ax);
    match k {
        0 => stay,
        5 => (1.0 / (2.0 * ax)) * stay.powi(4),
        k => (1.0 / (4.0 * ax * ax)) * stay.powi(k as i32 - 1),
    }
}

fn required_cycles(n: usize) -> usize {
    ((0.005 * (n as f64).sqrt()).ceil() as usize).max(500)
}

pub fn random_excursions(bits: &BitSequence, params: &NistParams) -> NistResult {
    let name = "random_excursion";
    let n = bits.len();
    let walk = decompose(bits);
    let required = required_cycles(n);
    if walk.cycles < required {
        return NistResult::skipped(
            name,
            format!("only {} cycles, {} required", walk.cycles, required),
        );
    }
    let j = walk.cycles as f64;
    let states: [i64; 8] = [-4, -3, -2, -1, 1, 2, 3, 4];
    let mut p_values = Vec::with_capacity(8);
    for &x in &states {
        let idx = state_idx_4(x).unwrap();
        let mut chi2 = 0.0;
        for k in 0..6 {
            let expected = j * pi_k(x, k);
            let observed = walk.per_cycle[idx][k] as f64;
            chi2 += (observed - expected) * (observed - expected) / expected;
        }
        p_values.push(igamc(5.0 / 2.0, chi2 / 2.0));
    }
    NistResult::from_p_values(name, p_values, params.alpha, format!("J={}", walk.cycles))
}

pub fn random_excursions_variant(bits: &BitSequence, params: &NistParams) -> NistResult {
    let name = "random_excursion_variant";
    let n = bits.len();
    let walk = decompose(bits);
    let required = required_cycles(n);
    if walk.cycles < required {
        return NistResult::skipped(
            name,
            format!("only {} cycles, {} required", walk.cycles, required),
        );
    }
    let j = walk.cycles as f64;
    let mut p_values = Vec::with_capacity(18);
    for x in (-9..=9i64).filter(|&x| x != 0) {
        let idx = state_idx_9(x).unwrap();
        let xi = walk.totals[idx] as f64;
        let denom = (2.0 * j * (4.0 * x.abs() as f64 - 2.0)).sqrt();
        p_values.push(erfc((xi - j).abs() / denom / std::f64::consts::SQRT_2));
    }
    NistResult::from_p_values(name, p_values, params.alpha, format!("J={}", walk.cycles))
}
