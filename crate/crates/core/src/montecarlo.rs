//! Monte Carlo unpredictability of the activation-class generation:
//! fraction of sense amps whose generated bit is the minority '0' value,
//! per process-variation level and temperature.

use crate::model::{Address, EvalCtx, ValidatedConfig};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnpredictabilityPoint {
    pub variation_percent: f64,
    pub temperature_c: f64,
    pub draws: usize,
    pub unpredictable: usize,
    pub fraction: f64,
}

/// Draws `draws` independent sense-amp instances at the given variation
/// level and temperature and counts zero generators.
pub fn sa_unpredictability(
    cfg: &ValidatedConfig,
    variation_percent: f64,
    temperature_c: f64,
    draws: usize,
) -> UnpredictabilityPoint {
    let mut model = cfg.variation.clone();
    model.variation_percent = variation_percent;
    let ctx = EvalCtx::at_temperature(temperature_c, 0);
    let unpredictable = (0..draws)
        .into_par_iter()
        .filter(|&i| {
            // spread draws over a synthetic sense-amp address space
            let addr = Address {
                channel: 0,
                rank: 0,
                bank: i / 65_536,
                subarray: 0,
                row: 0,
                column: i % 65_536,
            };
            let latent = model.ue_sa_latent(&addr, &ctx);
            let noise = model.sa_noise(&addr, i as u64);
            latent + noise <= 0.0
        })
        .count();
    UnpredictabilityPoint {
        variation_percent,
        temperature_c,
        draws,
        unpredictable,
        fraction: unpredictable as f64 / draws as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::DramConfig;

    #[test]
    fn zero_variation_generates_no_zeros() {
        let cfg = DramConfig::ddr3_1600_desk().validate().unwrap();
        let point = sa_unpredictability(&cfg, 0.0, 30.0, 10_000);
        assert_eq!(point.unpredictable, 0);
    }

    #[test]
    fn unpredictability_grows_with_variation() {
        let cfg = DramConfig::ddr3_1600_desk().validate().unwrap();
        let p4 = sa_unpredictability(&cfg, 0.04, 30.0, 100_000);
        let p5 = sa_unpredictability(&cfg, 0.05, 30.0, 100_000);
        assert!(p5.unpredictable > p4.unpredictable);
    }

    #[test]
    fn draws_are_order_independent() {
        let cfg = DramConfig::ddr3_1600_desk().validate().unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let serial = pool.install(|| sa_unpredictability(&cfg, 0.05, 30.0, 50_000));
        let parallel = sa_unpredictability(&cfg, 0.05, 30.0, 50_000);
        assert_eq!(serial.unpredictable, parallel.unpredictable);
    }
}
