//! BPSK over AWGN.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Noise level for a given Eb/N0 and code rate with unit-energy BPSK.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    pub ebn0_db: f64,
    pub rate: f64,
    pub sigma: f64,
}

impl ChannelConfig {
    pub fn new(ebn0_db: f64, rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(Error::Config(format!("code rate {rate} outside (0, 1]")));
        }
        if !ebn0_db.is_finite() {
            return Err(Error::Config(format!("Eb/N0 {ebn0_db} dB is not finite")));
        }
        Ok(ChannelConfig {
            ebn0_db,
            rate,
            sigma: sigma_for(ebn0_db, rate),
        })
    }

    /// A near-noiseless channel for sanity runs.
    pub fn noiseless(rate: f64) -> Self {
        ChannelConfig {
            ebn0_db: f64::INFINITY,
            rate,
            sigma: 1e-3,
        }
    }

    pub fn variance(&self) -> f64 {
        self.sigma * self.sigma
    }

    /// Channel LLRs for codeword `x`.
    pub fn observe<R: Rng + ?Sized>(&self, x: &[u8], rng: &mut R) -> Vec<f64> {
        llr(&transmit(x, self.sigma, rng), self.sigma)
    }
}

/// `σ = sqrt(1 / (2 R 10^(Eb/N0 / 10)))`.
pub fn sigma_for(ebn0_db: f64, rate: f64) -> f64 {
    (1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0))).sqrt()
}

/// `y_i = (1 - 2 x_i) + z_i` with `z_i ~ N(0, σ²)`.
pub fn transmit<R: Rng + ?Sized>(x: &[u8], sigma: f64, rng: &mut R) -> Vec<f64> {
    x.iter()
        .map(|&b| {
            let z: f64 = rng.sample(StandardNormal);
            (1.0 - 2.0 * b as f64) + sigma * z
        })
        .collect()
}

pub fn llr(y: &[f64], sigma: f64) -> Vec<f64> {
    let scale = 2.0 / (sigma * sigma);
    y.iter().map(|v| scale * v).collect()
}
