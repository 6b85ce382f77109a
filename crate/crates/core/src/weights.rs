//! Weight laws for nodes and edges.
//!
//! A [`WeightSpec`] describes the common distribution `F_w` from which all
//! node (or edge) weights are drawn. Four families are supported:
//!
//! * `Exp(1)` scaled by a positive factor — the continuous law for which
//!   every limit in [`crate::closedform`] is available in closed form.
//! * A two-point law with mass `z` **at zero** and the rest at `scale`.
//!   Note the parameterization: `z` is the probability of drawing zero,
//!   not a success probability.
//! * The constant `1` (times `scale`).
//! * A point mass at an arbitrary non-negative value.
//!
//! Samples are never negative and are deterministic given an RNG state.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeightError {
    #[error("probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),
    #[error("scale must be positive and finite, got {0}")]
    InvalidScale(f64),
    #[error("point mass must be non-negative and finite, got {0}")]
    InvalidPointMass(f64),
    #[error("cannot parse weight spec {0:?} (expected exp | bernoulli:Z | one | point:V)")]
    Parse(String),
}

/// The supported families of `F_w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum WeightKind {
    /// Exponential with rate 1.
    ExponentialRateOne,
    /// Mass `z` at zero, mass `1 - z` at one (before scaling).
    BernoulliAtomAtZero(f64),
    /// Constant one.
    DeterministicOne,
    /// Constant `v >= 0`.
    PointMass(f64),
}

/// A weight law: a [`WeightKind`] plus a positive scale multiplying samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub kind: WeightKind,
    pub scale: f64,
}

impl WeightSpec {
    pub fn new(kind: WeightKind, scale: f64) -> Result<Self, WeightError> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(WeightError::InvalidScale(scale));
        }
        match kind {
            WeightKind::BernoulliAtomAtZero(z) if !(0.0..=1.0).contains(&z) => {
                Err(WeightError::InvalidProbability(z))
            }
            WeightKind::PointMass(v) if !(v.is_finite() && v >= 0.0) => {
                Err(WeightError::InvalidPointMass(v))
            }
            _ => Ok(Self { kind, scale }),
        }
    }

    pub fn exponential() -> Self {
        Self { kind: WeightKind::ExponentialRateOne, scale: 1.0 }
    }

    pub fn bernoulli(z: f64) -> Result<Self, WeightError> {
        Self::new(WeightKind::BernoulliAtomAtZero(z), 1.0)
    }

    pub fn one() -> Self {
        Self { kind: WeightKind::DeterministicOne, scale: 1.0 }
    }

    pub fn point_mass(v: f64) -> Result<Self, WeightError> {
        Self::new(WeightKind::PointMass(v), 1.0)
    }

    /// One draw from `F_w`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let base = match self.kind {
            // 1 - U lies in (0, 1], so the log is finite and the draw >= 0.
            WeightKind::ExponentialRateOne => -(1.0 - rng.gen::<f64>()).ln(),
            WeightKind::BernoulliAtomAtZero(z) => {
                if rng.gen::<f64>() < z {
                    0.0
                } else {
                    1.0
                }
            }
            WeightKind::DeterministicOne => 1.0,
            WeightKind::PointMass(v) => v,
        };
        self.scale * base
    }

    /// The exact CDF `F_w(t) = P(W <= t)`; right-continuous, 0 for `t < 0`.
    pub fn cdf(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        let s = t / self.scale;
        match self.kind {
            WeightKind::ExponentialRateOne => 1.0 - (-s).exp(),
            WeightKind::BernoulliAtomAtZero(z) => {
                if s < 1.0 {
                    z
                } else {
                    1.0
                }
            }
            WeightKind::DeterministicOne => {
                if s < 1.0 {
                    0.0
                } else {
                    1.0
                }
            }
            WeightKind::PointMass(v) => {
                if s < v {
                    0.0
                } else {
                    1.0
                }
            }
        }
    }

    /// Max of `k` independent draws; 0 when `k = 0` (empty-max convention).
    pub fn sample_max<R: Rng + ?Sized>(&self, k: usize, rng: &mut R) -> f64 {
        let mut best = 0.0f64;
        for _ in 0..k {
            best = best.max(self.sample(rng));
        }
        best
    }

    /// Whether the law is atom-free. Only the exponential family qualifies.
    pub fn is_continuous(&self) -> bool {
        matches!(self.kind, WeightKind::ExponentialRateOne)
    }

    /// Parses `exp`, `bernoulli:Z`, `one`, `point:V`, optionally suffixed with
    /// `*SCALE` (e.g. `exp*2.5`).
    pub fn parse(s: &str) -> Result<Self, WeightError> {
        let err = || WeightError::Parse(s.to_owned());
        let (body, scale) = match s.split_once('*') {
            Some((b, sc)) => (b, sc.trim().parse::<f64>().map_err(|_| err())?),
            None => (s, 1.0),
        };
        let body = body.trim();
        let kind = if body.eq_ignore_ascii_case("exp") {
            WeightKind::ExponentialRateOne
        } else if body.eq_ignore_ascii_case("one") {
            WeightKind::DeterministicOne
        } else if let Some(z) = body.strip_prefix("bernoulli:") {
            WeightKind::BernoulliAtomAtZero(z.trim().parse::<f64>().map_err(|_| err())?)
        } else if let Some(v) = body.strip_prefix("point:") {
            WeightKind::PointMass(v.trim().parse::<f64>().map_err(|_| err())?)
        } else {
            return Err(err());
        };
        Self::new(kind, scale)
    }

    /// Canonical label, the inverse of [`WeightSpec::parse`].
    pub fn label(&self) -> String {
        let body = match self.kind {
            WeightKind::ExponentialRateOne => "exp".to_owned(),
            WeightKind::BernoulliAtomAtZero(z) => format!("bernoulli:{z}"),
            WeightKind::DeterministicOne => "one".to_owned(),
            WeightKind::PointMass(v) => format!("point:{v}"),
        };
        if self.scale == 1.0 {
            body
        } else {
            format!("{body}*{}", self.scale)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::rng_for;

    #[test]
    fn deterministic_one_samples_one() {
        let mut rng = rng_for(0, 0, 0);
        assert_eq!(WeightSpec::one().sample(&mut rng), 1.0);
    }

    #[test]
    fn full_atom_bernoulli_is_always_zero() {
        let spec = WeightSpec::bernoulli(1.0).unwrap();
        let mut rng = rng_for(1, 0, 0);
        for _ in 0..1000 {
            assert_eq!(spec.sample(&mut rng), 0.0);
        }
    }

    #[test]
    fn exponential_mean_is_one() {
        let spec = WeightSpec::exponential();
        let mut rng = rng_for(2, 0, 0);
        let n = 1_000_000;
        let mean = (0..n).map(|_| spec.sample(&mut rng)).sum::<f64>() / n as f64;
        assert!((mean - 1.0).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn exponential_cdf_values() {
        let spec = WeightSpec::exponential();
        assert_eq!(spec.cdf(0.0), 0.0);
        assert!((spec.cdf(2.0f64.ln()) - 0.5).abs() < 1e-15);
        assert_eq!(spec.cdf(-1.0), 0.0);
    }

    #[test]
    fn bernoulli_cdf_has_atom_at_zero() {
        let spec = WeightSpec::bernoulli(0.25).unwrap();
        assert_eq!(spec.cdf(0.0), 0.25);
        assert_eq!(spec.cdf(0.999), 0.25);
        assert_eq!(spec.cdf(1.0), 1.0);
    }

    #[test]
    fn empty_max_is_zero() {
        let mut rng = rng_for(3, 0, 0);
        assert_eq!(WeightSpec::exponential().sample_max(0, &mut rng), 0.0);
        assert_eq!(WeightSpec::one().sample_max(1, &mut rng), 1.0);
    }

    #[test]
    fn max_of_three_exponentials_has_harmonic_mean() {
        // E[max of 3] = 1 + 1/2 + 1/3
        let spec = WeightSpec::exponential();
        let mut rng = rng_for(4, 0, 0);
        let n = 1_000_000;
        let mean = (0..n).map(|_| spec.sample_max(3, &mut rng)).sum::<f64>() / n as f64;
        assert!((mean - (1.0 + 0.5 + 1.0 / 3.0)).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn parse_round_trips() {
        for s in ["exp", "one", "bernoulli:0.25", "point:2.5", "exp*2"] {
            let spec = WeightSpec::parse(s).unwrap();
            assert_eq!(WeightSpec::parse(&spec.label()).unwrap(), spec);
        }
        assert!(WeightSpec::parse("gamma").is_err());
        assert!(WeightSpec::parse("bernoulli:1.5").is_err());
    }

    #[test]
    fn scale_multiplies_samples() {
        let spec = WeightSpec::new(WeightKind::DeterministicOne, 3.5).unwrap();
        let mut rng = rng_for(5, 0, 0);
        assert_eq!(spec.sample(&mut rng), 3.5);
        assert_eq!(spec.cdf(3.4), 0.0);
        assert_eq!(spec.cdf(3.5), 1.0);
    }
}
