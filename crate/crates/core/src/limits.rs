use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;

/// Seed shared by every randomized check in the crate.
pub const DEFAULT_SEED: u64 = 0x5A11;

/// Size guards for constructors, verifiers and enumerations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest carrier a constructor may produce.
    pub carrier_cap: usize,
    /// Triple-law checks are exhaustive while the triple count stays within this budget.
    pub triple_budget: u64,
    /// Number of random triples drawn once the budget is exceeded.
    pub sampled_triples: usize,
    /// Largest generator set whose subsets `enumerate_sa` will walk.
    pub enumeration_cap: usize,
    pub seed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            carrier_cap: 65_536,
            triple_budget: 10_000_000,
            sampled_triples: 200_000,
            enumeration_cap: 20,
            seed: DEFAULT_SEED,
        }
    }
}

impl Limits {
    /// Defaults, with the carrier cap taken from `SA_CARRIER_CAP` when set.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(cap) = std::env::var("SA_CARRIER_CAP")
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            limits.carrier_cap = cap;
        }
        limits
    }

    pub(crate) fn check_carrier(&self, requested: u128) -> Result<usize> {
        if requested > self.carrier_cap as u128 {
            return Err(crate::Error::CarrierCap {
                requested,
                cap: self.carrier_cap,
            });
        }
        Ok(requested as usize)
    }
}

/// How the triple laws of a structure were verified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Verification {
    Exhaustive,
    Sampled { seed: u64, samples: usize },
}

impl Verification {
    pub(crate) fn combine(self, other: Verification) -> Verification {
        match (self, other) {
            (Verification::Exhaustive, v) | (v, Verification::Exhaustive) => v,
            (v, _) => v,
        }
    }
}

/// Runs `check` over every triple in `d0 × d1 × d2`, or over a seeded sample
/// when the full product exceeds the budget.
pub(crate) fn scan_triples<E>(
    dims: [usize; 3],
    limits: &Limits,
    mut check: impl FnMut(usize, usize, usize) -> std::result::Result<(), E>,
) -> std::result::Result<Verification, E> {
    let total = dims.iter().map(|&d| d as u64).product::<u64>();
    if total <= limits.triple_budget {
        for a in 0..dims[0] {
            for b in 0..dims[1] {
                for c in 0..dims[2] {
                    check(a, b, c)?;
                }
            }
        }
        return Ok(Verification::Exhaustive);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
    for _ in 0..limits.sampled_triples {
        let a = rng.random_range(0..dims[0]);
        let b = rng.random_range(0..dims[1]);
        let c = rng.random_range(0..dims[2]);
        check(a, b, c)?;
    }
    Ok(Verification::Sampled {
        seed: limits.seed,
        samples: limits.sampled_triples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_products_are_exhaustive() {
        let mut n = 0;
        let mode = scan_triples::<()>([3, 4, 5], &Limits::default(), |_, _, _| {
            n += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(mode, Verification::Exhaustive);
        assert_eq!(n, 60);
    }

    #[test]
    fn large_products_are_sampled_deterministically() {
        let limits = Limits {
            triple_budget: 10,
            sampled_triples: 50,
            ..Limits::default()
        };
        let mut first = Vec::new();
        let mode = scan_triples::<()>([10, 10, 10], &limits, |a, b, c| {
            first.push((a, b, c));
            Ok(())
        })
        .unwrap();
        let mut second = Vec::new();
        scan_triples::<()>([10, 10, 10], &limits, |a, b, c| {
            second.push((a, b, c));
            Ok(())
        })
        .unwrap();
        assert_eq!(first, second);
        assert_eq!(
            mode,
            Verification::Sampled {
                seed: DEFAULT_SEED,
                samples: 50
            }
        );
    }
}
