//! Deterministic, counter-based sampling of one-forms and flags.
//!
//! Every sample is drawn from its own ChaCha stream keyed by the seed and the
//! sample index, so results do not depend on evaluation order or thread
//! count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use randers_core::algebra::{W, X, Z};
use randers_core::scalar::rat;
use randers_core::{AlgebraVector, CatalogCase, Flag, Scalar};

const FLAG_STREAMS: u64 = 0;
const Q_STREAMS: u64 = 1 << 62;
const VECTOR_STREAMS: u64 = 2 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampler {
    seed: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    /// A flag with small rational entries; redrawn until the two vectors
    /// are independent.
    pub fn flag(&self, dim: usize, index: u64) -> Flag {
        let mut rng = self.rng(FLAG_STREAMS | index);
        loop {
            let v = small_vector(&mut rng, dim);
            let u = small_vector(&mut rng, dim);
            if let Ok(flag) = Flag::new(v, u) {
                return flag;
            }
        }
    }

    /// A nonzero vector with small rational entries.
    pub fn vector(&self, dim: usize, index: u64) -> AlgebraVector {
        let mut rng = self.rng(VECTOR_STREAMS | index);
        loop {
            let v = small_vector(&mut rng, dim);
            if !v.is_zero() {
                return v;
            }
        }
    }

    /// A Douglas one-form of norm below one for the orthonormal metric on a
    /// catalog algebra: `pZ + qW` for case 2, `qX` otherwise.
    pub fn douglas_q(&self, case: CatalogCase, index: u64) -> AlgebraVector {
        let mut rng = self.rng(Q_STREAMS | index);
        match case {
            CatalogCase::Two => loop {
                let p = unit_interval_rational(&mut rng);
                let q = unit_interval_rational(&mut rng);
                if &p * &p + &q * &q < rat(1, 1) {
                    let mut v = AlgebraVector::basis(4, Z).scale(&p);
                    v.add_scaled(&q, &AlgebraVector::basis(4, W));
                    return v;
                }
            },
            _ => AlgebraVector::basis(4, X).scale(&unit_interval_rational(&mut rng)),
        }
    }
}

/// `n/d` with `|n| <= 6`, `1 <= d <= 4`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Scalar {
    rat(rng.random_range(-6..=6), rng.random_range(1..=4))
}

fn small_vector<R: Rng>(rng: &mut R, dim: usize) -> AlgebraVector {
    AlgebraVector::new((0..dim).map(|_| small_rational(rng)).collect())
}

/// `n/d` strictly inside `(-1, 1)` with `2 <= d <= 12`.
fn unit_interval_rational<R: Rng>(rng: &mut R) -> Scalar {
    let d: i64 = rng.random_range(2..=12);
    rat(rng.random_range(-(d - 1)..=d - 1), d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use randers_core::classify::is_douglas;
    use randers_core::MetricTensor;

    #[test]
    fn deterministic_per_index() {
        let s = Sampler::new(7);
        assert_eq!(s.flag(4, 3), s.flag(4, 3));
        assert_ne!(s.flag(4, 3), s.flag(4, 4));
        assert_ne!(Sampler::new(8).flag(4, 3), s.flag(4, 3));
    }

    #[test]
    fn douglas_samples_are_douglas_and_short() {
        let s = Sampler::new(1);
        let id = MetricTensor::identity(4);
        for case in CatalogCase::ALL {
            for i in 0..50 {
                let q = s.douglas_q(case, i);
                assert!(id.norm_squared(&q).unwrap() < rat(1, 1));
                assert!(is_douglas(&case.algebra(), &id, &q).unwrap().holds);
            }
        }
    }
}
