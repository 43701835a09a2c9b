#![allow(dead_code)]

use hyperset::profinite::ProfinitePoint;
use hyperset::semilinear::SemilinearSet;
use num_integer::Integer;
use rand::Rng;

/// Random eventually-periodic set with period in `1..=max_period`.
pub fn random_set(rng: &mut impl Rng, max_period: u64) -> SemilinearSet {
    let period = rng.gen_range(1..=max_period);
    let threshold = rng.gen_range(0..=20);
    let fill: f64 = rng.gen_range(0.1..0.9);
    let pattern: Vec<u64> = (0..period).filter(|_| rng.gen_bool(fill)).collect();
    let exceptional: Vec<u64> = (0..threshold).filter(|_| rng.gen_bool(0.5)).collect();
    SemilinearSet::normalize(threshold, period, pattern, exceptional).unwrap()
}

/// Random periodic set (threshold 0) with a nonempty pattern.
pub fn random_periodic(rng: &mut impl Rng, max_period: u64) -> SemilinearSet {
    loop {
        let period = rng.gen_range(1..=max_period);
        let pattern: Vec<u64> = (0..period).filter(|_| rng.gen_bool(0.4)).collect();
        if !pattern.is_empty() {
            return SemilinearSet::periodic(period, pattern).unwrap();
        }
    }
}

/// Random point whose depth is a multiple of every given period.
pub fn random_point(rng: &mut impl Rng, sets: &[&SemilinearSet]) -> ProfinitePoint {
    let base = sets.iter().fold(1u64, |acc, s| acc.lcm(&s.period()));
    let modulus = base * rng.gen_range(1..=3);
    ProfinitePoint::new(modulus, rng.gen_range(0..modulus)).unwrap()
}

/// Brute-force `|A ∩ [lo, hi)|`.
pub fn count_range(set: &SemilinearSet, lo: u64, hi: u64) -> u64 {
    (lo..hi).filter(|&n| set.contains(n)).count() as u64
}
