use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{DatasetError, DatasetRecord};

/// Train/validation/test fractions and the shuffle seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub ratios: [f64; 3],
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec { ratios: [0.9, 0.05, 0.05], seed: 0 }
    }
}

impl SplitSpec {
    pub fn new(ratios: [f64; 3], seed: u64) -> Result<Self, DatasetError> {
        if ratios.iter().any(|r| !r.is_finite() || *r < 0.0) {
            return Err(DatasetError::Ratios(format!("{ratios:?} has a negative entry")));
        }
        let sum: f64 = ratios.iter().sum();
        if (sum - 1.0).abs() > 1e-6 {
            return Err(DatasetError::Ratios(format!("{ratios:?} sums to {sum}")));
        }
        Ok(SplitSpec { ratios, seed })
    }

    /// Parses `0.9,0.05,0.05`.
    pub fn parse_ratios(text: &str, seed: u64) -> Result<Self, DatasetError> {
        let parts: Vec<f64> = text
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| DatasetError::Ratios(format!("{text:?}: {e}")))?;
        let ratios: [f64; 3] =
            parts.try_into().map_err(|_| DatasetError::Ratios(format!("{text:?}: expected three values")))?;
        SplitSpec::new(ratios, seed)
    }

    /// Sizes of the three parts for `n` records: validation and test are
    /// rounded down, train takes the rest.
    pub fn sizes(&self, n: usize) -> [usize; 3] {
        let part = |r: f64| ((n as f64) * r + 1e-9).floor() as usize;
        let val = part(self.ratios[1]);
        let test = part(self.ratios[2]).min(n - val);
        [n - val - test, val, test]
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Split {
    pub train: Vec<DatasetRecord>,
    pub val: Vec<DatasetRecord>,
    pub test: Vec<DatasetRecord>,
}

/// Seeded shuffle followed by a contiguous cut into train, val, test.
pub fn make_split(records: &[DatasetRecord], spec: &SplitSpec) -> Split {
    let mut order: Vec<usize> = (0..records.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(spec.seed));
    let [train, val, _] = spec.sizes(records.len());
    let take = |range: std::ops::Range<usize>| -> Vec<DatasetRecord> {
        order[range].iter().map(|&i| records[i].clone()).collect()
    };
    Split { train: take(0..train), val: take(train..train + val), test: take(train + val..records.len()) }
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeMap, BTreeSet};

    use proptest::prelude::*;

    use super::*;
    use crate::datasets::Domain;

    fn records(n: usize) -> Vec<DatasetRecord> {
        (0..n)
            .map(|i| DatasetRecord::new(Domain::Ltl, format!("p{i} holds"), format!("p{i}"), BTreeMap::new()))
            .collect()
    }

    #[test]
    fn ninety_five_five_ratios() {
        let s = make_split(&records(1000), &SplitSpec::default());
        assert_eq!((s.train.len(), s.val.len(), s.test.len()), (900, 50, 50));
        let s = make_split(&records(1), &SplitSpec::default());
        assert_eq!((s.train.len(), s.val.len(), s.test.len()), (1, 0, 0));
    }

    #[test]
    fn deterministic_per_seed() {
        let rs = records(50);
        let spec = SplitSpec::default();
        assert_eq!(make_split(&rs, &spec), make_split(&rs, &spec));
        let other = SplitSpec { seed: 1, ..spec };
        assert_ne!(make_split(&rs, &spec).test, make_split(&rs, &other).test);
    }

    #[test]
    fn ratio_parsing() {
        assert_eq!(SplitSpec::parse_ratios("0.9,0.05,0.05", 0).unwrap().ratios, [0.9, 0.05, 0.05]);
        assert!(SplitSpec::parse_ratios("0.9,0.05", 0).is_err());
        assert!(SplitSpec::parse_ratios("0.9,0.2,0.05", 0).is_err());
        assert!(SplitSpec::parse_ratios("1.1,-0.1,0", 0).is_err());
    }

    proptest! {
        #[test]
        fn partitions_input(n in 1usize..300, seed in any::<u64>(), a in 0u32..=100, b in 0u32..=100) {
            let (a, b) = (a.min(100), b.min(100 - a.min(100)));
            let ratios = [(100 - a - b) as f64 / 100.0, a as f64 / 100.0, b as f64 / 100.0];
            let spec = SplitSpec::new(ratios, seed).unwrap();
            let rs = records(n);
            let s = make_split(&rs, &spec);
            let ids: Vec<&str> = s.train.iter().chain(&s.val).chain(&s.test).map(|r| r.id.as_str()).collect();
            prop_assert_eq!(ids.len(), n);
            let unique: BTreeSet<&str> = ids.iter().copied().collect();
            prop_assert_eq!(unique, rs.iter().map(|r| r.id.as_str()).collect::<BTreeSet<_>>());
            for (len, r) in [(s.val.len(), ratios[1]), (s.test.len(), ratios[2])] {
                prop_assert!((len as f64 - n as f64 * r).abs() < 1.0 + 1e-6);
            }
            prop_assert!((s.train.len() as f64 - n as f64 * ratios[0]).abs() < 2.0 + 1e-6);
        }
    }
}
