//! Instanton numbers from the multiple-cover relation
//! `N_d = sum_{k | d} n_{d/k} / k^3`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{int, BigRational};

/// Which pipeline produced a number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Localization,
    Mirror,
    Both,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Localization => "localization",
            Provenance::Mirror => "mirror",
            Provenance::Both => "both",
        })
    }
}

/// Genus-0 invariants indexed by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTable {
    entries: BTreeMap<u32, BigRational>,
    geometry: String,
    provenance: Provenance,
}

impl InvariantTable {
    /// Degrees must be exactly `1..=D`.
    pub fn new(
        entries: BTreeMap<u32, BigRational>,
        geometry: impl Into<String>,
        provenance: Provenance,
    ) -> Result<Self> {
        for (expected, &d) in (1u32..).zip(entries.keys()) {
            if d != expected {
                return Err(Error::MissingDegree(expected));
            }
        }
        Ok(Self {
            entries,
            geometry: geometry.into(),
            provenance,
        })
    }

    /// Table with `values[i]` at degree `i + 1`.
    pub fn from_values(
        values: Vec<BigRational>,
        geometry: impl Into<String>,
        provenance: Provenance,
    ) -> Self {
        let entries = (1u32..).zip(values).collect();
        Self {
            entries,
            geometry: geometry.into(),
            provenance,
        }
    }

    pub fn entries(&self) -> &BTreeMap<u32, BigRational> {
        &self.entries
    }

    pub fn get(&self, d: u32) -> Option<&BigRational> {
        self.entries.get(&d)
    }

    pub fn max_degree(&self) -> u32 {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    pub fn geometry(&self) -> &str {
        &self.geometry
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstantonTable {
    entries: BTreeMap<u32, BigRational>,
    integral: BTreeMap<u32, bool>,
}

impl InstantonTable {
    pub fn entries(&self) -> &BTreeMap<u32, BigRational> {
        &self.entries
    }

    pub fn get(&self, d: u32) -> Option<&BigRational> {
        self.entries.get(&d)
    }

    pub fn integrality(&self) -> &BTreeMap<u32, bool> {
        &self.integral
    }

    pub fn all_integral(&self) -> bool {
        self.integral.values().all(|&b| b)
    }

    /// Re-sums `N_d = sum_{k | d} n_{d/k} / k^3`.
    pub fn resum(&self) -> BTreeMap<u32, BigRational> {
        self.entries
            .keys()
            .map(|&d| {
                let total = divisors(d)
                    .map(|k| &self.entries[&(d / k)] / cube(k))
                    .fold(BigRational::zero(), |acc, x| acc + x);
                (d, total)
            })
            .collect()
    }
}

fn divisors(d: u32) -> impl Iterator<Item = u32> {
    (1..=d).filter(move |&k| d.is_multiple_of(k))
}

fn cube(k: u32) -> BigRational {
    int(k as i64).pow(3)
}

/// Solves the multiple-cover relation for `n_d` in increasing degree.
pub fn invert_multicover(table: &InvariantTable) -> Result<InstantonTable> {
    let mut entries = BTreeMap::new();
    for d in 1..=table.max_degree() {
        let mut n = table.get(d).ok_or(Error::MissingDegree(d))?.clone();
        for k in divisors(d).skip(1) {
            let lower: &BigRational = &entries[&(d / k)];
            n -= lower / cube(k);
        }
        entries.insert(d, n);
    }
    let integral = check_integrality(&entries);
    Ok(InstantonTable { entries, integral })
}

/// Per-degree integrality flags. Never fails.
pub fn check_integrality(entries: &BTreeMap<u32, BigRational>) -> BTreeMap<u32, bool> {
    entries.iter().map(|(&d, n)| (d, n.is_integer())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn table(values: Vec<BigRational>) -> InvariantTable {
        InvariantTable::from_values(values, "test", Provenance::Mirror)
    }

    #[test]
    fn spec_examples() {
        let t = invert_multicover(&table(vec![int(2875)])).unwrap();
        assert_eq!(t.get(1), Some(&int(2875)));
        let t = invert_multicover(&table(vec![int(2875), rat(4876875, 8)])).unwrap();
        assert_eq!(t.get(2), Some(&int(609250)));
        let t = invert_multicover(&table(vec![int(1), rat(1, 8), rat(1, 27)])).unwrap();
        assert_eq!(
            t.entries().values().cloned().collect::<Vec<_>>(),
            vec![int(1), int(0), int(0)]
        );
    }

    #[test]
    fn integrality_flags() {
        let t = invert_multicover(&table(vec![rat(1, 2)])).unwrap();
        assert_eq!(t.integrality().get(&1), Some(&false));
        assert!(check_integrality(&BTreeMap::new()).is_empty());
        let t = invert_multicover(&table(vec![])).unwrap();
        assert!(t.entries().is_empty());
    }

    #[test]
    fn gap_is_rejected() {
        let entries = BTreeMap::from([(1, int(1)), (3, int(1))]);
        assert_eq!(
            InvariantTable::new(entries, "x", Provenance::Localization),
            Err(Error::MissingDegree(2))
        );
        let entries = BTreeMap::from([(2, int(1))]);
        assert_eq!(
            InvariantTable::new(entries, "x", Provenance::Localization),
            Err(Error::MissingDegree(1))
        );
    }

    #[test]
    fn resum_round_trip() {
        let src = table(vec![
            int(2875),
            rat(4876875, 8),
            rat(8564575000, 27),
            rat(3, 7),
        ]);
        let t = invert_multicover(&src).unwrap();
        assert_eq!(&t.resum(), src.entries());
    }
}
