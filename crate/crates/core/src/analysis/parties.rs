use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::SiteDims;

/// Grouping of register sites into parties of equal dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parties {
    groups: Vec<Vec<usize>>,
    party_dim: usize,
}

impl Parties {
    /// One party per site; all sites must share their dimension.
    pub fn singletons(dims: &SiteDims) -> Result<Self> {
        Self::new(dims, (0..dims.len()).map(|s| vec![s]).collect())
    }

    /// Groups must partition the sites and have equal total dimension.
    pub fn new(dims: &SiteDims, groups: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; dims.len()];
        for &s in groups.iter().flatten() {
            if s >= dims.len() {
                return Err(Error::input(format!("party site {s} out of range for {} sites", dims.len())));
            }
            if std::mem::replace(&mut seen[s], true) {
                return Err(Error::input(format!("site {s} belongs to more than one party")));
            }
        }
        if let Some(missing) = seen.iter().position(|&x| !x) {
            return Err(Error::input(format!("site {missing} is not assigned to a party")));
        }
        if groups.iter().any(|g| g.is_empty()) {
            return Err(Error::input("empty party"));
        }
        let party_dims: Vec<usize> = groups.iter().map(|g| g.iter().map(|&s| dims.dim(s)).product()).collect();
        if !party_dims.iter().all_equal() {
            return Err(Error::input(format!("parties have unequal dimensions {party_dims:?}")));
        }
        Ok(Parties { party_dim: party_dims.first().copied().unwrap_or(1), groups })
    }

    /// Parses `"0 1,2 3"`: commas separate parties, whitespace separates sites.
    pub fn parse(text: &str, dims: &SiteDims) -> Result<Self> {
        let groups = text
            .split(',')
            .map(|g| {
                g.split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| Error::input(format!("bad site '{t}' in parties"))))
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dims, groups)
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn party_dim(&self) -> usize {
        self.party_dim
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// Register sites of the listed parties, in order.
    pub fn sites_of(&self, parties: &[usize]) -> Vec<usize> {
        parties.iter().flat_map(|&p| self.groups[p].iter().copied()).collect()
    }
}

impl fmt::Display for Parties {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self.groups.iter().map(|g| g.iter().join(" ")).join(",");
        f.write_str(&text)
    }
}

/// Side `A` of a bipartition, as party indices; `A` is the larger half.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Bipartition {
    pub part_a: Vec<usize>,
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.part_a.iter().join(" "))
    }
}

/// Bipartitions with `|A| = n − ⌊n/2⌋`; for even `n` only the member of each
/// complementary pair containing party 0 is kept.
pub fn canonical_bipartitions(n: usize) -> Vec<Bipartition> {
    let m = n - n / 2;
    (0..n)
        .combinations(m)
        .filter(|a| n % 2 == 1 || a.first() == Some(&0))
        .map(|part_a| Bipartition { part_a })
        .collect()
}

/// `C(n, ⌊n/2⌋)`, the count before complement deduplication.
pub fn raw_bipartition_count(n: usize) -> usize {
    let k = n / 2;
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_groupings() {
        let dims = SiteDims::qubits(8);
        let p = Parties::parse("0 1,2 3,4 5,6 7", &dims).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.party_dim(), 4);
        assert_eq!(p.sites_of(&[1, 3]), vec![2, 3, 6, 7]);
        assert_eq!(p.to_string(), "0 1,2 3,4 5,6 7");
        assert!(Parties::parse("0 1,2 3,4 5,6", &dims).is_err());
        assert!(Parties::parse("0 1 2,3 4 5,6 7", &dims).is_err());
        assert!(Parties::parse("0 1,1 2,3 4,5 6 7", &dims).is_err());
        assert!(Parties::parse("0 x", &dims).is_err());
        assert!(Parties::singletons(&SiteDims::new(vec![2, 3]).unwrap()).is_err());
    }

    #[test]
    fn bipartition_counts() {
        assert_eq!(canonical_bipartitions(5).len(), 10);
        assert_eq!(canonical_bipartitions(6).len(), 10);
        assert_eq!(canonical_bipartitions(4).len(), 3);
        assert_eq!(raw_bipartition_count(6), 20);
        assert_eq!(raw_bipartition_count(5), 10);
        assert!(canonical_bipartitions(5).iter().all(|b| b.part_a.len() == 3));
    }
}
