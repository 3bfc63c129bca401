use std::fmt;

use crate::error::{Error, Result};

/// A perfect matching of the photons `0..N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairList {
    partner: Vec<usize>,
}

impl PairList {
    pub fn new(ports: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if ports % 2 != 0 {
            return Err(Error::InvalidDemand(format!("{ports} photons cannot be paired")));
        }
        let mut partner = vec![usize::MAX; ports];
        for &(a, b) in pairs {
            if a >= ports || b >= ports {
                return Err(Error::InvalidDemand(format!("pair {a}-{b} is outside 0..{ports}")));
            }
            if a == b {
                return Err(Error::InvalidDemand(format!("photon {a} paired with itself")));
            }
            for x in [a, b] {
                if partner[x] != usize::MAX {
                    return Err(Error::InvalidDemand(format!("photon {x} appears twice")));
                }
            }
            partner[a] = b;
            partner[b] = a;
        }
        if let Some(missing) = partner.iter().position(|&p| p == usize::MAX) {
            return Err(Error::InvalidDemand(format!("photon {missing} is not paired")));
        }
        Ok(PairList { partner })
    }

    /// Builds a matching from a partner table, checking it is an involution
    /// without fixed points.
    pub fn from_partners(partner: Vec<usize>) -> Result<Self> {
        let n = partner.len();
        for (a, &b) in partner.iter().enumerate() {
            if b >= n || b == a || partner[b] != a {
                return Err(Error::InvalidDemand(format!("partner table is not a perfect matching at {a}")));
            }
        }
        Ok(PairList { partner })
    }

    /// Parses `0-11,1-10,...`. Whitespace is ignored.
    pub fn parse(text: &str, ports: usize) -> Result<Self> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pairs = Vec::new();
        if !cleaned.is_empty() {
            for token in cleaned.split(',') {
                let (a, b) = token
                    .split_once('-')
                    .ok_or_else(|| Error::InvalidDemand(format!("token `{token}` is not of the form i-j")))?;
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| Error::InvalidDemand(format!("`{s}` is not a port index")))
                };
                pairs.push((parse(a)?, parse(b)?));
            }
        }
        PairList::new(ports, &pairs)
    }

    /// {(0, N-1), (1, N-2), ...}: the most distant photons paired at every step.
    pub fn worst_case(ports: usize) -> Result<Self> {
        if ports % 2 != 0 {
            return Err(Error::InvalidDemand(format!("{ports} photons cannot be paired")));
        }
        PairList::from_partners((0..ports).map(|i| ports - 1 - i).collect())
    }

    /// Pairs `(2j, 2j + 1)`, already adjacent at the inputs.
    pub fn adjacent(ports: usize) -> Result<Self> {
        if ports % 2 != 0 {
            return Err(Error::InvalidDemand(format!("{ports} photons cannot be paired")));
        }
        PairList::from_partners((0..ports).map(|i| i ^ 1).collect())
    }

    pub fn ports(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, photon: usize) -> usize {
        self.partner[photon]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        a < self.partner.len() && self.partner[a] == b
    }

    /// Pairs as (smaller, larger), ordered by the smaller index.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.partner.iter().enumerate().filter(|&(a, &b)| a < b).map(|(a, &b)| (a, b)).collect()
    }
}

impl fmt::Display for PairList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (a, b)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}-{b}")?;
        }
        Ok(())
    }
}
