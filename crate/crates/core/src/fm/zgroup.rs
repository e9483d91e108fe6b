use crate::error::{Error, Result};
use crate::group::{find_zgroup_decomposition, Group};
use crate::serial::{Reader, Writer, MAX_ORDER};
use crate::space::{ProbeFamily, ProbeSink, SpaceLedger};

use super::{FmLabel, Labeling};

/// Largest `d` for which the store keeps `σ_j(g)` for every `j`.
pub const POWER_TABLE_LIMIT: u64 = 64;

/// `G = C_m ⋊ C_d` with `y x y^-1 = x^r`; element `x^i y^j` has label
/// `(i, r^j mod m, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZGroupScheme {
    m: u64,
    d: u64,
    sigma1: u64,
    powers: Option<Vec<u64>>,
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

impl ZGroupScheme {
    pub fn new(m: u64, d: u64, sigma1: u64) -> Result<Self> {
        if m == 0 || d == 0 || sigma1 >= m.max(1) || pow_mod(sigma1, d, m) != 1 % m {
            return Err(Error::InvalidParameter(format!("({m}, {d}, {sigma1}) is not a cyclic action")));
        }
        let powers = (d <= POWER_TABLE_LIMIT).then(|| (0..d).map(|j| pow_mod(sigma1, j, m)).collect());
        Ok(ZGroupScheme { m, d, sigma1, powers })
    }

    pub fn compress<G: Group + ?Sized>(g: &G) -> Result<(Self, Labeling)> {
        let dec = find_zgroup_decomposition(g)?;
        let scheme = ZGroupScheme::new(dec.m, dec.d, dec.r)?;
        let labels = dec
            .exponents(g)
            .into_iter()
            .map(|(i, j)| FmLabel::new(&[i as u64, pow_mod(dec.r, j as u64, dec.m), j as u64]))
            .collect();
        Ok((scheme, Labeling::new(labels)?))
    }

    pub fn factors(&self) -> (u64, u64, u64) {
        (self.m, self.d, self.sigma1)
    }

    pub fn uses_table(&self) -> bool {
        self.powers.is_some()
    }

    pub fn order(&self) -> u64 {
        self.m * self.d
    }

    #[inline]
    pub fn multiply_probed<P: ProbeSink>(&self, a: &FmLabel, b: &FmLabel, probes: &mut P) -> FmLabel {
        let (i1, s1, j1) = (a.as_slice()[0], a.as_slice()[1], a.as_slice()[2]);
        let (i2, j2) = (b.as_slice()[0], b.as_slice()[2]);
        let i3 = ((i1 as u128 + s1 as u128 * i2 as u128) % self.m as u128) as u64;
        let j3 = (j1 + j2) % self.d;
        let s3 = match &self.powers {
            Some(p) => {
                probes.probe(ProbeFamily::Table);
                p[j3 as usize]
            }
            None => pow_mod(self.sigma1, j3, self.m),
        };
        FmLabel::new(&[i3, s3, j3])
    }

    pub fn validate(&self, l: &FmLabel) -> Result<()> {
        match l.as_slice() {
            &[i, s, j] if i < self.m && j < self.d && s == pow_mod(self.sigma1, j, self.m) => Ok(()),
            _ => Err(Error::InvalidParameter(format!("label {l} is not (i, r^j mod {}, j)", self.m))),
        }
    }

    pub fn account(&self, ledger: &mut SpaceLedger) {
        ledger.scalars("meta", &[self.m, self.d, self.sigma1]);
        if let Some(p) = &self.powers {
            ledger.array("sigma_powers", p, ledger.word_bits());
        }
    }

    pub fn write(&self, w: &mut Writer) {
        w.tag(b"FMZ1");
        w.u64(self.m);
        w.u64(self.d);
        w.u64(self.sigma1);
        if let Some(p) = &self.powers {
            w.uints(p, 8);
        }
    }

    pub fn read(r: &mut Reader) -> Result<Self> {
        r.expect_tag(b"FMZ1")?;
        let m = r.count("m", MAX_ORDER)? as u64;
        let d = r.count("d", MAX_ORDER)? as u64;
        let sigma1 = r.u64()?;
        let scheme = ZGroupScheme::new(m, d, sigma1).map_err(|e| Error::format(e.to_string()))?;
        if let Some(p) = &scheme.powers {
            if &r.u64s(p.len(), 8)? != p {
                return Err(Error::format("stored powers disagree with sigma1"));
            }
        }
        Ok(scheme)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_semidirect, make_symmetric, ElementId, SemidirectSpec};
    use crate::space::{NoProbes, ProbeLedger};

    #[test]
    fn symmetric_three_labels() {
        let s = ZGroupScheme::new(3, 2, 2).unwrap();
        let gh = FmLabel::new(&[1, 2, 1]);
        let g = FmLabel::new(&[1, 1, 0]);
        assert_eq!(s.multiply_probed(&gh, &g, &mut NoProbes).as_slice(), &[0, 2, 1]);
        let e = FmLabel::new(&[0, 1, 0]);
        assert_eq!(s.multiply_probed(&gh, &e, &mut NoProbes), gh);
        assert!(ZGroupScheme::new(3, 2, 1).is_ok());
        assert!(ZGroupScheme::new(7, 2, 2).is_err());
    }

    #[test]
    fn exhaustive_small_groups() {
        for g in
            [make_symmetric(3).unwrap(), make_semidirect(&SemidirectSpec::cyclic_by_cyclic(7, 3, 2).unwrap()).unwrap()]
        {
            let (s, labels) = ZGroupScheme::compress(&g).unwrap();
            for x in g.elements() {
                for y in g.elements() {
                    let z = s.multiply_probed(&labels.label(x), &labels.label(y), &mut NoProbes);
                    assert_eq!(labels.element(&z), Some(g.mult(x, y)));
                }
            }
            assert_eq!(labels.element(&labels.label(ElementId::new(1))), Some(ElementId::new(1)));
        }
    }

    #[test]
    fn large_d_uses_exponentiation() {
        let s = ZGroupScheme::new(101, 100, 2).unwrap();
        assert!(!s.uses_table());
        let mut probes = ProbeLedger::default();
        let z = s.multiply_probed(&FmLabel::new(&[0, 2, 1]), &FmLabel::new(&[5, pow_mod(2, 70, 101), 70]), &mut probes);
        assert_eq!(z.as_slice(), &[10, pow_mod(2, 71, 101), 71]);
        assert_eq!(probes.total(), 0);
    }
}
