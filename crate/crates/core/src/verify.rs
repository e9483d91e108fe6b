//! Checking a representation against a Cayley-table oracle.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{ElementId, Group};
use crate::space::Representation;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Random(usize),
}

impl FromStr for VerifyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "exhaustive" {
            return Ok(VerifyMode::Exhaustive);
        }
        s.strip_prefix("random:")
            .and_then(|n| n.parse().ok())
            .map(VerifyMode::Random)
            .ok_or_else(|| Error::InvalidParameter(format!("mode {s:?} is neither exhaustive nor random:N")))
    }
}

/// A pair whose product disagrees with the oracle.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub x: ElementId,
    pub y: ElementId,
    pub got: ElementId,
    pub want: ElementId,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * {} = {}, expected {}", self.x, self.y, self.got, self.want)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Compares `rep` with `oracle` on all pairs, or on `N` pairs drawn from a
/// generator seeded with `seed`; stops at the first mismatch.
pub fn verify<R, G>(rep: &R, oracle: &G, mode: VerifyMode, seed: u64) -> Result<VerifyOutcome>
where
    R: Representation + ?Sized,
    G: Group + ?Sized,
{
    let n = oracle.order();
    if rep.order() != n {
        return Err(Error::precondition(format!("representation has order {}, table has order {n}", rep.order())));
    }
    let pairs: Box<dyn Iterator<Item = (ElementId, ElementId)>> = match mode {
        VerifyMode::Exhaustive => {
            Box::new(oracle.elements().flat_map(move |x| (0..n).map(move |y| (x, ElementId::from_index(y)))))
        }
        VerifyMode::Random(count) => Box::new(random_pairs(n, count, seed).into_iter()),
    };
    let mut checked = 0;
    for (x, y) in pairs {
        checked += 1;
        let got = rep.multiply(x, y);
        let want = oracle.mult(x, y);
        if got != want {
            return Ok(VerifyOutcome { checked, counterexample: Some(Counterexample { x, y, got, want }) });
        }
    }
    Ok(VerifyOutcome { checked, counterexample: None })
}

fn random_pairs(n: usize, count: usize, seed: u64) -> Vec<(ElementId, ElementId)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (ElementId::from_index(rng.gen_range(0..n)), ElementId::from_index(rng.gen_range(0..n))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, GroupTable};
    use crate::space::{ProbeLedger, SpaceLedger};

    struct Broken(GroupTable);

    impl Representation for Broken {
        fn kind(&self) -> &'static str {
            "broken"
        }
        fn order(&self) -> usize {
            Group::order(&self.0)
        }
        fn multiply(&self, x: ElementId, y: ElementId) -> ElementId {
            if x.get() == 3 && y.get() == 2 {
                x
            } else {
                self.0.mult(x, y)
            }
        }
        fn multiply_counted(&self, x: ElementId, y: ElementId, _: &mut ProbeLedger) -> ElementId {
            self.multiply(x, y)
        }
        fn account(&self, _: &mut SpaceLedger) {}
    }

    #[test]
    fn modes() {
        assert_eq!("exhaustive".parse::<VerifyMode>().unwrap(), VerifyMode::Exhaustive);
        assert_eq!("random:10".parse::<VerifyMode>().unwrap(), VerifyMode::Random(10));
        assert!("random:x".parse::<VerifyMode>().is_err());
    }

    #[test]
    fn finds_counterexample() {
        let g = make_cyclic(4).unwrap();
        let ok = verify(&g, &g, VerifyMode::Exhaustive, 0).unwrap();
        assert!(ok.passed());
        assert_eq!(ok.checked, 16);
        let bad = verify(&Broken(g.clone()), &g, VerifyMode::Exhaustive, 0).unwrap();
        let c = bad.counterexample.unwrap();
        assert_eq!((c.x.get(), c.y.get(), c.got.get(), c.want.get()), (3, 2, 3, 4));
        let r = verify(&g, &g, VerifyMode::Random(100), 5).unwrap();
        assert_eq!(r.checked, 100);
        assert!(verify(&g, &make_cyclic(5).unwrap(), VerifyMode::Exhaustive, 0).is_err());
    }
}
