//! Slot and probe accounting.
//!
//! Space is counted in slots: one stored integer of at most `O(log n)` bits.
//! Each representation declares every array it stores through a
//! [`SpaceLedger`], which checks that the values fit their declared width.
//! Queries report each array read to a [`ProbeSink`].

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{ElementId, Group, GroupTable};

/// Bits needed to write `v` in binary; `bits_for(0) == 0`.
pub fn bits_for(v: u64) -> u32 {
    64 - v.leading_zeros()
}

/// `value < 2^width_bits`.
pub fn assert_fits(value: u64, width_bits: u32) -> bool {
    width_bits >= 64 || value < (1u64 << width_bits)
}

/// Array families a query can read.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProbeFamily {
    WordIndex,
    MultArray,
    Forward,
    Backward,
    Action,
    Table,
    Cycle,
}

impl ProbeFamily {
    pub const ALL: [ProbeFamily; 7] = [
        ProbeFamily::WordIndex,
        ProbeFamily::MultArray,
        ProbeFamily::Forward,
        ProbeFamily::Backward,
        ProbeFamily::Action,
        ProbeFamily::Table,
        ProbeFamily::Cycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProbeFamily::WordIndex => "word_index",
            ProbeFamily::MultArray => "mult_array",
            ProbeFamily::Forward => "forward",
            ProbeFamily::Backward => "backward",
            ProbeFamily::Action => "action",
            ProbeFamily::Table => "table",
            ProbeFamily::Cycle => "cycle",
        }
    }
}

pub trait ProbeSink {
    fn probe(&mut self, family: ProbeFamily);

    fn probe_n(&mut self, family: ProbeFamily, count: u32) {
        for _ in 0..count {
            self.probe(family);
        }
    }
}

/// Discards probes; used by the uninstrumented query path.
#[derive(Default, Copy, Clone, Debug)]
pub struct NoProbes;

impl ProbeSink for NoProbes {
    #[inline(always)]
    fn probe(&mut self, _: ProbeFamily) {}
}

/// Per-query read counts by array family.
#[derive(Default, Clone, PartialEq, Eq)]
pub struct ProbeLedger {
    counts: [u32; 7],
}

impl ProbeLedger {
    pub fn get(&self, family: ProbeFamily) -> u32 {
        self.counts[family as usize]
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn reset(&mut self) {
        self.counts = [0; 7];
    }
}

impl ProbeSink for ProbeLedger {
    #[inline]
    fn probe(&mut self, family: ProbeFamily) {
        self.counts[family as usize] += 1;
    }
}

impl fmt::Debug for ProbeLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ProbeLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for fam in ProbeFamily::ALL {
            let c = self.get(fam);
            if c > 0 {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{}={c}", fam.name())?;
            }
        }
        if first {
            f.write_str("none")?;
        }
        Ok(())
    }
}

/// One declared array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrayUsage {
    pub name: String,
    pub slots: usize,
    /// Width the values are declared to fit.
    pub width_bits: u32,
    /// Width of the cells actually allocated.
    pub physical_bits: u32,
    pub fits: bool,
}

/// Collects the arrays of a representation.
#[derive(Clone, Debug)]
pub struct SpaceLedger {
    n: usize,
    arrays: Vec<ArrayUsage>,
}

impl SpaceLedger {
    pub fn new(n: usize) -> Self {
        SpaceLedger { n, arrays: Vec::new() }
    }

    /// Conceptual word width, `ceil(log2(n + 1))`.
    pub fn word_bits(&self) -> u32 {
        bits_for(self.n as u64).max(1)
    }

    pub fn array<T: Copy + Into<u64>>(&mut self, name: &str, values: &[T], width_bits: u32) {
        let fits = values.iter().all(|&v| assert_fits(v.into(), width_bits));
        self.arrays.push(ArrayUsage {
            name: name.to_string(),
            slots: values.len(),
            width_bits,
            physical_bits: 8 * std::mem::size_of::<T>() as u32,
            fits,
        });
    }

    /// Metadata words, each charged one slot of the conceptual width.
    pub fn scalars(&mut self, name: &str, values: &[u64]) {
        let width = self.word_bits();
        let fits = values.iter().all(|&v| assert_fits(v, width));
        self.arrays.push(ArrayUsage {
            name: name.to_string(),
            slots: values.len(),
            width_bits: width,
            physical_bits: 64,
            fits,
        });
    }

    /// Charges a nested structure, prefixing its array names.
    pub fn nested(&mut self, prefix: &str, inner: SpaceLedger) {
        for mut a in inner.arrays {
            a.name = format!("{prefix}.{}", a.name);
            self.arrays.push(a);
        }
    }

    pub fn finish(self) -> SpaceReport {
        let n = self.n;
        let slots: usize = self.arrays.iter().map(|a| a.slots).sum();
        let total_bits = self.arrays.iter().map(|a| a.slots as u64 * a.width_bits as u64).sum();
        let physical_bits = self.arrays.iter().map(|a| a.slots as u64 * a.physical_bits as u64).sum();
        let baseline = (n as u64) * (n as u64);
        SpaceReport {
            n,
            slots,
            bits_per_slot: bits_for(n as u64).max(1),
            total_bits,
            physical_bits,
            baseline_cayley_slots: baseline,
            ratio: slots as f64 / baseline as f64,
            arrays: self.arrays,
        }
    }
}

/// Exact space ledger of a finished representation.
#[derive(Clone, Debug)]
pub struct SpaceReport {
    pub n: usize,
    pub slots: usize,
    pub bits_per_slot: u32,
    /// Sum of `slots * declared width` over all arrays.
    pub total_bits: u64,
    pub physical_bits: u64,
    pub baseline_cayley_slots: u64,
    pub ratio: f64,
    pub arrays: Vec<ArrayUsage>,
}

impl SpaceReport {
    /// Every stored value fits its declared width.
    pub fn all_fit(&self) -> bool {
        self.arrays.iter().all(|a| a.fits)
    }

    pub fn slots_of(&self, name: &str) -> usize {
        self.arrays.iter().filter(|a| a.name == name).map(|a| a.slots).sum()
    }

    pub const CSV_HEADER: &'static str = "rep_type,n,params,slots,bits_per_slot,ratio,probes_min,probes_max";

    pub fn csv_row(&self, rep_type: &str, params: &str, probes: (u32, u32)) -> String {
        format!(
            "{rep_type},{},{},{},{},{:.6},{},{}",
            self.n,
            params.replace(',', ";"),
            self.slots,
            self.bits_per_slot,
            self.ratio,
            probes.0,
            probes.1
        )
    }
}

/// An element-level multiplication structure.
pub trait Representation {
    /// Short kind name, e.g. `block`.
    fn kind(&self) -> &'static str;
    fn order(&self) -> usize;
    /// Human-readable build parameters.
    fn params(&self) -> String {
        String::new()
    }
    fn multiply(&self, x: ElementId, y: ElementId) -> ElementId;
    fn multiply_counted(&self, x: ElementId, y: ElementId, probes: &mut ProbeLedger) -> ElementId;
    fn account(&self, ledger: &mut SpaceLedger);
}

pub fn measure<R: Representation + ?Sized>(rep: &R) -> SpaceReport {
    let mut ledger = SpaceLedger::new(rep.order());
    rep.account(&mut ledger);
    ledger.finish()
}

pub fn probe_counted_multiply<R: Representation + ?Sized>(
    rep: &R,
    x: ElementId,
    y: ElementId,
) -> (ElementId, ProbeLedger) {
    let mut ledger = ProbeLedger::default();
    let z = rep.multiply_counted(x, y, &mut ledger);
    (z, ledger)
}

/// Pairs used for probe statistics: every pair when `n^2 <= limit`,
/// otherwise `limit` pairs drawn with a seeded generator.
pub fn sample_pairs(n: usize, limit: usize, seed: u64) -> Vec<(ElementId, ElementId)> {
    if n * n <= limit {
        let mut out = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                out.push((ElementId::from_index(x), ElementId::from_index(y)));
            }
        }
        out
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..limit)
            .map(|_| (ElementId::from_index(rng.gen_range(0..n)), ElementId::from_index(rng.gen_range(0..n))))
            .collect()
    }
}

/// Minimum and maximum total probes over `pairs`.
pub fn probe_range<R: Representation + ?Sized>(rep: &R, pairs: &[(ElementId, ElementId)]) -> (u32, u32) {
    let mut lo = u32::MAX;
    let mut hi = 0;
    for &(x, y) in pairs {
        let (_, ledger) = probe_counted_multiply(rep, x, y);
        lo = lo.min(ledger.total());
        hi = hi.max(ledger.total());
    }
    if pairs.is_empty() {
        lo = 0;
    }
    (lo, hi)
}

impl Representation for GroupTable {
    fn kind(&self) -> &'static str {
        "cayley"
    }

    fn order(&self) -> usize {
        Group::order(self)
    }

    fn multiply(&self, x: ElementId, y: ElementId) -> ElementId {
        self.mult(x, y)
    }

    fn multiply_counted(&self, x: ElementId, y: ElementId, probes: &mut ProbeLedger) -> ElementId {
        probes.probe(ProbeFamily::Table);
        self.mult(x, y)
    }

    fn account(&self, ledger: &mut SpaceLedger) {
        let w = ledger.word_bits();
        let n = Group::order(self);
        ledger.array("table", self.rows(), w);
        let inverse: Vec<u32> = self.elements().map(|x| self.inverse(x).get()).collect();
        ledger.array("inverse", &inverse, w);
        ledger.scalars("meta", &[n as u64, self.identity().get() as u64]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_cyclic;

    #[test]
    fn fits() {
        let n = 16u64;
        let w = bits_for(n - 1);
        assert!(assert_fits(n - 1, w));
        assert!(!assert_fits(n, w));
        assert!(assert_fits(u64::MAX, 64));
        assert_eq!(bits_for(0), 0);
        assert_eq!(bits_for(1), 1);
        assert_eq!(bits_for(255), 8);
        assert_eq!(bits_for(256), 9);
    }

    #[test]
    fn cayley_table_ledger() {
        let g = make_cyclic(10).unwrap();
        let r = measure(&g);
        assert_eq!(r.slots, 100 + 10 + 2);
        assert_eq!(r.bits_per_slot, 4);
        assert!(r.all_fit());
        assert_eq!(r.baseline_cayley_slots, 100);
        let (z, probes) = probe_counted_multiply(&g, ElementId::new(3), ElementId::new(4));
        assert_eq!(z, ElementId::new(6));
        assert_eq!(probes.get(ProbeFamily::Table), 1);
        assert_eq!(probes.to_string(), "table=1");
    }

    #[test]
    fn ledger_detects_overflowing_values() {
        let mut l = SpaceLedger::new(4);
        l.array("ok", &[1u32, 2, 3, 4], 3);
        assert!(l.clone().finish().all_fit());
        l.array("bad", &[8u32], 3);
        assert!(!l.finish().all_fit());
    }

    #[test]
    fn sampled_pairs_are_deterministic() {
        assert_eq!(sample_pairs(3, 100, 0).len(), 9);
        let a = sample_pairs(100, 50, 7);
        assert_eq!(a, sample_pairs(100, 50, 7));
        assert_eq!(a.len(), 50);
    }
}
