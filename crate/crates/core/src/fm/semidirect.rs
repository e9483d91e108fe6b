use crate::error::{Error, Result};
use crate::group::{find_abelian_by_cyclic, Group, Subgroup};
use crate::serial::{id_width, packed_width, Reader, Writer, MAX_ORDER};
use crate::space::{ProbeFamily, ProbeSink, SpaceLedger};

use super::abelian::AbelianScheme;
use super::cycles::CycleStructure;
use super::{FmLabel, Labeling};

/// `G = A ⋊ <c>` with `A` abelian and `π(a) = c a c^-1`; element `a c^i`
/// has label `(L_A(a), a, i)` with `a` a local id in `1..=|A|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectScheme {
    m: u64,
    cycle: CycleStructure,
    abelian: AbelianScheme,
    labels_of_a: Vec<u64>,
    /// Local id of each abelian label, indexed by its mixed-radix rank.
    backward: Vec<u32>,
}

impl SemidirectScheme {
    pub fn compress<G: Group + ?Sized>(g: &G) -> Result<(Self, Labeling)> {
        let (a_elems, c) = find_abelian_by_cyclic(g)
            .ok_or_else(|| Error::precondition("no abelian normal subgroup with a cyclic complement"))?;
        let a = Subgroup::new(g, a_elems);
        let size_a = a.order();
        let m = (g.order() / size_a) as u64;
        let (abelian, a_labels) = AbelianScheme::compress(&a)?;
        let perm: Vec<u32> = a
            .members()
            .iter()
            .map(|&x| a.local_id(g.conjugate(x, c)).map(|v| v.get()))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::precondition("subgroup is not normal"))?;
        let cycle = CycleStructure::build(&perm)?;
        let labels_of_a: Vec<u64> = a.elements().map(|x| a_labels.label(x).as_slice()[0]).collect();
        let mut backward = vec![0u32; size_a];
        for (i, &w) in labels_of_a.iter().enumerate() {
            backward[abelian.rank(w) as usize] = i as u32 + 1;
        }
        let mut labels = vec![None; g.order()];
        let mut ci = g.identity();
        for i in 0..m {
            for x in a.elements() {
                let y = g.mult(a.embed(x), ci);
                labels[y.index()] = Some(FmLabel::new(&[labels_of_a[x.index()], x.get() as u64, i]));
            }
            ci = g.mult(ci, c);
        }
        let labels = labels
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::precondition("complement does not meet every coset"))?;
        Ok((SemidirectScheme { m, cycle, abelian, labels_of_a, backward }, Labeling::new(labels)?))
    }

    pub fn normal_order(&self) -> usize {
        self.labels_of_a.len()
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.m * self.normal_order() as u64
    }

    #[inline]
    pub fn multiply_probed<P: ProbeSink>(&self, a: &FmLabel, b: &FmLabel, probes: &mut P) -> FmLabel {
        let (l1, i1) = (a.as_slice()[0], a.as_slice()[2]);
        let (a2, i2) = (b.as_slice()[1], b.as_slice()[2]);
        let moved = self.cycle.apply_power_probed(a2 as u32, i1, probes);
        probes.probe(ProbeFamily::Table);
        let l3 = self.abelian.mult_words(l1, self.labels_of_a[moved as usize - 1]);
        probes.probe(ProbeFamily::Backward);
        let a3 = self.backward[self.abelian.rank(l3) as usize];
        let i3 = (i1 + i2) % self.m;
        FmLabel::new(&[l3, a3 as u64, i3])
    }

    pub fn validate(&self, l: &FmLabel) -> Result<()> {
        match l.as_slice() {
            &[w, a, i]
                if a >= 1
                    && a as usize <= self.normal_order()
                    && i < self.m
                    && self.labels_of_a[a as usize - 1] == w =>
            {
                Ok(())
            }
            _ => Err(Error::InvalidParameter(format!("label {l} is not (L(a), a, i)"))),
        }
    }

    pub fn account(&self, ledger: &mut SpaceLedger) {
        ledger.scalars("m", &[self.m]);
        let w = ledger.word_bits();
        self.cycle.account(ledger);
        ledger.array("labels_of_a", &self.labels_of_a, self.abelian.total_bits());
        ledger.array("backward", &self.backward, w);
        let mut inner = SpaceLedger::new(self.normal_order());
        self.abelian.account(&mut inner);
        ledger.nested("A", inner);
    }

    pub fn write(&self, w: &mut Writer) {
        w.tag(b"FMS1");
        w.u64(self.m);
        self.cycle.write(w);
        self.abelian.write_body(w);
        w.uints(&self.labels_of_a, packed_width(self.abelian.total_bits()));
        w.uints(&self.backward, id_width(self.normal_order()));
    }

    pub fn read(r: &mut Reader) -> Result<Self> {
        r.expect_tag(b"FMS1")?;
        let m = r.count("m", MAX_ORDER)? as u64;
        let cycle = CycleStructure::read(r)?;
        let abelian = AbelianScheme::read_body(r)?;
        let size_a = cycle.len();
        if m == 0 || abelian.order() != size_a as u64 {
            return Err(Error::format("normal subgroup sizes disagree"));
        }
        let labels_of_a = r.u64s(size_a, packed_width(abelian.total_bits()))?;
        let backward = r.ids(size_a, size_a)?;
        for (i, &w) in labels_of_a.iter().enumerate() {
            abelian.validate_word(w).map_err(|e| Error::format(e.to_string()))?;
            if backward[abelian.rank(w) as usize] as usize != i + 1 {
                return Err(Error::format(format!("backward map misses element {}", i + 1)));
            }
        }
        Ok(SemidirectScheme { m, cycle, abelian, labels_of_a, backward })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fm::zgroup::ZGroupScheme;
    use crate::group::{make_alternating, make_cyclic, make_direct, make_quaternion, make_symmetric, GroupTable};
    use crate::space::NoProbes;

    fn sweep(g: &GroupTable) -> SemidirectScheme {
        let (s, labels) = SemidirectScheme::compress(g).unwrap();
        for x in g.elements() {
            for y in g.elements() {
                let z = s.multiply_probed(&labels.label(x), &labels.label(y), &mut NoProbes);
                assert_eq!(labels.element(&z), Some(g.mult(x, y)));
            }
        }
        s
    }

    #[test]
    fn alternating_four() {
        let s = sweep(&make_alternating(4).unwrap());
        assert_eq!((s.normal_order(), s.m()), (4, 3));
    }

    #[test]
    fn agrees_with_zgroup_scheme_on_s3() {
        let g = make_symmetric(3).unwrap();
        sweep(&g);
        let (sd, l1) = SemidirectScheme::compress(&g).unwrap();
        let (zg, l2) = ZGroupScheme::compress(&g).unwrap();
        for x in g.elements() {
            for y in g.elements() {
                let a = l1.element(&sd.multiply_probed(&l1.label(x), &l1.label(y), &mut NoProbes));
                let b = l2.element(&zg.multiply_probed(&l2.label(x), &l2.label(y), &mut NoProbes));
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn abelian_groups_and_failures() {
        let s = sweep(&make_cyclic(12).unwrap());
        assert_eq!(s.m(), 1);
        sweep(&make_direct(&make_cyclic(2).unwrap(), &make_cyclic(6).unwrap()).unwrap());
        assert!(SemidirectScheme::compress(&make_symmetric(4).unwrap()).is_err());
        let q8c3 = make_direct(&make_quaternion(), &make_cyclic(3).unwrap()).unwrap();
        assert!(SemidirectScheme::compress(&q8c3).is_err());
    }
}
