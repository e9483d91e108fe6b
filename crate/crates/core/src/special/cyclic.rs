use crate::error::{Error, Result};
use crate::group::{element_order, ElementId, Group};
use crate::serial::{id_width, Reader, Writer, MAX_ORDER};
use crate::space::{NoProbes, ProbeFamily, ProbeLedger, ProbeSink, Representation, SpaceLedger};

/// `F[g^i] = i` and `B[i] = g^i` for a generator `g`; `g^i g^j = B[(i + j) mod n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicRep {
    forward: Vec<u32>,
    backward: Vec<u32>,
}

impl CyclicRep {
    pub fn build<G: Group + ?Sized>(g: &G, generator: ElementId) -> Result<Self> {
        let n = g.order();
        let ord = element_order(g, generator);
        if ord != n as u64 {
            return Err(Error::precondition(format!("element {generator} has order {ord}, not {n}")));
        }
        let mut forward = vec![0u32; n];
        let mut backward = Vec::with_capacity(n);
        let mut x = g.identity();
        for i in 0..n {
            forward[x.index()] = i as u32;
            backward.push(x.get());
            x = g.mult(x, generator);
        }
        Ok(CyclicRep { forward, backward })
    }

    /// Uses the lowest-id generator.
    pub fn for_group<G: Group + ?Sized>(g: &G) -> Result<Self> {
        let n = g.order() as u64;
        let generator = g
            .elements()
            .find(|&x| element_order(g, x) == n)
            .ok_or_else(|| Error::precondition("not cyclic: no element of full order"))?;
        CyclicRep::build(g, generator)
    }

    pub fn generator(&self) -> ElementId {
        ElementId::new(self.backward[1 % self.backward.len()])
    }

    /// Exponent `i` of `g^i`.
    pub fn exponent(&self, x: ElementId) -> u32 {
        self.forward[x.index()]
    }

    #[inline]
    fn query<P: ProbeSink>(&self, x: ElementId, y: ElementId, probes: &mut P) -> ElementId {
        let n = self.backward.len() as u32;
        probes.probe_n(ProbeFamily::Forward, 2);
        let s = self.forward[x.index()] + self.forward[y.index()];
        probes.probe(ProbeFamily::Backward);
        ElementId::new(self.backward[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn write(&self, w: &mut Writer) {
        let n = self.backward.len();
        w.tag(b"CYC1");
        w.u64(n as u64);
        w.uints(&self.forward, id_width(n));
        w.uints(&self.backward, id_width(n));
    }

    pub fn read(r: &mut Reader) -> Result<Self> {
        r.expect_tag(b"CYC1")?;
        let n = r.count("n", MAX_ORDER)?;
        if n == 0 {
            return Err(Error::format("empty cyclic group"));
        }
        let forward = r.u32s(n, id_width(n))?;
        let backward = r.ids(n, n)?;
        for (i, &b) in backward.iter().enumerate() {
            if forward[b as usize - 1] as usize != i {
                return Err(Error::format(format!("F[B[{i}]] != {i}")));
            }
        }
        Ok(CyclicRep { forward, backward })
    }
}

impl Representation for CyclicRep {
    fn kind(&self) -> &'static str {
        "cyclic"
    }

    fn order(&self) -> usize {
        self.backward.len()
    }

    fn params(&self) -> String {
        format!("generator={}", self.generator())
    }

    fn multiply(&self, x: ElementId, y: ElementId) -> ElementId {
        self.query(x, y, &mut NoProbes)
    }

    fn multiply_counted(&self, x: ElementId, y: ElementId, probes: &mut ProbeLedger) -> ElementId {
        self.query(x, y, probes)
    }

    fn account(&self, ledger: &mut SpaceLedger) {
        let w = ledger.word_bits();
        ledger.array("forward", &self.forward, w);
        ledger.array("backward", &self.backward, w);
        ledger.scalars("meta", &[self.backward.len() as u64]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_quaternion};
    use crate::space::{measure, probe_counted_multiply};

    #[test]
    fn index_arithmetic() {
        let g = make_cyclic(12).unwrap();
        let rep = CyclicRep::build(&g, ElementId::new(2)).unwrap();
        let g7 = ElementId::new(8);
        let g8 = ElementId::new(9);
        assert_eq!(rep.exponent(g7), 7);
        let (z, probes) = probe_counted_multiply(&rep, g7, g8);
        assert_eq!(z, ElementId::new(4));
        assert_eq!(probes.get(ProbeFamily::Forward), 2);
        assert_eq!(probes.get(ProbeFamily::Backward), 1);
        assert_eq!(measure(&rep).slots, 25);
    }

    #[test]
    fn other_generators() {
        let g = make_cyclic(10).unwrap();
        let rep = CyclicRep::build(&g, ElementId::new(4)).unwrap();
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(rep.multiply(x, y), g.mult(x, y));
            }
        }
        assert!(CyclicRep::build(&g, ElementId::new(3)).is_err());
        assert!(CyclicRep::for_group(&make_quaternion()).is_err());
    }

    #[test]
    fn round_trip() {
        let g = make_cyclic(7).unwrap();
        let rep = CyclicRep::for_group(&g).unwrap();
        let mut w = Writer::new();
        rep.write(&mut w);
        let mut bytes = w.into_bytes();
        assert_eq!(CyclicRep::read(&mut Reader::new(&bytes)).unwrap(), rep);
        let last = bytes.len() - 1;
        bytes[last] = 1;
        assert!(CyclicRep::read(&mut Reader::new(&bytes)).is_err());
    }
}
