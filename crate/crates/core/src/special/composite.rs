use crate::block::BlockRep;
use crate::cube::greedy_cube_sequence;
use crate::error::{Error, Result};
use crate::group::{
    element_order, find_semidirect_decomposition, find_zgroup_decomposition, ElementId, Group, GroupTable,
    SemidirectSpec,
};
use crate::serial::{id_width, Reader, Writer, MAX_ORDER};
use crate::space::{NoProbes, ProbeFamily, ProbeLedger, ProbeSink, Representation, SpaceLedger};

use super::fbmap::ForwardBackwardMap;

/// Multiplication on one factor, in that factor's coordinates.
///
/// A cyclic factor uses exponents and needs no storage beyond its order;
/// other factors use `local id - 1` and a nested representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorRep {
    Cyclic { order: u64 },
    Block(Box<BlockRep>),
    Composite(Box<CompositeRep>),
}

impl FactorRep {
    /// Chooses a representation for a standalone factor group, returning it
    /// with the coordinate of every element.
    pub fn for_table(t: &GroupTable) -> Result<(FactorRep, Vec<u32>)> {
        let n = Group::order(t);
        if let Some(x) = t.elements().find(|&x| element_order(t, x) == n as u64) {
            let mut coords = vec![0u32; n];
            let mut y = t.identity();
            for i in 0..n {
                coords[y.index()] = i as u32;
                y = t.mult(y, x);
            }
            return Ok((FactorRep::Cyclic { order: n as u64 }, coords));
        }
        let ids = (0..n as u32).collect();
        if let Ok(rep) = CompositeRep::build_decomposed(t) {
            return Ok((FactorRep::Composite(Box::new(rep)), ids));
        }
        let (seq, _) = greedy_cube_sequence(t);
        let rep = BlockRep::build(t, &seq, seq.k().div_ceil(2).max(1))?;
        Ok((FactorRep::Block(Box::new(rep)), ids))
    }

    pub fn order(&self) -> usize {
        match self {
            FactorRep::Cyclic { order } => *order as usize,
            FactorRep::Block(r) => r.order(),
            FactorRep::Composite(r) => r.order(),
        }
    }

    #[inline]
    fn mult<P: ProbeSink>(&self, a: u32, b: u32, probes: &mut P) -> u32 {
        match self {
            FactorRep::Cyclic { order } => ((a as u64 + b as u64) % order) as u32,
            FactorRep::Block(r) => {
                r.multiply_probed(ElementId::from_index(a as usize), ElementId::from_index(b as usize), probes).get()
                    - 1
            }
            FactorRep::Composite(r) => {
                r.query(ElementId::from_index(a as usize), ElementId::from_index(b as usize), probes).get() - 1
            }
        }
    }

    fn describe(&self) -> String {
        match self {
            FactorRep::Cyclic { order } => format!("C{order}"),
            FactorRep::Block(r) => format!("block({})", r.order()),
            FactorRep::Composite(r) => format!("({})", r.params()),
        }
    }

    fn account(&self, prefix: &str, ledger: &mut SpaceLedger) {
        match self {
            FactorRep::Cyclic { order } => ledger.scalars(&format!("{prefix}.order"), &[*order]),
            FactorRep::Block(r) => {
                let mut inner = SpaceLedger::new(r.order());
                r.account(&mut inner);
                ledger.nested(prefix, inner);
            }
            FactorRep::Composite(r) => {
                let mut inner = SpaceLedger::new(r.order());
                r.account(&mut inner);
                ledger.nested(prefix, inner);
            }
        }
    }

    fn write(&self, w: &mut Writer) {
        match self {
            FactorRep::Cyclic { order } => {
                w.tag(b"EXP1");
                w.u64(*order);
            }
            FactorRep::Block(r) => r.write(w),
            FactorRep::Composite(r) => r.write(w),
        }
    }

    fn read(r: &mut Reader, depth: usize) -> Result<Self> {
        match r.peek(4) {
            Some(b"EXP1") => {
                r.expect_tag(b"EXP1")?;
                let order = r.count("factor order", MAX_ORDER)? as u64;
                if order == 0 {
                    return Err(Error::format("empty cyclic factor"));
                }
                Ok(FactorRep::Cyclic { order })
            }
            Some(b"BREP") => Ok(FactorRep::Block(Box::new(BlockRep::read(r)?))),
            Some(b"CMP1") => Ok(FactorRep::Composite(Box::new(CompositeRep::read_nested(r, depth + 1)?))),
            other => Err(Error::format(format!("unknown factor tag {:?}", other.map(String::from_utf8_lossy)))),
        }
    }
}

/// `G = A ⋊ B` stored as a forward/backward map onto `(A, B)` coordinates,
/// the action arrays `T_b`, and representations of both factors.
///
/// `(a1, b1)(a2, b2) = (a1 T_{b1}[a2], b1 b2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeRep {
    map: ForwardBackwardMap,
    /// `T_b[a]` at `b * |A| + a`.
    action: Vec<u32>,
    a: FactorRep,
    b: FactorRep,
}

const MAX_DEPTH: usize = 16;

impl CompositeRep {
    /// `pairing[g] = (a, b)` in the local ids of `spec` with `g = a b`;
    /// `a` and `b` carry each factor's representation and coordinates.
    pub fn build<G: Group + ?Sized>(
        g: &G,
        spec: &SemidirectSpec,
        pairing: &[(ElementId, ElementId)],
        a: (FactorRep, Vec<u32>),
        b: (FactorRep, Vec<u32>),
    ) -> Result<Self> {
        let (size_a, size_b) = (Group::order(&spec.a), Group::order(&spec.b));
        let ((rep_a, ca), (rep_b, cb)) = (a, b);
        if rep_a.order() != size_a || rep_b.order() != size_b || ca.len() != size_a || cb.len() != size_b {
            return Err(Error::InvalidParameter(format!(
                "factor representations of orders {} and {} do not match {size_a} and {size_b}",
                rep_a.order(),
                rep_b.order()
            )));
        }
        if pairing.len() != g.order() || size_a * size_b != g.order() {
            return Err(Error::InvalidParameter("pairing does not cover the group".into()));
        }
        let coords: Vec<Vec<u32>> = pairing.iter().map(|&(x, y)| vec![ca[x.index()], cb[y.index()]]).collect();
        let map = ForwardBackwardMap::new(vec![size_a as u64, size_b as u64], &coords)?;
        let mut action = vec![0u32; size_a * size_b];
        for y in spec.b.elements() {
            for x in spec.a.elements() {
                action[cb[y.index()] as usize * size_a + ca[x.index()] as usize] = ca[spec.phi(y, x).index()];
            }
        }
        Ok(CompositeRep { map, action, a: rep_a, b: rep_b })
    }

    /// Z-group as `C_m ⋊ C_d` in exponent coordinates.
    pub fn build_zgroup<G: Group + ?Sized>(g: &G) -> Result<Self> {
        let dec = find_zgroup_decomposition(g)?;
        let (m, d, r) = (dec.m, dec.d, dec.r);
        let coords: Vec<Vec<u32>> = dec.exponents(g).into_iter().map(|(i, j)| vec![i, j]).collect();
        let map = ForwardBackwardMap::new(vec![m, d], &coords)?;
        let mut action = Vec::with_capacity((m * d) as usize);
        let mut rj = 1 % m;
        for _ in 0..d {
            action.extend((0..m).map(|i| (i * rj % m) as u32));
            rj = rj * r % m;
        }
        Ok(CompositeRep { map, action, a: FactorRep::Cyclic { order: m }, b: FactorRep::Cyclic { order: d } })
    }

    /// Searches a semidirect decomposition and represents both factors.
    pub fn build_decomposed<G: Group + ?Sized>(g: &G) -> Result<Self> {
        let dec = find_semidirect_decomposition(g)
            .ok_or_else(|| Error::precondition("no nontrivial semidirect decomposition found"))?;
        let (spec, pairing) = dec.to_spec(g)?;
        let a = FactorRep::for_table(&spec.a)?;
        let b = FactorRep::for_table(&spec.b)?;
        CompositeRep::build(g, &spec, &pairing, a, b)
    }

    pub fn factors(&self) -> (&FactorRep, &FactorRep) {
        (&self.a, &self.b)
    }

    #[inline]
    pub(crate) fn query<P: ProbeSink>(&self, x: ElementId, y: ElementId, probes: &mut P) -> ElementId {
        let w1 = self.map.forward_word(x, probes);
        let w2 = self.map.forward_word(y, probes);
        let (a1, b1) = (self.map.field(w1, 0), self.map.field(w1, 1));
        let (a2, b2) = (self.map.field(w2, 0), self.map.field(w2, 1));
        probes.probe(ProbeFamily::Action);
        let t = self.action[b1 as usize * self.a.order() + a2 as usize];
        let a3 = self.a.mult(a1, t, probes);
        let b3 = self.b.mult(b1, b2, probes);
        self.map.backward(&[a3, b3], probes)
    }

    pub fn write(&self, w: &mut Writer) {
        w.tag(b"CMP1");
        self.map.write(w);
        w.uints(&self.action, id_width(self.a.order()));
        self.a.write(w);
        self.b.write(w);
    }

    pub fn read(r: &mut Reader) -> Result<Self> {
        Self::read_nested(r, 0)
    }

    fn read_nested(r: &mut Reader, depth: usize) -> Result<Self> {
        if depth > MAX_DEPTH {
            return Err(Error::format("composite nesting too deep"));
        }
        r.expect_tag(b"CMP1")?;
        let map = ForwardBackwardMap::read(r)?;
        if map.k() != 2 {
            return Err(Error::format(format!("composite map has {} components", map.k())));
        }
        let (size_a, size_b) = (map.sizes()[0] as usize, map.sizes()[1] as usize);
        let action = r.u32s(size_a * size_b, id_width(size_a))?;
        let mut seen = vec![false; size_a];
        for row in action.chunks(size_a) {
            seen.fill(false);
            for &v in row {
                if v as usize >= size_a || std::mem::replace(&mut seen[v as usize], true) {
                    return Err(Error::format("action array is not a permutation"));
                }
            }
        }
        let a = FactorRep::read(r, depth)?;
        let b = FactorRep::read(r, depth)?;
        if a.order() != size_a || b.order() != size_b {
            return Err(Error::format("factor orders disagree with the coordinate sizes"));
        }
        Ok(CompositeRep { map, action, a, b })
    }
}

impl Representation for CompositeRep {
    fn kind(&self) -> &'static str {
        "composite"
    }

    fn order(&self) -> usize {
        self.a.order() * self.b.order()
    }

    fn params(&self) -> String {
        format!("{}x{}", self.a.describe(), self.b.describe())
    }

    fn multiply(&self, x: ElementId, y: ElementId) -> ElementId {
        self.query(x, y, &mut NoProbes)
    }

    fn multiply_counted(&self, x: ElementId, y: ElementId, probes: &mut ProbeLedger) -> ElementId {
        self.query(x, y, probes)
    }

    fn account(&self, ledger: &mut SpaceLedger) {
        self.map.account(ledger);
        ledger.array("action", &self.action, ledger.word_bits());
        ledger.scalars("meta", &[self.order() as u64]);
        self.a.account("A", ledger);
        self.b.account("B", ledger);
    }
}
