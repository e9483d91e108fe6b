use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::group::{is_abelian, is_simple, ElementId, Group};
use crate::serial::{id_width, packed_width, Reader, Writer, MAX_ORDER};
use crate::space::{bits_for, NoProbes, ProbeFamily, ProbeLedger, ProbeSink, Representation, SpaceLedger};

use super::cyclic::CyclicRep;

pub const DEFAULT_MAX_GENERATORS: usize = 4;
pub const MAX_GENERATORS: usize = 14;

const LENGTH_BITS: u32 = 6;

/// Shortest Cayley-graph paths over a small generating set `S`, with
/// `M[g][i] = g s_i`; `g h` replays the path of `h` from `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathRep {
    generators: Vec<ElementId>,
    diameter: u32,
    /// Low 6 bits hold the length, then one label per step.
    paths: Vec<u64>,
    /// `M[g][i]` at `g * |S| + i`.
    table: Vec<u32>,
}

/// Simple groups: prime-order groups are cyclic, the rest use [`PathRep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpleRep {
    Cyclic(CyclicRep),
    Paths(PathRep),
}

/// Diameter, generators and BFS parents of a generating-set candidate.
type Candidate = (u32, Vec<ElementId>, Vec<(u32, u8)>);
/// Breadth-first distances and first-discovered parents over right
/// multiplication by `gens`; `None` when `gens` does not generate or some
/// distance exceeds `bound`.
fn bfs<G: Group + ?Sized>(g: &G, gens: &[ElementId], bound: u32) -> Option<(u32, Vec<(u32, u8)>)> {
    let n = g.order();
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![(0u32, 0u8); n];
    let e = g.identity();
    dist[e.index()] = 0;
    let mut queue = VecDeque::from([e]);
    let mut reached = 1;
    let mut diameter = 0;
    while let Some(x) = queue.pop_front() {
        let d = dist[x.index()];
        for (i, &s) in gens.iter().enumerate() {
            let y = g.mult(x, s);
            if dist[y.index()] == u32::MAX {
                if d + 1 > bound {
                    return None;
                }
                dist[y.index()] = d + 1;
                parent[y.index()] = (x.get(), i as u8);
                diameter = d + 1;
                reached += 1;
                queue.push_back(y);
            }
        }
    }
    (reached == n).then_some((diameter, parent))
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl PathRep {
    /// Smallest generating set of size at most `max_generators` (fewest
    /// generators, then least diameter, then lexicographically least ids).
    pub fn build<G: Group + ?Sized>(g: &G, max_generators: usize) -> Result<Self> {
        if max_generators == 0 || max_generators > MAX_GENERATORS {
            return Err(Error::InvalidParameter(format!(
                "generator bound {max_generators} outside 1..={MAX_GENERATORS}"
            )));
        }
        let candidates: Vec<ElementId> = g.elements().filter(|&x| x != g.identity()).collect();
        for size in 1..=max_generators.min(candidates.len()) {
            let label_bits = bits_for(size as u64 - 1).max(1);
            let max_len = (64 - LENGTH_BITS) / label_bits;
            let mut best: Option<Candidate> = None;
            let mut combo: Vec<usize> = (0..size).collect();
            loop {
                let gens: Vec<ElementId> = combo.iter().map(|&i| candidates[i]).collect();
                let bound = best.as_ref().map_or(max_len, |b| b.0 - 1);
                if let Some((d, parent)) = bfs(g, &gens, bound) {
                    best = Some((d, gens, parent));
                    if d <= 1 {
                        break;
                    }
                }
                if !next_combination(&mut combo, candidates.len()) {
                    break;
                }
            }
            if let Some((diameter, generators, parent)) = best {
                return Ok(Self::assemble(g, generators, diameter, &parent));
            }
        }
        if g.order() == 1 {
            return Ok(Self::assemble(g, Vec::new(), 0, &[(0, 0)]));
        }
        Err(Error::precondition(format!("no generating set of size at most {max_generators} with a packable diameter")))
    }

    fn assemble<G: Group + ?Sized>(g: &G, generators: Vec<ElementId>, diameter: u32, parent: &[(u32, u8)]) -> Self {
        let n = g.order();
        let s = generators.len();
        let label_bits = bits_for(s.saturating_sub(1) as u64).max(1);
        let mut paths = vec![0u64; n];
        let mut done = vec![false; n];
        done[g.identity().index()] = true;
        fn fill(x: usize, parent: &[(u32, u8)], done: &mut [bool], paths: &mut [u64], bits: u32) -> u64 {
            if done[x] {
                return paths[x];
            }
            let (p, label) = parent[x];
            let up = fill(p as usize - 1, parent, done, paths, bits);
            let len = up & ((1 << LENGTH_BITS) - 1);
            let word = (up + 1) | ((label as u64) << (LENGTH_BITS as u64 + len * bits as u64));
            done[x] = true;
            paths[x] = word;
            word
        }
        for x in 0..n {
            fill(x, parent, &mut done, &mut paths, label_bits);
        }
        let table = g.elements().flat_map(|x| generators.iter().map(move |&s| g.mult(x, s).get())).collect();
        PathRep { generators, diameter, paths, table }
    }

    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    fn label_bits(&self) -> u32 {
        bits_for(self.generators.len().saturating_sub(1) as u64).max(1)
    }

    /// Labels of the stored path from the identity to `h`.
    pub fn path(&self, h: ElementId) -> Vec<usize> {
        let w = self.paths[h.index()];
        let b = self.label_bits();
        let len = w & ((1 << LENGTH_BITS) - 1);
        (0..len).map(|t| ((w >> (LENGTH_BITS as u64 + t * b as u64)) & ((1 << b) - 1)) as usize).collect()
    }

    #[inline]
    fn query<P: ProbeSink>(&self, g: ElementId, h: ElementId, probes: &mut P) -> ElementId {
        probes.probe(ProbeFamily::Forward);
        let mut w = self.paths[h.index()];
        let b = self.label_bits();
        let mask = (1u64 << b) - 1;
        let len = w & ((1 << LENGTH_BITS) - 1);
        w >>= LENGTH_BITS;
        let s = self.generators.len();
        let mut x = g.get() as usize;
        for _ in 0..len {
            probes.probe(ProbeFamily::Table);
            x = self.table[(x - 1) * s + (w & mask) as usize] as usize;
            w >>= b;
        }
        ElementId::new(x as u32)
    }

    fn write(&self, w: &mut Writer) {
        let n = self.paths.len();
        w.tag(b"SMP1");
        w.u64(n as u64);
        w.u64(self.generators.len() as u64);
        w.u64(self.diameter as u64);
        w.uints(&self.generators.iter().map(|g| g.get()).collect::<Vec<_>>(), id_width(n));
        w.uints(&self.paths, packed_width(self.path_bits()));
        w.uints(&self.table, id_width(n));
    }

    fn path_bits(&self) -> u32 {
        LENGTH_BITS + self.diameter * self.label_bits()
    }

    fn read(r: &mut Reader) -> Result<Self> {
        r.expect_tag(b"SMP1")?;
        let n = r.count("n", MAX_ORDER)?;
        let s = r.count("generator count", MAX_GENERATORS as u64)?;
        let diameter = r.count("diameter", 64)? as u32;
        if n == 0 || (s == 0 && n > 1) {
            return Err(Error::format("empty simple representation"));
        }
        let generators: Vec<ElementId> = r.ids(s, n)?.into_iter().map(ElementId::new).collect();
        let b = bits_for(s.saturating_sub(1) as u64).max(1);
        if LENGTH_BITS + diameter * b > 64 {
            return Err(Error::format("diameter does not fit a path word"));
        }
        let rep = PathRep { generators, diameter, paths: Vec::new(), table: Vec::new() };
        let paths = r.u64s(n, packed_width(rep.path_bits()))?;
        let table = r.ids(n * s, n)?;
        let rep = PathRep { paths, table, ..rep };
        for h in 0..n {
            let len = rep.paths[h] & ((1 << LENGTH_BITS) - 1);
            if len > diameter as u64 || rep.paths[h] >> (LENGTH_BITS as u64 + len * b as u64) != 0 {
                return Err(Error::format(format!("path of element {} is malformed", h + 1)));
            }
            if rep.path(ElementId::from_index(h)).iter().any(|&l| l >= s) {
                return Err(Error::format(format!("path of element {} uses an unknown generator", h + 1)));
            }
        }
        Ok(rep)
    }
}

impl SimpleRep {
    pub fn build<G: Group + ?Sized>(g: &G, max_generators: usize) -> Result<Self> {
        if !is_simple(g) {
            return Err(Error::precondition("group is not simple"));
        }
        if is_abelian(g) {
            return Ok(SimpleRep::Cyclic(CyclicRep::for_group(g)?));
        }
        Ok(SimpleRep::Paths(PathRep::build(g, max_generators)?))
    }

    /// Largest number of table probes any query can take.
    pub fn diameter(&self) -> u32 {
        match self {
            SimpleRep::Cyclic(_) => 0,
            SimpleRep::Paths(p) => p.diameter,
        }
    }

    pub fn write(&self, w: &mut Writer) {
        match self {
            SimpleRep::Cyclic(c) => c.write(w),
            SimpleRep::Paths(p) => p.write(w),
        }
    }

    pub fn read(r: &mut Reader) -> Result<Self> {
        match r.peek(4) {
            Some(b"CYC1") => Ok(SimpleRep::Cyclic(CyclicRep::read(r)?)),
            _ => Ok(SimpleRep::Paths(PathRep::read(r)?)),
        }
    }
}

impl Representation for SimpleRep {
    fn kind(&self) -> &'static str {
        "simple"
    }

    fn order(&self) -> usize {
        match self {
            SimpleRep::Cyclic(c) => c.order(),
            SimpleRep::Paths(p) => p.paths.len(),
        }
    }

    fn params(&self) -> String {
        match self {
            SimpleRep::Cyclic(_) => "cyclic".into(),
            SimpleRep::Paths(p) => format!("S={} D={}", p.generators.len(), p.diameter),
        }
    }

    fn multiply(&self, x: ElementId, y: ElementId) -> ElementId {
        match self {
            SimpleRep::Cyclic(c) => c.multiply(x, y),
            SimpleRep::Paths(p) => p.query(x, y, &mut NoProbes),
        }
    }

    fn multiply_counted(&self, x: ElementId, y: ElementId, probes: &mut ProbeLedger) -> ElementId {
        match self {
            SimpleRep::Cyclic(c) => c.multiply_counted(x, y, probes),
            SimpleRep::Paths(p) => p.query(x, y, probes),
        }
    }

    fn account(&self, ledger: &mut SpaceLedger) {
        match self {
            SimpleRep::Cyclic(c) => c.account(ledger),
            SimpleRep::Paths(p) => {
                let w = ledger.word_bits();
                ledger.array("paths", &p.paths, p.path_bits());
                ledger.array("table", &p.table, w);
                ledger.array("generators", &p.generators.iter().map(|g| g.get()).collect::<Vec<_>>(), w);
                ledger.scalars("meta", &[p.paths.len() as u64, p.generators.len() as u64, p.diameter as u64]);
            }
        }
    }
}
