use crate::error::{Error, Result};
use crate::serial::{id_width, Reader, Writer, MAX_ORDER};
use crate::space::{ProbeFamily, ProbeSink, SpaceLedger};

/// Cycles of a permutation `π` of `1..=N`, each starting at its least point,
/// and `B[g] = (j, r)` with `C_j[r] = g`, so `π^d(g) = C_j[(r + d) mod |C_j|]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleStructure {
    cycles: Vec<Vec<u32>>,
    /// `j << 32 | r`.
    position: Vec<u64>,
}

impl CycleStructure {
    /// `perm[i]` is `π(i + 1)`.
    pub fn build(perm: &[u32]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p == 0 || p as usize > n || std::mem::replace(&mut seen[p as usize - 1], true) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
        }
        let mut position = vec![u64::MAX; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if position[start] != u64::MAX {
                continue;
            }
            let j = cycles.len() as u64;
            let mut cycle = Vec::new();
            let mut x = start;
            while position[x] == u64::MAX {
                position[x] = (j << 32) | cycle.len() as u64;
                cycle.push(x as u32 + 1);
                x = perm[x] as usize - 1;
            }
            cycles.push(cycle);
        }
        Ok(CycleStructure { cycles, position })
    }

    pub fn len(&self) -> usize {
        self.position.len()
    }

    pub fn is_empty(&self) -> bool {
        self.position.is_empty()
    }

    pub fn cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    /// `π^d(g)`; one read of `B` and one of a cycle array.
    #[inline]
    pub fn apply_power_probed<P: ProbeSink>(&self, g: u32, d: u64, probes: &mut P) -> u32 {
        probes.probe(ProbeFamily::Cycle);
        let b = self.position[g as usize - 1];
        let cycle = &self.cycles[(b >> 32) as usize];
        let r = (b & 0xffff_ffff) + d % cycle.len() as u64;
        let len = cycle.len() as u64;
        probes.probe(ProbeFamily::Cycle);
        cycle[(if r >= len { r - len } else { r }) as usize]
    }

    pub fn apply_power(&self, g: u32, d: u64) -> Result<u32> {
        if g == 0 || g as usize > self.len() {
            return Err(Error::InvalidParameter(format!("point {g} outside 1..={}", self.len())));
        }
        Ok(self.apply_power_probed(g, d, &mut crate::space::NoProbes))
    }

    pub fn account(&self, ledger: &mut SpaceLedger) {
        let w = ledger.word_bits();
        let points: Vec<u32> = self.cycles.iter().flatten().copied().collect();
        ledger.array("cycles", &points, w);
        let lengths: Vec<u64> = self.cycles.iter().map(|c| c.len() as u64).collect();
        ledger.array("cycle_lengths", &lengths, w);
        ledger.array("position", &self.position, 32 + w);
    }

    /// Points in cycle order followed by cycle lengths; `B` is rebuilt.
    pub fn write(&self, w: &mut Writer) {
        let n = self.len();
        w.u64(n as u64);
        w.u64(self.cycles.len() as u64);
        for c in &self.cycles {
            w.uint(c.len() as u64, id_width(n));
        }
        for c in &self.cycles {
            w.uints(c, id_width(n));
        }
    }

    pub fn read(r: &mut Reader) -> Result<Self> {
        let n = r.count("points", MAX_ORDER)?;
        let count = r.count("cycles", n as u64)?;
        let lengths = r.u32s(count, id_width(n))?;
        if lengths.contains(&0) || lengths.iter().map(|&l| l as usize).sum::<usize>() != n {
            return Err(Error::format("cycle lengths do not partition the points"));
        }
        let mut perm = vec![0u32; n];
        let mut cycles = Vec::with_capacity(count);
        for &len in &lengths {
            let c = r.ids(len as usize, n.max(1))?;
            for (i, &p) in c.iter().enumerate() {
                if perm[p as usize - 1] != 0 {
                    return Err(Error::format(format!("point {p} appears twice")));
                }
                perm[p as usize - 1] = c[(i + 1) % c.len()];
            }
            cycles.push(c);
        }
        let rebuilt = CycleStructure::build(&perm).map_err(|e| Error::format(e.to_string()))?;
        if rebuilt.cycles != cycles {
            return Err(Error::format("cycles are not in canonical order"));
        }
        Ok(rebuilt)
    }
}
