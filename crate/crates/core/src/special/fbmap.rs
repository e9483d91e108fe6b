use crate::error::{Error, Result};
use crate::group::ElementId;
use crate::serial::{id_width, packed_width, Reader, Writer, MAX_ORDER};
use crate::space::{bits_for, ProbeFamily, ProbeSink, SpaceLedger};

/// Injective coordinates `(α_1, ..., α_k)` with `α_i < c_i`, packed into one
/// word per element, and the dense inverse over `c_1 x ... x c_k`.
///
/// Field 1 occupies the most significant bits of the packed word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForwardBackwardMap {
    sizes: Vec<u64>,
    widths: Vec<u32>,
    forward: Vec<u64>,
    backward: Vec<u32>,
}

impl ForwardBackwardMap {
    /// `coords[g]` is the tuple of element index `g`.
    pub fn new(sizes: Vec<u64>, coords: &[Vec<u32>]) -> Result<Self> {
        let widths: Vec<u32> = sizes.iter().map(|&c| bits_for(c.saturating_sub(1))).collect();
        if sizes.contains(&0) || widths.iter().sum::<u32>() > 64 {
            return Err(Error::InvalidParameter(format!("factor sizes {sizes:?} do not pack into one word")));
        }
        let cells = sizes.iter().try_fold(1u64, |acc, &c| acc.checked_mul(c)).filter(|&c| c <= MAX_ORDER);
        let cells = cells.ok_or_else(|| Error::InvalidParameter(format!("backward array {sizes:?} too large")))?;
        let mut map = ForwardBackwardMap {
            sizes,
            widths,
            forward: Vec::with_capacity(coords.len()),
            backward: vec![0; cells as usize],
        };
        for (g, tuple) in coords.iter().enumerate() {
            if tuple.len() != map.sizes.len() || tuple.iter().zip(&map.sizes).any(|(&a, &c)| a as u64 >= c) {
                return Err(Error::InvalidParameter(format!(
                    "coordinates {tuple:?} of element {} out of range",
                    g + 1
                )));
            }
            let cell = map.cell(tuple);
            if map.backward[cell] != 0 {
                return Err(Error::InvalidParameter(format!(
                    "elements {} and {} share coordinates {tuple:?}",
                    map.backward[cell],
                    g + 1
                )));
            }
            map.backward[cell] = g as u32 + 1;
            map.forward.push(map.pack(tuple));
        }
        Ok(map)
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    fn pack(&self, tuple: &[u32]) -> u64 {
        tuple.iter().zip(&self.widths).fold(0u64, |w, (&a, &b)| if b == 0 { w } else { (w << b) | a as u64 })
    }

    fn cell(&self, tuple: &[u32]) -> usize {
        tuple.iter().zip(&self.sizes).fold(0usize, |acc, (&a, &c)| acc * c as usize + a as usize)
    }

    /// Packed word of `g`, one forward read.
    #[inline]
    pub fn forward_word<P: ProbeSink>(&self, g: ElementId, probes: &mut P) -> u64 {
        probes.probe(ProbeFamily::Forward);
        self.forward[g.index()]
    }

    /// Field `i` (zero-based) of a packed word.
    #[inline]
    pub fn field(&self, word: u64, i: usize) -> u32 {
        let shift: u32 = self.widths[i + 1..].iter().sum();
        let b = self.widths[i];
        if b == 0 {
            0
        } else {
            ((word >> shift) & ((1u64 << b) - 1)) as u32
        }
    }

    pub fn coordinates(&self, g: ElementId) -> Vec<u32> {
        let w = self.forward[g.index()];
        (0..self.k()).map(|i| self.field(w, i)).collect()
    }

    /// Element at `tuple`, charged one backward read per component.
    #[inline]
    pub fn backward<P: ProbeSink>(&self, tuple: &[u32], probes: &mut P) -> ElementId {
        probes.probe_n(ProbeFamily::Backward, self.k() as u32);
        ElementId::new(self.backward[self.cell(tuple)])
    }

    pub fn account(&self, ledger: &mut SpaceLedger) {
        let w = ledger.word_bits();
        ledger.array("forward", &self.forward, self.widths.iter().sum());
        ledger.array("backward", &self.backward, w);
        ledger.scalars("factor_sizes", &self.sizes);
    }

    pub fn write(&self, w: &mut Writer) {
        let n = self.forward.len();
        w.u64(n as u64);
        w.u64(self.k() as u64);
        for &c in &self.sizes {
            w.u64(c);
        }
        w.uints(&self.forward, packed_width(self.widths.iter().sum()));
        w.uints(&self.backward, id_width(n));
    }

    pub fn read(r: &mut Reader) -> Result<Self> {
        let n = r.count("n", MAX_ORDER)?;
        let k = r.count("k", 64)?;
        let sizes = (0..k).map(|_| r.u64()).collect::<Result<Vec<u64>>>()?;
        let widths: Vec<u32> = sizes.iter().map(|&c| bits_for(c.saturating_sub(1))).collect();
        let cells = sizes.iter().try_fold(1u64, |acc, &c| acc.checked_mul(c)).filter(|&c| c <= MAX_ORDER);
        let cells = match cells {
            Some(c) if !sizes.contains(&0) && widths.iter().sum::<u32>() <= 64 && c as usize >= n => c as usize,
            _ => return Err(Error::format(format!("invalid factor sizes {sizes:?} for order {n}"))),
        };
        let forward = r.u64s(n, packed_width(widths.iter().sum()))?;
        let backward = r.u32s(cells, id_width(n))?;
        let map = ForwardBackwardMap { sizes, widths, forward, backward };
        if map.backward.iter().any(|&g| g as usize > n) {
            return Err(Error::format("backward entry outside the group"));
        }
        for g in 0..n {
            let tuple = map.coordinates(ElementId::from_index(g));
            if tuple.iter().zip(&map.sizes).any(|(&a, &c)| a as u64 >= c)
                || map.backward[map.cell(&tuple)] as usize != g + 1
            {
                return Err(Error::format(format!("forward and backward maps disagree at element {}", g + 1)));
            }
        }
        Ok(map)
    }
}
