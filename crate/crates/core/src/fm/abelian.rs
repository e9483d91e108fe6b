use crate::error::{Error, Result};
use crate::group::structure::factorize;
use crate::group::{abelian_basis, ElementId, Group};
use crate::serial::{Reader, Writer};
use crate::space::{bits_for, SpaceLedger};

use super::{FmLabel, Labeling};

/// Cyclic factor orders `d_1, ..., d_t` of an abelian group; a label is the
/// exponent tuple with field `i` in `ceil(log2 d_i)` bits, field 1 lowest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianScheme {
    orders: Vec<u64>,
    offsets: Vec<u32>,
    total_bits: u32,
}

/// Merges a prime-power basis into invariant factors `d_1 >= d_2 >= ...`
/// with `d_{i+1} | d_i`: the `i`-th factor multiplies the `i`-th largest
/// prime-power factor of every prime.
fn invariant_factors<G: Group + ?Sized>(g: &G) -> Result<(Vec<ElementId>, Vec<u64>)> {
    let basis = abelian_basis(g)?;
    let mut gens: Vec<ElementId> = Vec::new();
    let mut orders: Vec<u64> = Vec::new();
    for (p, _) in factorize(g.order() as u64) {
        let mut slot = 0;
        for (&x, &q) in basis.generators.iter().zip(&basis.orders) {
            if q % p != 0 {
                continue;
            }
            if slot == gens.len() {
                gens.push(g.identity());
                orders.push(1);
            }
            gens[slot] = g.mult(gens[slot], x);
            orders[slot] *= q;
            slot += 1;
        }
    }
    Ok((gens, orders))
}

impl AbelianScheme {
    pub fn from_orders(orders: Vec<u64>) -> Result<Self> {
        if orders.iter().any(|&d| d < 2) {
            return Err(Error::InvalidParameter(format!("factor orders {orders:?} must be at least 2")));
        }
        let mut offsets = Vec::with_capacity(orders.len());
        let mut total = 0u32;
        for &d in &orders {
            offsets.push(total);
            total += bits_for(d - 1);
        }
        if total > 64 {
            return Err(Error::InvalidParameter(format!("exponent tuple needs {total} bits")));
        }
        Ok(AbelianScheme { orders, offsets, total_bits: total })
    }

    /// The scheme and the label of every element.
    pub fn compress<G: Group + ?Sized>(g: &G) -> Result<(Self, Labeling)> {
        let (gens, orders) = invariant_factors(g)?;
        let scheme = AbelianScheme::from_orders(orders)?;
        let mut words = vec![None; g.order()];
        let mut frontier = vec![(g.identity(), 0u64)];
        for (i, &x) in gens.iter().enumerate() {
            let mut next = Vec::with_capacity(frontier.len() * scheme.orders[i] as usize);
            for (y, w) in frontier {
                let mut z = y;
                for c in 0..scheme.orders[i] {
                    next.push((z, w | (c << scheme.offsets[i])));
                    z = g.mult(z, x);
                }
            }
            frontier = next;
        }
        for (x, w) in frontier {
            if words[x.index()].replace(w).is_some() {
                return Err(Error::precondition("abelian factors are not independent"));
            }
        }
        let labels = words
            .into_iter()
            .map(|w| w.map(|w| FmLabel::new(&[w])).ok_or_else(|| Error::precondition("abelian factors do not span")))
            .collect::<Result<Vec<_>>>()?;
        Ok((scheme, Labeling::new(labels)?))
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn total_bits(&self) -> u32 {
        self.total_bits
    }

    /// Number of elements, `prod d_i`.
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    #[inline]
    pub fn field(&self, w: u64, i: usize) -> u64 {
        let b = bits_for(self.orders[i] - 1);
        (w >> self.offsets[i]) & ((1u64 << b) - 1)
    }

    /// Componentwise sum modulo `d_i`.
    #[inline]
    pub fn mult_words(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        for (i, &d) in self.orders.iter().enumerate() {
            let mut s = self.field(a, i) + self.field(b, i);
            if s >= d {
                s -= d;
            }
            out |= s << self.offsets[i];
        }
        out
    }

    /// Mixed-radix rank of a packed tuple, in `0..order()`.
    pub fn rank(&self, w: u64) -> u64 {
        self.orders.iter().enumerate().rev().fold(0, |acc, (i, &d)| acc * d + self.field(w, i))
    }

    pub fn validate_word(&self, w: u64) -> Result<()> {
        let fits = self.total_bits >= 64 || w >> self.total_bits == 0;
        if !fits || self.orders.iter().enumerate().any(|(i, &d)| self.field(w, i) >= d) {
            return Err(Error::InvalidParameter(format!("{w} is not an exponent tuple for {:?}", self.orders)));
        }
        Ok(())
    }

    pub fn account(&self, ledger: &mut SpaceLedger) {
        ledger.scalars("t", &[self.orders.len() as u64]);
        ledger.array("orders", &self.orders, 64);
        ledger.scalars("total_bits", &[self.total_bits as u64]);
    }

    pub fn write(&self, w: &mut Writer) {
        w.tag(b"FMA1");
        self.write_body(w);
    }

    pub(crate) fn write_body(&self, w: &mut Writer) {
        w.u64(self.orders.len() as u64);
        for &d in &self.orders {
            w.u64(d);
        }
    }

    pub fn read(r: &mut Reader) -> Result<Self> {
        r.expect_tag(b"FMA1")?;
        Self::read_body(r)
    }

    pub(crate) fn read_body(r: &mut Reader) -> Result<Self> {
        let t = r.count("factor count", 64)?;
        let orders = (0..t).map(|_| r.u64()).collect::<Result<Vec<_>>>()?;
        AbelianScheme::from_orders(orders).map_err(|e| Error::format(e.to_string()))
    }
}
