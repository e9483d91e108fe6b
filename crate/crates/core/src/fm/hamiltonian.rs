use crate::error::{Error, Result};
use crate::group::build::quaternion_mult;
use crate::group::{find_hamiltonian_decomposition, Group};
use crate::serial::{Reader, Writer};
use crate::space::{ProbeFamily, ProbeSink, SpaceLedger};

use super::abelian::AbelianScheme;
use super::{FmLabel, Labeling};

const Q_SHIFT: u32 = 61;
const C_MASK: u64 = (1 << Q_SHIFT) - 1;

/// `G = Q8 x C`: the quaternion index sits in the top 3 bits of the label,
/// the abelian label of the `C` component below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianScheme {
    q8: Vec<u8>,
    abelian: AbelianScheme,
}

fn canonical_q8() -> Vec<u8> {
    (0..64).map(|i| quaternion_mult(i / 8, i % 8) as u8).collect()
}

impl HamiltonianScheme {
    pub fn compress<G: Group + ?Sized>(g: &G) -> Result<(Self, Labeling)> {
        let dec = find_hamiltonian_decomposition(g)?;
        let c = dec.complement_group(g);
        let (abelian, c_labels) = AbelianScheme::compress(&c)?;
        if abelian.total_bits() > Q_SHIFT {
            return Err(Error::InvalidParameter(format!("abelian label needs {} bits", abelian.total_bits())));
        }
        let labels = dec
            .pairing
            .iter()
            .map(|&(q, cid)| FmLabel::new(&[((q as u64 - 1) << Q_SHIFT) | c_labels.label(cid).as_slice()[0]]))
            .collect();
        Ok((HamiltonianScheme { q8: canonical_q8(), abelian }, Labeling::new(labels)?))
    }

    pub fn abelian(&self) -> &AbelianScheme {
        &self.abelian
    }

    pub fn order(&self) -> u64 {
        8 * self.abelian.order()
    }

    #[inline]
    pub fn multiply_probed<P: ProbeSink>(&self, a: &FmLabel, b: &FmLabel, probes: &mut P) -> FmLabel {
        let (x, y) = (a.as_slice()[0], b.as_slice()[0]);
        probes.probe(ProbeFamily::Table);
        let q = self.q8[((x >> Q_SHIFT) * 8 + (y >> Q_SHIFT)) as usize] as u64;
        FmLabel::new(&[(q << Q_SHIFT) | self.abelian.mult_words(x & C_MASK, y & C_MASK)])
    }

    pub fn validate(&self, l: &FmLabel) -> Result<()> {
        match l.as_slice() {
            &[w] => self.abelian.validate_word(w & C_MASK),
            _ => Err(Error::InvalidParameter(format!("label {l} should have one component"))),
        }
    }

    pub fn account(&self, ledger: &mut SpaceLedger) {
        ledger.array("q8_table", &self.q8, 3);
        let mut inner = SpaceLedger::new(self.abelian.order() as usize);
        self.abelian.account(&mut inner);
        ledger.nested("C", inner);
    }

    pub fn write(&self, w: &mut Writer) {
        w.tag(b"FMH1");
        w.bytes(&self.q8);
        self.abelian.write_body(w);
    }

    pub fn read(r: &mut Reader) -> Result<Self> {
        r.expect_tag(b"FMH1")?;
        let q8: Vec<u8> = r.u32s(64, 1)?.into_iter().map(|v| v as u8).collect();
        if q8 != canonical_q8() {
            return Err(Error::format("quaternion table is not canonical"));
        }
        let abelian = AbelianScheme::read_body(r)?;
        if abelian.total_bits() > Q_SHIFT {
            return Err(Error::format("abelian label too wide"));
        }
        Ok(HamiltonianScheme { q8, abelian })
    }
}
