//! Label-based schemes: an outside user compresses the group and labels
//! every element; a query processing unit (QPU) holding a small store
//! multiplies two labels into the label of the product.
//!
//! Only the QPU store is charged by [`qpu_report`]; labels belong to the
//! outside user.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{ElementId, Group};
use crate::serial::{Reader, Writer, MAX_ORDER};
use crate::space::{NoProbes, ProbeLedger, ProbeSink, Representation, SpaceLedger, SpaceReport};

mod abelian;
mod cycles;
mod hamiltonian;
mod semidirect;
mod zgroup;

pub use abelian::AbelianScheme;
pub use cycles::CycleStructure;
pub use hamiltonian::HamiltonianScheme;
pub use semidirect::SemidirectScheme;
pub use zgroup::{ZGroupScheme, POWER_TABLE_LIMIT};

pub const MAX_LABEL_SLOTS: usize = 4;

/// A tuple of at most four words.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct FmLabel {
    len: u8,
    slots: [u64; MAX_LABEL_SLOTS],
}

impl FmLabel {
    pub fn new(values: &[u64]) -> Self {
        assert!(values.len() <= MAX_LABEL_SLOTS, "labels hold at most {MAX_LABEL_SLOTS} slots");
        let mut slots = [0; MAX_LABEL_SLOTS];
        slots[..values.len()].copy_from_slice(values);
        FmLabel { len: values.len() as u8, slots }
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.slots[..self.len as usize]
    }
}

impl fmt::Display for FmLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.as_slice().iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for FmLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for FmLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|p| p.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidParameter(format!("label {s:?} is not a comma-separated tuple")))?;
        if values.is_empty() || values.len() > MAX_LABEL_SLOTS {
            return Err(Error::InvalidParameter(format!("label {s:?} has {} components", values.len())));
        }
        Ok(FmLabel::new(&values))
    }
}

/// The outside user's labels, one per element, and their inverse.
#[derive(Clone, Debug)]
pub struct Labeling {
    labels: Vec<FmLabel>,
    index: HashMap<FmLabel, ElementId>,
}

impl PartialEq for Labeling {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for Labeling {}

impl Labeling {
    pub fn new(labels: Vec<FmLabel>) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, &l) in labels.iter().enumerate() {
            if let Some(prev) = index.insert(l, ElementId::from_index(i)) {
                return Err(Error::precondition(format!("elements {prev} and {} share label {l}", i + 1)));
            }
        }
        Ok(Labeling { labels, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, g: ElementId) -> FmLabel {
        self.labels[g.index()]
    }

    pub fn element(&self, label: &FmLabel) -> Option<ElementId> {
        self.index.get(label).copied()
    }

    pub fn write(&self, w: &mut Writer) {
        let width = self.labels.first().map_or(0, |l| l.len as usize);
        w.tag(b"LBL1");
        w.u64(self.labels.len() as u64);
        w.u64(width as u64);
        for l in &self.labels {
            w.uints(l.as_slice(), 8);
        }
    }

    pub fn read(r: &mut Reader) -> Result<Self> {
        r.expect_tag(b"LBL1")?;
        let n = r.count("labels", MAX_ORDER)?;
        let width = r.count("label width", MAX_LABEL_SLOTS as u64)?;
        let flat = r.u64s(n * width, 8)?;
        let labels = flat.chunks(width.max(1)).take(n).map(FmLabel::new).collect::<Vec<_>>();
        if labels.len() != n {
            return Err(Error::format("label width is zero"));
        }
        Labeling::new(labels).map_err(|e| Error::format(e.to_string()))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum FmKind {
    Abelian,
    Hamiltonian,
    ZGroup,
    Semidirect,
}

impl FmKind {
    pub const ALL: [FmKind; 4] = [FmKind::Abelian, FmKind::Hamiltonian, FmKind::ZGroup, FmKind::Semidirect];

    pub fn name(self) -> &'static str {
        match self {
            FmKind::Abelian => "fm-abelian",
            FmKind::Hamiltonian => "fm-hamiltonian",
            FmKind::ZGroup => "fm-zgroup",
            FmKind::Semidirect => "fm-semidirect",
        }
    }
}

impl FromStr for FmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FmKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown scheme {s:?}")))
    }
}

/// The QPU store of any scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FmStore {
    Abelian(AbelianScheme),
    Hamiltonian(HamiltonianScheme),
    ZGroup(ZGroupScheme),
    Semidirect(SemidirectScheme),
}

impl FmStore {
    pub fn compress<G: Group + ?Sized>(kind: FmKind, g: &G) -> Result<(FmStore, Labeling)> {
        Ok(match kind {
            FmKind::Abelian => {
                let (s, l) = AbelianScheme::compress(g)?;
                (FmStore::Abelian(s), l)
            }
            FmKind::Hamiltonian => {
                let (s, l) = HamiltonianScheme::compress(g)?;
                (FmStore::Hamiltonian(s), l)
            }
            FmKind::ZGroup => {
                let (s, l) = ZGroupScheme::compress(g)?;
                (FmStore::ZGroup(s), l)
            }
            FmKind::Semidirect => {
                let (s, l) = SemidirectScheme::compress(g)?;
                (FmStore::Semidirect(s), l)
            }
        })
    }

    pub fn kind(&self) -> FmKind {
        match self {
            FmStore::Abelian(_) => FmKind::Abelian,
            FmStore::Hamiltonian(_) => FmKind::Hamiltonian,
            FmStore::ZGroup(_) => FmKind::ZGroup,
            FmStore::Semidirect(_) => FmKind::Semidirect,
        }
    }

    /// Order of the group the store describes.
    pub fn order(&self) -> usize {
        (match self {
            FmStore::Abelian(s) => s.order(),
            FmStore::Hamiltonian(s) => s.order(),
            FmStore::ZGroup(s) => s.order(),
            FmStore::Semidirect(s) => s.order(),
        }) as usize
    }

    /// Label of the product; a pure function of the store and both labels.
    #[inline]
    pub fn multiply_probed<P: ProbeSink>(&self, a: &FmLabel, b: &FmLabel, probes: &mut P) -> FmLabel {
        match self {
            FmStore::Abelian(s) => FmLabel::new(&[s.mult_words(a.as_slice()[0], b.as_slice()[0])]),
            FmStore::Hamiltonian(s) => s.multiply_probed(a, b, probes),
            FmStore::ZGroup(s) => s.multiply_probed(a, b, probes),
            FmStore::Semidirect(s) => s.multiply_probed(a, b, probes),
        }
    }

    pub fn multiply(&self, a: &FmLabel, b: &FmLabel) -> FmLabel {
        self.multiply_probed(a, b, &mut NoProbes)
    }

    /// Checks that `label` is well formed for this store.
    pub fn validate(&self, label: &FmLabel) -> Result<()> {
        match self {
            FmStore::Abelian(s) => match label.as_slice() {
                &[w] => s.validate_word(w),
                _ => Err(Error::InvalidParameter(format!("label {label} should have one component"))),
            },
            FmStore::Hamiltonian(s) => s.validate(label),
            FmStore::ZGroup(s) => s.validate(label),
            FmStore::Semidirect(s) => s.validate(label),
        }
    }

    pub fn account(&self, ledger: &mut SpaceLedger) {
        match self {
            FmStore::Abelian(s) => s.account(ledger),
            FmStore::Hamiltonian(s) => s.account(ledger),
            FmStore::ZGroup(s) => s.account(ledger),
            FmStore::Semidirect(s) => s.account(ledger),
        }
    }

    pub fn write(&self, w: &mut Writer) {
        match self {
            FmStore::Abelian(s) => s.write(w),
            FmStore::Hamiltonian(s) => s.write(w),
            FmStore::ZGroup(s) => s.write(w),
            FmStore::Semidirect(s) => s.write(w),
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        self.write(&mut w);
        w.into_bytes()
    }

    pub fn read(r: &mut Reader) -> Result<Self> {
        match r.peek(4) {
            Some(b"FMA1") => Ok(FmStore::Abelian(AbelianScheme::read(r)?)),
            Some(b"FMH1") => Ok(FmStore::Hamiltonian(HamiltonianScheme::read(r)?)),
            Some(b"FMZ1") => Ok(FmStore::ZGroup(ZGroupScheme::read(r)?)),
            Some(b"FMS1") => Ok(FmStore::Semidirect(SemidirectScheme::read(r)?)),
            other => Err(Error::format(format!("unknown store tag {:?}", other.map(String::from_utf8_lossy)))),
        }
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let s = FmStore::read(&mut r)?;
        r.finish()?;
        Ok(s)
    }
}

/// Exact ledger of the QPU store alone.
pub fn qpu_report(store: &FmStore) -> SpaceReport {
    let mut ledger = SpaceLedger::new(store.order());
    store.account(&mut ledger);
    ledger.finish()
}

pub fn qpu_space(store: &FmStore) -> usize {
    qpu_report(store).slots
}

/// A store bundled with the labels of its group, so element-level queries
/// can be answered and verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FmArtifact {
    pub store: FmStore,
    pub labels: Labeling,
}

impl FmArtifact {
    pub fn compress<G: Group + ?Sized>(kind: FmKind, g: &G) -> Result<Self> {
        let (store, labels) = FmStore::compress(kind, g)?;
        Ok(FmArtifact { store, labels })
    }

    pub fn write(&self, w: &mut Writer) {
        self.store.write(w);
        self.labels.write(w);
    }

    pub fn read(r: &mut Reader) -> Result<Self> {
        let store = FmStore::read(r)?;
        let labels = Labeling::read(r)?;
        if labels.len() != store.order() {
            return Err(Error::format(format!("{} labels for a group of order {}", labels.len(), store.order())));
        }
        for l in &labels.labels {
            store.validate(l).map_err(|e| Error::format(e.to_string()))?;
        }
        Ok(FmArtifact { store, labels })
    }

    fn query<P: ProbeSink>(&self, x: ElementId, y: ElementId, probes: &mut P) -> ElementId {
        let z = self.store.multiply_probed(&self.labels.label(x), &self.labels.label(y), probes);
        self.labels.element(&z).expect("product label belongs to the labeling")
    }
}

impl Representation for FmArtifact {
    fn kind(&self) -> &'static str {
        self.store.kind().name()
    }

    fn order(&self) -> usize {
        self.labels.len()
    }

    fn params(&self) -> String {
        match &self.store {
            FmStore::Abelian(s) => format!("orders={:?}", s.orders()),
            FmStore::Hamiltonian(s) => format!("C={:?}", s.abelian().orders()),
            FmStore::ZGroup(s) => {
                let (m, d, r) = s.factors();
                format!("m={m} d={d} r={r}")
            }
            FmStore::Semidirect(s) => format!("A={} m={}", s.normal_order(), s.m()),
        }
        .replace(", ", " ")
    }

    fn multiply(&self, x: ElementId, y: ElementId) -> ElementId {
        self.query(x, y, &mut NoProbes)
    }

    fn multiply_counted(&self, x: ElementId, y: ElementId, probes: &mut ProbeLedger) -> ElementId {
        self.query(x, y, probes)
    }

    /// Only the QPU store is charged.
    fn account(&self, ledger: &mut SpaceLedger) {
        self.store.account(ledger);
    }
}
