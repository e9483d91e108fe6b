//! Building any representation kind by name and reading or writing it as a
//! tagged binary artifact.

use std::fmt;
use std::str::FromStr;

use crate::block::{choose_block_length, BlockRep, Delta, DEFAULT_MEMORY_LIMIT};
use crate::cube::greedy_cube_sequence;
use crate::error::{Error, Result};
use crate::fm::{FmArtifact, FmKind};
use crate::group::GroupTable;
use crate::serial::{Reader, Writer};
use crate::space::Representation;
use crate::special::{CompositeRep, CyclicRep, SimpleRep, DEFAULT_MAX_GENERATORS};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum RepKind {
    Block,
    Cyclic,
    ZGroup,
    Simple,
    Composite,
    Fm(FmKind),
}

impl RepKind {
    pub const ALL: [RepKind; 9] = [
        RepKind::Block,
        RepKind::Cyclic,
        RepKind::ZGroup,
        RepKind::Simple,
        RepKind::Composite,
        RepKind::Fm(FmKind::Abelian),
        RepKind::Fm(FmKind::Hamiltonian),
        RepKind::Fm(FmKind::ZGroup),
        RepKind::Fm(FmKind::Semidirect),
    ];

    pub fn name(self) -> &'static str {
        match self {
            RepKind::Block => "block",
            RepKind::Cyclic => "cyclic",
            RepKind::ZGroup => "zgroup",
            RepKind::Simple => "simple",
            RepKind::Composite => "composite",
            RepKind::Fm(k) => k.name(),
        }
    }
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RepKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown representation kind {s:?}")))
    }
}

/// How to size a block representation.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BlockLength {
    Delta(Delta),
    Exact(usize),
}

#[derive(Copy, Clone, Debug)]
pub struct BuildOptions {
    pub block: BlockLength,
    pub max_generators: usize,
    pub memory_limit: u128,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            block: BlockLength::Delta(Delta { num: 1, den: 2 }),
            max_generators: DEFAULT_MAX_GENERATORS,
            memory_limit: DEFAULT_MEMORY_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Artifact {
    Block(BlockRep),
    Cyclic(CyclicRep),
    Composite(CompositeRep),
    Simple(SimpleRep),
    Fm(FmArtifact),
}

impl Artifact {
    pub fn build(kind: RepKind, g: &GroupTable, opts: &BuildOptions) -> Result<Artifact> {
        Ok(match kind {
            RepKind::Block => {
                let (seq, _) = greedy_cube_sequence(g);
                let l = match opts.block {
                    BlockLength::Delta(d) => choose_block_length(crate::Group::order(g), seq.k(), d)?,
                    BlockLength::Exact(l) => l,
                };
                Artifact::Block(BlockRep::build_with_limit(g, &seq, l, opts.memory_limit)?)
            }
            RepKind::Cyclic => Artifact::Cyclic(CyclicRep::for_group(g)?),
            RepKind::ZGroup => Artifact::Composite(CompositeRep::build_zgroup(g)?),
            RepKind::Simple => match SimpleRep::build(g, opts.max_generators)? {
                SimpleRep::Cyclic(r) => Artifact::Cyclic(r),
                paths => Artifact::Simple(paths),
            },
            RepKind::Composite => Artifact::Composite(CompositeRep::build_decomposed(g)?),
            RepKind::Fm(k) => Artifact::Fm(FmArtifact::compress(k, g)?),
        })
    }

    pub fn rep(&self) -> &dyn Representation {
        match self {
            Artifact::Block(r) => r,
            Artifact::Cyclic(r) => r,
            Artifact::Composite(r) => r,
            Artifact::Simple(r) => r,
            Artifact::Fm(r) => r,
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        match self {
            Artifact::Block(r) => r.write(&mut w),
            Artifact::Cyclic(r) => r.write(&mut w),
            Artifact::Composite(r) => r.write(&mut w),
            Artifact::Simple(r) => r.write(&mut w),
            Artifact::Fm(r) => r.write(&mut w),
        }
        w.into_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Artifact> {
        let mut r = Reader::new(bytes);
        let art = match r.peek(4) {
            Some(b"BREP") => Artifact::Block(BlockRep::read(&mut r)?),
            Some(b"CYC1") => Artifact::Cyclic(CyclicRep::read(&mut r)?),
            Some(b"CMP1") => Artifact::Composite(CompositeRep::read(&mut r)?),
            Some(b"SMP1") => Artifact::Simple(SimpleRep::read(&mut r)?),
            Some(b"FMA1" | b"FMH1" | b"FMZ1" | b"FMS1") => Artifact::Fm(FmArtifact::read(&mut r)?),
            other => {
                return Err(Error::format(format!("unknown artifact tag {:?}", other.map(String::from_utf8_lossy))))
            }
        };
        r.finish()?;
        Ok(art)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_symmetric};
    use crate::Group;

    #[test]
    fn kind_names() {
        for k in RepKind::ALL {
            assert_eq!(k.name().parse::<RepKind>().unwrap(), k);
        }
        assert!("bogus".parse::<RepKind>().is_err());
    }

    #[test]
    fn build_and_reload() {
        let g = make_symmetric(3).unwrap();
        for kind in [RepKind::Block, RepKind::ZGroup, RepKind::Composite, RepKind::Fm(FmKind::ZGroup)] {
            let art = Artifact::build(kind, &g, &BuildOptions::default()).unwrap();
            let back = Artifact::from_bytes(&art.to_bytes()).unwrap();
            assert_eq!(back, art);
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(back.rep().multiply(x, y), g.mult(x, y));
                }
            }
        }
        let c5 = make_cyclic(5).unwrap();
        let art = Artifact::build(RepKind::Simple, &c5, &BuildOptions::default()).unwrap();
        assert_eq!(Artifact::from_bytes(&art.to_bytes()).unwrap().rep().kind(), "cyclic");
        assert!(Artifact::from_bytes(b"XXXX").is_err());
        let mut bytes = art.to_bytes();
        bytes.push(0);
        assert!(Artifact::from_bytes(&bytes).is_err());
    }
}
