//! Named group families and the standard test corpus.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::group::{
    find_hamiltonian_decomposition, is_abelian, is_simple, is_z_group, make_alternating, make_cyclic, make_dihedral,
    make_direct, make_quaternion, make_semidirect, make_symmetric, psl_2_7, Group, GroupTable, SemidirectSpec,
};

const STANDARD_MANIFEST: &str = include_str!("../corpus/manifest.toml");
const PSL27_TABLE: &str = include_str!("../corpus/psl2_7.txt");

pub const FAMILIES: [&str; 10] = [
    "cyclic",
    "dihedral",
    "abelian",
    "quaternion",
    "direct",
    "semidirect",
    "symmetric",
    "alternating",
    "psl27",
    "file",
];

fn number(family: &str, s: &str) -> Result<u64> {
    s.parse().map_err(|_| Error::InvalidParameter(format!("{family}: {s:?} is not a number")))
}

fn arity(family: &str, params: &[String], n: usize) -> Result<()> {
    if params.len() != n {
        return Err(Error::InvalidParameter(format!("{family} takes {n} parameters, got {}", params.len())));
    }
    Ok(())
}

/// Builds a member of `family`. `direct` takes factors written
/// `family:p1:p2...`; `file` reads a table, relative to `dir` if given.
pub fn build_family(family: &str, params: &[String], dir: Option<&Path>) -> Result<GroupTable> {
    let num = |i: usize| number(family, &params[i]);
    match family {
        "cyclic" => {
            arity(family, params, 1)?;
            make_cyclic(num(0)? as usize)
        }
        "dihedral" => {
            arity(family, params, 1)?;
            make_dihedral(num(0)? as usize)
        }
        "abelian" => {
            if params.is_empty() {
                return Err(Error::InvalidParameter("abelian needs at least one factor order".into()));
            }
            let mut g = make_cyclic(num(0)? as usize)?;
            for i in 1..params.len() {
                g = make_direct(&g, &make_cyclic(num(i)? as usize)?)?;
            }
            Ok(g)
        }
        "quaternion" => {
            arity(family, params, 0)?;
            Ok(make_quaternion())
        }
        "direct" => {
            if params.is_empty() {
                return Err(Error::InvalidParameter("direct needs at least one factor".into()));
            }
            let factor = |s: &str| {
                let mut parts = s.split(':');
                let fam = parts.next().unwrap_or_default();
                let args: Vec<String> = parts.map(String::from).collect();
                build_family(fam, &args, dir)
            };
            let mut g = factor(&params[0])?;
            for p in &params[1..] {
                g = make_direct(&g, &factor(p)?)?;
            }
            Ok(g)
        }
        "semidirect" => {
            arity(family, params, 3)?;
            make_semidirect(&SemidirectSpec::cyclic_by_cyclic(num(0)?, num(1)?, num(2)?)?)
        }
        "symmetric" => {
            arity(family, params, 1)?;
            make_symmetric(num(0)? as usize)
        }
        "alternating" => {
            arity(family, params, 1)?;
            make_alternating(num(0)? as usize)
        }
        "psl27" => {
            arity(family, params, 0)?;
            Ok(psl_2_7())
        }
        "file" => {
            arity(family, params, 1)?;
            let path = match dir {
                Some(d) => d.join(&params[0]),
                None => PathBuf::from(&params[0]),
            };
            let bytes = std::fs::read(&path)?;
            GroupTable::load(&bytes, false)
        }
        other => Err(Error::InvalidParameter(format!("unknown family {other:?}; known: {}", FAMILIES.join(", ")))),
    }
}

/// Class membership used to decide which representations apply.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct Properties {
    pub abelian: bool,
    pub zgroup: bool,
    pub hamiltonian: bool,
    pub simple: bool,
}

impl Properties {
    pub fn of<G: Group + ?Sized>(g: &G) -> Self {
        let abelian = is_abelian(g);
        Properties {
            abelian,
            zgroup: is_z_group(g),
            hamiltonian: !abelian && find_hamiltonian_decomposition(g).is_ok(),
            simple: is_simple(g),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub family: String,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(flatten)]
    pub expected: Properties,
    #[serde(skip)]
    dir: Option<PathBuf>,
}

#[derive(Deserialize)]
struct Manifest {
    group: Vec<CorpusEntry>,
}

impl CorpusEntry {
    pub fn build(&self) -> Result<GroupTable> {
        if self.family == "file" && self.dir.is_none() && self.params.first().map(String::as_str) == Some("psl2_7.txt")
        {
            return GroupTable::parse(PSL27_TABLE, false);
        }
        build_family(&self.family, &self.params, self.dir.as_deref())
    }
}

pub fn parse_manifest(text: &str) -> Result<Vec<CorpusEntry>> {
    let m: Manifest = toml::from_str(text).map_err(|e| Error::Parse {
        line: e.span().map_or(0, |s| text[..s.start].lines().count().max(1)),
        message: e.message().to_string(),
    })?;
    Ok(m.group)
}

/// Reads a manifest from disk; `file` entries resolve next to it.
pub fn load_manifest(path: &Path) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut entries = parse_manifest(&text)?;
    for e in &mut entries {
        e.dir = Some(dir.clone());
    }
    Ok(entries)
}

/// The checked-in standard corpus.
pub fn standard_corpus() -> Vec<CorpusEntry> {
    parse_manifest(STANDARD_MANIFEST).expect("standard manifest parses")
}

pub fn standard_psl27_text() -> &'static str {
    PSL27_TABLE
}
