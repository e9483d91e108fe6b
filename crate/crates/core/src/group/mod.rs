//! Ground-truth group arithmetic.
//!
//! Elements of a group of order `n` are always the integers `1..=n`. A
//! [`GroupTable`] stores the full multiplication table and is the oracle every
//! other structure is checked against. Algorithms that must also run on
//! groups too large to tabulate are written against the [`Group`] trait, which
//! the implicit groups in [`build`] implement as well.

use std::fmt;

use crate::error::{Error, Result, Violation};

pub mod build;
pub mod decompose;
pub mod structure;

pub use build::{
    make_alternating, make_cyclic, make_dihedral, make_direct, make_quaternion, make_semidirect, make_symmetric,
    psl_2_7, DirectProduct, Metacyclic, SemidirectSpec,
};
pub use decompose::{
    find_abelian_by_cyclic, find_hamiltonian_decomposition, find_semidirect_decomposition, find_zgroup_decomposition,
    HamiltonianDecomposition, SubgroupDecomposition, ZGroupDecomposition,
};
pub use structure::{
    abelian_basis, closure, element_order, generating_set, is_abelian, is_simple, is_z_group, noncommuting_pair,
    AbelianBasis, Subgroup,
};

/// A group element, numbered from 1.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ElementId(u32);

impl ElementId {
    /// # Panics
    /// If `value` is zero.
    pub fn new(value: u32) -> Self {
        assert!(value >= 1, "element ids start at 1");
        ElementId(value)
    }

    pub fn from_index(index: usize) -> Self {
        ElementId(index as u32 + 1)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Zero-based position, `value - 1`.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A finite group on the elements `1..=order()`.
pub trait Group {
    fn order(&self) -> usize;
    fn identity(&self) -> ElementId;
    fn mult(&self, x: ElementId, y: ElementId) -> ElementId;
    fn inverse(&self, x: ElementId) -> ElementId;

    fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.order()).map(ElementId::from_index)
    }

    fn contains(&self, x: ElementId) -> bool {
        x.index() < self.order()
    }

    fn pow(&self, x: ElementId, mut exp: u64) -> ElementId {
        let mut acc = self.identity();
        let mut base = x;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mult(acc, base);
            }
            base = self.mult(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `y x y^-1`.
    fn conjugate(&self, x: ElementId, y: ElementId) -> ElementId {
        self.mult(self.mult(y, x), self.inverse(y))
    }
}

impl<G: Group + ?Sized> Group for &G {
    fn order(&self) -> usize {
        (**self).order()
    }
    fn identity(&self) -> ElementId {
        (**self).identity()
    }
    fn mult(&self, x: ElementId, y: ElementId) -> ElementId {
        (**self).mult(x, y)
    }
    fn inverse(&self, x: ElementId) -> ElementId {
        (**self).inverse(x)
    }
}

/// A group given by its full Cayley table.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    n: usize,
    table: Vec<u32>,
    identity: ElementId,
    inverse: Vec<u32>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable").field("n", &self.n).field("identity", &self.identity).finish_non_exhaustive()
    }
}

impl GroupTable {
    /// Validates a row-major `n x n` table of ids in `1..=n`.
    ///
    /// Checks run in axiom order: Latin square, associativity (only when
    /// `strict`, it is cubic), identity, inverses. The first failure is
    /// reported with its witness.
    pub fn from_rows(n: usize, table: Vec<u32>, strict: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("group order must be positive".into()));
        }
        if n > u32::MAX as usize / 2 || table.len() != n * n {
            return Err(Error::InvalidParameter(format!("table of {} entries does not match order {n}", table.len())));
        }
        check_latin(n, &table)?;
        if strict {
            check_associative(n, &table)?;
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x + 1 && table[x * n + e] as usize == x + 1))
            .map(ElementId::from_index)
            .ok_or(Violation::NoIdentity)?;
        let mut inverse = vec![0u32; n];
        for x in 0..n {
            // Latin rows make the right inverse unique.
            let y = (0..n).find(|&y| table[x * n + y] == identity.get()).expect("Latin row contains every value");
            if table[y * n + x] != identity.get() {
                return Err(Violation::NoInverse(ElementId::from_index(x)).into());
            }
            inverse[x] = y as u32 + 1;
        }
        Ok(GroupTable { n, table, identity, inverse })
    }

    /// Tabulates any group; `g` is trusted to satisfy the axioms.
    pub fn from_group(g: &impl Group) -> Self {
        let n = g.order();
        let mut table = Vec::with_capacity(n * n);
        for x in g.elements() {
            for y in g.elements() {
                table.push(g.mult(x, y).get());
            }
        }
        let inverse = g.elements().map(|x| g.inverse(x).get()).collect();
        GroupTable { n, table, identity: g.identity(), inverse }
    }

    /// Parses the text Cayley-table format: the order on the first line,
    /// then `n` rows of `n` whitespace-separated ids.
    pub fn parse(text: &str, strict: bool) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
        let n: usize = header.trim().parse().map_err(|_| Error::Parse {
            line: 1,
            message: format!("expected group order, found {:?}", header.trim()),
        })?;
        if n == 0 {
            return Err(Error::Parse { line: 1, message: "group order must be positive".into() });
        }
        let mut table = Vec::with_capacity(n.saturating_mul(n).min(1 << 26));
        let mut rows = 0;
        for (lineno, line) in lines {
            let line_no = lineno + 1;
            if rows == n {
                return Err(Error::Parse { line: line_no, message: "more than n rows".into() });
            }
            let before = table.len();
            for tok in line.split_whitespace() {
                let v: u32 = tok
                    .parse()
                    .map_err(|_| Error::Parse { line: line_no, message: format!("not an element id: {tok:?}") })?;
                table.push(v);
            }
            if table.len() - before != n {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {n} entries, found {}", table.len() - before),
                });
            }
            rows += 1;
        }
        if rows != n {
            return Err(Error::Parse { line: rows + 2, message: format!("expected {n} rows, found {rows}") });
        }
        GroupTable::from_rows(n, table, strict)
    }

    pub fn load(bytes: &[u8], strict: bool) -> Result<Self> {
        let text =
            std::str::from_utf8(bytes).map_err(|e| Error::Parse { line: 0, message: format!("not UTF-8: {e}") })?;
        GroupTable::parse(text, strict)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.n * self.n * 4);
        out.push_str(&self.n.to_string());
        out.push('\n');
        for row in self.table.chunks(self.n) {
            let mut first = true;
            for v in row {
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Row-major raw table.
    pub fn rows(&self) -> &[u32] {
        &self.table
    }

    /// Full associativity check, `O(n^3)`.
    pub fn check_associative(&self) -> Result<()> {
        check_associative(self.n, &self.table)
    }
}

impl Group for GroupTable {
    fn order(&self) -> usize {
        self.n
    }

    fn identity(&self) -> ElementId {
        self.identity
    }

    #[inline]
    fn mult(&self, x: ElementId, y: ElementId) -> ElementId {
        ElementId(self.table[x.index() * self.n + y.index()])
    }

    #[inline]
    fn inverse(&self, x: ElementId) -> ElementId {
        ElementId(self.inverse[x.index()])
    }
}

/// Reads and validates a Cayley table from bytes.
pub fn load_cayley_table(bytes: &[u8], strict: bool) -> Result<GroupTable> {
    GroupTable::load(bytes, strict)
}

fn check_latin(n: usize, table: &[u32]) -> Result<(), Violation> {
    let mut seen = vec![0u32; n];
    for r in 0..n {
        seen.fill(0);
        for c in 0..n {
            let v = table[r * n + c];
            if v == 0 || v as usize > n {
                return Err(Violation::OutOfRange { row: r as u32 + 1, column: c as u32 + 1, value: v, n: n as u32 });
            }
            let slot = &mut seen[v as usize - 1];
            if *slot != 0 {
                return Err(Violation::RowRepeats { row: r as u32 + 1, value: v, first: *slot, second: c as u32 + 1 });
            }
            *slot = c as u32 + 1;
        }
    }
    for c in 0..n {
        seen.fill(0);
        for r in 0..n {
            let v = table[r * n + c];
            let slot = &mut seen[v as usize - 1];
            if *slot != 0 {
                return Err(Violation::ColumnRepeats {
                    column: c as u32 + 1,
                    value: v,
                    first: *slot,
                    second: r as u32 + 1,
                });
            }
            *slot = r as u32 + 1;
        }
    }
    Ok(())
}

fn check_associative(n: usize, table: &[u32]) -> Result<()> {
    let at = |x: usize, y: usize| table[x * n + y] as usize - 1;
    for x in 0..n {
        for y in 0..n {
            let xy = at(x, y);
            for z in 0..n {
                if at(xy, z) != at(x, at(y, z)) {
                    return Err(Violation::NonAssociative {
                        x: ElementId::from_index(x),
                        y: ElementId::from_index(y),
                        z: ElementId::from_index(z),
                    }
                    .into());
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: u32) -> ElementId {
        ElementId::new(v)
    }

    #[test]
    fn parses_small_cyclic_tables() {
        let c2 = GroupTable::parse("2\n1 2\n2 1\n", true).unwrap();
        assert_eq!(c2.order(), 2);
        assert_eq!(c2.identity(), e(1));
        let c3 = GroupTable::parse("3\n1 2 3\n2 3 1\n3 1 2", true).unwrap();
        assert_eq!(c3.order(), 3);
        assert_eq!(c3.identity(), e(1));
        assert_eq!(c3.inverse(e(2)), e(3));
    }

    #[test]
    fn identity_need_not_be_one() {
        // C2 with the identity numbered 2.
        let g = GroupTable::parse("2\n2 1\n1 2\n", true).unwrap();
        assert_eq!(g.identity(), e(2));
        assert_eq!(g.inverse(e(1)), e(1));
    }

    #[test]
    fn reports_malformed_input() {
        assert!(matches!(GroupTable::parse("", false), Err(Error::Parse { .. })));
        assert!(matches!(GroupTable::parse("x\n", false), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(GroupTable::parse("2\n1 2\n2\n", false), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(GroupTable::parse("2\n1 2\n", false), Err(Error::Parse { .. })));
        assert!(matches!(GroupTable::parse("2\n1 2\n2 1\n1 2\n", false), Err(Error::Parse { .. })));
    }

    #[test]
    fn reports_latin_and_range_violations() {
        let err = GroupTable::parse("2\n1 2\n1 2\n", false).unwrap_err();
        assert!(matches!(err, Error::Validation(Violation::ColumnRepeats { column: 1, .. })), "{err}");
        let err = GroupTable::parse("2\n1 3\n2 1\n", false).unwrap_err();
        assert!(matches!(err, Error::Validation(Violation::OutOfRange { value: 3, .. })));
        let err = GroupTable::parse("2\n1 1\n2 2\n", false).unwrap_err();
        assert!(matches!(err, Error::Validation(Violation::RowRepeats { row: 1, .. })));
    }

    #[test]
    fn latin_square_without_identity() {
        // Rows of C3 rotated: a quasigroup with a left identity only.
        let text = "3\n2 3 1\n1 2 3\n3 1 2\n";
        let err = GroupTable::parse(text, false).unwrap_err();
        assert!(matches!(err, Error::Validation(Violation::NoIdentity)));
    }

    #[test]
    fn table_round_trips_through_text() {
        let g = make_quaternion();
        let back = GroupTable::parse(&g.to_text(), true).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn pow_and_conjugate() {
        let g = make_cyclic(6).unwrap();
        assert_eq!(g.pow(e(2), 4), e(5));
        assert_eq!(g.pow(e(2), 0), e(1));
        let q = make_quaternion();
        // b a b^-1 = a^3
        assert_eq!(q.conjugate(e(2), e(5)), e(4));
    }
}
