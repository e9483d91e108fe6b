//! Group constructions: cyclic, direct and semidirect products, the
//! quaternion group, permutation groups, and implicit (untabulated) groups.

use std::collections::{HashMap, VecDeque};

use super::{ElementId, Group, GroupTable};
use crate::error::{Error, Result};

/// Largest order any constructor will tabulate.
pub const MAX_TABLE_ORDER: usize = 1 << 15;

fn check_tabulable(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("group order must be positive".into()));
    }
    if n > MAX_TABLE_ORDER {
        return Err(Error::InvalidParameter(format!("order {n} exceeds the tabulation limit {MAX_TABLE_ORDER}")));
    }
    Ok(())
}

/// `C_n` with `g^i` numbered `i + 1`.
pub fn make_cyclic(n: usize) -> Result<GroupTable> {
    check_tabulable(n)?;
    Ok(GroupTable::from_group(&Metacyclic::cyclic(n as u64)?))
}

/// `A x B` with the pair `(a, b)` numbered `(a - 1)|B| + b`.
pub fn make_direct(a: &GroupTable, b: &GroupTable) -> Result<GroupTable> {
    let n = a.order().checked_mul(b.order()).ok_or_else(|| Error::InvalidParameter("order overflows".into()))?;
    check_tabulable(n)?;
    Ok(GroupTable::from_group(&DirectProduct::new(a, b)))
}

/// The quaternion group with the fixed numbering
/// `1:e 2:a 3:a^2 4:a^3 5:b 6:ab 7:a^2b 8:a^3b`, where `a^4 = 1`,
/// `b^2 = a^2` and `b a b^-1 = a^-1`.
pub fn make_quaternion() -> GroupTable {
    let mut table = Vec::with_capacity(64);
    for x in 0..8u32 {
        for y in 0..8u32 {
            table.push(quaternion_mult(x, y) + 1);
        }
    }
    GroupTable::from_rows(8, table, true).expect("quaternion table is a group")
}

/// Product of zero-based quaternion indices `i + 4j` standing for `a^i b^j`.
pub(crate) fn quaternion_mult(x: u32, y: u32) -> u32 {
    let (i, j) = (x % 4, x / 4);
    let (k, l) = (y % 4, y / 4);
    // b a^k = a^-k b
    let mut exp = if j == 0 { i + k } else { i + 4 - k };
    let mut b = j + l;
    if b == 2 {
        exp += 2;
        b = 0;
    }
    exp % 4 + 4 * b
}

/// Dihedral group of order `2n` as `C_n ⋊ C_2` with inversion.
pub fn make_dihedral(n: usize) -> Result<GroupTable> {
    let r = if n <= 1 { 0 } else { n as u64 - 1 };
    make_semidirect(&SemidirectSpec::cyclic_by_cyclic(n as u64, 2, r)?)
}

/// An explicit semidirect product `A ⋊_φ B`.
///
/// `action[b - 1][a - 1]` is `φ(b)(a)`. The product of `(a1, b1)` and
/// `(a2, b2)` is `(a1 φ(b1)(a2), b1 b2)`.
#[derive(Clone, Debug)]
pub struct SemidirectSpec {
    pub a: GroupTable,
    pub b: GroupTable,
    pub action: Vec<Vec<u32>>,
}

impl SemidirectSpec {
    pub fn trivial(a: GroupTable, b: GroupTable) -> Self {
        let id: Vec<u32> = (1..=a.order() as u32).collect();
        let action = vec![id; b.order()];
        SemidirectSpec { a, b, action }
    }

    /// `C_m ⋊ C_d` where the generator of `C_d` acts by `x ↦ x^r`.
    pub fn cyclic_by_cyclic(m: u64, d: u64, r: u64) -> Result<Self> {
        let mc = Metacyclic::new(m, d, r)?;
        check_tabulable(m as usize)?;
        check_tabulable(d as usize)?;
        let a = make_cyclic(m as usize)?;
        let b = make_cyclic(d as usize)?;
        let action = (0..d as usize).map(|j| (0..m).map(|i| ((i * mc.powers[j]) % m) as u32 + 1).collect()).collect();
        Ok(SemidirectSpec { a, b, action })
    }

    pub fn phi(&self, b: ElementId, a: ElementId) -> ElementId {
        ElementId::new(self.action[b.index()][a.index()])
    }

    /// Checks that every `φ(b)` is an automorphism of `A` and that `φ` is a
    /// homomorphism; the error names a witness.
    pub fn validate(&self) -> Result<()> {
        let (na, nb) = (self.a.order(), self.b.order());
        if self.action.len() != nb {
            return Err(Error::InvalidAction(format!("{} action rows for |B| = {nb}", self.action.len())));
        }
        for b in self.b.elements() {
            let row = &self.action[b.index()];
            if row.len() != na {
                return Err(Error::InvalidAction(format!("action of {b} has {} entries, |A| = {na}", row.len())));
            }
            let mut seen = vec![false; na];
            for &v in row {
                if v == 0 || v as usize > na || std::mem::replace(&mut seen[v as usize - 1], true) {
                    return Err(Error::InvalidAction(format!("action of {b} is not a permutation")));
                }
            }
            for x in self.a.elements() {
                for y in self.a.elements() {
                    let lhs = self.phi(b, self.a.mult(x, y));
                    let rhs = self.a.mult(self.phi(b, x), self.phi(b, y));
                    if lhs != rhs {
                        return Err(Error::InvalidAction(format!(
                            "action of {b} is not an automorphism: φ({x}*{y}) != φ({x})*φ({y})"
                        )));
                    }
                }
            }
        }
        let e = self.b.identity();
        if let Some(a) = self.a.elements().find(|&a| self.phi(e, a) != a) {
            return Err(Error::InvalidAction(format!("identity of B moves {a}")));
        }
        for b1 in self.b.elements() {
            for b2 in self.b.elements() {
                let b12 = self.b.mult(b1, b2);
                for a in self.a.elements() {
                    if self.phi(b12, a) != self.phi(b1, self.phi(b2, a)) {
                        return Err(Error::InvalidAction(format!(
                            "not a homomorphism: φ({b1}*{b2})({a}) != φ({b1})(φ({b2})({a}))"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Tabulates `A ⋊_φ B` with `(a, b)` numbered `(a - 1)|B| + b`.
pub fn make_semidirect(spec: &SemidirectSpec) -> Result<GroupTable> {
    spec.validate()?;
    let (na, nb) = (spec.a.order(), spec.b.order());
    let n = na * nb;
    check_tabulable(n)?;
    let pair = |g: usize| (ElementId::from_index(g / nb), ElementId::from_index(g % nb));
    let id = |a: ElementId, b: ElementId| (a.index() * nb + b.index()) as u32 + 1;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (a1, b1) = pair(x);
        for y in 0..n {
            let (a2, b2) = pair(y);
            let a = spec.a.mult(a1, spec.phi(b1, a2));
            table.push(id(a, spec.b.mult(b1, b2)));
        }
    }
    GroupTable::from_rows(n, table, false)
}

/// Composes permutations left to right: `(x * y)(p) = y(x(p))`.
fn compose(x: &[u32], y: &[u32]) -> Vec<u32> {
    x.iter().map(|&p| y[p as usize]).collect()
}

/// Tabulates a set of permutations of `0..degree` closed under composition.
/// Elements are numbered in lexicographic order, so the identity is 1.
pub fn from_permutations(mut perms: Vec<Vec<u32>>) -> Result<GroupTable> {
    perms.sort();
    perms.dedup();
    let n = perms.len();
    check_tabulable(n)?;
    let index: HashMap<&[u32], u32> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i as u32 + 1)).collect();
    let mut table = Vec::with_capacity(n * n);
    for x in &perms {
        for y in &perms {
            let z = compose(x, y);
            let id = index
                .get(z.as_slice())
                .ok_or_else(|| Error::InvalidParameter("permutation set is not closed".into()))?;
            table.push(*id);
        }
    }
    GroupTable::from_rows(n, table, false)
}

/// All products of `generators`, by breadth-first closure.
pub fn permutation_closure(degree: usize, generators: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let id: Vec<u32> = (0..degree as u32).collect();
    let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
    let mut queue = VecDeque::from([id.clone()]);
    seen.insert(id, ());
    let mut out = Vec::new();
    while let Some(p) = queue.pop_front() {
        for s in generators {
            let q = compose(&p, s);
            if !seen.contains_key(&q) {
                seen.insert(q.clone(), ());
                queue.push_back(q);
            }
        }
        out.push(p);
    }
    out
}

fn symmetric_generators(k: usize) -> Vec<Vec<u32>> {
    let mut swap: Vec<u32> = (0..k as u32).collect();
    if k >= 2 {
        swap.swap(0, 1);
    }
    let cycle: Vec<u32> = (0..k as u32).map(|i| (i + 1) % k as u32).collect();
    vec![swap, cycle]
}

fn is_even(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for start in 0..p.len() {
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

/// `S_k`, permutations in lexicographic order.
pub fn make_symmetric(k: usize) -> Result<GroupTable> {
    if k == 0 || k > 7 {
        return Err(Error::InvalidParameter(format!("symmetric degree {k} outside 1..=7")));
    }
    from_permutations(permutation_closure(k, &symmetric_generators(k)))
}

/// `A_k`, even permutations in lexicographic order.
pub fn make_alternating(k: usize) -> Result<GroupTable> {
    if k == 0 || k > 7 {
        return Err(Error::InvalidParameter(format!("alternating degree {k} outside 1..=7")));
    }
    let even = permutation_closure(k, &symmetric_generators(k)).into_iter().filter(|p| is_even(p)).collect();
    from_permutations(even)
}

/// `PSL(2, 7)` acting on the projective line over `F_7` (points `0..7`,
/// with 7 standing for infinity), generated by `z ↦ z + 1` and `z ↦ -1/z`.
pub fn psl_2_7() -> GroupTable {
    const INF: u32 = 7;
    let shift: Vec<u32> = (0..8).map(|z| if z == INF { INF } else { (z + 1) % 7 }).collect();
    let inv7 = |z: u32| (1..7).find(|w| (z * w) % 7 == 1).unwrap();
    let flip: Vec<u32> = (0..8)
        .map(|z| match z {
            INF => 0,
            0 => INF,
            z => (7 - inv7(z)) % 7,
        })
        .collect();
    from_permutations(permutation_closure(8, &[shift, flip])).expect("PSL(2,7) tabulates")
}

/// `C_m ⋊ C_d` with the generator of `C_d` acting by `x ↦ x^r`, computed
/// arithmetically. Element `(g^i, h^j)` is numbered `i d + j + 1`, matching
/// [`make_semidirect`] on [`SemidirectSpec::cyclic_by_cyclic`].
#[derive(Clone, Debug)]
pub struct Metacyclic {
    m: u64,
    d: u64,
    r: u64,
    /// `r^j mod m` for `j` in `0..d`.
    powers: Vec<u64>,
}

impl Metacyclic {
    pub fn new(m: u64, d: u64, r: u64) -> Result<Self> {
        if m == 0 || d == 0 {
            return Err(Error::InvalidParameter("cyclic factor orders must be positive".into()));
        }
        if m.checked_mul(d).is_none_or(|n| n > u32::MAX as u64 / 2) {
            return Err(Error::InvalidParameter("order overflows".into()));
        }
        let r = r % m;
        if gcd(r, m) != 1 && m > 1 {
            return Err(Error::InvalidAction(format!("multiplier {r} is not a unit mod {m}")));
        }
        let mut powers = Vec::with_capacity(d as usize);
        let mut p = 1 % m;
        for _ in 0..d {
            powers.push(p);
            p = p * r % m;
        }
        if p != 1 % m {
            return Err(Error::InvalidAction(format!("{r}^{d} is not 1 mod {m}")));
        }
        Ok(Metacyclic { m, d, r, powers })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Metacyclic::new(n, 1, 1)
    }

    pub fn factors(&self) -> (u64, u64, u64) {
        (self.m, self.d, self.r)
    }

    fn split(&self, x: ElementId) -> (u64, u64) {
        let v = x.index() as u64;
        (v / self.d, v % self.d)
    }

    fn join(&self, i: u64, j: u64) -> ElementId {
        ElementId::from_index((i * self.d + j) as usize)
    }
}

impl Group for Metacyclic {
    fn order(&self) -> usize {
        (self.m * self.d) as usize
    }

    fn identity(&self) -> ElementId {
        ElementId::new(1)
    }

    fn mult(&self, x: ElementId, y: ElementId) -> ElementId {
        let (i1, j1) = self.split(x);
        let (i2, j2) = self.split(y);
        self.join((i1 + self.powers[j1 as usize] * i2) % self.m, (j1 + j2) % self.d)
    }

    fn inverse(&self, x: ElementId) -> ElementId {
        let (i, j) = self.split(x);
        let jinv = (self.d - j) % self.d;
        let i2 = (self.m - self.powers[jinv as usize] * i % self.m) % self.m;
        self.join(i2, jinv)
    }
}

/// `A x B` computed componentwise, numbered like [`make_direct`].
#[derive(Clone, Debug)]
pub struct DirectProduct<A, B> {
    a: A,
    b: B,
}

impl<A: Group, B: Group> DirectProduct<A, B> {
    pub fn new(a: A, b: B) -> Self {
        DirectProduct { a, b }
    }

    fn split(&self, x: ElementId) -> (ElementId, ElementId) {
        let nb = self.b.order();
        (ElementId::from_index(x.index() / nb), ElementId::from_index(x.index() % nb))
    }

    fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId::from_index(a.index() * self.b.order() + b.index())
    }
}

impl<A: Group, B: Group> Group for DirectProduct<A, B> {
    fn order(&self) -> usize {
        self.a.order() * self.b.order()
    }

    fn identity(&self) -> ElementId {
        self.join(self.a.identity(), self.b.identity())
    }

    fn mult(&self, x: ElementId, y: ElementId) -> ElementId {
        let (a1, b1) = self.split(x);
        let (a2, b2) = self.split(y);
        self.join(self.a.mult(a1, a2), self.b.mult(b1, b2))
    }

    fn inverse(&self, x: ElementId) -> ElementId {
        let (a, b) = self.split(x);
        self.join(self.a.inverse(a), self.b.inverse(b))
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::structure::element_order;

    fn e(v: u32) -> ElementId {
        ElementId::new(v)
    }

    fn sorted_orders(g: &impl Group) -> Vec<u64> {
        let mut v: Vec<u64> = g.elements().map(|x| element_order(g, x)).collect();
        v.sort();
        v
    }

    #[test]
    fn cyclic_groups() {
        let c1 = make_cyclic(1).unwrap();
        assert_eq!(c1.order(), 1);
        assert_eq!(c1.identity(), e(1));
        let c4 = make_cyclic(4).unwrap();
        assert_eq!(element_order(&c4, e(2)), 4);
        let c6 = make_cyclic(6).unwrap();
        let orders: Vec<u64> = c6.elements().map(|x| element_order(&c6, x)).collect();
        assert_eq!(orders, vec![1, 6, 3, 2, 3, 6]);
        assert!(make_cyclic(0).is_err());
    }

    #[test]
    fn klein_four() {
        let c2 = make_cyclic(2).unwrap();
        let v4 = make_direct(&c2, &c2).unwrap();
        assert_eq!(sorted_orders(&v4), vec![1, 2, 2, 2]);
    }

    #[test]
    fn c2_times_c3_matches_c6_orders() {
        let g = make_direct(&make_cyclic(2).unwrap(), &make_cyclic(3).unwrap()).unwrap();
        assert_eq!(sorted_orders(&g), sorted_orders(&make_cyclic(6).unwrap()));
    }

    #[test]
    fn quaternion_relations() {
        let q = make_quaternion();
        assert_eq!(q.mult(e(2), e(2)), e(3));
        assert_eq!(element_order(&q, e(5)), 4);
        assert_eq!(q.mult(e(5), e(5)), e(3));
        // (ab)^2 = a^2
        assert_eq!(q.mult(e(6), e(6)), e(3));
        let involutions = q.elements().filter(|&x| element_order(&q, x) == 2).count();
        assert_eq!(involutions, 1);
        q.check_associative().unwrap();
    }

    #[test]
    fn q8_times_c3() {
        let g = make_direct(&make_quaternion(), &make_cyclic(3).unwrap()).unwrap();
        assert_eq!(g.order(), 24);
        g.check_associative().unwrap();
    }

    #[test]
    fn semidirect_s3() {
        let spec = SemidirectSpec::cyclic_by_cyclic(3, 2, 2).unwrap();
        let s3 = make_semidirect(&spec).unwrap();
        s3.check_associative().unwrap();
        assert_eq!(sorted_orders(&s3), vec![1, 2, 2, 2, 3, 3]);
        assert!(s3.elements().any(|x| s3.elements().any(|y| s3.mult(x, y) != s3.mult(y, x))));
    }

    #[test]
    fn trivial_action_is_direct() {
        let a = make_cyclic(3).unwrap();
        let b = make_cyclic(4).unwrap();
        let semi = make_semidirect(&SemidirectSpec::trivial(a.clone(), b.clone())).unwrap();
        assert_eq!(semi, make_direct(&a, &b).unwrap());
    }

    #[test]
    fn order_21_group() {
        let g = make_semidirect(&SemidirectSpec::cyclic_by_cyclic(7, 3, 2).unwrap()).unwrap();
        assert_eq!(g.order(), 21);
        g.check_associative().unwrap();
    }

    #[test]
    fn rejects_bad_actions() {
        // 2 has order 4 mod 5, not 2.
        assert!(matches!(Metacyclic::new(5, 2, 2), Err(Error::InvalidAction(_))));
        // not a unit
        assert!(matches!(Metacyclic::new(6, 2, 2), Err(Error::InvalidAction(_))));
        let a = make_cyclic(3).unwrap();
        let b = make_cyclic(2).unwrap();
        let mut spec = SemidirectSpec::trivial(a, b);
        spec.action[1] = vec![1, 3, 2];
        spec.action[0] = vec![1, 3, 2];
        assert!(matches!(make_semidirect(&spec), Err(Error::InvalidAction(_))));
        spec.action[0] = vec![2, 1, 3];
        assert!(matches!(make_semidirect(&spec), Err(Error::InvalidAction(_))));
    }

    #[test]
    fn permutation_groups() {
        let s3 = make_symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), e(1));
        let s4 = make_symmetric(4).unwrap();
        assert_eq!(s4.order(), 24);
        let a4 = make_alternating(4).unwrap();
        assert_eq!(a4.order(), 12);
        let a5 = make_alternating(5).unwrap();
        assert_eq!(a5.order(), 60);
        let psl = psl_2_7();
        assert_eq!(psl.order(), 168);
        for g in [&s4, &a4, &a5] {
            g.check_associative().unwrap();
        }
    }

    #[test]
    fn implicit_groups_agree_with_tables() {
        let mc = Metacyclic::new(7, 3, 2).unwrap();
        let table = make_semidirect(&SemidirectSpec::cyclic_by_cyclic(7, 3, 2).unwrap()).unwrap();
        assert_eq!(GroupTable::from_group(&mc), table);
        let q = make_quaternion();
        let c3 = make_cyclic(3).unwrap();
        assert_eq!(GroupTable::from_group(&DirectProduct::new(&q, &c3)), make_direct(&q, &c3).unwrap());
        for x in mc.elements() {
            assert_eq!(mc.mult(x, mc.inverse(x)), mc.identity());
        }
    }
}
