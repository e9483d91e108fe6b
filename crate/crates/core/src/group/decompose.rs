//! Exhaustive searches for product decompositions of a group: Z-groups as
//! cyclic-by-cyclic, Hamiltonian groups as `Q8 x C`, and general internal
//! semidirect products `A ⋊ B`.
//!
//! Preprocessing cost is not charged to any representation, so these
//! searches favour simplicity over speed; they are polynomial at desk scale.

use std::collections::BTreeMap;

use super::build::SemidirectSpec;
use super::structure::{
    closure, element_order, factorize, generating_set, is_abelian, is_normal, normal_closure, Subgroup,
};
use super::{ElementId, Group, GroupTable};
use crate::error::{Error, Result};

/// The first prime whose Sylow subgroup is not cyclic, if any.
pub fn z_group_obstruction<G: Group + ?Sized>(g: &G) -> Option<u64> {
    let orders: Vec<u64> = g.elements().map(|x| element_order(g, x)).collect();
    factorize(g.order() as u64).into_iter().find_map(|(p, k)| {
        let pk = p.pow(k);
        (!orders.contains(&pk)).then_some(p)
    })
}

/// `G = <x> ⋊ <y>` with `<x>` normal of order `m`, `<y>` of order `d`, and
/// `y x y^-1 = x^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZGroupDecomposition {
    pub normal_generator: ElementId,
    pub complement_generator: ElementId,
    pub m: u64,
    pub d: u64,
    pub r: u64,
}

impl ZGroupDecomposition {
    /// `(i, j)` with `g = x^i y^j` for every element, by element index.
    pub fn exponents<G: Group + ?Sized>(&self, g: &G) -> Vec<(u32, u32)> {
        let mut out = vec![(0, 0); g.order()];
        let mut xi = g.identity();
        for i in 0..self.m {
            let mut z = xi;
            for j in 0..self.d {
                out[z.index()] = (i as u32, j as u32);
                z = g.mult(z, self.complement_generator);
            }
            xi = g.mult(xi, self.normal_generator);
        }
        out
    }

    pub fn to_spec(&self) -> Result<SemidirectSpec> {
        SemidirectSpec::cyclic_by_cyclic(self.m, self.d, self.r)
    }

    /// Element `x^i y^j` paired with `(i + 1, j + 1)` in the numbering of
    /// [`to_spec`](Self::to_spec).
    pub fn pairing<G: Group + ?Sized>(&self, g: &G) -> Vec<(ElementId, ElementId)> {
        self.exponents(g)
            .into_iter()
            .map(|(i, j)| (ElementId::from_index(i as usize), ElementId::from_index(j as usize)))
            .collect()
    }
}

fn coprime_power_free(g: &(impl Group + ?Sized), y: ElementId, d: u64, member: &[bool]) -> bool {
    factorize(d).into_iter().all(|(q, _)| !member[g.pow(y, d / q).index()])
}

/// Splits a Z-group as a cyclic normal subgroup extended by a cyclic
/// complement, trying normal cyclic subgroups from the largest down.
pub fn find_zgroup_decomposition<G: Group + ?Sized>(g: &G) -> Result<ZGroupDecomposition> {
    if let Some(p) = z_group_obstruction(g) {
        return Err(Error::precondition(format!("not a Z-group: Sylow {p}-subgroup not cyclic")));
    }
    let n = g.order() as u64;
    let orders: Vec<u64> = g.elements().map(|x| element_order(g, x)).collect();
    let ambient = generating_set(g);
    let mut candidates: Vec<ElementId> = g.elements().collect();
    candidates.sort_by_key(|x| (std::cmp::Reverse(orders[x.index()]), *x));
    let mut visited = vec![false; g.order()];
    let mut member = vec![false; g.order()];
    for x in candidates {
        if visited[x.index()] {
            continue;
        }
        let m = orders[x.index()];
        let powers = Subgroup::cyclic(g, x).members().to_vec();
        for (i, p) in powers.iter().enumerate() {
            if super::build::gcd(i as u64, m) == 1 {
                visited[p.index()] = true;
            }
        }
        member.fill(false);
        for p in &powers {
            member[p.index()] = true;
        }
        if is_normal(g, &member, &[x], &ambient).is_some() {
            continue;
        }
        let d = n / m;
        let complement = g.elements().find(|&y| orders[y.index()] == d && coprime_power_free(g, y, d, &member));
        if let Some(y) = complement {
            let c = g.conjugate(x, y);
            let r = powers.iter().position(|&p| p == c).expect("normal subgroup") as u64;
            return Ok(ZGroupDecomposition { normal_generator: x, complement_generator: y, m, d, r });
        }
    }
    Err(Error::precondition("no cyclic-by-cyclic decomposition found"))
}

/// `G = Q8 x C` as internal direct product.
#[derive(Clone, Debug)]
pub struct HamiltonianDecomposition {
    /// Images of the canonical quaternion numbering
    /// `e, a, a^2, a^3, b, ab, a^2b, a^3b`.
    pub q8: [ElementId; 8],
    /// Elements of the abelian factor, identity first.
    pub complement: Vec<ElementId>,
    /// `(q, c)` for every element: quaternion index in `1..=8` and local id
    /// in `complement`.
    pub pairing: Vec<(u8, ElementId)>,
}

impl HamiltonianDecomposition {
    pub fn complement_group<'g, G: Group + ?Sized>(&self, g: &'g G) -> Subgroup<'g, G> {
        Subgroup::new(g, self.complement.clone())
    }
}

/// Finds `G = Q8 x C` with `C` abelian, after checking that `G` is
/// nonabelian and every cyclic subgroup is normal.
pub fn find_hamiltonian_decomposition<G: Group + ?Sized>(g: &G) -> Result<HamiltonianDecomposition> {
    if is_abelian(g) {
        return Err(Error::precondition("not Hamiltonian: group is abelian"));
    }
    let n = g.order();
    let ambient = generating_set(g);
    let orders: Vec<u64> = g.elements().map(|x| element_order(g, x)).collect();
    // Subgroups of a cyclic normal subgroup are characteristic in it, so only
    // maximal cyclic subgroups need checking.
    let mut candidates: Vec<ElementId> = g.elements().collect();
    candidates.sort_by_key(|x| (std::cmp::Reverse(orders[x.index()]), *x));
    let mut covered = vec![false; n];
    let mut member = vec![false; n];
    for x in candidates {
        if covered[x.index()] {
            continue;
        }
        let powers = Subgroup::cyclic(g, x).members().to_vec();
        member.fill(false);
        for p in &powers {
            member[p.index()] = true;
        }
        if let Some((x, y)) = is_normal(g, &member, &[x], &ambient) {
            return Err(Error::precondition(format!(
                "not Hamiltonian: subgroup <{x}> is not normal ({y}*{x}*{y}^-1 = {})",
                g.conjugate(x, y)
            )));
        }
        for p in powers {
            covered[p.index()] = true;
        }
    }
    let fours: Vec<ElementId> = g.elements().filter(|x| orders[x.index()] == 4).collect();
    let (a, b) = fours
        .iter()
        .find_map(|&a| {
            let a2 = g.mult(a, a);
            let ainv = g.inverse(a);
            fours
                .iter()
                .find(|&&b| {
                    let in_a = b == a || b == ainv || b == a2;
                    !in_a && g.mult(b, b) == a2 && g.conjugate(a, b) == ainv
                })
                .map(|&b| (a, b))
        })
        .ok_or_else(|| Error::precondition("no quaternion subgroup found"))?;
    let e = g.identity();
    let a2 = g.mult(a, a);
    let a3 = g.mult(a2, a);
    let q8 = [e, a, a2, a3, b, g.mult(a, b), g.mult(a2, b), g.mult(a3, b)];

    let central: Vec<ElementId> =
        g.elements().filter(|&z| ambient.iter().all(|&s| g.mult(z, s) == g.mult(s, z))).collect();
    let target = n / 8;
    let mut c_gens: Vec<ElementId> = Vec::new();
    let mut c_elems = vec![e];
    let mut in_c = vec![false; n];
    in_c[e.index()] = true;
    for z in central {
        if c_elems.len() == target {
            break;
        }
        if in_c[z.index()] {
            continue;
        }
        c_gens.push(z);
        let cand = closure(g, &c_gens);
        if cand.contains(&a2) {
            c_gens.pop();
            continue;
        }
        in_c.fill(false);
        for x in &cand {
            in_c[x.index()] = true;
        }
        c_elems = cand;
    }
    if c_elems.len() != target {
        return Err(Error::precondition("no abelian complement to the quaternion subgroup"));
    }
    let mut pairing = vec![None; n];
    for (qi, &q) in q8.iter().enumerate() {
        for (ci, &c) in c_elems.iter().enumerate() {
            pairing[g.mult(q, c).index()] = Some((qi as u8 + 1, ElementId::from_index(ci)));
        }
    }
    let pairing = pairing
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::precondition("quaternion subgroup and complement do not span the group"))?;
    Ok(HamiltonianDecomposition { q8, complement: c_elems, pairing })
}

/// An internal semidirect product `G = A ⋊ B`: `A` normal, `B` a complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupDecomposition {
    pub normal: Vec<ElementId>,
    pub complement: Vec<ElementId>,
}

/// Tabulates a subgroup; cyclic subgroups are renumbered by powers of their
/// lowest-id generator, so `x^i` is `i + 1`.
pub fn factor_table<G: Group + ?Sized>(g: &G, elements: &[ElementId]) -> (GroupTable, Vec<ElementId>) {
    let k = elements.len() as u64;
    let generator = elements.iter().copied().filter(|&x| element_order(g, x) == k).min();
    let sub = match generator {
        Some(x) => Subgroup::cyclic(g, x),
        None => Subgroup::new(g, elements.to_vec()),
    };
    (GroupTable::from_group(&sub), sub.members().to_vec())
}

impl SubgroupDecomposition {
    /// The standalone [`SemidirectSpec`] with the action `φ(b)(a) = b a b^-1`,
    /// and each element of `G` paired with its `(a, b)` factors, `g = a b`.
    pub fn to_spec<G: Group + ?Sized>(&self, g: &G) -> Result<(SemidirectSpec, Vec<(ElementId, ElementId)>)> {
        let (a_table, a_elems) = factor_table(g, &self.normal);
        let (b_table, b_elems) = factor_table(g, &self.complement);
        let mut a_local = vec![0u32; g.order()];
        for (i, x) in a_elems.iter().enumerate() {
            a_local[x.index()] = i as u32 + 1;
        }
        let mut action = Vec::with_capacity(b_elems.len());
        for &b in &b_elems {
            let row = a_elems
                .iter()
                .map(|&a| match a_local[g.conjugate(a, b).index()] {
                    0 => Err(Error::precondition("first factor is not normal")),
                    v => Ok(v),
                })
                .collect::<Result<Vec<u32>>>()?;
            action.push(row);
        }
        let mut pairing = vec![None; g.order()];
        for (ai, &a) in a_elems.iter().enumerate() {
            for (bi, &b) in b_elems.iter().enumerate() {
                pairing[g.mult(a, b).index()] = Some((ElementId::from_index(ai), ElementId::from_index(bi)));
            }
        }
        let pairing = pairing
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::precondition("factors do not span the group"))?;
        Ok((SemidirectSpec { a: a_table, b: b_table, action }, pairing))
    }
}

type Bits = Vec<u64>;

fn to_bits(n: usize, elems: &[ElementId]) -> Bits {
    let mut bits = vec![0u64; n.div_ceil(64)];
    for x in elems {
        bits[x.index() / 64] |= 1 << (x.index() % 64);
    }
    bits
}

/// All normal subgroups as `(elements, generators)`, keyed by membership.
fn normal_subgroups<G: Group + ?Sized>(g: &G) -> Vec<(Vec<ElementId>, Vec<ElementId>)> {
    let n = g.order();
    let ambient = generating_set(g);
    let mut found: BTreeMap<Bits, (Vec<ElementId>, Vec<ElementId>)> = BTreeMap::new();
    for x in g.elements() {
        let (elems, gens) = normal_closure(g, &[x], &ambient);
        found.entry(to_bits(n, &elems)).or_insert((elems, gens));
    }
    loop {
        let current: Vec<(Vec<ElementId>, Vec<ElementId>)> = found.values().cloned().collect();
        let mut grew = false;
        for (i, (_, g1)) in current.iter().enumerate() {
            for (_, g2) in &current[i + 1..] {
                let mut gens = g1.clone();
                gens.extend_from_slice(g2);
                let elems = closure(g, &gens);
                let key = to_bits(n, &elems);
                if let std::collections::btree_map::Entry::Vacant(e) = found.entry(key) {
                    e.insert((elems, gens));
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut all: Vec<_> = found.into_values().collect();
    all.sort_by(|a, b| {
        b.0.len().cmp(&a.0.len()).then_with(|| {
            let mut x = a.0.clone();
            let mut y = b.0.clone();
            x.sort();
            y.sort();
            x.cmp(&y)
        })
    });
    all
}

/// Closure of `gens`, abandoned once it exceeds `limit` elements or meets
/// `avoid` outside the identity.
fn bounded_closure<G: Group + ?Sized>(
    g: &G,
    gens: &[ElementId],
    limit: usize,
    avoid: &[bool],
) -> Option<Vec<ElementId>> {
    let e = g.identity();
    let mut seen = std::collections::HashSet::from([e]);
    let mut out = vec![e];
    let mut next = 0;
    while next < out.len() {
        let x = out[next];
        next += 1;
        for &s in gens {
            let y = g.mult(x, s);
            if seen.insert(y) {
                if avoid[y.index()] || out.len() == limit {
                    return None;
                }
                out.push(y);
            }
        }
    }
    Some(out)
}

/// A complement to the normal subgroup `normal` generated by at most two
/// elements.
fn find_complement<G: Group + ?Sized>(g: &G, normal: &[ElementId], orders: &[u64]) -> Option<Vec<ElementId>> {
    let n = g.order();
    let target = n / normal.len();
    let mut avoid = vec![false; n];
    for x in normal {
        avoid[x.index()] = true;
    }
    avoid[g.identity().index()] = false;
    let outside: Vec<ElementId> = g
        .elements()
        .filter(|x| !avoid[x.index()] && (target as u64).is_multiple_of(orders[x.index()]) && *x != g.identity())
        .collect();
    for &x in &outside {
        if orders[x.index()] == target as u64 {
            if let Some(h) = bounded_closure(g, &[x], target, &avoid) {
                return Some(h);
            }
        }
    }
    for (i, &x) in outside.iter().enumerate() {
        for &y in &outside[i + 1..] {
            if let Some(h) = bounded_closure(g, &[x, y], target, &avoid) {
                if h.len() == target {
                    return Some(h);
                }
            }
        }
    }
    None
}

/// A nontrivial internal semidirect decomposition, if one is found.
///
/// Abelian groups split off the first basis factor. Otherwise normal
/// subgroups are tried from the largest down, each with a complement
/// generated by one or two elements.
pub fn find_semidirect_decomposition<G: Group + ?Sized>(g: &G) -> Option<SubgroupDecomposition> {
    let n = g.order();
    if n <= 1 {
        return None;
    }
    if is_abelian(g) {
        let basis = super::structure::abelian_basis(g).ok()?;
        if basis.len() < 2 {
            return None;
        }
        return Some(SubgroupDecomposition {
            normal: closure(g, &basis.generators[..1]),
            complement: closure(g, &basis.generators[1..]),
        });
    }
    let orders: Vec<u64> = g.elements().map(|x| element_order(g, x)).collect();
    for (normal, _) in normal_subgroups(g) {
        if normal.len() == 1 || normal.len() == n {
            continue;
        }
        if let Some(complement) = find_complement(g, &normal, &orders) {
            return Some(SubgroupDecomposition { normal, complement });
        }
    }
    None
}

/// `G = A ⋊ <c>` with `A` abelian and normal, as `(A, c)`. Abelian groups
/// return `(G, e)`.
pub fn find_abelian_by_cyclic<G: Group + ?Sized>(g: &G) -> Option<(Vec<ElementId>, ElementId)> {
    let n = g.order();
    if is_abelian(g) {
        return Some((closure(g, &generating_set(g)), g.identity()));
    }
    let orders: Vec<u64> = g.elements().map(|x| element_order(g, x)).collect();
    for (normal, gens) in normal_subgroups(g) {
        if normal.len() == n {
            continue;
        }
        let commutes = gens.iter().all(|&x| gens.iter().all(|&y| g.mult(x, y) == g.mult(y, x)));
        if !commutes {
            continue;
        }
        let d = (n / normal.len()) as u64;
        let mut member = vec![false; n];
        for x in &normal {
            member[x.index()] = true;
        }
        if let Some(c) = g.elements().find(|&c| orders[c.index()] == d && coprime_power_free(g, c, d, &member)) {
            return Some((normal, c));
        }
    }
    None
}
