//! Structure discovery: element orders, subgroups, abelian bases, the
//! Z-group and simplicity tests.

use super::{ElementId, Group};
use crate::error::{Error, Result};

/// Prime factorization as `(p, exponent)` pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Smallest `i >= 1` with `x^i = e`.
pub fn element_order<G: Group + ?Sized>(g: &G, x: ElementId) -> u64 {
    let n = g.order() as u64;
    let e = g.identity();
    let mut ord = n;
    for (p, _) in factorize(n) {
        while ord.is_multiple_of(p) && g.pow(x, ord / p) == e {
            ord /= p;
        }
    }
    ord
}

/// Elements of the subgroup generated by `gens`, in breadth-first order from
/// the identity (right multiplication by generators in the given order).
pub fn closure<G: Group + ?Sized>(g: &G, gens: &[ElementId]) -> Vec<ElementId> {
    let mut member = vec![false; g.order()];
    closure_into(g, gens, &mut member)
}

fn closure_into<G: Group + ?Sized>(g: &G, gens: &[ElementId], member: &mut [bool]) -> Vec<ElementId> {
    member.fill(false);
    let e = g.identity();
    member[e.index()] = true;
    let mut out = vec![e];
    let mut next = 0;
    while next < out.len() {
        let x = out[next];
        next += 1;
        for &s in gens {
            let y = g.mult(x, s);
            if !member[y.index()] {
                member[y.index()] = true;
                out.push(y);
            }
        }
    }
    out
}

/// Greedy generating set: scan ids in order, keep any element outside the
/// subgroup generated so far.
pub fn generating_set<G: Group + ?Sized>(g: &G) -> Vec<ElementId> {
    let mut member = vec![false; g.order()];
    member[g.identity().index()] = true;
    let mut gens = Vec::new();
    let mut size = 1;
    for x in g.elements() {
        if size == g.order() {
            break;
        }
        if !member[x.index()] {
            gens.push(x);
            size = closure_into(g, &gens, &mut member).len();
        }
    }
    gens
}

/// A pair of generators that do not commute, if any.
pub fn noncommuting_pair<G: Group + ?Sized>(g: &G) -> Option<(ElementId, ElementId)> {
    let gens = generating_set(g);
    for (i, &x) in gens.iter().enumerate() {
        for &y in &gens[i + 1..] {
            if g.mult(x, y) != g.mult(y, x) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Abelian iff the generators pairwise commute.
pub fn is_abelian<G: Group + ?Sized>(g: &G) -> bool {
    noncommuting_pair(g).is_none()
}

/// True if `y x y^-1` stays in the subgroup for every ambient generator `y`
/// and every subgroup generator `x`.
pub(crate) fn is_normal<G: Group + ?Sized>(
    g: &G,
    member: &[bool],
    sub_gens: &[ElementId],
    ambient_gens: &[ElementId],
) -> Option<(ElementId, ElementId)> {
    for &y in ambient_gens {
        for &x in sub_gens {
            if !member[g.conjugate(x, y).index()] {
                return Some((x, y));
            }
        }
    }
    None
}

/// Smallest normal subgroup containing `seeds`, as `(elements, generators)`.
pub(crate) fn normal_closure<G: Group + ?Sized>(
    g: &G,
    seeds: &[ElementId],
    ambient_gens: &[ElementId],
) -> (Vec<ElementId>, Vec<ElementId>) {
    let mut member = vec![false; g.order()];
    let mut gens: Vec<ElementId> = seeds.to_vec();
    let mut elems = closure_into(g, &gens, &mut member);
    loop {
        let mut grew = false;
        let mut i = 0;
        while i < gens.len() {
            for &y in ambient_gens {
                let c = g.conjugate(gens[i], y);
                if !member[c.index()] {
                    gens.push(c);
                    elems = closure_into(g, &gens, &mut member);
                    grew = true;
                }
            }
            i += 1;
        }
        if !grew {
            return (elems, gens);
        }
    }
}

/// Simple in the standard sense: nontrivial with no proper nontrivial
/// normal subgroup.
pub fn is_simple<G: Group + ?Sized>(g: &G) -> bool {
    let n = g.order();
    if n == 1 {
        return false;
    }
    if is_abelian(g) {
        return is_prime(n as u64);
    }
    let ambient = generating_set(g);
    let e = g.identity();
    g.elements().filter(|&x| x != e).all(|x| normal_closure(g, &[x], &ambient).0.len() == n)
}

/// Z-group test: every Sylow subgroup is cyclic, i.e. for every prime power
/// `p^k` exactly dividing `n` some element has order `p^k`.
pub fn is_z_group<G: Group + ?Sized>(g: &G) -> bool {
    let n = g.order() as u64;
    let orders: Vec<u64> = g.elements().map(|x| element_order(g, x)).collect();
    factorize(n).into_iter().all(|(p, k)| {
        let pk = p.pow(k);
        orders.contains(&pk)
    })
}

/// A subgroup of a parent group, renumbered `1..=|H|` in the order of
/// `elements`.
#[derive(Clone, Debug)]
pub struct Subgroup<'g, G: Group + ?Sized> {
    parent: &'g G,
    elements: Vec<ElementId>,
    local: Vec<u32>,
}

impl<'g, G: Group + ?Sized> Subgroup<'g, G> {
    /// `elements` must be closed under multiplication.
    pub fn new(parent: &'g G, elements: Vec<ElementId>) -> Self {
        let mut local = vec![0u32; parent.order()];
        for (i, x) in elements.iter().enumerate() {
            local[x.index()] = i as u32 + 1;
        }
        Subgroup { parent, elements, local }
    }

    pub fn generated(parent: &'g G, gens: &[ElementId]) -> Self {
        Subgroup::new(parent, closure(parent, gens))
    }

    /// `<x>` numbered so that `x^i` is `i + 1`.
    pub fn cyclic(parent: &'g G, x: ElementId) -> Self {
        let mut elements = vec![parent.identity()];
        let mut y = x;
        while y != parent.identity() {
            elements.push(y);
            y = parent.mult(y, x);
        }
        Subgroup::new(parent, elements)
    }

    pub fn parent(&self) -> &'g G {
        self.parent
    }

    pub fn members(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn contains_parent(&self, x: ElementId) -> bool {
        self.local[x.index()] != 0
    }

    pub fn embed(&self, x: ElementId) -> ElementId {
        self.elements[x.index()]
    }

    pub fn local_id(&self, x: ElementId) -> Option<ElementId> {
        match self.local[x.index()] {
            0 => None,
            v => Some(ElementId::new(v)),
        }
    }
}

impl<G: Group + ?Sized> Group for Subgroup<'_, G> {
    fn order(&self) -> usize {
        self.elements.len()
    }

    fn identity(&self) -> ElementId {
        self.local_id(self.parent.identity()).expect("subgroup contains the identity")
    }

    fn mult(&self, x: ElementId, y: ElementId) -> ElementId {
        let z = self.parent.mult(self.embed(x), self.embed(y));
        self.local_id(z).expect("subgroup is closed")
    }

    fn inverse(&self, x: ElementId) -> ElementId {
        self.local_id(self.parent.inverse(self.embed(x))).expect("subgroup is closed")
    }
}

/// Basis of an abelian group: generators of independent prime-power cyclic
/// factors whose orders multiply to `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianBasis {
    pub generators: Vec<ElementId>,
    pub orders: Vec<u64>,
}

impl AbelianBasis {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Exponent tuple of every element, indexed by element index.
    pub fn coordinates<G: Group + ?Sized>(&self, g: &G) -> Result<Vec<Vec<u32>>> {
        let t = self.len();
        let mut coords: Vec<Option<Vec<u32>>> = vec![None; g.order()];
        let mut frontier = vec![(g.identity(), vec![0u32; t])];
        for (i, (&gen, &ord)) in self.generators.iter().zip(&self.orders).enumerate() {
            let mut next = Vec::with_capacity(frontier.len() * ord as usize);
            for (x, tuple) in frontier {
                let mut y = x;
                for c in 0..ord as u32 {
                    let mut tup = tuple.clone();
                    tup[i] = c;
                    next.push((y, tup));
                    y = g.mult(y, gen);
                }
            }
            frontier = next;
        }
        for (x, tuple) in frontier {
            if coords[x.index()].replace(tuple).is_some() {
                return Err(Error::precondition(format!("basis is not independent at element {x}")));
            }
        }
        coords
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| Error::precondition(format!("basis does not reach element {}", i + 1))))
            .collect()
    }
}

/// Decomposes an abelian group into prime-power cyclic factors.
///
/// For each prime `p`, repeatedly take the element of largest order modulo
/// the subgroup built so far, correct it by an element of that subgroup so
/// its order equals its order in the quotient, and adjoin it. Primes come in
/// ascending order; orders descend within each prime.
pub fn abelian_basis<G: Group + ?Sized>(g: &G) -> Result<AbelianBasis> {
    if let Some((x, y)) = noncommuting_pair(g) {
        return Err(Error::precondition(format!("group is not abelian: {x} and {y} do not commute")));
    }
    let n = g.order() as u64;
    let e = g.identity();
    let orders: Vec<u64> = g.elements().map(|x| element_order(g, x)).collect();
    let mut basis = AbelianBasis { generators: Vec::new(), orders: Vec::new() };
    for (p, k) in factorize(n) {
        let target = p.pow(k) as usize;
        let pelems: Vec<ElementId> =
            g.elements().filter(|x| (target as u64).is_multiple_of(orders[x.index()])).collect();
        let mut member = vec![false; g.order()];
        member[e.index()] = true;
        let mut sub = vec![e];
        while sub.len() < target {
            // order of x modulo the current subgroup
            let quotient_order = |x: ElementId| {
                let mut q = 1u64;
                let mut y = x;
                while !member[y.index()] {
                    y = g.pow(y, p);
                    q *= p;
                }
                q
            };
            let (x, q) =
                pelems
                    .iter()
                    .map(|&x| (x, quotient_order(x)))
                    .fold((e, 0), |best, cur| if cur.1 > best.1 { cur } else { best });
            let h = g.pow(x, q);
            let y = *sub.iter().find(|&&y| g.pow(y, q) == h).expect("lift exists for a maximal-order quotient element");
            let x = g.mult(x, g.inverse(y));
            let mut grown = Vec::with_capacity(sub.len() * q as usize);
            for &s in &sub {
                let mut z = s;
                for _ in 0..q {
                    grown.push(z);
                    z = g.mult(z, x);
                }
            }
            for &z in &grown {
                member[z.index()] = true;
            }
            sub = grown;
            basis.generators.push(x);
            basis.orders.push(q);
        }
    }
    Ok(basis)
}
