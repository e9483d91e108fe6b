//! Cube generating sequences.
//!
//! A sequence `g_1, ..., g_k` is a cube generating sequence when every
//! element equals some left-to-right subset product `g_1^e_1 ... g_k^e_k`
//! with `e_i` in `{0, 1}`. The greedy construction grows the cube one
//! generator at a time, each time choosing the element that moves the most
//! cube members outside the current cube; this at least squares the
//! uncovered fraction per stage, so `k = O(log n)`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::{ElementId, Group};
use crate::space::bits_for;

/// Largest `k` for which [`verify_cube`] enumerates `2^k` products.
pub const MAX_VERIFY_LENGTH: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeSequence {
    elements: Vec<ElementId>,
    /// Bit `i - 1` of `epsilon[g]` is `e_i(g)`.
    epsilon: Vec<u64>,
}

impl CubeSequence {
    /// Builds a sequence from explicit decompositions; `epsilon[g]` must use
    /// only the low `elements.len()` bits.
    pub fn new(elements: Vec<ElementId>, epsilon: Vec<u64>) -> Result<Self> {
        if elements.len() > 64 {
            return Err(Error::InvalidParameter(format!("cube length {} exceeds 64", elements.len())));
        }
        let k = elements.len() as u32;
        if epsilon.iter().any(|&e| bits_for(e) > k) {
            return Err(Error::InvalidParameter("decomposition uses bits beyond k".into()));
        }
        Ok(CubeSequence { elements, epsilon })
    }

    pub fn k(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    /// The fixed decomposition of `g`, bit `i - 1` holding `e_i(g)`.
    pub fn decompose(&self, g: ElementId) -> u64 {
        self.epsilon[g.index()]
    }

    /// `e_i(g)` for `i` in `1..=k`.
    pub fn bit(&self, g: ElementId, i: usize) -> bool {
        (self.epsilon[g.index()] >> (i - 1)) & 1 == 1
    }

    /// Recomputes `prod g_i^{e_i(g)}` with the group operation.
    pub fn replay<G: Group + ?Sized>(&self, group: &G, g: ElementId) -> ElementId {
        let mut x = group.identity();
        for (i, &gi) in self.elements.iter().enumerate() {
            if (self.epsilon[g.index()] >> i) & 1 == 1 {
                x = group.mult(x, gi);
            }
        }
        x
    }

    /// Text dump: `k n`, the generator ids, then one `g bits` line per
    /// element with `e_1 ... e_k` as a 0/1 string.
    pub fn to_text(&self) -> String {
        let k = self.k();
        let mut out = format!("{k} {}\n", self.epsilon.len());
        let ids: Vec<String> = self.elements.iter().map(|g| g.to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
        for (i, &eps) in self.epsilon.iter().enumerate() {
            write!(out, "{}", i + 1).unwrap();
            if k > 0 {
                out.push(' ');
                for b in 0..k {
                    out.push(if (eps >> b) & 1 == 1 { '1' } else { '0' });
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Cube sizes `a_1, ..., a_k` and the cut size that selected each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyTrace {
    pub sizes: Vec<usize>,
    pub cuts: Vec<usize>,
}

impl GreedyTrace {
    /// `(n - a_i) n <= (n - a_{i-1})^2` at every stage, with `a_0 = 1`.
    pub fn claim_holds(&self, n: usize) -> bool {
        self.first_claim_violation(n).is_none()
    }

    pub fn first_claim_violation(&self, n: usize) -> Option<usize> {
        let n = n as u128;
        let mut prev = 1u128;
        for (i, &a) in self.sizes.iter().enumerate() {
            let a = a as u128;
            if (n - a) * n > (n - prev) * (n - prev) {
                return Some(i + 1);
            }
            prev = a;
        }
        None
    }
}

/// `(ceil(log2 n), ceil(log2(n ln n)) + 2)`; the trivial group gives `(0, 0)`.
pub fn cube_length_bounds(n: usize) -> (usize, usize) {
    if n <= 1 {
        return (0, 0);
    }
    let lower = bits_for(n as u64 - 1) as usize;
    let nf = n as f64;
    let upper = (nf * nf.ln()).log2().ceil() as usize + 2;
    (lower, upper)
}

/// Greedy cube generating sequence.
///
/// Starting from the cube `{e}`, each stage picks the element `g`
/// maximizing `|{a in A : a g not in A}|` (lowest id among ties) and grows
/// the cube to `A ∪ A g`. A new element `a g` inherits the decomposition of
/// `a` with bit `i` set; the first discovery is kept.
pub fn greedy_cube_sequence<G: Group + ?Sized>(g: &G) -> (CubeSequence, GreedyTrace) {
    let n = g.order();
    let e = g.identity();
    let mut member = vec![false; n];
    let mut epsilon = vec![0u64; n];
    member[e.index()] = true;
    let mut cube = vec![e];
    let mut elements = Vec::new();
    let mut trace = GreedyTrace { sizes: Vec::new(), cuts: Vec::new() };
    while cube.len() < n {
        let mut best = (0usize, e);
        for x in g.elements() {
            let cut = cube.iter().filter(|&&a| !member[g.mult(a, x).index()]).count();
            if cut > best.0 {
                best = (cut, x);
            }
        }
        let (cut, x) = best;
        let stage = elements.len();
        let before = cube.len();
        for idx in 0..before {
            let a = cube[idx];
            let b = g.mult(a, x);
            if !member[b.index()] {
                member[b.index()] = true;
                epsilon[b.index()] = epsilon[a.index()] | (1 << stage);
                cube.push(b);
            }
        }
        debug_assert_eq!(cube.len() - before, cut);
        elements.push(x);
        trace.sizes.push(cube.len());
        trace.cuts.push(cut);
    }
    (CubeSequence { elements, epsilon }, trace)
}

/// True iff the `2^k` subset products of `seq` are exactly the group.
pub fn verify_cube<G: Group + ?Sized>(g: &G, seq: &CubeSequence) -> Result<bool> {
    if seq.k() > MAX_VERIFY_LENGTH {
        return Err(Error::InvalidParameter(format!(
            "cube length {} exceeds the enumeration limit {MAX_VERIFY_LENGTH}",
            seq.k()
        )));
    }
    let mut products = vec![g.identity()];
    for &gi in seq.elements() {
        let extra: Vec<ElementId> = products.iter().map(|&p| g.mult(p, gi)).collect();
        products.extend(extra);
    }
    let mut seen = vec![false; g.order()];
    for p in products {
        seen[p.index()] = true;
    }
    Ok(seen.into_iter().all(|s| s))
}
