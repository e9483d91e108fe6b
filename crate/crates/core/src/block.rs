//! Block representation over a cube generating sequence.
//!
//! The `k`-bit decomposition of every element is cut into `m = ceil(k / l)`
//! blocks of `l` bits. For each element `g` and block `i` an array of `2^l`
//! entries holds `g` times every subset product of the block's generators,
//! so `h * g` is obtained by folding `h` through `m` array lookups indexed by
//! the blocks of `g`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::cube::CubeSequence;
use crate::error::{Error, Result};
use crate::group::{ElementId, Group};
use crate::serial::{id_width, packed_width, Reader, Writer, MAX_ORDER};
use crate::space::{measure, sample_pairs, NoProbes, ProbeFamily, ProbeLedger, ProbeSink, Representation, SpaceLedger};

/// Default ceiling on physical bytes a block representation may allocate.
pub const DEFAULT_MEMORY_LIMIT: u128 = 2 << 30;

/// An exact rational `num / den`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Delta {
    pub num: u64,
    pub den: u64,
}

impl Delta {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter("delta denominator is zero".into()));
        }
        Ok(Delta { num, den })
    }

    /// `1 / bits` as used for the logarithmic-time extreme.
    pub fn inverse_log(n: usize) -> Self {
        Delta { num: 1, den: (n.max(2) as f64).log2().ceil() as u64 }
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Delta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("delta {s:?} is not a rational p/q"));
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let num = p.parse().map_err(|_| bad())?;
        let den = q.parse().map_err(|_| bad())?;
        Delta::new(num, den)
    }
}

/// `clamp(floor(delta * log2 n), 1, k)`, computed exactly as the largest `L`
/// with `2^(L q) <= n^p` for `delta = p / q`.
pub fn choose_block_length(n: usize, k: usize, delta: Delta) -> Result<usize> {
    let Delta { num: p, den: q } = delta;
    if p == 0 || p > q {
        return Err(Error::InvalidParameter(format!("delta {delta} outside (0, 1]")));
    }
    let upper = k.max(1);
    if n <= 1 {
        return Ok(1);
    }
    if p > 64 || q > 4096 {
        return Err(Error::InvalidParameter(format!("delta {delta} has too large a numerator or denominator")));
    }
    let np = BigUint::from(n).pow(p as u32);
    let one = BigUint::from(1u32);
    if np < (&one << q) {
        return Err(Error::InvalidParameter(format!("delta {delta} below 1/log2({n})")));
    }
    let mut l = 0usize;
    while l < 64 && (&one << ((l as u64 + 1) * q)) <= np {
        l += 1;
    }
    Ok(l.clamp(1, upper))
}

/// Reads performed by one block query.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct QueryStats {
    pub word_array_reads: u32,
    pub mult_array_reads: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockRep {
    n: usize,
    k: usize,
    l: usize,
    m: usize,
    generators: Vec<ElementId>,
    /// Blocks `s_1 .. s_m` of each element, `s_1` in the most significant bits.
    word_index: Vec<u64>,
    /// `A_g^(i)[j]` at `((g * m + i - 1) << l) + j`.
    mult: Vec<u32>,
}

impl BlockRep {
    pub fn build<G: Group + ?Sized>(g: &G, seq: &CubeSequence, l: usize) -> Result<Self> {
        Self::build_with_limit(g, seq, l, DEFAULT_MEMORY_LIMIT)
    }

    /// Builds with an explicit ceiling on physical bytes.
    pub fn build_with_limit<G: Group + ?Sized>(g: &G, seq: &CubeSequence, l: usize, limit: u128) -> Result<Self> {
        let n = g.order();
        let k = seq.k();
        if l == 0 || l > k.max(1) {
            return Err(Error::InvalidParameter(format!("block length {l} outside 1..={}", k.max(1))));
        }
        let m = k.div_ceil(l);
        if m * l > 64 {
            return Err(Error::InvalidParameter(format!("{m} blocks of {l} bits exceed one 64-bit word")));
        }
        let required = Self::required_bytes(n, l, m);
        if required > limit {
            return Err(Error::CapacityExceeded { required, limit });
        }
        let word_index: Vec<u64> = g.elements().map(|x| pack_blocks(seq.decompose(x), k, l, m)).collect();
        let span = 1usize << l;
        let mut mult = Vec::with_capacity(n * m * span);
        let mut buf = Vec::with_capacity(span);
        let mut next = Vec::with_capacity(span);
        for x in g.elements() {
            for i in 0..m {
                buf.clear();
                buf.push(x);
                for t in 0..l {
                    let idx = i * l + t;
                    next.clear();
                    for &p in &buf {
                        next.push(p);
                        next.push(if idx < k { g.mult(p, seq.elements()[idx]) } else { p });
                    }
                    std::mem::swap(&mut buf, &mut next);
                }
                mult.extend(buf.iter().map(|e| e.get()));
            }
        }
        Ok(BlockRep { n, k, l, m, generators: seq.elements().to_vec(), word_index, mult })
    }

    /// Physical bytes of the arrays for the given shape.
    pub fn required_bytes(n: usize, l: usize, m: usize) -> u128 {
        (n as u128) * (m as u128) * (1u128 << l.min(100)) * 4 + (n as u128) * 8
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    /// `s_i(g)` for `i` in `1..=m`.
    pub fn block(&self, g: ElementId, i: usize) -> u64 {
        (self.word_index[g.index()] >> (self.l * (self.m - i))) & ((1u64 << self.l) - 1)
    }

    /// `A_g^(i)[j]`.
    pub fn entry(&self, g: ElementId, i: usize, j: usize) -> ElementId {
        ElementId::new(self.mult[((g.index() * self.m + i - 1) << self.l) + j])
    }

    #[inline]
    pub fn multiply_probed<P: ProbeSink>(&self, h: ElementId, g: ElementId, probes: &mut P) -> ElementId {
        probes.probe(ProbeFamily::WordIndex);
        let word = self.word_index[g.index()];
        let mask = (1u64 << self.l) - 1;
        let mut x = h.get();
        for i in 0..self.m {
            let s = (word >> (self.l * (self.m - 1 - i))) & mask;
            probes.probe(ProbeFamily::MultArray);
            x = self.mult[(((x as usize - 1) * self.m + i) << self.l) + s as usize];
        }
        ElementId::new(x)
    }

    pub fn multiply_with_stats(&self, h: ElementId, g: ElementId) -> (ElementId, QueryStats) {
        let mut ledger = ProbeLedger::default();
        let z = self.multiply_probed(h, g, &mut ledger);
        let stats = QueryStats {
            word_array_reads: ledger.get(ProbeFamily::WordIndex),
            mult_array_reads: ledger.get(ProbeFamily::MultArray),
        };
        (z, stats)
    }

    pub fn write(&self, w: &mut Writer) {
        let iw = id_width(self.n);
        w.tag(b"BREP1");
        for v in [self.n, self.k, self.l, self.m] {
            w.u64(v as u64);
        }
        w.uints(&self.generators.iter().map(|g| g.get()).collect::<Vec<_>>(), iw);
        w.uints(&self.word_index, packed_width((self.m * self.l) as u32));
        w.uints(&self.mult, iw);
    }

    pub fn read(r: &mut Reader) -> Result<Self> {
        r.expect_tag(b"BREP1")?;
        let n = r.count("n", MAX_ORDER)?;
        let k = r.count("k", 64)?;
        let l = r.count("l", 64)?;
        let m = r.count("m", 64)?;
        if n == 0 || l == 0 || l > k.max(1) || m != k.div_ceil(l) || m * l > 64 {
            return Err(Error::format(format!("inconsistent block header n={n} k={k} l={l} m={m}")));
        }
        let generators = r.ids(k, n)?.into_iter().map(ElementId::new).collect();
        let word_index = r.u64s(n, packed_width((m * l) as u32))?;
        let bits = (m * l) as u32;
        if let Some(bad) = word_index.iter().find(|&&w| bits < 64 && w >> bits != 0) {
            return Err(Error::format(format!("word index value {bad} exceeds {bits} bits")));
        }
        let len = n
            .checked_mul(m)
            .and_then(|v| v.checked_mul(1usize << l))
            .ok_or_else(|| Error::format("multiplication array size overflows"))?;
        let mult = r.ids(len, n)?;
        let span = 1usize << l;
        for g in 0..n {
            for i in 0..m {
                if mult[(g * m + i) * span] as usize != g + 1 {
                    return Err(Error::format(format!("A_{}^({})[0] is not {}", g + 1, i + 1, g + 1)));
                }
            }
        }
        Ok(BlockRep { n, k, l, m, generators, word_index, mult })
    }
}

/// Concatenates the zero-padded blocks of a `k`-bit decomposition, bit
/// `i - 1` of `eps` being `e_i`, so that `e_1` is the most significant bit.
fn pack_blocks(eps: u64, k: usize, l: usize, m: usize) -> u64 {
    let width = m * l;
    let mut w = 0u64;
    for i in 0..k {
        if (eps >> i) & 1 == 1 {
            w |= 1u64 << (width - 1 - i);
        }
    }
    w
}

impl Representation for BlockRep {
    fn kind(&self) -> &'static str {
        "block"
    }

    fn order(&self) -> usize {
        self.n
    }

    fn params(&self) -> String {
        format!("k={} l={} m={}", self.k, self.l, self.m)
    }

    fn multiply(&self, x: ElementId, y: ElementId) -> ElementId {
        self.multiply_probed(x, y, &mut NoProbes)
    }

    fn multiply_counted(&self, x: ElementId, y: ElementId, probes: &mut ProbeLedger) -> ElementId {
        self.multiply_probed(x, y, probes)
    }

    fn account(&self, ledger: &mut SpaceLedger) {
        let w = ledger.word_bits();
        ledger.array("word_index", &self.word_index, (self.m * self.l) as u32);
        ledger.array("mult_arrays", &self.mult, w);
        ledger.scalars("meta", &[self.n as u64, self.k as u64, self.l as u64, self.m as u64]);
    }
}

/// One row of a block-length sweep.
#[derive(Clone, Debug)]
pub struct TradeoffRow {
    pub delta: Delta,
    pub outcome: std::result::Result<TradeoffPoint, String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TradeoffPoint {
    pub l: usize,
    pub m: usize,
    pub slots: usize,
    /// Largest number of multiplication-array reads over the sampled pairs.
    pub probes: u32,
    /// Mean wall-clock time of an uninstrumented query.
    pub avg_query_ns: f64,
}

/// Builds a block representation per `delta` and records its measured
/// slots and probes; failing rows keep their error.
pub fn tradeoff_table<G: Group + ?Sized>(
    g: &G,
    seq: &CubeSequence,
    deltas: &[Delta],
    limit: u128,
    seed: u64,
) -> Vec<TradeoffRow> {
    let pairs = sample_pairs(g.order(), 4096, seed);
    deltas
        .iter()
        .map(|&delta| {
            let outcome = choose_block_length(g.order(), seq.k(), delta)
                .and_then(|l| BlockRep::build_with_limit(g, seq, l, limit))
                .map(|rep| {
                    let probes =
                        pairs.iter().map(|&(x, y)| rep.multiply_with_stats(x, y).1.mult_array_reads).max().unwrap_or(0);
                    let avg_query_ns = time_queries(&rep, &pairs);
                    TradeoffPoint { l: rep.l, m: rep.m, slots: measure(&rep).slots, probes, avg_query_ns }
                })
                .map_err(|e| e.to_string());
            TradeoffRow { delta, outcome }
        })
        .collect()
}

/// Mean nanoseconds per `multiply` over `pairs`.
pub fn time_queries<R: Representation + ?Sized>(rep: &R, pairs: &[(ElementId, ElementId)]) -> f64 {
    if pairs.is_empty() {
        return 0.0;
    }
    let start = std::time::Instant::now();
    let mut acc = 0u64;
    for &(x, y) in pairs {
        acc = acc.wrapping_add(u64::from(std::hint::black_box(rep.multiply(x, y)).get()));
    }
    std::hint::black_box(acc);
    start.elapsed().as_nanos() as f64 / pairs.len() as f64
}
