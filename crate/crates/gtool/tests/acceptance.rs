//! Acceptance criteria 1-11. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::{BTreeMap, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use groupreps::artifact::{Artifact, BlockLength, BuildOptions, RepKind};
use groupreps::block::{choose_block_length, tradeoff_table, BlockRep, Delta, DEFAULT_MEMORY_LIMIT};
use groupreps::corpus::{standard_corpus, CorpusEntry};
use groupreps::cube::greedy_cube_sequence;
use groupreps::fm::{qpu_space, CycleStructure, FmKind, FmStore};
use groupreps::group::{make_cyclic, make_quaternion, DirectProduct, Metacyclic};
use groupreps::space::{measure, probe_counted_multiply, sample_pairs, ProbeFamily, ProbeLedger, Representation};
use groupreps::special::{CompositeRep, CyclicRep, SimpleRep};
use groupreps::verify::{verify, VerifyMode};
use groupreps::{ElementId, Error, Group, GroupTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

struct Member {
    entry: CorpusEntry,
    g: GroupTable,
}

fn corpus() -> Vec<Member> {
    standard_corpus()
        .into_iter()
        .map(|entry| {
            let g = entry.build().unwrap_or_else(|e| panic!("{}: {e}", entry.name));
            Member { entry, g }
        })
        .collect()
}

fn n_of(g: &GroupTable) -> usize {
    Group::order(g)
}

fn naive_order(g: &GroupTable, x: ElementId) -> usize {
    let mut y = x;
    let mut k = 1;
    while y != g.identity() {
        y = g.mult(y, x);
        k += 1;
    }
    k
}

fn is_cyclic(g: &GroupTable) -> bool {
    g.elements().any(|x| naive_order(g, x) == n_of(g))
}

fn block_lengths(k: usize) -> Vec<usize> {
    let mut ls: Vec<usize> = [1, 2, k.div_ceil(2), k].into_iter().filter(|&l| l >= 1 && l <= k.max(1)).collect();
    ls.sort_unstable();
    ls.dedup();
    ls
}

fn exact_block(l: usize) -> BuildOptions {
    BuildOptions { block: BlockLength::Exact(l), ..BuildOptions::default() }
}

/// Flag-driven applicability; composite and fm-semidirect apply when their
/// decomposition search succeeds, and must then fail only on preconditions.
fn build_kind(kind: RepKind, m: &Member) -> Result<Option<Artifact>, String> {
    let flags = m.entry.expected;
    let expected = match kind {
        RepKind::Block => Some(true),
        RepKind::Cyclic => Some(is_cyclic(&m.g)),
        RepKind::ZGroup | RepKind::Fm(FmKind::ZGroup) => Some(flags.zgroup),
        RepKind::Simple => Some(flags.simple),
        RepKind::Fm(FmKind::Abelian) => Some(flags.abelian),
        RepKind::Fm(FmKind::Hamiltonian) => Some(flags.hamiltonian),
        RepKind::Composite | RepKind::Fm(FmKind::Semidirect) => None,
    };
    match (Artifact::build(kind, &m.g, &BuildOptions::default()), expected) {
        (Ok(a), Some(true) | None) => Ok(Some(a)),
        (Err(Error::Precondition(_)), Some(false) | None) => Ok(None),
        (Ok(_), Some(false)) => Err(format!("{kind} built on {} although not applicable", m.entry.name)),
        (Err(e), _) => Err(format!("{kind} on {}: {e}", m.entry.name)),
    }
}

fn exhaustive(rep: &dyn Representation, g: &GroupTable, what: &str) -> Result<usize, String> {
    let out = verify(rep, g, VerifyMode::Exhaustive, 0).map_err(|e| format!("{what}: {e}"))?;
    match out.counterexample {
        Some(c) => Err(format!("{what}: {c}")),
        None => Ok(out.checked),
    }
}

fn criterion_1() -> Outcome {
    let members = corpus();
    let mut checks = 0usize;
    let mut per_kind: BTreeMap<String, usize> = BTreeMap::new();
    for m in members.iter().filter(|m| n_of(&m.g) <= 512) {
        let (seq, _) = greedy_cube_sequence(&m.g);
        for l in block_lengths(seq.k()) {
            let rep = BlockRep::build(&m.g, &seq, l).map_err(|e| format!("{} l={l}: {e}", m.entry.name))?;
            checks += exhaustive(&rep, &m.g, &format!("{} block l={l}", m.entry.name))?;
            *per_kind.entry("block".into()).or_default() += 1;
        }
        for kind in RepKind::ALL.into_iter().filter(|&k| k != RepKind::Block) {
            if let Some(a) = build_kind(kind, m)? {
                checks += exhaustive(a.rep(), &m.g, &format!("{} {kind}", m.entry.name))?;
                *per_kind.entry(kind.name().into()).or_default() += 1;
            }
        }
    }
    let must_split = ["S3", "S4", "A4", "D6", "D15", "C2xC4xC9", "Q8xC3", "C7:C3", "C5:C4", "C6", "C2^3"];
    for name in must_split {
        let m = members.iter().find(|m| m.entry.name == name).ok_or(format!("{name} missing"))?;
        ensure!(build_kind(RepKind::Composite, m)?.is_some(), "composite should apply to {name}");
    }
    for m in members.iter().filter(|m| m.entry.expected.zgroup || m.entry.expected.abelian) {
        ensure!(
            build_kind(RepKind::Fm(FmKind::Semidirect), m)?.is_some(),
            "fm-semidirect should apply to {}",
            m.entry.name
        );
    }
    let summary: Vec<String> = per_kind.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    Ok(format!("{checks} products checked; builds {}", summary.join(" ")))
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    for m in corpus() {
        let n = n_of(&m.g);
        let (seq, _) = greedy_cube_sequence(&m.g);
        let k = seq.k();
        if n == 1 {
            ensure!(k == 0, "trivial group has k={k}");
            continue;
        }
        let nf = n as f64;
        let lo = nf.log2().ceil() as usize;
        let hi = (nf * nf.ln()).log2().ceil() as usize + 2;
        ensure!(lo <= k && k <= hi, "{}: k={k} outside [{lo}, {hi}]", m.entry.name);
        for x in m.g.elements() {
            ensure!(seq.replay(&m.g, x) == x, "{}: decomposition of {x} does not replay", m.entry.name);
        }
        worst = worst.max(k as f64 / lo as f64);
    }
    Ok(format!("max k/ceil(log2 n) = {worst:.3}"))
}

fn criterion_3() -> Outcome {
    let mut stages = 0;
    for m in corpus() {
        let n = n_of(&m.g) as u128;
        let (_, trace) = greedy_cube_sequence(&m.g);
        let mut prev = 1u128;
        for (i, &a) in trace.sizes.iter().enumerate() {
            let a = a as u128;
            ensure!((n - a) * n <= (n - prev) * (n - prev), "{}: stage {} a={a} prev={prev}", m.entry.name, i + 1);
            prev = a;
            stages += 1;
        }
        ensure!(prev == n, "{}: final cube has {prev} of {n} elements", m.entry.name);
    }
    Ok(format!("{stages} stages checked"))
}

fn criterion_4() -> Outcome {
    let mut builds = 0;
    let mut max_meta = 0;
    for m in corpus() {
        let n = n_of(&m.g);
        let (seq, _) = greedy_cube_sequence(&m.g);
        let k = seq.k();
        let mut ls = block_lengths(k);
        ls.push(choose_block_length(n, k, Delta { num: 1, den: 2 }).unwrap_or(1));
        ls.sort_unstable();
        ls.dedup();
        let pairs = sample_pairs(n, 4096, 7);
        for l in ls {
            let rep = BlockRep::build(&m.g, &seq, l).map_err(|e| format!("{}: {e}", m.entry.name))?;
            let mm = k.div_ceil(l);
            let base = n * (1 << l) * mm + n;
            let slots = measure(&rep).slots;
            ensure!(slots >= base && slots - base <= 8, "{} l={l}: slots {slots}, base {base}", m.entry.name);
            max_meta = max_meta.max(slots - base);
            for &(x, y) in &pairs {
                let (_, p) = probe_counted_multiply(&rep, x, y);
                ensure!(
                    p.get(ProbeFamily::MultArray) as usize == mm
                        && p.get(ProbeFamily::WordIndex) == 1
                        && p.total() as usize == mm + 1,
                    "{} l={l}: query {x}*{y} probes {p}, expected mult_array={mm} word_index=1",
                    m.entry.name
                );
            }
            builds += 1;
        }
    }
    Ok(format!("{builds} builds; c_meta <= {max_meta}"))
}

fn criterion_5() -> Outcome {
    let g = make_cyclic(1024).unwrap();
    let n = 1024f64;
    let (seq, _) = greedy_cube_sequence(&g);
    let k = seq.k();
    let deltas: Vec<Delta> =
        ["1/10", "1/5", "1/4", "1/3", "1/2", "2/3", "3/4", "1"].iter().map(|d| d.parse().unwrap()).collect();
    let rows = tradeoff_table(&g, &seq, &deltas, DEFAULT_MEMORY_LIMIT, 0);
    let mut last_probes = u32::MAX;
    let mut cells = Vec::new();
    for row in &rows {
        let p = row.outcome.as_ref().map_err(|e| format!("delta {}: {e}", row.delta))?;
        let delta = row.delta.num as f64 / row.delta.den as f64;
        let bound = 8.0 * (k as f64 / n.log2()) * n.powf(1.0 + delta) / delta;
        ensure!((p.slots as f64) <= bound, "delta {}: slots {} > {bound:.0}", row.delta, p.slots);
        ensure!(p.probes <= last_probes, "probes increase at delta {}", row.delta);
        last_probes = p.probes;
        cells.push(format!("{}:{}", row.delta, p.probes));
    }
    let first = rows.first().unwrap().outcome.as_ref().unwrap();
    let last = rows.last().unwrap().outcome.as_ref().unwrap();
    ensure!(first.probes as usize == k, "probes(1/log2 n) = {}, k = {k}", first.probes);
    ensure!(last.probes == 1, "probes(1) = {}", last.probes);
    Ok(format!("k={k}; probes {}", cells.join(" ")))
}

fn bfs_diameter(g: &GroupTable, gens: &[ElementId]) -> u32 {
    let mut dist = vec![u32::MAX; n_of(g)];
    dist[g.identity().index()] = 0;
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mult(x, s);
            if dist[y.index()] == u32::MAX {
                dist[y.index()] = dist[x.index()] + 1;
                queue.push_back(y);
            }
        }
    }
    dist.into_iter().max().unwrap()
}

fn criterion_6() -> Outcome {
    let members = corpus();
    let (mut cyc, mut zg) = (0, 0);
    for m in &members {
        let n = n_of(&m.g);
        let pairs = sample_pairs(n, 4096, 3);
        if is_cyclic(&m.g) {
            let rep = CyclicRep::for_group(&m.g).map_err(|e| e.to_string())?;
            let slots = measure(&rep).slots;
            ensure!(slots >= 2 * n && slots - 2 * n <= 4, "{}: cyclic slots {slots}", m.entry.name);
            for &(x, y) in &pairs {
                ensure!(probe_counted_multiply(&rep, x, y).1.total() == 3, "{}: cyclic probes", m.entry.name);
            }
            cyc += 1;
        }
        if m.entry.expected.zgroup {
            let rep = CompositeRep::build_zgroup(&m.g).map_err(|e| e.to_string())?;
            let slots = measure(&rep).slots;
            ensure!(slots <= 8 * n, "{}: zgroup slots {slots} > 8n", m.entry.name);
            for &(x, y) in &pairs {
                let p = probe_counted_multiply(&rep, x, y).1.total();
                ensure!(p <= 8, "{}: zgroup probes {p}", m.entry.name);
            }
            zg += 1;
        }
    }
    let mut diam = Vec::new();
    for name in ["A5", "PSL(2,7)"] {
        let m = members.iter().find(|m| m.entry.name == name).ok_or(format!("{name} missing"))?;
        let n = n_of(&m.g);
        let rep = SimpleRep::build(&m.g, groupreps::special::DEFAULT_MAX_GENERATORS).map_err(|e| e.to_string())?;
        let SimpleRep::Paths(paths) = &rep else {
            return Err(format!("{name}: expected a path representation"));
        };
        let d = bfs_diameter(&m.g, paths.generators());
        ensure!(d == paths.diameter(), "{name}: stored diameter {} vs BFS {d}", paths.diameter());
        ensure!(d as f64 <= 10.0 * (n as f64).log2(), "{name}: D={d}");
        for (x, y) in sample_pairs(n, usize::MAX, 0) {
            let (z, p) = probe_counted_multiply(&rep, x, y);
            ensure!(z == m.g.mult(x, y), "{name}: wrong product");
            ensure!(p.get(ProbeFamily::Table) <= d, "{name}: {} table probes > D={d}", p.get(ProbeFamily::Table));
        }
        diam.push(format!("{name} D={d}"));
    }
    Ok(format!("{cyc} cyclic, {zg} z-groups; {}", diam.join(", ")))
}

fn criterion_7() -> Outcome {
    let mut worst = 0;
    let mut check = |kind: FmKind, name: &str, g: &dyn Fn() -> Result<FmStore, Error>| -> Result<(), String> {
        let store = g().map_err(|e| format!("{name} {}: {e}", kind.name()))?;
        let s = qpu_space(&store);
        ensure!(s <= 80, "{name} {}: {s} slots", kind.name());
        worst = worst.max(s);
        Ok(())
    };
    for m in corpus() {
        let flags = m.entry.expected;
        for (kind, on) in
            [(FmKind::Abelian, flags.abelian), (FmKind::Hamiltonian, flags.hamiltonian), (FmKind::ZGroup, flags.zgroup)]
        {
            if on {
                check(kind, &m.entry.name, &|| FmStore::compress(kind, &m.g).map(|s| s.0))?;
            }
        }
    }
    let c16384 = Metacyclic::cyclic(16384).unwrap();
    check(FmKind::Abelian, "C16384", &|| FmStore::compress(FmKind::Abelian, &c16384).map(|s| s.0))?;
    check(FmKind::ZGroup, "C16384", &|| FmStore::compress(FmKind::ZGroup, &c16384).map(|s| s.0))?;
    let ab = DirectProduct::new(
        DirectProduct::new(Metacyclic::cyclic(2).unwrap(), Metacyclic::cyclic(4).unwrap()),
        Metacyclic::cyclic(2048).unwrap(),
    );
    check(FmKind::Abelian, "C2xC4xC2048", &|| FmStore::compress(FmKind::Abelian, &ab).map(|s| s.0))?;
    let ham = DirectProduct::new(
        DirectProduct::new(make_quaternion(), make_cyclic(2).unwrap()),
        Metacyclic::cyclic(1023).unwrap(),
    );
    check(FmKind::Hamiltonian, "Q8xC2xC1023", &|| FmStore::compress(FmKind::Hamiltonian, &ham).map(|s| s.0))?;
    let dih = Metacyclic::new(8191, 2, 8190).unwrap();
    check(FmKind::ZGroup, "D8191", &|| FmStore::compress(FmKind::ZGroup, &dih).map(|s| s.0))?;

    let mut semi = 0;
    for m in corpus() {
        match FmStore::compress(FmKind::Semidirect, &m.g) {
            Ok((FmStore::Semidirect(s), labels)) => {
                let a = s.normal_order();
                let store = FmStore::Semidirect(s);
                let slots = qpu_space(&store);
                ensure!(slots <= 8 * a, "{}: fm-semidirect {slots} slots, |A|={a}", m.entry.name);
                ensure!(labels.len() == n_of(&m.g), "{}: labeling size", m.entry.name);
                semi += 1;
            }
            Ok(_) => return Err("fm-semidirect produced another store kind".into()),
            Err(Error::Precondition(_)) => {}
            Err(e) => return Err(format!("{}: {e}", m.entry.name)),
        }
    }
    Ok(format!("max constant-scheme store {worst} slots; {semi} semidirect stores within 8|A|"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut literal = 0;
    for case in 0..10_000 {
        let n = rng.gen_range(1..=1000usize);
        let mut perm: Vec<u32> = (1..=n as u32).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let g = rng.gen_range(1..=n as u32);
        let d = rng.gen_range(0..=1_000_000u64);
        let cs = CycleStructure::build(&perm).map_err(|e| e.to_string())?;
        let mut ledger = ProbeLedger::default();
        let got = cs.apply_power_probed(g, d, &mut ledger);
        ensure!(ledger.get(ProbeFamily::Cycle) == 2 && ledger.total() == 2, "case {case}: probes {ledger}");
        let step = |x: u32| perm[x as usize - 1];
        let want = if case % 50 == 0 {
            literal += 1;
            (0..d).fold(g, |x, _| step(x))
        } else {
            let mut period = 1u64;
            let mut x = step(g);
            while x != g {
                x = step(x);
                period += 1;
            }
            (0..d % period).fold(g, |x, _| step(x))
        };
        ensure!(got == want, "case {case}: N={n} g={g} d={d}: {got} != {want}");
    }
    Ok(format!("10000 cases, {literal} by full d-fold iteration"))
}

fn criterion_9() -> Outcome {
    let mut stores = 0;
    for m in corpus() {
        let flags = m.entry.expected;
        let kinds = [
            (FmKind::Abelian, flags.abelian),
            (FmKind::Hamiltonian, flags.hamiltonian),
            (FmKind::ZGroup, flags.zgroup),
            (FmKind::Semidirect, true),
        ];
        for (kind, on) in kinds {
            if !on {
                continue;
            }
            let (store, labels) = match FmStore::compress(kind, &m.g) {
                Ok(v) => v,
                Err(Error::Precondition(_)) if kind == FmKind::Semidirect => continue,
                Err(e) => return Err(format!("{} {}: {e}", m.entry.name, kind.name())),
            };
            let bytes = store.to_bytes();
            let replay = std::thread::spawn(move || FmStore::from_bytes(&bytes))
                .join()
                .map_err(|_| "reload panicked".to_string())?
                .map_err(|e| format!("{} {}: reload: {e}", m.entry.name, kind.name()))?;
            let n = n_of(&m.g);
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            for _ in 0..1000 {
                let x = ElementId::from_index(rng.gen_range(0..n));
                let y = ElementId::from_index(rng.gen_range(0..n));
                let (lx, ly) = (labels.label(x), labels.label(y));
                let a = store.multiply(&lx, &ly);
                let b = replay.multiply(&lx, &ly);
                ensure!(a == b, "{} {}: {a:?} vs {b:?} after reload", m.entry.name, kind.name());
                ensure!(
                    labels.element(&b) == Some(m.g.mult(x, y)),
                    "{} {}: wrong product label",
                    m.entry.name,
                    kind.name()
                );
            }
            stores += 1;
        }
    }
    Ok(format!("{stores} stores replayed"))
}

fn criterion_10() -> Outcome {
    let members = corpus();
    let mut done = Vec::new();
    for name in ["S4", "Q8xC3"] {
        let m = members.iter().find(|m| m.entry.name == name).ok_or(format!("{name} missing"))?;
        let (seq, _) = greedy_cube_sequence(&m.g);
        let mut built = Vec::new();
        let mut artifacts = Vec::new();
        for l in block_lengths(seq.k()) {
            artifacts.push((
                format!("block l={l}"),
                Artifact::build(RepKind::Block, &m.g, &exact_block(l)).map_err(|e| e.to_string())?,
            ));
        }
        for kind in RepKind::ALL.into_iter().filter(|&k| k != RepKind::Block) {
            if let Some(a) = build_kind(kind, m)? {
                artifacts.push((kind.name().to_string(), a));
            }
        }
        for (what, art) in artifacts {
            let back = Artifact::from_bytes(&art.to_bytes()).map_err(|e| format!("{name} {what}: {e}"))?;
            ensure!(back == art, "{name} {what}: reloaded artifact differs");
            exhaustive(back.rep(), &m.g, &format!("{name} {what}"))?;
            built.push(what);
        }
        ensure!(built.iter().any(|k| k == "composite"), "{name}: composite missing");
        done.push(format!("{name}[{}]", built.join(", ")));
    }
    Ok(done.join(" "))
}

fn gtool(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_gtool")).args(args).output().map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "gtool {}: {}", args.join(" "), String::from_utf8_lossy(&out.stderr));
    Ok(out.stdout)
}

fn criterion_11() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |f: &str| dir.path().join(f).to_string_lossy().into_owned();
    let groups: [(&str, &[&str]); 4] = [
        ("s4", &["symmetric", "4"]),
        ("q8c3", &["direct", "quaternion", "cyclic:3"]),
        ("c60", &["cyclic", "60"]),
        ("a5", &["alternating", "5"]),
    ];
    let mut compared = 0;
    for (tag, spec) in groups {
        let table = p(&format!("{tag}.txt"));
        let mut args = vec!["gen"];
        args.extend_from_slice(spec);
        let first = gtool(&args)?;
        ensure!(first == gtool(&args)?, "gen {tag} output differs");
        std::fs::write(&table, &first).map_err(|e| e.to_string())?;
        for kind in RepKind::ALL {
            let mut flags: Vec<Vec<String>> = vec![vec![]];
            if kind == RepKind::Block {
                flags = vec![vec!["--delta".into(), "1/2".into()], vec!["--l".into(), "1".into()]];
            }
            for extra in flags {
                let outs = [p(&format!("{tag}-{kind}-a.bin")), p(&format!("{tag}-{kind}-b.bin"))];
                let mut ok = true;
                for out in &outs {
                    let mut args = vec!["build", table.as_str(), "--kind", kind.name(), "-o", out.as_str()];
                    args.extend(extra.iter().map(String::as_str));
                    let st =
                        Command::new(env!("CARGO_BIN_EXE_gtool")).args(&args).output().map_err(|e| e.to_string())?;
                    match st.status.code() {
                        Some(0) => {}
                        Some(2) => ok = false,
                        c => return Err(format!("build {tag} {kind} exited {c:?}")),
                    }
                }
                if ok {
                    let a = std::fs::read(&outs[0]).map_err(|e| e.to_string())?;
                    let b = std::fs::read(&outs[1]).map_err(|e| e.to_string())?;
                    ensure!(a == b, "{tag} {kind}: artifacts differ");
                    compared += 1;
                }
            }
        }
    }
    Ok(format!("{compared} artifact pairs byte-identical"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("oracle equivalence, exhaustive", criterion_1),
        ("cube length bound", criterion_2),
        ("greedy shrinkage claim", criterion_3),
        ("block ledgers", criterion_4),
        ("tradeoff instantiation on C1024", criterion_5),
        ("linear-space representations", criterion_6),
        ("constant-memory query space", criterion_7),
        ("cycle power oracle", criterion_8),
        ("query-processor purity", criterion_9),
        ("serialization round trip", criterion_10),
        ("build determinism", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
