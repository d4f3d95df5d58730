//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Expected values come from the brute-force oracles at the top of this
//! file, which share no code with the library beyond the table type.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bpg_core::enumerate::{classify_bpgs, Atlas};
use bpg_core::functors::{
    big_embed, check_2skeletal_equivalence, check_fully_faithful, check_main_theorem,
    check_simplicial_two_skeleton, check_tb_identity, check_triangle_identities, check_unit_eta,
    is_two_skeletal, small_embed,
};
use bpg_core::magma::{check_a3, check_anti_automorphism, check_i2, find_dagger};
use bpg_core::words::{check_inversion_closure, check_mirror_sweep};
use bpg_core::{BinaryPartialGroup, Element, Error, PartialMagma, TruncatedPartialGroup};

// ---------------------------------------------------------------------------
// Oracles

/// Plain table: `t[a][b]`, unit 0.
type Table = Vec<Vec<Option<usize>>>;

fn table_of(p: &PartialMagma) -> Table {
    let k = p.size();
    (0..k)
        .map(|a| (0..k).map(|b| p.product(Element(a), Element(b)).map(|e| e.0)).collect())
        .collect()
}

/// The `index`-th unital table of size `k` in an odometer over the free
/// cells, last cell fastest.
fn oracle_table(k: usize, mut index: u64) -> Table {
    let mut t = vec![vec![None; k]; k];
    for a in 0..k {
        t[0][a] = Some(a);
        t[a][0] = Some(a);
    }
    let cells: Vec<(usize, usize)> = (1..k).flat_map(|i| (1..k).map(move |j| (i, j))).collect();
    for &(i, j) in cells.iter().rev() {
        let c = (index % (k as u64 + 1)) as usize;
        index /= k as u64 + 1;
        t[i][j] = c.checked_sub(1);
    }
    t
}

fn oracle_count(k: usize) -> u64 {
    (k as u64 + 1).pow(((k - 1) * (k - 1)) as u32)
}

/// Per element `a`, every `c` with `c(ab) = b` and `(ba)c = b` for all
/// defined inner products. Inverse functions are exactly the choice
/// functions of this family.
fn oracle_inverse_candidates(t: &Table) -> Vec<Vec<usize>> {
    let k = t.len();
    (0..k)
        .map(|a| {
            (0..k)
                .filter(|&c| {
                    (0..k).all(|b| {
                        let left = t[a][b].is_none_or(|ab| t[c][ab] == Some(b));
                        let right = t[b][a].is_none_or(|ba| t[ba][c] == Some(b));
                        left && right
                    })
                })
                .collect()
        })
        .collect()
}

fn oracle_inverse_count(t: &Table) -> usize {
    oracle_inverse_candidates(t).iter().map(Vec::len).product()
}

fn oracle_a3(t: &Table) -> bool {
    let k = t.len();
    (0..k).all(|a| {
        (0..k).all(|b| {
            (0..k).all(|c| match (t[a][b], t[b][c]) {
                (Some(ab), Some(bc)) => t[ab][c] == t[a][bc],
                _ => true,
            })
        })
    })
}

fn oracle_right_inverses(t: &Table) -> bool {
    (0..t.len()).all(|a| t[a].contains(&Some(0)))
}

#[derive(Clone, Debug)]
enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

fn oracle_trees(n: usize) -> Vec<Tree> {
    if n == 1 {
        return vec![Tree::Leaf];
    }
    let mut out = Vec::new();
    for left in 1..n {
        for l in oracle_trees(left) {
            for r in oracle_trees(n - left) {
                out.push(Tree::Node(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

fn tree_leaves(t: &Tree) -> usize {
    match t {
        Tree::Leaf => 1,
        Tree::Node(l, r) => tree_leaves(l) + tree_leaves(r),
    }
}

fn tree_mirror(t: &Tree) -> Tree {
    match t {
        Tree::Leaf => Tree::Leaf,
        Tree::Node(l, r) => Tree::Node(Box::new(tree_mirror(r)), Box::new(tree_mirror(l))),
    }
}

fn tree_eval(t: &Table, tree: &Tree, w: &[usize]) -> Option<usize> {
    match tree {
        Tree::Leaf => Some(w[0]),
        Tree::Node(l, r) => {
            let split = tree_leaves(l);
            let a = tree_eval(t, l, &w[..split])?;
            let b = tree_eval(t, r, &w[split..])?;
            t[a][b]
        }
    }
}

/// Precomputed trees for lengths `0..=max`; the empty word has product 1.
struct Oracle {
    trees: Vec<Vec<Tree>>,
}

impl Oracle {
    fn new(max: usize) -> Oracle {
        let trees = (0..=max).map(|n| if n == 0 { Vec::new() } else { oracle_trees(n) }).collect();
        Oracle { trees }
    }

    /// Common value of every parenthesization, if all are defined and agree.
    fn product(&self, t: &Table, w: &[usize]) -> Option<usize> {
        if w.is_empty() {
            return Some(0);
        }
        let mut value = None;
        for tree in &self.trees[w.len()] {
            let v = tree_eval(t, tree, w)?;
            if value.is_some_and(|u| u != v) {
                return None;
            }
            value = Some(v);
        }
        value
    }
}

fn oracle_words(k: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..k.pow(n as u32)).map(move |mut code| {
        let mut v = vec![0; n];
        for slot in v.iter_mut().rev() {
            *slot = code % k;
            code /= k;
        }
        v
    })
}

fn dagger_word(d: &[usize], w: &[usize]) -> Vec<usize> {
    w.iter().rev().map(|&a| d[a]).collect()
}

fn dagger_of(p: &BinaryPartialGroup) -> Vec<usize> {
    p.dagger_map().iter().map(|e| e.0).collect()
}

fn oracle_is_hom(s: &Table, t: &Table, f: &[usize]) -> bool {
    let k = s.len();
    f[0] == 0
        && (0..k).all(|a| (0..k).all(|b| s[a][b].is_none_or(|ab| t[f[a]][f[b]] == Some(f[ab]))))
}

fn oracle_hom_count(s: &Table, t: &Table) -> usize {
    let (k, l) = (s.len(), t.len());
    (0..l.pow(k as u32))
        .filter(|&code| {
            let mut c = code;
            let f: Vec<usize> = (0..k)
                .map(|_| {
                    let v = c % l;
                    c /= l;
                    v
                })
                .collect();
            oracle_is_hom(s, t, &f)
        })
        .count()
}

/// Canonical key: least relabeled table over unit-fixing permutations.
fn oracle_canonical(t: &Table) -> Table {
    let k = t.len();
    let mut best: Option<Table> = None;
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let mut r = vec![vec![None; k]; k];
        for a in 0..k {
            for b in 0..k {
                r[perm[a]][perm[b]] = t[a][b].map(|c| perm[c]);
            }
        }
        if best.as_ref().is_none_or(|b| r < *b) {
            best = Some(r);
        }
        // Next permutation of perm[1..].
        let tail = &mut perm[1..];
        let Some(i) = (0..tail.len().saturating_sub(1)).rev().find(|&i| tail[i] < tail[i + 1]) else {
            break;
        };
        let j = (i + 1..tail.len()).rev().find(|&j| tail[j] > tail[i]).unwrap();
        tail.swap(i, j);
        tail[i + 1..].reverse();
    }
    best.unwrap()
}

// ---------------------------------------------------------------------------
// Harness

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

struct Context {
    atlases: Vec<Atlas>,
    oracle: Oracle,
}

impl Context {
    fn entries(&self, max_size: usize) -> impl Iterator<Item = &BinaryPartialGroup> {
        self.atlases
            .iter()
            .filter(move |a| a.size <= max_size)
            .flat_map(|a| a.structures.iter())
    }
}

fn parallel_sweep<T: Send>(k: usize, f: impl Fn(u64) -> Option<T> + Sync) -> Vec<T> {
    let total = oracle_count(k);
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get()) as u64;
    let chunk = total.div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|i| {
                let f = &f;
                s.spawn(move || {
                    (i * chunk..((i + 1) * chunk).min(total))
                        .filter_map(f)
                        .collect::<Vec<T>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    })
}

fn magma(t: &Table) -> PartialMagma {
    PartialMagma::new(bpg_core::magma::default_names(t.len()), t, 0).unwrap()
}

// ---------------------------------------------------------------------------
// Criteria

/// At most one inverse function on every unital partial magma with k ≤ 4.
/// The time bound applies to the library sweep; the oracle runs after.
fn c1_uniqueness() -> Outcome {
    let start = Instant::now();
    let stats: Vec<_> = (1..=4).map(|k| bpg_core::enumerate::sweep_stats(k).unwrap()).collect();
    let elapsed = start.elapsed();
    let mut problems = Vec::new();
    for (k, s) in (1..=4).zip(&stats) {
        let rows = parallel_sweep(k, |i| {
            let t = oracle_table(k, i);
            let count = oracle_inverse_count(&t);
            let lib = find_dagger(&magma(&t)).dagger();
            let lib = lib.map(|d| d.iter().map(|e| e.0).collect::<Vec<_>>());
            let oracle = (count == 1)
                .then(|| oracle_inverse_candidates(&t).into_iter().map(|c| c[0]).collect::<Vec<_>>());
            let flagged = count > 1 || lib != oracle;
            Some((flagged.then(|| format!("{t:?}: oracle {count} inverse functions")), count > 0))
        });
        let with_inverse = rows.iter().filter(|r| r.1).count() as u64;
        if with_inverse != s.with_inverse || s.non_unique_inverse != 0 || s.candidates != oracle_count(k) {
            problems.push(format!("size {k}: library counts {s:?}, oracle {with_inverse} with an inverse"));
        }
        problems.extend(rows.into_iter().filter_map(|r| r.0));
    }
    let pass = problems.is_empty() && elapsed < Duration::from_secs(60);
    outcome(
        pass,
        format!(
            "{} tables, {} with an inverse, {} exceptions, library sweep {:.1?}{}",
            stats.iter().map(|s| s.candidates).sum::<u64>(),
            stats.iter().map(|s| s.with_inverse).sum::<u64>(),
            problems.len(),
            elapsed,
            first(&problems)
        ),
    )
}

/// Cross-check of the per-element oracle against all `k^k` functions.
fn brute_force_agrees(k: usize) -> bool {
    (0..oracle_count(k)).all(|i| {
        let t = oracle_table(k, i);
        let brute = (0..k.pow(k as u32))
            .filter(|&code| {
                (0..k).all(|a| {
                    let c = code / k.pow(a as u32) % k;
                    oracle_inverse_candidates(&t)[a].contains(&c)
                })
            })
            .count();
        brute == oracle_inverse_count(&t)
    })
}

/// The atlas matches an oracle classification, and each entry is an
/// involutive anti-automorphism with two-sided inverses.
fn c2_anti_isomorphism(cx: &Context) -> Outcome {
    let mut bad = Vec::new();
    for k in 1..=4 {
        let keys: BTreeSet<Table> = parallel_sweep(k, |i| {
            let t = oracle_table(k, i);
            (oracle_inverse_count(&t) == 1).then(|| oracle_canonical(&t))
        })
        .into_iter()
        .collect();
        let atlas: BTreeSet<Table> = cx.atlases[k - 1].structures.iter().map(|p| table_of(p.magma())).collect();
        if keys != atlas {
            bad.push(format!("size {k}: oracle {} classes, atlas {}", keys.len(), atlas.len()));
        }
    }
    let mut checked = 0;
    for p in cx.entries(4) {
        checked += 1;
        let t = table_of(p.magma());
        let d = dagger_of(p);
        let k = t.len();
        let involutive = (0..k).all(|a| d[d[a]] == a);
        let anti = (0..k).all(|a| (0..k).all(|b| t[a][b].map(|c| d[c]) == t[d[b]][d[a]]));
        let i2 = (0..k).all(|a| t[a][d[a]] == Some(0) && t[d[a]][a] == Some(0));
        let lib = check_anti_automorphism(p).passed() && check_i2(p.magma(), p.dagger_map()).passed();
        if !(involutive && anti && i2 && lib) {
            bad.push(format!("{:?}", p.magma()));
        }
    }
    outcome(bad.is_empty(), format!("{checked} atlas entries, {} exceptions{}", bad.len(), first(&bad)))
}

fn c3_mirror(cx: &Context) -> Outcome {
    let mut bad = Vec::new();
    let mut pairs = 0u64;
    for p in cx.entries(4) {
        let t = table_of(p.magma());
        let d = dagger_of(p);
        for n in 1..=5 {
            for w in oracle_words(p.size(), n) {
                let wd = dagger_word(&d, &w);
                for tree in &cx.oracle.trees[n] {
                    pairs += 1;
                    let lhs = tree_eval(&t, tree, &w);
                    let rhs = tree_eval(&t, &tree_mirror(tree), &wd).map(|v| d[v]);
                    if lhs != rhs {
                        bad.push(format!("{:?} on {w:?}", p.magma()));
                    }
                }
            }
        }
        match check_mirror_sweep(p, 5) {
            Ok(r) if r.passed() => {}
            Ok(r) => bad.push(r.summary()),
            Err(e) => bad.push(e.to_string()),
        }
    }
    outcome(bad.is_empty(), format!("{pairs} word/tree pairs, {} exceptions{}", bad.len(), first(&bad)))
}

fn c4_inversion_closure(cx: &Context) -> Outcome {
    let mut bad = Vec::new();
    let mut words = 0u64;
    for p in cx.entries(4) {
        let t = table_of(p.magma());
        let d = dagger_of(p);
        for n in 0..=6 {
            for w in oracle_words(p.size(), n) {
                words += 1;
                let v = cx.oracle.product(&t, &w);
                let vd = cx.oracle.product(&t, &dagger_word(&d, &w));
                if v.map(|x| d[x]) != vd {
                    bad.push(format!("{:?} on {w:?}", p.magma()));
                }
            }
        }
        let r = check_inversion_closure(p, 6);
        if !r.passed() {
            bad.push(r.summary());
        }
    }
    outcome(bad.is_empty(), format!("{words} words, {} exceptions{}", bad.len(), first(&bad)))
}

fn c5_main_theorem(cx: &Context) -> Outcome {
    let mut bad = Vec::new();
    let mut members = 0u64;
    for p in cx.entries(4) {
        let t = table_of(p.magma());
        let d = dagger_of(p);
        for n in 1..=3 {
            for w in oracle_words(p.size(), n) {
                if cx.oracle.product(&t, &w).is_none() {
                    continue;
                }
                members += 1;
                for k in 0..=n {
                    let mut word = dagger_word(&d, &w[..k]);
                    word.extend_from_slice(&w);
                    let want = cx.oracle.product(&t, &w[k..]);
                    if want.is_none() || cx.oracle.product(&t, &word) != want {
                        bad.push(format!("{:?}: {w:?} k={k}", p.magma()));
                    }
                }
            }
        }
        let r = check_main_theorem(p, 6);
        if !r.passed() {
            bad.push(r.summary());
        }
    }
    outcome(bad.is_empty(), format!("{members} coherent words, {} exceptions{}", bad.len(), first(&bad)))
}

/// Oracle membership sets for levels `0..=6`, compared with the library's
/// levels, then full validation.
fn c6_partial_group(cx: &Context) -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut entries = 0;
    for p in cx.entries(4) {
        entries += 1;
        let x = match big_embed(p, 6) {
            Ok(x) => x,
            Err(e) => {
                bad.push(e.to_string());
                continue;
            }
        };
        let t = table_of(p.magma());
        for n in 0..=6 {
            let oracle: BTreeSet<Vec<usize>> = oracle_words(p.size(), n)
                .filter(|w| cx.oracle.product(&t, w).is_some())
                .collect();
            let lib: BTreeSet<Vec<usize>> =
                x.level(n).words().map(|w| w.0.iter().map(|e| e.0).collect()).collect();
            if oracle != lib {
                bad.push(format!("{:?}: level {n} differs", p.magma()));
            }
        }
        let r = x.validate();
        if !r.passed() {
            bad.push(format!("{:?}: {}", p.magma(), r.summary()));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < Duration::from_secs(300),
        format!("{entries} entries at N = 6, {} exceptions, {:.1?}{}", bad.len(), elapsed, first(&bad)),
    )
}

fn c7_adjunction(cx: &Context) -> Outcome {
    let mut bad = Vec::new();
    let mut runs = 0;
    for top in [4, 5, 6] {
        for p in cx.entries(4) {
            runs += 1;
            let result = (|| -> Result<(), Error> {
                let x = big_embed(p, top)?;
                let tb = check_tb_identity(p, top)?;
                let eta = check_unit_eta(&x)?;
                let tri = check_triangle_identities(p, top)?;
                // Oracle: the level-2 simplices of B(P) read back as a table.
                let mut t: Table = vec![vec![None; p.size()]; p.size()];
                for w in x.level(2).words() {
                    t[w.0[0].0][w.0[1].0] = bpg_core::words::coherent_product(p.magma(), &w.0).map(|e| e.0);
                }
                let table_ok = t == table_of(p.magma());
                if !(tb.passed() && eta.passed() && tri.passed() && table_ok) {
                    bad.push(format!("{:?} at N = {top}", p.magma()));
                }
                Ok(())
            })();
            if let Err(e) = result {
                bad.push(e.to_string());
            }
        }
    }
    outcome(bad.is_empty(), format!("{runs} entry/level runs, {} exceptions{}", bad.len(), first(&bad)))
}

fn c8_fully_faithful(cx: &Context) -> Outcome {
    let mut bad = Vec::new();
    let mut pairs = 0;
    let entries: Vec<_> = cx.entries(3).collect();
    for p in &entries {
        for q in &entries {
            pairs += 1;
            let expected = oracle_hom_count(&table_of(p.magma()), &table_of(q.magma()));
            match check_fully_faithful(p, q, 4) {
                Ok(r) => {
                    let count = r.checks[0]
                        .witness
                        .as_deref()
                        .and_then(|w| w.split(' ').next())
                        .and_then(|n| n.parse::<usize>().ok());
                    if !r.passed() || count != Some(expected) {
                        bad.push(format!("{:?} → {:?}", p.magma(), q.magma()));
                    }
                }
                Err(e) => bad.push(e.to_string()),
            }
        }
    }
    outcome(bad.is_empty(), format!("{pairs} ordered pairs, {} exceptions{}", bad.len(), first(&bad)))
}

fn c9_two_skeletal(cx: &Context) -> Outcome {
    let mut bad = Vec::new();
    let mut inputs = 0;
    let mut run = |x: &TruncatedPartialGroup, bad: &mut Vec<String>| {
        inputs += 1;
        match check_2skeletal_equivalence(x) {
            Ok(r) if r.passed() => {}
            Ok(_) => bad.push(format!("{:?}", x.carrier())),
            Err(e) => bad.push(e.to_string()),
        }
    };
    for p in cx.entries(4) {
        match small_embed(p, 6) {
            Ok(x) => {
                if !x.validate().passed() {
                    bad.push(format!("B′ of {:?} is not a partial group", p.magma()));
                }
                run(&x, &mut bad);
            }
            Err(e) => bad.push(e.to_string()),
        }
        // Other 2-skeletal validated inputs: big embeddings equal to their
        // 2-skeleton.
        if let Ok(x) = big_embed(p, 6) {
            if is_two_skeletal(&x).unwrap_or(false) && x.validate().passed() {
                run(&x, &mut bad);
            }
        }
    }
    outcome(bad.is_empty(), format!("{inputs} 2-skeletal inputs, {} exceptions{}", bad.len(), first(&bad)))
}

fn c10_baer() -> Outcome {
    let mut hypothesis = 0usize;
    let mut bad = Vec::new();
    for k in 1..=4 {
        let rows = parallel_sweep(k, |i| {
            let t = oracle_table(k, i);
            if !(oracle_a3(&t) && oracle_right_inverses(&t)) {
                return None;
            }
            let p = magma(&t);
            let ok = check_a3(&p).passed() && find_dagger(&p).dagger().is_some();
            Some((!ok).then(|| format!("{t:?}")))
        });
        let stats = bpg_core::enumerate::sweep_stats(k).unwrap();
        if stats.baer_hypothesis != rows.len() as u64 || stats.baer_failures != 0 {
            bad.push(format!("size {k}: library counts {stats:?}, oracle {}", rows.len()));
        }
        hypothesis += rows.len();
        bad.extend(rows.into_iter().flatten());
    }
    outcome(
        bad.is_empty() && hypothesis > 0,
        format!("{hypothesis} tables satisfy A3 with right inverses, {} without an inverse{}", bad.len(), first(&bad)),
    )
}

fn c11_small_counts(cx: &Context) -> Outcome {
    let k2: Vec<Table> = (0..oracle_count(2)).map(|i| oracle_table(2, i)).collect();
    let k2_bpgs: Vec<&Table> = k2.iter().filter(|t| oracle_inverse_count(t) == 1).collect();
    let z2 = vec![vec![Some(0), Some(1)], vec![Some(1), Some(0)]];
    let z3 = vec![
        vec![Some(0), Some(1), Some(2)],
        vec![Some(1), Some(2), Some(0)],
        vec![Some(2), Some(0), Some(1)],
    ];
    let p3 = vec![
        vec![Some(0), Some(1), Some(2)],
        vec![Some(1), None, Some(0)],
        vec![Some(2), Some(0), None],
    ];
    let lib2 = bpg_core::enumerate::enumerate_unital_partial_magmas(2).map_or(0, |it| it.count());
    let lib3 = bpg_core::enumerate::enumerate_unital_partial_magmas(3).map_or(0, |it| it.count());
    let atlas3: BTreeSet<Table> = cx.atlases[2].structures.iter().map(|p| table_of(p.magma())).collect();
    let pass = k2.len() == 3
        && brute_force_agrees(3)
        && lib2 == 3
        && k2_bpgs == vec![&z2]
        && cx.atlases[1].structures.len() == 1
        && lib3 == 256
        && cx.atlases[2].provenance.candidates == 256
        && atlas3.contains(&oracle_canonical(&z3))
        && atlas3.contains(&oracle_canonical(&p3));
    let counts = cx
        .atlases
        .iter()
        .map(|a| format!("k={}: {}/{}/{}", a.size, a.provenance.candidates, a.provenance.binary_partial_groups, a.provenance.classes))
        .collect::<Vec<_>>()
        .join(", ");
    outcome(pass, format!("candidates/labelled/classes {counts}"))
}

fn c12_simplicial(cx: &Context) -> Outcome {
    let mut valid = Vec::new();
    let mut bad = Vec::new();
    for p in cx.entries(4) {
        match check_simplicial_two_skeleton(p, 4) {
            Ok(r) => {
                if !r.passed() {
                    bad.push(format!("{:?}", p.magma()));
                }
                if p.size() == 1 && r.passed() {
                    valid.push(format!("{:?}", p.magma()));
                }
            }
            Err(e) => bad.push(e.to_string()),
        }
    }
    outcome(
        bad.is_empty() && valid.len() == 1,
        format!("valid simplicial 2-skeleta: {} (trivial group only), {} exceptions{}", valid.len(), bad.len(), first(&bad)),
    )
}

fn first(v: &[String]) -> String {
    v.first().map(|s| format!("; first: {s}")).unwrap_or_default()
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    // `cargo test -- --list` and filters are accepted but ignored.
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let start = Instant::now();
    let cx = Context {
        atlases: (1..=4).map(|k| classify_bpgs(k).expect("classification")).collect(),
        oracle: Oracle::new(6),
    };
    println!("atlas built in {:.1?}", start.elapsed());
    let criteria: Vec<(&str, Criterion<'_>)> = vec![
        ("inverse uniqueness, k ≤ 4", Box::new(c1_uniqueness)),
        ("inverse is an involutive anti-automorphism with I2", Box::new(|| c2_anti_isomorphism(&cx))),
        ("mirror identity, length ≤ 5", Box::new(|| c3_mirror(&cx))),
        ("inversion closure, n ≤ 6", Box::new(|| c4_inversion_closure(&cx))),
        ("w†w and prefix words, n ≤ 3", Box::new(|| c5_main_theorem(&cx))),
        ("big embedding is a partial group at N = 6", Box::new(|| c6_partial_group(&cx))),
        ("adjunction at N ∈ {4, 5, 6}", Box::new(|| c7_adjunction(&cx))),
        ("fully faithful, k ≤ 3", Box::new(|| c8_fully_faithful(&cx))),
        ("2-skeletal equivalence", Box::new(|| c9_two_skeletal(&cx))),
        ("Baer criterion, k ≤ 4", Box::new(c10_baer)),
        ("small counts", Box::new(|| c11_small_counts(&cx))),
        ("simplicial 2-skeleton", Box::new(|| c12_simplicial(&cx))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({}; {:.1?})",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.detail,
            t.elapsed()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
