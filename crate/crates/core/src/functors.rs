//! The big embedding `B`, the small embedding `B′ = sk₂ ∘ B`, skeleta, the
//! underlying binary partial group `T`, and instance-level checks of the
//! adjunction and equivalence between them.
//!
//! In spine encoding the unit `η_X: X → BTX` is the levelwise inclusion of
//! word sets, and the counit `TB ⇒ id` is an equality of tables, so every
//! categorical claim reduces to comparisons of finite sets.

use crate::error::{Error, Result};
use crate::magma::{find_dagger, validate_hom, BinaryPartialGroup, Element, MagmaHom, PartialMagma, RawTable};
use crate::report::{FunctorReport, ValidationReport};
use crate::symset::{
    base_levels, validate_symset_hom, walk_words, Level, SymSetHom, TruncatedPartialGroup,
};
use crate::words::{raw, Intervals, Word};
use crate::Limits;

/// Levels `0..=top` of `BP`: every word all of whose full parenthesizations
/// are defined and agree.
pub fn big_embed(p: &BinaryPartialGroup, top: usize) -> Result<TruncatedPartialGroup> {
    big_embed_with(p, top, &Limits::default())
}

pub fn big_embed_with(
    p: &BinaryPartialGroup,
    top: usize,
    limits: &Limits,
) -> Result<TruncatedPartialGroup> {
    guard_level(top, limits)?;
    let k = p.size();
    let mut levels = base_levels(k, top)?;
    for lvl in levels.iter_mut().skip(2) {
        for code in 0..lvl.space() {
            let w = lvl.decode(code);
            if Intervals::compute(p.magma(), &w).total().is_some() {
                lvl.insert_code(code);
            }
        }
    }
    Ok(TruncatedPartialGroup::from_levels(
        p.magma().clone(),
        p.dagger_map().to_vec(),
        top,
        levels,
    ))
}

fn guard_level(top: usize, limits: &Limits) -> Result<()> {
    if top < 2 {
        return Err(Error::Precondition(format!("truncation level {top} is below 2")));
    }
    if top > limits.max_level {
        return Err(Error::ResourceGuard(format!(
            "truncation level {top} exceeds the bound of {}",
            limits.max_level
        )));
    }
    Ok(())
}

/// `sk₂(BP)`: levels up to 2 from `BP`, higher levels generated from them.
pub fn small_embed(p: &BinaryPartialGroup, top: usize) -> Result<TruncatedPartialGroup> {
    small_embed_with(p, top, &Limits::default())
}

pub fn small_embed_with(
    p: &BinaryPartialGroup,
    top: usize,
    limits: &Limits,
) -> Result<TruncatedPartialGroup> {
    skeleton(&big_embed_with(p, top, limits)?, 2)
}

/// The smallest symmetric subset containing levels `0..=k`: higher levels
/// become the pull-backs of low simplices along every map `[n] → [m]`,
/// `m ≤ k`.
pub fn skeleton(x: &TruncatedPartialGroup, k: usize) -> Result<TruncatedPartialGroup> {
    closure_of_low_levels(x, k, false)
}

/// As [`skeleton`], but closing only under monotone maps, i.e. the
/// skeleton of the underlying simplicial set.
pub fn simplicial_skeleton(x: &TruncatedPartialGroup, k: usize) -> Result<TruncatedPartialGroup> {
    closure_of_low_levels(x, k, true)
}

fn closure_of_low_levels(
    x: &TruncatedPartialGroup,
    k: usize,
    monotone: bool,
) -> Result<TruncatedPartialGroup> {
    let top = x.top();
    if k < 2 || k > top {
        return Err(Error::Precondition(format!("skeleton dimension {k} outside 2..={top}")));
    }
    let base = x.carrier().size();
    let mut levels: Vec<Level> = x.levels()[..=k].to_vec();
    for n in k + 1..=top {
        levels.push(Level::empty(n, base)?);
    }
    for m in 0..=k {
        for w in x.level(m).raw_words() {
            let edges = x.edges_of(&w).map_err(|_| {
                Error::Integrity(format!("simplex ({}) has no coherent edges", show(x.carrier(), &w)))
            })?;
            let reach = walk_words(&edges, m + 1, base, top, monotone);
            for n in k + 1..=top {
                levels[n].union_bits(&reach[n]);
            }
        }
    }
    Ok(TruncatedPartialGroup::from_levels(
        x.carrier().clone(),
        x.dagger_map().to_vec(),
        top,
        levels,
    ))
}

fn show(p: &PartialMagma, w: &[usize]) -> String {
    p.format_word(&w.iter().map(|&e| Element(e)).collect::<Vec<_>>())
}

pub fn is_two_skeletal(x: &TruncatedPartialGroup) -> Result<bool> {
    Ok(skeleton(x, 2)?.same_levels(x))
}

/// The carrier with product defined exactly on the 2-simplices, valued at
/// their long edge. Fails with [`Error::Integrity`] when the result is not
/// a binary partial group, which means `x` was not a partial group.
pub fn underlying_t(x: &TruncatedPartialGroup) -> Result<BinaryPartialGroup> {
    let c = x.carrier();
    let k = c.size();
    let mut table: RawTable = vec![vec![None; k]; k];
    for w in x.level(2).raw_words() {
        let v = Intervals::compute(c, &w).total().ok_or_else(|| {
            Error::Integrity(format!("2-simplex ({}) has no product", show(c, &w)))
        })?;
        table[w[0]][w[1]] = Some(v);
    }
    let magma = PartialMagma::new(c.names().to_vec(), &table, c.unit().0).map_err(|e| {
        Error::Integrity(format!("underlying magma is not unital: {e}"))
    })?;
    BinaryPartialGroup::new(magma).map_err(|e| {
        Error::Integrity(format!("underlying magma is not a binary partial group: {e}"))
    })
}

/// `B(f)`, together with the structures it maps between.
#[derive(Clone, Debug)]
pub struct InducedHom {
    pub source: TruncatedPartialGroup,
    pub target: TruncatedPartialGroup,
    pub map: Vec<Element>,
}

impl InducedHom {
    pub fn as_hom(&self) -> SymSetHom<'_> {
        SymSetHom {
            source: &self.source,
            target: &self.target,
            map: self.map.clone(),
        }
    }
}

/// Entrywise application of a magma hom between big embeddings.
pub fn induced_hom_b(f: &MagmaHom<'_>, top: usize) -> Result<InducedHom> {
    let s = BinaryPartialGroup::new(f.source.clone())?;
    let t = BinaryPartialGroup::new(f.target.clone())?;
    Ok(InducedHom {
        source: big_embed(&s, top)?,
        target: big_embed(&t, top)?,
        map: f.map.clone(),
    })
}

fn label(p: &PartialMagma) -> String {
    format!("{p:?}")
}

fn level_diff_witness(a: &Level, b: &Level, carrier: &PartialMagma) -> Option<String> {
    a.difference(b).next().map(|w| format!("({})", show(carrier, &w)))
}

/// `TB = id`: the underlying table of `B(P)` is the table of `P`.
pub fn check_tb_identity(p: &BinaryPartialGroup, top: usize) -> Result<FunctorReport> {
    let mut report = FunctorReport::new("TB = id", vec![label(p.magma())]);
    let x = big_embed(p, top)?;
    let t = underlying_t(&x)?;
    report.check(
        "table-equality",
        t.magma() == p.magma(),
        (t.magma() != p.magma()).then(|| format!("T(B(P)) = {:?}", t.magma())),
    );
    report.check("dagger-equality", t.dagger_map() == p.dagger_map(), None);
    Ok(report)
}

/// The unit `η_X` is the inclusion `X ⊆ BTX`; reports which levels are
/// proper inclusions.
pub fn check_unit_eta(x: &TruncatedPartialGroup) -> Result<FunctorReport> {
    let t = underlying_t(x)?;
    let btx = big_embed_with(&t, x.top(), &Limits::unsafe_large())?;
    let mut report = FunctorReport::new("unit η: X → BTX", vec![label(x.carrier())]);
    for n in 0..=x.top() {
        let (a, b) = (x.level(n), btx.level(n));
        let included = a.is_subset(b);
        report.check(
            format!("level-{n}-inclusion"),
            included,
            level_diff_witness(a, b, x.carrier()),
        );
        if included && a.count() < b.count() {
            report.check(
                format!("level-{n}-proper"),
                true,
                Some(format!("{} of {} simplices", a.count(), b.count())),
            );
        }
    }
    let eta = SymSetHom::identity(x);
    let eta = SymSetHom {
        target: &btx,
        ..eta
    };
    report.check_report("eta-is-map", &validate_symset_hom(&eta)?);
    Ok(report)
}

/// Triangle identities at `P`: `T(η_{BP})` is the identity of `P`, and
/// `η_{BP}` is the levelwise identity.
pub fn check_triangle_identities(p: &BinaryPartialGroup, top: usize) -> Result<FunctorReport> {
    let mut report = FunctorReport::new("triangle identities", vec![label(p.magma())]);
    let x = big_embed(p, top)?;
    let tx = underlying_t(&x)?;
    report.check("counit-identity", tx.magma() == p.magma(), None);

    let btx = big_embed(&tx, top)?;
    let ttx = underlying_t(&btx)?;
    // η is the identity on 1-simplices, so T(η) is the identity function
    // of TX; it must be a hom onto an equal table.
    let id = MagmaHom::identity(tx.magma());
    let t_eta = MagmaHom {
        target: ttx.magma(),
        ..id
    };
    let hom = validate_hom(&t_eta);
    report.check(
        "T(eta)-is-identity",
        hom.passed() && ttx.magma() == tx.magma(),
        (!hom.passed()).then(|| hom.summary()),
    );
    let mut witness = None;
    let mut same = true;
    for n in 0..=top {
        if x.level(n) != btx.level(n) {
            same = false;
            witness = level_diff_witness(btx.level(n), x.level(n), x.carrier())
                .or_else(|| level_diff_witness(x.level(n), btx.level(n), x.carrier()))
                .map(|w| format!("level {n}: {w}"));
            break;
        }
    }
    report.check("eta-at-BP-is-identity", same, witness);
    Ok(report)
}

/// All level-1 functions `P → Q` that are homs of partial magmas.
pub fn magma_homs(p: &PartialMagma, q: &PartialMagma) -> Vec<Vec<Element>> {
    all_functions(p.size(), q.size())
        .filter(|map| {
            let f = MagmaHom {
                source: p,
                target: q,
                map: map.clone(),
            };
            validate_hom(&f).passed()
        })
        .collect()
}

/// All level-1 functions that extend to maps of symmetric sets `X → Y`.
pub fn symset_homs(x: &TruncatedPartialGroup, y: &TruncatedPartialGroup) -> Result<Vec<Vec<Element>>> {
    let mut out = Vec::new();
    for map in all_functions(x.carrier().size(), y.carrier().size()) {
        let h = SymSetHom {
            source: x,
            target: y,
            map: map.clone(),
        };
        if validate_symset_hom(&h)?.passed() {
            out.push(map);
        }
    }
    Ok(out)
}

fn all_functions(from: usize, to: usize) -> impl Iterator<Item = Vec<Element>> {
    let total = to.pow(from as u32);
    (0..total).map(move |mut code| {
        let mut v = vec![Element(0); from];
        for slot in v.iter_mut().rev() {
            *slot = Element(code % to);
            code /= to;
        }
        v
    })
}

/// `Hom(P, Q) → Hom(BP, BQ)` is a bijection on this pair.
pub fn check_fully_faithful(
    p: &BinaryPartialGroup,
    q: &BinaryPartialGroup,
    top: usize,
) -> Result<FunctorReport> {
    let mut report = FunctorReport::new(
        "B fully faithful",
        vec![label(p.magma()), label(q.magma())],
    );
    let bp = big_embed(p, top)?;
    let bq = big_embed(q, top)?;
    let homs = magma_homs(p.magma(), q.magma());
    let maps = symset_homs(&bp, &bq)?;
    let fmt = |maps: &[Vec<Element>]| {
        maps.iter()
            .map(|m| show(q.magma(), &raw(m)))
            .collect::<Vec<_>>()
            .join(" | ")
    };
    report.check(
        "hom-counts-equal",
        homs.len() == maps.len(),
        Some(format!("{} magma homs, {} symmetric set maps", homs.len(), maps.len())),
    );
    report.check(
        "hom-sets-equal",
        homs == maps,
        (homs != maps).then(|| format!("magma: {}; symmetric: {}", fmt(&homs), fmt(&maps))),
    );
    Ok(report)
}

/// For a 2-skeletal `X`, the comparison `X → B′TX` is a levelwise
/// bijection.
pub fn check_2skeletal_equivalence(x: &TruncatedPartialGroup) -> Result<FunctorReport> {
    if !is_two_skeletal(x)? {
        return Err(Error::Precondition("input is not 2-skeletal".into()));
    }
    let t = underlying_t(x)?;
    let y = small_embed_with(&t, x.top(), &Limits::unsafe_large())?;
    let mut report = FunctorReport::new("η′: X → B′TX", vec![label(x.carrier())]);
    for n in 0..=x.top() {
        let (a, b) = (x.level(n), y.level(n));
        report.check(
            format!("level-{n}-bijection"),
            a == b,
            level_diff_witness(b, a, x.carrier()).or_else(|| level_diff_witness(a, b, x.carrier())),
        );
    }
    Ok(report)
}

/// A partial magma whose table is that of `TX` for a partial group `X` is a
/// binary partial group.
pub fn check_final_remark(p: &PartialMagma, x: &TruncatedPartialGroup) -> Result<FunctorReport> {
    let t = underlying_t(x)?;
    if p != t.magma() {
        return Err(Error::Precondition(
            "the magma's table differs from the underlying table of X".into(),
        ));
    }
    let mut report = FunctorReport::new("magma equal to TX", vec![label(p)]);
    let search = find_dagger(p);
    report.check(
        "is-binary-partial-group",
        search.dagger().is_some(),
        (search.dagger().is_none()).then(|| search.report.summary()),
    );
    Ok(report)
}

/// For every `w ∈ BPₙ` with `2n ≤ top` and every `0 ≤ k ≤ n`, the word
/// `(a_k†, …, a_1†, a_1, …, a_n)` lies in `BP_{n+k}` with total product
/// `a_{k+1} ⋯ a_n`, and its reverse-inverse `(a_n†, …, a_1†, a_1, …, a_k)`
/// has product `(a_{k+1} ⋯ a_n)†`. The case `k = n` is `w†w ∈ BP₂ₙ`.
pub fn check_main_theorem(p: &BinaryPartialGroup, top: usize) -> ValidationReport {
    let mut report = ValidationReport::new("w†w theorem");
    let m = p.magma();
    let product = |w: &[usize]| Intervals::compute(m, w).total();
    let shown = |w: &[usize]| show(m, w);
    let mut words_checked = 0usize;
    for n in 1..=top / 2 {
        for w in crate::words::all_words(p.size(), n) {
            let w = raw(&w.0);
            if product(&w).is_none() {
                continue;
            }
            words_checked += 1;
            for k in 0..=n {
                let expected = product(&w[k..]);
                let mut prefix: Vec<usize> = w[..k].iter().rev().map(|&a| p.dagger(Element(a)).0).collect();
                prefix.extend_from_slice(&w);
                let got = product(&prefix);
                if expected.is_none() || got != expected {
                    report.push(
                        "prefix-product",
                        vec![shown(&w), format!("k={k}")],
                        format!("({}) with product {}", shown(&prefix), m.show(expected.map(Element))),
                        m.show(got.map(Element)),
                    );
                }
                let mut mirrored: Vec<usize> = w.iter().rev().map(|&a| p.dagger(Element(a)).0).collect();
                mirrored.extend_from_slice(&w[..k]);
                let want = expected.map(|e| p.dagger(Element(e)).0);
                let got = product(&mirrored);
                if want.is_none() || got != want {
                    report.push(
                        "mirrored-prefix-product",
                        vec![shown(&w), format!("k={k}")],
                        format!("({}) with product {}", shown(&mirrored), m.show(want.map(Element))),
                        m.show(got.map(Element)),
                    );
                }
            }
        }
    }
    report.note(format!("{words_checked} words of length ≤ {}", top / 2));
    report
}

/// The 2-skeleton taken in simplicial sets (closing only under monotone
/// maps) is a partial group exactly for the trivial group.
pub fn check_simplicial_two_skeleton(p: &BinaryPartialGroup, top: usize) -> Result<FunctorReport> {
    let mut report = FunctorReport::new("simplicial 2-skeleton", vec![label(p.magma())]);
    let y = simplicial_skeleton(&big_embed(p, top)?, 2)?;
    let valid = y.validate().passed();
    let trivial = p.size() == 1;
    report.check(
        "valid-iff-trivial",
        valid == trivial,
        Some(format!("partial group: {valid}, trivial: {trivial}")),
    );
    Ok(report)
}

/// Finds a word in `B(P)ₙ` that is not in `B′(P)ₙ`, for some `n ≤ top`.
pub fn big_small_gap(p: &BinaryPartialGroup, top: usize) -> Result<Option<(usize, Word)>> {
    let big = big_embed(p, top)?;
    let small = skeleton(&big, 2)?;
    for n in 3..=top {
        if let Some(w) = big.level(n).difference(small.level(n)).next() {
            return Ok(Some((n, Word(w.into_iter().map(Element).collect()))));
        }
    }
    Ok(None)
}
