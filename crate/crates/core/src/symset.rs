//! Truncated symmetric sets in spine encoding.
//!
//! An `n`-simplex is stored as its tuple of spine edges `(a₁, …, aₙ)`. The
//! edge from vertex `i` to vertex `j` is the total product of `a_{i+1} … a_j`
//! for `i < j`, the inverse of that for `i > j`, and the unit on the
//! diagonal. An arbitrary function `f: [m] → [n]` then pulls an `n`-simplex
//! back to the `m`-simplex whose `k`-th spine edge is the edge from `f(k-1)`
//! to `f(k)`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::magma::{BinaryPartialGroup, Element, PartialMagma};
use crate::report::ValidationReport;
use crate::words::{Intervals, Word};

/// A function `[m] → [n]` between finite ordinals; not necessarily monotone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplexMap {
    target: usize,
    values: Vec<usize>,
}

impl SimplexMap {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Structural("a simplex map needs a nonempty domain".into()));
        }
        if let Some(v) = values.iter().find(|&&v| v > target) {
            return Err(Error::Structural(format!("value {v} exceeds target dimension {target}")));
        }
        Ok(SimplexMap { target, values })
    }

    pub fn identity(n: usize) -> Self {
        SimplexMap {
            target: n,
            values: (0..=n).collect(),
        }
    }

    /// The coface `[n-1] → [n]` that misses `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        SimplexMap {
            target: n,
            values: (0..n).map(|k| if k < i { k } else { k + 1 }).collect(),
        }
    }

    /// The codegeneracy `[n+1] → [n]` that hits `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n);
        SimplexMap {
            target: n,
            values: (0..=n + 1).map(|k| if k <= i { k } else { k - 1 }).collect(),
        }
    }

    /// `k ↦ n - k`.
    pub fn reversal(n: usize) -> Self {
        SimplexMap {
            target: n,
            values: (0..=n).rev().collect(),
        }
    }

    /// Swaps `i` and `i + 1`.
    pub fn transposition(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut values: Vec<usize> = (0..=n).collect();
        values.swap(i, i + 1);
        SimplexMap { target: n, values }
    }

    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, k: usize) -> usize {
        self.values[k]
    }

    pub fn is_monotone(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    /// `then ∘ self`, i.e. first `self`, then `then`.
    pub fn then(&self, then: &SimplexMap) -> Result<SimplexMap> {
        if then.source() != self.target {
            return Err(Error::Precondition(format!(
                "cannot compose [{}]→[{}] with [{}]→[{}]",
                self.source(),
                self.target,
                then.source(),
                then.target
            )));
        }
        Ok(SimplexMap {
            target: then.target,
            values: self.values.iter().map(|&v| then.values[v]).collect(),
        })
    }

    /// All `(n+1)^(m+1)` functions `[m] → [n]` in lexicographic order.
    pub fn all(m: usize, n: usize) -> impl Iterator<Item = SimplexMap> {
        let base = n + 1;
        let total = base.pow(m as u32 + 1);
        (0..total).map(move |mut code| {
            let mut values = vec![0; m + 1];
            for slot in values.iter_mut().rev() {
                *slot = code % base;
                code /= base;
            }
            SimplexMap { target: n, values }
        })
    }

    pub(crate) fn random(rng: &mut impl Rng, m: usize, n: usize) -> SimplexMap {
        SimplexMap {
            target: n,
            values: (0..=m).map(|_| rng.gen_range(0..=n)).collect(),
        }
    }
}

impl std::fmt::Display for SimplexMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]→[{}]:({})", self.source(), self.target, vals.join(","))
    }
}

const MAX_LEVEL_BITS: usize = 1 << 28;

/// A set of words of one fixed length over `base` letters, stored as a
/// bitset indexed by the base-`base` code of the word (first letter most
/// significant, so code order is lexicographic order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Level {
    len: usize,
    base: usize,
    bits: Vec<u64>,
    count: usize,
}

impl Level {
    pub fn empty(len: usize, base: usize) -> Result<Level> {
        let space = base
            .checked_pow(len as u32)
            .filter(|&s| s <= MAX_LEVEL_BITS)
            .ok_or_else(|| {
                Error::ResourceGuard(format!("{base}^{len} words exceeds the level size bound"))
            })?;
        Ok(Level {
            len,
            base,
            bits: vec![0; space.div_ceil(64)],
            count: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Number of words in the level.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub(crate) fn space(&self) -> usize {
        self.base.pow(self.len as u32)
    }

    pub(crate) fn encode(&self, w: &[usize]) -> usize {
        w.iter().fold(0, |acc, &e| acc * self.base + e)
    }

    pub(crate) fn decode(&self, mut code: usize) -> Vec<usize> {
        let mut w = vec![0; self.len];
        for slot in w.iter_mut().rev() {
            *slot = code % self.base;
            code /= self.base;
        }
        w
    }

    #[inline]
    pub(crate) fn contains_code(&self, code: usize) -> bool {
        self.bits[code / 64] >> (code % 64) & 1 == 1
    }

    pub(crate) fn insert_code(&mut self, code: usize) -> bool {
        let (slot, bit) = (code / 64, 1u64 << (code % 64));
        if self.bits[slot] & bit == 0 {
            self.bits[slot] |= bit;
            self.count += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn contains_raw(&self, w: &[usize]) -> bool {
        w.len() == self.len && w.iter().all(|&e| e < self.base) && self.contains_code(self.encode(w))
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.len() == self.len
            && w.0.iter().all(|e| e.0 < self.base)
            && self.contains_code(self.encode(&crate::words::raw(&w.0)))
    }

    pub(crate) fn codes(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(slot, &word)| {
            crate::words::bits(word).map(move |b| slot * 64 + b)
        })
    }

    pub(crate) fn raw_words(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.codes().map(|c| self.decode(c))
    }

    /// Words in lexicographic order.
    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        self.raw_words()
            .map(|w| Word(w.into_iter().map(Element).collect()))
    }

    pub fn is_subset(&self, other: &Level) -> bool {
        self.len == other.len
            && self.base == other.base
            && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Words of `self` missing from `other`.
    pub(crate) fn difference<'a>(&'a self, other: &'a Level) -> impl Iterator<Item = Vec<usize>> + 'a {
        self.codes()
            .filter(|&c| !other.contains_code(c))
            .map(|c| self.decode(c))
    }

    pub(crate) fn union_bits(&mut self, bits: &[u64]) {
        for (a, b) in self.bits.iter_mut().zip(bits) {
            *a |= b;
        }
        self.count = self.bits.iter().map(|w| w.count_ones() as usize).sum();
    }
}

/// Why a pull-back could not be computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Fault {
    NotMember,
    /// The subword on `[i, j)` lacks a coherent total product.
    Incoherent(usize, usize),
}

/// Edge matrix of a spine word: `(n+1)²` entries, row-major.
pub(crate) fn edge_matrix(
    carrier: &PartialMagma,
    dagger: &[Element],
    w: &[usize],
) -> std::result::Result<Vec<usize>, Fault> {
    let iv = Intervals::compute(carrier, w);
    let dim = iv.len() + 1;
    let mut e = vec![carrier.unit().0; dim * dim];
    for i in 0..dim {
        for j in i + 1..dim {
            let v = iv.unique(i, j).ok_or(Fault::Incoherent(i, j))?;
            e[i * dim + j] = v;
            e[j * dim + i] = dagger[v].0;
        }
    }
    Ok(e)
}

#[inline]
pub(crate) fn pull_back(edges: &[usize], dim: usize, f: &[usize]) -> Vec<usize> {
    f.windows(2).map(|p| edges[p[0] * dim + p[1]]).collect()
}

/// Every word spelled by a walk of each length `0..=max_len` through the
/// complete directed graph on `dim` vertices labelled by `edges`; walks are
/// restricted to non-decreasing vertex sequences when `monotone` is set.
///
/// Walks of length `m` are exactly the functions `[m] → [dim-1]`, so the
/// `m`-th set is the set of all pull-backs of the simplex to level `m`.
pub(crate) fn walk_words(
    edges: &[usize],
    dim: usize,
    base: usize,
    max_len: usize,
    monotone: bool,
) -> Vec<Vec<u64>> {
    let mut out = Vec::with_capacity(max_len + 1);
    out.push(vec![1u64]);
    // states indexed by vertex * space + code
    let mut space = 1usize;
    let mut states = vec![0u64; (dim * space).div_ceil(64)];
    for v in 0..dim {
        states[v / 64] |= 1 << (v % 64);
    }
    for _ in 1..=max_len {
        let next_space = space * base;
        let mut next = vec![0u64; (dim * next_space).div_ceil(64)];
        let mut words = vec![0u64; next_space.div_ceil(64)];
        for (slot, &chunk) in states.iter().enumerate() {
            for b in crate::words::bits(chunk) {
                let idx = slot * 64 + b;
                let (v, code) = (idx / space, idx % space);
                let lo = if monotone { v } else { 0 };
                for u in lo..dim {
                    let nc = code * base + edges[v * dim + u];
                    let ni = u * next_space + nc;
                    next[ni / 64] |= 1 << (ni % 64);
                    words[nc / 64] |= 1 << (nc % 64);
                }
            }
        }
        out.push(words);
        states = next;
        space = next_space;
    }
    out
}

/// Finds a vertex sequence whose walk spells `target`.
pub(crate) fn find_walk(edges: &[usize], dim: usize, target: &[usize], monotone: bool) -> Option<Vec<usize>> {
    fn go(
        edges: &[usize],
        dim: usize,
        target: &[usize],
        monotone: bool,
        path: &mut Vec<usize>,
    ) -> bool {
        let k = path.len() - 1;
        if k == target.len() {
            return true;
        }
        let v = *path.last().unwrap();
        let lo = if monotone { v } else { 0 };
        for u in lo..dim {
            if edges[v * dim + u] == target[k] {
                path.push(u);
                if go(edges, dim, target, monotone, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    (0..dim).find_map(|start| {
        let mut path = vec![start];
        go(edges, dim, target, monotone, &mut path).then_some(path)
    })
}

/// A spine-encoded symmetric set truncated at level `N`, with a carrier
/// magma on level 1, an inverse function, and one set of words per level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPartialGroup {
    top: usize,
    carrier: PartialMagma,
    dagger: Vec<Element>,
    levels: Vec<Level>,
}

#[derive(Clone, Debug)]
pub struct ValidateOptions {
    pub seed: u64,
    /// Random composable pairs used to spot-check functoriality.
    pub functoriality_samples: usize,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            seed: 0,
            functoriality_samples: 256,
        }
    }
}

impl TruncatedPartialGroup {
    /// Assembles a structure from explicit higher levels. Levels 0 and 1 are
    /// implied; levels missing from `higher` are empty.
    pub fn from_parts(
        carrier: PartialMagma,
        dagger: Vec<Element>,
        top: usize,
        higher: &BTreeMap<usize, Vec<Word>>,
    ) -> Result<Self> {
        if top < 2 {
            return Err(Error::Structural(format!("truncation level {top} is below 2")));
        }
        let k = carrier.size();
        if k > 64 {
            return Err(Error::ResourceGuard("carriers are limited to 64 elements".into()));
        }
        if dagger.len() != k || dagger.iter().any(|d| d.0 >= k) {
            return Err(Error::Structural("dagger must map every element into the carrier".into()));
        }
        let mut levels = base_levels(k, top)?;
        for (&n, words) in higher {
            if n < 2 || n > top {
                return Err(Error::Structural(format!("level {n} outside 2..={top}")));
            }
            for w in words {
                if w.len() != n {
                    return Err(Error::Structural(format!(
                        "word of length {} listed at level {n}",
                        w.len()
                    )));
                }
                if w.0.iter().any(|e| e.0 >= k) {
                    return Err(Error::Structural("word entry out of range".into()));
                }
                let lvl = &mut levels[n];
                let code = lvl.encode(&crate::words::raw(&w.0));
                lvl.insert_code(code);
            }
        }
        Ok(TruncatedPartialGroup {
            top,
            carrier,
            dagger,
            levels,
        })
    }

    pub(crate) fn from_levels(
        carrier: PartialMagma,
        dagger: Vec<Element>,
        top: usize,
        levels: Vec<Level>,
    ) -> Self {
        debug_assert_eq!(levels.len(), top + 1);
        TruncatedPartialGroup {
            top,
            carrier,
            dagger,
            levels,
        }
    }

    /// The nerve of a group: every word at every level. Fails unless the
    /// carrier's product is total.
    pub fn nerve(group: &BinaryPartialGroup, top: usize) -> Result<Self> {
        if !group.magma().is_total() {
            return Err(Error::Precondition("the nerve needs a total product".into()));
        }
        if top < 2 {
            return Err(Error::Structural(format!("truncation level {top} is below 2")));
        }
        let k = group.size();
        let mut levels = base_levels(k, top)?;
        for lvl in levels.iter_mut().skip(2) {
            for code in 0..lvl.space() {
                lvl.insert_code(code);
            }
        }
        Ok(Self::from_levels(
            group.magma().clone(),
            group.dagger_map().to_vec(),
            top,
            levels,
        ))
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn carrier(&self) -> &PartialMagma {
        &self.carrier
    }

    pub fn dagger(&self, a: Element) -> Element {
        self.dagger[a.0]
    }

    pub fn dagger_map(&self) -> &[Element] {
        &self.dagger
    }

    pub fn unit(&self) -> Element {
        self.carrier.unit()
    }

    pub fn level(&self, n: usize) -> &Level {
        &self.levels[n]
    }

    pub(crate) fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Level::count).collect()
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.len() <= self.top && self.levels[w.len()].contains(w)
    }

    /// Same level sets, compared as sets of words.
    pub fn same_levels(&self, other: &TruncatedPartialGroup) -> bool {
        self.top == other.top && self.levels == other.levels
    }

    fn require_member(&self, w: &Word) -> Result<()> {
        if self.contains(w) {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "({}) is not a simplex",
                w.display(&self.carrier)
            )))
        }
    }

    fn fault(&self, w: &[usize], fault: Fault) -> Error {
        let shown = self.carrier.format_word(&w.iter().map(|&e| Element(e)).collect::<Vec<_>>());
        match fault {
            Fault::NotMember => Error::Precondition(format!("({shown}) is not a simplex")),
            Fault::Incoherent(i, j) => Error::Integrity(format!(
                "subword [{i}, {j}) of ({shown}) has no coherent product"
            )),
        }
    }

    pub(crate) fn edges_of(&self, w: &[usize]) -> std::result::Result<Vec<usize>, Fault> {
        edge_matrix(&self.carrier, &self.dagger, w)
    }

    /// The edge from vertex `i` to vertex `j` of the simplex `w`.
    pub fn edge(&self, w: &Word, i: usize, j: usize) -> Result<Element> {
        self.require_member(w)?;
        let n = w.len();
        if i > n || j > n {
            return Err(Error::Precondition(format!("vertex out of range 0..={n}")));
        }
        if i == j {
            return Ok(self.unit());
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let iv = Intervals::compute(&self.carrier, &crate::words::raw(&w.0[lo..hi]));
        let v = iv
            .total()
            .ok_or_else(|| self.fault(&crate::words::raw(&w.0), Fault::Incoherent(lo, hi)))?;
        Ok(if i < j { Element(v) } else { self.dagger[v] })
    }

    pub(crate) fn act_raw(&self, f: &[usize], w: &[usize]) -> std::result::Result<Vec<usize>, Fault> {
        if !self.levels[w.len()].contains_raw(w) {
            return Err(Fault::NotMember);
        }
        let edges = self.edges_of(w)?;
        Ok(pull_back(&edges, w.len() + 1, f))
    }

    /// Pulls the simplex `w` back along `f: [m] → [n]`. Errors if the
    /// result is not a simplex of level `m`.
    pub fn act(&self, f: &SimplexMap, w: &Word) -> Result<Word> {
        if f.target() != w.len() {
            return Err(Error::Precondition(format!(
                "map targets [{}] but the simplex has dimension {}",
                f.target(),
                w.len()
            )));
        }
        if f.source() > self.top {
            return Err(Error::Precondition(format!(
                "map source [{}] exceeds truncation {}",
                f.source(),
                self.top
            )));
        }
        let raw = crate::words::raw(&w.0);
        let out = self.act_raw(f.values(), &raw).map_err(|e| self.fault(&raw, e))?;
        if !self.levels[f.source()].contains_raw(&out) {
            return Err(Error::Integrity(format!(
                "closure violation: pulling ({}) back along {f} gives ({}), not a simplex",
                w.display(&self.carrier),
                self.carrier.format_word(&out.iter().map(|&e| Element(e)).collect::<Vec<_>>())
            )));
        }
        Ok(Word(out.into_iter().map(Element).collect()))
    }

    /// `d_i`, pulling back along the coface that misses `i`.
    pub fn face(&self, i: usize, w: &Word) -> Result<Word> {
        let n = w.len();
        if n == 0 || i > n {
            return Err(Error::Precondition(format!("no face d_{i} in dimension {n}")));
        }
        self.act(&SimplexMap::coface(n, i), w)
    }

    /// `s_i`, pulling back along the codegeneracy that repeats `i`.
    pub fn degeneracy(&self, i: usize, w: &Word) -> Result<Word> {
        let n = w.len();
        if i > n || n + 1 > self.top {
            return Err(Error::Precondition(format!(
                "no degeneracy s_{i} from dimension {n} under truncation {}",
                self.top
            )));
        }
        self.act(&SimplexMap::codegeneracy(n, i), w)
    }

    /// Product of all spine edges: the long edge `0 → n`.
    pub fn total_product(&self, w: &Word) -> Result<Element> {
        self.require_member(w)?;
        let raw = crate::words::raw(&w.0);
        Intervals::compute(&self.carrier, &raw)
            .total()
            .map(Element)
            .ok_or_else(|| self.fault(&raw, Fault::Incoherent(0, raw.len())))
    }

    /// Checks reducedness, agreement of level 2 with the carrier table,
    /// coherence of every simplex, closure under every simplex map, the
    /// inverse condition through level `⌊N/2⌋`, simplicial identities, and
    /// a seeded functoriality spot-check.
    pub fn validate(&self) -> ValidationReport {
        self.validate_with(&ValidateOptions::default())
    }

    pub fn validate_with(&self, opts: &ValidateOptions) -> ValidationReport {
        let mut report = ValidationReport::new("partial group");
        let c = &self.carrier;
        let k = c.size();
        let one = c.unit();

        if self.levels[0].count() != 1 {
            report.push("reduced", vec![], "one 0-simplex", format!("{}", self.levels[0].count()));
        }
        if self.levels[1].count() != k {
            report.push("level-1", vec![], format!("{k} 1-simplices"), format!("{}", self.levels[1].count()));
        }
        if self.dagger[one.0] != one {
            report.push("inverse-involution", vec![c.name(one).into()], c.name(one).to_string(), c.name(self.dagger[one.0]).to_string());
        }
        for a in c.elements() {
            let dd = self.dagger[self.dagger[a.0].0];
            if dd != a {
                report.push("inverse-involution", vec![c.name(a).into()], c.name(a).to_string(), c.name(dd).to_string());
            }
        }
        for a in c.elements() {
            for b in c.elements() {
                let in_d2 = self.levels[2].contains_raw(&[a.0, b.0]);
                let defined = c.product(a, b).is_some();
                if in_d2 != defined {
                    report.push(
                        "level-2-table",
                        vec![c.name(a).into(), c.name(b).into()],
                        format!("in level 2 iff product defined ({defined})"),
                        format!("in level 2: {in_d2}"),
                    );
                }
            }
        }

        for n in 0..=self.top {
            let words: Vec<Vec<usize>> = self.levels[n].raw_words().collect();
            let parts: Vec<ValidationReport> = words
                .par_iter()
                .map(|w| self.validate_simplex(w))
                .collect();
            for p in parts {
                report.absorb(p);
            }
        }

        self.spot_check_functoriality(opts, &mut report);

        report.note("Segal maps are injective by construction (spine encoding)");
        report.note(format!(
            "closure checked for all maps [m]→[n], m, n ≤ {}",
            self.top
        ));
        report.note(format!(
            "inverse condition verified through level {}",
            self.top / 2
        ));
        report
    }

    fn validate_simplex(&self, w: &[usize]) -> ValidationReport {
        let mut report = ValidationReport::new("simplex");
        let c = &self.carrier;
        let k = c.size();
        let n = w.len();
        let dim = n + 1;
        let show = |w: &[usize]| {
            c.format_word(&w.iter().map(|&e| Element(e)).collect::<Vec<_>>())
        };

        let iv = Intervals::compute(c, w);
        if n >= 2 && iv.total().is_none() {
            report.push(
                "coherence",
                vec![show(w)],
                "all parenthesizations defined and equal",
                "undefined or disagreeing",
            );
            return report;
        }
        let edges = match self.edges_of(w) {
            Ok(e) => e,
            Err(Fault::Incoherent(i, j)) => {
                report.push(
                    "edge-coherence",
                    vec![show(w), format!("[{i},{j})")],
                    "coherent subword",
                    "no common product",
                );
                return report;
            }
            Err(Fault::NotMember) => unreachable!("edge matrices need no membership"),
        };

        // closure under every map [m] → [n]
        let reach = walk_words(&edges, dim, k, self.top, false);
        for (m, words) in reach.iter().enumerate().skip(1) {
            let lvl = &self.levels[m];
            for (slot, &chunk) in words.iter().enumerate() {
                let missing = chunk & !lvl.bits[slot];
                for b in crate::words::bits(missing) {
                    let out = lvl.decode(slot * 64 + b);
                    let path = find_walk(&edges, dim, &out, false).expect("word came from a walk");
                    report.push(
                        "closure",
                        vec![show(w), format!("[{m}]→[{n}]:({})", join(&path))],
                        format!("({}) in level {m}", show(&out)),
                        "missing",
                    );
                }
            }
        }

        // inverse condition: w† w is a simplex with trivial total product
        if 2 * n <= self.top && n >= 1 {
            let mut dw: Vec<usize> = w.iter().rev().map(|&a| self.dagger[a].0).collect();
            dw.extend_from_slice(w);
            let member = self.levels[2 * n].contains_raw(&dw);
            let total = Intervals::compute(c, &dw).total();
            if !member || total != Some(c.unit().0) {
                report.push(
                    "inverse-condition",
                    vec![show(w)],
                    format!("({}) in level {} with product {}", show(&dw), 2 * n, c.name(c.unit())),
                    format!(
                        "member: {member}, product: {}",
                        c.show(total.map(Element))
                    ),
                );
            }
        }

        // reversal is an involution
        if n >= 1 {
            let rho = SimplexMap::reversal(n);
            let once = pull_back(&edges, dim, rho.values());
            if let Ok(twice) = self.act_raw(rho.values(), &once) {
                if twice != w {
                    report.push("reversal-involution", vec![show(w)], show(w), show(&twice));
                }
            }
        }

        self.check_identities(w, &mut report);
        report
    }

    fn check_identities(&self, w: &[usize], report: &mut ValidationReport) {
        let n = w.len();
        let c = &self.carrier;
        let show = |w: &[usize]| {
            c.format_word(&w.iter().map(|&e| Element(e)).collect::<Vec<_>>())
        };
        // Applies maps in order; None when an intermediate leaves the
        // structure (already reported as a closure failure).
        let run = |maps: &[SimplexMap]| -> Option<Vec<usize>> {
            let mut cur = w.to_vec();
            for f in maps {
                cur = self.act_raw(f.values(), &cur).ok()?;
            }
            Some(cur)
        };
        let d = SimplexMap::coface;
        let s = SimplexMap::codegeneracy;
        let mut compare = |name: String, lhs: &[SimplexMap], rhs: &[SimplexMap]| {
            if let (Some(l), Some(r)) = (run(lhs), run(rhs)) {
                if l != r {
                    report.push("simplicial-identity", vec![show(w), name], show(&l), show(&r));
                }
            }
        };
        // d_i d_j = d_{j-1} d_i for i < j
        if n >= 2 {
            for j in 0..=n {
                for i in 0..j {
                    compare(
                        format!("d{i}d{j}=d{}d{i}", j - 1),
                        &[d(n, j), d(n - 1, i)],
                        &[d(n, i), d(n - 1, j - 1)],
                    );
                }
            }
        }
        if n < self.top {
            for j in 0..=n {
                // d_j s_j = d_{j+1} s_j = id
                compare(format!("d{j}s{j}=id"), &[s(n, j), d(n + 1, j)], &[]);
                compare(format!("d{}s{j}=id", j + 1), &[s(n, j), d(n + 1, j + 1)], &[]);
                if n >= 1 {
                    for i in 0..j {
                        compare(
                            format!("d{i}s{j}=s{}d{i}", j - 1),
                            &[s(n, j), d(n + 1, i)],
                            &[d(n, i), s(n - 1, j - 1)],
                        );
                    }
                    for i in j + 2..=n + 1 {
                        compare(
                            format!("d{i}s{j}=s{j}d{}", i - 1),
                            &[s(n, j), d(n + 1, i)],
                            &[d(n, i - 1), s(n - 1, j)],
                        );
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j
        if n + 2 <= self.top {
            for j in 0..=n {
                for i in 0..=j {
                    compare(
                        format!("s{i}s{j}=s{}s{i}", j + 1),
                        &[s(n, j), s(n + 1, i)],
                        &[s(n, i), s(n + 1, j + 1)],
                    );
                }
            }
        }
    }

    fn spot_check_functoriality(&self, opts: &ValidateOptions, report: &mut ValidationReport) {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let populated: Vec<usize> = (0..=self.top).filter(|&n| !self.levels[n].is_empty()).collect();
        let c = &self.carrier;
        let show = |w: &[usize]| {
            c.format_word(&w.iter().map(|&e| Element(e)).collect::<Vec<_>>())
        };
        for _ in 0..opts.functoriality_samples {
            let n = populated[rng.gen_range(0..populated.len())];
            let lvl = &self.levels[n];
            let idx = rng.gen_range(0..lvl.count());
            let w = lvl.decode(lvl.codes().nth(idx).expect("index below count"));
            let p = rng.gen_range(0..=self.top);
            let m = rng.gen_range(0..=self.top);
            let g = SimplexMap::random(&mut rng, p, n);
            let f = SimplexMap::random(&mut rng, m, p);
            let gf = f.then(&g).expect("composable by construction");
            let direct = self.act_raw(gf.values(), &w);
            let stepwise = self
                .act_raw(g.values(), &w)
                .and_then(|x| self.act_raw(f.values(), &x));
            if let (Ok(a), Ok(b)) = (&direct, &stepwise) {
                if a != b {
                    report.push(
                        "functoriality",
                        vec![show(&w), g.to_string(), f.to_string()],
                        show(a),
                        show(b),
                    );
                }
            }
        }
        report.note(format!(
            "functoriality spot-checked on {} random composable pairs (seed {})",
            opts.functoriality_samples, opts.seed
        ));
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub(crate) fn base_levels(k: usize, top: usize) -> Result<Vec<Level>> {
    let mut levels = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut lvl = Level::empty(n, k)?;
        if n <= 1 {
            for code in 0..lvl.space() {
                lvl.insert_code(code);
            }
        }
        levels.push(lvl);
    }
    Ok(levels)
}

/// Free function form of [`TruncatedPartialGroup::validate`].
pub fn validate_partial_group(x: &TruncatedPartialGroup) -> ValidationReport {
    x.validate()
}

/// A map of truncated symmetric sets, determined by its level-1 function.
#[derive(Clone, Debug)]
pub struct SymSetHom<'a> {
    pub source: &'a TruncatedPartialGroup,
    pub target: &'a TruncatedPartialGroup,
    pub map: Vec<Element>,
}

impl<'a> SymSetHom<'a> {
    pub fn new(
        source: &'a TruncatedPartialGroup,
        target: &'a TruncatedPartialGroup,
        map: Vec<Element>,
    ) -> Result<Self> {
        if map.len() != source.carrier.size() || map.iter().any(|e| e.0 >= target.carrier.size()) {
            return Err(Error::Structural("level-1 map does not fit source and target".into()));
        }
        Ok(SymSetHom { source, target, map })
    }

    pub fn identity(x: &'a TruncatedPartialGroup) -> Self {
        SymSetHom {
            source: x,
            target: x,
            map: x.carrier.elements().collect(),
        }
    }

    fn image(&self, w: &[usize]) -> Vec<usize> {
        w.iter().map(|&a| self.map[a].0).collect()
    }
}

/// Entrywise application must carry simplices to simplices and commute
/// with every pull-back. The latter is checked exhaustively through edge
/// matrices: `h(act(f, w)) = act(f, h(w))` for all `f` exactly when `h`
/// applied to the edge matrix of `w` gives the edge matrix of `h(w)`.
pub fn validate_symset_hom(h: &SymSetHom<'_>) -> Result<ValidationReport> {
    validate_symset_hom_with(h, &ValidateOptions::default())
}

pub fn validate_symset_hom_with(h: &SymSetHom<'_>, opts: &ValidateOptions) -> Result<ValidationReport> {
    let (s, t) = (h.source, h.target);
    if s.top != t.top {
        return Err(Error::Precondition(format!(
            "truncation levels differ ({} vs {})",
            s.top, t.top
        )));
    }
    let mut report = ValidationReport::new("symmetric set map");
    let show_s = |w: &[usize]| s.carrier.format_word(&w.iter().map(|&e| Element(e)).collect::<Vec<_>>());
    let show_t = |w: &[usize]| t.carrier.format_word(&w.iter().map(|&e| Element(e)).collect::<Vec<_>>());
    for n in 0..=s.top {
        for w in s.levels[n].raw_words() {
            let hw = h.image(&w);
            if !t.levels[n].contains_raw(&hw) {
                report.push(
                    "maps-simplices",
                    vec![show_s(&w)],
                    format!("({}) in target level {n}", show_t(&hw)),
                    "missing",
                );
                continue;
            }
            let (Ok(es), Ok(et)) = (s.edges_of(&w), t.edges_of(&hw)) else {
                report.push("edge-coherence", vec![show_s(&w)], "coherent simplices", "incoherent");
                continue;
            };
            let mapped = h.image(&es);
            if mapped != et {
                let dim = n + 1;
                let pos = (0..dim * dim).find(|&p| mapped[p] != et[p]).unwrap();
                report.push(
                    "commutes-with-act",
                    vec![show_s(&w), format!("edge {}→{}", pos / dim, pos % dim)],
                    format!("h(edge) = {}", t.carrier.name(Element(mapped[pos]))),
                    format!("edge of image = {}", t.carrier.name(Element(et[pos]))),
                );
            }
        }
    }
    // Independent spot-check through explicit pull-backs.
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let populated: Vec<usize> = (0..=s.top).filter(|&n| !s.levels[n].is_empty()).collect();
    for _ in 0..opts.functoriality_samples.min(64) {
        let n = populated[rng.gen_range(0..populated.len())];
        let lvl = &s.levels[n];
        let w = lvl.decode(lvl.codes().nth(rng.gen_range(0..lvl.count())).unwrap());
        let m = rng.gen_range(0..=s.top);
        let f = SimplexMap::random(&mut rng, m, n);
        if let (Ok(a), Ok(b)) = (s.act_raw(f.values(), &w), t.act_raw(f.values(), &h.image(&w))) {
            if h.image(&a) != b {
                report.push("commutes-with-act", vec![show_s(&w), f.to_string()], show_t(&h.image(&a)), show_t(&b));
            }
        }
    }
    Ok(report)
}
