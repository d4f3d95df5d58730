//! Words over a partial magma, full parenthesizations and their
//! evaluation, and membership in the levels of the big embedding.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::magma::{BinaryPartialGroup, Element, PartialMagma};
use crate::report::ValidationReport;
use crate::Limits;

/// A finite sequence of elements of a fixed parent structure.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Element>);

impl Word {
    pub fn new(entries: Vec<Element>) -> Self {
        Word(entries)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Element] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Parses the comma-separated text form, e.g. `a,b,a`. The empty
    /// string is the empty word.
    pub fn parse(p: &PartialMagma, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        text.split(',')
            .map(|name| {
                let name = name.trim();
                p.element(name)
                    .ok_or_else(|| Error::Structural(format!("unknown element `{name}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn display(&self, p: &PartialMagma) -> String {
        p.format_word(&self.0)
    }
}

impl From<Vec<Element>> for Word {
    fn from(v: Vec<Element>) -> Self {
        Word(v)
    }
}

/// A full binary tree: one way of fully parenthesizing a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ParenTree {
    Leaf,
    Node(Box<ParenTree>, Box<ParenTree>),
}

impl ParenTree {
    pub fn node(left: ParenTree, right: ParenTree) -> Self {
        ParenTree::Node(Box::new(left), Box::new(right))
    }

    pub fn leaves(&self) -> usize {
        match self {
            ParenTree::Leaf => 1,
            ParenTree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Left-right reflection.
    pub fn mirror(&self) -> ParenTree {
        match self {
            ParenTree::Leaf => ParenTree::Leaf,
            ParenTree::Node(l, r) => ParenTree::node(r.mirror(), l.mirror()),
        }
    }

    /// Right-nested tree `a(b(c(...)))`.
    pub fn right_comb(n: usize) -> ParenTree {
        assert!(n >= 1);
        if n == 1 {
            ParenTree::Leaf
        } else {
            ParenTree::node(ParenTree::Leaf, ParenTree::right_comb(n - 1))
        }
    }

    /// Left-nested tree `((ab)c)...`.
    pub fn left_comb(n: usize) -> ParenTree {
        ParenTree::right_comb(n).mirror()
    }

    /// Renders with explicit letters in place of `•`, e.g. `(a(bc))`.
    pub fn with_letters(&self, letters: &[&str]) -> String {
        fn go(t: &ParenTree, letters: &[&str], pos: &mut usize, out: &mut String) {
            match t {
                ParenTree::Leaf => {
                    out.push_str(letters[*pos]);
                    *pos += 1;
                }
                ParenTree::Node(l, r) => {
                    out.push('(');
                    go(l, letters, pos, out);
                    go(r, letters, pos, out);
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        go(self, letters, &mut 0, &mut out);
        out
    }
}

impl fmt::Display for ParenTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParenTree::Leaf => write!(f, "•"),
            ParenTree::Node(l, r) => write!(f, "({l}{r})"),
        }
    }
}

impl FromStr for ParenTree {
    type Err = Error;

    /// Accepts the bracket form over `•` (or `*` / `.` as ASCII stand-ins).
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        fn parse(chars: &[char], pos: &mut usize) -> Result<ParenTree> {
            match chars.get(*pos) {
                Some('•' | '*' | '.') => {
                    *pos += 1;
                    Ok(ParenTree::Leaf)
                }
                Some('(') => {
                    *pos += 1;
                    let l = parse(chars, pos)?;
                    let r = parse(chars, pos)?;
                    if chars.get(*pos) != Some(&')') {
                        return Err(Error::Structural(format!("expected `)` at position {pos}")));
                    }
                    *pos += 1;
                    Ok(ParenTree::node(l, r))
                }
                other => Err(Error::Structural(format!(
                    "unexpected {:?} at position {pos} in tree",
                    other
                ))),
            }
        }
        let mut pos = 0;
        let t = parse(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::Structural("trailing characters after tree".into()));
        }
        Ok(t)
    }
}

pub fn catalan(n: usize) -> u64 {
    // C(n) = binom(2n, n) / (n + 1), built incrementally to stay exact.
    let mut c: u64 = 1;
    for i in 0..n as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// All full binary trees with `n` leaves, ordered by the position of the
/// root split (leftmost first), recursively.
pub fn all_parenthesizations(n: usize) -> Result<Vec<ParenTree>> {
    all_parenthesizations_with(n, &Limits::default())
}

pub fn all_parenthesizations_with(n: usize, limits: &Limits) -> Result<Vec<ParenTree>> {
    if n == 0 {
        return Err(Error::Precondition("a parenthesization needs at least one leaf".into()));
    }
    if n > limits.max_tree_leaves {
        return Err(Error::ResourceGuard(format!(
            "{n} leaves exceeds the bound of {} ({} trees)",
            limits.max_tree_leaves,
            catalan(n - 1)
        )));
    }
    let mut memo: Vec<Vec<ParenTree>> = vec![Vec::new(), vec![ParenTree::Leaf]];
    for size in 2..=n {
        let mut trees = Vec::with_capacity(catalan(size - 1) as usize);
        for split in 1..size {
            for l in &memo[split] {
                for r in &memo[size - split] {
                    trees.push(ParenTree::node(l.clone(), r.clone()));
                }
            }
        }
        memo.push(trees);
    }
    Ok(memo.swap_remove(n))
}

/// Multiplies `w` according to `t`; `None` if some intermediate product is
/// undefined.
pub fn evaluate(p: &PartialMagma, w: &Word, t: &ParenTree) -> Result<Option<Element>> {
    if t.leaves() != w.len() {
        return Err(Error::Structural(format!(
            "tree with {} leaves applied to a word of length {}",
            t.leaves(),
            w.len()
        )));
    }
    fn go(p: &PartialMagma, w: &[Element], t: &ParenTree, pos: &mut usize) -> Option<Element> {
        match t {
            ParenTree::Leaf => {
                let e = w[*pos];
                *pos += 1;
                Some(e)
            }
            ParenTree::Node(l, r) => {
                let x = go(p, w, l, pos);
                let y = go(p, w, r, pos);
                p.product(x?, y?)
            }
        }
    }
    Ok(go(p, &w.0, t, &mut 0))
}

/// `(a₁, …, aₙ)† = (aₙ†, …, a₁†)`.
pub fn word_dagger(p: &BinaryPartialGroup, w: &Word) -> Word {
    Word(w.0.iter().rev().map(|&a| p.dagger(a)).collect())
}

/// For every subinterval `[i, j)` of a word, the set of values taken by all
/// of its full parenthesizations, or `None` if one of them is undefined.
///
/// The values of a product split at `s` are exactly the pairwise products
/// of the values on `[i, s)` and `[s, j)`, so this is exact for any partial
/// magma, cancellative or not.
pub(crate) struct Intervals {
    n: usize,
    unit: usize,
    cells: Vec<Option<u64>>,
}

impl Intervals {
    pub(crate) fn compute(p: &PartialMagma, w: &[usize]) -> Intervals {
        let k = p.size();
        debug_assert!(k <= 64);
        let table = p.table();
        let n = w.len();
        let dim = n + 1;
        let mut cells = vec![Some(0u64); dim * dim];
        for (i, &e) in w.iter().enumerate() {
            cells[i * dim + i + 1] = Some(1u64 << e);
        }
        for len in 2..=n {
            for i in 0..=n - len {
                let j = i + len;
                let mut acc = Some(0u64);
                for s in i + 1..j {
                    let (Some(lv), Some(rv), Some(so_far)) =
                        (cells[i * dim + s], cells[s * dim + j], acc)
                    else {
                        acc = None;
                        break;
                    };
                    let mut out = so_far;
                    let mut undefined = false;
                    'outer: for x in bits(lv) {
                        for y in bits(rv) {
                            match table[x * k + y] {
                                Some(z) => out |= 1u64 << z.0,
                                None => {
                                    undefined = true;
                                    break 'outer;
                                }
                            }
                        }
                    }
                    acc = if undefined { None } else { Some(out) };
                }
                cells[i * dim + j] = acc;
            }
        }
        Intervals {
            n,
            unit: p.unit().0,
            cells,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.n
    }

    /// The common value of every parenthesization of `[i, j)`, if there is
    /// one. The empty interval evaluates to the unit.
    pub(crate) fn unique(&self, i: usize, j: usize) -> Option<usize> {
        if i == j {
            return Some(self.unit);
        }
        match self.cells[i * (self.n + 1) + j] {
            Some(set) if set.count_ones() == 1 => Some(set.trailing_zeros() as usize),
            _ => None,
        }
    }

    pub(crate) fn total(&self) -> Option<usize> {
        self.unique(0, self.n)
    }
}

pub(crate) fn bits(mut set: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let b = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(b)
        }
    })
}

pub(crate) fn raw(w: &[Element]) -> Vec<usize> {
    w.iter().map(|e| e.0).collect()
}

/// Total product of `w` when every full parenthesization is defined and
/// all of them agree; `None` otherwise. Length 0 gives the unit.
pub fn bp_membership(p: &BinaryPartialGroup, w: &Word) -> Result<Option<Element>> {
    bp_membership_with(p, w, &Limits::default())
}

pub fn bp_membership_with(
    p: &BinaryPartialGroup,
    w: &Word,
    limits: &Limits,
) -> Result<Option<Element>> {
    if w.len() > limits.max_word_len {
        return Err(Error::ResourceGuard(format!(
            "word length {} exceeds the bound of {}",
            w.len(),
            limits.max_word_len
        )));
    }
    Ok(coherent_product(p.magma(), &w.0))
}

/// Common value of all parenthesizations of `w` in any partial magma.
pub fn coherent_product(p: &PartialMagma, w: &[Element]) -> Option<Element> {
    Intervals::compute(p, &raw(w)).total().map(Element)
}

/// Tree-by-tree membership: the outcome plus, on failure, the first tree
/// (in canonical order) that was undefined or disagreed with the first
/// tree's value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipTrace {
    pub value: Option<Element>,
    pub witness: Option<(ParenTree, Option<Element>)>,
}

/// Literal evaluation under every parenthesization, short-circuiting on the
/// first undefined or disagreeing tree.
pub fn bp_membership_diagnostic(p: &PartialMagma, w: &Word) -> Result<MembershipTrace> {
    match w.len() {
        0 => {
            return Ok(MembershipTrace {
                value: Some(p.unit()),
                witness: None,
            })
        }
        1 => {
            return Ok(MembershipTrace {
                value: Some(w.0[0]),
                witness: None,
            })
        }
        _ => {}
    }
    let mut common = None;
    for t in all_parenthesizations(w.len())? {
        let v = evaluate(p, w, &t)?;
        match (v, common) {
            (None, _) => {
                return Ok(MembershipTrace {
                    value: None,
                    witness: Some((t, None)),
                })
            }
            (Some(x), None) => common = Some(x),
            (Some(x), Some(c)) if x != c => {
                return Ok(MembershipTrace {
                    value: None,
                    witness: Some((t, Some(x))),
                })
            }
            _ => {}
        }
    }
    Ok(MembershipTrace {
        value: common,
        witness: None,
    })
}

/// `μ(w) ≍ μ̄(w†)†` for one word and one tree.
pub fn check_mirror_identity(
    p: &BinaryPartialGroup,
    w: &Word,
    t: &ParenTree,
) -> Result<ValidationReport> {
    let mut report = ValidationReport::new("mirror identity");
    let lhs = evaluate(p.magma(), w, t)?;
    let rhs = evaluate(p.magma(), &word_dagger(p, w), &t.mirror())?.map(|v| p.dagger(v));
    if lhs != rhs {
        report.push(
            "mirror",
            vec![w.display(p.magma()), t.to_string()],
            format!("μ(w) = {}", p.magma().show(lhs)),
            format!("μ̄(w†)† = {}", p.magma().show(rhs)),
        );
    }
    Ok(report)
}

/// Every word of length `n` over `k` letters, in lexicographic order.
pub fn all_words(k: usize, n: usize) -> impl Iterator<Item = Word> {
    let total = k.checked_pow(n as u32).expect("word space fits in usize");
    (0..total).map(move |mut code| {
        let mut v = vec![Element(0); n];
        for slot in v.iter_mut().rev() {
            *slot = Element(code % k);
            code /= k;
        }
        Word(v)
    })
}

/// Mirror identity for every word of length `1..=max_len` and every tree.
pub fn check_mirror_sweep(p: &BinaryPartialGroup, max_len: usize) -> Result<ValidationReport> {
    let mut report = ValidationReport::new("mirror identity sweep");
    let mut checks = 0usize;
    for n in 1..=max_len {
        let trees = all_parenthesizations(n)?;
        for w in all_words(p.size(), n) {
            for t in &trees {
                report.absorb(check_mirror_identity(p, &w, t)?);
                checks += 1;
            }
        }
    }
    report.note(format!("{checks} word/tree pairs through length {max_len}"));
    Ok(report)
}

/// `w` has a total product iff `w†` does, and the products are exchanged
/// by the inverse. Swept over every word of length `0..=max_len`.
pub fn check_inversion_closure(p: &BinaryPartialGroup, max_len: usize) -> ValidationReport {
    let mut report = ValidationReport::new("inversion closure");
    let m = p.magma();
    for n in 0..=max_len {
        for w in all_words(p.size(), n) {
            let v = coherent_product(m, &w.0);
            let wd = word_dagger(p, &w);
            let vd = coherent_product(m, &wd.0);
            if v.map(|x| p.dagger(x)) != vd {
                report.push(
                    "inversion-closure",
                    vec![w.display(m)],
                    format!("product of w† = {}", m.show(v.map(|x| p.dagger(x)))),
                    m.show(vd),
                );
            }
        }
    }
    report.note(format!("all words through length {max_len}"));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::catalog::*;

    fn w(p: &PartialMagma, s: &str) -> Word {
        Word::parse(p, s).unwrap()
    }

    #[test]
    fn catalan_values() {
        let expected = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(catalan(n), c);
        }
    }

    #[test]
    fn parenthesization_counts() {
        assert_eq!(all_parenthesizations(1).unwrap(), vec![ParenTree::Leaf]);
        assert_eq!(all_parenthesizations(4).unwrap().len(), 5);
        assert_eq!(all_parenthesizations(8).unwrap().len(), 429);
        assert!(matches!(all_parenthesizations(11), Err(Error::ResourceGuard(_))));
        assert!(all_parenthesizations(0).is_err());
    }

    #[test]
    fn canonical_order_leftmost_split_first() {
        let t: Vec<String> = all_parenthesizations(3)
            .unwrap()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(t, vec!["(•(••))", "((••)•)"]);
    }

    #[test]
    fn evaluate_p3() {
        let p = p3();
        let aba = w(&p, "a,b,a");
        let left: ParenTree = "((••)•)".parse().unwrap();
        let right: ParenTree = "(•(••))".parse().unwrap();
        assert_eq!(evaluate(&p, &aba, &left).unwrap(), p.element("a"));
        assert_eq!(evaluate(&p, &aba, &right).unwrap(), p.element("a"));
        let aa = w(&p, "a,a");
        assert_eq!(evaluate(&p, &aa, &"(••)".parse().unwrap()).unwrap(), None);
        assert!(evaluate(&p, &aa, &left).is_err());
    }

    #[test]
    fn mirror_pairs() {
        let t: ParenTree = "(•(•(••)))".parse().unwrap();
        assert_eq!(t.mirror().with_letters(&["a", "b", "c", "d"]), "(((ab)c)d)");
        let t: ParenTree = "((•((••)•))(••))".parse().unwrap();
        assert_eq!(
            t.with_letters(&["a", "b", "c", "d", "e", "f"]),
            "((a((bc)d))(ef))"
        );
        assert_eq!(
            t.mirror().with_letters(&["a", "b", "c", "d", "e", "f"]),
            "((ab)((c(de))f))"
        );
        assert_eq!(ParenTree::Leaf.mirror(), ParenTree::Leaf);
    }

    #[test]
    fn tree_text_round_trip() {
        for n in 1..=6 {
            for t in all_parenthesizations(n).unwrap() {
                assert_eq!(t.to_string().parse::<ParenTree>().unwrap(), t);
            }
        }
        assert!("(••".parse::<ParenTree>().is_err());
        assert!("(••)•".parse::<ParenTree>().is_err());
    }

    #[test]
    fn word_dagger_examples() {
        let p = group(p3());
        let ab = w(p.magma(), "a,b");
        assert_eq!(word_dagger(&p, &ab), ab);
        assert_eq!(word_dagger(&p, &Word::empty()), Word::empty());
        let z2 = group(cyclic(2));
        let a = w(z2.magma(), "a");
        assert_eq!(word_dagger(&z2, &a), a);
    }

    #[test]
    fn membership_examples() {
        let p = group(p3());
        let m = p.magma();
        assert_eq!(bp_membership(&p, &w(m, "a,b,a")).unwrap(), m.element("a"));
        assert_eq!(bp_membership(&p, &w(m, "a,b,b")).unwrap(), None);
        assert_eq!(bp_membership(&p, &Word::empty()).unwrap(), Some(m.unit()));
        assert_eq!(bp_membership(&p, &w(m, "b")).unwrap(), m.element("b"));
        let long = Word(vec![Element(0); 9]);
        assert!(matches!(bp_membership(&p, &long), Err(Error::ResourceGuard(_))));

        let trace = bp_membership_diagnostic(m, &w(m, "a,b,b")).unwrap();
        assert_eq!(trace.value, None);
        let (tree, value) = trace.witness.unwrap();
        assert_eq!(tree.to_string(), "(•(••))");
        assert_eq!(value, None);
    }

    #[test]
    fn membership_in_groups_is_the_product() {
        let z4 = group(cyclic(4));
        for n in 0..=5 {
            for word in all_words(4, n) {
                let expected = word.0.iter().map(|e| e.0).sum::<usize>() % 4;
                assert_eq!(bp_membership(&z4, &word).unwrap(), Some(Element(expected)));
            }
        }
    }

    #[test]
    fn length_two_membership_matches_table() {
        let p = group(p3());
        for word in all_words(3, 2) {
            assert_eq!(
                bp_membership(&p, &word).unwrap(),
                p.product(word.0[0], word.0[1])
            );
        }
    }

    #[test]
    fn mirror_identity_examples() {
        let p = group(p3());
        let aba = w(p.magma(), "a,b,a");
        for t in all_parenthesizations(3).unwrap() {
            assert!(check_mirror_identity(&p, &aba, &t).unwrap().passed());
        }
        let z2 = group(cyclic(2));
        assert!(check_mirror_sweep(&z2, 4).unwrap().passed());
        // both sides undefined
        let aa = w(p.magma(), "a,a");
        assert!(check_mirror_identity(&p, &aa, &"(••)".parse().unwrap())
            .unwrap()
            .passed());
    }

    #[test]
    fn inversion_closure_on_small_structures() {
        assert!(check_inversion_closure(&group(p3()), 6).passed());
        assert!(check_inversion_closure(&group(klein()), 5).passed());
    }
}
