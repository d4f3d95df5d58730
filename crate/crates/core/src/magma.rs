//! Finite unital partial magmas stored as partial Cayley tables, the
//! inverse (dagger) search that singles out binary partial groups, and the
//! axiom validators around them.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// An element of a finite structure, identified by its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub usize);

impl Element {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for Element {
    fn from(i: usize) -> Self {
        Element(i)
    }
}

/// A square table of optional products, indexed by element position.
pub type RawTable = Vec<Vec<Option<usize>>>;

/// `1, a, b, c, ...` with the unit first.
pub fn default_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| match i {
            0 => "1".to_string(),
            i if i <= 26 => ((b'a' + (i - 1) as u8) as char).to_string(),
            i => format!("x{i}"),
        })
        .collect()
}

/// A finite set with a unit and a partially defined binary product.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialMagma {
    names: Arc<[String]>,
    unit: Element,
    table: Vec<Option<Element>>,
}

impl fmt::Debug for PartialMagma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialMagma{{")?;
        let mut first = true;
        for a in self.elements() {
            for b in self.elements() {
                if let Some(c) = self.product(a, b) {
                    if a == self.unit || b == self.unit {
                        continue;
                    }
                    if !first {
                        write!(f, ", ")?;
                    }
                    first = false;
                    write!(f, "{}{}={}", self.name(a), self.name(b), self.name(c))?;
                }
            }
        }
        write!(f, "}}")
    }
}

impl PartialMagma {
    /// Builds a magma from a raw table, rejecting malformed tables with
    /// [`Error::Structural`] and unit-law failures with [`Error::Axiom`].
    pub fn new(names: Vec<String>, table: &RawTable, unit: usize) -> Result<Self> {
        if names.len() != table.len() {
            return Err(Error::Structural(format!(
                "{} names for a table with {} rows",
                names.len(),
                table.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if n.is_empty() {
                return Err(Error::Structural("empty element name".into()));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::Structural(format!("duplicate element name `{n}`")));
            }
        }
        let report = unital_report(&names, table, unit)?;
        if !report.passed() {
            return Err(Error::Axiom(Box::new(report)));
        }
        let flat = table
            .iter()
            .flat_map(|row| row.iter().map(|c| c.map(Element)))
            .collect();
        Ok(PartialMagma {
            names: names.into(),
            unit: Element(unit),
            table: flat,
        })
    }

    /// Table given as a flat row-major vector. Unit laws are not re-checked.
    pub(crate) fn from_flat_unchecked(
        names: Arc<[String]>,
        unit: Element,
        table: Vec<Option<Element>>,
    ) -> Self {
        debug_assert_eq!(table.len(), names.len() * names.len());
        PartialMagma { names, unit, table }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn unit(&self) -> Element {
        self.unit
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + Clone {
        (0..self.size()).map(Element)
    }

    pub fn name(&self, e: Element) -> &str {
        &self.names[e.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Option<Element> {
        self.names.iter().position(|n| n == name).map(Element)
    }

    #[inline]
    pub fn product(&self, a: Element, b: Element) -> Option<Element> {
        self.table[a.0 * self.size() + b.0]
    }

    /// Row-major table of products.
    pub fn table(&self) -> &[Option<Element>] {
        &self.table
    }

    pub fn raw_table(&self) -> RawTable {
        let k = self.size();
        (0..k)
            .map(|i| (0..k).map(|j| self.table[i * k + j].map(|e| e.0)).collect())
            .collect()
    }

    pub fn defined_count(&self) -> usize {
        self.table.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(|c| c.is_some())
    }

    /// Same table with elements renamed; `perm[i]` is the new index of `i`.
    pub fn relabel(&self, perm: &[usize]) -> PartialMagma {
        let k = self.size();
        let mut table = vec![None; k * k];
        let mut names = vec![String::new(); k];
        for i in 0..k {
            names[perm[i]] = self.names[i].clone();
            for j in 0..k {
                table[perm[i] * k + perm[j]] = self.table[i * k + j].map(|e| Element(perm[e.0]));
            }
        }
        PartialMagma {
            names: names.into(),
            unit: Element(perm[self.unit.0]),
            table,
        }
    }

    /// Same table under different element names.
    pub fn with_names(&self, names: Vec<String>) -> Result<PartialMagma> {
        PartialMagma::new(names, &self.raw_table(), self.unit.0)
    }

    /// Equal products on equal indices, ignoring names.
    pub fn same_table(&self, other: &PartialMagma) -> bool {
        self.unit == other.unit && self.table == other.table
    }

    pub fn format_word(&self, w: &[Element]) -> String {
        w.iter().map(|&e| self.name(e)).collect::<Vec<_>>().join(",")
    }

    pub(crate) fn show(&self, e: Option<Element>) -> String {
        match e {
            Some(e) => self.name(e).to_string(),
            None => "undefined".to_string(),
        }
    }
}

/// Checks the unit laws of a raw table against `unit`.
///
/// Structural problems (non-square table, out-of-range entries or unit)
/// are errors; unit-law failures are collected in the report.
pub fn validate_unital(table: &RawTable, unit: usize) -> Result<ValidationReport> {
    let names: Vec<String> = (0..table.len()).map(|i| format!("#{i}")).collect();
    unital_report(&names, table, unit)
}

fn unital_report(names: &[String], table: &RawTable, unit: usize) -> Result<ValidationReport> {
    let k = table.len();
    if k == 0 {
        return Err(Error::Structural("empty element set".into()));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != k {
            return Err(Error::Structural(format!(
                "row {i} has {} entries, expected {k}",
                row.len()
            )));
        }
        if let Some(bad) = row.iter().flatten().find(|&&e| e >= k) {
            return Err(Error::Structural(format!("row {i} has out-of-range entry {bad}")));
        }
    }
    if unit >= k {
        return Err(Error::Structural(format!("unit index {unit} out of range")));
    }
    let show = |e: Option<usize>| e.map_or("undefined".to_string(), |e| names[e].clone());
    let mut report = ValidationReport::new("unit laws");
    for a in 0..k {
        if table[unit][a] != Some(a) {
            report.push(
                "unit-left",
                vec![names[unit].clone(), names[a].clone()],
                names[a].clone(),
                show(table[unit][a]),
            );
        }
        if table[a][unit] != Some(a) {
            report.push(
                "unit-right",
                vec![names[a].clone(), names[unit].clone()],
                names[a].clone(),
                show(table[a][unit]),
            );
        }
    }
    Ok(report)
}

/// Does `c` behave as a left inverse of `a` in the cancellation sense:
/// whenever `ab` is defined, `c(ab)` is defined and equals `b`.
/// Returns the first `b` that refutes it.
pub fn left_cancel_failure(p: &PartialMagma, a: Element, c: Element) -> Option<Element> {
    p.elements().find(|&b| match p.product(a, b) {
        Some(ab) => p.product(c, ab) != Some(b),
        None => false,
    })
}

/// Mirror of [`left_cancel_failure`]: whenever `ba` is defined, `(ba)c`
/// is defined and equals `b`.
pub fn right_cancel_failure(p: &PartialMagma, a: Element, c: Element) -> Option<Element> {
    p.elements().find(|&b| match p.product(b, a) {
        Some(ba) => p.product(ba, c) != Some(b),
        None => false,
    })
}

/// Result of the exhaustive per-element inverse search.
#[derive(Clone, Debug)]
pub struct DaggerSearch {
    /// For each element, every candidate satisfying both cancellation laws.
    pub candidates: Vec<Vec<Element>>,
    pub report: ValidationReport,
}

impl DaggerSearch {
    /// Every element has at least one valid inverse.
    pub fn exists(&self) -> bool {
        self.candidates.iter().all(|c| !c.is_empty())
    }

    pub fn is_unique(&self) -> bool {
        self.candidates.iter().all(|c| c.len() <= 1)
    }

    /// Number of distinct total functions satisfying both laws.
    pub fn solution_count(&self) -> usize {
        self.candidates.iter().map(Vec::len).product()
    }

    /// The dagger, when it exists and is unique.
    pub fn dagger(&self) -> Option<Vec<Element>> {
        if self.exists() && self.is_unique() {
            Some(self.candidates.iter().map(|c| c[0]).collect())
        } else {
            None
        }
    }
}

/// Searches, element by element, for the inverse function of a binary
/// partial group. The conditions on `a†` only involve `a`, so the search is
/// independent per element and exhaustive over the `k` candidate images.
pub fn find_dagger(p: &PartialMagma) -> DaggerSearch {
    let mut report = ValidationReport::new("inverse search");
    let mut candidates = Vec::with_capacity(p.size());
    for a in p.elements() {
        let mut found = Vec::new();
        let mut reasons = Vec::new();
        for c in p.elements() {
            let left = left_cancel_failure(p, a, c);
            let right = right_cancel_failure(p, a, c);
            match (left, right) {
                (None, None) => found.push(c),
                (Some(b), _) => reasons.push(format!("{}: left law fails at b={}", p.name(c), p.name(b))),
                (None, Some(b)) => {
                    reasons.push(format!("{}: right law fails at b={}", p.name(c), p.name(b)))
                }
            }
        }
        if found.is_empty() {
            report.push(
                "inverse-exists",
                vec![p.name(a).to_string()],
                "some a† with a†(ab) = b and (ba)a† = b whenever defined",
                reasons.join("; "),
            );
        } else if found.len() > 1 {
            report.push(
                "inverse-unique",
                std::iter::once(p.name(a).to_string())
                    .chain(found.iter().map(|&c| p.name(c).to_string()))
                    .collect(),
                "exactly one inverse",
                format!("{} candidates", found.len()),
            );
        }
        candidates.push(found);
    }
    DaggerSearch { candidates, report }
}

/// Candidates satisfying only the left cancellation law, per element.
pub fn left_inverse_candidates(p: &PartialMagma) -> Vec<Vec<Element>> {
    p.elements()
        .map(|a| p.elements().filter(|&c| left_cancel_failure(p, a, c).is_none()).collect())
        .collect()
}

/// Candidates satisfying only the right cancellation law, per element.
pub fn right_inverse_candidates(p: &PartialMagma) -> Vec<Vec<Element>> {
    p.elements()
        .map(|a| p.elements().filter(|&c| right_cancel_failure(p, a, c).is_none()).collect())
        .collect()
}

/// A partial magma together with its (unique) inverse function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryPartialGroup {
    magma: PartialMagma,
    dagger: Vec<Element>,
}

impl BinaryPartialGroup {
    /// Succeeds exactly when [`find_dagger`] finds a unique inverse function.
    pub fn new(magma: PartialMagma) -> Result<Self> {
        let search = find_dagger(&magma);
        match search.dagger() {
            Some(dagger) => Ok(BinaryPartialGroup { magma, dagger }),
            None => Err(Error::Axiom(Box::new(search.report))),
        }
    }

    pub fn magma(&self) -> &PartialMagma {
        &self.magma
    }

    pub fn into_magma(self) -> PartialMagma {
        self.magma
    }

    #[inline]
    pub fn dagger(&self, a: Element) -> Element {
        self.dagger[a.0]
    }

    pub fn dagger_map(&self) -> &[Element] {
        &self.dagger
    }

    pub fn size(&self) -> usize {
        self.magma.size()
    }

    pub fn unit(&self) -> Element {
        self.magma.unit()
    }

    #[inline]
    pub fn product(&self, a: Element, b: Element) -> Option<Element> {
        self.magma.product(a, b)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + Clone {
        self.magma.elements()
    }

    pub fn name(&self, e: Element) -> &str {
        self.magma.name(e)
    }

    /// `a↔b` pairs for swapped elements and `x` for fixed points.
    pub fn describe_dagger(&self) -> String {
        let mut parts = Vec::new();
        for a in self.elements() {
            let d = self.dagger(a);
            if d == a {
                if a != self.unit() {
                    parts.push(format!("{}↔{}", self.name(a), self.name(a)));
                }
            } else if a < d {
                parts.push(format!("{}↔{}", self.name(a), self.name(d)));
            }
        }
        if parts.is_empty() {
            "identity".to_string()
        } else {
            parts.join(", ")
        }
    }
}

/// Associativity for composable pairs: if `ab` and `bc` are defined then
/// `(ab)c ≍ a(bc)`.
pub fn check_a3(p: &PartialMagma) -> ValidationReport {
    let mut report = ValidationReport::new("A3");
    for a in p.elements() {
        for b in p.elements() {
            let Some(ab) = p.product(a, b) else { continue };
            for c in p.elements() {
                let Some(bc) = p.product(b, c) else { continue };
                let left = p.product(ab, c);
                let right = p.product(a, bc);
                if left != right {
                    report.push(
                        "A3",
                        vec![p.name(a).into(), p.name(b).into(), p.name(c).into()],
                        format!("(ab)c = {}", p.show(left)),
                        format!("a(bc) = {}", p.show(right)),
                    );
                }
            }
        }
    }
    report
}

/// Two-sided inverses: `aa† = 1 = a†a` for every `a`.
pub fn check_i2(p: &PartialMagma, dagger: &[Element]) -> ValidationReport {
    let mut report = ValidationReport::new("I2");
    if dagger.len() != p.size() {
        report.push(
            "I2",
            vec![],
            format!("dagger on {} elements", p.size()),
            format!("{} entries", dagger.len()),
        );
        return report;
    }
    let one = p.unit();
    for a in p.elements() {
        let d = dagger[a.0];
        let right = p.product(a, d);
        let left = p.product(d, a);
        if right != Some(one) || left != Some(one) {
            report.push(
                "I2",
                vec![p.name(a).into()],
                format!("aa† = a†a = {}", p.name(one)),
                format!("aa† = {}, a†a = {}", p.show(right), p.show(left)),
            );
        }
    }
    report
}

/// The inverse is an involution and reverses products in both directions.
pub fn check_anti_automorphism(p: &BinaryPartialGroup) -> ValidationReport {
    let mut report = ValidationReport::new("anti-automorphism");
    let m = p.magma();
    for a in p.elements() {
        if p.dagger(p.dagger(a)) != a {
            report.push(
                "involution",
                vec![m.name(a).into()],
                m.name(a).to_string(),
                m.name(p.dagger(p.dagger(a))).to_string(),
            );
        }
    }
    for a in p.elements() {
        for b in p.elements() {
            let lhs = m.product(a, b).map(|ab| p.dagger(ab));
            let rhs = m.product(p.dagger(b), p.dagger(a));
            if lhs != rhs {
                report.push(
                    "anti-multiplicative",
                    vec![m.name(a).into(), m.name(b).into()],
                    format!("(ab)† = {}", m.show(lhs)),
                    format!("b†a† = {}", m.show(rhs)),
                );
            }
        }
    }
    report
}

/// Baer: a unital partial magma satisfying A3 in which every element has a
/// right inverse admits an inverse function. Magmas outside the hypothesis
/// get a vacuous pass.
pub fn check_baer_criterion(p: &PartialMagma) -> ValidationReport {
    if !check_a3(p).passed() {
        return ValidationReport::vacuous("Baer criterion", "A3 fails; hypothesis not met");
    }
    let one = p.unit();
    if let Some(a) = p
        .elements()
        .find(|&a| p.elements().all(|r| p.product(a, r) != Some(one)))
    {
        return ValidationReport::vacuous(
            "Baer criterion",
            format!("{} has no right inverse; hypothesis not met", p.name(a)),
        );
    }
    let mut report = ValidationReport::new("Baer criterion");
    let search = find_dagger(p);
    if search.dagger().is_none() {
        report.push(
            "baer",
            vec![format!("{p:?}")],
            "an inverse function",
            search.report.summary(),
        );
    }
    report
}

/// A total function between the element sets of two partial magmas.
#[derive(Clone, Debug)]
pub struct MagmaHom<'a> {
    pub source: &'a PartialMagma,
    pub target: &'a PartialMagma,
    pub map: Vec<Element>,
}

impl<'a> MagmaHom<'a> {
    pub fn new(source: &'a PartialMagma, target: &'a PartialMagma, map: Vec<Element>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::Structural(format!(
                "map has {} entries for a source of size {}",
                map.len(),
                source.size()
            )));
        }
        if let Some(e) = map.iter().find(|e| e.0 >= target.size()) {
            return Err(Error::Structural(format!("map value {} out of range", e.0)));
        }
        Ok(MagmaHom { source, target, map })
    }

    pub fn identity(p: &'a PartialMagma) -> Self {
        MagmaHom {
            source: p,
            target: p,
            map: p.elements().collect(),
        }
    }

    #[inline]
    pub fn apply(&self, a: Element) -> Element {
        self.map[a.0]
    }

    /// `then ∘ self`.
    pub fn compose<'b>(&self, then: &MagmaHom<'b>) -> Result<MagmaHom<'b>>
    where
        'a: 'b,
    {
        if self.target != then.source {
            return Err(Error::Precondition("homs are not composable".into()));
        }
        Ok(MagmaHom {
            source: self.source,
            target: then.target,
            map: self.map.iter().map(|&a| then.apply(a)).collect(),
        })
    }
}

/// Checks that products are preserved, then separately reports whether
/// the unit and inverses are preserved when both sides are binary partial
/// groups.
pub fn validate_hom(f: &MagmaHom<'_>) -> ValidationReport {
    let (s, t) = (f.source, f.target);
    let mut report = ValidationReport::new("hom");
    for a in s.elements() {
        for b in s.elements() {
            let Some(ab) = s.product(a, b) else { continue };
            let want = f.apply(ab);
            let got = t.product(f.apply(a), f.apply(b));
            if got != Some(want) {
                report.push(
                    "preserves-product",
                    vec![s.name(a).into(), s.name(b).into()],
                    format!("f(a)f(b) = f(ab) = {}", t.name(want)),
                    t.show(got),
                );
            }
        }
    }
    let (ds, dt) = (find_dagger(s).dagger(), find_dagger(t).dagger());
    match (ds, dt) {
        (Some(ds), Some(dt)) => {
            if f.apply(s.unit()) != t.unit() {
                report.push(
                    "preserves-unit",
                    vec![s.name(s.unit()).into()],
                    t.name(t.unit()).to_string(),
                    t.name(f.apply(s.unit())).to_string(),
                );
            }
            for a in s.elements() {
                let lhs = f.apply(ds[a.0]);
                let rhs = dt[f.apply(a).0];
                if lhs != rhs {
                    report.push(
                        "preserves-inverse",
                        vec![s.name(a).into()],
                        format!("f(a)† = {}", t.name(rhs)),
                        format!("f(a†) = {}", t.name(lhs)),
                    );
                }
            }
        }
        _ => report.note("unit and inverse preservation not checked: not both binary partial groups"),
    }
    report
}

/// Small named structures used throughout tests and examples.
pub mod catalog {
    use super::*;

    fn from_fn(names: Vec<String>, f: impl Fn(usize, usize) -> Option<usize>) -> PartialMagma {
        let k = names.len();
        let table: RawTable = (0..k).map(|i| (0..k).map(|j| f(i, j)).collect()).collect();
        PartialMagma::new(names, &table, 0).expect("catalog tables are unital")
    }

    /// The one-element group.
    pub fn trivial() -> PartialMagma {
        from_fn(default_names(1), |_, _| Some(0))
    }

    /// The cyclic group of order `n`, elements `1, a, b, ...` standing for
    /// `g⁰, g¹, g², ...`.
    pub fn cyclic(n: usize) -> PartialMagma {
        from_fn(default_names(n), move |i, j| Some((i + j) % n))
    }

    /// Z/2 × Z/2 with `a, b, c = ab`.
    pub fn klein() -> PartialMagma {
        from_fn(default_names(4), |i, j| Some(i ^ j))
    }

    /// Three elements `1, a, b` with `ab = ba = 1`; every other product of
    /// non-units is undefined.
    pub fn p3() -> PartialMagma {
        from_fn(default_names(3), |i, j| match (i, j) {
            (0, j) => Some(j),
            (i, 0) => Some(i),
            (1, 2) | (2, 1) => Some(0),
            _ => None,
        })
    }

    /// Two elements with `aa` undefined; not a binary partial group.
    pub fn undefined_square() -> PartialMagma {
        from_fn(default_names(2), |i, j| match (i, j) {
            (1, 1) => None,
            (i, j) => Some(i + j),
        })
    }

    pub fn group(p: PartialMagma) -> BinaryPartialGroup {
        BinaryPartialGroup::new(p).expect("catalog structure is a binary partial group")
    }
}
