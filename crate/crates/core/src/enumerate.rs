//! Exhaustive generation of small unital partial magmas and their
//! classification up to unit-preserving isomorphism.
//!
//! The unit sits at index 0 and its row and column are forced by the unit
//! laws, leaving `(k-1)²` free cells with `k + 1` choices each (undefined
//! or one of the `k` elements).

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::functors::{big_small_gap, magma_homs, symset_homs};
use crate::magma::{check_a3, check_i2, default_names, find_dagger, BinaryPartialGroup, Element, PartialMagma};
use crate::Limits;

/// `(k+1)^((k-1)²)`.
pub fn candidate_count(k: usize) -> u64 {
    let free = (k.saturating_sub(1) * k.saturating_sub(1)) as u32;
    (k as u64 + 1).pow(free)
}

fn guard_size(k: usize, limits: &Limits) -> Result<()> {
    if k == 0 || k > limits.max_size {
        return Err(Error::ResourceGuard(format!(
            "size {k} outside 1..={} ({} candidates)",
            limits.max_size,
            if k == 0 { 0 } else { candidate_count(k) }
        )));
    }
    Ok(())
}

/// Decodes candidate number `index` into a flat table.
fn candidate_table(k: usize, mut index: u64) -> Vec<Option<Element>> {
    let mut table = vec![None; k * k];
    for a in 0..k {
        table[a] = Some(Element(a));
        table[a * k] = Some(Element(a));
    }
    let base = k as u64 + 1;
    for i in (1..k).rev() {
        for j in (1..k).rev() {
            let choice = (index % base) as usize;
            index /= base;
            table[i * k + j] = if choice == 0 { None } else { Some(Element(choice - 1)) };
        }
    }
    table
}

/// Every unital partial magma on `k` elements with unit `1`, in a fixed
/// order. Sizes above 4 need raised [`Limits`].
pub fn enumerate_unital_partial_magmas(k: usize) -> Result<impl Iterator<Item = PartialMagma>> {
    enumerate_unital_partial_magmas_with(k, &Limits::default())
}

pub fn enumerate_unital_partial_magmas_with(
    k: usize,
    limits: &Limits,
) -> Result<impl Iterator<Item = PartialMagma>> {
    guard_size(k, limits)?;
    let names: Arc<[String]> = default_names(k).into();
    Ok((0..candidate_count(k)).map(move |i| {
        PartialMagma::from_flat_unchecked(names.clone(), Element(0), candidate_table(k, i))
    }))
}

/// Parallel map-reduce over all candidates of size `k`.
fn sweep<T, F, R>(k: usize, limits: &Limits, identity: fn() -> T, fold: F, reduce: R) -> Result<T>
where
    T: Send,
    F: Fn(T, PartialMagma) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    guard_size(k, limits)?;
    let names: Arc<[String]> = default_names(k).into();
    Ok((0..candidate_count(k))
        .into_par_iter()
        .fold(identity, |acc, i| {
            fold(
                acc,
                PartialMagma::from_flat_unchecked(names.clone(), Element(0), candidate_table(k, i)),
            )
        })
        .reduce(identity, reduce))
}

fn all_relabelings(k: usize) -> Vec<Vec<usize>> {
    if k <= 1 {
        return vec![(0..k).collect()];
    }
    (1..k)
        .permutations(k - 1)
        .map(|p| std::iter::once(0).chain(p).collect())
        .collect()
}

fn relabeled_table(p: &PartialMagma, perm: &[usize]) -> Vec<Option<Element>> {
    let k = p.size();
    let mut table = vec![None; k * k];
    for i in 0..k {
        for j in 0..k {
            table[perm[i] * k + perm[j]] = p.table()[i * k + j].map(|e| Element(perm[e.0]));
        }
    }
    table
}

/// Lexicographically least table among all unit-fixing relabelings, with
/// default element names. Requires the unit at index 0.
pub fn canonical_form(p: &PartialMagma) -> PartialMagma {
    let key = canonical_key(p);
    PartialMagma::from_flat_unchecked(default_names(p.size()).into(), Element(0), key)
}

fn canonical_key(p: &PartialMagma) -> Vec<Option<Element>> {
    assert_eq!(p.unit(), Element(0), "canonical forms expect the unit at index 0");
    all_relabelings(p.size())
        .iter()
        .map(|perm| relabeled_table(p, perm))
        .min()
        .expect("at least one relabeling")
}

/// A unit-preserving bijection `perm` (old index ↦ new index) carrying
/// `p`'s table onto `q`'s, found in lexicographic search order.
pub fn isomorphic(p: &PartialMagma, q: &PartialMagma) -> Option<Vec<usize>> {
    if p.size() != q.size() || p.defined_count() != q.defined_count() {
        return None;
    }
    let k = p.size();
    let (pu, qu) = (p.unit().0, q.unit().0);
    let p_rest: Vec<usize> = (0..k).filter(|&i| i != pu).collect();
    let q_rest: Vec<usize> = (0..k).filter(|&i| i != qu).collect();
    q_rest
        .iter()
        .copied()
        .permutations(k - 1)
        .map(|image| {
            let mut perm = vec![0; k];
            perm[pu] = qu;
            for (&src, dst) in p_rest.iter().zip(image) {
                perm[src] = dst;
            }
            perm
        })
        .find(|perm| relabeled_table(p, perm) == q.table())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub size: usize,
    pub candidates: u64,
    /// Labelled (not deduplicated) binary partial groups among them.
    pub binary_partial_groups: u64,
    pub classes: usize,
}

/// Binary partial groups of one size, one canonical representative per
/// isomorphism class, in increasing canonical order.
#[derive(Clone, Debug)]
pub struct Atlas {
    pub size: usize,
    pub structures: Vec<BinaryPartialGroup>,
    pub provenance: Provenance,
}

pub fn classify_bpgs(k: usize) -> Result<Atlas> {
    classify_bpgs_with(k, &Limits::default())
}

pub fn classify_bpgs_with(k: usize, limits: &Limits) -> Result<Atlas> {
    type Acc = (u64, BTreeSet<Vec<Option<Element>>>);
    let (labelled, keys) = sweep::<Acc, _, _>(
        k,
        limits,
        || (0, BTreeSet::new()),
        |(n, mut keys), p| {
            if find_dagger(&p).dagger().is_some() {
                keys.insert(canonical_key(&p));
                (n + 1, keys)
            } else {
                (n, keys)
            }
        },
        |(n1, mut k1), (n2, k2)| {
            k1.extend(k2);
            (n1 + n2, k1)
        },
    )?;
    let names: Arc<[String]> = default_names(k).into();
    let structures = keys
        .into_iter()
        .map(|key| {
            let p = PartialMagma::from_flat_unchecked(names.clone(), Element(0), key);
            BinaryPartialGroup::new(p).expect("canonical relabeling keeps the inverse")
        })
        .collect::<Vec<_>>();
    Ok(Atlas {
        size: k,
        provenance: Provenance {
            size: k,
            candidates: candidate_count(k),
            binary_partial_groups: labelled,
            classes: structures.len(),
        },
        structures,
    })
}

/// Atlases for sizes `1..=max_size`.
pub fn classify_up_to(max_size: usize) -> Result<Vec<Atlas>> {
    (1..=max_size).map(classify_bpgs).collect()
}

/// Counts over every unital partial magma of size `k` bearing on the
/// inverse and Baer claims.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepStats {
    pub size: usize,
    pub candidates: u64,
    pub with_inverse: u64,
    /// Magmas with two distinct inverse functions.
    pub non_unique_inverse: u64,
    /// Magmas satisfying A3 in which every element has a right inverse.
    pub baer_hypothesis: u64,
    /// Of those, the ones without an inverse function.
    pub baer_failures: u64,
}

pub fn sweep_stats(k: usize) -> Result<SweepStats> {
    sweep_stats_with(k, &Limits::default())
}

pub fn sweep_stats_with(k: usize, limits: &Limits) -> Result<SweepStats> {
    let mut stats = sweep(
        k,
        limits,
        SweepStats::default,
        |mut s, p| {
            s.candidates += 1;
            let search = find_dagger(&p);
            let exists = search.exists();
            if exists {
                s.with_inverse += 1;
            }
            if exists && !search.is_unique() {
                s.non_unique_inverse += 1;
            }
            let one = p.unit();
            let right_inverses = p.elements().all(|a| p.elements().any(|r| p.product(a, r) == Some(one)));
            if right_inverses && check_a3(&p).passed() {
                s.baer_hypothesis += 1;
                if !exists {
                    s.baer_failures += 1;
                }
            }
            s
        },
        |a, b| SweepStats {
            size: 0,
            candidates: a.candidates + b.candidates,
            with_inverse: a.with_inverse + b.with_inverse,
            non_unique_inverse: a.non_unique_inverse + b.non_unique_inverse,
            baer_hypothesis: a.baer_hypothesis + b.baer_hypothesis,
            baer_failures: a.baer_failures + b.baer_failures,
        },
    )?;
    stats.size = k;
    Ok(stats)
}

/// The fixed menu of witness searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    /// A binary partial group failing A3.
    ViolatesA3,
    /// A binary partial group failing I2; none is expected.
    ViolatesI2,
    /// `B(P)ₙ ≠ B′(P)ₙ` for some `n ≤ level`.
    BigSmallGap { level: usize },
    /// A pair of atlas entries whose hom-set sizes differ under `B`; none
    /// is expected.
    HomCountMismatch { level: usize },
    /// A unital partial magma with two inverse functions; none is expected.
    DaggerNonUnique,
}

impl FromStr for Predicate {
    type Err = Error;

    /// `violates-a3`, `violates-i2`, `dagger-non-unique`,
    /// `b-ne-bprime[:n]`, `hom-count-mismatch[:n]`.
    fn from_str(s: &str) -> Result<Self> {
        let (id, arg) = match s.split_once(':') {
            Some((id, arg)) => (id, Some(arg)),
            None => (s, None),
        };
        let level = || -> Result<usize> {
            arg.map_or(Ok(6), |a| {
                a.parse()
                    .map_err(|_| Error::Structural(format!("bad level `{a}` in predicate")))
            })
        };
        match id {
            "violates-a3" => Ok(Predicate::ViolatesA3),
            "violates-i2" => Ok(Predicate::ViolatesI2),
            "dagger-non-unique" => Ok(Predicate::DaggerNonUnique),
            "b-ne-bprime" => Ok(Predicate::BigSmallGap { level: level()? }),
            "hom-count-mismatch" => Ok(Predicate::HomCountMismatch { level: level()? }),
            other => Err(Error::Structural(format!("unknown predicate `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub structure: PartialMagma,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub found: Option<Witness>,
    /// `(size, structures examined)` for every size searched.
    pub searched: Vec<(usize, u64)>,
}

/// First structure, in size order then canonical order, satisfying the
/// predicate. Atlas-based predicates scan atlas entries; the inverse
/// uniqueness predicate scans every unital partial magma.
pub fn find_witness(max_size: usize, predicate: Predicate) -> Result<SearchOutcome> {
    let mut searched = Vec::new();
    for k in 1..=max_size {
        if predicate == Predicate::DaggerNonUnique {
            searched.push((k, candidate_count(k)));
            let hit = enumerate_unital_partial_magmas(k)?
                .find(|p| {
                    let s = find_dagger(p);
                    s.exists() && !s.is_unique()
                });
            if let Some(p) = hit {
                return Ok(SearchOutcome {
                    found: Some(Witness {
                        detail: find_dagger(&p).report.summary(),
                        structure: p,
                    }),
                    searched,
                });
            }
            continue;
        }
        let atlas = classify_bpgs(k)?;
        searched.push((k, atlas.structures.len() as u64));
        for p in &atlas.structures {
            if let Some(detail) = test_predicate(p, predicate, max_size)? {
                return Ok(SearchOutcome {
                    found: Some(Witness {
                        structure: p.magma().clone(),
                        detail,
                    }),
                    searched,
                });
            }
        }
    }
    Ok(SearchOutcome {
        found: None,
        searched,
    })
}

fn test_predicate(p: &BinaryPartialGroup, predicate: Predicate, max_size: usize) -> Result<Option<String>> {
    Ok(match predicate {
        Predicate::ViolatesA3 => {
            let r = check_a3(p.magma());
            r.violations
                .first()
                .map(|v| format!("A3 fails at ({}): {} vs {}", v.witness.join(","), v.expected, v.found))
        }
        Predicate::ViolatesI2 => {
            let r = check_i2(p.magma(), p.dagger_map());
            (!r.passed()).then(|| r.summary())
        }
        Predicate::BigSmallGap { level } => big_small_gap(p, level)?
            .map(|(n, w)| format!("({}) in B(P)_{n} but not in B′(P)_{n}", w.display(p.magma()))),
        Predicate::HomCountMismatch { level } => {
            let bp = crate::functors::big_embed(p, level)?;
            let mut hit = None;
            'outer: for k in 1..=max_size {
                for q in classify_bpgs(k)?.structures {
                    let bq = crate::functors::big_embed(&q, level)?;
                    let a = magma_homs(p.magma(), q.magma()).len();
                    let b = symset_homs(&bp, &bq)?.len();
                    if a != b {
                        hit = Some(format!("to {:?}: {a} magma homs, {b} symmetric set maps", q.magma()));
                        break 'outer;
                    }
                }
            }
            hit
        }
        Predicate::DaggerNonUnique => unreachable!("handled by the full sweep"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestFile {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub max_size: usize,
    pub counts: Vec<Provenance>,
    pub files: Vec<ManifestFile>,
}

impl Manifest {
    pub fn render_table(&self) -> String {
        let mut out = String::from("size  candidates  bpgs(labelled)  classes\n");
        for c in &self.counts {
            out.push_str(&format!(
                "{:>4}  {:>10}  {:>14}  {:>7}\n",
                c.size, c.candidates, c.binary_partial_groups, c.classes
            ));
        }
        out
    }
}

/// Writes one magma document per atlas entry as `size-k/NNN.json`, plus
/// `manifest.json` with counts and content hashes.
pub fn write_atlas(dir: &Path, atlases: &[Atlas]) -> Result<Manifest> {
    fs::create_dir_all(dir)?;
    let mut files = Vec::new();
    for atlas in atlases {
        let sub = format!("size-{}", atlas.size);
        fs::create_dir_all(dir.join(&sub))?;
        for (i, p) in atlas.structures.iter().enumerate() {
            let rel = format!("{sub}/{i:03}.json");
            let body = crate::serial::magma_to_json(p.magma());
            fs::write(dir.join(&rel), &body)?;
            files.push(ManifestFile {
                path: rel,
                sha256: hex::encode(Sha256::digest(body.as_bytes())),
            });
        }
    }
    let manifest = Manifest {
        max_size: atlases.iter().map(|a| a.size).max().unwrap_or(0),
        counts: atlases.iter().map(|a| a.provenance.clone()).collect(),
        files,
    };
    let mut body = serde_json::to_string_pretty(&manifest)?;
    body.push('\n');
    fs::write(dir.join("manifest.json"), body)?;
    Ok(manifest)
}

/// Reads an atlas directory back, verifying content hashes.
pub fn read_atlas(dir: &Path) -> Result<(Manifest, Vec<BinaryPartialGroup>)> {
    let manifest: Manifest = serde_json::from_str(&fs::read_to_string(dir.join("manifest.json"))?)?;
    let mut out = Vec::new();
    for f in &manifest.files {
        let body = fs::read_to_string(dir.join(&f.path))?;
        if hex::encode(Sha256::digest(body.as_bytes())) != f.sha256 {
            return Err(Error::Integrity(format!("hash mismatch for {}", f.path)));
        }
        out.push(BinaryPartialGroup::new(crate::serial::parse_magma(&body)?)?);
    }
    Ok((manifest, out))
}
