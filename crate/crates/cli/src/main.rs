//! `bpg`: command-line front end for binary partial groups.
//!
//! Exit status: 0 when the check or construction succeeds, 1 when the
//! input fails validation (a report is printed), 2 on usage, I/O, JSON
//! or structural errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bpg_core::enumerate::{
    classify_bpgs_with, find_witness, isomorphic, sweep_stats_with, write_atlas, Predicate,
};
use bpg_core::functors::{
    big_embed_with, check_2skeletal_equivalence, check_final_remark, check_fully_faithful,
    check_main_theorem, check_simplicial_two_skeleton, check_tb_identity,
    check_triangle_identities, check_unit_eta, simplicial_skeleton, skeleton, small_embed_with,
};
use bpg_core::magma::{check_a3, check_anti_automorphism, check_baer_criterion, check_i2, find_dagger};
use bpg_core::serial::{parse_document, truncated_to_json, Document};
use bpg_core::symset::ValidateOptions;
use bpg_core::words::{check_inversion_closure, check_mirror_sweep};
use bpg_core::{
    BinaryPartialGroup, Error, Format, FunctorReport, Limits, PartialMagma, TruncatedPartialGroup,
    ValidationReport,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bpg", version, about = "Binary partial groups and their partial-group embeddings")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Truncation level N for constructions and word-length bound for sweeps.
    #[arg(long, global = true, default_value_t = 6)]
    levels: usize,
    /// Report format.
    #[arg(long, global = true, default_value = "text")]
    format: FormatArg,
    /// Seed for randomized spot-checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Lift the size and level guards (size 5, N up to 12).
    #[arg(long, global = true)]
    unsafe_large: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a magma document for an inverse function, or validate a
    /// truncated partial group document.
    Validate { file: PathBuf },
    /// Report the axioms a magma satisfies and its atlas class.
    Classify { file: PathBuf },
    /// Print the inverse function of a magma, or why there is none.
    Dagger { file: PathBuf },
    /// Build the big embedding B(P) (or B′(P) with --small) as JSON.
    BuildBp {
        file: PathBuf,
        #[arg(long)]
        small: bool,
    },
    /// Take the k-skeleton of a truncated partial group (a magma is embedded
    /// first).
    Skeleton {
        file: PathBuf,
        #[arg(long)]
        dim: usize,
        /// Close only under monotone maps.
        #[arg(long)]
        simplicial: bool,
    },
    /// Run one instance check.
    Check {
        claim: Claim,
        file: PathBuf,
        file2: Option<PathBuf>,
    },
    /// Sweep every unital partial magma of one size, or search for a witness.
    Enumerate {
        #[arg(long)]
        size: usize,
        /// Witness search: violates-a3, violates-i2, dagger-non-unique,
        /// b-ne-bprime[:n], hom-count-mismatch[:n]; searches sizes 1..=size.
        #[arg(long)]
        predicate: Option<String>,
    },
    /// Classify sizes 1..=size and write the atlas directory.
    Atlas {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Claim {
    AntiAuto,
    Mirror,
    InversionClosure,
    MainTheorem,
    TbId,
    Eta,
    Triangles,
    FullyFaithful,
    TwoSkeletal,
    Baer,
    FinalRemark,
    SimplicialSkeleton,
}

/// A failed run: either a report to print with status 1, or an error.
enum Failure {
    Report(String),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = Result<String, Failure>;

struct Ctx {
    format: Format,
    levels: usize,
    seed: u64,
    limits: Limits,
}

impl Ctx {
    fn report(&self, r: &ValidationReport) -> Outcome {
        let text = r.render(self.format);
        if r.passed() {
            Ok(text)
        } else {
            Err(Failure::Report(text))
        }
    }

    fn functor(&self, r: &FunctorReport) -> Outcome {
        let text = r.render(self.format);
        if r.passed() {
            Ok(text)
        } else {
            Err(Failure::Report(text))
        }
    }

    fn json(&self, v: serde_json::Value) -> String {
        let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
        s.push('\n');
        s
    }
}

fn load(path: &Path) -> Result<Document, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("cannot read {}: {e}", path.display()))))?;
    parse_document(&text)
}

fn load_magma(path: &Path) -> Result<PartialMagma, Error> {
    match load(path)? {
        Document::Magma(p) => Ok(p),
        Document::Truncated(_) => Err(Error::Structural(format!(
            "{} is a truncated partial group; a magma document is expected",
            path.display()
        ))),
    }
}

fn load_bpg(path: &Path) -> Result<BinaryPartialGroup, Failure> {
    let p = load_magma(path)?;
    BinaryPartialGroup::new(p).map_err(|e| match e {
        Error::Axiom(r) => Failure::Report(r.render(Format::Text)),
        other => Failure::Error(other),
    })
}

/// A truncated document as given, or the big embedding of a magma.
fn load_structure(path: &Path, ctx: &Ctx, small: bool) -> Result<TruncatedPartialGroup, Failure> {
    match load(path)? {
        Document::Truncated(x) => Ok(x),
        Document::Magma(_) => {
            let p = load_bpg(path)?;
            Ok(if small {
                small_embed_with(&p, ctx.levels, &ctx.limits)?
            } else {
                big_embed_with(&p, ctx.levels, &ctx.limits)?
            })
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let g = cli.global;
    let limits = if g.unsafe_large { Limits::unsafe_large() } else { Limits::default() };
    if g.levels > limits.max_level {
        return Err(Error::ResourceGuard(format!(
            "--levels {} exceeds {} (use --unsafe-large)",
            g.levels, limits.max_level
        ))
        .into());
    }
    let ctx = Ctx {
        format: match g.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        },
        levels: g.levels,
        seed: g.seed,
        limits,
    };
    match cli.command {
        Command::Validate { file } => validate(&ctx, &file),
        Command::Classify { file } => classify(&ctx, &file),
        Command::Dagger { file } => dagger(&ctx, &file),
        Command::BuildBp { file, small } => {
            let p = load_bpg(&file)?;
            let x = if small {
                small_embed_with(&p, ctx.levels, &ctx.limits)?
            } else {
                big_embed_with(&p, ctx.levels, &ctx.limits)?
            };
            Ok(truncated_to_json(&x))
        }
        Command::Skeleton { file, dim, simplicial } => {
            let x = load_structure(&file, &ctx, false)?;
            let y = if simplicial { simplicial_skeleton(&x, dim)? } else { skeleton(&x, dim)? };
            Ok(truncated_to_json(&y))
        }
        Command::Check { claim, file, file2 } => check(&ctx, claim, &file, file2.as_deref()),
        Command::Enumerate { size, predicate } => enumerate(&ctx, size, predicate.as_deref()),
        Command::Atlas { size, out } => {
            let atlases = (1..=size)
                .map(|k| classify_bpgs_with(k, &ctx.limits))
                .collect::<Result<Vec<_>, _>>()?;
            let manifest = write_atlas(&out, &atlases)?;
            Ok(match ctx.format {
                Format::Text => format!(
                    "{}wrote {} structures to {}\n",
                    manifest.render_table(),
                    manifest.files.len(),
                    out.display()
                ),
                Format::Json => ctx.json(serde_json::to_value(&manifest).expect("manifest serializes")),
            })
        }
    }
}

fn validate(ctx: &Ctx, file: &Path) -> Outcome {
    match load(file)? {
        Document::Magma(p) => {
            let search = find_dagger(&p);
            match search.dagger() {
                Some(_) => {
                    let bpg = BinaryPartialGroup::new(p)?;
                    Ok(match ctx.format {
                        Format::Text => {
                            format!("binary partial group; dagger: {}\n", bpg.describe_dagger())
                        }
                        Format::Json => ctx.json(serde_json::json!({
                            "binary_partial_group": true,
                            "dagger": dagger_pairs(&bpg),
                        })),
                    })
                }
                None => ctx.report(&search.report),
            }
        }
        Document::Truncated(x) => ctx.report(&x.validate_with(&ValidateOptions {
            seed: ctx.seed,
            ..ValidateOptions::default()
        })),
    }
}

fn dagger_pairs(p: &BinaryPartialGroup) -> Vec<[String; 2]> {
    p.elements()
        .map(|a| [p.name(a).to_string(), p.name(p.dagger(a)).to_string()])
        .collect()
}

fn dagger(ctx: &Ctx, file: &Path) -> Outcome {
    let p = load_magma(file)?;
    let search = find_dagger(&p);
    let Some(_) = search.dagger() else {
        return ctx.report(&search.report);
    };
    let bpg = BinaryPartialGroup::new(p)?;
    Ok(match ctx.format {
        Format::Text => dagger_pairs(&bpg)
            .iter()
            .map(|[a, d]| format!("{a}† = {d}\n"))
            .collect(),
        Format::Json => ctx.json(serde_json::json!({ "dagger": dagger_pairs(&bpg) })),
    })
}

fn classify(ctx: &Ctx, file: &Path) -> Outcome {
    let p = load_magma(file)?;
    let search = find_dagger(&p);
    let bpg = search.dagger().is_some();
    let a3 = check_a3(&p).passed();
    let i2 = bpg && check_i2(&p, &search.dagger().unwrap_or_default()).passed();
    let mut class = None;
    if bpg && p.size() <= ctx.limits.max_size {
        let atlas = classify_bpgs_with(p.size(), &ctx.limits)?;
        class = atlas
            .structures
            .iter()
            .position(|s| isomorphic(&p, s.magma()).is_some())
            .map(|i| format!("size-{}/{i:03}", p.size()));
    }
    Ok(match ctx.format {
        Format::Text => {
            let mut out = format!(
                "size: {}\ndefined products: {} of {}\ntotal: {}\nbinary partial group: {bpg}\nA3: {a3}\nI2: {i2}\n",
                p.size(),
                p.defined_count(),
                p.size() * p.size(),
                p.is_total()
            );
            if let Some(c) = &class {
                out.push_str(&format!("atlas class: {c}\n"));
            }
            out
        }
        Format::Json => ctx.json(serde_json::json!({
            "size": p.size(),
            "defined_products": p.defined_count(),
            "total": p.is_total(),
            "binary_partial_group": bpg,
            "a3": a3,
            "i2": i2,
            "atlas_class": class,
        })),
    })
}

fn check(ctx: &Ctx, claim: Claim, file: &Path, file2: Option<&Path>) -> Outcome {
    let second = || {
        file2.ok_or_else(|| Failure::Error(Error::Structural("this claim takes a second file".into())))
    };
    let n = ctx.levels;
    match claim {
        Claim::AntiAuto => {
            let p = load_bpg(file)?;
            let mut r = check_anti_automorphism(&p);
            r.absorb(check_i2(p.magma(), p.dagger_map()));
            ctx.report(&r)
        }
        Claim::Mirror => ctx.report(&check_mirror_sweep(&load_bpg(file)?, n)?),
        Claim::InversionClosure => ctx.report(&check_inversion_closure(&load_bpg(file)?, n)),
        Claim::MainTheorem => ctx.report(&check_main_theorem(&load_bpg(file)?, n)),
        Claim::TbId => ctx.functor(&check_tb_identity(&load_bpg(file)?, n)?),
        Claim::Eta => ctx.functor(&check_unit_eta(&load_structure(file, ctx, true)?)?),
        Claim::Triangles => ctx.functor(&check_triangle_identities(&load_bpg(file)?, n)?),
        Claim::FullyFaithful => {
            let (p, q) = (load_bpg(file)?, load_bpg(second()?)?);
            ctx.functor(&check_fully_faithful(&p, &q, n)?)
        }
        Claim::TwoSkeletal => ctx.functor(&check_2skeletal_equivalence(&load_structure(file, ctx, true)?)?),
        Claim::Baer => ctx.report(&check_baer_criterion(&load_magma(file)?)),
        Claim::FinalRemark => {
            let p = load_magma(file)?;
            let x = match load(second()?)? {
                Document::Truncated(x) => x,
                Document::Magma(_) => {
                    return Err(Error::Structural("the second file must be a truncated partial group".into()).into())
                }
            };
            ctx.functor(&check_final_remark(&p, &x)?)
        }
        Claim::SimplicialSkeleton => ctx.functor(&check_simplicial_two_skeleton(&load_bpg(file)?, n)?),
    }
}

fn enumerate(ctx: &Ctx, size: usize, predicate: Option<&str>) -> Outcome {
    if size == 0 || size > ctx.limits.max_size {
        return Err(Error::ResourceGuard(format!(
            "--size {size} outside 1..={} (use --unsafe-large for 5)",
            ctx.limits.max_size
        ))
        .into());
    }
    match predicate {
        None => {
            let s = sweep_stats_with(size, &ctx.limits)?;
            Ok(match ctx.format {
                Format::Text => format!(
                    "size {}: {} unital partial magmas, {} with an inverse function, {} with several; \
                     {} satisfy A3 with right inverses, {} of those lack an inverse\n",
                    s.size, s.candidates, s.with_inverse, s.non_unique_inverse, s.baer_hypothesis, s.baer_failures
                ),
                Format::Json => ctx.json(serde_json::to_value(&s).expect("stats serialize")),
            })
        }
        Some(id) => {
            let pred: Predicate = id.parse()?;
            let outcome = find_witness(size, pred)?;
            let searched: Vec<String> = outcome.searched.iter().map(|(k, n)| format!("size {k}: {n}")).collect();
            match (&outcome.found, ctx.format) {
                (Some(w), Format::Text) => Ok(format!(
                    "witness for {id}: {:?}\n  {}\n{}\n",
                    w.structure,
                    w.detail,
                    bpg_core::serial::magma_to_json(&w.structure).trim_end()
                )),
                (Some(w), Format::Json) => Ok(ctx.json(serde_json::json!({
                    "predicate": id,
                    "found": true,
                    "detail": w.detail,
                    "structure": serde_json::to_value(bpg_core::serial::MagmaDoc::from_magma(&w.structure))
                        .expect("documents serialize"),
                    "searched": outcome.searched,
                }))),
                (None, Format::Text) => Ok(format!("no witness for {id} ({})\n", searched.join(", "))),
                (None, Format::Json) => Ok(ctx.json(serde_json::json!({
                    "predicate": id,
                    "found": false,
                    "searched": outcome.searched,
                }))),
            }
        }
    }
}

fn describe(e: &Error) -> String {
    match e {
        Error::Io(e) => format!("I/O error: {e}"),
        Error::Json(e) => format!("malformed JSON: {e}"),
        Error::Structural(m) => format!("structural error: {m}"),
        Error::ResourceGuard(m) => format!("resource guard: {m}"),
        Error::Precondition(m) => format!("precondition not met: {m}"),
        Error::Integrity(m) => format!("integrity error: {m}"),
        Error::Axiom(r) => r.render(Format::Text),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Report(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("bpg: {}", describe(&e));
            match e {
                Error::Axiom(_) | Error::Integrity(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
