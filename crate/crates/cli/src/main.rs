//! `tropint`: command-line front end for tropical intersection computations.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde_json::json;
use tropint_core::functions::{apply_expression, divisor};
use tropint_core::intersect::{
    diagonal_cycle, intersect_cycles, pullback_cycle, pushforward, pushforward_into, AmbientContext, AmbientShape,
};
use tropint_core::io::{
    complex_from_doc, complex_to_doc, cycle_from_doc, cycle_to_doc, diagonal_to_doc, function_from_doc,
    morphism_from_doc, read_json, to_json, CarrierRef, FunctionDoc, MorphismDoc, PolyhedralDoc,
};
use tropint_core::linspace::{
    build_fnk, build_lnk, diagonal_divisors_rn, fnn, rewrite_diagonal, verify_linear_space_representation,
};
use tropint_core::polyhedra::{common_refinement, cycles_equal, degree, is_balanced, Complex, TropicalCycle};
use tropint_core::Error;

#[derive(Parser, Debug)]
#[command(name = "tropint", version, about = "Exact tropical intersection theory on tropical linear spaces")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    /// Re-verify diagonal representations before using them.
    #[arg(long, global = true)]
    verify: bool,
    /// Suppress reports on standard error.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the tropical linear space L^n_k.
    Lnk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Emit the refinement F^n_k of L^n_k x L^n_k.
    Fnk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Check the balancing condition; exit status 1 if it fails.
    CheckBalanced { cycle: PathBuf },
    /// Apply a piecewise affine function to a cycle.
    Divisor { function: PathBuf, cycle: PathBuf },
    /// Emit prod (T_i + B) (A + D)^k on F^n_n, the product form of the diagonal of L^n_{n-k}.
    DiagonalForm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Emit the rewritten tuples h_ij for the diagonal of L^n_{n-k}, verified.
    DiagonalRewrite {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Also write F^n_n here and reference it instead of the `fnn:` shorthand.
        #[arg(long)]
        carrier_out: Option<PathBuf>,
    },
    /// Intersection product of two subcycles of an ambient space.
    Intersect {
        d1: PathBuf,
        d2: PathBuf,
        /// `lnk:n,k`, `star:n,k:x1,...,xn` or `product:n1,k1;n2,k2`.
        #[arg(long)]
        ambient: String,
    },
    /// Push a cycle forward along a map.
    Pushforward {
        map: PathBuf,
        cycle: PathBuf,
        /// Check that the image lies in this cycle.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Pull a cycle back along a map between ambient spaces.
    Pullback {
        map: PathBuf,
        cycle: PathBuf,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Subdivide a cycle along the cells of a complex.
    Refine { cycle: PathBuf, carrier: PathBuf },
    /// Degree of a zero-dimensional cycle.
    Degree { cycle: PathBuf },
    /// Compare two cycles; exit status 1 if they differ.
    Equal { a: PathBuf, b: PathBuf },
}

/// Outcome of a command: a document and whether validation passed.
struct Outcome {
    body: String,
    ok: bool,
    report: Option<String>,
}

impl Outcome {
    fn doc(body: String) -> Self {
        Self { body, ok: true, report: None }
    }
}

fn load_cycle(path: &Path) -> anyhow::Result<TropicalCycle> {
    let doc: PolyhedralDoc = read_json(path)?;
    cycle_from_doc(&doc).with_context(|| path.display().to_string())
}

fn load_complex(path: &Path) -> anyhow::Result<Complex> {
    let doc: PolyhedralDoc = read_json(path)?;
    complex_from_doc(&doc).with_context(|| path.display().to_string())
}

fn context(shape: &str, verify: bool) -> anyhow::Result<AmbientContext> {
    let ctx = AmbientContext::from_shape(&AmbientShape::parse(shape)?)?;
    if verify {
        ctx.verify()?;
    }
    Ok(ctx)
}

fn cycle_out(x: &TropicalCycle) -> Outcome {
    Outcome::doc(to_json(&cycle_to_doc(x)))
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    Ok(match &cli.command {
        Command::Lnk { n, k } => cycle_out(&build_lnk(*n, *k)?),
        Command::Fnk { n, k } => Outcome::doc(to_json(&complex_to_doc(&build_fnk(*n, *k)?))),
        Command::CheckBalanced { cycle } => {
            let x = load_cycle(cycle)?;
            let r = is_balanced(&x);
            let witness = r.witness.as_ref().map(|(cell, v)| {
                json!({
                    "cell": cycle_to_doc(&TropicalCycle::new(x.ambient_dim(), cell.dim(), vec![(cell.clone(), 1.into())])
                        .expect("cell of the cycle's space")),
                    "residual": v.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                })
            });
            let body = to_json(&json!({ "balanced": r.balanced, "witness": witness }));
            Outcome { body, ok: r.balanced, report: None }
        }
        Command::Divisor { function, cycle } => {
            let doc: FunctionDoc = read_json(function)?;
            let f = function_from_doc(&doc, function.parent())
                .with_context(|| function.display().to_string())?;
            cycle_out(&divisor(&f, &load_cycle(cycle)?)?)
        }
        Command::DiagonalForm { n, k } => {
            let mut factors: Vec<String> = (1..=*n).map(|i| format!("T{i}+B")).collect();
            factors.extend(std::iter::repeat_n("A+D".to_string(), *k));
            let mut report = None;
            let mut verified = None;
            if cli.verify {
                let e = diagonal_divisors_rn(*n, *k)?;
                let got = apply_expression(&e, &TropicalCycle::whole_space(2 * n))?;
                let ok = cycles_equal(&got, &diagonal_cycle(&build_lnk(*n, n - k)?));
                if !ok {
                    return Err(Error::Verification(format!(
                        "product form does not give the diagonal of L^{n}_{}",
                        n - k
                    ))
                    .into());
                }
                verified = Some(true);
                report = Some(format!("product form applied to [F^{n}_{n}] equals the diagonal of L^{n}_{}", n - k));
            }
            let body = to_json(&json!({
                "kind": "diagonal-form",
                "n": n,
                "k": k,
                "carrier": format!("fnn:{n}"),
                "factors": factors,
                "verified": verified,
            }));
            Outcome { body, ok: true, report }
        }
        Command::DiagonalRewrite { n, k, carrier_out } => {
            if k > n {
                return Err(Error::Invalid(format!("k = {k} exceeds n = {n}")).into());
            }
            let rep = rewrite_diagonal(*n, *k)?;
            if cli.verify {
                verify_linear_space_representation(*n, n - k, &rep)?;
            }
            let carrier = match carrier_out {
                Some(p) => {
                    write_file(p, &to_json(&complex_to_doc(&fnn(*n))))?;
                    let name = p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                    CarrierRef::Reference(name)
                }
                None => CarrierRef::Reference(format!("fnn:{n}")),
            };
            let doc = diagonal_to_doc(*n, *k, &rep, carrier, Some(true))?;
            let report = format!(
                "{} tuple(s) of length {}; sum h . [L x L] equals the diagonal of L^{n}_{}",
                rep.tuples().len(),
                rep.codim,
                n - k
            );
            Outcome { body: to_json(&doc), ok: true, report: Some(report) }
        }
        Command::Intersect { d1, d2, ambient } => {
            let ctx = context(ambient, cli.verify)?;
            cycle_out(&intersect_cycles(&load_cycle(d1)?, &load_cycle(d2)?, &ctx)?)
        }
        Command::Pushforward { map, cycle, target } => {
            let doc: MorphismDoc = read_json(map)?;
            let f = morphism_from_doc(&doc).with_context(|| map.display().to_string())?;
            let x = load_cycle(cycle)?;
            let y = match target {
                Some(t) => pushforward_into(&f, &x, &load_cycle(t)?)?,
                None => pushforward(&f, &x)?,
            };
            cycle_out(&y)
        }
        Command::Pullback { map, cycle, source, target } => {
            let doc: MorphismDoc = read_json(map)?;
            let f = morphism_from_doc(&doc).with_context(|| map.display().to_string())?;
            let ctx = AmbientContext::product(&[context(source, cli.verify)?, context(target, cli.verify)?])?;
            cycle_out(&pullback_cycle(&f, &load_cycle(cycle)?, &ctx)?)
        }
        Command::Refine { cycle, carrier } => cycle_out(&common_refinement(&load_cycle(cycle)?, &load_complex(carrier)?)?),
        Command::Degree { cycle } => {
            let x = load_cycle(cycle)?;
            let d = if x.is_empty() { 0.into() } else { degree(&x)? };
            Outcome::doc(to_json(&json!({ "degree": d.to_string() })))
        }
        Command::Equal { a, b } => {
            let eq = cycles_equal(&load_cycle(a)?, &load_cycle(b)?);
            Outcome { body: to_json(&json!({ "equal": eq })), ok: eq, report: None }
        }
    })
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(p) => write_file(p, &out.body),
                None => std::io::stdout().write_all(out.body.as_bytes()).map_err(Into::into),
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            if let (Some(r), false) = (&out.report, cli.quiet) {
                eprintln!("{r}");
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let internal = e.downcast_ref::<Error>().is_some_and(Error::is_verification);
            ExitCode::from(if internal { 2 } else { 1 })
        }
    }
}
