//! `circlealg`: brackets, characters, module actions, basis listings and
//! the seeded verification suites from the command line.
//!
//! Exit codes: 0 on success or a passing check, 1 when a check finds a
//! mismatch, 2 on usage, schema or validation errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use circlealg::fock::{Bosonic, Fermionic, FockVector, Space};
use circlealg::glinf::{ibracket, CocycleKind, InfMat};
use circlealg::matliealg::{ghbracket, in_subalgebra, EllConfig, GlHatElem, GlHatJson, Variant};
use circlealg::numkernel::Scalar;
use circlealg::repmap::sigma_elem;
use circlealg::suites::{run_suite, SuiteConfig, SuiteError, SUITES};
use circlealg::vacuum::{character, closed_character, neg_basis, VacuumModule};

#[derive(Parser)]
#[command(
    name = "circlealg",
    version,
    about = "Exact computations with Lie algebras of matrix differential operators on the circle"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for the randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest order or degree accepted by `character` and `list-basis`.
    #[arg(long, global = true)]
    max_order: Option<usize>,
    /// JSON file with default values for the configuration flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum VariantArg {
    Gl,
    O,
    Sp,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Gl => Variant::Gl,
            VariantArg::O => Variant::O,
            VariantArg::Sp => Variant::Sp,
        }
    }
}

/// Algebra configuration flags shared by the subcommands.
#[derive(Args, Clone, Default)]
struct CfgArgs {
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated orders `ℓ_1,…,ℓ_n` (default all zero).
    #[arg(long, value_delimiter = ',')]
    ell: Option<Vec<u32>>,
    #[arg(long)]
    eps: Option<u8>,
    /// Central value, a rational such as `2` or `1/2`.
    #[arg(long, allow_hyphen_values = true)]
    chi: Option<Scalar>,
    /// Twist parameter, a rational.
    #[arg(long, allow_hyphen_values = true)]
    iota: Option<Scalar>,
}

/// The on-disk configuration file: every field optional, flags win.
#[derive(Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    variant: Option<VariantArg>,
    n: Option<usize>,
    ell: Option<Vec<u32>>,
    eps: Option<u8>,
    chi: Option<Scalar>,
    iota: Option<Scalar>,
    order: Option<usize>,
    max_order: Option<usize>,
    seed: Option<u64>,
    samples: Option<usize>,
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgebraArg {
    /// Matrix differential operators, elements as `{"n","kappa","terms":[{"i","j","m","r","c"}]}`.
    Gl,
    /// Infinite matrices, elements as `{"kappa0","terms":[{"l2","k2","c"}]}` with doubled indices.
    Inf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CocycleArg {
    Standard,
    Alpha,
    Beta,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModuleArg {
    Fermionic,
    Bosonic,
    Vacuum,
}

#[derive(Subcommand)]
enum Command {
    /// Bracket of two elements read from JSON files.
    Bracket {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long, value_enum, default_value = "gl")]
        algebra: AlgebraArg,
        /// Central extension for `--algebra inf`.
        #[arg(long, value_enum, default_value = "standard")]
        cocycle: CocycleArg,
        /// Integer shift of the alternate cocycles (`ι₀` or `ι`).
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        cocycle_shift: i64,
        /// Comma-separated integer data of the alternate cocycles (`m` or `ℓ`).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        cocycle_data: Option<Vec<i64>>,
        #[command(flatten)]
        cfg: CfgArgs,
    },
    /// Enumerated vacuum character next to the product formula.
    Character {
        #[arg(long)]
        order: Option<usize>,
        #[command(flatten)]
        cfg: CfgArgs,
    },
    /// Apply an element to a vector of a Fock space or a vacuum module.
    Act {
        #[arg(long)]
        x: PathBuf,
        #[arg(long, value_enum, default_value = "fermionic")]
        module: ModuleArg,
        /// Read `x` as an infinite matrix acting directly on a Fock space.
        #[arg(long)]
        inf: bool,
        /// Fock vector to act on (default: the vacuum).
        #[arg(long)]
        v: Option<PathBuf>,
        /// Number of times to apply `x`.
        #[arg(long, default_value_t = 1)]
        times: u32,
        #[command(flatten)]
        cfg: CfgArgs,
    },
    /// Run a seeded verification suite.
    Verify {
        suite: Option<String>,
        /// List the available suites.
        #[arg(long)]
        list: bool,
        /// Number of random instances, where the suite draws any.
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        cfg: CfgArgs,
    },
    /// List the PBW generators of the negative part up to a degree.
    ListBasis {
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[command(flatten)]
        cfg: CfgArgs,
    },
}

/// Usage and validation failures; all map to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// What a command produced: text for each format and a pass flag.
struct Output {
    json: serde_json::Value,
    table: String,
    ok: bool,
}

struct Ctx {
    file: RunConfig,
    format: Format,
    seed: u64,
    max_order: usize,
}

impl Ctx {
    fn variant(&self, a: &CfgArgs) -> Variant {
        a.variant
            .or(self.file.variant)
            .unwrap_or(VariantArg::Gl)
            .into()
    }

    fn given(&self, a: &CfgArgs) -> bool {
        a.variant.is_some()
            || a.n.is_some()
            || a.ell.is_some()
            || self.file.variant.is_some()
            || self.file.n.is_some()
    }

    fn ell_config(&self, a: &CfgArgs, default_n: usize) -> Result<EllConfig, UsageError> {
        let n = a.n.or(self.file.n).unwrap_or(default_n);
        let ell = a
            .ell
            .clone()
            .or_else(|| self.file.ell.clone())
            .unwrap_or_else(|| vec![0; n]);
        let eps = a.eps.or(self.file.eps).unwrap_or(0);
        Ok(EllConfig::new(self.variant(a), n, ell, eps)?)
    }

    fn chi(&self, a: &CfgArgs) -> Scalar {
        a.chi
            .clone()
            .or_else(|| self.file.chi.clone())
            .unwrap_or_else(Scalar::one)
    }

    fn iota(&self, a: &CfgArgs) -> Option<Scalar> {
        a.iota.clone().or_else(|| self.file.iota.clone())
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, UsageError> {
    let text =
        fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn read_glhat(path: &Path, n: Option<usize>) -> Result<GlHatElem, UsageError> {
    let raw: GlHatJson = read_json(path)?;
    raw.into_elem(n)
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn cmd_bracket(
    ctx: &Ctx,
    (x, y): (&Path, &Path),
    algebra: AlgebraArg,
    cocycle: (CocycleArg, i64, Option<Vec<i64>>),
    cfg: &CfgArgs,
) -> Result<Output, UsageError> {
    match algebra {
        AlgebraArg::Gl => {
            let n = cfg.n.or(ctx.file.n);
            let a = read_glhat(x, n)?;
            let b = read_glhat(y, n.or(Some(a.n)))?;
            if ctx.given(cfg) {
                let ec = ctx.ell_config(cfg, a.n)?;
                for (name, e) in [("x", &a), ("y", &b)] {
                    if !in_subalgebra(e, &ec) {
                        return Err(UsageError(format!(
                            "{name} is not in the {} algebra with ℓ = {:?}",
                            ec.variant, ec.ell
                        )));
                    }
                }
            }
            let br = ghbracket(&a, &b)?;
            Ok(Output {
                table: format!("{br:?}"),
                json: serde_json::to_value(GlHatJson::from_elem(&br, false))?,
                ok: true,
            })
        }
        AlgebraArg::Inf => {
            let a: InfMat = read_json(x)?;
            let b: InfMat = read_json(y)?;
            let (kind, shift, data) = cocycle;
            let kind = match kind {
                CocycleArg::Standard => CocycleKind::Standard,
                CocycleArg::Alpha => CocycleKind::Alpha {
                    iota0: shift,
                    m: data.unwrap_or_default(),
                },
                CocycleArg::Beta => CocycleKind::Beta {
                    iota: shift,
                    ell: data.unwrap_or_default(),
                },
            };
            let br = ibracket(&a, &b, &kind)?;
            Ok(Output {
                table: format!("{br:?}"),
                json: serde_json::to_value(&br)?,
                ok: true,
            })
        }
    }
}

fn cmd_character(ctx: &Ctx, order: Option<usize>, cfg: &CfgArgs) -> Result<Output, UsageError> {
    let order = order.or(ctx.file.order).unwrap_or(6);
    if order > ctx.max_order {
        return Err(UsageError(format!(
            "order {order} exceeds the maximum {}",
            ctx.max_order
        )));
    }
    let ec = ctx.ell_config(cfg, 1)?;
    let got = character(&ec, order);
    let want = closed_character(&ec, order);
    let ok = got == want;
    let table = if ok {
        format!("{got} | match")
    } else {
        format!("{got} | {want} | mismatch")
    };
    let json = json!({
        "variant": ec.variant, "n": ec.n, "ell": ec.ell, "eps": ec.eps, "order": order,
        "enumerated": got.coeffs, "closed": want.coeffs, "match": ok,
    });
    Ok(Output { json, table, ok })
}

fn cmd_act(
    ctx: &Ctx,
    x: &Path,
    module: ModuleArg,
    inf: bool,
    v: Option<&Path>,
    times: u32,
    cfg: &CfgArgs,
) -> Result<Output, UsageError> {
    if let ModuleArg::Vacuum = module {
        if inf || v.is_some() {
            return Err(UsageError(
                "the vacuum module acts on its vacuum with matrix elements only".into(),
            ));
        }
        let m = VacuumModule::new(ctx.ell_config(cfg, 1)?, ctx.chi(cfg));
        let xe = read_glhat(x, Some(m.cfg().n))?;
        let mut w = m.vacuum();
        for _ in 0..times {
            w = m.act(&xe, &w)?;
        }
        let mut rows = Vec::new();
        let mut terms = Vec::new();
        for (mono, c) in w.terms.iter() {
            let gens: Vec<String> = mono
                .iter()
                .map(|g| format!("({:?})", m.generator(*g)))
                .collect();
            rows.push(format!("{c} · {}|0⟩", gens.join(" ")));
            terms.push(json!({ "monomial": mono, "c": c }));
        }
        if rows.is_empty() {
            rows.push("0".into());
        }
        let json = json!({ "module": "vacuum", "chi": w.chi, "terms": terms });
        return Ok(Output {
            json,
            table: rows.join("\n"),
            ok: true,
        });
    }
    let space = match module {
        ModuleArg::Bosonic => Space::Bosonic,
        _ => Space::Fermionic,
    };
    let mut w = match v {
        Some(p) => read_json::<FockVector>(p)?,
        None => FockVector::vacuum(space),
    };
    if w.space() != space {
        return Err(UsageError(format!(
            "vector lives in the {:?} space, module is {space:?}",
            w.space()
        )));
    }
    if inf {
        let xe: InfMat = read_json(x)?;
        for _ in 0..times {
            w = w.act_inf(&xe);
        }
    } else {
        let iota = ctx.iota(cfg).unwrap_or_else(Scalar::zero);
        let n = cfg.n.or(ctx.file.n);
        let xe = read_glhat(x, n)?;
        let ec = ctx.ell_config(cfg, xe.n)?;
        let op = sigma_elem(&xe, &iota, Some(&ec))?;
        for _ in 0..times {
            w = match w {
                FockVector::Fermionic(l) => FockVector::Fermionic(op.apply(&Fermionic, &l)),
                FockVector::Bosonic(l) => FockVector::Bosonic(op.apply(&Bosonic, &l)),
            };
        }
    }
    let table = match &w {
        FockVector::Fermionic(l) => format!("{l:?}"),
        FockVector::Bosonic(l) => format!("{l:?}"),
    };
    Ok(Output {
        json: serde_json::to_value(&w)?,
        table,
        ok: true,
    })
}

fn cmd_list_basis(ctx: &Ctx, degree: u32, cfg: &CfgArgs) -> Result<Output, UsageError> {
    if degree as usize > ctx.max_order {
        return Err(UsageError(format!(
            "degree {degree} exceeds the maximum {}",
            ctx.max_order
        )));
    }
    let ec = ctx.ell_config(cfg, 1)?;
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for k in 1..=degree {
        for g in neg_basis(&ec, k) {
            rows.push(format!("{k}.{}\t{:?}", g.id.index, g.elem));
            items.push(json!({ "degree": k, "index": g.id.index, "elem": g.elem }));
        }
    }
    Ok(Output {
        json: json!({ "variant": ec.variant, "n": ec.n, "ell": ec.ell, "eps": ec.eps, "basis": items }),
        table: rows.join("\n"),
        ok: true,
    })
}

fn cmd_verify(
    ctx: &Ctx,
    suite: Option<&str>,
    list: bool,
    samples: Option<usize>,
    cfg: &CfgArgs,
) -> Result<Output, UsageError> {
    if list {
        let table = SUITES
            .iter()
            .map(|(n, d)| format!("{n:<14}{d}"))
            .collect::<Vec<_>>()
            .join("\n");
        let json = json!(SUITES
            .iter()
            .map(|(n, d)| json!({ "name": n, "description": d }))
            .collect::<Vec<_>>());
        return Ok(Output {
            json,
            table,
            ok: true,
        });
    }
    let name = suite.ok_or_else(|| UsageError("missing suite name; use `verify --list`".into()))?;
    let sc = SuiteConfig {
        seed: ctx.seed,
        samples: samples.or(ctx.file.samples),
        cfg: if ctx.given(cfg) {
            Some(ctx.ell_config(cfg, 2)?)
        } else {
            None
        },
        chi: cfg.chi.clone().or_else(|| ctx.file.chi.clone()),
        iota: ctx.iota(cfg),
        max_order: ctx.file.order,
    };
    let rep = match run_suite(name, &sc) {
        Ok(r) => r,
        Err(SuiteError::UnknownSuite(s)) => {
            return Err(UsageError(format!(
                "unknown suite `{s}`; see `verify --list`"
            )))
        }
        Err(e) => return Err(UsageError(e.to_string())),
    };
    let mut table = vec![
        format!("suite: {}", rep.suite),
        format!("seed: {}", rep.seed),
        format!("params: {}", rep.params),
        format!("checked: {}", rep.checked),
        format!("result: {}", if rep.pass { "PASS" } else { "FAIL" }),
    ];
    if let Some(c) = &rep.counterexample {
        table.push(format!("counterexample: {c}"));
    }
    table.extend(rep.notes.iter().map(|n| format!("note: {n}")));
    Ok(Output {
        json: serde_json::to_value(&rep)?,
        table: table.join("\n"),
        ok: rep.pass,
    })
}

fn run(cli: Cli) -> Result<Output, UsageError> {
    let file = match &cli.config {
        Some(p) => read_json::<RunConfig>(p)?,
        None => RunConfig::default(),
    };
    let ctx = Ctx {
        format: cli.format.or(file.format).unwrap_or(Format::Table),
        seed: cli.seed.or(file.seed).unwrap_or(1),
        max_order: cli.max_order.or(file.max_order).unwrap_or(16),
        file,
    };
    let out = match &cli.command {
        Command::Bracket {
            x,
            y,
            algebra,
            cocycle,
            cocycle_shift,
            cocycle_data,
            cfg,
        } => cmd_bracket(
            &ctx,
            (x, y),
            *algebra,
            (*cocycle, *cocycle_shift, cocycle_data.clone()),
            cfg,
        )?,
        Command::Character { order, cfg } => cmd_character(&ctx, *order, cfg)?,
        Command::Act {
            x,
            module,
            inf,
            v,
            times,
            cfg,
        } => cmd_act(&ctx, x, *module, *inf, v.as_deref(), *times, cfg)?,
        Command::Verify {
            suite,
            list,
            samples,
            cfg,
        } => cmd_verify(&ctx, suite.as_deref(), *list, *samples, cfg)?,
        Command::ListBasis { degree, cfg } => cmd_list_basis(&ctx, *degree, cfg)?,
    };
    Ok(Output {
        table: if ctx.format == Format::Json {
            out.json.to_string()
        } else {
            out.table
        },
        ..out
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{}", out.table);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
