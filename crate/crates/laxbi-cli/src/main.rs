use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use laxbi::hallnum::{green_compare, hall_table, verify_laws};
use laxbi::laxhall::{beta_simplex, UnstrBialgSimplex};
use laxbi::protoexact::{check_proto_exact, s2_groupoid, s_construction, s_groupoid, Budget, ProtoExactCat, SBisimplicial, SMode};
use laxbi::segcheck::{check_2segal, check_2segal_strict, check_double_2segal};
use laxbi::simpcore::{text, SimplicialSet};
use laxbi::twistposet::{chain, cone_report, groth_posets, DeltaOpSimplex};

#[derive(Parser)]
#[command(name = "laxbi", version, about = "Bisimplicial constructions, 2-Segal checks and Hall numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where a proto-exact category comes from: a file, or the truncated vect fixture.
#[derive(clap::Args)]
struct CatSource {
    /// Category in the proto-exact text format.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Field size of the vect fixture.
    #[arg(long, default_value_t = 2)]
    q: usize,
    /// Dimension bound of the vect fixture.
    #[arg(long, default_value_t = 2)]
    dmax: usize,
}

#[derive(clap::Args)]
struct BudgetArg {
    /// Maximum number of iso classes enumerated per groupoid.
    #[arg(long, default_value_t = Budget::default().max_classes)]
    budget: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a fixture in its interchange format.
    Fixture {
        #[arg(value_enum)]
        kind: FixtureKind,
        /// Length of the chain for `arr` and `nerve`.
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 2)]
        dmax: usize,
    },
    /// Check the proto-exact axioms.
    CheckExact {
        #[command(flatten)]
        cat: CatSource,
    },
    /// Dump the groupoid of exact diagrams at level n (or (n, k)).
    SConstruct {
        #[command(flatten)]
        cat: CatSource,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Plain)]
        mode: Mode,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// 2-Segal certificate for a simplicial set file or for the S-construction.
    #[command(name = "check-2segal")]
    Check2segal {
        /// Simplicial set in the complex text format; otherwise S of the category.
        #[arg(long)]
        sset: Option<PathBuf>,
        #[command(flatten)]
        cat: CatSource,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Double 2-Segal certificate for the iterated or monoidal construction.
    #[command(name = "check-double-2segal")]
    CheckDouble2segal {
        #[command(flatten)]
        cat: CatSource,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long, value_enum, default_value_t = Mode::Iterated)]
        mode: Mode,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Hall structure constants and the law checks.
    Hall {
        #[command(flatten)]
        cat: CatSource,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Compare the two composites of product and coproduct.
    Green {
        #[command(flatten)]
        cat: CatSource,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Build and validate the cell of a serialized bialgebra simplex.
    Beta {
        #[arg(long)]
        input: PathBuf,
    },
    /// Dump the posets and cone regions of a simplex of Δ^op.
    Posets {
        /// Objects and maps, e.g. `2,1:0.2` (maps separated by `|`).
        #[arg(long)]
        phi: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureKind {
    Arr,
    Vect,
    Terminal,
    Nerve,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Plain,
    Iterated,
    Monoidal,
}

impl CatSource {
    fn load(&self) -> Result<(ProtoExactCat, String)> {
        match &self.input {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                let cat = ProtoExactCat::parse(&text).with_context(|| format!("parsing {}", p.display()))?;
                Ok((cat, p.display().to_string()))
            }
            None => Ok((ProtoExactCat::vect(self.q, self.dmax)?, format!("vect(q={},dmax={})", self.q, self.dmax))),
        }
    }
}

fn parse_phi(s: &str) -> Result<DeltaOpSimplex> {
    let nums = |t: &str, sep: char| -> Result<Vec<usize>> { t.split(sep).map(|x| x.trim().parse().with_context(|| format!("bad number '{x}' in --phi"))).collect() };
    let (dims, maps) = s.split_once(':').unwrap_or((s, ""));
    let dims = nums(dims, ',')?;
    let maps = if maps.is_empty() { Vec::new() } else { maps.split('|').map(|m| nums(m, '.')).collect::<Result<_>>()? };
    Ok(DeltaOpSimplex::new(dims, maps)?)
}

/// Writes the report and returns whether every check passed.
fn run(cmd: Command, out: &mut String) -> Result<bool> {
    match cmd {
        Command::Fixture { kind, n, q, dmax } => {
            match kind {
                FixtureKind::Arr => out.push_str(&ProtoExactCat::arr(&chain(n)).to_text()),
                FixtureKind::Vect => out.push_str(&ProtoExactCat::vect(q, dmax)?.to_text()),
                FixtureKind::Terminal => out.push_str(&ProtoExactCat::terminal().to_text()),
                FixtureKind::Nerve => out.push_str(&text::print(&SimplicialSet::standard(n))),
            }
            Ok(true)
        }
        Command::CheckExact { cat } => {
            let (c, name) = cat.load()?;
            let r = check_proto_exact(&c);
            writeln!(out, "# check-exact source={name}")?;
            writeln!(out, "{r}")?;
            Ok(r.passed())
        }
        Command::SConstruct { cat, n, k, mode, budget } => {
            let (c, name) = cat.load()?;
            let b = Budget { max_classes: budget.budget };
            let g = match (mode, k) {
                (Mode::Plain, None) => s_groupoid(&c, n, b)?,
                (Mode::Plain, Some(_)) => bail!("--k needs --mode iterated or monoidal"),
                (_, None) => bail!("--mode {} needs --k", if mode == Mode::Iterated { "iterated" } else { "monoidal" }),
                (Mode::Iterated, Some(k)) => s2_groupoid(&c, n, k, SMode::Iterated, b)?,
                (Mode::Monoidal, Some(k)) => s2_groupoid(&c, n, k, SMode::Monoidal, b)?,
            };
            let k = k.map_or("-".to_string(), |k| k.to_string());
            writeln!(out, "# s-construct source={name} n={n} k={k} budget={}", b.max_classes)?;
            out.push_str(&g.groupoid.dump());
            Ok(true)
        }
        Command::Check2segal { sset, cat, nmax, budget } => {
            let report = match sset {
                Some(p) => {
                    let t = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                    let x: SimplicialSet = text::parse(&t).with_context(|| format!("parsing {}", p.display()))?;
                    writeln!(out, "# check-2segal source={} nmax={nmax} mode=strict", p.display())?;
                    check_2segal_strict(&x, nmax)
                }
                None => {
                    let (c, name) = cat.load()?;
                    let b = Budget { max_classes: budget.budget };
                    let s = s_construction(Arc::new(c), nmax, b)?;
                    writeln!(out, "# check-2segal source=S({name}) nmax={nmax} budget={}", b.max_classes)?;
                    check_2segal(&s, nmax)?
                }
            };
            writeln!(out, "{report}")?;
            Ok(report.passed())
        }
        Command::CheckDouble2segal { cat, nmax, kmax, mode, budget } => {
            let (c, name) = cat.load()?;
            let b = Budget { max_classes: budget.budget };
            let (m, label) = match mode {
                Mode::Iterated => (SMode::Iterated, "iterated"),
                Mode::Monoidal => (SMode::Monoidal, "monoidal"),
                Mode::Plain => bail!("check-double-2segal needs --mode iterated or monoidal"),
            };
            let x = SBisimplicial::build(Arc::new(c), m, nmax, kmax, b)?;
            let r = check_double_2segal(&x)?;
            writeln!(out, "# check-double-2segal source={name} mode={label} nmax={nmax} kmax={kmax} budget={}", b.max_classes)?;
            writeln!(out, "{r}")?;
            Ok(r.passed())
        }
        Command::Hall { cat, budget } => {
            let (c, name) = cat.load()?;
            let t = hall_table(&c, Budget { max_classes: budget.budget })?;
            let laws = verify_laws(&t);
            writeln!(out, "# hall source={name}")?;
            out.push_str(&t.to_text());
            writeln!(out, "{t}")?;
            writeln!(out, "{laws}")?;
            Ok(laws.passed())
        }
        Command::Green { cat, budget } => {
            let (c, name) = cat.load()?;
            let r = green_compare(&c, Budget { max_classes: budget.budget })?;
            writeln!(out, "# green source={name}")?;
            writeln!(out, "{r}")?;
            Ok(r.routes_agree())
        }
        Command::Beta { input } => {
            let t = std::fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let u = UnstrBialgSimplex::parse(&t).with_context(|| format!("parsing {}", input.display()))?;
            let b = beta_simplex(&u)?;
            let report = b.validate()?;
            writeln!(out, "# beta source={} k={} s={}", input.display(), u.k(), u.s())?;
            let m = &b.groth.m;
            for (key, value) in b.cell.domain.elements().iter().zip(&b.cell.values) {
                let (mask, (x, y)) = *key;
                let (x, y) = (m.element(x), m.element(y));
                writeln!(out, "value mask={mask} from={},{} to={},{}", x.0, x.1, y.0, y.1)?;
                out.push_str(&text::print(value.as_ref()));
            }
            match (&report.not_cartesian, &report.not_vertical) {
                (None, None) => writeln!(out, "cell: pass")?,
                (Some(k), _) => writeln!(out, "cell: FAIL not cartesian at {k:?}")?,
                (None, Some((a, c))) => writeln!(out, "cell: FAIL not vertically constant from {a:?} to {c:?}")?,
            }
            writeln!(out, "verdict: {}", if report.passed() { "PASS" } else { "FAIL" })?;
            Ok(report.passed())
        }
        Command::Posets { phi } => {
            let phi = parse_phi(&phi)?;
            let g = groth_posets(&phi);
            writeln!(out, "# posets dims={:?} maps={:?}", phi.dims(), phi.maps())?;
            writeln!(out, "# M")?;
            out.push_str(&g.m.dump());
            writeln!(out, "# Omega")?;
            out.push_str(&g.omega.dump());
            writeln!(out, "# Wedge")?;
            out.push_str(&g.wedge_poset().dump());
            let mut cache = Default::default();
            let r = cone_report(&phi, &mut cache);
            let cone = cache.get(&phi).expect("cone functor cached by the report");
            let mut keys: Vec<_> = cone.regions.keys().copied().collect();
            keys.sort_unstable();
            for (x, y) in keys {
                let region: Vec<String> = cone.regions[&(x, y)].ones().map(|i| i.to_string()).collect();
                writeln!(out, "region {x} {y} = {{{}}}", region.join(","))?;
            }
            writeln!(out, "cone: {}", if r.all_pass() { "pass".to_string() } else { format!("FAIL {r:?}") })?;
            Ok(r.all_pass())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(cli.command, &mut out) {
        Ok(passed) => {
            print!("{out}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
