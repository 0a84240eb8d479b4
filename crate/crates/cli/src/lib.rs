//! Argument handling and subcommands for the `metafib` binary.
//!
//! Exit codes: 0 success, 1 verification or comparison failure, 2 usage
//! error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use metafib::bfile::{self, BFileRecord};
use metafib::codes::{self, CodeError};
use metafib::oeis::{self, Comparison, OeisRole, RoleMap, SequenceKind};
use metafib::series::{self, TruncatedSeries};
use metafib::treemodel;
use metafib::verify::{self, Depth};
use metafib::{SequenceTable, Shift};

/// Largest index accepted by `seq`.
pub const MAX_SEQ_INDEX: u64 = 100_000_000;
/// Largest order accepted by `gf`.
pub const MAX_GF_ORDER: usize = 1 << 16;

#[derive(Debug, Parser)]
#[command(
    name = "metafib",
    version,
    about = "Shifted meta-Fibonacci sequences and extremal compact codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a_s, d_s or p_s over an index range.
    Seq(SeqArgs),
    /// Print generating-function coefficients.
    Gf(GfArgs),
    /// Compact-code tools.
    Codes {
        #[command(subcommand)]
        sub: CodesCommand,
    },
    /// Run every cross-module identity and report PASS/FAIL.
    Verify {
        #[arg(long, value_enum, default_value_t = DepthArg::Quick)]
        depth: DepthArg,
    },
    /// Compare local sequences with OEIS b-files.
    OeisCheck(OeisArgs),
    /// Draw the first labels of the forest.
    Render {
        #[arg(long, default_value_t = 0)]
        s: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 80)]
        width: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    A,
    D,
    P,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Tsv,
    Bfile,
}

#[derive(Debug, Args)]
struct SeqArgs {
    #[arg(value_enum)]
    which: Which,
    #[arg(long, default_value_t = 0)]
    s: u64,
    /// First index; defaults to 1.
    #[arg(long)]
    from: Option<u64>,
    #[arg(long)]
    to: u64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GfWhich {
    Ruler,
    #[value(name = "D")]
    D,
    #[value(name = "A")]
    A,
    #[value(name = "P")]
    P,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GfForm {
    Closed,
    FromD,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GfFormat {
    Plain,
    Tsv,
}

#[derive(Debug, Args)]
struct GfArgs {
    #[arg(value_enum)]
    which: GfWhich,
    #[arg(long, default_value_t = 0)]
    s: u64,
    #[arg(long)]
    order: usize,
    #[arg(long, value_enum, default_value_t = GfFormat::Plain)]
    format: GfFormat,
    /// How to compute `A`; defaults to the closed form when s >= 1.
    #[arg(long, value_enum)]
    form: Option<GfForm>,
}

#[derive(Debug, Subcommand)]
enum CodesCommand {
    /// Greedy optimal code with n leaves and height h.
    Greedy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: u32,
    },
    /// Every code with n leaves, optionally of height h.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: Option<u32>,
    },
    /// TSV table of M(n, h) for 2 <= n <= nmax, 1 <= h < nmax.
    Mtable {
        #[arg(long)]
        nmax: usize,
    },
    /// Most bottom-level leaf pairs over codes with n leaves, n = 2..=nmax.
    Amax {
        #[arg(long)]
        nmax: usize,
    },
    /// M(n + h, h) at the smallest admissible h, n = 1..=nmax.
    Bseq {
        #[arg(long)]
        nmax: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DepthArg {
    Quick,
    Full,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    A,
    D,
    P,
    Ruler,
}

#[derive(Debug, Args)]
struct OeisArgs {
    /// TOML role map.
    #[arg(long)]
    roles: Option<PathBuf>,
    /// Sequence id looked up in the role map.
    #[arg(long, requires = "roles")]
    id: Option<String>,
    #[arg(long, conflicts_with = "fixtures")]
    bfile: Option<PathBuf>,
    /// Directory holding `bNNNNNN.txt` files for every id in the role map.
    #[arg(long, requires = "roles")]
    fixtures: Option<PathBuf>,
    /// Local sequence, when no role map entry is used.
    #[arg(long, value_enum, conflicts_with = "id")]
    sequence: Option<KindArg>,
    #[arg(long, default_value_t = 0)]
    s: u64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    index_offset: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    value_offset: i64,
}

enum Failure {
    Usage(String),
    Check(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<CodeError> for Failure {
    fn from(e: CodeError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let result = match cli.command {
        Command::Seq(a) => cmd_seq(&a, out),
        Command::Gf(a) => cmd_gf(&a, out, err),
        Command::Codes { sub } => cmd_codes(&sub, out),
        Command::Verify { depth } => cmd_verify(depth, out),
        Command::OeisCheck(a) => cmd_oeis_check(&a, out, err),
        Command::Render { s, n, width } => treemodel::render(Shift(s), n, width)
            .map_err(|e| Failure::Usage(e.to_string()))
            .and_then(|text| Ok(out.write_all(text.as_bytes())?)),
    };
    let _ = out.flush();
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "{msg}");
            1
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn cmd_seq(a: &SeqArgs, out: &mut dyn Write) -> Outcome {
    let lowest = match a.which {
        Which::A => 0,
        Which::D | Which::P => 1,
    };
    let from = a.from.unwrap_or(1);
    if from < lowest {
        return usage(format!("--from must be at least {lowest}"));
    }
    if from > a.to {
        return usage("--from must not exceed --to");
    }
    if a.to > MAX_SEQ_INDEX {
        return usage(format!("--to must not exceed {MAX_SEQ_INDEX}"));
    }
    let mut table = SequenceTable::new(Shift(a.s));
    let mut w = io::BufWriter::new(out);
    if a.format == Format::Bfile {
        let name = match a.which {
            Which::A => "a",
            Which::D => "d",
            Which::P => "p",
        };
        writeln!(w, "# {name}_{}(n), n = {from}..{}", a.s, a.to)?;
    }
    for n in from..=a.to {
        let v = match a.which {
            Which::A => table.a(n),
            Which::D => u64::from(table.d(n)),
            Which::P => table.p(n),
        };
        match a.format {
            Format::Plain => writeln!(w, "{v}")?,
            Format::Tsv => writeln!(w, "{n}\t{v}")?,
            Format::Bfile => writeln!(w, "{n} {v}")?,
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_gf(a: &GfArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    if a.order > MAX_GF_ORDER {
        return usage(format!("--order must not exceed {MAX_GF_ORDER}"));
    }
    let s = Shift(a.s);
    if a.form.is_some() && !matches!(a.which, GfWhich::A) {
        return usage("--form applies only to A");
    }
    let series: TruncatedSeries = match a.which {
        GfWhich::Ruler => series::gf_ruler(a.order),
        GfWhich::D => series::gf_ds_sum(s, a.order),
        GfWhich::P => series::gf_ps(s, a.order),
        GfWhich::A => match (a.form, a.s) {
            (Some(GfForm::Closed), 0) => {
                return usage("the closed form for A needs s >= 1; use --form from-d");
            }
            (None, 0) => {
                writeln!(
                    err,
                    "note: s = 0 has no closed form; using prefix sums of D"
                )?;
                series::gf_a_from_d(s, a.order)
            }
            (Some(GfForm::FromD), _) => series::gf_a_from_d(s, a.order),
            _ => series::gf_as(s, a.order).map_err(|e| Failure::Usage(e.to_string()))?,
        },
    };
    let mut w = io::BufWriter::new(out);
    for (k, c) in series.coeffs().iter().enumerate() {
        match a.format {
            GfFormat::Plain => writeln!(w, "{k} {c}")?,
            GfFormat::Tsv => writeln!(w, "{k}\t{c}")?,
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_codes(sub: &CodesCommand, out: &mut dyn Write) -> Outcome {
    let mut w = io::BufWriter::new(out);
    match *sub {
        CodesCommand::Greedy { n, h } => {
            writeln!(w, "{}", codes::greedy_tree(n, h)?)?;
        }
        CodesCommand::Enumerate { n, h } => {
            for code in codes::enumerate_codes(n, h)? {
                writeln!(w, "{code}")?;
            }
        }
        CodesCommand::Mtable { nmax } => {
            if nmax < 2 {
                return usage("--nmax must be at least 2");
            }
            if nmax > 4096 {
                return usage("--nmax must not exceed 4096");
            }
            let hmax = nmax as u32 - 1;
            write!(w, "n")?;
            for h in 1..=hmax {
                write!(w, "\t{h}")?;
            }
            writeln!(w)?;
            for n in 2..=nmax {
                write!(w, "{n}")?;
                for h in 1..=hmax {
                    write!(w, "\t{}", codes::m_value(n, h))?;
                }
                writeln!(w)?;
            }
        }
        CodesCommand::Amax { nmax } => {
            if nmax < 2 {
                return usage("--nmax must be at least 2");
            }
            for n in 2..=nmax {
                writeln!(w, "{n} {}", codes::a_max(n))?;
            }
        }
        CodesCommand::Bseq { nmax } => {
            if nmax < 1 {
                return usage("--nmax must be at least 1");
            }
            for n in 1..=nmax {
                writeln!(w, "{n} {}", codes::b_seq(n))?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_verify(depth: DepthArg, out: &mut dyn Write) -> Outcome {
    let depth = match depth {
        DepthArg::Quick => Depth::Quick,
        DepthArg::Full => Depth::Full,
    };
    let outcomes = verify::run(depth);
    for o in &outcomes {
        writeln!(out, "{}", o.line())?;
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    if failed == 0 {
        writeln!(out, "all {} identities hold", outcomes.len())?;
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{failed} of {} identities failed",
            outcomes.len()
        )))
    }
}

fn read_bfile(path: &Path) -> Result<Vec<BFileRecord>, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    bfile::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_roles(path: &Path) -> Result<RoleMap, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    RoleMap::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Prints the outcome line; returns false on a mismatch.
fn report(
    label: &str,
    cmp: &Comparison,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<bool> {
    if cmp.compared == 0 {
        writeln!(err, "warning: {label}: no overlapping terms")?;
    }
    match cmp.first_mismatch {
        None => {
            writeln!(out, "PASS  {label}: {} terms match", cmp.compared)?;
            Ok(true)
        }
        Some(m) => {
            writeln!(
                out,
                "FAIL  {label}: first difference at n = {}: expected {}, found {}",
                m.index, m.expected, m.found
            )?;
            Ok(false)
        }
    }
}

fn cmd_oeis_check(a: &OeisArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let roles = a.roles.as_deref().map(read_roles).transpose()?;
    let mut all_ok = true;

    if let Some(dir) = &a.fixtures {
        let roles = roles.as_ref().expect("clap enforces --roles");
        let mut loaded = std::collections::BTreeMap::new();
        for (id, role) in &roles.sequences {
            let path = dir.join(oeis::bfile_name(id));
            if !path.exists() {
                writeln!(err, "warning: {id}: {} not found", path.display())?;
                continue;
            }
            let records = read_bfile(&path)?;
            all_ok &= report(id, &oeis::compare(role, &records), out, err)?;
            loaded.insert(id.clone(), records);
        }
        for ident in &roles.identities {
            let (Some(l), Some(r)) = (loaded.get(&ident.left), loaded.get(&ident.right)) else {
                writeln!(
                    err,
                    "warning: {} = {} + {}: fixture missing",
                    ident.left, ident.right, ident.delta
                )?;
                continue;
            };
            let label = format!("{} = {} + {}", ident.left, ident.right, ident.delta);
            all_ok &= report(&label, &oeis::compare_identity(l, r, ident.delta), out, err)?;
        }
    } else {
        let Some(path) = &a.bfile else {
            return usage("give --bfile or --fixtures");
        };
        let (label, role) = match (&a.id, a.sequence) {
            (Some(id), _) => {
                let roles = roles.as_ref().expect("clap enforces --roles");
                match roles.role(id) {
                    Some(r) => (id.clone(), *r),
                    None => return usage(format!("{id} is not in the role map")),
                }
            }
            (None, Some(kind)) => {
                let sequence = match kind {
                    KindArg::A => SequenceKind::A,
                    KindArg::D => SequenceKind::D,
                    KindArg::P => SequenceKind::P,
                    KindArg::Ruler => SequenceKind::Ruler,
                };
                let role = OeisRole {
                    sequence,
                    shift: a.s,
                    index_offset: a.index_offset,
                    value_offset: a.value_offset,
                };
                (path.display().to_string(), role)
            }
            (None, None) => return usage("give --id or --sequence"),
        };
        let records = read_bfile(path)?;
        all_ok &= report(&label, &oeis::compare(&role, &records), out, err)?;
    }

    if all_ok {
        Ok(())
    } else {
        Err(Failure::Check("mismatch against b-file".to_string()))
    }
}
