//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a lemma check failed, 2 parse or input error,
//! 3 size cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::dual::{DualLattice, DEFAULT_MAX_MEMBERS};
use crate::error::Error;
use crate::ideals::prime_principal_pairs;
use crate::io::{
    dual_graph, index_key, parse_poset, poset_graph, second_dual_graph, DotGraph, PosetDocument,
    Report,
};
use crate::poset::{FinitePoset, MAX_ELEMENTS};
use crate::second_dual::{
    enumerate_second_dual_bruteforce, evaluation_hom, hom_element, BoundedHom,
    DEFAULT_MAX_BRUTEFORCE_MEMBERS,
};
use crate::verify::{exit_code_for, verify_lattice, Fault, VerifyOptions};
use crate::Limits;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "poset-dual",
    version,
    about = "Duals and second duals of finite posets"
)]
struct Cli {
    /// Cap on the number of monotone maps enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_MEMBERS)]
    max_members: usize,

    /// Seed for `random`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Also write a Graphviz Hasse diagram to this path.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,

    /// Enumerate the second dual by testing every candidate map.
    #[arg(long, global = true)]
    brute_force: bool,

    /// Annotate dual-lattice nodes equal to some lambda_p / upsilon_p.
    #[arg(long, global = true)]
    label_embeddings: bool,

    #[arg(long, global = true, hide = true)]
    inject_fault: Option<FaultArg>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FaultArg {
    Lambda,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the monotone maps P -> 2.
    Dual { file: PathBuf },
    /// Meet- and join-irreducibles of the dual with their witnesses.
    Irreducibles { file: PathBuf },
    /// Complementary principal ideal/filter pairs of the dual.
    Primes { file: PathBuf },
    /// Elements of the second dual.
    SecondDual { file: PathBuf },
    /// Run every check and print the verification report.
    Verify { file: PathBuf },
    /// Covering pairs of the poset.
    Hasse { file: PathBuf },
    /// Emit a random poset file.
    Random {
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value = "random")]
        name: String,
    },
}

/// Failure carrying its exit code and a message for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code_for(&e),
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let target: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(path: &Path) -> Result<PosetDocument, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    parse_poset(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write_dot(path: Option<&Path>, graph: impl FnOnce() -> DotGraph) -> Result<(), Failure> {
    if let Some(path) = path {
        std::fs::write(path, graph().to_string())
            .map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| input_error(format!("cannot write output: {e}")))
}

fn poset_section(report: &mut Report, doc: &PosetDocument) {
    report
        .section("poset")
        .set("name", &doc.name)
        .set("size", doc.elements.len());
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let limits = Limits {
        max_elements: MAX_ELEMENTS,
        max_members: cli.max_members,
        max_bruteforce_members: DEFAULT_MAX_BRUTEFORCE_MEMBERS,
    };
    let dot = cli.dot.as_deref();

    let file = match &cli.command {
        Command::Random { n, density, name } => {
            if !(0.0..=1.0).contains(density) {
                return Err(input_error(format!("density {density} is outside [0, 1]")));
            }
            if !name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_') || name.is_empty() {
                return Err(input_error(format!("invalid poset name `{name}`")));
            }
            let poset = FinitePoset::random(*n, cli.seed, *density)?;
            write_dot(dot, || poset_graph(name, &poset))?;
            emit(out, &PosetDocument::from_poset(name, &poset).to_string())?;
            return Ok(EXIT_OK);
        }
        Command::Dual { file }
        | Command::Irreducibles { file }
        | Command::Primes { file }
        | Command::SecondDual { file }
        | Command::Verify { file }
        | Command::Hasse { file } => file,
    };

    let doc = load(file)?;
    let poset = doc.to_poset(limits.max_elements)?;
    let name = doc.name.as_str();
    let mut report = Report::new();
    poset_section(&mut report, &doc);

    if let Command::Hasse { .. } = cli.command {
        let covers = poset.transitive_reduction();
        let section = report.section("hasse");
        section.set("count", covers.len());
        let list = section.section("covers");
        for (i, (a, b)) in covers.named(&poset).into_iter().enumerate() {
            list.set(index_key(i, covers.len()), format!("{a} < {b}"));
        }
        write_dot(dot, || poset_graph(name, &poset))?;
        emit(out, &report.to_string())?;
        return Ok(EXIT_OK);
    }

    let lattice = DualLattice::enumerate_with_limit(poset, limits.max_members)?;
    let base = lattice.base();
    let dual_name = format!("{name}_dual");
    let mut code = EXIT_OK;

    match &cli.command {
        Command::Dual { .. } => {
            let section = report.section("dual");
            section.set("cardinality", lattice.len());
            let list = section.section("members");
            for (i, x) in lattice.members().enumerate() {
                list.set(index_key(i, lattice.len()), lattice.format(&x));
            }
            write_dot(dot, || {
                dual_graph(&dual_name, &lattice, cli.label_embeddings)
            })?;
        }
        Command::Irreducibles { .. } => {
            let irr = lattice.irreducibles()?;
            let section = report.section("irreducibles");
            section
                .set("meet_count", irr.meet_irreducibles.len())
                .set("join_count", irr.join_irreducibles.len());
            let meet = section.section("meet");
            for (w, &p) in &irr.lambda_witness {
                meet.set(
                    base.name(p),
                    format!("{} = lambda_{}", lattice.format(w), base.name(p)),
                );
            }
            let join = section.section("join");
            for (v, &p) in &irr.upsilon_witness {
                join.set(
                    base.name(p),
                    format!("{} = upsilon_{}", lattice.format(v), base.name(p)),
                );
            }
            write_dot(dot, || {
                dual_graph(&dual_name, &lattice, cli.label_embeddings)
            })?;
        }
        Command::Primes { .. } => {
            let primes = prime_principal_pairs(&lattice)?;
            let section = report.section("prime_pairs");
            section.set("count", primes.pairs.len());
            let list = section.section("pairs");
            for pair in &primes.pairs {
                list.set(
                    base.name(pair.element),
                    format!(
                        "ideal [0, {}] filter [{}, 1]",
                        lattice.format(&pair.ideal_top),
                        lattice.format(&pair.filter_bottom)
                    ),
                );
            }
            write_dot(dot, || {
                dual_graph(&dual_name, &lattice, cli.label_embeddings)
            })?;
        }
        Command::SecondDual { .. } => {
            let (method, homs): (&str, Vec<BoundedHom>) = if cli.brute_force {
                let homs =
                    enumerate_second_dual_bruteforce(&lattice, limits.max_bruteforce_members)?;
                ("brute_force", homs)
            } else {
                let mut homs = (0..base.len())
                    .map(|p| evaluation_hom(&lattice, p))
                    .collect::<Result<Vec<_>, _>>()?;
                homs.sort();
                ("evaluation", homs)
            };
            let section = report.section("second_dual");
            section.set("method", method).set("size", homs.len());
            let list = section.section("homs");
            for (i, h) in homs.iter().enumerate() {
                let element = hom_element(&lattice, h)?;
                list.set(
                    index_key(i, homs.len()),
                    format!(
                        "element {} kernel_top {}",
                        base.name(element),
                        lattice.format(&h.kernel_top())
                    ),
                );
            }
            write_dot(dot, || {
                second_dual_graph(&format!("{name}_second_dual"), &lattice, &homs)
            })?;
        }
        Command::Verify { .. } => {
            let options = VerifyOptions {
                brute_force: cli.brute_force,
                limits,
                fault: cli
                    .inject_fault
                    .map(|FaultArg::Lambda| Fault::CorruptLambda),
            };
            let verification = verify_lattice(name, &lattice, &options)?;
            report = verification.to_report();
            if !verification.passed() {
                code = EXIT_CHECK_FAILED;
            }
            write_dot(dot, || {
                dual_graph(&dual_name, &lattice, cli.label_embeddings)
            })?;
        }
        Command::Hasse { .. } | Command::Random { .. } => unreachable!("handled above"),
    }

    emit(out, &report.to_string())?;
    Ok(code)
}
