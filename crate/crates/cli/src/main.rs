//! `fermap`: encode a MOLINT Hamiltonian as qubit operators, count gates,
//! inspect superfast stabilizers and scan Trotter term orderings.
//!
//! Exit codes: 0 success, 1 unreadable or malformed input, 2 invalid
//! arguments or data, 3 numerical failure.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fermap_core::circuit::{
    best_curve, compile_trotter_step, gate_count, magnitude_ordering, magnitude_record,
    ordering_scan, random_orderings, OrderingRecord, ScanSettings, PRNG_ALGORITHM,
};
use fermap_core::fermion::{build_molecular_hamiltonian, parse_integral_file};
use fermap_core::pauli::PauliOperator;
use fermap_core::simulator::{ground_state, stabilizer_projector, DenseOperator};
use fermap_core::transforms::{
    bksf_transform, bravyi_kitaev, build_mode_graph, jordan_wigner, stabilizers, vacuum_state,
    ModeGraph, StabilizerSet,
};
use fermap_core::{ErrorKind, DEFAULT_TOLERANCE};

#[derive(Parser)]
#[command(name = "fermap", version, about = "Fermion-to-qubit encodings of molecular Hamiltonians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the encoded Pauli operator.
    Transform(Common),
    /// Gate counts for one exponential of every term.
    Gatecount {
        #[command(flatten)]
        common: Common,
        /// Also write the one-step circuit (magnitude ordering, angle scale
        /// `--time`) to this file.
        #[arg(long, value_name = "PATH")]
        circuit: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        time: f64,
    },
    /// Interaction graph, loops, stabilizers and vacuum state of the
    /// superfast encoding.
    Stabilizers(Input),
    /// Lowest eigenvalue; restricted to the code space for bksf.
    Groundstate(Common),
    /// Trotter energy error of term orderings, written as CSV.
    TrotterScan(Scan),
}

#[derive(Args)]
struct Input {
    /// MOLINT integral file.
    input: PathBuf,
    /// Drop Pauli coefficients with magnitude at or below this.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value_t = Transform::Jw)]
    transform: Transform,
}

#[derive(Args)]
struct Scan {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1.0)]
    time: f64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=4))]
    order: u8,
    /// Step counts: `a..b` (inclusive), a comma list, or a single value.
    #[arg(long, default_value = "1..11", value_parser = parse_steps)]
    steps: StepList,
    #[arg(long, value_enum, default_value_t = Orderings::Both)]
    orderings: Orderings,
    /// Number of random orderings.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    count: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// CSV destination; standard output when absent.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Transform {
    Jw,
    Bk,
    Bksf,
}

impl Transform {
    fn name(self) -> &'static str {
        match self {
            Transform::Jw => "jw",
            Transform::Bk => "bk",
            Transform::Bksf => "bksf",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Orderings {
    Magnitude,
    Random,
    Both,
}

#[derive(Clone, Debug)]
struct StepList(Vec<usize>);

fn parse_steps(s: &str) -> Result<StepList, String> {
    let number = |t: &str| -> Result<usize, String> {
        let n: usize = t.trim().parse().map_err(|_| format!("invalid step count {t:?}"))?;
        if n == 0 {
            return Err("step counts must be positive".into());
        }
        Ok(n)
    };
    let steps = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (number(a)?, number(b)?);
        if a > b {
            return Err(format!("empty step range {s:?}"));
        }
        (a..=b).collect()
    } else {
        s.split(',').map(number).collect::<Result<Vec<_>, _>>()?
    };
    Ok(StepList(steps))
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Core(fermap_core::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Core(e) => match e.kind() {
                ErrorKind::Parse => 1,
                ErrorKind::Validation => 2,
                ErrorKind::Numeric => 3,
            },
        }
    }
}

impl From<fermap_core::Error> for Failure {
    fn from(e: fermap_core::Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(m) => f.write_str(m),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

/// An encoded Hamiltonian with, for bksf, its graph, stabilizers and the
/// code-space projector.
struct Encoded {
    op: PauliOperator,
    code: Option<(ModeGraph, StabilizerSet, DenseOperator)>,
}

impl Encoded {
    fn projector(&self) -> Option<&DenseOperator> {
        self.code.as_ref().map(|c| &c.2)
    }
}

fn load(input: &Input) -> Result<fermap_core::fermion::FermionOperator, Failure> {
    if !input.tol.is_finite() || input.tol < 0.0 {
        return Err(fermap_core::Error::Validation("--tol must be a non-negative number".into()).into());
    }
    let text = fs::read_to_string(&input.input).map_err(|e| io_failure(&input.input, e))?;
    let table = parse_integral_file(&text)?;
    Ok(build_molecular_hamiltonian(&table)?)
}

fn encode(common: &Common, with_code_space: bool) -> Result<Encoded, Failure> {
    let h = load(&common.input)?;
    let tol = common.input.tol;
    Ok(match common.transform {
        Transform::Jw => Encoded {
            op: jordan_wigner(&h).canonicalize(tol),
            code: None,
        },
        Transform::Bk => Encoded {
            op: bravyi_kitaev(&h).canonicalize(tol),
            code: None,
        },
        Transform::Bksf => {
            let g = build_mode_graph(&h)?;
            let op = bksf_transform(&h, &g)?.canonicalize(tol);
            let code = if with_code_space {
                let stabs = stabilizers(&g)?;
                let p = stabilizer_projector(&stabs.operators, g.qubits())?;
                Some((g, stabs, p))
            } else {
                None
            };
            Encoded { op, code }
        }
    })
}

fn basis_label(index: usize, qubits: usize) -> String {
    (0..qubits).rev().map(|q| if index >> q & 1 == 1 { '1' } else { '0' }).collect()
}

fn run(cli: Cli, out: &mut String) -> Result<(), Failure> {
    match cli.command {
        Command::Transform(common) => {
            let e = encode(&common, false)?;
            let _ = writeln!(out, "transform {} qubits {} terms {}", common.transform.name(), e.op.qubits(), e.op.len());
            out.push_str(&e.op.render());
        }
        Command::Gatecount { common, circuit, time } => {
            let e = encode(&common, false)?;
            let count = gate_count(&e.op);
            let terms = e.op.non_identity_terms().len();
            let _ = writeln!(out, "transform {}", common.transform.name());
            let _ = writeln!(out, "terms {terms}");
            let _ = writeln!(out, "h {}\nrx {}\nrz {}\ncnot {}", count.h, count.rx, count.rz, count.cnot);
            let _ = writeln!(out, "total {}", count.total());
            if let Some(path) = circuit {
                if !time.is_finite() {
                    return Err(fermap_core::Error::Validation("--time must be finite".into()).into());
                }
                let c = compile_trotter_step(&magnitude_ordering(&e.op), time)?;
                fs::write(&path, c.to_text()).map_err(|err| io_failure(&path, err))?;
            }
        }
        Command::Stabilizers(input) => {
            let common = Common {
                input,
                transform: Transform::Bksf,
            };
            let e = encode(&common, true)?;
            let (g, stabs, _) = e.code.as_ref().expect("bksf carries its code space");
            let _ = writeln!(out, "graph vertices {} edges {}", g.vertices(), g.edges().len());
            out.push_str(&g.dump());
            let _ = writeln!(out, "loops {}", stabs.len());
            for l in &stabs.loops {
                let _ = writeln!(out, "{l}");
            }
            let _ = writeln!(out, "stabilizers");
            out.push_str(&stabs.dump());
            let vac = vacuum_state(g, stabs)?;
            let _ = writeln!(out, "vacuum");
            for (k, a) in vac.iter().enumerate() {
                if a.norm() > 1e-12 {
                    let _ = writeln!(out, "{} {:.6}{:+.6}i", basis_label(k, g.qubits()), a.re, a.im);
                }
            }
        }
        Command::Groundstate(common) => {
            let e = encode(&common, true)?;
            let (energy, _) = ground_state(&e.op, e.projector())?;
            let _ = writeln!(out, "transform {}", common.transform.name());
            if let Some((g, stabs, _)) = &e.code {
                let _ = writeln!(out, "code space dimension {}", 1usize << (g.qubits() - stabs.len()));
            }
            let _ = writeln!(out, "ground_energy_hartree {energy:.10}");
        }
        Command::TrotterScan(scan) => trotter_scan(scan, out)?,
    }
    Ok(())
}

fn trotter_scan(scan: Scan, out: &mut String) -> Result<(), Failure> {
    if !(scan.time.is_finite() && scan.time > 0.0) {
        return Err(fermap_core::Error::Validation("--time must be positive".into()).into());
    }
    let e = encode(&scan.common, true)?;
    let (e0, ground) = ground_state(&e.op, e.projector())?;
    let mut orderings: Vec<OrderingRecord> = Vec::new();
    if scan.orderings != Orderings::Random {
        orderings.push(magnitude_record(&e.op));
    }
    if scan.orderings != Orderings::Magnitude {
        orderings.extend(random_orderings(&e.op, scan.count as usize, scan.seed));
    }
    let settings = ScanSettings {
        time: scan.time,
        order: scan.order,
        steps: scan.steps.0.clone(),
    };
    let records = ordering_scan(&e.op, &orderings, &settings, &ground)?;

    let mut csv = String::from("ordering_id,seed,order,steps,energy_hartree,abs_error_hartree\n");
    for r in &records {
        let seed = r.seed.map(|s| s.to_string()).unwrap_or_default();
        for s in &r.results {
            let _ = writeln!(csv, "{},{seed},{},{},{:.12},{:.6e}", r.id, scan.order, s.steps, s.energy, s.abs_error);
        }
    }
    let mut summary = String::new();
    let best = &records[0];
    let _ = writeln!(summary, "transform {}", scan.common.transform.name());
    let _ = writeln!(summary, "ground_energy_hartree {e0:.10}");
    let _ = writeln!(summary, "orderings {}", records.len());
    let _ = writeln!(summary, "prng {PRNG_ALGORITHM}");
    let _ = writeln!(summary, "seed {}", scan.seed);
    let _ = writeln!(
        summary,
        "best_ordering {} steps {} abs_error_hartree {:.6e}",
        best.id, best.results[0].steps, best.results[0].abs_error
    );
    let order: Vec<String> = best.terms(&e.op).iter().map(|t| t.string.letters()).collect();
    let _ = writeln!(summary, "best_ordering_terms {}", order.join(" "));
    for s in best_curve(&records) {
        let _ = writeln!(summary, "best_curve steps {} abs_error_hartree {:.6e}", s.steps, s.abs_error);
    }

    match &scan.output {
        Some(path) => {
            fs::write(path, csv).map_err(|err| io_failure(path, err))?;
            out.push_str(&summary);
        }
        None => {
            out.push_str(&csv);
            eprint!("{summary}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let mut out = String::new();
    match run(cli, &mut out) {
        Ok(()) => {
            let _ = io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_lists() {
        assert_eq!(parse_steps("1..4").unwrap().0, vec![1, 2, 3, 4]);
        assert_eq!(parse_steps("2,8, 32").unwrap().0, vec![2, 8, 32]);
        assert_eq!(parse_steps("5").unwrap().0, vec![5]);
        assert!(parse_steps("0..3").is_err());
        assert!(parse_steps("4..2").is_err());
        assert!(parse_steps("a").is_err());
    }

    #[test]
    fn exit_code_per_error_kind() {
        use fermap_core::Error;
        let parse = Failure::Core(Error::Parse { line: 1, message: String::new() });
        assert_eq!(parse.code(), 1);
        assert_eq!(Failure::Input(String::new()).code(), 1);
        assert_eq!(Failure::Core(Error::Graph(String::new())).code(), 2);
        assert_eq!(Failure::Core(Error::Numeric(String::new())).code(), 3);
    }

    #[test]
    fn basis_labels_put_the_last_qubit_first() {
        assert_eq!(basis_label(1, 4), "0001");
        assert_eq!(basis_label(12, 4), "1100");
    }
}
