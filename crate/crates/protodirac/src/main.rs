use clap::{Parser, Subcommand, ValueEnum};
use protodirac::courant::{check_courant, derived_bracket_check, dorfman, metric, SplitSection};
use protodirac::dirac::{
    characteristic_via_volume_flow, clifford_matrix, scalar_probes, DiracOperator, SpinorMatrix,
};
use protodirac::exterior::{all_masks, Form, MultiVec};
use protodirac::io::{parse_poly, parse_section, InputDocument};
use protodirac::proto::{check_axioms, identity_suite, NamedCheck, ProtoData};
use protodirac::report::{Format, Report};
use protodirac::ring::{int, Poly};
use protodirac::{builtins, Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "protodirac",
    version,
    about = "Exact symbolic verifier for split proto-bialgebroid structure data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON structure document to verify
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    /// Name of a built-in example: abelian, sl2-proto, lu-sl2, euclidean-demo
    #[arg(long, global = true, value_name = "NAME")]
    builtin: Option<String>,

    /// Maximum polynomial degree of probe coefficients
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(0..=2))]
    probe_degree: u32,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,

    /// Also run seeded random probes where a command supports them
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the five structure axioms on probe sections
    Check,
    /// Print the characteristic scalar and the modular sections
    Invariant,
    /// Square the generating operator on probes and split it by degree shift
    DiracSquare,
    /// Multiply two section expressions with the Dorfman-type product
    Dorfman {
        /// Left factor, e.g. "e1 + 1/2*e^2"
        left: String,
        /// Right factor
        right: String,
    },
    /// Verify the Courant algebroid axioms of the product
    Courant,
    /// Compare the characteristic scalar before and after rescaling
    Rescale {
        /// Symmetric rescaling function, e.g. "q1*q2"
        u: String,
        /// Antisymmetric rescaling function
        w: String,
    },
    /// Cross-check the operator against exact spinor matrices (point base only)
    Oracle,
    /// Run the structural identity suite
    Identities,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.report {
        ReportFormat::Text => Format::Text,
        ReportFormat::Structured => Format::Structured,
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_input(cli: &Cli) -> Result<ProtoData> {
    match (&cli.input, &cli.builtin) {
        (Some(path), None) => {
            let doc = InputDocument::load(path).map_err(|e| match e {
                Error::Io(io) => Error::InvalidDocument(format!("{}: {io}", path.display())),
                other => other,
            })?;
            doc.to_proto()
        }
        (None, Some(name)) => builtins::by_name(name),
        _ => Err(Error::InvalidDocument(
            "provide exactly one of --input FILE or --builtin NAME".into(),
        )),
    }
}

fn run(cli: &Cli) -> Result<Report> {
    let p = load_input(cli)?;
    match &cli.command {
        Command::Check => {
            let mut report = Report::new("check");
            report.push_checks(&check_axioms(&p).axioms);
            Ok(report)
        }
        Command::Invariant => {
            let op = DiracOperator::new(&p);
            let mut report = Report::new("invariant");
            report.set_value("characteristic", op.characteristic());
            report.set_value("x0", op.x0());
            report.set_value("xi0", op.xi0());
            let via_flow = characteristic_via_volume_flow(&p);
            if &via_flow == op.characteristic() {
                report.push_check(&NamedCheck::pass("volume-flow-agreement"));
            } else {
                report.push_check(&NamedCheck::fail(
                    "volume-flow-agreement",
                    format!("flow route gives {via_flow}"),
                ));
            }
            Ok(report)
        }
        Command::DiracSquare => Ok(dirac_square(cli, &p)),
        Command::Dorfman { left, right } => {
            let l = parse_section(left, p.rank(), p.vars())?;
            let r = parse_section(right, p.rank(), p.vars())?;
            let mut report = Report::new("dorfman");
            report.set_value("product", dorfman(&p, &l, &r));
            report.set_value("pairing", metric(&l, &r));
            Ok(report)
        }
        Command::Courant => {
            let mut report = Report::new("courant");
            report.push_checks(&check_courant(&p));
            Ok(report)
        }
        Command::Rescale { u, w } => {
            let u = parse_poly(u, p.vars())?;
            let w = parse_poly(w, p.vars())?;
            let op = DiracOperator::new(&p);
            let diff = op.rescale_difference(&u, &w);
            let mut report = Report::new("rescale");
            report.set_value("characteristic", op.characteristic());
            report.set_value("difference", &diff);
            if diff.is_zero() {
                report.push_check(&NamedCheck::pass("rescale-invariance"));
            } else {
                report.push_check(&NamedCheck::fail(
                    "rescale-invariance",
                    format!("difference {diff}"),
                ));
            }
            Ok(report)
        }
        Command::Oracle => oracle(&p),
        Command::Identities => {
            let mut report = Report::new("identities");
            report.push_checks(&identity_suite(&p));
            Ok(report)
        }
    }
}

fn dirac_square(cli: &Cli, p: &ProtoData) -> Report {
    let op = DiracOperator::new(p);
    let mut report = Report::new("dirac-square");
    report.set_value("characteristic", op.characteristic());

    let mut probes: Vec<(String, MultiVec)> = Vec::new();
    for (lf, f) in scalar_probes(p.vars(), cli.probe_degree) {
        for mask in all_masks(p.rank()) {
            probes.push((
                format!("{lf} * {mask:#b}"),
                MultiVec::term(p.rank(), p.vars(), mask, f.clone()),
            ));
        }
    }
    if let Some(seed) = cli.seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let masks: Vec<u32> = all_masks(p.rank()).collect();
        for t in 0..8 {
            let mut v = MultiVec::zero(p.rank(), p.vars());
            for _ in 0..3 {
                let mask = masks[rng.gen_range(0..masks.len())];
                let mut c = Poly::constant(p.vars(), int(rng.gen_range(-3..4)));
                for alpha in 0..p.vars() {
                    if rng.gen_bool(0.5) {
                        c = &c * &Poly::var(p.vars(), alpha);
                    }
                }
                v = v.add(&MultiVec::term(p.rank(), p.vars(), mask, c));
            }
            probes.push((format!("seeded probe {t}"), v));
        }
    }

    let mut piece_failures: Vec<NamedCheck> = Vec::new();
    let mut scalar_check = NamedCheck::pass("square-scalar");
    for (label, v) in &probes {
        let dec = op.square_decomposition(v);
        for (name, piece) in dec.obstructions() {
            if !piece.is_zero() && piece_failures.iter().all(|c| c.name != name) {
                piece_failures.push(NamedCheck::fail(
                    name,
                    format!("probe {label}: value {piece}"),
                ));
            }
        }
        if scalar_check.holds {
            let r = op.apply(&op.apply(v)).sub(&v.scale(op.characteristic()));
            if !r.is_zero() {
                scalar_check =
                    NamedCheck::fail("square-scalar", format!("probe {label}: residual {r}"));
            }
        }
    }
    for name in [
        "raise-two",
        "lower-two",
        "raise-four",
        "lower-four",
        "degree-zero",
    ] {
        match piece_failures.iter().find(|c| c.name == name) {
            Some(c) => report.push_check(c),
            None => report.push_check(&NamedCheck::pass(name)),
        }
    }
    report.push_check(&scalar_check);
    report
}

fn oracle(p: &ProtoData) -> Result<Report> {
    let n = p.rank();
    let op = DiracOperator::new(p);
    let d = op.matrix()?;
    let mut report = Report::new("oracle");
    report.set_value("characteristic", op.characteristic());
    report.set_value("dimension", d.dim());

    let square = d.mul(&d);
    let expected = op
        .characteristic()
        .as_constant()
        .expect("point base scalar");
    match square.is_scalar() {
        Some(c) if c == expected => {
            report.push_check(&NamedCheck::pass("square-matrix-scalar"));
        }
        Some(c) => {
            report.push_check(&NamedCheck::fail(
                "square-matrix-scalar",
                format!("matrix square is {c} times identity, closed form gives {expected}"),
            ));
        }
        None => {
            report.push_check(&NamedCheck::fail(
                "square-matrix-scalar",
                "matrix square is not scalar".to_string(),
            ));
        }
    }

    let mut frames = Vec::new();
    for i in 0..n {
        frames.push((
            format!("e{}", i + 1),
            SplitSection::from_vec(MultiVec::gen(n, 0, i)),
        ));
        frames.push((
            format!("e^{}", i + 1),
            SplitSection::from_form(Form::gen(n, 0, i)),
        ));
    }
    let mut anti = NamedCheck::pass("clifford-anticommutators");
    'anti: for (l1, e1) in &frames {
        let c1 = clifford_matrix(e1)?;
        for (l2, e2) in &frames {
            let c2 = clifford_matrix(e2)?;
            let got = c1.mul(&c2).add(&c2.mul(&c1));
            let pair = metric(e1, e2).as_constant().expect("point base pairing");
            let want = SpinorMatrix::identity(d.dim()).scale(&(pair * int(2)));
            if got != want {
                anti = NamedCheck::fail(
                    "clifford-anticommutators",
                    format!("pair ({l1}, {l2}) deviates from the pairing"),
                );
                break 'anti;
            }
        }
    }
    report.push_check(&anti);

    report.push_check(&derived_bracket_check(p)?);
    Ok(report)
}
