//! Command-line driver: builds lattices, compiles pump spectra, runs the
//! Gaussian simulations and writes deterministic report files.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cvcomb_core::decimal::sig12;
use cvcomb_core::gaussian::{
    cut_nodes, effective_graph, ideal_graph_delete, max_entry_error, measure_q, nullifier_variances,
    reduce_and_cut_gaussian, reduce_and_cut_ideal, write_effective_graph, write_nullifier_report, GaussianError,
    IdealCutReport,
};
use cvcomb_core::hankel::{
    compile_pump, scaling_report, write_pump_file, write_scaling_table, write_shorthand, HankelError,
};
use cvcomb_core::lattice::{
    bicoloring, build_ring_supergraph, build_torus_supergraph, check_orthogonal, check_renumber_size, expand,
    renumber_to_block_hankel, write_phys_dot, write_phys_triplets, write_super_triplets, LatticeError, PhysAdjacency,
    SuperAdjacency,
};
use cvcomb_core::par::{map_slice, Execution};
use cvcomb_core::verify::{lattice_state, verify_all, VerifyConfig};
use cvcomb_core::Error as CoreError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_VALIDATION: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "cvcomb",
    version,
    about = "Build, check and simulate matrix-weighted cluster-state lattices for a frequency-comb OPO"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Directory for the generated files (created if missing).
    #[arg(long, default_value = ".")]
    pub output_dir: PathBuf,
    /// Which files to write.
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "triplet,dot,pumpfile,report"
    )]
    pub formats: Vec<Format>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Triplet,
    Dot,
    Pumpfile,
    Report,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the twisted-torus lattice of M x M macronodes (4M² modes) and
    /// check it: exact A² = 1, bipartiteness, degree census.
    Lattice {
        /// Lattice side; even, at least 4.
        #[arg(long = "M")]
        m: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Build the crown graph on a ring of macronodes (two modes each) and
    /// check it like `lattice`.
    Ring {
        /// Number of macronodes; even, at least 4.
        #[arg(long)]
        n_macro: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Relabel the lattice into 2x2 block-Hankel form and compile one pump
    /// line per nonzero skew-diagonal block.
    Pump {
        /// Lattice side; even, at least 6.
        #[arg(long = "M")]
        m: usize,
        /// Comb frequency of qumode block 0, for absolute pump frequencies.
        #[arg(long, requires = "fsr")]
        base_freq: Option<f64>,
        /// Free spectral range of the comb.
        #[arg(long, requires = "base_freq")]
        fsr: Option<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// Squeeze vacuum under the lattice Hamiltonian for each r and report the
    /// nullifier variances of p − Aq.
    Simulate {
        /// Lattice side; even, at least 4.
        #[arg(long = "M")]
        m: usize,
        /// Squeezing values, comma separated.
        #[arg(long = "r", allow_negative_numbers = true, value_delimiter = ',', required = true)]
        r: Vec<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// Measure q on three of the four layers, then cut the torus open along
    /// two meridians; report residuals and the effective graph.
    Reduce {
        /// Lattice side; even, at least 4.
        #[arg(long = "M")]
        m: usize,
        /// Squeezing values, comma separated.
        #[arg(long = "r", allow_negative_numbers = true, value_delimiter = ',', required = true)]
        r: Vec<f64>,
        /// Physical layer that is kept (0..3).
        #[arg(long, default_value_t = 0)]
        keep_layer: usize,
        /// Chart cell the two meridians pass through, as `x,y`.
        #[arg(long, value_parser = parse_pair, default_value = "0,0")]
        meridians: (usize, usize),
        #[command(flatten)]
        out: Output,
    },
    /// Tabulate mode, edge and pump-line counts for several lattice sizes.
    Scaling {
        /// Lattice sides, comma separated.
        #[arg(long = "M", value_delimiter = ',', required = true)]
        m: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Run the full acceptance suite and print one PASS/FAIL line per criterion.
    Verify {
        /// Lattice side; even, at least 6.
        #[arg(long = "M", default_value_t = 6)]
        m: usize,
        /// Squeezing values for the reduction and cut checks.
        #[arg(
            long = "r",
            allow_negative_numbers = true,
            value_delimiter = ',',
            default_value = "1,2"
        )]
        r: Vec<f64>,
        #[command(flatten)]
        out: Output,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got `{s}`"))?;
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("`{v}`: {e}"));
    Ok((parse(x)?, parse(y)?))
}

/// A failed run: exit code plus the module and variant that caused it.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: u8,
    pub module: &'static str,
    pub cause: String,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let message = self
            .message
            .replace('\\', "\\\\")
            .replace('"', "\\\"")
            .replace('\n', " ");
        write!(
            f,
            "error code={} module={} cause={} message=\"{}\"",
            self.code, self.module, self.cause, message
        )
    }
}

/// Name of the enum variant, read off the `Debug` form.
fn variant<E: fmt::Debug>(e: &E) -> String {
    format!("{e:?}")
        .chars()
        .take_while(|c| c.is_alphanumeric() || *c == '_')
        .collect()
}

fn lattice_failure(e: &LatticeError) -> Failure {
    let code = match e {
        LatticeError::TorusSize(_) | LatticeError::RenumberSize { .. } | LatticeError::RingSize(_) => EXIT_CONFIG,
        _ => EXIT_INTERNAL,
    };
    Failure {
        code,
        module: "lattice",
        cause: variant(e),
        message: e.to_string(),
    }
}

fn hankel_failure(e: &HankelError) -> Failure {
    match e {
        HankelError::Lattice(inner) => lattice_failure(inner),
        HankelError::ScalingSize(_) => Failure {
            code: EXIT_CONFIG,
            module: "hankel",
            cause: variant(e),
            message: e.to_string(),
        },
        _ => Failure {
            code: EXIT_INTERNAL,
            module: "hankel",
            cause: variant(e),
            message: e.to_string(),
        },
    }
}

fn gaussian_failure(e: &GaussianError) -> Failure {
    let code = match e {
        GaussianError::Lattice(inner) => return lattice_failure(inner),
        GaussianError::BadSqueeze(_) | GaussianError::Layer { .. } | GaussianError::Meridian(..) => EXIT_CONFIG,
        _ => EXIT_INTERNAL,
    };
    Failure {
        code,
        module: "gaussian",
        cause: variant(e),
        message: e.to_string(),
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match &e {
            CoreError::Lattice(x) => lattice_failure(x),
            CoreError::Hankel(x) => hankel_failure(x),
            CoreError::Gaussian(x) => gaussian_failure(x),
        }
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        lattice_failure(&e)
    }
}

impl From<HankelError> for Failure {
    fn from(e: HankelError) -> Self {
        hankel_failure(&e)
    }
}

impl From<GaussianError> for Failure {
    fn from(e: GaussianError) -> Self {
        gaussian_failure(&e)
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        module: "cli",
        cause: "Io".into(),
        message: format!("{}: {e}", path.display()),
    }
}

/// What a successful (or validation-failed) run produced.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// Files written, in write order.
    pub files: Vec<PathBuf>,
    /// Text echoed to stdout.
    pub stdout: String,
    /// False when a check ran to completion and failed (exit 3).
    pub valid: bool,
}

/// Files are collected first and written only once all work has finished.
struct Pending {
    out: Output,
    files: Vec<(String, Format, String)>,
}

impl Pending {
    fn new(out: &Output) -> Self {
        Pending {
            out: out.clone(),
            files: Vec::new(),
        }
    }

    fn add(&mut self, name: String, format: Format, body: String) {
        if self.out.formats.contains(&format) {
            self.files.push((name, format, body));
        }
    }

    fn flush(self) -> Result<Vec<PathBuf>, Failure> {
        let dir = &self.out.output_dir;
        fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
        let mut written = Vec::with_capacity(self.files.len());
        for (name, _, body) in self.files {
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| io_failure(&path, e))?;
            written.push(path);
        }
        Ok(written)
    }
}

fn check_squeezes(rs: &[f64]) -> Result<(), Failure> {
    match rs.iter().find(|r| !r.is_finite() || **r < 0.0) {
        Some(&r) => Err(GaussianError::BadSqueeze(r).into()),
        None => Ok(()),
    }
}

/// Rust's shortest round-trip form; stable and free of trailing zeros.
fn r_tag(r: f64) -> String {
    format!("{r}")
}

fn degree_census(a: &PhysAdjacency) -> BTreeMap<usize, usize> {
    let mut census = BTreeMap::new();
    for i in 0..a.n() {
        *census.entry(a.degree(i)).or_insert(0) += 1;
    }
    census
}

fn census_text(census: &BTreeMap<usize, usize>) -> String {
    census
        .iter()
        .map(|(d, c)| format!("{d}:{c}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn regular_degree(census: &BTreeMap<usize, usize>) -> String {
    match census.keys().collect::<Vec<_>>().as_slice() {
        [d] => d.to_string(),
        _ => "irregular".to_string(),
    }
}

/// Validation report for a supergraph and its expansion; the bool is whether
/// every check held. `degree` counts macronode neighbours.
fn validation_report(label: &str, s: &SuperAdjacency, a: &PhysAdjacency) -> (String, bool) {
    let orth = check_orthogonal(a);
    let bicolorable = bicoloring(a).is_ok();
    let mut super_census = BTreeMap::new();
    for i in 0..s.n_macro() {
        *super_census.entry(s.degree(i)).or_insert(0) += 1;
    }
    let degree = regular_degree(&super_census);
    let census = degree_census(a);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{label} orthogonal={} bicolorable={bicolorable} degree={degree}",
        orth.is_orthogonal
    );
    let _ = writeln!(
        out,
        "macronodes={} superedges={} nodes={} edges={} physical_degree={} self_loops={}",
        s.n_macro(),
        s.superedge_count(),
        a.n(),
        a.edge_count(),
        regular_degree(&census),
        orth.has_self_loops
    );
    let witness = orth
        .witness_pair
        .map_or("none".to_string(), |(i, j)| format!("{i},{j}"));
    let _ = writeln!(out, "worst_deviation={} witness={witness}", orth.worst_deviation);
    let _ = writeln!(
        out,
        "degree_census={} physical_degree_census={}",
        census_text(&super_census),
        census_text(&census)
    );
    (out, orth.is_orthogonal && bicolorable && !orth.has_self_loops)
}

fn graph_outputs(stem: &str, label: &str, s: &SuperAdjacency, out: &Output) -> Result<Outcome, Failure> {
    let a = expand(s);
    let (report, valid) = validation_report(label, s, &a);
    let mut pending = Pending::new(out);
    pending.add(format!("{stem}.triplets"), Format::Triplet, write_phys_triplets(&a));
    pending.add(format!("{stem}.super"), Format::Triplet, write_super_triplets(s));
    pending.add(format!("{stem}.dot"), Format::Dot, write_phys_dot(&a));
    pending.add(format!("{stem}.report"), Format::Report, report.clone());
    Ok(Outcome {
        files: pending.flush()?,
        stdout: report,
        valid,
    })
}

fn pump(m: usize, absolute: Option<(f64, f64)>, out: &Output) -> Result<Outcome, Failure> {
    check_renumber_size(m)?;
    let a = expand(&build_torus_supergraph(m)?);
    let renumbered = renumber_to_block_hankel(&a, m)?;
    let spectrum = compile_pump(&renumbered.shorthand)?;
    let rep = &renumbered.report;
    let mut report = String::new();
    let _ = writeln!(
        report,
        "M={m} pump_lines={} bandwidth_span={} n_qumodes={}",
        spectrum.line_count(),
        spectrum.bandwidth_span(),
        spectrum.n_qumodes
    );
    let _ = writeln!(
        report,
        "observed_s={} observed_t={} published_s={} published_t={} positions_match={} shape_match={} patterns_match={}",
        rep.observed_run_lengths.0,
        rep.observed_run_lengths.1,
        rep.printed_run_lengths.0,
        rep.printed_run_lengths.1,
        rep.matches_printed_positions,
        rep.matches_layout_shape,
        rep.matches_printed_patterns
    );
    let scalar = rep.block_scalar.map_or("none".to_string(), |q| q.to_string());
    let _ = writeln!(
        report,
        "block_scalar={scalar} negative_blocks={:?}",
        rep.negative_positions
    );
    for d in &rep.discrepancies {
        let _ = writeln!(report, "discrepancy {d}");
    }
    if let Some((base, fsr)) = absolute {
        // a pump photon at skew-diagonal d feeds qumode blocks m, n with m + n = d
        for line in &spectrum.lines {
            let f = 2.0 * base + line.frequency_index as f64 * fsr;
            let _ = writeln!(report, "d={} pump_frequency={}", line.frequency_index, sig12(f));
        }
    }
    let mut pending = Pending::new(out);
    pending.add(
        format!("pump_M{m}.shorthand"),
        Format::Pumpfile,
        write_shorthand(&renumbered.shorthand),
    );
    pending.add(format!("pump_M{m}.pump"), Format::Pumpfile, write_pump_file(&spectrum));
    pending.add(
        format!("pump_M{m}.perm"),
        Format::Triplet,
        renumbered
            .permutation
            .as_slice()
            .iter()
            .enumerate()
            .fold(String::new(), |mut s, (i, p)| {
                let _ = writeln!(s, "{i} {p}");
                s
            }),
    );
    pending.add(format!("pump_M{m}.report"), Format::Report, report.clone());
    Ok(Outcome {
        files: pending.flush()?,
        stdout: report,
        valid: true,
    })
}

fn simulate(m: usize, rs: &[f64], out: &Output) -> Result<Outcome, Failure> {
    check_squeezes(rs)?;
    let a = expand(&build_torus_supergraph(m)?);
    let results = map_slice(Execution::default(), rs, |&r| lattice_state(&a, r))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let mut pending = Pending::new(out);
    let mut summary = String::new();
    for (&r, c) in rs.iter().zip(&results) {
        let rep = c.report.clone().with_r(r);
        let _ = writeln!(
            summary,
            "M={m} r={} max_variance={} quarter_turns={} negated={}",
            r_tag(r),
            sig12(rep.max_variance),
            c.quarter_turns,
            c.negated
        );
        pending.add(
            format!("simulate_M{m}_r{}.report", r_tag(r)),
            Format::Report,
            write_nullifier_report(&rep),
        );
    }
    pending.add(format!("simulate_M{m}.summary"), Format::Report, summary.clone());
    Ok(Outcome {
        files: pending.flush()?,
        stdout: summary,
        valid: true,
    })
}

fn ideal_cut_text(rep: &IdealCutReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "M={} keep_layer={} nodes={} edges={} components={} max_degree={} degree_census={}",
        rep.m,
        rep.keep_layer,
        rep.node_count,
        rep.edge_count,
        rep.components,
        rep.max_degree,
        census_text(&rep.degree_census)
    );
    let magnitude = rep
        .uniform_magnitude
        .map_or("none".to_string(), |q| format!("{}/4", q.0));
    let _ = writeln!(
        out,
        "cycle_rank={} square_faces={} euler_characteristic={} positive_edges={} negative_edges={} uniform_magnitude={magnitude}",
        rep.cycle_rank, rep.square_faces, rep.euler_characteristic, rep.positive_edges, rep.negative_edges
    );
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    let _ = writeln!(
        out,
        "horizontal_meridian={} vertical_meridian={} shared={}",
        join(&rep.plan.horizontal_meridian),
        join(&rep.plan.vertical_meridian),
        join(&rep.plan.shared)
    );
    let _ = writeln!(
        out,
        "axis_cycles_horizontal={} axis_cycles_vertical={}",
        join(&rep.axis_cycles.0),
        join(&rep.axis_cycles.1)
    );
    let _ = writeln!(out, "convention={}", rep.convention);
    out
}

fn reduce(
    m: usize,
    rs: &[f64],
    keep_layer: usize,
    meridians: (usize, usize),
    out: &Output,
) -> Result<Outcome, Failure> {
    check_squeezes(rs)?;
    let plan = cut_nodes(m, keep_layer, meridians)?;
    let ideal = reduce_and_cut_ideal(m, keep_layer, meridians)?;
    let a = expand(&build_torus_supergraph(m)?);
    let results = map_slice(Execution::default(), rs, |&r| -> Result<_, Failure> {
        let c = lattice_state(&a, r)?;
        let layer = measure_q(&c.state, &plan.other_layers)?;
        let target = ideal_graph_delete(&c.signed_target, &plan.other_layers)?;
        let residual = nullifier_variances(&layer, &target)?.with_r(r);
        let graph = effective_graph(&layer)?;
        let graph_error = max_entry_error(&graph.v, &target)?;
        let cut = reduce_and_cut_gaussian(&c.state, &c.signed_target, m, keep_layer, meridians)?;
        Ok((residual, graph, graph_error, cut))
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;

    let mut pending = Pending::new(out);
    let ideal_text = ideal_cut_text(&ideal);
    pending.add(format!("reduce_M{m}_ideal.report"), Format::Report, ideal_text.clone());
    pending.add(
        format!("reduce_M{m}_ideal.triplets"),
        Format::Triplet,
        write_phys_triplets(&ideal.graph),
    );
    pending.add(
        format!("reduce_M{m}_ideal.dot"),
        Format::Dot,
        write_phys_dot(&ideal.graph),
    );
    let mut summary = ideal_text;
    for (&r, (residual, graph, graph_error, cut)) in rs.iter().zip(&results) {
        let tag = r_tag(r);
        let _ = writeln!(
            summary,
            "r={tag} layer_residual={} graph_error={} pre_cut={} post_cut={} post_cut_graph_error={}",
            sig12(residual.max_variance),
            sig12(*graph_error),
            sig12(cut.pre_cut.max_variance),
            sig12(cut.post_cut.max_variance),
            sig12(cut.post_cut_graph_error)
        );
        pending.add(
            format!("reduce_M{m}_r{tag}_layer.report"),
            Format::Report,
            write_nullifier_report(residual),
        );
        pending.add(
            format!("reduce_M{m}_r{tag}_effective.report"),
            Format::Report,
            write_effective_graph(graph),
        );
        pending.add(
            format!("reduce_M{m}_r{tag}_cut.report"),
            Format::Report,
            write_nullifier_report(&cut.post_cut.clone().with_r(r)),
        );
    }
    pending.add(format!("reduce_M{m}.summary"), Format::Report, summary.clone());
    Ok(Outcome {
        files: pending.flush()?,
        stdout: summary,
        valid: true,
    })
}

fn scaling(ms: &[usize], out: &Output) -> Result<Outcome, Failure> {
    let table = write_scaling_table(&scaling_report(ms)?);
    let mut pending = Pending::new(out);
    pending.add("scaling.report".into(), Format::Report, table.clone());
    Ok(Outcome {
        files: pending.flush()?,
        stdout: table,
        valid: true,
    })
}

fn verify(m: usize, rs: &[f64], out: &Output) -> Result<Outcome, Failure> {
    check_squeezes(rs)?;
    build_torus_supergraph(m)?;
    check_renumber_size(m)?;
    let config = VerifyConfig {
        m,
        r_values: rs.to_vec(),
        ..VerifyConfig::default()
    };
    let report = verify_all(&config)?;
    let text = report.render();
    let mut pending = Pending::new(out);
    pending.add("verify.report".into(), Format::Report, text.clone());
    Ok(Outcome {
        files: pending.flush()?,
        stdout: text,
        valid: report.all_pass(),
    })
}

/// Runs one parsed command. Work finishes before any file is written.
pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Lattice { m, out } => graph_outputs(
            &format!("lattice_M{m}"),
            &format!("M={m}"),
            &build_torus_supergraph(*m)?,
            out,
        ),
        Command::Ring { n_macro, out } => graph_outputs(
            &format!("ring_n{n_macro}"),
            &format!("n_macro={n_macro}"),
            &build_ring_supergraph(*n_macro)?,
            out,
        ),
        Command::Pump { m, base_freq, fsr, out } => pump(*m, base_freq.zip(*fsr), out),
        Command::Simulate { m, r, out } => simulate(*m, r, out),
        Command::Reduce {
            m,
            r,
            keep_layer,
            meridians,
            out,
        } => reduce(*m, r, *keep_layer, *meridians, out),
        Command::Scaling { m, out } => scaling(m, out),
        Command::Verify { m, r, out } => verify(*m, r, out),
    }
}

/// Parses `args`, runs, prints, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_OK;
            }
            let message = e.to_string();
            let first = message.lines().next().unwrap_or("").trim_start_matches("error: ");
            let failure = Failure {
                code: EXIT_CONFIG,
                module: "cli",
                cause: variant(&e.kind()),
                message: first.to_string(),
            };
            eprintln!("{failure}");
            return failure.code;
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.valid {
                EXIT_OK
            } else {
                EXIT_VALIDATION
            }
        }
        Err(failure) => {
            eprintln!("{failure}");
            failure.code
        }
    }
}
