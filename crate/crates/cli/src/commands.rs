use std::io::{self, Write};

use hwbound_core::bounds::{assemble_report, BoundReport, Side, TailQuery};
use hwbound_core::constants::{figure_grid, solve_kappa, KappaResult, DEFAULT_KAPPA_TOL};
use hwbound_core::montecarlo::{verify_bound, TailEstimate, Verdict};
use hwbound_core::spectral::{decompose, Spectrum, SymmetricMatrix, SymmetryMode};
use thiserror::Error;

use crate::config::{OutputFormat, RunConfig, Subcommand};
use crate::format::{csv_num, sig10};
use crate::matrix_file::{read_matrix, MatrixFileError};
use crate::parallel;

pub const FIGURE_HEADER: &str = "r,quarter_r,inv_8xi,min_term";
pub const KAPPA_HEADER: &str = "r_star,kappa,residual";
pub const BOUND_HEADER: &str = "a,side,n,hs_norm_sq,op_norm,r,kappa,\
universal_exponent,parametrized_exponent,intermediate_exponent,chernoff_exponent,t_star,\
prob_universal,prob_parametrized,prob_chernoff";
pub const VERIFY_HEADER: &str =
    "prob_universal,prob_parametrized,prob_chernoff,estimate,ci_low,ci_high,verdict";

const SYMMETRIZE_HINT: &str = "hint: pass --symmetrize to use (A + A^T)/2 instead; \
the quadratic form x^T A x is identical for both matrices";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("the {command} subcommand requires --{option}")]
    Missing {
        command: &'static str,
        option: &'static str,
    },
    #[error(transparent)]
    Matrix(MatrixFileError),
    #[error("{0}")]
    Core(#[from] hwbound_core::Error),
    #[error("writing output failed: {0}")]
    Output(#[from] io::Error),
}

impl From<MatrixFileError> for CliError {
    fn from(err: MatrixFileError) -> Self {
        CliError::Matrix(err)
    }
}

impl CliError {
    /// Extra guidance printed after the error message.
    pub fn hint(&self) -> Option<&'static str> {
        match self {
            CliError::Matrix(MatrixFileError::Matrix(hwbound_core::Error::Asymmetric { .. })) => {
                Some(SYMMETRIZE_HINT)
            }
            _ => None,
        }
    }
}

/// What a successful invocation concluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// Monte Carlo evidence contradicts a bound.
    Violation,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Violation => 1,
        }
    }
}

/// Exit code for usage and input errors.
pub const USAGE_EXIT: u8 = 2;

pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match cfg.command {
        Subcommand::Kappa => run_kappa(cfg, out),
        Subcommand::Figure => run_figure(cfg, out),
        Subcommand::Bound => run_bound(cfg, out),
        Subcommand::Verify => run_verify(cfg, out),
    }
}

fn kappa() -> Result<KappaResult, CliError> {
    Ok(solve_kappa(DEFAULT_KAPPA_TOL)?)
}

pub fn run_kappa(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let k = kappa()?;
    match cfg.output_format {
        OutputFormat::Csv => {
            writeln!(out, "{KAPPA_HEADER}")?;
            writeln!(out, "{},{},{}", csv_num(k.r_star), csv_num(k.kappa), csv_num(k.residual))?;
        }
        OutputFormat::Text => {
            writeln!(out, "r_star    {}", sig10(k.r_star))?;
            writeln!(out, "kappa     {}", sig10(k.kappa))?;
            writeln!(out, "residual  {}", sig10(k.residual))?;
            writeln!(
                out,
                "max over r of min{{r, 1/(2 xi_r)}} = {} (~0.583); kappa = that / 4 = {} (~0.1457)",
                sig10(k.r_star),
                sig10(k.kappa)
            )?;
        }
    }
    Ok(Outcome::Success)
}

pub fn run_figure(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let rows = figure_grid(cfg.steps)?;
    let mut buf = io::BufWriter::new(out);
    writeln!(buf, "{FIGURE_HEADER}")?;
    for row in rows {
        writeln!(
            buf,
            "{},{},{},{}",
            csv_num(row.r),
            csv_num(row.quarter_r),
            csv_num(row.inv_8xi),
            csv_num(row.min_term)
        )?;
    }
    buf.flush()?;
    Ok(Outcome::Success)
}

struct Prepared {
    matrix: SymmetricMatrix,
    spectrum: Spectrum,
    report: BoundReport,
}

fn prepare(cfg: &RunConfig, command: &'static str) -> Result<Prepared, CliError> {
    let path = cfg.matrix_path.as_ref().ok_or(CliError::Missing {
        command,
        option: "matrix",
    })?;
    let a = cfg.a.ok_or(CliError::Missing { command, option: "a" })?;
    let query = TailQuery::new(a, cfg.side.into())?;
    let mode = if cfg.symmetrize {
        SymmetryMode::Symmetrize
    } else {
        SymmetryMode::Strict
    };
    let matrix = read_matrix(path, mode)?;
    let spectrum = decompose(&matrix, false)?;
    let k = kappa()?;
    let r = cfg.r.unwrap_or(k.r_star);
    let report = assemble_report(&spectrum, &query, r, k.kappa)?;
    Ok(Prepared {
        matrix,
        spectrum,
        report,
    })
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Upper => "upper",
        Side::Lower => "lower",
        Side::TwoSided => "two-sided",
    }
}

fn write_report_text(out: &mut dyn Write, p: &Prepared) -> io::Result<()> {
    let (s, r) = (&p.spectrum, &p.report);
    writeln!(out, "n              {}", p.matrix.dim())?;
    writeln!(out, "side           {}", side_name(r.query.side()))?;
    writeln!(out, "a              {}", sig10(r.query.a()))?;
    writeln!(out, "trace          {}", sig10(s.trace()))?;
    writeln!(out, "hs_norm_sq     {}", sig10(s.hs_norm_sq()))?;
    writeln!(out, "hs_norm        {}", sig10(s.hs_norm_sq().sqrt()))?;
    writeln!(out, "op_norm        {}", sig10(s.op_norm()))?;
    writeln!(out, "lambda_max     {}", sig10(s.max_eigenvalue()))?;
    writeln!(out, "lambda_min     {}", sig10(s.min_eigenvalue()))?;
    writeln!(out, "r              {}", sig10(r.r_used))?;
    writeln!(out, "kappa          {}", sig10(r.kappa))?;
    writeln!(out)?;
    writeln!(out, "{:<14} {:<18} probability", "tier", "exponent")?;
    let rows = [
        ("universal", r.universal_exponent, Some(r.prob_universal)),
        ("parametrized", r.parametrized_exponent, Some(r.prob_parametrized)),
        ("intermediate", r.intermediate.exponent, None),
        ("chernoff", r.chernoff_exponent, Some(r.prob_chernoff)),
    ];
    for (name, exponent, prob) in rows {
        let prob = prob.map_or_else(|| "-".to_owned(), sig10);
        writeln!(out, "{:<14} {:<18} {}", name, sig10(exponent), prob)?;
    }
    writeln!(out)?;
    writeln!(out, "t_quadratic    {}", sig10(r.intermediate.t))?;
    writeln!(out, "t_star         {}", sig10(r.t_star))?;
    Ok(())
}

pub fn run_bound(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let p = prepare(cfg, "bound")?;
    match cfg.output_format {
        OutputFormat::Text => write_report_text(out, &p)?,
        OutputFormat::Csv => {
            let r = &p.report;
            writeln!(out, "{BOUND_HEADER}")?;
            let cells = [
                csv_num(r.query.a()),
                side_name(r.query.side()).to_owned(),
                p.matrix.dim().to_string(),
                csv_num(p.spectrum.hs_norm_sq()),
                csv_num(p.spectrum.op_norm()),
                csv_num(r.r_used),
                csv_num(r.kappa),
                csv_num(r.universal_exponent),
                csv_num(r.parametrized_exponent),
                csv_num(r.intermediate.exponent),
                csv_num(r.chernoff_exponent),
                csv_num(r.t_star),
                csv_num(r.prob_universal),
                csv_num(r.prob_parametrized),
                csv_num(r.prob_chernoff),
            ];
            writeln!(out, "{}", cells.join(","))?;
        }
    }
    Ok(Outcome::Success)
}

fn verdict_name(verdict: Verdict) -> &'static str {
    match verdict {
        Verdict::Consistent => "consistent",
        Verdict::Violation => "violation",
    }
}

/// Prints a finished verification and maps its verdict to an outcome.
pub fn write_verification(
    out: &mut dyn Write,
    format: OutputFormat,
    report: &BoundReport,
    estimate: &TailEstimate,
) -> Result<Outcome, CliError> {
    let verdict = verify_bound(estimate, report)?;
    match format {
        OutputFormat::Csv => {
            writeln!(out, "{VERIFY_HEADER}")?;
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                csv_num(report.prob_universal),
                csv_num(report.prob_parametrized),
                csv_num(report.prob_chernoff),
                csv_num(estimate.point_estimate),
                csv_num(estimate.ci_low),
                csv_num(estimate.ci_high),
                verdict_name(verdict)
            )?;
        }
        OutputFormat::Text => {
            writeln!(out)?;
            writeln!(out, "samples        {}", estimate.samples)?;
            writeln!(out, "seed           {}", estimate.seed)?;
            writeln!(out, "chunks         {}", estimate.chunks)?;
            writeln!(out, "hits           {}", estimate.hits)?;
            writeln!(out, "estimate       {}", sig10(estimate.point_estimate))?;
            writeln!(
                out,
                "wilson {:>3}%    [{}, {}]",
                sig10(100.0 * estimate.confidence).trim_end_matches('0').trim_end_matches('.'),
                sig10(estimate.ci_low),
                sig10(estimate.ci_high)
            )?;
            writeln!(out, "verdict        {}", verdict_name(verdict))?;
        }
    }
    Ok(match verdict {
        Verdict::Consistent => Outcome::Success,
        Verdict::Violation => Outcome::Violation,
    })
}

pub fn run_verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let p = prepare(cfg, "verify")?;
    let chunks = cfg.chunks.unwrap_or_else(parallel::available_chunks);
    let estimate = parallel::estimate_tail(
        &p.spectrum,
        &p.report.query,
        cfg.samples,
        cfg.seed,
        cfg.confidence,
        chunks,
    )?;
    if cfg.output_format == OutputFormat::Text {
        write_report_text(out, &p)?;
    }
    write_verification(out, cfg.output_format, &p.report, &estimate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;
    use hwbound_core::estimate_tail;

    fn cfg(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("hwbound").chain(args.iter().copied())).unwrap()
    }

    fn run_to_string(cfg: &RunConfig) -> (Result<Outcome, CliError>, String) {
        let mut buf = Vec::new();
        let res = run(cfg, &mut buf);
        (res, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn kappa_text_has_ten_digits() {
        let (res, text) = run_to_string(&cfg(&["kappa"]));
        assert_eq!(res.unwrap(), Outcome::Success);
        assert!(text.contains("kappa     0.1457029110"), "{text}");
        assert!(text.contains("r_star    0.5828116439"), "{text}");
    }

    #[test]
    fn bound_requires_matrix_and_threshold() {
        let (res, _) = run_to_string(&cfg(&["bound", "--a", "1"]));
        assert!(matches!(res, Err(CliError::Missing { option: "matrix", .. })));
        let (res, _) = run_to_string(&cfg(&["verify", "--matrix", "x.txt"]));
        assert!(matches!(res, Err(CliError::Missing { option: "a", .. })));
    }

    #[test]
    fn corrupted_report_exits_one() {
        let spec = Spectrum::from_eigenvalues(&[1.0]).unwrap();
        let q = TailQuery::new(3.0, Side::TwoSided).unwrap();
        let k = kappa().unwrap();
        let mut report = assemble_report(&spec, &q, k.r_star, k.kappa).unwrap();
        let est = estimate_tail(&spec, &q, 10_000, 42, 0.99, 1).unwrap();
        let mut sink = Vec::new();
        let ok = write_verification(&mut sink, OutputFormat::Csv, &report, &est).unwrap();
        assert_eq!(ok.exit_code(), 0);
        report.prob_universal = 1e-6;
        let bad = write_verification(&mut sink, OutputFormat::Text, &report, &est).unwrap();
        assert_eq!(bad, Outcome::Violation);
        assert_eq!(bad.exit_code(), 1);
        assert!(String::from_utf8(sink).unwrap().contains("verdict        violation"));
    }
}
