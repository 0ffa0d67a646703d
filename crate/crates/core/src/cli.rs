//! `nodalcoh` command-line front end.
//!
//! Exit codes: 0 success, 1 input error (unreadable file, parse error, bad
//! arguments, unknown generator), 2 mathematical precondition or
//! verification failure (curve not of compact type, oracle mismatch).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::{
    basis_in_degree, multiply, AlgebraPresentation, Element, Monomial, PoincareSeries, SeriesFactor,
};
use crate::curve::{dual_graph, first_betti, is_compact_type, picard_extension_profile};
use crate::error::{AlgebraError, ModuliError};
use crate::moduli::{betti_table, nodal_moduli, ModuliCohomology, NodalMode, CHERN_CLASS_LABEL};
use crate::oracle::oracle_dimension;
use crate::parser::{parse_curve_bytes, CurveDocument};
use crate::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_MATH: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "nodalcoh",
    version,
    about = "Cohomology of moduli stacks of line bundles on nodal curves of compact type"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    AsStated,
    Kunneth,
}

impl From<ModeArg> for NodalMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::AsStated => NodalMode::AsStated,
            ModeArg::Kunneth => NodalMode::Kunneth,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Data,
    Latex,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dual graph invariants, compact-type verdict and Picard ranks.
    Analyze { file: PathBuf },
    /// Betti numbers and closed-form Poincaré series.
    Betti {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "as-stated")]
        mode: ModeArg,
        /// Recount every Betti number by brute-force enumeration.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Basis monomials in one degree.
    Basis {
        file: PathBuf,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value = "as-stated")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Cup product of two monomials, e.g. `α_2^(1)` and `α_1^(1)c1^2`.
    Multiply {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "as-stated")]
        mode: ModeArg,
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn math(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_MATH,
            message: message.into(),
        }
    }
}

impl From<ModuliError> for Failure {
    fn from(e: ModuliError) -> Self {
        match e {
            ModuliError::NotCompactType(_) | ModuliError::InternalMismatch { .. } => {
                Failure::math(e.to_string())
            }
            ModuliError::Algebra(AlgebraError::NegativeCoefficient { .. }) => {
                Failure::math(e.to_string())
            }
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::input(e.to_string())
    }
}

/// Runs the CLI with explicit argument list and output streams; returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let mut report = String::new();
    match dispatch(cli.command, &mut report) {
        Ok(()) => {
            let _ = out.write_all(report.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(path: &PathBuf) -> Result<CurveDocument, Failure> {
    let bytes =
        std::fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse_curve_bytes(&bytes).map_err(|e| Failure::input(format!("{}:{e}", path.display())))
}

fn build(doc: &CurveDocument, mode: ModeArg) -> Result<ModuliCohomology, Failure> {
    let multidegrees = doc
        .resolved_multidegrees()
        .map_err(|e| Failure::input(e.to_string()))?;
    Ok(nodal_moduli(
        &doc.curve,
        mode.into(),
        multidegrees.as_deref(),
    )?)
}

fn dispatch(command: Command, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Analyze { file } => analyze(&load(&file)?, out),
        Command::Betti {
            file,
            max_degree,
            mode,
            verify,
            format,
        } => {
            let doc = load(&file)?;
            let mc = build(&doc, mode)?;
            betti(&doc, &mc, mode, max_degree, verify, format, out)
        }
        Command::Basis {
            file,
            degree,
            mode,
            format,
        } => {
            let doc = load(&file)?;
            let mc = build(&doc, mode)?;
            basis(&mc, mode, degree, format, out)
        }
        Command::Multiply {
            file,
            mode,
            lhs,
            rhs,
        } => {
            let doc = load(&file)?;
            let mc = build(&doc, mode)?;
            let x = parse_monomial_expression(&mc.algebra, &lhs)?;
            let y = parse_monomial_expression(&mc.algebra, &rhs)?;
            let product = multiply(&mc.algebra, &x, &y)?;
            out.push_str(&format!("{}\n", product.display(&mc.algebra)));
            Ok(())
        }
    }
}

fn analyze(doc: &CurveDocument, out: &mut String) -> Result<(), Failure> {
    let curve = &doc.curve;
    let graph = dual_graph(curve);
    let verdict = is_compact_type(curve);
    let profile = picard_extension_profile(curve);
    out.push_str(&format!(
        "components={} nodes={} c={} b1={} compact_type={} torus_rank={}\n",
        curve.component_count(),
        curve.node_count(),
        graph.connected_components(),
        first_betti(&graph),
        verdict.compact_type,
        profile.torus_rank
    ));
    let dims: Vec<String> = profile.abelian_dims.iter().map(u32::to_string).collect();
    out.push_str(&format!("abelian_dims=[{}]\n", dims.join(",")));
    if let Some(w) = verdict.witness {
        out.push_str(&format!("witness={w}\n"));
    }
    Ok(())
}

fn warning_strings(mc: &ModuliCohomology) -> Vec<String> {
    mc.warnings.iter().map(ToString::to_string).collect()
}

fn betti(
    doc: &CurveDocument,
    mc: &ModuliCohomology,
    mode: ModeArg,
    max_degree: usize,
    verify: bool,
    format: Format,
    out: &mut String,
) -> Result<(), Failure> {
    let table = betti_table(mc, max_degree)?;
    if verify {
        for (k, &b) in table.iter().enumerate() {
            let count = oracle_dimension(&mc.algebra, k as u32)
                .map_err(|e| Failure::math(format!("verification impossible: {e}")))?;
            if count as u64 != b {
                return Err(Failure::math(format!(
                    "verification mismatch in degree {k}: reported {b}, oracle counts {count}"
                )));
            }
        }
    }
    let mode_name = NodalMode::from(mode).name();
    let warnings = warning_strings(mc);
    match format {
        Format::Table => {
            let nums: Vec<String> = table.iter().map(u64::to_string).collect();
            out.push_str(&format!("mode: {mode_name}\n"));
            out.push_str(&format!("blocks: {}\n", mc.algebra.block_count()));
            out.push_str(&format!("betti: {}\n", nums.join(" ")));
            out.push_str(&format!("series: {}\n", mc.series));
            if warnings.is_empty() {
                out.push_str("warnings: none\n");
            } else {
                out.push_str(&format!("warnings: {}\n", warnings.join("; ")));
            }
            if verify {
                out.push_str(&format!(
                    "verified: oracle agrees in degrees 0..={max_degree}\n"
                ));
            }
        }
        Format::Data => {
            let num: Vec<serde_json::Value> = mc
                .series
                .numerator()
                .iter()
                .map(|c| match i64::try_from(c) {
                    Ok(v) => json!(v),
                    Err(_) => json!(c.to_string()),
                })
                .collect();
            let value = json!({
                "name": doc.name,
                "mode": mode_name,
                "max_degree": max_degree,
                "blocks": mc.algebra.block_count(),
                "multidegree_count": mc.multidegree_count,
                "betti": table,
                "series": {
                    "num": num,
                    "den": mc.series.denominator_exponents(),
                    "closed_form": mc.series.to_string(),
                },
                "warnings": warnings,
                "verified": verify,
            });
            out.push_str(&serde_json::to_string(&value).expect("json values serialize"));
            out.push('\n');
        }
        Format::Latex => {
            let nums: Vec<String> = table.iter().map(u64::to_string).collect();
            out.push_str(&latex_presentation(mc, mode));
            out.push('\n');
            out.push_str(&format!("P(t) = {}\n", latex_series(&mc.series)));
            out.push_str(&format!(
                "(b_0,\\ldots,b_{{{max_degree}}}) = ({})\n",
                nums.join(",")
            ));
        }
    }
    Ok(())
}

fn basis(
    mc: &ModuliCohomology,
    mode: ModeArg,
    degree: u32,
    format: Format,
    out: &mut String,
) -> Result<(), Failure> {
    let monomials = basis_in_degree(&mc.algebra, degree);
    let shown: Vec<String> = monomials
        .iter()
        .map(|m| mc.algebra.display_monomial(m).to_string())
        .collect();
    match format {
        Format::Table => {
            if shown.is_empty() {
                out.push_str("(none)\n");
            } else {
                out.push_str(&shown.join(", "));
                out.push('\n');
            }
        }
        Format::Data => {
            let value = json!({
                "mode": NodalMode::from(mode).name(),
                "degree": degree,
                "dimension": shown.len(),
                "basis": shown,
            });
            out.push_str(&serde_json::to_string(&value).expect("json values serialize"));
            out.push('\n');
        }
        Format::Latex => {
            let parts: Vec<String> = monomials
                .iter()
                .map(|m| latex_monomial(&mc.algebra, m))
                .collect();
            out.push_str(&parts.join(",\\ "));
            out.push('\n');
        }
    }
    Ok(())
}

/// Parses a signed product of generators such as `-α_2^(1)α_1^(1)c1^2`.
///
/// Generators multiply left to right, so the written order determines the
/// sign. `1` is the unit; a trailing `@<block>` (1-based) picks a summand of
/// a direct sum when the generators alone do not.
pub fn parse_monomial_expression(
    alg: &AlgebraPresentation,
    expr: &str,
) -> Result<Element<Rational>, AlgebraError> {
    let bad = || AlgebraError::BadExpression(expr.to_string());
    let mut text = expr.trim();
    let mut negative = false;
    if let Some(rest) = text.strip_prefix('-') {
        negative = true;
        text = rest.trim_start();
    } else if let Some(rest) = text.strip_prefix('+') {
        text = rest.trim_start();
    }
    let mut block = None;
    if let Some((body, tag)) = text.rsplit_once('@') {
        let b: usize = tag.trim().parse().map_err(|_| bad())?;
        if b == 0 || b > alg.block_count() {
            return Err(AlgebraError::BadExpression(format!(
                "{expr}: block {b} does not exist (the algebra has {})",
                alg.block_count()
            )));
        }
        block = Some(b - 1);
        text = body.trim_end();
    }

    let labels = alg.labels_longest_first();
    let mut factors: Vec<(&str, u32)> = Vec::new();
    let mut rest = text;
    let mut unit_seen = false;
    loop {
        rest = rest.trim_start_matches([' ', '*', '·']);
        if rest.is_empty() {
            break;
        }
        if let Some(label) = labels.iter().find(|l| rest.starts_with(**l)) {
            rest = &rest[label.len()..];
            let mut power = 1;
            if let Some(after) = rest.strip_prefix('^') {
                let digits =
                    after.len() - after.trim_start_matches(|c: char| c.is_ascii_digit()).len();
                if digits == 0 {
                    return Err(bad());
                }
                power = after[..digits].parse().map_err(|_| bad())?;
                rest = &after[digits..];
            }
            factors.push((label, power));
        } else if let Some(after) = rest.strip_prefix('1') {
            if after.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(bad());
            }
            unit_seen = true;
            rest = after;
        } else {
            let token: String = rest
                .chars()
                .take_while(|c| !matches!(c, ' ' | '*' | '·'))
                .collect();
            return Err(AlgebraError::UnknownGenerator(token));
        }
    }
    if factors.is_empty() && !unit_seen {
        return Err(bad());
    }

    // pick one block for labels that appear in several
    let shared = match block {
        Some(b) => Some(b),
        None => {
            let mut common: Option<Vec<usize>> = None;
            for (label, _) in &factors {
                let here = alg.blocks_with_label(label);
                common = Some(match common {
                    None => here,
                    Some(prev) => prev.into_iter().filter(|b| here.contains(b)).collect(),
                });
            }
            match common {
                None if alg.block_count() == 1 => Some(0),
                None => return Err(AlgebraError::AmbiguousBlock(expr.to_string())),
                Some(c) if c.len() == 1 => Some(c[0]),
                Some(c) if c.is_empty() => None,
                Some(_) => return Err(AlgebraError::AmbiguousBlock(expr.to_string())),
            }
        }
    };

    let unit_block = shared.unwrap_or(0);
    let mut acc = Element::monomial(Monomial::unit(
        unit_block,
        alg.blocks()[unit_block].even_count(),
    ));
    for (i, (label, power)) in factors.iter().enumerate() {
        let m = alg.generator_monomial(label, shared)?;
        let g = Element::monomial(m.clone());
        if i == 0 && shared.is_none() {
            // generators from different blocks: start in the first one's block
            acc = Element::monomial(Monomial::unit(m.block, alg.blocks()[m.block].even_count()));
        }
        for _ in 0..*power {
            acc = multiply(alg, &acc, &g)?;
        }
    }
    Ok(if negative { acc.neg() } else { acc })
}

fn latex_label(label: &str) -> String {
    // α_j^(i)[qualifier] and c1[qualifier]
    if let Some(rest) = label.strip_prefix("α_") {
        if let Some((j, tail)) = rest.split_once("^(") {
            if let Some((i, qualifier)) = tail.split_once(')') {
                let q = if qualifier.is_empty() {
                    String::new()
                } else {
                    format!("_{{{qualifier}}}")
                };
                return format!("\\alpha^{{({i})}}_{{{j}}}{q}");
            }
        }
    }
    if let Some(qualifier) = label.strip_prefix(CHERN_CLASS_LABEL) {
        if qualifier.is_empty() {
            return "c_1".into();
        }
        return format!("c_{{1,{qualifier}}}");
    }
    label.to_string()
}

fn latex_monomial(alg: &AlgebraPresentation, m: &Monomial) -> String {
    let block = &alg.blocks()[m.block];
    let mut parts = Vec::new();
    for &i in &m.odd {
        parts.push(latex_label(&block.odd_generator(i as usize).label));
    }
    for (i, &e) in m.even.iter().enumerate() {
        let l = latex_label(&block.even_generator(i).label);
        match e {
            0 => {}
            1 => parts.push(l),
            _ => parts.push(format!("{l}^{{{e}}}")),
        }
    }
    let mut s = if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    };
    if alg.is_direct_sum() {
        s.push_str(&format!("\\,\\langle {}\\rangle", m.block + 1));
    }
    s
}

fn latex_exterior(component: usize, genus: u32) -> String {
    if genus == 0 {
        return "\\mathbb{Q}".into();
    }
    format!(
        "\\Lambda_{{\\mathbb{{Q}}}}(\\alpha^{{({component})}}_{{1}},\\ldots,\\alpha^{{({component})}}_{{{}}})",
        2 * genus
    )
}

fn latex_presentation(mc: &ModuliCohomology, mode: ModeArg) -> String {
    let lhs = "H^*(\\mathcal{B}un_Y^{1,d},\\mathbb{Q})";
    let pieces: Vec<String> = mc
        .genera
        .iter()
        .enumerate()
        .map(|(i, &g)| latex_exterior(i + 1, g))
        .collect();
    let chern = "\\mathbb{Q}[c_1]";
    match (mode, pieces.len()) {
        (_, 1) if mc.multidegree_count.unwrap_or(1) == 1 => {
            format!("{lhs} \\cong {} \\otimes {chern}", pieces[0])
        }
        (ModeArg::AsStated, _) => {
            format!(
                "{lhs} \\cong [{}] \\otimes {chern}",
                pieces.join(" \\oplus ")
            )
        }
        (ModeArg::Kunneth, _) => {
            let n = mc.multidegree_count.unwrap_or(1);
            let inner = format!("[{}] \\otimes {chern}", pieces.join(" \\otimes "));
            if n == 1 {
                format!("{lhs} \\cong {inner}")
            } else {
                format!("{lhs} \\cong \\bigoplus_{{|\\Delta_d| = {n}}} {inner}")
            }
        }
    }
}

fn latex_factor(f: SeriesFactor, power: u32) -> String {
    let (sign, e) = match f {
        SeriesFactor::OnePlus(e) => ('+', e),
        SeriesFactor::OneMinus(e) => ('-', e),
    };
    let t = if e == 1 {
        "t".to_string()
    } else {
        format!("t^{{{e}}}")
    };
    if power == 1 {
        format!("(1{sign}{t})")
    } else {
        format!("(1{sign}{t})^{{{power}}}")
    }
}

fn latex_series(s: &PoincareSeries) -> String {
    let terms: Vec<String> = s
        .terms()
        .iter()
        .map(|t| {
            let factors: String = t
                .factors
                .iter()
                .map(|(&f, &p)| latex_factor(f, p))
                .collect();
            match (t.multiplicity, factors.is_empty()) {
                (m, true) => m.to_string(),
                (1, false) => factors,
                (m, false) => format!("{m}{factors}"),
            }
        })
        .collect();
    let numerator = terms.join(" + ");
    let exps = s.denominator_exponents();
    if exps.is_empty() {
        return numerator;
    }
    let mut counts: Vec<(u32, u32)> = Vec::new();
    for e in exps {
        match counts.last_mut() {
            Some((last, p)) if *last == e => *p += 1,
            _ => counts.push((e, 1)),
        }
    }
    let denominator: String = counts
        .into_iter()
        .map(|(e, p)| latex_factor(SeriesFactor::OneMinus(e), p))
        .collect();
    format!("\\frac{{{numerator}}}{{{denominator}}}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::NodalCurve;
    use crate::moduli::smooth_moduli;

    fn chain23() -> ModuliCohomology {
        let curve = NodalCurve::new(&[2, 3], &[(0, 1)]).unwrap();
        nodal_moduli(&curve, NodalMode::AsStated, None).unwrap()
    }

    fn show(alg: &AlgebraPresentation, e: &Element<Rational>) -> String {
        e.display(alg).to_string()
    }

    #[test]
    fn expressions_multiply_in_written_order() {
        let mc = smooth_moduli(2);
        let alg = &mc.algebra;
        let e = parse_monomial_expression(alg, "α_2^(1)α_1^(1)").unwrap();
        assert_eq!(show(alg, &e), "-α_1^(1)α_2^(1)");
        let e = parse_monomial_expression(alg, "- α_1^(1) * c1^2").unwrap();
        assert_eq!(show(alg, &e), "-α_1^(1)c1^2");
        assert!(parse_monomial_expression(alg, "α_1^(1)^2")
            .unwrap()
            .is_zero());
        assert_eq!(
            show(alg, &parse_monomial_expression(alg, "1").unwrap()),
            "1"
        );
    }

    #[test]
    fn expression_errors() {
        let mc = smooth_moduli(1);
        let alg = &mc.algebra;
        assert_eq!(
            parse_monomial_expression(alg, "α_3^(1)").unwrap_err(),
            AlgebraError::UnknownGenerator("α_3^(1)".into())
        );
        assert!(matches!(
            parse_monomial_expression(alg, ""),
            Err(AlgebraError::BadExpression(_))
        ));
        assert!(matches!(
            parse_monomial_expression(alg, "c1^"),
            Err(AlgebraError::BadExpression(_))
        ));
    }

    #[test]
    fn direct_sum_blocks_resolve() {
        let mc = chain23();
        let alg = &mc.algebra;
        let e = parse_monomial_expression(alg, "α_1^(2)c1").unwrap();
        assert_eq!(show(alg, &e), "α_1^(2)c1@2");
        assert_eq!(
            parse_monomial_expression(alg, "c1").unwrap_err(),
            AlgebraError::AmbiguousBlock("c1".into())
        );
        let e = parse_monomial_expression(alg, "c1@1").unwrap();
        assert_eq!(show(alg, &e), "c1@1");
        // generators from two components never meet in one summand
        assert!(parse_monomial_expression(alg, "α_1^(1)α_1^(2)")
            .unwrap()
            .is_zero());
        assert!(parse_monomial_expression(alg, "1@3").is_err());
    }

    #[test]
    fn latex_rendering() {
        assert_eq!(latex_label("α_3^(2)"), "\\alpha^{(2)}_{3}");
        assert_eq!(latex_label("α_3^(2)[1,0]"), "\\alpha^{(2)}_{3}_{[1,0]}");
        assert_eq!(latex_label("c1"), "c_1");
        assert_eq!(
            latex_series(&smooth_moduli(2).series),
            "\\frac{(1+t)^{4}}{(1-t^{2})}"
        );
        assert_eq!(
            latex_presentation(&chain23(), ModeArg::AsStated),
            "H^*(\\mathcal{B}un_Y^{1,d},\\mathbb{Q}) \\cong [\\Lambda_{\\mathbb{Q}}(\\alpha^{(1)}_{1},\\ldots,\\alpha^{(1)}_{4}) \\oplus \\Lambda_{\\mathbb{Q}}(\\alpha^{(2)}_{1},\\ldots,\\alpha^{(2)}_{6})] \\otimes \\mathbb{Q}[c_1]"
        );
    }
}
