//! Command-line front end. Every command builds one [`Output`], which is
//! rendered either as JSON or as a plain table from the same values.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cells::{self, ParabolicSubset, QPolynomial};
use crate::checks::{self, CheckReport};
use crate::error::Error;
use crate::extended_weyl::{ExtendedElement, LatticeChoice};
use crate::group::{GroupSpec, IwahoriWeyl};
use crate::linalg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "iwahori", version, about = "Exact computations in Iwahori-Weyl groups")]
pub struct Cli {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Evaluate polynomials at this residue field size.
    #[arg(long = "q", global = true, value_name = "INT")]
    pub q: Option<i64>,
    /// Translation lattice when the group spec does not name one.
    #[arg(long, global = true, value_name = "adjoint|sc|basis:[..]")]
    pub lattice: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Walls, Coxeter matrix, alcove stabilizer and twist of a group.
    Info { group: String },
    /// Length in the group.
    Length { group: String, element: String },
    /// Length in the unramified group (`l^nr`).
    LengthNr { group: String, element: String },
    /// Canonical form `o[c]*s_i*...` with a reduced word.
    Reduce { group: String, element: String },
    /// The inversion set R(w).
    Inversions { group: String, element: String },
    /// Whether `w <= v` in the Bruhat order.
    Bruhat { group: String, w: String, v: String },
    /// Kottwitz class, as residues per elementary divisor.
    Kottwitz { group: String, element: String },
    /// The alcove stabilizer and its transversal.
    Omega { group: String },
    /// Minimal representatives of W_J \ W / W_J' up to a length bound.
    DoubleCosets {
        group: String,
        /// Left facet, e.g. `s1` or `s1,s2`; `{}` for the Iwahori case.
        j: String,
        /// Right facet.
        j2: String,
        max_len: usize,
    },
    /// |BwB/B| as a polynomial in q.
    CellSize { group: String, element: String },
    /// Sum of cell sizes over minimal representatives of W_aff / W_J.
    Poincare {
        group: String,
        max_len: usize,
        #[arg(long, default_value = "{}")]
        parabolic: String,
    },
    /// d(v) = l^nr(s_v) for every wall.
    DValues { group: String },
    /// Run the invariant suite (defaults to the built-in groups).
    Check {
        groups: Vec<String>,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
}

/// A command's result, independent of the output format.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Output {
    Scalar { value: Value },
    Polynomial {
        coefficients: QPolynomial,
        text: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        q: Option<i64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        value: Option<String>,
    },
    Element(ElementView),
    Table {
        meta: Vec<(String, Value)>,
        columns: Vec<String>,
        rows: Vec<Vec<Value>>,
    },
    Report { reports: Vec<CheckReport> },
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementView {
    pub text: String,
    pub kottwitz_class: Vec<i64>,
    pub word: Vec<String>,
    pub length: usize,
    pub length_nr: usize,
}

/// What the binary prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Stable short code for each domain error.
pub fn error_code(e: &Error) -> &'static str {
    match e {
        Error::InvalidCartanType(_) => "invalid-cartan-type",
        Error::DimensionMismatch { .. } => "dimension-mismatch",
        Error::ZeroGradient => "zero-gradient",
        Error::NotARoot(_) => "not-a-root",
        Error::CorruptedAlcove(_) => "corrupted-alcove",
        Error::NotInAffineWeyl => "not-in-affine-weyl",
        Error::NotSigmaFixed => "not-sigma-fixed",
        Error::NonReducedWord { .. } => "non-reduced-word",
        Error::InfiniteParabolic(_) => "infinite-parabolic",
        Error::UnknownWall(_) => "unknown-wall",
        Error::LatticeTooSmall => "lattice-too-small",
        Error::LatticeTooLarge => "lattice-too-large",
        Error::LatticeNotStable => "lattice-not-stable",
        Error::NotInLattice(_) => "not-in-lattice",
        Error::NoTransversal(_) => "no-transversal",
        Error::NotDiagramAutomorphism(_) => "not-diagram-automorphism",
        Error::ConstantRestriction(_) => "constant-restriction",
        Error::RamifiedLevels => "ramified-levels",
        Error::Parse { .. } => "parse",
        Error::Inconsistent(_) => "inconsistent",
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidCartanType(_) => EXIT_PARSE,
        _ => EXIT_DOMAIN,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK { (text, String::new()) } else { (String::new(), text) };
            return Invocation { code, stdout, stderr };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let failed = matches!(&out, Output::Report { reports } if reports.iter().any(|r| !r.passed()));
            Invocation {
                code: if failed { EXIT_INVARIANT } else { EXIT_OK },
                stdout: if cli.json { to_json(&out) } else { render(&out) },
                stderr: String::new(),
            }
        }
        Err(e) => {
            let code = error_code(&e);
            let stdout = if cli.json {
                let v = json!({"error": {"code": code, "message": e.to_string()}});
                format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
            } else {
                String::new()
            };
            Invocation {
                code: exit_code(&e),
                stdout,
                stderr: format!("error[{code}]: {e}\n"),
            }
        }
    }
}

pub fn to_json(out: &Output) -> String {
    format!("{}\n", serde_json::to_string_pretty(out).expect("serializable"))
}

fn load(cli: &Cli, text: &str) -> Result<IwahoriWeyl, Error> {
    let mut spec: GroupSpec = text.parse()?;
    if spec.lattice.is_none() {
        if let Some(l) = &cli.lattice {
            let choice = l.parse::<LatticeChoice>().map_err(|message| Error::Parse { position: 0, message })?;
            spec.lattice = Some(choice);
        }
    }
    IwahoriWeyl::new(&spec)
}

fn element_view(g: &IwahoriWeyl, w: &ExtendedElement) -> ElementView {
    ElementView {
        text: g.format_element(w),
        kottwitz_class: w.class.0.clone(),
        word: g.word_names(&g.reduced_word(w)),
        length: g.length(w),
        length_nr: g.length_nr(w),
    }
}

fn polynomial(p: QPolynomial, q: Option<i64>) -> Output {
    Output::Polynomial {
        text: p.to_string(),
        value: q.map(|q| p.eval(q).to_string()),
        coefficients: p,
        q,
    }
}

pub fn execute(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Info { group } => info(&load(cli, group)?),
        Command::Length { group, element } => {
            let g = load(cli, group)?;
            let w = g.parse_element(element)?;
            Ok(Output::Scalar { value: json!(g.length(&w)) })
        }
        Command::LengthNr { group, element } => {
            let g = load(cli, group)?;
            let w = g.parse_element(element)?;
            Ok(Output::Scalar { value: json!(g.length_nr(&w)) })
        }
        Command::Reduce { group, element } => {
            let g = load(cli, group)?;
            let w = g.parse_element(element)?;
            Ok(Output::Element(element_view(&g, &w)))
        }
        Command::Inversions { group, element } => {
            let g = load(cli, group)?;
            let w = g.parse_element(element)?;
            let sys = g.system();
            let rows = sys
                .inversion_set(&w.full)
                .iter()
                .map(|a| {
                    vec![
                        json!(linalg::fmt_vector(&a.gradient)),
                        json!(linalg::fmt_rational(&a.level)),
                        json!(sys.is_divisible(a).expect("inversions are roots")),
                    ]
                })
                .collect();
            Ok(Output::Table {
                meta: vec![("element".into(), json!(g.format_element(&w)))],
                columns: vec!["gradient".into(), "level".into(), "divisible".into()],
                rows,
            })
        }
        Command::Bruhat { group, w, v } => {
            let g = load(cli, group)?;
            let w = g.parse_element(w)?;
            let v = g.parse_element(v)?;
            Ok(Output::Scalar { value: json!(g.bruhat_leq(&w, &v)) })
        }
        Command::Kottwitz { group, element } => {
            let g = load(cli, group)?;
            let w = g.parse_element(element)?;
            Ok(Output::Scalar { value: json!(g.kottwitz(&w).0) })
        }
        Command::Omega { group } => {
            let g = load(cli, group)?;
            let sys = g.system();
            let walls = sys.simple_affine_roots();
            let rows = g
                .omega()
                .transversal()
                .iter()
                .map(|(c, tau)| {
                    let perm: Vec<String> = walls
                        .iter()
                        .map(|a| {
                            let image = tau.act_root(a);
                            let j = walls.iter().position(|b| *b == image).expect("walls are permuted");
                            sys.walls()[j].name.clone()
                        })
                        .collect();
                    vec![json!(c.0), json!(linalg::fmt_vector(tau.translation())), json!(perm)]
                })
                .collect();
            Ok(Output::Table {
                meta: vec![
                    ("order".into(), json!(g.omega().order())),
                    ("divisors".into(), json!(g.omega().divisors())),
                ],
                columns: vec!["class".into(), "translation".into(), "wall_images".into()],
                rows,
            })
        }
        Command::DoubleCosets { group, j, j2, max_len } => {
            let g = load(cli, group)?;
            let j = ParabolicSubset::parse(&g, j)?;
            let j2 = ParabolicSubset::parse(&g, j2)?;
            let rows = cells::enumerate_double_cosets(&g, &j, &j2, *max_len)
                .iter()
                .map(|w| {
                    let word = g.reduced_word(w);
                    let exps: Vec<usize> =
                        word.iter().map(|&i| g.nr().length(g.system().simple_reflection(i))).collect();
                    vec![
                        json!(g.word_names(&word)),
                        json!(g.length(w)),
                        json!(g.length_nr(w)),
                        json!(w.class.0),
                        json!(exps),
                    ]
                })
                .collect();
            Ok(Output::Table {
                meta: vec![],
                columns: ["rep_word", "length_F", "length_nr", "kottwitz_class", "cell_size_exponents"]
                    .map(String::from)
                    .to_vec(),
                rows,
            })
        }
        Command::CellSize { group, element } => {
            let g = load(cli, group)?;
            let w = g.parse_element(element)?;
            Ok(polynomial(cells::cell_size(&g, &w), cli.q))
        }
        Command::Poincare { group, max_len, parabolic } => {
            let g = load(cli, group)?;
            let j = ParabolicSubset::parse(&g, parabolic)?;
            Ok(polynomial(cells::ball_poincare(&g, *max_len, &j), cli.q))
        }
        Command::DValues { group } => {
            let g = load(cli, group)?;
            let rows = g
                .wall_names()
                .into_iter()
                .zip(g.descent().d_values())
                .map(|(n, d)| vec![json!(n), json!(d)])
                .collect();
            Ok(Output::Table {
                meta: vec![],
                columns: vec!["wall".into(), "d".into()],
                rows,
            })
        }
        Command::Check { groups, depth } => {
            let specs: Vec<String> = if groups.is_empty() {
                checks::BUILTIN_SPECS.iter().map(|s| s.to_string()).collect()
            } else {
                groups.clone()
            };
            let mut reports = Vec::new();
            for s in &specs {
                reports.push(checks::run_all(&load(cli, s)?, *depth));
            }
            Ok(Output::Report { reports })
        }
    }
}

fn info(g: &IwahoriWeyl) -> Result<Output, Error> {
    let sys = g.system();
    let d = g.descent();
    let coxeter: Vec<String> = sys
        .coxeter_matrix()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    let rows = sys
        .walls()
        .iter()
        .zip(d.orbits())
        .zip(d.d_values())
        .map(|((w, orbit), dv)| {
            let orbit: Vec<String> = orbit.iter().map(|&i| d.nr().walls()[i].name.clone()).collect();
            vec![json!(w.name), json!(w.root.to_string()), json!(orbit), json!(dv)]
        })
        .collect();
    Ok(Output::Table {
        meta: vec![
            ("group".into(), json!(g.spec().to_string())),
            ("twist_order".into(), json!(d.action().order())),
            ("omega_order".into(), json!(g.omega().order())),
            ("coxeter_matrix".into(), json!(coxeter)),
        ],
        columns: vec!["wall".into(), "root".into(), "orbit".into(), "l_nr".into()],
        rows,
    })
}

/// Plain-text rendering of a JSON value: strings bare, arrays bracketed.
pub fn cell_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(cell_text).collect();
            format!("[{}]", parts.join(","))
        }
        other => other.to_string(),
    }
}

pub fn render(out: &Output) -> String {
    let mut s = String::new();
    match out {
        Output::Scalar { value } => {
            let _ = writeln!(s, "{}", cell_text(value));
        }
        Output::Polynomial { text, q, value, .. } => {
            let _ = writeln!(s, "{text}");
            if let (Some(q), Some(v)) = (q, value) {
                let _ = writeln!(s, "at q={q}: {v}");
            }
        }
        Output::Element(e) => {
            let _ = writeln!(s, "{}", e.text);
            let _ = writeln!(s, "kottwitz_class: {}", cell_text(&json!(e.kottwitz_class)));
            let _ = writeln!(s, "word: {}", cell_text(&json!(e.word)));
            let _ = writeln!(s, "length: {}", e.length);
            let _ = writeln!(s, "length_nr: {}", e.length_nr);
        }
        Output::Table { meta, columns, rows } => {
            for (k, v) in meta {
                let _ = writeln!(s, "{k}: {}", cell_text(v));
            }
            let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(cell_text).collect()).collect();
            s.push_str(&table(columns, &cells));
        }
        Output::Report { reports } => {
            for r in reports {
                let status = if r.passed() { "ok" } else { "FAILED" };
                let _ = writeln!(s, "group {} (depth {}): {status}", r.group, r.depth);
                let cells: Vec<Vec<String>> = r
                    .results
                    .iter()
                    .map(|c| {
                        vec![
                            c.name.to_string(),
                            c.cases.to_string(),
                            c.violations.to_string(),
                            if c.passed() { "pass".into() } else { format!("FAIL {}", c.examples.join("; ")) },
                        ]
                    })
                    .collect();
                let columns = ["check", "cases", "violations", "status"].map(String::from);
                s.push_str(&table(&columns, &cells));
            }
        }
    }
    s
}

fn table(columns: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut s = line(columns);
    for r in rows {
        s.push_str(&line(r));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Invocation {
        run(std::iter::once("iwahori").chain(args.iter().copied()))
    }

    #[test]
    fn scalar_commands() {
        assert_eq!(call(&["length", "A2", "s0*s1*s0"]).stdout, "3\n");
        assert_eq!(call(&["length-nr", "2A2", "s_orb"]).stdout, "3\n");
        assert_eq!(call(&["cell-size", "2A2", "s_orb"]).stdout, "q^3\n");
        assert_eq!(call(&["cell-size", "2A2", "s_orb", "--q=2"]).stdout, "q^3\nat q=2: 8\n");
        assert_eq!(call(&["bruhat", "A1", "s0", "s0*s1"]).stdout, "true\n");
        assert_eq!(call(&["poincare", "A1", "2"]).stdout, "1 + 2q + 2q^2\n");
    }

    #[test]
    fn d_values_table() {
        let out = call(&["d-values", "2A2"]);
        assert_eq!(out.code, EXIT_OK);
        assert_eq!(out.stdout, "wall   d\ns_fix  1\ns_orb  3\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["length", "H3", "s0"]).code, EXIT_PARSE);
        assert_eq!(call(&["length", "A2", "s7"]).code, EXIT_PARSE);
        assert_eq!(call(&["frobnicate"]).code, EXIT_PARSE);
        let e = call(&["length", "2A2", "t[1,0]"]);
        assert_eq!(e.code, EXIT_DOMAIN);
        assert!(e.stderr.starts_with("error[not-sigma-fixed]"), "{}", e.stderr);
        let e = call(&["double-cosets", "A1", "s0,s1", "{}", "2"]);
        assert_eq!(e.code, EXIT_DOMAIN);
        assert!(e.stderr.starts_with("error[infinite-parabolic]"));
        let e = call(&["length", "A2", "t[1/2,0]", "--json"]);
        assert_eq!(e.code, EXIT_DOMAIN);
        let v: Value = serde_json::from_str(&e.stdout).unwrap();
        assert_eq!(v["error"]["code"], "not-in-lattice");
        assert_eq!(call(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn lattice_flag_applies_when_spec_has_none() {
        assert_eq!(call(&["omega", "A2", "--json"]).stdout.contains("\"order\""), true);
        let out = call(&["kottwitz", "A2", "t[2/3,1/3]", "--lattice=sc"]);
        assert_eq!(out.code, EXIT_DOMAIN);
        let out = call(&["kottwitz", "A2--lattice=adjoint", "t[2/3,1/3]", "--lattice=sc"]);
        assert_eq!(out.code, EXIT_OK);
    }

    #[test]
    fn reduce_round_trips() {
        let out = call(&["reduce", "A2", "s1*s2*s1*s2"]);
        let text = out.stdout.lines().next().unwrap().to_string();
        assert_eq!(text, "s2*s1");
        let again = call(&["reduce", "A2", &text]);
        assert_eq!(again.stdout, out.stdout);
    }
}
