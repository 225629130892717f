//! Command-line front end.
//!
//! Exit statuses: 0 success, 2 a construction or verification condition
//! fails, 3 a searched-for object does not exist, 4 a budget was exceeded,
//! 5 malformed input or usage.
//!
//! Group specs: `Z<n>`, `S<n>`, `A<n>`, `D<n>` (dihedral on `n` points),
//! `perm:<degree>:<gen>;<gen>;…`, `table:<path>`, `lmult:<source>`,
//! `rmult:<source>` and `gfp2:<p>`, where a quasigroup source is a file path
//! or `qn:<n>`. Subgroup specs: `;`-separated generators (labels or cycle
//! notation), `stab:<point>`, `trivial` or `whole`.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::baer::{baer_equivalence_check, baer_equivalence_check_left};
use crate::constructions::{
    construct1_left, construct1_right, construct2_left, construct2_right, construct3,
    find_universal_transversal_capped, translate_transversal_partition, TransversalPartition, DEFAULT_NODE_CAP,
};
use crate::field_instances::{make_field, mols_family};
use crate::group::{search_regular_subgroups, stabilizer, FiniteGroup, GroupError, Side, Subgroup};
use crate::perm::{Permutation, DEFAULT_CLOSURE_CAP};
use crate::quasigroup::{
    make_qn, q6_fixture, qn_has_even_translations, qn_lambda_formula, quasieg_transversal, Quasigroup,
};
use crate::sudoku_table::{canonical_json, CayleySudokuTable, SudokuVerdict};
use crate::{Error, Outcome};

#[derive(Debug, Parser)]
#[command(name = "cayley-sudoku", version, about = "Build and verify Cayley-Sudoku tables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    #[value(name = "1R")]
    OneRight,
    #[value(name = "1L")]
    OneLeft,
    #[value(name = "2L")]
    TwoLeft,
    #[value(name = "2R")]
    TwoRight,
    #[value(name = "3")]
    Three,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Exchange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a table by one of the coset constructions.
    Build {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        #[arg(long, value_enum)]
        construction: Construction,
        /// One part per line, elements separated by whitespace.
        #[arg(long)]
        partition: Option<String>,
        /// Exchange file holding the inner table (construction 3).
        #[arg(long)]
        inner: Option<String>,
        #[arg(long)]
        left_reps: Option<String>,
        #[arg(long)]
        right_reps: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        output: OutputFormat,
        /// Node budget for the transversal search.
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        cap: u64,
    },
    /// Find the least universal transversal of a subgroup.
    Search {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        cap: u64,
    },
    /// Verify an exchange document.
    Verify { path: String },
    /// Compare the three equivalent conditions on a transversal partition.
    BaerCheck {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
        /// Defaults to the translates of the least universal transversal,
        /// or the default partition when there is none.
        #[arg(long)]
        partition: Option<String>,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        cap: u64,
    },
    /// Walk through a worked example.
    Demo { name: String },
    /// The orthogonal family of field tables for `GF(p²)`.
    Mols {
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value_t)]
        output: OutputFormat,
    },
}

/// Parses `argv` (including the program name), runs it, and returns the
/// exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Outcome::Malformed as i32 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(Report { text, outcome }) => {
            let _ = out.write_all(text.as_bytes());
            outcome as i32
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.outcome() as i32
        }
    }
}

/// Command output and its exit status.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub outcome: Outcome,
}

impl Report {
    fn ok(text: String) -> Report {
        Report {
            text,
            outcome: Outcome::Success,
        }
    }
}

pub fn execute(command: &Command) -> Result<Report, Error> {
    match command {
        Command::Build {
            group,
            subgroup,
            construction,
            partition,
            inner,
            left_reps,
            right_reps,
            output,
            cap,
        } => {
            let g = parse_group_spec(group)?;
            let s = parse_subgroup_spec(&g, subgroup)?;
            let parts = partition.as_deref().map(|p| read_partition(&g, p)).transpose()?;
            let table = match construction {
                Construction::Three => {
                    let need = |o: &Option<String>, flag: &str| {
                        o.clone()
                            .ok_or_else(|| Error::Usage(format!("construction 3 needs --{flag}")))
                    };
                    let inner_path = need(inner, "inner")?;
                    let inner = CayleySudokuTable::from_exchange(&read_file(&inner_path)?)?;
                    let l = parse_element_list(&g, &need(left_reps, "left-reps")?)?;
                    let r = parse_element_list(&g, &need(right_reps, "right-reps")?)?;
                    construct3(&s, &inner, &l, &r)?
                }
                &c => match build_table(&s, c, parts.as_deref(), *cap)? {
                    Some(t) => t,
                    None => return Ok(none_report(&s, construction_side(c))),
                },
            };
            Ok(Report::ok(render(&table, *output)))
        }
        Command::Search {
            group,
            subgroup,
            side,
            cap,
        } => {
            let g = parse_group_spec(group)?;
            let s = parse_subgroup_spec(&g, subgroup)?;
            let side = Side::from(*side);
            match find_universal_transversal_capped(&s, side, *cap)? {
                Some(u) => Ok(Report::ok(format!("{}\n", labels(&g, u.reps())))),
                None => Ok(none_report(&s, side)),
            }
        }
        Command::Verify { path } => {
            let table = CayleySudokuTable::from_exchange(&read_file(path)?)?;
            Ok(match table.verify_sudoku()? {
                SudokuVerdict::Pass => Report::ok("pass\n".into()),
                SudokuVerdict::Fail(f) => Report {
                    text: format!("fail: {f}\n"),
                    outcome: Outcome::ConditionFailed,
                },
            })
        }
        Command::BaerCheck {
            group,
            subgroup,
            side,
            partition,
            cap,
        } => {
            let g = parse_group_spec(group)?;
            let s = parse_subgroup_spec(&g, subgroup)?;
            let side = Side::from(*side);
            let parts = match partition {
                Some(p) => read_partition(&g, p)?,
                None => match find_universal_transversal_capped(&s, side, *cap)? {
                    Some(u) => translate_transversal_partition(&u)?.parts().to_vec(),
                    None => default_parts(&s, side),
                },
            };
            let report = match side {
                Side::Right => baer_equivalence_check(&s, &parts)?,
                Side::Left => baer_equivalence_check_left(&s, &parts)?,
            };
            let value = serde_json::to_value(&report).expect("report serializes");
            Ok(Report {
                text: canonical_json(&value),
                outcome: if report.all_hold() {
                    Outcome::Success
                } else {
                    Outcome::ConditionFailed
                },
            })
        }
        Command::Demo { name } => demo(name).map(Report::ok),
        Command::Mols { p, output } => mols(*p, *output).map(Report::ok),
    }
}

fn construction_side(c: Construction) -> Side {
    match c {
        Construction::OneRight | Construction::TwoLeft => Side::Left,
        _ => Side::Right,
    }
}

/// Runs construction 1 or 2 on `parts`, or on the default choice when
/// `parts` is `None`: the default partition for construction 1, the
/// translates of the least universal transversal for construction 2.
/// `Ok(None)` means no universal transversal exists.
pub fn build_table(
    s: &Subgroup,
    construction: Construction,
    parts: Option<&[Vec<usize>]>,
    cap: u64,
) -> Result<Option<CayleySudokuTable>, Error> {
    let side = construction_side(construction);
    let parts = match (parts, construction) {
        (Some(p), _) => p.to_vec(),
        (None, Construction::OneRight | Construction::OneLeft) => default_parts(s, side),
        (None, Construction::TwoLeft | Construction::TwoRight) => {
            match find_universal_transversal_capped(s, side, cap)? {
                Some(u) => translate_transversal_partition(&u)?.parts().to_vec(),
                None => return Ok(None),
            }
        }
        (None, Construction::Three) => {
            return Err(Error::Usage(
                "construction 3 needs an inner table and representatives".into(),
            ))
        }
    };
    let table = match construction {
        Construction::OneRight => construct1_right(s, &parts)?,
        Construction::OneLeft => construct1_left(s, &parts)?,
        Construction::TwoLeft => construct2_left(s, &parts)?,
        Construction::TwoRight => construct2_right(s, &parts)?,
        Construction::Three => unreachable!("handled above"),
    };
    Ok(Some(table))
}

fn none_report(s: &Subgroup, side: Side) -> Report {
    Report {
        text: format!(
            "none: no {side} transversal of {{{}}} is a transversal of every conjugate (search exhausted)\n",
            s.labels().join(", ")
        ),
        outcome: Outcome::NotFound,
    }
}

fn render(table: &CayleySudokuTable, output: OutputFormat) -> String {
    match output {
        OutputFormat::Text => table.render_text(),
        OutputFormat::Exchange => table.to_exchange(),
    }
}

fn default_parts(s: &Subgroup, side: Side) -> Vec<Vec<usize>> {
    TransversalPartition::default_partition(s, side).parts().to_vec()
}

fn labels(g: &FiniteGroup, xs: &[usize]) -> String {
    let ls: Vec<&str> = xs.iter().map(|&x| g.label(x)).collect();
    format!("{{{}}}", ls.join(", "))
}

fn read_file(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(Path::new(path)).map_err(|source| Error::Io {
        path: path.to_string(),
        source,
    })
}

fn parse_count(text: &str, what: &str) -> Result<usize, Error> {
    text.parse()
        .map_err(|_| Error::Usage(format!("{what}: expected a number, got {text:?}")))
}

/// Resolves a group spec; see the module documentation.
pub fn parse_group_spec(spec: &str) -> Result<Arc<FiniteGroup>, Error> {
    let spec = spec.trim();
    let group = if let Some(rest) = spec.strip_prefix("perm:") {
        let (degree, gens) = rest
            .split_once(':')
            .ok_or_else(|| Error::Usage(format!("{spec:?}: expected perm:<degree>:<gens>")))?;
        let degree = parse_count(degree, "degree")?;
        let gens = gens
            .split(';')
            .filter(|g| !g.trim().is_empty())
            .map(|g| Permutation::parse_cycles(g.trim(), degree))
            .collect::<Result<Vec<_>, _>>()?;
        let gens = if gens.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            gens
        };
        FiniteGroup::from_generators(&gens)?
    } else if let Some(path) = spec.strip_prefix("table:") {
        parse_group_table(&read_file(path)?)?
    } else if let Some(src) = spec.strip_prefix("lmult:") {
        read_quasigroup(src)?.lmult()?
    } else if let Some(src) = spec.strip_prefix("rmult:") {
        read_quasigroup(src)?.rmult()?
    } else if let Some(p) = spec.strip_prefix("gfp2:") {
        let p = parse_count(p, "characteristic")? as u32;
        return Ok(Arc::clone(make_field(p)?.additive_group()));
    } else if let Some(n) = spec.strip_prefix('Z') {
        FiniteGroup::make_cyclic(parse_count(n, "order")?)?
    } else if let Some(n) = spec.strip_prefix('S') {
        FiniteGroup::make_symmetric(parse_count(n, "degree")?)?
    } else if let Some(n) = spec.strip_prefix('A') {
        FiniteGroup::make_alternating(parse_count(n, "degree")?)?
    } else if let Some(n) = spec.strip_prefix('D') {
        make_dihedral(parse_count(n, "degree")?)?
    } else {
        return Err(Error::Usage(format!("unknown group spec {spec:?}")));
    };
    Ok(Arc::new(group.with_spec(spec)))
}

/// The dihedral group of order `2n` acting on `n ≥ 3` points.
pub fn make_dihedral(n: usize) -> Result<FiniteGroup, Error> {
    if n < 3 {
        return Err(Error::Usage(format!("D{n}: dihedral groups need at least 3 points")));
    }
    let rotation = Permutation::from_cycles(n, &[(0..n).collect()])?;
    let reflection: Vec<Vec<usize>> = (1..n).map(|i| vec![i, n - i]).filter(|c| c[0] < c[1]).collect();
    let reflection = Permutation::from_cycles(n, &reflection)?;
    Ok(FiniteGroup::from_generators(&[rotation, reflection])?)
}

/// First line: labels; then one row of the operation table per line.
pub fn parse_group_table(text: &str) -> Result<FiniteGroup, GroupError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let labels: Vec<String> = lines
        .next()
        .ok_or(GroupError::Empty)?
        .split_whitespace()
        .map(str::to_string)
        .collect();
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .collect();
    FiniteGroup::from_table(&labels, &rows)
}

fn read_quasigroup(src: &str) -> Result<Quasigroup, Error> {
    match src.strip_prefix("qn:") {
        Some(n) => Ok(make_qn(parse_count(n, "order")?)?),
        None => Ok(Quasigroup::parse(&read_file(src)?)?),
    }
}

/// Resolves a subgroup spec inside `g`.
pub fn parse_subgroup_spec(g: &Arc<FiniteGroup>, spec: &str) -> Result<Subgroup, Error> {
    let spec = spec.trim();
    match spec {
        "" | "trivial" => return Ok(Subgroup::trivial(g)),
        "whole" => return Ok(Subgroup::whole(g)),
        _ => {}
    }
    if let Some(point) = spec.strip_prefix("stab:") {
        let point = parse_count(point, "point")?;
        if point == 0 {
            return Err(Error::Usage("points are numbered from 1".into()));
        }
        return Ok(stabilizer(g, point - 1)?);
    }
    Ok(Subgroup::generated(g, &parse_element_list(g, spec)?))
}

fn parse_element_list(g: &FiniteGroup, text: &str) -> Result<Vec<usize>, Error> {
    text.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| Ok(g.parse_element(t)?))
        .collect()
}

/// One part per non-blank line, elements separated by whitespace.
pub fn read_partition(g: &FiniteGroup, path: &str) -> Result<Vec<Vec<usize>>, Error> {
    parse_partition(g, &read_file(path)?)
}

pub fn parse_partition(g: &FiniteGroup, text: &str) -> Result<Vec<Vec<usize>>, Error> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(|t| Ok(g.parse_element(t)?)).collect())
        .collect()
}

fn mols(p: u32, output: OutputFormat) -> Result<String, Error> {
    let k = make_field(p)?;
    let family = mols_family(&k)?;
    Ok(match output {
        OutputFormat::Exchange => {
            let tables: Vec<Value> = family
                .tables
                .iter()
                .map(|t| serde_json::from_str(&t.to_exchange()).expect("exchange output parses"))
                .collect();
            let (c0, c1) = k.modulus();
            let doc = json!({
                "p": p,
                "modulus": [c0, c1],
                "multipliers": family.multipliers.iter().map(|&x| k.label(x)).collect::<Vec<_>>(),
                "orthogonal": family.orthogonal,
                "orthogonal_pairs": family.orthogonal_pairs(),
                "all_pairs_orthogonal": family.all_pairs_orthogonal(),
                "tables": tables,
            });
            canonical_json(&doc)
        }
        OutputFormat::Text => {
            let mut out = String::new();
            mols_text(&mut out, p)?;
            out
        }
    })
}

fn mols_text(out: &mut String, p: u32) -> Result<(), Error> {
    let k = make_field(p)?;
    let (c0, c1) = k.modulus();
    let family = mols_family(&k)?;
    let n = family.tables.len();
    writeln!(out, "field: GF({}) = GF({p})[t] / (t^2 + {c1}t + {c0})", k.order()).unwrap();
    writeln!(
        out,
        "subfield F: {}",
        labels(k.additive_group(), k.subfield().elements())
    )
    .unwrap();
    let reps: Vec<String> = k.coset_representatives().iter().map(|&c| k.label(c)).collect();
    writeln!(out, "coset representatives: {}", reps.join(", ")).unwrap();
    writeln!(out, "tables: {n}").unwrap();
    for (x, t) in family.multipliers.iter().zip(&family.tables) {
        writeln!(out, "\nL_{} (verified: {})", k.label(*x), t.verify_sudoku()?.passed()).unwrap();
        out.push_str(&t.render_text());
    }
    writeln!(out, "\northogonality:").unwrap();
    for row in &family.orthogonal {
        let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
        writeln!(out, "  {}", cells.join(" ")).unwrap();
    }
    writeln!(
        out,
        "orthogonal pairs: {} of {}\nall pairs orthogonal: {}",
        family.orthogonal_pairs(),
        n * n.saturating_sub(1) / 2,
        family.all_pairs_orthogonal()
    )
    .unwrap();
    Ok(())
}

/// Frozen names: `z9`, `s3-c1`, `s3-c2`, `q6-left`, `q6-right`,
/// `qn:<n>`, `mols:<p>`.
pub fn demo(name: &str) -> Result<String, Error> {
    let mut out = String::new();
    match name {
        "z9" => demo_z9(&mut out)?,
        "s3-c1" => demo_s3_c1(&mut out)?,
        "s3-c2" => demo_s3_c2(&mut out)?,
        "q6-left" => demo_q6(&mut out, Side::Left)?,
        "q6-right" => demo_q6(&mut out, Side::Right)?,
        _ => {
            if let Some(n) = name.strip_prefix("qn:") {
                demo_qn(&mut out, parse_count(n, "order")?)?;
            } else if let Some(p) = name.strip_prefix("mols:") {
                mols_text(&mut out, parse_count(p, "characteristic")? as u32)?;
            } else {
                return Err(Error::Usage(format!(
                    "unknown demo {name:?}; expected z9, s3-c1, s3-c2, q6-left, q6-right, qn:<n> or mols:<p>"
                )));
            }
        }
    }
    Ok(out)
}

fn write_cosets(out: &mut String, s: &Subgroup, side: Side) {
    let g = s.group();
    writeln!(out, "{side} cosets:").unwrap();
    for c in s.cosets(side) {
        writeln!(out, "  {}", labels(g, &c.listing)).unwrap();
    }
}

fn write_parts(out: &mut String, g: &FiniteGroup, title: &str, parts: &[Vec<usize>]) {
    writeln!(out, "{title}:").unwrap();
    for (i, p) in parts.iter().enumerate() {
        writeln!(out, "  {}: {}", i + 1, labels(g, p)).unwrap();
    }
}

fn write_table(out: &mut String, table: &CayleySudokuTable) -> Result<(), Error> {
    let (r, c) = table.block_shape();
    writeln!(out, "block shape: {r} rows x {c} columns").unwrap();
    writeln!(out, "verify_sudoku: {}", verdict(&table.verify_sudoku()?)).unwrap();
    out.push_str(&table.render_text());
    Ok(())
}

fn verdict(v: &SudokuVerdict) -> String {
    match v {
        SudokuVerdict::Pass => "pass".into(),
        SudokuVerdict::Fail(f) => format!("fail ({f})"),
    }
}

fn demo_z9(out: &mut String) -> Result<(), Error> {
    let g = parse_group_spec("Z9")?;
    let s = parse_subgroup_spec(&g, "3")?;
    writeln!(out, "group: Z9, order {}", g.order()).unwrap();
    writeln!(out, "subgroup S = {}", labels(&g, s.elements())).unwrap();
    write_cosets(out, &s, Side::Right);
    let parts = default_parts(&s, Side::Left);
    write_parts(out, &g, "left transversal partition", &parts);
    writeln!(out, "construction 1R").unwrap();
    write_table(out, &construct1_right(&s, &parts)?)
}

fn demo_s3_c1(out: &mut String) -> Result<(), Error> {
    let g = parse_group_spec("S3")?;
    let s = parse_subgroup_spec(&g, "(12)")?;
    writeln!(out, "group: S3, order {}", g.order()).unwrap();
    writeln!(out, "subgroup S = {}", labels(&g, s.elements())).unwrap();
    write_cosets(out, &s, Side::Left);
    let parts = parse_partition(&g, "(1) (13) (132)\n(12) (123) (23)\n")?;
    write_parts(out, &g, "right transversal partition", &parts);
    writeln!(out, "construction 1L").unwrap();
    write_table(out, &construct1_left(&s, &parts)?)
}

fn demo_s3_c2(out: &mut String) -> Result<(), Error> {
    let g = parse_group_spec("S3")?;
    let s = parse_subgroup_spec(&g, "(12)")?;
    writeln!(out, "group: S3, order {}", g.order()).unwrap();
    writeln!(out, "subgroup S = {}", labels(&g, s.elements())).unwrap();
    writeln!(out, "conjugates:").unwrap();
    for c in s.distinct_conjugates() {
        writeln!(out, "  {}", labels(&g, c.elements())).unwrap();
    }
    write_cosets(out, &s, Side::Left);
    let u = find_universal_transversal_capped(&s, Side::Left, DEFAULT_NODE_CAP)?
        .ok_or_else(|| Error::Usage("no universal transversal".into()))?;
    writeln!(out, "least universal left transversal: {}", labels(&g, u.reps())).unwrap();
    let p = translate_transversal_partition(&u)?;
    write_parts(out, &g, "translates", p.parts());
    writeln!(out, "construction 2L").unwrap();
    write_table(out, &construct2_left(&s, p.parts())?)?;

    let s4 = parse_group_spec("S4")?;
    let v = parse_subgroup_spec(&s4, "(12)(34)")?;
    let none = find_universal_transversal_capped(&v, Side::Left, DEFAULT_NODE_CAP)?;
    writeln!(
        out,
        "\nS4, S = {}: universal left transversal: {}",
        labels(&s4, v.elements()),
        none.map_or("none (search exhausted)".to_string(), |u| labels(&s4, u.reps()))
    )
    .unwrap();
    Ok(())
}

fn demo_q6(out: &mut String, side: Side) -> Result<(), Error> {
    let q = q6_fixture();
    let (name, sym) = match side {
        Side::Left => ("LMult", "lambda"),
        Side::Right => ("RMult", "rho"),
    };
    writeln!(out, "quasigroup Q6:").unwrap();
    for row in q.table() {
        let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
        writeln!(out, "  {}", cells.join(" ")).unwrap();
    }
    for l in 1..=q.order() {
        let t = match side {
            Side::Left => q.left_translation(l)?,
            Side::Right => q.right_translation(l)?,
        };
        let parity = if t.parity().is_even() { "even" } else { "odd" };
        writeln!(out, "{sym}_{l} = {} ({parity})", t.render_cycles()).unwrap();
    }
    let data = quasieg_transversal(&q, side, 1)?;
    let g = &data.group;
    writeln!(out, "|{name}(Q6)| = {}", g.order()).unwrap();
    writeln!(out, "stabilizer of 1: {}", labels(g, data.stabilizer.elements())).unwrap();
    let complements = data.stabilizer.complements();
    if complements.is_empty() {
        writeln!(out, "complements: none (all subgroups checked)").unwrap();
    }
    for c in &complements {
        let cyclic = c.elements().iter().find(|&&x| g.element_order(x) == c.order());
        let generator = cyclic.map_or(String::new(), |&x| format!(" = <{}>", g.label(x)));
        writeln!(out, "complement: {}{generator}", labels(g, c.elements())).unwrap();
    }
    if let Some(deg) = g.degree() {
        if deg <= 8 {
            let regular = search_regular_subgroups(g)?;
            writeln!(out, "regular subgroups: {}", regular.len()).unwrap();
        }
    }
    writeln!(
        out,
        "translations form a universal {side} transversal: {}",
        labels(g, data.transversal.reps())
    )
    .unwrap();
    let p = translate_transversal_partition(&data.transversal)?;
    let table = match side {
        Side::Left => construct2_left(&data.stabilizer, p.parts())?,
        Side::Right => construct2_right(&data.stabilizer, p.parts())?,
    };
    writeln!(out, "construction 2{}", if side == Side::Left { "L" } else { "R" }).unwrap();
    write_table(out, &table)
}

fn demo_qn(out: &mut String, n: usize) -> Result<(), Error> {
    let q = make_qn(n)?;
    writeln!(out, "quasigroup Q{n} (Latin square: yes)").unwrap();
    for row in q.table() {
        let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
        writeln!(out, "  {}", cells.join(" ")).unwrap();
    }
    let mut all_even = true;
    for i in 1..=n {
        let l = qn_lambda_formula(n, i)?;
        all_even &= l.parity().is_even();
        writeln!(out, "lambda_{i} = {} (formula agrees)", l.render_cycles()).unwrap();
    }
    writeln!(out, "all left translations even: {all_even}").unwrap();
    writeln!(out, "n > 2 and n = 2 mod 4: {}", qn_has_even_translations(n)).unwrap();
    match q.lmult() {
        Ok(g) => writeln!(out, "|LMult(Q{n})| = {}", g.order()).unwrap(),
        Err(e) => writeln!(
            out,
            "LMult(Q{n}) not enumerated: {e} (closure cap {DEFAULT_CLOSURE_CAP})"
        )
        .unwrap(),
    }
    Ok(())
}
