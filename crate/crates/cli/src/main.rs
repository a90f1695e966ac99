//! `schubert`: structure constants, Pieri expansions and operator matrices
//! for Grassmannians, from the command line.

mod render;

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use schubert_core::derivation::{d_pieri, leibniz_oracle, Rule};
use schubert_core::oracle::lr_constants;
use schubert_core::schubert::{presentation_relations_with, schur_determinant};
use schubert_core::torus::{
    eps_path, equivariant_pieri, gkm_check_diagonal, mu_class_eps, operator_matrix_mu,
    operator_matrix_mu_with, MuBasis,
};
use schubert_core::{
    make_context, multiply, poincare, presentation_relations, schur_op, Basis, Context, IndexSeq, Mode,
    OperatorSet, Poly, SchubertOp, WedgeElement,
};

use render::TableRow;

const DEFAULT_MAX_N: usize = 8;

#[derive(Parser)]
#[command(name = "schubert", version, about = "Equivariant Schubert calculus on Grassmannians G(k, n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand D_h applied to a basis wedge.
    Pieri {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        index: IndexSeq,
    },
    /// Structure constants of the product of two Schubert classes.
    Multiply {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        index: IndexSeq,
        /// Second factor.
        #[arg(long)]
        by: IndexSeq,
    },
    /// Matrix of the operator attached to a Schubert class.
    Matrix {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        index: IndexSeq,
    },
    /// Check that the relations of the presentation vanish.
    Relations {
        #[command(flatten)]
        common: Common,
    },
    /// Check the GKM divisibility conditions on operator diagonals.
    GkmCheck {
        /// Operator set in the fixture format; defaults to computing G(k, n).
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, required_unless_present = "fixtures")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "fixtures")]
        k: Option<usize>,
        #[arg(long)]
        index: Option<IndexSeq>,
        #[arg(long)]
        format: Option<Format>,
        /// Also compare fixture operators against the computed ones.
        #[arg(long)]
        verify: bool,
    },
    /// Evaluate Schubert operators at the first basis wedge.
    Giambelli {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        index: Option<IndexSeq>,
    },
    /// Full structure-constant table as JSON lines, I <= J in basis order,
    /// one line per K including zeros.
    Table {
        #[command(flatten)]
        common: Common,
        /// Ignore the size limit (SCHUBERT_MAX_N, default 8).
        #[arg(long)]
        force: bool,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value = "torus")]
    mode: Mode,
    /// eps or mu; mu requires the torus mode and is its default.
    #[arg(long)]
    basis: Option<BasisArg>,
    #[arg(long)]
    format: Option<Format>,
    /// Recompute through the slow reference path and compare.
    #[arg(long)]
    verify: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Eps,
    Mu,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Latex,
}

enum Failure {
    Usage(String),
    Inconsistent(String),
}

type Outcome = Result<(), Failure>;

impl From<schubert_core::Error> for Failure {
    fn from(e: schubert_core::Error) -> Self {
        Failure::Inconsistent(e.to_string())
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

struct Setup {
    ctx: Context,
    basis: Basis,
    format: Format,
    verify: bool,
}

impl Common {
    fn setup(&self, default_format: Format) -> Result<Setup, Failure> {
        let basis = match (self.basis, self.mode) {
            (Some(BasisArg::Mu), Mode::Torus) | (None, Mode::Torus) => Basis::Mu,
            (Some(BasisArg::Mu), mode) => {
                return Err(usage(format!("--basis mu requires --mode torus, got --mode {mode}")))
            }
            (Some(BasisArg::Eps), _) | (None, _) => Basis::Epsilon,
        };
        let ctx = make_context(self.n, self.k, self.mode).map_err(usage)?;
        Ok(Setup { ctx, basis, format: self.format.unwrap_or(default_format), verify: self.verify })
    }
}

impl Setup {
    fn check(&self, index: &IndexSeq) -> Outcome {
        self.ctx.check_index(index).map_err(usage)
    }
}

fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn compare<T: PartialEq + std::fmt::Display>(what: &str, fast: &T, slow: &T) -> Outcome {
    if fast == slow {
        eprintln!("verify: {what} agrees with the reference computation");
        Ok(())
    } else {
        Err(Failure::Inconsistent(format!("verify: {what} differs\n  fast: {fast}\n  slow: {slow}")))
    }
}

fn element_output(w: &WedgeElement, format: Format) -> String {
    match format {
        Format::Json => w.to_json(),
        Format::Text => w.to_string(),
        Format::Latex => render::latex_element(w),
    }
}

fn matrix_output(op: &SchubertOp, format: Format) -> String {
    match format {
        Format::Json => op.to_json(),
        Format::Text => op.to_string().trim_end().to_string(),
        Format::Latex => render::latex_matrix(op),
    }
}

fn pieri(common: &Common, h: usize, index: &IndexSeq) -> Outcome {
    let s = common.setup(Format::Text)?;
    s.check(index)?;
    let w = WedgeElement::basis_vector(s.basis, index.clone(), s.ctx.spec());
    let image = match s.basis {
        Basis::Mu => equivariant_pieri(h, index, &s.ctx)?,
        Basis::Epsilon => d_pieri(h, &w, &s.ctx)?,
    };
    emit(&element_output(&image, s.format));
    if s.verify {
        let slow = match s.basis {
            Basis::Mu => eps_path(h, &w, &MuBasis::new(&s.ctx)?, &s.ctx)?,
            Basis::Epsilon => leibniz_oracle(h, &w, &s.ctx)?,
        };
        compare("Pieri expansion", &image, &slow)?;
    }
    Ok(())
}

/// The operator of `index` built from Leibniz-expanded `D_h`.
fn reference_operator(index: &IndexSeq, s: &Setup) -> Result<SchubertOp, Failure> {
    Ok(match s.basis {
        Basis::Mu => operator_matrix_mu_with(index, Rule::Leibniz, &s.ctx)?,
        Basis::Epsilon => (*schur_determinant(index.entries(), Rule::Leibniz, &s.ctx)).clone(),
    })
}

fn operator(index: &IndexSeq, s: &Setup) -> Result<SchubertOp, Failure> {
    Ok(match s.basis {
        Basis::Mu => operator_matrix_mu(index, &s.ctx)?,
        Basis::Epsilon => (*schur_op(index, &s.ctx)).clone(),
    })
}

#[derive(PartialEq)]
struct Constants<'a>(&'a BTreeMap<IndexSeq, Poly>);

impl std::fmt::Display for Constants<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, c)| format!("{k}: {c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn multiply_cmd(common: &Common, i: &IndexSeq, j: &IndexSeq) -> Outcome {
    let s = common.setup(Format::Text)?;
    s.check(i)?;
    s.check(j)?;
    let terms = multiply(i, j, s.basis, &s.ctx)?;
    emit(&match s.format {
        Format::Json => render::product_json(i, j, s.basis, &terms),
        Format::Text => render::product_text(&terms),
        Format::Latex => render::product_latex(s.basis, &terms),
    });
    if s.verify {
        let col = s.ctx.position(j).expect("checked");
        let slow = reference_operator(i, &s)?.column(col).into_terms();
        compare("structure constants", &Constants(&terms), &Constants(&slow))?;
        let (n, k) = (s.ctx.n(), s.ctx.k());
        if s.ctx.mode() == Mode::Classical && i.weight() + j.weight() <= k * (n - k) {
            let lr: BTreeMap<IndexSeq, Poly> = lr_constants(i, j, k, n)?
                .into_iter()
                .map(|(key, c)| (key, Poly::constant(s.ctx.spec(), c)))
                .collect();
            compare("Littlewood-Richardson coefficients", &Constants(&terms), &Constants(&lr))?;
        }
    }
    Ok(())
}

fn matrix_cmd(common: &Common, index: &IndexSeq) -> Outcome {
    let s = common.setup(Format::Text)?;
    s.check(index)?;
    let op = operator(index, &s)?;
    emit(&matrix_output(&op, s.format));
    if s.verify {
        compare("operator matrix", &op, &reference_operator(index, &s)?)?;
    }
    Ok(())
}

fn relations_cmd(common: &Common) -> Outcome {
    let s = common.setup(Format::Text)?;
    let rels = presentation_relations(&s.ctx);
    let nonzero: Vec<usize> = (1..=rels.len()).filter(|&j| !rels[j - 1].is_zero()).collect();
    match s.format {
        Format::Json => emit(
            &serde_json::json!({
                "count": rels.len(),
                "all_zero": nonzero.is_empty(),
                "nonzero": nonzero,
            })
            .to_string(),
        ),
        Format::Text | Format::Latex if nonzero.is_empty() => {
            emit(&format!("{} relations, all zero", rels.len()))
        }
        Format::Text => emit(&format!("{} relations, nonzero: {nonzero:?}", rels.len())),
        Format::Latex => {
            for j in &nonzero {
                emit(&render::latex_matrix(&rels[j - 1]));
            }
        }
    }
    if s.verify {
        let slow = presentation_relations_with(&s.ctx, Rule::Leibniz);
        if slow != rels {
            return Err(Failure::Inconsistent("verify: relations differ under the Leibniz expansion".into()));
        }
        eprintln!("verify: relations agree with the reference computation");
    }
    if nonzero.is_empty() {
        Ok(())
    } else {
        Err(Failure::Inconsistent(format!("nonzero relations: {nonzero:?}")))
    }
}

fn gkm_cmd(
    fixtures: Option<&PathBuf>,
    n: Option<usize>,
    k: Option<usize>,
    index: Option<&IndexSeq>,
    format: Format,
    verify: bool,
) -> Outcome {
    let (ctx, ops) = match fixtures {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let set = OperatorSet::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let ctx = set.context().map_err(usage)?;
            let ops = set.operators(&ctx).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            (ctx, ops)
        }
        None => {
            let ctx = make_context(n.unwrap(), k.unwrap(), Mode::Torus).map_err(usage)?;
            let ops = ctx
                .basis()
                .iter()
                .map(|i| Ok((i.clone(), operator_matrix_mu(i, &ctx)?)))
                .collect::<Result<BTreeMap<_, _>, Failure>>()?;
            (ctx, ops)
        }
    };
    if let Some(i) = index {
        ctx.check_index(i).map_err(usage)?;
    }
    let mut failed = Vec::new();
    let mut reports = Vec::new();
    for (i, op) in &ops {
        if index.is_some_and(|want| want != i) {
            continue;
        }
        let report = gkm_check_diagonal(op, &ctx)?;
        if !report.all_passed() {
            failed.push(i.to_string());
        }
        reports.push((i, report));
    }
    match format {
        Format::Json => {
            let rows: Vec<_> = reports
                .iter()
                .map(|(i, r)| {
                    serde_json::json!({
                        "index": i.entries(),
                        "edges": r.edges.len(),
                        "passed": r.all_passed(),
                        "failures": r.failures().map(|e| {
                            serde_json::json!({"from": e.from.entries(), "to": e.to.entries(), "a": e.a, "b": e.b})
                        }).collect::<Vec<_>>(),
                    })
                })
                .collect();
            emit(&serde_json::Value::Array(rows).to_string());
        }
        Format::Text | Format::Latex => {
            for (i, r) in &reports {
                let failures: Vec<_> = r.failures().collect();
                if failures.is_empty() {
                    emit(&format!("G{i}: {} edges, all divisible", r.edges.len()));
                } else {
                    emit(&format!("G{i}: {} of {} edges fail", failures.len(), r.edges.len()));
                    for e in failures {
                        emit(&format!("  {} -- {}  (y{} - y{})", e.from, e.to, e.a, e.b));
                    }
                }
            }
        }
    }
    if verify {
        for (i, op) in &ops {
            let computed = operator_matrix_mu(i, &ctx)?;
            if &computed != op {
                let diag = if computed.diagonal() == op.diagonal() { "off-diagonal" } else { "diagonal" };
                return Err(Failure::Inconsistent(format!(
                    "verify: G{i} differs from the computed operator ({diag} entries)"
                )));
            }
        }
        eprintln!("verify: operators agree with the computed ones");
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Inconsistent(format!("GKM conditions fail for {}", failed.join(" "))))
    }
}

fn giambelli_cmd(common: &Common, index: Option<&IndexSeq>) -> Outcome {
    let s = common.setup(Format::Text)?;
    let indices: Vec<IndexSeq> = match index {
        Some(i) => {
            s.check(i)?;
            vec![i.clone()]
        }
        None => s.ctx.basis().to_vec(),
    };
    let mu = match s.basis {
        Basis::Mu => Some(MuBasis::new(&s.ctx)?),
        Basis::Epsilon => None,
    };
    let mut bad = Vec::new();
    let mut rows = Vec::new();
    for i in &indices {
        let (value, rule_check) = match &mu {
            Some(mu) => {
                let eval = poincare(&mu_class_eps(i, Rule::Pieri, &s.ctx)?);
                let slow = poincare(&mu_class_eps(i, Rule::Leibniz, &s.ctx)?);
                (mu.convert(&eval, Basis::Mu), mu.convert(&slow, Basis::Mu))
            }
            None => (
                poincare(&schur_op(i, &s.ctx)),
                poincare(&schur_determinant(i.entries(), Rule::Leibniz, &s.ctx)),
            ),
        };
        let want = WedgeElement::basis_vector(s.basis, i.clone(), s.ctx.spec());
        if value != want || (s.verify && rule_check != value) {
            bad.push(i.to_string());
        }
        rows.push((i, value, want));
    }
    for (i, value, want) in &rows {
        let ok = value == want;
        emit(&match s.format {
            Format::Json => serde_json::json!({
                "index": i.entries(),
                "value": serde_json::from_str::<serde_json::Value>(&value.to_json()).expect("valid json"),
                "ok": ok,
            })
            .to_string(),
            Format::Text => format!("{i}: {value}{}", if ok { "" } else { "  MISMATCH" }),
            Format::Latex => render::latex_element(value),
        });
    }
    if bad.is_empty() {
        if s.verify {
            eprintln!("verify: Leibniz expansion agrees");
        }
        Ok(())
    } else {
        Err(Failure::Inconsistent(format!("Giambelli check fails for {}", bad.join(" "))))
    }
}

fn max_n() -> Result<usize, Failure> {
    match std::env::var("SCHUBERT_MAX_N") {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("SCHUBERT_MAX_N: not a number: `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn table_cmd(common: &Common, force: bool) -> Outcome {
    let s = common.setup(Format::Json)?;
    let limit = max_n()?;
    if s.ctx.n() > limit && !force {
        return Err(usage(format!(
            "--n {} exceeds the table limit {limit}; pass --force or raise SCHUBERT_MAX_N",
            s.ctx.n()
        )));
    }
    let basis = s.ctx.basis();
    let pairs: Vec<(usize, usize)> =
        (0..basis.len()).flat_map(|a| (a..basis.len()).map(move |b| (a, b))).collect();
    // order of `pairs` is kept by the indexed parallel iterator
    let results = pairs
        .par_iter()
        .map(|&(a, b)| multiply(&basis[a], &basis[b], s.basis, &s.ctx))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = io::BufWriter::new(io::stdout().lock());
    let zero = s.ctx.zero();
    for (&(a, b), terms) in pairs.iter().zip(&results) {
        // dense: every K appears, zeros included
        for k in basis {
            let c = terms.get(k).unwrap_or(&zero);
            let line = match s.format {
                Format::Json => serde_json::to_string(&TableRow {
                    i: basis[a].entries(),
                    j: basis[b].entries(),
                    k: k.entries(),
                    coeff: c.to_string(),
                })
                .expect("serializable"),
                Format::Text => format!("{} {} {} {c}", basis[a], basis[b], k),
                Format::Latex => {
                    format!("C^{{{k}}}_{{{},{}}} = {}", basis[a], basis[b], render::latex_poly(c))
                }
            };
            let _ = writeln!(out, "{line}");
        }
    }
    drop(out);
    if s.verify {
        verify_table(&s, &pairs, &results)?;
    }
    Ok(())
}

fn verify_table(s: &Setup, pairs: &[(usize, usize)], results: &[BTreeMap<IndexSeq, Poly>]) -> Outcome {
    let basis = s.ctx.basis();
    let (n, k) = (s.ctx.n(), s.ctx.k());
    for (&(a, b), terms) in pairs.iter().zip(results) {
        let (i, j) = (&basis[a], &basis[b]);
        let swapped = multiply(j, i, s.basis, &s.ctx)?;
        if &swapped != terms {
            return Err(Failure::Inconsistent(format!("verify: C(I={i}, J={j}) is not symmetric")));
        }
        if s.ctx.mode() == Mode::Classical && i.weight() + j.weight() <= k * (n - k) {
            let lr: BTreeMap<IndexSeq, Poly> = lr_constants(i, j, k, n)?
                .into_iter()
                .map(|(key, c)| (key, Poly::constant(s.ctx.spec(), c)))
                .collect();
            if &lr != terms {
                return Err(Failure::Inconsistent(format!(
                    "verify: {i} * {j} differs from Littlewood-Richardson"
                )));
            }
        }
    }
    eprintln!(
        "verify: table is symmetric{}",
        if s.ctx.mode() == Mode::Classical { " and matches Littlewood-Richardson" } else { "" }
    );
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Pieri { common, h, index } => pieri(common, *h, index),
        Command::Multiply { common, index, by } => multiply_cmd(common, index, by),
        Command::Matrix { common, index } => matrix_cmd(common, index),
        Command::Relations { common } => relations_cmd(common),
        Command::GkmCheck { fixtures, n, k, index, format, verify } => {
            gkm_cmd(fixtures.as_ref(), *n, *k, index.as_ref(), format.unwrap_or(Format::Text), *verify)
        }
        Command::Giambelli { common, index } => giambelli_cmd(common, index.as_ref()),
        Command::Table { common, force } => table_cmd(common, *force),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Inconsistent(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
