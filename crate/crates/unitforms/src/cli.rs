//! Command-line front end.
//!
//! Exit codes: 0 success or congruent, 1 not congruent, 2 undecided or
//! unsupported input, 3 malformed input or usage, 4 other failures.

use std::io::{Read, Write};
use std::path::Path;

use anyhow::{anyhow, bail, Context as _};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use unitforms_core::classify::{classify, Verdict};
use unitforms_core::coxeter::{
    coxeter_from_form, coxeter_from_quiver, inverse_quiver, inverse_via_gram, inverse_via_recursion,
    one_star_coxeter_polynomial, triangular_inverse_identity,
};
use unitforms_core::star::{
    canonical_one_star, canonical_star, one_star_quiver, one_tree_to_one_star, tree_to_star,
};
use unitforms_core::{
    realize_as_quiver, verify_congruence, CongruenceCertificate, CongruenceKind, Error as CoreError,
    IteratedTransform, Quiver, Transform, UnitForm,
};

use crate::formats::{
    transforms_to_docs, CertificateDoc, Coeffs, CoxeterDoc, FormDoc, FormatError, Input, IntMatrix, QuiverDoc,
    ReductionReport, ShapeDoc, TransformDoc, VerdictDoc,
};
use crate::pretty::to_pretty;
use crate::sweep::random_sweep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(name = "unitforms", version, about = "Unit forms, quivers and strong Gram congruence")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Largest power tried when computing a Coxeter number (default lcm(1..n+1)).
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Worker threads for sweeps.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    /// Re-check certificates before printing (default).
    #[arg(long, global = true, overrides_with = "no_verify")]
    pub verify: bool,
    #[arg(long = "no-verify", global = true, overrides_with = "verify")]
    pub no_verify: bool,
    /// Seed for randomized sweeps.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

/// Inputs are file paths, `-` for standard input, or inline text: JSON
/// documents or arrow lists such as `1->2, 2->3`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gram matrices, rank, corank and connectivity of a unit form.
    Form { input: String },
    /// Incidence matrix, incidence bigraph and unit form of a quiver.
    Quiver {
        input: Option<String>,
        #[arg(long)]
        arrows: Option<String>,
    },
    /// Replays a transformation log on a form or a quiver.
    Transform {
        input: String,
        #[arg(long)]
        log: String,
    },
    /// Reduces a tree to a maximal star or a 1-tree to a maximal 1-star.
    Reduce {
        input: String,
        /// Center vertex of the result (1-based).
        #[arg(long, default_value_t = 1)]
        center: usize,
        /// Go on to the canonical star or 1-star of the class.
        #[arg(long)]
        canonical: bool,
    },
    /// Inverse quiver by three routes.
    Inverse { input: String },
    /// Coxeter matrix, polynomial and number.
    Coxeter {
        input: Option<String>,
        /// Maximal 1-star shape `n,ell,m` with `1 <= ell < m <= n+1`.
        #[arg(long, value_name = "N,ELL,M")]
        one_star: Option<String>,
    },
    /// Realizes a unit form as the incidence form of a quiver.
    Realize { input: String },
    /// Decides strong Gram congruence of two forms.
    Classify { left: String, right: String },
    /// Random consistency sweep over connected quivers.
    Sweep {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        max_arrows: usize,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    error: anyhow::Error,
}

fn classify_error(e: anyhow::Error) -> Failure {
    let code = if e.downcast_ref::<FormatError>().is_some() || e.downcast_ref::<std::io::Error>().is_some() {
        3
    } else {
        match e.downcast_ref::<CoreError>() {
            Some(CoreError::NotTypeA { .. } | CoreError::WrongCorank { .. } | CoreError::SearchBudget { .. }) => 2,
            Some(_) => 4,
            None => 3,
        }
    };
    Failure { code, error: e }
}

fn read_source(arg: &str) -> anyhow::Result<String> {
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    if Path::new(arg).is_file() {
        return std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"));
    }
    Ok(arg.to_string())
}

fn read_input(arg: &str) -> anyhow::Result<Input> {
    Ok(Input::parse(&read_source(arg)?)?)
}

fn read_quiver(arg: &str) -> anyhow::Result<Quiver> {
    match read_input(arg)? {
        Input::Quiver(q) => Ok(q),
        Input::Form(_) => Err(FormatError::UnknownDocument).context("expected a quiver"),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("documents serialize")
}

struct Outcome {
    doc: Value,
    code: i32,
}

impl Outcome {
    fn ok(doc: Value) -> Self {
        Outcome { doc, code: 0 }
    }
}

fn form_command(arg: &str) -> anyhow::Result<Outcome> {
    let q = read_input(arg)?.form()?;
    let (rank, corank) = q.rank_corank();
    let components: Vec<Vec<usize>> = q.components().iter().map(|c| c.iter().map(|i| i + 1).collect()).collect();
    Ok(Outcome::ok(json!({
        "n": q.n(),
        "tri_gram": to_value(&IntMatrix(q.tri_gram().clone())),
        "symmetric_gram": to_value(&IntMatrix(q.symmetric_gram())),
        "rank": rank,
        "corank": corank,
        "connected": q.is_connected(),
        "components": components,
        "non_negative": q.is_non_negative(),
        "positive": q.is_positive(),
    })))
}

fn quiver_command(input: Option<&str>, arrows: Option<&str>) -> anyhow::Result<Outcome> {
    let q = match (input, arrows) {
        (_, Some(text)) => crate::formats::parse_quiver_text(text)?,
        (Some(arg), None) => read_quiver(arg)?,
        (None, None) => bail!(FormatError::UnknownDocument),
    };
    let form = q.unit_form()?;
    let shape = q.shape();
    Ok(Outcome::ok(json!({
        "quiver": to_value(&QuiverDoc::from_quiver(&q)),
        "incidence": to_value(&IntMatrix(q.incidence_matrix())),
        "incidence_bigraph": to_value(&IntMatrix(q.incidence_bigraph().tri_adj().clone())),
        "unit_form": to_value(&FormDoc::from_form(&form)),
        "connected": shape.connected,
        "tree": shape.tree,
        "one_tree": shape.one_tree,
        "corank": form.corank(),
    })))
}

fn strong_and_weak(qp: &UnitForm, q: &UnitForm, b: &unitforms_core::Matrix) -> anyhow::Result<(bool, bool)> {
    let mut strong = CongruenceCertificate::new(b.clone(), CongruenceKind::Strong);
    let mut weak = CongruenceCertificate::new(b.clone(), CongruenceKind::Weak);
    Ok((verify_congruence(qp, q, &mut strong)?, verify_congruence(qp, q, &mut weak)?))
}

fn transform_command(arg: &str, log: &str, verify: bool) -> anyhow::Result<Outcome> {
    let input = read_input(arg)?;
    let docs: Vec<TransformDoc> = serde_json::from_str(&read_source(log)?).map_err(FormatError::from)?;
    let steps = docs.iter().map(TransformDoc::to_transform).collect::<Result<Vec<Transform>, _>>()?;
    let start = input.form()?;
    let it = IteratedTransform::from_steps(start.n(), steps.clone())?;
    let b = it.accumulated().clone();
    let mut doc = json!({ "steps": to_value(&transforms_to_docs(&steps)), "b": to_value(&IntMatrix(b.clone())) });
    let result_form = match &input {
        Input::Form(q) => {
            let mut cur = q.clone();
            for t in &steps {
                cur = t.apply_to_form(&cur)?;
            }
            cur
        }
        Input::Quiver(q) => {
            let mut cur = q.clone();
            for t in &steps {
                cur = t.apply_to_quiver(&cur)?;
            }
            doc["quiver"] = to_value(&QuiverDoc::from_quiver(&cur));
            doc["incidence_identity"] = Value::Bool(q.incidence_matrix().mul(&b)? == cur.incidence_matrix());
            cur.unit_form()?
        }
    };
    doc["result"] = to_value(&FormDoc::from_form(&result_form));
    if verify {
        let (strong, weak) = strong_and_weak(&result_form, &start, &b)?;
        doc["strong"] = Value::Bool(strong);
        doc["weak"] = Value::Bool(weak);
    }
    Ok(Outcome::ok(doc))
}

fn reduce_command(arg: &str, center: usize, canonical: bool, verify: bool) -> anyhow::Result<Outcome> {
    let q = match read_input(arg)? {
        Input::Quiver(q) => q,
        Input::Form(f) => realize_as_quiver(&f)?.quiver,
    };
    let v = center.checked_sub(1).ok_or(FormatError::ZeroIndex)?;
    let shape = q.shape();
    let (output, it, star_shape, d) = if shape.tree {
        let (out, it) = if canonical { canonical_star(&q)? } else { tree_to_star(&q, v)? };
        (out, it, None, None)
    } else if shape.one_tree {
        if canonical {
            let (d, out, it) = canonical_one_star(&q)?;
            let s = unitforms_core::star::one_star_shape(&out)?;
            (out, it, Some(s), Some(d))
        } else {
            let (out, s, it) = one_tree_to_one_star(&q, v)?;
            (out, it, Some(s), Some(s.d()))
        }
    } else {
        let found = if shape.connected { q.corank()? } else { 0 };
        return Err(anyhow!(CoreError::WrongCorank { expected: 1, found })).context("reduce needs a tree or a 1-tree");
    };
    let b = it.accumulated().clone();
    let verified = if verify {
        let mut cert = CongruenceCertificate::new(b.clone(), CongruenceKind::Strong);
        let ok = verify_congruence(&output.unit_form()?, &q.unit_form()?, &mut cert)?;
        if !ok {
            bail!(CoreError::Internal("reduction certificate fails verification"));
        }
        ok
    } else {
        false
    };
    let report = ReductionReport {
        input: QuiverDoc::from_quiver(&q),
        output: QuiverDoc::from_quiver(&output),
        shape: star_shape.map(ShapeDoc::from_shape),
        d,
        steps: transforms_to_docs(it.steps()),
        b: IntMatrix(b),
        verified,
    };
    Ok(Outcome::ok(to_value(&report)))
}

fn inverse_command(arg: &str) -> anyhow::Result<Outcome> {
    let q = read_quiver(arg)?;
    let walk = inverse_quiver(&q)?;
    let gram = inverse_via_gram(&q)?;
    let recursion = inverse_via_recursion(&q)?;
    let agree = walk == gram && walk == recursion;
    Ok(Outcome {
        doc: json!({
            "walk": to_value(&QuiverDoc::from_quiver(&walk)),
            "gram": to_value(&QuiverDoc::from_quiver(&gram)),
            "recursion": to_value(&QuiverDoc::from_quiver(&recursion)),
            "agree": agree,
            "triangular_identity": triangular_inverse_identity(&q)?,
        }),
        code: if agree { 0 } else { 4 },
    })
}

fn parse_shape(text: &str) -> anyhow::Result<ShapeDoc> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| anyhow!(FormatError::UnknownDocument))
        .context("expected --one-star n,ell,m")?;
    match parts[..] {
        [n, ell, m] => Ok(ShapeDoc { n, ell, m }),
        _ => Err(anyhow!(FormatError::UnknownDocument)).context("expected --one-star n,ell,m"),
    }
}

fn coxeter_command(input: Option<&str>, one_star: Option<&str>, cap: Option<u64>) -> anyhow::Result<Outcome> {
    if let Some(text) = one_star {
        let shape_doc = parse_shape(text)?;
        let shape = shape_doc.to_shape()?;
        let quiver = one_star_quiver(shape);
        let data = coxeter_from_quiver(&quiver, cap)?;
        let closed = one_star_coxeter_polynomial(shape.n, shape.ell, shape.m)?;
        let mut doc = to_value(&CoxeterDoc::from_data(&data));
        doc["shape"] = to_value(&shape_doc);
        doc["d"] = json!(shape.d());
        doc["quiver"] = to_value(&QuiverDoc::from_quiver(&quiver));
        doc["closed_form"] = to_value(&Coeffs(closed.clone()));
        doc["agree"] = Value::Bool(closed == data.char_poly);
        return Ok(Outcome::ok(doc));
    }
    let arg = input.ok_or_else(|| anyhow!(FormatError::UnknownDocument)).context("coxeter needs an input or --one-star")?;
    let (data, routes_agree) = match read_input(arg)? {
        Input::Form(f) => (coxeter_from_form(&f, cap)?, None),
        Input::Quiver(q) => {
            let data = coxeter_from_quiver(&q, cap)?;
            let form_route = coxeter_from_form(&q.unit_form()?, cap)?;
            let agree = form_route.matrix == data.matrix;
            (data, Some(agree))
        }
    };
    let mut doc = to_value(&CoxeterDoc::from_data(&data));
    if let Some(agree) = routes_agree {
        doc["routes_agree"] = Value::Bool(agree);
    }
    Ok(Outcome::ok(doc))
}

fn realize_command(arg: &str) -> anyhow::Result<Outcome> {
    let q = read_input(arg)?.form()?;
    let r = realize_as_quiver(&q)?;
    Ok(Outcome::ok(json!({
        "quiver": to_value(&QuiverDoc::from_quiver(&r.quiver)),
        "dynkin_n": r.dynkin_n,
        "corank": r.corank,
        "to_canonical": to_value(&transforms_to_docs(r.to_canonical.steps())),
        "b": to_value(&IntMatrix(r.to_canonical.accumulated().clone())),
        "visited": r.visited,
    })))
}

fn classify_command(left: &str, right: &str, verify: bool) -> anyhow::Result<Outcome> {
    let q = read_input(left)?.form()?;
    let qp = read_input(right)?.form()?;
    let verdict = classify(&q, &qp)?;
    if verify {
        if let Some(cert) = &verdict.certificate {
            let mut again = CertificateDoc::from_certificate(cert).to_certificate();
            if !verify_congruence(&qp, &q, &mut again)? {
                bail!(CoreError::Internal("certificate fails re-verification"));
            }
        }
    }
    let code = match verdict.verdict {
        Verdict::Congruent => 0,
        Verdict::NotCongruent => 1,
        Verdict::Undecided => 2,
    };
    Ok(Outcome { doc: to_value(&VerdictDoc::from_verdict(&verdict)), code })
}

fn execute(cli: &Cli) -> anyhow::Result<Outcome> {
    let verify = !cli.no_verify;
    match &cli.command {
        Command::Form { input } => form_command(input),
        Command::Quiver { input, arrows } => quiver_command(input.as_deref(), arrows.as_deref()),
        Command::Transform { input, log } => transform_command(input, log, verify),
        Command::Reduce { input, center, canonical } => reduce_command(input, *center, *canonical, verify),
        Command::Inverse { input } => inverse_command(input),
        Command::Coxeter { input, one_star } => coxeter_command(input.as_deref(), one_star.as_deref(), cli.cap),
        Command::Realize { input } => realize_command(input),
        Command::Classify { left, right } => classify_command(left, right, verify),
        Command::Sweep { samples, max_arrows } => {
            if *max_arrows == 0 {
                bail!(FormatError::UnknownDocument);
            }
            let report = random_sweep(cli.seed, *samples, *max_arrows, cli.jobs);
            let code = if report.ok { 0 } else { 4 };
            Ok(Outcome { doc: to_value(&report), code })
        }
    }
}

/// Runs the command line `args` (program name first); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli).map_err(classify_error) {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Json => crate::pretty::to_json(&outcome.doc),
                Format::Pretty => to_pretty(&outcome.doc),
            };
            if out.write_all(text.as_bytes()).is_err() {
                return 4;
            }
            outcome.code
        }
        Err(Failure { code, error }) => {
            let _ = writeln!(err, "error: {error:#}");
            code
        }
    }
}
