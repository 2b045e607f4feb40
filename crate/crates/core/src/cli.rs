//! Command-line front end. Every subcommand reads a JSON payload and
//! writes a JSON document; all randomness comes from `--seed`.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::arith::{QMatrix, SparsePoly};
use crate::brackets::{
    cubic_expr, cubic_plane_square, expand_on_product, quadric_expr, quadric_symbolic_expansion,
    quadric_two_lines, verify_identity,
};
use crate::error::{Error, Result};
use crate::json::{self, JsonRational};
use crate::line_powers::{
    default_budget, line_power, line_power_matrix, power_hyperplane, power_linear_equations,
    sampled_power_span,
};
use crate::products::{
    expected_dimension, forms_vanish, gen_vandermonde, interpolate_forms, interpolate_hypersurface,
    span_count, span_dimension_formula, terracini_dimension, zero_margin_space, LinearSampler,
    ProductSampler, ReciprocalSampler, SegreSampler, VarietySampler,
};
use crate::projective::{pluecker, LinSpace, PPoint};
use crate::star::{build_star, verify_general_position, verify_star, PointSet};
use crate::suite::run_suite;
use crate::tropical::{
    degree_linear_products, degree_via_fans, degree_with_reciprocals, DegreeResult, DimMult,
};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_200_417;

/// Fresh samples used to double-check interpolated forms.
const RECHECK_SAMPLES: usize = 20;

#[derive(Parser, Debug)]
#[command(name = "hadamard", version, about = "Exact Hadamard products of linear spaces")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Read the JSON payload from this file instead of standard input.
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Eq)]
pub enum Command {
    /// Generator matrix, Plücker vector and equations of L^{*r}.
    LinePower,
    /// Star configuration from points on a line.
    StarConfig,
    /// Rank of the generalized Vandermonde matrix.
    SpanDim,
    /// Dimension and degree of a product of generic (reciprocal) linear spaces.
    Degree {
        /// Include the fan computation.
        #[arg(long)]
        transcript: bool,
    },
    /// Vanishing forms of a Hadamard product by interpolation.
    Interp,
    /// Tangent-space dimension of X * Y against the expected dimension.
    DimEstimate,
    /// Bracket-polynomial equations.
    Bracket {
        #[arg(value_enum)]
        mode: BracketMode,
        /// Expand symbolically instead of sampling (verify mode).
        #[arg(long)]
        symbolic: bool,
        /// Add the coefficients in bracket notation.
        #[arg(long)]
        notation: bool,
    },
    /// Recompute the worked examples and report pass/fail.
    PaperSuite,
}

impl Command {
    /// Whether the subcommand consumes a payload.
    pub fn needs_input(&self) -> bool {
        !matches!(self, Command::PaperSuite)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketMode {
    Quadric,
    Cubic,
    Verify,
}

/// One invocation: what to run, on which payload, with which seed.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    pub payload: String,
    pub seed: u64,
    pub format: Format,
}

type Rows = Vec<Vec<JsonRational>>;

fn parse<T: DeserializeOwned>(payload: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(payload);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            Error::Invalid(inner.to_string())
        } else {
            Error::Invalid(format!("at {path}: {inner}"))
        }
    })
}

/// Runs a job and returns the exit code with the rendered document.
pub fn run(job: &JobSpec) -> (i32, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    let (code, doc) = match dispatch(job, &mut rng) {
        Ok(v) => (0, v),
        Err(e) => (
            e.exit_code(),
            json!({ "error": { "code": e.exit_code(), "message": e.to_string() } }),
        ),
    };
    let text = match job.format {
        Format::Json => serde_json::to_string(&doc),
        Format::Pretty => serde_json::to_string_pretty(&doc),
    }
    .expect("values always serialize");
    (code, text + "\n")
}

fn dispatch(job: &JobSpec, rng: &mut ChaCha8Rng) -> Result<Value> {
    let p = job.payload.as_str();
    match &job.command {
        Command::LinePower => line_power_cmd(parse(p)?, rng),
        Command::StarConfig => star_cmd(parse(p)?),
        Command::SpanDim => span_dim_cmd(parse(p)?),
        Command::Degree { transcript } => degree_cmd(parse(p)?, *transcript, rng),
        Command::Interp => interp_cmd(parse(p)?, rng),
        Command::DimEstimate => dim_estimate_cmd(parse(p)?, rng),
        Command::Bracket {
            mode,
            symbolic,
            notation,
        } => bracket_cmd(*mode, parse(p)?, *symbolic, *notation, rng),
        Command::PaperSuite => {
            let report = run_suite(rng);
            Ok(serde_json::to_value(report).expect("report serializes"))
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LinePowerInput {
    line: Rows,
    r: usize,
    /// Also compute the span of sampled products.
    #[serde(default)]
    sampled: bool,
}

fn line_power_cmd(input: LinePowerInput, rng: &mut ChaCha8Rng) -> Result<Value> {
    let line = json::space_from_values(&input.line)?;
    let n = line.ambient();
    let r = input.r;
    let power = line_power(&line, r)?;
    let mut out = json!({
        "n": n,
        "r": r,
        "dim": power.dim(),
        "matrix": json::matrix(&line_power_matrix(&line, r)?),
        "generators": json::space(&power),
        "pluecker": json::pluecker(&pluecker(&power)),
    });
    if r < n {
        let eqs: Vec<Value> = power_linear_equations(&line, r)?.iter().map(json::poly).collect();
        out["equations"] = Value::Array(eqs);
    }
    if r + 1 == n {
        out["hyperplane"] = json::poly(&power_hyperplane(&pluecker(&line))?);
    }
    if input.sampled {
        let span = sampled_power_span(&line, r, default_budget(n), rng)?;
        out["sampled"] = json!({
            "dim": span.dim(),
            "generators": json::space(&span),
            "equations": json::matrix(&span.equations()),
            "agrees": span == power,
        });
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StarInput {
    points: Rows,
    r: usize,
    /// Defaults to the line spanned by the points.
    #[serde(default)]
    line: Option<Rows>,
}

fn star_cmd(input: StarInput) -> Result<Value> {
    let points = input
        .points
        .iter()
        .map(|p| json::point_from_values(p))
        .collect::<Result<Vec<_>>>()?;
    let line = match &input.line {
        Some(rows) => json::space_from_values(rows)?,
        None => LinSpace::span_of_points(&points).ok_or(Error::ZeroPoint)?,
    };
    let w = build_star(&PointSet::new(points)?, &line, input.r)?;
    let gp = verify_general_position(&w.hyperplanes, &w.ambient)?;
    let labeled: Vec<Value> = w
        .points
        .points()
        .iter()
        .zip(&w.subsets)
        .map(|(p, s)| json!({ "point": json::point(p), "subset": s }))
        .collect();
    Ok(json!({
        "n": w.ambient.ambient(),
        "r": w.r(),
        "ambient": {
            "generators": json::space(&w.ambient),
            "equations": json::matrix(&w.ambient.equations()),
        },
        "hyperplanes": w.hyperplanes.iter().map(|h| json::matrix(&h.equations())).collect::<Vec<_>>(),
        "points": labeled,
        "general_position": gp,
        "verified": verify_star(&w),
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceMult {
    gens: Rows,
    #[serde(default = "one")]
    r: usize,
}

fn one() -> usize {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpanDimInput {
    spaces: Vec<SpaceMult>,
}

fn span_dim_cmd(input: SpanDimInput) -> Result<Value> {
    let spaces = input
        .spaces
        .iter()
        .map(|s| Ok((json::space_from_values(&s.gens)?, s.r)))
        .collect::<Result<Vec<(LinSpace, usize)>>>()?;
    let vm = gen_vandermonde(&spaces)?;
    let dims: Vec<(usize, usize)> = spaces.iter().map(|(l, r)| (l.dim(), *r)).collect();
    let n = vm.cols() - 1;
    Ok(json!({
        "n": n,
        "rows": vm.rows(),
        "rank": vm.rank(),
        "span_dim": vm.rank() - 1,
        "formula": span_dimension_formula(&dims, n),
        "count": span_count(&dims),
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DegreeInput {
    #[serde(default)]
    plain: Vec<DimMult>,
    #[serde(default)]
    reciprocal: Vec<DimMult>,
    n: usize,
}

fn degree_cmd(input: DegreeInput, transcript: bool, rng: &mut ChaCha8Rng) -> Result<Value> {
    let result: DegreeResult = if input.reciprocal.is_empty() {
        degree_linear_products(&input.plain, input.n)?
    } else {
        degree_with_reciprocals(&input.plain, &input.reciprocal, input.n)?
    };
    let mut out = serde_json::to_value(&result).expect("serializes");
    if transcript {
        let t = degree_via_fans(&input.plain, &input.reciprocal, input.n, rng)?;
        out["fan_degree"] = json::rational(t.degree());
        out["transcript"] = serde_json::to_value(&t).expect("serializes");
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum SamplerSpec {
    Linear { gens: Rows },
    Reciprocal { gens: Rows },
    Segre { a: usize, b: usize },
    ZeroMargin { rows: usize, cols: usize },
}

impl SamplerSpec {
    fn build(&self) -> Result<Box<dyn VarietySampler>> {
        Ok(match self {
            SamplerSpec::Linear { gens } => Box::new(LinearSampler::new(json::space_from_values(gens)?)),
            SamplerSpec::Reciprocal { gens } => {
                Box::new(ReciprocalSampler::new(json::space_from_values(gens)?))
            }
            SamplerSpec::Segre { a, b } => Box::new(SegreSampler { a: *a, b: *b }),
            SamplerSpec::ZeroMargin { rows, cols } => {
                Box::new(LinearSampler::new(zero_margin_space(*rows, *cols)?))
            }
        })
    }
}

#[derive(Deserialize)]
struct Factor {
    #[serde(flatten)]
    sampler: SamplerSpec,
    #[serde(default = "one")]
    mult: usize,
}

fn product_of(factors: &[Factor]) -> Result<ProductSampler> {
    let mut boxed = Vec::new();
    for f in factors {
        if f.mult == 0 {
            return Err(Error::Invalid("factor multiplicity must be at least 1".into()));
        }
        for _ in 0..f.mult {
            boxed.push(f.sampler.build()?);
        }
    }
    ProductSampler::new(boxed)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InterpInput {
    factors: Vec<Factor>,
    /// Search degrees `1..=dmax` for a single form.
    #[serde(default)]
    dmax: Option<u32>,
    /// Return every form of exactly this degree instead.
    #[serde(default)]
    degree: Option<u32>,
}

fn interp_cmd(input: InterpInput, rng: &mut ChaCha8Rng) -> Result<Value> {
    let sampler = product_of(&input.factors)?;
    let (degree, forms) = match (input.degree, input.dmax) {
        (Some(_), Some(_)) => {
            return Err(Error::Invalid("give either degree or dmax, not both".into()))
        }
        (Some(d), None) => (d, interpolate_forms(&sampler, d, rng)?),
        (None, dmax) => {
            let (d, f) = interpolate_hypersurface(&sampler, dmax.unwrap_or(4), rng)?;
            (d, vec![f])
        }
    };
    let vanish = forms_vanish(&forms, &sampler, RECHECK_SAMPLES, rng)?;
    Ok(json!({
        "n": sampler.ambient(),
        "degree": degree,
        "forms": forms.iter().map(json::poly).collect::<Vec<_>>(),
        "recheck": { "samples": RECHECK_SAMPLES, "vanish": vanish },
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Expected {
    dim_x: usize,
    dim_y: usize,
    dim_h: usize,
    dim_g: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DimEstimateInput {
    x: Vec<Factor>,
    y: Vec<Factor>,
    #[serde(default)]
    expected: Option<Expected>,
}

fn dim_estimate_cmd(input: DimEstimateInput, rng: &mut ChaCha8Rng) -> Result<Value> {
    let x = product_of(&input.x)?;
    let y = product_of(&input.y)?;
    let dim = terracini_dimension(&x, &y, rng)?;
    let mut out = json!({ "n": x.ambient(), "tangent_dim": dim });
    if let Some(e) = input.expected {
        let exp = expected_dimension(e.dim_x, e.dim_y, e.dim_h, e.dim_g);
        out["expected_dim"] = json!(exp);
        out["deficient"] = json!(dim < exp);
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketInput {
    #[serde(default)]
    l: Option<Rows>,
    #[serde(default)]
    m: Option<Rows>,
    #[serde(default)]
    p: Option<Rows>,
    /// `quadric` or `cubic`; inferred from the spaces when absent.
    #[serde(default)]
    identity: Option<String>,
    #[serde(default = "default_trials")]
    trials: usize,
}

fn default_trials() -> usize {
    20
}

fn required(rows: &Option<Rows>, name: &str) -> Result<LinSpace> {
    let rows = rows
        .as_ref()
        .ok_or_else(|| Error::Invalid(format!("missing field `{name}`")))?;
    json::space_from_values(rows)
}

fn notation_value(pairs: Vec<(String, String)>) -> Value {
    Value::Array(pairs.into_iter().map(|(m, c)| json!([m, c])).collect())
}

fn bracket_cmd(
    mode: BracketMode,
    input: BracketInput,
    symbolic: bool,
    notation: bool,
    rng: &mut ChaCha8Rng,
) -> Result<Value> {
    let identity = match (mode, input.identity.as_deref()) {
        (BracketMode::Quadric, _) => "quadric",
        (BracketMode::Cubic, _) => "cubic",
        (BracketMode::Verify, Some(s @ ("quadric" | "cubic"))) => s,
        (BracketMode::Verify, Some(other)) => {
            return Err(Error::Invalid(format!(
                "at identity: expected \"quadric\" or \"cubic\", got {other:?}"
            )))
        }
        (BracketMode::Verify, None) if input.p.is_some() => "cubic",
        (BracketMode::Verify, None) => "quadric",
    };
    let mut out = json!({ "identity": identity });
    if notation {
        let expr = if identity == "quadric" { quadric_expr() } else { cubic_expr() };
        out["notation"] = notation_value(expr.notation());
    }
    if mode == BracketMode::Verify && symbolic && identity == "quadric" && input.l.is_none() {
        let e = quadric_symbolic_expansion()?;
        out["mode"] = json!("symbolic");
        out["variables"] = json!(20);
        out["holds"] = json!(e.is_zero());
        return Ok(out);
    }
    let (form, factors): (SparsePoly, Vec<LinSpace>) = if identity == "quadric" {
        let (l, m) = (required(&input.l, "l")?, required(&input.m, "m")?);
        (quadric_two_lines(&pluecker(&l), &pluecker(&m))?, vec![l, m])
    } else {
        let p = required(&input.p, "p")?;
        (cubic_plane_square(&pluecker(&p))?, vec![p.clone(), p])
    };
    out["form"] = json::poly(&form);
    if mode != BracketMode::Verify {
        return Ok(out);
    }
    let holds = if symbolic {
        out["mode"] = json!("symbolic");
        let refs: Vec<&LinSpace> = factors.iter().collect();
        expand_on_product(&form, &refs)?.is_zero()
    } else {
        out["mode"] = json!("sampling");
        out["trials"] = json!(input.trials);
        let sampler = ProductSampler::of_linear(
            &factors.iter().map(|f| (f.clone(), 1)).collect::<Vec<_>>(),
        )?;
        verify_identity(&form, &sampler, input.trials, rng)?
    };
    out["holds"] = json!(holds);
    Ok(out)
}

/// Parses a form back from the JSON written by this module.
pub fn form_from_json(v: &Value) -> Result<SparsePoly> {
    json::poly_from_value(v)
}

/// Parses a generator matrix back from the JSON written by this module.
pub fn matrix_from_json(v: &Value) -> Result<QMatrix> {
    let rows: Rows = serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
    json::matrix_from_values(&rows)
}

/// Parses a point back from the JSON written by this module.
pub fn point_from_json(v: &Value) -> Result<PPoint> {
    let coords: Vec<JsonRational> =
        serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
    json::point_from_values(&coords)
}
