use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use quadlie_core::current::{self, AssocAlgebra};
use quadlie_core::exactla::{self, Mat, Rat, Subspace};
use quadlie_core::extension::{
    assemble_metric, check_metric_conditions, extract_extension_data, lambda_phi, psi_matrix, satisfies_criterion,
    solve_criterion,
    Cochain, Criterion, CriterionSolution, ExtensionData,
};
use quadlie_core::invforms::{self, BilinearForm, MetricSearch, MetricSearchConfig, NoMetricCertificate};
use quadlie_core::liealg::LieAlgebra;
use quadlie_core::samples;
use quadlie_core::unital::{nonzero_invariant_form_exists, UnitalAlgebra};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::format::{self, mat_json, rat_str, subspace_json, vec_json, AlgebraFile, ExtensionFile, InputFile, Params};

pub const EXAMPLE_FIXTURE: &str = include_str!("../fixtures/example21.ext.json");

#[derive(Debug, Parser)]
#[command(name = "quadlie", version, about = "Exact computations with nilpotent Lie algebras and invariant metrics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input file (JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Value substituted for the parameter `xi`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xi: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Search budget: grid evaluations for `metric`, random closures for `af`.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Write the result to this path instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    #[arg(long, global = true)]
    pub text: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of a Lie, associative or extension file.
    Validate,
    /// Upper and lower central series.
    Series,
    /// The canonical ideals i(g) and J(g).
    Ideals,
    /// Basis of the invariant symmetric bilinear forms.
    Invforms,
    /// Search for an invariant metric.
    Metric,
    /// Build the Lie algebra of an extension file.
    Extend,
    /// Rewrite a quadratic algebra as extension data.
    Decompose {
        #[arg(long)]
        form: Option<String>,
    },
    /// Run the kernel criterion, then the cyclic criterion.
    Criteria,
    /// Centroid-valued pairing induced on a current algebra.
    Current {
        /// Associative algebra file.
        #[arg(long)]
        assoc: PathBuf,
        /// Name of the invariant form on the associative algebra.
        #[arg(long)]
        theta: Option<String>,
        #[arg(long)]
        form: Option<String>,
        /// Use a metric found by search on g ⊗ S instead of B ⊗ θ.
        #[arg(long)]
        tensor_search: bool,
    },
    /// The unital algebra A_f: simplicity and the commutator quotient.
    Af {
        #[arg(long)]
        form: Option<String>,
    },
    /// Run the worked example end to end.
    ReproduceExample,
}

/// Result of one command.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: Value,
    pub text: String,
    /// A file artifact written by `--output` in place of the report.
    pub artifact: Option<String>,
    pub code: i32,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            artifact: None,
            code: 0,
        }
    }

    fn finding_if(mut self, failed: bool) -> Self {
        if failed {
            self.code = 2;
        }
        self
    }
}

/// Runs the command line and returns `(exit code, stdout, stderr)`.
pub fn run_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            return if code == 0 {
                (0, e.to_string(), String::new())
            } else {
                (1, String::new(), e.to_string())
            };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let rendered = if cli.json {
                format::to_canonical(&out.json)
            } else {
                let mut t = out.text.clone();
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                t
            };
            if let Some(path) = &cli.output {
                let body = out.artifact.clone().unwrap_or_else(|| rendered.clone());
                if let Err(e) = std::fs::write(path, body) {
                    return (1, String::new(), format!("i/o error: {}: {e}\n", path.display()));
                }
                (out.code, format!("wrote {}\n", path.display()), String::new())
            } else {
                (out.code, rendered, String::new())
            }
        }
        Err(e) => (e.exit_code(), String::new(), format!("{e}\n")),
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let overrides = overrides(cli)?;
    match &cli.command {
        Command::Validate => validate(cli, &overrides),
        Command::Series => series(&load_lie(cli, &overrides)?),
        Command::Ideals => ideals(&load_lie(cli, &overrides)?),
        Command::Invforms => invariant_forms(&load_lie(cli, &overrides)?),
        Command::Metric => metric(cli, &load_lie(cli, &overrides)?),
        Command::Extend => extend(cli, &overrides),
        Command::Decompose { form } => decompose(cli, &load_lie(cli, &overrides)?, form.as_deref()),
        Command::Criteria => criteria(cli, &overrides),
        Command::Current {
            assoc,
            theta,
            form,
            tensor_search,
        } => current_cmd(cli, &overrides, assoc, theta.as_deref(), form.as_deref(), *tensor_search),
        Command::Af { form } => af(cli, &load_lie(cli, &overrides)?, form.as_deref()),
        Command::ReproduceExample => reproduce_example(cli, &overrides),
    }
}

fn overrides(cli: &Cli) -> Result<Params, CliError> {
    let mut p = Params::new();
    if let Some(xi) = &cli.xi {
        let v = exactla::parse_rat(xi).ok_or_else(|| CliError::Parse(format!("--xi: {xi:?} is not a rational")))?;
        p.insert("xi".into(), v);
    }
    Ok(p)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn read_input(cli: &Cli) -> Result<InputFile, CliError> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| CliError::Parse("--input is required for this command".into()))?;
    format::parse_input(&read_file(path)?)
}

/// A Lie algebra read from a Lie file or built from an extension file.
struct Loaded {
    g: LieAlgebra,
    file: Option<AlgebraFile>,
    ext: Option<(ExtensionData, Option<Mat>)>,
    params: Params,
}

fn load_lie(cli: &Cli, overrides: &Params) -> Result<Loaded, CliError> {
    match read_input(cli)? {
        InputFile::Lie(f) => {
            let params = f.params(overrides)?;
            Ok(Loaded {
                g: f.to_lie(&params)?,
                file: Some(f),
                ext: None,
                params,
            })
        }
        InputFile::Extension(f) => {
            let params = f.params(overrides)?;
            let (data, b_a) = f.to_data(&params)?;
            Ok(Loaded {
                g: data.build()?,
                file: None,
                ext: Some((data, b_a)),
                params,
            })
        }
        InputFile::Assoc(_) => Err(CliError::Validation("expected a Lie algebra or extension file".into())),
    }
}

/// `x3 + 2*u3 - alpha1`.
pub fn combo(names: &[String], v: &[Rat]) -> String {
    let mut out = String::new();
    for (name, c) in names.iter().zip(v) {
        if exactla::is_zero_vec(std::slice::from_ref(c)) {
            continue;
        }
        let neg = *c < Rat::from_integer(0.into());
        let abs = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if abs != exactla::one() {
            out.push_str(&format!("{}*", rat_str(&abs)));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn span_text(names: &[String], s: &Subspace) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = s.basis_vectors().iter().map(|v| combo(names, v)).collect();
    format!("span{{{}}}", parts.join(", "))
}

fn subspace_value(names: &[String], s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": subspace_json(s), "span": span_text(names, s) })
}

fn bracket_table(g: &LieAlgebra) -> Vec<(usize, usize, String)> {
    let names = g.basis_names();
    let mut out = Vec::new();
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let v = g.bracket_basis(i, j);
            if !exactla::is_zero_vec(&v) {
                out.push((i, j, format!("[{},{}] = {}", names[i], names[j], combo(names, &v))));
            }
        }
    }
    out
}

fn form_text(title: &str, f: &BilinearForm) -> String {
    let mut t = format!("{title}:\n");
    for i in 0..f.dim() {
        t.push_str("  [");
        t.push_str(&vec_json(f.gram().row(i)).join(", "));
        t.push_str("]\n");
    }
    t
}

fn validate(cli: &Cli, overrides: &Params) -> Result<Output, CliError> {
    let (kind, dim) = match read_input(cli)? {
        InputFile::Lie(f) => ("lie", f.to_lie(&f.params(overrides)?)?.dim()),
        InputFile::Assoc(f) => ("assoc", f.to_assoc(&f.params(overrides)?)?.dim()),
        InputFile::Extension(f) => {
            let (d, _) = f.to_data(&f.params(overrides)?)?;
            ("extension", d.total_dim())
        }
    };
    Ok(Output::ok(
        json!({ "kind": kind, "dim": dim, "valid": true }),
        format!("valid {kind} data of dimension {dim}"),
    ))
}

fn series(l: &Loaded) -> Result<Output, CliError> {
    let names = l.g.basis_names();
    let s = l.g.central_series();
    let mut text = String::from("upper central series:\n");
    let upper: Vec<Value> = s
        .upper
        .iter()
        .enumerate()
        .map(|(k, z)| {
            text.push_str(&format!("  Z{} = {}\n", k + 1, span_text(names, z)));
            subspace_value(names, z)
        })
        .collect();
    text.push_str("lower central series:\n");
    let lower: Vec<Value> = s
        .lower
        .iter()
        .enumerate()
        .map(|(k, z)| {
            text.push_str(&format!("  g^{k} = {}\n", span_text(names, z)));
            subspace_value(names, z)
        })
        .collect();
    match s.nilpotency_class {
        Some(c) => text.push_str(&format!("nilpotent of class {c}\n")),
        None => text.push_str("not nilpotent\n"),
    }
    Ok(Output::ok(
        json!({
            "upper": upper,
            "lower": lower,
            "nilpotency_class": s.nilpotency_class,
            "stabilization_index": s.stabilization_index,
        }),
        text,
    ))
}

fn ideals(l: &Loaded) -> Result<Output, CliError> {
    let names = l.g.basis_names();
    let ideals = l.g.canonical_ideals()?;
    let report = l.g.verify_canonical_ideals()?;
    let text = format!(
        "i(g) = {}\nJ(g) = {}\nchecks: i ⊆ J {}, J abelian {}, [g,J] ⊆ i {}, J formula {}\n",
        span_text(names, &ideals.i_g),
        span_text(names, &ideals.j_g),
        report.i_in_j,
        report.j_abelian,
        report.g_j_in_i,
        report.j_formula
    );
    Ok(Output::ok(
        json!({
            "i": subspace_value(names, &ideals.i_g),
            "J": subspace_value(names, &ideals.j_g),
            "checks": serde_json::to_value(&report).expect("serializable"),
        }),
        text,
    )
    .finding_if(!report.all_pass()))
}

fn invariant_forms(l: &Loaded) -> Result<Output, CliError> {
    let space = invforms::invariant_forms(&l.g);
    let mut text = format!("invariant symmetric forms: dimension {}\n", space.dim());
    for (k, f) in space.basis.iter().enumerate() {
        text.push_str(&form_text(&format!("F{}", k + 1), f));
    }
    let basis: Vec<Value> = space.basis.iter().map(|f| json!(mat_json(f.gram()))).collect();
    Ok(Output::ok(json!({ "dim": space.dim(), "basis": basis }), text))
}

fn search_config(cli: &Cli) -> MetricSearchConfig {
    let mut config = MetricSearchConfig::default();
    if let Some(b) = cli.budget {
        config.grid_budget = b;
    }
    config
}

fn metric_search_value(res: &MetricSearch) -> (Value, String) {
    match res {
        MetricSearch::Found { form, stage, coeffs } => (
            json!({
                "result": "found",
                "stage": format!("{stage:?}").to_lowercase(),
                "coefficients": vec_json(coeffs),
                "gram": mat_json(form.gram()),
            }),
            format!(
                "invariant metric found ({} stage)\n{}",
                format!("{stage:?}").to_lowercase(),
                form_text("gram", form)
            ),
        ),
        MetricSearch::NoMetric(NoMetricCertificate::GridExhausted { sizes, evaluations }) => (
            json!({
                "result": "no_metric",
                "certificate": { "kind": "grid_exhausted", "grid_sizes": sizes, "evaluations": evaluations },
            }),
            format!(
                "no invariant metric (det≡0 certificate): determinant vanishes on the grid {sizes:?} ({evaluations} evaluations)\n"
            ),
        ),
        MetricSearch::NoMetric(NoMetricCertificate::CommonRadical { vector }) => (
            json!({
                "result": "no_metric",
                "certificate": { "kind": "common_radical", "vector": vec_json(vector) },
            }),
            format!(
                "no invariant metric (det≡0 certificate): every invariant form kills ({})\n",
                vec_json(vector).join(", ")
            ),
        ),
        MetricSearch::Inconclusive { grid_size } => (
            json!({ "result": "inconclusive", "grid_size": grid_size.to_string() }),
            format!("inconclusive: the certifying grid has {grid_size} points, over budget\n"),
        ),
    }
}

fn metric(cli: &Cli, l: &Loaded) -> Result<Output, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let res = invforms::find_invariant_metric(&l.g, &search_config(cli), &mut rng);
    let (json, text) = metric_search_value(&res);
    Ok(Output::ok(json, text))
}

fn extend(cli: &Cli, overrides: &Params) -> Result<Output, CliError> {
    let InputFile::Extension(f) = read_input(cli)? else {
        return Err(CliError::Validation("extend expects an extension file".into()));
    };
    let (data, b_a) = f.to_data(&f.params(overrides)?)?;
    let g = data.build()?;
    let mut file = AlgebraFile::from_lie(&g);
    if let Some(b_a) = &b_a {
        if check_metric_conditions(&data, b_a).map(|c| c.both()).unwrap_or(false) {
            let b = assemble_metric(&data, b_a)?;
            if invforms::is_metric(&g, &b) {
                file = file.with_form("B", &b);
            }
        }
    }
    let mut text = format!("Lie algebra of dimension {}\n", g.dim());
    for (_, _, line) in bracket_table(&g) {
        text.push_str(&format!("  {line}\n"));
    }
    let artifact = format::to_canonical(&file);
    Ok(Output {
        json: serde_json::to_value(&file).expect("serializable"),
        text,
        artifact: Some(artifact),
        code: 0,
    })
}

/// The metric from `--form`, the file's only form, the extension's `B_a`,
/// or a search, in that order.
fn metric_for(cli: &Cli, l: &Loaded, form: Option<&str>) -> Result<BilinearForm, CliError> {
    if let Some(f) = &l.file {
        if let Some((name, b)) = f.form(form, &l.params)? {
            if !invforms::is_metric(&l.g, &b) {
                return Err(CliError::Validation(format!("form {name:?} is not an invariant metric")));
            }
            return Ok(b);
        }
    }
    if let Some((data, Some(b_a))) = &l.ext {
        if check_metric_conditions(data, b_a).map(|c| c.both()).unwrap_or(false) {
            return Ok(assemble_metric(data, b_a)?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match invforms::find_invariant_metric(&l.g, &search_config(cli), &mut rng) {
        MetricSearch::Found { form, .. } => Ok(form),
        _ => Err(CliError::Validation("the algebra has no invariant metric".into())),
    }
}

fn decompose(cli: &Cli, l: &Loaded, form: Option<&str>) -> Result<Output, CliError> {
    let b = metric_for(cli, l, form)?;
    let ex = extract_extension_data(&l.g, &b)?;
    let file = ExtensionFile::from_data(&ex.data, Some(&ex.b_a));
    let names = l.g.basis_names();
    let new_names = ex.decomposed.basis_names();
    let basis: Vec<Value> = ex
        .basis
        .col_vecs()
        .iter()
        .zip(new_names)
        .map(|(v, n)| json!({ "name": n, "vector": vec_json(v), "expr": combo(names, v) }))
        .collect();
    let (r, da, di) = ex.witt.dims();
    let mut text = format!("decomposition g = h ⊕ a ⊕ i with dims {r}, {da}, {di}\n");
    for (v, n) in ex.basis.col_vecs().iter().zip(new_names) {
        text.push_str(&format!("  {n} = {}\n", combo(names, v)));
    }
    text.push_str("brackets in the new basis:\n");
    for (_, _, line) in bracket_table(&ex.decomposed) {
        text.push_str(&format!("  {line}\n"));
    }
    Ok(Output {
        json: json!({ "extension": serde_json::to_value(&file).expect("serializable"), "basis": basis }),
        text,
        artifact: Some(format::to_canonical(&file)),
        code: 0,
    })
}

fn criterion_value(data: &ExtensionData, res: &Option<CriterionSolution>) -> (Value, String) {
    let names = data.basis_names();
    match res {
        None => (json!({ "applicable": false }), "  not applicable (no solution L)\n".into()),
        Some(sol) => {
            let l = sol.l.to_matrix();
            let mut text = String::from("  solution L:\n");
            for x in 0..data.r() {
                let mut full = exactla::zero_vec(data.total_dim());
                for u in 0..data.dim_a {
                    full[data.r() + u] = l[(u, x)].clone();
                }
                text.push_str(&format!("    L({}) = {}\n", names[x], combo(&names, &full)));
            }
            text.push_str(&format!("  solution space dimension {}\n", sol.freedom.dim()));
            text.push_str(&form_text("  transported metric", &sol.metric));
            (
                json!({
                    "applicable": true,
                    "L": mat_json(&l),
                    "freedom": subspace_json(&sol.freedom),
                    "target_metric": mat_json(sol.target_metric.gram()),
                    "metric": mat_json(sol.metric.gram()),
                    "psi": mat_json(&sol.psi),
                }),
                text,
            )
        }
    }
}

fn criteria(cli: &Cli, overrides: &Params) -> Result<Output, CliError> {
    let InputFile::Extension(f) = read_input(cli)? else {
        return Err(CliError::Validation("criteria expects an extension file".into()));
    };
    let (data, b_a) = f.to_data(&f.params(overrides)?)?;
    let b_a = b_a.ok_or_else(|| CliError::Validation("B_a: required by the criteria".into()))?;
    let kernel = solve_criterion(&data, &b_a, Criterion::Kernel)?;
    let cyclic = solve_criterion(&data, &b_a, Criterion::Cyclic)?;
    let (kj, kt) = criterion_value(&data, &kernel);
    let (cj, ct) = criterion_value(&data, &cyclic);
    let text = format!("kernel criterion:\n{kt}cyclic criterion:\n{ct}");
    Ok(Output::ok(json!({ "kernel_criterion": kj, "cyclic_criterion": cj }), text))
}

fn current_cmd(
    cli: &Cli,
    overrides: &Params,
    assoc: &Path,
    theta: Option<&str>,
    form: Option<&str>,
    tensor_search: bool,
) -> Result<Output, CliError> {
    let l = load_lie(cli, overrides)?;
    let InputFile::Assoc(sf) = format::parse_input(&read_file(assoc)?)? else {
        return Err(CliError::Validation("--assoc expects an associative algebra file".into()));
    };
    let sparams = sf.params(overrides)?;
    let s: AssocAlgebra = sf.to_assoc(&sparams)?;
    let b = metric_for(cli, &l, form)?;
    let gs = current::current_algebra(&l.g, &s)?;
    let (bbar, source) = if tensor_search {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        match invforms::find_invariant_metric(&gs, &search_config(cli), &mut rng) {
            MetricSearch::Found { form, .. } => (form, "search"),
            _ => return Err(CliError::Validation("no invariant metric found on g ⊗ S".into())),
        }
    } else {
        let (_, th) = sf
            .form(theta, &sparams)?
            .ok_or_else(|| CliError::Validation("forms: the associative file needs an invariant form θ".into()))?;
        if !s.is_invariant_form(&th) || th.is_degenerate() {
            return Err(CliError::Validation("θ must be invariant and non-degenerate".into()));
        }
        (current::tensor_form(&b, &th), "tensor")
    };
    let an = current::gamma_operators(&l.g, &b, &s, &gs, &bbar)?;
    let report = current::pairing_check(&an, &s);
    let restriction = current::gamma_restriction_check(&an, &l.g, &s);
    let m = s.dim();
    let snames = s.basis_names();
    let mut pairs = Vec::new();
    let mut text = format!("g ⊗ S has dimension {} (form from {source})\n", gs.dim());
    for a in 0..m {
        for c in 0..m {
            pairs.push(json!({
                "s": a,
                "t": c,
                "gamma": mat_json(an.gamma(a, c)),
                "epsilon": mat_json(an.epsilon(a, c)),
            }));
            text.push_str(&format!(
                "ε({}, {}) = [{}]\n",
                snames[a],
                snames[c],
                (0..an.h.dim())
                    .map(|i| vec_json(an.epsilon(a, c).row(i)).join(" "))
                    .collect::<Vec<_>>()
                    .join("; ")
            ));
        }
    }
    text.push_str(&format!(
        "product rule {}, non-degenerate {}, in Cent(h) {}, restriction to [g,g] {}\n",
        report.product_rule, report.nondegenerate, report.in_centroid, restriction
    ));
    Ok(Output::ok(
        json!({
            "form_source": source,
            "pairs": pairs,
            "report": serde_json::to_value(&report).expect("serializable"),
            "restriction_to_derived": restriction,
        }),
        text,
    )
    .finding_if(!report.all_pass() || !restriction))
}

fn af(cli: &Cli, l: &Loaded, form: Option<&str>) -> Result<Output, CliError> {
    let from_file = match &l.file {
        Some(f) => f.form(form, &l.params)?.map(|(_, b)| b),
        None => None,
    };
    let f = match from_file {
        Some(b) => b,
        None => match &l.ext {
            Some((data, Some(b_a))) if check_metric_conditions(data, b_a).map(|c| c.both()).unwrap_or(false) => {
                assemble_metric(data, b_a)?
            }
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                match invforms::find_invariant_metric(&l.g, &search_config(cli), &mut rng) {
                    MetricSearch::Found { form, .. } => form,
                    _ => nonzero_invariant_form_exists(&l.g)?,
                }
            }
        },
    };
    let a = UnitalAlgebra::new(l.g.clone(), f)?;
    let budget = cli.budget.unwrap_or(1000) as usize;
    let v = a.simplicity_check(cli.seed, budget)?;
    let q = a.commutator_quotient_iso();
    let mut anames = vec!["1".to_string()];
    anames.extend(l.g.basis_names().iter().cloned());
    let witness = v.witness.as_ref();
    let text = format!(
        "verdict: {} (stage {})\nwitness: {}\nclosures: {} basis, {} sign, {} random\ncommutator quotient ≅ g: {}\n",
        v.verdict.as_str(),
        v.stage,
        witness.map_or("none".into(), |w| span_text(&anames, w)),
        v.stats.basis_closures,
        v.stats.sign_closures,
        v.stats.random_closures,
        q.verified()
    );
    Ok(Output::ok(
        json!({
            "verdict": v.verdict.as_str(),
            "stage": v.stage,
            "witness": witness.map(subspace_json),
            "stats": {
                "basis_closures": v.stats.basis_closures,
                "sign_closures": v.stats.sign_closures,
                "random_closures": v.stats.random_closures,
            },
            "form_degenerate": a.form().is_degenerate(),
            "quotient_isomorphic": q.verified(),
        }),
        text,
    )
    .finding_if(v.contradicts_theorem() || !q.verified()))
}

/// Pullback through `Ψ_L` of the assembled metric on `(λ_φ, μ + e_φ(L))`.
fn transported_metric(data: &ExtensionData, b_a: &Mat, l: &Cochain) -> Result<BilinearForm, CliError> {
    let lphi = lambda_phi(data, b_a)?
        .to_cochain()
        .ok_or_else(|| CliError::Finding("λ_φ is not skew".into()))?;
    let target = data.with_cocycle(lphi, data.mu.add(&data.e_phi(l)));
    let psi = psi_matrix(data, l, &Cochain::zero(data.r(), 1, data.dim_i));
    Ok(assemble_metric(&target, b_a)?.pullback(&psi))
}

/// `L(x_j) = ξ u_j`.
pub fn example_l(xi: &Rat) -> Cochain {
    Cochain::from_matrix(&Mat::identity(3).scale(xi))
}

fn reproduce_example(cli: &Cli, overrides: &Params) -> Result<Output, CliError> {
    let text_in = match &cli.input {
        Some(p) => read_file(p)?,
        None => EXAMPLE_FIXTURE.to_string(),
    };
    let InputFile::Extension(f) = format::parse_input(&text_in)? else {
        return Err(CliError::Validation("reproduce-example expects an extension file".into()));
    };
    let params = f.params(overrides)?;
    let xi = params.get("xi").cloned().unwrap_or_else(|| exactla::rat(1));
    let (data, b_a) = f.to_data(&params)?;
    let b_a = b_a.ok_or_else(|| CliError::Validation("B_a: required".into()))?;
    let g = data.build()?;
    let names = g.basis_names().to_vec();
    let mut checks: Vec<(&str, bool)> = Vec::new();
    let mut text = format!("worked example at xi = {}\n\nbrackets:\n", rat_str(&xi));

    let table = bracket_table(&g);
    for (_, _, line) in &table {
        text.push_str(&format!("  {line}\n"));
    }
    checks.push(("bracket_table", g == samples::example_algebra(&xi)));

    let s = g.central_series();
    text.push_str("\nupper central series:\n");
    for (k, z) in s.upper.iter().enumerate() {
        text.push_str(&format!("  Z{} = {}\n", k + 1, span_text(&names, z)));
    }
    text.push_str("lower central series:\n");
    for (k, z) in s.lower.iter().enumerate().skip(1) {
        text.push_str(&format!("  g^{k} = {}\n", span_text(&names, z)));
    }

    let ideals = g.canonical_ideals_from(&s)?;
    text.push_str(&format!(
        "\ni(g) = {}\nJ(g) = {}\n",
        span_text(&names, &ideals.i_g),
        span_text(&names, &ideals.j_g)
    ));
    checks.push(("i_is_h_dual", ideals.i_g == Subspace::coordinate(9, &[6, 7, 8])));
    checks.push(("J_is_a_plus_h_dual", ideals.j_g == Subspace::coordinate(9, &[3, 4, 5, 6, 7, 8])));

    let kernel = solve_criterion(&data, &b_a, Criterion::Kernel)?;
    let cyclic = solve_criterion(&data, &b_a, Criterion::Cyclic)?;
    let (kj, kt) = criterion_value(&data, &kernel);
    let (cj, ct) = criterion_value(&data, &cyclic);
    text.push_str(&format!("\nkernel criterion:\n{kt}cyclic criterion:\n{ct}"));
    let l_ref = example_l(&xi);
    let l_ok = satisfies_criterion(&data, &b_a, &l_ref, Criterion::Cyclic)?;
    checks.push(("L_equals_xi_u_solves_cyclic_criterion", l_ok));
    checks.push(("cyclic_criterion_applicable", cyclic.is_some()));

    let listed = samples::example_listed_entries(&xi);
    let space = invforms::invariant_forms(&g);
    let with_listed = space.with_entries(&listed);
    checks.push(("listed_entries_in_invariant_forms", with_listed.is_some()));
    let metric = if l_ok {
        let m = transported_metric(&data, &b_a, &l_ref)?;
        checks.push(("metric_is_invariant_and_nondegenerate", invforms::is_metric(&g, &m)));
        let listed_match = listed.iter().all(|(i, j, v)| m.entry(*i, *j) == v);
        checks.push(("metric_matches_listed_entries", listed_match));
        text.push('\n');
        text.push_str(&form_text("metric gram (through L(x_j) = xi u_j)", &m));
        Some(m)
    } else {
        None
    };
    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    text.push_str("\nchecks:\n");
    for (n, ok) in &checks {
        text.push_str(&format!("  {} {n}\n", if *ok { "PASS" } else { "FAIL" }));
    }

    let series_json = json!({
        "upper": s.upper.iter().map(|z| subspace_value(&names, z)).collect::<Vec<_>>(),
        "lower": s.lower.iter().map(|z| subspace_value(&names, z)).collect::<Vec<_>>(),
        "nilpotency_class": s.nilpotency_class,
    });
    let checks_json: serde_json::Map<String, Value> =
        checks.iter().map(|(n, ok)| (n.to_string(), Value::Bool(*ok))).collect();
    Ok(Output::ok(
        json!({
            "xi": rat_str(&xi),
            "basis_names": names,
            "brackets": table.iter().map(|(_, _, l)| l.clone()).collect::<Vec<_>>(),
            "series": series_json,
            "i": subspace_value(&names, &ideals.i_g),
            "J": subspace_value(&names, &ideals.j_g),
            "kernel_criterion": kj,
            "cyclic_criterion": cj,
            "metric": metric.as_ref().map(|m| mat_json(m.gram())),
            "checks": checks_json,
        }),
        text,
    )
    .finding_if(!failed.is_empty()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadlie_core::exactla::rat;

    #[test]
    fn combo_formatting() {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(combo(&names, &[rat(1), rat(2), rat(-1)]), "x + 2*y - z");
        assert_eq!(combo(&names, &[rat(0), rat(-3), rat(0)]), "-3*y");
        assert_eq!(combo(&names, &[rat(0), rat(0), rat(0)]), "0");
        assert_eq!(combo(&names, &[exactla::ratio(1, 2), rat(0), rat(0)]), "1/2*x");
    }
}
