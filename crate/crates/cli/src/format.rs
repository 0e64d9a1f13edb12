//! On-disk JSON formats. Rationals are strings (`"p"` or `"p/q"`), matrices
//! are arrays of rows, and every object is written with sorted keys.

use std::collections::BTreeMap;

use quadlie_core::current::{AssocAlgebra, AssocConstant};
use quadlie_core::exactla::{self, Mat, Rat, Subspace};
use quadlie_core::extension::{Cochain, ExtensionData};
use quadlie_core::invforms::BilinearForm;
use quadlie_core::liealg::{LieAlgebra, StructureConstant};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;
use crate::expr;

pub const FORMAT_VERSION: &str = "1";

/// Parameter values in force while loading a file.
pub type Params = BTreeMap<String, Rat>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format_version: String,
    pub kind: String,
    pub dim: usize,
    pub basis_names: Vec<String>,
    pub constants: Vec<ConstantEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub forms: BTreeMap<String, Vec<Vec<String>>>,
    /// Declared parameter names with their default values.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntry {
    pub i: usize,
    pub j: usize,
    pub v: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionFile {
    pub format_version: String,
    pub h: AlgebraFile,
    pub dim_a: usize,
    pub dim_i: usize,
    pub rho: Vec<Vec<Vec<String>>>,
    pub phi: Vec<Vec<Vec<String>>>,
    pub lambda: Vec<PairEntry>,
    pub mu: Vec<PairEntry>,
    #[serde(rename = "B_a", default, skip_serializing_if = "Option::is_none")]
    pub b_a: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, String>,
}

/// Any of the three file kinds.
#[derive(Debug, Clone, PartialEq)]
pub enum InputFile {
    Lie(AlgebraFile),
    Assoc(AlgebraFile),
    Extension(ExtensionFile),
}

pub fn rat_str(x: &Rat) -> String {
    exactla::format_rat(x)
}

pub fn vec_json(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_str).collect()
}

pub fn mat_json(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| vec_json(m.row(i))).collect()
}

pub fn subspace_json(s: &Subspace) -> Vec<Vec<String>> {
    s.basis_vectors().iter().map(|v| vec_json(v)).collect()
}

/// Canonical text: pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    let v: Value = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn field_err(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{field}: {msg}"))
}

fn eval(field: &str, s: &str, params: &Params) -> Result<Rat, CliError> {
    expr::evaluate(s, params).map_err(|e| CliError::Parse(format!("{field}: {e} in {s:?}")))
}

fn eval_vec(field: &str, v: &[String], params: &Params) -> Result<Vec<Rat>, CliError> {
    v.iter()
        .enumerate()
        .map(|(k, s)| eval(&format!("{field}[{k}]"), s, params))
        .collect()
}

fn eval_mat(field: &str, rows: &[Vec<String>], nrows: usize, ncols: usize, params: &Params) -> Result<Mat, CliError> {
    if rows.len() != nrows {
        return Err(field_err(field, format!("expected {nrows} rows, found {}", rows.len())));
    }
    let mut m = Mat::zeros(nrows, ncols);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(field_err(
                &format!("{field}[{i}]"),
                format!("expected {ncols} entries, found {}", row.len()),
            ));
        }
        for (j, s) in row.iter().enumerate() {
            m[(i, j)] = eval(&format!("{field}[{i}][{j}]"), s, params)?;
        }
    }
    Ok(m)
}

/// Declared defaults, overridden by command-line values for declared names.
pub fn resolve_params(
    declared: &BTreeMap<String, String>,
    overrides: &Params,
) -> Result<Params, CliError> {
    let mut out = Params::new();
    for (name, default) in declared {
        let v = match overrides.get(name) {
            Some(v) => v.clone(),
            None => exactla::parse_rat(default)
                .ok_or_else(|| CliError::Parse(format!("parameters.{name}: {default:?} is not a rational")))?,
        };
        out.insert(name.clone(), v);
    }
    Ok(out)
}

pub fn parse_input(text: &str) -> Result<InputFile, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::Parse("top level must be a JSON object".into()))?;
    if obj.contains_key("h") {
        let f: ExtensionFile = serde_json::from_value(value).map_err(|e| CliError::Parse(format!("extension file: {e}")))?;
        return Ok(InputFile::Extension(f));
    }
    let f: AlgebraFile = serde_json::from_value(value).map_err(|e| CliError::Parse(format!("algebra file: {e}")))?;
    match f.kind.as_str() {
        "lie" => Ok(InputFile::Lie(f)),
        "assoc" => Ok(InputFile::Assoc(f)),
        other => Err(CliError::Parse(format!("kind: expected \"lie\" or \"assoc\", found {other:?}"))),
    }
}

fn check_header(version: &str, dim: usize, names: &[String]) -> Result<(), CliError> {
    if version != FORMAT_VERSION {
        return Err(CliError::Parse(format!(
            "format_version: unsupported {version:?} (expected {FORMAT_VERSION:?})"
        )));
    }
    if names.len() != dim {
        return Err(field_err("basis_names", format!("expected {dim} names, found {}", names.len())));
    }
    Ok(())
}

impl AlgebraFile {
    pub fn params(&self, overrides: &Params) -> Result<Params, CliError> {
        resolve_params(&self.parameters, overrides)
    }

    /// Structure constants without the Jacobi check (for `validate`).
    pub fn to_lie_unchecked(&self, params: &Params) -> Result<LieAlgebra, CliError> {
        if self.kind != "lie" {
            return Err(field_err("kind", "expected a Lie algebra file"));
        }
        check_header(&self.format_version, self.dim, &self.basis_names)?;
        let mut consts = Vec::with_capacity(self.constants.len());
        for (n, c) in self.constants.iter().enumerate() {
            let field = format!("constants[{n}]");
            if c.i >= c.j {
                return Err(field_err(&field, format!("needs i < j, found i = {}, j = {}", c.i, c.j)));
            }
            if c.j >= self.dim || c.k >= self.dim {
                return Err(field_err(&field, format!("index out of range for dimension {}", self.dim)));
            }
            consts.push(StructureConstant::new(c.i, c.j, c.k, eval(&format!("{field}.c"), &c.c, params)?));
        }
        LieAlgebra::new_unchecked(self.basis_names.clone(), consts).map_err(CliError::from_core)
    }

    pub fn to_lie(&self, params: &Params) -> Result<LieAlgebra, CliError> {
        let g = self.to_lie_unchecked(params)?;
        g.validate()
            .map_err(|v| CliError::from_core(quadlie_core::Error::Jacobi(v)))?;
        Ok(g)
    }

    pub fn to_assoc_unchecked(&self, params: &Params) -> Result<AssocAlgebra, CliError> {
        if self.kind != "assoc" {
            return Err(field_err("kind", "expected an associative algebra file"));
        }
        check_header(&self.format_version, self.dim, &self.basis_names)?;
        let unit = self.unit.as_ref().ok_or_else(|| field_err("unit", "missing"))?;
        if unit.len() != self.dim {
            return Err(field_err("unit", format!("expected {} entries", self.dim)));
        }
        let unit = eval_vec("unit", unit, params)?;
        let mut consts = Vec::with_capacity(self.constants.len());
        for (n, c) in self.constants.iter().enumerate() {
            let field = format!("constants[{n}]");
            if c.i > c.j {
                return Err(field_err(&field, "needs i <= j"));
            }
            if c.j >= self.dim || c.k >= self.dim {
                return Err(field_err(&field, format!("index out of range for dimension {}", self.dim)));
            }
            consts.push(AssocConstant::new(c.i, c.j, c.k, eval(&format!("{field}.c"), &c.c, params)?));
        }
        AssocAlgebra::new_unchecked(self.basis_names.clone(), &consts, unit).map_err(CliError::from_core)
    }

    pub fn to_assoc(&self, params: &Params) -> Result<AssocAlgebra, CliError> {
        let s = self.to_assoc_unchecked(params)?;
        s.validate()
            .map_err(|v| CliError::from_core(quadlie_core::Error::Assoc(v)))?;
        Ok(s)
    }

    /// A named form, or the only one when `name` is `None`.
    pub fn form(&self, name: Option<&str>, params: &Params) -> Result<Option<(String, BilinearForm)>, CliError> {
        let (key, rows) = match name {
            Some(n) => match self.forms.get_key_value(n) {
                Some(kv) => kv,
                None => return Err(field_err("forms", format!("no form named {n:?}"))),
            },
            None => match self.forms.iter().next() {
                Some(kv) => kv,
                None => return Ok(None),
            },
        };
        let field = format!("forms.{key}");
        let m = eval_mat(&field, rows, self.dim, self.dim, params)?;
        let f = BilinearForm::new(m).map_err(|e| field_err(&field, e))?;
        Ok(Some((key.clone(), f)))
    }

    pub fn from_lie(g: &LieAlgebra) -> Self {
        AlgebraFile {
            format_version: FORMAT_VERSION.into(),
            kind: "lie".into(),
            dim: g.dim(),
            basis_names: g.basis_names().to_vec(),
            constants: g
                .constants()
                .iter()
                .map(|c| ConstantEntry {
                    i: c.i,
                    j: c.j,
                    k: c.k,
                    c: rat_str(&c.coeff),
                })
                .collect(),
            unit: None,
            forms: BTreeMap::new(),
            parameters: BTreeMap::new(),
        }
    }

    pub fn from_assoc(s: &AssocAlgebra) -> Self {
        AlgebraFile {
            format_version: FORMAT_VERSION.into(),
            kind: "assoc".into(),
            dim: s.dim(),
            basis_names: s.basis_names().to_vec(),
            constants: s
                .constants()
                .iter()
                .map(|c| ConstantEntry {
                    i: c.a,
                    j: c.b,
                    k: c.c,
                    c: rat_str(&c.coeff),
                })
                .collect(),
            unit: Some(vec_json(s.unit())),
            forms: BTreeMap::new(),
            parameters: BTreeMap::new(),
        }
    }

    pub fn with_form(mut self, name: &str, f: &BilinearForm) -> Self {
        self.forms.insert(name.to_string(), mat_json(f.gram()));
        self
    }
}

fn pairs_to_cochain(field: &str, entries: &[PairEntry], r: usize, target: usize, params: &Params) -> Result<Cochain, CliError> {
    let mut c = Cochain::zero(r, 2, target);
    let mut seen = std::collections::BTreeSet::new();
    for (n, e) in entries.iter().enumerate() {
        let f = format!("{field}[{n}]");
        if e.i >= e.j || e.j >= r {
            return Err(field_err(&f, format!("needs i < j < {r}")));
        }
        if !seen.insert((e.i, e.j)) {
            return Err(field_err(&f, "duplicate pair"));
        }
        if e.v.len() != target {
            return Err(field_err(&format!("{f}.v"), format!("expected {target} entries, found {}", e.v.len())));
        }
        c.set(&[e.i, e.j], eval_vec(&format!("{f}.v"), &e.v, params)?);
    }
    Ok(c)
}

fn cochain_to_pairs(c: &Cochain) -> Vec<PairEntry> {
    let r = c.r();
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let v = c.value(&[i, j]);
            if !exactla::is_zero_vec(v) {
                out.push(PairEntry { i, j, v: vec_json(v) });
            }
        }
    }
    out
}

impl ExtensionFile {
    pub fn params(&self, overrides: &Params) -> Result<Params, CliError> {
        resolve_params(&self.parameters, overrides)
    }

    /// Parsed data without the cocycle checks, plus `B_a` when present.
    pub fn to_data_unchecked(&self, params: &Params) -> Result<(ExtensionData, Option<Mat>), CliError> {
        if self.format_version != FORMAT_VERSION {
            return Err(CliError::Parse(format!(
                "format_version: unsupported {:?} (expected {FORMAT_VERSION:?})",
                self.format_version
            )));
        }
        let mut hparams = self.h.params(params)?;
        hparams.extend(params.clone());
        let h = self.h.to_lie(&hparams)?;
        let r = h.dim();
        let (da, di) = (self.dim_a, self.dim_i);
        if self.rho.len() != r {
            return Err(field_err("rho", format!("expected {r} matrices, found {}", self.rho.len())));
        }
        if self.phi.len() != r {
            return Err(field_err("phi", format!("expected {r} matrices, found {}", self.phi.len())));
        }
        let rho = (0..r)
            .map(|x| eval_mat(&format!("rho[{x}]"), &self.rho[x], di, di, params))
            .collect::<Result<Vec<_>, _>>()?;
        let phi = (0..r)
            .map(|x| eval_mat(&format!("phi[{x}]"), &self.phi[x], di, da, params))
            .collect::<Result<Vec<_>, _>>()?;
        let lambda = pairs_to_cochain("lambda", &self.lambda, r, da, params)?;
        let mu = pairs_to_cochain("mu", &self.mu, r, di, params)?;
        let b_a = match &self.b_a {
            Some(rows) => Some(eval_mat("B_a", rows, da, da, params)?),
            None => None,
        };
        let data = ExtensionData {
            h,
            dim_a: da,
            dim_i: di,
            rho,
            phi,
            lambda,
            mu,
        };
        Ok((data, b_a))
    }

    pub fn to_data(&self, params: &Params) -> Result<(ExtensionData, Option<Mat>), CliError> {
        let (data, b_a) = self.to_data_unchecked(params)?;
        data.check()
            .map_err(|f| CliError::from_core(quadlie_core::Error::InvalidExtension(f)))?;
        Ok((data, b_a))
    }

    pub fn from_data(data: &ExtensionData, b_a: Option<&Mat>) -> Self {
        ExtensionFile {
            format_version: FORMAT_VERSION.into(),
            h: AlgebraFile::from_lie(&data.h),
            dim_a: data.dim_a,
            dim_i: data.dim_i,
            rho: data.rho.iter().map(mat_json).collect(),
            phi: data.phi.iter().map(mat_json).collect(),
            lambda: cochain_to_pairs(&data.lambda),
            mu: cochain_to_pairs(&data.mu),
            b_a: b_a.map(mat_json),
            parameters: BTreeMap::new(),
        }
    }
}
