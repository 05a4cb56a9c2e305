//! On-disk documents: algebra files, matrix files and subspace files.

use std::path::Path;

use hopfkit::linalg::{LinMap, Matrix, SparseTensor};
use hopfkit::yd::{FiniteAbelianGroup, YdData};
use hopfkit::{parse_field, Field, Hopf, HopfData, Scalar};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

/// `[i, j, k, "scalar"]`. For the multiplication e_i e_j has coefficient
/// `scalar` on e_k; for the comultiplication Δ(e_i) has coefficient
/// `scalar` on e_j ⊗ e_k.
pub type Triple = (usize, usize, usize, String);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AntipodeSpec {
    /// Only "solve" is accepted.
    Directive(String),
    Rows(Vec<Vec<String>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct YdFile {
    /// Orders of the cyclic factors.
    pub group: Vec<u32>,
    pub degrees: Vec<Vec<u32>>,
    /// One matrix (rows) per generator.
    pub action: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format_version: u32,
    pub field: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub mult: Vec<Triple>,
    pub comult: Vec<Triple>,
    pub unit: Vec<String>,
    pub counit: Vec<String>,
    pub antipode: AntipodeSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub yd: Option<YdFile>,
}

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

fn scalar(field: Field, text: &str, what: &str) -> Result<Scalar, CliError> {
    field
        .parse_scalar(text)
        .map_err(|e| parse_err(format!("{what}: {e}")))
}

fn vector(field: Field, items: &[String], dim: usize, what: &str) -> Result<Vec<Scalar>, CliError> {
    if items.len() != dim {
        return Err(parse_err(format!("{what} has {} entries, expected {dim}", items.len())));
    }
    items.iter().map(|s| scalar(field, s, what)).collect()
}

fn matrix(field: Field, rows: &[Vec<String>], shape: (usize, usize), what: &str) -> Result<Matrix, CliError> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(parse_err(format!("{what} must be {}x{}", shape.0, shape.1)));
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| scalar(field, s, what)).collect())
        .collect::<Result<Vec<Vec<Scalar>>, _>>()?;
    Matrix::from_rows(field, rows).map_err(|e| parse_err(format!("{what}: {e}")))
}

fn tensor(field: Field, triples: &[Triple], n: usize, what: &str) -> Result<SparseTensor, CliError> {
    let entries = triples
        .iter()
        .map(|(i, j, k, s)| Ok((vec![*i, *j, *k], scalar(field, s, what)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    SparseTensor::from_entries(field, vec![n, n, n], entries).map_err(|e| parse_err(format!("{what}: {e}")))
}

fn rows_of(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|s| s.to_string()).collect()).collect()
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<AlgebraFile, CliError> {
        serde_json::from_str(text).map_err(|e| parse_err(format!("malformed algebra file: {e}")))
    }

    pub fn read(path: &Path) -> Result<(AlgebraFile, String), CliError> {
        let text = read_text(path)?;
        Ok((AlgebraFile::parse(&text)?, text))
    }

    /// Candidate data; the antipode is None for the "solve" directive.
    pub fn to_data(&self) -> Result<HopfData, CliError> {
        if self.format_version != FORMAT_VERSION {
            return Err(parse_err(format!("unsupported format_version {}", self.format_version)));
        }
        let field = parse_field(&self.field).map_err(|e| parse_err(e.to_string()))?;
        let n = self.dim;
        if n == 0 {
            return Err(parse_err("dim must be positive"));
        }
        if self.basis.len() != n {
            return Err(parse_err(format!("basis has {} names, expected {n}", self.basis.len())));
        }
        let mult = tensor(field, &self.mult, n, "mult")?;
        let comult = tensor(field, &self.comult, n, "comult")?;
        let unit = vector(field, &self.unit, n, "unit")?;
        let counit = vector(field, &self.counit, n, "counit")?;
        let antipode = match &self.antipode {
            AntipodeSpec::Directive(d) if d == "solve" => None,
            AntipodeSpec::Directive(d) => {
                return Err(parse_err(format!("antipode must be a matrix or \"solve\", got {d:?}")))
            }
            AntipodeSpec::Rows(rows) => Some(matrix(field, rows, (n, n), "antipode")?),
        };
        let yd = match &self.yd {
            None => None,
            Some(y) => {
                let group = FiniteAbelianGroup::new(y.group.clone()).map_err(|e| parse_err(format!("yd group: {e}")))?;
                let action = y
                    .action
                    .iter()
                    .enumerate()
                    .map(|(i, m)| matrix(field, m, (n, n), &format!("yd action of generator {i}")))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(YdData::new(group, y.degrees.clone(), action).map_err(|e| parse_err(format!("yd: {e}")))?)
            }
        };
        HopfData::from_tensors(field, self.basis.clone(), &mult, unit, &comult, counit, antipode.as_ref(), yd)
            .map_err(|e| parse_err(e.to_string()))
    }

    pub fn from_hopf(h: &Hopf) -> AlgebraFile {
        AlgebraFile::from_data(h.data())
    }

    pub fn from_data(d: &HopfData) -> AlgebraFile {
        let n = d.dim();
        let mut mult = Vec::new();
        for (col, c) in d.mult.columns().iter().enumerate() {
            for (k, v) in c.iter() {
                mult.push((col / n, col % n, *k, v.to_string()));
            }
        }
        let mut comult = Vec::new();
        for (k, c) in d.comult.columns().iter().enumerate() {
            for (ij, v) in c.iter() {
                comult.push((k, ij / n, ij % n, v.to_string()));
            }
        }
        let strings = |v: &[Scalar]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        AlgebraFile {
            format_version: FORMAT_VERSION,
            field: d.field.to_string(),
            dim: n,
            basis: d.basis.clone(),
            mult,
            comult,
            unit: strings(&d.unit),
            counit: strings(&d.counit),
            antipode: match &d.antipode {
                Some(s) => AntipodeSpec::Rows(rows_of(&s.to_matrix())),
                None => AntipodeSpec::Directive("solve".into()),
            },
            yd: d.yd.as_ref().map(|y| YdFile {
                group: y.group().factors().to_vec(),
                degrees: y.degrees().to_vec(),
                action: y.generator_actions().iter().map(rows_of).collect(),
            }),
        }
    }

    /// Canonical text: one member per line, one triple or matrix row per line.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let mut members: Vec<(&str, String)> = vec![
            ("format_version", j(&self.format_version)),
            ("field", j(&self.field)),
            ("dim", j(&self.dim)),
            ("basis", j(&self.basis)),
            ("mult", block(&self.mult, 1)),
            ("comult", block(&self.comult, 1)),
            ("unit", j(&self.unit)),
            ("counit", j(&self.counit)),
        ];
        members.push((
            "antipode",
            match &self.antipode {
                AntipodeSpec::Directive(d) => j(d),
                AntipodeSpec::Rows(rows) => block(rows, 1),
            },
        ));
        if let Some(y) = &self.yd {
            let actions: Vec<String> = y.action.iter().map(|m| block(m, 3)).collect();
            let action = if actions.is_empty() {
                "[]".to_string()
            } else {
                format!("[\n      {}\n    ]", actions.join(",\n      "))
            };
            members.push((
                "yd",
                format!(
                    "{{\n    \"group\": {},\n    \"degrees\": {},\n    \"action\": {}\n  }}",
                    j(&y.group),
                    j(&y.degrees),
                    action
                ),
            ));
        }
        let body: Vec<String> = members.into_iter().map(|(k, v)| format!("  {}: {v}", j(k))).collect();
        out.push_str(&body.join(",\n"));
        out.push_str("\n}\n");
        out
    }
}

fn j<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// JSON array with one element per line, indented `depth` levels.
fn block<T: Serialize>(items: &[T], depth: usize) -> String {
    if items.is_empty() {
        return "[]".into();
    }
    let pad = "  ".repeat(depth + 1);
    let close = "  ".repeat(depth);
    let lines: Vec<String> = items
        .iter()
        .map(|x| format!("{pad}{}", j(x)))
        .collect();
    format!("[\n{}\n{close}]", lines.join(",\n"))
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// A matrix document: `{"rows": [["1", "0"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &Matrix) -> MatrixFile {
        MatrixFile { rows: rows_of(m) }
    }

    pub fn load(path: &Path, field: Field, shape: (usize, usize)) -> Result<LinMap, CliError> {
        let text = read_text(path)?;
        let f: MatrixFile = serde_json::from_str(&text).map_err(|e| parse_err(format!("{}: {e}", path.display())))?;
        Ok(LinMap::from_matrix(&matrix(field, &f.rows, shape, &path.display().to_string())?))
    }
}

/// A subspace given by spanning vectors: `{"vectors": [["0", "1", ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceFile {
    pub vectors: Vec<Vec<String>>,
}

/// How a factor is named on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubSpec {
    /// Subalgebra generated by the listed basis vectors (indices or names).
    Generated(Vec<String>),
    /// Span of the listed basis vectors.
    Span(Vec<String>),
    /// Span of the vectors in a subspace file.
    File(String),
}

impl SubSpec {
    pub fn parse(text: &str) -> Result<SubSpec, CliError> {
        let indices = |rest: &str| -> Result<Vec<String>, CliError> {
            Ok(rest.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect())
        };
        if let Some(rest) = text.strip_prefix("gen:") {
            Ok(SubSpec::Generated(indices(rest)?))
        } else if let Some(rest) = text.strip_prefix("span:") {
            Ok(SubSpec::Span(indices(rest)?))
        } else {
            Ok(SubSpec::File(text.to_string()))
        }
    }

    /// Vectors in the parent, plus whether the subalgebra they generate is wanted.
    pub fn vectors(&self, h: &Hopf) -> Result<(Vec<Vec<Scalar>>, bool), CliError> {
        let n = h.dim();
        let units = |idx: &[String]| -> Result<Vec<Vec<Scalar>>, CliError> {
            idx.iter()
                .map(|t| {
                    let i = match t.parse::<usize>() {
                        Ok(i) => i,
                        Err(_) => h
                            .basis()
                            .iter()
                            .position(|b| b == t)
                            .ok_or_else(|| CliError::Structural(format!("no basis element named {t:?}")))?,
                    };
                    if i < n {
                        Ok(h.basis_vector(i))
                    } else {
                        Err(CliError::Structural(format!("basis index {i} out of range for dim {n}")))
                    }
                })
                .collect()
        };
        match self {
            SubSpec::Generated(idx) => Ok((units(idx)?, true)),
            SubSpec::Span(idx) => Ok((units(idx)?, false)),
            SubSpec::File(path) => {
                let text = read_text(Path::new(path))?;
                let f: SubspaceFile = serde_json::from_str(&text).map_err(|e| parse_err(format!("{path}: {e}")))?;
                let vs = f
                    .vectors
                    .iter()
                    .map(|v| {
                        if v.len() != n {
                            return Err(CliError::Structural(format!(
                                "{path}: vector of length {} in a {n}-dimensional algebra",
                                v.len()
                            )));
                        }
                        v.iter().map(|s| scalar(h.field(), s, path)).collect()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((vs, false))
            }
        }
    }
}
