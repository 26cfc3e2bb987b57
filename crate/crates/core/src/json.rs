//! On-disk JSON schemas.
//!
//! Rationals serialize as strings `"p/q"` (or `"p"` when the denominator
//! is one) in all file formats; vectors serialize as arrays of such
//! strings. Reports serialize with a stable field order — byte-identical
//! output for identical inputs, seeds and options — and every emitted
//! report re-parses into the schema that produced it.
//!
//! Schemas:
//!
//! * operator: `{"dim": n, "pairs": [{"x": [...], "xstar": [...]}]}`
//! * function: `{"dim": n, "pieces": [{"a": [...], "b": "p/q"}]}`
//! * set (generators): `{"dim": n, "vertices": [...], "rays": [...]}`
//! * set (half-spaces): `{"dim": n, "rows": [{"normal": [...], "offset": "p/q"}]}`

use num::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::checks::{Certificate, CheckReport, Hypothesis, Witness};
use crate::convex::MaxAffine;
use crate::operator::{CycleViolation, FiniteOperator, MonotonicityViolation};
use crate::poly::{HPolyhedron, VPolyhedron};
use crate::vector::Vector;
use crate::{Rat, RatVec};

#[derive(Debug, thiserror::Error)]
pub enum WireError {
    #[error("json parse error at line {}, column {}: {0}", .0.line(), .0.column())]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

impl WireError {
    fn field(path: impl Into<String>, message: impl Into<String>) -> Self {
        WireError::Field {
            path: path.into(),
            message: message.into(),
        }
    }
}

/// Parse `"p/q"` or `"p"` into an exact rational, rejecting `q = 0`.
pub fn parse_rat(text: &str, path: &str) -> Result<Rat, WireError> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let parse_int = |part: &str, what: &str| -> Result<BigInt, WireError> {
        part.trim()
            .parse::<BigInt>()
            .map_err(|_| WireError::field(path, format!("invalid {what} in rational '{text}'")))
    };
    let n = parse_int(num, "numerator")?;
    let d = parse_int(den, "denominator")?;
    if d.is_zero() {
        return Err(WireError::field(
            path,
            format!("zero denominator in rational '{text}'"),
        ));
    }
    Ok(Rat::new(n, d))
}

pub fn format_rat(value: &Rat) -> String {
    value.to_string()
}

pub fn parse_vec(coords: &[String], path: &str) -> Result<RatVec, WireError> {
    let parsed = coords
        .iter()
        .enumerate()
        .map(|(i, c)| parse_rat(c, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Vector::new(parsed))
}

pub fn format_vec(v: &RatVec) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OperatorFile {
    pub dim: usize,
    pub pairs: Vec<PairFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairFile {
    pub x: Vec<String>,
    pub xstar: Vec<String>,
}

fn require_positive_dim(dim: usize) -> Result<(), WireError> {
    if dim == 0 {
        return Err(WireError::field("dim", "dimension must be positive"));
    }
    Ok(())
}

impl OperatorFile {
    pub fn to_operator(&self) -> Result<FiniteOperator<Rat>, WireError> {
        require_positive_dim(self.dim)?;
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for (i, pair) in self.pairs.iter().enumerate() {
            let x = parse_vec(&pair.x, &format!("pairs[{i}].x"))?;
            let xstar = parse_vec(&pair.xstar, &format!("pairs[{i}].xstar"))?;
            pairs.push((x, xstar));
        }
        FiniteOperator::new(pairs, self.dim).map_err(|e| WireError::field("pairs", e.to_string()))
    }

    pub fn from_operator(t: &FiniteOperator<Rat>) -> Self {
        OperatorFile {
            dim: t.dim(),
            pairs: t
                .pairs()
                .iter()
                .map(|(x, xstar)| PairFile {
                    x: format_vec(x),
                    xstar: format_vec(xstar),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctionFile {
    pub dim: usize,
    pub pieces: Vec<PieceFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PieceFile {
    pub a: Vec<String>,
    pub b: String,
}

impl FunctionFile {
    pub fn to_function(&self) -> Result<MaxAffine<Rat>, WireError> {
        require_positive_dim(self.dim)?;
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for (i, piece) in self.pieces.iter().enumerate() {
            let a = parse_vec(&piece.a, &format!("pieces[{i}].a"))?;
            let b = parse_rat(&piece.b, &format!("pieces[{i}].b"))?;
            pieces.push((a, b));
        }
        MaxAffine::new(pieces, self.dim).map_err(|e| WireError::field("pieces", e.to_string()))
    }

    pub fn from_function(f: &MaxAffine<Rat>) -> Self {
        FunctionFile {
            dim: f.dim(),
            pieces: f
                .pieces()
                .iter()
                .map(|(a, b)| PieceFile {
                    a: format_vec(a),
                    b: format_rat(b),
                })
                .collect(),
        }
    }
}

/// A set file is either a generator representation or a half-space
/// representation, distinguished by its fields.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetFile {
    Generators {
        dim: usize,
        vertices: Vec<Vec<String>>,
        rays: Vec<Vec<String>>,
    },
    HalfSpaces {
        dim: usize,
        rows: Vec<RowFile>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RowFile {
    pub normal: Vec<String>,
    pub offset: String,
}

impl SetFile {
    pub fn to_vpolyhedron(&self) -> Result<VPolyhedron<Rat>, WireError> {
        match self {
            SetFile::Generators {
                dim,
                vertices,
                rays,
            } => {
                require_positive_dim(*dim)?;
                let vs = vertices
                    .iter()
                    .enumerate()
                    .map(|(i, v)| parse_vec(v, &format!("vertices[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                let rs = rays
                    .iter()
                    .enumerate()
                    .map(|(i, r)| parse_vec(r, &format!("rays[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                VPolyhedron::new(vs, rs, *dim)
                    .map_err(|e| WireError::field("vertices", e.to_string()))
            }
            SetFile::HalfSpaces { .. } => Err(WireError::field(
                "rows",
                "expected a generator representation (vertices and rays)",
            )),
        }
    }

    pub fn to_hpolyhedron(&self) -> Result<HPolyhedron<Rat>, WireError> {
        match self {
            SetFile::HalfSpaces { dim, rows } => {
                require_positive_dim(*dim)?;
                let parsed = rows
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        let normal = parse_vec(&row.normal, &format!("rows[{i}].normal"))?;
                        let offset = parse_rat(&row.offset, &format!("rows[{i}].offset"))?;
                        Ok((normal, offset))
                    })
                    .collect::<Result<Vec<_>, WireError>>()?;
                HPolyhedron::new(parsed, *dim).map_err(|e| WireError::field("rows", e.to_string()))
            }
            SetFile::Generators { .. } => Err(WireError::field(
                "vertices",
                "expected a half-space representation (rows)",
            )),
        }
    }

    pub fn from_vpolyhedron(c: &VPolyhedron<Rat>) -> Self {
        SetFile::Generators {
            dim: c.dim(),
            vertices: c.vertices().iter().map(format_vec).collect(),
            rays: c.rays().iter().map(format_vec).collect(),
        }
    }

    pub fn from_hpolyhedron(c: &HPolyhedron<Rat>) -> Self {
        SetFile::HalfSpaces {
            dim: c.dim(),
            rows: c
                .rows()
                .iter()
                .map(|(normal, offset)| RowFile {
                    normal: format_vec(normal),
                    offset: format_rat(offset),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportFile {
    pub result: String,
    pub hypotheses: Vec<HypothesisFile>,
    pub conclusion: Option<bool>,
    pub certificates: Vec<CertificateFile>,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypothesisFile {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessFile {
    Point {
        coords: Vec<String>,
    },
    /// Violating pair with its indices and the recomputed gap.
    MonotonicityViolation {
        index1: usize,
        index2: usize,
        x1: Vec<String>,
        xstar1: Vec<String>,
        x2: Vec<String>,
        xstar2: Vec<String>,
        gap: String,
    },
    /// Violating chain with its indices and the recomputed cycle sum.
    CycleViolation {
        indices: Vec<usize>,
        cycle_sum: String,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateFile {
    NormalMembership {
        x: Vec<String>,
        xstar: Vec<String>,
        member: bool,
    },
    Subgradient {
        x: Vec<String>,
        xstar: Vec<String>,
        holds: bool,
    },
    SupportMaximizer {
        direction: Vec<String>,
        point: Vec<String>,
        member: bool,
        attained: String,
        support: String,
    },
    MintyPoint {
        z: Vec<String>,
        point: Vec<String>,
        image: Vec<String>,
        holds: bool,
    },
    LevelEquality {
        x: Vec<String>,
        lambda: String,
        value: String,
        member: bool,
    },
    Separation {
        x: Vec<String>,
        xstar: Vec<String>,
        witness: Vec<String>,
    },
    Condition {
        name: String,
        holds: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<Vec<String>>,
    },
    SetsMatch {
        x: Vec<String>,
        equal: bool,
    },
    ConstructedSet {
        name: String,
        vertices: Vec<Vec<String>>,
    },
    SubReport {
        report: Box<ReportFile>,
    },
}

fn witness_to_file(w: &Witness<Rat>) -> WitnessFile {
    match w {
        Witness::Point(p) => WitnessFile::Point {
            coords: format_vec(p),
        },
        Witness::Monotonicity(v) => monotonicity_to_file(v),
        Witness::Cycle(v) => cycle_to_file(v),
    }
}

pub fn monotonicity_to_file(v: &MonotonicityViolation<Rat>) -> WitnessFile {
    WitnessFile::MonotonicityViolation {
        index1: v.index1,
        index2: v.index2,
        x1: format_vec(&v.pair1.0),
        xstar1: format_vec(&v.pair1.1),
        x2: format_vec(&v.pair2.0),
        xstar2: format_vec(&v.pair2.1),
        gap: format_rat(&v.recompute_gap()),
    }
}

pub fn cycle_to_file(v: &CycleViolation<Rat>) -> WitnessFile {
    WitnessFile::CycleViolation {
        indices: v.indices.clone(),
        cycle_sum: format_rat(&v.cycle_sum),
    }
}

fn certificate_to_file(c: &Certificate<Rat>) -> CertificateFile {
    match c {
        Certificate::NormalMembership { x, xstar, member } => CertificateFile::NormalMembership {
            x: format_vec(x),
            xstar: format_vec(xstar),
            member: *member,
        },
        Certificate::Subgradient { x, xstar, holds } => CertificateFile::Subgradient {
            x: format_vec(x),
            xstar: format_vec(xstar),
            holds: *holds,
        },
        Certificate::SupportMaximizer {
            direction,
            point,
            member,
            attained,
            support,
        } => CertificateFile::SupportMaximizer {
            direction: format_vec(direction),
            point: format_vec(point),
            member: *member,
            attained: format_rat(attained),
            support: format_rat(support),
        },
        Certificate::MintyPoint {
            z,
            point,
            image,
            holds,
        } => CertificateFile::MintyPoint {
            z: format_vec(z),
            point: format_vec(point),
            image: format_vec(image),
            holds: *holds,
        },
        Certificate::LevelEquality {
            x,
            lambda,
            value,
            member,
        } => CertificateFile::LevelEquality {
            x: format_vec(x),
            lambda: format_rat(lambda),
            value: format_rat(value),
            member: *member,
        },
        Certificate::Separation { x, xstar, witness } => CertificateFile::Separation {
            x: format_vec(x),
            xstar: format_vec(xstar),
            witness: format_vec(witness),
        },
        Certificate::Condition {
            name,
            holds,
            witness,
        } => CertificateFile::Condition {
            name: (*name).to_owned(),
            holds: *holds,
            witness: witness.as_ref().map(format_vec),
        },
        Certificate::SetsMatch { x, equal } => CertificateFile::SetsMatch {
            x: format_vec(x),
            equal: *equal,
        },
        Certificate::ConstructedSet { name, vertices } => CertificateFile::ConstructedSet {
            name: (*name).to_owned(),
            vertices: vertices.iter().map(format_vec).collect(),
        },
        Certificate::SubReport(report) => CertificateFile::SubReport {
            report: Box::new(report_to_file(report)),
        },
    }
}

pub fn report_to_file(report: &CheckReport<Rat>) -> ReportFile {
    ReportFile {
        result: report.result_id.label().to_owned(),
        hypotheses: report
            .hypotheses
            .iter()
            .map(|h: &Hypothesis<Rat>| HypothesisFile {
                name: h.name.to_owned(),
                holds: h.holds,
                witness: h.witness.as_ref().map(witness_to_file),
            })
            .collect(),
        conclusion: report.conclusion,
        certificates: report
            .certificates
            .iter()
            .map(certificate_to_file)
            .collect(),
        seed: report.deterministic_seed,
    }
}

/// Pretty JSON with a trailing newline; field order is struct order, so
/// the bytes are a pure function of the content.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report types always serialize");
    out.push('\n');
    out
}
