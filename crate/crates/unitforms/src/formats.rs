//! JSON and text formats. Every index in a document is 1-based.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;
use thiserror::Error;

use unitforms_core::classify::{ClassificationVerdict, FormInvariant, ReductionKey, Verdict};
use unitforms_core::coxeter::{CoxeterData, CoxeterNumber};
use unitforms_core::star::OneStarShape;
use unitforms_core::{CongruenceCertificate, CongruenceKind, Matrix, Poly, Quiver, Transform, UnitForm};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: expected `s -> t`, found `{text}`")]
    ArrowSyntax { line: usize, text: String },
    #[error("vertex and arrow numbers start at 1, found 0")]
    ZeroIndex,
    #[error("input is neither a unit form nor a quiver")]
    UnknownDocument,
    #[error(transparent)]
    Core(#[from] unitforms_core::Error),
}

fn big_to_number(x: &BigInt) -> Number {
    Number::from_str(&x.to_string()).expect("integers are valid JSON numbers")
}

fn number_to_big<E: serde::de::Error>(n: &Number) -> Result<BigInt, E> {
    BigInt::from_str(&n.to_string()).map_err(|_| E::custom(format!("expected an integer, found {n}")))
}

/// Integer matrix as nested JSON arrays of arbitrary-size integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix(pub Matrix);

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m = &self.0;
        let rows: Vec<Vec<Number>> =
            (0..m.rows()).map(|i| (0..m.cols()).map(|j| big_to_number(&m.get(i, j))).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<Number>> = Vec::deserialize(d)?;
        let big: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(number_to_big).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
        if big.is_empty() {
            return Ok(IntMatrix(Matrix::zeros(0, 0)));
        }
        Matrix::from_big_rows(&big).map(IntMatrix).map_err(D::Error::custom)
    }
}

/// Polynomial as its ascending coefficient list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coeffs(pub Poly);

impl Serialize for Coeffs {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.coeffs().iter().map(big_to_number).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Coeffs {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<Number> = Vec::deserialize(d)?;
        Ok(Coeffs(Poly::new(raw.iter().map(number_to_big).collect::<Result<_, _>>()?)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDoc {
    pub n: usize,
    pub tri_gram: IntMatrix,
}

impl FormDoc {
    pub fn from_form(q: &UnitForm) -> Self {
        FormDoc { n: q.n(), tri_gram: IntMatrix(q.tri_gram().clone()) }
    }

    pub fn to_form(&self) -> Result<UnitForm, FormatError> {
        let q = UnitForm::new(self.tri_gram.0.clone())?;
        if q.n() != self.n {
            return Err(unitforms_core::Error::Dimension { expected: self.n, found: q.n() }.into());
        }
        Ok(q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindDoc {
    Weak,
    Strong,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub kind: KindDoc,
    pub b: IntMatrix,
    #[serde(default)]
    pub verified: bool,
}

impl CertificateDoc {
    pub fn from_certificate(c: &CongruenceCertificate) -> Self {
        let kind = match c.kind {
            CongruenceKind::Weak => KindDoc::Weak,
            CongruenceKind::Strong => KindDoc::Strong,
        };
        CertificateDoc { kind, b: IntMatrix(c.b.clone()), verified: c.verified }
    }

    /// The certificate with `verified` cleared: it must be re-checked.
    pub fn to_certificate(&self) -> CongruenceCertificate {
        let kind = match self.kind {
            KindDoc::Weak => CongruenceKind::Weak,
            KindDoc::Strong => CongruenceKind::Strong,
        };
        CongruenceCertificate::new(self.b.0.clone(), kind)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverDoc {
    pub vertices: usize,
    pub arrows: Vec<[usize; 2]>,
}

impl QuiverDoc {
    pub fn from_quiver(q: &Quiver) -> Self {
        QuiverDoc { vertices: q.n_vertices(), arrows: q.arrows().iter().map(|&(s, t)| [s + 1, t + 1]).collect() }
    }

    pub fn to_quiver(&self) -> Result<Quiver, FormatError> {
        let arrows = self
            .arrows
            .iter()
            .map(|&[s, t]| if s == 0 || t == 0 { Err(FormatError::ZeroIndex) } else { Ok((s - 1, t - 1)) })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Quiver::new(self.vertices, arrows)?)
    }
}

/// Parses arrows `s -> t`, one per line or separated by `,` or `;`. The
/// vertex count is the largest vertex mentioned.
pub fn parse_quiver_text(text: &str) -> Result<Quiver, FormatError> {
    let mut arrows = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for item in line.split([',', ';']).map(str::trim).filter(|s| !s.is_empty()) {
            let bad = || FormatError::ArrowSyntax { line: line_no + 1, text: item.to_string() };
            let (s, t) = item.split_once("->").ok_or_else(bad)?;
            let s: usize = s.trim().parse().map_err(|_| bad())?;
            let t: usize = t.trim().parse().map_err(|_| bad())?;
            if s == 0 || t == 0 {
                return Err(FormatError::ZeroIndex);
            }
            arrows.push((s - 1, t - 1));
        }
    }
    let vertices = arrows.iter().map(|&(s, t)| s.max(t) + 1).max().unwrap_or(0);
    Ok(Quiver::new(vertices, arrows)?)
}

pub fn quiver_to_text(q: &Quiver) -> String {
    q.arrows().iter().map(|&(s, t)| format!("{} -> {}\n", s + 1, t + 1)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TransformDoc {
    PointInversion { arrows: Vec<usize> },
    Swap { i: usize, j: usize },
    Flation { i: usize, j: usize, eps: i8 },
    Fst { i: usize, j: usize, eps: i8 },
}

impl TransformDoc {
    pub fn from_transform(t: &Transform) -> Self {
        match *t {
            Transform::PointInversion(ref c) => TransformDoc::PointInversion { arrows: c.iter().map(|k| k + 1).collect() },
            Transform::Swap { i, j } => TransformDoc::Swap { i: i + 1, j: j + 1 },
            Transform::Flation { i, j, eps } => TransformDoc::Flation { i: i + 1, j: j + 1, eps },
            Transform::Fst { i, j, eps } => TransformDoc::Fst { i: i + 1, j: j + 1, eps },
        }
    }

    pub fn to_transform(&self) -> Result<Transform, FormatError> {
        let dec = |k: usize| k.checked_sub(1).ok_or(FormatError::ZeroIndex);
        Ok(match *self {
            TransformDoc::PointInversion { ref arrows } => {
                Transform::PointInversion(arrows.iter().map(|&k| dec(k)).collect::<Result<_, _>>()?)
            }
            TransformDoc::Swap { i, j } => Transform::Swap { i: dec(i)?, j: dec(j)? },
            TransformDoc::Flation { i, j, eps } => Transform::Flation { i: dec(i)?, j: dec(j)?, eps },
            TransformDoc::Fst { i, j, eps } => Transform::Fst { i: dec(i)?, j: dec(j)?, eps },
        })
    }
}

pub fn transforms_to_docs(steps: &[Transform]) -> Vec<TransformDoc> {
    steps.iter().map(TransformDoc::from_transform).collect()
}

/// 1-star shape with 1-based positions `ell < m <= n + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeDoc {
    pub ell: usize,
    pub m: usize,
    pub n: usize,
}

impl ShapeDoc {
    pub fn from_shape(s: OneStarShape) -> Self {
        ShapeDoc { ell: s.ell + 1, m: s.m + 1, n: s.n }
    }

    pub fn to_shape(self) -> Result<OneStarShape, FormatError> {
        if self.ell == 0 {
            return Err(FormatError::ZeroIndex);
        }
        Ok(OneStarShape::new(self.n, self.ell - 1, self.m.wrapping_sub(1))?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub input: QuiverDoc,
    pub output: QuiverDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<ShapeDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub steps: Vec<TransformDoc>,
    pub b: IntMatrix,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoxeterNumberDoc {
    Finite(u64),
    Infinite(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterDoc {
    pub phi: IntMatrix,
    pub charpoly: Coeffs,
    pub coxeter_number: CoxeterNumberDoc,
    pub cap_based: bool,
}

impl CoxeterDoc {
    pub fn from_data(d: &CoxeterData) -> Self {
        let coxeter_number = match d.coxeter_number {
            CoxeterNumber::Finite(k) => CoxeterNumberDoc::Finite(k),
            CoxeterNumber::Infinite => CoxeterNumberDoc::Infinite("infinite".into()),
        };
        CoxeterDoc {
            phi: IntMatrix(d.matrix.clone()),
            charpoly: Coeffs(d.char_poly.clone()),
            coxeter_number,
            cap_based: d.cap_based,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartDoc {
    pub n: usize,
    pub corank: usize,
    pub d: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantDoc {
    pub n: usize,
    pub corank: usize,
    pub d: Option<usize>,
    pub charpoly: Coeffs,
    pub parts: Vec<PartDoc>,
}

impl InvariantDoc {
    pub fn from_invariant(inv: &FormInvariant) -> Self {
        let part = |k: &ReductionKey| PartDoc { n: k.n, corank: k.corank, d: k.d };
        InvariantDoc {
            n: inv.n,
            corank: inv.corank,
            d: inv.d,
            charpoly: Coeffs(inv.char_poly.clone()),
            parts: inv.parts.iter().map(part).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Congruent,
    NotCongruent,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub verdict: VerdictKind,
    /// `null` when undecided.
    pub congruent: Option<bool>,
    pub certificate: Option<CertificateDoc>,
    pub left: InvariantDoc,
    pub right: InvariantDoc,
}

impl VerdictDoc {
    pub fn from_verdict(v: &ClassificationVerdict) -> Self {
        let (verdict, congruent) = match v.verdict {
            Verdict::Congruent => (VerdictKind::Congruent, Some(true)),
            Verdict::NotCongruent => (VerdictKind::NotCongruent, Some(false)),
            Verdict::Undecided => (VerdictKind::Undecided, None),
        };
        VerdictDoc {
            verdict,
            congruent,
            certificate: v.certificate.as_ref().map(CertificateDoc::from_certificate),
            left: InvariantDoc::from_invariant(&v.left),
            right: InvariantDoc::from_invariant(&v.right),
        }
    }
}

/// A form or a quiver read from JSON or arrow text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Form(UnitForm),
    Quiver(Quiver),
}

impl Input {
    pub fn parse(text: &str) -> Result<Input, FormatError> {
        let trimmed = text.trim_start();
        if !trimmed.starts_with('{') {
            return Ok(Input::Quiver(parse_quiver_text(text)?));
        }
        let value: serde_json::Value = serde_json::from_str(text)?;
        if value.get("tri_gram").is_some() {
            let doc: FormDoc = serde_json::from_value(value)?;
            Ok(Input::Form(doc.to_form()?))
        } else if value.get("arrows").is_some() {
            let doc: QuiverDoc = serde_json::from_value(value)?;
            Ok(Input::Quiver(doc.to_quiver()?))
        } else {
            Err(FormatError::UnknownDocument)
        }
    }

    /// The unit form, taking the incidence form of a quiver.
    pub fn form(&self) -> Result<UnitForm, FormatError> {
        match self {
            Input::Form(q) => Ok(q.clone()),
            Input::Quiver(q) => Ok(q.unit_form()?),
        }
    }
}
