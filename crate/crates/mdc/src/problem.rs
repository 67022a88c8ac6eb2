//! Problem-file parsing: a JSON document declaring one space (finite blocks
//! or a line grid), named measures, and an optional family of sets.
//!
//! Rationals travel as strings like `"3/4"` or `"2"` so nothing is lost to
//! floating point. Spectral projection entries are `[re, im]` pairs whose
//! components are either rational strings (exact path) or JSON numbers
//! (numeric path).

use std::collections::BTreeMap;
use std::str::FromStr;

use measure_decomp::spectral::CMatrix;
use measure_decomp::{
    ComplexRat, FiniteSpace, LineAtom, LineMeasure, Rational, SignedMeasure, SpectralMeasure,
    VectorMeasure,
};
use num::complex::Complex64;
use num::Complex;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub space: Option<SpaceDecl>,
    pub line: Option<LineDecl>,
    #[serde(default)]
    pub measures: BTreeMap<String, MeasureDecl>,
    pub family: Option<FamilyDecl>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDecl {
    pub blocks: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineDecl {
    pub m: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureDecl {
    pub values: Option<Vec<String>>,
    pub vector: Option<Vec<Vec<String>>>,
    pub spectral: Option<SpectralDecl>,
    pub line: Option<LineMeasureDecl>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralDecl {
    pub dim: usize,
    pub outcomes: Option<Vec<String>>,
    pub projections: Vec<Vec<Vec<[serde_json::Value; 2]>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineMeasureDecl {
    pub densities: Vec<String>,
    #[serde(default)]
    pub atoms: Vec<LineAtomDecl>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineAtomDecl {
    pub at: String,
    pub weight: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDecl {
    pub generators: Option<Vec<Vec<String>>>,
    pub builtin: Option<String>,
}

/// A spectral measure from either construction path.
pub enum SpectralKind {
    Exact(SpectralMeasure<ComplexRat>),
    Numeric(SpectralMeasure<Complex64>),
}

/// A fully resolved problem.
pub struct Problem {
    pub model: Model,
    pub family: Option<FamilySpec>,
    /// The raw document, echoed into reports.
    pub echo: serde_json::Value,
}

pub enum Model {
    Finite {
        space: FiniteSpace,
        scalars: BTreeMap<String, SignedMeasure>,
        vectors: BTreeMap<String, VectorMeasure>,
        spectrals: BTreeMap<String, SpectralKind>,
    },
    Line {
        measures: BTreeMap<String, LineMeasure>,
    },
}

pub enum FamilySpec {
    Generators(Vec<Vec<String>>),
    NullSetsOf(String),
    PositiveSets,
    Countable,
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    Rational::from_str(s.trim())
        .map_err(|e| CliError::parse(format!("bad rational {s:?}: {e}")))
}

fn parse_entry_exact(v: &serde_json::Value) -> Result<Rational, CliError> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        _ => Err(CliError::parse(format!(
            "expected rational string, got {v}"
        ))),
    }
}

fn parse_entry_numeric(v: &serde_json::Value) -> Result<f64, CliError> {
    match v {
        serde_json::Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| CliError::parse(format!("bad number {n}"))),
        serde_json::Value::String(s) => {
            let r = parse_rational(s)?;
            Ok(rational_to_f64(&r))
        }
        _ => Err(CliError::parse(format!("expected number, got {v}"))),
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn spectral_uses_floats(decl: &SpectralDecl) -> bool {
    decl.projections
        .iter()
        .flatten()
        .flatten()
        .flat_map(|pair| pair.iter())
        .any(|v| v.is_number())
}

fn build_spectral(decl: &SpectralDecl, space: &FiniteSpace) -> Result<SpectralKind, CliError> {
    let outcomes: Vec<String> = match &decl.outcomes {
        Some(o) => o.clone(),
        None => space.labels().to_vec(),
    };
    if outcomes != space.labels() {
        return Err(CliError::parse(
            "spectral outcomes must match the declared space blocks".into(),
        ));
    }
    if decl.projections.len() != outcomes.len() {
        return Err(CliError::parse(
            "one projection per outcome is required".into(),
        ));
    }
    let dim = decl.dim;
    let check_shape = |rows: &Vec<Vec<[serde_json::Value; 2]>>| -> Result<(), CliError> {
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(CliError::parse(format!(
                "projection matrices must be {dim}x{dim}"
            )));
        }
        Ok(())
    };
    if spectral_uses_floats(decl) {
        let mut projections = Vec::new();
        for rows in &decl.projections {
            check_shape(rows)?;
            let mut m = CMatrix::<Complex64>::zeros(dim);
            for (i, row) in rows.iter().enumerate() {
                for (j, [re, im]) in row.iter().enumerate() {
                    *m.at_mut(i, j) =
                        Complex64::new(parse_entry_numeric(re)?, parse_entry_numeric(im)?);
                }
            }
            projections.push(m);
        }
        let e = SpectralMeasure::from_projections(dim, outcomes, projections)
            .map_err(CliError::semantic_from)?;
        Ok(SpectralKind::Numeric(e))
    } else {
        let mut projections = Vec::new();
        for rows in &decl.projections {
            check_shape(rows)?;
            let mut m = CMatrix::<ComplexRat>::zeros(dim);
            for (i, row) in rows.iter().enumerate() {
                for (j, [re, im]) in row.iter().enumerate() {
                    *m.at_mut(i, j) =
                        Complex::new(parse_entry_exact(re)?, parse_entry_exact(im)?);
                }
            }
            projections.push(m);
        }
        let e = SpectralMeasure::from_projections(dim, outcomes, projections)
            .map_err(CliError::semantic_from)?;
        Ok(SpectralKind::Exact(e))
    }
}

pub fn load(path: &std::path::Path) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    let echo: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("invalid JSON: {e}")))?;
    let file: ProblemFile = serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("invalid problem file: {e}")))?;

    let family = match &file.family {
        None => None,
        Some(decl) => Some(resolve_family_decl(decl)?),
    };

    let model = match (&file.space, &file.line) {
        (Some(_), Some(_)) | (None, None) => {
            return Err(CliError::parse(
                "exactly one of \"space\" and \"line\" must be declared".into(),
            ));
        }
        (Some(space_decl), None) => {
            let space = FiniteSpace::new(space_decl.blocks.clone())
                .map_err(|e| CliError::parse(e.to_string()))?;
            let mut scalars = BTreeMap::new();
            let mut vectors = BTreeMap::new();
            let mut spectrals = BTreeMap::new();
            for (name, decl) in &file.measures {
                match decl {
                    MeasureDecl {
                        values: Some(values),
                        vector: None,
                        spectral: None,
                        line: None,
                    } => {
                        let parsed: Result<Vec<Rational>, CliError> =
                            values.iter().map(|s| parse_rational(s)).collect();
                        let mu = SignedMeasure::new(space.clone(), parsed?)
                            .map_err(|e| CliError::parse(e.to_string()))?;
                        scalars.insert(name.clone(), mu);
                    }
                    MeasureDecl {
                        values: None,
                        vector: Some(rows),
                        spectral: None,
                        line: None,
                    } => {
                        let dim = rows.first().map(Vec::len).unwrap_or(0);
                        let parsed: Result<Vec<Vec<Rational>>, CliError> = rows
                            .iter()
                            .map(|r| r.iter().map(|s| parse_rational(s)).collect())
                            .collect();
                        let theta = VectorMeasure::new(space.clone(), dim, parsed?)
                            .map_err(|e| CliError::parse(e.to_string()))?;
                        vectors.insert(name.clone(), theta);
                    }
                    MeasureDecl {
                        values: None,
                        vector: None,
                        spectral: Some(decl),
                        line: None,
                    } => {
                        spectrals.insert(name.clone(), build_spectral(decl, &space)?);
                    }
                    _ => {
                        return Err(CliError::parse(format!(
                            "measure {name:?} must declare exactly one of values/vector/spectral/line"
                        )));
                    }
                }
            }
            Model::Finite {
                space,
                scalars,
                vectors,
                spectrals,
            }
        }
        (None, Some(line_decl)) => {
            let mut measures = BTreeMap::new();
            for (name, decl) in &file.measures {
                let Some(lm) = &decl.line else {
                    return Err(CliError::parse(format!(
                        "measure {name:?}: only line measures fit a line model"
                    )));
                };
                if lm.densities.len() != line_decl.m {
                    return Err(CliError::parse(format!(
                        "measure {name:?}: expected {} densities",
                        line_decl.m
                    )));
                }
                let densities: Result<Vec<Rational>, CliError> =
                    lm.densities.iter().map(|s| parse_rational(s)).collect();
                let atoms: Result<Vec<LineAtom>, CliError> = lm
                    .atoms
                    .iter()
                    .map(|a| {
                        Ok(LineAtom {
                            location: parse_rational(&a.at)?,
                            weight: parse_rational(&a.weight)?,
                        })
                    })
                    .collect();
                let mu = LineMeasure::new(densities?, atoms?)
                    .map_err(|e| CliError::parse(e.to_string()))?;
                measures.insert(name.clone(), mu);
            }
            Model::Line { measures }
        }
    };

    // Labels inside generators must resolve against the declared space.
    if let (Some(FamilySpec::Generators(gens)), Model::Finite { space, .. }) = (&family, &model) {
        for g in gens {
            for label in g {
                if space.index_of(label).is_none() {
                    return Err(CliError::parse(format!("unknown block label {label:?}")));
                }
            }
        }
    }

    Ok(Problem { model, family, echo })
}

fn resolve_family_decl(decl: &FamilyDecl) -> Result<FamilySpec, CliError> {
    match (&decl.generators, &decl.builtin) {
        (Some(gens), None) => Ok(FamilySpec::Generators(gens.clone())),
        (None, Some(tag)) => {
            if let Some(name) = tag.strip_prefix("null-sets-of:") {
                Ok(FamilySpec::NullSetsOf(name.to_string()))
            } else if tag == "positive-sets" {
                Ok(FamilySpec::PositiveSets)
            } else if tag == "countable" {
                Ok(FamilySpec::Countable)
            } else {
                Err(CliError::parse(format!("unknown builtin family {tag:?}")))
            }
        }
        _ => Err(CliError::parse(
            "family must declare exactly one of generators/builtin".into(),
        )),
    }
}
