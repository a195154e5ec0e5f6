use std::path::Path;

use clap::ValueEnum;
use conormal_core::config::MatrixJson;
use conormal_core::{BasisList, Configuration, Field, Graph, Matroid};

use crate::Failure;

/// Ground sets larger than this are refused unless the environment raises it.
pub const DEFAULT_MAX_N: usize = 12;
pub const MAX_N_VAR: &str = "CONFIG_RESOLVE_MAX_N";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Graph,
    Matrix,
    Bases,
}

impl InputFormat {
    pub fn detect(path: &Path) -> Option<Self> {
        let name = path.file_name()?.to_str()?;
        if name.ends_with(".graph") {
            Some(InputFormat::Graph)
        } else if name.ends_with(".mat.json") {
            Some(InputFormat::Matrix)
        } else if name.ends_with(".bases.json") {
            Some(InputFormat::Bases)
        } else {
            None
        }
    }
}

/// A loaded input. Graph and matrix inputs carry a realization; basis lists
/// carry only the matroid.
pub enum Input {
    Realized(Configuration),
    Abstract(Matroid),
}

impl Input {
    pub fn matroid(&self) -> &Matroid {
        match self {
            Input::Realized(c) => c.matroid(),
            Input::Abstract(m) => m,
        }
    }

    pub fn configuration(&self) -> Result<&Configuration, Failure> {
        match self {
            Input::Realized(c) => Ok(c),
            Input::Abstract(_) => Err(Failure::Parse(
                "this command needs a realization: pass a .graph or .mat.json input".into(),
            )),
        }
    }
}

pub fn parse_field(text: &str) -> Result<Field, Failure> {
    match text {
        "Q" | "q" => Ok(Field::Rational),
        _ => {
            let p: u64 = text
                .parse()
                .map_err(|_| Failure::Parse(format!("field must be Q or a prime, got {text:?}")))?;
            Field::prime(p).map_err(|e| Failure::Parse(e.to_string()))
        }
    }
}

pub fn max_n() -> Result<usize, Failure> {
    match std::env::var(MAX_N_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Parse(format!("{MAX_N_VAR} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

pub fn load(path: &Path, format: Option<InputFormat>, field: Option<Field>) -> Result<Input, Failure> {
    let format = format.or_else(|| InputFormat::detect(path)).ok_or_else(|| {
        Failure::Parse(format!("cannot infer the input format of {}; use --input-format", path.display()))
    })?;
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    let input = parse(&text, format, field)?;
    let limit = max_n()?;
    let n = input.matroid().n();
    if n > limit {
        return Err(Failure::Compute(format!(
            "ground set has {n} elements, above the limit {limit} ({MAX_N_VAR})"
        )));
    }
    Ok(input)
}

pub fn parse(text: &str, format: InputFormat, field: Option<Field>) -> Result<Input, Failure> {
    match format {
        InputFormat::Graph => {
            let g = Graph::parse(text)?;
            // Builds the cycle matroid first so a disconnected graph reports
            // as such rather than as a rank-deficient matrix.
            Matroid::from_graph(&g)?;
            let a = g.pruned_incidence_matrix(field.unwrap_or(Field::Rational));
            Ok(Input::Realized(Configuration::new(a)?))
        }
        InputFormat::Matrix => {
            let mut parsed: MatrixJson =
                serde_json::from_str(text).map_err(|e| Failure::Parse(e.to_string()))?;
            match field {
                Some(Field::Rational) => (parsed.field, parsed.p) = (Some("Q".into()), None),
                Some(Field::Prime(p)) => (parsed.field, parsed.p) = (Some("Fp".into()), Some(p)),
                None => {}
            }
            Ok(Input::Realized(Configuration::new(parsed.to_matrix()?)?))
        }
        InputFormat::Bases => {
            let list: BasisList = serde_json::from_str(text).map_err(|e| Failure::Parse(e.to_string()))?;
            Ok(Input::Abstract(Matroid::from_basis_list(&list)?))
        }
    }
}
