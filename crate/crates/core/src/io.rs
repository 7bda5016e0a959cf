//! Text formats: edge lists and model spec files.
//!
//! Edge list: first non-comment line is `n`, then one `u v` pair per line
//! with 0-based vertices. Blank lines and `#` comments are ignored. Output
//! lists each edge once as `u v` with `u < v`, in lexicographic order.
//!
//! Model spec: `key: value` lines with `type` one of `homogeneous`
//! (`p`), `example_family` (`a`, `b`) or `matrix` (`matrix_file`), plus
//! `n` (not needed for `matrix`, where the row count decides). Matrix files
//! hold strictly lower-triangular rows: row `i` lists `p(i, 0) .. p(i, i-1)`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::model::{EdgeProbabilityModel, ModelError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing vertex count")]
    MissingCount,
    #[error("missing key `{0}`")]
    MissingKey(&'static str),
    #[error("unknown model type `{0}`")]
    UnknownType(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, ParseError> {
    tok.parse().map_err(|_| ParseError::Syntax { line, msg: format!("cannot parse `{tok}`") })
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (line, first) = lines.next().ok_or(ParseError::MissingCount)?;
    let n: usize = parse_num(first, line)?;
    let mut edges = Vec::new();
    for (line, content) in lines {
        let toks: Vec<&str> = content.split_whitespace().collect();
        let [u, v] = toks[..] else {
            return Err(ParseError::Syntax { line, msg: format!("expected `u v`, got `{content}`") });
        };
        edges.push((parse_num(u, line)?, parse_num(v, line)?));
    }
    Ok(Graph::from_edges(n, edges)?)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

pub fn read_edge_list(path: &Path) -> Result<Graph, ParseError> {
    let text = fs::read_to_string(path).map_err(|source| ParseError::Io { path: path.into(), source })?;
    parse_edge_list(&text)
}

/// Parsed but not yet validated model description.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    Homogeneous { n: Option<usize>, p: f64 },
    ExampleFamily { n: Option<usize>, a: f64, b: f64 },
    Matrix { n: Option<usize>, rows: Vec<Vec<f64>> },
}

impl ModelSpec {
    /// Builds the model; `n_override` replaces any `n` from the spec.
    pub fn build(&self, n_override: Option<usize>) -> Result<EdgeProbabilityModel, ParseError> {
        let pick = |n: Option<usize>| n_override.or(n).ok_or(ParseError::MissingKey("n"));
        Ok(match self {
            ModelSpec::Homogeneous { n, p } => EdgeProbabilityModel::homogeneous(pick(*n)?, *p)?,
            ModelSpec::ExampleFamily { n, a, b } => EdgeProbabilityModel::example_family(pick(*n)?, *a, *b)?,
            ModelSpec::Matrix { n, rows } => {
                EdgeProbabilityModel::from_lower_triangular(n_override.or(*n).unwrap_or(rows.len() + 1), rows)?
            }
        })
    }
}

/// Strictly lower-triangular matrix rows.
pub fn parse_matrix_rows(text: &str) -> Result<Vec<Vec<f64>>, ParseError> {
    content_lines(text)
        .map(|(line, content)| content.split_whitespace().map(|tok| parse_num(tok, line)).collect())
        .collect()
}

/// Parses a model spec. Relative `matrix_file` paths resolve against
/// `base_dir`.
pub fn parse_model_spec(text: &str, base_dir: &Path) -> Result<ModelSpec, ParseError> {
    let mut kind = None;
    let (mut n, mut p, mut a, mut b, mut matrix_file) = (None, None, None, None, None);
    for (line, content) in content_lines(text) {
        let Some((key, value)) = content.split_once(':') else {
            return Err(ParseError::Syntax { line, msg: format!("expected `key: value`, got `{content}`") });
        };
        let value = value.trim();
        match key.trim() {
            "type" => kind = Some(value.to_string()),
            "n" => n = Some(parse_num::<usize>(value, line)?),
            "p" => p = Some(parse_num::<f64>(value, line)?),
            "a" => a = Some(parse_num::<f64>(value, line)?),
            "b" => b = Some(parse_num::<f64>(value, line)?),
            "matrix_file" => matrix_file = Some(value.to_string()),
            other => return Err(ParseError::Syntax { line, msg: format!("unknown key `{other}`") }),
        }
    }
    match kind.as_deref().ok_or(ParseError::MissingKey("type"))? {
        "homogeneous" => Ok(ModelSpec::Homogeneous { n, p: p.ok_or(ParseError::MissingKey("p"))? }),
        "example_family" => Ok(ModelSpec::ExampleFamily {
            n,
            a: a.ok_or(ParseError::MissingKey("a"))?,
            b: b.ok_or(ParseError::MissingKey("b"))?,
        }),
        "matrix" => {
            let file = base_dir.join(matrix_file.ok_or(ParseError::MissingKey("matrix_file"))?);
            let text = fs::read_to_string(&file).map_err(|source| ParseError::Io { path: file, source })?;
            Ok(ModelSpec::Matrix { n, rows: parse_matrix_rows(&text)? })
        }
        other => Err(ParseError::UnknownType(other.to_string())),
    }
}

pub fn read_model_spec(path: &Path) -> Result<ModelSpec, ParseError> {
    let text = fs::read_to_string(path).map_err(|source| ParseError::Io { path: path.into(), source })?;
    parse_model_spec(&text, path.parent().unwrap_or(Path::new(".")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelKind;
    use proptest::prelude::*;

    #[test]
    fn edge_list_with_comments() {
        let text = "# a path\n3\n\n1 0   # reversed\n1 2\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(format_edge_list(&g), "3\n0 1\n1 2\n");
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(parse_edge_list(""), Err(ParseError::MissingCount)));
        assert!(matches!(parse_edge_list("3\n0 1 2\n"), Err(ParseError::Syntax { line: 2, .. })));
        assert!(matches!(parse_edge_list("3\n0 0\n"), Err(ParseError::Graph(GraphError::SelfLoop(0)))));
        assert!(matches!(parse_edge_list("x\n"), Err(ParseError::Syntax { line: 1, .. })));
    }

    #[test]
    fn model_specs() {
        let here = Path::new(".");
        let spec = parse_model_spec("type: homogeneous\nn: 10\np: 0.3\n", here).unwrap();
        assert_eq!(spec, ModelSpec::Homogeneous { n: Some(10), p: 0.3 });
        assert_eq!(spec.build(Some(20)).unwrap().n(), 20);

        let spec = parse_model_spec("type: example_family\na: 0.4\nb: 0.2", here).unwrap();
        assert!(matches!(spec.build(None), Err(ParseError::MissingKey("n"))));
        let m = spec.build(Some(50)).unwrap();
        assert_eq!(m.kind(), &ModelKind::ExampleFamily { a: 0.4, b: 0.2 });

        assert!(matches!(parse_model_spec("type: graphon\n", here), Err(ParseError::UnknownType(_))));
        assert!(matches!(parse_model_spec("n: 3\n", here), Err(ParseError::MissingKey("type"))));
    }

    #[test]
    fn matrix_spec_from_file() {
        let dir = std::env::temp_dir().join(format!("eulext-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        fs::write(dir.join("m.txt"), "0.2\n0.4 0.6\n").unwrap();
        fs::write(dir.join("model.spec"), "type: matrix\nmatrix_file: m.txt\n").unwrap();
        let m = read_model_spec(&dir.join("model.spec")).unwrap().build(None).unwrap();
        assert_eq!((m.n(), m.p(2, 1)), (3, 0.6));
        fs::remove_dir_all(dir).unwrap();
    }

    proptest! {
        #[test]
        fn edge_list_round_trip(n in 1usize..20, raw in proptest::collection::vec((0usize..20, 0usize..20), 0..60)) {
            let edges: Vec<_> = raw.into_iter().map(|(u, v)| (u % n, v % n)).filter(|(u, v)| u != v).collect();
            let g = Graph::from_edges(n, edges).unwrap();
            prop_assert_eq!(parse_edge_list(&format_edge_list(&g)).unwrap(), g);
        }
    }
}
