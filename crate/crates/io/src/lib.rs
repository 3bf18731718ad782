//! Line-oriented text format for the algebra toolkit: semigroups,
//! algebras, extending datums, matched pairs, deformation maps, flag-row
//! references, and enumeration grids, with `#` comments and `import`
//! statements. Parsing produces a syntax document; resolution turns it
//! into core entities; serialization emits the canonical form, which
//! parses back identically.

pub mod ast;
mod lexer;
mod parse;
mod resolve;
mod serialize;

pub use parse::{parse, parse_scalar};
pub use resolve::{resolve, EntityKind, Resolved};
pub use serialize::{
    algebra_block, datum_block, deformation_block, pair_block, semigroup_block, serialize,
};

use ast::Document;
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

/// Syntax error with the 1-based position of the first offending byte.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: expected {expected}, found {found}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Resolution error, reported at parse-error level with a position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {}, column {}: {}", .0.line, .0.col, .0.message)]
pub struct ResolveError(pub Located);

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error("{path}: {inner}")]
    InFile {
        path: String,
        #[source]
        inner: Box<IoError>,
    },
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("import cycle through {0}")]
    ImportCycle(String),
}

/// Parse and resolve a standalone document (no imports allowed).
pub fn load_str(text: &str) -> Result<(Document, Resolved), IoError> {
    let doc = parse(text)?;
    if let Some(import) = doc.imports.first() {
        return Err(IoError::Resolve(ResolveError(Located {
            line: import.line,
            col: import.col,
            message: "imports need a file context".into(),
        })));
    }
    let resolved = resolve(&doc)?;
    Ok((doc, resolved))
}

/// Parse a file, splice in its imports depth-first, and resolve the
/// combined document. Returns the file's own document (imports intact)
/// together with the fully resolved entity set.
pub fn load_path(path: &Path) -> Result<(Document, Resolved), IoError> {
    let mut visited = BTreeSet::new();
    let doc = read_document(path, &mut visited)?;
    let combined = flatten(path, &doc, &mut BTreeSet::new())?;
    let resolved = resolve(&combined).map_err(|e| IoError::InFile {
        path: path.display().to_string(),
        inner: Box::new(IoError::Resolve(e)),
    })?;
    Ok((doc, resolved))
}

fn read_document(path: &Path, _visited: &mut BTreeSet<PathBuf>) -> Result<Document, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text).map_err(|e| IoError::InFile {
        path: path.display().to_string(),
        inner: Box::new(IoError::Parse(e)),
    })
}

fn flatten(
    path: &Path,
    doc: &Document,
    active: &mut BTreeSet<PathBuf>,
) -> Result<Document, IoError> {
    let canonical = path
        .canonicalize()
        .unwrap_or_else(|_| path.to_path_buf());
    if !active.insert(canonical.clone()) {
        return Err(IoError::ImportCycle(path.display().to_string()));
    }
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut combined = Document::empty();
    for import in &doc.imports {
        let target = dir.join(&import.value);
        let sub = read_document(&target, &mut BTreeSet::new())?;
        let sub_combined = flatten(&target, &sub, active)?;
        combined.blocks.extend(sub_combined.blocks);
    }
    combined.blocks.extend(doc.blocks.clone());
    active.remove(&canonical);
    Ok(combined)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rbhom_core::sample;

    const EXAMPLE: &str = "\
semigroup S {
  elements: e, s ;
  table: e*e = e ;
  table: e*s = s ;
  table: s*e = s ;
  table: s*s = e ;
}

algebra R over QL weight l uses S {
  dim: 1 ;
  basis: e1 ;
  mul: e1*e1 = 1 e1 ;
  theta: e1 -> 1 e1 ;
}
";

    #[test]
    fn canonical_document_round_trips_bytewise() {
        let doc = parse(EXAMPLE).unwrap();
        assert_eq!(serialize(&doc), EXAMPLE);
        let resolved = resolve(&doc).unwrap();
        assert_eq!(resolved.algebras["R"], sample::base_r());
    }

    #[test]
    fn empty_input_is_an_empty_document() {
        let doc = parse("").unwrap();
        assert!(doc.blocks.is_empty());
        assert_eq!(serialize(&doc), "");
    }

    #[test]
    fn unknown_basis_name_is_located() {
        let text = EXAMPLE.replace("mul: e1*e1 = 1 e1", "mul: e1*e1 = 1 e3");
        let doc = parse(&text).unwrap();
        let err = resolve(&doc).unwrap_err();
        assert!(err.to_string().contains("e3"), "{err}");
        assert!(err.to_string().starts_with("line 12"), "{err}");
    }

    #[test]
    fn scalar_literals_parse_and_print() {
        for (src, canonical) in [
            ("l", "l"),
            ("-1*l", "-1*l"),
            ("l - 1", "l-1"),
            ("(2*l+1)/(l^2+l)", "(2*l+1)/(l^2+l)"),
            ("( 2*l + 1 ) / ( l^2 + l )", "(2*l+1)/(l^2+l)"),
            ("3/2", "3/2"),
            ("-3/2", "-3/2"),
            ("0", "0"),
            ("2*l^2 - l + 1/2", "2*l^2-l+1/2"),
        ] {
            let v = parse_scalar(src).unwrap();
            assert_eq!(v.to_string(), canonical, "{src}");
        }
        assert!(parse_scalar("l^70").is_err());
        assert!(parse_scalar("(l)/(0)").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn entity_blocks_round_trip_through_builders() {
        let e = sample::algebra_e();
        let mut doc = Document::empty();
        doc.blocks.push(ast::Block::Semigroup(semigroup_block("S", &e.semigroup)));
        doc.blocks.push(ast::Block::Algebra(algebra_block("E", &e, "S")));
        let text = serialize(&doc);
        let (doc2, resolved) = load_str(&text).unwrap();
        assert_eq!(resolved.algebras["E"], e);
        assert_eq!(serialize(&doc2), text);
    }

    #[test]
    fn datum_blocks_round_trip_through_builders() {
        let mut rng = sample::rng(0x10);
        for _ in 0..20 {
            let datum = sample::valid_datum(&mut rng);
            let mut doc = Document::empty();
            doc.blocks
                .push(ast::Block::Semigroup(semigroup_block("S", &datum.base.semigroup)));
            doc.blocks
                .push(ast::Block::Algebra(algebra_block("base", &datum.base, "S")));
            doc.blocks.push(ast::Block::Datum(datum_block("d", &datum, "base")));
            let text = serialize(&doc);
            let (doc2, resolved) = load_str(&text).unwrap();
            assert_eq!(resolved.datums["d"], datum, "\n{text}");
            assert_eq!(serialize(&doc2), text);
        }
    }
}
