//! Versioned JSON documents for fields, subspaces, and codes.
//!
//! Every top-level document carries `"schema": "v1"`.  Subspace bases are
//! stored as RREF row lists; a strict parse insists on exactly the
//! canonical rows, while a lenient parse re-canonicalizes whatever span
//! it is given.  Neither mode ever reorders the words of a code: word
//! indices are significant because the addition table refers to them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{AdditionTable, CodeError, SubspaceCode};
use crate::field::{make_field, Field, FieldError};
use crate::subspace::{canonicalize, Subspace, SubspaceError};

pub const SCHEMA_VERSION: &str = "v1";

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("unsupported schema {found:?}; this build reads {SCHEMA_VERSION:?}")]
    BadSchema { found: String },
    #[error("word {index} is not in canonical reduced row-echelon form")]
    NotCanonical { index: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Serde(#[from] serde_json::Error),
}

/// How forgiving a parse is about basis rows.  Both modes preserve word
/// order exactly as written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParseMode {
    /// Basis rows must already be the canonical RREF rows.
    Strict,
    /// Any spanning set is accepted and re-canonicalized.
    Lenient,
}

/// GF(p^m); `modulus` lists the irreducible polynomial's coefficients in
/// low-degree-first order (present exactly when m > 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub p: u8,
    pub m: u8,
    pub modulus: Option<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceDoc {
    pub schema: String,
    pub n: usize,
    pub field: FieldDoc,
    pub basis: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDoc {
    pub schema: String,
    pub n: usize,
    pub field: FieldDoc,
    /// One basis (RREF row list) per word, in table index order.
    pub words: Vec<Vec<Vec<u8>>>,
    pub table: Option<Vec<Vec<usize>>>,
}

pub fn field_doc(field: &Field) -> FieldDoc {
    FieldDoc {
        p: field.p(),
        m: field.m(),
        modulus: field.modulus().map(<[u8]>::to_vec),
    }
}

pub fn parse_field(doc: &FieldDoc) -> Result<Field, JsonError> {
    Ok(make_field(doc.p, doc.m, doc.modulus.clone())?)
}

pub fn subspace_doc(subspace: &Subspace) -> SubspaceDoc {
    SubspaceDoc {
        schema: SCHEMA_VERSION.to_string(),
        n: subspace.ambient(),
        field: field_doc(subspace.field()),
        basis: subspace.basis().to_vec(),
    }
}

pub fn parse_subspace(doc: &SubspaceDoc, mode: ParseMode) -> Result<Subspace, JsonError> {
    check_schema(&doc.schema)?;
    let field = parse_field(&doc.field)?;
    basis_to_subspace(&doc.basis, doc.n, &field, mode, 0)
}

fn basis_to_subspace(
    basis: &[Vec<u8>],
    n: usize,
    field: &Field,
    mode: ParseMode,
    index: usize,
) -> Result<Subspace, JsonError> {
    let subspace = canonicalize(basis, n, field)?;
    if mode == ParseMode::Strict && subspace.basis() != basis {
        return Err(JsonError::NotCanonical { index });
    }
    Ok(subspace)
}

pub fn code_doc(code: &SubspaceCode) -> CodeDoc {
    CodeDoc {
        schema: SCHEMA_VERSION.to_string(),
        n: code.ambient(),
        field: field_doc(code.field()),
        words: code.words().iter().map(|w| w.basis().to_vec()).collect(),
        table: code.table().map(|t| t.rows().to_vec()),
    }
}

pub fn parse_code(doc: &CodeDoc, mode: ParseMode) -> Result<SubspaceCode, JsonError> {
    check_schema(&doc.schema)?;
    let field = parse_field(&doc.field)?;
    let words: Vec<Subspace> = doc
        .words
        .iter()
        .enumerate()
        .map(|(i, basis)| basis_to_subspace(basis, doc.n, &field, mode, i))
        .collect::<Result<_, _>>()?;
    let table = doc.table.clone().map(AdditionTable::new).transpose()?;
    Ok(SubspaceCode::new(words, table)?)
}

/// The canonical serialization used for hashing and byte-identical
/// catalogs: compact JSON with the struct's fixed key order.
pub fn canonical_code_json(doc: &CodeDoc) -> Result<String, JsonError> {
    Ok(serde_json::to_string(doc)?)
}

fn check_schema(schema: &str) -> Result<(), JsonError> {
    if schema != SCHEMA_VERSION {
        return Err(JsonError::BadSchema {
            found: schema.to_string(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::search::{build_direct_sum_code, remark_counterexample};

    fn gf2() -> Field {
        FieldSpec::gf(2).unwrap()
    }

    #[test]
    fn field_documents_round_trip() {
        let doc = field_doc(&gf2());
        assert_eq!(
            serde_json::to_string(&doc).unwrap(),
            r#"{"p":2,"m":1,"modulus":null}"#
        );
        assert_eq!(parse_field(&doc).unwrap().q(), 2);

        let gf4 = FieldSpec::gf(4).unwrap();
        let doc = field_doc(&gf4);
        assert_eq!(
            serde_json::to_string(&doc).unwrap(),
            r#"{"p":2,"m":2,"modulus":[1,1,1]}"#
        );
        let parsed = parse_field(&doc).unwrap();
        assert_eq!(parsed.q(), 4);
    }

    #[test]
    fn subspace_documents_round_trip() {
        let f = gf2();
        let s = canonicalize(&[vec![1, 1, 0], vec![0, 0, 1]], 3, &f).unwrap();
        let doc = subspace_doc(&s);
        assert_eq!(doc.schema, "v1");
        assert_eq!(parse_subspace(&doc, ParseMode::Strict).unwrap(), s);

        let zero = Subspace::zero(3, &f).unwrap();
        let doc = subspace_doc(&zero);
        assert!(doc.basis.is_empty());
        assert_eq!(parse_subspace(&doc, ParseMode::Strict).unwrap(), zero);
    }

    #[test]
    fn strict_rejects_what_lenient_repairs() {
        let f = gf2();
        let doc = SubspaceDoc {
            schema: "v1".to_string(),
            n: 2,
            field: field_doc(&f),
            // Spans the whole plane but the rows are not in RREF.
            basis: vec![vec![1, 1], vec![0, 1]],
        };
        assert!(matches!(
            parse_subspace(&doc, ParseMode::Strict).unwrap_err(),
            JsonError::NotCanonical { index: 0 }
        ));
        let repaired = parse_subspace(&doc, ParseMode::Lenient).unwrap();
        assert!(repaired.is_full());
    }

    #[test]
    fn code_documents_round_trip_without_reordering() {
        let code = remark_counterexample(&gf2(), 3).unwrap();
        let doc = code_doc(&code);
        let json = canonical_code_json(&doc).unwrap();
        assert!(json.starts_with(r#"{"schema":"v1","n":3,"#));
        let back: CodeDoc = serde_json::from_str(&json).unwrap();
        let parsed = parse_code(&back, ParseMode::Strict).unwrap();
        assert_eq!(parsed.words(), code.words(), "word order is preserved");
        assert_eq!(parsed.table(), code.table());
        assert_eq!(canonical_code_json(&code_doc(&parsed)).unwrap(), json);
    }

    #[test]
    fn lenient_parse_keeps_word_order() {
        let f = gf2();
        // Words deliberately listed with the full plane before a line and
        // a messy basis for the plane.
        let doc = CodeDoc {
            schema: "v1".to_string(),
            n: 2,
            field: field_doc(&f),
            words: vec![
                vec![],
                vec![vec![1, 1], vec![1, 0]],
                vec![vec![1, 0]],
                vec![vec![0, 1]],
            ],
            table: None,
        };
        let code = parse_code(&doc, ParseMode::Lenient).unwrap();
        assert!(code.word(1).is_full());
        assert_eq!(code.word(2).basis(), &[vec![1, 0]]);
    }

    #[test]
    fn schema_and_shape_failures() {
        let code = build_direct_sum_code(&[Subspace::full(2, &gf2()).unwrap()]).unwrap();
        let mut doc = code_doc(&code);
        doc.schema = "v2".to_string();
        assert!(matches!(
            parse_code(&doc, ParseMode::Strict).unwrap_err(),
            JsonError::BadSchema { found } if found == "v2"
        ));

        let mut doc = code_doc(&code);
        doc.table = Some(vec![vec![0, 1]]);
        assert!(matches!(
            parse_code(&doc, ParseMode::Strict).unwrap_err(),
            JsonError::Code(CodeError::BadTableShape { .. })
        ));

        let mut doc = code_doc(&code);
        doc.field.modulus = Some(vec![1, 0]);
        assert!(matches!(
            parse_code(&doc, ParseMode::Strict).unwrap_err(),
            JsonError::Field(_)
        ));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = serde_json::from_str::<CodeDoc>(
            r#"{"schema":"v1","n":2,"field":{"p":2,"m":1,"modulus":null},"words":[[]],"table":null,"extra":1}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("extra"));
    }
}
