//! JSON documents holding one square or a list of squares.
//!
//! ```json
//! {"schema": 1, "field": {"p": 2, "n": 2, "modulus": [1, 1, 1]},
//!  "blocks": [[[0, 0], [1, 1], [2, 2], [3, 3]], ...]}
//! ```
//!
//! Points are `[x, y]` pairs of element indices (`sum c_i p^i` for a field,
//! mixed-radix positions for a cyclic product). Block `j` carries label
//! `j + 1` unless `labels` says otherwise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::squares::{Cell, GroupKind, GroupSpec, Square};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDescriptor {
    pub p: u32,
    pub n: u32,
    /// Constant term first.
    pub modulus: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDescriptor {
    pub cyclic: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareDocument {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDescriptor>,
    pub blocks: Vec<Vec<[u32; 2]>>,
    /// `labels[j]` is the label of block `j`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<u16>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(SquareDocument),
    Many(Vec<SquareDocument>),
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedDocument(msg.into())
}

impl SquareDocument {
    pub fn from_square(square: &Square) -> Self {
        let group = square.group();
        let (field, grp) = match group.kind() {
            GroupKind::FieldPair(f) => (
                Some(FieldDescriptor { p: f.characteristic(), n: f.degree(), modulus: f.modulus().to_vec() }),
                None,
            ),
            GroupKind::CyclicProduct(orders) => (None, Some(GroupDescriptor { cyclic: orders.clone() })),
        };
        let index = |pos: usize| -> u32 {
            match group.as_field() {
                Some(f) => f.element_at_rank(pos).index() as u32,
                None => pos as u32,
            }
        };
        let blocks = square
            .blocks()
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&c| {
                        let (x, y) = group.coords(c);
                        [index(x), index(y)]
                    })
                    .collect()
            })
            .collect();
        SquareDocument { schema: SCHEMA_VERSION, field, group: grp, blocks, labels: None }
    }

    pub fn group(&self) -> Result<GroupSpec> {
        if self.schema != SCHEMA_VERSION {
            return Err(malformed(format!("unsupported schema {} (expected {SCHEMA_VERSION})", self.schema)));
        }
        match (&self.field, &self.group) {
            (Some(fd), None) => {
                let f = FieldSpec::new(fd.p, fd.n).map_err(|e| malformed(e.to_string()))?;
                if f.modulus() != fd.modulus.as_slice() {
                    return Err(malformed(format!(
                        "modulus {:?} does not match the canonical modulus {:?} of GF({}^{})",
                        fd.modulus,
                        f.modulus(),
                        fd.p,
                        fd.n
                    )));
                }
                Ok(GroupSpec::field(&f))
            }
            (None, Some(gd)) => GroupSpec::cyclic(&gd.cyclic).map_err(|e| malformed(e.to_string())),
            _ => Err(malformed("exactly one of \"field\" and \"group\" is required")),
        }
    }

    pub fn to_square(&self) -> Result<Square> {
        let group = self.group()?;
        let d = group.order();
        let pos = |i: u32| -> Result<usize> {
            if i as usize >= d {
                return Err(malformed(format!("element index {i} outside 0..{d}")));
            }
            Ok(match group.as_field() {
                Some(f) => f.rank(f.element(i as usize)?),
                None => i as usize,
            })
        };
        let blocks: Vec<Vec<Cell>> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&[x, y]| Ok(group.cell(pos(x)?, pos(y)?))).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let square = Square::from_partition(&group, blocks)?;
        match &self.labels {
            Some(perm) => square.relabel(perm).map_err(|e| malformed(e.to_string())),
            None => Ok(square),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

/// Parses a single document or an array of documents.
pub fn parse_documents(text: &str) -> Result<Vec<SquareDocument>> {
    match serde_json::from_str::<OneOrMany>(text) {
        Ok(OneOrMany::One(d)) => Ok(vec![d]),
        Ok(OneOrMany::Many(v)) => Ok(v),
        Err(_) => {
            // re-parse strictly for a useful message
            let err = if text.trim_start().starts_with('[') {
                serde_json::from_str::<Vec<SquareDocument>>(text).err()
            } else {
                serde_json::from_str::<SquareDocument>(text).err()
            };
            Err(malformed(err.map(|e| e.to_string()).unwrap_or_else(|| "unrecognized document".into())))
        }
    }
}

pub fn documents_to_json(docs: &[SquareDocument]) -> String {
    serde_json::to_string_pretty(docs).expect("documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::squares::{supersquare, Origin};

    #[test]
    fn round_trip_field_square() {
        let f = FieldSpec::new(2, 2).unwrap();
        let s = supersquare(&f.span_line(f.parse_point("1,1").unwrap()).unwrap()).unwrap();
        let doc = SquareDocument::from_square(&s);
        assert_eq!(doc.blocks[0], vec![[0, 0], [1, 1], [2, 2], [3, 3]]);
        let back = parse_documents(&doc.to_json()).unwrap();
        assert_eq!(back, vec![doc.clone()]);
        assert_eq!(back[0].to_square().unwrap(), s);
    }

    #[test]
    fn round_trip_cyclic() {
        let g = GroupSpec::cyclic(&[6]).unwrap();
        let diag: Vec<Cell> = (0..6).map(|i| g.cell(i, i)).collect();
        let s = Square::supersquare_of_cells(&g, &diag).unwrap();
        let doc = SquareDocument::from_square(&s);
        assert!(doc.field.is_none());
        assert_eq!(doc.to_square().unwrap(), s);
    }

    #[test]
    fn labels_renumber_blocks() {
        let f = FieldSpec::new(2, 1).unwrap();
        let text = r#"{"schema":1,"field":{"p":2,"n":1,"modulus":[0,1]},
            "blocks":[[[0,0],[1,1]],[[0,1],[1,0]]],"labels":[2,1]}"#;
        let s = parse_documents(text).unwrap()[0].to_square().unwrap();
        assert_eq!(s.render(Origin::Top), "2 1\n1 2\n");
        assert_eq!(s.group().as_field(), Some(&f));
    }

    #[test]
    fn rejects_bad_documents() {
        let bad = [
            "{\"schema\":1,\"field\":{\"p\":2,\"n\":1,\"modulus\":[0,1]},\"blocks\":[[[0,0],[1,1]]",
            r#"{"schema":2,"field":{"p":2,"n":1,"modulus":[0,1]},"blocks":[]}"#,
            r#"{"schema":1,"field":{"p":2,"n":1,"modulus":[1,1]},"blocks":[[[0,0],[1,1]],[[0,1],[1,0]]]}"#,
            r#"{"schema":1,"field":{"p":2,"n":1,"modulus":[0,1]},"blocks":[[[0,0],[1,1]],[[0,1],[1,2]]]}"#,
            r#"{"schema":1,"field":{"p":2,"n":1,"modulus":[0,1]},"blocks":[],"extra":0}"#,
            r#"{"schema":1,"blocks":[]}"#,
        ];
        for text in bad {
            let r = parse_documents(text).and_then(|d| d[0].to_square());
            assert!(r.is_err(), "{text}");
        }
    }
}
