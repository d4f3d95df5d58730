//! JSON documents for partial magmas and truncated partial groups.
//!
//! A magma document lists element names, the unit, and the defined
//! products as `[left, right, result]` triples. Products involving the unit
//! may be omitted; a pair that is not listed is undefined. On input the
//! unit is moved to index 0 and the remaining elements keep their order.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::magma::{Element, PartialMagma, RawTable};
use crate::symset::TruncatedPartialGroup;
use crate::words::Word;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MagmaDoc {
    pub elements: Vec<String>,
    pub unit: String,
    pub products: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncatedDoc {
    #[serde(rename = "N")]
    pub top: usize,
    pub carrier: MagmaDoc,
    pub dagger: Vec<[String; 2]>,
    #[serde(default)]
    pub levels: BTreeMap<usize, Vec<Vec<String>>>,
}

impl MagmaDoc {
    pub fn from_magma(p: &PartialMagma) -> MagmaDoc {
        let order = unit_first(p);
        let mut products = Vec::new();
        for &a in &order {
            for &b in &order {
                if a == p.unit() || b == p.unit() {
                    continue;
                }
                if let Some(c) = p.product(a, b) {
                    products.push([p.name(a).into(), p.name(b).into(), p.name(c).into()]);
                }
            }
        }
        MagmaDoc {
            elements: order.iter().map(|&e| p.name(e).to_string()).collect(),
            unit: p.name(p.unit()).to_string(),
            products,
        }
    }

    pub fn to_magma(&self) -> Result<PartialMagma> {
        let Some(unit_pos) = self.elements.iter().position(|n| *n == self.unit) else {
            return Err(Error::Structural(format!(
                "unit `{}` is not among the elements",
                self.unit
            )));
        };
        let mut names = vec![self.elements[unit_pos].clone()];
        names.extend(
            self.elements
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != unit_pos)
                .map(|(_, n)| n.clone()),
        );
        let index: HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        if index.len() != names.len() {
            return Err(Error::Structural("duplicate element names".into()));
        }
        let lookup = |n: &str| {
            index
                .get(n)
                .copied()
                .ok_or_else(|| Error::Structural(format!("unknown element `{n}`")))
        };
        let k = names.len();
        let mut table: RawTable = vec![vec![None; k]; k];
        for [l, r, v] in &self.products {
            let (i, j, v) = (lookup(l)?, lookup(r)?, lookup(v)?);
            if table[i][j].is_some() {
                return Err(Error::Structural(format!("product {l}·{r} listed twice")));
            }
            table[i][j] = Some(v);
        }
        for a in 0..k {
            table[0][a].get_or_insert(a);
            table[a][0].get_or_insert(a);
        }
        PartialMagma::new(names, &table, 0)
    }
}

fn unit_first(p: &PartialMagma) -> Vec<Element> {
    std::iter::once(p.unit())
        .chain(p.elements().filter(|&e| e != p.unit()))
        .collect()
}

impl TruncatedDoc {
    pub fn from_structure(x: &TruncatedPartialGroup) -> TruncatedDoc {
        let c = x.carrier();
        let dagger = unit_first(c)
            .into_iter()
            .map(|a| [c.name(a).to_string(), c.name(x.dagger(a)).to_string()])
            .collect();
        let levels = (2..=x.top())
            .map(|n| {
                let words = x
                    .level(n)
                    .words()
                    .map(|w| w.0.iter().map(|&e| c.name(e).to_string()).collect())
                    .collect();
                (n, words)
            })
            .collect();
        TruncatedDoc {
            top: x.top(),
            carrier: MagmaDoc::from_magma(c),
            dagger,
            levels,
        }
    }

    pub fn to_structure(&self) -> Result<TruncatedPartialGroup> {
        let carrier = self.carrier.to_magma()?;
        let k = carrier.size();
        let lookup = |n: &str| {
            carrier
                .element(n)
                .ok_or_else(|| Error::Structural(format!("unknown element `{n}`")))
        };
        let mut dagger = vec![None; k];
        for [a, d] in &self.dagger {
            let (a, d) = (lookup(a)?, lookup(d)?);
            if dagger[a.0].replace(d).is_some() {
                return Err(Error::Structural(format!(
                    "dagger of `{}` given twice",
                    carrier.name(a)
                )));
            }
        }
        let dagger = dagger
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                d.ok_or_else(|| {
                    Error::Structural(format!("dagger of `{}` missing", carrier.name(Element(i))))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut higher = BTreeMap::new();
        for (&n, words) in &self.levels {
            let ws = words
                .iter()
                .map(|w| w.iter().map(|s| lookup(s)).collect::<Result<Vec<_>>>().map(Word))
                .collect::<Result<Vec<_>>>()?;
            higher.insert(n, ws);
        }
        TruncatedPartialGroup::from_parts(carrier, dagger, self.top, &higher)
    }
}

pub fn parse_magma(json: &str) -> Result<PartialMagma> {
    serde_json::from_str::<MagmaDoc>(json)?.to_magma()
}

pub fn magma_to_json(p: &PartialMagma) -> String {
    pretty(&MagmaDoc::from_magma(p))
}

pub fn parse_truncated(json: &str) -> Result<TruncatedPartialGroup> {
    serde_json::from_str::<TruncatedDoc>(json)?.to_structure()
}

pub fn truncated_to_json(x: &TruncatedPartialGroup) -> String {
    pretty(&TruncatedDoc::from_structure(x))
}

/// Either kind of document, told apart by the presence of `"N"`.
#[derive(Clone, Debug)]
pub enum Document {
    Magma(PartialMagma),
    Truncated(TruncatedPartialGroup),
}

pub fn parse_document(json: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(json)?;
    if value.get("N").is_some() {
        Ok(Document::Truncated(
            serde_json::from_value::<TruncatedDoc>(value)?.to_structure()?,
        ))
    } else {
        Ok(Document::Magma(serde_json::from_value::<MagmaDoc>(value)?.to_magma()?))
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::catalog::*;

    const P3: &str = r#"{"elements": ["1", "a", "b"], "unit": "1",
        "products": [["a", "b", "1"], ["b", "a", "1"]]}"#;

    #[test]
    fn parses_p3() {
        assert_eq!(parse_magma(P3).unwrap(), p3());
    }

    #[test]
    fn unit_moves_to_front() {
        let doc = r#"{"elements": ["a", "e"], "unit": "e", "products": [["a", "a", "e"]]}"#;
        let p = parse_magma(doc).unwrap();
        assert_eq!(p.unit(), Element(0));
        assert_eq!(p.name(Element(0)), "e");
        assert_eq!(p.product(Element(1), Element(1)), Some(Element(0)));
    }

    #[test]
    fn structural_errors() {
        let dup = r#"{"elements": ["1", "a"], "unit": "1",
            "products": [["a", "a", "1"], ["a", "a", "a"]]}"#;
        assert!(matches!(parse_magma(dup), Err(Error::Structural(_))));
        let unknown = r#"{"elements": ["1", "a"], "unit": "1", "products": [["a", "z", "1"]]}"#;
        assert!(matches!(parse_magma(unknown), Err(Error::Structural(_))));
        let no_unit = r#"{"elements": ["1", "a"], "unit": "e", "products": []}"#;
        assert!(matches!(parse_magma(no_unit), Err(Error::Structural(_))));
        assert!(matches!(parse_magma("{"), Err(Error::Json(_))));
    }

    #[test]
    fn wrong_explicit_unit_product_is_an_axiom_error() {
        let doc = r#"{"elements": ["1", "a"], "unit": "1", "products": [["1", "a", "1"]]}"#;
        assert!(matches!(parse_magma(doc), Err(Error::Axiom(_))));
    }

    #[test]
    fn truncated_round_trip() {
        let x = crate::functors::big_embed(&group(p3()), 4).unwrap();
        let json = truncated_to_json(&x);
        let back = parse_truncated(&json).unwrap();
        assert_eq!(back, x);
        assert!(matches!(parse_document(&json).unwrap(), Document::Truncated(_)));
        assert!(matches!(parse_document(P3).unwrap(), Document::Magma(_)));
    }

    #[test]
    fn truncated_doc_levels_are_keyed_numerically() {
        let x = crate::functors::big_embed(&group(cyclic(2)), 3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&truncated_to_json(&x)).unwrap();
        assert_eq!(v["N"], 3);
        assert_eq!(v["levels"]["2"].as_array().unwrap().len(), 4);
        assert_eq!(v["levels"]["3"].as_array().unwrap().len(), 8);
    }

    #[test]
    fn truncated_structural_errors() {
        let base = r#"{"N": 2, "carrier": {"elements": ["1", "a"], "unit": "1", "products": [["a","a","1"]]},"#;
        let missing = format!(r#"{base} "dagger": [["1","1"]], "levels": {{}}}}"#);
        assert!(matches!(parse_truncated(&missing), Err(Error::Structural(_))));
        let bad_len = format!(r#"{base} "dagger": [["1","1"],["a","a"]], "levels": {{"2": [["a"]]}}}}"#);
        assert!(matches!(parse_truncated(&bad_len), Err(Error::Structural(_))));
        let ok = format!(r#"{base} "dagger": [["1","1"],["a","a"]], "levels": {{"2": [["1","1"],["1","a"],["a","1"],["a","a"]]}}}}"#);
        let x = parse_truncated(&ok).unwrap();
        assert!(x.validate().passed());
    }
}
