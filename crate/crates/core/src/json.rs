//! JSON forms of tensors and polytopes.
//!
//! Tensor: `{"dim": n, "rank": r, "coords": {"a1,…,an": "p/q", …}}` with keys
//! in multi-index lexicographic order and zero entries omitted.
//! Polytope: `{"vertices": [[x1, …, xn], …]}`.

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{format_rational, parse_rational};
use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;
use crate::tensor::{MultiIndex, SymTensor};

struct Coords<'a>(&'a SymTensor);

impl Serialize for Coords<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        for (alpha, value) in self.0.iter() {
            map.serialize_entry(&alpha.to_string(), &format_rational(value))?;
        }
        map.end()
    }
}

impl Serialize for SymTensor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("dim", &self.dim())?;
        map.serialize_entry("rank", &self.rank())?;
        map.serialize_entry("coords", &Coords(self))?;
        map.end()
    }
}

#[derive(Deserialize)]
struct RawTensor {
    dim: usize,
    rank: u32,
    coords: std::collections::BTreeMap<String, String>,
}

fn parse_multi_index(key: &str) -> Result<MultiIndex> {
    let exponents = key
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad multi-index {key:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiIndex::new(exponents))
}

impl<'de> Deserialize<'de> for SymTensor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawTensor::deserialize(deserializer)?;
        let coords = raw
            .coords
            .iter()
            .map(|(k, v)| Ok((parse_multi_index(k)?, parse_rational(v)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        SymTensor::from_coords(raw.dim, raw.rank, coords).map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub vertices: Vec<Vec<i64>>,
}

impl From<&LatticePolytope> for PolytopeJson {
    fn from(p: &LatticePolytope) -> Self {
        PolytopeJson {
            vertices: p.vertices().to_vec(),
        }
    }
}

pub fn parse_polytope(text: &str) -> Result<LatticePolytope> {
    let raw: PolytopeJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    LatticePolytope::from_points(&raw.vertices)
}

pub fn polytope_to_json(p: &LatticePolytope) -> String {
    serde_json::to_string(&PolytopeJson::from(p)).expect("plain data serializes")
}

pub fn tensor_to_json(t: &SymTensor) -> String {
    serde_json::to_string(t).expect("plain data serializes")
}

pub fn parse_tensor(text: &str) -> Result<SymTensor> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;
    use crate::tensor::sym_product;

    #[test]
    fn tensor_round_trip_and_order() {
        let e1 = SymTensor::from_coords(2, 1, [(MultiIndex::new(vec![1, 0]), frac(1, 1))]).unwrap();
        let e2 = SymTensor::from_coords(2, 1, [(MultiIndex::new(vec![0, 1]), frac(1, 1))]).unwrap();
        let t = sym_product(&e1, &e2).unwrap();
        let text = tensor_to_json(&t);
        assert_eq!(text, r#"{"dim":2,"rank":2,"coords":{"1,1":"1/2"}}"#);
        assert_eq!(parse_tensor(&text).unwrap(), t);

        // multi-index order, not string order
        let big = SymTensor::from_coords(
            2,
            10,
            [
                (MultiIndex::new(vec![2, 8]), frac(1, 3)),
                (MultiIndex::new(vec![10, 0]), frac(-2, 1)),
            ],
        )
        .unwrap();
        assert_eq!(
            tensor_to_json(&big),
            r#"{"dim":2,"rank":10,"coords":{"2,8":"1/3","10,0":"-2"}}"#
        );
    }

    #[test]
    fn polytope_round_trip() {
        let p = parse_polytope(r#"{"vertices": [[0,0],[2,0],[0,2],[2,2],[1,1]]}"#).unwrap();
        assert_eq!(
            polytope_to_json(&p),
            r#"{"vertices":[[0,0],[0,2],[2,0],[2,2]]}"#
        );
        assert!(parse_polytope(r#"{"vertices": [[0,0],[1]]}"#).is_err());
        assert!(parse_polytope("not json").is_err());
        assert!(parse_polytope(r#"{"vertices": []}"#).unwrap().is_empty());
    }

    #[test]
    fn malformed_tensor_rejected() {
        assert!(parse_tensor(r#"{"dim":2,"rank":2,"coords":{"1,0":"1"}}"#).is_err());
        assert!(parse_tensor(r#"{"dim":2,"rank":1,"coords":{"1,0":"1/0"}}"#).is_err());
    }
}
