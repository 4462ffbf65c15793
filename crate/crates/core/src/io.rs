//! Quiver files and the Π-module JSON dump.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::exactalg::{Mat, PrimeField};
use crate::pimod::PiMod;
use crate::quiver::{Arrow, DimVector, Quiver};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
}

impl QuiverFile {
    pub fn from_quiver(q: &Quiver) -> Self {
        Self {
            vertices: q.names().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| (q.name(a.source).to_owned(), q.name(a.target).to_owned()))
                .collect(),
        }
    }

    pub fn to_quiver(&self) -> Result<Quiver> {
        let index = |name: &str| {
            self.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {name:?}")))
        };
        let arrows = self
            .arrows
            .iter()
            .map(|(s, t)| {
                Ok(Arrow {
                    source: index(s)?,
                    target: index(t)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(self.vertices.clone(), arrows)
    }
}

pub fn parse_quiver_json(text: &str) -> Result<Quiver> {
    let file: QuiverFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_quiver()
}

/// A built-in name (`A<n>`, `D4`) or a path to a quiver JSON file.
pub fn load_quiver(spec: &str) -> Result<Quiver> {
    match Quiver::builtin(spec) {
        Ok(q) => Ok(q),
        Err(_) if Path::new(spec).is_file() => {
            let text = std::fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
            parse_quiver_json(&text)
        }
        Err(e) => Err(e),
    }
}

/// Arrow labels `h:s->t` and `hop:t->s`, with `#k` appended to repeated parallel arrows.
fn arrow_keys(q: &Quiver) -> Vec<String> {
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut label = |base: String| {
        let k = seen.entry(base.clone()).or_default();
        *k += 1;
        if *k == 1 {
            base
        } else {
            format!("{base}#{k}")
        }
    };
    let fwd: Vec<String> = q
        .arrows()
        .iter()
        .map(|a| label(format!("h:{}->{}", q.name(a.source), q.name(a.target))))
        .collect();
    let rev: Vec<String> = q
        .arrows()
        .iter()
        .map(|a| label(format!("hop:{}->{}", q.name(a.target), q.name(a.source))))
        .collect();
    fwd.into_iter().chain(rev).collect()
}

/// Entries are written as symmetric lifts in `(-p/2, p/2]`.
pub fn pimod_to_json(q: &Quiver, x: &PiMod) -> Value {
    let arrows: Map<String, Value> = arrow_keys(q)
        .into_iter()
        .zip(x.maps())
        .map(|(k, m)| (k, serde_json::to_value(m.to_i64_rows()).expect("integers")))
        .collect();
    serde_json::json!({ "dim": x.dim().0, "arrows": arrows })
}

pub fn pimod_from_json(q: &Quiver, field: PrimeField, v: &Value) -> Result<PiMod> {
    #[derive(Deserialize)]
    struct Dump {
        dim: Vec<usize>,
        arrows: BTreeMap<String, Vec<Vec<i64>>>,
    }
    let dump: Dump = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let dim = DimVector(dump.dim);
    if dim.len() != q.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: q.vertex_count(),
            got: dim.len(),
        });
    }
    let keys = arrow_keys(q);
    let n = q.arrow_count();
    let mut mats = Vec::with_capacity(keys.len());
    for (a, key) in keys.iter().enumerate() {
        let rows = dump
            .arrows
            .get(key)
            .ok_or_else(|| Error::Parse(format!("missing arrow {key}")))?;
        let arrow = q.arrows()[a % n.max(1)];
        let (r, c) = if a < n {
            (dim.0[arrow.target], dim.0[arrow.source])
        } else {
            (dim.0[arrow.source], dim.0[arrow.target])
        };
        if r > 0 && (rows.len() != r || rows.iter().any(|row| row.len() != c)) {
            return Err(Error::Parse(format!("arrow {key} is not {r}x{c}")));
        }
        let m = if r == 0 || c == 0 {
            Mat::zeros(field, r, c)
        } else {
            Mat::from_i64_rows(field, rows)
        };
        mats.push(m);
    }
    let reverse = mats.split_off(n);
    PiMod::new(q, field, dim, mats, reverse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::exactalg::FieldCtx;
    use crate::pimod::sample_conormal;

    #[test]
    fn quiver_file_roundtrip() {
        let text = r#"{"vertices":["a","b","c"],"arrows":[["a","b"],["c","b"]]}"#;
        let q = parse_quiver_json(text).unwrap();
        assert_eq!(q.vertex_count(), 3);
        assert_eq!(q.dynkin_type().as_deref(), Some("A3"));
        let back = serde_json::to_string(&QuiverFile::from_quiver(&q)).unwrap();
        assert_eq!(back, text);
        assert!(parse_quiver_json(r#"{"vertices":["a"],"arrows":[["a","z"]]}"#).is_err());
    }

    #[test]
    fn builtins_take_priority() {
        assert_eq!(load_quiver("A3").unwrap(), Quiver::a_n(3));
        assert!(load_quiver("/no/such/file.json").is_err());
    }

    #[test]
    fn pimod_dump_roundtrip() {
        let q = Quiver::a_n(3);
        let f = PrimeField::default();
        let cat = Catalog::build(&q, f, 0).unwrap();
        let mut ctx = FieldCtx::new(f, 2);
        let x = sample_conormal(&cat, &"[1,1,0]+[0,0,1]".parse().unwrap(), &mut ctx).unwrap();
        let v = pimod_to_json(&q, &x);
        assert!(v["arrows"]["h:1->2"].is_array());
        assert!(v["arrows"]["hop:3->2"].is_array());
        assert_eq!(pimod_from_json(&q, f, &v).unwrap(), x);
    }

    #[test]
    fn parallel_arrows_get_suffixes() {
        let q = Quiver::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let keys = arrow_keys(&q);
        assert_eq!(keys, ["h:1->2", "h:1->2#2", "hop:2->1", "hop:2->1#2"]);
    }
}
