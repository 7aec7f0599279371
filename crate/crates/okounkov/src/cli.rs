//! JSON ingestion, command dispatch, and report emission.
//!
//! Documents are versioned JSON (`"schema_version": "1"`); reports are
//! emitted with sorted keys and exact `"p/q"` rationals so identical
//! invocations produce identical bytes. CSV is a flat projection of the
//! JSON rows.

use std::collections::BTreeMap;
use std::str::FromStr;

use num::{One, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactmath::{Int, Rat};
use crate::hull::{body_limit, nok_body};
use crate::limits::{
    decompose_reduced, degree_limit_report, sumset_report, volume_limit_report,
    MultiComponentSeries,
};
use crate::series::{GradedLinearSeries, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Series(GradedLinearSeries),
    Multi(MultiComponentSeries),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct Flags {
    pub max_degree: Option<u64>,
    pub p: Vec<u64>,
    pub format: Format,
    pub ordering: Option<Vec<usize>>,
    /// Convergence diagnostic threshold only; never affects exact results.
    pub tolerance: Option<Rat>,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            max_degree: None,
            p: vec![1, 2, 3],
            format: Format::Json,
            ordering: None,
            tolerance: None,
        }
    }
}

fn schema_err(pointer: &str, message: &str) -> Error {
    Error::SchemaError {
        pointer: pointer.to_string(),
        message: message.to_string(),
    }
}

fn as_object<'a>(v: &'a Value, pointer: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| schema_err(pointer, "expected an object"))
}

fn as_array<'a>(v: &'a Value, pointer: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| schema_err(pointer, "expected an array"))
}

fn as_str<'a>(v: &'a Value, pointer: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| schema_err(pointer, "expected a string"))
}

fn as_u64(v: &Value, pointer: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| schema_err(pointer, "expected a nonnegative integer"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, pointer: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| schema_err(&format!("{pointer}/{key}"), "missing field"))
}

/// Parse `"p"` or `"p/q"`; anything else (decimals in particular) is
/// rejected to keep the exactness contract.
pub fn parse_rat(s: &str, pointer: &str) -> Result<Rat> {
    let bad = || Error::BadRational {
        pointer: pointer.to_string(),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = Int::from_str(num.trim()).map_err(|_| bad())?;
    let d = Int::from_str(den.trim()).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

fn parse_exponent(key: &str, d: usize, pointer: &str) -> Result<Vec<u32>> {
    let bad = || Error::BadExponent {
        pointer: pointer.to_string(),
        expected: d,
    };
    let parts: Vec<&str> = key.split(',').collect();
    if parts.len() != d {
        return Err(bad());
    }
    parts
        .iter()
        .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
        .collect()
}

fn parse_poly(v: &Value, d: usize, pointer: &str) -> Result<Poly> {
    let obj = as_object(v, pointer)?;
    let mut terms = Vec::new();
    for (key, coef) in obj {
        let kp = format!("{pointer}/{key}");
        let e = parse_exponent(key, d, &kp)?;
        let c = parse_rat(as_str(coef, &kp)?, &kp)?;
        terms.push((e, c));
    }
    Ok(Poly::from_terms(d, terms))
}

fn parse_vertex(v: &Value, d: usize, pointer: &str) -> Result<Vec<Int>> {
    let arr = as_array(v, pointer)?;
    if arr.len() != d {
        return Err(schema_err(pointer, "vertex length must equal d"));
    }
    let mut out = Vec::with_capacity(d);
    for (j, x) in arr.iter().enumerate() {
        let n = as_u64(x, &format!("{pointer}/{j}"))?;
        out.push(Int::from(n));
    }
    Ok(out)
}

fn parse_dim(obj: &Map<String, Value>, pointer: &str) -> Result<usize> {
    let d = as_u64(field(obj, "d", pointer)?, &format!("{pointer}/d"))? as usize;
    if d == 0 {
        return Err(schema_err(&format!("{pointer}/d"), "d must be at least 1"));
    }
    Ok(d)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| schema_err("", &format!("invalid JSON: {e}")))?;
    let obj = as_object(&root, "")?;
    let version = as_str(field(obj, "schema_version", "")?, "/schema_version")?;
    if version != "1" {
        return Err(schema_err("/schema_version", "unsupported schema version"));
    }
    let kind = as_str(field(obj, "type", "")?, "/type")?;
    match kind {
        "toric" => {
            let d = parse_dim(obj, "")?;
            let verts = as_array(field(obj, "polytope", "")?, "/polytope")?;
            if verts.is_empty() {
                return Err(schema_err("/polytope", "polytope needs at least one vertex"));
            }
            let polytope = verts
                .iter()
                .enumerate()
                .map(|(i, v)| parse_vertex(v, d, &format!("/polytope/{i}")))
                .collect::<Result<Vec<_>>>()?;
            Ok(Document::Series(GradedLinearSeries::toric(d, polytope)))
        }
        "generated" => {
            let d = parse_dim(obj, "")?;
            let gens = as_array(field(obj, "generators", "")?, "/generators")?;
            if gens.is_empty() {
                return Err(schema_err("/generators", "need at least one generator"));
            }
            let mut generators = Vec::new();
            for (i, g) in gens.iter().enumerate() {
                let gp = format!("/generators/{i}");
                let gobj = as_object(g, &gp)?;
                let deg = as_u64(field(gobj, "degree", &gp)?, &format!("{gp}/degree"))?;
                if deg == 0 {
                    return Err(schema_err(
                        &format!("{gp}/degree"),
                        "generator degrees must be positive",
                    ));
                }
                let poly = parse_poly(field(gobj, "poly", &gp)?, d, &format!("{gp}/poly"))?;
                if poly.is_zero() {
                    return Err(schema_err(&format!("{gp}/poly"), "zero generator"));
                }
                generators.push((deg, poly));
            }
            Ok(Document::Series(GradedLinearSeries::generated(
                d, generators,
            )))
        }
        "explicit" => {
            let d = parse_dim(obj, "")?;
            let trunc = as_u64(field(obj, "truncation", "")?, "/truncation")?;
            let bases_obj = as_object(field(obj, "bases", "")?, "/bases")?;
            let mut bases: BTreeMap<u64, Vec<Poly>> = BTreeMap::new();
            for (key, list) in bases_obj {
                let bp = format!("/bases/{key}");
                let deg: u64 = key
                    .parse()
                    .map_err(|_| schema_err(&bp, "degree keys must be positive integers"))?;
                if deg == 0 || deg > trunc {
                    return Err(schema_err(&bp, "degree key out of range 1..=truncation"));
                }
                let arr = as_array(list, &bp)?;
                let mut basis = Vec::new();
                for (i, p) in arr.iter().enumerate() {
                    let poly = parse_poly(p, d, &format!("{bp}/{i}"))?;
                    if poly.is_zero() {
                        return Err(schema_err(&format!("{bp}/{i}"), "zero basis element"));
                    }
                    basis.push(poly);
                }
                if !basis.is_empty() {
                    bases.insert(deg, basis);
                }
            }
            Ok(Document::Series(GradedLinearSeries::explicit(
                d, trunc, bases,
            )))
        }
        "multicomponent" => {
            let dims_arr = as_array(field(obj, "component_dims", "")?, "/component_dims")?;
            if dims_arr.is_empty() {
                return Err(schema_err("/component_dims", "need at least one component"));
            }
            let mut dims = Vec::new();
            for (i, v) in dims_arr.iter().enumerate() {
                let d = as_u64(v, &format!("/component_dims/{i}"))? as usize;
                if d == 0 {
                    return Err(schema_err(
                        &format!("/component_dims/{i}"),
                        "component dimension must be at least 1",
                    ));
                }
                dims.push(d);
            }
            let s = dims.len();
            let trunc = as_u64(field(obj, "truncation", "")?, "/truncation")?;
            let bases_obj = as_object(field(obj, "bases", "")?, "/bases")?;
            let mut bases: BTreeMap<u64, Vec<Vec<Poly>>> = BTreeMap::new();
            for (key, list) in bases_obj {
                let bp = format!("/bases/{key}");
                let deg: u64 = key
                    .parse()
                    .map_err(|_| schema_err(&bp, "degree keys must be positive integers"))?;
                if deg == 0 || deg > trunc {
                    return Err(schema_err(&bp, "degree key out of range 1..=truncation"));
                }
                let arr = as_array(list, &bp)?;
                let mut elements = Vec::new();
                for (i, tuple) in arr.iter().enumerate() {
                    let tp = format!("{bp}/{i}");
                    let tarr = as_array(tuple, &tp)?;
                    if tarr.len() != s {
                        return Err(schema_err(&tp, "tuple arity must match component_dims"));
                    }
                    let mut element = Vec::new();
                    for (j, p) in tarr.iter().enumerate() {
                        element.push(parse_poly(p, dims[j], &format!("{tp}/{j}"))?);
                    }
                    elements.push(element);
                }
                if !elements.is_empty() {
                    bases.insert(deg, elements);
                }
            }
            Ok(Document::Multi(MultiComponentSeries::new(
                dims, trunc, bases,
            )))
        }
        other => Err(schema_err(
            "/type",
            &format!("unknown type {other:?}; expected toric, generated, explicit, or multicomponent"),
        )),
    }
}

fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering to 12 significant digits, for readability only.
fn approx_str(r: &Rat) -> String {
    let v = r.to_f64().unwrap_or(f64::NAN);
    format!("{v:.11e}")
}

fn poly_value(p: &Poly) -> Value {
    let mut m = Map::new();
    for (e, c) in p.terms() {
        let key = e
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",");
        m.insert(key, Value::String(rat_str(c)));
    }
    Value::Object(m)
}

/// Canonical JSON rendering of a document; `parse_document` of the
/// result reproduces the document exactly.
pub fn emit_document(doc: &Document) -> String {
    let value = match doc {
        Document::Series(GradedLinearSeries::Toric { d, polytope }) => json!({
            "schema_version": "1",
            "type": "toric",
            "d": d,
            "polytope": polytope
                .iter()
                .map(|v| v.iter().map(|x| json!(x.to_u64().unwrap())).collect())
                .collect::<Vec<Vec<Value>>>(),
        }),
        Document::Series(GradedLinearSeries::Generated { d, generators }) => json!({
            "schema_version": "1",
            "type": "generated",
            "d": d,
            "generators": generators
                .iter()
                .map(|(deg, p)| json!({"degree": deg, "poly": poly_value(p)}))
                .collect::<Vec<Value>>(),
        }),
        Document::Series(GradedLinearSeries::Explicit {
            d,
            max_degree,
            bases,
        }) => json!({
            "schema_version": "1",
            "type": "explicit",
            "d": d,
            "truncation": max_degree,
            "bases": bases
                .iter()
                .map(|(deg, basis)| {
                    (
                        deg.to_string(),
                        Value::Array(basis.iter().map(poly_value).collect()),
                    )
                })
                .collect::<Map<String, Value>>(),
        }),
        Document::Multi(m) => json!({
            "schema_version": "1",
            "type": "multicomponent",
            "component_dims": m.component_dims(),
            "truncation": m.truncation(),
            "bases": m
                .bases()
                .iter()
                .map(|(deg, elements)| {
                    (
                        deg.to_string(),
                        Value::Array(
                            elements
                                .iter()
                                .map(|e| Value::Array(e.iter().map(poly_value).collect()))
                                .collect(),
                        ),
                    )
                })
                .collect::<Map<String, Value>>(),
        }),
    };
    serde_json::to_string_pretty(&value).expect("serialization cannot fail")
}

fn series_of(doc: &Document) -> Result<&GradedLinearSeries> {
    match doc {
        Document::Series(l) => Ok(l),
        Document::Multi(_) => Err(schema_err(
            "/type",
            "this command needs a single-component series document",
        )),
    }
}

fn ratio_fields(row: &mut Map<String, Value>, name: &str, r: &Rat) {
    row.insert(name.to_string(), Value::String(rat_str(r)));
    row.insert(format!("{name}_approx"), Value::String(approx_str(r)));
}

fn render(value: &Value, format: Format, csv: impl FnOnce(&Value) -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serialization cannot fail"),
        Format::Csv => csv(value),
    }
}

fn csv_of_rows(value: &Value, path: &str, columns: &[&str]) -> String {
    let rows = value.pointer(path).and_then(Value::as_array);
    let mut out = columns.join(",") + "\n";
    if let Some(rows) = rows {
        for row in rows {
            let cells: Vec<String> = columns
                .iter()
                .map(|c| match row.get(*c) {
                    Some(Value::String(s)) => s.clone(),
                    Some(Value::Null) | None => String::new(),
                    Some(v) => v.to_string(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
    }
    out
}

pub fn run(command: &str, doc: &Document, flags: &Flags) -> Result<String> {
    match command {
        "analyze" => run_analyze(series_of(doc)?, flags),
        "body" => run_body(series_of(doc)?, flags),
        "limit" => run_limit(series_of(doc)?, flags),
        "degree" => run_degree(series_of(doc)?, flags),
        "sumset" => run_sumset(series_of(doc)?, flags),
        "decompose" => match doc {
            Document::Multi(m) => run_decompose(m, flags),
            Document::Series(_) => Err(schema_err(
                "/type",
                "decompose needs a multicomponent document",
            )),
        },
        other => Err(schema_err(
            "",
            &format!(
                "unknown command {other:?}; expected analyze, body, limit, degree, sumset, or decompose"
            ),
        )),
    }
}

fn run_analyze(l: &GradedLinearSeries, flags: &Flags) -> Result<String> {
    let top = l.effective_truncation(flags.max_degree.unwrap_or(8));
    let kap = l.kappa(top)?;
    let m = match l.index(top) {
        Ok(m) => Some(m),
        Err(Error::AllZero) => None,
        Err(e) => return Err(e),
    };
    let bases = l.bases_up_to(top)?;
    let dims: Vec<Value> = bases
        .iter()
        .enumerate()
        .map(|(n, b)| json!({"n": n, "dim": b.len()}))
        .collect();
    let slice_sizes: Value = if m.is_some() {
        let s = l.value_semigroup(top)?;
        let sizes: Result<Vec<Value>> = (0..=top)
            .map(|k| Ok(json!({"level": k, "count": s.slice(k)?.len()})))
            .collect();
        Value::Array(sizes?)
    } else {
        Value::Array(Vec::new())
    };
    let value = json!({
        "command": "analyze",
        "kappa": kap.kappa.map_or_else(|| json!("-inf"), |k| json!(k)),
        "kappa_exact": kap.exact,
        "kappa_stabilized_at": kap.stabilized_at,
        "m": m,
        "dims": dims,
        "slice_sizes": slice_sizes,
    });
    Ok(render(&value, flags.format, |v| {
        csv_of_rows(v, "/dims", &["n", "dim"])
    }))
}

fn run_body(l: &GradedLinearSeries, flags: &Flags) -> Result<String> {
    let top = l.effective_truncation(flags.max_degree.unwrap_or(8));
    let s = l.value_semigroup(top)?;
    let body = nok_body(&s)?;
    let volume = crate::hull::normalized_volume(&body, &s.boundary_lattice_horizontal()?)?;
    let bl = body_limit(&s)?;
    let vertices: Vec<Value> = body
        .vertices
        .iter()
        .map(|v| Value::Array(v.iter().map(|x| Value::String(rat_str(x))).collect()))
        .collect();
    let mut root = Map::new();
    root.insert("command".into(), json!("body"));
    root.insert("q".into(), json!(s.q()?));
    root.insert("m".into(), json!(s.level_index()?));
    root.insert("ind".into(), Value::String(s.ind()?.to_string()));
    root.insert("volume".into(), Value::String(rat_str(&volume)));
    ratio_fields(&mut root, "body_limit", &bl);
    root.insert("vertices".into(), Value::Array(vertices));
    let value = Value::Object(root);
    Ok(render(&value, flags.format, |v| {
        let mut out = String::from("key,value\n");
        for key in ["q", "m", "ind", "volume", "body_limit"] {
            let cell = match v.get(key) {
                Some(Value::String(s)) => s.clone(),
                Some(x) => x.to_string(),
                None => String::new(),
            };
            out.push_str(&format!("{key},{cell}\n"));
        }
        out
    }))
}

fn run_limit(l: &GradedLinearSeries, flags: &Flags) -> Result<String> {
    let rep = volume_limit_report(l, flags.max_degree.unwrap_or(20))?;
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| {
            let mut row = Map::new();
            row.insert("n".into(), json!(r.n));
            row.insert("dim".into(), json!(r.dim));
            ratio_fields(&mut row, "ratio", &r.ratio);
            Value::Object(row)
        })
        .collect();
    let within_tolerance = match (&flags.tolerance, &rep.convergence.last_delta) {
        (Some(tol), Some(delta)) => json!(delta <= tol),
        _ => Value::Null,
    };
    let value = json!({
        "command": "limit",
        "kappa": rep.kappa,
        "kappa_exact": rep.kappa_exact,
        "m": rep.m,
        "predicted": rep.predicted.as_ref().map(rat_str),
        "predicted_approx": rep.predicted.as_ref().map(approx_str),
        "rows": rows,
        "convergence": {
            "last_delta": rep.convergence.last_delta.as_ref().map(rat_str),
            "deltas_nonincreasing": rep.convergence.deltas_nonincreasing,
            "within_tolerance": within_tolerance,
        },
    });
    Ok(render(&value, flags.format, |v| {
        csv_of_rows(v, "/rows", &["n", "dim", "ratio", "ratio_approx"])
    }))
}

fn run_degree(l: &GradedLinearSeries, flags: &Flags) -> Result<String> {
    let rep = degree_limit_report(l, &flags.p)?;
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| {
            let mut row = Map::new();
            row.insert("p".into(), json!(r.p));
            row.insert("degree".into(), Value::String(r.degree.to_string()));
            ratio_fields(&mut row, "ratio", &r.ratio);
            Value::Object(row)
        })
        .collect();
    let value = json!({
        "command": "degree",
        "kappa": rep.kappa,
        "m": rep.m,
        "volume_prediction": rep.volume_prediction.as_ref().map(rat_str),
        "rows": rows,
        "ratios_nondecreasing": rep.ratios_nondecreasing,
        "ratios_below_prediction": rep.ratios_below_prediction,
    });
    Ok(render(&value, flags.format, |v| {
        csv_of_rows(v, "/rows", &["p", "degree", "ratio", "ratio_approx"])
    }))
}

fn run_sumset(l: &GradedLinearSeries, flags: &Flags) -> Result<String> {
    let n_max = flags.max_degree.unwrap_or(10);
    let p = flags.p.first().copied().unwrap_or(1);
    let s = l.value_semigroup(n_max.max(1))?;
    let rep = sumset_report(&s, p, n_max)?;
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| {
            let mut row = Map::new();
            row.insert("n".into(), json!(r.n));
            row.insert("sumset_count".into(), json!(r.sumset_count));
            ratio_fields(&mut row, "ratio", &r.ratio);
            row.insert("slice_count".into(), json!(r.slice_count));
            Value::Object(row)
        })
        .collect();
    let mut root = Map::new();
    root.insert("command".into(), json!("sumset"));
    root.insert("p".into(), json!(rep.p));
    root.insert("m".into(), json!(rep.m));
    root.insert("q".into(), json!(rep.q));
    ratio_fields(&mut root, "body_limit", &rep.body_limit);
    root.insert(
        "final_gap".into(),
        rep.final_gap
            .as_ref()
            .map_or(Value::Null, |g| Value::String(rat_str(g))),
    );
    root.insert("sandwich_ok".into(), json!(rep.sandwich_ok));
    root.insert("rows".into(), Value::Array(rows));
    let value = Value::Object(root);
    Ok(render(&value, flags.format, |v| {
        csv_of_rows(
            v,
            "/rows",
            &["n", "sumset_count", "ratio", "ratio_approx", "slice_count"],
        )
    }))
}

fn run_decompose(m: &MultiComponentSeries, flags: &Flags) -> Result<String> {
    let n_max = flags.max_degree.unwrap_or(m.truncation());
    let rep = decompose_reduced(m, n_max, flags.ordering.as_deref())?;
    let components: Vec<Value> = rep
        .components
        .iter()
        .map(|c| {
            json!({
                "index": c.index,
                "m": c.m,
                "kappa": c.kappa.map_or_else(|| json!("-inf"), |k| json!(k)),
                "kappa_stabilized_at": c.kappa_stabilized_at,
                "dims": c.dims,
            })
        })
        .collect();
    let mut flat_rows: Vec<Value> = Vec::new();
    let residue_tables: Vec<Value> = rep
        .residue_tables
        .iter()
        .map(|t| {
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|r| {
                    let mut row = Map::new();
                    row.insert("residue".into(), json!(t.residue));
                    row.insert("n".into(), json!(r.n));
                    row.insert("dim".into(), json!(r.dim));
                    ratio_fields(&mut row, "ratio", &r.ratio);
                    let v = Value::Object(row);
                    flat_rows.push(v.clone());
                    v
                })
                .collect();
            json!({"residue": t.residue, "rows": rows})
        })
        .collect();
    let value = json!({
        "command": "decompose",
        "kappa": rep.kappa,
        "r": rep.r,
        "additivity_ok": rep.additivity_ok,
        "components": components,
        "total_dims": rep.total_dims,
        "residue_tables": residue_tables,
        "rows": flat_rows,
    });
    Ok(render(&value, flags.format, |v| {
        csv_of_rows(v, "/rows", &["residue", "n", "dim", "ratio", "ratio_approx"])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIMPLEX: &str =
        r#"{"schema_version":"1","type":"toric","d":2,"polytope":[[0,0],[1,0],[0,1]]}"#;
    const INDEX_TWO: &str = r#"{"schema_version":"1","type":"generated","d":1,
        "generators":[{"degree":2,"poly":{"0":"1"}},{"degree":2,"poly":{"1":"1"}},
                      {"degree":2,"poly":{"2":"1"}}]}"#;

    #[test]
    fn parse_toric_simplex() {
        let doc = parse_document(SIMPLEX).unwrap();
        match doc {
            Document::Series(GradedLinearSeries::Toric { d, polytope }) => {
                assert_eq!(d, 2);
                assert_eq!(polytope.len(), 3);
            }
            _ => panic!("wrong document kind"),
        }
    }

    #[test]
    fn parse_rejects_decimal_coefficient() {
        let text = r#"{"schema_version":"1","type":"generated","d":1,
            "generators":[{"degree":1,"poly":{"0":"1.5"}}]}"#;
        let err = parse_document(text).unwrap_err();
        assert!(matches!(err, Error::BadRational { .. }));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn parse_rejects_wrong_exponent_arity() {
        let text = r#"{"schema_version":"1","type":"generated","d":2,
            "generators":[{"degree":1,"poly":{"0":"1"}}]}"#;
        match parse_document(text).unwrap_err() {
            Error::BadExponent { expected, .. } => assert_eq!(expected, 2),
            e => panic!("wrong error {e:?}"),
        }
    }

    #[test]
    fn parse_rejects_missing_version() {
        let err = parse_document(r#"{"type":"toric","d":1,"polytope":[[0]]}"#).unwrap_err();
        assert!(matches!(err, Error::SchemaError { .. }));
    }

    #[test]
    fn round_trip_all_document_kinds() {
        let multi = r#"{"schema_version":"1","type":"multicomponent","component_dims":[1,1],
            "truncation":2,"bases":{"1":[[{"1":"1"},{"0":"1"}],[{"0":"1"},{"0":"-1/2"}]]}}"#;
        let explicit = r#"{"schema_version":"1","type":"explicit","d":2,"truncation":3,
            "bases":{"1":[{"0,0":"1"},{"1,0":"2/3"}],"2":[{"1,1":"1"}]}}"#;
        for text in [SIMPLEX, INDEX_TWO, multi, explicit] {
            let doc = parse_document(text).unwrap();
            let emitted = emit_document(&doc);
            assert_eq!(parse_document(&emitted).unwrap(), doc);
        }
    }

    #[test]
    fn output_is_byte_deterministic() {
        let doc = parse_document(SIMPLEX).unwrap();
        let flags = Flags {
            max_degree: Some(10),
            ..Flags::default()
        };
        let a = run("limit", &doc, &flags).unwrap();
        let b = run("limit", &doc, &flags).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn limit_simplex_final_row() {
        let doc = parse_document(SIMPLEX).unwrap();
        let flags = Flags {
            max_degree: Some(60),
            ..Flags::default()
        };
        let out = run("limit", &doc, &flags).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["predicted"], "1/2");
        let rows = v["rows"].as_array().unwrap();
        let last = rows.last().unwrap();
        assert_eq!(last["n"], 60);
        assert_eq!(last["dim"], 1891);
        // (61 * 62 / 2) / 60^2
        assert_eq!(last["ratio"], "1891/3600");
    }

    #[test]
    fn body_index_two_document() {
        let doc = parse_document(
            r#"{"schema_version":"1","type":"generated","d":1,
                "generators":[{"degree":1,"poly":{"0":"1"}},{"degree":1,"poly":{"2":"1"}}]}"#,
        )
        .unwrap();
        let out = run("body", &doc, &Flags::default()).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["volume"], "2");
        assert_eq!(v["ind"], "2");
        assert_eq!(v["body_limit"], "1");
    }

    #[test]
    fn analyze_all_zero_explicit_kappa_neg_inf() {
        let doc = parse_document(
            r#"{"schema_version":"1","type":"explicit","d":1,"truncation":5,"bases":{}}"#,
        )
        .unwrap();
        let out = run("analyze", &doc, &Flags::default()).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["kappa"], "-inf");
        assert_eq!(v["m"], Value::Null);
    }

    #[test]
    fn csv_limit_projection() {
        let doc = parse_document(SIMPLEX).unwrap();
        let flags = Flags {
            max_degree: Some(3),
            format: Format::Csv,
            ..Flags::default()
        };
        let out = run("limit", &doc, &flags).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "n,dim,ratio,ratio_approx");
        assert!(lines[1].starts_with("1,3,3,"));
        assert!(lines[2].starts_with("2,6,3/2,"));
    }

    #[test]
    fn decompose_command_on_multicomponent_document() {
        let text = r#"{"schema_version":"1","type":"multicomponent","component_dims":[1,1],
            "truncation":10,"bases":{
              "1":[[{"0":"1"},{"0":"1"}]],
              "2":[[{"0":"1"},{"0":"1"}],[{"1":"1"},{"0":"0"}],[{"0":"0"},{"1":"1"}],[{"0":"0"},{"2":"1"}]]
            }}"#;
        let doc = parse_document(text).unwrap();
        let out = run("decompose", &doc, &Flags::default()).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["additivity_ok"], true);
    }

    #[test]
    fn wrong_document_kind_is_validation_error() {
        let doc = parse_document(SIMPLEX).unwrap();
        let err = run("decompose", &doc, &Flags::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn unknown_command_rejected() {
        let doc = parse_document(SIMPLEX).unwrap();
        assert!(run("frobnicate", &doc, &Flags::default()).is_err());
    }
}
