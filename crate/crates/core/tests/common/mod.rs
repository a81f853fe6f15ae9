//! Independent reference implementations used as test oracles. Nothing here
//! calls into the verifier or search code under test.
#![allow(dead_code)]

use itertools::Itertools;
use liking::Digraph;
use rand::Rng;
use serde_json::Value;

pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, density: f64) -> Digraph {
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .filter(|_| rng.gen_bool(density))
        .collect();
    Digraph::new(n, &arcs).unwrap()
}

/// Every digraph on `n` labeled vertices, by arc bitmask.
pub fn all_digraphs(n: usize) -> impl Iterator<Item = Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let arcs: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a)
            .collect();
        Digraph::new(n, &arcs).unwrap()
    })
}

/// `(subset, is_in_direction, observed)` for every violating `t`-subset, in
/// lexicographic subset order with out before in.
pub fn naive_violations(d: &Digraph, t: usize, lambda: usize, two_way: bool) -> Vec<(Vec<usize>, bool, usize)> {
    let n = d.order();
    let mut out = Vec::new();
    for s in (0..n).combinations(t) {
        let common_out = (0..n).filter(|&w| s.iter().all(|&u| d.has_arc(u, w))).count();
        if common_out != lambda {
            out.push((s.clone(), false, common_out));
        }
        if two_way {
            let common_in = (0..n).filter(|&w| s.iter().all(|&u| d.has_arc(w, u))).count();
            if common_in != lambda {
                out.push((s, true, common_in));
            }
        }
    }
    out
}

pub fn naive_holds(d: &Digraph, t: usize, lambda: usize, two_way: bool) -> bool {
    naive_violations(d, t, lambda, two_way).is_empty()
}

/// Sorted row encodings of every labeled digraph on `n` vertices passing the
/// naive check.
pub fn brute_force_liking(n: usize, t: usize, lambda: usize, two_way: bool) -> Vec<Vec<u64>> {
    let mut found: Vec<Vec<u64>> = all_digraphs(n)
        .filter(|d| naive_holds(d, t, lambda, two_way))
        .map(|d| rows(&d))
        .collect();
    found.sort();
    found
}

pub fn rows(d: &Digraph) -> Vec<u64> {
    (0..d.order())
        .map(|u| (0..d.order()).filter(|&v| d.has_arc(u, v)).map(|v| 1u64 << v).sum())
        .collect()
}

/// `(b, v, r, k, λ)` by recounting every block size, variety replication and
/// pair occurrence, or `None` if any of them is not constant or is zero.
pub fn naive_design_params(v: usize, blocks: &[Vec<usize>]) -> Option<(usize, usize, usize, usize, usize)> {
    let b = blocks.len();
    let sizes: Vec<usize> = blocks.iter().map(|blk| blk.iter().unique().count()).collect();
    let reps: Vec<usize> = (0..v).map(|x| blocks.iter().filter(|blk| blk.contains(&x)).count()).collect();
    let mut pairs = Vec::new();
    for x in 0..v {
        for y in x + 1..v {
            pairs.push(blocks.iter().filter(|blk| blk.contains(&x) && blk.contains(&y)).count());
        }
    }
    let k = *sizes.first()?;
    let r = *reps.first()?;
    let lambda = *pairs.first()?;
    let constant = sizes.iter().all(|&s| s == k) && reps.iter().all(|&s| s == r) && pairs.iter().all(|&s| s == lambda);
    (constant && k > 0 && r > 0 && lambda > 0).then_some((b, v, r, k, lambda))
}

/// Adjacency code of `d` read in `order`: position `i` holds vertex
/// `order[i]`, bits `(j,k)` then `(k,j)` for `k = 1..n`, `j < k`.
pub fn code_under(d: &Digraph, order: &[usize]) -> u64 {
    let mut code = 0u64;
    for k in 1..order.len() {
        for j in 0..k {
            code = code << 1 | d.has_arc(order[j], order[k]) as u64;
            code = code << 1 | d.has_arc(order[k], order[j]) as u64;
        }
    }
    code
}

/// Minimum code over all `n!` orderings, no pruning.
pub fn min_code_all_permutations(d: &Digraph) -> u64 {
    (0..d.order())
        .permutations(d.order())
        .map(|p| code_under(d, &p))
        .min()
        .unwrap()
}

/// Report JSON schema shipped with the crate.
pub fn report_schema() -> Value {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report-schema.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Validates `value` against the subset of JSON Schema the report schema
/// uses: `type`, `enum`, `required`, `properties`, `items` and local `$ref`.
pub fn schema_errors(root: &Value, schema: &Value, value: &Value, path: &str) -> Vec<String> {
    let mut errors = Vec::new();
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let target = r
            .trim_start_matches("#/")
            .split('/')
            .fold(root, |node, key| &node[key]);
        return schema_errors(root, target, value, path);
    }
    if let Some(ty) = schema.get("type") {
        let allowed: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => vec![],
        };
        let actual = match value {
            Value::Null => "null",
            Value::Bool(_) => "boolean",
            Value::Number(n) if n.is_u64() || n.is_i64() => "integer",
            Value::Number(_) => "number",
            Value::String(_) => "string",
            Value::Array(_) => "array",
            Value::Object(_) => "object",
        };
        let ok = allowed.iter().any(|&a| a == actual || (a == "number" && actual == "integer"));
        if !ok {
            errors.push(format!("{path}: expected {allowed:?}, found {actual}"));
            return errors;
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(value) {
            errors.push(format!("{path}: {value} not in {options:?}"));
        }
    }
    if let Some(obj) = value.as_object() {
        for key in schema.get("required").and_then(Value::as_array).into_iter().flatten() {
            let key = key.as_str().unwrap();
            if !obj.contains_key(key) {
                errors.push(format!("{path}: missing required key {key:?}"));
            }
        }
        if let Some(props) = schema.get("properties").and_then(Value::as_object) {
            for (key, sub) in props {
                if let Some(v) = obj.get(key) {
                    errors.extend(schema_errors(root, sub, v, &format!("{path}.{key}")));
                }
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            errors.extend(schema_errors(root, items, v, &format!("{path}[{i}]")));
        }
    }
    errors
}

/// Checks a whole report: the envelope, then the payload against the
/// schema for its command unless the verdict is `error`.
pub fn report_errors(report: &Value) -> Vec<String> {
    let schema = report_schema();
    let mut errors = schema_errors(&schema, &schema, report, "$");
    // error reports carry an empty payload
    if let (Some(cmd), false) = (report["command"].as_str(), report["verdict"] == "error") {
        let payload_schema = &schema["$defs"]["payloads"][cmd];
        if !payload_schema.is_null() {
            errors.extend(schema_errors(&schema, payload_schema, &report["payload"], "$.payload"));
        }
    }
    errors
}
