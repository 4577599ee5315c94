use fibtree_core::{FibTree, MapWord};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

/// Largest magnitude emitted as a JSON number; beyond it integers become strings.
const SAFE: i64 = 1 << 53;

pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if (-SAFE..=SAFE).contains(&v) => json!(v),
        _ => Value::String(x.to_string()),
    }
}

pub fn ints<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(xs.into_iter().map(int).collect())
}

pub fn pair(a: &BigInt, b: &BigInt) -> Value {
    json!([int(a), int(b)])
}

pub fn tree(t: &FibTree) -> Value {
    pair(&t.a, &t.b)
}

pub fn word(w: &MapWord) -> Value {
    Value::String(w.to_string())
}

pub fn object<const N: usize>(fields: [(&str, Value); N]) -> Value {
    let mut m = Map::new();
    for (k, v) in fields {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

/// The top-level envelope. Keys come out sorted since `Map` is ordered.
pub fn envelope(command: &str, result: Value) -> String {
    let doc = object([
        ("tool_version", json!(env!("CARGO_PKG_VERSION"))),
        ("command", json!(command)),
        ("result", result),
    ]);
    serde_json::to_string(&doc).expect("values serialize")
}
