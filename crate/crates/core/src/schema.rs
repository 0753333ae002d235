//! A small JSON Schema checker.
//!
//! Supports the keywords used by the shipped schemas: `type`, `properties`,
//! `required`, `additionalProperties`, `items`, `enum`, `const`, `minimum`,
//! `maximum`, `minItems` and `anyOf`. Unknown keywords are ignored.

use serde_json::Value;

fn type_matches(t: &str, v: &Value) -> bool {
    match t {
        "null" => v.is_null(),
        "boolean" => v.is_boolean(),
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "number" => v.is_number(),
        "integer" => v.as_i64().is_some() || v.as_u64().is_some(),
        _ => false,
    }
}

/// Checks `v` against `schema`, returning one message per violation.
pub fn validate(schema: &Value, v: &Value) -> Vec<String> {
    let mut errors = Vec::new();
    check(schema, v, "$", &mut errors);
    errors
}

fn check(schema: &Value, v: &Value, at: &str, errors: &mut Vec<String>) {
    let Some(s) = schema.as_object() else {
        return;
    };
    if let Some(t) = s.get("type") {
        let ok = match t {
            Value::String(t) => type_matches(t, v),
            Value::Array(ts) => ts.iter().filter_map(Value::as_str).any(|t| type_matches(t, v)),
            _ => true,
        };
        if !ok {
            errors.push(format!("{at}: expected type {t}, got {v}"));
            return;
        }
    }
    if let Some(c) = s.get("const") {
        if c != v {
            errors.push(format!("{at}: expected {c}, got {v}"));
        }
    }
    if let Some(Value::Array(options)) = s.get("enum") {
        if !options.contains(v) {
            errors.push(format!("{at}: {v} not in {}", Value::Array(options.clone())));
        }
    }
    if let Some(x) = v.as_f64() {
        if let Some(min) = s.get("minimum").and_then(Value::as_f64) {
            if x < min {
                errors.push(format!("{at}: {x} < minimum {min}"));
            }
        }
        if let Some(max) = s.get("maximum").and_then(Value::as_f64) {
            if x > max {
                errors.push(format!("{at}: {x} > maximum {max}"));
            }
        }
    }
    if let Some(Value::Array(options)) = s.get("anyOf") {
        if !options.iter().any(|o| validate(o, v).is_empty()) {
            errors.push(format!("{at}: matches no alternative"));
        }
    }
    if let Value::Object(obj) = v {
        if let Some(Value::Array(req)) = s.get("required") {
            for k in req.iter().filter_map(Value::as_str) {
                if !obj.contains_key(k) {
                    errors.push(format!("{at}: missing property {k:?}"));
                }
            }
        }
        let props = s.get("properties").and_then(Value::as_object);
        for (k, x) in obj {
            let path = format!("{at}.{k}");
            match (props.and_then(|p| p.get(k)), s.get("additionalProperties")) {
                (Some(sub), _) => check(sub, x, &path, errors),
                (None, Some(Value::Bool(false))) => errors.push(format!("{at}: unexpected property {k:?}")),
                (None, Some(sub @ Value::Object(_))) => check(sub, x, &path, errors),
                (None, _) => {}
            }
        }
    }
    if let Value::Array(items) = v {
        if let Some(min) = s.get("minItems").and_then(Value::as_u64) {
            if (items.len() as u64) < min {
                errors.push(format!("{at}: fewer than {min} items"));
            }
        }
        if let Some(sub) = s.get("items") {
            for (i, x) in items.iter().enumerate() {
                check(sub, x, &format!("{at}[{i}]"), errors);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keywords() {
        let s = json!({
            "type": "object",
            "required": ["n", "tag"],
            "additionalProperties": false,
            "properties": {
                "n": {"type": "integer", "minimum": 0},
                "tag": {"enum": ["a", "b"]},
                "xs": {"type": "array", "items": {"type": ["number", "null"]}, "minItems": 1}
            }
        });
        assert!(validate(&s, &json!({"n": 3, "tag": "a", "xs": [1.5, null]})).is_empty());
        assert_eq!(validate(&s, &json!({"n": -1, "tag": "c"})).len(), 2);
        assert_eq!(validate(&s, &json!({"tag": "a"})).len(), 1);
        assert_eq!(validate(&s, &json!({"n": 1, "tag": "a", "z": 0})).len(), 1);
        assert_eq!(validate(&s, &json!({"n": 1, "tag": "a", "xs": []})).len(), 1);
        assert_eq!(validate(&s, &json!({"n": 1.5, "tag": "a"})).len(), 1);
        let any = json!({"anyOf": [{"type": "string"}, {"const": 4}]});
        assert!(validate(&any, &json!(4)).is_empty());
        assert!(!validate(&any, &json!(5)).is_empty());
    }
}
