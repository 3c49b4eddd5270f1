//! A small JSON-schema validator covering exactly the keywords the
//! report schema uses: type, enum, properties, required,
//! additionalProperties and items. The schema itself is embedded from
//! schemas/report.schema.json at the repository root.

use serde_json::Value;

pub const REPORT_SCHEMA_JSON: &str = include_str!("../../../schemas/report.schema.json");

/// The embedded report schema, parsed.
pub fn report_schema() -> Value {
    serde_json::from_str(REPORT_SCHEMA_JSON).expect("embedded schema parses")
}

/// Check a value against a schema, reporting the first violation with a
/// JSON-pointer style path.
pub fn validate(schema: &Value, value: &Value) -> Result<(), String> {
    validate_at(schema, value, "$")
}

fn type_name(value: &Value) -> &'static str {
    match value {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

fn matches_type(expected: &str, value: &Value) -> bool {
    match expected {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "boolean" => value.is_boolean(),
        "integer" => value.is_i64() || value.is_u64(),
        "number" => value.is_number(),
        "null" => value.is_null(),
        _ => false,
    }
}

fn validate_at(schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    let schema =
        schema.as_object().ok_or_else(|| format!("{path}: schema node is not an object"))?;

    if let Some(expected) = schema.get("type").and_then(Value::as_str) {
        if !matches_type(expected, value) {
            return Err(format!("{path}: expected {expected}, found {}", type_name(value)));
        }
    }

    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            return Err(format!("{path}: value {value} is not one of the allowed constants"));
        }
    }

    if let Some(obj) = value.as_object() {
        let properties = schema.get("properties").and_then(Value::as_object);
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required {
                let key = key.as_str().expect("required entries are strings");
                if !obj.contains_key(key) {
                    return Err(format!("{path}: missing required property \"{key}\""));
                }
            }
        }
        if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
            for key in obj.keys() {
                if properties.is_none_or(|p| !p.contains_key(key)) {
                    return Err(format!("{path}: unexpected property \"{key}\""));
                }
            }
        }
        if let Some(properties) = properties {
            for (key, subschema) in properties {
                if let Some(subvalue) = obj.get(key) {
                    validate_at(subschema, subvalue, &format!("{path}.{key}"))?;
                }
            }
        }
    }

    if let Some(items) = value.as_array() {
        if let Some(subschema) = schema.get("items") {
            for (i, item) in items.iter().enumerate() {
                validate_at(subschema, item, &format!("{path}[{i}]"))?;
            }
        }
    }

    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{build_report, render_json};
    use crate::subgroup::{StructureKind, SubgroupSpec};

    fn report_value(kind: StructureKind, n: u32) -> Value {
        let report = build_report(SubgroupSpec::new(kind, n).unwrap(), 60).unwrap();
        serde_json::from_str(&render_json(&report)).unwrap()
    }

    #[test]
    fn generated_reports_validate() {
        let schema = report_schema();
        for (kind, n) in [
            (StructureKind::Full, 2),
            (StructureKind::Full, 6),
            (StructureKind::Point, 4),
            (StructureKind::Point, 7),
            (StructureKind::Cyclic, 11),
            (StructureKind::Cyclic, 13),
            (StructureKind::Cyclic, 25),
        ] {
            let value = report_value(kind, n);
            validate(&schema, &value).unwrap_or_else(|e| panic!("{kind}({n}): {e}"));
        }
    }

    #[test]
    fn missing_required_property_is_caught() {
        let schema = report_schema();
        let mut value = report_value(StructureKind::Cyclic, 13);
        value.as_object_mut().unwrap().remove("level");
        let err = validate(&schema, &value).unwrap_err();
        assert!(err.contains("missing required property \"level\""), "{err}");
    }

    #[test]
    fn wrong_type_is_caught() {
        let schema = report_schema();
        let mut value = report_value(StructureKind::Cyclic, 13);
        value["level"] = Value::String("13".to_owned());
        let err = validate(&schema, &value).unwrap_err();
        assert!(err.contains("$.level"), "{err}");
    }

    #[test]
    fn unexpected_property_is_caught() {
        let schema = report_schema();
        let mut value = report_value(StructureKind::Point, 4);
        value.as_object_mut().unwrap().insert("extra".to_owned(), Value::Null);
        let err = validate(&schema, &value).unwrap_err();
        assert!(err.contains("unexpected property \"extra\""), "{err}");
    }

    #[test]
    fn enum_violation_is_caught() {
        let schema = report_schema();
        let mut value = report_value(StructureKind::Point, 4);
        value["structure"] = Value::String("gamma2".to_owned());
        let err = validate(&schema, &value).unwrap_err();
        assert!(err.contains("$.structure"), "{err}");
    }

    #[test]
    fn nested_paths_show_up_in_errors() {
        let schema = report_schema();
        let mut value = report_value(StructureKind::Cyclic, 13);
        value["singularities"][0]["location"]["kind"] = Value::String("edge".to_owned());
        let err = validate(&schema, &value).unwrap_err();
        assert!(err.contains("$.singularities[0].location.kind"), "{err}");
    }
}
