//! Report documents. Keys are sorted and nothing depends on time or
//! environment, so identical inputs give byte-identical output.

use hopfkit::factorization::{FactorizationVerdict, ReconstructionCertificate, SearchReport};
use hopfkit::hopf::{AxiomReport, SubHopf};
use hopfkit::invariants::{ClassificationReport, IntegralResult, Profile};
use hopfkit::linalg::Matrix;
use hopfkit::Scalar;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(name: &str, text: &str) -> InputDigest {
        InputDigest {
            name: name.to_string(),
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
        }
    }
}

pub fn envelope(command: &str, inputs: &[InputDigest], verdict: &str, result: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "inputs": inputs.iter().map(|i| json!({"name": i.name, "sha256": i.sha256})).collect::<Vec<_>>(),
        "verdict": verdict,
        "result": result,
    })
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

pub fn scalars(v: &[Scalar]) -> Value {
    Value::from(v.iter().map(|s| s.to_string()).collect::<Vec<_>>())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::from((0..m.rows()).map(|i| scalars(m.row(i))).collect::<Vec<_>>())
}

/// Linear combination of basis names, e.g. "x + gx" or "2*g - 1/2*x".
pub fn expression(names: &[String], v: &[Scalar]) -> String {
    let mut out = String::new();
    for (name, c) in names.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let text = c.as_rational().map_or_else(|| c.to_string(), |q| q.to_string());
        let (neg, mag) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text.clone()),
        };
        let coeff = if mag == "1" { String::new() } else { format!("{mag}*") };
        if out.is_empty() {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&coeff);
        out.push_str(name);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn axioms(r: &AxiomReport) -> Value {
    Value::from(
        r.checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                    "failing_inputs": c.failing_inputs,
                })
            })
            .collect::<Vec<_>>(),
    )
}

pub fn integral(names: &[String], r: &IntegralResult) -> Value {
    json!({
        "side": r.side.to_string(),
        "dim": r.dim,
        "basis": r.basis.iter().map(|v| scalars(v)).collect::<Vec<_>>(),
        "expressions": r.basis.iter().map(|v| expression(names, v)).collect::<Vec<_>>(),
        "one_dimensional": r.dim == 1,
    })
}

pub fn subspace(s: &SubHopf) -> Value {
    let names = s.parent().basis();
    json!({
        "dim": s.dim(),
        "basis": s.basis().columns().iter().map(|v| expression(names, v)).collect::<Vec<_>>(),
        "sub_hopf": s.is_sub_hopf(),
    })
}

pub fn factorization(v: &FactorizationVerdict) -> Value {
    json!({
        "passed": v.passed(),
        "dimension_test": v.dimension_test,
        "dimension_route": v.dimension_route(),
        "nodes": v.nodes.iter().map(|n| json!({
            "bracket": n.bracket,
            "left_dim": n.left_dim,
            "right_dim": n.right_dim,
            "product_dim": n.product_dim,
            "sub_hopf": n.sub_hopf,
            "bijective": n.bijective,
        })).collect::<Vec<_>>(),
    })
}

pub fn certificate(c: &ReconstructionCertificate) -> Value {
    json!({
        "nodes": c.nodes.iter().map(|n| json!({
            "bracket": n.bracket,
            "alpha": matrix(&n.alpha),
            "beta": matrix(&n.beta),
        })).collect::<Vec<_>>(),
        "rebuilt_basis": c.rebuilt.basis(),
        "isomorphism": matrix(&c.isomorphism),
    })
}

pub fn search(names: &[String], r: &SearchReport) -> Value {
    json!({
        "verdict": r.verdict.to_string(),
        "grouplikes": r.grouplikes.iter().map(|g| expression(names, g)).collect::<Vec<_>>(),
        "grouplikes_complete": r.grouplikes_complete,
        "lattice_complete": r.lattice_complete,
        "lattice": r.lattice.iter().map(subspace).collect::<Vec<_>>(),
        "factorizations": r.factorizations.iter().map(|(a, b)| json!({
            "left": subspace(&r.lattice[*a]),
            "right": subspace(&r.lattice[*b]),
        })).collect::<Vec<_>>(),
    })
}

fn profile(p: &Profile) -> Value {
    json!({
        "dim": p.dim,
        "semisimple": p.semisimple,
        "cosemisimple": p.cosemisimple,
        "involutory": p.involutory,
        "trace_S2": p.trace_s2.to_string(),
    })
}

pub fn classification(r: &ClassificationReport) -> Value {
    json!({
        "field": r.field.to_string(),
        "dim": r.dim,
        "semisimple": r.semisimple,
        "cosemisimple": r.cosemisimple,
        "involutory": r.involutory,
        "trace_S2": r.trace_s2.to_string(),
        "unimodular": r.unimodular,
        "char_regime": r.char_regime.to_string(),
        "integral_dims": {"left": r.left_integral_dim, "right": r.right_integral_dim},
        "radford": {
            "lhs": r.radford.lhs.to_string(),
            "rhs": r.radford.rhs.to_string(),
            "normalized": r.radford.normalized,
            "holds": r.radford.holds(),
        },
        "trace_form_nondegenerate": r.trace_form,
        "factors": r.factors.iter().map(profile).collect::<Vec<_>>(),
        "consistency": r.consistency.iter().map(|c| json!({
            "name": c.name,
            "status": c.status.to_string(),
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hopfkit::Field;

    #[test]
    fn expressions() {
        let f = Field::Rationals;
        let names: Vec<String> = ["1", "x", "g", "gx"].iter().map(|s| s.to_string()).collect();
        let v = |xs: &[i64]| xs.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        assert_eq!(expression(&names, &v(&[0, 1, 0, 1])), "x + gx");
        assert_eq!(expression(&names, &v(&[0, 1, 0, -1])), "x - gx");
        assert_eq!(expression(&names, &v(&[-2, 0, 3, 0])), "-2*1 + 3*g");
        assert_eq!(expression(&names, &v(&[0, 0, 0, 0])), "0");
    }

    #[test]
    fn digest_is_sha256() {
        let d = InputDigest::new("a", "abc");
        assert_eq!(d.sha256, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
