//! JSON report builders. Every integer is a decimal string; object keys
//! are emitted in sorted order.

use std::fmt::Display;

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::bounds::{EdReport, ExactValue};
use crate::census::CensusReport;
use crate::codes::{Ambient, CodeElement, WeightProfile};
use crate::lift::LiftWitness;
use crate::Matrix;

pub type Object = Map<String, Value>;

pub fn int(x: impl Display) -> Value {
    Value::String(x.to_string())
}

pub fn element(y: &CodeElement) -> Value {
    Value::Array(y.coords().iter().map(int).collect())
}

pub fn elements(ys: &[CodeElement]) -> Value {
    Value::Array(ys.iter().map(element).collect())
}

pub fn profile(w: &WeightProfile) -> Value {
    Value::Array(w.weights().iter().map(int).collect())
}

pub fn rational(q: &BigRational) -> Value {
    json!({ "num": int(q.numer()), "den": int(q.denom()) })
}

fn opt<T>(x: Option<T>, f: impl FnOnce(T) -> Value) -> Value {
    x.map_or(Value::Null, f)
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(int).collect()))
            .collect(),
    )
}

/// `command`, `p` and `exponents`, the fields every report starts from.
pub fn header(command: &str, ambient: &Ambient) -> Object {
    let mut o = Object::new();
    o.insert("command".into(), Value::String(command.into()));
    o.insert("p".into(), int(ambient.p()));
    o.insert(
        "exponents".into(),
        Value::Array(ambient.exponents().iter().map(int).collect()),
    );
    o
}

pub fn exact_value(e: &ExactValue) -> Value {
    match e {
        ExactValue::Value(v) => int(v),
        ExactValue::PglReduction {
            degrees,
            upper_bound,
        } => json!({
            "pgl_degrees": Value::Array(degrees.iter().map(int).collect()),
            "upper_bound": int(upper_bound),
        }),
    }
}

pub fn ed_report(o: &mut Object, r: &EdReport) {
    o.insert("profile".into(), profile(&r.profile));
    o.insert("ind_G_T".into(), int(&r.ind_g_t));
    o.insert("lower_ed_p".into(), int(&r.lower_ed_p));
    o.insert("vacuous".into(), Value::Bool(r.vacuous()));
    o.insert("upper_ed".into(), int(&r.upper_ed));
    o.insert("upper_ed_p".into(), int(&r.upper_ed_p));
    o.insert("ed_bar_used".into(), int(&r.ed_bar_used));
    o.insert("ed_bar_p_used".into(), int(&r.ed_bar_p_used));
    o.insert("exact".into(), opt(r.exact.as_ref(), exact_value));
    o.insert("status".into(), Value::String(r.status.as_str().into()));
    o.insert(
        "notes".into(),
        Value::Array(
            r.notes
                .iter()
                .map(|n| Value::String(n.as_str().into()))
                .collect(),
        ),
    );
}

pub fn census_report(o: &mut Object, r: &CensusReport) {
    o.insert("rank_filter".into(), opt(r.rank_filter, int));
    o.insert("up_to_equivalence".into(), Value::Bool(r.up_to_equivalence));
    o.insert("total_codes".into(), int(r.total_codes));
    o.insert(
        "lex_largest_profile".into(),
        opt(r.lex_largest_profile.as_ref(), profile),
    );
    o.insert("max_w_t".into(), int(r.max_w_t));
    o.insert("count_equal_weights".into(), int(r.count_equal_weights));
    o.insert(
        "prob_equal_weights".into(),
        opt(r.prob_equal_weights.as_ref(), rational),
    );
    o.insert("max_sum_pw".into(), int(&r.max_sum_pw));
    o.insert("mean_sum_pw".into(), opt(r.mean_sum_pw.as_ref(), rational));
    o.insert("count_wt_gt_2ar".into(), int(r.count_wt_gt_2ar));
    o.insert(
        "prob_wt_gt_2ar".into(),
        opt(r.prob_wt_gt_2ar.as_ref(), rational),
    );
    o.insert(
        "per_profile_histogram".into(),
        Value::Array(
            r.per_profile_histogram
                .iter()
                .map(|(w, n)| json!({ "profile": profile(w), "count": int(n) }))
                .collect(),
        ),
    );
}

pub fn lift_witness(o: &mut Object, w: &LiftWitness, verified: bool) {
    o.insert("x".into(), matrix(&w.x));
    o.insert("c".into(), int(&w.c));
    o.insert("images".into(), elements(&w.images));
    o.insert("verified".into(), Value::Bool(verified));
}

pub fn error(kind: &str, message: &str) -> Value {
    json!({ "error": { "kind": kind, "message": message } })
}

/// One `key  value` line per top-level field.
pub fn pretty(v: &Value) -> String {
    let Value::Object(o) = v else {
        return v.to_string();
    };
    let width = o.keys().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in o {
        let shown = match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        out.push_str(&format!("{k:<width$}  {shown}\n"));
    }
    out
}
