//! JSON views of library values. Generator indices are 1-based here to
//! match the file format; serde_json maps sort keys, so output is stable
//! byte for byte.

use coxrig::class::{ClassReport, Witness};
use coxrig::matrix::{CoxeterMatrix, GeneratorSubset};
use coxrig::oracle::RigidityVerdict;
use serde_json::{json, Value};

pub fn subset_json(subset: &GeneratorSubset) -> Value {
    Value::Array(subset.iter().map(|i| json!(i + 1)).collect())
}

fn pair_json(pair: (usize, usize)) -> Value {
    json!([pair.0 + 1, pair.1 + 1])
}

pub fn matrix_json(matrix: &CoxeterMatrix) -> Value {
    let entries: Vec<Value> =
        matrix.finite_pairs().map(|(i, j, m)| json!([i + 1, j + 1, m])).collect();
    json!({
        "rank": matrix.rank(),
        "names": matrix.names(),
        "entries": entries,
    })
}

fn witness_json(witness: &Witness) -> Value {
    match witness {
        Witness::EvenEntryNotDivisible { pair, value } => json!({
            "condition": 0,
            "pair": pair_json(*pair),
            "value": value,
        }),
        Witness::OddPairNotMaximal { pair, value } => json!({
            "condition": 1,
            "pair": pair_json(*pair),
            "value": value,
        }),
        Witness::OddChain { triple, values } => json!({
            "condition": 2,
            "triple": [triple.0 + 1, triple.1 + 1, triple.2 + 1],
            "values": [values.0, values.1],
        }),
        Witness::TooManyMeetingSubsets { pair, count } => json!({
            "condition": 3,
            "pair": pair_json(*pair),
            "count": count,
        }),
    }
}

pub fn report_json(report: &ClassReport) -> Value {
    json!({
        "in_class": report.in_class,
        "conditions": report.conditions,
        "witnesses": report.witnesses.iter().map(witness_json).collect::<Vec<_>>(),
        "evenness": report.evenness.as_str(),
        "s_bar": subset_json(&report.s_bar),
        "odd_pairs": report.odd_pairs.iter().map(|&p| pair_json(p)).collect::<Vec<_>>(),
    })
}

pub fn verdict_json(verdict: &RigidityVerdict) -> Value {
    let classes: Vec<Value> = verdict
        .classes
        .iter()
        .map(|c| {
            json!({
                "matrix": matrix_json(&c.matrix),
                "representative_generators": c.generators.as_slice(),
            })
        })
        .collect();
    json!({
        "base_matrix": matrix_json(&verdict.base_matrix),
        "classes": classes,
        "rigid": verdict.rigid,
        "exhausted": verdict.exhausted,
        "limits": {
            "max_order": verdict.limits.max_order,
            "max_gens": verdict.limits.max_gens,
            "max_cosets": verdict.limits.max_cosets,
        },
    })
}
