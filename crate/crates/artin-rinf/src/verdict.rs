//! Rule engine mapping a classified graph to an R-infinity status with a
//! provenance trace. Rules are evaluated in a fixed priority order and
//! the first match wins.

use serde::{Deserialize, Serialize};

use crate::classify::classify;
use crate::graph::{Convention, Label, LabeledGraph};
use crate::hierarchy::{find_twistless_hierarchy, HierarchySearch, HierarchyTree, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "R_INFINITY_ESTABLISHED")]
    Established,
    #[serde(rename = "CONJECTURED")]
    Conjectured,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub predicate: String,
    pub value: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rule_id: Option<String>,
    pub hypothesis_trace: Vec<TraceEntry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub citation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<HierarchyTree>,
}

pub fn verdict(g: &LabeledGraph) -> Verdict {
    verdict_with_budget(g, DEFAULT_BUDGET)
}

/// Parses the rank from a single-component type name like "D6".
fn series_rank(types: &Option<Vec<String>>, series: char) -> Option<usize> {
    match types.as_deref() {
        Some([t]) if t.starts_with(series) && t.len() > 1 => t[1..].parse().ok(),
        _ => None,
    }
}

fn i2_label(types: &Option<Vec<String>>) -> Option<u32> {
    match types.as_deref() {
        Some([t]) => t
            .strip_prefix("I2(")
            .and_then(|rest| rest.strip_suffix(')'))
            .and_then(|m| m.parse().ok()),
        _ => None,
    }
}

fn is_connected(g: &LabeledGraph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for u in g.stored_neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub fn verdict_with_budget(g: &LabeledGraph, budget: usize) -> Verdict {
    let report = classify(g);
    let mut trace: Vec<TraceEntry> = vec![];
    let push = |trace: &mut Vec<TraceEntry>, predicate: &str, value: serde_json::Value| {
        trace.push(TraceEntry {
            predicate: predicate.to_string(),
            value,
        });
    };
    let established = |rule: &str, citation: &str, trace: Vec<TraceEntry>| Verdict {
        status: Status::Established,
        rule_id: Some(rule.to_string()),
        hypothesis_trace: trace,
        citation: Some(citation.to_string()),
        witness: None,
    };

    push(
        &mut trace,
        "spherical_type",
        serde_json::json!(report.spherical_type),
    );

    // R1: type D_n, n >= 6
    if let Some(n) = series_rank(&report.spherical_type, 'D') {
        if n >= 6 {
            return established("R1", "Theorem 1.1", trace);
        }
        // R2: type D_4, imported result
        if n == 4 {
            return established("R2", "CalSor1 (type D_4)", trace);
        }
        // R3: type D_5 is conjectural
        if n == 5 {
            return Verdict {
                status: Status::Conjectured,
                rule_id: Some("R3".to_string()),
                hypothesis_trace: trace,
                citation: Some("Conjecture 1".to_string()),
                witness: None,
            };
        }
    }

    // R4: dihedral with a finite label >= 3 (the label-2 case is Z^2,
    // which fails R-infinity, so it is deliberately excluded)
    push(
        &mut trace,
        "vertex_count",
        serde_json::json!(report.vertex_count),
    );
    if report.vertex_count == 2 {
        let m = g.label(0, 1);
        push(&mut trace, "dihedral_label", serde_json::json!(m));
        if let Label::Finite(m) = m {
            if m >= 3 {
                return established("R4", "CalSor1, Theorem 1 (dihedral)", trace);
            }
        }
    }

    // R5: large, hyperbolic-type, free-of-infinity, >= 3 vertices
    push(&mut trace, "is_large", serde_json::json!(report.is_large));
    push(
        &mut trace,
        "is_hyperbolic_type",
        serde_json::json!(report.is_hyperbolic_type),
    );
    push(
        &mut trace,
        "is_free_of_infinity",
        serde_json::json!(report.is_free_of_infinity),
    );
    if report.is_large
        && report.is_hyperbolic_type == Some(true)
        && report.is_free_of_infinity
        && report.vertex_count >= 3
    {
        return established("R5", "Corollary 4.6", trace);
    }

    // R6: XXXL and twistless
    push(&mut trace, "is_xxxl", serde_json::json!(report.is_xxxl));
    push(
        &mut trace,
        "is_twistless",
        serde_json::json!(report.is_twistless),
    );
    // a single vertex is vacuously XXXL and twistless but gives the
    // integers, so at least two vertices are required
    if report.is_xxxl && report.is_twistless && report.vertex_count >= 2 {
        return established("R6", "Corollary 4.9", trace);
    }

    // R7: large hyperbolic-type with a twistless hierarchy; the input
    // must be connected (connectivity is part of twistlessness for the
    // leaves but not restated for the hierarchy itself)
    let pres = g.convert(Convention::Presentation);
    let connected = is_connected(&pres);
    push(&mut trace, "is_connected", serde_json::json!(connected));
    if report.is_large && report.is_hyperbolic_type == Some(true) && connected {
        match find_twistless_hierarchy(&pres, budget.max(1)).expect("nonzero budget") {
            HierarchySearch::Found { tree } => {
                push(&mut trace, "twistless_hierarchy", serde_json::json!("found"));
                debug_assert!(crate::hierarchy::validate_tree(&pres, &tree));
                return Verdict {
                    status: Status::Established,
                    rule_id: Some("R7".to_string()),
                    hypothesis_trace: trace,
                    citation: Some("Corollary 4.11".to_string()),
                    witness: Some(tree),
                };
            }
            HierarchySearch::NoneDefinitive => {
                push(&mut trace, "twistless_hierarchy", serde_json::json!("none"));
            }
            HierarchySearch::NoneExhausted { budget } => {
                push(
                    &mut trace,
                    "twistless_hierarchy",
                    serde_json::json!(format!("budget_exhausted({budget})")),
                );
            }
        }
    }

    // R8: imported spherical results: A_n (n >= 2, braid groups), B_n,
    // I_2(m) with m >= 5. A_1 is the integers, which fail R-infinity.
    let r8 = series_rank(&report.spherical_type, 'A').is_some_and(|n| n >= 2)
        || series_rank(&report.spherical_type, 'B').is_some()
        || i2_label(&report.spherical_type).is_some_and(|m| m >= 5);
    if r8 {
        return established(
            "R8",
            "FeGoDa1 (type A_n); CalSor1 (types B_n, I_2(m), m >= 5)",
            trace,
        );
    }

    Verdict {
        status: Status::Unknown,
        rule_id: None,
        hypothesis_trace: trace,
        citation: None,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testgraphs;

    fn rule(g: &LabeledGraph) -> Option<String> {
        verdict(g).rule_id
    }

    #[test]
    fn d_series_rules() {
        for n in [6usize, 7, 8] {
            let v = verdict(&testgraphs::coxeter_dn(n));
            assert_eq!(v.status, Status::Established);
            assert_eq!(v.rule_id.as_deref(), Some("R1"));
            assert_eq!(v.citation.as_deref(), Some("Theorem 1.1"));
        }
        assert_eq!(rule(&testgraphs::coxeter_dn(4)).as_deref(), Some("R2"));
        let d5 = verdict(&testgraphs::coxeter_dn(5));
        assert_eq!(d5.status, Status::Conjectured);
        assert_eq!(d5.rule_id.as_deref(), Some("R3"));
    }

    #[test]
    fn dihedral_rules() {
        let v = verdict(&testgraphs::dihedral(Label::Finite(5)));
        assert_eq!(v.rule_id.as_deref(), Some("R4"));
        assert_eq!(v.status, Status::Established);
        // label 2 is Z^2 and must fall through to UNKNOWN
        let v2 = verdict(&testgraphs::dihedral(Label::Finite(2)));
        assert_eq!(v2.status, Status::Unknown);
        let vinf = verdict(&testgraphs::dihedral(Label::Inf));
        assert_eq!(vinf.status, Status::Unknown);
    }

    #[test]
    fn triangle_rules() {
        let v = verdict(&testgraphs::triangle(3, 3, 4));
        assert_eq!(v.rule_id.as_deref(), Some("R5"));
        let v333 = verdict(&testgraphs::triangle(3, 3, 3));
        assert_eq!(v333.status, Status::Unknown);
        assert!(v333.citation.is_none());
        assert!(v333.rule_id.is_none());
    }

    #[test]
    fn pentagon_is_xxxl_twistless() {
        let v = verdict(&testgraphs::cycle(5, 6));
        assert_eq!(v.rule_id.as_deref(), Some("R6"));
        assert_eq!(v.status, Status::Established);
    }

    #[test]
    fn octahedron_uses_hierarchy_with_witness() {
        let v = verdict(&testgraphs::octahedron(4));
        assert_eq!(v.rule_id.as_deref(), Some("R7"));
        let tree = v.witness.expect("hierarchy witness");
        assert!(crate::hierarchy::validate_tree(
            &testgraphs::octahedron(4),
            &tree
        ));
    }

    #[test]
    fn spherical_imports() {
        assert_eq!(rule(&testgraphs::coxeter_an(3)).as_deref(), Some("R8"));
        assert_eq!(rule(&testgraphs::coxeter_bn(3)).as_deref(), Some("R8"));
        // a single vertex is the integers: no rule applies
        let single = testgraphs::coxeter_an(1);
        assert_eq!(verdict(&single).status, Status::Unknown);
    }

    #[test]
    fn budget_exhaustion_is_reported_in_trace() {
        let v = verdict_with_budget(&testgraphs::octahedron(4), 1);
        assert_eq!(v.status, Status::Unknown);
        assert!(v
            .hypothesis_trace
            .iter()
            .any(|t| t.predicate == "twistless_hierarchy"
                && t.value.as_str().unwrap().starts_with("budget_exhausted")));
    }

    #[test]
    fn traces_are_nonempty_and_reproducible() {
        let graphs = [
            testgraphs::coxeter_dn(6),
            testgraphs::triangle(3, 3, 4),
            testgraphs::cycle(5, 6),
            testgraphs::octahedron(4),
            testgraphs::triangle(3, 3, 3),
        ];
        for g in &graphs {
            let v = verdict(g);
            assert!(!v.hypothesis_trace.is_empty());
            let report = classify(g);
            for entry in &v.hypothesis_trace {
                let recomputed = match entry.predicate.as_str() {
                    "spherical_type" => serde_json::json!(report.spherical_type),
                    "vertex_count" => serde_json::json!(report.vertex_count),
                    "dihedral_label" => serde_json::json!(g.label(0, 1)),
                    "is_large" => serde_json::json!(report.is_large),
                    "is_hyperbolic_type" => serde_json::json!(report.is_hyperbolic_type),
                    "is_free_of_infinity" => serde_json::json!(report.is_free_of_infinity),
                    "is_xxxl" => serde_json::json!(report.is_xxxl),
                    "is_twistless" => serde_json::json!(report.is_twistless),
                    "is_connected" => {
                        serde_json::json!(is_connected(&g.convert(Convention::Presentation)))
                    }
                    "twistless_hierarchy" => continue,
                    other => panic!("unexpected predicate {other}"),
                };
                assert_eq!(&entry.value, &recomputed, "{}", entry.predicate);
            }
        }
    }

    #[test]
    fn unknown_never_carries_citation() {
        for g in [
            testgraphs::triangle(3, 3, 3),
            testgraphs::dihedral(Label::Finite(2)),
            testgraphs::coxeter_an(1),
        ] {
            let v = verdict(&g);
            assert_eq!(v.status, Status::Unknown);
            assert!(v.citation.is_none());
        }
    }

    #[test]
    fn invariant_under_relabeling() {
        let graphs = [
            testgraphs::coxeter_dn(6),
            testgraphs::cycle(5, 6),
            testgraphs::octahedron(4),
            testgraphs::triangle(3, 3, 4),
        ];
        for g in &graphs {
            let base = verdict(g);
            for sigma in g.graph_automorphisms() {
                let relabeled = g.relabel(&sigma);
                let v = verdict(&relabeled);
                assert_eq!(v.status, base.status);
                assert_eq!(v.rule_id, base.rule_id);
                assert_eq!(v.citation, base.citation);
            }
        }
    }

    #[test]
    fn established_verdicts_serialize_with_status_string() {
        let v = verdict(&testgraphs::coxeter_dn(6));
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["status"], "R_INFINITY_ESTABLISHED");
        assert_eq!(json["rule_id"], "R1");
    }
}
