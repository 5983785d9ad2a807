//! One-paragraph human reading of a report, for `--pretty`.

use serde_json::Value;

pub fn summarize(report: &Value) -> String {
    let mut out = String::new();
    if let Some(top) = report.get("topological").and_then(Value::as_str) {
        let smooth = report["smooth_for_all_d"].as_str().unwrap_or("?");
        out.push_str(&format!("topological manifold: {top}\nsmooth for some d: {smooth}\n"));
        for step in report["certificate"].as_array().into_iter().flatten() {
            out.push_str(&format!("  [{}] {}\n", step["theorem"].as_str().unwrap_or("?"), step["detail"].as_str().unwrap_or("")));
        }
    } else if let Some(stable) = report.get("stable") {
        out.push_str(&format!("{}-stable: {stable}\n", report["q"]));
    } else if let Some(steps) = report.get("reduction_trace").and_then(Value::as_array) {
        out.push_str(&format!("{} reduction step(s)\n", steps.len()));
        for s in steps {
            out.push_str(&format!(
                "  classes {}: m {} -> {}, v0 {} -> {}\n",
                s["class_orbit"], s["m_before"], s["m_after"], s["v0_before"], s["v0_after"]
            ));
        }
    } else if let Some(order) = report.get("order") {
        let hits = report["cosets"].as_array().map_or(0, |c| c.iter().filter(|c| c["meets_omega"] == "yes").count());
        out.push_str(&format!("component group of order {order}; {hits} coset(s) meet Omega\n"));
    } else if report.get("valid").is_some() {
        let n = report["generators"].as_array().map_or(0, Vec::len);
        out.push_str(&format!("valid: m = {}, {} line(s), v0_dim = {}, {n} generator(s)\n", report["m"], report["lines"], report["v0_dim"]));
    } else if let Some(checks) = report.get("checks").and_then(Value::as_array) {
        for c in checks {
            out.push_str(&format!("  {:<22} max defect {:.3e}\n", c["check"].as_str().unwrap_or("?"), c["max_defect"].as_f64().unwrap_or(f64::NAN)));
        }
    }
    out
}
