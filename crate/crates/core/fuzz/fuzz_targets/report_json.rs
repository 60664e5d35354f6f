#![no_main]

use germsplit::graph::to_dot;
use germsplit::report::{from_json, graph_from_report};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(report) = from_json(text) {
            if let Ok(graph) = graph_from_report(&report.graph) {
                let _ = to_dot(&graph);
            }
        }
    }
});
