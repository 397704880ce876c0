//! Drives a line-oriented model process; here `sed` strips the prompt, so
//! every prediction echoes its sentence.

use std::collections::BTreeMap;
use std::time::Duration;

use nl2formal::datasets::{DatasetRecord, Domain};
use nl2formal::eval::run_external_model;

fn main() {
    let records: Vec<DatasetRecord> = ["a holds", "Globally b holds", "Eventually c holds"]
        .iter()
        .map(|nl| DatasetRecord::new(Domain::Ltl, *nl, "a", BTreeMap::new()))
        .collect();
    let args = vec!["-u".to_string(), "s/^translate natural language to LTL: //".to_string()];
    match run_external_model("sed", &args, &records, Duration::from_secs(5)) {
        Ok(ps) => ps.iter().for_each(|p| println!("{} {}", p.id, p.prediction)),
        Err(e) => eprintln!("{e}"),
    }
}
