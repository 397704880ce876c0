//! Syntactic versus semantic accuracy on a small regex dataset.

use std::collections::BTreeMap;

use nl2formal::datasets::{DatasetRecord, Domain};
use nl2formal::eval::{evaluate, format_prompt, EvalOptions, Prediction};

fn main() {
    let data = [
        ("lines with the string 'dog'", "(.*dog.*)", "(.*dog.*)"),
        (
            "lines with a vowel at least 7 times",
            "((..*[AEIOUaeiou].*)(.*)){7,}",
            "((..*[AEIOUaeiou].*){7,})(.*)",
        ),
        ("lines with 'truck' or 'ring'", "(.*truck.*)|(.*ring.*)", "(.*ring.*)|(.*truck.*)"),
        ("lines with a number", "(.*[0-9].*)", "([0-9])"),
        ("lines ending in 'time'", "(.*time)", "(.*time"),
    ];
    let mut records = Vec::new();
    let mut predictions = Vec::new();
    for (nl, target, prediction) in data {
        let r = DatasetRecord::new(Domain::Regex, nl, target, BTreeMap::new());
        predictions.push(Prediction::new(&r.id, prediction));
        records.push(r);
    }
    println!("{}\n", format_prompt(Domain::Regex, &records[0].nl));
    let report = evaluate(&records, &predictions, &EvalOptions::default()).unwrap();
    print!("{}", report.to_table());
    for (v, (nl, _, _)) in report.verdicts.iter().zip(data) {
        println!("{:<14} {nl}", format!("{:?}", v.verdict));
    }
}
