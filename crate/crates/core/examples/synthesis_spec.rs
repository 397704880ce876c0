//! Assumption/guarantee specifications as single formulas and sentences.

use nl2formal::nlgen::{synthesis_record, GrammarVariant, SynthesisSpec};

fn main() {
    let spec = SynthesisSpec::from_json(
        r#"{"assumptions": ["G F i0"],
            "guarantees": ["G ((o4 & X !i0) -> X o4)", "(!o1 U !i1) | G !o1", "G o3"],
            "inputs": ["i0", "i1"], "outputs": ["o1", "o3", "o4"]}"#,
    )
    .unwrap();
    let r = synthesis_record(&spec, GrammarVariant::Base, 0).unwrap();
    println!("{}\n{}", r.target, r.nl);
}
