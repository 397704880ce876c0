//! Formulas to sentences and back, in both grammar variants.

use nl2formal::ltl::parse_ltl;
use nl2formal::nlgen::{ltl_to_nl, nl_to_ltl, GrammarVariant};

fn main() {
    let formulas = ["G a", "G !a", "G (a & b)", "G (a -> F b)", "G F a -> G F b", "a R b", "(a & b) | c"];
    for v in [GrammarVariant::Base, GrammarVariant::Enriched] {
        println!("# {v}");
        for (seed, s) in formulas.iter().enumerate() {
            let f = parse_ltl(s).unwrap();
            let sentence = ltl_to_nl(&f, v, seed as u64).unwrap();
            assert_eq!(nl_to_ltl(&sentence, v).unwrap(), f);
            println!("{s:<18} {sentence}");
        }
    }
}
