//! Out-of-distribution copies: new nouns for regexes, new letters for LTL.

use std::collections::BTreeMap;

use nl2formal::datasets::{noun_pool, substitute_nouns, DatasetRecord, Domain};
use nl2formal::ltl::{parse_ltl, print_ltl};
use nl2formal::nlgen::{rename_aps, rephrase, GrammarVariant};

fn main() {
    println!("noun pool: {}", noun_pool().join(" "));
    let r = DatasetRecord::new(
        Domain::Regex,
        "lines with the string 'dog' before a number",
        "(.*dog.*)&(.*[0-9].*)",
        BTreeMap::new(),
    );
    let mapping = BTreeMap::from([("dog".to_string(), "time".to_string())]);
    let swapped = substitute_nouns(&r, &mapping).unwrap();
    println!("{}  {}", swapped.nl, swapped.target);

    let target = print_ltl(&parse_ltl("G F a -> G F b").unwrap());
    let l = DatasetRecord::new(Domain::Ltl, "If globally it is the case that eventually a holds then globally it is the case that eventually b holds", target, BTreeMap::new());
    let renamed = rename_aps(&l, None, 7).unwrap();
    println!("{}  {}", renamed.nl, renamed.target);
    let enriched = rephrase(&renamed, GrammarVariant::Enriched, 3).unwrap();
    println!("{}", enriched.nl);
}
