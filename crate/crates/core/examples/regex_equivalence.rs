//! Language equivalence of regexes, with a counterexample when they differ.
//!
//!     cargo run --example regex_equivalence -- '(a)|(b)' '(b)|(a)'

use nl2formal::regex::{parse_regex, regex_counterexample, Limits};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (a, b) = match args.as_slice() {
        [a, b] => (a.as_str(), b.as_str()),
        _ => ("((..*[AEIOUaeiou].*){7,})(.*)", "((..*[AEIOUaeiou].*)(.*)){7,}"),
    };
    let (x, y) = match (parse_regex(a), parse_regex(b)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    match regex_counterexample(&x, &y, &Limits::default()) {
        Ok(None) => println!("{a}\n{b}\nequivalent"),
        Ok(Some(w)) => println!("{a}\n{b}\ndiffer on {w:?}"),
        Err(e) => eprintln!("{e}"),
    }
}
