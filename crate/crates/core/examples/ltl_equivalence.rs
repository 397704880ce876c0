//! LTL satisfiability and equivalence with lasso-shaped witnesses.

use nl2formal::ltl::{eval_trace, is_satisfiable, ltl_equivalent, parse_ltl, LtlEquivalence, SatResult};

fn main() {
    for (a, b) in [("F a", "true U a"), ("G a", "!F !a"), ("G a", "F a"), ("a U b", "b | (a & X (a U b))")] {
        let (f, g) = (parse_ltl(a).unwrap(), parse_ltl(b).unwrap());
        match ltl_equivalent(&f, &g).unwrap() {
            LtlEquivalence::Equivalent => println!("{a}  ==  {b}"),
            LtlEquivalence::Inequivalent(t) => {
                let (x, y) = (eval_trace(&f, &t).unwrap(), eval_trace(&g, &t).unwrap());
                println!("{a}  !=  {b}   on {t}: {x} vs {y}");
            }
        }
    }
    for s in ["G F a & F G !a", "G (req -> F grant) & G F req"] {
        match is_satisfiable(&parse_ltl(s).unwrap()).unwrap() {
            SatResult::Sat(t) => println!("sat    {s}   e.g. {t}"),
            SatResult::Unsat => println!("unsat  {s}"),
        }
    }
}
