//! Syntactic accuracy for boxer-style FOL, exact and up to bound variable names.

use nl2formal::fol::{fol_syntactic_equal, normalize_fol, parse_fol, FolMode};

fn main() {
    let target = "fol(1,some(A,some(B,some(C,some(D,and(r1Theme(A,C), and(r1Actor(A,D),and(v1choose(A),and(n1port(C), and(a1available(B),and(r1Theme(B,C),n12thing(D)))))))))))).";
    let doc = parse_fol(target).unwrap();
    println!(
        "{} quantifiers, {} conjuncts",
        doc.body.quantifier_count(),
        doc.body.matrix().conjuncts().len()
    );
    println!("{}", normalize_fol(target, FolMode::Exact));

    let renamed = "fol(1,some(W,some(X,some(Y,some(Z,and(r1Theme(W,Y),and(r1Actor(W,Z),and(v1choose(W),and(n1port(Y),and(a1available(X),and(r1Theme(X,Y),n12thing(Z)))))))))))).";
    for mode in [FolMode::Exact, FolMode::Alpha] {
        println!("{mode:?}: renamed prediction correct = {}", fol_syntactic_equal(target, renamed, mode));
    }
}
