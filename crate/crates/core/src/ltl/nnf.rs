//! Negation normal form over `X U R & |`, literals and constants.

use super::ast::LtlFormula;

/// Pushes negations down to propositions and expands `F`, `G`, `->`, `<->`.
pub fn to_nnf(f: &LtlFormula) -> LtlFormula {
    nnf(f, false)
}

fn nnf(f: &LtlFormula, neg: bool) -> LtlFormula {
    use LtlFormula as L;
    match f {
        L::Ap(_) => {
            if neg {
                L::not(f.clone())
            } else {
                f.clone()
            }
        }
        L::True => {
            if neg {
                L::False
            } else {
                L::True
            }
        }
        L::False => {
            if neg {
                L::True
            } else {
                L::False
            }
        }
        L::Not(x) => nnf(x, !neg),
        L::And(x, y) => {
            let (a, b) = (nnf(x, neg), nnf(y, neg));
            if neg {
                L::or(a, b)
            } else {
                L::and(a, b)
            }
        }
        L::Or(x, y) => {
            let (a, b) = (nnf(x, neg), nnf(y, neg));
            if neg {
                L::and(a, b)
            } else {
                L::or(a, b)
            }
        }
        L::Implies(x, y) => {
            let (a, b) = (nnf(x, !neg), nnf(y, neg));
            if neg {
                L::and(a, b)
            } else {
                L::or(a, b)
            }
        }
        L::Equiv(x, y) => {
            // a <-> b == (a & b) | (!a & !b); its negation swaps one side
            let (px, nx) = (nnf(x, false), nnf(x, true));
            let (py, ny) = (nnf(y, false), nnf(y, true));
            if neg {
                L::or(L::and(px, ny), L::and(nx, py))
            } else {
                L::or(L::and(px, py), L::and(nx, ny))
            }
        }
        L::Next(x) => L::next(nnf(x, neg)),
        L::Until(x, y) => {
            let (a, b) = (nnf(x, neg), nnf(y, neg));
            if neg {
                L::release(a, b)
            } else {
                L::until(a, b)
            }
        }
        L::Release(x, y) => {
            let (a, b) = (nnf(x, neg), nnf(y, neg));
            if neg {
                L::until(a, b)
            } else {
                L::release(a, b)
            }
        }
        L::Finally(x) => {
            if neg {
                L::release(L::False, nnf(x, true))
            } else {
                L::until(L::True, nnf(x, false))
            }
        }
        L::Globally(x) => {
            if neg {
                L::until(L::True, nnf(x, true))
            } else {
                L::release(L::False, nnf(x, false))
            }
        }
    }
}

/// Whether `f` is in the form produced by [`to_nnf`].
pub fn is_nnf(f: &LtlFormula) -> bool {
    use LtlFormula as L;
    match f {
        L::Ap(_) | L::True | L::False => true,
        L::Not(x) => matches!(**x, L::Ap(_)),
        L::And(x, y) | L::Or(x, y) | L::Until(x, y) | L::Release(x, y) => is_nnf(x) && is_nnf(y),
        L::Next(x) => is_nnf(x),
        L::Implies(..) | L::Equiv(..) | L::Finally(_) | L::Globally(_) => false,
    }
}
