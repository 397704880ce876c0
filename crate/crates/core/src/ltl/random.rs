//! Random formulas for property tests and oracle cross-checks.

use rand::Rng;

use super::ast::LtlFormula;

/// A random formula with `depth()` at most `depth` over
/// `aps`, using every operator including negation of compound formulas and
/// the constants.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, depth: usize, aps: &[&str]) -> LtlFormula {
    assert!(!aps.is_empty(), "need at least one proposition");
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..12) {
            0 => LtlFormula::True,
            1 => LtlFormula::False,
            _ => LtlFormula::ap(aps[rng.gen_range(0..aps.len())]),
        };
    }
    let sub = |rng: &mut R| random_formula(rng, depth - 1, aps);
    match rng.gen_range(0..11) {
        0 => LtlFormula::not(sub(rng)),
        1 => LtlFormula::next(sub(rng)),
        2 => LtlFormula::finally(sub(rng)),
        3 => LtlFormula::globally(sub(rng)),
        4 => LtlFormula::and(sub(rng), sub(rng)),
        5 => LtlFormula::or(sub(rng), sub(rng)),
        6 => LtlFormula::implies(sub(rng), sub(rng)),
        7 => LtlFormula::equiv(sub(rng), sub(rng)),
        8 => LtlFormula::until(sub(rng), sub(rng)),
        9 => LtlFormula::release(sub(rng), sub(rng)),
        _ => LtlFormula::not(LtlFormula::ap(aps[rng.gen_range(0..aps.len())])),
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn depth_and_aps_are_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let f = random_formula(&mut rng, 4, &["a", "b"]);
            assert!(f.depth() <= 4, "{f}");
            assert!(f.aps().iter().all(|p| p == "a" || p == "b"));
        }
    }
}
