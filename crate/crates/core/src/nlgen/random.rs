use rand::Rng;

use crate::ltl::LtlFormula;

/// A random formula in the grammar's language: negation only on
/// propositions, operators from `G F X & | -> <-> U R`, depth at most `depth`
/// (a proposition has depth 1, `!a` counts as a leaf).
pub fn random_admissible<R: Rng + ?Sized>(rng: &mut R, depth: usize, aps: &[&str]) -> LtlFormula {
    assert!(!aps.is_empty(), "need at least one proposition");
    if depth <= 1 || rng.gen_bool(0.25) {
        let ap = LtlFormula::ap(aps[rng.gen_range(0..aps.len())]);
        return if rng.gen_bool(0.3) { LtlFormula::not(ap) } else { ap };
    }
    let sub = |rng: &mut R| random_admissible(rng, depth - 1, aps);
    match rng.gen_range(0..9) {
        0 => LtlFormula::globally(sub(rng)),
        1 => LtlFormula::finally(sub(rng)),
        2 => LtlFormula::next(sub(rng)),
        3 => LtlFormula::and(sub(rng), sub(rng)),
        4 => LtlFormula::or(sub(rng), sub(rng)),
        5 => LtlFormula::implies(sub(rng), sub(rng)),
        6 => LtlFormula::equiv(sub(rng), sub(rng)),
        7 => LtlFormula::until(sub(rng), sub(rng)),
        _ => LtlFormula::release(sub(rng), sub(rng)),
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::nlgen::check_admissible;

    #[test]
    fn admissible_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let f = random_admissible(&mut rng, 5, &["a", "b", "c"]);
            assert!(check_admissible(&f).is_ok(), "{f}");
            let leaf_adjusted = match &f {
                LtlFormula::Not(_) => 1,
                _ => f.depth(),
            };
            assert!(leaf_adjusted <= 6, "{f}");
        }
    }
}
