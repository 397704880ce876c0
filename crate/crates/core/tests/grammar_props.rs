use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nl2formal::ltl::parse_ltl;
use nl2formal::nlgen::{check_admissible, ltl_to_nl, nl_to_ltl, random_admissible, GrammarVariant, NlError};

const APS: [&str; 4] = ["a", "b", "i0", "o12"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn round_trip_both_variants(seed in any::<u64>(), depth in 1usize..8, render_seed in any::<u64>()) {
        let f = random_admissible(&mut ChaCha8Rng::seed_from_u64(seed), depth, &APS);
        for v in [GrammarVariant::Base, GrammarVariant::Enriched] {
            let s = ltl_to_nl(&f, v, render_seed).unwrap();
            prop_assert_eq!(nl_to_ltl(&s, v).unwrap(), f.clone(), "{}", s);
        }
    }

    #[test]
    fn enriched_reads_base_sentences(seed in any::<u64>(), depth in 1usize..8) {
        let f = random_admissible(&mut ChaCha8Rng::seed_from_u64(seed), depth, &APS);
        let s = ltl_to_nl(&f, GrammarVariant::Base, 0).unwrap();
        prop_assert_eq!(
            nl_to_ltl(&s, GrammarVariant::Enriched).unwrap(),
            nl_to_ltl(&s, GrammarVariant::Base).unwrap()
        );
    }

    #[test]
    fn rendering_is_seed_deterministic(seed in any::<u64>(), render_seed in any::<u64>()) {
        let f = random_admissible(&mut ChaCha8Rng::seed_from_u64(seed), 6, &APS);
        prop_assert_eq!(
            ltl_to_nl(&f, GrammarVariant::Enriched, render_seed).unwrap(),
            ltl_to_nl(&f, GrammarVariant::Enriched, render_seed).unwrap()
        );
    }

    #[test]
    fn case_and_spacing_do_not_matter(seed in any::<u64>()) {
        let f = random_admissible(&mut ChaCha8Rng::seed_from_u64(seed), 5, &APS);
        let s = ltl_to_nl(&f, GrammarVariant::Base, 0).unwrap();
        let aps = f.aps();
        let shouted: Vec<String> = s
            .split(' ')
            .map(|w| if aps.contains(w) { w.to_string() } else { w.to_uppercase() })
            .collect();
        // proposition names are case-sensitive, keywords are not
        prop_assert_eq!(nl_to_ltl(&shouted.join(" "), GrammarVariant::Base).unwrap(), f.clone());
        let spaced = format!(" {}.", s.replace(' ', "  "));
        prop_assert_eq!(nl_to_ltl(&spaced, GrammarVariant::Base).unwrap(), f);
    }
}

#[test]
fn inadmissible_formulas_are_rejected() {
    for s in ["!(a U b)", "!G a", "a & true", "X false", "G !(a | b)"] {
        let f = parse_ltl(s).unwrap();
        assert!(check_admissible(&f).is_err(), "{s}");
        assert!(matches!(ltl_to_nl(&f, GrammarVariant::Enriched, 0), Err(NlError::UnsupportedShape(_))));
    }
}

#[test]
fn prefixes_of_sentences_do_not_parse() {
    let f = parse_ltl("G (a -> F (b & X !c)) & (d R e)").unwrap();
    let s = ltl_to_nl(&f, GrammarVariant::Base, 0).unwrap();
    let words: Vec<&str> = s.split(' ').collect();
    for k in 1..words.len() {
        let prefix = words[..k].join(" ");
        if let Ok(g) = nl_to_ltl(&prefix, GrammarVariant::Base) {
            // a shorter sentence may be complete, but never with the same reading
            assert_ne!(g, f, "{prefix}");
        }
    }
}
