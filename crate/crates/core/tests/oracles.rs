use num_rational::Ratio;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regexmend::regex::Regex;
use regexmend::{fitness, parse, Alphabet, Engine, EngineBudget, EngineError, ExampleSet};
use regexmend_testkit::{brute_matches, random_regex, random_string, Binary, BoundedStrings, RegexSpace, Unary};

const AB: [char; 2] = ['a', 'b'];

fn engine_ab() -> Engine {
    Engine::new(Alphabet::new(AB).unwrap(), EngineBudget::default())
}

fn small_space(max_size: usize) -> RegexSpace {
    RegexSpace::new(
        vec![Regex::Empty, Regex::Epsilon, Regex::literal('a'), Regex::literal('b')],
        vec![Unary::Not, Unary::Repeat(0, None), Unary::Repeat(1, Some(2))],
        vec![Binary::Concat, Binary::Alt, Binary::And],
        max_size,
    )
}

#[test]
fn matcher_agrees_with_bounded_languages_up_to_size_six() {
    let e = engine_ab();
    let space = small_space(6);
    let strings = BoundedStrings::new(&AB, 5);
    for (size, idx) in space.indices() {
        let r = space.get(size, idx);
        let lang = strings.lang(&r);
        let mut m = e.matcher(&r).unwrap();
        for (i, w) in strings.strings().iter().enumerate() {
            assert_eq!(m.matches(w).unwrap(), strings.contains(&lang, i), "{r} on {w:?}");
        }
    }
}

#[test]
fn bounded_languages_agree_with_span_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let strings = BoundedStrings::new(&AB, 5);
    for _ in 0..200 {
        let r = random_regex(&mut rng, &AB, 7);
        let lang = strings.lang(&r);
        for (i, w) in strings.strings().iter().enumerate() {
            assert_eq!(strings.contains(&lang, i), brute_matches(&r, w, &AB), "{r} on {w:?}");
        }
    }
}

#[test]
fn fitness_matches_counting_oracle() {
    let e = engine_ab();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    while checked < 200 {
        let r = random_regex(&mut rng, &AB, 8);
        let pos: Vec<String> = (0..5).map(|_| random_string(&mut rng, &AB, 6)).collect();
        let neg: Vec<String> = (0..5).map(|_| random_string(&mut rng, &AB, 6)).collect();
        let Ok(ex) = ExampleSet::new(pos, neg) else { continue };
        let tp = ex.positive().iter().filter(|w| brute_matches(&r, w, &AB)).count() as i64;
        let fp = ex.negative().iter().filter(|w| brute_matches(&r, w, &AB)).count() as i64;
        let (np, nn) = (ex.positive().len() as i64, ex.negative().len() as i64);
        let expected = Ratio::new(tp + (nn - fp) - fp - (np - tp), np + nn);
        assert_eq!(fitness(&e, &r, &ex).unwrap().value, expected, "{r}");
        checked += 1;
    }
}

#[test]
fn equivalence_matches_bounded_comparison() {
    let e = engine_ab();
    let strings = BoundedStrings::new(&AB, 7);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut equal = 0;
    for i in 0..200 {
        let r1 = random_regex(&mut rng, &AB, 5);
        // Every other pair is a rewrite known to preserve the language, so
        // both verdicts get exercised.
        let r2 = if i % 2 == 0 {
            Regex::alt(r1.clone(), Regex::and(r1.clone(), random_regex(&mut rng, &AB, 3)))
        } else {
            random_regex(&mut rng, &AB, 5)
        };
        let verdict = e.equivalent(&r1, &r2).unwrap();
        let bounded = strings.lang(&r1) == strings.lang(&r2);
        // At this size a difference shows up within 7 characters in practice.
        assert_eq!(verdict, bounded, "{r1} vs {r2}");
        equal += verdict as usize;
    }
    assert!(equal >= 100);
}

#[test]
fn samples_belong_to_their_side() {
    let e = engine_ab();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for seed in 0..60 {
        let r = random_regex(&mut rng, &AB, 6);
        match e.sample_positive(&r, 5, 8, seed) {
            Ok(ws) => assert!(ws.iter().all(|w| brute_matches(&r, w, &AB)), "{r}"),
            Err(EngineError::EmptyLanguage | EngineError::InsufficientLanguage { .. }) => {}
            Err(other) => panic!("{other}"),
        }
        match e.sample_negative(&r, 5, 8, seed) {
            Ok(ws) => assert!(ws.iter().all(|w| !brute_matches(&r, w, &AB)), "{r}"),
            Err(EngineError::EmptyLanguage | EngineError::InsufficientLanguage { .. }) => {}
            Err(other) => panic!("{other}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_regex_reparses_to_same_language(seed in any::<u64>(), size in 1usize..10) {
        let e = engine_ab();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = random_regex(&mut rng, &AB, size);
        let text = r.to_string();
        let back = parse(&text, e.alphabet()).unwrap();
        prop_assert!(e.equivalent(&r, &back).unwrap(), "{} reparsed differently", text);
        prop_assert_eq!(back.to_string(), text);
    }
}
