use proptest::prelude::*;

use wlprel::candidates::{candidate_stats, enumerate_pairs, token_distance, PairPolicy};
use wlprel::classifier::{argmax, softmax};
use wlprel::corpus::Document;
use wlprel::sequence::{build_sequence, context_window, strip_markers, SequenceConfig};
use wlprel::synth::{generate_corpus, SynthConfig};

fn synth_doc(seed: u64) -> Document {
    generate_corpus(seed, 1, &SynthConfig::default())[0]
        .parse()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_is_symmetric(seed in 0u64..10_000) {
        let doc = synth_doc(seed);
        for a in &doc.entities {
            for b in &doc.entities {
                if a.entity_id != b.entity_id {
                    prop_assert_eq!(token_distance(a, b).unwrap(), token_distance(b, a).unwrap());
                } else {
                    prop_assert!(token_distance(a, b).is_err());
                }
            }
        }
    }

    #[test]
    fn policies_nest(seed in 0u64..10_000, t in 0usize..40) {
        let doc = synth_doc(seed);
        let all = enumerate_pairs(&doc, &PairPolicy::all_pairs());
        let narrow = enumerate_pairs(&doc, &PairPolicy::token_distance(t));
        let wide = enumerate_pairs(&doc, &PairPolicy::token_distance(t + 1));
        let key = |p: &wlprel::CandidatePair| (p.head.clone(), p.tail.clone());
        let wide_keys: std::collections::HashSet<_> = wide.iter().map(key).collect();
        prop_assert!(narrow.iter().all(|p| wide_keys.contains(&key(p))));
        prop_assert!(wide.len() <= all.len());
        // Both directions of a pair are admitted together.
        for p in &narrow {
            prop_assert!(narrow.iter().any(|q| q.head == p.tail && q.tail == p.head));
        }
    }

    #[test]
    fn untruncated_context_round_trips(seed in 0u64..10_000, pick in any::<prop::sample::Index>()) {
        let doc = synth_doc(seed);
        let pairs = enumerate_pairs(&doc, &PairPolicy::all_pairs());
        let pair = pick.get(&pairs);
        let config = SequenceConfig { max_tokens: 100_000, ..SequenceConfig::default() };
        let ex = build_sequence(pair, &doc, &config).unwrap();
        let a = doc.entity(&pair.head).unwrap();
        let b = doc.entity(&pair.tail).unwrap();
        let w = context_window(&doc, a, b, 1);
        let window: Vec<String> =
            doc.tokens[w.first..=w.last].iter().map(|t| t.surface.clone()).collect();
        prop_assert_eq!(ex.unmarked_context(&config).unwrap(), window.clone());
        let context = ex.segments(&config).unwrap().context;
        prop_assert_eq!(strip_markers(context, &config), window);
        prop_assert_eq!(context.len(), w.len() + 4);
    }

    #[test]
    fn softmax_is_a_distribution(logits in prop::collection::vec(-50.0f64..50.0, 1..20)) {
        let p = softmax(&logits);
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        prop_assert!(p.iter().all(|&x| (0.0..=1.0).contains(&x)));
    }

    #[test]
    fn argmax_ignores_shifts(logits in prop::collection::vec(-50.0f64..50.0, 1..20), shift in -100.0f64..100.0) {
        let shifted: Vec<f64> = logits.iter().map(|l| l + shift).collect();
        prop_assert_eq!(argmax(&softmax(&logits)), argmax(&softmax(&shifted)));
        prop_assert_eq!(argmax(&logits), argmax(&shifted));
    }

    #[test]
    fn retention_grows_with_threshold(seed in 0u64..1_000) {
        let docs: Vec<Document> = generate_corpus(seed, 3, &SynthConfig::default())
            .iter()
            .map(|p| p.parse().unwrap())
            .collect();
        let mut prev = (0usize, 0usize);
        for t in 0..32 {
            let s = candidate_stats(&docs, &PairPolicy::token_distance(t), &PairPolicy::same_step()).unwrap();
            prop_assert!(s.total_pairs >= prev.0 && s.gold_relations_retained >= prev.1);
            prop_assert!(s.gold_relations_retained <= s.gold_relations_total);
            prev = (s.total_pairs, s.gold_relations_retained);
        }
    }
}

#[test]
fn argmax_tie_goes_to_lowest_index() {
    assert_eq!(argmax(&[0.2, 0.4, 0.4]), 1);
    assert_eq!(argmax(&[0.5, 0.5]), 0);
}

/// Every step index for a window of `n` around `lo..=hi`, clipped, by
/// enumerating the candidate steps one at a time.
fn brute_window(steps: usize, lo: usize, hi: usize, n: usize) -> (usize, usize) {
    let grow = (n - 1) / 2;
    let inside: Vec<usize> = (0..steps)
        .filter(|&s| s + grow >= lo && s <= hi + grow)
        .collect();
    (inside[0], *inside.last().unwrap())
}

#[test]
fn window_arithmetic_matches_enumeration() {
    for seed in 0..40 {
        let doc = synth_doc(seed);
        let steps = doc.steps.len();
        for a in doc.entities.iter().step_by(3) {
            for b in doc.entities.iter().step_by(5) {
                let sa = doc.step_of_token(a.first_tok);
                let sb = doc.step_of_token(b.first_tok);
                for n in [1, 2, 3, 5, 9] {
                    let (lo, hi) = brute_window(steps, sa.min(sb), sa.max(sb), n);
                    let w = context_window(&doc, a, b, n);
                    assert_eq!((w.first, w.last), (doc.steps[lo].first, doc.steps[hi].last));
                }
            }
        }
    }
    // n = 3 at the first step stops at the document edge.
    let doc = wlprel::corpus::parse_standoff(
        "Add water\nMix well\nSpin down",
        "T1\tAction 0 3\tAdd\nT2\tReagent 4 9\twater",
        "d",
    )
    .unwrap();
    let (a, b) = (&doc.entities[0], &doc.entities[1]);
    let w = context_window(&doc, a, b, 3);
    assert_eq!((w.first, w.last), (doc.steps[0].first, doc.steps[1].last));
}

#[test]
fn gold_retention_at_one_equals_adjacent_fraction() {
    let docs: Vec<Document> = generate_corpus(55, 20, &SynthConfig::default())
        .iter()
        .map(|p| p.parse().unwrap())
        .collect();
    let mut adjacent = 0;
    let mut total = 0;
    for d in &docs {
        for r in &d.gold_relations {
            let a = d.entity(&r.head).unwrap();
            let b = d.entity(&r.tail).unwrap();
            let (lo, hi) = if a.first_tok <= b.first_tok {
                (a, b)
            } else {
                (b, a)
            };
            total += 1;
            if hi.first_tok <= lo.last_tok + 1 {
                adjacent += 1;
            }
        }
    }
    let s = candidate_stats(
        &docs,
        &PairPolicy::token_distance(1),
        &PairPolicy::same_step(),
    )
    .unwrap();
    assert_eq!(s.gold_relations_retained, adjacent);
    assert_eq!(s.gold_relations_total, total);
    let zero = candidate_stats(
        &docs,
        &PairPolicy::token_distance(0),
        &PairPolicy::same_step(),
    )
    .unwrap();
    assert_eq!(zero.total_pairs, 0);
}
