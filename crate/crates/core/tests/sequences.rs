use wlprel::candidates::{enumerate_pairs, PairPolicy};
use wlprel::corpus::{parse_standoff, Document};
use wlprel::error::SequenceError;
use wlprel::sequence::{build_sequence, context_window, insert_markers, SequenceConfig};
use wlprel::CandidatePair;

fn pair(doc: &Document, head: &str, tail: &str) -> CandidatePair {
    enumerate_pairs(doc, &PairPolicy::all_pairs())
        .into_iter()
        .find(|p| p.head == head && p.tail == tail)
        .unwrap()
}

/// A one-step protocol of `words` filler tokens with two one-token mentions
/// at `a` and `b`.
fn long_step(words: usize, a: usize, b: usize) -> Document {
    let toks: Vec<String> = (0..words).map(|i| format!("w{i}")).collect();
    let text = toks.join(" ");
    let offset = |i: usize| toks[..i].iter().map(|t| t.len() + 1).sum::<usize>();
    let ann = format!(
        "T1\tReagent {} {}\t{}\nT2\tLocation {} {}\t{}\n",
        offset(a),
        offset(a) + toks[a].len(),
        toks[a],
        offset(b),
        offset(b) + toks[b].len(),
        toks[b],
    );
    parse_standoff(&text, &ann, "long").unwrap()
}

/// Drop one unprotected token at a time, always the one farthest from any
/// protected token, the later one on ties.
fn reference_trim(tokens: &[String], protected: &[bool], keep: usize) -> Vec<String> {
    let mut live: Vec<(String, bool, usize)> = tokens
        .iter()
        .zip(protected)
        .enumerate()
        .map(|(i, (t, &p))| (t.clone(), p, i))
        .collect();
    while live.len() > keep {
        let dist = |pos: usize| {
            let orig = live[pos].2;
            live.iter()
                .filter(|x| x.1)
                .map(|x| x.2.abs_diff(orig))
                .min()
                .unwrap()
        };
        let victim = (0..live.len())
            .filter(|&i| !live[i].1)
            .max_by_key(|&i| (dist(i), live[i].2))
            .unwrap();
        live.remove(victim);
    }
    live.into_iter().map(|x| x.0).collect()
}

#[test]
fn long_context_is_trimmed_to_budget() {
    let cfg = SequenceConfig::default();
    for (a, b) in [(0, 1), (100, 150), (199, 3), (60, 61), (10, 190)] {
        let doc = long_step(200, a, b);
        let p = pair(&doc, "T1", "T2");
        let ex = build_sequence(&p, &doc, &cfg).unwrap();
        assert_eq!(ex.tokens.len(), 100, "{a},{b}");
        ex.validate(&cfg).unwrap();

        let (ea, eb) = (doc.entity("T1").unwrap(), doc.entity("T2").unwrap());
        let marked = insert_markers(&doc, context_window(&doc, ea, eb, 1), ea, eb, &cfg);
        let expected = reference_trim(&marked.tokens, &marked.protected, 100 - 9);
        assert_eq!(ex.segments(&cfg).unwrap().context, &expected[..], "{a},{b}");
    }
}

#[test]
fn trimming_is_symmetric_around_a_single_pair() {
    let cfg = SequenceConfig::default();
    let doc = long_step(200, 100, 101);
    let ex = build_sequence(&pair(&doc, "T1", "T2"), &doc, &cfg).unwrap();
    let ctx = ex.segments(&cfg).unwrap().context;
    // A 9-token prefix leaves 91 context slots: 4 markers, 2 mentions and
    // 85 neighbours, with the odd one kept on the left.
    assert_eq!(ctx.len(), 91);
    assert_eq!(ctx.first().unwrap(), "w57");
    assert_eq!(ctx.last().unwrap(), "w143");
}

#[test]
fn budget_exhaustion_is_an_error() {
    let cfg = SequenceConfig {
        max_tokens: 14,
        ..SequenceConfig::default()
    };
    // 7 structural tokens, 2 mentions twice over and 4 markers need 15.
    let doc = long_step(30, 2, 20);
    let err = build_sequence(&pair(&doc, "T1", "T2"), &doc, &cfg).unwrap_err();
    assert!(matches!(
        err,
        SequenceError::BudgetExhausted {
            needed: 15,
            max_tokens: 14
        }
    ));
}

#[test]
fn repeated_surface_strings_mark_the_right_occurrence() {
    let text = "Add 5mL water then 5mL ethanol";
    let ann = "T1\tAmount 4 7\t5mL\nT2\tReagent 8 13\twater\nT3\tAmount 19 22\t5mL\nT4\tReagent 23 30\tethanol\n";
    let doc = parse_standoff(text, ann, "d").unwrap();
    let cfg = SequenceConfig::default();
    let ex = build_sequence(&pair(&doc, "T3", "T4"), &doc, &cfg).unwrap();
    let ctx: Vec<&str> = ex
        .segments(&cfg)
        .unwrap()
        .context
        .iter()
        .map(String::as_str)
        .collect();
    assert_eq!(
        ctx,
        ["Add", "5mL", "water", "then", "[EntA]", "5mL", "[EntA]", "[EntB]", "ethanol", "[EntB]"]
    );
}
