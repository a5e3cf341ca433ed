use fracterm_core::term::{classify, denom, format, is_fracterm, num, parse, Decoration, Format, Term};
use proptest::prelude::*;

fn arb_decorated() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        4 => (-99i64..=99).prop_map(Term::lit),
        1 => prop::sample::select(vec!["x", "y", "p"]).prop_map(Term::var),
    ];
    let decoration = prop::option::of(prop_oneof![Just(Decoration::Ft), Just(Decoration::Fv)]);
    leaf.prop_recursive(4, 32, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::mul(a, b)),
            (inner.clone(), inner, decoration.clone()).prop_map(|(a, b, d)| match d {
                Some(d) => Term::div_decorated(a, b, d),
                None => Term::div(a, b),
            }),
        ]
    })
}

proptest! {
    #[test]
    fn every_format_round_trips(t in arb_decorated()) {
        for f in Format::ALL {
            let text = format(&t, f);
            let back = parse(&text, f).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
            prop_assert_eq!(&back, &t, "{} in {:?}", text, f);
        }
    }

    #[test]
    fn fracterms_split_and_reassemble(t in arb_decorated()) {
        if is_fracterm(&t) {
            let whole = Term::div(num(&t).unwrap(), denom(&t).unwrap());
            prop_assert_eq!(whole.erase_decorations(), t.erase_decorations());
        } else {
            prop_assert!(num(&t).is_err() && denom(&t).is_err());
        }
    }

    #[test]
    fn classify_ignores_decorations(t in arb_decorated()) {
        prop_assert_eq!(classify(&t), classify(&t.erase_decorations()));
    }
}

/// All terms of depth at most `depth` over the literals -9..=9.
fn terms_up_to(depth: usize) -> Vec<Term> {
    let mut all: Vec<Term> = (-9..=9).map(Term::lit).collect();
    for _ in 1..depth {
        let prev = all.clone();
        let mut next = prev.clone();
        next.extend(prev.iter().cloned().map(Term::neg));
        for a in &prev {
            for b in &prev {
                next.push(Term::add(a.clone(), b.clone()));
                next.push(Term::sub(a.clone(), b.clone()));
                next.push(Term::mul(a.clone(), b.clone()));
                next.push(Term::div(a.clone(), b.clone()));
            }
        }
        all = next;
    }
    all
}

fn chain_holds(t: &Term) -> bool {
    let f = classify(t);
    (!f.simplified || f.simple) && (!f.simple || f.flat) && (!f.flat || f.is_fracterm)
}

#[test]
fn taxonomy_chain_holds_up_to_depth_3() {
    let depth2 = terms_up_to(2);
    let mut checked = 0usize;
    for t in &depth2 {
        assert!(chain_holds(t), "{t}");
        checked += 1;
        assert!(chain_holds(&Term::neg(t.clone())), "-{t}");
        checked += 1;
    }
    // Depth 3 is built on the fly rather than stored.
    for a in &depth2 {
        for b in &depth2 {
            for t in [
                Term::add(a.clone(), b.clone()),
                Term::sub(a.clone(), b.clone()),
                Term::mul(a.clone(), b.clone()),
                Term::div(a.clone(), b.clone()),
            ] {
                assert!(chain_holds(&t), "{t}");
                checked += 1;
            }
        }
    }
    assert!(checked > 8_000_000);
}

#[test]
fn parse_examples() {
    let t = |s: &str| parse(s, Format::Inline).unwrap();
    assert_eq!(t("1/2"), Term::div(Term::lit(1), Term::lit(2)));
    assert_eq!(
        t("(1+2/3)/5"),
        Term::div(Term::add(Term::lit(1), Term::div(Term::lit(2), Term::lit(3))), Term::lit(5))
    );
    assert_eq!(t("2/(4/5)"), Term::div(Term::lit(2), Term::div(Term::lit(4), Term::lit(5))));
    assert_eq!(t("-3/-9"), Term::div(Term::lit(-3), Term::lit(-9)));
    assert_eq!(parse("1:2", Format::Colon).unwrap(), t("1/2"));
    assert_eq!(format(&t("1/2"), Format::Colon), "1:2");
    assert_eq!(format(&t("1/0"), Format::Inline), "1/0");
    assert!(is_fracterm(&t("(1/0)/0")));
    assert!(!is_fracterm(&t("1+2")));
    assert_eq!(num(&t("2/(4/5)")).unwrap(), Term::lit(2));
    assert_eq!(denom(&t("1/2")).unwrap(), Term::lit(2));
}
