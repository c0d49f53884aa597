use num_bigint::BigInt;
use proptest::prelude::*;
use qloop_core::parse::{parse_cartan, parse_element, parse_scalar, parse_seed, serialize};
use qloop_core::{Element, Error, Laurent, Letter, Scalar};

const CORPUS: &str = include_str!("data/corpus.txt");

#[test]
fn golden_corpus_round_trips() {
    let lines: Vec<&str> = CORPUS.lines().collect();
    assert_eq!(lines.len(), 200);
    for line in lines {
        let x = parse_element(line, 2).unwrap_or_else(|e| panic!("{}: {}", line, e));
        assert_eq!(serialize(&x), line);
        assert_eq!(parse_element(&serialize(&x), 2).unwrap(), x);
    }
}

#[test]
fn canonical_text() {
    let x = parse_element("(1-v^2)/(1) * E(1,0)", 1).unwrap();
    assert_eq!(serialize(&x), "(1 - v^2) * E(1,0)");
    assert_eq!(serialize(&parse_element("E(1,0) - E(1,0)", 1).unwrap()), "0");
    assert_eq!(serialize(&parse_element("2v E(2,1) + E(1,0)E(1,1)", 2).unwrap()), "E(1,0)E(1,1) + (2v) * E(2,1)");
    assert_eq!(serialize(&parse_element("v^-1", 1).unwrap()), "(v^-1)");
    assert_eq!(parse_scalar("(v - v^-1)/(v^2 - v^-2)").unwrap(), parse_scalar("1/(v + v^-1)").unwrap());
}

#[test]
fn syntax_errors_carry_positions() {
    match parse_element("E(1,0) + * E(1,1)", 1) {
        Err(Error::Parse { pos, .. }) => assert_eq!(pos, 9),
        other => panic!("{:?}", other),
    }
    assert!(matches!(parse_element("E(3,0)", 2), Err(Error::UnknownNode { .. })));
    assert!(matches!(parse_element("E(0,0)", 2), Err(Error::UnknownNode { .. })));
    assert!(parse_element("b(1,[2,1)", 1).is_err());
    assert!(parse_scalar("1/(v - v)").is_err());
}

#[test]
fn seeds_and_config() {
    assert!(parse_seed("1", 1).is_ok());
    assert!(parse_seed("b(1,[2,1])", 1).is_ok());
    assert!(parse_seed("b(2,[1])", 1).is_err());
    let c = parse_cartan("rank 2\nrow 2 -1\nrow -1 2\nsym 1 1\n").unwrap();
    assert_eq!(c.rank(), 2);
    assert_eq!(c.b(0, 1), -1);
    assert!(parse_cartan("rank 2\nrow 2 -1\nsym 1 1\n").is_err());
    assert!(parse_cartan("rank 1\nrow 3\nsym 1\n").is_err());
}

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-4i64..=4, -6i64..=6), 1..4).prop_map(|t| Laurent::from_terms(t.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (laurent(), laurent()).prop_map(|(n, d)| if d.is_zero() { Scalar::from_laurent(n) } else { Scalar::from_ratio(n, d).unwrap() })
}

fn letter() -> impl Strategy<Value = Letter> {
    let node = 0usize..2;
    prop_oneof![
        4 => (node.clone(), -4i64..=4).prop_map(|(i, d)| Letter::E(i, d)),
        1 => (node.clone(), 1i64..=3).prop_map(|(i, s)| Letter::H(i, s)),
        1 => (node.clone(), 1i64..=3).prop_map(|(i, s)| Letter::Xi(i, s)),
        1 => (node.clone(), 1i64..=3).prop_map(|(i, s)| Letter::Chi(i, s)),
        1 => (node.clone(), 1i64..=3).prop_map(|(i, s)| Letter::Theta(i, s)),
        1 => (node, prop::collection::vec(1u32..=3, 1..3)).prop_map(|(i, mut p)| {
            p.sort_unstable_by(|a, b| b.cmp(a));
            Letter::Schur(i, p)
        }),
    ]
}

fn element() -> impl Strategy<Value = Element> {
    prop::collection::vec((prop::collection::vec(letter(), 0..4), scalar()), 0..4).prop_map(|terms| {
        let mut x = Element::zero();
        for (w, c) in terms {
            x.add_term(w, c);
        }
        x
    })
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(x in element()) {
        let s = serialize(&x);
        let y = parse_element(&s, 2).unwrap();
        prop_assert_eq!(&y, &x);
        prop_assert_eq!(serialize(&y), s);
    }

    #[test]
    fn scalars_round_trip(c in scalar()) {
        prop_assert_eq!(parse_scalar(&c.to_string()).unwrap(), c);
    }
}
