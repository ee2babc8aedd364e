use super::*;
use crate::error::Error;

const EVEN_CYCLE: &str = "Exists[ttw<=2] X. forall x. forall y. (E(x,y) -> ((x in X & !(y in X)) | (!(x in X) & y in X)))";

#[test]
fn parses_basic_formulas() {
    let f = parse_formula("exists x. exists y. E(x,y)").unwrap();
    assert_eq!(
        f,
        Formula::exists("x", Formula::exists("y", Formula::edge("x", "y")))
    );
    assert_eq!(fragment_of(&f), FragmentTag::Fo);
    assert_eq!(ranks(&f).quantifier_rank, 2);
}

#[test]
fn even_cycle_formula() {
    let f = parse_formula(EVEN_CYCLE).unwrap();
    assert_eq!(
        ranks(&f),
        Ranks {
            quantifier_rank: 3,
            dp_rank: 0,
            p_rank: 2
        }
    );
    assert_eq!(fragment_of(&f), FragmentTag::Cmso(vec![ParamKind::Ttw]));
    assert_eq!(fragment_of(&f).to_string(), "CMSO/ttw");
}

#[test]
fn cardmod_errors() {
    let e = parse_formula_with_free("card(X) % 2 = 3", &["X"]).unwrap_err();
    assert!(e.to_string().contains("residue ≥ modulus"), "{e}");
    assert!(matches!(e, Error::Semantic(_)));
    assert!(parse_formula_with_free("card(X) % 0 = 0", &["X"]).is_err());
    let f = parse_formula_with_free("card(X) % 7 = 1", &["X"]).unwrap();
    assert_eq!(warnings(&f).len(), 1);
}

#[test]
fn scope_and_syntax_errors() {
    assert!(matches!(parse_formula("E(x,y)"), Err(Error::Scope(_))));
    assert!(matches!(
        parse_formula("exists x. x in y"),
        Err(Error::Syntax { .. })
    ));
    match parse_formula("exists x. E(x,x) &") {
        Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 18),
        other => panic!("{other:?}"),
    }
    assert!(parse_formula("exists X. true").is_err());
    assert!(parse_formula("Exists[tw<=1] X. true").is_err());
    assert!(parse_formula("exists x. E(x,x) $").is_err());
}

#[test]
fn precedence() {
    let f = parse_formula_with_free("a = b | a = c & b = c -> a = a <-> b = b", &["a", "b", "c"]).unwrap();
    let expect = Formula::Iff(
        Box::new(Formula::implies(
            Formula::or(
                Formula::eq("a", "b"),
                Formula::and(Formula::eq("a", "c"), Formula::eq("b", "c")),
            ),
            Formula::eq("a", "a"),
        )),
        Box::new(Formula::eq("b", "b")),
    );
    assert_eq!(f, expect);
    let g = parse_formula_with_free("a = a -> b = b -> c = c", &["a", "b", "c"]).unwrap();
    assert!(matches!(&g, Formula::Implies(_, r) if matches!(**r, Formula::Implies(..))));
    let h = parse_formula("exists x. x = x & exists y. y = x").unwrap();
    assert!(matches!(&h, Formula::Exists(_, b) if matches!(**b, Formula::And(..))));
}

#[test]
fn printer_round_trip() {
    let texts = [
        EVEN_CYCLE,
        "exists x. exists y. E(x,y)",
        "(exists x. x = x) & (exists y. !(y = y))",
        "forall a. forall b. forall c. forall d. (dp(a,c; b,d) | conn(a,b | c,d) | !E(a,b))",
        "exists x. ttwle(1; x,x) & color(red,x)",
        "Exists[size<=3] Y. card(Y) % 2 = 1 & !(true | false)",
        "exists x. (x = x -> x = x) -> x = x",
        "exists x. x = x -> x = x -> x = x",
        "exists x. !!E(x,x) <-> (E(x,x) <-> true)",
    ];
    for t in texts {
        let f = parse_formula(t).unwrap();
        let printed = f.to_string();
        assert_eq!(parse_formula(&printed).unwrap(), f, "{t} printed as {printed}");
    }
    assert_eq!(
        parse_formula("(exists x. (E(x,x)))").unwrap().to_string(),
        "exists x. E(x,x)"
    );
}

#[test]
fn prenex_shapes() {
    let f = parse_formula("(exists x. E(x,x)) & (exists y. y = y)").unwrap();
    let p = to_prenex(&f);
    assert!(is_prenex(&p));
    assert_eq!(p.to_string(), "exists x. exists y. E(x,x) & y = y");

    let f = parse_formula_with_free("!(Exists[ttw<=2] X. card(X) % 2 = 0)", &[]).unwrap();
    assert_eq!(
        to_prenex(&f).to_string(),
        "Forall[ttw<=2] X. !(card(X) % 2 = 0)"
    );

    let already = parse_formula(EVEN_CYCLE).unwrap();
    assert_eq!(to_prenex(&already), already);

    let clash = parse_formula("(exists x. E(x,x)) | (forall x. x = x)").unwrap();
    let p = to_prenex(&clash);
    assert!(is_prenex(&p));
    assert_eq!(p.to_string(), "exists x. forall x_1. E(x,x) | x_1 = x_1");
}

#[test]
fn prenex_lifts_elements_over_sets() {
    let f = parse_formula("forall x. Exists[size<=2] X. x in X").unwrap();
    let p = to_prenex(&f);
    assert!(is_prenex(&p), "{p}");
    assert!(matches!(p, Formula::SetForall(b, ..) if b.kind == ParamKind::Size && b.k == 1));
    assert_eq!(ranks(&p).p_rank, ranks(&f).p_rank);
}

#[test]
fn fragments() {
    let dp = parse_formula("exists a. exists b. dp(a,b)").unwrap();
    assert_eq!(fragment_of(&dp), FragmentTag::FoDp);
    let conn = parse_formula("exists a. exists b. conn(a,b)").unwrap();
    assert_eq!(fragment_of(&conn), FragmentTag::FoConn);
    let both = parse_formula("Exists[ttw<=1] X. exists a. exists b. a in X & dp(a,b)").unwrap();
    assert_eq!(fragment_of(&both).to_string(), "CMSO/ttw+dp");
    assert_eq!(fragment_of(&parse_formula("exists x. E(x,x)").unwrap()), FragmentTag::Fo);
    let dp4 = parse_formula("exists a. exists b. exists c. exists d. dp(a,b; c,d)").unwrap();
    assert_eq!(ranks(&dp4).dp_rank, 2);
    assert_eq!(ranks(&Formula::True), Ranks::default());
}

#[test]
fn encoding_counts_digits() {
    let a = parse_formula("Exists[size<=1] X. true").unwrap();
    let b = parse_formula("Exists[size<=100] X. true").unwrap();
    assert_eq!(encoding_length(&b), encoding_length(&a) + 2);
}
