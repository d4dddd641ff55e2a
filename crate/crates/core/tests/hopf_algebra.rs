mod common;

use common::*;
use num_traits::One;
use rb_renorm::exact::Rational;
use rb_renorm::graph::catalog;
use rb_renorm::hopf::{GeneratorRegistry, HopfElement, HopfError, Monomial, RegistryConfig, TensorElement};

fn library() -> GeneratorRegistry {
    let reg = GeneratorRegistry::new(RegistryConfig::default());
    for (name, g) in [
        ("B", catalog::bubble()),
        ("gamma2", catalog::double_bubble()),
        ("sunset", catalog::sunset()),
        ("triangle", catalog::triangle()),
        ("eye", catalog::eye()),
        ("chain3", catalog::bubble_chain3()),
        ("X", catalog::nested_eye()),
        ("tadpole", catalog::tadpole()),
    ] {
        reg.register(name, g).unwrap();
    }
    reg
}

const LIBRARY: &[&str] = &["B", "gamma2", "sunset", "triangle", "eye", "chain3", "X", "tadpole"];

fn m(names: &[&str]) -> Monomial {
    Monomial::from_names(names.iter().copied())
}

fn t2(terms: &[(&[&str], &[&str], i64)]) -> TensorElement {
    TensorElement::from_terms(2, terms.iter().map(|(a, b, c)| (vec![m(a), m(b)], r(*c))))
}

fn gen(n: &str) -> HopfElement {
    HopfElement::generator(n)
}

#[test]
fn coproduct_examples() {
    let reg = library();
    assert_eq!(reg.coproduct(&gen("B")).unwrap(), t2(&[(&["B"], &[], 1), (&[], &["B"], 1)]));
    assert_eq!(
        reg.coproduct(&gen("gamma2")).unwrap(),
        t2(&[(&["gamma2"], &[], 1), (&[], &["gamma2"], 1), (&["B"], &["B"], 2)])
    );
    assert_eq!(reg.coproduct(&HopfElement::one()).unwrap(), t2(&[(&[], &[], 1)]));
}

/// Hand-derived: three bubbles in a row, and the eye with a two-bubble chain.
#[test]
fn three_loop_coproducts() {
    let reg = library();
    assert_eq!(
        reg.coproduct(&gen("chain3")).unwrap(),
        t2(&[
            (&["chain3"], &[], 1),
            (&[], &["chain3"], 1),
            (&["B"], &["gamma2"], 3),
            (&["gamma2"], &["B"], 2),
            (&["B", "B"], &["B"], 1),
        ])
    );
    assert_eq!(
        reg.coproduct(&gen("X")).unwrap(),
        t2(&[(&["X"], &[], 1), (&[], &["X"], 1), (&["B"], &["eye"], 2), (&["gamma2"], &["B"], 1)])
    );
    assert_eq!(
        reg.coproduct(&gen("sunset")).unwrap(),
        t2(&[(&["sunset"], &[], 1), (&[], &["sunset"], 1), (&["B"], &["tadpole"], 3)])
    );
}

#[test]
fn reduced_coproduct_examples() {
    let reg = library();
    assert!(reg.reduced_coproduct(&gen("B")).unwrap().is_zero());
    assert_eq!(reg.reduced_coproduct(&gen("gamma2")).unwrap(), t2(&[(&["B"], &["B"], 2)]));
    assert!(reg.reduced_coproduct_iterated(&gen("gamma2"), 2).unwrap().is_zero());
    assert_eq!(reg.reduced_coproduct_iterated(&gen("B"), 0), Err(HopfError::BadIteration(0)));
    let three = reg.reduced_coproduct_iterated(&gen("chain3"), 2).unwrap();
    // (id⊗Δ̃) on 3 B⊗gamma2 gives 3·2; (Δ̃⊗id) on 2 gamma2⊗B + B²⊗B gives 2·2 + 2
    assert_eq!(three.coefficient(&[m(&["B"]), m(&["B"]), m(&["B"])]), r(6));
    assert_eq!(three.num_terms(), 1);
    assert!(reg.reduced_coproduct_iterated(&gen("chain3"), 3).unwrap().is_zero());
}

#[test]
fn antipode_and_counit_examples() {
    let reg = library();
    assert_eq!(reg.antipode(&gen("B")).unwrap(), -&gen("B"));
    let expected = &(-&gen("gamma2")) + &HopfElement::from_monomial(m(&["B", "B"]), r(2));
    assert_eq!(reg.antipode(&gen("gamma2")).unwrap(), expected);
    let b2 = HopfElement::from_monomial(m(&["B", "B"]), Rational::one());
    assert_eq!(reg.antipode(&b2).unwrap(), b2);
    let x = &HopfElement::scalar(r(3)) + &gen("B").scale(&r(2));
    assert_eq!(x.counit(), r(3));
}

fn counit_on_leg(t: &TensorElement, leg: usize) -> HopfElement {
    let mut out = HopfElement::zero();
    for (legs, c) in t.terms() {
        if legs[leg].is_one() {
            out.add_term(legs[1 - leg].clone(), c.clone());
        }
    }
    out
}

/// Right-handed recursion `S(Γ) = -Γ - Σ Γ' S(Γ'')`, independent of the library's left-handed one.
fn antipode_right(reg: &GeneratorRegistry, mono: &Monomial) -> HopfElement {
    if mono.is_one() {
        return HopfElement::one();
    }
    if mono.factors().len() > 1 {
        return mono.factors().iter().fold(HopfElement::one(), |acc, g| &acc * &antipode_right(reg, &Monomial::generator(g.clone())));
    }
    let mut s = -&HopfElement::from_monomial(mono.clone(), Rational::one());
    for (legs, c) in reg.reduced_coproduct_monomial(mono).unwrap().terms() {
        let right = antipode_right(reg, &legs[1]);
        s = &s - &(&HopfElement::from_monomial(legs[0].clone(), c.clone()) * &right);
    }
    s
}

#[test]
fn hopf_axioms_on_library() {
    let reg = library();
    for name in LIBRARY {
        let x = gen(name);
        let d = reg.coproduct(&x).unwrap();
        let left = reg.coproduct_on_leg(&d, 0).unwrap();
        let right = reg.coproduct_on_leg(&d, 1).unwrap();
        assert_eq!(left, right, "coassociativity for {name}");

        assert_eq!(counit_on_leg(&d, 0), x, "left counit for {name}");
        assert_eq!(counit_on_leg(&d, 1), x, "right counit for {name}");

        let s_left = reg.antipode_on_leg(&d, 0).unwrap().multiply_legs();
        let s_right = reg.antipode_on_leg(&d, 1).unwrap().multiply_legs();
        assert!(s_left.is_zero(), "m(S⊗id)Δ for {name}: {s_left}");
        assert!(s_right.is_zero(), "m(id⊗S)Δ for {name}: {s_right}");

        assert_eq!(reg.antipode(&x).unwrap(), antipode_right(&reg, &Monomial::generator(*name)), "{name}");

        let deg = reg.degree(name).unwrap();
        for (legs, _) in d.terms() {
            let total = reg.monomial_degree(&legs[0]).unwrap() + reg.monomial_degree(&legs[1]).unwrap();
            assert_eq!(total, deg, "grading for {name}");
        }
    }
}

#[test]
fn coproduct_is_multiplicative() {
    let reg = library();
    let x = &gen("gamma2") * &gen("X");
    let lhs = reg.coproduct(&x).unwrap();
    let rhs = &reg.coproduct(&gen("gamma2")).unwrap() * &reg.coproduct(&gen("X")).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn even_mode_rejects_odd_graphs() {
    let reg = GeneratorRegistry::new(RegistryConfig { even_only: true, ..Default::default() });
    assert_eq!(reg.register("sunset", catalog::sunset()), Err(HopfError::OddEdgeCount("sunset".into())));
    assert_eq!(
        reg.register("bt", catalog::bridged_triangles()),
        Err(HopfError::NotOnePi("bt".into()))
    );
    reg.register("B", catalog::bubble()).unwrap();
    reg.register("gamma2", catalog::double_bubble()).unwrap();
    reg.register("X", catalog::nested_eye()).unwrap();
    reg.register("eye", catalog::eye()).unwrap();
    for name in ["B", "gamma2", "X", "eye"] {
        let d = reg.coproduct(&gen(name)).unwrap();
        assert_eq!(reg.coproduct_on_leg(&d, 0).unwrap(), reg.coproduct_on_leg(&d, 1).unwrap());
        for (legs, _) in d.terms() {
            for leg in legs {
                for f in leg.factors() {
                    assert_eq!(reg.graph(f).unwrap().num_edges() % 2, 0);
                }
            }
        }
    }
}

#[test]
fn isomorphic_subgraphs_resolve_to_explicit_names() {
    let reg = library();
    reg.coproduct(&gen("X")).unwrap();
    assert!(reg.names().iter().all(|n| !n.starts_with("auto")));
    let fresh = GeneratorRegistry::new(RegistryConfig::default());
    fresh.register("gamma2", catalog::double_bubble()).unwrap();
    let d = fresh.coproduct(&gen("gamma2")).unwrap();
    assert_eq!(d.coefficient(&[m(&["auto1"]), m(&["auto1"])]), r(2));
}

#[test]
fn json_round_trip() {
    let reg = library();
    for name in LIBRARY {
        let d = reg.coproduct(&gen(name)).unwrap();
        assert_eq!(TensorElement::from_json_value(&d.to_json_value()).unwrap(), d, "{name}");
        let s = reg.antipode(&gen(name)).unwrap();
        assert_eq!(HopfElement::from_json_value(&s.to_json_value()).unwrap(), s, "{name}");
    }
    let text = serde_json::json!([["-1/2", ["B", "B"]], ["3", []]]);
    let x = HopfElement::from_json_value(&text).unwrap();
    assert_eq!(x.to_json_value(), serde_json::json!([["3", []], ["-1/2", ["B", "B"]]]));
    assert!(HopfElement::from_json_value(&serde_json::json!({"B": 1})).is_err());
}
