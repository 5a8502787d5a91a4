use super::*;
use crate::cartan::{CartanDatum, CartanType};
use crate::coeff::{qint, LaurentHalf};

pub(crate) fn pres(name: &str, variant: Variant) -> Presentation {
    Presentation::new(CartanDatum::parse(name).unwrap(), variant).unwrap()
}

fn parse_in(p: &Presentation, s: &str) -> Element {
    parse(s, p).unwrap()
}

#[test]
fn ef_commutator_a1() {
    let p = pres("A1", Variant::Uhat);
    let x = parse_in(&p, "E1*F1");
    let expect = parse_in(&p, "F1*E1 + (v^(-1) - v)*K1 - (v^(-1) - v)*K1'");
    assert_eq!(x, expect);
}

#[test]
fn k_commutation() {
    let p = pres("A1", Variant::Uhat);
    assert_eq!(parse_in(&p, "K1*E1"), parse_in(&p, "v^2*E1*K1"));
    assert_eq!(parse_in(&p, "K1*F1"), parse_in(&p, "v^(-2)*F1*K1"));
    assert_eq!(parse_in(&p, "K1'*E1"), parse_in(&p, "v^(-2)*E1*K1'"));
}

#[test]
fn serre_relation_normalizes_to_zero() {
    let p = pres("A2", Variant::Uhat);
    let x = parse_in(&p, "E1*E1*E2 - [2]*E1*E2*E1 + E2*E1*E1");
    assert!(x.is_zero());
    let y = parse_in(&p, "F2*F2*F1 - [2]*F2*F1*F2 + F1*F2*F2");
    assert!(y.is_zero());
}

#[test]
fn all_defining_relations_vanish() {
    for name in ["A1", "A2", "A3", "D4"] {
        let p = pres(name, Variant::Uhat);
        let n = p.rank();
        for i in 0..n {
            for j in 0..n {
                let e = |k: usize| Element::generator(&p, Gen::E(k), 1).unwrap();
                let f = |k: usize| Element::generator(&p, Gen::F(k), 1).unwrap();
                let kk = |k: usize| Element::generator(&p, Gen::K(k), 1).unwrap();
                let kp = |k: usize| Element::generator(&p, Gen::Kp(k), 1).unwrap();
                // (2.1): [E_i, F_j] = delta_{ij} (v^{-1} - v)(K_i - K_i')
                let comm = e(i).mul(&f(j)).unwrap().sub(&f(j).mul(&e(i)).unwrap()).unwrap();
                let rhs = if i == j {
                    let scal = RatFunc::from(&LaurentHalf::v_pow(-1) - &LaurentHalf::v_pow(1));
                    kk(i).sub(&kp(i)).unwrap().scale(&scal)
                } else {
                    Element::zero(&p)
                };
                assert_eq!(comm, rhs, "EF relation failed for {name} i={i} j={j}");
                // K commutations (2.1 second part)
                for (a, b) in [(kk(i), kk(j)), (kk(i), kp(j)), (kp(i), kp(j))] {
                    assert_eq!(
                        a.mul(&b).unwrap(),
                        b.mul(&a).unwrap(),
                        "K commutation failed for {name}"
                    );
                }
                // (2.2)/(2.3)
                let c = p.datum().c(i, j);
                assert_eq!(
                    kk(i).mul(&e(j)).unwrap(),
                    e(j).mul(&kk(i)).unwrap().scale(&RatFunc::v_pow(c)),
                    "K E relation failed"
                );
                assert_eq!(
                    kk(i).mul(&f(j)).unwrap(),
                    f(j).mul(&kk(i)).unwrap().scale(&RatFunc::v_pow(-c)),
                    "K F relation failed"
                );
                assert_eq!(
                    kp(i).mul(&e(j)).unwrap(),
                    e(j).mul(&kp(i)).unwrap().scale(&RatFunc::v_pow(-c)),
                    "K' E relation failed"
                );
                assert_eq!(
                    kp(i).mul(&f(j)).unwrap(),
                    f(j).mul(&kp(i)).unwrap().scale(&RatFunc::v_pow(c)),
                    "K' F relation failed"
                );
                // (2.4)/(2.5): quantum Serre
                if i != j {
                    let m = 1 - c;
                    let mut serre_e = Element::zero(&p);
                    let mut serre_f = Element::zero(&p);
                    for r in 0..=m {
                        let coeff = {
                            let b = crate::coeff::qbinom(m, r as u32).unwrap();
                            let sign = if r % 2 == 0 { 1 } else { -1 };
                            RatFunc::from(b).pow(1).unwrap().scale_sign(sign)
                        };
                        let term_e = e(i)
                            .pow(r as u32)
                            .unwrap()
                            .mul(&e(j))
                            .unwrap()
                            .mul(&e(i).pow((m - r) as u32).unwrap())
                            .unwrap()
                            .scale(&coeff);
                        serre_e = serre_e.add(&term_e).unwrap();
                        let term_f = f(i)
                            .pow(r as u32)
                            .unwrap()
                            .mul(&f(j))
                            .unwrap()
                            .mul(&f(i).pow((m - r) as u32).unwrap())
                            .unwrap()
                            .scale(&coeff);
                        serre_f = serre_f.add(&term_f).unwrap();
                    }
                    assert!(serre_e.is_zero(), "E Serre failed for {name} i={i} j={j}");
                    assert!(serre_f.is_zero(), "F Serre failed for {name} i={i} j={j}");
                }
            }
        }
    }
}

trait ScaleSign {
    fn scale_sign(self, s: i64) -> RatFunc;
}

impl ScaleSign for RatFunc {
    fn scale_sign(self, s: i64) -> RatFunc {
        if s < 0 {
            -&self
        } else {
            self
        }
    }
}

#[test]
fn utilde_k_inverses() {
    let p = pres("A1", Variant::Utilde);
    let x = parse_in(&p, "K1*K1^-1");
    assert!(x == Element::one(&p));
    let y = parse_in(&p, "K1^(-1)*E1*K1");
    assert_eq!(y, parse_in(&p, "v^(-2)*E1"));
    // Uhat rejects inverses.
    let ph = pres("A1", Variant::Uhat);
    assert!(parse("K1^-1", &ph).is_err());
}

#[test]
fn heisenberg_projection() {
    let p = pres("A1", Variant::Uhat);
    let x = parse_in(&p, "E1*F1");
    let hplus = x.project_heisenberg(true).unwrap();
    let hp = p.sibling(Variant::HeisPlus);
    let expect = parse_in(&hp, "F1*E1 + (v^(-1) - v)*K1");
    assert_eq!(hplus, expect);
    // K1' itself projects to zero.
    let kp = parse_in(&p, "K1'");
    assert!(kp.project_heisenberg(true).unwrap().is_zero());
    let kk = parse_in(&p, "K1");
    assert_eq!(kk.project_heisenberg(true).unwrap(), parse_in(&hp, "K1"));
    // Multiplicativity on a sample.
    let a = parse_in(&p, "E1*E1 + K1*F1");
    let b = parse_in(&p, "F1 + K1'");
    let lhs = a.mul(&b).unwrap().project_heisenberg(true).unwrap();
    let rhs = a
        .project_heisenberg(true)
        .unwrap()
        .mul(&b.project_heisenberg(true).unwrap())
        .unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn iota_split_sections() {
    let p = pres("A1", Variant::Uhat);
    let hp = p.sibling(Variant::HeisPlus);
    let hm = p.sibling(Variant::HeisMinus);
    // H+ section: identity on representatives.
    let h = parse_in(&hp, "F1*E1 - v*K1");
    let lifted = h.iota_split().unwrap();
    assert_eq!(lifted, parse_in(&p, "F1*E1 - v*K1"));
    assert_eq!(lifted.project_heisenberg(true).unwrap(), h);
    // H- section: E-before-F words.
    let hminus = parse_in(&hm, "E1*F1");
    let lifted = hminus.iota_split().unwrap();
    assert_eq!(lifted, parse_in(&p, "E1*F1"));
    assert_eq!(lifted.project_heisenberg(false).unwrap(), hminus);
    // A normalized H- element round-trips too.
    let g = parse_in(&hm, "F1*E1");
    let lifted = g.iota_split().unwrap();
    assert_eq!(lifted.project_heisenberg(false).unwrap(), g);
    assert_eq!(lifted, parse_in(&p, "F1*E1 + (v^(-1)-v)*K1"));
}

#[test]
fn gamma_degree_examples() {
    let p = pres("A1", Variant::Uhat);
    let k = parse_in(&p, "K1");
    let d = k.gamma_degree().unwrap();
    assert_eq!(d.plus, vec![1]);
    assert_eq!(d.minus, vec![1]);
    let ef = parse_in(&p, "E1*F1");
    let d = ef.gamma_degree().unwrap();
    assert_eq!(d.plus, vec![1]);
    assert_eq!(d.minus, vec![1]);
    assert!(parse_in(&p, "E1 + F1").gamma_degree().is_none());
    // Additivity on homogeneous elements.
    let a = parse_in(&p, "E1*K1");
    let b = parse_in(&p, "F1*F1");
    let da = a.gamma_degree().unwrap();
    let db = b.gamma_degree().unwrap();
    let dab = a.mul(&b).unwrap().gamma_degree().unwrap();
    assert_eq!(dab, da.add(&db));
}

#[test]
fn parser_errors_carry_positions() {
    let p = pres("A1", Variant::Uhat);
    match parse("E1*", &p) {
        Err(crate::error::Error::Parse { pos, .. }) => assert_eq!(pos, 3),
        other => panic!("expected parse error, got {other:?}"),
    }
    assert!(parse("E9", &p).is_err());
    match parse("E1 @ F1", &p) {
        Err(crate::error::Error::Parse { pos, .. }) => assert_eq!(pos, 3),
        other => panic!("expected parse error, got {other:?}"),
    }
}

#[test]
fn parser_scalars() {
    let p = pres("A1", Variant::Uhat);
    assert_eq!(parse_in(&p, "[3]"), Element::scalar(&p, RatFunc::from(qint(3))));
    assert_eq!(parse_in(&p, "v^(1/2)*v^(1/2)"), Element::scalar(&p, RatFunc::v_pow(1)));
    assert_eq!(parse_in(&p, "v^(-3/2)"), Element::scalar(&p, RatFunc::v_half_pow(-3)));
    assert_eq!(parse_in(&p, "2 - 2"), Element::zero(&p));
    // K'1 and K1' are both accepted.
    assert_eq!(parse_in(&p, "K'1"), parse_in(&p, "K1'"));
}

#[test]
fn display_round_trips_through_parser() {
    let p = pres("A2", Variant::Uhat);
    for text in [
        "E1*F1",
        "E1*E2*F1*K1 - [2]*K2'",
        "(v - v^(-1))*K1 + E1*E1*E2",
        "F2*E1 + v^(1/2)*K1*K2'",
    ] {
        let x = parse_in(&p, text);
        let rendered = element_to_text(&x);
        let back = parse_in(&p, &rendered);
        assert_eq!(x, back, "display round-trip failed for {text} -> {rendered}");
    }
}

#[test]
fn associativity_samples() {
    let p = pres("A2", Variant::Uhat);
    let words = ["E1*F1", "E2*K1", "F1*F2", "E1*E1", "K1'*F2", "E2*F2"];
    for x in words.iter().map(|s| parse_in(&p, s)) {
        for y in words.iter().map(|s| parse_in(&p, s)) {
            for z in words.iter().map(|s| parse_in(&p, s)) {
                let a = x.mul(&y).unwrap().mul(&z).unwrap();
                let b = x.mul(&y.mul(&z).unwrap()).unwrap();
                assert_eq!(a, b);
            }
        }
    }
}

#[test]
fn pbw_root_vector_a2() {
    let p = pres("A2", Variant::Uhat);
    // Reduced word (1,2,1): middle root vector is the inverse-braid image,
    // E_{a1+a2} = (v^{1/2} E2 E1 - v^{-1/2} E1 E2) / (v - v^{-1}).
    let m = PBWMonomial { a: vec![0, 0, 0], c: vec![0, 1, 0], mu: vec![0, 0], nu: vec![0, 0] };
    let x = pbw_element(&p, &m).unwrap();
    let expect_num = parse_in(&p, "v^(1/2)*E2*E1 - v^(-1/2)*E1*E2");
    let den = RatFunc::from(&LaurentHalf::v_pow(1) - &LaurentHalf::v_pow(-1));
    let expect = expect_num.scale(&den.inverse().unwrap());
    assert_eq!(x, expect);
}

#[test]
fn pbw_identity_and_simple() {
    let p = pres("A1", Variant::Uhat);
    let id = PBWMonomial::identity(1, 1);
    assert_eq!(pbw_element(&p, &id).unwrap(), Element::one(&p));
    let f = PBWMonomial { a: vec![1], c: vec![0], mu: vec![0], nu: vec![0] };
    assert_eq!(pbw_element(&p, &f).unwrap(), parse_in(&p, "F1"));
}

#[test]
fn expand_pbw_examples() {
    let p = pres("A1", Variant::Uhat);
    let x = parse_in(&p, "E1*F1");
    let coords = expand_pbw(&x).unwrap();
    assert_eq!(coords.len(), 3);
    let fe = PBWMonomial { a: vec![1], c: vec![1], mu: vec![0], nu: vec![0] };
    let k = PBWMonomial { a: vec![0], c: vec![0], mu: vec![1], nu: vec![0] };
    let kp = PBWMonomial { a: vec![0], c: vec![0], mu: vec![0], nu: vec![1] };
    assert!(coords[&fe].is_one());
    assert_eq!(
        coords[&k],
        RatFunc::from(&LaurentHalf::v_pow(-1) - &LaurentHalf::v_pow(1))
    );
    assert_eq!(
        coords[&kp],
        RatFunc::from(&LaurentHalf::v_pow(1) - &LaurentHalf::v_pow(-1))
    );
    assert!(expand_pbw(&Element::zero(&p)).unwrap().is_empty());
}

#[test]
fn pbw_round_trip_small() {
    let p = pres("A2", Variant::Uhat);
    for m in [
        PBWMonomial { a: vec![1, 0, 1], c: vec![0, 1, 0], mu: vec![1, 0], nu: vec![0, 0] },
        PBWMonomial { a: vec![0, 2, 0], c: vec![1, 0, 1], mu: vec![0, 1], nu: vec![1, 0] },
        PBWMonomial { a: vec![1, 1, 1], c: vec![0, 0, 2], mu: vec![0, 0], nu: vec![0, 2] },
    ] {
        let x = pbw_element(&p, &m).unwrap();
        let coords = expand_pbw(&x).unwrap();
        assert_eq!(coords.len(), 1, "PBW expansion of a monomial must be itself");
        assert!(coords[&m].is_one());
    }
}

#[test]
fn json_round_trip() {
    let p = pres("A1", Variant::Utilde);
    let x = parse_in(&p, "E1*F1 - v^(1/2)*K1^-1 + [2]*K1'");
    let j = element_to_json(&x).unwrap();
    let back = element_from_json(&p, &j).unwrap();
    assert_eq!(x, back);
}
