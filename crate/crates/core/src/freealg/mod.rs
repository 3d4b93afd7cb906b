//! Free associative algebra over [`Scalar`](crate::scalars::Scalar) with
//! oriented rewrite rules, normal forms and critical-pair checking.

mod confluence;
mod element;
mod presentation;

pub use confluence::{overlap_confluence, ConfluenceReport, CriticalPair};
pub use element::{Element, Gen, Word};
pub use presentation::{default_step_budget, format_linear, Presentation, RewriteRule, DEFAULT_STEP_BUDGET};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::scalars::{ParamSet, Scalar};

    fn qplane() -> Presentation {
        let mut p = Presentation::new("qplane", ParamSet::new(["q"]).unwrap(), ["x", "y"]).unwrap();
        let yx = p.word(&["y", "x"]).unwrap();
        let xy = p.word(&["x", "y"]).unwrap();
        p.add_rule(yx, Element::term(xy, Scalar::param("q"))).unwrap();
        p
    }

    #[test]
    fn qplane_normal_form() {
        let p = qplane();
        let yx = Element::from_word(p.word(&["y", "x"]).unwrap());
        let nf = p.normal_form(&yx).unwrap();
        assert_eq!(nf, Element::term(p.word(&["x", "y"]).unwrap(), Scalar::param("q")));
        assert_eq!(p.show(&nf), "q*x.y");
    }

    #[test]
    fn unit_is_normal() {
        let p = qplane();
        assert_eq!(p.normal_form(&Element::one()).unwrap(), Element::one());
    }

    #[test]
    fn yyxx_reduces_with_q_to_the_fourth() {
        let p = qplane();
        let w = Element::from_word(p.word(&["y", "y", "x", "x"]).unwrap());
        let nf = p.normal_form(&w).unwrap();
        let q4 = Scalar::param("q").pow(4).unwrap();
        assert_eq!(nf, Element::term(p.word(&["x", "x", "y", "y"]).unwrap(), q4));
    }

    #[test]
    fn commutator_antisymmetry_and_self() {
        let p = qplane();
        let x = p.gen_elem("x").unwrap();
        let y = p.gen_elem("y").unwrap();
        assert!(p.commutator(&x, &x).unwrap().is_zero());
        let a = p.commutator(&x, &y).unwrap();
        let b = p.commutator(&y, &x).unwrap();
        assert_eq!(a, -&b);
    }

    #[test]
    fn single_rule_has_no_overlaps() {
        let r = overlap_confluence(&qplane(), 4).unwrap();
        assert_eq!(r.pairs_checked, 0);
        assert!(r.is_confluent());
    }

    #[test]
    fn degree_bound_below_rule_length_is_rejected() {
        assert!(overlap_confluence(&qplane(), 1).is_err());
    }

    #[test]
    fn misoriented_rule_rejected() {
        let mut p = qplane();
        let x = p.word(&["x"]).unwrap();
        let xx = p.word(&["x", "x"]).unwrap();
        let err = p.add_rule(x, Element::from_word(xx)).unwrap_err();
        assert!(matches!(err, Error::InvalidRule { .. }));
    }

    #[test]
    fn budget_exceeded() {
        let mut p = qplane();
        p.set_budget(3);
        let w = Element::from_word(p.word(&["y", "y", "y", "x", "x", "x"]).unwrap());
        assert!(matches!(p.normal_form(&w), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn inconsistent_rules_are_reported() {
        // x.x -> y and x.x.x has the self-overlap x.(x.x) vs (x.x).x.
        let mut p = Presentation::new("t", ParamSet::default(), ["y", "x"]).unwrap();
        let xx = p.word(&["x", "x"]).unwrap();
        p.add_rule(xx, p.gen_elem("y").unwrap()).unwrap();
        let r = overlap_confluence(&p, 3).unwrap();
        assert_eq!(r.pairs_checked, 1);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(p.show(&r.violations[0].residual), "-x.y + y.x");
    }

    #[test]
    fn random_strategy_agrees() {
        let p = qplane();
        let w = Element::from_word(p.word(&["y", "x", "y", "x", "y"]).unwrap());
        let mut k = 0usize;
        let nf1 = p.normal_form_with(&w, &mut |n| {
            k += 1;
            k % n
        });
        assert_eq!(nf1.unwrap(), p.normal_form(&w).unwrap());
    }
}
