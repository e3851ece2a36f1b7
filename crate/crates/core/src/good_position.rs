//! Alcoves in good position with respect to a facet, a coweight and an
//! element stabilizing the facet.

use serde::Serialize;

use crate::affine_weyl::{
    bruhat_leq, bruhat_leq_subword, facet_group, length, length_formula, theta_fixes_facet, weak_bruhat_leq, Alcove,
    Element, ElementJson,
};
use crate::coords;
use crate::error::{Error, Result};
use crate::kottwitz::{is_admissible, lambda_orbit};
use crate::root_system::{Coweight, Facet, PositiveSubsystem, RootAutomorphism, RootSystem, Subsystem};

fn require_stable(rs: &RootSystem, theta: &Element, facet: &Facet) -> Result<()> {
    if theta_fixes_facet(rs, theta, facet) {
        Ok(())
    } else {
        Err(Error::FacetNotStable)
    }
}

/// `theta0^i(lambda)` for `i` modulo the order of `theta0`.
fn lambda_cycle(theta0: &RootAutomorphism, lambda: &Coweight) -> Vec<Coweight> {
    theta0.powers().iter().map(|p| p.apply_coweight(lambda)).collect()
}

/// `R_{F,lambda,theta}`: roots of `R_F` orthogonal to every
/// `theta0^i(lambda)`.
pub fn restricted_system(rs: &RootSystem, facet: &Facet, lambda: &Coweight, theta: &Element) -> Result<Subsystem> {
    require_stable(rs, theta, facet)?;
    let cycle = lambda_cycle(theta.linear_part(), lambda);
    Ok(Subsystem::from_roots(
        facet
            .subsystem()
            .roots()
            .iter()
            .copied()
            .filter(|&r| cycle.iter().all(|l| rs.pairing_int(r, l.coords()) == 0)),
    ))
}

/// The first `theta0`-stable chamber of `s`, ordering chambers
/// lexicographically by their sorted positive root indices. Positive roots
/// of `R` have the smallest indices, so `S ∩ R+` wins whenever it is stable.
pub fn theta_stable_chamber(rs: &RootSystem, s: &Subsystem, theta0: &RootAutomorphism) -> Result<PositiveSubsystem> {
    rs.chambers(s)
        .into_iter()
        .find(|c| c.image(theta0) == *c)
        .ok_or(Error::NoStableChamber)
}

/// The positive system of `R_F` built root by root: a root is positive if
/// the first nonzero pairing with `theta0^i(lambda)` is positive, and roots
/// orthogonal to all of them follow `c_flt`.
pub fn good_position_chamber(
    rs: &RootSystem,
    facet: &Facet,
    lambda: &Coweight,
    theta: &Element,
    c_flt: &PositiveSubsystem,
) -> Result<PositiveSubsystem> {
    let restricted = restricted_system(rs, facet, lambda, theta)?;
    if c_flt.parent() != &restricted {
        return Err(Error::NotAChamber("not a chamber of the restricted subsystem".into()));
    }
    if c_flt.image(theta.linear_part()) != *c_flt {
        return Err(Error::NoStableChamber);
    }
    let cycle = lambda_cycle(theta.linear_part(), lambda);
    let mut positive = vec![];
    for &r in facet.subsystem().roots().iter().filter(|&&r| rs.is_positive(r)) {
        let first = cycle.iter().map(|l| rs.pairing_int(r, l.coords())).find(|&x| x != 0);
        let keep = match first {
            Some(x) => x > 0,
            None => c_flt.contains(r),
        };
        positive.push(if keep { r } else { rs.negate(r) });
    }
    PositiveSubsystem::new(rs, facet.subsystem().clone(), positive)
}

/// Every root of `R_F` positive for `C` and sent to a negative root by
/// `theta^{-1}` pairs positively with `lambda`.
pub fn is_good_position(rs: &RootSystem, facet: &Facet, lambda: &Coweight, c: &Alcove, theta: &Element) -> bool {
    facet.subsystem().roots().iter().all(|&a| {
        !c.is_positive_at(rs, facet, a)
            || c.is_positive_at(rs, facet, theta.linear_part().root_preimage(a))
            || rs.pairing_int(a, lambda.coords()) > 0
    })
}

/// The element `w_C` of `W_F` with `w_C(C) = theta(C)`.
pub fn w_c_of_theta(rs: &RootSystem, theta: &Element, facet: &Facet, c: &Alcove) -> Result<Element> {
    require_stable(rs, theta, facet)?;
    if !c.closure_contains(rs, facet.point()) {
        return Err(Error::NotAdjacent);
    }
    w_c_in(rs, theta, &facet_group(rs, facet), c)
}

/// As [`w_c_of_theta`] with `W_F` already enumerated.
pub fn w_c_in(rs: &RootSystem, theta: &Element, wf: &[Element], c: &Alcove) -> Result<Element> {
    let target = rs.facet_signature(&theta.act(c.point()));
    wf.iter()
        .find(|u| rs.facet_signature(&u.act(c.point())) == target)
        .cloned()
        .ok_or_else(|| Error::Internal("theta(C) is not in the W_F-orbit of C".into()))
}

/// `t_lambda ∘ w`.
pub fn kr_invariant(rs: &RootSystem, lambda: &Coweight, w: &Element) -> Element {
    &Element::translation(rs, lambda) * w
}

/// Lengths and comparisons around one alcove adjacent to a facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodPositionReport {
    pub chamber: Vec<Vec<i64>>,
    pub alcove: Vec<String>,
    pub w_c: ElementJson,
    pub length_w_c: u64,
    pub length_t_lambda: u64,
    pub length_t_lambda_theta: u64,
    pub length_theta: u64,
    pub length_formula: u64,
    pub good_position_holds: bool,
    pub length_additivity_holds: bool,
    pub bruhat_comparison_holds: bool,
    pub bruhat_subword_holds: bool,
    pub weak_bruhat_holds: bool,
    pub formula_matches: bool,
}

impl GoodPositionReport {
    /// The implication that must hold: good position forces additivity and
    /// both comparisons, and the formula always matches the wall count.
    pub fn consistent(&self) -> bool {
        self.formula_matches
            && self.bruhat_comparison_holds == self.bruhat_subword_holds
            && (!self.good_position_holds
                || (self.length_additivity_holds && self.bruhat_comparison_holds && self.weak_bruhat_holds))
    }
}

/// Computes all quantities of [`GoodPositionReport`] for the alcove `c`.
pub fn verify_prop44(
    rs: &RootSystem,
    facet: &Facet,
    lambda: &Coweight,
    theta: &Element,
    c: &Alcove,
) -> Result<GoodPositionReport> {
    let wf = facet_group(rs, facet);
    verify_prop44_in(rs, facet, lambda, theta, c, &wf)
}

/// As [`verify_prop44`] with `W_F` already enumerated.
pub fn verify_prop44_in(
    rs: &RootSystem,
    facet: &Facet,
    lambda: &Coweight,
    theta: &Element,
    c: &Alcove,
    wf: &[Element],
) -> Result<GoodPositionReport> {
    require_stable(rs, theta, facet)?;
    let chamber = c.chamber_at(rs, facet)?;
    let w_c = w_c_in(rs, theta, wf, c)?;
    let t = Element::translation(rs, lambda);
    let t_theta = &t * theta;
    let t_w = &t * &w_c;
    let lt = length(rs, &t, c);
    let ltt = length(rs, &t_theta, c);
    let lth = length(rs, theta, c);
    let formula = length_formula(rs, lambda, theta, facet, c)?;
    Ok(GoodPositionReport {
        chamber: chamber.root_vectors(rs),
        alcove: coords::format_rational_vec(&c.point().to_rationals()),
        w_c: w_c.to_json(),
        length_w_c: length(rs, &w_c, c),
        length_t_lambda: lt,
        length_t_lambda_theta: ltt,
        length_theta: lth,
        length_formula: formula,
        good_position_holds: is_good_position(rs, facet, lambda, c, theta),
        length_additivity_holds: lt == ltt + lth,
        bruhat_comparison_holds: bruhat_leq(rs, &t_w, &t, c),
        bruhat_subword_holds: bruhat_leq_subword(rs, &t_w, &t, c),
        weak_bruhat_holds: weak_bruhat_leq(rs, &t_w, &t, c),
        formula_matches: formula == ltt,
    })
}

/// The data produced by the good-position construction for `(mu, F, theta)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub lambda: Coweight,
    pub chamber: Vec<Vec<i64>>,
    pub alcove: Vec<String>,
    pub w_c: ElementJson,
    pub w: ElementJson,
    pub length_t_lambda: u64,
    pub length_w: u64,
    pub length_rest: u64,
    pub additive: bool,
    pub admissible: bool,
    pub weak_bruhat: bool,
}

impl Witness {
    pub fn verified(&self) -> bool {
        self.additive && self.admissible && self.weak_bruhat
    }
}

/// Orbit elements in the order they are tried: the dominant one first, then
/// the rest in lexicographic order.
pub fn witness_candidates(rs: &RootSystem, mu: &Coweight) -> Vec<Coweight> {
    let star = rs.dominant(mu);
    let mut out = vec![star.clone()];
    out.extend(lambda_orbit(rs, mu).into_iter().filter(|l| *l != star));
    out
}

/// Picks `lambda` in the orbit of `mu` admitting a `theta`-stable chamber of
/// `R_{F,lambda,theta}`, builds the good-position alcove `C` and returns
/// `w = t_lambda w_C` with its certificate.
pub fn theorem_witness(rs: &RootSystem, mu: &Coweight, facet: &Facet, theta: &Element) -> Result<Witness> {
    require_stable(rs, theta, facet)?;
    let wf = facet_group(rs, facet);
    for lambda in witness_candidates(rs, mu) {
        let restricted = restricted_system(rs, facet, &lambda, theta)?;
        let c_flt = match theta_stable_chamber(rs, &restricted, theta.linear_part()) {
            Ok(c) => c,
            Err(Error::NoStableChamber) => continue,
            Err(e) => return Err(e),
        };
        let chamber = good_position_chamber(rs, facet, &lambda, theta, &c_flt)?;
        let c = Alcove::from_facet_chamber(rs, facet, &chamber)?;
        let w_c = w_c_in(rs, theta, &wf, &c)?;
        let t = Element::translation(rs, &lambda);
        let w = kr_invariant(rs, &lambda, &w_c);
        let lt = length(rs, &t, &c);
        let lw = length(rs, &w, &c);
        let lr = length(rs, &(&w.inverse() * &t), &c);
        return Ok(Witness {
            chamber: chamber.root_vectors(rs),
            alcove: coords::format_rational_vec(&c.point().to_rationals()),
            w_c: w_c.to_json(),
            w: w.to_json(),
            length_t_lambda: lt,
            length_w: lw,
            length_rest: lr,
            additive: lt == lw + lr,
            admissible: is_admissible(rs, &w, mu, &c),
            weak_bruhat: weak_bruhat_leq(rs, &w, &t, &c),
            lambda,
        });
    }
    Err(Error::NoStableChamber)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::q;

    struct Setup {
        rs: RootSystem,
        origin: Facet,
        theta: Element,
    }

    fn a1_reflection() -> Setup {
        let rs = RootSystem::parse("A1").unwrap();
        let origin = Facet::new(&rs, vec![q(0)]).unwrap();
        let theta = Element::linear(&rs, rs.reflection(0));
        Setup { rs, origin, theta }
    }

    fn a2_delta() -> Setup {
        let rs = RootSystem::parse("A2").unwrap();
        let origin = Facet::new(&rs, vec![q(0), q(0)]).unwrap();
        let theta = Element::linear(&rs, rs.named_automorphism("delta").unwrap());
        Setup { rs, origin, theta }
    }

    #[test]
    fn restricted_systems() {
        let Setup { rs, origin, theta } = a1_reflection();
        assert_eq!(
            restricted_system(&rs, &origin, &Coweight(vec![0]), &theta).unwrap(),
            *origin.subsystem()
        );
        assert!(restricted_system(&rs, &origin, &Coweight(vec![2]), &theta)
            .unwrap()
            .is_empty());
        let Setup { rs, origin, theta } = a2_delta();
        assert!(restricted_system(&rs, &origin, &Coweight(vec![1, 0]), &theta)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn stable_chambers() {
        let Setup { rs, origin, theta } = a1_reflection();
        assert_eq!(
            theta_stable_chamber(&rs, origin.subsystem(), theta.linear_part()),
            Err(Error::NoStableChamber)
        );
        let empty = theta_stable_chamber(&rs, &Subsystem::default(), theta.linear_part()).unwrap();
        assert!(empty.positive().is_empty());
        let Setup { rs, origin, theta } = a2_delta();
        let c = theta_stable_chamber(&rs, origin.subsystem(), theta.linear_part()).unwrap();
        assert_eq!(c, rs.positive_system());
    }

    #[test]
    fn rule_application() {
        let Setup { rs, origin, theta } = a1_reflection();
        let lambda = Coweight(vec![2]);
        let r = restricted_system(&rs, &origin, &lambda, &theta).unwrap();
        let c_flt = theta_stable_chamber(&rs, &r, theta.linear_part()).unwrap();
        let ch = good_position_chamber(&rs, &origin, &lambda, &theta, &c_flt).unwrap();
        assert_eq!(ch.positive(), &[0]);

        let Setup { rs, origin, theta } = a2_delta();
        let lambda = Coweight(vec![1, 0]);
        let r = restricted_system(&rs, &origin, &lambda, &theta).unwrap();
        let c_flt = theta_stable_chamber(&rs, &r, theta.linear_part()).unwrap();
        let ch = good_position_chamber(&rs, &origin, &lambda, &theta, &c_flt).unwrap();
        assert_eq!(ch, rs.positive_system());

        let id = Element::identity(&rs);
        for c in rs.chambers(origin.subsystem()) {
            let out = good_position_chamber(&rs, &origin, &Coweight(vec![0, 0]), &id, &c).unwrap();
            assert_eq!(out, c);
        }
    }

    #[test]
    fn good_position_tests() {
        let Setup { rs, origin, theta } = a1_reflection();
        let [up, down]: [Alcove; 2] = Alcove::adjacent_to(&rs, &origin).unwrap().try_into().unwrap();
        let lambda = Coweight(vec![2]);
        assert!(is_good_position(&rs, &origin, &lambda, &up, &theta));
        assert!(!is_good_position(&rs, &origin, &lambda, &down, &theta));
        let id = Element::identity(&rs);
        assert!(is_good_position(&rs, &origin, &lambda, &down, &id));
    }

    #[test]
    fn w_c_examples() {
        let Setup { rs, origin, theta } = a1_reflection();
        let up = Alcove::fundamental(&rs);
        assert_eq!(w_c_of_theta(&rs, &theta, &origin, &up).unwrap(), theta);
        assert!(w_c_of_theta(&rs, &Element::identity(&rs), &origin, &up)
            .unwrap()
            .is_identity());
        let Setup { rs, origin, theta } = a2_delta();
        let c = Alcove::fundamental(&rs);
        assert!(w_c_of_theta(&rs, &theta, &origin, &c).unwrap().is_identity());
    }

    #[test]
    fn prop44_reports() {
        let Setup { rs, origin, theta } = a1_reflection();
        let [up, down]: [Alcove; 2] = Alcove::adjacent_to(&rs, &origin).unwrap().try_into().unwrap();
        let lambda = Coweight(vec![2]);
        let good = verify_prop44(&rs, &origin, &lambda, &theta, &up).unwrap();
        assert_eq!(
            (good.length_t_lambda, good.length_t_lambda_theta, good.length_theta),
            (2, 1, 1)
        );
        assert!(good.good_position_holds && good.length_additivity_holds);
        assert!(good.bruhat_comparison_holds && good.bruhat_subword_holds && good.weak_bruhat_holds);
        let bad = verify_prop44(&rs, &origin, &lambda, &theta, &down).unwrap();
        assert_eq!(
            (bad.length_t_lambda, bad.length_t_lambda_theta, bad.length_theta),
            (2, 3, 1)
        );
        assert!(!bad.good_position_holds && !bad.length_additivity_holds);
        assert!(good.consistent() && bad.consistent());
        let json = serde_json::to_value(&good).unwrap();
        assert_eq!(json["chamber"], serde_json::json!([[1]]));
    }

    #[test]
    fn kr_invariants() {
        let Setup { rs, theta, .. } = a1_reflection();
        let lambda = Coweight(vec![2]);
        assert_eq!(
            kr_invariant(&rs, &lambda, &Element::identity(&rs)),
            Element::translation(&rs, &lambda)
        );
        let k = kr_invariant(&rs, &lambda, &theta);
        assert_eq!(k.act_rational(&[q(0)]), vec![q(2)]);
        assert_eq!(k.act_rational(&[q(1)]), vec![q(1)]);
        assert_eq!(kr_invariant(&rs, &Coweight(vec![0]), &theta), theta);
    }

    #[test]
    fn witnesses() {
        let Setup { rs, origin, theta } = a1_reflection();
        let w = theorem_witness(&rs, &Coweight(vec![2]), &origin, &theta).unwrap();
        assert_eq!(w.lambda, Coweight(vec![2]));
        assert_eq!((w.length_t_lambda, w.length_w, w.length_rest), (2, 1, 1));
        assert!(w.verified());

        let Setup { rs, origin, theta } = a2_delta();
        let w = theorem_witness(&rs, &Coweight(vec![1, 0]), &origin, &theta).unwrap();
        assert_eq!(w.lambda, Coweight(vec![1, 0]));
        assert_eq!((w.length_t_lambda, w.length_w, w.length_rest), (2, 2, 0));
        assert!(w.verified());

        let id = Element::identity(&rs);
        let w = theorem_witness(&rs, &Coweight(vec![-1, 2]), &origin, &id).unwrap();
        assert_eq!(w.lambda, rs.dominant(&Coweight(vec![-1, 2])));
        assert_eq!(w.length_rest, 0);
    }
}
