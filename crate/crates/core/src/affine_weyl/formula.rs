//! Closed-form length of `t_lambda ∘ theta` for `theta` stabilizing a facet.

use super::alcove::Alcove;
use super::element::Element;
use crate::error::{Error, Result};
use crate::root_system::{Coweight, Facet, RootSystem};

/// Whether `theta` maps the open facet of `facet` onto itself.
pub fn theta_fixes_facet(rs: &RootSystem, theta: &Element, facet: &Facet) -> bool {
    facet.contains_point(rs, &theta.act(facet.point()))
}

/// Walls of direction `alpha` separating `C` from `t_lambda theta (C)`,
/// given `<alpha, lambda>` and whether `theta^{-1}(alpha)` is negative for
/// `C`.
pub fn case_count(pairing: i64, theta_inv_negative: bool) -> u64 {
    if theta_inv_negative {
        (pairing - 1).unsigned_abs()
    } else {
        pairing.unsigned_abs()
    }
}

/// Per-root contribution for a root `alpha` of `R_F`.
pub fn wall_count_contribution(
    rs: &RootSystem,
    alpha: usize,
    lambda: &Coweight,
    theta: &Element,
    facet: &Facet,
    c: &Alcove,
) -> Result<u64> {
    if !facet.subsystem().contains(alpha) {
        return Err(Error::RootNotInSubsystem(alpha));
    }
    let back = theta.linear_part().root_preimage(alpha);
    if !facet.subsystem().contains(back) {
        return Err(Error::FacetNotStable);
    }
    let negative = !c.is_positive_at(rs, facet, back);
    Ok(case_count(rs.pairing_int(alpha, lambda.coords()), negative))
}

/// `R_{F,theta}`: roots of `R_F` positive for `C` whose image under
/// `theta^{-1}` is negative for `C`.
pub fn r_f_theta(rs: &RootSystem, theta: &Element, facet: &Facet, c: &Alcove) -> Vec<usize> {
    facet
        .subsystem()
        .roots()
        .iter()
        .copied()
        .filter(|&a| c.is_positive_at(rs, facet, a))
        .filter(|&a| !c.is_positive_at(rs, facet, theta.linear_part().root_preimage(a)))
        .collect()
}

/// `l_C(t_lambda theta)` by the generalized Iwahori–Matsumoto formula.
pub fn length_formula(rs: &RootSystem, lambda: &Coweight, theta: &Element, facet: &Facet, c: &Alcove) -> Result<u64> {
    rs.check_dim(lambda.coords().len())?;
    if !theta_fixes_facet(rs, theta, facet) {
        return Err(Error::FacetNotStable);
    }
    if !c.closure_contains(rs, facet.point()) {
        return Err(Error::NotAdjacent);
    }
    let mut total = 0;
    for r in 0..rs.num_positive() {
        if facet.subsystem().contains(r) {
            let alpha = if c.is_positive_at(rs, facet, r) {
                r
            } else {
                rs.negate(r)
            };
            total += wall_count_contribution(rs, alpha, lambda, theta, facet, c)?;
        } else {
            total += rs.pairing_int(r, lambda.coords()).unsigned_abs();
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_weyl::alcove::length;
    use crate::coords::q;

    #[test]
    fn case_table() {
        assert_eq!(case_count(2, true), 1);
        assert_eq!(case_count(-2, true), 3);
        assert_eq!(case_count(2, false), 2);
        assert_eq!(case_count(-2, false), 2);
        assert_eq!(case_count(0, true), 1);
    }

    #[test]
    fn a1_origin_reflection() {
        let rs = RootSystem::parse("A1").unwrap();
        let f = Facet::new(&rs, vec![q(0)]).unwrap();
        let theta = Element::linear(&rs, rs.reflection(0));
        let lambda = Coweight(vec![2]);
        let [up, down]: [Alcove; 2] = Alcove::adjacent_to(&rs, &f).unwrap().try_into().unwrap();
        assert_eq!(length_formula(&rs, &lambda, &theta, &f, &up), Ok(1));
        assert_eq!(length_formula(&rs, &lambda, &theta, &f, &down), Ok(3));
        let t = &Element::translation(&rs, &lambda) * &theta;
        assert_eq!(length(&rs, &t, &up), 1);
        assert_eq!(length(&rs, &t, &down), 3);
        assert_eq!(r_f_theta(&rs, &theta, &f, &down), vec![rs.negate(0)]);
    }

    #[test]
    fn identity_theta_is_classical() {
        let rs = RootSystem::parse("A2").unwrap();
        let f = Facet::new(&rs, vec![q(0), q(0)]).unwrap();
        let c = Alcove::fundamental(&rs);
        let rho = rs.rho_vee();
        assert_eq!(length_formula(&rs, &rho, &Element::identity(&rs), &f, &c), Ok(4));
    }

    #[test]
    fn rejects_roots_outside_r_f_and_unstable_facets() {
        let rs = RootSystem::parse("A1").unwrap();
        let f = Facet::new(&rs, vec![q(0)]).unwrap();
        let interior = Facet::new(&rs, vec![crate::coords::Q::new(1, 2)]).unwrap();
        let c = Alcove::fundamental(&rs);
        let id = Element::identity(&rs);
        assert_eq!(
            wall_count_contribution(&rs, 0, &Coweight(vec![1]), &id, &interior, &c),
            Err(Error::RootNotInSubsystem(0))
        );
        let shift = Element::translation(&rs, &Coweight(vec![1]));
        assert_eq!(
            length_formula(&rs, &Coweight(vec![0]), &shift, &f, &c),
            Err(Error::FacetNotStable)
        );
    }
}
