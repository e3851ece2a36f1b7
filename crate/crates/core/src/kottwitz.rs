//! Newton points, Kottwitz classes, `B(G, {mu})` membership and admissible
//! sets, all at the level of the extended affine Weyl group.

use std::collections::HashSet;

use serde::Serialize;

use crate::affine_weyl::{
    bruhat_leq, double_coset_min_in, facet_group, in_affine_weyl, length, lower_closure, omega_part, Alcove, Element,
};
use crate::coords::{self, Q};
use crate::error::{Error, Result};
use crate::root_system::{Coweight, Facet, RootAutomorphism, RootSystem};

/// `Lambda({mu})`: the `W_0`-orbit of `mu`, sorted.
pub fn lambda_orbit(rs: &RootSystem, mu: &Coweight) -> Vec<Coweight> {
    rs.weyl_orbit(mu)
}

/// Dominant representative of the average of the translation part over
/// the cycle of the linear part.
pub fn newton_point(rs: &RootSystem, eta: &Element) -> Vec<Q> {
    let n = eta.linear_part().order();
    let total = eta.pow(n);
    let k = coords::q(n as i64);
    let avg: Vec<Q> = total.translation_part().iter().map(|&x| coords::q(x) / k).collect();
    rs.dominant_rational(&avg)
}

/// The `Omega_C` part of `eta`, standing for its class in `W~ / W_a`.
pub fn kappa(rs: &RootSystem, eta: &Element, c: &Alcove) -> Element {
    omega_part(rs, eta, c)
}

/// Newton point together with the Kottwitz class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPair {
    pub nu: Vec<Q>,
    pub kappa: Element,
}

pub fn newton_pair(rs: &RootSystem, eta: &Element, c: &Alcove) -> NewtonPair {
    NewtonPair {
        nu: newton_point(rs, eta),
        kappa: kappa(rs, eta, c),
    }
}

pub fn is_dominant_rational(v: &[Q]) -> bool {
    coords::is_nonnegative(v)
}

/// `mu-bar*`: the `theta0`-orbit average of the dominant representative.
pub fn galois_average(rs: &RootSystem, mu: &Coweight, theta0: &RootAutomorphism) -> Result<Vec<Q>> {
    if !rs.stabilizes_dominant_chamber(theta0) {
        return Err(Error::NotDiagram);
    }
    let star = rs.dominant(mu);
    let mut orbit = vec![star.clone()];
    let mut cur = theta0.apply_coweight(&star);
    while cur != star {
        orbit.push(cur.clone());
        cur = theta0.apply_coweight(&cur);
    }
    let m = coords::q(orbit.len() as i64);
    Ok((0..rs.rank())
        .map(|j| orbit.iter().map(|v| coords::q(v.0[j])).sum::<Q>() / m)
        .collect())
}

/// `nu <= mu_bar` in the dominance order: the difference is a nonnegative
/// rational combination of simple coroots.
pub fn dominance_leq(rs: &RootSystem, nu: &[Q], mu_bar: &[Q]) -> Result<bool> {
    rs.check_dim(nu.len())?;
    rs.check_dim(mu_bar.len())?;
    for v in [nu, mu_bar] {
        if !is_dominant_rational(v) {
            return Err(Error::NotDominant(coords::format_rational_vec(v).join(",")));
        }
    }
    let diff: Vec<Q> = mu_bar.iter().zip(nu).map(|(a, b)| a - b).collect();
    Ok(coords::is_nonnegative(&rs.coroot_coefficients(&diff)))
}

/// The class standing for `mu^natural`: the `Omega_C` part of
/// `t_{mu*} theta0`.
pub fn mu_natural(rs: &RootSystem, mu: &Coweight, theta0: &RootAutomorphism, c: &Alcove) -> Element {
    let t = Element::translation(rs, &rs.dominant(mu));
    kappa(rs, &(&t * &Element::linear(rs, theta0.clone())), c)
}

/// Whether the class of `eta_b` lies in `B(G, {mu})`: its Newton point is
/// dominated by `mu-bar*` and its Kottwitz class is that of `mu`.
pub fn in_b_g_mu(
    rs: &RootSystem,
    eta_b: &Element,
    mu: &Coweight,
    theta0: &RootAutomorphism,
    c: &Alcove,
) -> Result<bool> {
    let bound = galois_average(rs, mu, theta0)?;
    let nu = newton_point(rs, eta_b);
    Ok(dominance_leq(rs, &nu, &bound)? && kappa(rs, eta_b, c) == mu_natural(rs, mu, theta0, c))
}

/// `<alpha, mu*> ∈ {0, 1}` for every positive root.
pub fn is_minuscule(rs: &RootSystem, mu: &Coweight) -> bool {
    let star = rs.dominant(mu);
    (0..rs.num_positive()).all(|r| matches!(rs.pairing_int(r, star.coords()), 0 | 1))
}

/// `Adm({mu})` relative to an alcove.
#[derive(Clone, Debug)]
pub struct AdmissibleSet {
    pub orbit: Vec<Coweight>,
    pub elements: Vec<Element>,
    index: HashSet<Element>,
}

impl AdmissibleSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &Element) -> bool {
        self.index.contains(w)
    }

    /// The translations `t_lambda`, `lambda` in the orbit.
    pub fn translations(&self, rs: &RootSystem) -> Vec<Element> {
        self.orbit.iter().map(|l| Element::translation(rs, l)).collect()
    }

    pub fn rows(&self, rs: &RootSystem, c: &Alcove) -> Vec<AdmRow> {
        self.elements.iter().map(|e| AdmRow::new(rs, e, c)).collect()
    }
}

/// One exported element of an admissible set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmRow {
    pub canonical: String,
    pub length: u64,
    pub kappa: String,
    pub is_translation: bool,
}

impl AdmRow {
    pub fn new(rs: &RootSystem, e: &Element, c: &Alcove) -> Self {
        AdmRow {
            canonical: e.canonical(rs),
            length: length(rs, e, c),
            kappa: kappa(rs, e, c).canonical(rs),
            is_translation: e.linear_part().is_identity(),
        }
    }
}

/// `{w : w <=_C t_lambda for some lambda in Lambda({mu})}`, by downward
/// search through Bruhat covers.
pub fn admissible_set(rs: &RootSystem, mu: &Coweight, c: &Alcove) -> AdmissibleSet {
    let orbit = lambda_orbit(rs, mu);
    let tops: Vec<Element> = orbit.iter().map(|l| Element::translation(rs, l)).collect();
    let elements = lower_closure(rs, &tops, c);
    let index = elements.iter().cloned().collect();
    AdmissibleSet { orbit, elements, index }
}

/// Membership in `Adm({mu})` without enumerating it.
pub fn is_admissible(rs: &RootSystem, w: &Element, mu: &Coweight, c: &Alcove) -> bool {
    lambda_orbit(rs, mu)
        .iter()
        .any(|l| bruhat_leq(rs, w, &Element::translation(rs, l), c))
}

/// `Adm({mu})_K`: minimal representatives of the `W_F` double cosets
/// meeting `Adm({mu})`, sorted.
pub fn admissible_set_parahoric(rs: &RootSystem, mu: &Coweight, facet: &Facet, c: &Alcove) -> Result<Vec<Element>> {
    if !c.closure_contains(rs, facet.point()) {
        return Err(Error::NotAdjacent);
    }
    let wf = facet_group(rs, facet);
    let adm = admissible_set(rs, mu, c);
    let reps: HashSet<Element> = adm
        .elements
        .iter()
        .map(|w| double_coset_min_in(rs, w, &wf, c))
        .collect();
    let mut out: Vec<Element> = reps.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Whether `eta` maps to the trivial class, i.e. lies in `W_a`.
pub fn has_trivial_kappa(rs: &RootSystem, eta: &Element) -> bool {
    in_affine_weyl(rs, eta)
}
