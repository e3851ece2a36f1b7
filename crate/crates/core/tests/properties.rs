use std::sync::OnceLock;

use alcove::affine_weyl::{
    bruhat_leq, double_coset_min_in, extended_word, facet_group, length, length_formula, omega_decompose, reduced_word,
    stabilizes, theta_fixes_facet, weak_bruhat_leq, word_product, Alcove, Element,
};
use alcove::coords::q;
use alcove::good_position::{good_position_chamber, is_good_position, restricted_system, theta_stable_chamber};
use alcove::kottwitz::{dominance_leq, kappa, newton_point};
use alcove::{Coweight, Facet, Point, RootAutomorphism, RootSystem};
use itertools::Itertools;
use proptest::prelude::*;

struct Sys {
    rs: RootSystem,
    auts: Vec<RootAutomorphism>,
    facets: Vec<Facet>,
    /// For each facet, the `t_v A` with `v ∈ [-1, 1]^r` fixing it.
    stable: Vec<Vec<Element>>,
}

fn systems() -> &'static [Sys] {
    static CELL: OnceLock<Vec<Sys>> = OnceLock::new();
    CELL.get_or_init(|| {
        ["A1", "A2", "B2", "G2", "A1xA1", "A3"]
            .iter()
            .map(|l| {
                let rs = RootSystem::parse(l).unwrap();
                let auts = rs.automorphism_group();
                let facets = rs.fundamental_facets();
                let shifts: Vec<Vec<i64>> = (0..rs.rank()).map(|_| -1..=1).multi_cartesian_product().collect();
                let stable = facets
                    .iter()
                    .map(|f| {
                        auts.iter()
                            .flat_map(|a| shifts.iter().map(move |v| (a, v)))
                            .map(|(a, v)| Element::new(&rs, a.clone(), v.clone()).unwrap())
                            .filter(|t| theta_fixes_facet(&rs, t, f))
                            .collect()
                    })
                    .collect();
                Sys {
                    rs,
                    auts,
                    facets,
                    stable,
                }
            })
            .collect()
    })
}

fn element(s: &Sys, aut: usize, v: &[i64]) -> Element {
    let a = s.auts[aut % s.auts.len()].clone();
    Element::new(&s.rs, a, v[..s.rs.rank()].to_vec()).unwrap()
}

fn vec4(r: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-r..=r, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn group_laws(k in 0usize..6, a in any::<usize>(), b in any::<usize>(), c in any::<usize>(),
                  u in vec4(3), v in vec4(3), w in vec4(3), p in vec4(9)) {
        let s = &systems()[k];
        let (x, y, z) = (element(s, a, &u), element(s, b, &v), element(s, c, &w));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert!((&x * &x.inverse()).is_identity());
        let pt = Point::new(p[..s.rs.rank()].to_vec(), 7);
        prop_assert_eq!((&x * &y).act(&pt), x.act(&y.act(&pt)));
    }

    #[test]
    fn automorphisms_preserve_pairing(k in 0usize..6, a in any::<usize>(), r in any::<usize>(), v in vec4(5)) {
        let s = &systems()[k];
        let rs = &s.rs;
        let aut = &s.auts[a % s.auts.len()];
        let root = r % rs.num_roots();
        let v = &v[..rs.rank()];
        prop_assert_eq!(rs.pairing_int(aut.root_image(root), &aut.apply(v)), rs.pairing_int(root, v));
    }

    #[test]
    fn reduced_words(k in 0usize..6, a in any::<usize>(), u in vec4(3)) {
        let s = &systems()[k];
        let rs = &s.rs;
        let c = Alcove::fundamental(rs);
        let x = element(s, a, &u);
        let (word, gamma) = extended_word(rs, &x, &c);
        prop_assert!(stabilizes(rs, &gamma, &c));
        prop_assert_eq!(&word_product(rs, &word, &c) * &gamma, x.clone());
        prop_assert_eq!(word.len() as u64, length(rs, &x, &c));
        let (w, _) = omega_decompose(rs, &x, &c);
        prop_assert_eq!(reduced_word(rs, &w, &c).unwrap(), word);
    }

    #[test]
    fn length_symmetries(k in 0usize..6, a in any::<usize>(), b in any::<usize>(), u in vec4(3), v in vec4(3)) {
        let s = &systems()[k];
        let rs = &s.rs;
        let c = Alcove::fundamental(rs);
        let x = element(s, a, &u);
        let l = length(rs, &x, &c);
        prop_assert_eq!(length(rs, &x.inverse(), &c), l);
        let gamma = omega_decompose(rs, &element(s, b, &v), &c).1;
        prop_assert_eq!(length(rs, &(&x * &gamma), &c), l);
        prop_assert_eq!(length(rs, &(&gamma * &x), &c), l);
        prop_assert_eq!(kappa(rs, &(&x * &gamma), &c), &kappa(rs, &x, &c) * &gamma);
    }

    #[test]
    fn weak_order_implies_bruhat(k in 0usize..5, a in any::<usize>(), b in any::<usize>(), u in vec4(2), v in vec4(2)) {
        let s = &systems()[k];
        let rs = &s.rs;
        let c = Alcove::fundamental(rs);
        let x = element(s, a, &u);
        let y = &x * &element(s, b, &v);
        if weak_bruhat_leq(rs, &x, &y, &c) {
            prop_assert!(bruhat_leq(rs, &x, &y, &c));
        }
        prop_assert!(bruhat_leq(rs, &x, &x, &c));
    }

    #[test]
    fn double_coset_minimum(k in 0usize..5, f in any::<usize>(), a in any::<usize>(), u in vec4(3),
                            i in any::<usize>(), j in any::<usize>()) {
        let s = &systems()[k];
        let rs = &s.rs;
        let c = Alcove::fundamental(rs);
        let facet = &s.facets[f % s.facets.len()];
        let wf = facet_group(rs, facet);
        let x = element(s, a, &u);
        let m = double_coset_min_in(rs, &x, &wf, &c);
        prop_assert_eq!(double_coset_min_in(rs, &m, &wf, &c), m.clone());
        let y = &(&wf[i % wf.len()] * &x) * &wf[j % wf.len()];
        prop_assert_eq!(double_coset_min_in(rs, &y, &wf, &c), m.clone());
        prop_assert!(length(rs, &m, &c) <= length(rs, &x, &c));
    }

    #[test]
    fn length_formula_matches_walls(k in 0usize..6, f in any::<usize>(), a in any::<usize>(),
                                    lambda in vec4(5), pick in any::<usize>()) {
        let s = &systems()[k];
        let rs = &s.rs;
        let fi = f % s.facets.len();
        let facet = &s.facets[fi];
        let theta = s.stable[fi][a % s.stable[fi].len()].clone();
        let alcoves = Alcove::adjacent_to(rs, facet).unwrap();
        let c = &alcoves[pick % alcoves.len()];
        let lambda = Coweight(lambda[..rs.rank()].to_vec());
        let t_theta = &Element::translation(rs, &lambda) * &theta;
        prop_assert_eq!(length_formula(rs, &lambda, &theta, facet, c).unwrap(), length(rs, &t_theta, c));
    }

    #[test]
    fn good_position_output(k in 0usize..6, f in any::<usize>(), a in any::<usize>(), lambda in vec4(3)) {
        let s = &systems()[k];
        let rs = &s.rs;
        let fi = f % s.facets.len();
        let facet = &s.facets[fi];
        let theta = s.stable[fi][a % s.stable[fi].len()].clone();
        let lambda = Coweight(lambda[..rs.rank()].to_vec());
        let restricted = restricted_system(rs, facet, &lambda, &theta).unwrap();
        let Ok(c_flt) = theta_stable_chamber(rs, &restricted, theta.linear_part()) else {
            return Ok(());
        };
        let chamber = good_position_chamber(rs, facet, &lambda, &theta, &c_flt).unwrap();
        let c = Alcove::from_facet_chamber(rs, facet, &chamber).unwrap();
        prop_assert!(is_good_position(rs, facet, &lambda, &c, &theta));
        prop_assert!(c_flt.positive().iter().all(|&r| chamber.contains(r)));
    }

    #[test]
    fn newton_points(k in 0usize..5, a in any::<usize>(), u in vec4(3), n in 1u32..4) {
        let s = &systems()[k];
        let rs = &s.rs;
        let x = element(s, a, &u);
        let nu = newton_point(rs, &x);
        prop_assert!(dominance_leq(rs, &nu, &nu).unwrap());
        let scaled: Vec<_> = nu.iter().map(|t| t * q(n as i64)).collect();
        prop_assert_eq!(newton_point(rs, &x.pow(n as _)), scaled);
        let lambda = Coweight(u[..rs.rank()].to_vec());
        prop_assert_eq!(newton_point(rs, &Element::translation(rs, &lambda)), rs.dominant(&lambda).to_rationals());
    }
}
