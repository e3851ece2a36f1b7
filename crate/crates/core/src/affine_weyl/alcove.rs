use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_traits::Signed;
use serde::Serialize;

use super::element::Element;
use crate::coords::{self, Point, Q};
use crate::error::{Error, Result};
use crate::root_system::{Facet, PositiveSubsystem, RootSystem};

/// Names a reflection in a wall of an alcove by the wall of the fundamental
/// alcove it is transported from: `Simple(i)` is `s_i` (1-based, Bourbaki)
/// and `Affine(c)` the affine reflection of component `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GeneratorLabel {
    Simple(usize),
    Affine(usize),
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub label: GeneratorLabel,
    pub reflection: Element,
    /// The wall is `{x : <root, x> = level}`, `root` positive.
    pub root: usize,
    pub level: i64,
    single_component: bool,
}

impl Generator {
    /// Whether `p` lies on the positive side of the wall.
    #[inline]
    fn above(&self, rs: &RootSystem, p: &Point) -> bool {
        p.pair_numerator(rs.root(self.root)) > self.level * p.denominator()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label {
            GeneratorLabel::Simple(i) => write!(f, "s{i}"),
            GeneratorLabel::Affine(_) if self.single_component => write!(f, "s0"),
            GeneratorLabel::Affine(c) => write!(f, "s0_{}", c + 1),
        }
    }
}

/// An alcove, represented by a point of its interior. Caches the element of
/// `W_a` carrying the fundamental alcove onto it and the reflections in its
/// walls.
#[derive(Clone, Debug)]
pub struct Alcove {
    point: Point,
    floors: Vec<i64>,
    chart: Element,
    generators: Vec<Generator>,
}

impl PartialEq for Alcove {
    fn eq(&self, other: &Self) -> bool {
        self.floors == other.floors
    }
}
impl Eq for Alcove {}

fn floors(rs: &RootSystem, p: &Point) -> Vec<i64> {
    (0..rs.num_positive()).map(|r| p.floor_pair(rs.root(r)).0).collect()
}

/// Number of walls separating the alcoves of two generic points.
pub fn separating_walls(rs: &RootSystem, p: &Point, q: &Point) -> u64 {
    (0..rs.num_positive())
        .map(|r| {
            let a = p.floor_pair(rs.root(r)).0;
            let b = q.floor_pair(rs.root(r)).0;
            (a - b).unsigned_abs()
        })
        .sum()
}

fn fundamental_generators(rs: &RootSystem) -> Vec<Generator> {
    let single = rs.components().len() == 1;
    let mut gens: Vec<Generator> = (0..rs.rank())
        .map(|i| Generator {
            label: GeneratorLabel::Simple(i + 1),
            reflection: Element::linear(rs, rs.reflection(i)),
            root: i,
            level: 0,
            single_component: single,
        })
        .collect();
    for c in 0..rs.components().len() {
        gens.push(Generator {
            label: GeneratorLabel::Affine(c),
            reflection: Element::affine_reflection(rs, rs.highest_root(c), 1),
            root: rs.highest_root(c),
            level: 1,
            single_component: single,
        });
    }
    gens
}

/// Gallery from `C` to the alcove of `target`: pull the target back along
/// the gallery and reflect it across a wall of `C` separating it from `C`
/// until it lies in `C`. Returns the generator indices used, so that
/// `u = g[word[0]] ∘ g[word[1]] ∘ ...` maps `C` onto the target alcove.
fn walk(rs: &RootSystem, c: &Alcove, target: &Point) -> Vec<usize> {
    let mut q = target.clone();
    let mut word = vec![];
    let limit = separating_walls(rs, &c.point, target);
    while let Some(j) = c
        .generators
        .iter()
        .position(|g| g.above(rs, &q) != g.above(rs, &c.point))
    {
        word.push(j);
        q = c.generators[j].reflection.act(&q);
        assert!(word.len() as u64 <= limit, "alcove walk does not shorten the gallery");
    }
    word
}

impl Alcove {
    /// The alcove bounded by the simple-root walls and the walls
    /// `<theta_c, x> = 1` of the highest roots; represented by the barycenter
    /// of its vertices.
    pub fn fundamental(rs: &RootSystem) -> Alcove {
        let mut point = vec![coords::q(0); rs.rank()];
        for c in 0..rs.components().len() {
            let verts = rs.fundamental_vertices(c);
            let k = coords::q(verts.len() as i64);
            for v in &verts {
                for j in 0..rs.rank() {
                    point[j] += v[j] / k;
                }
            }
        }
        let point = Point::from_rationals(&point);
        Alcove {
            floors: floors(rs, &point),
            point,
            chart: Element::identity(rs),
            generators: fundamental_generators(rs),
        }
    }

    /// The alcove containing a point that lies on no wall.
    pub fn containing(rs: &RootSystem, point: Point) -> Result<Alcove> {
        rs.check_dim(point.dim())?;
        if !rs.is_generic(&point) {
            return Err(Error::OnWall(point.to_string()));
        }
        let base = Alcove::fundamental(rs);
        let chart = word_product(rs, &walk(rs, &base, &point), &base);
        let chart_inv = chart.inverse();
        let generators = base
            .generators
            .iter()
            .map(|g| {
                let reflection = &(&chart * &g.reflection) * &chart_inv;
                let root = rs.positive_of(chart.linear_part().root_image(g.root));
                let level = rs.pairing_int(root, reflection.translation_part()) / 2;
                Generator {
                    label: g.label,
                    reflection,
                    root,
                    level,
                    single_component: g.single_component,
                }
            })
            .collect();
        Ok(Alcove {
            floors: floors(rs, &point),
            point,
            chart,
            generators,
        })
    }

    pub fn from_rationals(rs: &RootSystem, p: &[Q]) -> Result<Alcove> {
        Alcove::containing(rs, Point::from_rationals(p))
    }

    /// The alcove adjacent to `facet` whose positive system on `R_F` is
    /// `chamber`: the point `x_F + eps * rho_C` with `rho_C` half the sum of
    /// the coroots of the chamber's positive roots.
    pub fn from_facet_chamber(rs: &RootSystem, facet: &Facet, chamber: &PositiveSubsystem) -> Result<Alcove> {
        if chamber.parent() != facet.subsystem() {
            return Err(Error::NotAChamber("chamber of a different subsystem".into()));
        }
        let mut rho = vec![coords::q(0); rs.rank()];
        for &a in chamber.positive() {
            for (j, c) in rs.coroot(a).iter().enumerate() {
                rho[j] += Q::new(*c, 2);
            }
        }
        let x = facet.coords();
        // No wall may be reached: walls not through F are at distance
        // dist(<alpha, x_F>, Z); walls through F are at distance 1 from
        // the next parallel one.
        let mut eps_bound: Option<Q> = None;
        for r in 0..rs.num_positive() {
            let v = rs.pairing(r, x);
            let frac = v - v.floor();
            let gap = if frac == coords::q(0) {
                coords::q(1)
            } else {
                frac.min(coords::q(1) - frac)
            };
            let slope = rs.pairing(r, &rho).abs();
            let b = gap / (coords::q(1) + slope);
            eps_bound = Some(eps_bound.map_or(b, |e: Q| e.min(b)));
        }
        let eps = eps_bound.unwrap_or(coords::q(1)) / coords::q(2);
        let p: Vec<Q> = x.iter().zip(&rho).map(|(a, b)| a + eps * b).collect();
        let alcove = Alcove::from_rationals(rs, &p)?;
        if &alcove.chamber_at(rs, facet)? != chamber {
            return Err(Error::Internal("alcove does not induce the requested chamber".into()));
        }
        Ok(alcove)
    }

    /// All alcoves whose closure contains `facet`, in the order of
    /// [`RootSystem::chambers`].
    pub fn adjacent_to(rs: &RootSystem, facet: &Facet) -> Result<Vec<Alcove>> {
        rs.chambers(facet.subsystem())
            .iter()
            .map(|c| Alcove::from_facet_chamber(rs, facet, c))
            .collect()
    }

    pub fn point(&self) -> &Point {
        &self.point
    }

    /// `floor(<alpha, p>)` for every positive root: identifies the alcove.
    pub fn floors(&self) -> &[i64] {
        &self.floors
    }

    /// The element of `W_a` mapping the fundamental alcove onto this one.
    pub fn chart(&self) -> &Element {
        &self.chart
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn contains(&self, rs: &RootSystem, p: &Point) -> bool {
        rs.is_generic(p) && floors(rs, p) == self.floors
    }

    pub fn closure_contains(&self, rs: &RootSystem, x: &Point) -> bool {
        (0..rs.num_positive()).all(|r| {
            let v = x.pair(rs.root(r));
            let f = coords::q(self.floors[r]);
            v >= f && v <= f + coords::q(1)
        })
    }

    /// The positive system induced on `R_F`: roots `alpha` with
    /// `<alpha, p> > <alpha, x_F>`.
    pub fn chamber_at(&self, rs: &RootSystem, facet: &Facet) -> Result<PositiveSubsystem> {
        if !self.closure_contains(rs, facet.point()) {
            return Err(Error::NotAdjacent);
        }
        let positive = facet
            .subsystem()
            .roots()
            .iter()
            .copied()
            .filter(|&r| self.point.pair(rs.root(r)) > facet.point().pair(rs.root(r)))
            .collect();
        PositiveSubsystem::new(rs, facet.subsystem().clone(), positive)
    }

    /// Whether root `r` of `R_F` is positive for this alcove.
    pub fn is_positive_at(&self, rs: &RootSystem, facet: &Facet, r: usize) -> bool {
        self.point.pair(rs.root(r)) > facet.point().pair(rs.root(r))
    }
}

/// `l_C(eta)`: the number of walls separating `C` from `eta(C)`.
pub fn length(rs: &RootSystem, eta: &Element, c: &Alcove) -> u64 {
    let q = eta.act(&c.point);
    (0..rs.num_positive())
        .map(|r| (q.floor_pair(rs.root(r)).0 - c.floors[r]).unsigned_abs())
        .sum()
}

/// `eta = w ∘ gamma` with `w ∈ W_a` and `gamma` stabilizing `C`.
pub fn omega_decompose(rs: &RootSystem, eta: &Element, c: &Alcove) -> (Element, Element) {
    let w = word_product(rs, &walk(rs, c, &eta.act(&c.point)), c);
    let gamma = &w.inverse() * eta;
    (w, gamma)
}

/// The `Omega_C` component of `eta`.
pub fn omega_part(rs: &RootSystem, eta: &Element, c: &Alcove) -> Element {
    omega_decompose(rs, eta, c).1
}

/// Whether `gamma(C) = C`.
pub fn stabilizes(rs: &RootSystem, gamma: &Element, c: &Alcove) -> bool {
    length(rs, gamma, c) == 0
}

/// Whether `eta` lies in `W_a = Q(R^vee) ⋊ W_0`.
pub fn in_affine_weyl(rs: &RootSystem, eta: &Element) -> bool {
    rs.is_weyl(eta.linear_part()) && rs.in_coroot_lattice(eta.translation_part())
}

/// Reduced word of `eta`'s `W_a` part as indices into `c.generators()`,
/// together with the `Omega_C` part: `eta = g[w0] ∘ ... ∘ g[wk] ∘ gamma`.
pub fn extended_word(rs: &RootSystem, eta: &Element, c: &Alcove) -> (Vec<usize>, Element) {
    let word = walk(rs, c, &eta.act(&c.point));
    let w = word_product(rs, &word, c);
    (word, &w.inverse() * eta)
}

/// A reduced word for `w ∈ W_a` in the reflections through the walls of `C`.
pub fn reduced_word(rs: &RootSystem, w: &Element, c: &Alcove) -> Result<Vec<usize>> {
    let (word, gamma) = extended_word(rs, w, c);
    if !gamma.is_identity() {
        return Err(Error::NotInAffineWeylGroup);
    }
    Ok(word)
}

pub fn word_product(rs: &RootSystem, word: &[usize], c: &Alcove) -> Element {
    word.iter()
        .fold(Element::identity(rs), |acc, &j| &acc * &c.generators[j].reflection)
}

pub fn word_labels(word: &[usize], c: &Alcove) -> Vec<String> {
    word.iter().map(|&j| c.generators[j].to_string()).collect()
}

/// `Omega_C`: the stabilizer of `C` in the extended group. Generated by the
/// `Omega`-parts of the fundamental coweight translations and of the diagram
/// automorphisms.
pub fn omega_group(rs: &RootSystem, c: &Alcove) -> Vec<Element> {
    let mut gens: Vec<Element> = (0..rs.rank())
        .map(|i| omega_part(rs, &Element::translation(rs, &rs.fundamental_coweight(i)), c))
        .collect();
    gens.extend(
        rs.diagram_automorphisms()
            .into_iter()
            .map(|d| omega_part(rs, &Element::linear(rs, d), c)),
    );
    let id = Element::identity(rs);
    let mut seen: HashSet<Element> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Element> = seen.into_iter().collect();
    out.sort();
    out
}

/// Elements of `W_a` of length at most `max_len` (relative to `C`), by
/// breadth-first search on the generators.
pub fn length_ball(rs: &RootSystem, c: &Alcove, max_len: u64) -> Vec<Element> {
    let id = Element::identity(rs);
    let mut seen: HashSet<Element> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    for _ in 0..max_len {
        let mut next = vec![];
        for x in &frontier {
            for g in c.generators() {
                let y = x * &g.reflection;
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Element> = seen.into_iter().collect();
    out.sort_by_key(|e| (length(rs, e, c), e.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::q;
    use crate::root_system::Coweight;

    fn a1() -> RootSystem {
        RootSystem::parse("A1").unwrap()
    }

    #[test]
    fn fundamental_alcove_points() {
        let rs = a1();
        let c = Alcove::fundamental(&rs);
        assert_eq!(c.point().to_rationals(), vec![Q::new(1, 2)]);
        let a2 = RootSystem::parse("A2").unwrap();
        let c2 = Alcove::fundamental(&a2);
        assert_eq!(c2.point().to_rationals(), vec![Q::new(1, 3), Q::new(1, 3)]);
        let prod = RootSystem::parse("A1xA1").unwrap();
        assert_eq!(
            Alcove::fundamental(&prod).point().to_rationals(),
            vec![Q::new(1, 2), Q::new(1, 2)]
        );
        assert_eq!(Alcove::fundamental(&prod).generators().len(), 4);
    }

    #[test]
    fn a1_lengths() {
        let rs = a1();
        let c = Alcove::fundamental(&rs);
        assert_eq!(length(&rs, &Element::identity(&rs), &c), 0);
        let t = Element::translation(&rs, &Coweight(vec![2]));
        assert_eq!(length(&rs, &t, &c), 2);
        let ts = &t * &Element::linear(&rs, rs.reflection(0));
        assert_eq!(length(&rs, &ts, &c), 1);
    }

    #[test]
    fn a1_alcoves_from_origin() {
        let rs = a1();
        let f = Facet::new(&rs, vec![q(0)]).unwrap();
        let chambers = rs.chambers(f.subsystem());
        let up = Alcove::from_facet_chamber(&rs, &f, &chambers[0]).unwrap();
        let down = Alcove::from_facet_chamber(&rs, &f, &chambers[1]).unwrap();
        assert_eq!(up.floors(), &[0]);
        assert_eq!(down.floors(), &[-1]);
        let interior = Facet::new(&rs, vec![Q::new(1, 3)]).unwrap();
        let only = Alcove::adjacent_to(&rs, &interior).unwrap();
        assert_eq!(only.len(), 1);
        assert!(only[0].contains(&rs, interior.point()));
    }

    #[test]
    fn points_on_walls_are_rejected() {
        let rs = a1();
        assert!(matches!(Alcove::from_rationals(&rs, &[q(1)]), Err(Error::OnWall(_))));
    }

    #[test]
    fn omega_decomposition_of_a1_coweight() {
        let rs = a1();
        let c = Alcove::fundamental(&rs);
        let t = Element::translation(&rs, &Coweight(vec![1]));
        let (w, gamma) = omega_decompose(&rs, &t, &c);
        assert_eq!(w, Element::affine_reflection(&rs, 0, 1));
        // gamma: p -> 1 - p
        assert_eq!(gamma.act_rational(&[q(0)]), vec![q(1)]);
        assert!((&gamma * &gamma).is_identity());
        assert_eq!(omega_group(&rs, &c).len(), 2);
    }

    #[test]
    fn a1_reduced_words() {
        let rs = a1();
        let c = Alcove::fundamental(&rs);
        let t = Element::translation(&rs, &Coweight(vec![2]));
        let word = reduced_word(&rs, &t, &c).unwrap();
        // wall p = 1 first, then wall p = 0
        assert_eq!(word_labels(&word, &c), vec!["s0", "s1"]);
        assert_eq!(word_product(&rs, &word, &c), t);
        let t1 = Element::translation(&rs, &Coweight(vec![1]));
        assert_eq!(reduced_word(&rs, &t1, &c), Err(Error::NotInAffineWeylGroup));
    }

    #[test]
    fn generators_of_other_alcoves_are_its_walls() {
        let rs = RootSystem::parse("A2").unwrap();
        let c = Alcove::from_rationals(&rs, &[Q::new(-1, 5), Q::new(6, 7)]).unwrap();
        for g in c.generators() {
            assert!((&g.reflection * &g.reflection).is_identity());
            assert_eq!(length(&rs, &g.reflection, &c), 1);
        }
    }

    #[test]
    fn omega_group_sizes() {
        for (label, n) in [("A1", 2), ("A2", 6), ("B2", 2), ("G2", 1), ("A3", 8), ("A1xA1", 8)] {
            let rs = RootSystem::parse(label).unwrap();
            let c = Alcove::fundamental(&rs);
            let omega = omega_group(&rs, &c);
            assert_eq!(omega.len(), n, "{label}");
            assert!(omega.iter().all(|g| stabilizes(&rs, g, &c)));
        }
    }

    #[test]
    fn length_ball_sizes() {
        let rs = a1();
        let c = Alcove::fundamental(&rs);
        assert_eq!(length_ball(&rs, &c, 3).len(), 7);
    }
}
