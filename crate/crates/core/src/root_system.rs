//! Reduced crystallographic root systems of types A-G and their direct sums.
//!
//! Roots are integer vectors in the basis of simple roots (Bourbaki
//! numbering); coroots and coweights are vectors in the basis of fundamental
//! coweights. With these conventions `<alpha, v>` is a dot product and the
//! coweight lattice `P(R^vee)` is exactly `Z^rank`.

use std::cmp::Reverse;
use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::coords::{self, Point, Q};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "A" | "a" => CartanType::A,
            "B" | "b" => CartanType::B,
            "C" | "c" => CartanType::C,
            "D" | "d" => CartanType::D,
            "E" | "e" => CartanType::E,
            "F" | "f" => CartanType::F,
            "G" | "g" => CartanType::G,
            other => return Err(Error::Parse(format!("unknown Cartan type {other:?}"))),
        })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// An irreducible factor occupying coordinates `offset..offset + rank`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub kind: CartanType,
    pub rank: usize,
    pub offset: usize,
}

/// Symmetric invariant form on the simple roots, scaled to integers.
fn invariant_form(kind: CartanType, n: usize) -> Result<Vec<Vec<i64>>> {
    let invalid = || Error::InvalidType {
        kind: kind.to_string(),
        rank: n,
    };
    let valid = match kind {
        CartanType::A => n >= 1,
        CartanType::B | CartanType::C => n >= 2,
        CartanType::D => n >= 4,
        CartanType::E => (6..=8).contains(&n),
        CartanType::F => n == 4,
        CartanType::G => n == 2,
    };
    if !valid {
        return Err(invalid());
    }
    let mut b = vec![vec![0i64; n]; n];
    let mut link = |i: usize, j: usize, v: i64| {
        b[i][j] = v;
        b[j][i] = v;
    };
    match kind {
        CartanType::A => {
            (0..n - 1).for_each(|i| link(i, i + 1, -1));
            (0..n).for_each(|i| b[i][i] = 2);
        }
        CartanType::B => {
            (0..n - 1).for_each(|i| link(i, i + 1, -1));
            (0..n - 1).for_each(|i| b[i][i] = 2);
            b[n - 1][n - 1] = 1;
        }
        CartanType::C => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1));
            link(n - 2, n - 1, -2);
            (0..n - 1).for_each(|i| b[i][i] = 2);
            b[n - 1][n - 1] = 4;
        }
        CartanType::D => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1));
            link(n - 3, n - 1, -1);
            (0..n).for_each(|i| b[i][i] = 2);
        }
        CartanType::E => {
            link(0, 2, -1);
            link(1, 3, -1);
            (2..n - 1).for_each(|i| link(i, i + 1, -1));
            (0..n).for_each(|i| b[i][i] = 2);
        }
        CartanType::F => {
            link(0, 1, -2);
            link(1, 2, -2);
            link(2, 3, -1);
            b[0][0] = 4;
            b[1][1] = 4;
            b[2][2] = 2;
            b[3][3] = 2;
        }
        CartanType::G => {
            link(0, 1, -3);
            b[0][0] = 2;
            b[1][1] = 6;
        }
    }
    Ok(b)
}

/// An integer coweight, i.e. an element of `P(R^vee)`, in fundamental
/// coweight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coweight(pub Vec<i64>);

impl Coweight {
    pub fn zero(rank: usize) -> Self {
        Coweight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn to_rationals(&self) -> Vec<Q> {
        coords::integer_vec_to_q(&self.0)
    }

    /// Accepts a rational vector only if it pairs integrally with every root.
    pub fn from_rationals(v: &[Q]) -> Result<Self> {
        v.iter()
            .map(|x| {
                if x.is_integer() {
                    Ok(x.to_integer())
                } else {
                    Err(Error::Parse(format!("{x} is not integral: not a coweight")))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Coweight)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }
}

impl Serialize for Coweight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        coords::format_rational_vec(&self.to_rationals()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Coweight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let v = raw
            .iter()
            .map(|s| coords::parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Coweight::from_rationals(&v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// A linear automorphism of the root system, stored both as its integer
/// matrix on coweight coordinates and as the permutation it induces on root
/// indices.
#[derive(Clone, Debug)]
pub struct RootAutomorphism {
    n: usize,
    mat: Vec<i64>,
    inv: Vec<i64>,
    perm: Vec<u32>,
    perm_inv: Vec<u32>,
}

impl PartialEq for RootAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}
impl Eq for RootAutomorphism {}
impl Hash for RootAutomorphism {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}
impl PartialOrd for RootAutomorphism {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for RootAutomorphism {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.mat.cmp(&other.mat)
    }
}

impl RootAutomorphism {
    pub fn rank(&self) -> usize {
        self.n
    }

    /// Row-major matrix acting on coweight coordinates.
    pub fn matrix(&self) -> &[i64] {
        &self.mat
    }

    pub fn inverse_matrix(&self) -> &[i64] {
        &self.inv
    }

    /// `perm()[i]` is the index of the image of root `i`.
    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    #[inline]
    pub fn root_image(&self, root: usize) -> usize {
        self.perm[root] as usize
    }

    /// Image of a root under the inverse map.
    #[inline]
    pub fn root_preimage(&self, root: usize) -> usize {
        self.perm_inv[root] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.mat == coords::identity_matrix(self.n)
    }

    pub fn compose(&self, other: &Self) -> Self {
        let n = self.n;
        RootAutomorphism {
            n,
            mat: coords::int_matmul(n, &self.mat, &other.mat),
            inv: coords::int_matmul(n, &other.inv, &self.inv),
            perm: other.perm.iter().map(|&i| self.perm[i as usize]).collect(),
            perm_inv: self.perm_inv.iter().map(|&i| other.perm_inv[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        RootAutomorphism {
            n: self.n,
            mat: self.inv.clone(),
            inv: self.mat.clone(),
            perm: self.perm_inv.clone(),
            perm_inv: self.perm.clone(),
        }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        coords::int_matvec(self.n, &self.mat, v)
    }

    pub fn apply_rational(&self, v: &[Q]) -> Vec<Q> {
        coords::rational_matvec(self.n, &self.mat, v)
    }

    pub fn apply_coweight(&self, c: &Coweight) -> Coweight {
        Coweight(self.apply(&c.0))
    }

    /// Smallest `k >= 1` with `self^k = id`.
    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = cur.compose(self);
            k += 1;
        }
        k
    }

    /// The identity of the same system.
    pub fn identity_like(&self) -> Self {
        RootAutomorphism {
            n: self.n,
            mat: coords::identity_matrix(self.n),
            inv: coords::identity_matrix(self.n),
            perm: (0..self.perm.len() as u32).collect(),
            perm_inv: (0..self.perm.len() as u32).collect(),
        }
    }

    /// `[self^0, self^1, ..., self^(order-1)]`.
    pub fn powers(&self) -> Vec<RootAutomorphism> {
        let mut out = vec![];
        let mut cur = self.identity_like();
        loop {
            out.push(cur.clone());
            cur = cur.compose(self);
            if cur.is_identity() {
                return out;
            }
        }
    }
}

/// Sorted, duplicate-free set of root indices closed under negation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subsystem {
    roots: Vec<usize>,
}

impl Subsystem {
    pub fn from_roots(roots: impl IntoIterator<Item = usize>) -> Self {
        let mut roots: Vec<usize> = roots.into_iter().collect();
        roots.sort_unstable();
        roots.dedup();
        Subsystem { roots }
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn contains(&self, root: usize) -> bool {
        self.roots.binary_search(&root).is_ok()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// The positive system `S ∩ R+`.
    pub fn standard_positive(&self, rs: &RootSystem) -> PositiveSubsystem {
        PositiveSubsystem {
            parent: self.clone(),
            positive: self.roots.iter().copied().filter(|&r| rs.is_positive(r)).collect(),
        }
    }

    pub fn is_symmetric(&self, rs: &RootSystem) -> bool {
        self.roots.iter().all(|&r| self.contains(rs.negate(r)))
    }

    pub fn is_closed(&self, rs: &RootSystem) -> bool {
        self.roots
            .iter()
            .tuple_combinations()
            .all(|(&a, &b)| match rs.root_sum(a, b) {
                Some(c) => self.contains(c),
                None => true,
            })
    }
}

/// A positive system of a subsystem: a chamber of that subsystem.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositiveSubsystem {
    parent: Subsystem,
    positive: Vec<usize>,
}

impl PositiveSubsystem {
    /// Checks that `positive ∪ -positive` partitions `parent` and that
    /// `positive` is closed under sums lying in `parent`.
    pub fn new(rs: &RootSystem, parent: Subsystem, positive: Vec<usize>) -> Result<Self> {
        let mut positive = positive;
        positive.sort_unstable();
        positive.dedup();
        let cand = PositiveSubsystem { parent, positive };
        if let Some(reason) = cand.violation(rs) {
            return Err(Error::NotAChamber(reason));
        }
        Ok(cand)
    }

    fn violation(&self, rs: &RootSystem) -> Option<String> {
        for &r in &self.positive {
            if !self.parent.contains(r) {
                return Some(format!("root {r} is not in the subsystem"));
            }
        }
        for &r in self.parent.roots() {
            let plus = self.contains(r);
            let minus = self.contains(rs.negate(r));
            if plus == minus {
                return Some(format!("root {r} and its negative are not split"));
            }
        }
        for (&a, &b) in self.positive.iter().tuple_combinations() {
            if let Some(c) = rs.root_sum(a, b) {
                if self.parent.contains(c) && !self.contains(c) {
                    return Some(format!("sum of roots {a} and {b} is not positive"));
                }
            }
        }
        None
    }

    pub fn parent(&self) -> &Subsystem {
        &self.parent
    }

    pub fn positive(&self) -> &[usize] {
        &self.positive
    }

    pub fn contains(&self, root: usize) -> bool {
        self.positive.binary_search(&root).is_ok()
    }

    /// Positive roots that are not a sum of two positive roots.
    pub fn simple_roots(&self, rs: &RootSystem) -> Vec<usize> {
        let decomposable: HashSet<usize> = self
            .positive
            .iter()
            .tuple_combinations()
            .filter_map(|(&a, &b)| rs.root_sum(a, b))
            .collect();
        self.positive
            .iter()
            .copied()
            .filter(|r| !decomposable.contains(r))
            .collect()
    }

    pub fn image(&self, a: &RootAutomorphism) -> PositiveSubsystem {
        let mut positive: Vec<usize> = self.positive.iter().map(|&r| a.root_image(r)).collect();
        positive.sort_unstable();
        let parent = Subsystem::from_roots(self.parent.roots.iter().map(|&r| a.root_image(r)));
        PositiveSubsystem { parent, positive }
    }

    /// Roots as coordinate vectors, for serialization.
    pub fn root_vectors(&self, rs: &RootSystem) -> Vec<Vec<i64>> {
        self.positive.iter().map(|&r| rs.root(r).to_vec()).collect()
    }
}

/// Per positive root: `floor(<alpha, x>)` and whether it is an integer.
/// Two points lie in the same open facet iff their signatures agree.
pub type FacetSignature = Vec<(i64, bool)>;

/// A facet of the wall arrangement, given by a rational witness point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    coords: Vec<Q>,
    point: Point,
    signature: FacetSignature,
    subsystem: Subsystem,
}

impl Facet {
    pub fn new(rs: &RootSystem, coords: Vec<Q>) -> Result<Self> {
        rs.check_dim(coords.len())?;
        let point = Point::from_rationals(&coords);
        let signature = rs.facet_signature(&point);
        let subsystem = rs.subsystem_at(&point);
        Ok(Facet {
            coords,
            point,
            signature,
            subsystem,
        })
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn point(&self) -> &Point {
        &self.point
    }

    /// The roots whose walls contain the facet.
    pub fn subsystem(&self) -> &Subsystem {
        &self.subsystem
    }

    pub fn signature(&self) -> &FacetSignature {
        &self.signature
    }

    pub fn contains_point(&self, rs: &RootSystem, p: &Point) -> bool {
        rs.facet_signature(p) == self.signature
    }

    /// `<alpha, x_F>` for a root of `R_F` (an integer).
    pub fn level(&self, rs: &RootSystem, root: usize) -> i64 {
        let (fl, _) = self.point.floor_pair(rs.root(root));
        fl
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    label: String,
    components: Vec<Component>,
    rank: usize,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`.
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    num_positive: usize,
    index: HashMap<Vec<i64>, usize>,
    component_of: Vec<usize>,
    highest: Vec<usize>,
    reflection_perms: Vec<Vec<u32>>,
    id: u64,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.cartan == other.cartan
    }
}

impl RootSystem {
    /// Irreducible system of the given type and rank.
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        Self::product(&[(kind, rank)])
    }

    /// Direct sum of irreducible factors.
    pub fn product(factors: &[(CartanType, usize)]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Parse("empty list of factors".into()));
        }
        let rank: usize = factors.iter().map(|f| f.1).sum();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut components = vec![];
        let mut offset = 0;
        for &(kind, n) in factors {
            let b = invariant_form(kind, n)?;
            for i in 0..n {
                for j in 0..n {
                    cartan[offset + i][offset + j] = 2 * b[i][j] / b[i][i];
                }
            }
            components.push(Component { kind, rank: n, offset });
            offset += n;
        }
        let label = components.iter().map(|c| format!("{}{}", c.kind, c.rank)).join("x");
        Ok(Self::from_cartan(label, components, cartan))
    }

    /// Parses labels such as `"A2"`, `"G2"` or `"A1xB2"`.
    pub fn parse(label: &str) -> Result<Self> {
        let factors = label
            .split(['x', '×', '+'])
            .map(|part| {
                let part = part.trim();
                let kind: CartanType = part
                    .get(..1)
                    .ok_or_else(|| Error::Parse(format!("bad label {label:?}")))?
                    .parse()?;
                let rank: usize = part[1..]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rank in {part:?}")))?;
                Ok((kind, rank))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::product(&factors)
    }

    fn from_cartan(label: String, components: Vec<Component>, cartan: Vec<Vec<i64>>) -> Self {
        let n = cartan.len();
        let mut found: Vec<(Vec<i64>, Vec<i64>)> = vec![];
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            if seen.insert(e.clone()) {
                queue.push_back((e, cartan[i].clone()));
            }
        }
        while let Some((beta, cobeta)) = queue.pop_front() {
            for i in 0..n {
                let k: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
                let mut img = beta.clone();
                img[i] -= k;
                if seen.insert(img.clone()) {
                    let c = cobeta[i];
                    let coimg: Vec<i64> = (0..n).map(|j| cobeta[j] - c * cartan[i][j]).collect();
                    queue.push_back((img, coimg));
                }
            }
            found.push((beta, cobeta));
        }
        let height = |v: &Vec<i64>| v.iter().sum::<i64>();
        let mut positive: Vec<(Vec<i64>, Vec<i64>)> =
            found.into_iter().filter(|(r, _)| r.iter().all(|&x| x >= 0)).collect();
        positive.sort_by_key(|(r, _)| (height(r), Reverse(r.clone())));
        let num_positive = positive.len();
        let mut roots: Vec<Vec<i64>> = positive.iter().map(|p| p.0.clone()).collect();
        let mut coroots: Vec<Vec<i64>> = positive.iter().map(|p| p.1.clone()).collect();
        for (r, c) in &positive {
            roots.push(r.iter().map(|x| -x).collect());
            coroots.push(c.iter().map(|x| -x).collect());
        }
        let index: HashMap<Vec<i64>, usize> = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let component_of: Vec<usize> = roots
            .iter()
            .map(|r| {
                let k = r.iter().position(|&x| x != 0).expect("nonzero root");
                components
                    .iter()
                    .position(|c| k >= c.offset && k < c.offset + c.rank)
                    .unwrap()
            })
            .collect();
        let highest = (0..components.len())
            .map(|c| {
                (0..num_positive)
                    .filter(|&r| component_of[r] == c)
                    .max_by_key(|&r| height(&roots[r]))
                    .unwrap()
            })
            .collect();
        let reflection_perms = (0..num_positive)
            .map(|b| {
                roots
                    .iter()
                    .map(|g| {
                        let k: i64 = g.iter().zip(&coroots[b]).map(|(x, y)| x * y).sum();
                        let img: Vec<i64> = g.iter().zip(&roots[b]).map(|(x, y)| x - k * y).collect();
                        index[&img] as u32
                    })
                    .collect()
            })
            .collect();
        let mut h = DefaultHasher::new();
        label.hash(&mut h);
        cartan.hash(&mut h);
        RootSystem {
            id: h.finish(),
            label,
            components,
            rank: n,
            cartan,
            roots,
            coroots,
            num_positive,
            index,
            component_of,
            highest,
            reflection_perms,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    #[inline]
    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    /// `alpha^vee` in fundamental coweight coordinates.
    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.coroots[i]
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Simple roots are indices `0..rank`, in Bourbaki order.
    pub fn simple_root_indices(&self) -> Vec<usize> {
        (0..self.rank).collect()
    }

    #[inline]
    pub fn is_positive(&self, i: usize) -> bool {
        i < self.num_positive
    }

    #[inline]
    pub fn negate(&self, i: usize) -> usize {
        if i < self.num_positive {
            i + self.num_positive
        } else {
            i - self.num_positive
        }
    }

    /// Positive member of the pair `{alpha, -alpha}`.
    #[inline]
    pub fn positive_of(&self, i: usize) -> usize {
        i % self.num_positive
    }

    pub fn root_sum(&self, a: usize, b: usize) -> Option<usize> {
        let s: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
        self.root_index(&s)
    }

    pub fn component_of_root(&self, i: usize) -> usize {
        self.component_of[i]
    }

    pub fn highest_root(&self, component: usize) -> usize {
        self.highest[component]
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    pub fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.rank {
            return Err(Error::Dimension {
                expected: self.rank,
                got,
            });
        }
        Ok(())
    }

    /// Exact `<alpha, v>`.
    pub fn pairing(&self, root: usize, v: &[Q]) -> Q {
        self.roots[root].iter().zip(v).map(|(&a, b)| b * a).sum()
    }

    pub fn pairing_int(&self, root: usize, v: &[i64]) -> i64 {
        self.roots[root].iter().zip(v).map(|(a, b)| a * b).sum()
    }

    pub fn fundamental_coweight(&self, i: usize) -> Coweight {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        Coweight(v)
    }

    pub fn coroot_coweight(&self, root: usize) -> Coweight {
        Coweight(self.coroots[root].clone())
    }

    /// Half the sum of the positive coroots (= the sum of the fundamental
    /// coweights).
    pub fn rho_vee(&self) -> Coweight {
        Coweight(vec![1; self.rank])
    }

    /// Whether `2 alpha` is never a root and every root comes with its
    /// negative.
    pub fn is_reduced(&self) -> bool {
        self.roots.iter().all(|r| {
            let d: Vec<i64> = r.iter().map(|x| 2 * x).collect();
            !self.index.contains_key(&d)
        })
    }

    /// `{alpha : <alpha, p> in Z}`.
    pub fn subsystem_at(&self, p: &Point) -> Subsystem {
        Subsystem::from_roots((0..self.roots.len()).filter(|&r| p.floor_pair(&self.roots[r]).1))
    }

    pub fn subsystem_r_f(&self, facet: &Facet) -> Subsystem {
        facet.subsystem().clone()
    }

    pub fn facet_signature(&self, p: &Point) -> FacetSignature {
        (0..self.num_positive).map(|r| p.floor_pair(&self.roots[r])).collect()
    }

    /// Whether `p` lies on no wall.
    pub fn is_generic(&self, p: &Point) -> bool {
        (0..self.num_positive).all(|r| !p.floor_pair(&self.roots[r]).1)
    }

    // ---- automorphisms ----

    pub fn identity(&self) -> RootAutomorphism {
        let m = self.roots.len() as u32;
        RootAutomorphism {
            n: self.rank,
            mat: coords::identity_matrix(self.rank),
            inv: coords::identity_matrix(self.rank),
            perm: (0..m).collect(),
            perm_inv: (0..m).collect(),
        }
    }

    /// Builds the automorphism with the given matrix on coweight coordinates.
    pub fn automorphism_from_matrix(&self, mat: Vec<i64>) -> Result<RootAutomorphism> {
        let n = self.rank;
        if mat.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                got: mat.len(),
            });
        }
        let qm: Vec<Q> = mat.iter().map(|&x| coords::q(x)).collect();
        let qinv = coords::invert(n, &qm).ok_or(Error::NotAnAutomorphism)?;
        if qinv.iter().any(|x| !x.is_integer()) {
            return Err(Error::NotAnAutomorphism);
        }
        let inv: Vec<i64> = qinv.iter().map(|x| x.to_integer()).collect();
        let image_of =
            |m: &[i64], r: &[i64]| -> Vec<i64> { (0..n).map(|k| (0..n).map(|j| r[j] * m[j * n + k]).sum()).collect() };
        let mut perm = Vec::with_capacity(self.roots.len());
        let mut perm_inv = Vec::with_capacity(self.roots.len());
        for r in &self.roots {
            perm.push(self.root_index(&image_of(&inv, r)).ok_or(Error::NotAnAutomorphism)? as u32);
            perm_inv.push(self.root_index(&image_of(&mat, r)).ok_or(Error::NotAnAutomorphism)? as u32);
        }
        Ok(RootAutomorphism {
            n,
            mat,
            inv,
            perm,
            perm_inv,
        })
    }

    /// Builds the automorphism inducing the given permutation of root
    /// indices, if one exists.
    pub fn automorphism_from_perm(&self, perm: &[usize]) -> Result<RootAutomorphism> {
        if perm.len() != self.roots.len() {
            return Err(Error::Dimension {
                expected: self.roots.len(),
                got: perm.len(),
            });
        }
        if perm.iter().any(|&p| p >= self.roots.len()) {
            return Err(Error::NotAnAutomorphism);
        }
        let n = self.rank;
        // Rows of `root_mat` are the images of the simple roots, so a root
        // with coordinates c maps to c * root_mat; the coweight matrix is the
        // inverse of that.
        let mut root_mat = vec![coords::q(0); n * n];
        for i in 0..n {
            for (k, &x) in self.roots[perm[i]].iter().enumerate() {
                root_mat[i * n + k] = coords::q(x);
            }
        }
        let rinv = coords::invert(n, &root_mat).ok_or(Error::NotAnAutomorphism)?;
        if rinv.iter().any(|x| !x.is_integer()) {
            return Err(Error::NotAnAutomorphism);
        }
        let mat: Vec<i64> = rinv.iter().map(|x| x.to_integer()).collect();
        let a = self.automorphism_from_matrix(mat)?;
        if a.perm.iter().zip(perm).any(|(&x, &y)| x as usize != y) {
            return Err(Error::NotAnAutomorphism);
        }
        Ok(a)
    }

    /// Reflection `v -> v - <beta, v> beta^vee`.
    pub fn reflection(&self, root: usize) -> RootAutomorphism {
        let n = self.rank;
        let b = self.positive_of(root);
        let mut mat = coords::identity_matrix(n);
        for j in 0..n {
            for k in 0..n {
                mat[j * n + k] -= self.coroots[b][j] * self.roots[b][k];
            }
        }
        let perm = self.reflection_perms[b].clone();
        RootAutomorphism {
            n,
            inv: mat.clone(),
            mat,
            perm_inv: perm.clone(),
            perm,
        }
    }

    /// `s_i` for a 1-based Bourbaki index.
    pub fn simple_reflection(&self, i: usize) -> Result<RootAutomorphism> {
        if i == 0 || i > self.rank {
            return Err(Error::Parse(format!("no simple reflection s{i} in rank {}", self.rank)));
        }
        Ok(self.reflection(i - 1))
    }

    /// Automorphisms permuting the simple roots (Dynkin diagram symmetries,
    /// including swaps of isomorphic factors). Identity first.
    pub fn diagram_automorphisms(&self) -> Vec<RootAutomorphism> {
        let n = self.rank;
        let mut out: Vec<RootAutomorphism> = (0..n)
            .permutations(n)
            .filter(|p| (0..n).all(|i| (0..n).all(|j| self.cartan[p[i]][p[j]] == self.cartan[i][j])))
            .map(|p| {
                let mut mat = vec![0i64; n * n];
                for k in 0..n {
                    mat[p[k] * n + k] = 1;
                }
                self.automorphism_from_matrix(mat).expect("diagram symmetry")
            })
            .collect();
        out.sort();
        if let Some(pos) = out.iter().position(|a| a.is_identity()) {
            let id = out.remove(pos);
            out.insert(0, id);
        }
        out
    }

    fn closure(&self, gens: Vec<RootAutomorphism>) -> Vec<RootAutomorphism> {
        let id = self.identity();
        let mut seen: HashSet<RootAutomorphism> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<RootAutomorphism> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// The finite Weyl group `W_0`, enumerated. Exponential in the rank.
    pub fn weyl_group(&self) -> Vec<RootAutomorphism> {
        self.closure((0..self.rank).map(|i| self.reflection(i)).collect())
    }

    /// `Aut(R) = W_0 ⋊ (diagram automorphisms)`, enumerated.
    pub fn automorphism_group(&self) -> Vec<RootAutomorphism> {
        let mut gens: Vec<RootAutomorphism> = (0..self.rank).map(|i| self.reflection(i)).collect();
        gens.extend(self.diagram_automorphisms().into_iter().filter(|a| !a.is_identity()));
        self.closure(gens)
    }

    /// Walks from the positive system `from` to `to` through simple
    /// reflections; returns `u` in the reflection group with `u(from) = to`.
    pub fn chamber_walk(&self, from: &PositiveSubsystem, to: &PositiveSubsystem) -> Result<RootAutomorphism> {
        if from.parent() != to.parent() {
            return Err(Error::NotAChamber("chambers of different subsystems".into()));
        }
        let mut u = self.identity();
        let mut cur = from.clone();
        let limit = from.positive().len() + 1;
        for _ in 0..=limit {
            if cur.positive() == to.positive() {
                return Ok(u);
            }
            let beta = cur
                .simple_roots(self)
                .into_iter()
                .find(|&b| !to.contains(b))
                .ok_or_else(|| Error::Internal("chamber walk stalled".into()))?;
            let s = self.reflection(beta);
            cur = cur.image(&s);
            u = s.compose(&u);
        }
        Err(Error::Internal("chamber walk did not terminate".into()))
    }

    pub fn positive_system(&self) -> PositiveSubsystem {
        self.full_subsystem().standard_positive(self)
    }

    pub fn full_subsystem(&self) -> Subsystem {
        Subsystem::from_roots(0..self.roots.len())
    }

    /// Splits `a = w ∘ d` with `w ∈ W_0` and `d` a diagram automorphism.
    pub fn weyl_diagram_split(&self, a: &RootAutomorphism) -> (RootAutomorphism, RootAutomorphism) {
        let plus = self.positive_system();
        let target = plus.image(a);
        let w = self.chamber_walk(&plus, &target).expect("positive systems of R");
        let d = w.inverse().compose(a);
        (w, d)
    }

    pub fn is_weyl(&self, a: &RootAutomorphism) -> bool {
        self.weyl_diagram_split(a).1.is_identity()
    }

    /// Whether `a` maps the positive roots to themselves.
    pub fn stabilizes_dominant_chamber(&self, a: &RootAutomorphism) -> bool {
        (0..self.num_positive).all(|r| self.is_positive(a.root_image(r)))
    }

    pub fn longest_element(&self) -> RootAutomorphism {
        let plus = self.positive_system();
        let minus = PositiveSubsystem {
            parent: plus.parent().clone(),
            positive: (self.num_positive..self.roots.len()).collect(),
        };
        self.chamber_walk(&plus, &minus).expect("opposite chamber")
    }

    /// Parses `id`, `s<i>`, `s` (rank one), `w0`, `delta`, `delta<k>` and
    /// products of those joined by `*`, composed left to right as maps
    /// (`"a*b"` is `a ∘ b`).
    pub fn named_automorphism(&self, name: &str) -> Result<RootAutomorphism> {
        let mut acc = self.identity();
        for part in name.split('*') {
            let part = part.trim();
            let a = match part {
                "id" | "e" | "1" => self.identity(),
                "w0" => self.longest_element(),
                "s" if self.rank == 1 => self.reflection(0),
                "delta" => {
                    let diagrams = self.diagram_automorphisms();
                    match diagrams.len() {
                        2 => diagrams[1].clone(),
                        1 => return Err(Error::Parse(format!("{} has no diagram automorphism", self.label))),
                        _ => {
                            return Err(Error::Parse(format!(
                                "{} has several diagram automorphisms; use delta1..delta{}",
                                self.label,
                                diagrams.len() - 1
                            )))
                        }
                    }
                }
                _ if part.starts_with("delta") => {
                    let k: usize = part[5..]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad automorphism name {part:?}")))?;
                    let diagrams = self.diagram_automorphisms();
                    diagrams
                        .get(k)
                        .cloned()
                        .ok_or_else(|| Error::Parse(format!("no diagram automorphism {part:?}")))?
                }
                _ if part.starts_with('s') => {
                    let i: usize = part[1..]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad automorphism name {part:?}")))?;
                    self.simple_reflection(i)?
                }
                _ => return Err(Error::Parse(format!("bad automorphism name {part:?}"))),
            };
            acc = acc.compose(&a);
        }
        Ok(acc)
    }

    // ---- W_0 action on coweights ----

    /// Applies simple reflections until every coordinate is non-negative.
    pub fn dominant_rational(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        while let Some(i) = v.iter().position(|x| *x < coords::q(0)) {
            let c = v[i];
            for (x, &a) in v.iter_mut().zip(&self.coroots[i]) {
                *x -= c * a;
            }
        }
        v
    }

    pub fn dominant(&self, c: &Coweight) -> Coweight {
        let mut v = c.0.clone();
        while let Some(i) = v.iter().position(|&x| x < 0) {
            let k = v[i];
            for (x, &a) in v.iter_mut().zip(&self.coroots[i]) {
                *x -= k * a;
            }
        }
        Coweight(v)
    }

    /// The `W_0`-orbit, sorted.
    pub fn weyl_orbit(&self, c: &Coweight) -> Vec<Coweight> {
        let mut seen: HashSet<Coweight> = HashSet::from([c.clone()]);
        let mut queue = VecDeque::from([c.clone()]);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank {
                let k = v.0[i];
                if k == 0 {
                    continue;
                }
                let img = Coweight((0..self.rank).map(|j| v.0[j] - k * self.coroots[i][j]).collect());
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let mut out: Vec<Coweight> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Whether a coweight lies in the coroot lattice `Q(R^vee)`.
    pub fn in_coroot_lattice(&self, v: &[i64]) -> bool {
        self.coroot_coefficients(&coords::integer_vec_to_q(v))
            .iter()
            .all(|x| x.is_integer())
    }

    /// Coefficients `c` with `v = sum_i c_i alpha_i^vee`.
    pub fn coroot_coefficients(&self, v: &[Q]) -> Vec<Q> {
        let n = self.rank;
        // v_j = sum_i c_i cartan[i][j], i.e. v = c * Cartan as row vectors.
        let m: Vec<Q> = self.cartan.iter().flatten().map(|&x| coords::q(x)).collect();
        let inv = coords::invert(n, &m).expect("Cartan matrix of a semisimple system is invertible");
        coords::row_times(n, v, &inv)
    }

    // ---- chambers and facets ----

    /// All positive systems of a closed symmetric subsystem, sorted with the
    /// standard one (`S ∩ R+`) first.
    pub fn chambers(&self, s: &Subsystem) -> Vec<PositiveSubsystem> {
        let start = s.standard_positive(self);
        let gens: Vec<RootAutomorphism> = start.positive().iter().map(|&b| self.reflection(b)).collect();
        let mut seen: HashSet<PositiveSubsystem> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for g in &gens {
                let img = c.image(g);
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let mut out: Vec<PositiveSubsystem> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// The vertices of the closure of the fundamental alcove of one
    /// irreducible component: the origin and `omega_i^vee / m_i`.
    pub fn fundamental_vertices(&self, component: usize) -> Vec<Vec<Q>> {
        let c = &self.components[component];
        let marks = self.root(self.highest[component]);
        let mut out = vec![vec![coords::q(0); self.rank]];
        for i in c.offset..c.offset + c.rank {
            let mut v = vec![coords::q(0); self.rank];
            v[i] = Q::new(1, marks[i]);
            out.push(v);
        }
        out
    }

    /// One witness point (the barycenter of its vertices) for every face of
    /// the closed fundamental alcove, including the alcove itself.
    pub fn fundamental_facets(&self) -> Vec<Facet> {
        let per_component: Vec<Vec<Vec<Q>>> = (0..self.components.len())
            .map(|c| {
                let verts = self.fundamental_vertices(c);
                (1u32..(1 << verts.len()))
                    .map(|mask| {
                        let chosen: Vec<&Vec<Q>> = verts
                            .iter()
                            .enumerate()
                            .filter(|(k, _)| mask >> k & 1 == 1)
                            .map(|(_, v)| v)
                            .collect();
                        let cnt = coords::q(chosen.len() as i64);
                        (0..self.rank)
                            .map(|j| chosen.iter().map(|v| v[j]).sum::<Q>() / cnt)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        per_component
            .into_iter()
            .multi_cartesian_product()
            .map(|parts| {
                let mut x = vec![coords::q(0); self.rank];
                for p in parts {
                    for j in 0..self.rank {
                        x[j] += p[j];
                    }
                }
                Facet::new(self, x).expect("dimension matches")
            })
            .collect()
    }

    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            label: self.label.clone(),
            rank: self.rank,
            roots: self.roots.clone(),
            simple: self.simple_root_indices(),
            coroots: self.coroots.clone(),
            cartan: self.cartan.clone(),
        }
    }
}

/// Serialized form of a [`RootSystem`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RootSystemJson {
    pub label: String,
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub simple: Vec<usize>,
    pub coroots: Vec<Vec<i64>>,
    pub cartan: Vec<Vec<i64>>,
}
