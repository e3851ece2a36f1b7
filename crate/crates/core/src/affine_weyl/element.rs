use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::coords::{self, Point, Q};
use crate::error::{Error, Result};
use crate::root_system::{Coweight, RootAutomorphism, RootSystem};

/// An element `p -> A(p) + v` of the extended affine Weyl group
/// `P(R^vee) ⋊ Aut(R)`. The translation is integral in fundamental coweight
/// coordinates, which is exactly the normalization condition.
#[derive(Clone, Debug)]
pub struct Element {
    sys: u64,
    linear: RootAutomorphism,
    translation: Vec<i64>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.sys == other.sys && self.translation == other.translation && self.linear == other.linear
    }
}
impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.linear.hash(state);
        self.translation.hash(state);
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.linear, &self.translation).cmp(&(&other.linear, &other.translation))
    }
}

impl Element {
    pub fn new(rs: &RootSystem, linear: RootAutomorphism, translation: Vec<i64>) -> Result<Self> {
        rs.check_dim(translation.len())?;
        rs.check_dim(linear.rank())?;
        Ok(Element {
            sys: rs.id(),
            linear,
            translation,
        })
    }

    /// Accepts a rational translation only when it pairs integrally with
    /// every root.
    pub fn with_rational_translation(rs: &RootSystem, linear: RootAutomorphism, v: &[Q]) -> Result<Self> {
        rs.check_dim(v.len())?;
        let c = Coweight::from_rationals(v)?;
        Element::new(rs, linear, c.0)
    }

    pub fn identity(rs: &RootSystem) -> Self {
        Element {
            sys: rs.id(),
            linear: rs.identity(),
            translation: vec![0; rs.rank()],
        }
    }

    /// `t_lambda`.
    pub fn translation(rs: &RootSystem, lambda: &Coweight) -> Self {
        assert_eq!(lambda.0.len(), rs.rank(), "coweight of wrong rank");
        Element {
            sys: rs.id(),
            linear: rs.identity(),
            translation: lambda.0.clone(),
        }
    }

    pub fn linear(rs: &RootSystem, a: RootAutomorphism) -> Self {
        Element {
            sys: rs.id(),
            linear: a,
            translation: vec![0; rs.rank()],
        }
    }

    /// Reflection in the wall `{x : <alpha, x> = level}`:
    /// `x -> s_alpha(x) + level * alpha^vee`.
    pub fn affine_reflection(rs: &RootSystem, root: usize, level: i64) -> Self {
        let translation = rs.coroot(root).iter().map(|c| c * level).collect();
        Element {
            sys: rs.id(),
            linear: rs.reflection(root),
            translation,
        }
    }

    pub fn linear_part(&self) -> &RootAutomorphism {
        &self.linear
    }

    pub fn translation_part(&self) -> &[i64] {
        &self.translation
    }

    pub fn system_id(&self) -> u64 {
        self.sys
    }

    pub fn is_identity(&self) -> bool {
        self.translation.iter().all(|&x| x == 0) && self.linear.is_identity()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Element) -> Result<Element> {
        if self.sys != other.sys || self.translation.len() != other.translation.len() {
            return Err(Error::SystemMismatch);
        }
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &Element) -> Element {
        let mut translation = self.linear.apply(&other.translation);
        translation.iter_mut().zip(&self.translation).for_each(|(a, b)| *a += b);
        Element {
            sys: self.sys,
            linear: self.linear.compose(&other.linear),
            translation,
        }
    }

    pub fn inverse(&self) -> Element {
        let linear = self.linear.inverse();
        let translation = linear.apply(&self.translation).into_iter().map(|x| -x).collect();
        Element {
            sys: self.sys,
            linear,
            translation,
        }
    }

    pub fn pow(&self, k: usize) -> Element {
        let mut out = Element {
            sys: self.sys,
            linear: self.linear.identity_like(),
            translation: vec![0; self.translation.len()],
        };
        for _ in 0..k {
            out = out.compose_unchecked(self);
        }
        out
    }

    #[inline]
    pub fn act(&self, p: &Point) -> Point {
        p.affine_image(self.linear.matrix(), &self.translation)
    }

    pub fn act_rational(&self, p: &[Q]) -> Vec<Q> {
        let mut out = self.linear.apply_rational(p);
        out.iter_mut()
            .zip(&self.translation)
            .for_each(|(a, &b)| *a += coords::q(b));
        out
    }

    /// Compact canonical text: images of the simple roots (simple-root
    /// coordinates) and the translation.
    pub fn canonical(&self, rs: &RootSystem) -> String {
        let lin = (0..rs.rank())
            .map(|i| rs.root(self.linear.root_image(i)).iter().join(","))
            .join(";");
        format!("lin[{}] t[{}]", lin, self.translation.iter().join(","))
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            linear: LinearJson::Perm(self.linear.perm().iter().map(|&x| x as usize).collect()),
            translation: self
                .translation
                .iter()
                .map(|&x| coords::format_rational(&coords::q(x)))
                .collect(),
        }
    }

    pub fn from_json(rs: &RootSystem, json: &ElementJson) -> Result<Element> {
        let linear = match &json.linear {
            LinearJson::Name(name) => rs.named_automorphism(name)?,
            LinearJson::Perm(p) => rs.automorphism_from_perm(p)?,
        };
        let v = if json.translation.is_empty() {
            vec![coords::q(0); rs.rank()]
        } else {
            json.translation
                .iter()
                .map(|s| coords::parse_rational(s))
                .collect::<Result<Vec<_>>>()?
        };
        Element::with_rational_translation(rs, linear, &v)
    }
}

impl Mul for &Element {
    type Output = Element;

    /// Composition; panics if the elements come from different systems.
    fn mul(self, rhs: &Element) -> Element {
        self.compose(rhs).expect("composing elements of different root systems")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(A={:?}, t=({}))",
            self.linear.matrix(),
            self.translation.iter().join(",")
        )
    }
}

/// Linear part in JSON: a name (`"id"`, `"s1"`, `"w0"`, `"delta"`, products
/// with `*`) or an explicit permutation of root indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LinearJson {
    Name(String),
    Perm(Vec<usize>),
}

/// `{"linear": ..., "translation": ["p/q", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub linear: LinearJson,
    #[serde(default)]
    pub translation: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::q;

    #[test]
    fn group_laws() {
        let rs = RootSystem::parse("B2").unwrap();
        let a = Element::new(&rs, rs.named_automorphism("s1*s2").unwrap(), vec![1, -1]).unwrap();
        let b = Element::new(&rs, rs.named_automorphism("s2").unwrap(), vec![0, 2]).unwrap();
        assert!((&a * &a.inverse()).is_identity());
        let p = Point::from_rationals(&[Q::new(1, 5), Q::new(1, 7)]);
        assert_eq!((&a * &b).act(&p), a.act(&b.act(&p)));
    }

    #[test]
    fn a1_translation_and_reflection() {
        let rs = RootSystem::parse("A1").unwrap();
        let t = Element::translation(&rs, &Coweight(vec![2]));
        assert_eq!(t.act_rational(&[q(0)]), vec![q(2)]);
        let s = Element::linear(&rs, rs.reflection(0));
        // p -> -(p + 2)
        let st = &s * &t;
        assert_eq!(st.act_rational(&[Q::new(1, 2)]), vec![Q::new(-5, 2)]);
        // reflection in the wall p = 1 is p -> 2 - p
        let r = Element::affine_reflection(&rs, 0, 1);
        assert_eq!(r, &t * &s);
    }

    #[test]
    fn mismatched_systems_are_rejected() {
        let a1 = RootSystem::parse("A1").unwrap();
        let g = RootSystem::parse("A1xA1").unwrap();
        let x = Element::identity(&a1);
        let y = Element::identity(&g);
        assert_eq!(x.compose(&y), Err(Error::SystemMismatch));
    }

    #[test]
    fn json_roundtrip_and_names() {
        let rs = RootSystem::parse("A2").unwrap();
        let e = Element::new(&rs, rs.named_automorphism("delta*s1").unwrap(), vec![1, 0]).unwrap();
        let js = serde_json::to_string(&e.to_json()).unwrap();
        let back: ElementJson = serde_json::from_str(&js).unwrap();
        assert_eq!(Element::from_json(&rs, &back).unwrap(), e);
        let named: ElementJson = serde_json::from_str(r#"{"linear":"delta","translation":["0","1/1"]}"#).unwrap();
        let d = Element::from_json(&rs, &named).unwrap();
        assert_eq!(d.translation_part(), &[0, 1]);
        let bad: ElementJson = serde_json::from_str(r#"{"linear":"id","translation":["1/2","0"]}"#).unwrap();
        assert!(Element::from_json(&rs, &bad).is_err());
    }
}
