use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use super::alcove::{extended_word, length, omega_decompose, word_labels, word_product, Alcove};
use super::element::Element;
use crate::error::{Error, Result};
use crate::root_system::{Facet, RootSystem};

/// `x <=_C y`: equal `Omega_C` parts and Bruhat order on the `W_a` parts,
/// decided by the lifting property along a reduced word of `y`.
pub fn bruhat_leq(rs: &RootSystem, x: &Element, y: &Element, c: &Alcove) -> bool {
    let (mut w, gx) = omega_decompose(rs, x, c);
    let (word, gy) = extended_word(rs, y, c);
    if gx != gy {
        return false;
    }
    let mut lw = length(rs, &w, c);
    for (k, &j) in word.iter().enumerate() {
        if lw as usize > word.len() - k {
            return false;
        }
        let sw = &c.generators()[j].reflection * &w;
        let l = length(rs, &sw, c);
        if l < lw {
            w = sw;
            lw = l;
        }
    }
    lw == 0
}

/// Subword criterion: some reduced subword of one reduced word of `y`
/// multiplies to `x`. Independent of [`bruhat_leq`]; exponential in the worst
/// case.
pub fn bruhat_leq_subword(rs: &RootSystem, x: &Element, y: &Element, c: &Alcove) -> bool {
    let (target, gx) = omega_decompose(rs, x, c);
    let (word, gy) = extended_word(rs, y, c);
    if gx != gy {
        return false;
    }
    let lt = length(rs, &target, c);
    let n = word.len();
    if lt as usize > n {
        return false;
    }
    // Prefixes u of reduced subwords for the target: l(u) + l(u^-1 t) = l(t).
    let mut states: HashMap<Element, u64> = HashMap::from([(Element::identity(rs), 0)]);
    for (k, &j) in word.iter().enumerate() {
        let remaining = (n - k - 1) as u64;
        let g = &c.generators()[j].reflection;
        let mut next: HashMap<Element, u64> = HashMap::new();
        for (u, &lu) in &states {
            if lt - lu <= remaining {
                next.insert(u.clone(), lu);
            }
            let v = u * g;
            let lv = lu + 1;
            if lv <= lt
                && length(rs, &v, c) == lv
                && lv + length(rs, &(&v.inverse() * &target), c) == lt
                && lt - lv <= remaining
            {
                next.insert(v, lv);
            }
        }
        states = next;
    }
    states.contains_key(&target)
}

/// `x <=' y`: same `Omega_C` part and `l(y) = l(x) + l(x^-1 y)`.
pub fn weak_bruhat_leq(rs: &RootSystem, x: &Element, y: &Element, c: &Alcove) -> bool {
    let (_, gx) = omega_decompose(rs, x, c);
    let (_, gy) = omega_decompose(rs, y, c);
    gx == gy && length(rs, y, c) == length(rs, x, c) + length(rs, &(&x.inverse() * y), c)
}

/// Elements covered by `x`: delete one letter of a reduced word and keep
/// those of length `l(x) - 1`.
pub fn lower_covers(rs: &RootSystem, x: &Element, c: &Alcove) -> Vec<Element> {
    let (word, gamma) = extended_word(rs, x, c);
    if word.is_empty() {
        return vec![];
    }
    let target = word.len() as u64 - 1;
    let mut out: Vec<Element> = (0..word.len())
        .map(|i| {
            let sub: Vec<usize> = word
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, &j)| j)
                .collect();
            &word_product(rs, &sub, c) * &gamma
        })
        .filter(|e| length(rs, e, c) == target)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `{w : w <=_C x}`, sorted by length and then canonical order.
pub fn lower_interval(rs: &RootSystem, x: &Element, c: &Alcove) -> Vec<Element> {
    lower_closure(rs, std::slice::from_ref(x), c)
}

/// Union of the lower intervals of `tops`, by downward search through
/// covers.
pub fn lower_closure(rs: &RootSystem, tops: &[Element], c: &Alcove) -> Vec<Element> {
    let mut seen: HashSet<Element> = tops.iter().cloned().collect();
    let mut queue: VecDeque<Element> = tops.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for y in lower_covers(rs, &x, c) {
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    sort_by_length(rs, seen.into_iter().collect(), c)
}

pub fn sort_by_length(rs: &RootSystem, elems: Vec<Element>, c: &Alcove) -> Vec<Element> {
    let mut keyed: Vec<(u64, Element)> = elems.into_iter().map(|e| (length(rs, &e, c), e)).collect();
    keyed.sort();
    keyed.into_iter().map(|(_, e)| e).collect()
}

/// `W_F`: the finite group generated by the reflections in the walls
/// containing `facet`.
pub fn facet_group(rs: &RootSystem, facet: &Facet) -> Vec<Element> {
    let gens: Vec<Element> = facet
        .subsystem()
        .roots()
        .iter()
        .filter(|&&r| rs.is_positive(r))
        .map(|&r| Element::affine_reflection(rs, r, facet.level(rs, r)))
        .collect();
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

/// Minimal-length element of `W_F eta W_F`.
pub fn double_coset_min(rs: &RootSystem, eta: &Element, facet: &Facet, c: &Alcove) -> Result<Element> {
    if !c.closure_contains(rs, facet.point()) {
        return Err(Error::NotAdjacent);
    }
    let wf = facet_group(rs, facet);
    Ok(double_coset_min_in(rs, eta, &wf, c))
}

/// As [`double_coset_min`] with `W_F` already enumerated.
pub fn double_coset_min_in(rs: &RootSystem, eta: &Element, wf: &[Element], c: &Alcove) -> Element {
    let mut best: Option<(u64, Element)> = None;
    for a in wf {
        let ae = a * eta;
        for b in wf {
            let x = &ae * b;
            let key = (length(rs, &x, c), x);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.expect("W_F contains the identity").1
}

/// Node label: a reduced word in the wall reflections of `C`, with the
/// `Omega_C` part marked when nontrivial.
pub fn element_label(rs: &RootSystem, x: &Element, c: &Alcove) -> String {
    let (word, gamma) = extended_word(rs, x, c);
    let mut s = if word.is_empty() {
        "e".to_string()
    } else {
        word_labels(&word, c).join(" ")
    };
    if !gamma.is_identity() {
        s.push_str(" ω");
    }
    s
}

/// Hasse diagram of the Bruhat order restricted to `elems`, as DOT. An edge
/// `a -> b` means `b` covers `a`.
pub fn hasse_dot(rs: &RootSystem, elems: &[Element], c: &Alcove) -> String {
    let index: HashMap<&Element, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut out = String::from("digraph bruhat {\n  rankdir=BT;\n");
    for (i, e) in elems.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", element_label(rs, e, c));
    }
    for (i, e) in elems.iter().enumerate() {
        for d in lower_covers(rs, e, c) {
            if let Some(&k) = index.get(&d) {
                let _ = writeln!(out, "  n{k} -> n{i};");
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::q;
    use crate::root_system::Coweight;

    struct A1 {
        rs: RootSystem,
        c: Alcove,
        /// reflection in the wall p = 0
        r0: Element,
        /// reflection in the wall p = 1
        r1: Element,
    }

    fn a1() -> A1 {
        let rs = RootSystem::parse("A1").unwrap();
        let c = Alcove::fundamental(&rs);
        let r0 = Element::affine_reflection(&rs, 0, 0);
        let r1 = Element::affine_reflection(&rs, 0, 1);
        A1 { rs, c, r0, r1 }
    }

    #[test]
    fn a1_examples() {
        let A1 { rs, c, r0, r1 } = a1();
        let r1r0 = &r1 * &r0;
        let r0r1 = &r0 * &r1;
        assert!(bruhat_leq(&rs, &r1r0, &r1r0, &c));
        assert!(bruhat_leq(&rs, &r0, &r1r0, &c));
        assert!(!bruhat_leq(&rs, &r1, &r0, &c));
        let t = Element::translation(&rs, &Coweight(vec![2]));
        assert_eq!(t, r1r0);
        let ts = &t * &Element::linear(&rs, rs.reflection(0));
        assert!(bruhat_leq(&rs, &ts, &t, &c));
        assert!(bruhat_leq_subword(&rs, &ts, &t, &c));
        assert!(weak_bruhat_leq(&rs, &r0, &r0r1, &c));
        assert!(!weak_bruhat_leq(&rs, &r0, &r1r0, &c));
        assert!(weak_bruhat_leq(&rs, &Element::identity(&rs), &t, &c));
    }

    #[test]
    fn omega_parts_must_agree() {
        let A1 { rs, c, .. } = a1();
        let t1 = Element::translation(&rs, &Coweight(vec![1]));
        assert!(!bruhat_leq(&rs, &Element::identity(&rs), &t1, &c));
        assert!(!bruhat_leq_subword(&rs, &Element::identity(&rs), &t1, &c));
    }

    #[test]
    fn a1_interval_of_translation() {
        let A1 { rs, c, .. } = a1();
        let t = Element::translation(&rs, &Coweight(vec![2]));
        let below = lower_interval(&rs, &t, &c);
        assert_eq!(below.len(), 4);
        let dot = hasse_dot(&rs, &below, &c);
        assert_eq!(dot.matches("->").count(), 4);
    }

    #[test]
    fn a1_double_coset() {
        let A1 { rs, c, r1, .. } = a1();
        let f = Facet::new(&rs, vec![q(0)]).unwrap();
        let wf = facet_group(&rs, &f);
        assert_eq!(wf.len(), 2);
        let t = Element::translation(&rs, &Coweight(vec![2]));
        let lens: Vec<u64> = wf
            .iter()
            .flat_map(|a| wf.iter().map(move |b| (a, b)))
            .map(|(a, b)| length(&rs, &(&(a * &t) * b), &c))
            .collect();
        let mut sorted = lens.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 2, 3]);
        let m = double_coset_min(&rs, &t, &f, &c).unwrap();
        assert_eq!(m, r1);
        assert_eq!(double_coset_min(&rs, &m, &f, &c).unwrap(), m);
        let interior = Facet::new(&rs, vec![crate::coords::Q::new(1, 2)]).unwrap();
        assert_eq!(double_coset_min(&rs, &t, &interior, &c).unwrap(), t);
    }

    #[test]
    fn recursion_matches_subword_on_a2_ball() {
        let rs = RootSystem::parse("A2").unwrap();
        let c = Alcove::fundamental(&rs);
        let ball = super::super::alcove::length_ball(&rs, &c, 3);
        for x in &ball {
            for y in &ball {
                assert_eq!(bruhat_leq(&rs, x, y, &c), bruhat_leq_subword(&rs, x, y, &c), "{x} {y}");
            }
        }
    }
}
