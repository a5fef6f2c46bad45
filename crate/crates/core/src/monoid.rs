//! Index monoids: the lattices on which configurations live.
//!
//! Five kinds are supported: the additive lattices on naturals, integers and
//! integer tuples, the positive integers under multiplication, and the
//! positive rationals under multiplication. Each carries a left-invariant
//! metric; the additive ones measure absolute difference (max-norm on
//! tuples), the multiplicative ones measure absolute log-ratio.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Absolute tolerance for real-valued metric comparisons.
pub const METRIC_TOL: f64 = 1e-12;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MonoidKind {
    AdditiveN,
    AdditiveZ,
    AdditiveZd(u8),
    MultiplicativeNstar,
    MultiplicativeQstar,
}

impl MonoidKind {
    /// Name accepted in spec files and CLI flags.
    pub fn name(&self) -> String {
        match self {
            MonoidKind::AdditiveN => "additive-N".into(),
            MonoidKind::AdditiveZ => "additive-Z".into(),
            MonoidKind::AdditiveZd(d) => format!("additive-Z{d}"),
            MonoidKind::MultiplicativeNstar => "multiplicative-Nstar".into(),
            MonoidKind::MultiplicativeQstar => "multiplicative-Qstar".into(),
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "additive-N" => Ok(MonoidKind::AdditiveN),
            "additive-Z" => Ok(MonoidKind::AdditiveZ),
            "additive-Z2" => Ok(MonoidKind::AdditiveZd(2)),
            "additive-Z3" => Ok(MonoidKind::AdditiveZd(3)),
            "multiplicative-Nstar" => Ok(MonoidKind::MultiplicativeNstar),
            "multiplicative-Qstar" => Ok(MonoidKind::MultiplicativeQstar),
            _ => Err(Error::InvalidInput(format!("unknown monoid name `{name}`"))),
        }
    }
}

impl fmt::Display for MonoidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A lattice point. Which variants are valid depends on the monoid kind.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Element {
    /// additive-N (nonnegative) and additive-Z.
    Int(i64),
    /// additive-Zd.
    Tuple(Vec<i64>),
    /// multiplicative-Nstar; always >= 1.
    Nat(u64),
    /// multiplicative-Qstar; reduced positive fraction.
    Ratio(u64, u64),
}

impl Element {
    pub fn int(v: i64) -> Self {
        Element::Int(v)
    }

    pub fn tuple(v: Vec<i64>) -> Self {
        Element::Tuple(v)
    }

    pub fn nat(v: u64) -> Self {
        Element::Nat(v)
    }

    /// Builds a reduced positive fraction.
    pub fn ratio(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidInput(
                "rational lattice points must be positive".into(),
            ));
        }
        let g = gcd(num, den);
        Ok(Element::Ratio(num / g, den / g))
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Element::Int(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self {
            Element::Nat(v) => Some(*v),
            _ => None,
        }
    }

    fn variant_rank(&self) -> u8 {
        match self {
            Element::Int(_) => 0,
            Element::Tuple(_) => 1,
            Element::Nat(_) => 2,
            Element::Ratio(_, _) => 3,
        }
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Element::Int(a), Element::Int(b)) => a.cmp(b),
            (Element::Tuple(a), Element::Tuple(b)) => a.cmp(b),
            (Element::Nat(a), Element::Nat(b)) => a.cmp(b),
            (Element::Ratio(an, ad), Element::Ratio(bn, bd)) => {
                // Compare by value; reduced form makes equality exact.
                let lhs = (*an as u128) * (*bd as u128);
                let rhs = (*bn as u128) * (*ad as u128);
                lhs.cmp(&rhs).then_with(|| an.cmp(bn))
            }
            _ => self.variant_rank().cmp(&other.variant_rank()),
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(v) => write!(f, "{v}"),
            Element::Tuple(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
            Element::Nat(v) => write!(f, "{v}"),
            Element::Ratio(n, d) => {
                if *d == 1 {
                    write!(f, "{n}")
                } else {
                    write!(f, "{n}/{d}")
                }
            }
        }
    }
}

/// A finite ordered set of lattice points, kept sorted in the canonical
/// per-kind order and deduplicated.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IndexSet(Vec<Element>);

impl IndexSet {
    pub fn new(elems: impl IntoIterator<Item = Element>) -> Self {
        let mut v: Vec<Element> = elems.into_iter().collect();
        v.sort();
        v.dedup();
        IndexSet(v)
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    pub fn singleton(e: Element) -> Self {
        IndexSet(vec![e])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.0.binary_search(e).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.0.iter()
    }

    pub fn elements(&self) -> &[Element] {
        &self.0
    }

    pub fn first(&self) -> Option<&Element> {
        self.0.first()
    }

    pub fn last(&self) -> Option<&Element> {
        self.0.last()
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        IndexSet::new(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet(
            self.0
                .iter()
                .filter(|e| other.contains(e))
                .cloned()
                .collect(),
        )
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|e| other.contains(e))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}

impl FromIterator<Element> for IndexSet {
    fn from_iter<T: IntoIterator<Item = Element>>(iter: T) -> Self {
        IndexSet::new(iter)
    }
}

/// A supported index monoid together with its metric and capability flags.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MonoidSpec {
    pub kind: MonoidKind,
}

impl MonoidSpec {
    pub fn new(kind: MonoidKind) -> Self {
        MonoidSpec { kind }
    }

    pub fn additive_n() -> Self {
        MonoidSpec::new(MonoidKind::AdditiveN)
    }

    pub fn additive_z() -> Self {
        MonoidSpec::new(MonoidKind::AdditiveZ)
    }

    pub fn additive_zd(d: u8) -> Self {
        MonoidSpec::new(MonoidKind::AdditiveZd(d))
    }

    pub fn multiplicative_nstar() -> Self {
        MonoidSpec::new(MonoidKind::MultiplicativeNstar)
    }

    pub fn multiplicative_qstar() -> Self {
        MonoidSpec::new(MonoidKind::MultiplicativeQstar)
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(MonoidSpec::new(MonoidKind::from_name(name)?))
    }

    pub fn name(&self) -> String {
        self.kind.name()
    }

    pub fn identity(&self) -> Element {
        match self.kind {
            MonoidKind::AdditiveN | MonoidKind::AdditiveZ => Element::Int(0),
            MonoidKind::AdditiveZd(d) => Element::Tuple(vec![0; d as usize]),
            MonoidKind::MultiplicativeNstar => Element::Nat(1),
            MonoidKind::MultiplicativeQstar => Element::Ratio(1, 1),
        }
    }

    pub fn is_group(&self) -> bool {
        matches!(
            self.kind,
            MonoidKind::AdditiveZ | MonoidKind::AdditiveZd(_) | MonoidKind::MultiplicativeQstar
        )
    }

    pub fn is_cancellative(&self) -> bool {
        true
    }

    pub fn balls_locally_finite(&self) -> bool {
        !matches!(self.kind, MonoidKind::MultiplicativeQstar)
    }

    pub fn is_countable(&self) -> bool {
        true
    }

    /// True when the monoid embeds in a group where for all g, h one of
    /// g^-1 h or h^-1 g stays inside the monoid. Additive kinds and the
    /// rationals qualify; the multiplicative naturals do not (2 and 3
    /// divide each other in neither direction).
    pub fn divisibility_extension(&self) -> bool {
        !matches!(self.kind, MonoidKind::MultiplicativeNstar)
    }

    pub fn validate(&self, e: &Element) -> Result<()> {
        let ok = match (self.kind, e) {
            (MonoidKind::AdditiveN, Element::Int(v)) => *v >= 0,
            (MonoidKind::AdditiveZ, Element::Int(_)) => true,
            (MonoidKind::AdditiveZd(d), Element::Tuple(v)) => v.len() == d as usize,
            (MonoidKind::MultiplicativeNstar, Element::Nat(v)) => *v >= 1,
            (MonoidKind::MultiplicativeQstar, Element::Ratio(n, d)) => *n >= 1 && *d >= 1,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                kind: self.kind,
                element: e.to_string(),
            })
        }
    }

    /// The monoid operation g·h.
    pub fn op(&self, g: &Element, h: &Element) -> Result<Element> {
        self.validate(g)?;
        self.validate(h)?;
        Ok(match (g, h) {
            (Element::Int(a), Element::Int(b)) => Element::Int(a + b),
            (Element::Tuple(a), Element::Tuple(b)) => {
                Element::Tuple(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Element::Nat(a), Element::Nat(b)) => Element::Nat(a * b),
            (Element::Ratio(an, ad), Element::Ratio(bn, bd)) => Element::ratio(an * bn, ad * bd)?,
            _ => unreachable!("validated"),
        })
    }

    /// The left-invariant metric.
    pub fn metric(&self, g: &Element, h: &Element) -> Result<f64> {
        self.validate(g)?;
        self.validate(h)?;
        Ok(match (g, h) {
            (Element::Int(a), Element::Int(b)) => (a - b).abs() as f64,
            (Element::Tuple(a), Element::Tuple(b)) => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .max()
                .unwrap_or(0) as f64,
            (Element::Nat(a), Element::Nat(b)) => ((*a as f64).ln() - (*b as f64).ln()).abs(),
            (Element::Ratio(an, ad), Element::Ratio(bn, bd)) => {
                let la = (*an as f64).ln() - (*ad as f64).ln();
                let lb = (*bn as f64).ln() - (*bd as f64).ln();
                (la - lb).abs()
            }
            _ => unreachable!("validated"),
        })
    }

    /// Distance from the identity.
    pub fn norm(&self, g: &Element) -> Result<f64> {
        self.metric(g, &self.identity())
    }

    /// The translated index set gN = { g·i : i in N }, in canonical order.
    /// All supported kinds are left-cancellative, so cardinality is
    /// preserved and the correspondence i -> g·i is recoverable via
    /// [`MonoidSpec::op`].
    pub fn translate(&self, g: &Element, set: &IndexSet) -> Result<IndexSet> {
        let mut out = Vec::with_capacity(set.len());
        for i in set.iter() {
            out.push(self.op(g, i)?);
        }
        Ok(IndexSet::new(out))
    }

    /// Exact enumeration of the closed ball { h : d(h, center) <= radius }.
    pub fn ball(&self, center: &Element, radius: f64) -> Result<IndexSet> {
        self.validate(center)?;
        if radius < 0.0 {
            return Ok(IndexSet::empty());
        }
        let r = radius + METRIC_TOL;
        match (self.kind, center) {
            (MonoidKind::AdditiveN, Element::Int(c)) => {
                let lo = ((*c as f64) - r).ceil().max(0.0) as i64;
                let hi = ((*c as f64) + r).floor() as i64;
                Ok(IndexSet::new((lo..=hi).map(Element::Int)))
            }
            (MonoidKind::AdditiveZ, Element::Int(c)) => {
                let lo = ((*c as f64) - r).ceil() as i64;
                let hi = ((*c as f64) + r).floor() as i64;
                Ok(IndexSet::new((lo..=hi).map(Element::Int)))
            }
            (MonoidKind::AdditiveZd(_), Element::Tuple(c)) => {
                let k = r.floor() as i64;
                let mut points = vec![Vec::new()];
                for c_i in c {
                    let mut next = Vec::new();
                    for p in &points {
                        for v in (c_i - k)..=(c_i + k) {
                            let mut q = p.clone();
                            q.push(v);
                            next.push(q);
                        }
                    }
                    points = next;
                }
                Ok(IndexSet::new(points.into_iter().map(Element::Tuple)))
            }
            (MonoidKind::MultiplicativeNstar, Element::Nat(c)) => {
                let lo = ((*c as f64) * (-radius).exp() - METRIC_TOL).ceil().max(1.0) as u64;
                let hi = ((*c as f64) * radius.exp() + METRIC_TOL).floor() as u64;
                let lc = (*c as f64).ln();
                Ok(IndexSet::new((lo..=hi).filter_map(|n| {
                    let d = ((n as f64).ln() - lc).abs();
                    (d <= r).then_some(Element::Nat(n))
                })))
            }
            (MonoidKind::MultiplicativeQstar, _) => Err(Error::UnboundedBall(self.kind)),
            _ => unreachable!("validated"),
        }
    }

    /// The unique n with g·n = target, when it exists in the monoid.
    /// Uniqueness follows from cancellativity of every supported kind.
    pub fn solve_right(&self, g: &Element, target: &Element) -> Result<Option<Element>> {
        self.validate(g)?;
        self.validate(target)?;
        let n = match (g, target) {
            (Element::Int(a), Element::Int(t)) => {
                let n = t - a;
                if self.kind == MonoidKind::AdditiveN && n < 0 {
                    return Ok(None);
                }
                Some(Element::Int(n))
            }
            (Element::Tuple(a), Element::Tuple(t)) => Some(Element::Tuple(
                t.iter().zip(a).map(|(x, y)| x - y).collect(),
            )),
            (Element::Nat(a), Element::Nat(t)) => {
                if t % a == 0 {
                    Some(Element::Nat(t / a))
                } else {
                    None
                }
            }
            (Element::Ratio(an, ad), Element::Ratio(tn, td)) => {
                Some(Element::ratio(tn * ad, td * an)?)
            }
            _ => unreachable!("validated"),
        };
        Ok(n)
    }

    /// The unique g with g·n = target, when it exists. All supported
    /// monoids are commutative, so this coincides with `solve_right`
    /// with arguments swapped.
    pub fn solve_left(&self, n: &Element, target: &Element) -> Result<Option<Element>> {
        self.solve_right(n, target)
    }

    /// Canonical finite enumeration window used by bounded generators:
    /// for additive kinds the ball of radius `bound` around the identity,
    /// for the multiplicative naturals the integers 1..=bound.
    pub fn enumerate_up_to(&self, bound: u32) -> Result<IndexSet> {
        match self.kind {
            MonoidKind::MultiplicativeNstar => {
                Ok(IndexSet::new((1..=bound as u64).map(Element::Nat)))
            }
            MonoidKind::MultiplicativeQstar => Err(Error::UnboundedBall(self.kind)),
            _ => self.ball(&self.identity(), bound as f64),
        }
    }

    /// Derived report: does ball cardinality depend only on the radius,
    /// once centers are far from any lattice boundary? Probes a few radii
    /// over a deterministic center sample and checks the sizes stabilize.
    /// Not a capability flag; purely informational.
    pub fn conservative_probe(&self) -> Option<bool> {
        if !self.balls_locally_finite() {
            return None;
        }
        let centers: Vec<Element> = match self.kind {
            MonoidKind::AdditiveN => (0..8).map(Element::Int).collect(),
            MonoidKind::AdditiveZ => (-4..4).map(Element::Int).collect(),
            MonoidKind::AdditiveZd(d) => (0..8)
                .map(|k| Element::Tuple(vec![k; d as usize]))
                .collect(),
            MonoidKind::MultiplicativeNstar => (1..9).map(Element::Nat).collect(),
            MonoidKind::MultiplicativeQstar => unreachable!(),
        };
        for radius in [1.0, 2.0, 3.0] {
            let sizes: Vec<usize> = centers
                .iter()
                .map(|c| self.ball(c, radius).map(|b| b.len()).unwrap_or(0))
                .collect();
            // Stabilized: the last samples (far from the boundary) agree.
            let tail = &sizes[sizes.len() - 3..];
            if !(tail[0] == tail[1] && tail[1] == tail[2]) {
                return Some(false);
            }
        }
        Some(true)
    }
}
