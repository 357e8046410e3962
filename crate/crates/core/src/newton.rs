//! Newton diagrams and their combinatorial invariants.

use std::fmt;
use std::ops::Add;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::squarefree_part;
use crate::bivar::{BivarPoly, Exp, Face};
use crate::error::{Error, Result};

/// A natural number or infinity. Ordered with infinity on top; sums absorb.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(u64),
    Infinite,
}

impl ExtNat {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(n) => Some(n),
            ExtNat::Infinite => None,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        ExtNat::Finite(n)
    }
}

impl Add for ExtNat {
    type Output = ExtNat;
    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => ExtNat::Finite(a + b),
            _ => ExtNat::Infinite,
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(n) => s.serialize_u64(*n),
            ExtNat::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(ExtNat::Finite(n)),
            Raw::S(s) if s == "infinity" => Ok(ExtNat::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("expected a number or \"infinity\", got {s:?}"))),
        }
    }
}

/// One compact edge `A_{i-1} A_i` of a Newton diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeData {
    pub start: Exp,
    pub end: Exp,
    /// primitive `x`-step, `(end.0 - start.0) / length`
    pub m0: u32,
    /// primitive `y`-step, `(start.1 - end.1) / length`
    pub n0: u32,
    /// lattice length
    pub length: u32,
    /// `n0*c + m0*e` for every point `(c, e)` on the edge
    pub degree: u64,
}

impl EdgeData {
    fn new(start: Exp, end: Exp) -> Self {
        let dc = end.0 - start.0;
        let de = start.1 - end.1;
        let length = dc.gcd(&de);
        let (m0, n0) = (dc / length, de / length);
        let degree = n0 as u64 * start.0 as u64 + m0 as u64 * start.1 as u64;
        EdgeData { start, end, m0, n0, length, degree }
    }

    pub fn face(&self) -> Face {
        Face::Segment(self.start, self.end)
    }

    /// Twice the area of the triangle spanned by the origin and the edge;
    /// equals `length * degree`.
    pub fn twice_area(&self) -> u64 {
        let (a, b) = (self.start, self.end);
        (b.0 as u64 * a.1 as u64) - (a.0 as u64 * b.1 as u64)
    }
}

/// The Newton number by the alternating volume sum, by the vertex labels
/// `2V - c_k - e_0 + 1`, and by `2 area(Gamma_1) + 1` when `Gamma(f)` meets
/// `x, y >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonNumberRoutes {
    pub volume: i64,
    pub vertex_labels: i64,
    pub cone: Option<Ratio<i64>>,
}

impl NewtonNumberRoutes {
    pub fn agree(&self) -> bool {
        self.volume == self.vertex_labels && self.cone.is_none_or(|c| c == Ratio::from_integer(self.vertex_labels))
    }
}

/// Newton diagram: the compact faces of the Newton polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonDiagram {
    /// `A_0 .. A_k`, first coordinate strictly increasing, second strictly
    /// decreasing
    pub vertices: Vec<Exp>,
    pub edges: Vec<EdgeData>,
    pub convenient: bool,
    /// `(a, b)` with `x^a`, `y^b` the largest monomials dividing `f`
    pub monomial_divisors: (u32, u32),
}

fn cross(o: Exp, a: Exp, b: Exp) -> i64 {
    let (ox, oy) = (o.0 as i64, o.1 as i64);
    (a.0 as i64 - ox) * (b.1 as i64 - oy) - (a.1 as i64 - oy) * (b.0 as i64 - ox)
}

impl NewtonDiagram {
    pub fn of(f: &BivarPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self::from_support(&f.support()))
    }

    /// Diagram of a nonempty support set.
    pub fn from_support(support: &[Exp]) -> Self {
        let mut pts: Vec<Exp> = support.to_vec();
        pts.sort_unstable();
        pts.dedup_by_key(|p| p.0);
        let min_j = pts.iter().map(|p| p.1).min().expect("nonempty support");
        // lower hull by monotone chain, stopping at the lowest row
        let mut hull: Vec<Exp> = Vec::new();
        for &p in &pts {
            if hull.last().is_some_and(|q| q.1 <= p.1) {
                continue;
            }
            while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
            if p.1 == min_j {
                break;
            }
        }
        let edges = hull.windows(2).map(|w| EdgeData::new(w[0], w[1])).collect();
        let first = hull[0];
        let last = *hull.last().unwrap();
        NewtonDiagram {
            convenient: first.0 == 0 && last.1 == 0,
            monomial_divisors: (first.0, last.1),
            vertices: hull,
            edges,
        }
    }

    pub fn first(&self) -> Exp {
        self.vertices[0]
    }

    pub fn last(&self) -> Exp {
        *self.vertices.last().unwrap()
    }

    pub fn total_lattice_length(&self) -> u64 {
        self.edges.iter().map(|e| e.length as u64).sum()
    }

    /// Twice the area below the vertex chain and above the axes; for a
    /// convenient diagram this is `2 V_2` of the polyhedron complement.
    pub fn twice_area(&self) -> u64 {
        self.edges.iter().map(EdgeData::twice_area).sum()
    }

    /// Whether `p` lies in the Newton polyhedron, i.e. on or above the diagram.
    pub fn is_above(&self, p: Exp) -> bool {
        p.0 >= self.first().0 && p.1 >= self.last().1 && self.edges.iter().all(|e| cross(e.start, e.end, p) >= 0)
    }

    /// All faces: vertices first, then edges.
    pub fn faces(&self) -> Vec<Face> {
        self.vertices.iter().map(|&v| Face::Vertex(v)).chain(self.edges.iter().map(EdgeData::face)).collect()
    }

    /// The vertex chain clipped to `x >= 1, y >= 1`, empty if they do not meet.
    pub fn clip_to_positive(&self) -> Vec<(Ratio<i64>, Ratio<i64>)> {
        let one = Ratio::from_integer(1);
        let pts: Vec<(Ratio<i64>, Ratio<i64>)> =
            self.vertices.iter().map(|&(c, e)| (Ratio::from_integer(c as i64), Ratio::from_integer(e as i64))).collect();
        let mut out = Vec::new();
        if pts.len() == 1 {
            if pts[0].0 >= one && pts[0].1 >= one {
                out.push(pts[0]);
            }
            return out;
        }
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            // parameter interval in [0, 1] where x >= 1 and y >= 1
            let mut lo = Ratio::from_integer(0);
            let mut hi = one;
            if a.0 < one {
                lo = lo.max((one - a.0) / (b.0 - a.0));
            }
            if b.1 < one {
                hi = hi.min((a.1 - one) / (a.1 - b.1));
            }
            if lo > hi {
                continue;
            }
            for s in [lo, hi] {
                let p = (a.0 + (b.0 - a.0) * s, a.1 + (b.1 - a.1) * s);
                if out.last() != Some(&p) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// The Newton number of a convenient diagram by each independent route.
    pub fn newton_number_routes(&self) -> Result<NewtonNumberRoutes> {
        if !self.convenient {
            return Err(Error::NotConvenient);
        }
        let (c_k, e_0) = (self.last().0 as i64, self.first().1 as i64);

        // alternating volume sum; V_2 by the shoelace formula over the origin
        // and the vertex chain, V_1 the lengths of the region on the axes
        let mut poly = vec![(0i64, 0i64)];
        poly.extend(self.vertices.iter().rev().map(|&(c, e)| (c as i64, e as i64)));
        let twice_v2: i64 = (0..poly.len())
            .map(|i| {
                let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
                a.0 * b.1 - a.1 * b.0
            })
            .sum::<i64>()
            .abs();
        let v1 = poly.iter().map(|p| p.0).max().unwrap() + poly.iter().map(|p| p.1).max().unwrap();

        let clipped = self.clip_to_positive();
        let cone = (!clipped.is_empty()).then(|| {
            let twice_g1: Ratio<i64> = clipped.windows(2).map(|w| w[1].0 * w[0].1 - w[0].0 * w[1].1).sum();
            twice_g1 + Ratio::from_integer(1)
        });
        Ok(NewtonNumberRoutes {
            volume: twice_v2 - v1 + 1,
            vertex_labels: self.twice_area() as i64 - c_k - e_0 + 1,
            cone,
        })
    }

    /// Newton number of a convenient diagram; the routes are cross-checked.
    pub fn mu_n_convenient(&self) -> Result<u64> {
        let r = self.newton_number_routes()?;
        if !r.agree() {
            return Err(Error::internal(format!("Newton number routes disagree: {r:?}")));
        }
        u64::try_from(r.vertex_labels).map_err(|_| Error::internal("negative Newton number"))
    }

    /// `2 * delta_N` of a convenient diagram.
    fn twice_delta_n_convenient(&self) -> u64 {
        let v1 = self.last().0 as u64 + self.first().1 as u64;
        self.twice_area() + self.total_lattice_length() - v1
    }

    pub fn r_n(&self) -> u64 {
        let (a, b) = self.monomial_divisors;
        self.total_lattice_length() + a as u64 + b as u64
    }
}

/// `f + x^m + y^m`.
pub fn add_axis_powers(f: &BivarPoly, m: u32) -> BivarPoly {
    let t = f.tower();
    let mut g = f.clone();
    g.add_term((m, 0), t.one());
    g.add_term((0, m), t.one());
    g
}

fn check_germ(f: &BivarPoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_unit() {
        return Err(Error::Unit);
    }
    Ok(())
}

/// The bound `M = max(n_1, m_1)` beyond which adding `x^m + y^m` leaves
/// every vertex of the diagram in place; `None` when `x^2` or `y^2` divides
/// `f`.
pub fn stabilization_bound(f: &BivarPoly) -> Result<Option<u32>> {
    let d = NewtonDiagram::of(f)?;
    let axis = |(c, e): Exp| match c {
        0 => Some(e),
        1 => Some(2 * e),
        _ => None,
    };
    let n1 = axis(d.first());
    let m1 = axis((d.last().1, d.last().0));
    Ok(n1.zip(m1).map(|(a, b)| a.max(b)))
}

/// Smallest `m` above every exponent of `f` such that all vertices of
/// `Γ(f)` remain vertices of `Γ(f + x^m + y^m)`.
pub fn containment_bound(f: &BivarPoly) -> Result<u32> {
    let d = NewtonDiagram::of(f)?;
    let mut m = f.max_exponent() + 1;
    loop {
        let dm = NewtonDiagram::of(&add_axis_powers(f, m))?;
        if d.vertices.iter().all(|v| dm.vertices.contains(v)) {
            return Ok(m);
        }
        m += 1;
        if m >= 1 << 16 {
            return Err(Error::internal("containment bound exceeds 2^16"));
        }
    }
}

/// The `m` used to complete a non-convenient germ to `f + x^m + y^m`.
/// Exceeding every exponent rules out cancellation with existing terms.
pub fn completion_exponent(f: &BivarPoly) -> Result<u32> {
    Ok(match stabilization_bound(f)? {
        Some(bound) => bound.max(f.max_exponent()) + 1,
        None => containment_bound(f)?,
    })
}

/// Runs `eval` on `f + x^m + y^m` for growing `m` until the part of the
/// diagram in `x, y >= 1` agrees for `m` and `m + 1`.
fn stabilized<T>(f: &BivarPoly, eval: impl Fn(&NewtonDiagram) -> Result<T>) -> Result<T> {
    let mut m = completion_exponent(f)?;
    let mut prev = NewtonDiagram::of(&add_axis_powers(f, m))?;
    loop {
        let next = NewtonDiagram::of(&add_axis_powers(f, m + 1))?;
        if prev.clip_to_positive() == next.clip_to_positive() {
            return eval(&prev);
        }
        m = m.checked_mul(2).filter(|&m| m < 1 << 16).ok_or_else(|| Error::internal("Newton stabilization exceeded 2^16"))?;
        prev = NewtonDiagram::of(&add_axis_powers(f, m))?;
    }
}

fn squares_divide(d: &NewtonDiagram) -> bool {
    d.monomial_divisors.0 >= 2 || d.monomial_divisors.1 >= 2
}

/// Newton number; infinite when `x^2` or `y^2` divides `f`.
pub fn mu_n(f: &BivarPoly) -> Result<ExtNat> {
    check_germ(f)?;
    let d = NewtonDiagram::of(f)?;
    if d.convenient {
        return d.mu_n_convenient().map(ExtNat::Finite);
    }
    if squares_divide(&d) {
        return Ok(ExtNat::Infinite);
    }
    stabilized(f, |dm| dm.mu_n_convenient().map(ExtNat::Finite))
}

/// Newton delta invariant; infinite when `x^2` or `y^2` divides `f`.
pub fn delta_n(f: &BivarPoly) -> Result<ExtNat> {
    check_germ(f)?;
    let d = NewtonDiagram::of(f)?;
    let half = |twice: u64| {
        if twice.is_multiple_of(2) {
            Ok(ExtNat::Finite(twice / 2))
        } else {
            Err(Error::internal("Newton delta invariant is not an integer"))
        }
    };
    if d.convenient {
        return half(d.twice_delta_n_convenient());
    }
    if squares_divide(&d) {
        return Ok(ExtNat::Infinite);
    }
    stabilized(f, |dm| half(dm.twice_delta_n_convenient()))
}

/// Sum of the edge lattice lengths plus the monomial divisor exponents.
pub fn r_n(f: &BivarPoly) -> Result<u64> {
    check_germ(f)?;
    Ok(NewtonDiagram::of(f)?.r_n())
}

/// Number of distinct non-monomial factors of an edge initial form.
pub fn edge_factor_count(f: &BivarPoly, e: &EdgeData) -> Result<u64> {
    let c = f.initial_form_along(&e.face()).compress(e.m0, e.n0)?;
    Ok(squarefree_part(&c.hpoly)?.deg0() as u64)
}

/// Like [`r_n`] but counting distinct edge factors instead of lattice length.
pub fn s_n(f: &BivarPoly) -> Result<u64> {
    check_germ(f)?;
    let d = NewtonDiagram::of(f)?;
    let (a, b) = d.monomial_divisors;
    let mut s = a as u64 + b as u64;
    for e in &d.edges {
        s += edge_factor_count(f, e)?;
    }
    Ok(s)
}
