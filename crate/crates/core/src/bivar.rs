//! Sparse bivariate polynomials over a [`FieldTower`] and the weighted
//! homogeneous tools built on them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{uni_gcd, FElem, FieldTower, UniPoly};
use crate::error::{Error, Result};

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Exp = (u32, u32);

/// Sparse polynomial in `x, y`. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq)]
pub struct BivarPoly {
    tower: FieldTower,
    terms: BTreeMap<Exp, FElem>,
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn fmt_monomial(i: u32, j: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{e}")),
    };
    [part("x", i), part("y", j)].into_iter().flatten().collect::<Vec<_>>().join("*")
}

/// Prints in the grammar accepted by the CLI parser, highest total degree
/// first. Coefficients of proper extensions are printed in tower notation.
impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<Exp> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, i)));
        for (n, &(i, j)) in keys.iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let mono = fmt_monomial(i, j);
            match self.tower.signed_repr(c) {
                Some((negative, mag)) => {
                    let sep = match (n, negative) {
                        (0, false) => "",
                        (0, true) => "-",
                        (_, false) => "+",
                        (_, true) => "-",
                    };
                    let body = match (mag.as_str(), mono.is_empty()) {
                        (_, true) => mag,
                        ("1", false) => mono,
                        (_, false) if mag.contains('/') => format!("({mag})*{mono}"),
                        (_, false) => format!("{mag}*{mono}"),
                    };
                    write!(f, "{sep}{body}")?;
                }
                None => {
                    let sep = if n == 0 { "" } else { "+" };
                    let cs = self.tower.fmt_elem(c);
                    if mono.is_empty() {
                        write!(f, "{sep}({cs})")?;
                    } else {
                        write!(f, "{sep}({cs})*{mono}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl BivarPoly {
    pub fn zero(tower: &FieldTower) -> Self {
        BivarPoly { tower: tower.clone(), terms: BTreeMap::new() }
    }

    pub fn one(tower: &FieldTower) -> Self {
        Self::monomial(tower, 0, 0, tower.one())
    }

    pub fn x(tower: &FieldTower) -> Self {
        Self::monomial(tower, 1, 0, tower.one())
    }

    pub fn y(tower: &FieldTower) -> Self {
        Self::monomial(tower, 0, 1, tower.one())
    }

    pub fn monomial(tower: &FieldTower, i: u32, j: u32, c: FElem) -> Self {
        let mut p = Self::zero(tower);
        p.add_term((i, j), c);
        p
    }

    /// Builds a polynomial, combining repeated exponents.
    pub fn from_terms(tower: &FieldTower, terms: impl IntoIterator<Item = (Exp, FElem)>) -> Self {
        let mut p = Self::zero(tower);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_i64s(tower: &FieldTower, terms: &[((u32, u32), i64)]) -> Self {
        Self::from_terms(tower, terms.iter().map(|&(e, c)| (e, tower.from_i64(c))))
    }

    /// Adds `c x^i y^j` in place.
    pub fn add_term(&mut self, e: Exp, c: FElem) {
        if self.tower.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = self.tower.add(old, &c);
                if self.tower.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    #[inline]
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exp, &FElem)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn support(&self) -> Vec<Exp> {
        self.terms.keys().copied().collect()
    }

    pub fn coeff(&self, i: u32, j: u32) -> FElem {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(|| self.tower.zero())
    }

    pub fn has_term(&self, i: u32, j: u32) -> bool {
        self.terms.contains_key(&(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True iff the polynomial does not vanish at the origin.
    pub fn is_unit(&self) -> bool {
        self.has_term(0, 0)
    }

    /// True iff the polynomial is a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.has_term(0, 0)
    }

    /// Largest exponent of either variable, 0 for the zero polynomial.
    pub fn max_exponent(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i.max(j)).max().unwrap_or(0)
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|e| e.0).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|e| e.1).max().unwrap_or(0)
    }

    /// Lowest total degree of a term (the multiplicity at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    /// Largest `(a, b)` with `x^a y^b` dividing the polynomial.
    pub fn monomial_content(&self) -> Exp {
        let a = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        (a, b)
    }

    pub fn add(&self, other: &BivarPoly) -> BivarPoly {
        debug_assert!(self.tower == other.tower);
        let mut r = self.clone();
        for (&e, c) in &other.terms {
            r.add_term(e, c.clone());
        }
        r
    }

    pub fn neg(&self) -> BivarPoly {
        BivarPoly {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|(&e, c)| (e, self.tower.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &BivarPoly) -> BivarPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FElem) -> BivarPoly {
        if self.tower.is_zero(c) {
            return Self::zero(&self.tower);
        }
        BivarPoly {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|(&e, a)| (e, self.tower.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &BivarPoly) -> BivarPoly {
        debug_assert!(self.tower == other.tower);
        let mut r = Self::zero(&self.tower);
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                r.add_term((i + k, j + l), self.tower.mul(a, b));
            }
        }
        r
    }

    pub fn pow(&self, mut e: u32) -> BivarPoly {
        let mut base = self.clone();
        let mut acc = Self::one(&self.tower);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies by `x^a y^b`.
    pub fn shift(&self, a: u32, b: u32) -> BivarPoly {
        BivarPoly {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|(&(i, j), c)| ((i + a, j + b), c.clone())).collect(),
        }
    }

    /// Whether `self` divides `g` in `K[x, y]`, by division on lex-leading
    /// terms.
    pub fn divides(&self, g: &BivarPoly) -> bool {
        let Some((&le, lc)) = self.terms.last_key_value() else {
            return g.is_zero();
        };
        let inv = self.tower.inv(lc);
        let mut r = g.clone();
        while let Some((&e, c)) = r.terms.last_key_value() {
            if e.0 < le.0 || e.1 < le.1 {
                return false;
            }
            let q = self.tower.mul(c, &inv);
            r = r.sub(&self.shift(e.0 - le.0, e.1 - le.1).scale(&q));
        }
        true
    }

    pub fn partial_x(&self) -> BivarPoly {
        let t = &self.tower;
        Self::from_terms(
            t,
            self.terms
                .iter()
                .filter(|(&(i, _), _)| i > 0)
                .map(|(&(i, j), c)| ((i - 1, j), t.mul(c, &t.from_i64(i as i64)))),
        )
    }

    pub fn partial_y(&self) -> BivarPoly {
        let t = &self.tower;
        Self::from_terms(
            t,
            self.terms
                .iter()
                .filter(|(&(_, j), _)| j > 0)
                .map(|(&(i, j), c)| ((i, j - 1), t.mul(c, &t.from_i64(j as i64)))),
        )
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap(&self) -> BivarPoly {
        BivarPoly {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> BivarPoly {
        self.filter(|i, j| i + j == d)
    }

    /// Sum of the terms whose exponent satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(u32, u32) -> bool) -> BivarPoly {
        BivarPoly {
            tower: self.tower.clone(),
            terms: self.terms.iter().filter(|(&(i, j), _)| keep(i, j)).map(|(&e, c)| (e, c.clone())).collect(),
        }
    }

    /// Restriction `f(x, 0)`, as a polynomial in `x` only.
    pub fn restrict_y0(&self) -> BivarPoly {
        self.filter(|_, j| j == 0)
    }

    /// Restriction `f(0, y)`.
    pub fn restrict_x0(&self) -> BivarPoly {
        self.filter(|i, _| i == 0)
    }

    /// Maps every coefficient into a tower containing this one.
    pub fn embed(&self, into: &FieldTower) -> BivarPoly {
        if *into == self.tower {
            return self.clone();
        }
        BivarPoly {
            tower: into.clone(),
            terms: self.terms.iter().map(|(&e, c)| (e, into.embed_from(&self.tower, c))).collect(),
        }
    }

    /// Applies a coefficient map, dropping terms that become zero.
    pub fn map_coeffs(&self, into: &FieldTower, f: impl Fn(&FElem) -> FElem) -> BivarPoly {
        Self::from_terms(into, self.terms.iter().map(|(&e, c)| (e, f(c))))
    }

    /// True iff every term has `n0*i + m0*j == d` for a common `d`; returns it.
    pub fn weighted_degree_if_homogeneous(&self, n0: u32, m0: u32) -> Option<u64> {
        let mut it = self.terms.keys().map(|&(i, j)| n0 as u64 * i as u64 + m0 as u64 * j as u64);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Decomposition into `(n0, m0)`-weighted homogeneous parts.
    pub fn weighted_decomposition(&self, n0: u32, m0: u32) -> Result<WeightedDecomposition> {
        check_weights(n0, m0)?;
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut parts: BTreeMap<u64, BivarPoly> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let d = n0 as u64 * i as u64 + m0 as u64 * j as u64;
            parts.entry(d).or_insert_with(|| Self::zero(&self.tower)).terms.insert((i, j), c.clone());
        }
        Ok(WeightedDecomposition { n0, m0, tower: self.tower.clone(), parts })
    }

    /// Sum of the terms supported on `face`.
    pub fn initial_form_along(&self, face: &Face) -> BivarPoly {
        self.filter(|i, j| face.contains((i, j)))
    }

    /// Compresses a quasihomogeneous polynomial; see [`CompressedForm`].
    ///
    /// Weights: `m0` is the `x`-step and `n0` the `y`-step along the weight
    /// line, so every term satisfies `n0*i + m0*j = d`.
    pub fn compress(&self, m0: u32, n0: u32) -> Result<CompressedForm> {
        check_weights(n0, m0)?;
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.weighted_degree_if_homogeneous(n0, m0).is_none() {
            return Err(Error::NotQuasihomogeneous(n0, m0));
        }
        let (alpha, beta) = self.monomial_content();
        let max_i = self.degree_x();
        let deg = ((max_i - alpha) / m0) as usize;
        let mut coeffs = vec![self.tower.zero(); deg + 1];
        for (&(i, _), c) in &self.terms {
            coeffs[((i - alpha) / m0) as usize] = c.clone();
        }
        let hpoly = UniPoly::from_coeffs(&self.tower, coeffs);
        Ok(CompressedForm { alpha, beta, hpoly, m0, n0 })
    }

    /// Blow-up chart through the direction `(c : 1)`:
    /// `f(v(u + c), v) / v^m`, written again in the variables `x = u, y = v`.
    pub fn chart_direction(&self, c: &FElem, m: u32) -> Result<BivarPoly> {
        let t = &self.tower;
        let top = self.degree_x() as usize;
        // (u + c)^i expanded, for every i up to the x-degree
        let mut rows: Vec<Vec<FElem>> = vec![vec![t.one()]];
        for i in 1..=top {
            let prev = &rows[i - 1];
            let mut row = vec![t.zero(); i + 1];
            for (k, a) in prev.iter().enumerate() {
                row[k + 1] = t.add(&row[k + 1], a);
                row[k] = t.add(&row[k], &t.mul(a, c));
            }
            rows.push(row);
        }
        let mut r = Self::zero(t);
        for (&(i, j), a) in &self.terms {
            let vdeg = (i + j).checked_sub(m).ok_or_else(|| Error::internal("inexact chart division"))?;
            for (k, b) in rows[i as usize].iter().enumerate() {
                r.add_term((k as u32, vdeg), t.mul(a, b));
            }
        }
        Ok(r)
    }

    /// Blow-up chart through the direction `(1 : 0)`: `f(u, uv) / u^m`.
    pub fn chart_y_axis(&self, m: u32) -> Result<BivarPoly> {
        let mut r = Self::zero(&self.tower);
        for (&(i, j), a) in &self.terms {
            let udeg = (i + j).checked_sub(m).ok_or_else(|| Error::internal("inexact chart division"))?;
            r.add_term((udeg, j), a.clone());
        }
        Ok(r)
    }

    /// Coefficients as polynomials in `x`, indexed by the power of `y`.
    fn y_coeffs(&self) -> Vec<UniPoly> {
        let t = &self.tower;
        let mut dense: Vec<Vec<FElem>> = vec![Vec::new(); self.degree_y() as usize + 1];
        for (&(i, j), c) in &self.terms {
            let row = &mut dense[j as usize];
            if row.len() <= i as usize {
                row.resize(i as usize + 1, t.zero());
            }
            row[i as usize] = c.clone();
        }
        dense.into_iter().map(|row| UniPoly::from_coeffs(t, row)).collect()
    }

    fn from_y_coeffs(tower: &FieldTower, coeffs: &[UniPoly]) -> BivarPoly {
        let mut r = Self::zero(tower);
        for (j, u) in coeffs.iter().enumerate() {
            for (i, c) in u.coeffs().iter().enumerate() {
                r.add_term((i as u32, j as u32), c.clone());
            }
        }
        r
    }
}

fn check_weights(n0: u32, m0: u32) -> Result<()> {
    if n0 == 0 || m0 == 0 || n0.gcd(&m0) != 1 {
        Err(Error::BadWeights(n0, m0))
    } else {
        Ok(())
    }
}

/// A vertex or a segment of the plane lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Face {
    Vertex(Exp),
    Segment(Exp, Exp),
}

impl Face {
    pub fn contains(&self, p: Exp) -> bool {
        match *self {
            Face::Vertex(v) => v == p,
            Face::Segment(a, b) => {
                let (ax, ay) = (a.0 as i64, a.1 as i64);
                let (bx, by) = (b.0 as i64, b.1 as i64);
                let (px, py) = (p.0 as i64, p.1 as i64);
                let cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
                cross == 0
                    && px >= ax.min(bx)
                    && px <= ax.max(bx)
                    && py >= ay.min(by)
                    && py <= ay.max(by)
            }
        }
    }

    /// Whether the face meets the line `x = 0`.
    pub fn meets_y_axis(&self) -> bool {
        match *self {
            Face::Vertex(v) => v.0 == 0,
            Face::Segment(a, b) => a.0 == 0 || b.0 == 0,
        }
    }

    /// Whether the face meets the line `y = 0`.
    pub fn meets_x_axis(&self) -> bool {
        match *self {
            Face::Vertex(v) => v.1 == 0,
            Face::Segment(a, b) => a.1 == 0 || b.1 == 0,
        }
    }
}

/// `(n0, m0)`-weighted homogeneous parts keyed by weighted degree. Absent
/// degrees are zero.
#[derive(Clone, Debug)]
pub struct WeightedDecomposition {
    pub n0: u32,
    pub m0: u32,
    tower: FieldTower,
    parts: BTreeMap<u64, BivarPoly>,
}

impl WeightedDecomposition {
    /// Lowest weighted degree `d`.
    pub fn first_degree(&self) -> u64 {
        *self.parts.keys().next().expect("decomposition of a nonzero polynomial")
    }

    /// The part of weighted degree `d`, zero if absent.
    pub fn part(&self, d: u64) -> BivarPoly {
        self.parts.get(&d).cloned().unwrap_or_else(|| BivarPoly::zero(&self.tower))
    }

    /// Nonzero parts in ascending degree.
    pub fn parts(&self) -> impl Iterator<Item = (u64, &BivarPoly)> {
        self.parts.iter().map(|(&d, p)| (d, p))
    }
}

/// A quasihomogeneous `g = x^alpha y^beta * y^(n0*D) * H(x^m0 / y^n0)` with
/// `D = deg H` and `H(0) != 0`. Roots of `H` are the ratios `b/a` of the
/// binomial factors `a x^m0 - b y^n0` of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressedForm {
    pub alpha: u32,
    pub beta: u32,
    pub hpoly: UniPoly,
    pub m0: u32,
    pub n0: u32,
}

impl CompressedForm {
    /// Inverse of [`BivarPoly::compress`].
    pub fn rehomogenize(&self) -> BivarPoly {
        let t = self.hpoly.tower();
        let d = self.hpoly.deg0() as u32;
        BivarPoly::from_terms(
            t,
            self.hpoly.coeffs().iter().enumerate().map(|(k, c)| {
                let k = k as u32;
                ((self.alpha + k * self.m0, self.beta + (d - k) * self.n0), c.clone())
            }),
        )
    }
}

fn content(coeffs: &[UniPoly]) -> Result<UniPoly> {
    let mut g = UniPoly::zero(coeffs[0].tower());
    for c in coeffs {
        g = uni_gcd(&g, c)?;
        if g.is_one() {
            break;
        }
    }
    Ok(g)
}

fn trim(v: &mut Vec<UniPoly>) {
    while v.last().is_some_and(UniPoly::is_zero) {
        v.pop();
    }
}

/// Pseudo-remainder of `a` by `b` as polynomials in `y` over `K[x]`.
fn prem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (k, bc) in b.iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = r[idx].sub(&bc.mul(&lr));
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
    }
    r
}

/// Primitive part, scaled over `Q` to integer coefficients without common
/// factor so that the remainder sequence does not grow in height.
fn primitive_part(v: &[UniPoly]) -> Result<Vec<UniPoly>> {
    let c = content(v)?;
    let pp: Vec<UniPoly> = v.iter().map(|u| u.exact_div(&c)).collect();
    let (mut den, mut num) = (BigInt::one(), BigInt::zero());
    for e in pp.iter().flat_map(|u| u.coeffs()) {
        match e {
            FElem::Rat(r) => {
                den = den.lcm(r.denom());
                num = num.gcd(r.numer());
            }
            _ => return Ok(pp),
        }
    }
    if num.is_zero() {
        return Ok(pp);
    }
    let s = FElem::Rat(BigRational::new(den, num));
    Ok(pp.iter().map(|u| u.scale(&s)).collect())
}

/// Greatest common divisor in `K[x, y]`, up to a nonzero scalar; the zero
/// polynomial only for `gcd(0, 0)`.
pub fn bivar_gcd(a: &BivarPoly, b: &BivarPoly) -> Result<BivarPoly> {
    if a.tower != b.tower {
        return Err(Error::MixedTowers);
    }
    let t = a.tower.clone();
    if a.is_zero() {
        return Ok(b.clone());
    }
    if b.is_zero() {
        return Ok(a.clone());
    }
    let (ya, yb) = (a.y_coeffs(), b.y_coeffs());
    let cont = uni_gcd(&content(&ya)?, &content(&yb)?)?;
    let mut p = primitive_part(&ya)?;
    let mut q = primitive_part(&yb)?;
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        let r = prem(&p, &q);
        p = q;
        q = if r.is_empty() { r } else { primitive_part(&r)? };
    }
    let g: Vec<UniPoly> = p.iter().map(|u| u.mul(&cont)).collect();
    Ok(BivarPoly::from_y_coeffs(&t, &g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldTower {
        FieldTower::prime(3).unwrap()
    }

    fn p(t: &FieldTower, terms: &[((u32, u32), i64)]) -> BivarPoly {
        BivarPoly::from_i64s(t, terms)
    }

    #[test]
    fn partial_derivatives_reduce_mod_p() {
        let t = f3();
        let f = p(&t, &[((3, 0), 1), ((1, 1), 1), ((0, 3), 1)]);
        assert_eq!(f.partial_x(), p(&t, &[((0, 1), 1)]));
        assert!(p(&t, &[((0, 5), 1)]).partial_x().is_zero());
        assert!(p(&t, &[((2, 3), 1)]).partial_y().is_zero());
    }

    #[test]
    fn weighted_decomposition_examples() {
        let t = f3();
        // x(x-y)^2 + y^7 expanded in characteristic 3
        let f = p(&t, &[((3, 0), 1), ((2, 1), 1), ((1, 2), 1), ((0, 7), 1)]);
        let w = f.weighted_decomposition(1, 1).unwrap();
        assert_eq!(w.first_degree(), 3);
        assert_eq!(w.part(3), p(&t, &[((3, 0), 1), ((2, 1), 1), ((1, 2), 1)]));
        assert!(w.part(4).is_zero());
        assert_eq!(w.part(7), p(&t, &[((0, 7), 1)]));

        let q = FieldTower::rationals();
        let g = p(&q, &[((2, 0), 1), ((0, 5), 1)]);
        let w = g.weighted_decomposition(5, 2).unwrap();
        assert_eq!(w.parts().count(), 1);
        assert_eq!(w.first_degree(), 10);

        let h = p(&q, &[((1, 1), 1), ((3, 0), 1)]);
        let w = h.weighted_decomposition(2, 1).unwrap();
        assert_eq!(w.part(3), p(&q, &[((1, 1), 1)]));
        assert_eq!(w.part(6), p(&q, &[((3, 0), 1)]));
        assert_eq!(h.weighted_decomposition(2, 4).unwrap_err(), Error::BadWeights(2, 4));
    }

    #[test]
    fn initial_forms() {
        let t = f3();
        let f = p(&t, &[((3, 0), 1), ((1, 1), 1), ((0, 3), 1)]);
        let edge = Face::Segment((0, 3), (1, 1));
        assert_eq!(f.initial_form_along(&edge), p(&t, &[((0, 3), 1), ((1, 1), 1)]));
        assert_eq!(f.initial_form_along(&Face::Vertex((1, 1))), p(&t, &[((1, 1), 1)]));
        assert!(f.initial_form_along(&Face::Segment((5, 5), (6, 4))).is_zero());
    }

    #[test]
    fn compress_examples() {
        let t = f3();
        let g = p(&t, &[((3, 0), 1), ((2, 1), 1), ((1, 2), 1)]);
        let c = g.compress(1, 1).unwrap();
        assert_eq!((c.alpha, c.beta), (1, 0));
        // T^2 + T + 1 = (T - 1)^2 in characteristic 3
        assert_eq!(c.hpoly, UniPoly::from_i64s(&t, &[1, -2, 1]));
        assert_eq!(c.rehomogenize(), g);

        let m = p(&t, &[((2, 3), 1)]).compress(1, 1).unwrap();
        assert_eq!((m.alpha, m.beta), (2, 3));
        assert!(m.hpoly.is_one());

        let e = p(&t, &[((0, 7), 1), ((1, 2), 1)]).compress(1, 5).unwrap();
        assert_eq!((e.alpha, e.beta), (0, 2));
        assert_eq!(e.hpoly, UniPoly::from_i64s(&t, &[1, 1]));

        assert_eq!(
            p(&t, &[((1, 0), 1), ((0, 2), 1)]).compress(1, 1).unwrap_err(),
            Error::NotQuasihomogeneous(1, 1)
        );
    }

    #[test]
    fn chart_maps() {
        let q = FieldTower::rationals();
        let f = p(&q, &[((2, 0), 1), ((0, 3), 1)]);
        assert_eq!(f.chart_direction(&q.zero(), 2).unwrap(), p(&q, &[((2, 0), 1), ((0, 1), 1)]));
        let xy = p(&q, &[((1, 1), 1)]);
        assert_eq!(xy.chart_direction(&q.zero(), 2).unwrap(), p(&q, &[((1, 0), 1)]));
        assert_eq!(xy.chart_y_axis(2).unwrap(), p(&q, &[((0, 1), 1)]));
        let x2 = p(&q, &[((2, 0), 1)]);
        assert_eq!(x2.chart_direction(&q.zero(), 2).unwrap(), x2);
        // (x + y)^2 + y^3 through (-1 : 1)
        let g = p(&q, &[((2, 0), 1), ((1, 1), 2), ((0, 2), 1), ((0, 3), 1)]);
        let c = q.from_i64(-1);
        assert_eq!(g.chart_direction(&c, 2).unwrap(), p(&q, &[((2, 0), 1), ((0, 1), 1)]));
        assert!(matches!(g.chart_direction(&c, 3), Err(Error::Internal(_))));
    }

    #[test]
    fn gcd_in_two_variables() {
        let t = FieldTower::prime(5).unwrap();
        let x = BivarPoly::x(&t);
        let y = BivarPoly::y(&t);
        let one = BivarPoly::one(&t);
        let a = x.sub(&y).mul(&x.add(&one)).mul(&y.add(&one));
        let b = x.sub(&y).mul(&y.add(&one)).mul(&x.mul(&x).add(&y));
        let g = bivar_gcd(&a, &b).unwrap();
        let expect = x.sub(&y).mul(&y.add(&one));
        let lead_ratio = t.div(&g.coeff(1, 1), &expect.coeff(1, 1));
        assert_eq!(g, expect.scale(&lead_ratio));
        let g = bivar_gcd(&x.mul(&y.add(&one)), &x.mul(&y)).unwrap();
        assert_eq!(g.support(), vec![(1, 0)]);
        assert!(bivar_gcd(&x, &y).unwrap().is_constant());
    }

    #[test]
    fn display_round_trips_signs() {
        let q = FieldTower::rationals();
        let f = p(&q, &[((2, 0), 1), ((1, 1), -2), ((0, 0), 3)]);
        assert_eq!(f.to_string(), "x^2-2*x*y+3");
        let t = FieldTower::prime(5).unwrap();
        assert_eq!(p(&t, &[((0, 1), 4)]).to_string(), "-y");
    }
}
