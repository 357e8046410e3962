//! Dense univariate polynomials over a [`FieldTower`].

use std::fmt;

use num_bigint::BigUint;

use super::field::{FElem, FieldTower};
use crate::error::{Error, Result};

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `T^i`.
/// Canonical: no trailing zeros, empty for the zero polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    tower: FieldTower,
    coeffs: Vec<FElem>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.tower.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = self.tower.fmt_elem(c);
            match i {
                0 => write!(f, "{cs}")?,
                1 => write!(f, "{cs}*T")?,
                _ => write!(f, "{cs}*T^{i}")?,
            }
        }
        Ok(())
    }
}

impl UniPoly {
    pub fn zero(tower: &FieldTower) -> Self {
        UniPoly { tower: tower.clone(), coeffs: Vec::new() }
    }

    pub fn one(tower: &FieldTower) -> Self {
        Self::constant(tower, tower.one())
    }

    pub fn constant(tower: &FieldTower, c: FElem) -> Self {
        Self::from_coeffs(tower, vec![c])
    }

    /// The indeterminate `T`.
    pub fn x(tower: &FieldTower) -> Self {
        Self::from_coeffs(tower, vec![tower.zero(), tower.one()])
    }

    pub fn monomial(tower: &FieldTower, c: FElem, deg: usize) -> Self {
        let mut coeffs = vec![tower.zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(tower, coeffs)
    }

    pub fn from_coeffs(tower: &FieldTower, coeffs: Vec<FElem>) -> Self {
        let mut p = UniPoly { tower: tower.clone(), coeffs };
        p.normalize();
        p
    }

    /// Convenience constructor from integer coefficients, ascending degree.
    pub fn from_i64s(tower: &FieldTower, coeffs: &[i64]) -> Self {
        Self::from_coeffs(tower, coeffs.iter().map(|&c| tower.from_i64(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.tower.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    #[inline]
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coeffs(&self) -> &[FElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.tower.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`, convenient for "has a root" tests.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Option<&FElem> {
        self.coeffs.last()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.tower.is_one(&self.coeffs[0])
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| self.tower.is_one(c))
    }

    fn check_same(&self, other: &UniPoly) -> Result<()> {
        if self.tower == other.tower {
            Ok(())
        } else {
            Err(Error::MixedTowers)
        }
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        debug_assert!(self.tower == other.tower);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => self.tower.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(&self.tower, coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        let coeffs = self.coeffs.iter().map(|c| self.tower.neg(c)).collect();
        UniPoly { tower: self.tower.clone(), coeffs }
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        debug_assert!(self.tower == other.tower);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.tower);
        }
        let t = &self.tower;
        let mut out = vec![t.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if t.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = t.add(&out[i + j], &t.mul(a, b));
            }
        }
        Self::from_coeffs(t, out)
    }

    pub fn scale(&self, c: &FElem) -> UniPoly {
        let coeffs = self.coeffs.iter().map(|a| self.tower.mul(a, c)).collect();
        Self::from_coeffs(&self.tower, coeffs)
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
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

    /// Monic associate; the zero polynomial stays zero.
    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            None => self.clone(),
            Some(l) if self.tower.is_one(l) => self.clone(),
            Some(l) => self.scale(&self.tower.inv(l)),
        }
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        debug_assert!(self.tower == d.tower);
        let t = &self.tower;
        let dd = d.degree().expect("division by zero polynomial");
        let inv_lead = t.inv(d.lead().unwrap());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(t), self.clone());
        }
        let mut quot = vec![t.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if t.is_zero(&rem[i]) {
                continue;
            }
            let q = t.mul(&rem[i], &inv_lead);
            for (k, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + k;
                rem[idx] = t.sub(&rem[idx], &t.mul(&q, dc));
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (Self::from_coeffs(t, quot), Self::from_coeffs(t, rem))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Exact quotient; panics (in debug builds) if the division leaves a remainder.
    pub fn exact_div(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact division {self} / {d}");
        q
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        other.rem(self).is_zero()
    }

    pub fn derivative(&self) -> UniPoly {
        let t = &self.tower;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| t.mul(c, &t.from_i64(i as i64)))
            .collect();
        Self::from_coeffs(t, coeffs)
    }

    pub fn eval(&self, x: &FElem) -> FElem {
        let t = &self.tower;
        self.coeffs.iter().rev().fold(t.zero(), |acc, c| t.add(&t.mul(&acc, x), c))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &UniPoly) -> UniPoly {
        let base = self.rem(m);
        let mut acc = Self::one(&self.tower).rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn mul_mod(&self, other: &UniPoly, m: &UniPoly) -> UniPoly {
        self.mul(other).rem(m)
    }

    /// Reinterpret the polynomial over a larger tower.
    pub fn embed(&self, into: &FieldTower) -> UniPoly {
        let coeffs = self.coeffs.iter().map(|c| into.embed_from(&self.tower, c)).collect();
        UniPoly::from_coeffs(into, coeffs)
    }
}

/// Monic greatest common divisor. `gcd(a, 0) = monic(a)`, `gcd(0, 0) = 0`.
pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
    a.check_same(b)?;
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let r = r0.rem(&r1);
        r0 = r1;
        r1 = r;
    }
    Ok(r0.monic())
}

/// Extended gcd: `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn uni_xgcd(a: &UniPoly, b: &UniPoly) -> Result<(UniPoly, UniPoly, UniPoly)> {
    a.check_same(b)?;
    let tw = a.tower();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UniPoly::one(tw), UniPoly::zero(tw));
    let (mut t0, mut t1) = (UniPoly::zero(tw), UniPoly::one(tw));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = s0.sub(&q.mul(&s1));
        s0 = std::mem::replace(&mut s1, s);
        let t = t0.sub(&q.mul(&t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.lead().cloned() {
        None => Ok((r0, s0, t0)),
        Some(l) => {
            let li = tw.inv(&l);
            Ok((r0.scale(&li), s0.scale(&li), t0.scale(&li)))
        }
    }
}
