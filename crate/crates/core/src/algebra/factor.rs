//! Squarefree decomposition, factorization over finite fields and tower
//! extension.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use super::field::{FElem, FieldTower};
use super::unipoly::{uni_gcd, UniPoly};
use crate::error::{Error, Result};

/// `a = lead · Π g_i^{m_i}` with `g_i` monic, squarefree, pairwise coprime
/// and `m_i` strictly increasing. Correct in characteristic `p` including
/// inputs in `K[T^p]`.
pub fn squarefree_decomposition(a: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut parts = sqf_monic(&a.monic());
    parts.sort_by_key(|(_, m)| *m);
    // merge equal multiplicities
    let mut out: Vec<(UniPoly, u32)> = Vec::new();
    for (g, m) in parts {
        match out.last_mut() {
            Some((h, k)) if *k == m => *h = h.mul(&g),
            _ => out.push((g, m)),
        }
    }
    Ok(out)
}

fn sqf_monic(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let tw = f.tower().clone();
    let mut out = Vec::new();
    if f.deg0() == 0 {
        return out;
    }
    let c0 = uni_gcd(f, &f.derivative()).expect("same tower");
    let mut c = c0.clone();
    let mut w = f.exact_div(&c0);
    let mut i = 1u32;
    while w.deg0() > 0 {
        let y = uni_gcd(&w, &c).expect("same tower");
        let z = w.exact_div(&y);
        if z.deg0() > 0 {
            out.push((z, i));
        }
        i += 1;
        c = c.exact_div(&y);
        w = y;
    }
    if c.deg0() > 0 {
        let p = tw.characteristic().get() as usize;
        assert!(p > 0, "leftover cofactor in characteristic 0");
        let root = pth_root_poly(&c, p);
        for (g, m) in sqf_monic(&root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// For `c ∈ K[T^p]` return `b` with `b^p = c`.
fn pth_root_poly(c: &UniPoly, p: usize) -> UniPoly {
    let tw = c.tower();
    let coeffs: Vec<FElem> = c
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(i, _)| i % p == 0)
        .map(|(_, x)| tw.pth_root(x))
        .collect();
    debug_assert!(c.coeffs().iter().enumerate().all(|(i, x)| i % p == 0 || tw.is_zero(x)));
    UniPoly::from_coeffs(tw, coeffs)
}

/// Product of the distinct monic irreducible factors.
pub fn squarefree_part(a: &UniPoly) -> Result<UniPoly> {
    let tw = a.tower().clone();
    Ok(squarefree_decomposition(a)?
        .into_iter()
        .fold(UniPoly::one(&tw), |acc, (g, _)| acc.mul(&g)))
}

/// Product of the distinct irreducible factors occurring with multiplicity at
/// least two (`1` if `a` is squarefree).
pub fn repeated_radical(a: &UniPoly) -> Result<UniPoly> {
    let tw = a.tower().clone();
    Ok(squarefree_decomposition(a)?
        .into_iter()
        .filter(|(_, m)| *m >= 2)
        .fold(UniPoly::one(&tw), |acc, (g, _)| acc.mul(&g)))
}

pub fn is_squarefree(a: &UniPoly) -> Result<bool> {
    Ok(squarefree_decomposition(a)?.iter().all(|(_, m)| *m == 1))
}

/// Complete factorization into monic irreducibles with multiplicities.
///
/// Factors are sorted by `(degree, coefficients)`, so the result does not
/// depend on the random state, which only drives equal-degree splitting.
pub fn factor_finite_field<R: Rng + ?Sized>(a: &UniPoly, rng: &mut R) -> Result<Vec<(UniPoly, u32)>> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a.tower().is_rationals() {
        return Err(Error::CharacteristicZero("factorization"));
    }
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(a)? {
        for (d, part) in distinct_degree(&g) {
            for h in equal_degree(&part, d, rng) {
                out.push((h, m));
            }
        }
    }
    out.sort_by(|(f, m), (g, n)| {
        f.degree()
            .cmp(&g.degree())
            .then_with(|| f.tower().to_flat_key(f).cmp(&g.tower().to_flat_key(g)))
            .then(m.cmp(n))
    });
    Ok(out)
}

impl FieldTower {
    fn to_flat_key(&self, f: &UniPoly) -> Vec<Vec<u64>> {
        f.coeffs().iter().map(|c| self.to_flat(c)).collect()
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// `(d, product of all irreducible factors of degree d)`.
fn distinct_degree(f: &UniPoly) -> Vec<(usize, UniPoly)> {
    let tw = f.tower().clone();
    let q = tw.order().expect("finite field");
    let x = UniPoly::x(&tw);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.deg0() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&q, &rest);
        let g = uni_gcd(&h.sub(&x), &rest).expect("same tower");
        if g.deg0() > 0 {
            rest = rest.exact_div(&g);
            h = h.rem(&rest);
            out.push((d, g));
        }
    }
    if rest.deg0() > 0 {
        out.push((rest.deg0(), rest));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
fn equal_degree<R: Rng + ?Sized>(f: &UniPoly, d: usize, rng: &mut R) -> Vec<UniPoly> {
    let n = f.deg0();
    if n == d {
        return vec![f.monic()];
    }
    let tw = f.tower().clone();
    let q = tw.order().expect("finite field");
    let p = tw.characteristic().get();
    loop {
        let coeffs: Vec<FElem> = (0..n).map(|_| tw.random(rng)).collect();
        let a = UniPoly::from_coeffs(&tw, coeffs);
        if a.deg0() == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace down to F_2
            let k = tw.total_degree() * d;
            let mut term = a.rem(f);
            let mut acc = term.clone();
            for _ in 1..k {
                term = term.mul_mod(&term, f);
                acc = acc.add(&term);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) / 2u32;
            a.pow_mod(&e, f).sub(&UniPoly::one(&tw))
        };
        let g = uni_gcd(&b, f).expect("same tower");
        let k = g.deg0();
        if k > 0 && k < n {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.exact_div(&g), d, rng));
            return out;
        }
    }
}

/// Rabin's irreducibility test over a finite field.
pub fn is_irreducible(f: &UniPoly) -> Result<bool> {
    let tw = f.tower().clone();
    let q = tw.order().ok_or(Error::CharacteristicZero("irreducibility testing"))?;
    let n = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let f = f.monic();
    let x = UniPoly::x(&tw);
    let frob = |k: usize| {
        let mut h = x.clone();
        for _ in 0..k {
            h = h.pow_mod(&q, &f);
        }
        h
    };
    if !frob(n).sub(&x).rem(&f).is_zero() {
        return Ok(false);
    }
    for r in prime_divisors(n) {
        let g = uni_gcd(&frob(n / r).sub(&x), &f)?;
        if !g.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A field extension produced by [`extend_tower`].
#[derive(Clone, Debug)]
pub struct Extension {
    pub base: FieldTower,
    pub tower: FieldTower,
    /// A root of the defining polynomial in the new tower.
    pub root: FElem,
}

impl Extension {
    /// Embedding of elements of the old tower.
    pub fn embed(&self, a: &FElem) -> FElem {
        self.tower.embed_from(&self.base, a)
    }
}

/// Adjoin a root of the irreducible polynomial `q` (made monic) to `tower`.
pub fn extend_tower(tower: &FieldTower, q: &UniPoly) -> Result<Extension> {
    if tower.is_rationals() {
        return Err(Error::CharacteristicZero("field extension"));
    }
    if q.tower() != tower {
        return Err(Error::MixedTowers);
    }
    let deg = q.deg0();
    if deg < 2 {
        return Err(Error::DegreeTooSmall(deg));
    }
    if !is_irreducible(q)? {
        return Err(Error::Reducible);
    }
    Ok(extend_unchecked(tower, &q.monic()))
}

/// Extension by a polynomial already known to be monic irreducible.
pub(crate) fn extend_unchecked(tower: &FieldTower, q: &UniPoly) -> Extension {
    debug_assert!(q.is_monic() && q.deg0() >= 2);
    let deg = q.deg0();
    let modulus: Vec<Vec<u64>> = (0..deg).map(|i| tower.to_flat(&q.coeff(i))).collect();
    let new = tower.with_level(modulus);
    let root = new.top_generator();
    Extension { base: tower.clone(), tower: new, root }
}
