//! Colengths of ideals `<g1, g2>` in `K[[x, y]]`: the Milnor number and
//! local intersection multiplicities.
//!
//! The colength is read off a truncation `K[x, y]_{<L}` of the ideal. Rows
//! are reduced with the lowest-degree monomial as pivot; once every monomial
//! of some degree `N < L` is a pivot, `m^N` lies in the ideal and the number
//! of non-pivot monomials is the exact colength.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{FElem, FieldTower};
use crate::bivar::{bivar_gcd, BivarPoly};
use crate::error::{Error, Result};
use crate::newton::ExtNat;

/// Whether `K[[x, y]] / <g1, g2>` is finite dimensional: the two share no
/// polynomial factor through the origin.
pub fn finite_colength_test(g1: &BivarPoly, g2: &BivarPoly) -> Result<bool> {
    if g1.is_zero() && g2.is_zero() {
        return Ok(false);
    }
    if g1.is_unit() || g2.is_unit() {
        return Ok(true);
    }
    let (c1, c2) = (g1.monomial_content(), g2.monomial_content());
    let shares_axis = |a: u32, b: u32, g1_zero: bool, g2_zero: bool| (a > 0 || g1_zero) && (b > 0 || g2_zero);
    if shares_axis(c1.0, c2.0, g1.is_zero(), g2.is_zero()) || shares_axis(c1.1, c2.1, g1.is_zero(), g2.is_zero()) {
        return Ok(false);
    }
    if g1.tower().characteristic().is_zero() {
        if let Some(finite) = modular_colength_test(g1, g2)? {
            return Ok(finite);
        }
    }
    let g = bivar_gcd(g1, g2)?;
    Ok(g.is_unit())
}

/// Primes below `2^31` used to certify coprimality over `Q`.
const MODULAR_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// `g` over `Q` scaled to integer coefficients without common factor.
fn primitive_integer(g: &BivarPoly) -> BivarPoly {
    let rats = || {
        g.terms().map(|(_, c)| match c {
            FElem::Rat(r) => r,
            _ => unreachable!("rational tower"),
        })
    };
    let den = rats().fold(BigInt::one(), |d, r| d.lcm(r.denom()));
    let num = rats().fold(BigInt::zero(), |n, r| n.gcd(r.numer()));
    if num.is_zero() {
        return g.clone();
    }
    g.scale(&FElem::Rat(BigRational::new(den, num)))
}

/// Primitive integer form of `g` over `Q`, reduced into the prime field
/// `t`. Nonzero when `g` is.
fn reduce_primitive(g: &BivarPoly, t: &FieldTower) -> BivarPoly {
    let mut out = BivarPoly::zero(t);
    for (e, c) in primitive_integer(g).terms() {
        let FElem::Rat(r) = c else { unreachable!("rational tower") };
        out.add_term(e, t.from_bigint(r.numer()));
    }
    out
}

/// Decides finiteness over `Q` from gcds modulo [`MODULAR_PRIMES`], or
/// `None` if the modular data is inconclusive.
///
/// A common factor through the origin over `Q` survives reduction of the
/// primitive integer forms, so a unit gcd mod any prime proves finiteness.
/// Otherwise the monic modular gcds are lifted by CRT and rational
/// reconstruction; a lift vanishing at the origin and dividing both
/// generators proves infiniteness.
fn modular_colength_test(g1: &BivarPoly, g2: &BivarPoly) -> Result<Option<bool>> {
    let mut images: Vec<(BigInt, BivarPoly)> = Vec::new();
    for p in MODULAR_PRIMES {
        let t = FieldTower::prime(p)?;
        let reduce = |g: &BivarPoly| if g.is_zero() { BivarPoly::zero(&t) } else { reduce_primitive(g, &t) };
        let h = bivar_gcd(&reduce(g1), &reduce(g2))?;
        if h.is_unit() {
            return Ok(Some(true));
        }
        let lead = h.terms().last().map(|(_, c)| t.inv(c)).expect("nonzero gcd");
        images.push((BigInt::from(p), h.scale(&lead)));
    }
    let support = images[0].1.support();
    if images.iter().any(|(_, h)| h.support() != support) {
        return Ok(None);
    }
    let modulus: BigInt = images.iter().map(|(p, _)| p.clone()).product();
    let q = g1.tower();
    let mut lift = BivarPoly::zero(q);
    for &e in &support {
        let mut acc = BigInt::zero();
        for (p, h) in &images {
            let r = BigInt::from(h.tower().as_prime_residue(&h.coeff(e.0, e.1)).expect("prime field"));
            let m = &modulus / p;
            let inv = m.modpow(&(p - 2u32), p);
            acc += r * &m * inv;
        }
        let Some(c) = rational_reconstruction(&(acc % &modulus), &modulus) else {
            return Ok(None);
        };
        lift.add_term(e, FElem::Rat(c));
    }
    let certified = !lift.is_unit() && lift.divides(g1) && lift.divides(g2);
    Ok(certified.then_some(false))
}

/// The fraction `n/d` with `n = a d (mod m)` and `|n|, d <= sqrt(m/2)`.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        (r0, r1) = (r1.clone(), r0 - &q * r1);
        (t0, t1) = (t1.clone(), t0 - q * t1);
    }
    (t1.abs() <= bound && !t1.is_zero()).then(|| BigRational::new(r1, t1))
}

/// Field operations needed by the elimination.
trait LinField {
    type E: Clone;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a - c*b`
    fn sub_mul(&self, a: &Self::E, c: &Self::E, b: &Self::E) -> Self::E;
    fn neg_mul(&self, c: &Self::E, b: &Self::E) -> Self::E;
}

struct ModP(u64);

impl LinField for ModP {
    type E = u64;
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> u64 {
        let (mut r, mut base, mut e) = (1u64, *a, self.0 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % self.0;
            }
            base = base * base % self.0;
            e >>= 1;
        }
        r
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn sub_mul(&self, a: &u64, c: &u64, b: &u64) -> u64 {
        (a + self.0 - c * b % self.0) % self.0
    }
    fn neg_mul(&self, c: &u64, b: &u64) -> u64 {
        (self.0 - c * b % self.0) % self.0
    }
}

impl LinField for FieldTower {
    type E = FElem;
    fn is_zero(&self, a: &FElem) -> bool {
        FieldTower::is_zero(self, a)
    }
    fn inv(&self, a: &FElem) -> FElem {
        FieldTower::inv(self, a)
    }
    fn mul(&self, a: &FElem, b: &FElem) -> FElem {
        FieldTower::mul(self, a, b)
    }
    fn sub_mul(&self, a: &FElem, c: &FElem, b: &FElem) -> FElem {
        self.sub(a, &FieldTower::mul(self, c, b))
    }
    fn neg_mul(&self, c: &FElem, b: &FElem) -> FElem {
        self.neg(&FieldTower::mul(self, c, b))
    }
}

type Row<E> = Vec<(u32, E)>;

/// Column of `x^i y^j`: lower total degree first.
fn column(i: u32, j: u32) -> u32 {
    let d = i + j;
    d * (d + 1) / 2 + j
}

/// `row - c * pivot`, both sorted by column.
fn sub_scaled<F: LinField>(k: &F, row: &Row<F::E>, c: &F::E, pivot: &Row<F::E>) -> Row<F::E> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < row.len() || b < pivot.len() {
        let ca = row.get(a).map_or(u32::MAX, |e| e.0);
        let cb = pivot.get(b).map_or(u32::MAX, |e| e.0);
        if ca < cb {
            out.push(row[a].clone());
            a += 1;
        } else if cb < ca {
            out.push((cb, k.neg_mul(c, &pivot[b].1)));
            b += 1;
        } else {
            let v = k.sub_mul(&row[a].1, c, &pivot[b].1);
            if !k.is_zero(&v) {
                out.push((ca, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

/// Number of non-pivot monomials of degree `< level`, or `None` if no full
/// pivot degree below `level` certifies it as the colength.
fn truncated_colength<F: LinField>(k: &F, gens: &[Vec<(u32, u32, F::E)>], level: u32) -> Option<u64> {
    let mut pivots: HashMap<u32, Row<F::E>> = HashMap::new();
    for g in gens {
        let ord = g.iter().map(|t| t.0 + t.1).min().unwrap_or(0);
        for s in 0..level.saturating_sub(ord) {
            for a in 0..=s {
                let b = s - a;
                let mut row: Row<F::E> = g
                    .iter()
                    .filter(|t| t.0 + t.1 + s < level)
                    .map(|t| (column(t.0 + a, t.1 + b), t.2.clone()))
                    .collect();
                row.sort_unstable_by_key(|e| e.0);
                while let Some((lead, c)) = row.first().cloned() {
                    match pivots.get(&lead) {
                        Some(p) => row = sub_scaled(k, &row, &c, p),
                        None => {
                            let inv = k.inv(&c);
                            let row: Row<F::E> = row.into_iter().map(|(col, v)| (col, k.mul(&v, &inv))).collect();
                            pivots.insert(lead, row);
                            break;
                        }
                    }
                }
            }
        }
    }
    let full = (0..level).any(|n| (0..=n).all(|j| pivots.contains_key(&column(n - j, j))));
    full.then(|| {
        let total = level as u64 * (level as u64 + 1) / 2;
        total - pivots.len() as u64
    })
}

fn colength_by_truncation<F: LinField>(k: &F, gens: &[Vec<(u32, u32, F::E)>], start: u32) -> Result<u64> {
    let mut level = start.max(2);
    loop {
        if let Some(d) = truncated_colength(k, gens, level) {
            return Ok(d);
        }
        level *= 2;
        if level > 1 << 10 {
            return Err(Error::internal("colength truncation did not stabilize"));
        }
    }
}

/// Shared short cuts: `Some` for mixed towers, units and infinite colength.
fn trivial_cases(g1: &BivarPoly, g2: &BivarPoly) -> Result<Option<ExtNat>> {
    if g1.tower() != g2.tower() {
        return Err(Error::MixedTowers);
    }
    if g1.is_unit() || g2.is_unit() {
        return Ok(Some(ExtNat::Finite(0)));
    }
    if !finite_colength_test(g1, g2)? {
        return Ok(Some(ExtNat::Infinite));
    }
    Ok(None)
}

/// `dim K[[x, y]] / <g1, g2>`; zero if either generator is a unit.
///
/// Over finite fields this is [`quotient_dim_by_truncation`]. Over `Q`, where
/// row reduction suffers from coefficient growth, the colength mod a prime
/// bounds it from above (ranks can only drop mod `p`), so `m^D` lies in the
/// ideal and Fulton's algorithm runs on polynomials truncated above degree
/// `D`.
pub fn local_quotient_dim(g1: &BivarPoly, g2: &BivarPoly) -> Result<ExtNat> {
    if !g1.tower().characteristic().is_zero() {
        return quotient_dim_by_truncation(g1, g2);
    }
    if let Some(d) = trivial_cases(g1, g2)? {
        return Ok(d);
    }
    for p in MODULAR_PRIMES {
        let t = FieldTower::prime(p)?;
        let reduce = |g: &BivarPoly| if g.is_zero() { BivarPoly::zero(&t) } else { reduce_primitive(g, &t) };
        if let ExtNat::Finite(bound) = quotient_dim_by_truncation(&reduce(g1), &reduce(g2))? {
            return fulton(g1, g2, bound as u32);
        }
    }
    quotient_dim_by_fulton(g1, g2)
}

/// The colength by row reduction of truncated ideals.
pub fn quotient_dim_by_truncation(g1: &BivarPoly, g2: &BivarPoly) -> Result<ExtNat> {
    if let Some(d) = trivial_cases(g1, g2)? {
        return Ok(d);
    }
    let start = g1.order().unwrap_or(0).max(g2.order().unwrap_or(0)) + 2;
    let t = g1.tower();
    let p = t.characteristic().get();
    let d = if p > 0 && t.total_degree() == 1 {
        let k = ModP(p);
        let gens: Vec<Vec<(u32, u32, u64)>> = [g1, g2]
            .iter()
            .map(|g| g.terms().map(|((i, j), c)| (i, j, t.as_prime_residue(c).expect("prime field element"))).collect())
            .collect();
        colength_by_truncation(&k, &gens, start)?
    } else {
        let gens: Vec<Vec<(u32, u32, FElem)>> =
            [g1, g2].iter().map(|g| g.terms().map(|((i, j), c)| (i, j, c.clone())).collect()).collect();
        colength_by_truncation(t, &gens, start)?
    };
    Ok(ExtNat::Finite(d))
}

/// The colength by a local form of Fulton's algorithm, independent of the
/// row reduction. The number of intersections in the plane bounds the
/// colength by `deg g1 * deg g2`.
pub fn quotient_dim_by_fulton(g1: &BivarPoly, g2: &BivarPoly) -> Result<ExtNat> {
    if let Some(d) = trivial_cases(g1, g2)? {
        return Ok(d);
    }
    let deg = |g: &BivarPoly| g.terms().map(|((i, j), _)| i + j).max().unwrap_or(0);
    fulton(g1, g2, deg(g1) * deg(g2))
}

/// Inverse of the power series `u` (with `u[0] != 0`) modulo `x^n`.
fn series_inverse(t: &FieldTower, u: &[FElem], n: usize) -> Vec<FElem> {
    let inv0 = t.inv(&u[0]);
    let mut w = vec![inv0.clone()];
    for k in 1..n {
        let mut acc = t.zero();
        for i in 1..=k.min(u.len() - 1) {
            acc = t.add(&acc, &t.mul(&u[i], &w[k - i]));
        }
        w.push(t.neg(&t.mul(&acc, &inv0)));
    }
    w
}

/// Colength of a pair of finite colength with `m^bound` in the ideal.
///
/// Uses `i(F, G) = i(F, cG - AF)` for constants `c != 0`, `i(F, uG) = i(F, G)`
/// for units `u`, and `i(F, yH) = ord_x F(x, 0) + i(F, H)`. Terms of degree
/// above `bound` lie in `m` times the ideal and are dropped throughout.
fn fulton(g1: &BivarPoly, g2: &BivarPoly, bound: u32) -> Result<ExtNat> {
    let t = g1.tower().clone();
    let rational = t.characteristic().is_zero();
    let normalize = |g: BivarPoly| {
        let g = g.filter(|i, j| i + j <= bound);
        if rational {
            primitive_integer(&g)
        } else {
            g
        }
    };
    let (mut f, mut g) = (normalize(g1.clone()), normalize(g2.clone()));
    let mut value = 0u64;
    for _ in 0..4 * (bound as usize + 4) {
        if f.is_unit() || g.is_unit() {
            return Ok(ExtNat::Finite(value));
        }
        if f.restrict_y0().is_zero() {
            std::mem::swap(&mut f, &mut g);
        }
        let f0 = f.restrict_y0();
        if f0.is_zero() || g.is_zero() {
            return Err(Error::internal("common factor after finiteness pretest"));
        }
        let a = f0.terms().next().expect("nonzero").0 .0;
        if f0.num_terms() > 1 {
            // F(x, 0) = x^a u(x) with u a unit: replace F by F / u
            let n = (bound - a + 1) as usize;
            let mut u = vec![t.zero(); n];
            for ((i, _), c) in f0.terms().filter(|((i, _), _)| i - a < n as u32) {
                u[(i - a) as usize] = c.clone();
            }
            let w = series_inverse(&t, &u, n);
            let w = BivarPoly::from_terms(&t, w.into_iter().enumerate().map(|(k, c)| ((k as u32, 0), c)));
            f = normalize(f.mul(&w));
            continue;
        }
        let g0 = g.restrict_y0();
        if g0.is_zero() {
            value += a as u64;
            g = BivarPoly::from_terms(&t, g.terms().map(|((i, j), c)| ((i, j - 1), c.clone())));
            continue;
        }
        let b = g0.terms().next().expect("nonzero").0 .0;
        if b < a {
            std::mem::swap(&mut f, &mut g);
            continue;
        }
        // F(x, 0) = c x^a and x^a divides G(x, 0)
        let c = f0.coeff(a, 0);
        let quot = BivarPoly::from_terms(&t, g0.terms().map(|((i, _), c)| ((i - a, 0), c.clone())));
        g = normalize(g.scale(&c).sub(&quot.mul(&f)));
    }
    Err(Error::internal("intersection algorithm did not terminate"))
}

/// Milnor number `dim K[[x, y]] / <f_x, f_y>`.
pub fn milnor_number(f: &BivarPoly) -> Result<ExtNat> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_unit() {
        return Err(Error::Unit);
    }
    local_quotient_dim(&f.partial_x(), &f.partial_y())
}

/// Local intersection multiplicity of `f` and `g` at the origin.
pub fn intersection_multiplicity(f: &BivarPoly, g: &BivarPoly) -> Result<ExtNat> {
    local_quotient_dim(f, g)
}
