//! Exact coefficient fields: `Q`, prime fields and towers of finite extensions.
//!
//! A [`FieldTower`] over `F_p` is a chain `F_p = K_0 ⊂ K_1 ⊂ … ⊂ K_s` where
//! `K_i = K_{i-1}[t_i] / (q_i(t_i))` for a monic irreducible `q_i` over
//! `K_{i-1}`. Elements are stored as flat coefficient vectors with respect to
//! the nested power basis: an element of `K_i` is `deg q_i` consecutive
//! chunks, each chunk an element of `K_{i-1}`.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Characteristic of a coefficient field: zero or a prime below `2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Characteristic(u64);

impl Characteristic {
    pub const ZERO: Characteristic = Characteristic(0);

    pub fn new(p: u64) -> Result<Self> {
        if p == 0 {
            return Ok(Characteristic(0));
        }
        if p >= 1 << 31 {
            return Err(Error::CharacteristicTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Characteristic(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// `true` if `p > 0` and `p` divides `n`.
    pub fn divides(self, n: u64) -> bool {
        self.0 != 0 && n.is_multiple_of(self.0)
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. The variant is fixed by the tower: `Rat` over `Q`,
/// `Fp` over a prime field, `Ext` (flat vector of length `total_degree`)
/// over a proper extension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FElem {
    Rat(BigRational),
    Fp(u64),
    Ext(Vec<u64>),
}

#[derive(Debug, PartialEq, Eq)]
struct Level {
    degree: usize,
    /// total degree of the field below this level
    below: usize,
    /// non-leading coefficients of the monic defining polynomial
    modulus: Vec<Vec<u64>>,
}

#[derive(Debug, PartialEq, Eq)]
struct TowerData {
    ch: Characteristic,
    levels: Vec<Level>,
    total: usize,
}

/// Shared, immutable description of a coefficient field.
#[derive(Clone)]
pub struct FieldTower(Arc<TowerData>);

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for FieldTower {}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.ch.is_zero() {
            write!(f, "Q")
        } else if self.0.levels.is_empty() {
            write!(f, "F_{}", self.0.ch)
        } else {
            write!(f, "F_{}^{} {:?}", self.0.ch, self.0.total, self.level_degrees())
        }
    }
}

impl FieldTower {
    pub fn rationals() -> Self {
        FieldTower(Arc::new(TowerData { ch: Characteristic::ZERO, levels: Vec::new(), total: 1 }))
    }

    /// `Q` for `p = 0`, otherwise the prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Ok(Self::base(Characteristic::new(p)?))
    }

    pub fn base(ch: Characteristic) -> Self {
        FieldTower(Arc::new(TowerData { ch, levels: Vec::new(), total: 1 }))
    }

    #[inline]
    pub fn characteristic(&self) -> Characteristic {
        self.0.ch
    }

    #[inline]
    fn p(&self) -> u64 {
        self.0.ch.0
    }

    /// Degree over the prime field (1 for `Q` and `F_p`).
    #[inline]
    pub fn total_degree(&self) -> usize {
        self.0.total
    }

    pub fn depth(&self) -> usize {
        self.0.levels.len()
    }

    pub fn level_degrees(&self) -> Vec<usize> {
        self.0.levels.iter().map(|l| l.degree).collect()
    }

    /// Number of elements, `None` for `Q`.
    pub fn order(&self) -> Option<BigUint> {
        if self.0.ch.is_zero() {
            None
        } else {
            Some(BigUint::from(self.p()).pow(self.0.total as u32))
        }
    }

    pub fn is_rationals(&self) -> bool {
        self.0.ch.is_zero()
    }

    /// `true` if `self` is `other` or one of the fields below it.
    pub fn is_subfield_of(&self, other: &FieldTower) -> bool {
        self.0.ch == other.0.ch
            && self.0.levels.len() <= other.0.levels.len()
            && self.0.levels.iter().zip(other.0.levels.iter()).all(|(a, b)| a == b)
    }

    /// The tower with one more level defined by the flat coefficients of a
    /// monic polynomial over `self` (leading coefficient omitted). The caller
    /// is responsible for irreducibility.
    pub(crate) fn with_level(&self, modulus: Vec<Vec<u64>>) -> FieldTower {
        let degree = modulus.len();
        let mut levels: Vec<Level> = self
            .0
            .levels
            .iter()
            .map(|l| Level { degree: l.degree, below: l.below, modulus: l.modulus.clone() })
            .collect();
        levels.push(Level { degree, below: self.0.total, modulus });
        FieldTower(Arc::new(TowerData { ch: self.0.ch, levels, total: self.0.total * degree }))
    }

    // ---- element construction ----

    pub fn zero(&self) -> FElem {
        if self.0.ch.is_zero() {
            FElem::Rat(BigRational::zero())
        } else if self.0.total == 1 {
            FElem::Fp(0)
        } else {
            FElem::Ext(vec![0; self.0.total])
        }
    }

    pub fn one(&self) -> FElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FElem {
        if self.0.ch.is_zero() {
            return FElem::Rat(BigRational::from_integer(BigInt::from(n)));
        }
        let p = self.p() as i64;
        self.flat_scalar(n.rem_euclid(p) as u64)
    }

    pub fn from_bigint(&self, n: &BigInt) -> FElem {
        if self.0.ch.is_zero() {
            return FElem::Rat(BigRational::from_integer(n.clone()));
        }
        let p = BigInt::from(self.p());
        let r = n.mod_floor(&p).to_u64().expect("residue fits");
        self.flat_scalar(r)
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<FElem> {
        if self.0.ch.is_zero() {
            return Ok(FElem::Rat(q.clone()));
        }
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        if self.is_zero(&den) {
            return Err(Error::Parse { pos: 0, msg: format!("denominator divisible by {}", self.p()) });
        }
        Ok(self.div(&num, &den))
    }

    fn flat_scalar(&self, r: u64) -> FElem {
        if self.0.total == 1 {
            FElem::Fp(r)
        } else {
            let mut v = vec![0; self.0.total];
            v[0] = r;
            FElem::Ext(v)
        }
    }

    /// Element from a flat coefficient vector (reduced mod p, padded).
    pub fn from_flat(&self, mut v: Vec<u64>) -> FElem {
        assert!(!self.0.ch.is_zero(), "flat vectors only exist over finite fields");
        let p = self.p();
        v.resize(self.0.total, 0);
        for c in v.iter_mut() {
            *c %= p;
        }
        if self.0.total == 1 {
            FElem::Fp(v[0])
        } else {
            FElem::Ext(v)
        }
    }

    pub fn to_flat(&self, a: &FElem) -> Vec<u64> {
        match a {
            FElem::Fp(x) => vec![*x],
            FElem::Ext(v) => v.clone(),
            FElem::Rat(_) => panic!("rational element has no flat form"),
        }
    }

    /// The generator `t_s` of the top level.
    pub(crate) fn top_generator(&self) -> FElem {
        let lv = self.0.levels.last().expect("tower has a level");
        let mut v = vec![0; self.0.total];
        v[lv.below] = 1;
        FElem::Ext(v)
    }

    /// Embed an element of a subfield `sub` into `self`.
    pub fn embed_from(&self, sub: &FieldTower, a: &FElem) -> FElem {
        debug_assert!(sub.is_subfield_of(self));
        match a {
            FElem::Rat(_) => a.clone(),
            _ => {
                let v = sub.to_flat(a);
                self.from_flat(v)
            }
        }
    }

    /// Integer representative of a prime-field element.
    pub fn as_prime_residue(&self, a: &FElem) -> Option<u64> {
        match a {
            FElem::Fp(x) => Some(*x),
            FElem::Ext(v) if v[1..].iter().all(|&c| c == 0) => Some(v[0]),
            _ => None,
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FElem {
        assert!(!self.0.ch.is_zero(), "no uniform distribution on Q");
        let p = self.p();
        let v: Vec<u64> = (0..self.0.total).map(|_| rng.gen_range(0..p)).collect();
        self.from_flat(v)
    }

    // ---- predicates ----

    pub fn is_zero(&self, a: &FElem) -> bool {
        match a {
            FElem::Rat(q) => q.is_zero(),
            FElem::Fp(x) => *x == 0,
            FElem::Ext(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self, a: &FElem) -> bool {
        match a {
            FElem::Rat(q) => q.is_one(),
            FElem::Fp(x) => *x == 1,
            FElem::Ext(v) => v[0] == 1 && v[1..].iter().all(|&c| c == 0),
        }
    }

    // ---- arithmetic ----

    pub fn add(&self, a: &FElem, b: &FElem) -> FElem {
        match (a, b) {
            (FElem::Rat(x), FElem::Rat(y)) => FElem::Rat(x + y),
            (FElem::Fp(x), FElem::Fp(y)) => FElem::Fp((x + y) % self.p()),
            (FElem::Ext(x), FElem::Ext(y)) => {
                let p = self.p();
                FElem::Ext(x.iter().zip(y).map(|(u, v)| (u + v) % p).collect())
            }
            _ => panic!("mismatched field elements"),
        }
    }

    pub fn neg(&self, a: &FElem) -> FElem {
        match a {
            FElem::Rat(x) => FElem::Rat(-x),
            FElem::Fp(x) => FElem::Fp((self.p() - x) % self.p()),
            FElem::Ext(v) => {
                let p = self.p();
                FElem::Ext(v.iter().map(|u| (p - u) % p).collect())
            }
        }
    }

    pub fn sub(&self, a: &FElem, b: &FElem) -> FElem {
        match (a, b) {
            (FElem::Rat(x), FElem::Rat(y)) => FElem::Rat(x - y),
            (FElem::Fp(x), FElem::Fp(y)) => FElem::Fp((x + self.p() - y) % self.p()),
            (FElem::Ext(x), FElem::Ext(y)) => {
                let p = self.p();
                FElem::Ext(x.iter().zip(y).map(|(u, v)| (u + p - v) % p).collect())
            }
            _ => panic!("mismatched field elements"),
        }
    }

    pub fn mul(&self, a: &FElem, b: &FElem) -> FElem {
        match (a, b) {
            (FElem::Rat(x), FElem::Rat(y)) => FElem::Rat(x * y),
            (FElem::Fp(x), FElem::Fp(y)) => FElem::Fp(x * y % self.p()),
            (FElem::Ext(x), FElem::Ext(y)) => FElem::Ext(self.mul_flat(self.0.levels.len(), x, y)),
            _ => panic!("mismatched field elements"),
        }
    }

    /// Multiplication in the field `K_k` (flat slices of length `total(k)`).
    fn mul_flat(&self, k: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p();
        if k == 0 {
            return vec![a[0] * b[0] % p];
        }
        let lv = &self.0.levels[k - 1];
        let (n, t) = (lv.degree, lv.below);
        if t == 1 {
            // first level: plain polynomial arithmetic over F_p
            let mut prod = vec![0u64; 2 * n - 1];
            for (i, &ai) in a.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                for (j, &bj) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + ai * bj) % p;
                }
            }
            for i in (n..2 * n - 1).rev() {
                let c = prod[i];
                if c == 0 {
                    continue;
                }
                prod[i] = 0;
                for r in 0..n {
                    let m = lv.modulus[r][0];
                    prod[i - n + r] = (prod[i - n + r] + (p - c) * m) % p;
                }
            }
            prod.truncate(n);
            return prod;
        }
        let zero = |s: &[u64]| s.iter().all(|&c| c == 0);
        let mut prod: Vec<Vec<u64>> = vec![vec![0; t]; 2 * n - 1];
        for i in 0..n {
            let ai = &a[i * t..(i + 1) * t];
            if zero(ai) {
                continue;
            }
            for j in 0..n {
                let bj = &b[j * t..(j + 1) * t];
                if zero(bj) {
                    continue;
                }
                let c = self.mul_flat(k - 1, ai, bj);
                for (dst, src) in prod[i + j].iter_mut().zip(c) {
                    *dst = (*dst + src) % p;
                }
            }
        }
        for i in (n..2 * n - 1).rev() {
            let c = std::mem::replace(&mut prod[i], vec![0; t]);
            if zero(&c) {
                continue;
            }
            for r in 0..n {
                let m = self.mul_flat(k - 1, &c, &lv.modulus[r]);
                for (dst, src) in prod[i - n + r].iter_mut().zip(m) {
                    *dst = (*dst + p - src) % p;
                }
            }
        }
        prod.truncate(n);
        prod.concat()
    }

    pub fn square(&self, a: &FElem) -> FElem {
        self.mul(a, a)
    }

    pub fn pow_u64(&self, a: &FElem, mut e: u64) -> FElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    pub fn pow_big(&self, a: &FElem, e: &BigUint) -> FElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: &FElem) -> FElem {
        assert!(!self.is_zero(a), "inverse of zero");
        match a {
            FElem::Rat(x) => FElem::Rat(x.recip()),
            FElem::Fp(x) => FElem::Fp(inv_mod(*x, self.p())),
            FElem::Ext(_) => {
                let q = self.order().expect("finite");
                self.pow_big(a, &(q - 2u32))
            }
        }
    }

    pub fn div(&self, a: &FElem, b: &FElem) -> FElem {
        self.mul(a, &self.inv(b))
    }

    /// Inverse Frobenius: the unique `b` with `b^p = a` (identity over `Q`).
    pub fn pth_root(&self, a: &FElem) -> FElem {
        match a {
            FElem::Rat(_) | FElem::Fp(_) => a.clone(),
            FElem::Ext(_) => {
                let e = BigUint::from(self.p()).pow(self.0.total as u32 - 1);
                self.pow_big(a, &e)
            }
        }
    }

    /// Render an element; extension elements print as flat coefficient lists.
    pub fn fmt_elem(&self, a: &FElem) -> String {
        match a {
            FElem::Rat(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            FElem::Fp(x) => x.to_string(),
            FElem::Ext(v) => {
                let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
        }
    }

    /// Signed representative used when printing coefficients: rationals keep
    /// their sign, prime-field residues above `p/2` print as negatives.
    pub(crate) fn signed_repr(&self, a: &FElem) -> Option<(bool, String)> {
        match a {
            FElem::Rat(q) => {
                let abs = q.abs();
                let s = if abs.is_integer() {
                    abs.numer().to_string()
                } else {
                    format!("{}/{}", abs.numer(), abs.denom())
                };
                Some((q.is_negative(), s))
            }
            FElem::Fp(x) => {
                let p = self.p();
                if *x > p / 2 {
                    Some((true, (p - x).to_string()))
                } else {
                    Some((false, x.to_string()))
                }
            }
            FElem::Ext(_) => None,
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i64) as u64
}
