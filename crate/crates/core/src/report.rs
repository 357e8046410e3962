//! Invariant bundles, theorem verdicts and randomized verification.
//!
//! Each verdict checks one known relation between the invariants. A failed
//! verdict means a bug in this crate, so [`invariant_bundle`] turns it into
//! [`Error::TheoremViolation`].

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Characteristic, FieldTower};
use crate::bivar::BivarPoly;
use crate::error::{Error, Result};
use crate::localalg::milnor_number;
use crate::newton::{delta_n, mu_n, r_n, s_n, ExtNat, NewtonDiagram};
use crate::nondeg::classify;
use crate::resolve::{is_reduced, resolve};

/// Identifiers of the checked relations, in evaluation order.
pub const VERDICT_IDS: [&str; 12] = [
    "kouchnirenko_bound",
    "nnd_mu_equality",
    "innd_iff_mu_equality",
    "char0_nnd_innd",
    "wnnd_implies_whnnd",
    "s_n_le_r",
    "delta_n_eq_nu",
    "delta_eq_iff_whnnd",
    "branch_bounds",
    "milnor_chain",
    "innd_iff_wnnd_and_milnor_formula",
    "superisolated_consequences",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    fn of(holds: bool) -> Self {
        if holds {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub id: String,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub nnd: bool,
    pub innd: bool,
    pub wnnd: bool,
    pub whnnd: bool,
    pub nnd1: bool,
    /// `None` when the resolution is unavailable
    pub superisolated: Option<bool>,
    pub wnnd_vacuous: bool,
}

/// All invariants of one germ. Resolution-side fields are `None` over `Q`
/// and for germs that are not reduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantBundle {
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub mu: ExtNat,
    #[serde(rename = "mu_N")]
    pub mu_n: ExtNat,
    pub delta: Option<u64>,
    #[serde(rename = "delta_N")]
    pub delta_n: ExtNat,
    pub nu: Option<u64>,
    pub r: Option<u64>,
    #[serde(rename = "r_N")]
    pub r_n: u64,
    #[serde(rename = "s_N")]
    pub s_n: u64,
    /// `mu - 2 delta + r - 1`
    pub wvc: Option<ExtNat>,
    pub flags: Flags,
    pub verdicts: Vec<Verdict>,
}

impl InvariantBundle {
    pub fn failed_verdicts(&self) -> Vec<String> {
        self.verdicts.iter().filter(|v| v.status == Status::Fail).map(|v| v.id.clone()).collect()
    }

    pub fn status(&self, id: &str) -> Option<Status> {
        self.verdicts.iter().find(|v| v.id == id).map(|v| v.status)
    }
}

/// Resolution-side data of a reduced germ over a finite field.
struct DeltaSide {
    delta: u64,
    nu: u64,
    r: u64,
    superisolated: bool,
    mult: u64,
}

/// Builds the bundle without turning failed verdicts into errors.
pub fn invariant_bundle_unchecked(f: &BivarPoly) -> Result<InvariantBundle> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_unit() {
        return Err(Error::Unit);
    }
    let ch = f.tower().characteristic();
    let diagram = NewtonDiagram::of(f)?;
    let mu = milnor_number(f)?;
    let mu_n = mu_n(f)?;
    let delta_n = delta_n(f)?;
    let r_n = r_n(f)?;
    let s_n = s_n(f)?;
    let nd = classify(f)?;

    let side = if !ch.is_zero() && is_reduced(f)? {
        let s = resolve(f)?;
        Some(DeltaSide {
            delta: s.delta,
            nu: s.nu,
            r: s.r,
            superisolated: s.superisolated,
            mult: f.order().unwrap_or(0) as u64,
        })
    } else {
        None
    };

    // mu + r - 1 - 2 delta, signed so a violation stays visible
    let wvc_signed = side.as_ref().and_then(|s| mu.finite().map(|m| m as i64 + s.r as i64 - 1 - 2 * s.delta as i64));
    let wvc = match (&side, mu) {
        (None, _) => None,
        (Some(_), ExtNat::Infinite) => Some(ExtNat::Infinite),
        (Some(_), ExtNat::Finite(_)) => wvc_signed.filter(|&w| w >= 0).map(|w| ExtNat::Finite(w as u64)),
    };

    let na = Status::NotApplicable;
    let implies = |a: bool, b: bool| !a || b;
    let mut verdicts = Vec::new();
    let mut push = |id: &str, status: Status| verdicts.push(Verdict { id: id.to_string(), status });

    push("kouchnirenko_bound", Status::of(mu_n <= mu));
    push("nnd_mu_equality", if nd.nnd { Status::of(mu == mu_n) } else { na });
    push("innd_iff_mu_equality", Status::of(nd.innd == (mu == mu_n && mu.is_finite())));
    push(
        "char0_nnd_innd",
        if ch.is_zero() {
            let finite = nd.innd == (nd.nnd && mu_n.is_finite());
            let convenient = implies(diagram.convenient, nd.nnd == nd.innd);
            Status::of(finite && convenient)
        } else {
            na
        },
    );
    push("wnnd_implies_whnnd", Status::of(implies(nd.wnnd, nd.whnnd)));

    let delta_n_fin = delta_n.finite();
    match &side {
        Some(s) => {
            push("s_n_le_r", Status::of(s_n <= s.r && implies(nd.whnnd, s_n == s.r)));
            push(
                "delta_n_eq_nu",
                Status::of(delta_n_fin == Some(s.nu) && s.nu <= s.delta && implies(nd.wnnd, s.delta == s.nu)),
            );
            push("delta_eq_iff_whnnd", Status::of((delta_n_fin == Some(s.delta)) == nd.whnnd));
            push("branch_bounds", Status::of(s_n <= s.r && s.r <= r_n && ((s_n == s.r && s.r == r_n) == nd.wnnd)));
        }
        None => {
            for id in ["s_n_le_r", "delta_n_eq_nu", "delta_eq_iff_whnnd", "branch_bounds"] {
                push(id, na);
            }
        }
    }

    // mu_N = 2 delta_N - r_N + 1 <= 2 delta - r + 1 <= mu
    let newton_side = match (mu_n, delta_n) {
        (ExtNat::Finite(m), ExtNat::Finite(d)) => Some((m as i64, 2 * d as i64 - r_n as i64 + 1)),
        _ => None,
    };
    let milnor = match (&side, newton_side) {
        (None, None) => na,
        (None, Some((m, rhs))) => Status::of(m == rhs),
        (Some(s), _) => {
            let mid = 2 * s.delta as i64 - s.r as i64 + 1;
            let upper = mu.finite().is_none_or(|m| mid <= m as i64);
            let lower = newton_side.is_none_or(|(m, rhs)| m == rhs && rhs <= mid);
            Status::of(upper && lower)
        }
    };
    push("milnor_chain", milnor);

    push(
        "innd_iff_wnnd_and_milnor_formula",
        match (&side, wvc_signed) {
            (Some(_), Some(w)) => Status::of(nd.innd == (nd.wnnd && w == 0) && implies(nd.innd, w == 0)),
            (Some(_), None) => Status::of(!nd.innd),
            (None, _) => na,
        },
    );
    push(
        "superisolated_consequences",
        match &side {
            Some(s) if s.superisolated => {
                let m = s.mult;
                Status::of(nd.whnnd && s.delta == m * (m - 1) / 2 && s.nu == s.delta)
            }
            _ => na,
        },
    );

    Ok(InvariantBundle {
        characteristic: ch.get(),
        mu,
        mu_n,
        delta: side.as_ref().map(|s| s.delta),
        delta_n,
        nu: side.as_ref().map(|s| s.nu),
        r: side.as_ref().map(|s| s.r),
        r_n,
        s_n,
        wvc,
        flags: Flags {
            nnd: nd.nnd,
            innd: nd.innd,
            wnnd: nd.wnnd,
            whnnd: nd.whnnd,
            nnd1: nd.nnd1,
            superisolated: side.as_ref().map(|s| s.superisolated),
            wnnd_vacuous: nd.wnnd_vacuous,
        },
        verdicts,
    })
}

/// Builds the bundle; any failed verdict is an error.
pub fn invariant_bundle(f: &BivarPoly) -> Result<InvariantBundle> {
    let b = invariant_bundle_unchecked(f)?;
    let failed = b.failed_verdicts();
    if failed.is_empty() {
        Ok(b)
    } else {
        Err(Error::TheoremViolation { poly: f.to_string(), ids: failed })
    }
}

/// The random germ with the given coordinates: 1 to 6 terms with exponents
/// in `[0, max_exp]^2` minus the origin, coefficients uniform over the
/// nonzero elements of `F_p`, or nonzero integers in `[-5, 5]` over `Q`.
pub fn random_germ(tower: &FieldTower, max_exp: u32, seed: u64, index: u64) -> BivarPoly {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&tower.characteristic().get().to_le_bytes());
    key[16..24].copy_from_slice(&index.to_le_bytes());
    key[24..32].copy_from_slice(&(max_exp as u64).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    let p = tower.characteristic().get();
    loop {
        let n = rng.gen_range(1..=6);
        let mut f = BivarPoly::zero(tower);
        for _ in 0..n {
            let e = loop {
                let e = (rng.gen_range(0..=max_exp), rng.gen_range(0..=max_exp));
                if e != (0, 0) {
                    break e;
                }
            };
            let c = if p == 0 {
                let v = rng.gen_range(1..=5i64);
                if rng.gen_bool(0.5) {
                    -v
                } else {
                    v
                }
            } else {
                rng.gen_range(1..p) as i64
            };
            f.add_term(e, tower.from_i64(c));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: u64,
    pub fail: u64,
    pub not_applicable: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharSummary {
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub samples: u64,
    pub reduced: u64,
    pub finite_mu: u64,
    pub innd: u64,
    pub verdicts: BTreeMap<String, Counts>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub index: u64,
    pub poly: String,
    pub failed: Vec<String>,
    pub error: Option<String>,
}

/// Two germs with the same Newton diagram but different wild vanishing
/// cycle counts; the first is not INND yet has none.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFinding {
    pub f: String,
    pub g: String,
    pub same_diagram: bool,
    pub wvc_f: Option<ExtNat>,
    pub wvc_g: Option<ExtNat>,
    pub innd_f: bool,
    /// INND is sufficient but not necessary for `wvc = 0`
    pub innd_not_necessary: bool,
    /// the Newton diagram does not determine `wvc`
    pub diagram_blind_to_wvc: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub seed: u64,
    pub samples: u64,
    pub max_exp: u32,
    pub per_char: Vec<CharSummary>,
    pub pair: PairFinding,
    pub failures: Vec<Failure>,
}

impl VerifySummary {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty() && self.pair.innd_not_necessary && self.pair.diagram_blind_to_wvc
    }
}

fn pair_finding() -> Result<PairFinding> {
    let t = FieldTower::prime(3)?;
    let f = BivarPoly::from_i64s(&t, &[((1, 0), 1)])
        .mul(&BivarPoly::from_i64s(&t, &[((1, 0), 1), ((0, 1), -1)]).pow(2))
        .add(&BivarPoly::from_i64s(&t, &[((0, 7), 1)]));
    let g = f.add(&BivarPoly::from_i64s(&t, &[((6, 0), 1)]));
    let (bf, bg) = (invariant_bundle(&f)?, invariant_bundle(&g)?);
    let same_diagram = NewtonDiagram::of(&f)? == NewtonDiagram::of(&g)?;
    Ok(PairFinding {
        f: f.to_string(),
        g: g.to_string(),
        same_diagram,
        wvc_f: bf.wvc,
        wvc_g: bg.wvc,
        innd_f: bf.flags.innd,
        innd_not_necessary: !bf.flags.innd && bf.wvc == Some(ExtNat::Finite(0)),
        diagram_blind_to_wvc: same_diagram && bf.wvc != bg.wvc,
    })
}

enum Outcome {
    Bundle(Box<InvariantBundle>),
    Error(String),
}

/// Evaluates every verdict on `samples` random germs per characteristic.
/// The result depends only on the arguments, not on scheduling.
pub fn verify_random(chars: &[u64], samples: u64, max_exp: u32, seed: u64) -> Result<VerifySummary> {
    if samples == 0 {
        return Err(Error::Usage("samples must be at least 1".into()));
    }
    if chars.is_empty() {
        return Err(Error::Usage("at least one characteristic is required".into()));
    }
    let towers = chars.iter().map(|&p| Ok(FieldTower::base(Characteristic::new(p)?))).collect::<Result<Vec<_>>>()?;
    let mut per_char = Vec::new();
    let mut failures = Vec::new();
    for tower in &towers {
        let p = tower.characteristic().get();
        let results: Vec<(u64, BivarPoly, Outcome)> = (0..samples)
            .into_par_iter()
            .map(|i| {
                let f = random_germ(tower, max_exp, seed, i);
                let out = match invariant_bundle_unchecked(&f) {
                    Ok(b) => Outcome::Bundle(Box::new(b)),
                    Err(e) => Outcome::Error(e.to_string()),
                };
                (i, f, out)
            })
            .collect();
        let mut summary = CharSummary {
            characteristic: p,
            samples,
            reduced: 0,
            finite_mu: 0,
            innd: 0,
            verdicts: VERDICT_IDS.iter().map(|id| (id.to_string(), Counts::default())).collect(),
        };
        for (index, f, out) in results {
            match out {
                Outcome::Bundle(b) => {
                    summary.reduced += b.delta.is_some() as u64;
                    summary.finite_mu += b.mu.is_finite() as u64;
                    summary.innd += b.flags.innd as u64;
                    for v in &b.verdicts {
                        let c = summary.verdicts.entry(v.id.clone()).or_default();
                        match v.status {
                            Status::Pass => c.pass += 1,
                            Status::Fail => c.fail += 1,
                            Status::NotApplicable => c.not_applicable += 1,
                        }
                    }
                    let failed = b.failed_verdicts();
                    if !failed.is_empty() {
                        failures.push(Failure { characteristic: p, index, poly: f.to_string(), failed, error: None });
                    }
                }
                Outcome::Error(e) => failures.push(Failure {
                    characteristic: p,
                    index,
                    poly: f.to_string(),
                    failed: Vec::new(),
                    error: Some(e),
                }),
            }
        }
        per_char.push(summary);
    }
    Ok(VerifySummary { seed, samples, max_exp, per_char, pair: pair_finding()?, failures })
}
