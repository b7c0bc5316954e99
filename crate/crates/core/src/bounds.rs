//! Exact binomial arithmetic, the table of degree and size bounds with their
//! hypotheses, and sweeps of the auxiliary inequalities used by the proofs.
//!
//! Nothing here touches floating point: bounds are [`BigUint`] and ratios are
//! [`BigRational`].

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::grid::{Grid, Point};

/// `C(n, k)`, zero when `n < 0`, `k < 0` or `k > n`.
pub fn binom(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from((n - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    acc
}

/// `C(n, k)` as a signed integer, for expressions with subtraction.
pub fn binom_int(n: i64, k: i64) -> BigInt {
    BigInt::from(binom(n, k))
}

pub(crate) fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

pub(crate) fn as_rational(v: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v.clone()))
}

/// Renders an exact rational, integers without a denominator.
pub fn show_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn ser_big<S: serde::Serializer>(
    v: &BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `⌈a / b⌉` for positive `b`.
pub fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// Identifiers of the bounds in the table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BoundId {
    /// Exact EKR: `|F| ≤ C(n-t, k-t)` for `n ≥ (t+1)(k-t+1)`.
    #[serde(rename = "EKR")]
    Ekr,
    /// Hilton–Milner size bound for non-trivial intersecting families.
    #[serde(rename = "HM")]
    Hm,
    /// Maximum degree of a non-trivial intersecting family.
    #[serde(rename = "COR12")]
    Cor12,
    /// Minimum degree, `d_n ≤ C(n-2, k-2)`.
    #[serde(rename = "HZ")]
    Hz,
    /// Second largest degree, `d_2 ≤ C(n-2, k-2) + C(n-3, k-2)`.
    #[serde(rename = "D2")]
    D2,
    /// `d_{2k+1} ≤ C(n-2, k-2)` for `n ≥ 6k-9`.
    #[serde(rename = "D2K1")]
    D2k1,
    /// `d_{⌈8k/3⌉} ≤ C(n-2, k-2)` for `n ≥ ⌈8k/3⌉`.
    #[serde(rename = "D8K3")]
    D8k3,
    /// `d_{k+2} ≤ C(n-t-1, k-t-1)` for t-intersecting families, `n ≥ C(t+2,2)k²`.
    #[serde(rename = "TINT")]
    Tint,
    /// `d_4 ≤ C(n-2, k-2) + C(n-4, k-3)` for `n ≥ 6k`.
    #[serde(rename = "D4")]
    D4,
    /// `d_{ℓ+1} ≤ C(n-2, k-2) + C(n-ℓ-1, k-ℓ)` for `4 ≤ ℓ ≤ k`, `n > 2ℓ²k`.
    #[serde(rename = "DLL")]
    Dll,
    /// `|F| ≤ |H_ℓ|` when `d_1(F) ≤ d_1(H_ℓ)`.
    #[serde(rename = "F87")]
    F87,
    /// Shifted t-intersecting: `d_{2k-t+1} ≤ C(n-t-1, k-t-1)`.
    #[serde(rename = "SHIFTED")]
    Shifted,
    /// Saturated, `τ_t ≥ t+2`: `d_{1+τ_t} < C(n-t-1, k-t-1)`.
    #[serde(rename = "PROP51")]
    Prop51,
    /// Intersecting with `τ = 2`: `d_{2k+1} < C(n-2, k-2)`.
    #[serde(rename = "PROP45")]
    Prop45,
}

impl BoundId {
    pub const ALL: [BoundId; 14] = [
        BoundId::Ekr,
        BoundId::Hm,
        BoundId::Cor12,
        BoundId::Hz,
        BoundId::D2,
        BoundId::D2k1,
        BoundId::D8k3,
        BoundId::Tint,
        BoundId::D4,
        BoundId::Dll,
        BoundId::F87,
        BoundId::Shifted,
        BoundId::Prop51,
        BoundId::Prop45,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundId::Ekr => "EKR",
            BoundId::Hm => "HM",
            BoundId::Cor12 => "COR12",
            BoundId::Hz => "HZ",
            BoundId::D2 => "D2",
            BoundId::D2k1 => "D2K1",
            BoundId::D8k3 => "D8K3",
            BoundId::Tint => "TINT",
            BoundId::D4 => "D4",
            BoundId::Dll => "DLL",
            BoundId::F87 => "F87",
            BoundId::Shifted => "SHIFTED",
            BoundId::Prop51 => "PROP51",
            BoundId::Prop45 => "PROP45",
        }
    }

    /// Whether the comparison is `<` rather than `≤`.
    pub fn strict(self) -> bool {
        matches!(self, BoundId::Prop51 | BoundId::Prop45)
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parameter(format!("unknown bound id {s:?}")))
    }
}

/// Parameters of a bound. `t`, `ell` and `i` are only read by the ids that need them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundParams {
    pub n: u32,
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
    /// The covering number `τ_t` for PROP51.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<u32>,
}

impl BoundParams {
    pub fn new(n: u32, k: u32) -> Self {
        BoundParams {
            n,
            k,
            ..Default::default()
        }
    }

    pub fn with_t(mut self, t: u32) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_ell(mut self, ell: u32) -> Self {
        self.ell = Some(ell);
        self
    }

    pub fn with_i(mut self, i: u32) -> Self {
        self.i = Some(i);
        self
    }
}

/// What a bound constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// `|F|`.
    Size,
    /// `d_i(F)`.
    Degree(usize),
}

/// The family class a bound speaks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyClass {
    /// Every t-intersecting family.
    TIntersecting,
    /// Intersecting families with empty common intersection.
    NonTrivial,
    /// Intersecting families with `d_1(F) ≤ cap`.
    MaxDegreeAtMost,
    /// Shifted t-intersecting families.
    Shifted,
    /// Saturated t-intersecting families with the given covering number.
    CoveringNumber,
}

/// The result of evaluating one bound at one parameter point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub id: BoundId,
    pub params: BoundParams,
    pub applicable: bool,
    /// Why the hypothesis fails, when it does.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub quantity: Quantity,
    pub class: FamilyClass,
    #[serde(serialize_with = "ser_big")]
    pub bound: BigUint,
    pub strict: bool,
    /// Extra hypothesis on the family, e.g. the `d_1` cap of F87.
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser_opt_big"
    )]
    pub cap: Option<BigUint>,
}

fn ser_opt_big<S: serde::Serializer>(
    v: &Option<BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

impl Evaluation {
    /// Whether `observed` respects the bound (`<` or `≤` per the id).
    pub fn holds(&self, observed: &BigUint) -> bool {
        if self.strict {
            observed < &self.bound
        } else {
            observed <= &self.bound
        }
    }
}

fn need(v: Option<u32>, id: BoundId, what: &str) -> Result<u32> {
    v.ok_or_else(|| Error::Parameter(format!("{id} needs --{what}")))
}

/// Evaluates a bound and its hypothesis at the given parameters.
pub fn evaluate(id: BoundId, params: BoundParams) -> Result<Evaluation> {
    let BoundParams { n, k, .. } = params;
    if n == 0 || k == 0 || k > n {
        return param(format!("need 1 ≤ k ≤ n, got n = {n}, k = {k}"));
    }
    let (n, k) = (i64::from(n), i64::from(k));
    let mut failures: Vec<String> = Vec::new();
    let mut require = |ok: bool, msg: String| {
        if !ok {
            failures.push(msg);
        }
    };
    let mut cap = None;
    let mut class = FamilyClass::TIntersecting;

    let (quantity, bound) = match id {
        BoundId::Ekr => {
            let t = i64::from(need(params.t, id, "t")?);
            if t == 0 || t > k {
                return param(format!("t = {t} outside 1..={k}"));
            }
            require(
                n >= (t + 1) * (k - t + 1),
                format!("needs n ≥ (t+1)(k-t+1) = {}", (t + 1) * (k - t + 1)),
            );
            (Quantity::Size, binom(n - t, k - t))
        }
        BoundId::Hm => {
            require(n > 2 * k, format!("needs n > 2k = {}", 2 * k));
            class = FamilyClass::NonTrivial;
            (
                Quantity::Size,
                binom(n - 1, k - 1) - binom(n - k - 1, k - 1) + BigUint::one(),
            )
        }
        BoundId::Cor12 => {
            require(n > 2 * k, format!("needs n > 2k = {}", 2 * k));
            class = FamilyClass::NonTrivial;
            (
                Quantity::Degree(1),
                binom(n - 1, k - 1) - binom(n - k - 1, k - 1),
            )
        }
        BoundId::Hz => {
            require(n > 2 * k, format!("needs n > 2k = {}", 2 * k));
            (Quantity::Degree(n as usize), binom(n - 2, k - 2))
        }
        BoundId::D2 => {
            require(n > 2 * k, format!("needs n > 2k = {}", 2 * k));
            (
                Quantity::Degree(2),
                binom(n - 2, k - 2) + binom(n - 3, k - 2),
            )
        }
        BoundId::D2k1 => {
            require(n >= 6 * k - 9, format!("needs n ≥ 6k-9 = {}", 6 * k - 9));
            require(
                n > 2 * k,
                format!("d_{} needs n ≥ {}", 2 * k + 1, 2 * k + 1),
            );
            (Quantity::Degree((2 * k + 1) as usize), binom(n - 2, k - 2))
        }
        BoundId::D8k3 => {
            let idx = ceil_div(8 * k, 3);
            require(n >= idx, format!("needs n ≥ ⌈8k/3⌉ = {idx}"));
            require(n >= 2 * k, format!("needs n ≥ 2k = {}", 2 * k));
            (Quantity::Degree(idx as usize), binom(n - 2, k - 2))
        }
        BoundId::Tint => {
            let t = i64::from(need(params.t, id, "t")?);
            require(k > t && t >= 1, format!("needs k > t ≥ 1, got t = {t}"));
            let thr = binom(t + 2, 2) * BigUint::from((k * k) as u64);
            require(
                BigUint::from(n as u64) >= thr,
                format!("needs n ≥ C(t+2,2)k² = {thr}"),
            );
            require(n >= k + 2, format!("d_{} needs n ≥ {}", k + 2, k + 2));
            (
                Quantity::Degree((k + 2) as usize),
                binom(n - t - 1, k - t - 1),
            )
        }
        BoundId::D4 => {
            require(n >= 6 * k, format!("needs n ≥ 6k = {}", 6 * k));
            (
                Quantity::Degree(4),
                binom(n - 2, k - 2) + binom(n - 4, k - 3),
            )
        }
        BoundId::Dll => {
            let ell = i64::from(need(params.ell, id, "ell")?);
            require(
                (4..=k).contains(&ell),
                format!("needs 4 ≤ ℓ ≤ k, got ℓ = {ell}"),
            );
            require(
                n > 2 * ell * ell * k,
                format!("needs n > 2ℓ²k = {}", 2 * ell * ell * k),
            );
            (
                Quantity::Degree((ell + 1) as usize),
                binom(n - 2, k - 2) + binom(n - ell - 1, k - ell),
            )
        }
        BoundId::F87 => {
            let ell = i64::from(need(params.ell, id, "ell")?);
            require(n > 2 * k, format!("needs n > 2k = {}", 2 * k));
            require(
                (2..=k).contains(&ell),
                format!("needs 2 ≤ ℓ ≤ k, got ℓ = {ell}"),
            );
            class = FamilyClass::MaxDegreeAtMost;
            cap = Some(binom(n - 1, k - 1) - binom(n - ell - 1, k - 1));
            (
                Quantity::Size,
                binom(n - 1, k - 1) - binom(n - ell - 1, k - 1) + binom(n - ell - 1, k - ell),
            )
        }
        BoundId::Shifted => {
            let t = i64::from(need(params.t, id, "t")?);
            if t == 0 || t > k {
                return param(format!("t = {t} outside 1..={k}"));
            }
            require(
                n > (t + 1) * (k - t),
                format!("needs n > (t+1)(k-t) = {}", (t + 1) * (k - t)),
            );
            require(n > 2 * k - t, format!("needs n > 2k-t = {}", 2 * k - t));
            class = FamilyClass::Shifted;
            (
                Quantity::Degree((2 * k - t + 1) as usize),
                binom(n - t - 1, k - t - 1),
            )
        }
        BoundId::Prop51 => {
            let t = i64::from(need(params.t, id, "t")?);
            let tau = i64::from(need(params.i, id, "i")?);
            if t == 0 || t > k {
                return param(format!("t = {t} outside 1..={k}"));
            }
            let thr = binom(t + 2, 2) * BigUint::from((k * k) as u64);
            require(
                BigUint::from(n as u64) >= thr,
                format!("needs n ≥ C(t+2,2)k² = {thr}"),
            );
            require(tau >= t + 2, format!("needs τ_t ≥ t+2 = {}", t + 2));
            require(tau < n, format!("d_{} needs n ≥ {}", tau + 1, tau + 1));
            class = FamilyClass::CoveringNumber;
            (
                Quantity::Degree((tau + 1) as usize),
                binom(n - t - 1, k - t - 1),
            )
        }
        BoundId::Prop45 => {
            require(n > 2 * k, format!("needs n > 2k = {}", 2 * k));
            class = FamilyClass::CoveringNumber;
            (Quantity::Degree((2 * k + 1) as usize), binom(n - 2, k - 2))
        }
    };

    Ok(Evaluation {
        id,
        params,
        applicable: failures.is_empty(),
        reason: (!failures.is_empty()).then(|| failures.join("; ")),
        quantity,
        class,
        bound,
        strict: id.strict(),
        cap,
    })
}

/// The auxiliary inequalities checked by [`inequality_sweep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum InequalityId {
    /// `5C(n-4,k-3) ≤ 5(k-2)/(n-k-1)·C(n-4,k-2) ≤ C(n-4,k-2)` for `n ≥ 6k-9`.
    I41,
    /// `C(n-2,k-2) + 2C(n-3,k-2) = (3 - 2(k-2)/(n-2))C(n-2,k-2) ≤ 8/3·C(n-2,k-2)` for `2k < n ≤ 6k-10`.
    I47,
    /// `C(r,t)·k^{r-1-t}·C(n-r,k-r) < C(n-t-1,k-t-1)` for `r ≥ t+2`, `n ≥ C(t+2,2)k²`.
    I53,
    /// `d_4(L_3) > d_4(H_3)` for `2k < n < 3k-2`.
    LvsH4,
    /// `d_5(L_3) > d_5(H_4)` for `2k < n < 4k-4`.
    LvsH5,
}

impl InequalityId {
    pub const ALL: [InequalityId; 5] = [
        InequalityId::I41,
        InequalityId::I47,
        InequalityId::I53,
        InequalityId::LvsH4,
        InequalityId::LvsH5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InequalityId::I41 => "I41",
            InequalityId::I47 => "I47",
            InequalityId::I53 => "I53",
            InequalityId::LvsH4 => "LvsH4",
            InequalityId::LvsH5 => "LvsH5",
        }
    }

    /// The grid used when none is given.
    pub fn default_grid(self) -> &'static str {
        match self {
            InequalityId::I41 => "k=3..12,n=6k-9..6k+30",
            InequalityId::I47 => "k=3..12,n=2k+1..6k-10",
            InequalityId::I53 => {
                "t=1,r=3..5,k=2..8,n=3k*k..3k*k+40;\
                 t=2,r=4..6,k=3..8,n=6k*k..6k*k+40;\
                 t=3,r=5..7,k=4..8,n=10k*k..10k*k+40"
            }
            InequalityId::LvsH4 => "k=3..20,n=2k+1..3k-3",
            InequalityId::LvsH5 => "k=4..20,n=2k+1..4k-5",
        }
    }

    fn variables(self) -> &'static [char] {
        match self {
            InequalityId::I53 => &['t', 'r', 'k', 'n'],
            _ => &['k', 'n'],
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InequalityId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parameter(format!("unknown inequality id {s:?}")))
    }
}

/// One failing grid point, with both sides of the failing comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub point: std::collections::BTreeMap<String, i64>,
    pub step: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub id: InequalityId,
    pub grid: String,
    pub points_evaluated: usize,
    pub out_of_hypothesis: usize,
    pub violations: Vec<Violation>,
    pub pass: bool,
}

/// One comparison evaluated at a point.
struct Step {
    name: &'static str,
    lhs: BigRational,
    rhs: BigRational,
    rel: Rel,
}

#[derive(Clone, Copy)]
enum Rel {
    Eq,
    Le,
    Lt,
    Gt,
}

impl Step {
    fn new(name: &'static str, lhs: BigRational, rel: Rel, rhs: BigRational) -> Self {
        Step {
            name,
            lhs,
            rhs,
            rel,
        }
    }

    fn ok(&self) -> bool {
        match self.rel {
            Rel::Eq => self.lhs == self.rhs,
            Rel::Le => self.lhs <= self.rhs,
            Rel::Lt => self.lhs < self.rhs,
            Rel::Gt => self.lhs > self.rhs,
        }
    }
}

fn int(v: BigUint) -> BigRational {
    as_rational(&v)
}

fn small(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `Some(steps)` inside the hypothesis, `None` outside it.
fn inequality_steps(id: InequalityId, p: &Point) -> Option<Vec<Step>> {
    let g = |c: char| p[&c];
    match id {
        InequalityId::I41 => {
            let (k, n) = (g('k'), g('n'));
            if k < 3 || n < 6 * k - 9 || n < 2 * k {
                return None;
            }
            let base = int(binom(n - 4, k - 2));
            let lhs = small(5) * int(binom(n - 4, k - 3));
            let mid = ratio(BigInt::from(5 * (k - 2)), BigInt::from(n - k - 1)) * &base;
            Some(vec![
                Step::new(
                    "5C(n-4,k-3) <= 5(k-2)/(n-k-1)C(n-4,k-2)",
                    lhs,
                    Rel::Le,
                    mid.clone(),
                ),
                Step::new("5(k-2)/(n-k-1)C(n-4,k-2) <= C(n-4,k-2)", mid, Rel::Le, base),
            ])
        }
        InequalityId::I47 => {
            let (k, n) = (g('k'), g('n'));
            if k < 2 || n <= 2 * k || n > 6 * k - 10 {
                return None;
            }
            let base = int(binom(n - 2, k - 2));
            let lhs = int(binom(n - 2, k - 2) + BigUint::from(2u8) * binom(n - 3, k - 2));
            let mid = (small(3) - ratio(BigInt::from(2 * (k - 2)), BigInt::from(n - 2))) * &base;
            let rhs = ratio(BigInt::from(8), BigInt::from(3)) * &base;
            Some(vec![
                Step::new(
                    "C(n-2,k-2)+2C(n-3,k-2) = (3-2(k-2)/(n-2))C(n-2,k-2)",
                    lhs,
                    Rel::Eq,
                    mid.clone(),
                ),
                Step::new(
                    "(3-2(k-2)/(n-2))C(n-2,k-2) <= 8/3 C(n-2,k-2)",
                    mid,
                    Rel::Le,
                    rhs,
                ),
            ])
        }
        InequalityId::I53 => {
            let (t, r, k, n) = (g('t'), g('r'), g('k'), g('n'));
            if t < 1 || k <= t || r < t + 2 {
                return None;
            }
            let thr = binom(t + 2, 2) * BigUint::from((k * k) as u64);
            if n < 0 || BigUint::from(n as u64) < thr {
                return None;
            }
            let lhs =
                binom(r, t) * BigUint::from(k as u64).pow((r - 1 - t) as u32) * binom(n - r, k - r);
            let rhs = binom(n - t - 1, k - t - 1);
            Some(vec![Step::new(
                "C(r,t)k^(r-1-t)C(n-r,k-r) < C(n-t-1,k-t-1)",
                int(lhs),
                Rel::Lt,
                int(rhs),
            )])
        }
        InequalityId::LvsH4 => {
            let (k, n) = (g('k'), g('n'));
            if k < 3 || n <= 2 * k || n >= 3 * k - 2 {
                return None;
            }
            let c = |a: i64, b: i64| binom_int(a, b);
            let l3 = crate::constructions::majority_degree(n, k, 3);
            let h3 = crate::constructions::window_degree(n, k, 3);
            let expansion =
                c(n - 5, k - 2) + 4 * c(n - 5, k - 3) + 4 * c(n - 5, k - 4) + c(n - 5, k - 5);
            let diff = BigInt::from(l3.clone()) - BigInt::from(h3.clone());
            let closed = 2 * c(n - 5, k - 3) - c(n - 5, k - 2);
            let factored = (ratio(BigInt::from(2 * (k - 2)), BigInt::from(n - k - 2)) - small(1))
                * BigRational::from_integer(c(n - 5, k - 2));
            Some(vec![
                Step::new(
                    "d4(H3) = expansion in C(n-5,.)",
                    int(h3),
                    Rel::Eq,
                    BigRational::from_integer(expansion),
                ),
                Step::new(
                    "d4(L3)-d4(H3) = 2C(n-5,k-3)-C(n-5,k-2)",
                    BigRational::from_integer(diff.clone()),
                    Rel::Eq,
                    BigRational::from_integer(closed),
                ),
                Step::new(
                    "d4(L3)-d4(H3) = (2(k-2)/(n-k-2)-1)C(n-5,k-2)",
                    BigRational::from_integer(diff.clone()),
                    Rel::Eq,
                    factored,
                ),
                Step::new(
                    "d4(L3) > d4(H3)",
                    BigRational::from_integer(diff),
                    Rel::Gt,
                    small(0),
                ),
            ])
        }
        InequalityId::LvsH5 => {
            let (k, n) = (g('k'), g('n'));
            if k < 4 || n <= 2 * k || n >= 4 * k - 4 {
                return None;
            }
            let c = |a: i64, b: i64| binom_int(a, b);
            let l3 = crate::constructions::majority_degree(n, k, 3);
            let h4 = crate::constructions::window_degree(n, k, 4);
            let expansion =
                c(n - 5, k - 2) + 3 * c(n - 5, k - 3) + 4 * c(n - 5, k - 4) + c(n - 5, k - 5);
            let diff = BigInt::from(l3.clone()) - BigInt::from(h4.clone());
            let closed = 3 * c(n - 5, k - 3) - c(n - 5, k - 2);
            let factored = (ratio(BigInt::from(3 * (k - 2)), BigInt::from(n - k - 2)) - small(1))
                * BigRational::from_integer(c(n - 5, k - 2));
            Some(vec![
                Step::new(
                    "d5(H4) = expansion in C(n-5,.)",
                    int(h4),
                    Rel::Eq,
                    BigRational::from_integer(expansion),
                ),
                Step::new(
                    "d5(L3)-d5(H4) = 3C(n-5,k-3)-C(n-5,k-2)",
                    BigRational::from_integer(diff.clone()),
                    Rel::Eq,
                    BigRational::from_integer(closed),
                ),
                Step::new(
                    "d5(L3)-d5(H4) = (3(k-2)/(n-k-2)-1)C(n-5,k-2)",
                    BigRational::from_integer(diff.clone()),
                    Rel::Eq,
                    factored,
                ),
                Step::new(
                    "d5(L3) > d5(H4)",
                    BigRational::from_integer(diff),
                    Rel::Gt,
                    small(0),
                ),
            ])
        }
    }
}

/// Evaluates an inequality at every grid point, in exact arithmetic.
///
/// Points outside the inequality's hypothesis are counted, not judged.
pub fn inequality_sweep(id: InequalityId, grid: &Grid) -> Result<SweepReport> {
    let mut report = SweepReport {
        id,
        grid: grid.spec().to_owned(),
        points_evaluated: 0,
        out_of_hypothesis: 0,
        violations: Vec::new(),
        pass: true,
    };
    for point in grid.points() {
        if let Some(missing) = id.variables().iter().find(|c| !point.contains_key(c)) {
            return param(format!("{id} needs grid variable {missing}"));
        }
        report.points_evaluated += 1;
        let Some(steps) = inequality_steps(id, point) else {
            report.out_of_hypothesis += 1;
            continue;
        };
        for step in steps.iter().filter(|s| !s.ok()) {
            report.violations.push(Violation {
                point: point.iter().map(|(c, v)| (c.to_string(), *v)).collect(),
                step: step.name.to_owned(),
                lhs: show_rational(&step.lhs),
                rhs: show_rational(&step.rhs),
            });
        }
    }
    report.pass = report.violations.is_empty();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_values() {
        assert_eq!(binom(5, 2), BigUint::from(10u8));
        assert_eq!(binom(4, 7), BigUint::zero());
        assert_eq!(binom(0, 0), BigUint::one());
        assert_eq!(binom(-3, 1), BigUint::zero());
        assert_eq!(binom(6, -1), BigUint::zero());
        assert_eq!(binom(80, 40).to_string(), "107507208733336176461620");
    }

    #[test]
    fn pascal_identity_on_full_grid() {
        for n in 1..=80i64 {
            for k in 0..=n {
                assert_eq!(
                    binom(n, k),
                    binom(n - 1, k - 1) + binom(n - 1, k),
                    "C({n},{k})"
                );
            }
        }
    }

    #[test]
    fn ceil_div_exact() {
        assert_eq!(ceil_div(8 * 3, 3), 8);
        assert_eq!(ceil_div(8 * 4, 3), 11);
        assert_eq!(ceil_div(8 * 5, 3), 14);
    }

    #[test]
    fn evaluate_examples() {
        let e = evaluate(BoundId::D2, BoundParams::new(7, 3)).unwrap();
        assert!(e.applicable);
        assert_eq!(e.bound, BigUint::from(9u8));
        assert_eq!(e.quantity, Quantity::Degree(2));

        let e = evaluate(BoundId::D2k1, BoundParams::new(8, 3)).unwrap();
        assert!(!e.applicable);

        let e = evaluate(BoundId::Hz, BoundParams::new(7, 3)).unwrap();
        assert!(e.applicable);
        assert_eq!(e.bound, BigUint::from(5u8));
        assert_eq!(e.quantity, Quantity::Degree(7));

        assert!(
            !evaluate(BoundId::Hz, BoundParams::new(6, 3))
                .unwrap()
                .applicable
        );
        assert!(
            !evaluate(BoundId::D4, BoundParams::new(7, 3))
                .unwrap()
                .applicable
        );
        assert!(
            evaluate(BoundId::D4, BoundParams::new(18, 3))
                .unwrap()
                .applicable
        );
    }

    #[test]
    fn missing_params_are_errors() {
        for id in [
            BoundId::Ekr,
            BoundId::Tint,
            BoundId::Dll,
            BoundId::F87,
            BoundId::Shifted,
            BoundId::Prop51,
        ] {
            assert!(
                matches!(
                    evaluate(id, BoundParams::new(9, 3)),
                    Err(Error::Parameter(_))
                ),
                "{id}"
            );
        }
    }

    #[test]
    fn strictness_table() {
        for id in BoundId::ALL {
            assert_eq!(id.strict(), matches!(id, BoundId::Prop45 | BoundId::Prop51));
        }
        let e = evaluate(BoundId::Prop45, BoundParams::new(7, 3)).unwrap();
        assert!(!e.holds(&BigUint::from(5u8)));
        assert!(e.holds(&BigUint::from(4u8)));
    }

    #[test]
    fn hypothesis_edges() {
        // D8K3 at k = 3 indexes d_8 and needs n ≥ 8.
        let e = evaluate(BoundId::D8k3, BoundParams::new(8, 3)).unwrap();
        assert!(e.applicable);
        assert_eq!(e.quantity, Quantity::Degree(8));
        assert_eq!(e.bound, BigUint::from(6u8));
        assert!(
            !evaluate(BoundId::D8k3, BoundParams::new(7, 3))
                .unwrap()
                .applicable
        );
        // DLL: n > 2ℓ²k is strict.
        assert!(
            !evaluate(BoundId::Dll, BoundParams::new(128, 4).with_ell(4))
                .unwrap()
                .applicable
        );
        assert!(
            evaluate(BoundId::Dll, BoundParams::new(129, 4).with_ell(4))
                .unwrap()
                .applicable
        );
        // TINT at t = 1, k = 3: n ≥ 27.
        assert!(
            !evaluate(BoundId::Tint, BoundParams::new(26, 3).with_t(1))
                .unwrap()
                .applicable
        );
        assert!(
            evaluate(BoundId::Tint, BoundParams::new(27, 3).with_t(1))
                .unwrap()
                .applicable
        );
        // EKR at the exact threshold.
        let e = evaluate(BoundId::Ekr, BoundParams::new(6, 3).with_t(1)).unwrap();
        assert!(e.applicable);
        assert_eq!(e.bound, BigUint::from(10u8));
        assert!(
            !evaluate(BoundId::Ekr, BoundParams::new(5, 3).with_t(1))
                .unwrap()
                .applicable
        );
    }

    #[test]
    fn id_round_trip() {
        for id in BoundId::ALL {
            assert_eq!(id.name().parse::<BoundId>().unwrap(), id);
        }
        for id in InequalityId::ALL {
            assert_eq!(id.name().parse::<InequalityId>().unwrap(), id);
        }
        assert!("nope".parse::<BoundId>().is_err());
    }

    #[test]
    fn sweep_examples() {
        let g = Grid::parse("k=3..12,n=6k-9..6k+30").unwrap();
        let r = inequality_sweep(InequalityId::I41, &g).unwrap();
        assert!(r.pass, "{:?}", r.violations);
        assert_eq!(r.out_of_hypothesis, 0);
        assert_eq!(r.points_evaluated, 400);

        let g = Grid::parse("k=10,n=27").unwrap();
        let r = inequality_sweep(InequalityId::LvsH4, &g).unwrap();
        assert!(r.pass && r.out_of_hypothesis == 0);

        let g = Grid::parse("t=1,r=3,k=3,n=27").unwrap();
        let r = inequality_sweep(InequalityId::I53, &g).unwrap();
        assert!(r.pass && r.out_of_hypothesis == 0);

        // Outside the hypothesis nothing is judged.
        let g = Grid::parse("k=10,n=28").unwrap();
        let r = inequality_sweep(InequalityId::LvsH4, &g).unwrap();
        assert_eq!((r.out_of_hypothesis, r.violations.len()), (1, 0));

        let g = Grid::parse("k=3..4").unwrap();
        assert!(inequality_sweep(InequalityId::I41, &g).is_err());
    }

    #[test]
    fn crossover_fails_past_threshold() {
        // At n = 3k-2 the L_3 advantage is gone; the raw difference is ≤ 0.
        for k in 4..15i64 {
            let n = 3 * k - 2;
            let l3 = crate::constructions::majority_degree(n, k, 3);
            let h3 = crate::constructions::window_degree(n, k, 3);
            assert!(l3 <= h3, "k={k}");
        }
    }
}
