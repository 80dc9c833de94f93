//! Classification of the Einstein metrics as critical points of `S` on a
//! volume level set.
//!
//! Two independent routes are provided:
//!
//! - the bordered Hessian of `S − cV`, expanded directly as a 3×3 determinant
//!   whose entries are affine in the multiplier `c`; with two variables and one
//!   constraint, `|H| > 0` marks a local maximum and `|H| < 0` a local minimum;
//! - the second derivative of `S` along the volume level curve through the
//!   point, which uses only partials of `S` and no multiplier at all.
//!
//! The closed forms for `|H|` at the two Einstein metrics are kept separately
//! as claims to be checked against the determinant.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::einstein::{CurvatureModel, InvariantMetric};
use crate::flagspace::TwoSummandSpace;
use crate::{int, rat, Error, Rational, Result};

/// `constant + slope·c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffinePoly {
    #[serde(with = "crate::cli::rational_str")]
    pub constant: Rational,
    #[serde(with = "crate::cli::rational_str")]
    pub slope: Rational,
}

impl AffinePoly {
    pub fn new(constant: Rational, slope: Rational) -> Self {
        Self { constant, slope }
    }

    pub fn constant(value: Rational) -> Self {
        Self::new(value, Rational::zero())
    }

    pub fn eval(&self, c: &Rational) -> Rational {
        &self.constant + &self.slope * c
    }

    /// `a0 + a1·c` with both coefficients written out.
    pub fn expanded(&self) -> String {
        let sign = if self.slope.is_negative() { "-" } else { "+" };
        format!("{} {sign} {}·c", self.constant, self.slope.abs())
    }
}

impl Add for &AffinePoly {
    type Output = AffinePoly;
    fn add(self, rhs: &AffinePoly) -> AffinePoly {
        AffinePoly::new(&self.constant + &rhs.constant, &self.slope + &rhs.slope)
    }
}

impl Sub for &AffinePoly {
    type Output = AffinePoly;
    fn sub(self, rhs: &AffinePoly) -> AffinePoly {
        AffinePoly::new(&self.constant - &rhs.constant, &self.slope - &rhs.slope)
    }
}

impl Neg for &AffinePoly {
    type Output = AffinePoly;
    fn neg(self) -> AffinePoly {
        AffinePoly::new(-&self.constant, -&self.slope)
    }
}

impl Mul<&Rational> for &AffinePoly {
    type Output = AffinePoly;
    fn mul(self, k: &Rational) -> AffinePoly {
        AffinePoly::new(&self.constant * k, &self.slope * k)
    }
}

impl fmt::Display for AffinePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slope.is_zero() {
            return write!(f, "{}", self.constant);
        }
        if !self.constant.is_zero() && (&self.slope / &self.constant).is_integer() {
            // factored form a0·(1 + k·c)
            let k = &self.slope / &self.constant;
            let sign = if k.is_negative() { "-" } else { "+" };
            return write!(f, "{}·(1 {sign} {}c)", self.constant, k.abs());
        }
        f.write_str(&self.expanded())
    }
}

/// Polynomial in `c` with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
struct Poly(Vec<BigInt>);

impl Poly {
    fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    fn add_signed(&mut self, other: &Poly, negate: bool) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), BigInt::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if negate {
                *a -= b;
            } else {
                *a += b;
            }
        }
    }
}

/// Leibniz expansion of a 3×3 determinant with affine entries.
///
/// Each row is first multiplied by the lcm of its denominators so the
/// expansion runs over integers; the scale is divided out once at the end.
fn det3(m: &[[AffinePoly; 3]; 3]) -> AffinePoly {
    let mut rows: Vec<[Poly; 3]> = Vec::with_capacity(3);
    let mut scale = BigInt::one();
    for row in m {
        let lcm = row
            .iter()
            .flat_map(|e| [e.constant.denom(), e.slope.denom()])
            .fold(BigInt::one(), |acc, d| acc.lcm(d));
        let lift = |q: &Rational| q.numer() * (&lcm / q.denom());
        rows.push([0, 1, 2].map(|j| Poly(vec![lift(&row[j].constant), lift(&row[j].slope)])));
        scale *= lcm;
    }
    let mut acc = Poly(vec![BigInt::zero()]);
    for (perm, negate) in [
        ([0, 1, 2], false),
        ([1, 2, 0], false),
        ([2, 0, 1], false),
        ([0, 2, 1], true),
        ([2, 1, 0], true),
        ([1, 0, 2], true),
    ] {
        let term = rows[0][perm[0]]
            .mul(&rows[1][perm[1]])
            .mul(&rows[2][perm[2]]);
        acc.add_signed(&term, negate);
    }
    let mut coeffs = acc.0.into_iter().map(|a| Rational::new(a, scale.clone()));
    let constant = coeffs.next().unwrap_or_else(Rational::zero);
    let slope = coeffs.next().unwrap_or_else(Rational::zero);
    assert!(
        coeffs.all(|x| x.is_zero()),
        "bordered determinant must be affine in c"
    );
    AffinePoly::new(constant, slope)
}

/// Which of the two Einstein metrics a point lies on (by its ray).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MetricKind {
    Kaehler,
    NonKaehler,
}

impl MetricKind {
    pub fn of(g: &InvariantMetric) -> Self {
        if g.ratio() == int(2) {
            MetricKind::Kaehler
        } else {
            MetricKind::NonKaehler
        }
    }
}

/// Sign rule for the bordered determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BorderedVerdict {
    LocalMin,
    LocalMax,
    Saddle,
}

impl BorderedVerdict {
    pub fn from_determinant(h: &Rational) -> Self {
        if h.is_positive() {
            BorderedVerdict::LocalMax
        } else if h.is_negative() {
            BorderedVerdict::LocalMin
        } else {
            BorderedVerdict::Saddle
        }
    }
}

/// Sign of the constrained second derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OracleVerdict {
    LocalMin,
    LocalMax,
    Degenerate,
}

impl OracleVerdict {
    pub fn from_second_derivative(d2: &Rational) -> Self {
        if d2.is_positive() {
            OracleVerdict::LocalMin
        } else if d2.is_negative() {
            OracleVerdict::LocalMax
        } else {
            OracleVerdict::Degenerate
        }
    }
}

/// One Einstein metric classified by both routes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalPointReport {
    pub metric: InvariantMetric,
    pub kind: MetricKind,
    #[serde(with = "crate::cli::rational_str")]
    pub scalar_curvature: Rational,
    #[serde(with = "crate::cli::rational_str")]
    pub volume: Rational,
    #[serde(with = "crate::cli::rational_str")]
    pub multiplier_c: Rational,
    pub hessian_poly: AffinePoly,
    #[serde(with = "crate::cli::rational_str")]
    pub hessian_value: Rational,
    pub bordered_verdict: BorderedVerdict,
    #[serde(with = "crate::cli::rational_str")]
    pub oracle_d2: Rational,
    pub oracle_verdict: OracleVerdict,
}

impl CriticalPointReport {
    /// Both routes agree, or one of them is inconclusive.
    pub fn verdicts_agree(&self) -> bool {
        matches!(
            (self.bordered_verdict, self.oracle_verdict),
            (BorderedVerdict::LocalMin, OracleVerdict::LocalMin)
                | (BorderedVerdict::LocalMax, OracleVerdict::LocalMax)
                | (BorderedVerdict::Saddle, _)
                | (_, OracleVerdict::Degenerate)
        )
    }
}

fn require_critical(model: &CurvatureModel, g: &InvariantMetric) -> Result<()> {
    let residual = model.einstein_polynomial(g.x1(), g.x2());
    if residual.is_zero() {
        Ok(())
    } else {
        Err(Error::NotCritical(format!(
            "Einstein polynomial at ({}, {}) is {residual}",
            g.x1(),
            g.x2()
        )))
    }
}

/// `c` in `∇S = c∇V`, equal to `−S/(nV)` by Euler homogeneity.
pub fn lagrange_multiplier(model: &CurvatureModel, g: &InvariantMetric) -> Result<Rational> {
    require_critical(model, g)?;
    Ok(multiplier_at(
        model,
        &model.scalar_curvature(g),
        &model.volume(g),
    ))
}

fn multiplier_at(model: &CurvatureModel, s: &Rational, v: &Rational) -> Rational {
    -s / (int(model.dim() as i64) * v)
}

/// `|H|` at `g` as an affine polynomial in `c`.
pub fn bordered_hessian_poly(model: &CurvatureModel, g: &InvariantMetric) -> AffinePoly {
    bordered_hessian_at(model, g, &model.volume(g))
}

fn bordered_hessian_at(model: &CurvatureModel, g: &InvariantMetric, v: &Rational) -> AffinePoly {
    let p = model.partials(g);
    let (v1, v2) = model.volume_gradient_at(v, g);
    let (v11, v12, v22) = model.volume_hessian_at(v, g);
    let entry = |s: Rational, v: Rational| AffinePoly::new(s, -v);
    let b1 = AffinePoly::constant(-v1);
    let b2 = AffinePoly::constant(-v2);
    let h11 = entry(p.s11, v11);
    let h12 = entry(p.s12, v12);
    let h22 = entry(p.s22, v22);
    det3(&[
        [
            AffinePoly::constant(Rational::zero()),
            b1.clone(),
            b2.clone(),
        ],
        [b1, h11, h12.clone()],
        [b2, h12, h22],
    ])
}

/// Closed form of `|H|` at the Kähler metric `(1, 2)`:
/// `−(d1+d2)d1d2·2^{2d2−2}·(d2/(d1+4d2) + c·2^{d2})`.
pub fn kaehler_determinant_closed_form(d1: u64, d2: u64) -> AffinePoly {
    let (q1, q2) = (int(d1 as i64), int(d2 as i64));
    let two = int(2);
    let scale = -(&q1 + &q2) * &q1 * &q2 * two.pow(2 * d2 as i32 - 2);
    let inner = AffinePoly::new(rat(d2 as i64, (d1 + 4 * d2) as i64), two.pow(d2 as i32));
    &inner * &scale
}

/// Closed form of `|H|` at `(1, x)` with `x = 4d2/(d1+2d2)`:
/// `−d1·x^{2d2−2}·[(d1³d2 + 5d1²d2² + 6d1d2³ + 2d2⁴)/((d1+2d2)(d1+4d2)) + c·d2·x^{d2}(d1+d2)]`.
pub fn non_kaehler_determinant_closed_form(d1: u64, d2: u64) -> AffinePoly {
    let (q1, q2) = (int(d1 as i64), int(d2 as i64));
    let x = rat(4 * d2 as i64, (d1 + 2 * d2) as i64);
    let scale = -&q1 * x.pow(2 * d2 as i32 - 2);
    let num = q1.pow(3) * &q2
        + int(5) * q1.pow(2) * q2.pow(2)
        + int(6) * &q1 * q2.pow(3)
        + int(2) * q2.pow(4);
    let den = int(((d1 + 2 * d2) * (d1 + 4 * d2)) as i64);
    let inner = AffinePoly::new(num / den, &q2 * x.pow(d2 as i32) * (&q1 + &q2));
    &inner * &scale
}

/// Second derivative of `S` along the curve `V = V(g)` through `g`,
/// parametrized by `x1`.
///
/// On the curve `x2′ = −r·x2/x1` and `x2″ = r(r+1)·x2/x1²` with `r = d1/d2`.
pub fn constrained_second_derivative(
    model: &CurvatureModel,
    g: &InvariantMetric,
) -> Result<Rational> {
    let p = model.partials(g);
    let r = rat(model.d1 as i64, model.d2 as i64);
    let (x1, x2) = (g.x1(), g.x2());
    let dx2 = -&r * x2 / x1;
    let ddx2 = &r * (&r + Rational::one()) * x2 / (x1 * x1);
    let first = &p.s1 + &p.s2 * &dx2;
    if !first.is_zero() {
        return Err(Error::NotCritical(format!(
            "derivative along the volume level set is {first}"
        )));
    }
    Ok(&p.s11 + int(2) * &p.s12 * &dx2 + &p.s22 * &dx2 * &dx2 + &p.s2 * &ddx2)
}

/// First derivative of `S` along the volume level curve; zero at critical points.
pub fn constrained_first_derivative(model: &CurvatureModel, g: &InvariantMetric) -> Rational {
    let p = model.partials(g);
    let r = rat(model.d1 as i64, model.d2 as i64);
    let dx2 = -r * g.x2() / g.x1();
    p.s1 + p.s2 * dx2
}

/// Classify `g` using the derived multiplier `c = −S/(nV)`.
pub fn classify(ts: &TwoSummandSpace, g: &InvariantMetric) -> Result<CriticalPointReport> {
    classify_model(&CurvatureModel::for_space(ts), g)
}

pub fn classify_model(model: &CurvatureModel, g: &InvariantMetric) -> Result<CriticalPointReport> {
    classify_at(model, g, None)
}

/// Classify `g` evaluating `|H|` at a caller-supplied multiplier.
pub fn classify_with_multiplier(
    model: &CurvatureModel,
    g: &InvariantMetric,
    c: Rational,
) -> Result<CriticalPointReport> {
    classify_at(model, g, Some(c))
}

fn classify_at(
    model: &CurvatureModel,
    g: &InvariantMetric,
    c: Option<Rational>,
) -> Result<CriticalPointReport> {
    require_critical(model, g)?;
    let oracle_d2 = constrained_second_derivative(model, g)?;
    let scalar_curvature = model.scalar_curvature(g);
    let volume = model.volume(g);
    let c = c.unwrap_or_else(|| multiplier_at(model, &scalar_curvature, &volume));
    let hessian_poly = bordered_hessian_at(model, g, &volume);
    let hessian_value = hessian_poly.eval(&c);
    Ok(CriticalPointReport {
        metric: g.clone(),
        kind: MetricKind::of(g),
        scalar_curvature,
        volume,
        multiplier_c: c,
        bordered_verdict: BorderedVerdict::from_determinant(&hessian_value),
        hessian_poly,
        hessian_value,
        oracle_verdict: OracleVerdict::from_second_derivative(&oracle_d2),
        oracle_d2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e6() -> CurvatureModel {
        CurvatureModel::new(40, 10, int(5))
    }

    fn m(x1: Rational, x2: Rational) -> InvariantMetric {
        InvariantMetric::new(x1, x2).unwrap()
    }

    #[test]
    fn multipliers() {
        assert_eq!(
            lagrange_multiplier(&e6(), &m(int(1), int(2))).unwrap(),
            rat(-3, 8192)
        );
        assert_eq!(
            lagrange_multiplier(&e6(), &m(int(1), rat(2, 3))).unwrap(),
            rat(-216513, 8192)
        );
        assert!(matches!(
            lagrange_multiplier(&e6(), &m(int(1), int(1))),
            Err(Error::NotCritical(_))
        ));
    }

    #[test]
    fn multiplier_solves_both_lagrange_equations() {
        let model = e6();
        for g in [m(int(1), int(2)), m(int(1), rat(2, 3))] {
            let c = lagrange_multiplier(&model, &g).unwrap();
            let (r1, r2) = model.lagrange_residuals(&g, &c);
            assert!(r1.is_zero() && r2.is_zero());
        }
        // first equation solved for c at (1,2)
        let first = (int(5) * int(2) / int(2) - int(40) / int(2)) / (int(40) * int(2).pow(10));
        assert_eq!(first, rat(-15, 40960));
        assert_eq!(first, rat(-3, 8192));
    }

    #[test]
    fn multiplier_scaling() {
        let model = e6();
        let g = m(int(1), int(2));
        let s = rat(3, 2);
        let c = lagrange_multiplier(&model, &g).unwrap();
        let cs = lagrange_multiplier(&model, &g.scaled(&s).unwrap()).unwrap();
        assert_eq!(cs, c / s.pow(51));
    }

    #[test]
    fn determinant_at_e6_points() {
        let k = bordered_hessian_poly(&e6(), &m(int(1), int(2)));
        assert_eq!(k, AffinePoly::new(int(-655360000), int(-5368709120000)));
        assert_eq!(k.to_string(), "-655360000·(1 + 8192c)");
        let nk = bordered_hessian_poly(&e6(), &m(int(1), rat(2, 3)));
        assert_eq!(
            nk.constant,
            Rational::new((-11141120000i64).into(), 1162261467.into())
        );
        assert_eq!(
            nk.slope,
            Rational::new((-5368709120000i64).into(), 22876792454961i64.into())
        );
        assert_eq!(nk.slope, int(-20000) * rat(2, 3).pow(28));
    }

    #[test]
    fn closed_forms_at_e6() {
        assert_eq!(
            kaehler_determinant_closed_form(40, 10),
            AffinePoly::new(int(-655360000), int(-5368709120000))
        );
        assert_eq!(
            non_kaehler_determinant_closed_form(40, 10).constant,
            Rational::new((-11141120000i64).into(), 1162261467.into())
        );
    }

    #[test]
    fn closed_forms_match_determinant() {
        for (d1, d2) in [(8, 2), (16, 14), (112, 2)] {
            let model = CurvatureModel::from_dims(d1, d2);
            let sols = model.einstein_metrics();
            assert_eq!(
                bordered_hessian_poly(&model, &sols.kaehler),
                kaehler_determinant_closed_form(d1, d2)
            );
            assert_eq!(
                bordered_hessian_poly(&model, &sols.non_kaehler),
                non_kaehler_determinant_closed_form(d1, d2)
            );
        }
    }

    #[test]
    fn second_derivative_oracle() {
        assert_eq!(
            constrained_second_derivative(&e6(), &m(int(1), int(2))).unwrap(),
            int(-50)
        );
        assert_eq!(
            constrained_second_derivative(&e6(), &m(int(1), rat(2, 3))).unwrap(),
            int(50)
        );
        let p = e6().partials(&m(int(1), int(2)));
        assert_eq!(
            (p.s11, p.s12, p.s22, p.s2.clone()),
            (int(25), rat(5, 2), rat(5, 8), rat(-15, 8))
        );
        assert_eq!(p.s1, int(-15));
        assert!(matches!(
            constrained_second_derivative(&e6(), &m(int(1), int(1))),
            Err(Error::NotCritical(_))
        ));
    }

    #[test]
    fn classification_e6() {
        let k = classify_model(&e6(), &m(int(1), int(2))).unwrap();
        assert_eq!(k.kind, MetricKind::Kaehler);
        assert_eq!(k.hessian_value, int(1310720000));
        assert_eq!(k.bordered_verdict, BorderedVerdict::LocalMax);
        assert_eq!(k.oracle_d2, int(-50));
        assert_eq!(k.oracle_verdict, OracleVerdict::LocalMax);

        let nk = classify_model(&e6(), &m(int(1), rat(2, 3))).unwrap();
        assert_eq!(nk.kind, MetricKind::NonKaehler);
        assert_eq!(nk.oracle_verdict, OracleVerdict::LocalMin);
        assert_eq!(nk.bordered_verdict, BorderedVerdict::LocalMin);
        let approx = crate::einstein::to_f64(&nk.hessian_value);
        assert!((approx + 3.38).abs() < 0.01, "{approx}");
        assert!(k.verdicts_agree() && nk.verdicts_agree());
    }

    #[test]
    fn zero_determinant_is_saddle() {
        assert_eq!(
            BorderedVerdict::from_determinant(&Rational::zero()),
            BorderedVerdict::Saddle
        );
        // the multiplier that zeroes |H| at the Kähler point
        let c = rat(-1, 8192);
        let r = classify_with_multiplier(&e6(), &m(int(1), int(2)), c).unwrap();
        assert!(r.hessian_value.is_zero());
        assert_eq!(r.bordered_verdict, BorderedVerdict::Saddle);
    }

    #[test]
    fn positive_multiplier_reproduces_conditional_claim() {
        // with c > 0 both determinants are negative
        let c = rat(1, 100);
        for g in [m(int(1), int(2)), m(int(1), rat(2, 3))] {
            let r = classify_with_multiplier(&e6(), &g, c.clone()).unwrap();
            assert_eq!(r.bordered_verdict, BorderedVerdict::LocalMin);
        }
    }
}
