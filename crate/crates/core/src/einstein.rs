//! Scalar curvature and invariant Einstein metrics.
//!
//! A diagonal invariant metric is `x1(−B)|m1 + x2(−B)|m2`. Its scalar
//! curvature is
//!
//! ```text
//! S = (d1/x1 + d2/x2)/2 − (t·x2/x1² + 2t/x2)/4,   t = [112],
//! ```
//!
//! and the volume is `V = x1^d1 · x2^d2`. Einstein metrics are the critical
//! points of `S` on `V = const`; up to scale there are two, the Kähler metric
//! `(1, 2)` and `(1, 4d2/(d1 + 2d2))`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::flagspace::TwoSummandSpace;
use crate::{int, rat, Error, Rational, Result};

/// `x1(−B)|m1 + x2(−B)|m2` with `x1, x2 > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantMetric {
    #[serde(with = "crate::cli::rational_str")]
    x1: Rational,
    #[serde(with = "crate::cli::rational_str")]
    x2: Rational,
}

impl InvariantMetric {
    pub fn new(x1: Rational, x2: Rational) -> Result<Self> {
        if !x1.is_positive() || !x2.is_positive() {
            return Err(Error::NonPositiveMetric {
                x1: x1.to_string(),
                x2: x2.to_string(),
            });
        }
        Ok(Self { x1, x2 })
    }

    pub fn x1(&self) -> &Rational {
        &self.x1
    }

    pub fn x2(&self) -> &Rational {
        &self.x2
    }

    /// `(s·x1, s·x2)`.
    pub fn scaled(&self, s: &Rational) -> Result<Self> {
        Self::new(&self.x1 * s, &self.x2 * s)
    }

    /// `x2/x1`, the ray invariant.
    pub fn ratio(&self) -> Rational {
        &self.x2 / &self.x1
    }
}

/// The data `(d1, d2, t)` that determine `S` on the two-parameter family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureModel {
    pub d1: u64,
    pub d2: u64,
    pub t: Rational,
}

/// First and second partial derivatives of `S` at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partials {
    pub s1: Rational,
    pub s2: Rational,
    pub s11: Rational,
    pub s12: Rational,
    pub s22: Rational,
}

impl CurvatureModel {
    pub fn new(d1: u64, d2: u64, t: Rational) -> Self {
        Self { d1, d2, t }
    }

    /// Model with `t` from the closed form.
    pub fn from_dims(d1: u64, d2: u64) -> Self {
        Self::new(d1, d2, t_closed_form(d1, d2))
    }

    pub fn for_space(ts: &TwoSummandSpace) -> Self {
        Self::from_dims(ts.d1(), ts.d2())
    }

    pub fn dim(&self) -> u64 {
        self.d1 + self.d2
    }

    fn dq(&self) -> (Rational, Rational) {
        (int(self.d1 as i64), int(self.d2 as i64))
    }

    pub fn scalar_curvature(&self, g: &InvariantMetric) -> Rational {
        let (d1, d2) = self.dq();
        let (x1, x2) = (g.x1(), g.x2());
        let t = &self.t;
        (d1 / x1 + d2 / x2) / int(2) - (t * x2 / (x1 * x1) + int(2) * t / x2) / int(4)
    }

    pub fn partials(&self, g: &InvariantMetric) -> Partials {
        let (d1, d2) = self.dq();
        let (x1, x2) = (g.x1(), g.x2());
        let t = &self.t;
        let x1_2 = x1 * x1;
        let x1_3 = &x1_2 * x1;
        let x1_4 = &x1_3 * x1;
        let x2_2 = x2 * x2;
        let x2_3 = &x2_2 * x2;
        Partials {
            s1: -&d1 / (int(2) * &x1_2) + t * x2 / (int(2) * &x1_3),
            s2: (t - &d2) / (int(2) * &x2_2) - t / (int(4) * &x1_2),
            s11: &d1 / &x1_3 - int(3) * t * x2 / (int(2) * &x1_4),
            s12: t / (int(2) * &x1_3),
            s22: (&d2 - t) / &x2_3,
        }
    }

    /// `2td1x1² − 2d1d2x1² − td1x2² + 2d1d2x1x2 − 2td2x2²`; zero exactly on Einstein rays.
    pub fn einstein_polynomial(&self, x1: &Rational, x2: &Rational) -> Rational {
        let (d1, d2) = self.dq();
        let t = &self.t;
        let x1_2 = x1 * x1;
        let x2_2 = x2 * x2;
        int(2) * t * &d1 * &x1_2 - int(2) * &d1 * &d2 * &x1_2 - t * &d1 * &x2_2
            + int(2) * &d1 * &d2 * x1 * x2
            - int(2) * t * &d2 * &x2_2
    }

    pub fn volume(&self, g: &InvariantMetric) -> Rational {
        g.x1().pow(self.d1 as i32) * g.x2().pow(self.d2 as i32)
    }

    /// `(∂V/∂x1, ∂V/∂x2)`.
    pub fn volume_gradient(&self, g: &InvariantMetric) -> (Rational, Rational) {
        self.volume_gradient_at(&self.volume(g), g)
    }

    /// Second partials `(V11, V12, V22)` of the volume.
    pub fn volume_hessian(&self, g: &InvariantMetric) -> (Rational, Rational, Rational) {
        self.volume_hessian_at(&self.volume(g), g)
    }

    /// Gradient from an already computed volume `v = V(g)`.
    pub(crate) fn volume_gradient_at(
        &self,
        v: &Rational,
        g: &InvariantMetric,
    ) -> (Rational, Rational) {
        let (q1, q2) = (int(self.d1 as i64), int(self.d2 as i64));
        (v * (q1 / g.x1()), v * (q2 / g.x2()))
    }

    /// Second partials from an already computed volume `v = V(g)`.
    pub(crate) fn volume_hessian_at(
        &self,
        v: &Rational,
        g: &InvariantMetric,
    ) -> (Rational, Rational, Rational) {
        let (q1, q2) = (int(self.d1 as i64), int(self.d2 as i64));
        let (x1, x2) = (g.x1(), g.x2());
        let one = Rational::one();
        (
            v * (&q1 * (&q1 - &one) / (x1 * x1)),
            v * (&q1 * &q2 / (x1 * x2)),
            v * (&q2 * (&q2 - &one) / (x2 * x2)),
        )
    }

    /// Left-hand sides of `∂(S − cV)/∂x1 = 0` and `∂(S − cV)/∂x2 = 0`.
    pub fn lagrange_residuals(&self, g: &InvariantMetric, c: &Rational) -> (Rational, Rational) {
        let p = self.partials(g);
        let (v1, v2) = self.volume_gradient(g);
        (p.s1 - c * v1, p.s2 - c * v2)
    }

    /// The Kähler metric `(1, 2)` and the metric `(1, 4d2/(d1 + 2d2))`.
    pub fn einstein_metrics(&self) -> EinsteinSolutionSet {
        let kaehler = InvariantMetric::new(int(1), int(2)).expect("positive");
        let x2 = rat(4 * self.d2 as i64, (self.d1 + 2 * self.d2) as i64);
        let non_kaehler = InvariantMetric::new(int(1), x2).expect("positive");
        EinsteinSolutionSet {
            kaehler,
            non_kaehler,
            t: self.t.clone(),
        }
    }
}

/// `t = [112] = d1·d2/(d1 + 4d2)`, forced by the Kähler–Einstein metric `(1, 2)`.
pub fn t_closed_form(d1: u64, d2: u64) -> Rational {
    rat((d1 * d2) as i64, (d1 + 4 * d2) as i64)
}

/// `[112]` summed from structure constants: every ordered pair `(α, β)` of
/// level-1 roots with `α + β` of level 2 contributes `2·N²_{α,β}`.
///
/// The factor 2 collects the four real brackets `[A_α|B_α, A_β|B_β]`, each
/// contributing `N²/2` in a `(−B)`-orthonormal basis.
pub fn t_oracle(ts: &TwoSummandSpace) -> Rational {
    let rs = ts.root_system();
    let level1 = ts.grading_class(1).expect("level 1 exists");
    let mut total = Rational::zero();
    for a in level1 {
        for b in level1 {
            if a == b {
                continue;
            }
            let sum = a.add(b);
            if rs.is_root(&sum) && ts.level(&sum) == 2 {
                total += int(2) * rs.structure_constant_sq(a, b).expect("roots of the space");
            }
        }
    }
    total
}

/// The two Einstein metrics normalized at `x1 = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EinsteinSolutionSet {
    pub kaehler: InvariantMetric,
    pub non_kaehler: InvariantMetric,
    #[serde(with = "crate::cli::rational_str")]
    pub t: Rational,
}

pub fn solve_einstein(ts: &TwoSummandSpace) -> EinsteinSolutionSet {
    CurvatureModel::for_space(ts).einstein_metrics()
}

pub fn scalar_curvature(d1: u64, d2: u64, t: &Rational, g: &InvariantMetric) -> Rational {
    CurvatureModel::new(d1, d2, t.clone()).scalar_curvature(g)
}

pub fn einstein_polynomial(
    d1: u64,
    d2: u64,
    t: &Rational,
    x1: &Rational,
    x2: &Rational,
) -> Rational {
    CurvatureModel::new(d1, d2, t.clone()).einstein_polynomial(x1, x2)
}

/// Volume data of a metric and the Einstein constant of its unit-volume rescaling.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeData {
    pub volume: Rational,
    pub dim: u64,
    /// `S·V^{1/n}/n`.
    pub kappa_approx: f64,
}

pub fn volume_and_constant(d1: u64, d2: u64, g: &InvariantMetric, s: &Rational) -> VolumeData {
    let model = CurvatureModel::new(d1, d2, Rational::zero());
    let volume = model.volume(g);
    let n = model.dim();
    let ln_v = ln_abs(volume.numer()) - ln_abs(volume.denom());
    let kappa_approx = to_f64(s) * (ln_v / n as f64).exp() / n as f64;
    VolumeData {
        volume,
        dim: n,
        kappa_approx,
    }
}

pub(crate) fn to_f64(x: &Rational) -> f64 {
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    if x.is_zero() {
        return 0.0;
    }
    sign * (ln_abs(x.numer()) - ln_abs(x.denom())).exp()
}

fn ln_abs(n: &BigInt) -> f64 {
    let n = n.abs();
    if n.is_one() {
        return 0.0;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top: BigInt = &n >> shift;
    top.to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(x1: Rational, x2: Rational) -> InvariantMetric {
        InvariantMetric::new(x1, x2).unwrap()
    }

    #[test]
    fn closed_form_t() {
        assert_eq!(t_closed_form(40, 10), int(5));
        assert_eq!(t_closed_form(8, 2), int(1));
        assert_eq!(t_closed_form(16, 14), rat(28, 9));
    }

    #[test]
    fn scalar_curvature_values() {
        let e6 = CurvatureModel::new(40, 10, int(5));
        assert_eq!(e6.scalar_curvature(&m(int(1), int(2))), rat(75, 4));
        assert_eq!(e6.scalar_curvature(&m(int(1), rat(2, 3))), rat(275, 12));
        // (d1 + d2)/2 − 3t/4 at (1, 1)
        assert_eq!(
            e6.scalar_curvature(&m(int(1), int(1))),
            int(25) - rat(15, 4)
        );
    }

    #[test]
    fn matches_expanded_e6_expression() {
        // S = 20/x1 + 5/(2x2) − 5x2/(4x1²)
        let e6 = CurvatureModel::new(40, 10, int(5));
        for (x1, x2) in [(rat(3, 7), rat(5, 2)), (int(2), rat(1, 9))] {
            let expanded =
                int(20) / &x1 + int(5) / (int(2) * &x2) - int(5) * &x2 / (int(4) * &x1 * &x1);
            assert_eq!(e6.scalar_curvature(&m(x1, x2)), expanded);
        }
    }

    #[test]
    fn einstein_polynomial_values() {
        let e6 = CurvatureModel::new(40, 10, int(5));
        assert!(e6.einstein_polynomial(&int(1), &int(2)).is_zero());
        assert!(e6.einstein_polynomial(&int(1), &rat(2, 3)).is_zero());
        assert_eq!(e6.einstein_polynomial(&int(1), &int(1)), int(100));
    }

    #[test]
    fn solutions() {
        let sp3 = CurvatureModel::from_dims(8, 2).einstein_metrics();
        assert_eq!(sp3.non_kaehler.x2(), &rat(2, 3));
        let e6 = CurvatureModel::from_dims(40, 10).einstein_metrics();
        assert_eq!(e6.non_kaehler.x2(), &rat(2, 3));
        assert_eq!(e6.kaehler.x2(), &int(2));
        assert_eq!(e6.t, int(5));
    }

    #[test]
    fn volumes() {
        let v = volume_and_constant(40, 10, &m(int(1), int(2)), &rat(75, 4));
        assert_eq!(v.volume, int(1024));
        assert_eq!(v.dim, 50);
        let expected = 75.0 / 4.0 * 1024f64.powf(1.0 / 50.0) / 50.0;
        assert!((v.kappa_approx - expected).abs() < 1e-12);
        assert_eq!(
            volume_and_constant(7, 3, &m(int(1), int(1)), &int(1)).volume,
            int(1)
        );
        assert_eq!(
            volume_and_constant(40, 10, &m(int(1), rat(2, 3)), &int(1)).volume,
            rat(1024, 59049)
        );
    }

    #[test]
    fn nonpositive_metric_rejected() {
        assert!(InvariantMetric::new(int(0), int(1)).is_err());
        assert!(InvariantMetric::new(int(1), rat(-1, 2)).is_err());
    }

    #[test]
    fn float_conversion_handles_huge_values() {
        let big = Rational::from_integer(BigInt::from(3).pow(2000u32));
        let tiny = Rational::one() / &big;
        assert!(to_f64(&big).is_infinite());
        assert_eq!(to_f64(&tiny), 0.0);
        assert!((to_f64(&rat(-3, 8)) + 0.375).abs() < 1e-15);
    }
}
