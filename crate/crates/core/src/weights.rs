//! Fundamental-weight coordinates and Weyl's dimension formula.

use std::fmt;

use crate::flagspace::TwoSummandSpace;
use crate::rootsys::{RootSystem, RootVec};
use crate::{int, Error, Rational, Result};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients over the fundamental weights `Λ_1, …, Λ_ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVec(pub Vec<Rational>);

impl WeightVec {
    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{sign}Λ{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}Λ{}", i + 1)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Express `v = Σ v_i α_i` in the fundamental-weight basis.
///
/// `α_i = Σ_j a_ji Λ_j`, so the `j`-th coordinate is `Σ_i a_ji v_i`.
pub fn to_weight_basis(rs: &RootSystem, v: &RootVec) -> Result<WeightVec> {
    let n = rs.rank();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    let a = rs.cartan();
    Ok(WeightVec(
        (0..n)
            .map(|j| int((0..n).map(|i| a[j][i] * v.0[i]).sum()))
            .collect(),
    ))
}

/// Highest weight of the `K`-module `m_n^+`: the unique root of level `n`
/// that stays out of `R` after adding any unpainted simple root.
pub fn highest_weight(ts: &TwoSummandSpace, n: usize) -> Result<RootVec> {
    if !(1..=2).contains(&n) {
        return Err(Error::BadLevel(n as i64));
    }
    let rs = ts.root_system();
    let painted = ts.painted();
    let maximal: Vec<&RootVec> = ts
        .grading_class(n as i64)?
        .iter()
        .filter(|g| {
            (1..=rs.rank())
                .filter(|&i| i != painted)
                .all(|i| !rs.is_root(&g.add(&rs.simple_root(i))))
        })
        .collect();
    match maximal.as_slice() {
        [one] => Ok((*one).clone()),
        _ => Err(Error::NotUnique {
            level: n,
            count: maximal.len(),
        }),
    }
}

/// Half the sum of a set of positive roots, over the simple roots.
pub fn half_sum(rank: usize, roots: &[RootVec]) -> Vec<Rational> {
    let mut acc = vec![0i64; rank];
    for r in roots {
        for (a, c) in acc.iter_mut().zip(&r.0) {
            *a += c;
        }
    }
    acc.into_iter()
        .map(|a| Rational::new(a.into(), 2.into()))
        .collect()
}

/// Weyl's formula `∏_{α∈rk_plus} (1 + ⟨λ,α⟩/⟨δ,α⟩)` with `δ` the half-sum of
/// `rk_plus`, for a subsystem given by its positive roots.
pub fn weyl_dim(rs: &RootSystem, rk_plus: &[RootVec], lambda: &RootVec) -> Result<u64> {
    let delta = half_sum(rs.rank(), rk_plus);
    let lambda_q: Vec<Rational> = lambda.0.iter().map(|&c| int(c)).collect();
    let mut prod = Rational::one();
    for alpha in rk_plus {
        let alpha_q: Vec<Rational> = alpha.0.iter().map(|&c| int(c)).collect();
        let num = rs.inner_product_q(&lambda_q, &alpha_q)?;
        if num.is_negative() {
            return Err(Error::NotDominant {
                witness: alpha.clone(),
            });
        }
        let den = rs.inner_product_q(&delta, &alpha_q)?;
        prod *= Rational::one() + num / den;
    }
    if !prod.is_integer() || !prod.is_positive() {
        return Err(Error::NonIntegerResult(prod.to_string()));
    }
    prod.to_integer()
        .to_u64()
        .ok_or_else(|| Error::NonIntegerResult(prod.to_string()))
}

/// `2⟨δ, α⟩/⟨α, α⟩` for every simple root `α` of the subsystem; all ones when
/// the half-sum equals the sum of the subsystem's fundamental weights.
pub fn delta_coroot_pairings(
    rs: &RootSystem,
    rk_plus: &[RootVec],
    simple: &[RootVec],
) -> Result<Vec<Rational>> {
    let delta = half_sum(rs.rank(), rk_plus);
    simple
        .iter()
        .map(|a| {
            let aq: Vec<Rational> = a.0.iter().map(|&c| int(c)).collect();
            Ok(int(2) * rs.inner_product_q(&delta, &aq)? / rs.form(a, a))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::flagspace::PaintedDiagram;
    use crate::rootsys::{Family, LieType};

    fn rs(f: Family, l: usize) -> Arc<RootSystem> {
        Arc::new(RootSystem::new(LieType::new(f, l).unwrap()))
    }

    fn w(v: &[i64]) -> WeightVec {
        WeightVec(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn g2_conversions() {
        let g2 = rs(Family::G, 2);
        assert_eq!(
            to_weight_basis(&g2, &RootVec(vec![1, 0])).unwrap(),
            w(&[2, -3])
        );
        assert_eq!(
            to_weight_basis(&g2, &RootVec(vec![0, 1])).unwrap(),
            w(&[-1, 2])
        );
        assert_eq!(
            to_weight_basis(&g2, &RootVec(vec![1, 3])).unwrap(),
            w(&[-1, 3])
        );
        assert_eq!(
            to_weight_basis(&g2, &RootVec(vec![2, 3])).unwrap(),
            w(&[1, 0])
        );
        assert_eq!(
            to_weight_basis(&g2, &RootVec(vec![0, 0])).unwrap(),
            w(&[0, 0])
        );
        assert_eq!(
            to_weight_basis(&g2, &RootVec(vec![1, 0]))
                .unwrap()
                .to_string(),
            "2Λ1-3Λ2"
        );
        assert!(matches!(
            to_weight_basis(&g2, &RootVec(vec![1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn f4_conversions() {
        let f4 = rs(Family::F, 4);
        let expected = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]];
        for (i, row) in expected.iter().enumerate() {
            assert_eq!(
                to_weight_basis(&f4, &f4.simple_root(i + 1)).unwrap(),
                w(row)
            );
        }
    }

    #[test]
    fn highest_weights_and_dims() {
        let g2 = PaintedDiagram::new(rs(Family::G, 2), 1)
            .unwrap()
            .validate()
            .unwrap();
        let l1 = highest_weight(&g2, 1).unwrap();
        let l2 = highest_weight(&g2, 2).unwrap();
        assert_eq!(l1, RootVec(vec![1, 3]));
        assert_eq!(l2, RootVec(vec![2, 3]));
        let rk = g2.grading_class(0).unwrap();
        assert_eq!(weyl_dim(g2.root_system(), rk, &l1).unwrap(), 4);
        assert_eq!(weyl_dim(g2.root_system(), rk, &l2).unwrap(), 1);
        assert!(matches!(highest_weight(&g2, 3), Err(Error::BadLevel(3))));

        let f4 = PaintedDiagram::new(rs(Family::F, 4), 4)
            .unwrap()
            .validate()
            .unwrap();
        let l1 = highest_weight(&f4, 1).unwrap();
        assert_eq!(l1, RootVec(vec![1, 2, 3, 1]));
        assert_eq!(
            to_weight_basis(f4.root_system(), &l1).unwrap(),
            w(&[0, 0, 1, -1])
        );
        let l2 = highest_weight(&f4, 2).unwrap();
        assert_eq!(&l2, f4.root_system().highest_root());
        let rk = f4.grading_class(0).unwrap();
        assert_eq!(rk.len(), 9);
        assert_eq!(weyl_dim(f4.root_system(), rk, &l1).unwrap(), 8);
        assert_eq!(weyl_dim(f4.root_system(), rk, &l2).unwrap(), 7);
    }

    #[test]
    fn zero_weight_is_trivial() {
        let f4 = rs(Family::F, 4);
        let rk: Vec<RootVec> = f4
            .positive_roots()
            .iter()
            .filter(|r| r.coeff(4) == 0)
            .cloned()
            .collect();
        assert_eq!(weyl_dim(&f4, &rk, &RootVec::zero(4)).unwrap(), 1);
    }

    #[test]
    fn non_dominant_weight_rejected() {
        let g2 = rs(Family::G, 2);
        let rk = vec![RootVec(vec![0, 1])];
        // ⟨α1, α2⟩ < 0
        assert!(matches!(
            weyl_dim(&g2, &rk, &RootVec(vec![1, 0])),
            Err(Error::NotDominant { .. })
        ));
    }

    #[test]
    fn delta_identity_on_f4_subsystem() {
        let f4 = rs(Family::F, 4);
        let rk: Vec<RootVec> = f4
            .positive_roots()
            .iter()
            .filter(|r| r.coeff(4) == 0)
            .cloned()
            .collect();
        let simple: Vec<RootVec> = (1..=3).map(|i| f4.simple_root(i)).collect();
        let got = delta_coroot_pairings(&f4, &rk, &simple).unwrap();
        assert!(got.iter().all(|x| x.is_one()));
    }
}
