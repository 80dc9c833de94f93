//! Root systems of the simple Lie types.
//!
//! Roots are integer vectors over the simple roots `α_1, …, α_ℓ` (Bourbaki
//! numbering). The positive roots are generated from the Cartan matrix alone
//! by saturating with root strings, so no per-type root tables are needed.
//!
//! Two bilinear forms are exposed:
//!
//! - the symmetrized form `⟨α_i, α_j⟩ = d_i a_ij`, normalized so long roots
//!   have squared length 2 (G2 gives `⟨α1,α1⟩ = 2`, `⟨α2,α2⟩ = 2/3`);
//! - the Killing-induced form `(λ, μ)_B = ⟨λ, μ⟩ / k`, where the scale `k` is
//!   computed from `k = Σ_{γ∈R} ⟨θ,γ⟩² / ⟨θ,θ⟩` for the highest root `θ`.
//!
//! Squared structure constants use `N²_{α,β} = q(1+p)·(α,α)_B / 2` for the
//! `α`-string `β − pα, …, β + qα` through `β`, which corresponds to root
//! vectors normalized by `B(E_α, E_{−α}) = −1`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::{int, Error, Rational, Result};

/// Cartan–Killing family letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(Error::Parse(format!(
                "unknown family {s:?}; expected one of A, B, C, D, E, F, G"
            ))),
        }
    }
}

/// A valid simple Lie type such as `B4` or `E7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let invalid = |hint: Option<&str>| Error::InvalidType {
            family,
            rank,
            hint: hint.map(str::to_owned),
        };
        match (family, rank) {
            (_, 0) => Err(invalid(Some("rank must be positive"))),
            (Family::A, _) => Ok(Self { family, rank }),
            (Family::B, 1) => Err(invalid(Some("B1 is A1; use A 1"))),
            (Family::C, 1) => Err(invalid(Some("C1 is A1; use A 1"))),
            (Family::B | Family::C, _) => Ok(Self { family, rank }),
            (Family::D, 1) => Err(invalid(Some("D1 is not simple"))),
            (Family::D, 2) => Err(invalid(Some("D2 is A1×A1, not simple"))),
            (Family::D, 3) => Err(invalid(Some("D3 is A3; use A 3"))),
            (Family::D, _) => Ok(Self { family, rank }),
            (Family::E, 6..=8) => Ok(Self { family, rank }),
            (Family::E, _) => Err(invalid(Some("E requires rank 6, 7 or 8"))),
            (Family::F, 4) => Ok(Self { family, rank }),
            (Family::F, _) => Err(invalid(Some("F requires rank 4"))),
            (Family::G, 2) => Ok(Self { family, rank }),
            (Family::G, _) => Err(invalid(Some("G requires rank 2"))),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Cartan matrix `a_ij = 2(α_i, α_j)/(α_i, α_i)` in Bourbaki numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.family {
            Family::A => (1..n).for_each(|i| link(i - 1, i)),
            Family::B => {
                (1..n).for_each(|i| link(i - 1, i));
                a[n - 1][n - 2] = -2;
            }
            Family::C => {
                (1..n).for_each(|i| link(i - 1, i));
                a[n - 2][n - 1] = -2;
            }
            Family::D => {
                (1..n - 1).for_each(|i| link(i - 1, i));
                link(n - 3, n - 1);
            }
            Family::E => {
                link(0, 2);
                link(1, 3);
                (3..n).for_each(|i| link(i - 1, i));
            }
            Family::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
                a[2][1] = -2;
            }
            Family::G => {
                link(0, 1);
                a[1][0] = -3;
            }
        }
        a
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Integer coefficients of a weight or root over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVec(pub Vec<i64>);

impl RootVec {
    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    /// The simple root `α_i`, `i` counted from 1.
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        Self(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coefficient of `α_i`, `i` counted from 1.
    pub fn coeff(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> RootVec {
        RootVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> RootVec {
        self.scaled(-1)
    }

    /// Coordinatewise `self ≥ other`.
    pub fn dominates(&self, other: &RootVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}α{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}α{}", i + 1)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Combinatorial root data of a simple Lie type. Immutable after construction.
#[derive(Debug, Clone)]
pub struct RootSystem {
    lie_type: LieType,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<Rational>,
    gram: Vec<Vec<Rational>>,
    positive_roots: Vec<RootVec>,
    highest_root: RootVec,
    marks: Vec<i64>,
    killing_scale: Rational,
    // positive and negative roots
    lookup: HashMap<RootVec, usize>,
}

impl RootSystem {
    pub fn new(lie_type: LieType) -> Self {
        let cartan = lie_type.cartan_matrix();
        let rank = lie_type.rank();
        let symmetrizer = symmetrizer(&cartan);
        let gram: Vec<Vec<Rational>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| &symmetrizer[i] * int(cartan[i][j]))
                    .collect()
            })
            .collect();

        let positive_roots = saturate(&cartan);
        let highest_root = positive_roots
            .iter()
            .max_by_key(|r| r.height())
            .cloned()
            .expect("a root system has at least one root");
        debug_assert!(positive_roots.iter().all(|r| highest_root.dominates(r)));
        let marks = highest_root.0.clone();

        let mut lookup = HashMap::with_capacity(2 * positive_roots.len());
        for (i, r) in positive_roots.iter().enumerate() {
            lookup.insert(r.clone(), i);
            lookup.insert(r.neg(), i);
        }

        let mut rs = Self {
            lie_type,
            cartan,
            symmetrizer,
            gram,
            positive_roots,
            highest_root,
            marks,
            killing_scale: Rational::zero(),
            lookup,
        };
        let theta = rs.highest_root.clone();
        rs.killing_scale = rs.killing_sum(&theta) / rs.form(&theta, &theta);
        rs
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Half the squared lengths of the simple roots under `⟨,⟩`.
    pub fn symmetrizer(&self) -> &[Rational] {
        &self.symmetrizer
    }

    pub fn positive_roots(&self) -> &[RootVec] {
        &self.positive_roots
    }

    /// Positive roots followed by their negatives.
    pub fn roots(&self) -> impl Iterator<Item = RootVec> + '_ {
        self.positive_roots
            .iter()
            .cloned()
            .chain(self.positive_roots.iter().map(RootVec::neg))
    }

    pub fn highest_root(&self) -> &RootVec {
        &self.highest_root
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    /// Mark of the simple root `α_i`, `i` counted from 1.
    pub fn mark(&self, i: usize) -> i64 {
        self.marks[i - 1]
    }

    /// `k` such that `(λ, μ)_B = ⟨λ, μ⟩ / k`.
    pub fn killing_scale(&self) -> &Rational {
        &self.killing_scale
    }

    pub fn simple_root(&self, i: usize) -> RootVec {
        RootVec::simple(self.rank(), i)
    }

    pub fn is_root(&self, v: &RootVec) -> bool {
        self.lookup.contains_key(v)
    }

    fn check_len(&self, v: &RootVec) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Symmetrized inner product `⟨λ, μ⟩ = Σ λ_i μ_j d_i a_ij`.
    pub fn inner_product(&self, lambda: &RootVec, mu: &RootVec) -> Result<Rational> {
        self.check_len(lambda)?;
        self.check_len(mu)?;
        Ok(self.form(lambda, mu))
    }

    /// Inner product for rational coefficient vectors over the simple roots.
    pub fn inner_product_q(&self, lambda: &[Rational], mu: &[Rational]) -> Result<Rational> {
        for len in [lambda.len(), mu.len()] {
            if len != self.rank() {
                return Err(Error::DimensionMismatch {
                    expected: self.rank(),
                    found: len,
                });
            }
        }
        let mut acc = Rational::zero();
        for (i, li) in lambda.iter().enumerate() {
            if li.is_zero() {
                continue;
            }
            for (j, mj) in mu.iter().enumerate() {
                if !mj.is_zero() {
                    acc += li * mj * &self.gram[i][j];
                }
            }
        }
        Ok(acc)
    }

    pub(crate) fn form(&self, lambda: &RootVec, mu: &RootVec) -> Rational {
        let mut acc = Rational::zero();
        for (i, &li) in lambda.0.iter().enumerate() {
            if li == 0 {
                continue;
            }
            for (j, &mj) in mu.0.iter().enumerate() {
                if mj != 0 {
                    acc += &self.gram[i][j] * int(li * mj);
                }
            }
        }
        acc
    }

    /// `Σ_{γ∈R} ⟨v, γ⟩²`, the Killing-form square of `v` up to the scale `k`.
    pub fn killing_sum(&self, v: &RootVec) -> Rational {
        let half: Rational = self
            .positive_roots
            .iter()
            .map(|g| {
                let p = self.form(v, g);
                &p * &p
            })
            .sum();
        half * int(2)
    }

    /// Killing-normalized inner product `(λ, μ)_B`.
    pub fn killing_product(&self, lambda: &RootVec, mu: &RootVec) -> Result<Rational> {
        Ok(self.inner_product(lambda, mu)? / &self.killing_scale)
    }

    /// The `α`-string through `β`: `(p, q)` with `β − pα, …, β + qα` all roots.
    pub fn root_string(&self, alpha: &RootVec, beta: &RootVec) -> Result<(i64, i64)> {
        self.check_len(alpha)?;
        self.check_len(beta)?;
        for v in [alpha, beta] {
            if !self.is_root(v) {
                return Err(Error::NotARoot(v.clone()));
            }
        }
        if beta == alpha || *beta == alpha.neg() {
            return Err(Error::ProportionalRoots {
                alpha: alpha.clone(),
                beta: beta.clone(),
            });
        }
        let mut p = 0;
        while self.is_root(&beta.sub(&alpha.scaled(p + 1))) {
            p += 1;
        }
        let mut q = 0;
        while self.is_root(&beta.add(&alpha.scaled(q + 1))) {
            q += 1;
        }
        Ok((p, q))
    }

    /// `N²_{α,β}`; zero when `α + β` is not a root.
    pub fn structure_constant_sq(&self, alpha: &RootVec, beta: &RootVec) -> Result<Rational> {
        let (p, q) = self.root_string(alpha, beta)?;
        if q == 0 {
            return Ok(Rational::zero());
        }
        let len_b = self.form(alpha, alpha) / &self.killing_scale;
        Ok(int(q * (1 + p)) * len_b / int(2))
    }
}

/// Positive rationals `d_i` with `d_i a_ij = d_j a_ji`, scaled so `max d_i = 1`.
fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<Rational> {
    let n = cartan.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    d[0] = Some(int(1));
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        let di = d[i].clone().expect("visited");
        for j in 0..n {
            if j != i && cartan[i][j] != 0 && d[j].is_none() {
                d[j] = Some(&di * int(cartan[i][j]) / int(cartan[j][i]));
                stack.push(j);
            }
        }
    }
    let d: Vec<Rational> = d
        .into_iter()
        .map(|x| x.expect("Dynkin diagram is connected"))
        .collect();
    let max = d.iter().max().cloned().expect("non-empty");
    d.into_iter().map(|x| x / &max).collect()
}

/// Generate the positive roots layer by layer in height.
///
/// `γ + α_i` is a root iff `q > 0`, where `q = p − ⟨γ, α_i^∨⟩` and `p` is the
/// length of the downward `α_i`-string from `γ`, found among the roots of lower
/// height already generated.
fn saturate(cartan: &[Vec<i64>]) -> Vec<RootVec> {
    let n = cartan.len();
    let mut all: Vec<RootVec> = (1..=n).map(|i| RootVec::simple(n, i)).collect();
    let mut known: std::collections::HashSet<RootVec> = all.iter().cloned().collect();
    let mut layer = all.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for gamma in &layer {
            for (i, row) in cartan.iter().enumerate() {
                let alpha = RootVec::simple(n, i + 1);
                let mut p = 0;
                while known.contains(&gamma.sub(&alpha.scaled(p + 1))) {
                    p += 1;
                }
                let pairing: i64 = row.iter().zip(&gamma.0).map(|(a, g)| a * g).sum();
                let q = p - pairing;
                if q > 0 {
                    let cand = gamma.add(&alpha);
                    if known.insert(cand.clone()) {
                        next.push(cand);
                    }
                }
            }
        }
        next.sort();
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
    all
}

/// `|R⁺|` from the classification, for cross-checking the saturation.
pub fn expected_positive_root_count(t: LieType) -> usize {
    let l = t.rank();
    match t.family() {
        Family::A => l * (l + 1) / 2,
        Family::B | Family::C => l * l,
        Family::D => l * (l - 1),
        Family::E => match l {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        Family::F => 24,
        Family::G => 6,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn rs(f: Family, l: usize) -> RootSystem {
        RootSystem::new(LieType::new(f, l).unwrap())
    }

    fn rv(v: &[i64]) -> RootVec {
        RootVec(v.to_vec())
    }

    #[test]
    fn g2_cartan_and_roots() {
        let g2 = rs(Family::G, 2);
        assert_eq!(g2.cartan(), &[vec![2, -1], vec![-3, 2]]);
        let mut got: Vec<_> = g2.positive_roots().to_vec();
        got.sort();
        let mut want = vec![
            rv(&[1, 0]),
            rv(&[0, 1]),
            rv(&[1, 1]),
            rv(&[1, 2]),
            rv(&[1, 3]),
            rv(&[2, 3]),
        ];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(g2.highest_root(), &rv(&[2, 3]));
        assert_eq!(g2.marks(), &[2, 3]);
    }

    #[test]
    fn f4_cartan() {
        let f4 = rs(Family::F, 4);
        assert_eq!(
            f4.cartan(),
            &[
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, 0],
                vec![0, -2, 2, -1],
                vec![0, 0, -1, 2]
            ]
        );
        assert_eq!(f4.marks(), &[2, 3, 4, 2]);
    }

    #[test]
    fn a1_base_case() {
        let a1 = rs(Family::A, 1);
        assert_eq!(a1.positive_roots(), &[rv(&[1])]);
        assert_eq!(a1.highest_root(), &rv(&[1]));
        assert_eq!(a1.marks(), &[1]);
    }

    #[test]
    fn inner_products_match_worked_values() {
        let g2 = rs(Family::G, 2);
        assert_eq!(
            g2.inner_product(&rv(&[1, 0]), &rv(&[1, 0])).unwrap(),
            int(2)
        );
        assert_eq!(
            g2.inner_product(&rv(&[0, 1]), &rv(&[0, 1])).unwrap(),
            rat(2, 3)
        );
        let f4 = rs(Family::F, 4);
        assert_eq!(
            f4.inner_product(&f4.simple_root(3), &f4.simple_root(3))
                .unwrap(),
            int(1)
        );
        assert_eq!(
            f4.inner_product(&f4.simple_root(4), &f4.simple_root(4))
                .unwrap(),
            int(1)
        );
        assert_eq!(
            f4.inner_product(&f4.simple_root(1), &f4.simple_root(1))
                .unwrap(),
            int(2)
        );
    }

    #[test]
    fn inner_product_length_check() {
        let g2 = rs(Family::G, 2);
        assert_eq!(
            g2.inner_product(&rv(&[1, 0, 0]), &rv(&[1, 0])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn g2_killing_scale_is_eight() {
        assert_eq!(rs(Family::G, 2).killing_scale(), &int(8));
    }

    #[test]
    fn root_strings_g2() {
        let g2 = rs(Family::G, 2);
        assert_eq!(g2.root_string(&rv(&[1, 0]), &rv(&[1, 3])).unwrap(), (0, 1));
        assert_eq!(g2.root_string(&rv(&[1, 1]), &rv(&[1, 2])).unwrap(), (2, 1));
        // α1+α2 − α1 = α2 is a root, 2α1+α2 is not
        assert_eq!(g2.root_string(&rv(&[1, 0]), &rv(&[1, 1])).unwrap(), (1, 0));
        assert!(matches!(
            g2.root_string(&rv(&[2, 0]), &rv(&[1, 1])),
            Err(Error::NotARoot(_))
        ));
        assert!(matches!(
            g2.root_string(&rv(&[1, 0]), &rv(&[-1, 0])),
            Err(Error::ProportionalRoots { .. })
        ));
    }

    #[test]
    fn structure_constants_g2() {
        let g2 = rs(Family::G, 2);
        assert_eq!(
            g2.structure_constant_sq(&rv(&[1, 0]), &rv(&[1, 3]))
                .unwrap(),
            rat(1, 8)
        );
        assert_eq!(
            g2.structure_constant_sq(&rv(&[1, 1]), &rv(&[1, 2]))
                .unwrap(),
            rat(1, 8)
        );
        assert!(g2
            .structure_constant_sq(&rv(&[1, 0]), &rv(&[1, 1]))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn invalid_types() {
        let err = LieType::new(Family::D, 3).unwrap_err();
        assert!(err.to_string().contains("A 3"), "{err}");
        assert!(LieType::new(Family::C, 1)
            .unwrap_err()
            .to_string()
            .contains("A1"));
        assert!(LieType::new(Family::E, 9).is_err());
        assert!(LieType::new(Family::F, 3).is_err());
        assert!(LieType::new(Family::A, 0).is_err());
        assert!(LieType::new(Family::D, 4).is_ok());
        assert_eq!("e".parse::<Family>().unwrap(), Family::E);
        assert!("X".parse::<Family>().is_err());
    }

    #[test]
    fn root_display() {
        assert_eq!(rv(&[2, 3]).to_string(), "2α1+3α2");
        assert_eq!(rv(&[-1, 0]).to_string(), "-α1");
        assert_eq!(rv(&[0, 0]).to_string(), "0");
    }
}
