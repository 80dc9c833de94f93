//! Painted Dynkin diagrams with a single painted node of mark two.
//!
//! Painting `α_{i0}` splits the positive roots by their `α_{i0}`-coefficient.
//! When the mark of `α_{i0}` is 2 there are exactly three levels: level 0 is
//! `R_K⁺`, and levels 1 and 2 span the isotropy summands `m1`, `m2` with real
//! dimensions `d_n = 2·|level n|`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::rootsys::{Family, LieType, RootSystem, RootVec};
use crate::{Error, Result};

/// A root system with one simple root painted black (1-based index).
#[derive(Debug, Clone)]
pub struct PaintedDiagram {
    root_system: Arc<RootSystem>,
    painted: usize,
}

impl PaintedDiagram {
    pub fn new(root_system: Arc<RootSystem>, painted: usize) -> Result<Self> {
        let rank = root_system.rank();
        if painted == 0 || painted > rank {
            return Err(Error::NodeOutOfRange {
                node: painted,
                rank,
            });
        }
        Ok(Self {
            root_system,
            painted,
        })
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.root_system
    }

    pub fn painted(&self) -> usize {
        self.painted
    }

    pub fn mark(&self) -> i64 {
        self.root_system.mark(self.painted)
    }

    /// Check the two-summand condition and build the graded isotropy data.
    pub fn validate(&self) -> Result<TwoSummandSpace> {
        let rs = &self.root_system;
        let mark = self.mark();
        if mark != 2 {
            return Err(Error::HeightNotTwo {
                mark,
                detail: not_two_summand_detail(rs.lie_type(), self.painted, mark),
            });
        }
        let mut grading: [Vec<RootVec>; 3] = Default::default();
        for r in rs.positive_roots() {
            let level = r.coeff(self.painted);
            grading[level as usize].push(r.clone());
        }
        let d1 = 2 * grading[1].len() as u64;
        let d2 = 2 * grading[2].len() as u64;
        Ok(TwoSummandSpace {
            diagram: self.clone(),
            grading,
            d1,
            d2,
            k_description: isotropy_label(rs, self.painted),
            orbit: automorphism_orbit(rs.cartan(), self.painted),
        })
    }
}

/// A validated generalized flag manifold `G/K` with `m = m1 ⊕ m2`.
#[derive(Debug, Clone)]
pub struct TwoSummandSpace {
    diagram: PaintedDiagram,
    grading: [Vec<RootVec>; 3],
    d1: u64,
    d2: u64,
    k_description: String,
    orbit: Vec<usize>,
}

impl TwoSummandSpace {
    pub fn diagram(&self) -> &PaintedDiagram {
        &self.diagram
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.diagram.root_system
    }

    pub fn lie_type(&self) -> LieType {
        self.diagram.root_system.lie_type()
    }

    pub fn painted(&self) -> usize {
        self.diagram.painted
    }

    pub fn d1(&self) -> u64 {
        self.d1
    }

    pub fn d2(&self) -> u64 {
        self.d2
    }

    /// Isotropy group label, e.g. `SO(7)×U(1)`.
    pub fn k_description(&self) -> &str {
        &self.k_description
    }

    /// Painted nodes equivalent to this one under diagram automorphisms, sorted.
    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    /// Roots of `R⁺` whose painted coefficient is `n`; level 0 is `R_K⁺`.
    pub fn grading_class(&self, n: i64) -> Result<&[RootVec]> {
        match n {
            0..=2 => Ok(&self.grading[n as usize]),
            _ => Err(Error::BadLevel(n)),
        }
    }

    pub fn level(&self, v: &RootVec) -> i64 {
        v.coeff(self.diagram.painted)
    }

    /// Exhaustive check of `[m_n, m_m] ⊂ m_{n+m} + m_{|n−m|}` on root pairs.
    ///
    /// Returns one line per violating pair; empty when the grading is sound.
    pub fn bracket_violations(&self) -> Vec<String> {
        let rs = self.root_system();
        let mut out = Vec::new();
        for n in 1..=2i64 {
            for m in 1..=2i64 {
                for a in &self.grading[n as usize] {
                    for b in &self.grading[m as usize] {
                        let sum = a.add(b);
                        if rs.is_root(&sum) && (n + m >= 3 || self.level(&sum) != n + m) {
                            out.push(format!("{a} + {b} = {sum} breaks level {n}+{m}"));
                        }
                        let diff = a.sub(b);
                        if rs.is_root(&diff) && self.level(&diff).abs() != (n - m).abs() {
                            out.push(format!("{a} - {b} = {diff} breaks level |{n}-{m}|"));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Every two-summand space of a root system, one per painted node of mark 2.
///
/// With `dedup`, nodes in the same diagram-automorphism orbit are merged,
/// keeping the smallest index.
pub fn enumerate_spaces(rs: &Arc<RootSystem>, dedup: bool) -> Vec<TwoSummandSpace> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for node in 1..=rs.rank() {
        if rs.mark(node) != 2 {
            continue;
        }
        let space = PaintedDiagram::new(Arc::clone(rs), node)
            .and_then(|d| d.validate())
            .expect("mark-2 node validates");
        if dedup && !seen.insert(space.orbit()[0]) {
            continue;
        }
        out.push(space);
    }
    out
}

/// Convenience wrapper building the root system of `t` first.
pub fn enumerate_type(t: LieType, dedup: bool) -> Vec<TwoSummandSpace> {
    enumerate_spaces(&Arc::new(RootSystem::new(t)), dedup)
}

/// Reference isotropy dimensions `(d1, d2)` for a painted node: closed forms
/// for the classical families, tabulated values for the exceptional ones.
/// `None` when the node is not a two-summand node.
pub fn reference_dims(t: LieType, node: usize) -> Option<(u64, u64)> {
    let l = t.rank() as u64;
    let p = node as u64;
    match t.family() {
        Family::A => None,
        Family::B if (2..=l).contains(&p) => Some((2 * p * (2 * (l - p) + 1), p * (p - 1))),
        Family::C if (1..l).contains(&p) => Some((4 * p * (l - p), p * (p + 1))),
        Family::D if l >= 4 && (2..=l - 2).contains(&p) => Some((4 * p * (l - p), p * (p - 1))),
        Family::B | Family::C | Family::D => None,
        Family::G => (p == 1).then_some((8, 2)),
        Family::F => match p {
            1 => Some((28, 2)),
            4 => Some((16, 14)),
            _ => None,
        },
        Family::E => match (l, p) {
            (6, 2) => Some((40, 2)),
            (6, 3 | 5) => Some((40, 10)),
            (7, 1) => Some((64, 2)),
            (7, 2) => Some((70, 14)),
            (7, 6) => Some((64, 20)),
            (8, 1) => Some((128, 28)),
            (8, 8) => Some((112, 2)),
            _ => None,
        },
    }
}

fn not_two_summand_detail(t: LieType, p: usize, mark: i64) -> String {
    if mark > 2 {
        return format!("the isotropy representation splits into {mark} summands");
    }
    let l = t.rank();
    let name = match t.family() {
        Family::A => Some(format!("SU({})/S(U({p})×U({}))", l + 1, l + 1 - p)),
        Family::B if p == 1 => Some(format!("SO({})/U(1)×SO({})", 2 * l + 1, 2 * l - 1)),
        Family::C if p == l => Some(format!("Sp({l})/U({l})")),
        Family::D if p == 1 => Some(format!("SO({})/U(1)×SO({})", 2 * l, 2 * l - 2)),
        Family::D if p + 1 >= l => Some(format!("SO({})/U({l})", 2 * l)),
        Family::E if l == 6 && (p == 1 || p == 6) => Some("E6/SO(10)×U(1)".to_owned()),
        Family::E if l == 7 && p == 7 => Some("E7/E6×U(1)".to_owned()),
        _ => None,
    };
    match name {
        Some(n) => format!("irreducible isotropy; Hermitian symmetric space {n}"),
        None => "irreducible isotropy representation".to_owned(),
    }
}

/// Label of `K` from the unpainted subdiagram.
///
/// Classical families and G2 use the `U(p) × …` convention, merging the
/// `A_{p−1}` head with the center; E and F list the semisimple factors by
/// descending rank followed by `×U(1)`.
pub fn isotropy_label(rs: &RootSystem, painted: usize) -> String {
    let t = rs.lie_type();
    let l = t.rank();
    let p = painted;
    let m = l - p;
    match t.family() {
        Family::B => join(
            format!("U({p})"),
            (m > 0).then(|| format!("SO({})", 2 * m + 1)),
        ),
        Family::C => join(format!("U({p})"), (m > 0).then(|| format!("Sp({m})"))),
        Family::D => join(format!("U({p})"), (m > 0).then(|| format!("SO({})", 2 * m))),
        Family::A | Family::G => {
            let comps = components(rs.cartan(), painted);
            let mut parts = Vec::new();
            let mut center = "U(1)".to_owned();
            for c in comps {
                let (f, r) = identify_component(rs, &c);
                // the component touching the painted node absorbs the center
                let touches = c
                    .iter()
                    .any(|&i| rs.cartan()[i][painted - 1] != 0 && center == "U(1)");
                if f == Family::A && touches {
                    center = format!("U({})", r + 1);
                } else {
                    parts.push(group_name(f, r));
                }
            }
            parts.push(center);
            parts.join("×")
        }
        Family::E | Family::F => {
            let mut comps: Vec<(Family, usize)> = components(rs.cartan(), painted)
                .iter()
                .map(|c| identify_component(rs, c))
                .collect();
            comps.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            let mut parts: Vec<String> = comps.into_iter().map(|(f, r)| group_name(f, r)).collect();
            parts.push("U(1)".to_owned());
            parts.join("×")
        }
    }
}

fn join(head: String, tail: Option<String>) -> String {
    match tail {
        Some(t) => format!("{head}×{t}"),
        None => head,
    }
}

fn group_name(f: Family, r: usize) -> String {
    match f {
        Family::A => format!("SU({})", r + 1),
        Family::B => format!("SO({})", 2 * r + 1),
        Family::C => format!("Sp({r})"),
        Family::D => format!("SO({})", 2 * r),
        Family::E => format!("E{r}"),
        Family::F => "F4".to_owned(),
        Family::G => "G2".to_owned(),
    }
}

/// Connected components (0-based node lists) of the diagram minus `painted`.
fn components(cartan: &[Vec<i64>], painted: usize) -> Vec<Vec<usize>> {
    let n = cartan.len();
    let skip = painted - 1;
    let mut seen = vec![false; n];
    seen[skip] = true;
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Cartan type of a connected subdiagram given by 0-based node indices.
pub(crate) fn identify_component(rs: &RootSystem, nodes: &[usize]) -> (Family, usize) {
    let a = rs.cartan();
    let n = nodes.len();
    if n == 1 {
        return (Family::A, 1);
    }
    let degree = |i: usize| nodes.iter().filter(|&&j| j != i && a[i][j] != 0).count();
    let mut multi = None;
    for (x, &i) in nodes.iter().enumerate() {
        for &j in &nodes[x + 1..] {
            let mult = a[i][j] * a[j][i];
            if mult == 3 {
                return (Family::G, 2);
            }
            if mult == 2 {
                multi = Some((i, j));
            }
        }
    }
    if let Some((i, j)) = multi {
        if n == 4 && degree(i) == 2 && degree(j) == 2 {
            return (Family::F, 4);
        }
        if n == 2 {
            return (Family::B, 2);
        }
        let (end, other) = if degree(i) == 1 { (i, j) } else { (j, i) };
        let d = rs.symmetrizer();
        return if d[end] < d[other] {
            (Family::B, n)
        } else {
            (Family::C, n)
        };
    }
    let Some(&branch) = nodes.iter().find(|&&i| degree(i) == 3) else {
        return (Family::A, n);
    };
    let mut arms: Vec<usize> = nodes
        .iter()
        .filter(|&&j| j != branch && a[branch][j] != 0)
        .map(|&start| {
            let mut len = 1;
            let (mut prev, mut cur) = (branch, start);
            while let Some(&next) = nodes
                .iter()
                .find(|&&k| k != prev && k != cur && a[cur][k] != 0)
            {
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => (Family::D, n),
        _ => (Family::E, n),
    }
}

/// Orbit (1-based, sorted) of `node` under the automorphisms of the diagram.
fn automorphism_orbit(cartan: &[Vec<i64>], node: usize) -> Vec<usize> {
    let n = cartan.len();
    let mut orbit = BTreeSet::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search_automorphisms(cartan, 0, &mut perm, &mut used, &mut |p| {
        orbit.insert(p[node - 1] + 1);
    });
    orbit.into_iter().collect()
}

fn search_automorphisms(
    a: &[Vec<i64>],
    i: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]),
) {
    let n = a.len();
    if i == n {
        visit(perm);
        return;
    }
    for img in 0..n {
        if used[img] {
            continue;
        }
        let consistent = (0..i).all(|j| a[i][j] == a[img][perm[j]] && a[j][i] == a[perm[j]][img]);
        if !consistent {
            continue;
        }
        perm[i] = img;
        used[img] = true;
        search_automorphisms(a, i + 1, perm, used, visit);
        used[img] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(f: Family, l: usize, node: usize) -> Result<TwoSummandSpace> {
        let rs = Arc::new(RootSystem::new(LieType::new(f, l).unwrap()));
        PaintedDiagram::new(rs, node)?.validate()
    }

    #[test]
    fn g2_painted_first_node() {
        let s = space(Family::G, 2, 1).unwrap();
        assert_eq!((s.d1(), s.d2()), (8, 2));
        assert_eq!(s.k_description(), "U(2)");
        assert_eq!(s.grading_class(2).unwrap(), &[RootVec(vec![2, 3])]);
        let mut lvl1 = s.grading_class(1).unwrap().to_vec();
        lvl1.sort();
        assert_eq!(
            lvl1,
            vec![
                RootVec(vec![1, 0]),
                RootVec(vec![1, 1]),
                RootVec(vec![1, 2]),
                RootVec(vec![1, 3])
            ]
        );
        assert_eq!(s.grading_class(0).unwrap(), &[RootVec(vec![0, 1])]);
        assert_eq!(s.grading_class(3), Err(Error::BadLevel(3)));
        assert_eq!(s.grading_class(-1), Err(Error::BadLevel(-1)));
    }

    #[test]
    fn f4_painted_last_node() {
        let s = space(Family::F, 4, 4).unwrap();
        assert_eq!((s.d1(), s.d2()), (16, 14));
        assert_eq!(s.k_description(), "SO(7)×U(1)");
        assert_eq!(
            space(Family::F, 4, 1).unwrap().k_description(),
            "Sp(3)×U(1)"
        );
    }

    #[test]
    fn mark_one_names_hermitian_symmetric_space() {
        let err = space(Family::C, 6, 6).unwrap_err();
        assert!(matches!(err, Error::HeightNotTwo { mark: 1, .. }));
        assert!(err.to_string().contains("Sp(6)/U(6)"), "{err}");
        for p in 1..=5 {
            assert!(matches!(
                space(Family::A, 5, p),
                Err(Error::HeightNotTwo { mark: 1, .. })
            ));
        }
        let err = space(Family::D, 5, 5).unwrap_err();
        assert!(err.to_string().contains("SO(10)/U(5)"));
        let err = space(Family::B, 4, 1).unwrap_err();
        assert!(err.to_string().contains("SO(9)/U(1)×SO(7)"));
    }

    #[test]
    fn higher_marks_rejected() {
        let err = space(Family::G, 2, 2).unwrap_err();
        assert!(matches!(err, Error::HeightNotTwo { mark: 3, .. }));
        assert!(matches!(
            space(Family::G, 2, 3),
            Err(Error::NodeOutOfRange { node: 3, rank: 2 })
        ));
    }

    #[test]
    fn exceptional_labels() {
        let labels = |f, l| -> Vec<(usize, String)> {
            enumerate_type(LieType::new(f, l).unwrap(), false)
                .iter()
                .map(|s| (s.painted(), s.k_description().to_owned()))
                .collect()
        };
        assert_eq!(
            labels(Family::E, 6),
            vec![
                (2, "SU(6)×U(1)".to_owned()),
                (3, "SU(5)×SU(2)×U(1)".to_owned()),
                (5, "SU(5)×SU(2)×U(1)".to_owned())
            ]
        );
        assert_eq!(
            labels(Family::E, 7),
            vec![
                (1, "SO(12)×U(1)".to_owned()),
                (2, "SU(7)×U(1)".to_owned()),
                (6, "SO(10)×SU(2)×U(1)".to_owned())
            ]
        );
        assert_eq!(
            labels(Family::E, 8),
            vec![(1, "SO(14)×U(1)".to_owned()), (8, "E7×U(1)".to_owned())]
        );
    }

    #[test]
    fn classical_labels() {
        assert_eq!(
            space(Family::B, 5, 2).unwrap().k_description(),
            "U(2)×SO(7)"
        );
        assert_eq!(space(Family::B, 5, 5).unwrap().k_description(), "U(5)");
        assert_eq!(
            space(Family::C, 3, 1).unwrap().k_description(),
            "U(1)×Sp(2)"
        );
        assert_eq!(
            space(Family::D, 6, 4).unwrap().k_description(),
            "U(4)×SO(4)"
        );
    }

    #[test]
    fn enumeration_counts() {
        let count = |f, l, dedup| enumerate_type(LieType::new(f, l).unwrap(), dedup).len();
        assert_eq!(count(Family::E, 7, false), 3);
        assert_eq!(count(Family::G, 2, false), 1);
        assert_eq!(count(Family::A, 5, false), 0);
        assert_eq!(count(Family::E, 8, false), 2);
        assert_eq!(count(Family::E, 6, false), 3);
        assert_eq!(count(Family::E, 6, true), 2);
    }

    #[test]
    fn orbits() {
        let e6 = enumerate_type(LieType::new(Family::E, 6).unwrap(), false);
        assert_eq!(e6[1].orbit(), &[3, 5]);
        assert_eq!(e6[0].orbit(), &[2]);
        let d4 = enumerate_type(LieType::new(Family::D, 4).unwrap(), false);
        assert_eq!(d4.len(), 1);
        assert_eq!(d4[0].orbit(), &[2]);
    }

    #[test]
    fn component_types() {
        let e8 = RootSystem::new(LieType::new(Family::E, 8).unwrap());
        assert_eq!(
            identify_component(&e8, &[0, 1, 2, 3, 4, 5, 6]),
            (Family::E, 7)
        );
        assert_eq!(
            identify_component(&e8, &[1, 2, 3, 4, 5, 6, 7]),
            (Family::D, 7)
        );
        let f4 = RootSystem::new(LieType::new(Family::F, 4).unwrap());
        assert_eq!(identify_component(&f4, &[0, 1, 2, 3]), (Family::F, 4));
        assert_eq!(identify_component(&f4, &[0, 1, 2]), (Family::B, 3));
        assert_eq!(identify_component(&f4, &[1, 2, 3]), (Family::C, 3));
    }
}
