//! Generators and relations of the two-variable toroidal algebra, a concrete
//! model of the generators inside `tau(G, 2)`, and a bounded relation checker.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::error::{domain_err, Error, Result};
use crate::lattice::{frac, int, ExpVec, Scalar};
use crate::simple_lie::SimpleAlgebra;
use crate::toroidal::{BasisKey, Flavor, TorElt, ToroidalAlgebra};

/// Affine Cartan matrix with the bilinear form it induces (simply laced).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationData {
    matrix: Vec<Vec<i64>>,
}

impl PresentationData {
    /// Checks diagonal 2, off-diagonal entries `<= 0`, symmetry and `A (1, .., 1) = 0`.
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let size = matrix.len();
        if size < 2 || matrix.iter().any(|r| r.len() != size) {
            return domain_err("affine Cartan matrix must be square of size at least 2");
        }
        for i in 0..size {
            for j in 0..size {
                let a = matrix[i][j];
                if (i == j && a != 2) || (i != j && a > 0) || a != matrix[j][i] {
                    return domain_err(format!("entry ({i},{j}) = {a} is not that of a simply laced affine matrix"));
                }
            }
            if matrix[i].iter().sum::<i64>() != 0 {
                return domain_err(format!("row {i} does not annihilate the null vector"));
            }
        }
        Ok(PresentationData { matrix })
    }

    /// Untwisted affine matrix of `sl_{d+1}`, index 0 the affine node.
    pub fn affine_type_a(d: usize) -> Result<Self> {
        if d == 0 {
            return domain_err("rank must be at least 1");
        }
        let size = d + 1;
        let mut m = vec![vec![0i64; size]; size];
        for i in 0..size {
            m[i][i] = 2;
            if d == 1 {
                m[i][1 - i] = -2;
            } else {
                m[i][(i + 1) % size] = -1;
                m[i][(i + size - 1) % size] = -1;
            }
        }
        Self::new(m)
    }

    pub fn rank(&self) -> usize {
        self.matrix.len() - 1
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// `(alpha_i, alpha_j) = (alpha_i, alpha_j^vee) = A_ij`.
    pub fn form(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    C,
    /// `alpha_i^vee(k)`.
    Coroot { i: usize, k: i64 },
    /// `X_k(alpha_i)` or `X_k(-alpha_i)`.
    Root { i: usize, positive: bool, k: i64 },
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::C => write!(f, "C"),
            Generator::Coroot { i, k } => write!(f, "a{i}v({k})"),
            Generator::Root { i, positive, k } => write!(f, "X_{k}({}a{i})", if *positive { "+" } else { "-" }),
        }
    }
}

/// Images of all generators with modes in `-window..=window`.
#[derive(Clone, Debug)]
pub struct Assignment {
    data: PresentationData,
    algebra: ToroidalAlgebra,
    window: i64,
    images: BTreeMap<Generator, TorElt>,
}

impl Assignment {
    pub fn data(&self) -> &PresentationData {
        &self.data
    }

    pub fn algebra(&self) -> &ToroidalAlgebra {
        &self.algebra
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn images(&self) -> &BTreeMap<Generator, TorElt> {
        &self.images
    }

    pub fn image(&self, g: Generator) -> Result<&TorElt> {
        self.images.get(&g).ok_or_else(|| Error::Coverage { missing: mode_of(g).into_iter().collect() })
    }

    pub fn set(&mut self, g: Generator, x: TorElt) {
        self.images.insert(g, x);
    }

    /// Copy with one generator image negated.
    pub fn with_flipped(&self, g: Generator) -> Assignment {
        let mut out = self.clone();
        if let Some(x) = out.images.get_mut(&g) {
            *x = x.scale(&-Scalar::one());
        }
        out
    }
}

fn mode_of(g: Generator) -> Option<i64> {
    match g {
        Generator::C => None,
        Generator::Coroot { k, .. } | Generator::Root { k, .. } => Some(k),
    }
}

/// `X_k(alpha_i) = e_i t_1^k`, `X_k(-alpha_i) = -f_i t_1^k`, `alpha_i^vee(k) = h_i t_1^k`,
/// `X_k(alpha_0) = f_theta t_1^k t_2`, `X_k(-alpha_0) = -e_theta t_1^k t_2^{-1}`,
/// `alpha_0^vee(k) = -theta^vee t_1^k + t_1^k K_2`, `C = K_1`.
pub fn canonical_assignment(g: Arc<SimpleAlgebra>, window: i64) -> Result<Assignment> {
    if window < 0 {
        return domain_err("mode window must be nonnegative");
    }
    let data = PresentationData::affine_type_a(g.rank())?;
    let algebra = ToroidalAlgebra::new(g.clone(), 2, Flavor::Tau)?;
    let d = g.rank();
    let ev = |a: i64, b: i64| ExpVec::new(vec![a, b]);
    let mut images = BTreeMap::new();
    images.insert(Generator::C, algebra.basis(BasisKey::Center { i: 0, exp: ev(0, 0) })?);
    let theta_e = g.highest_root_vector();
    let theta_f = g.lowest_root_vector();
    let theta_h = g.highest_coroot();
    for k in -window..=window {
        for i in 1..=d {
            let e = g.root_index(i - 1, i);
            let f = g.root_index(i, i - 1);
            let h = g.cartan_index(i - 1);
            images.insert(Generator::Root { i, positive: true, k }, algebra.basis(BasisKey::G { g: e, exp: ev(k, 0) })?);
            images.insert(
                Generator::Root { i, positive: false, k },
                algebra.element([(BasisKey::G { g: f, exp: ev(k, 0) }, -Scalar::one())])?,
            );
            images.insert(Generator::Coroot { i, k }, algebra.basis(BasisKey::G { g: h, exp: ev(k, 0) })?);
        }
        images.insert(
            Generator::Root { i: 0, positive: true, k },
            algebra.basis(BasisKey::G { g: theta_f, exp: ev(k, 1) })?,
        );
        images.insert(
            Generator::Root { i: 0, positive: false, k },
            algebra.element([(BasisKey::G { g: theta_e, exp: ev(k, -1) }, -Scalar::one())])?,
        );
        let coroot = algebra.g_elt(&theta_h, &ev(k, 0))?.scale(&-Scalar::one());
        let center = algebra.basis(BasisKey::Center { i: 1, exp: ev(k, 0) })?;
        images.insert(Generator::Coroot { i: 0, k }, coroot.add(&center));
    }
    Ok(Assignment { data, algebra, window, images })
}

/// One failed relation instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub relation: String,
    pub lhs: TorElt,
    pub rhs: TorElt,
}

/// Checks relations (0)-(4) and the Serre relations for all modes in `-modes..=modes`.
pub fn check_relations(assign: &Assignment, modes: i64) -> Result<Vec<Violation>> {
    if modes < 0 {
        return domain_err("mode bound must be nonnegative");
    }
    let missing: Vec<i64> = (-2 * modes..=2 * modes).filter(|m| m.abs() > assign.window).collect();
    if !missing.is_empty() {
        return Err(Error::Coverage { missing });
    }
    let alg = &assign.algebra;
    let data = &assign.data;
    let d = data.rank();
    let img = |g: Generator| assign.image(g);
    let br = |x: &TorElt, y: &TorElt| alg.bracket(x, y);
    let c = img(Generator::C)?;
    let zero = alg.zero();
    let mut out = Vec::new();
    let mut expect = |label: String, lhs: TorElt, rhs: TorElt| {
        if lhs != rhs {
            out.push(Violation { relation: label, lhs, rhs });
        }
    };
    let range = || -modes..=modes;
    for i in 0..=d {
        for k in range() {
            for g in [
                Generator::Coroot { i, k },
                Generator::Root { i, positive: true, k },
                Generator::Root { i, positive: false, k },
            ] {
                expect(format!("(0) [C, {g}]"), br(c, img(g)?)?, zero.clone());
            }
        }
    }
    for i in 0..=d {
        for j in 0..=d {
            let aij = data.form(i, j);
            for k in range() {
                for m in range() {
                    let lhs = br(img(Generator::Coroot { i, k })?, img(Generator::Coroot { i: j, k: m })?)?;
                    let rhs = if k + m == 0 { c.scale(&int(k * aij)) } else { zero.clone() };
                    expect(format!("(1) i={i} j={j} k={k} m={m}"), lhs, rhs);
                    for positive in [true, false] {
                        let sign = if positive { 1 } else { -1 };
                        let lhs = br(img(Generator::Coroot { i, k })?, img(Generator::Root { i: j, positive, k: m })?)?;
                        let rhs = img(Generator::Root { i: j, positive, k: m + k })?.scale(&int(sign * aij));
                        expect(format!("(2) i={i} j={j} k={k} m={m} sign={sign}"), lhs, rhs);
                    }
                    let lhs = br(
                        img(Generator::Root { i, positive: true, k })?,
                        img(Generator::Root { i: j, positive: false, k: m })?,
                    )?;
                    let rhs = if i == j {
                        let mut r = img(Generator::Coroot { i, k: k + m })?.clone();
                        if k + m == 0 {
                            r = r.add(&c.scale(&(frac(2 * k, 1) / int(data.form(i, i)))));
                        }
                        r.scale(&-Scalar::one())
                    } else {
                        zero.clone()
                    };
                    expect(format!("(3) i={i} j={j} m={k} n={m}"), lhs, rhs);
                }
            }
        }
        for k in range() {
            for m in range() {
                for positive in [true, false] {
                    let lhs = br(img(Generator::Root { i, positive, k })?, img(Generator::Root { i, positive, k: m })?)?;
                    expect(format!("(4) i={i} m={k} n={m} positive={positive}"), lhs, zero.clone());
                }
            }
        }
    }
    for i in 0..=d {
        for j in 0..=d {
            if i == j {
                continue;
            }
            let power = 1 - data.form(j, i);
            for m in range() {
                for positive in [true, false] {
                    let x0 = img(Generator::Root { i, positive, k: 0 })?;
                    let mut y = img(Generator::Root { i: j, positive, k: m })?.clone();
                    for _ in 0..power {
                        y = br(x0, &y)?;
                    }
                    expect(format!("(serre) i={i} j={j} m={m} positive={positive}"), y, zero.clone());
                }
            }
        }
    }
    Ok(out)
}

/// Convenience: the generators whose modes lie in `-modes..=modes`.
pub fn generators(data: &PresentationData, modes: i64) -> Vec<Generator> {
    let mut out = vec![Generator::C];
    for i in 0..=data.rank() {
        for k in -modes..=modes {
            out.push(Generator::Coroot { i, k });
            out.push(Generator::Root { i, positive: true, k });
            out.push(Generator::Root { i, positive: false, k });
        }
    }
    out
}

impl Assignment {
    /// Replaces `C` by zero (a deliberately wrong model).
    pub fn with_zero_center(&self) -> Assignment {
        let mut out = self.clone();
        out.images.insert(Generator::C, self.algebra.zero());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simple_lie::build_simple;

    #[test]
    fn affine_matrices() {
        assert_eq!(PresentationData::affine_type_a(1).unwrap().matrix(), &[vec![2, -2], vec![-2, 2]]);
        let a2 = PresentationData::affine_type_a(2).unwrap();
        assert_eq!(a2.matrix()[0], vec![2, -1, -1]);
        assert!(PresentationData::new(vec![vec![2, -1], vec![-1, 2]]).is_err());
        assert!(PresentationData::new(vec![vec![2, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn sl2_relations_hold() {
        let a = canonical_assignment(build_simple(1).unwrap(), 4).unwrap();
        assert_eq!(check_relations(&a, 2).unwrap(), vec![]);
    }

    #[test]
    fn coroot_bracket_example() {
        let a = canonical_assignment(build_simple(1).unwrap(), 2).unwrap();
        let h1 = a.image(Generator::Coroot { i: 1, k: 1 }).unwrap();
        let h2 = a.image(Generator::Coroot { i: 1, k: -1 }).unwrap();
        let c = a.image(Generator::C).unwrap();
        assert_eq!(a.algebra().bracket(h1, h2).unwrap(), c.scale(&int(2)));
    }

    #[test]
    fn zero_center_is_caught() {
        let a = canonical_assignment(build_simple(1).unwrap(), 2).unwrap().with_zero_center();
        let v = check_relations(&a, 1).unwrap();
        assert!(v.iter().any(|x| x.relation.starts_with("(1)")));
    }

    #[test]
    fn window_coverage() {
        let a = canonical_assignment(build_simple(1).unwrap(), 3).unwrap();
        match check_relations(&a, 2) {
            Err(Error::Coverage { missing }) => assert_eq!(missing, vec![-4, 4]),
            other => panic!("expected coverage error, got {other:?}"),
        }
    }

    #[test]
    fn sl3_relations_hold() {
        let a = canonical_assignment(build_simple(2).unwrap(), 2).unwrap();
        assert_eq!(check_relations(&a, 1).unwrap(), vec![]);
    }

    #[test]
    fn every_sign_flip_is_detected() {
        let a = canonical_assignment(build_simple(1).unwrap(), 2).unwrap();
        for g in generators(a.data(), 1) {
            assert!(!check_relations(&a.with_flipped(g), 1).unwrap().is_empty(), "{g}");
        }
    }
}
