//! Elements of affine Weyl groups as exact affine maps, inversion sets,
//! length, reduced words and Bruhat order.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector, Q};
use crate::root_data::{AffineRoot, AffineRootSystem};

/// An affine isometry `x -> linear * x + translation` of the apartment.
///
/// `dual` is the inverse transpose of `linear`, i.e. the action on gradients;
/// it is carried along so that inverses and root actions never need a matrix
/// inversion. Equality and hashing only look at `(linear, translation)`.
#[derive(Clone, Debug)]
pub struct AffineWeylElement {
    linear: Matrix,
    dual: Matrix,
    translation: Vector,
}

impl PartialEq for AffineWeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.translation == other.translation && self.linear == other.linear
    }
}

impl Eq for AffineWeylElement {}

impl Hash for AffineWeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.translation.hash(state);
        self.linear.hash(state);
    }
}

impl AffineWeylElement {
    pub fn identity(n: usize) -> Self {
        AffineWeylElement {
            linear: linalg::identity(n),
            dual: linalg::identity(n),
            translation: linalg::zeros(n),
        }
    }

    /// Translation by `t` (coweight coordinates).
    pub fn translation_by(t: Vector) -> Self {
        let n = t.len();
        AffineWeylElement {
            linear: linalg::identity(n),
            dual: linalg::identity(n),
            translation: t,
        }
    }

    /// `x -> x - alpha(x) * coroot`.
    pub fn reflection(coroot: &[Q], alpha: &AffineRoot) -> Self {
        let n = coroot.len();
        let mut linear = linalg::identity(n);
        let mut dual = linalg::identity(n);
        for i in 0..n {
            for j in 0..n {
                linear[i][j] -= coroot[i] * alpha.gradient[j];
                dual[i][j] -= alpha.gradient[i] * coroot[j];
            }
        }
        AffineWeylElement {
            linear,
            dual,
            translation: linalg::scale(-alpha.level, coroot),
        }
    }

    /// A linear map given with its inverse transpose.
    pub(crate) fn from_linear(linear: Matrix, dual: Matrix) -> Self {
        let n = linear.len();
        AffineWeylElement {
            linear,
            dual,
            translation: linalg::zeros(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn linear_part(&self) -> &Matrix {
        &self.linear
    }

    pub fn translation(&self) -> &Vector {
        &self.translation
    }

    pub fn is_identity(&self) -> bool {
        linalg::is_zero(&self.translation) && self.linear == linalg::identity(self.dim())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        AffineWeylElement {
            linear: linalg::mat_mul(&self.linear, &other.linear),
            dual: linalg::mat_mul(&self.dual, &other.dual),
            translation: linalg::add(&linalg::mat_vec(&self.linear, &other.translation), &self.translation),
        }
    }

    pub fn checked_compose(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Self {
        let linear = linalg::transpose(&self.dual);
        let translation = linalg::neg(&linalg::mat_vec(&linear, &self.translation));
        AffineWeylElement {
            dual: linalg::transpose(&self.linear),
            linear,
            translation,
        }
    }

    pub fn act_point(&self, x: &[Q]) -> Vector {
        linalg::add(&linalg::mat_vec(&self.linear, x), &self.translation)
    }

    /// `(w·alpha)(x) = alpha(w^{-1} x)`.
    pub fn act_root(&self, alpha: &AffineRoot) -> AffineRoot {
        let gradient = linalg::mat_vec(&self.dual, &alpha.gradient);
        let level = alpha.level - linalg::dot(&gradient, &self.translation);
        AffineRoot { gradient, level }
    }

    /// `g ∘ self ∘ g^{-1}`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.compose(self).compose(&g.inverse())
    }
}

impl std::ops::Mul for &AffineWeylElement {
    type Output = AffineWeylElement;

    fn mul(self, rhs: Self) -> AffineWeylElement {
        self.compose(rhs)
    }
}

impl fmt::Display for AffineWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.linear.iter().map(|r| linalg::fmt_vector(r)).collect();
        write!(f, "t{} · [{}]", linalg::fmt_vector(&self.translation), rows.join(";"))
    }
}

/// Entry of a Coxeter matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoxeterEntry {
    Finite(u32),
    Infinite,
}

impl fmt::Display for CoxeterEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterEntry::Finite(m) => write!(f, "{m}"),
            CoxeterEntry::Infinite => write!(f, "inf"),
        }
    }
}

/// Powers of `s s'` checked before declaring infinite order; every finite
/// entry of an affine Coxeter matrix is at most 6.
const COXETER_POWER_BOUND: u32 = 30;

impl AffineRootSystem {
    pub fn identity(&self) -> AffineWeylElement {
        AffineWeylElement::identity(self.dim())
    }

    /// Reflection across the hyperplane `alpha = 0`.
    pub fn reflect(&self, alpha: &AffineRoot) -> Result<AffineWeylElement> {
        if !self.finite().contains(&alpha.gradient) {
            return Err(Error::NotARoot(alpha.to_string()));
        }
        Ok(AffineWeylElement::reflection(
            &self.finite().coroot(&alpha.gradient),
            alpha,
        ))
    }

    pub fn simple_reflection(&self, i: usize) -> &AffineWeylElement {
        &self.walls()[i].reflection
    }

    pub fn wall_index(&self, name: &str) -> Result<usize> {
        self.walls()
            .iter()
            .position(|w| w.name == name)
            .ok_or_else(|| Error::UnknownWall(name.to_string()))
    }

    /// Product `s_{i1} s_{i2} ... s_{ik}`.
    pub fn word_element(&self, word: &[usize]) -> Result<AffineWeylElement> {
        let mut w = self.identity();
        for &i in word {
            if i >= self.walls().len() {
                return Err(Error::UnknownWall(format!("#{i}")));
            }
            w = w.compose(self.simple_reflection(i));
        }
        Ok(w)
    }

    pub fn act_root(&self, w: &AffineWeylElement, alpha: &AffineRoot) -> AffineRoot {
        w.act_root(alpha)
    }

    fn witness(&self) -> &Vector {
        &self.base_alcove().interior_point
    }

    /// Sign of `alpha` on the base alcove, for roots already known to be in
    /// the system (affine roots never vanish on an alcove interior).
    fn positive(&self, alpha: &AffineRoot) -> bool {
        linalg::dot(&alpha.gradient, self.witness()) + alpha.level > Q::zero()
    }

    /// `R(w) = { alpha > 0 : w alpha < 0 }`, enumerated per gradient as the
    /// admissible levels in an open interval.
    pub fn inversion_set(&self, w: &AffineWeylElement) -> BTreeSet<AffineRoot> {
        let x = self.witness();
        let y = w.inverse().act_point(x);
        let mut out = BTreeSet::new();
        for (g, ls) in self.gradients() {
            let lo = -linalg::dot(g, x);
            let hi = -linalg::dot(g, &y);
            for k in ls.levels_between(lo, hi) {
                out.insert(AffineRoot {
                    gradient: g.clone(),
                    level: k,
                });
            }
        }
        out
    }

    /// Number of non-divisible roots in the inversion set.
    pub fn length(&self, w: &AffineWeylElement) -> usize {
        self.inversion_set(w)
            .iter()
            .filter(|a| !self.contains(&a.halve()))
            .count()
    }

    /// `l(w s_i) < l(w)`, i.e. `w alpha_i < 0`.
    pub fn is_right_descent(&self, w: &AffineWeylElement, i: usize) -> bool {
        !self.positive(&w.act_root(&self.walls()[i].root))
    }

    /// `l(s_i w) < l(w)`, i.e. `w^{-1} alpha_i < 0`.
    pub fn is_left_descent(&self, w: &AffineWeylElement, i: usize) -> bool {
        !self.positive(&w.inverse().act_root(&self.walls()[i].root))
    }

    pub fn right_descents(&self, w: &AffineWeylElement) -> Vec<usize> {
        (0..self.walls().len()).filter(|&i| self.is_right_descent(w, i)).collect()
    }

    pub fn left_descents(&self, w: &AffineWeylElement) -> Vec<usize> {
        (0..self.walls().len()).filter(|&i| self.is_left_descent(w, i)).collect()
    }

    /// Strips right descents (lowest wall index first) until none remain.
    /// Returns `(tau, word)` with `w = tau * s_word` and `tau` stabilizing
    /// the base alcove.
    pub fn descent_reduce(&self, w: &AffineWeylElement) -> (AffineWeylElement, Vec<usize>) {
        let mut w = w.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.walls().len()).find(|&i| self.is_right_descent(&w, i)) {
            w = w.compose(self.simple_reflection(i));
            word.push(i);
        }
        word.reverse();
        (w, word)
    }

    /// A reduced word for an element of the affine Weyl group.
    pub fn reduced_word(&self, w: &AffineWeylElement) -> Result<Vec<usize>> {
        let (tau, word) = self.descent_reduce(w);
        if !tau.is_identity() {
            return Err(Error::NotInAffineWeyl);
        }
        Ok(word)
    }

    /// Bruhat order by the descent recursion: for a right descent `s` of `v`,
    /// `w <= v` iff `min(w, ws) <= vs`.
    pub fn bruhat_leq(&self, w: &AffineWeylElement, v: &AffineWeylElement) -> bool {
        let mut w = w.clone();
        let mut v = v.clone();
        loop {
            match (0..self.walls().len()).find(|&i| self.is_right_descent(&v, i)) {
                Some(i) => {
                    let s = self.simple_reflection(i);
                    v = v.compose(s);
                    if self.is_right_descent(&w, i) {
                        w = w.compose(s);
                    }
                }
                None => return w == v,
            }
        }
    }

    /// Orders of products of pairs of simple reflections.
    pub fn coxeter_matrix(&self) -> Vec<Vec<CoxeterEntry>> {
        let n = self.walls().len();
        let id = self.identity();
        let mut m = vec![vec![CoxeterEntry::Finite(1); n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let p = self.simple_reflection(i).compose(self.simple_reflection(j));
                let mut acc = p.clone();
                let mut entry = CoxeterEntry::Infinite;
                for k in 1..=COXETER_POWER_BOUND {
                    if acc == id {
                        entry = CoxeterEntry::Finite(k);
                        break;
                    }
                    acc = acc.compose(&p);
                }
                m[i][j] = entry;
            }
        }
        m
    }

    /// All elements of length `<= max_len`, grouped by length, by
    /// breadth-first search in the Cayley graph (right multiplication by
    /// simple reflections). Only uses multiplication and equality.
    pub fn ball(&self, max_len: usize) -> Vec<Vec<AffineWeylElement>> {
        self.ball_in(&(0..self.walls().len()).collect::<Vec<_>>(), max_len)
    }

    /// As [`ball`](Self::ball) inside the subgroup generated by `gens`.
    pub fn ball_in(&self, gens: &[usize], max_len: usize) -> Vec<Vec<AffineWeylElement>> {
        let id = self.identity();
        let mut seen: HashSet<AffineWeylElement> = HashSet::from([id.clone()]);
        let mut levels = vec![vec![id]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in levels.last().unwrap() {
                for &i in gens {
                    let ws = w.compose(self.simple_reflection(i));
                    if seen.insert(ws.clone()) {
                        next.push(ws);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next);
        }
        levels
    }
}

/// Elements with their BFS distance from the identity.
pub fn flatten_ball(levels: Vec<Vec<AffineWeylElement>>) -> Vec<(AffineWeylElement, usize)> {
    levels
        .into_iter()
        .enumerate()
        .flat_map(|(l, ws)| ws.into_iter().map(move |w| (w, l)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, q};
    use crate::root_data::{build_affine_system, build_finite_product};

    fn affine(s: &str) -> AffineRootSystem {
        build_affine_system(build_finite_product(&s.parse().unwrap()).unwrap()).unwrap()
    }

    fn root(g: &[i64], k: i64) -> AffineRoot {
        AffineRoot::new(g.iter().map(|&x| q(x)).collect(), q(k)).unwrap()
    }

    #[test]
    fn reflections_in_affine_a1() {
        let sys = affine("A1");
        let s1 = sys.reflect(&root(&[1], 0)).unwrap();
        assert_eq!(s1.translation(), &vec![q(0)]);
        assert_eq!(s1.linear_part(), &vec![vec![q(-1)]]);
        let s0 = sys.reflect(&root(&[-1], 1)).unwrap();
        // coroot of a is 2 in coweight coordinates
        assert_eq!(s0.translation(), &vec![q(2)]);
        assert_eq!(s0.linear_part(), &vec![vec![q(-1)]]);
        // two-point check of x -> x - alpha(x) a^vee
        for x in [q(0), frac(1, 3)] {
            let expected = x - (q(1) - x) * q(-2);
            assert_eq!(s0.act_point(&[x]), vec![expected]);
        }
        assert!(s0.compose(&s0).is_identity());
        assert!(s1.compose(&s1).is_identity());
        assert!(sys.reflect(&root(&[2], 0)).is_err());
    }

    #[test]
    fn reflection_fixes_its_wall() {
        let sys = affine("G2");
        for (g, _) in sys.gradients() {
            let alpha = AffineRoot::new(g.clone(), q(1)).unwrap();
            let s = sys.reflect(&alpha).unwrap();
            assert!(s.compose(&s).is_identity());
            // a point on the wall: x = -k/<a, a^vee> * a^vee
            let cv = sys.finite().coroot(g);
            let x = linalg::scale(-alpha.level / linalg::dot(g, &cv), &cv);
            assert_eq!(alpha.evaluate(&x).unwrap(), q(0));
            assert_eq!(s.act_point(&x), x);
        }
    }

    #[test]
    fn products_in_affine_a1() {
        let sys = affine("A1");
        let (s0, s1) = (sys.simple_reflection(0), sys.simple_reflection(1));
        // composition oracle: s0(s1(x)) = -(-x) + 2
        assert_eq!(s0 * s1, AffineWeylElement::translation_by(vec![q(2)]));
        assert_eq!(s1 * s0, AffineWeylElement::translation_by(vec![q(-2)]));
        let w = &(s0 * s1) * s0;
        assert!((&w * &w.inverse()).is_identity());
        assert_eq!(&sys.identity() * &w, w);
        for x in [q(0), frac(1, 2), frac(-7, 5)] {
            assert_eq!(w.act_point(&[x]), s0.act_point(&s1.act_point(&s0.act_point(&[x]))));
        }
        assert!(sys.identity().checked_compose(&AffineWeylElement::identity(2)).is_err());
    }

    #[test]
    fn root_action_matches_pullback() {
        let sys = affine("A1");
        let s1 = sys.simple_reflection(1);
        assert_eq!(s1.act_root(&root(&[1], 0)), root(&[-1], 0));
        assert_eq!(sys.identity().act_root(&root(&[1], 3)), root(&[1], 3));
        let t = AffineWeylElement::translation_by(vec![q(2)]);
        let moved = t.act_root(&root(&[1], 0));
        assert_eq!(moved, root(&[1], -2));
        for x in [q(0), q(5)] {
            let lhs = moved.evaluate(&[x]).unwrap();
            let rhs = root(&[1], 0).evaluate(&t.inverse().act_point(&[x])).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn inversion_sets_in_affine_a1() {
        let sys = affine("A1");
        assert!(sys.inversion_set(&sys.identity()).is_empty());
        for i in 0..2 {
            let s = sys.simple_reflection(i);
            let inv = sys.inversion_set(s);
            assert_eq!(inv, BTreeSet::from([sys.walls()[i].root.clone()]));
        }
        let t = AffineWeylElement::translation_by(vec![q(2)]);
        let inv = sys.inversion_set(&t);
        assert_eq!(inv, BTreeSet::from([root(&[1], 0), root(&[1], 1)]));
        // brute force over |k| <= 3
        let brute: BTreeSet<AffineRoot> = [-1i64, 1]
            .into_iter()
            .flat_map(|g| (-3..=3).map(move |k| root(&[g], k)))
            .filter(|a| sys.is_positive(a).unwrap() && !sys.is_positive(&t.act_root(a)).unwrap())
            .collect();
        assert_eq!(inv, brute);
    }

    #[test]
    fn lengths_and_words_in_affine_a1() {
        let sys = affine("A1");
        assert_eq!(sys.length(&sys.identity()), 0);
        assert_eq!(sys.length(sys.simple_reflection(0)), 1);
        let w = sys.word_element(&[0, 1, 0]).unwrap();
        assert_eq!(sys.length(&w), 3);
        assert_eq!(sys.reduced_word(&w).unwrap(), vec![0, 1, 0]);
        assert_eq!(sys.reduced_word(&sys.identity()).unwrap(), Vec::<usize>::new());
        assert_eq!(sys.reduced_word(sys.simple_reflection(0)).unwrap(), vec![0]);
        let t = AffineWeylElement::translation_by(vec![q(2)]);
        let word = sys.reduced_word(&t).unwrap();
        assert_eq!(word.len(), 2);
        assert_eq!(sys.word_element(&word).unwrap(), t);
        // translation by a coweight is not in W_aff
        let omega = AffineWeylElement::translation_by(vec![q(1)]);
        assert_eq!(sys.reduced_word(&omega), Err(Error::NotInAffineWeyl));
    }

    #[test]
    fn bruhat_examples() {
        let sys = affine("A1");
        let e = |w: &[usize]| sys.word_element(w).unwrap();
        assert!(sys.bruhat_leq(&e(&[]), &e(&[1, 0])));
        assert!(sys.bruhat_leq(&e(&[1]), &e(&[1, 0])));
        assert!(!sys.bruhat_leq(&e(&[0, 1]), &e(&[1, 0])));
        assert!(sys.bruhat_leq(&e(&[0, 1]), &e(&[1, 0, 1])));
        assert!(!sys.bruhat_leq(&e(&[1, 0]), &e(&[1])));
    }

    #[test]
    fn coxeter_matrices() {
        use CoxeterEntry::*;
        let a1 = affine("A1").coxeter_matrix();
        assert_eq!(a1, vec![vec![Finite(1), Infinite], vec![Infinite, Finite(1)]]);
        let a2 = affine("A2").coxeter_matrix();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(a2[i][j], if i == j { Finite(1) } else { Finite(3) });
            }
        }
        // affine C2: s0 - s1 = s2 with double bonds at both ends
        let c2 = affine("C2").coxeter_matrix();
        assert_eq!(c2[0][1], Finite(4));
        assert_eq!(c2[1][2], Finite(4));
        assert_eq!(c2[0][2], Finite(2));
        // affine G2: s0 - s2 triple s1 (Bourbaki: alpha1 short)
        let g2 = affine("G2").coxeter_matrix();
        assert_eq!(g2[1][2], Finite(6));
        assert_eq!(g2[0][2], Finite(3));
        assert_eq!(g2[0][1], Finite(2));
    }

    #[test]
    fn ball_sizes_in_affine_a2() {
        // 1 + 3 + 6 + 9 + ... is the affine A2 growth series
        let sizes: Vec<usize> = affine("A2").ball(5).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 6, 9, 12, 15]);
        let a1: Vec<usize> = affine("A1").ball(4).iter().map(Vec::len).collect();
        assert_eq!(a1, vec![1, 2, 2, 2, 2]);
        // a finite parabolic closes up
        let par = affine("A2").ball_in(&[1, 2], 10);
        assert_eq!(par.iter().map(Vec::len).sum::<usize>(), 6);
    }
}
