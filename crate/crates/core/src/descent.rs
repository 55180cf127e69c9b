//! Unramified Galois descent: a diagram automorphism `sigma` of the affine
//! Dynkin diagram fixing the affine nodes, the fixed apartment, and the
//! restricted (relative) affine root system whose walls are `sigma`-orbits
//! of the unramified walls.

use std::collections::{BTreeMap, BTreeSet};

use crate::affine_weyl::AffineWeylElement;
use crate::error::{Error, Result};
use num_traits::Zero;

use crate::linalg::{self, Matrix, Vector, Q};
use crate::root_data::{
    AffineRoot, AffineRootSystem, CartanSpec, CartanType, FiniteRootSystem,
    Letter, LevelSet, Wall,
};

/// A permutation of the unramified walls realized by a linear map of the
/// apartment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisAction {
    permutation: Vec<usize>,
    point_map: Matrix,
    dual_map: Matrix,
    order: usize,
}

impl GaloisAction {
    pub fn trivial(nr: &AffineRootSystem) -> Self {
        let n = nr.dim();
        GaloisAction {
            permutation: (0..nr.walls().len()).collect(),
            point_map: linalg::identity(n),
            dual_map: linalg::identity(n),
            order: 1,
        }
    }

    /// Builds the action permuting walls by `perm` (wall `i` goes to wall
    /// `perm[i]`). Rejects anything that is not a length-preserving diagram
    /// automorphism or that moves an affine node to a finite one.
    pub fn from_permutation(nr: &AffineRootSystem, perm: Vec<usize>) -> Result<Self> {
        let walls = nr.walls();
        let n_walls = walls.len();
        if perm.len() != n_walls {
            return Err(Error::DimensionMismatch {
                expected: n_walls,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; n_walls];
        for &p in &perm {
            if p >= n_walls || std::mem::replace(&mut seen[p], true) {
                return Err(Error::NotDiagramAutomorphism(format!("{perm:?} is not a bijection")));
            }
        }
        let finite = nr.finite();
        for i in 0..n_walls {
            for j in 0..n_walls {
                let before = finite.inner(&walls[i].root.gradient, &walls[j].root.gradient);
                let after = finite.inner(&walls[perm[i]].root.gradient, &walls[perm[j]].root.gradient);
                if before != after {
                    return Err(Error::NotDiagramAutomorphism(format!(
                        "{perm:?} does not preserve the bond between walls {i} and {j}"
                    )));
                }
            }
        }
        let n = nr.dim();
        let mut point_map = vec![linalg::zeros(n); n];
        for (i, wall) in walls.iter().enumerate() {
            let affine_node = !wall.root.level.is_zero();
            if affine_node != !walls[perm[i]].root.level.is_zero() {
                return Err(Error::NotDiagramAutomorphism(format!(
                    "{perm:?} moves an affine node; only linear actions are supported"
                )));
            }
            if affine_node {
                continue;
            }
            let from = unit_index(&wall.root.gradient)?;
            let to = unit_index(&walls[perm[i]].root.gradient)?;
            point_map[to][from] = Q::from_integer(1);
        }
        let action = GaloisAction {
            order: permutation_order(&perm),
            permutation: perm,
            dual_map: point_map.clone(),
            point_map,
        };
        for (i, wall) in walls.iter().enumerate() {
            if action.apply_root(&wall.root) != walls[action.permutation[i]].root {
                return Err(Error::NotDiagramAutomorphism(format!(
                    "wall {i} is not carried to wall {}",
                    action.permutation[i]
                )));
            }
        }
        for a in finite.roots() {
            if !finite.contains(&linalg::mat_vec(&action.dual_map, a)) {
                return Err(Error::NotDiagramAutomorphism("root set not preserved".into()));
            }
        }
        Ok(action)
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn as_element(&self) -> AffineWeylElement {
        AffineWeylElement::from_linear(self.point_map.clone(), self.dual_map.clone())
    }

    pub fn apply_point(&self, x: &[Q]) -> Vector {
        linalg::mat_vec(&self.point_map, x)
    }

    pub fn apply_root(&self, alpha: &AffineRoot) -> AffineRoot {
        AffineRoot {
            gradient: linalg::mat_vec(&self.dual_map, &alpha.gradient),
            level: alpha.level,
        }
    }

    /// `sigma w sigma^{-1} = w`.
    pub fn fixes(&self, w: &AffineWeylElement) -> bool {
        &w.conjugate_by(&self.as_element()) == w
    }

    /// Orbits of walls, each sorted, ordered by their least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.permutation.len()];
        let mut out = Vec::new();
        for start in 0..self.permutation.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                orbit.push(i);
                i = self.permutation[i];
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }
}

fn unit_index(g: &[Q]) -> Result<usize> {
    let nonzero: Vec<usize> = (0..g.len()).filter(|&i| !g[i].is_zero()).collect();
    match nonzero.as_slice() {
        [i] if g[*i] == Q::from_integer(1) => Ok(*i),
        _ => Err(Error::Inconsistent("finite wall is not a simple root".into())),
    }
}

fn permutation_order(perm: &[usize]) -> usize {
    let mut order = 1;
    for start in 0..perm.len() {
        let mut len = 1;
        let mut i = perm[start];
        while i != start {
            i = perm[i];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

/// The Cartan type and wall permutation behind a twist label such as
/// `2A3`, `2D5`, `3D4` or `2E6`. Wall 0 is the affine node.
pub fn standard_twist(label: &str) -> Result<(CartanSpec, Vec<usize>)> {
    let bad = || Error::InvalidCartanType(label.to_string());
    let mut chars = label.chars();
    let order = chars.next().and_then(|c| c.to_digit(10)).ok_or_else(bad)?;
    let base: CartanSpec = chars.as_str().parse().map_err(|_| bad())?;
    let [ty] = base.0.as_slice() else {
        return Err(bad());
    };
    let CartanType { letter, rank: n } = *ty;
    let mut perm: Vec<usize> = (0..=n).collect();
    match (order, letter) {
        (2, Letter::A) if n >= 2 => {
            for i in 1..=n {
                perm[i] = n + 1 - i;
            }
        }
        (2, Letter::D) => perm.swap(n - 1, n),
        (3, Letter::D) if n == 4 => {
            perm[1] = 3;
            perm[3] = 4;
            perm[4] = 1;
        }
        (2, Letter::E) if n == 6 => {
            perm.swap(1, 6);
            perm.swap(3, 5);
        }
        _ => return Err(bad()),
    }
    Ok((base, perm))
}

/// The unramified system together with the fixed-point data of an action.
#[derive(Clone, Debug)]
pub struct DescentData {
    nr: AffineRootSystem,
    action: GaloisAction,
    averaging: Matrix,
    restricted: AffineRootSystem,
    orbits: Vec<Vec<usize>>,
}

/// Restricts `nr` along `action`. The restricted walls are the wall orbits
/// (ordered by least index), each acting as the longest element of the
/// parabolic subgroup generated by its orbit.
pub fn build_descent(nr: AffineRootSystem, action: GaloisAction) -> Result<DescentData> {
    let n = nr.dim();
    let e = action.order();
    let mut averaging = vec![linalg::zeros(n); n];
    let mut power = linalg::identity(n);
    for _ in 0..e {
        for i in 0..n {
            for j in 0..n {
                averaging[i][j] += power[i][j] / Q::from_integer(e as i64);
            }
        }
        power = linalg::mat_mul(&action.dual_map, &power);
    }
    let mut shifted = action.point_map.clone();
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] -= Q::from_integer(1);
    }
    let fixed = linalg::nullspace(&shifted, n);

    // restricted gradients and their merged level progressions
    let mut levels: BTreeMap<Vector, BTreeSet<(Q, Q)>> = BTreeMap::new();
    for (g, ls) in nr.gradients() {
        let r = linalg::mat_vec(&averaging, g);
        if linalg::is_zero(&r) {
            return Err(Error::ConstantRestriction(linalg::fmt_vector(g)));
        }
        levels.entry(r).or_default().insert((ls.offset, ls.period));
    }
    let mut level_of: BTreeMap<Vector, LevelSet> = BTreeMap::new();
    for (g, sets) in &levels {
        let [(offset, period)] = sets.iter().copied().collect::<Vec<_>>()[..] else {
            return Err(Error::RamifiedLevels);
        };
        let ls = LevelSet { offset, period };
        if ls != LevelSet::INTEGERS {
            return Err(Error::RamifiedLevels);
        }
        level_of.insert(g.clone(), ls);
    }
    let contains = |a: &AffineRoot| level_of.get(&a.gradient).is_some_and(|ls| ls.contains(a.level));

    let orbits = action.orbits();
    let mut simple = Vec::new();
    for orbit in &orbits {
        let root = &nr.walls()[orbit[0]].root;
        if root.level.is_zero() {
            let mut g = linalg::mat_vec(&averaging, &root.gradient);
            while level_of.contains_key(&linalg::scale(Q::new(1, 2), &g)) {
                g = linalg::scale(Q::new(1, 2), &g);
            }
            simple.push(g);
        }
    }
    let finite = FiniteRootSystem::from_parts(
        nr.finite().root_gram().clone(),
        simple,
        levels.keys().cloned().collect(),
        nr.finite().dominant().clone(),
    )?;
    let level_sets: Vec<LevelSet> = finite.roots().iter().map(|g| level_of[g]).collect();

    let mut kinds: BTreeMap<bool, usize> = BTreeMap::new();
    for orbit in &orbits {
        *kinds.entry(orbit.len() == 1).or_default() += 1;
    }
    let mut walls = Vec::new();
    for orbit in &orbits {
        let first = &nr.walls()[orbit[0]].root;
        let mut root = AffineRoot::new(linalg::mat_vec(&averaging, &first.gradient), first.level)?;
        while contains(&root.halve()) {
            root = root.halve();
        }
        let reflection = longest_element(&nr, orbit)?;
        if !action.fixes(&reflection) {
            return Err(Error::Inconsistent(format!("orbit {orbit:?} gives a non-fixed element")));
        }
        let expected = AffineWeylElement::reflection(&finite.coroot(&root.gradient), &root);
        for x in fixed.iter().chain(std::iter::once(&linalg::zeros(n))) {
            if reflection.act_point(x) != expected.act_point(x) {
                return Err(Error::Inconsistent(format!(
                    "orbit {orbit:?} does not act as a reflection on the fixed apartment"
                )));
            }
        }
        let name = if action.is_trivial() {
            nr.walls()[orbit[0]].name.clone()
        } else {
            let singleton = orbit.len() == 1;
            let kind = if singleton { "fix" } else { "orb" };
            if kinds[&singleton] > 1 {
                format!("s_{kind}{}", orbit[0])
            } else {
                format!("s_{kind}")
            }
        };
        walls.push(Wall { name, root, reflection });
    }
    let restricted = AffineRootSystem::from_parts(finite, level_sets, walls, fixed)?;
    Ok(DescentData {
        nr,
        action,
        averaging,
        restricted,
        orbits,
    })
}

/// Longest element of the parabolic subgroup generated by `gens`.
fn longest_element(nr: &AffineRootSystem, gens: &[usize]) -> Result<AffineWeylElement> {
    let set: BTreeSet<usize> = gens.iter().copied().collect();
    if nr.wall_components().iter().any(|c| c.iter().all(|i| set.contains(i))) {
        return Err(Error::InfiniteParabolic(format!("{gens:?}")));
    }
    let levels = nr.ball_in(gens, usize::MAX);
    let top = levels.last().expect("ball contains the identity");
    match top.as_slice() {
        [w] => Ok(w.clone()),
        _ => Err(Error::Inconsistent("parabolic has no unique longest element".into())),
    }
}

impl DescentData {
    pub fn nr(&self) -> &AffineRootSystem {
        &self.nr
    }

    pub fn action(&self) -> &GaloisAction {
        &self.action
    }

    /// The restricted system, whose walls are indexed by orbits.
    pub fn restricted(&self) -> &AffineRootSystem {
        &self.restricted
    }

    /// Unramified walls making up each restricted wall.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn fixed_subspace(&self) -> &Matrix {
        self.restricted.apartment_basis()
    }

    /// The restriction of an unramified affine root to the fixed apartment.
    pub fn restrict_root(&self, alpha: &AffineRoot) -> Result<AffineRoot> {
        let g = linalg::mat_vec(&self.averaging, &alpha.gradient);
        if linalg::is_zero(&g) {
            return Err(Error::ConstantRestriction(alpha.to_string()));
        }
        Ok(AffineRoot {
            gradient: g,
            level: alpha.level,
        })
    }

    pub fn is_fixed(&self, w: &AffineWeylElement) -> bool {
        self.action.fixes(w)
    }

    fn check_fixed(&self, w: &AffineWeylElement) -> Result<()> {
        if w.dim() != self.nr.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.nr.dim(),
                found: w.dim(),
            });
        }
        if self.is_fixed(w) {
            Ok(())
        } else {
            Err(Error::NotSigmaFixed)
        }
    }

    /// Unramified length of a fixed element.
    pub fn length_nr(&self, w: &AffineWeylElement) -> Result<usize> {
        self.check_fixed(w)?;
        Ok(self.nr.length(w))
    }

    /// Length in the restricted system.
    pub fn length_f(&self, w: &AffineWeylElement) -> Result<usize> {
        self.check_fixed(w)?;
        Ok(self.restricted.length(w))
    }

    pub fn bruhat_leq_f(&self, w: &AffineWeylElement, v: &AffineWeylElement) -> Result<bool> {
        self.check_fixed(w)?;
        self.check_fixed(v)?;
        Ok(self.restricted.bruhat_leq(w, v))
    }

    /// Unramified lengths of the restricted simple reflections.
    pub fn d_values(&self) -> Vec<usize> {
        self.restricted
            .walls()
            .iter()
            .map(|w| self.nr.length(&w.reflection))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_weyl::CoxeterEntry;
    use crate::linalg::{frac, q};
    use crate::root_data::{build_affine_system, build_finite_product};

    fn nr(s: &str) -> AffineRootSystem {
        build_affine_system(build_finite_product(&s.parse().unwrap()).unwrap()).unwrap()
    }

    fn twisted(label: &str) -> DescentData {
        let (spec, perm) = standard_twist(label).unwrap();
        let nr = build_affine_system(build_finite_product(&spec).unwrap()).unwrap();
        let action = GaloisAction::from_permutation(&nr, perm).unwrap();
        build_descent(nr, action).unwrap()
    }

    #[test]
    fn trivial_descent_reproduces_the_system() {
        let sys = nr("C2");
        let d = build_descent(sys.clone(), GaloisAction::trivial(&sys)).unwrap();
        assert_eq!(d.restricted().wall_names(), sys.wall_names());
        assert_eq!(d.d_values(), vec![1, 1, 1]);
        for w in sys.ball(3).into_iter().flatten() {
            assert_eq!(d.length_f(&w).unwrap(), sys.length(&w));
        }
    }

    #[test]
    fn quasi_split_a2() {
        let d = twisted("2A2");
        let r = d.restricted();
        assert_eq!(r.wall_names(), vec!["s_fix", "s_orb"]);
        assert_eq!(d.orbits(), &[vec![0], vec![1, 2]]);
        assert_eq!(d.d_values(), vec![1, 3]);
        assert_eq!(r.finite().roots().len(), 4);
        let s_fix = r.simple_reflection(0);
        let s_orb = r.simple_reflection(1);
        assert_eq!(d.length_nr(s_orb).unwrap(), 3);
        assert_eq!(d.length_f(s_orb).unwrap(), 1);
        assert_eq!(d.length_nr(&s_fix.compose(s_orb)).unwrap(), 4);
        assert_eq!(r.coxeter_matrix()[0][1], CoxeterEntry::Infinite);
        assert_eq!(d.length_nr(d.nr().simple_reflection(1)), Err(Error::NotSigmaFixed));

        // restricted gradients c and 2c both carry every integer level
        let c = r.finite().simple_roots()[0].clone();
        let two_c = linalg::scale(q(2), &c);
        assert!(r.is_divisible(&AffineRoot::new(two_c.clone(), q(2)).unwrap()).unwrap());
        assert!(!r.is_divisible(&AffineRoot::new(two_c, q(1)).unwrap()).unwrap());
        assert_eq!(r.base_alcove().interior_point, vec![frac(1, 4), frac(1, 4)]);
    }

    #[test]
    fn restriction_of_roots() {
        let d = twisted("2A2");
        let a1 = AffineRoot::new(vec![q(1), q(0)], q(3)).unwrap();
        let r = d.restrict_root(&a1).unwrap();
        assert_eq!(r.gradient, vec![frac(1, 2), frac(1, 2)]);
        assert_eq!(r.level, q(3));
    }

    #[test]
    fn wall_counts_of_standard_twists() {
        for (label, walls, d) in [
            ("2A3", 3, vec![1, 1, 2]),
            ("2A4", 3, vec![1, 2, 3]),
            ("2D4", 4, vec![1, 1, 1, 2]),
            ("3D4", 3, vec![1, 1, 3]),
            ("2E6", 5, vec![1, 1, 1, 2, 2]),
        ] {
            let data = twisted(label);
            assert_eq!(data.restricted().walls().len(), walls, "{label}");
            let mut got = data.d_values();
            got.sort_unstable();
            assert_eq!(got, d, "{label}");
        }
    }

    #[test]
    fn restricted_lengths_match_word_bfs() {
        let d = twisted("2A3");
        let r = d.restricted();
        for (len, level) in r.ball(5).into_iter().enumerate() {
            for w in level {
                assert_eq!(d.length_f(&w).unwrap(), len);
                assert_eq!(r.reduced_word(&w).unwrap().len(), len);
            }
        }
    }

    #[test]
    fn bad_actions_are_rejected() {
        let sys = nr("A2");
        assert!(matches!(
            GaloisAction::from_permutation(&sys, vec![0, 1]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            GaloisAction::from_permutation(&sys, vec![0, 0, 1]),
            Err(Error::NotDiagramAutomorphism(_))
        ));
        // rotating the affine node is an automorphism, but not a linear one
        assert!(matches!(
            GaloisAction::from_permutation(&sys, vec![1, 2, 0]),
            Err(Error::NotDiagramAutomorphism(_))
        ));
        let c2 = nr("C2");
        assert!(matches!(
            GaloisAction::from_permutation(&c2, vec![0, 2, 1]),
            Err(Error::NotDiagramAutomorphism(_))
        ));
        assert!(standard_twist("2B3").is_err());
        assert!(standard_twist("3D5").is_err());
        assert!(standard_twist("2A1").is_err());
    }

    #[test]
    fn swap_of_factors() {
        let sys = nr("A1xA1");
        let action = GaloisAction::from_permutation(&sys, vec![2, 3, 0, 1]).unwrap();
        assert_eq!(action.order(), 2);
        let d = build_descent(sys, action).unwrap();
        assert_eq!(d.restricted().wall_names(), vec!["s_orb0", "s_orb1"]);
        assert_eq!(d.d_values(), vec![2, 2]);
    }
}
