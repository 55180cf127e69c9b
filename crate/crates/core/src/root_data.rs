//! Finite and affine root systems, the apartment, alcoves and positivity.
//!
//! Coordinates: a point `x` of the apartment is stored by its values
//! `x_i = <alpha_i, x>` on the simple roots (fundamental coweight
//! coordinates) and a root gradient by its coefficients in the simple roots.
//! Evaluating a gradient at a point is then a plain dot product, and every
//! element of an unramified affine Weyl group has integer coordinates.
//!
//! The Weyl-invariant inner product on gradients is normalized so that long
//! roots have squared length 2.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::affine_weyl::AffineWeylElement;
use crate::error::{Error, Result};
use crate::linalg::{self, frac, q, Matrix, Vector, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Letter {
    fn from_char(c: char) -> Option<Self> {
        Some(match c {
            'A' => Letter::A,
            'B' => Letter::B,
            'C' => Letter::C,
            'D' => Letter::D,
            'E' => Letter::E,
            'F' => Letter::F,
            'G' => Letter::G,
            _ => return None,
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// An irreducible Cartan type such as `A2` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub letter: Letter,
    pub rank: usize,
}

impl CartanType {
    pub fn new(letter: Letter, rank: usize) -> Result<Self> {
        let ok = match letter {
            Letter::A => rank >= 1,
            Letter::B | Letter::C => rank >= 2,
            Letter::D => rank >= 4,
            Letter::E => (6..=8).contains(&rank),
            Letter::F => rank == 4,
            Letter::G => rank == 2,
        };
        if ok {
            Ok(CartanType { letter, rank })
        } else {
            Err(Error::InvalidCartanType(format!("{letter}{rank}")))
        }
    }

    /// Squared lengths of the simple roots (Bourbaki numbering).
    fn squared_lengths(&self) -> Vec<Q> {
        let n = self.rank;
        match self.letter {
            Letter::A | Letter::D | Letter::E => vec![q(2); n],
            Letter::B => (0..n).map(|i| if i + 1 < n { q(2) } else { q(1) }).collect(),
            Letter::C => (0..n).map(|i| if i + 1 < n { q(1) } else { q(2) }).collect(),
            Letter::F => vec![q(2), q(2), q(1), q(1)],
            Letter::G => vec![frac(2, 3), q(2)],
        }
    }

    /// Dynkin diagram edges, 0-based Bourbaki numbering.
    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        let chain = |k: usize| (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self.letter {
            Letter::A | Letter::B | Letter::C | Letter::F | Letter::G => chain(n),
            Letter::D => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1));
                e
            }
            Letter::E => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// Gram matrix of the simple roots. Adjacent simple roots pair to minus
    /// half the longer squared length.
    fn gram(&self) -> Matrix {
        let n = self.rank;
        let lengths = self.squared_lengths();
        let mut g = vec![linalg::zeros(n); n];
        for (i, l) in lengths.iter().enumerate() {
            g[i][i] = *l;
        }
        for (i, j) in self.edges() {
            let p = -lengths[i].max(lengths[j]) / q(2);
            g[i][j] = p;
            g[j][i] = p;
        }
        g
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

/// A product of irreducible types, written `A1xA1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanSpec(pub Vec<CartanType>);

impl CartanSpec {
    pub fn rank(&self) -> usize {
        self.0.iter().map(|t| t.rank).sum()
    }
}

impl FromStr for CartanSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for piece in s.split('x') {
            let mut chars = piece.chars();
            let letter = chars
                .next()
                .and_then(Letter::from_char)
                .ok_or_else(|| Error::InvalidCartanType(piece.to_string()))?;
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::InvalidCartanType(piece.to_string()))?;
            parts.push(CartanType::new(letter, rank)?);
        }
        Ok(CartanSpec(parts))
    }
}

impl fmt::Display for CartanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// A finite (possibly non-reduced) root system living in a fixed ambient
/// space. Gradients are row vectors in simple-root coordinates of the
/// ambient unramified system; points are in coweight coordinates.
#[derive(Clone, Debug)]
pub struct FiniteRootSystem {
    root_gram: Matrix,
    simple_roots: Vec<Vector>,
    roots: Vec<Vector>,
    cartan: Vec<Vec<i64>>,
    highest_roots: Vec<Vector>,
    components: Vec<Vec<usize>>,
    dominant: Vector,
}

impl FiniteRootSystem {
    /// Assembles a root system from its ambient inner product, a base, the
    /// full root list, and a point on which every positive root is positive.
    pub(crate) fn from_parts(
        root_gram: Matrix,
        simple_roots: Vec<Vector>,
        mut roots: Vec<Vector>,
        dominant: Vector,
    ) -> Result<Self> {
        roots.sort_by_cached_key(|a| {
            let h = linalg::dot(a, &dominant);
            (!h.is_positive(), h.abs(), a.clone())
        });
        let mut sys = FiniteRootSystem {
            root_gram,
            simple_roots,
            roots,
            cartan: Vec::new(),
            highest_roots: Vec::new(),
            components: Vec::new(),
            dominant,
        };
        let r = sys.simple_roots.len();
        let mut cartan = vec![vec![0i64; r]; r];
        for i in 0..r {
            let cv = sys.coroot(&sys.simple_roots[i]);
            for j in 0..r {
                let p = linalg::dot(&sys.simple_roots[j], &cv);
                if !p.is_integer() {
                    return Err(Error::Inconsistent(format!(
                        "non-integral Cartan entry ({i},{j}) = {p}"
                    )));
                }
                cartan[i][j] = p.to_integer();
            }
        }
        sys.cartan = cartan;

        // connected components of the Dynkin graph
        let mut seen = vec![false; r];
        for start in 0..r {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for j in 0..r {
                    if !seen[j] && sys.cartan[i][j] != 0 {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            sys.components.push(comp);
        }

        let coords: Vec<Vector> = sys
            .roots
            .iter()
            .map(|a| sys.simple_coordinates(a))
            .collect::<Result<_>>()?;
        for comp in &sys.components {
            let best = sys
                .roots
                .iter()
                .zip(&coords)
                .filter(|(a, c)| {
                    sys.is_positive_root(a)
                        && c.iter().enumerate().all(|(i, x)| x.is_zero() || comp.contains(&i))
                })
                .max_by_key(|(a, _)| linalg::dot(a, &sys.dominant))
                .map(|(a, _)| a.clone())
                .ok_or_else(|| Error::Inconsistent("empty component".into()))?;
            sys.highest_roots.push(best);
        }
        Ok(sys)
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.root_gram.len()
    }

    pub fn simple_roots(&self) -> &[Vector] {
        &self.simple_roots
    }

    /// All roots, positive ones first (by increasing height).
    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    /// `cartan[i][j] = <alpha_i^vee, alpha_j>`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn highest_roots(&self) -> &[Vector] {
        &self.highest_roots
    }

    /// Simple-root indices of each irreducible component.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn inner(&self, a: &[Q], b: &[Q]) -> Q {
        linalg::dot(a, &linalg::mat_vec(&self.root_gram, b))
    }

    pub fn root_gram(&self) -> &Matrix {
        &self.root_gram
    }

    /// The coroot `2a/(a,a)` as a point of the apartment.
    pub fn coroot(&self, a: &[Q]) -> Vector {
        let ga = linalg::mat_vec(&self.root_gram, a);
        let n = linalg::dot(a, &ga);
        linalg::scale(q(2) / n, &ga)
    }

    /// `b - <b, a^vee> a`.
    pub fn reflect_root(&self, a: &[Q], b: &[Q]) -> Vector {
        let c = linalg::dot(b, &self.coroot(a));
        linalg::sub(b, &linalg::scale(c, a))
    }

    /// A point on which every positive root is positive.
    pub(crate) fn dominant(&self) -> &Vector {
        &self.dominant
    }

    pub fn is_positive_root(&self, a: &[Q]) -> bool {
        linalg::dot(a, &self.dominant).is_positive()
    }

    pub fn contains(&self, a: &[Q]) -> bool {
        self.roots.iter().any(|r| r.as_slice() == a)
    }

    /// Coefficients of `a` in the simple roots.
    pub fn simple_coordinates(&self, a: &[Q]) -> Result<Vector> {
        let m = linalg::transpose(&self.simple_roots);
        linalg::solve_unique(&m, a)
            .ok_or_else(|| Error::Inconsistent("vector outside the root span".into()))
    }

    /// Checks the structural invariants: closure under reflections,
    /// `<a^vee, a> = 2`, and a Cartan diagonal of 2.
    pub fn validate(&self) -> Result<()> {
        for a in &self.roots {
            if linalg::dot(a, &self.coroot(a)) != q(2) {
                return Err(Error::Inconsistent("<a^vee, a> != 2".into()));
            }
            for b in &self.roots {
                if !self.contains(&self.reflect_root(a, b)) {
                    return Err(Error::Inconsistent("root set not reflection-closed".into()));
                }
            }
        }
        if (0..self.rank()).any(|i| self.cartan[i][i] != 2) {
            return Err(Error::Inconsistent("Cartan diagonal".into()));
        }
        Ok(())
    }
}

/// Builds the reduced root system of an irreducible type by closing the
/// simple roots under simple reflections.
pub fn build_finite_system(letter: Letter, rank: usize) -> Result<FiniteRootSystem> {
    build_finite_product(&CartanSpec(vec![CartanType::new(letter, rank)?]))
}

/// Same as [`build_finite_system`] for a product of types (block diagonal).
pub fn build_finite_product(spec: &CartanSpec) -> Result<FiniteRootSystem> {
    let n = spec.rank();
    let mut gram = vec![linalg::zeros(n); n];
    let mut off = 0;
    for t in &spec.0 {
        let g = t.gram();
        for i in 0..t.rank {
            for j in 0..t.rank {
                gram[off + i][off + j] = g[i][j];
            }
        }
        off += t.rank;
    }
    let simple: Vec<Vector> = (0..n).map(|i| linalg::unit(n, i)).collect();

    let coroot = |a: &Vector| {
        let ga = linalg::mat_vec(&gram, a);
        let nn = linalg::dot(a, &ga);
        linalg::scale(q(2) / nn, &ga)
    };
    let simple_coroots: Vec<Vector> = simple.iter().map(coroot).collect();
    let mut seen: BTreeSet<Vector> = simple.iter().cloned().collect();
    let mut frontier: Vec<Vector> = simple.clone();
    while let Some(b) = frontier.pop() {
        for (a, av) in simple.iter().zip(&simple_coroots) {
            let c = linalg::dot(&b, av);
            let r = linalg::sub(&b, &linalg::scale(c, a));
            if seen.insert(r.clone()) {
                frontier.push(r);
            }
        }
    }
    FiniteRootSystem::from_parts(gram, simple, seen.into_iter().collect(), vec![Q::one(); n])
}

/// An affine function `x -> <gradient, x> + level` on the apartment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub gradient: Vector,
    pub level: Q,
}

impl AffineRoot {
    pub fn new(gradient: Vector, level: Q) -> Result<Self> {
        if linalg::is_zero(&gradient) {
            return Err(Error::ZeroGradient);
        }
        Ok(AffineRoot { gradient, level })
    }

    pub fn evaluate(&self, x: &[Q]) -> Result<Q> {
        if x.len() != self.gradient.len() {
            return Err(Error::DimensionMismatch {
                expected: self.gradient.len(),
                found: x.len(),
            });
        }
        Ok(linalg::dot(&self.gradient, x) + self.level)
    }

    pub fn negate(&self) -> Self {
        AffineRoot {
            gradient: linalg::neg(&self.gradient),
            level: -self.level,
        }
    }

    pub fn halve(&self) -> Self {
        let h = frac(1, 2);
        AffineRoot {
            gradient: linalg::scale(h, &self.gradient),
            level: self.level * h,
        }
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            linalg::fmt_vector(&self.gradient),
            linalg::fmt_rational(&self.level)
        )
    }
}

/// Levels `offset + period * Z` admissible for one gradient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LevelSet {
    pub offset: Q,
    pub period: Q,
}

impl LevelSet {
    pub const INTEGERS: LevelSet = LevelSet {
        offset: Q::new_raw(0, 1),
        period: Q::new_raw(1, 1),
    };

    pub fn contains(&self, k: Q) -> bool {
        ((k - self.offset) / self.period).is_integer()
    }

    /// Admissible levels strictly between `lo` and `hi`, increasing.
    pub fn levels_between(&self, lo: Q, hi: Q) -> Vec<Q> {
        let mut n = ((lo - self.offset) / self.period).floor() + Q::one();
        let mut out = Vec::new();
        loop {
            let k = self.offset + n * self.period;
            if k >= hi {
                break;
            }
            if k > lo {
                out.push(k);
            }
            n += Q::one();
        }
        out
    }
}

/// One wall of the base alcove together with its simple reflection.
#[derive(Clone, Debug)]
pub struct Wall {
    pub name: String,
    /// The non-divisible positive root vanishing on the wall.
    pub root: AffineRoot,
    pub reflection: AffineWeylElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alcove {
    pub bounding_roots: Vec<AffineRoot>,
    pub interior_point: Vector,
}

/// An affine root system: gradients with their level progressions, and the
/// walls of a chosen base alcove.
#[derive(Clone, Debug)]
pub struct AffineRootSystem {
    finite: FiniteRootSystem,
    level_sets: Vec<LevelSet>,
    index: HashMap<Vector, usize>,
    walls: Vec<Wall>,
    apartment: Matrix,
    alcove: Alcove,
    wall_components: Vec<Vec<usize>>,
}

impl AffineRootSystem {
    /// Assembles a system from explicit walls. `apartment` is a row basis of
    /// the subspace where points live.
    pub(crate) fn from_parts(
        finite: FiniteRootSystem,
        level_sets: Vec<LevelSet>,
        walls: Vec<Wall>,
        apartment: Matrix,
    ) -> Result<Self> {
        let index = finite
            .roots()
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        let wall_components = wall_components(&finite, &walls);
        let interior_point = barycenter(&walls, &wall_components, &apartment)?;
        let alcove = Alcove {
            bounding_roots: walls.iter().map(|w| w.root.clone()).collect(),
            interior_point,
        };
        let sys = AffineRootSystem {
            finite,
            level_sets,
            index,
            walls,
            apartment,
            alcove,
            wall_components,
        };
        for w in &sys.walls {
            if !sys.contains(&w.root) || !sys.is_positive(&w.root)? {
                return Err(Error::Inconsistent(format!("bad wall {}", w.name)));
            }
        }
        Ok(sys)
    }

    pub fn finite(&self) -> &FiniteRootSystem {
        &self.finite
    }

    pub fn dim(&self) -> usize {
        self.finite.ambient_dim()
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn wall_names(&self) -> Vec<String> {
        self.walls.iter().map(|w| w.name.clone()).collect()
    }

    /// Wall indices grouped by irreducible affine component.
    pub fn wall_components(&self) -> &[Vec<usize>] {
        &self.wall_components
    }

    pub fn simple_affine_roots(&self) -> Vec<AffineRoot> {
        self.alcove.bounding_roots.clone()
    }

    pub fn apartment_basis(&self) -> &Matrix {
        &self.apartment
    }

    pub fn level_set(&self, gradient: &[Q]) -> Option<LevelSet> {
        self.index.get(gradient).map(|&i| self.level_sets[i])
    }

    /// Gradients paired with their level progressions.
    pub fn gradients(&self) -> impl Iterator<Item = (&Vector, LevelSet)> {
        self.finite.roots().iter().zip(self.level_sets.iter().copied())
    }

    pub fn contains(&self, alpha: &AffineRoot) -> bool {
        self.level_set(&alpha.gradient)
            .is_some_and(|ls| ls.contains(alpha.level))
    }

    /// True iff `alpha/2` is also an affine root.
    pub fn is_divisible(&self, alpha: &AffineRoot) -> Result<bool> {
        if !self.contains(alpha) {
            return Err(Error::NotARoot(alpha.to_string()));
        }
        Ok(self.contains(&alpha.halve()))
    }

    pub fn base_alcove(&self) -> &Alcove {
        &self.alcove
    }

    /// Sign of `alpha` on the base alcove.
    pub fn is_positive(&self, alpha: &AffineRoot) -> Result<bool> {
        is_positive(alpha, &self.alcove)
    }
}

pub fn evaluate(alpha: &AffineRoot, x: &[Q]) -> Result<Q> {
    alpha.evaluate(x)
}

pub fn is_positive(alpha: &AffineRoot, alcove: &Alcove) -> Result<bool> {
    let v = alpha.evaluate(&alcove.interior_point)?;
    if v.is_zero() {
        return Err(Error::CorruptedAlcove(alpha.to_string()));
    }
    Ok(v.is_positive())
}

/// The untwisted affine system: every gradient carries all integer levels,
/// and the walls are the simple roots plus `(-theta, 1)` for each highest
/// root. Walls are listed component by component, affine wall first, so an
/// irreducible type has `s0` as its affine wall.
pub fn build_affine_system(finite: FiniteRootSystem) -> Result<AffineRootSystem> {
    let n = finite.ambient_dim();
    let mut walls = Vec::new();
    for (c, comp) in finite.components().iter().enumerate() {
        let theta = &finite.highest_roots()[c];
        let mut roots = vec![AffineRoot::new(linalg::neg(theta), Q::one())?];
        for &i in comp {
            roots.push(AffineRoot::new(finite.simple_roots()[i].clone(), Q::zero())?);
        }
        for root in roots {
            let reflection = AffineWeylElement::reflection(&finite.coroot(&root.gradient), &root);
            let name = format!("s{}", walls.len());
            walls.push(Wall { name, root, reflection });
        }
    }
    let level_sets = vec![LevelSet::INTEGERS; finite.roots().len()];
    AffineRootSystem::from_parts(finite, level_sets, walls, linalg::identity(n))
}

pub fn base_alcove(sys: &AffineRootSystem) -> Alcove {
    sys.base_alcove().clone()
}

fn wall_components(finite: &FiniteRootSystem, walls: &[Wall]) -> Vec<Vec<usize>> {
    let n = walls.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && !finite.inner(&walls[i].root.gradient, &walls[j].root.gradient).is_zero() {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Barycenter of the product of simplices cut out by the walls.
///
/// Within one component the wall gradients satisfy a single positive
/// relation `sum m_j a_j = 0`, so `sum m_j f_j` is the constant
/// `K = sum m_j k_j`, and at the barycenter wall `j` takes the value
/// `K / (n m_j)` where `n` is the number of walls in the component.
fn barycenter(walls: &[Wall], components: &[Vec<usize>], apartment: &Matrix) -> Result<Vector> {
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for comp in components {
        let cols: Matrix = comp.iter().map(|&j| walls[j].root.gradient.clone()).collect();
        let relation = linalg::nullspace(&linalg::transpose(&cols), comp.len());
        if relation.len() != 1 {
            return Err(Error::Inconsistent(
                "walls of a component must satisfy exactly one relation".into(),
            ));
        }
        let mut marks = relation.into_iter().next().unwrap();
        if marks[0].is_negative() {
            marks = linalg::neg(&marks);
        }
        if marks.iter().any(|m| !m.is_positive()) {
            return Err(Error::Inconsistent("wall marks not positive".into()));
        }
        let k: Q = comp
            .iter()
            .zip(&marks)
            .map(|(&j, m)| *m * walls[j].root.level)
            .sum();
        if !k.is_positive() {
            return Err(Error::Inconsistent("walls do not bound an alcove".into()));
        }
        let nc = Q::from_integer(comp.len() as i64);
        for (&j, m) in comp.iter().zip(&marks) {
            // <grad_j, B^T y> = value - level
            rows.push(linalg::mat_vec(apartment, &walls[j].root.gradient));
            rhs.push(k / (nc * m) - walls[j].root.level);
        }
    }
    let y = linalg::solve_unique(&rows, &rhs)
        .ok_or_else(|| Error::Inconsistent("alcove barycenter not determined".into()))?;
    let dim = apartment.first().map_or(0, Vec::len);
    let mut x = linalg::zeros(dim);
    for (c, row) in y.iter().zip(apartment) {
        x = linalg::add(&x, &linalg::scale(*c, row));
    }
    Ok(x)
}
