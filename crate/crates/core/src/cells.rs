//! Parabolic subgroups `W_J`, double cosets `W_J \ W / W_J'` with their
//! minimal representatives, and Bruhat cell sizes `|BwB/B| = q^{l^nr(w)}`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extended_weyl::ExtendedElement;
use crate::group::IwahoriWeyl;

/// A set of simple reflections generating a finite subgroup, i.e. the
/// walls through a facet of the base alcove.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicSubset {
    walls: BTreeSet<usize>,
}

impl ParabolicSubset {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(group: &IwahoriWeyl, walls: impl IntoIterator<Item = usize>) -> Result<Self> {
        let sys = group.system();
        let walls: BTreeSet<usize> = walls.into_iter().collect();
        if let Some(&bad) = walls.iter().find(|&&i| i >= sys.walls().len()) {
            return Err(Error::UnknownWall(format!("#{bad}")));
        }
        // a full component of the affine diagram generates an infinite group
        if sys.wall_components().iter().any(|c| c.iter().all(|i| walls.contains(i))) {
            let names = group.word_names(&walls.iter().copied().collect::<Vec<_>>());
            return Err(Error::InfiniteParabolic(format!("{{{}}}", names.join(","))));
        }
        Ok(ParabolicSubset { walls })
    }

    /// Parses a comma-separated list of wall names; `{}` or `-` is empty.
    pub fn parse(group: &IwahoriWeyl, text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if inner.is_empty() || inner == "-" {
            return Ok(Self::empty());
        }
        let mut walls = Vec::new();
        for name in inner.split(',') {
            walls.push(group.system().wall_index(name.trim())?);
        }
        Self::new(group, walls)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.walls.contains(&i)
    }

    pub fn walls(&self) -> impl Iterator<Item = usize> + '_ {
        self.walls.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.walls.is_empty()
    }

    /// All elements of `W_J`, found by breadth-first closure.
    pub fn elements(&self, group: &IwahoriWeyl) -> Vec<ExtendedElement> {
        let gens: Vec<usize> = self.walls().collect();
        group
            .system()
            .ball_in(&gens, usize::MAX)
            .into_iter()
            .flatten()
            .map(|a| group.omega().from_affine(&a))
            .collect()
    }
}

/// A polynomial in `q` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPolynomial(pub BTreeMap<u32, i64>);

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(exponent: u32) -> Self {
        QPolynomial(BTreeMap::from([(exponent, 1)]))
    }

    pub fn add_term(&mut self, exponent: u32, coefficient: i64) {
        let c = self.0.entry(exponent).or_insert(0);
        *c += coefficient;
        if *c == 0 {
            self.0.remove(&exponent);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&a, &x) in &self.0 {
            for (&b, &y) in &other.0 {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.keys().next_back().copied()
    }

    pub fn eval(&self, q: i64) -> i128 {
        self.0
            .iter()
            .map(|(&e, &c)| i128::from(c) * i128::from(q).pow(e))
            .sum()
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in &self.0 {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "{a}q")?,
                (_, 1) => write!(f, "q^{e}")?,
                _ => write!(f, "{a}q^{e}")?,
            }
        }
        Ok(())
    }
}

/// The element of `W_J w W_J2` with no left descent in `J` and no right
/// descent in `J2`; it is the unique element of minimal length there.
pub fn min_rep(
    group: &IwahoriWeyl,
    w: &ExtendedElement,
    j: &ParabolicSubset,
    j2: &ParabolicSubset,
) -> ExtendedElement {
    let sys = group.system();
    let mut full = w.full.clone();
    loop {
        if let Some(i) = j.walls().find(|&i| sys.is_left_descent(&full, i)) {
            full = sys.simple_reflection(i).compose(&full);
        } else if let Some(i) = j2.walls().find(|&i| sys.is_right_descent(&full, i)) {
            full = full.compose(sys.simple_reflection(i));
        } else {
            break;
        }
    }
    group.omega().decompose(&full).expect("stays in the same class")
}

pub fn is_min_rep(group: &IwahoriWeyl, w: &ExtendedElement, j: &ParabolicSubset, j2: &ParabolicSubset) -> bool {
    let sys = group.system();
    !j.walls().any(|i| sys.is_left_descent(&w.full, i)) && !j2.walls().any(|i| sys.is_right_descent(&w.full, i))
}

/// Minimal representatives of length at most `max_len`, over every
/// Kottwitz class, sorted by reduced word and then by class.
pub fn enumerate_double_cosets(
    group: &IwahoriWeyl,
    j: &ParabolicSubset,
    j2: &ParabolicSubset,
    max_len: usize,
) -> Vec<ExtendedElement> {
    let mut seen = HashSet::new();
    let mut out: Vec<(Vec<usize>, ExtendedElement)> = Vec::new();
    for w in group.elements_up_to(max_len) {
        if is_min_rep(group, &w, j, j2) && seen.insert(w.full.clone()) {
            out.push((group.reduced_word(&w), w));
        }
    }
    out.sort_by(|(a, x), (b, y)| a.cmp(b).then_with(|| x.class.cmp(&y.class)));
    out.into_iter().map(|(_, w)| w).collect()
}

/// `|BwB/B| = q^{l^nr(w)}`.
pub fn cell_size(group: &IwahoriWeyl, w: &ExtendedElement) -> QPolynomial {
    QPolynomial::monomial(group.length_nr(w) as u32)
}

/// The count `prod q^{l^nr(s_i)}` through the multiplication map for a
/// reduced word. A word that stops being reduced is rejected with the
/// length of the offending prefix.
pub fn demazure_product_count(group: &IwahoriWeyl, word: &[usize]) -> Result<QPolynomial> {
    let sys = group.system();
    let mut w = sys.identity();
    let mut out = QPolynomial::one();
    for (k, &i) in word.iter().enumerate() {
        if i >= sys.walls().len() {
            return Err(Error::UnknownWall(format!("#{i}")));
        }
        w = w.compose(sys.simple_reflection(i));
        if sys.length(&w) != k + 1 {
            return Err(Error::NonReducedWord { prefix: k + 1 });
        }
        out = out.mul(&QPolynomial::monomial(group.nr().length(sys.simple_reflection(i)) as u32));
    }
    Ok(out)
}

/// `sum q^{l^nr(w)}` over minimal representatives of `W_aff / W_J` with
/// `l(w) <= max_len`: the cells of the radius-`max_len` ball in the
/// neutral component of the partial affine flag variety.
pub fn ball_poincare(group: &IwahoriWeyl, max_len: usize, j: &ParabolicSubset) -> QPolynomial {
    let sys = group.system();
    let mut out = QPolynomial::zero();
    for a in sys.ball(max_len).into_iter().flatten() {
        if !j.walls().any(|i| sys.is_right_descent(&a, i)) {
            out.add_term(group.nr().length(&a) as u32, 1);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> IwahoriWeyl {
        s.parse().unwrap()
    }

    #[test]
    fn polynomial_arithmetic_and_display() {
        let mut p = QPolynomial::one();
        p.add_term(1, 2);
        p.add_term(2, 2);
        assert_eq!(p.to_string(), "1 + 2q + 2q^2");
        assert_eq!(p.eval(2), 13);
        assert_eq!(QPolynomial::monomial(3).to_string(), "q^3");
        assert_eq!(p.mul(&QPolynomial::monomial(1)).degree(), Some(3));
        let mut z = QPolynomial::monomial(1);
        z.add_term(1, -1);
        assert_eq!(z, QPolynomial::zero());
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn finite_a2_double_cosets() {
        let g = group("A2");
        let fin = ParabolicSubset::new(&g, [1, 2]).unwrap();
        let elements = fin.elements(&g);
        assert_eq!(elements.len(), 6);
        let j = ParabolicSubset::new(&g, [1]).unwrap();
        let reps: BTreeSet<Vec<usize>> = elements
            .iter()
            .map(|w| g.reduced_word(&min_rep(&g, w, &j, &j)))
            .collect();
        assert_eq!(reps, BTreeSet::from([vec![], vec![2]]));
    }

    #[test]
    fn absorption() {
        let g = group("A2");
        let s1 = g.simple(1);
        let j = ParabolicSubset::new(&g, [1]).unwrap();
        assert!(min_rep(&g, &s1, &j, &ParabolicSubset::empty()).full.is_identity());
        let e = g.identity();
        assert_eq!(min_rep(&g, &e, &j, &j), e);
    }

    #[test]
    fn iwahori_case_is_the_whole_ball() {
        let g = group("A1--lattice=sc");
        let e = ParabolicSubset::empty();
        let reps = enumerate_double_cosets(&g, &e, &e, 2);
        let words: Vec<Vec<usize>> = reps.iter().map(|w| g.reduced_word(w)).collect();
        assert_eq!(words, vec![vec![], vec![0], vec![0, 1], vec![1], vec![1, 0]]);
        let g = group("A1");
        assert_eq!(enumerate_double_cosets(&g, &e, &e, 2).len(), 10);
    }

    #[test]
    fn cell_sizes() {
        let g = group("A1");
        assert_eq!(cell_size(&g, &g.identity()), QPolynomial::one());
        assert_eq!(cell_size(&g, &g.simple(1)), QPolynomial::monomial(1));
        assert_eq!(demazure_product_count(&g, &[]).unwrap(), QPolynomial::one());
        assert_eq!(demazure_product_count(&g, &[0, 1]).unwrap(), QPolynomial::monomial(2));
        assert_eq!(demazure_product_count(&g, &[0, 1, 1]), Err(Error::NonReducedWord { prefix: 3 }));

        let t = group("2A2");
        assert_eq!(cell_size(&t, &t.simple(1)), QPolynomial::monomial(3));
        assert_eq!(demazure_product_count(&t, &[0, 1]).unwrap(), QPolynomial::monomial(4));
        let w = t.from_word(&[0, 1]).unwrap();
        assert_eq!(cell_size(&t, &w), QPolynomial::monomial(4));
    }

    #[test]
    fn poincare_series() {
        let e = ParabolicSubset::empty();
        let g = group("A1");
        assert_eq!(ball_poincare(&g, 0, &e), QPolynomial::one());
        assert_eq!(ball_poincare(&g, 2, &e).to_string(), "1 + 2q + 2q^2");
        let t = group("2A2");
        assert_eq!(ball_poincare(&t, 1, &e).to_string(), "1 + q + q^3");
        // representatives modulo s1 on the right: e, s0, s1 s0
        let j = ParabolicSubset::new(&g, [1]).unwrap();
        assert_eq!(ball_poincare(&g, 2, &j).to_string(), "1 + q + q^2");
    }

    #[test]
    fn infinite_parabolics_are_rejected() {
        let g = group("A1");
        assert!(matches!(ParabolicSubset::new(&g, [0, 1]), Err(Error::InfiniteParabolic(_))));
        let t = group("2A2");
        assert!(matches!(ParabolicSubset::parse(&t, "s_fix,s_orb"), Err(Error::InfiniteParabolic(_))));
        assert_eq!(ParabolicSubset::parse(&t, "{}").unwrap(), ParabolicSubset::empty());
        assert!(matches!(ParabolicSubset::parse(&t, "s9"), Err(Error::UnknownWall(_))));
    }
}
