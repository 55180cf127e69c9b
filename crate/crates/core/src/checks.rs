//! The built-in invariant suite behind `iwahori check`.
//!
//! Every check enumerates a finite piece of the group (a ball of given
//! radius) and compares two independent computations of the same thing.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::affine_weyl::AffineWeylElement;
use crate::cells::{self, ParabolicSubset};
use crate::extended_weyl::ExtendedElement;
use crate::group::IwahoriWeyl;
use crate::root_data::{AffineRoot, AffineRootSystem};

/// The groups exercised by `check` when none is given.
pub const BUILTIN_SPECS: [&str; 6] = ["A1", "A2", "C2", "G2", "2A2", "2A3"];

/// At most this many failure messages are kept per check.
const MAX_FAILURES: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub violations: usize,
    pub examples: Vec<String>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        CheckResult {
            name,
            cases: 0,
            violations: 0,
            examples: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
            if self.examples.len() < MAX_FAILURES {
                self.examples.push(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub group: String,
    pub depth: usize,
    pub results: Vec<CheckResult>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }
}

/// Runs every invariant on `group` with enumeration radius `depth`.
pub fn run_all(group: &IwahoriWeyl, depth: usize) -> CheckReport {
    let pair_depth = depth.min(4);
    let results = vec![
        length_identity(group, depth),
        positivity(group, depth),
        root_sets(group, depth),
        simple_transitivity(group, depth + 3),
        additive_inversions(group, depth),
        restriction(group, depth),
        order_compatibility(group, pair_depth),
        parabolic_fixed_points(group),
        kottwitz_exactness(group, depth, pair_depth.min(3)),
        cell_counts(group, depth),
        double_cosets(group, depth),
        monotonicity(group, pair_depth),
        round_trip(group, depth),
    ];
    CheckReport {
        group: group.spec().to_string(),
        depth,
        results,
    }
}

fn name(group: &IwahoriWeyl, w: &ExtendedElement) -> String {
    group.format_element(w)
}

fn affine_ball(sys: &AffineRootSystem, depth: usize) -> Vec<(AffineWeylElement, usize)> {
    crate::affine_weyl::flatten_ball(sys.ball(depth))
}

/// Word length from the breadth-first search equals the number of
/// non-divisible inversions, and the length-1 elements are the walls.
pub fn length_identity(group: &IwahoriWeyl, depth: usize) -> CheckResult {
    let mut r = CheckResult::new("length = inversion count");
    let sys = group.system();
    for (w, len) in affine_ball(sys, depth) {
        let l = sys.length(&w);
        r.expect(l == len, || format!("{w}: word length {len}, inversion length {l}"));
        r.expect(sys.reduced_word(&w).map(|x| x.len()) == Ok(len), || format!("{w}: reduced word"));
        if len == 1 {
            r.expect(sys.walls().iter().any(|s| s.reflection == w), || format!("{w}: length 1 but not a wall"));
        }
    }
    r
}

/// For `alpha` in `R(s)`: `w alpha > 0` iff `w <= ws`.
pub fn positivity(group: &IwahoriWeyl, depth: usize) -> CheckResult {
    let mut r = CheckResult::new("w.alpha > 0 for alpha in R(s) <=> w <= ws");
    let sys = group.system();
    let walls = sys.walls().len();
    let r_s: Vec<BTreeSet<AffineRoot>> = (0..walls)
        .map(|i| sys.inversion_set(sys.simple_reflection(i)))
        .collect();
    for w in group.elements_up_to(depth) {
        for (i, roots) in r_s.iter().enumerate() {
            let ws = group.multiply(&w, &group.simple(i)).expect("closed");
            let leq = group.bruhat_leq(&w, &ws);
            let grows = group.length(&ws) == group.length(&w) + 1;
            for alpha in roots {
                let positive = sys.is_positive(&w.full.act_root(alpha)).expect("roots never vanish");
                r.expect(positive == leq && leq == grows, || {
                    format!("w={}, s={i}: positive={positive}, w<=ws={leq}", name(group, &w))
                });
            }
        }
    }
    r
}

/// `R(wv) ⊂ R(v) ⊔ v^{-1} R(w)`, with equality iff lengths add.
pub fn root_sets(group: &IwahoriWeyl, depth: usize) -> CheckResult {
    let mut r = CheckResult::new("R(wv) in R(v) + v^-1 R(w), equality iff l(wv)=l(w)+l(v)");
    let sys = group.system();
    let ball = affine_ball(sys, depth);
    let inv: HashMap<&AffineWeylElement, BTreeSet<AffineRoot>> =
        ball.iter().map(|(w, _)| (w, sys.inversion_set(w))).collect();
    for (w, lw) in &ball {
        for (v, lv) in &ball {
            if lw + lv > depth {
                continue;
            }
            let wv = w.compose(v);
            let lhs = sys.inversion_set(&wv);
            let v_inv = v.inverse();
            let moved: BTreeSet<AffineRoot> = inv[w].iter().map(|a| v_inv.act_root(a)).collect();
            let disjoint = inv[v].is_disjoint(&moved);
            let rhs: BTreeSet<AffineRoot> = inv[v].union(&moved).cloned().collect();
            let additive = sys.length(&wv) == lw + lv;
            r.expect(disjoint && lhs.is_subset(&rhs) && (lhs == rhs) == additive, || {
                format!("w={w}, v={v}: additive={additive}, equal={}", lhs == rhs)
            });
        }
    }
    r
}

/// The fixed affine Weyl group acts simply transitively on twist-invariant
/// alcoves: the fixed elements of the unramified ball of radius `radius` are
/// exactly the fixed-group elements with `l^nr <= radius`, and distinct
/// elements move the base point to distinct points.
pub fn simple_transitivity(group: &IwahoriWeyl, radius: usize) -> CheckResult {
    let mut r = CheckResult::new("fixed group simply transitive on invariant alcoves");
    let d = group.descent();
    let nr = d.nr();
    let invariant: HashSet<AffineWeylElement> = nr
        .ball(radius)
        .into_iter()
        .flatten()
        .filter(|w| d.is_fixed(w))
        .collect();
    let sys = group.system();
    let mut fixed_group: HashSet<AffineWeylElement> = HashSet::new();
    let mut points = HashSet::new();
    for w in sys.ball(radius).into_iter().flatten() {
        if nr.length(&w) <= radius {
            let p = w.act_point(&sys.base_alcove().interior_point);
            r.expect(points.insert(p), || format!("{w}: base point hit twice"));
            fixed_group.insert(w);
        }
    }
    for w in &invariant {
        r.expect(fixed_group.contains(w), || format!("{w}: invariant alcove not reached"));
    }
    for w in &fixed_group {
        r.expect(invariant.contains(w), || format!("{w}: not an invariant alcove of the ball"));
    }
    r
}

/// `R^nr(ws) = R^nr(s) ⊔ s R^nr(w)` whenever `w <= ws` in the fixed group.
pub fn additive_inversions(group: &IwahoriWeyl, depth: usize) -> CheckResult {
    let mut r = CheckResult::new("R^nr(ws) = R^nr(s) + s R^nr(w) for w <= ws");
    let d = group.descent();
    let nr = d.nr();
    let sys = group.system();
    for (w, _) in affine_ball(sys, depth) {
        let rw = nr.inversion_set(&w);
        for (i, wall) in sys.walls().iter().enumerate() {
            let s = &wall.reflection;
            let ws = w.compose(s);
            if !d.bruhat_leq_f(&w, &ws).expect("fixed") {
                continue;
            }
            let rs = nr.inversion_set(s);
            let moved: BTreeSet<AffineRoot> = rw.iter().map(|a| s.act_root(a)).collect();
            let rhs: BTreeSet<AffineRoot> = rs.union(&moved).cloned().collect();
            let ok = rs.is_disjoint(&moved)
                && nr.inversion_set(&ws) == rhs
                && nr.length(&ws) == nr.length(&w) + nr.length(s);
            r.expect(ok, || format!("w={w}, s={i}"));
        }
    }
    r
}

/// Every unramified inversion of a fixed element restricts to an inversion.
pub fn restriction(group: &IwahoriWeyl, depth: usize) -> CheckResult {
    let mut r = CheckResult::new("restriction maps R^nr(w) into R(w)");
    let d = group.descent();
    let sys = group.system();
    for (w, _) in affine_ball(sys, depth) {
        let rw = sys.inversion_set(&w);
        for alpha in d.nr().inversion_set(&w) {
            let ok = d
                .restrict_root(&alpha)
                .is_ok_and(|b| sys.contains(&b) && rw.contains(&b));
            r.expect(ok, || format!("w={w}, alpha={alpha}"));
        }
    }
    r
}

/// `w <= v` iff `w <=^nr v`, and `l(w) = 0` iff `l^nr(w) = 0`.
pub fn order_compatibility(group: &IwahoriWeyl, depth: usize) -> CheckResult {
    let mut r = CheckResult::new("Bruhat orders and zero lengths agree with the unramified ones");
    let nr = group.nr();
    let elements = group.elements_up_to(depth);
    for w in &elements {
        r.expect((group.length(w) == 0) == (group.length_nr(w) == 0), || name(group, w));
        for v in &elements {
            let fixed = group.bruhat_leq(w, v);
            let unramified = nr.bruhat_leq(&w.full, &v.full);
            r.expect(fixed == unramified, || {
                format!("{} vs {}: {fixed} / {unramified}", name(group, w), name(group, v))
            });
        }
    }
    r
}

/// Each fixed parabolic subgroup is the fixed part of the unramified
/// parabolic generated by the corresponding orbits.
pub fn parabolic_fixed_points(group: &IwahoriWeyl) -> CheckResult {
    let mut r = CheckResult::new("W_J = (W^nr_J)^Sigma for every facet");
    let d = group.descent();
    let sys = group.system();
    let walls = sys.walls().len();
    for mask in 0u32..(1 << walls) {
        let j: Vec<usize> = (0..walls).filter(|i| mask & (1 << i) != 0).collect();
        if ParabolicSubset::new(group, j.clone()).is_err() {
            continue;
        }
        let gens: Vec<usize> = j.iter().flat_map(|&i| d.orbits()[i].clone()).collect();
        let fixed: HashSet<AffineWeylElement> = sys.ball_in(&j, usize::MAX).into_iter().flatten().collect();
        let unramified: HashSet<AffineWeylElement> = d
            .nr()
            .ball_in(&gens, usize::MAX)
            .into_iter()
            .flatten()
            .filter(|w| d.is_fixed(w))
            .collect();
        r.expect(fixed == unramified, || format!("J={j:?}: {} vs {}", fixed.len(), unramified.len()));
    }
    r
}

/// `kappa(w) = 0` iff `w` is in the affine Weyl group; `kappa` is a
/// homomorphism; the alcove stabilizer permutes walls and leaves inversion
/// sets unchanged under left multiplication.
pub fn kottwitz_exactness(group: &IwahoriWeyl, depth: usize, pair_depth: usize) -> CheckResult {
    let mut r = CheckResult::new("exactness of 1 -> W_aff -> W -> Omega -> 1");
    let sys = group.system();
    let om = group.omega();
    let walls: BTreeSet<AffineRoot> = sys.simple_affine_roots().into_iter().collect();
    for (_, tau) in om.transversal() {
        r.expect(sys.length(tau) == 0, || format!("{tau}: transversal has positive length"));
        let image: BTreeSet<AffineRoot> = walls.iter().map(|a| tau.act_root(a)).collect();
        r.expect(image == walls, || format!("{tau}: walls not permuted"));
    }
    for w in group.elements_up_to(depth) {
        let in_aff = sys.descent_reduce(&w.full).0.is_identity();
        r.expect(group.kottwitz(&w).is_zero() == in_aff, || name(group, &w));
        let rw = sys.inversion_set(&w.full);
        for (_, tau) in om.transversal() {
            r.expect(sys.inversion_set(&tau.compose(&w.full)) == rw, || {
                format!("R(tau w) != R(w) for w={}", name(group, &w))
            });
        }
    }
    let small = group.elements_up_to(pair_depth);
    for w in &small {
        for v in &small {
            let wv = group.multiply(w, v).expect("closed");
            r.expect(group.kottwitz(&wv) == om.add(&w.class, &v.class), || {
                format!("kappa not additive on {} * {}", name(group, w), name(group, v))
            });
        }
    }
    r
}

/// All reduced words of an affine Weyl group element.
pub fn reduced_words(sys: &AffineRootSystem, w: &AffineWeylElement) -> Vec<Vec<usize>> {
    if sys.right_descents(w).is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in sys.right_descents(w) {
        for mut word in reduced_words(sys, &w.compose(sys.simple_reflection(i))) {
            word.push(i);
            out.push(word);
        }
    }
    out
}

/// For every reduced word of `w`, the product count equals `q^{l^nr(w)}`.
pub fn cell_counts(group: &IwahoriWeyl, depth: usize) -> CheckResult {
    let mut r = CheckResult::new("product over reduced words = |BwB/B| = q^l^nr(w)");
    for w in group.elements_up_to(depth) {
        let cell = cells::cell_size(group, &w);
        for word in reduced_words(group.system(), &w.affine) {
            let count = cells::demazure_product_count(group, &word);
            let ok = count.as_ref().is_ok_and(|c| {
                *c == cell && c.eval(2) == cell.eval(2) && c.eval(3) == cell.eval(3)
            });
            r.expect(ok, || format!("{}: word {word:?} gives {count:?}, cell {cell}", name(group, &w)));
        }
    }
    r
}

/// Minimal representatives partition the ball, for every pair of facets.
pub fn double_cosets(group: &IwahoriWeyl, depth: usize) -> CheckResult {
    let mut r = CheckResult::new("double cosets partition the ball; min_rep idempotent");
    let sys = group.system();
    let walls = sys.walls().len();
    let facets: Vec<ParabolicSubset> = (0u32..(1 << walls))
        .filter_map(|mask| ParabolicSubset::new(group, (0..walls).filter(|i| mask & (1 << i) != 0)).ok())
        .collect();
    let elements = group.elements_up_to(depth);
    for j in &facets {
        let wj = j.elements(group);
        for j2 in &facets {
            let wj2 = j2.elements(group);
            let reps = cells::enumerate_double_cosets(group, j, j2, depth);
            let rep_set: HashSet<&AffineWeylElement> = reps.iter().map(|m| &m.full).collect();
            r.expect(rep_set.len() == reps.len(), || "duplicate representatives".into());
            // which representatives' cosets contain each element
            let mut owners: HashMap<AffineWeylElement, usize> = HashMap::new();
            for m in &reps {
                let mut coset = HashSet::new();
                for a in &wj {
                    let am = a.affine.compose(&m.full);
                    for b in &wj2 {
                        coset.insert(am.compose(&b.affine));
                    }
                }
                for x in coset {
                    *owners.entry(x).or_default() += 1;
                }
            }
            for w in &elements {
                let m = cells::min_rep(group, w, j, j2);
                let ok = owners.get(&w.full) == Some(&1)
                    && rep_set.contains(&m.full)
                    && cells::min_rep(group, &m, j, j2) == m
                    && m.class == w.class
                    && group.length(&m) <= group.length(w);
                r.expect(ok, || format!("{} for J={j:?}, J'={j2:?}", name(group, w)));
            }
        }
    }
    r
}

/// `w <= v` implies `l^nr(w) <= l^nr(v)`.
pub fn monotonicity(group: &IwahoriWeyl, depth: usize) -> CheckResult {
    let mut r = CheckResult::new("cell degrees are monotone in the Bruhat order");
    let elements = group.elements_up_to(depth);
    for w in &elements {
        for v in &elements {
            if group.bruhat_leq(w, v) {
                let (a, b) = (cells::cell_size(group, w), cells::cell_size(group, v));
                r.expect(a.degree() <= b.degree(), || format!("{} <= {}", name(group, w), name(group, v)));
            }
        }
    }
    r
}

/// The canonical text form parses back to the same element.
pub fn round_trip(group: &IwahoriWeyl, depth: usize) -> CheckResult {
    let mut r = CheckResult::new("reduce output parses back to the same element");
    for w in group.elements_up_to(depth) {
        let text = group.format_element(&w);
        r.expect(group.parse_element(&text).as_ref() == Ok(&w), || text.clone());
    }
    r
}
