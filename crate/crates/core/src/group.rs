//! A concrete Iwahori-Weyl group: base type, optional twist and lattice,
//! bundled with its descent data and alcove stabilizer.
//!
//! Group specs follow `<type>[:<twist>][--lattice=<lattice>]`, e.g. `A2`,
//! `A1xA1`, `2A2`, `A2:perm=[0,2,1]`, `C2--lattice=sc`. Elements are
//! products of factors joined by `*`: wall names (`s0`, `s_fix`, ...),
//! `e`, translations `t[m1,...]` in coroot coordinates, and alcove
//! stabilizer elements `o[c1,...]` given by their Kottwitz class.

use std::fmt;
use std::str::FromStr;

use crate::affine_weyl::AffineWeylElement;
use crate::descent::{build_descent, standard_twist, DescentData, GaloisAction};
use crate::error::{parse_error, Error, Result};
use crate::extended_weyl::{ExtendedElement, LatticeChoice, OmegaClass, OmegaGroup};
use crate::linalg::{self, Vector, Q};
use crate::root_data::{build_affine_system, build_finite_product, AffineRootSystem, CartanSpec};

pub const GROUP_GRAMMAR: &str = "<type>[:perm=[i0,i1,...]][--lattice=adjoint|sc|basis:[[..],..]] \
     where <type> is e.g. A2, C2, G2, A1xA1, or a twisted label 2A2, 2A3, 2Dn, 3D4, 2E6";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Twist {
    Split,
    /// A standard twist of the given order, written as a prefix digit.
    Standard(u32),
    /// Explicit wall permutation, wall 0 being the affine node.
    Permutation(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub base: CartanSpec,
    pub twist: Twist,
    /// `None` means the default adjoint lattice, left implicit.
    pub lattice: Option<LatticeChoice>,
}

impl GroupSpec {
    pub fn lattice_choice(&self) -> LatticeChoice {
        self.lattice.clone().unwrap_or_default()
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (head, lattice) = match text.find("--") {
            Some(pos) => {
                let flag = &text[pos..];
                let Some(value) = flag.strip_prefix("--lattice=") else {
                    return parse_error(pos, format!("unknown option `{flag}`; grammar: {GROUP_GRAMMAR}"));
                };
                let lattice = value
                    .parse::<LatticeChoice>()
                    .or_else(|m| parse_error(pos + "--lattice=".len(), m))?;
                (&text[..pos], Some(lattice))
            }
            None => (text, None),
        };
        let (ty, twist_text) = match head.split_once(':') {
            Some((t, w)) => (t, Some(w)),
            None => (head, None),
        };
        if ty.is_empty() {
            return parse_error(0, format!("missing Cartan type; grammar: {GROUP_GRAMMAR}"));
        }
        let (base, mut twist) = if ty.starts_with(|c: char| c.is_ascii_digit()) {
            let (base, _) = standard_twist(ty)
                .or_else(|e| parse_error(0, format!("{e}; grammar: {GROUP_GRAMMAR}")))?;
            let order = ty[..1].parse().expect("leading digit");
            (base, Twist::Standard(order))
        } else {
            let base = ty
                .parse::<CartanSpec>()
                .or_else(|e| parse_error(0, format!("{e}; grammar: {GROUP_GRAMMAR}")))?;
            (base, Twist::Split)
        };
        if let Some(w) = twist_text {
            let offset = ty.len() + 1;
            if twist != Twist::Split {
                return parse_error(offset, "a twisted label cannot take a second twist");
            }
            let Some(list) = w.strip_prefix("perm=") else {
                return parse_error(offset, format!("unknown twist `{w}`; grammar: {GROUP_GRAMMAR}"));
            };
            let offset = offset + "perm=".len();
            let inner = list
                .strip_prefix('[')
                .and_then(|l| l.strip_suffix(']'))
                .ok_or(())
                .or_else(|_| parse_error(offset, "expected a bracketed list like [0,2,1]"))?;
            let perm: Vec<usize> = inner
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .or_else(|_| parse_error(offset, format!("bad permutation entry in `{list}`")))?;
            twist = Twist::Permutation(perm);
        }
        Ok(GroupSpec { base, twist, lattice })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.twist {
            Twist::Split => write!(f, "{}", self.base)?,
            Twist::Standard(order) => write!(f, "{order}{}", self.base)?,
            Twist::Permutation(p) => {
                let p: Vec<String> = p.iter().map(ToString::to_string).collect();
                write!(f, "{}:perm=[{}]", self.base, p.join(","))?;
            }
        }
        if let Some(l) = &self.lattice {
            write!(f, "--lattice={l}")?;
        }
        Ok(())
    }
}

/// The Iwahori-Weyl group of a spec: `W = Omega ⋉ W_aff`, realized inside
/// the unramified group as the fixed points of the twist.
#[derive(Clone, Debug)]
pub struct IwahoriWeyl {
    spec: GroupSpec,
    descent: DescentData,
    omega: OmegaGroup,
}

impl FromStr for IwahoriWeyl {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        IwahoriWeyl::new(&text.parse()?)
    }
}

impl IwahoriWeyl {
    pub fn new(spec: &GroupSpec) -> Result<Self> {
        let nr = build_affine_system(build_finite_product(&spec.base)?)?;
        let action = match &spec.twist {
            Twist::Split => GaloisAction::trivial(&nr),
            Twist::Standard(order) => {
                let (_, perm) = standard_twist(&format!("{order}{}", spec.base))?;
                GaloisAction::from_permutation(&nr, perm)?
            }
            Twist::Permutation(perm) => GaloisAction::from_permutation(&nr, perm.clone())?,
        };
        let omega_nr = OmegaGroup::build(&nr, &spec.lattice_choice())?;
        let omega = if action.is_trivial() {
            omega_nr
        } else {
            omega_nr.restricted_to(&action)?
        };
        Ok(IwahoriWeyl {
            spec: spec.clone(),
            descent: build_descent(nr, action)?,
            omega,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn descent(&self) -> &DescentData {
        &self.descent
    }

    pub fn omega(&self) -> &OmegaGroup {
        &self.omega
    }

    /// The affine root system of the group itself (restricted if twisted).
    pub fn system(&self) -> &AffineRootSystem {
        self.descent.restricted()
    }

    pub fn nr(&self) -> &AffineRootSystem {
        self.descent.nr()
    }

    pub fn wall_names(&self) -> Vec<String> {
        self.system().wall_names()
    }

    pub fn identity(&self) -> ExtendedElement {
        self.omega.from_affine(&self.system().identity())
    }

    pub fn simple(&self, i: usize) -> ExtendedElement {
        self.omega.from_affine(self.system().simple_reflection(i))
    }

    pub fn from_word(&self, word: &[usize]) -> Result<ExtendedElement> {
        Ok(self.omega.from_affine(&self.system().word_element(word)?))
    }

    pub fn omega_element(&self, class: &OmegaClass) -> Result<ExtendedElement> {
        self.omega.element(class, &self.system().identity())
    }

    /// Wraps an affine map of the unramified apartment, checking that it is
    /// fixed by the twist and lies in `W`.
    pub fn element(&self, full: &AffineWeylElement) -> Result<ExtendedElement> {
        if full.dim() != self.nr().dim() {
            return Err(Error::DimensionMismatch {
                expected: self.nr().dim(),
                found: full.dim(),
            });
        }
        if !self.descent.is_fixed(full) {
            return Err(Error::NotSigmaFixed);
        }
        let e = self.omega.decompose(full)?;
        if self.system().reduced_word(&e.affine).is_err() {
            return Err(Error::NotInAffineWeyl);
        }
        Ok(e)
    }

    pub fn multiply(&self, w: &ExtendedElement, v: &ExtendedElement) -> Result<ExtendedElement> {
        self.omega.ext_multiply(w, v)
    }

    pub fn inverse(&self, w: &ExtendedElement) -> Result<ExtendedElement> {
        self.omega.ext_inverse(w)
    }

    /// Length in the group itself.
    pub fn length(&self, w: &ExtendedElement) -> usize {
        self.system().length(&w.affine)
    }

    /// Length in the unramified group.
    pub fn length_nr(&self, w: &ExtendedElement) -> usize {
        self.nr().length(&w.full)
    }

    pub fn bruhat_leq(&self, w: &ExtendedElement, v: &ExtendedElement) -> bool {
        w.class == v.class && self.system().bruhat_leq(&w.affine, &v.affine)
    }

    pub fn kottwitz(&self, w: &ExtendedElement) -> OmegaClass {
        self.omega.kottwitz(w)
    }

    /// Reduced word of the affine part.
    pub fn reduced_word(&self, w: &ExtendedElement) -> Vec<usize> {
        self.system()
            .reduced_word(&w.affine)
            .expect("affine part lies in W_aff")
    }

    pub fn word_names(&self, word: &[usize]) -> Vec<String> {
        word.iter().map(|&i| self.system().walls()[i].name.clone()).collect()
    }

    /// Canonical text form `o[c]*s_i*...`, `e` for the identity.
    pub fn format_element(&self, w: &ExtendedElement) -> String {
        let mut parts = Vec::new();
        if !w.class.is_zero() {
            let c: Vec<String> = w.class.0.iter().map(ToString::to_string).collect();
            parts.push(format!("o[{}]", c.join(",")));
        }
        parts.extend(self.word_names(&self.reduced_word(w)));
        if parts.is_empty() {
            "e".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<ExtendedElement> {
        let mut acc = self.identity();
        let mut offset = 0;
        for raw in text.split('*') {
            let token = raw.trim();
            let pos = offset + (raw.len() - raw.trim_start().len());
            offset += raw.len() + 1;
            let factor = if token == "e" || token == "1" {
                self.identity()
            } else if let Some(body) = token.strip_prefix("t[") {
                let coords = parse_list(body, pos + 2)?;
                self.translation(&coords)?
            } else if let Some(body) = token.strip_prefix("o[") {
                let coords = parse_list(body, pos + 2)?;
                let mut class = Vec::new();
                for c in coords {
                    if !c.is_integer() {
                        return parse_error(pos, format!("class entries must be integers in `{token}`"));
                    }
                    class.push(c.to_integer());
                }
                let divisors = self.omega.divisors();
                if class.len() != divisors.len() {
                    return Err(Error::DimensionMismatch {
                        expected: divisors.len(),
                        found: class.len(),
                    });
                }
                let class = class.iter().zip(&divisors).map(|(c, d)| c.rem_euclid(*d)).collect();
                self.omega_element(&OmegaClass(class))?
            } else if token.is_empty() {
                return parse_error(pos, "empty factor");
            } else {
                match self.system().wall_index(token) {
                    Ok(i) => self.simple(i),
                    Err(_) => {
                        let names = self.wall_names().join(", ");
                        return parse_error(pos, format!("unknown factor `{token}` (walls: {names}; or e, t[..], o[..])"));
                    }
                }
            };
            acc = self.multiply(&acc, &factor)?;
        }
        Ok(acc)
    }

    /// Translation by a vector given in coroot coordinates.
    pub fn translation(&self, coroot_coords: &[Q]) -> Result<ExtendedElement> {
        let n = self.nr().dim();
        if coroot_coords.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: coroot_coords.len(),
            });
        }
        let cartan = self.nr().finite().cartan_matrix();
        let mut t: Vector = linalg::zeros(n);
        for (m, row) in coroot_coords.iter().zip(cartan) {
            for (j, &a) in row.iter().enumerate() {
                t[j] += *m * Q::from_integer(a);
            }
        }
        self.element(&AffineWeylElement::translation_by(t))
    }

    /// Every element of length at most `max_len`, ordered by class, then by
    /// breadth-first discovery.
    pub fn elements_up_to(&self, max_len: usize) -> Vec<ExtendedElement> {
        let ball: Vec<AffineWeylElement> = self.system().ball(max_len).into_iter().flatten().collect();
        let mut out = Vec::new();
        for (class, _) in self.omega.transversal() {
            for a in &ball {
                out.push(self.omega.element(class, a).expect("class has a transversal"));
            }
        }
        out
    }
}

fn parse_list(body: &str, pos: usize) -> Result<Vec<Q>> {
    let Some(inner) = body.strip_suffix(']') else {
        return parse_error(pos, "missing closing `]`");
    };
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| match linalg::parse_rational(x) {
            Some(v) => Ok(v),
            None => parse_error(pos, format!("bad rational `{}`", x.trim())),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn spec_round_trip() {
        for s in [
            "A2",
            "A1xA1",
            "2A2",
            "2A3",
            "3D4",
            "2E6",
            "A2:perm=[0,2,1]",
            "C2--lattice=sc",
            "A2--lattice=adjoint",
            "A2--lattice=basis:[[2/3,1/3],[1/3,2/3]]",
        ] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn spec_errors_carry_positions() {
        for (s, pos) in [("", 0), ("H3", 0), ("A2:foo", 3), ("A2:perm=0,2,1", 8), ("A2--lat=sc", 2), ("2A2:perm=[0,1,2]", 4)] {
            match s.parse::<GroupSpec>() {
                Err(Error::Parse { position, .. }) => assert_eq!(position, pos, "{s}"),
                other => panic!("{s}: {other:?}"),
            }
        }
    }

    #[test]
    fn explicit_permutation_equals_shortcut() {
        let a: IwahoriWeyl = "2A2".parse().unwrap();
        let b: IwahoriWeyl = "A2:perm=[0,2,1]".parse().unwrap();
        assert_eq!(a.wall_names(), b.wall_names());
        assert_eq!(a.descent().d_values(), b.descent().d_values());
        assert_eq!(a.descent().action(), b.descent().action());
    }

    #[test]
    fn element_grammar() {
        let g: IwahoriWeyl = "A2".parse().unwrap();
        let w = g.parse_element("s0*s1*s0").unwrap();
        assert_eq!(g.length(&w), 3);
        assert_eq!(g.format_element(&w), "s0*s1*s0");
        assert_eq!(g.format_element(&g.parse_element("e").unwrap()), "e");
        // a coweight translation has a nontrivial class
        let t = g.parse_element("t[2/3,1/3]").unwrap();
        assert!(!t.class.is_zero());
        let back = g.parse_element(&g.format_element(&t)).unwrap();
        assert_eq!(back, t);
        let t = g.parse_element("t[1,0]").unwrap();
        assert!(t.class.is_zero());
        // sum of |<a, alpha_1^vee>| over positive roots: 2 + 1 + 1
        assert_eq!(g.length(&t), 4);
        assert!(matches!(g.parse_element("s0*x"), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(g.parse_element("t[1/2,0]"), Err(Error::NotInLattice(_))));
        let sc: IwahoriWeyl = "A2--lattice=sc".parse().unwrap();
        assert!(matches!(sc.parse_element("t[2/3,1/3]"), Err(Error::NotInLattice(_))));
    }

    #[test]
    fn twisted_elements() {
        let g: IwahoriWeyl = "2A2".parse().unwrap();
        let w = g.parse_element("s_fix*s_orb").unwrap();
        assert_eq!(g.length(&w), 2);
        assert_eq!(g.length_nr(&w), 4);
        assert_eq!(g.omega().order(), 1);
        let t = g.parse_element("t[1,1]").unwrap();
        assert_eq!(g.length(&t), 2);
        assert_eq!(g.length_nr(&t), 4);
        assert!(matches!(g.parse_element("t[1,0]"), Err(Error::NotSigmaFixed)));
        assert_eq!(g.translation(&[q(1)]), Err(Error::DimensionMismatch { expected: 2, found: 1 }));
    }

    #[test]
    fn ball_counts_include_omega() {
        let g: IwahoriWeyl = "A1".parse().unwrap();
        assert_eq!(g.elements_up_to(2).len(), 10);
        let g: IwahoriWeyl = "A1--lattice=sc".parse().unwrap();
        assert_eq!(g.elements_up_to(2).len(), 5);
    }
}
