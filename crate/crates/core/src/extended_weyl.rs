//! The Iwahori-Weyl group as `Omega ⋉ W_aff` and its Kottwitz quotient.
//!
//! The translation lattice `Λ` sits between the coroot lattice `Q∨` and the
//! coweight lattice `P∨`. The quotient `Λ/Q∨` is presented through the Smith
//! form of the matrix expressing `Q∨` in a basis of `Λ`, and each class gets
//! the unique length-0 element of its coset as transversal.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::affine_weyl::AffineWeylElement;
use crate::descent::GaloisAction;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector, Q};
use crate::root_data::AffineRootSystem;
use crate::snf::{smith, Smith};

/// Which lattice `Λ` of translations the extended group uses.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum LatticeChoice {
    /// `Λ = P∨`, the adjoint group.
    #[default]
    Adjoint,
    /// `Λ = Q∨`, so the group is `W_aff` itself.
    SimplyConnected,
    /// Explicit basis rows in coroot coordinates.
    Basis(Vec<Vector>),
}

impl FromStr for LatticeChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "adjoint" => Ok(LatticeChoice::Adjoint),
            "sc" => Ok(LatticeChoice::SimplyConnected),
            _ => {
                let body = s
                    .strip_prefix("basis:")
                    .ok_or_else(|| format!("unknown lattice `{s}` (adjoint|sc|basis:[[..],..])"))?;
                let inner = body
                    .trim()
                    .strip_prefix('[')
                    .and_then(|b| b.strip_suffix(']'))
                    .ok_or_else(|| format!("malformed basis `{body}`"))?;
                let mut rows = Vec::new();
                for chunk in inner.split(']') {
                    let chunk = chunk.trim().trim_start_matches(',').trim();
                    if chunk.is_empty() {
                        continue;
                    }
                    let entries = chunk
                        .strip_prefix('[')
                        .ok_or_else(|| format!("malformed basis row `{chunk}`"))?;
                    let row: Option<Vector> = entries.split(',').map(linalg::parse_rational).collect();
                    rows.push(row.ok_or_else(|| format!("bad rational in `{entries}`"))?);
                }
                if rows.is_empty() {
                    return Err("empty basis".into());
                }
                Ok(LatticeChoice::Basis(rows))
            }
        }
    }
}

impl fmt::Display for LatticeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeChoice::Adjoint => write!(f, "adjoint"),
            LatticeChoice::SimplyConnected => write!(f, "sc"),
            LatticeChoice::Basis(rows) => {
                let rows: Vec<String> = rows.iter().map(|r| linalg::fmt_vector(r)).collect();
                write!(f, "basis:[{}]", rows.join(","))
            }
        }
    }
}

/// A class in `Λ/Q∨`, as residues modulo the nontrivial elementary divisors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OmegaClass(pub Vec<i64>);

impl OmegaClass {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for OmegaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An element `omega_c · affine` of the Iwahori-Weyl group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedElement {
    pub class: OmegaClass,
    pub affine: AffineWeylElement,
    /// The combined map `omega_c ∘ affine`.
    pub full: AffineWeylElement,
}

/// The alcove stabilizer `Omega ≅ Λ/Q∨` with a transversal.
#[derive(Clone, Debug)]
pub struct OmegaGroup {
    choice: LatticeChoice,
    basis: Matrix,
    basis_inv: Matrix,
    smith: Smith,
    positions: Vec<usize>,
    transversal: Vec<(OmegaClass, AffineWeylElement)>,
}

impl OmegaGroup {
    /// Builds `Omega` for the unramified system `sys`.
    pub fn build(sys: &AffineRootSystem, choice: &LatticeChoice) -> Result<Self> {
        let n = sys.dim();
        let cartan: Matrix = sys
            .finite()
            .cartan_matrix()
            .iter()
            .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
            .collect();
        let basis: Matrix = match choice {
            LatticeChoice::Adjoint => linalg::identity(n),
            LatticeChoice::SimplyConnected => cartan.clone(),
            LatticeChoice::Basis(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: rows.len(),
                    });
                }
                linalg::mat_mul(rows, &cartan)
            }
        };
        if basis.iter().any(|r| !linalg::is_integral(r)) {
            return Err(Error::LatticeTooLarge);
        }
        let basis_inv = linalg::inverse(&basis).ok_or(Error::LatticeTooSmall)?;
        // rows of Q∨ in Λ-coordinates
        let m = linalg::mat_mul(&cartan, &basis_inv);
        if m.iter().any(|r| !linalg::is_integral(r)) {
            return Err(Error::LatticeTooSmall);
        }
        let m: Vec<Vec<i64>> = m
            .iter()
            .map(|r| r.iter().map(|x| x.to_integer()).collect())
            .collect();
        let smith = smith(&m);
        let positions: Vec<usize> = (0..n).filter(|&i| smith.diagonal[i] > 1).collect();

        let mut group = OmegaGroup {
            choice: choice.clone(),
            basis,
            basis_inv,
            smith,
            positions,
            transversal: Vec::new(),
        };
        for class in group.all_classes() {
            let lambda = group.representative(&class);
            let (omega, _) = sys.descent_reduce(&AffineWeylElement::translation_by(lambda));
            if group.class_of(omega.translation())? != class {
                return Err(Error::Inconsistent("transversal lost its class".into()));
            }
            group.transversal.push((class, omega));
        }
        Ok(group)
    }

    /// The subgroup of classes whose transversal element commutes with the
    /// Galois action. This is the alcove stabilizer of the fixed group.
    pub fn restricted_to(&self, action: &GaloisAction) -> Result<Self> {
        for row in &self.basis {
            let image = action.apply_point(row);
            if !linalg::is_integral(&self.lattice_coordinates(&image)) {
                return Err(Error::LatticeNotStable);
            }
        }
        let mut out = self.clone();
        out.transversal.retain(|(_, w)| action.fixes(w));
        Ok(out)
    }

    pub fn lattice(&self) -> &LatticeChoice {
        &self.choice
    }

    /// Nontrivial elementary divisors of `Λ/Q∨`.
    pub fn divisors(&self) -> Vec<i64> {
        self.positions.iter().map(|&p| self.smith.diagonal[p]).collect()
    }

    pub fn order(&self) -> usize {
        self.transversal.len()
    }

    pub fn classes(&self) -> impl Iterator<Item = &OmegaClass> {
        self.transversal.iter().map(|(c, _)| c)
    }

    pub fn transversal(&self) -> &[(OmegaClass, AffineWeylElement)] {
        &self.transversal
    }

    pub fn zero(&self) -> OmegaClass {
        OmegaClass(vec![0; self.positions.len()])
    }

    pub fn add(&self, a: &OmegaClass, b: &OmegaClass) -> OmegaClass {
        OmegaClass(
            self.divisors()
                .iter()
                .zip(a.0.iter().zip(&b.0))
                .map(|(d, (x, y))| (x + y).rem_euclid(*d))
                .collect(),
        )
    }

    pub fn omega(&self, class: &OmegaClass) -> Result<&AffineWeylElement> {
        self.transversal
            .iter()
            .find(|(c, _)| c == class)
            .map(|(_, w)| w)
            .ok_or_else(|| Error::NoTransversal(class.to_string()))
    }

    fn all_classes(&self) -> Vec<OmegaClass> {
        let mut out = vec![Vec::new()];
        for d in self.divisors() {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |r| {
                        let mut p = prefix.clone();
                        p.push(r);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(OmegaClass).collect()
    }

    fn lattice_coordinates(&self, t: &[Q]) -> Vector {
        linalg::mat_vec(&linalg::transpose(&self.basis_inv), t)
    }

    fn representative(&self, class: &OmegaClass) -> Vector {
        let n = self.basis.len();
        let mut z = vec![0i64; n];
        for (&p, &r) in self.positions.iter().zip(&class.0) {
            z[p] = r;
        }
        // y = z V^{-1}, lambda = y B
        let y: Vector = (0..n)
            .map(|j| Q::from_integer((0..n).map(|i| z[i] * self.smith.v_inv[i][j]).sum()))
            .collect();
        linalg::mat_vec(&linalg::transpose(&self.basis), &y)
    }

    /// Class of a translation vector in `Λ/Q∨`.
    pub fn class_of(&self, t: &[Q]) -> Result<OmegaClass> {
        let y = self.lattice_coordinates(t);
        if !linalg::is_integral(&y) {
            return Err(Error::NotInLattice(linalg::fmt_vector(t)));
        }
        let n = y.len();
        let z: Vec<i64> = (0..n)
            .map(|j| (0..n).map(|i| y[i].to_integer() * self.smith.v[i][j]).sum())
            .collect();
        Ok(OmegaClass(
            self.positions
                .iter()
                .map(|&p| z[p].rem_euclid(self.smith.diagonal[p]))
                .collect(),
        ))
    }

    /// The Kottwitz map: class of the translation part.
    pub fn kottwitz(&self, w: &ExtendedElement) -> OmegaClass {
        w.class.clone()
    }

    /// Splits an affine map into `omega_c · affine`.
    pub fn decompose(&self, full: &AffineWeylElement) -> Result<ExtendedElement> {
        let class = self.class_of(full.translation())?;
        let omega = self.omega(&class)?;
        Ok(ExtendedElement {
            affine: omega.inverse().compose(full),
            class,
            full: full.clone(),
        })
    }

    pub fn from_affine(&self, affine: &AffineWeylElement) -> ExtendedElement {
        ExtendedElement {
            class: self.zero(),
            affine: affine.clone(),
            full: affine.clone(),
        }
    }

    pub fn element(&self, class: &OmegaClass, affine: &AffineWeylElement) -> Result<ExtendedElement> {
        Ok(ExtendedElement {
            full: self.omega(class)?.compose(affine),
            class: class.clone(),
            affine: affine.clone(),
        })
    }

    pub fn ext_multiply(&self, w: &ExtendedElement, v: &ExtendedElement) -> Result<ExtendedElement> {
        self.decompose(&w.full.checked_compose(&v.full)?)
    }

    pub fn ext_inverse(&self, w: &ExtendedElement) -> Result<ExtendedElement> {
        self.decompose(&w.full.inverse())
    }
}

/// Length on `W`: the affine part's length, `Omega` contributing 0.
pub fn ext_length(sys: &AffineRootSystem, w: &ExtendedElement) -> usize {
    sys.length(&w.affine)
}

/// Quasi-Coxeter Bruhat order: comparable only within one `Omega` class.
pub fn ext_bruhat_leq(sys: &AffineRootSystem, w: &ExtendedElement, v: &ExtendedElement) -> bool {
    w.class == v.class && sys.bruhat_leq(&w.affine, &v.affine)
}
