use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::{dn_relation, EquationRow, Recursion, RecursionForm, TermKey};
use crate::arith::{int, lcm_denominators, Rational, UniPoly};
use crate::{Error, Result};

/// The multiplier `a_{ell,i}` of `E_{ell,i} = E_ell(t -> t - i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unknown {
    pub ell: i64,
    pub i: i64,
}

/// The linear conditions "coefficient of `d_n(ell, t - s)` vanishes" for all
/// `ell >= 1`, over the unknowns `a_{ell,i}`.
///
/// Unknowns are ordered lexicographically by `(ell, i)` and rows by their
/// key `(ell, s)`.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub n: u32,
    pub unknowns: Vec<Unknown>,
    pub rows: Vec<(TermKey, Vec<UniPoly>)>,
    equations: Vec<EquationRow>,
}

impl ConstraintSystem {
    pub fn build(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("n", format!("n >= 3 required, got {n}")));
        }
        let ni = i64::from(n);
        let mut unknowns = Vec::new();
        let mut equations = Vec::new();
        for ell in 0..=ni - 2 {
            let base = dn_relation(n, ell, n - 2, 1, 2)?;
            for i in 0..=ni - 2 - ell {
                unknowns.push(Unknown { ell, i });
                equations.push(base.shifted(i));
            }
        }
        let keys: BTreeSet<TermKey> = equations
            .iter()
            .flat_map(|e| e.coefficients().keys().copied())
            .filter(|k| k.ell >= 1)
            .collect();
        let rows = keys
            .into_iter()
            .map(|k| (k, equations.iter().map(|e| e.coefficient(k)).collect()))
            .collect();
        Ok(ConstraintSystem {
            n,
            unknowns,
            rows,
            equations,
        })
    }

    /// The shifted relations `E_{ell,i}`, parallel to `unknowns`.
    pub fn equations(&self) -> &[EquationRow] {
        &self.equations
    }

    /// Checks that the matrix is upper triangular with the constant
    /// diagonal `(ell+1)(n-2-ell)` at column `a_{ell,i}`, and that the
    /// only column without a row is `a_{n-2,0}`.
    pub fn check_triangular(&self) -> Result<()> {
        let ni = i64::from(self.n);
        if self.rows.len() + 1 != self.unknowns.len() {
            return Err(Error::Structural(format!(
                "{} conditions for {} unknowns",
                self.rows.len(),
                self.unknowns.len()
            )));
        }
        for (r, (key, entries)) in self.rows.iter().enumerate() {
            let u = self.unknowns[r];
            let diag = int((u.ell + 1) * (ni - 2 - u.ell));
            if entries[r] != UniPoly::constant(diag.clone()) || diag.is_zero() {
                return Err(Error::Structural(format!(
                    "row {key:?}: diagonal at {u:?} is {}, expected {diag}",
                    entries[r]
                )));
            }
            if let Some(c) = entries[..r].iter().position(|e| !e.is_zero()) {
                return Err(Error::Structural(format!(
                    "row {key:?} has a nonzero entry below the diagonal at {:?}",
                    self.unknowns[c]
                )));
            }
        }
        let last = self.unknowns.last().copied();
        if last != Some(Unknown { ell: ni - 2, i: 0 }) {
            return Err(Error::Structural(format!("free column is {last:?}")));
        }
        Ok(())
    }
}

/// Result of the elimination.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub system: ConstraintSystem,
    /// Polynomial multipliers `a_{ell,i}`, scaled to clear all denominators.
    pub multipliers: Vec<(Unknown, UniPoly)>,
    /// `sum a_{ell,i} E_{ell,i}`; only `ell = 0` keys survive.
    pub combined: EquationRow,
    pub recursion: Recursion,
}

/// Solves for multipliers that cancel every `d_n(ell >= 1, .)` term and
/// returns the induced recursion on `d_n(0, .)`.
///
/// The solver is generic row reduction that only ever divides by nonzero
/// constant pivots, so all multipliers stay polynomial. A row admitting no
/// constant pivot, or more than one free unknown, is a structural error.
pub fn eliminate(n: u32) -> Result<Elimination> {
    let system = ConstraintSystem::build(n)?;
    let ncols = system.unknowns.len();
    let mut m: Vec<Vec<UniPoly>> = system.rows.iter().map(|(_, r)| r.clone()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut is_pivot = vec![false; ncols];

    for r in 0..m.len() {
        if m[r].iter().all(|e| e.is_zero()) {
            continue;
        }
        let col = (0..ncols)
            .find(|&c| !is_pivot[c] && m[r][c].is_constant() && !m[r][c].is_zero())
            .ok_or_else(|| {
                Error::Structural(format!("condition {:?} has no constant pivot", system.rows[r].0))
            })?;
        is_pivot[col] = true;
        pivots.push((r, col));
        let p = m[r][col].coeff(0);
        for r2 in r + 1..m.len() {
            if m[r2][col].is_zero() {
                continue;
            }
            let factor = m[r2][col].scale(&(-(Rational::one() / &p)));
            let src = m[r].clone();
            for (dst, s) in m[r2].iter_mut().zip(&src) {
                if !s.is_zero() {
                    *dst = &*dst + &(s * &factor);
                }
            }
        }
    }

    let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    if free.len() != 1 {
        return Err(Error::Structural(format!(
            "expected one free multiplier, found {}",
            free.len()
        )));
    }
    let mut value: Vec<Option<UniPoly>> = vec![None; ncols];
    value[free[0]] = Some(UniPoly::one());
    for &(r, col) in pivots.iter().rev() {
        let mut acc = UniPoly::zero();
        for (c, e) in m[r].iter().enumerate() {
            if c == col || e.is_zero() {
                continue;
            }
            let v = value[c].as_ref().ok_or_else(|| {
                Error::Structural(format!("back substitution reached unsolved {:?}", system.unknowns[c]))
            })?;
            acc = &acc + &(e * v);
        }
        let p = m[r][col].coeff(0);
        value[col] = Some(acc.scale(&(-(Rational::one() / p))));
    }

    let values: Vec<UniPoly> = value.into_iter().map(|v| v.unwrap_or_default()).collect();
    let den = Rational::from_integer(lcm_denominators(values.iter().flat_map(|p| p.coeffs())));
    let values: Vec<UniPoly> = values.iter().map(|p| p.scale(&den)).collect();

    let mut combined = EquationRow::new();
    for (e, a) in system.equations().iter().zip(&values) {
        combined.add_scaled(e, a);
    }
    if let Some(k) = combined.coefficients().keys().find(|k| k.ell >= 1) {
        return Err(Error::Structural(format!("d({}, t-{}) survives elimination", k.ell, k.shift)));
    }
    let ni = i64::from(n);
    let by_shift: BTreeMap<i64, UniPoly> = combined.coefficients().iter().map(|(k, p)| (k.shift, p.clone())).collect();
    if let Some(s) = by_shift.keys().find(|&&s| s >= ni) {
        return Err(Error::Structural(format!("unexpected term d(0, t-{s})")));
    }
    let c = (0..ni).map(|s| by_shift.get(&s).cloned().unwrap_or_default()).collect();
    let recursion = Recursion::normalized(n, c, RecursionForm::DForm)?;
    let multipliers = system.unknowns.iter().copied().zip(values).collect();
    Ok(Elimination {
        system,
        multipliers,
        combined,
        recursion,
    })
}
