//! Affine linear forms `c_0 + sum_i c_i t_i` in the t-variables.
//!
//! The constant part absorbs whatever the x- and y-variables contributed
//! once they are specialized to scalars, so the residue engine only ever
//! sees forms over `t_1..t_{d-1}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::{SparsePoly, VarId};
use crate::rational::Rational;

/// `constant + sum coeffs[i] * t_i`, with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct LinearForm {
    constant: Rational,
    coeffs: BTreeMap<u32, Rational>,
}

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm {
            constant: Rational::zero(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        LinearForm {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn var(i: u32) -> Self {
        let mut f = LinearForm::zero();
        f.set_coeff(i, Rational::one());
        f
    }

    pub fn constant_part(&self) -> &Rational {
        &self.constant
    }

    pub fn coeff(&self, i: u32) -> Rational {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set_constant(&mut self, c: Rational) {
        self.constant = c;
    }

    pub fn set_coeff(&mut self, i: u32, c: Rational) {
        if c.is_zero() {
            self.coeffs.remove(&i);
        } else {
            self.coeffs.insert(i, c);
        }
    }

    pub fn add_coeff(&mut self, i: u32, c: Rational) {
        let sum = self.coeff(i) + c;
        self.set_coeff(i, sum);
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True iff the form is `c * t_i` for this exact `i` (nonzero `c`, no
    /// constant term, no other variables).
    pub fn is_pure_var(&self, i: u32) -> bool {
        self.constant.is_zero() && self.coeffs.len() == 1 && self.coeffs.contains_key(&i)
    }

    pub fn t_indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn contains_var(&self, i: u32) -> bool {
        self.coeffs.contains_key(&i)
    }

    /// Smallest t-index carried, if any.
    pub fn lowest_var(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        out.constant = out.constant + other.constant.clone();
        for (i, c) in &other.coeffs {
            out.add_coeff(*i, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> LinearForm {
        if c.is_zero() {
            return LinearForm::zero();
        }
        LinearForm {
            constant: &self.constant * c,
            coeffs: self.coeffs.iter().map(|(i, a)| (*i, a * c)).collect(),
        }
    }

    pub fn neg(&self) -> LinearForm {
        self.scale(&Rational::from_int(-1))
    }

    /// Substitutes the affine form `rho` for `t_i`; the result is again
    /// affine.
    pub fn substitute(&self, i: u32, rho: &LinearForm) -> LinearForm {
        let c = self.coeff(i);
        if c.is_zero() {
            return self.clone();
        }
        let mut out = self.clone();
        out.coeffs.remove(&i);
        out.add(&rho.scale(&c))
    }

    pub fn to_poly(&self) -> SparsePoly {
        let mut p = SparsePoly::constant(self.constant.clone());
        for (i, c) in &self.coeffs {
            p = p.add(&SparsePoly::var(VarId::T(*i)).scale(c));
        }
        p
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly().render())
    }
}
