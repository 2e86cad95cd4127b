//! Iterated constant-term extraction on factored rational expressions.
//!
//! A `RatExpr` is `prefactor * prod(numerator forms^mult) / prod(denominator
//! forms^mult)` where every form is affine in `t_1..t_{d-1}` and carries the
//! index of the variable it is monic in (its *owner*).
//!
//! `iterated_residue` computes the coefficient of `t_1^0 ... t_{d-1}^0`,
//! one variable at a time, as a contour integral `(1/2*pi*i) \oint dt_i/t_i`.
//! The pole rule: integrating in `t_i`, the poles inside the contour are
//! `t_i = 0` together with the roots of denominator factors owned by `t_i`;
//! poles of denominator factors owned by other variables lie outside. This
//! is the contour choice under which the geometric expansion of each owned
//! factor in descending powers of its own variable is valid.
//!
//! Higher-multiplicity poles use the derivative formula
//! `Res = (1/(p-1)!) (d/dt)^(p-1) [(t - r)^p f]` at `t = r`.

use std::fmt;

use crate::linear::LinearForm;
use crate::poly::{SparsePoly, VarId};
use crate::rational::Rational;

/// Which side of the fraction bar a factor lives on.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum FactorSide {
    Numerator,
    Denominator,
}

/// An affine form raised to a positive power, tagged with the t-variable it
/// is monic in.
///
/// The owner tag is what drives pole selection; after substitutions a factor
/// may no longer contain its owner variable (a *stale* tag), in which case
/// it never contributes a pole again.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct OwnedFactor {
    pub form: LinearForm,
    pub owner: u32,
    pub multiplicity: u32,
    pub side: FactorSide,
}

impl OwnedFactor {
    pub fn numerator(form: LinearForm, owner: u32) -> Self {
        OwnedFactor {
            form,
            owner,
            multiplicity: 1,
            side: FactorSide::Numerator,
        }
    }

    pub fn denominator(form: LinearForm, owner: u32, multiplicity: u32) -> Self {
        OwnedFactor {
            form,
            owner,
            multiplicity,
            side: FactorSide::Denominator,
        }
    }
}

/// Degeneracy during residue extraction: a substitution collapsed the
/// expression (zero denominator form or coincident poles). The caller is
/// expected to retry with a different (x, y) sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegeneracyError {
    ZeroDenominatorForm,
    CoincidentPoles(u32),
    InconsistentDeformation,
}

impl fmt::Display for DegeneracyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegeneracyError::ZeroDenominatorForm => {
                write!(f, "substitution made a denominator factor identically zero")
            }
            DegeneracyError::CoincidentPoles(i) => {
                write!(f, "coincident poles in t_{}", i)
            }
            DegeneracyError::InconsistentDeformation => {
                write!(f, "deformed evaluations disagree; input is not deformation-invariant")
            }
        }
    }
}

impl std::error::Error for DegeneracyError {}

/// A factored rational expression in the t-variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatExpr {
    prefactor: SparsePoly,
    factors: Vec<OwnedFactor>,
}

impl RatExpr {
    pub fn zero() -> Self {
        RatExpr {
            prefactor: SparsePoly::zero(),
            factors: Vec::new(),
        }
    }

    pub fn one() -> Self {
        RatExpr {
            prefactor: SparsePoly::one(),
            factors: Vec::new(),
        }
    }

    pub fn from_poly(p: SparsePoly) -> Self {
        RatExpr {
            prefactor: p,
            factors: Vec::new(),
        }
    }

    /// Builds and canonicalizes. Errors if a denominator form is identically
    /// zero.
    pub fn new(prefactor: SparsePoly, factors: Vec<OwnedFactor>) -> Result<Self, DegeneracyError> {
        RatExpr { prefactor, factors }.normalized()
    }

    pub fn prefactor(&self) -> &SparsePoly {
        &self.prefactor
    }

    pub fn factors(&self) -> &[OwnedFactor] {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.prefactor.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> RatExpr {
        if c.is_zero() {
            return RatExpr::zero();
        }
        RatExpr {
            prefactor: self.prefactor.scale(c),
            factors: self.factors.clone(),
        }
    }

    pub fn contains_var(&self, i: u32) -> bool {
        self.prefactor.contains_var(VarId::T(i))
            || self.factors.iter().any(|f| f.form.contains_var(i))
    }

    /// All t-indices occurring anywhere in the expression.
    pub fn t_indices(&self) -> Vec<u32> {
        let mut out: Vec<u32> = Vec::new();
        for (m, _) in self.prefactor.terms() {
            for v in m.vars() {
                if let VarId::T(i) = v {
                    out.push(i);
                }
            }
        }
        for f in &self.factors {
            out.extend(f.form.t_indices());
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Canonical form: constant factors absorbed into the prefactor, every
    /// retained factor normalized to leading coefficient one (the owner
    /// coefficient when present), identical factors merged, deterministic
    /// factor order.
    fn normalized(mut self) -> Result<RatExpr, DegeneracyError> {
        let mut kept: Vec<OwnedFactor> = Vec::new();
        let mut scale = Rational::one();
        let mut zero = self.prefactor.is_zero();
        for f in self.factors.drain(..) {
            if f.form.is_zero() {
                match f.side {
                    FactorSide::Denominator => return Err(DegeneracyError::ZeroDenominatorForm),
                    FactorSide::Numerator => {
                        zero = true;
                        continue;
                    }
                }
            }
            if f.form.is_constant() {
                let c = f.form.constant_part().clone();
                let e = f.multiplicity as i32;
                scale *= match f.side {
                    FactorSide::Numerator => c.pow(e),
                    FactorSide::Denominator => c.pow(-e),
                };
                continue;
            }
            let lead = {
                let c = f.form.coeff(f.owner);
                if c.is_zero() {
                    f.form.coeff(f.form.lowest_var().unwrap())
                } else {
                    c
                }
            };
            let mut form = f.form;
            if !lead.is_one() {
                form = form.scale(&lead.recip());
                let e = f.multiplicity as i32;
                scale *= match f.side {
                    FactorSide::Numerator => lead.pow(e),
                    FactorSide::Denominator => lead.pow(-e),
                };
            }
            kept.push(OwnedFactor { form, ..f });
        }
        if zero {
            return Ok(RatExpr::zero());
        }
        let mut prefactor = self.prefactor.scale(&scale);
        kept.sort_by(|a, b| {
            (a.side, a.owner, &a.form).cmp(&(b.side, b.owner, &b.form))
        });
        let mut merged: Vec<OwnedFactor> = Vec::new();
        for f in kept {
            match merged.last_mut() {
                Some(last) if last.side == f.side && last.owner == f.owner && last.form == f.form => {
                    last.multiplicity += f.multiplicity;
                }
                _ => merged.push(f),
            }
        }
        // Pure single-variable factors reduce against the prefactor: into it
        // for numerators, cancelled out of it for denominators when every
        // term carries enough of the variable.
        let mut factors: Vec<OwnedFactor> = Vec::new();
        for f in merged {
            if let Some(i) = f.form.lowest_var() {
                if f.form.is_pure_var(i) {
                    match f.side {
                        FactorSide::Numerator => {
                            let mono =
                                SparsePoly::var(VarId::T(i)).pow(f.multiplicity);
                            prefactor = prefactor.mul(&mono);
                            continue;
                        }
                        FactorSide::Denominator => {
                            if let Some(q) =
                                prefactor.divide_by_var(VarId::T(i), f.multiplicity)
                            {
                                prefactor = q;
                                continue;
                            }
                        }
                    }
                }
            }
            factors.push(f);
        }
        Ok(RatExpr { prefactor, factors })
    }

    /// The value of a fully-substituted expression. Panics if any variable
    /// is left; callers integrate over every occurring index first.
    pub fn as_constant(&self) -> Rational {
        assert!(
            self.factors.is_empty(),
            "expression still carries factors: {:?}",
            self.factors
        );
        self.prefactor
            .as_constant()
            .expect("expression still carries variables in its prefactor")
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.prefactor.render())?;
        for fac in &self.factors {
            let sep = match fac.side {
                FactorSide::Numerator => "*",
                FactorSide::Denominator => "/",
            };
            write!(f, " {} ({})^{}@t_{}", sep, fac.form, fac.multiplicity, fac.owner)?;
        }
        Ok(())
    }
}

/// Substitutes the affine form `rho` for `t_i` everywhere.
pub fn substitute(e: &RatExpr, i: u32, rho: &LinearForm) -> Result<RatExpr, DegeneracyError> {
    let prefactor = e.prefactor.substitute_form(VarId::T(i), rho);
    let factors = e
        .factors
        .iter()
        .map(|f| OwnedFactor {
            form: f.form.substitute(i, rho),
            ..f.clone()
        })
        .collect();
    RatExpr { prefactor, factors }.normalized()
}

/// Exact partial derivative with respect to `t_i`, denominator factors kept
/// factored (multiplicities bumped by one), numerator products expanded.
pub fn differentiate(e: &RatExpr, i: u32) -> RatExpr {
    let nums: Vec<&OwnedFactor> = e
        .factors
        .iter()
        .filter(|f| f.side == FactorSide::Numerator)
        .collect();
    let dens: Vec<&OwnedFactor> = e
        .factors
        .iter()
        .filter(|f| f.side == FactorSide::Denominator)
        .collect();
    // Denominator factors actually depending on t_i get their multiplicity
    // bumped; they are the common-denominator cofactors below.
    let dep: Vec<bool> = dens.iter().map(|f| !f.form.coeff(i).is_zero()).collect();

    let num_product = |skip: Option<usize>| -> SparsePoly {
        let mut p = SparsePoly::one();
        for (l, f) in nums.iter().enumerate() {
            let e_l = if skip == Some(l) {
                f.multiplicity - 1
            } else {
                f.multiplicity
            };
            p = p.mul(&f.form.to_poly().pow(e_l));
        }
        p
    };
    let dep_product = |skip: Option<usize>| -> SparsePoly {
        let mut p = SparsePoly::one();
        for (j, f) in dens.iter().enumerate() {
            if dep[j] && skip != Some(j) {
                p = p.mul(&f.form.to_poly());
            }
        }
        p
    };

    // d/dt [P * prod f^a / prod g^b]
    //   = [P' prod f + P sum_l a_l f_l' (prod f / f_l)] / prod g
    //     - P prod f sum_j b_j g_j' / (g_j prod g)
    // over the common denominator prod g_j^(b_j + dep_j).
    let mut total = e.prefactor.derivative(VarId::T(i)).mul(&num_product(None));
    for (l, f) in nums.iter().enumerate() {
        let c = f.form.coeff(i);
        if c.is_zero() {
            continue;
        }
        let coeff = c * &Rational::from_int(f.multiplicity as i64);
        total = total.add(&e.prefactor.mul(&num_product(Some(l))).scale(&coeff));
    }
    let mut total = total.mul(&dep_product(None));
    for (j, f) in dens.iter().enumerate() {
        if !dep[j] {
            continue;
        }
        let coeff = f.form.coeff(i) * Rational::from_int(-(f.multiplicity as i64));
        total = total.add(
            &e.prefactor
                .mul(&num_product(None))
                .mul(&dep_product(Some(j)))
                .scale(&coeff),
        );
    }
    let factors: Vec<OwnedFactor> = dens
        .iter()
        .zip(dep.iter())
        .map(|(f, d)| OwnedFactor {
            multiplicity: f.multiplicity + u32::from(*d),
            ..(*f).clone()
        })
        .collect();
    RatExpr {
        prefactor: total,
        factors,
    }
    .normalized()
    .expect("differentiation cannot introduce zero denominator forms")
}

/// The inside-pole residue sum `sum_p Res_{t_i = p} (e / t_i)` as a list of
/// per-pole contributions (not yet put over a common denominator).
pub fn residue_contributions(e: &RatExpr, i: u32) -> Result<Vec<RatExpr>, DegeneracyError> {
    if e.is_zero() {
        return Ok(Vec::new());
    }
    if !e.contains_var(i) {
        // Coefficient extraction of t_i^0 from a t_i-free expression.
        return Ok(vec![e.clone()]);
    }

    // Classify denominator factors:
    //  - pure multiples of t_i pile multiplicity onto the pole at 0,
    //    whatever their owner tag (their root *is* the origin);
    //  - factors owned by t_i and still containing it contribute their root
    //    as an inside pole;
    //  - everything else stays outside the contour.
    let mut pole0_mult = 1u32;
    let mut pole0_scale = Rational::one();
    let mut owned: Vec<(usize, LinearForm, u32)> = Vec::new();
    for (idx, f) in e.factors.iter().enumerate() {
        if f.side != FactorSide::Denominator {
            continue;
        }
        if f.form.is_pure_var(i) {
            pole0_mult += f.multiplicity;
            pole0_scale *= f.form.coeff(i).pow(f.multiplicity as i32);
        } else if f.owner == i && !f.form.coeff(i).is_zero() {
            // Monic in t_i by the canonical form; the root is minus the rest.
            let mut root = f.form.neg();
            root.set_coeff(i, Rational::zero());
            owned.push((idx, root, f.multiplicity));
        }
    }
    for (a, (_, ra, _)) in owned.iter().enumerate() {
        for (_, rb, _) in &owned[a + 1..] {
            if ra == rb {
                return Err(DegeneracyError::CoincidentPoles(i));
            }
        }
    }

    let mut out = Vec::new();

    // Pole at t_i = 0, order pole0_mult.
    {
        let core = RatExpr {
            prefactor: e.prefactor.scale(&pole0_scale.recip()),
            factors: e
                .factors
                .iter()
                .filter(|f| !(f.side == FactorSide::Denominator && f.form.is_pure_var(i)))
                .cloned()
                .collect(),
        };
        let res = taylor_coefficient(&core, i, pole0_mult - 1, &LinearForm::zero())?;
        if !res.is_zero() {
            out.push(res);
        }
    }

    // Roots of owned denominator factors.
    for (idx, root, mult) in owned {
        let mut factors: Vec<OwnedFactor> = e
            .factors
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != idx)
            .map(|(_, f)| f.clone())
            .collect();
        factors.push(OwnedFactor::denominator(LinearForm::var(i), i, 1));
        let core = RatExpr {
            prefactor: e.prefactor.clone(),
            factors,
        };
        let res = taylor_coefficient(&core, i, mult - 1, &root)?;
        if !res.is_zero() {
            out.push(res);
        }
    }

    Ok(out)
}

/// `(1/n!) (d/dt_i)^n g` evaluated at `t_i = at`.
fn taylor_coefficient(
    g: &RatExpr,
    i: u32,
    n: u32,
    at: &LinearForm,
) -> Result<RatExpr, DegeneracyError> {
    let mut d = g.clone();
    for _ in 0..n {
        d = differentiate(&d, i);
    }
    let res = substitute(&d, i, at)?;
    Ok(res.scale(&Rational::factorial(n as u64).recip()))
}

/// Single residue step with the contributions recombined over a common
/// denominator, so the result is again one `RatExpr`.
pub fn residue_in_var(e: &RatExpr, i: u32) -> Result<RatExpr, DegeneracyError> {
    combine_sum(residue_contributions(e, i)?)
}

/// Sum of expressions as one expression over the merged denominator.
pub fn combine_sum(terms: Vec<RatExpr>) -> Result<RatExpr, DegeneracyError> {
    if terms.is_empty() {
        return Ok(RatExpr::zero());
    }
    if terms.len() == 1 {
        return Ok(terms.into_iter().next().unwrap());
    }
    // Common denominator: per (form, owner) key, the largest multiplicity.
    let mut keys: Vec<(LinearForm, u32, u32)> = Vec::new();
    for t in &terms {
        for f in &t.factors {
            if f.side != FactorSide::Denominator {
                continue;
            }
            match keys
                .iter_mut()
                .find(|(form, owner, _)| *form == f.form && *owner == f.owner)
            {
                Some(k) => k.2 = k.2.max(f.multiplicity),
                None => keys.push((f.form.clone(), f.owner, f.multiplicity)),
            }
        }
    }
    let mut numerator = SparsePoly::zero();
    for t in &terms {
        let mut n = t.prefactor.clone();
        for f in &t.factors {
            if f.side == FactorSide::Numerator {
                n = n.mul(&f.form.to_poly().pow(f.multiplicity));
            }
        }
        for (form, owner, max_mult) in &keys {
            let have = t
                .factors
                .iter()
                .find(|f| {
                    f.side == FactorSide::Denominator && f.form == *form && f.owner == *owner
                })
                .map(|f| f.multiplicity)
                .unwrap_or(0);
            if have < *max_mult {
                n = n.mul(&form.to_poly().pow(max_mult - have));
            }
        }
        numerator = numerator.add(&n);
    }
    let factors = keys
        .into_iter()
        .map(|(form, owner, mult)| OwnedFactor::denominator(form, owner, mult))
        .collect();
    RatExpr {
        prefactor: numerator,
        factors,
    }
    .normalized()
}

/// Folds `residue_in_var` over `order`, which must cover every t-index
/// occurring in `e`; the result is an exact scalar.
pub fn iterated_residue(e: &RatExpr, order: &[u32]) -> Result<Rational, DegeneracyError> {
    let mut terms = vec![e.clone()];
    for &i in order {
        let mut next = Vec::new();
        for t in &terms {
            next.extend(residue_contributions(t, i)?);
        }
        terms = next;
    }
    let mut total = Rational::zero();
    for t in terms {
        total += t.as_constant();
    }
    Ok(total)
}

/// Evaluates degenerate configurations by exact continuation.
///
/// For integrands arising as top-degree z-monomial coefficients, shifting a
/// denominator factor by a constant differentiates into an over-saturated
/// coefficient whose extraction vanishes, so the value is locally constant
/// in the offsets. When the plain evaluation degenerates (structurally
/// coincident poles, which do occur for the homogeneous printed integrands
/// in three or more live variables), this evaluates at generically offset
/// denominator constants instead and cross-checks the value across
/// independent offset directions before accepting it.
pub fn iterated_residue_deformed(
    e: &RatExpr,
    order: &[u32],
) -> Result<Rational, DegeneracyError> {
    let plain = iterated_residue(e, order);
    if plain.is_ok() {
        return plain;
    }
    // distinct multiplier families keep the deformed poles apart
    let configs: [(i64, i64); 4] = [(1, 9973), (1, 31337), (3, 7919), (7, 104729)];
    let mut value: Option<Rational> = None;
    let mut agreements = 0;
    let mut last_err = plain.unwrap_err();
    for (mult_seed, eps_den) in configs {
        let eps = Rational::new(1, eps_den);
        let mut u = Rational::from_int(mult_seed);
        let deformed = RatExpr {
            prefactor: e.prefactor.clone(),
            factors: e
                .factors
                .iter()
                .map(|f| {
                    let mut form = f.form.clone();
                    if f.side == FactorSide::Denominator {
                        u = &u * &Rational::from_int(mult_seed + 2);
                        form.set_constant(form.constant_part() + &(&eps * &u));
                    }
                    OwnedFactor { form, ..f.clone() }
                })
                .collect(),
        };
        let deformed = match deformed.normalized() {
            Ok(d) => d,
            Err(err) => {
                last_err = err;
                continue;
            }
        };
        match iterated_residue(&deformed, order) {
            Ok(v) => match &value {
                Some(prev) if *prev != v => {
                    return Err(DegeneracyError::InconsistentDeformation)
                }
                Some(_) => {
                    agreements += 1;
                    if agreements >= 1 {
                        return Ok(v);
                    }
                }
                None => value = Some(v),
            },
            Err(err) => last_err = err,
        }
    }
    Err(last_err)
}
