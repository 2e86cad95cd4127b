//! Mirror map and mirror transformation for the Calabi-Yau boundary `N = k`.
//!
//! Generating functions of the virtual constants are truncated exponential
//! series `sum_d c_d e^(d u)`. The mirror map is
//!
//! ```text
//! t(x) = x + sum_{d>=1} (Lt_1^{k,k,d} / d) e^(dx)
//! ```
//!
//! and its order-by-order inversion `x(t)` turns the virtual generating
//! functions into the true Calabi-Yau structure constants:
//!
//! ```text
//! L_m^{k,k}(e^t) = Lt_m^{k,k}(e^{x(t)}) / Lt_1^{k,k}(e^{x(t)}),  m = 2..k-3.
//! ```
//!
//! The linear term of `t(x)` is carried implicitly: composition only ever
//! needs `e^{x(t)} = e^t * exp(S(e^t))` with `S = x(t) - t` a series with
//! zero constant term, so no transcendental object appears and everything
//! stays rational.

use std::fmt;

use serde::Serialize;

use crate::gw::{GwEngine, GwError, Mode, StructKey};
use crate::rational::Rational;

/// Truncated series `sum_{d=0..D} c_d e^(d u)`; the truncation order `D` is
/// explicit and arithmetic never silently extends it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

/// Series arithmetic errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    DivisionByZeroConstantTerm,
    NonzeroConstantTerm,
    MOutOfRange { k: u32, m: u32 },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::DivisionByZeroConstantTerm => {
                write!(f, "series division needs a nonzero constant term")
            }
            SeriesError::NonzeroConstantTerm => {
                write!(f, "series must have zero constant term")
            }
            SeriesError::MOutOfRange { k, m } => {
                write!(f, "index m = {} outside 2..={} for k = {}", m, k - 3, k)
            }
        }
    }
}

impl std::error::Error for SeriesError {}

impl QSeries {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least order 0");
        QSeries { coeffs }
    }

    pub fn zero(order: u32) -> Self {
        QSeries {
            coeffs: vec![Rational::zero(); order as usize + 1],
        }
    }

    pub fn one(order: u32) -> Self {
        let mut s = QSeries::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn coeff(&self, d: u32) -> Rational {
        self.coeffs
            .get(d as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn truncated(&self, order: u32) -> QSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order as usize + 1);
        QSeries { coeffs }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let order = self.order().min(other.order());
        let mut out = QSeries::zero(order);
        for d in 0..=order as usize {
            out.coeffs[d] = self.coeffs[d].clone() + other.coeffs[d].clone();
        }
        out
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let order = self.order().min(other.order());
        let mut out = QSeries::zero(order);
        for i in 0..=order as usize {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order as usize - i) {
                let p = &self.coeffs[i] * &other.coeffs[j];
                out.coeffs[i + j] += p;
            }
        }
        out
    }

    /// Exact truncated quotient; the divisor needs a nonzero constant term.
    pub fn div(&self, other: &QSeries) -> Result<QSeries, SeriesError> {
        if other.coeffs[0].is_zero() {
            return Err(SeriesError::DivisionByZeroConstantTerm);
        }
        let order = self.order().min(other.order());
        let inv0 = other.coeffs[0].recip();
        let mut out = QSeries::zero(order);
        for d in 0..=order as usize {
            let mut acc = self.coeffs[d].clone();
            for j in 1..=d {
                let p = &other.coeffs[j] * &out.coeffs[d - j];
                acc -= p;
            }
            out.coeffs[d] = acc * inv0.clone();
        }
        Ok(out)
    }

    /// `exp` of a series with zero constant term, exact to the truncation.
    pub fn exp(&self) -> Result<QSeries, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let order = self.order();
        let mut acc = QSeries::one(order);
        let mut term = QSeries::one(order);
        for n in 1..=order as u64 {
            term = term.mul(self).scale(&Rational::new(1, n as i64));
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Multiplication by `e^(shift * u)`: indices move up, the tail beyond
    /// the truncation order is dropped.
    pub fn shifted(&self, shift: u32) -> QSeries {
        let order = self.order();
        let mut out = QSeries::zero(order);
        for d in 0..=order {
            if d + shift <= order {
                out.coeffs[(d + shift) as usize] = self.coeffs[d as usize].clone();
            }
        }
        out
    }

    pub fn render(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match d {
                0 => c.to_string(),
                1 => format!("{}*e^{}", c, var),
                _ => format!("{}*e^{{{}{}}}", c, d, var),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Generating function `Lt_n^{k,k}(e^x) = 1 + sum_d Lt_n^{k,k,d} e^(dx)`.
pub fn virtual_generating_function(
    engine: &GwEngine,
    k: u32,
    n: i64,
    order: u32,
) -> Result<QSeries, GwError> {
    let mut coeffs = vec![Rational::one()];
    for d in 1..=order {
        coeffs.push(engine.compute(
            Mode::Virtual,
            StructKey {
                big_n: k as i64,
                k,
                d,
                n,
            },
        )?);
    }
    Ok(QSeries::from_coeffs(coeffs))
}

/// The mirror map minus its linear term: `t(x) - x` with coefficient
/// `Lt_1^{k,k,d} / d` on `e^(dx)`.
pub fn mirror_map(engine: &GwEngine, k: u32, order: u32) -> Result<QSeries, GwError> {
    let mut coeffs = vec![Rational::zero()];
    for d in 1..=order {
        let l1 = engine.compute(
            Mode::Virtual,
            StructKey {
                big_n: k as i64,
                k,
                d,
                n: 1,
            },
        )?;
        coeffs.push(l1 / Rational::from_int(d as i64));
    }
    Ok(QSeries::from_coeffs(coeffs))
}

/// Order-by-order reversion: given `t(x) - x` returns `x(t) - t`, both as
/// series with zero constant term.
pub fn invert_map(tmx: &QSeries) -> Result<QSeries, SeriesError> {
    if !tmx.coeff(0).is_zero() {
        return Err(SeriesError::NonzeroConstantTerm);
    }
    let order = tmx.order();
    let mut s = QSeries::zero(order);
    // x(t) = t + S(q) forces S = -sum_d r_d q^d exp(d S); the coefficient
    // of q^m only involves s_1..s_{m-1}, so one sweep per order settles it.
    for m in 1..=order {
        let rhs = compose_series(tmx, &s).expect("S has zero constant term");
        s.coeffs[m as usize] = -rhs.coeff(m);
    }
    Ok(s)
}

/// `sum_d f_d e^(d x(t))` for `x(t) = t + S`: composition with the inverted
/// map, computed through `e^{d x(t)} = q^d exp(S)^d`.
pub fn compose_series(f: &QSeries, s: &QSeries) -> Result<QSeries, SeriesError> {
    let order = f.order().min(s.order());
    let f = f.truncated(order);
    let s = s.truncated(order);
    let exp_s = s.exp()?;
    let mut out = QSeries::zero(order);
    let mut power = QSeries::one(order); // exp(S)^d
    for d in 0..=order {
        if d > 0 {
            power = power.mul(&exp_s);
        }
        let c = f.coeff(d);
        if !c.is_zero() {
            out = out.add(&power.scale(&c).shifted(d));
        }
    }
    Ok(out)
}

/// Mirror transformation error.
#[derive(Debug)]
pub enum MirrorError {
    Gw(GwError),
    Series(SeriesError),
}

impl fmt::Display for MirrorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MirrorError::Gw(e) => write!(f, "{}", e),
            MirrorError::Series(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for MirrorError {}

impl From<GwError> for MirrorError {
    fn from(e: GwError) -> Self {
        MirrorError::Gw(e)
    }
}

impl From<SeriesError> for MirrorError {
    fn from(e: SeriesError) -> Self {
        MirrorError::Series(e)
    }
}

/// True Calabi-Yau structure-constant series
/// `L_m^{k,k}(e^t) = Lt_m(e^{x(t)}) / Lt_1(e^{x(t)})` for `m = 2..k-3`.
pub fn mirror_transform(
    engine: &GwEngine,
    k: u32,
    m: u32,
    order: u32,
) -> Result<QSeries, MirrorError> {
    if k < 5 || m < 2 || m > k - 3 {
        return Err(MirrorError::Series(SeriesError::MOutOfRange { k, m }));
    }
    let s = invert_map(&mirror_map(engine, k, order)?)?;
    let num = compose_series(
        &virtual_generating_function(engine, k, m as i64, order)?,
        &s,
    )?;
    let den = compose_series(
        &virtual_generating_function(engine, k, 1, order)?,
        &s,
    )?;
    Ok(num.div(&den)?)
}

/// `a_d = (kd)! / (d!)^k`, the holomorphic-period coefficient.
pub fn hypergeom_a(k: u32, d: u32) -> Rational {
    let kd = Rational::factorial((k * d) as u64);
    let dfac = Rational::factorial(d as u64);
    kd / dfac.pow(k as i32)
}

/// `b_d = a_d * sum_{i=1..d} sum_{m=1..k-1} m / (i (ki - m))`, the
/// log-period coefficient.
pub fn hypergeom_b(k: u32, d: u32) -> Rational {
    let mut acc = Rational::zero();
    for i in 1..=d as i64 {
        for m in 1..k as i64 {
            acc += Rational::from_int(m) / Rational::from_int(i * (k as i64 * i - m));
        }
    }
    hypergeom_a(k, d) * acc
}

/// One row of the hypergeometric comparison report.
#[derive(Clone, Debug, Serialize)]
pub struct HypergeomRow {
    pub k: u32,
    pub d: u32,
    pub a_ok: bool,
    pub b_ok: bool,
    pub a_lhs: String,
    pub a_rhs: String,
    pub b_lhs: String,
    pub b_rhs: String,
}

/// Exact-equality report comparing the recursion route against the closed
/// hypergeometric forms:
/// `a_d = Lt_0^{k,k,d}` and
/// `b_d = Lt_1^{k,k,d}/d + sum_{m<d} Lt_1^{k,k,m} Lt_0^{k,k,d-m} / m`.
pub fn hypergeom_check(
    engine: &GwEngine,
    k: u32,
    d_max: u32,
) -> Result<Vec<HypergeomRow>, GwError> {
    let lt = |n: i64, d: u32| {
        if d == 0 {
            return Ok(Rational::one());
        }
        engine.compute(
            Mode::Virtual,
            StructKey {
                big_n: k as i64,
                k,
                d,
                n,
            },
        )
    };
    let mut rows = Vec::new();
    for d in 1..=d_max {
        let a_lhs = lt(0, d)?;
        let a_rhs = hypergeom_a(k, d);
        let mut b_lhs = lt(1, d)? / Rational::from_int(d as i64);
        for m in 1..d {
            let p = lt(1, m)? * lt(0, d - m)?;
            b_lhs += p / Rational::from_int(m as i64);
        }
        let b_rhs = hypergeom_b(k, d);
        rows.push(HypergeomRow {
            k,
            d,
            a_ok: a_lhs == a_rhs,
            b_ok: b_lhs == b_rhs,
            a_lhs: a_lhs.to_string(),
            a_rhs: a_rhs.to_string(),
            b_lhs: b_lhs.to_string(),
            b_rhs: b_rhs.to_string(),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gw::GwEngine;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn series_identities() {
        let one = QSeries::one(3);
        let mut a = QSeries::zero(3);
        a.coeffs[0] = q(1, 1);
        a.coeffs[1] = q(2, 1);
        a.coeffs[3] = q(-1, 3);
        assert_eq!(a.mul(&one), a);
        assert_eq!(a.div(&a).unwrap(), one);
        assert_eq!(a.add(&QSeries::zero(3)), a);
    }

    #[test]
    fn division_requires_unit() {
        let z = QSeries::zero(2);
        assert!(matches!(
            QSeries::one(2).div(&z),
            Err(SeriesError::DivisionByZeroConstantTerm)
        ));
    }

    #[test]
    fn w0_for_quintic() {
        // 1 + 120 q + 113400 q^2
        assert_eq!(hypergeom_a(5, 1), q(120, 1));
        assert_eq!(hypergeom_a(5, 2), q(113400, 1));
    }

    #[test]
    fn b1_for_quintic() {
        // 120 * (1/4 + 2/3 + 3/2 + 4) = 770
        assert_eq!(hypergeom_b(5, 1), q(770, 1));
    }

    #[test]
    fn a_d_recurrence() {
        // a_d d^(k-1) = k a_{d-1} prod_{j=1..k-1} (k(d-1) + j)
        for k in 3..=8u32 {
            for d in 1..=5u32 {
                let lhs = hypergeom_a(k, d) * Rational::from_int(d as i64).pow(k as i32 - 1);
                let mut rhs = hypergeom_a(k, d - 1) * Rational::from_int(k as i64);
                for j in 1..k as i64 {
                    rhs *= Rational::from_int(k as i64 * (d as i64 - 1) + j);
                }
                assert_eq!(lhs, rhs, "k = {}, d = {}", k, d);
            }
        }
    }

    #[test]
    fn trivial_map_inverts_to_identity() {
        let s = invert_map(&QSeries::zero(4)).unwrap();
        assert_eq!(s, QSeries::zero(4));
    }

    #[test]
    fn single_term_map_inversion() {
        // t = x + c e^x  =>  x = t - c e^t + c^2 e^{2t} - ... ; verified by
        // back-substitution below, with the second coefficient checked
        // explicitly.
        let c = q(3, 7);
        let mut tmx = QSeries::zero(4);
        tmx.coeffs[1] = c.clone();
        let s = invert_map(&tmx).unwrap();
        assert_eq!(s.coeff(1), -c.clone());
        assert_eq!(s.coeff(2), &c * &c);
        // t(x(t)) = t: the defect series S + sum r_d q^d exp(dS) vanishes
        let back = compose_series(&tmx, &s).unwrap().add(&s);
        assert_eq!(back, QSeries::zero(4));
    }

    #[test]
    fn composition_round_trip_small() {
        let mut tmx = QSeries::zero(5);
        tmx.coeffs[1] = q(5, 1);
        tmx.coeffs[2] = q(-7, 3);
        tmx.coeffs[3] = q(1, 2);
        let s = invert_map(&tmx).unwrap();
        // x(t(x)) = x as well: invert the inverse
        let back = invert_map(&s).unwrap();
        assert_eq!(back, tmx);
    }

    #[test]
    fn mirror_map_matches_derivative_identity() {
        // dt/dx = Lt_1(e^x): coefficient d * (Lt_1^d / d) = Lt_1^d
        let engine = GwEngine::with_degrees(3).unwrap();
        let k = 5;
        let tmx = mirror_map(&engine, k, 3).unwrap();
        let lt1 = virtual_generating_function(&engine, k, 1, 3).unwrap();
        for d in 1..=3u32 {
            assert_eq!(
                tmx.coeff(d) * Rational::from_int(d as i64),
                lt1.coeff(d)
            );
        }
    }

    #[test]
    fn mirror_transform_constant_term_and_range() {
        let engine = GwEngine::with_degrees(2).unwrap();
        let series = mirror_transform(&engine, 5, 2, 2).unwrap();
        assert_eq!(series.coeff(0), Rational::one());
        assert!(matches!(
            mirror_transform(&engine, 5, 3, 2),
            Err(MirrorError::Series(SeriesError::MOutOfRange { .. }))
        ));
        assert!(matches!(
            mirror_transform(&engine, 4, 2, 2),
            Err(MirrorError::Series(SeriesError::MOutOfRange { .. }))
        ));
    }

    #[test]
    fn mirror_transform_first_order_oracle() {
        // To first order the transform is Lt_m^{k,k,1} - Lt_1^{k,k,1}.
        let engine = GwEngine::with_degrees(1).unwrap();
        let k = 5;
        let series = mirror_transform(&engine, k, 2, 1).unwrap();
        let lt = |n: i64| {
            engine
                .compute(
                    Mode::Virtual,
                    StructKey {
                        big_n: k as i64,
                        k,
                        d: 1,
                        n,
                    },
                )
                .unwrap()
        };
        assert_eq!(series.coeff(1), lt(2) - lt(1));
    }

    #[test]
    fn hypergeom_small_exact() {
        let engine = GwEngine::with_degrees(2).unwrap();
        for k in 3..=6 {
            for row in hypergeom_check(&engine, k, 2).unwrap() {
                assert!(row.a_ok && row.b_ok, "{:?}", row);
            }
        }
    }

    #[test]
    fn mirror_transform_truncation_zero_is_constant_one() {
        let engine = GwEngine::with_degrees(1).unwrap();
        let series = mirror_transform(&engine, 6, 2, 0).unwrap();
        assert_eq!(series, QSeries::one(0));
    }
}
