//! Structure constants `L_n^{N,k,d}` by descending-N recursion.
//!
//! Base data: in the `N >= 2k` region the degree-one constants are the
//! coefficients of `k * prod_{j=1..k-1} (j w + (k - j))` and everything of
//! higher degree vanishes. One recursion step writes the row at `N` in
//! terms of the row at `N+1`, with the `(N-k)` appearing in the shifts
//! taken from the target row.
//!
//! Two evaluation modes:
//!
//! * `Fano`: true structure constants for `N > k`. Entries outside the
//!   dimension-selection range are zero, and the `N-k = 1` row receives the
//!   degree-one correction `L_m -> L_m - k!`.
//! * `Virtual`: the recursion iterated mechanically down to `N = k`, no
//!   correction and no range cut; this is what feeds the mirror map.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::comb::{phi_map, RecursionFormula};
use crate::polyd::{poly_d_with_jobs, PolyBuildError};
use crate::rational::Rational;

/// Evaluation mode for the recursion.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Mode {
    Fano,
    Virtual,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Fano => "fano",
            Mode::Virtual => "virtual",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fano" => Ok(Mode::Fano),
            "virtual" => Ok(Mode::Virtual),
            other => Err(format!("unknown mode `{}`", other)),
        }
    }
}

/// Index of one structure constant.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct StructKey {
    pub big_n: i64,
    pub k: u32,
    pub d: u32,
    pub n: i64,
}

/// Errors from the recursion engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GwError {
    SmallK(u32),
    FanoRequiresNAboveK { big_n: i64, k: u32 },
    VirtualRequiresNAtLeastK { big_n: i64, k: u32 },
    MissingFormula(u32),
    Build(PolyBuildError),
}

impl fmt::Display for GwError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GwError::SmallK(k) => write!(f, "hypersurface degree k must be >= 2, got {}", k),
            GwError::FanoRequiresNAboveK { big_n, k } => {
                write!(f, "fano mode needs N >= k+1, got N = {}, k = {}", big_n, k)
            }
            GwError::VirtualRequiresNAtLeastK { big_n, k } => {
                write!(f, "virtual mode needs N >= k, got N = {}, k = {}", big_n, k)
            }
            GwError::MissingFormula(d) => {
                write!(f, "no recursion formula available for degree {}", d)
            }
            GwError::Build(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for GwError {}

impl From<PolyBuildError> for GwError {
    fn from(e: PolyBuildError) -> Self {
        GwError::Build(e)
    }
}

/// Coefficients `L_n^{N,k,1}` for `n = 0..k-1` of
/// `k * prod_{j=1..k-1} (j w + (k-j))`; the initial data valid throughout
/// the `N - k >= 2` range.
pub fn beauville_init(k: u32) -> Result<Vec<Rational>, GwError> {
    if k < 2 {
        return Err(GwError::SmallK(k));
    }
    let mut coeffs = vec![Rational::from_int(k as i64)];
    for j in 1..k {
        // multiply by (j w + (k - j))
        let a = Rational::from_int(j as i64);
        let b = Rational::from_int((k - j) as i64);
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] += c * &b;
            next[i + 1] += c * &a;
        }
        coeffs = next;
    }
    Ok(coeffs)
}

/// The index interval on which `L_m^{N,k,d}` may be nonzero, by the
/// dimension count of the three-point function; `None` when empty.
pub fn selection_range(big_n: i64, k: u32, d: u32) -> Option<(i64, i64)> {
    let nk = big_n - k as i64;
    let d = d as i64;
    let (lo, hi) = if nk >= 2 {
        (0, (big_n - 1) - nk * d)
    } else if nk == 1 && d == 1 {
        (1, big_n - 3)
    } else if nk == 1 {
        (0, big_n - 1 - nk * d)
    } else {
        (2 + (-nk) * d, big_n - 3)
    };
    if lo <= hi {
        Some((lo, hi))
    } else {
        None
    }
}

fn in_selection_range(big_n: i64, k: u32, d: u32, n: i64) -> bool {
    match selection_range(big_n, k, d) {
        Some((lo, hi)) => lo <= n && n <= hi,
        None => false,
    }
}

/// Memoized table of computed constants with provenance.
#[derive(Clone, Debug)]
pub struct StructTable {
    pub mode: Mode,
    pub entries: BTreeMap<StructKey, Rational>,
    /// Formula content hash per degree that produced the entries.
    pub provenance: BTreeMap<u32, String>,
}

impl StructTable {
    pub fn get(&self, key: &StructKey) -> Option<&Rational> {
        self.entries.get(key)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(key, v)| {
                serde_json::json!({
                    "mode": self.mode.as_str(),
                    "N": key.big_n,
                    "k": key.k,
                    "d": key.d,
                    "n": key.n,
                    "value": v.to_string(),
                })
            })
            .collect();
        serde_json::json!({ "version": 1, "entries": rows })
    }

    /// Aligned text rows `N k d n value`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let width = self
            .entries
            .values()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for (key, v) in &self.entries {
            out.push_str(&format!(
                "N={:<4} k={:<3} d={:<2} n={:<4} {:>width$}\n",
                key.big_n,
                key.k,
                key.d,
                key.n,
                v.to_string(),
                width = width
            ));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: Vec<CacheEntry>,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    mode: String,
    #[serde(rename = "N")]
    big_n: i64,
    k: u32,
    d: u32,
    n: i64,
    value: String,
    formula_hash: String,
}

/// The recursion engine: holds the formulas, the in-memory memo table and
/// an optional persistent cache.
pub struct GwEngine {
    formulas: BTreeMap<u32, RecursionFormula>,
    hashes: BTreeMap<u32, String>,
    memo: RefCell<HashMap<(Mode, StructKey), Rational>>,
    beauville: RefCell<HashMap<u32, Vec<Rational>>>,
    cache_path: Option<PathBuf>,
}

impl GwEngine {
    /// Builds the recursion formulas for every degree up to `d_max` from
    /// scratch (`Poly_d` -> comb map).
    pub fn with_degrees(d_max: u32) -> Result<Self, GwError> {
        Self::with_degrees_jobs(d_max, 1)
    }

    pub fn with_degrees_jobs(d_max: u32, jobs: usize) -> Result<Self, GwError> {
        let mut formulas = BTreeMap::new();
        for d in 1..=d_max {
            formulas.insert(d, phi_map(&poly_d_with_jobs(d, jobs)?));
        }
        Ok(Self::from_formulas(formulas))
    }

    /// Uses caller-provided formulas (for example transcriptions), enabling
    /// engine-vs-transcription cross checks.
    pub fn from_formulas(formulas: BTreeMap<u32, RecursionFormula>) -> Self {
        let mut hashes = BTreeMap::new();
        let mut running = String::new();
        for (d, f) in &formulas {
            let json = serde_json::to_string(&f.normalized().to_records())
                .expect("formula serialization");
            running.push_str(&json);
            hashes.insert(*d, hex_sha256(running.as_bytes()));
        }
        GwEngine {
            formulas,
            hashes,
            memo: RefCell::new(HashMap::new()),
            beauville: RefCell::new(HashMap::new()),
            cache_path: None,
        }
    }

    /// Attaches a persistent cache file; entries with stale formula hashes
    /// are dropped on load.
    pub fn with_cache_file(mut self, path: &Path) -> Self {
        self.cache_path = Some(path.to_path_buf());
        self.load_cache();
        self
    }

    pub fn max_degree(&self) -> u32 {
        self.formulas.keys().max().copied().unwrap_or(0)
    }

    pub fn formula(&self, d: u32) -> Option<&RecursionFormula> {
        self.formulas.get(&d)
    }

    pub fn formula_hash(&self, d: u32) -> Option<&String> {
        self.hashes.get(&d)
    }

    fn load_cache(&mut self) {
        let path = match &self.cache_path {
            Some(p) => p.clone(),
            None => return,
        };
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(_) => return,
        };
        let file: CacheFile = match serde_json::from_str(&text) {
            Ok(f) => f,
            Err(_) => return,
        };
        if file.version != 1 {
            return;
        }
        let mut memo = self.memo.borrow_mut();
        for e in file.entries {
            let mode = match e.mode.parse::<Mode>() {
                Ok(m) => m,
                Err(_) => continue,
            };
            if self.hashes.get(&e.d) != Some(&e.formula_hash) {
                continue;
            }
            let value: Rational = match e.value.parse() {
                Ok(v) => v,
                Err(_) => continue,
            };
            memo.insert(
                (
                    mode,
                    StructKey {
                        big_n: e.big_n,
                        k: e.k,
                        d: e.d,
                        n: e.n,
                    },
                ),
                value,
            );
        }
    }

    /// Writes the memo table to the cache file atomically (temp + rename).
    pub fn save_cache(&self) -> std::io::Result<()> {
        let path = match &self.cache_path {
            Some(p) => p,
            None => return Ok(()),
        };
        let memo = self.memo.borrow();
        let mut entries: Vec<CacheEntry> = memo
            .iter()
            .filter_map(|((mode, key), v)| {
                self.hashes.get(&key.d).map(|h| CacheEntry {
                    mode: mode.as_str().to_string(),
                    big_n: key.big_n,
                    k: key.k,
                    d: key.d,
                    n: key.n,
                    value: v.to_string(),
                    formula_hash: h.clone(),
                })
            })
            .collect();
        entries.sort_by_key(|e| (e.mode.clone(), e.k, e.d, e.big_n, e.n));
        let file = CacheFile {
            version: 1,
            entries,
        };
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)?;
            }
        }
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_string_pretty(&file)?)?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    fn beauville_coeff(&self, k: u32, n: i64) -> Result<Rational, GwError> {
        if !(0..k as i64).contains(&n) {
            return Ok(Rational::zero());
        }
        let mut cache = self.beauville.borrow_mut();
        if !cache.contains_key(&k) {
            cache.insert(k, beauville_init(k)?);
        }
        Ok(cache[&k][n as usize].clone())
    }

    /// One structure constant. `Fano` mode requires `N >= k+1`; `Virtual`
    /// mode requires `N >= k`.
    pub fn compute(&self, mode: Mode, key: StructKey) -> Result<Rational, GwError> {
        if key.k < 2 {
            return Err(GwError::SmallK(key.k));
        }
        match mode {
            Mode::Fano if key.big_n <= key.k as i64 => {
                return Err(GwError::FanoRequiresNAboveK {
                    big_n: key.big_n,
                    k: key.k,
                })
            }
            Mode::Virtual if key.big_n < key.k as i64 => {
                return Err(GwError::VirtualRequiresNAtLeastK {
                    big_n: key.big_n,
                    k: key.k,
                })
            }
            _ => {}
        }
        if key.d >= 2 && key.big_n < 2 * key.k as i64 && self.formula(key.d).is_none() {
            return Err(GwError::MissingFormula(key.d));
        }
        self.eval(mode, key)
    }

    fn eval(&self, mode: Mode, key: StructKey) -> Result<Rational, GwError> {
        if let Some(v) = self.memo.borrow().get(&(mode, key)) {
            return Ok(v.clone());
        }
        let StructKey { big_n, k, d, n } = key;
        let value = if mode == Mode::Fano && !in_selection_range(big_n, k, d, n) {
            Rational::zero()
        } else if d == 1 {
            // Degree one is N-independent down to N-k = 2; the N-k = 1 row
            // of the true constants is shifted by -k!.
            if mode == Mode::Fano && big_n - (k as i64) == 1 {
                self.beauville_coeff(k, n)? - Rational::factorial(k as u64)
            } else {
                self.beauville_coeff(k, n)?
            }
        } else if big_n >= 2 * k as i64 {
            Rational::zero()
        } else {
            let formula = self
                .formulas
                .get(&d)
                .ok_or(GwError::MissingFormula(d))?
                .clone();
            let nk = big_n - k as i64;
            let mut total = Rational::zero();
            for term in &formula.terms {
                let mut product = term.coefficient.clone();
                for factor in &term.factors {
                    if product.is_zero() {
                        break;
                    }
                    let shifted = n + factor.shift.constant + factor.shift.nk * nk;
                    let sub = self.eval(
                        mode,
                        StructKey {
                            big_n: big_n + 1,
                            k,
                            d: factor.degree,
                            n: shifted,
                        },
                    )?;
                    product *= sub;
                }
                total += product;
            }
            total
        };
        self.memo
            .borrow_mut()
            .insert((mode, key), value.clone());
        Ok(value)
    }

    /// The table of virtual constants at `N = k`: rows `n = 0..k-1`,
    /// degrees `1..=d_max`.
    pub fn virtual_constants(&self, k: u32, d_max: u32) -> Result<StructTable, GwError> {
        let mut entries = BTreeMap::new();
        for d in 1..=d_max {
            for n in 0..k as i64 {
                let key = StructKey {
                    big_n: k as i64,
                    k,
                    d,
                    n,
                };
                entries.insert(key, self.compute(Mode::Virtual, key)?);
            }
        }
        Ok(StructTable {
            mode: Mode::Virtual,
            entries,
            provenance: (1..=d_max)
                .filter_map(|d| self.hashes.get(&d).map(|h| (d, h.clone())))
                .collect(),
        })
    }

    /// All Fano constants of `QH*_e(M_N^k)` up to degree `d_max`, i.e. the
    /// full multiplication table data.
    pub fn fano_table(&self, big_n: i64, k: u32, d_max: u32) -> Result<StructTable, GwError> {
        let mut entries = BTreeMap::new();
        for d in 1..=d_max {
            if let Some((lo, hi)) = selection_range(big_n, k, d) {
                for n in lo..=hi {
                    let key = StructKey { big_n, k, d, n };
                    entries.insert(key, self.compute(Mode::Fano, key)?);
                }
            }
        }
        Ok(StructTable {
            mode: Mode::Fano,
            entries,
            provenance: (1..=d_max)
                .filter_map(|d| self.hashes.get(&d).map(|h| (d, h.clone())))
                .collect(),
        })
    }
}

fn hex_sha256(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{:02x}", b));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn engine(d_max: u32) -> GwEngine {
        GwEngine::with_degrees(d_max).unwrap()
    }

    #[test]
    fn beauville_examples() {
        // k=2: 2(w+1) -> [2, 2]
        assert_eq!(beauville_init(2).unwrap(), vec![q(2, 1), q(2, 1)]);
        // k=3: 3(w+2)(2w+1) -> [6, 15, 6]
        assert_eq!(
            beauville_init(3).unwrap(),
            vec![q(6, 1), q(15, 1), q(6, 1)]
        );
        assert!(beauville_init(1).is_err());
    }

    #[test]
    fn cubic_surface_line_count() {
        // N-k = 1 correction for k=3: [0, 9, 0]; k * L_1 = 27 lines.
        let e = engine(1);
        let row: Vec<Rational> = (0..3)
            .map(|n| {
                e.compute(
                    Mode::Fano,
                    StructKey {
                        big_n: 4,
                        k: 3,
                        d: 1,
                        n,
                    },
                )
                .unwrap()
            })
            .collect();
        assert_eq!(row, vec![q(0, 1), q(9, 1), q(0, 1)]);
        assert_eq!(q(3, 1) * row[1].clone(), q(27, 1));
    }

    #[test]
    fn selection_range_cases() {
        // N-k >= 2: 0 <= m <= (N-1) - (N-k)d
        assert_eq!(selection_range(10, 3, 1), Some((0, 2)));
        // N-k = 1, d = 1: 1 <= m <= N-3
        assert_eq!(selection_range(4, 3, 1), Some((1, 1)));
        // N = 8, k = 7, d = 6: 0 <= m <= 1
        assert_eq!(selection_range(8, 7, 6), Some((0, 1)));
        // empty interval
        assert_eq!(selection_range(6, 3, 3), None);
        // general type side is bounded below by 2 + (k-N)d: empty here
        assert_eq!(selection_range(5, 6, 1), None);
    }

    #[test]
    fn raw_recursion_vanishes_outside_selection_in_wide_range() {
        // For N-k >= 2 the mechanical recursion lands on zero outside the
        // dimension-selection window on its own; this is what makes the
        // fano-mode range cut a no-op at intermediate levels.
        let e = engine(3);
        for k in [3u32, 4] {
            for big_n in (k as i64 + 2)..=(2 * k as i64 + 1) {
                for d in 1..=3u32 {
                    let (lo, hi) = selection_range(big_n, k, d).unwrap_or((0, -1));
                    for n in (lo - 4)..=(hi + 4) {
                        if n >= lo && n <= hi {
                            continue;
                        }
                        let v = e
                            .compute(Mode::Virtual, StructKey { big_n, k, d, n })
                            .unwrap();
                        assert!(
                            v.is_zero(),
                            "nonzero out-of-range value at N={} k={} d={} n={}: {}",
                            big_n,
                            k,
                            d,
                            n,
                            v
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn degree_two_vanishes_in_beauville_range() {
        let e = engine(2);
        for big_n in [6, 7, 10] {
            for n in 0..3 {
                assert_eq!(
                    e.compute(
                        Mode::Fano,
                        StructKey {
                            big_n,
                            k: 3,
                            d: 2,
                            n
                        }
                    )
                    .unwrap(),
                    Rational::zero()
                );
            }
        }
    }

    #[test]
    fn degree_one_independent_of_n() {
        let e = engine(1);
        for k in [2u32, 3, 5] {
            let base: Vec<Rational> = (0..k as i64)
                .map(|n| {
                    e.compute(
                        Mode::Fano,
                        StructKey {
                            big_n: 2 * k as i64 + 3,
                            k,
                            d: 1,
                            n,
                        },
                    )
                    .unwrap()
                })
                .collect();
            for big_n in (k as i64 + 2)..(2 * k as i64 + 3) {
                for n in 0..k as i64 {
                    assert_eq!(
                        e.compute(Mode::Fano, StructKey { big_n, k, d: 1, n }).unwrap(),
                        base[n as usize],
                        "N = {}, k = {}, n = {}",
                        big_n,
                        k,
                        n
                    );
                }
            }
        }
    }

    #[test]
    fn eq17_difference_is_k_factorial() {
        let e = engine(1);
        for k in [3u32, 4, 5] {
            for n in 1..(k as i64 - 1) {
                let upper = e
                    .compute(
                        Mode::Fano,
                        StructKey {
                            big_n: k as i64 + 2,
                            k,
                            d: 1,
                            n,
                        },
                    )
                    .unwrap();
                let corrected = e
                    .compute(
                        Mode::Fano,
                        StructKey {
                            big_n: k as i64 + 1,
                            k,
                            d: 1,
                            n,
                        },
                    )
                    .unwrap();
                assert_eq!(upper - corrected, Rational::factorial(k as u64));
            }
        }
    }

    #[test]
    fn virtual_cubic_values() {
        // k=3 by hand: rows at N=5,4,3 for d=2 give 36; 108,108; 90 at n=0.
        let e = engine(2);
        let at = |big_n: i64, n: i64| {
            e.compute(
                Mode::Virtual,
                StructKey {
                    big_n,
                    k: 3,
                    d: 2,
                    n,
                },
            )
            .unwrap()
        };
        assert_eq!(at(5, 0), q(36, 1));
        assert_eq!(at(4, 0), q(108, 1));
        assert_eq!(at(4, 1), q(108, 1));
        assert_eq!(at(3, 0), q(90, 1));
        assert_eq!(at(3, 1), q(333, 1));
    }

    #[test]
    fn virtual_equals_fano_in_wide_range() {
        // Remark: for N-k >= 2 the two modes agree.
        let e = engine(3);
        for k in [3u32, 4] {
            for big_n in (k as i64 + 2)..=(2 * k as i64 + 1) {
                for d in 1..=3 {
                    if let Some((lo, hi)) = selection_range(big_n, k, d) {
                        for n in lo..=hi {
                            let key = StructKey { big_n, k, d, n };
                            assert_eq!(
                                e.compute(Mode::Fano, key).unwrap(),
                                e.compute(Mode::Virtual, key).unwrap(),
                                "{:?}",
                                key
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn virtual_degree_one_row_is_beauville() {
        let e = engine(1);
        for k in [3u32, 5] {
            let b = beauville_init(k).unwrap();
            for n in 0..k as i64 {
                assert_eq!(
                    e.compute(
                        Mode::Virtual,
                        StructKey {
                            big_n: k as i64,
                            k,
                            d: 1,
                            n
                        }
                    )
                    .unwrap(),
                    b[n as usize]
                );
            }
        }
    }

    #[test]
    fn mode_domain_errors() {
        let e = engine(1);
        assert!(matches!(
            e.compute(
                Mode::Fano,
                StructKey {
                    big_n: 3,
                    k: 3,
                    d: 1,
                    n: 0
                }
            ),
            Err(GwError::FanoRequiresNAboveK { .. })
        ));
        assert!(matches!(
            e.compute(
                Mode::Virtual,
                StructKey {
                    big_n: 2,
                    k: 3,
                    d: 1,
                    n: 0
                }
            ),
            Err(GwError::VirtualRequiresNAtLeastK { .. })
        ));
        assert!(matches!(
            e.compute(
                Mode::Fano,
                StructKey {
                    big_n: 5,
                    k: 3,
                    d: 2,
                    n: 0
                }
            ),
            Err(GwError::MissingFormula(2))
        ));
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join("qkahler-cache-test");
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.json");
        let key = StructKey {
            big_n: 5,
            k: 3,
            d: 2,
            n: 0,
        };
        let fresh = {
            let e = GwEngine::with_degrees(2).unwrap().with_cache_file(&path);
            let v = e.compute(Mode::Fano, key).unwrap();
            e.save_cache().unwrap();
            v
        };
        // reload: the cached value must round-trip exactly
        let e = GwEngine::with_degrees(2).unwrap().with_cache_file(&path);
        assert!(e.memo.borrow().contains_key(&(Mode::Fano, key)));
        assert_eq!(e.compute(Mode::Fano, key).unwrap(), fresh);
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn cache_transparency() {
        // with and without the persistent cache the table is identical
        let e1 = GwEngine::with_degrees(2).unwrap();
        let dir = std::env::temp_dir().join("qkahler-cache-test2");
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        let e2 = GwEngine::with_degrees(2)
            .unwrap()
            .with_cache_file(&dir.join("cache.json"));
        let t1 = e1.fano_table(5, 3, 2).unwrap();
        let t2 = e2.fano_table(5, 3, 2).unwrap();
        assert_eq!(t1.entries, t2.entries);
        let _ = std::fs::remove_dir_all(&dir);
    }
}
