//! Exact recurrence pipeline for `tsl(M_h)`, `rp(M_h^[1])` and `α_h`, and
//! certification of decimal digits of α.
//!
//! With `rp2[h] = rp(M_h^[2])`:
//!
//! ```text
//! rp1[0] = 2,  rp1[h+1] = rp1[h] + rp2[h] - 1
//! tsl[0] = 1,  tsl[h+1] = 2 tsl[h] + rp1[h]
//! α_h = tsl[h] / 2^(h+1)
//! α_(N-1) < α <= α_(N-1) + 8 (N+3)^4 / 2^(N-1)
//! ```
//!
//! Certified digits are the common prefix of the truncated decimal
//! expansions of the two bounds.

use num_bigint::{BigInt, BigUint};
use sha2::{Digest, Sha256};

use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::lazy;
use crate::traversal::traverse_fetch;
use crate::tree::Tree;

/// Digits of α as a bundled text file: 3007 certified fraction digits in the
/// digit-file layout.
pub const GROUND_TRUTH_FILE: &str = include_str!("../data/alpha_3007.txt");

/// SHA-256 of [`GROUND_TRUTH_FILE`].
pub const GROUND_TRUTH_SHA256: &str = "e84effe206bade2efb18c63042305e7f53ecf996bca5eaf9ef83feb6413a3952";

/// Number of certified fraction digits in the bundled file.
pub const GROUND_TRUTH_DIGITS: usize = 3007;

/// Characters per line in digit files.
pub const DIGIT_LINE_WIDTH: usize = 70;

/// Anything that can supply `rp(M_h^[2])` for `h = 0..count`.
pub trait Rp2Source {
    fn rp2_values(&self, count: usize) -> Result<Vec<u64>>;
}

/// The lazy engine of [`crate::lazy`].
#[derive(Clone, Copy, Debug, Default)]
pub struct LazyEngine;

/// Explicit fetch-and-discard simulation; only practical for small counts.
#[derive(Clone, Copy, Debug, Default)]
pub struct BruteForce;

impl Rp2Source for LazyEngine {
    fn rp2_values(&self, count: usize) -> Result<Vec<u64>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        Ok(lazy::rp_m2_table(count as u32 - 1))
    }
}

impl Rp2Source for BruteForce {
    fn rp2_values(&self, count: usize) -> Result<Vec<u64>> {
        (0..count)
            .map(|h| {
                let t = Tree::extend(Tree::maximal(h as i32)?, 2);
                Ok(traverse_fetch(&t).rp.expect("fetch traversal records rp"))
            })
            .collect()
    }
}

impl Rp2Source for [u64] {
    fn rp2_values(&self, count: usize) -> Result<Vec<u64>> {
        if self.len() < count {
            return Err(Error::BoundViolation(format!("rp2 table has {} entries, {count} needed", self.len())));
        }
        Ok(self[..count].to_vec())
    }
}

impl Rp2Source for Vec<u64> {
    fn rp2_values(&self, count: usize) -> Result<Vec<u64>> {
        self.as_slice().rp2_values(count)
    }
}

/// Per-height `rp(M_h^[2])`, `rp(M_h^[1])` and `tsl(M_h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RpTslTable {
    /// `rp(M_h^[2])` as supplied; at least `h_max` entries.
    pub rp2: Vec<u64>,
    /// `rp(M_h^[1])` for `h = 0..=h_max`.
    pub rp1: Vec<u64>,
    /// `tsl(M_h)` for `h = 0..=h_max`.
    pub tsl: Vec<BigUint>,
}

impl RpTslTable {
    pub fn h_max(&self) -> usize {
        self.tsl.len() - 1
    }
}

/// Build the table for `h = 0..=h_max` from `rp2[0..h_max]`.
pub fn build_table(h_max: usize, rp2: &dyn Rp2Source) -> Result<RpTslTable> {
    build_table_from(h_max, rp2.rp2_values(h_max)?)
}

/// Like [`build_table`], keeping every supplied `rp2` entry in the table.
pub fn build_table_from(h_max: usize, rp2: Vec<u64>) -> Result<RpTslTable> {
    if rp2.len() < h_max {
        return Err(Error::BoundViolation(format!("rp2 table has {} entries, {h_max} needed", rp2.len())));
    }
    let mut rp1 = Vec::with_capacity(h_max + 1);
    let mut tsl = Vec::with_capacity(h_max + 1);
    rp1.push(2u64);
    tsl.push(BigUint::from(1u32));
    for h in 0..h_max {
        if rp2[h] == 0 {
            return Err(Error::BoundViolation(format!("rp(M_{h}^[2]) = 0 but every step 0 counts")));
        }
        let next_rp1 = (rp1[h] + rp2[h]).checked_sub(1).ok_or(Error::Overflow("computing rp(M_h^[1])"))?;
        let next_tsl = (&tsl[h] << 1usize) + rp1[h];
        rp1.push(next_rp1);
        tsl.push(next_tsl);
    }
    Ok(RpTslTable { rp2, rp1, tsl })
}

/// `α_h = tsl(M_h) / 2^(h+1)`.
pub fn alpha_h(table: &RpTslTable, h: usize) -> Option<DyadicRational> {
    let tsl = table.tsl.get(h)?;
    Some(DyadicRational::new(BigInt::from(tsl.clone()), h as u64 + 1))
}

/// Upper bound on `α - α_(N-1)`: `8 (N+3)^4 / 2^(N-1)`.
pub fn tolerance(n: u64) -> Result<DyadicRational> {
    if n <= 1 {
        return Err(Error::InvalidLevel(n));
    }
    let base: BigInt = BigInt::from(n) + 3u32;
    Ok(DyadicRational::new(base.pow(4u32) * 8, n - 1))
}

/// `Σ_{n≥N} n^4 / 2^n` in closed form: `(N^4+4N^3+18N^2+52N+75) / 2^(N-1)`.
pub fn quartic_tail(n: u64) -> DyadicRational {
    let x = BigInt::from(n);
    let poly: BigInt = x.pow(4u32) + x.pow(3u32) * 4 + x.pow(2u32) * 18 + &x * 52 + 75;
    DyadicRational::with_shift(poly, 1 - n as i64)
}

/// Certified decimal digits of α.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedDigits {
    /// Integer digits, empty when even the integer part is not certified.
    pub integer_part: String,
    /// Certified fraction digits.
    pub fraction_digits: String,
    pub certified_count: usize,
    /// The level `N`: bounds are `α_(N-1)` and `α_(N-1) + tolerance(N)`.
    pub level: u64,
    /// Full decimal expansion of the lower bound.
    pub lower: String,
    /// Full decimal expansion of the upper bound.
    pub upper: String,
}

/// Longest common decimal prefix of `lower <= upper`, both nonnegative.
pub fn certify_between(lower: &DyadicRational, upper: &DyadicRational, level: u64) -> CertifiedDigits {
    debug_assert!(lower <= upper);
    let (li, lf) = lower.decimal_parts();
    let (ui, uf) = upper.decimal_parts();
    let (integer_part, fraction_digits) = if li == ui {
        let common = lf.bytes().zip(uf.bytes()).take_while(|(a, b)| a == b).count();
        (li.clone(), lf[..common].to_string())
    } else {
        (String::new(), String::new())
    };
    CertifiedDigits {
        certified_count: fraction_digits.len(),
        integer_part,
        fraction_digits,
        level,
        lower: format!("{li}.{lf}"),
        upper: format!("{ui}.{uf}"),
    }
}

/// Certify digits of α at level `n` using `rp2` for `h < n - 1`.
///
/// Before certifying, the table is checked for the facts the bound relies
/// on: `α_h` strictly increasing and `rp(M_h^[1]) <= 8 (h+3)^4` for `h >= 3`.
pub fn certified_digits(n: u64, rp2: &dyn Rp2Source) -> Result<CertifiedDigits> {
    let tol = tolerance(n)?;
    let h_max = (n - 1) as usize;
    let table = build_table(h_max, rp2)?;
    check_table_bounds(&table)?;
    let lower = alpha_h(&table, h_max).expect("table covers h_max");
    let upper = &lower + &tol;
    Ok(certify_between(&lower, &upper, n))
}

/// Errors on the first violated monotonicity or `rp(M_h^[1])` bound.
pub fn check_table_bounds(table: &RpTslTable) -> Result<()> {
    for h in 0..table.h_max() {
        // α_{h+1} - α_h = rp1[h] / 2^(h+2) must be positive.
        if table.rp1[h] == 0 {
            return Err(Error::BoundViolation(format!("α_{} <= α_{h}", h + 1)));
        }
    }
    for (h, &v) in table.rp1.iter().enumerate().skip(3) {
        let bound = 8 * (h as u128 + 3).pow(4);
        if v as u128 > bound {
            return Err(Error::BoundViolation(format!("rp(M_{h}^[1]) = {v} > 8 (h+3)^4")));
        }
    }
    Ok(())
}

/// Digits read back from a digit file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitBlock {
    pub integer_part: Option<String>,
    pub fraction: String,
}

/// Render certified digits in the digit-file layout: `integer.fraction`
/// wrapped at 70 characters with a trailing newline, optionally preceded by
/// a `# alpha N=<N> certified=<d>` header.
pub fn format_digit_file(digits: &CertifiedDigits, annotated: bool) -> String {
    let mut out = String::new();
    if annotated {
        out.push_str(&format!("# alpha N={} certified={}\n", digits.level, digits.certified_count));
    }
    if digits.integer_part.is_empty() {
        return out;
    }
    let body = format!("{}.{}", digits.integer_part, digits.fraction_digits);
    for chunk in body.as_bytes().chunks(DIGIT_LINE_WIDTH) {
        out.push_str(std::str::from_utf8(chunk).expect("ascii digits"));
        out.push('\n');
    }
    out
}

/// Parse a digit file. Lines starting with `#` are ignored. Without a decimal
/// point, all digits are taken as fraction digits.
pub fn parse_digit_file(text: &str) -> Result<DigitBlock> {
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(str::trim).collect();
    if body.is_empty() {
        return Err(Error::DigitFormat("no digits".into()));
    }
    if let Some(pos) = body.find(|c: char| !(c.is_ascii_digit() || c == '.')) {
        return Err(Error::DigitFormat(format!("unexpected character at offset {pos}")));
    }
    let mut parts = body.splitn(2, '.');
    let first = parts.next().unwrap_or_default();
    match parts.next() {
        None => Ok(DigitBlock { integer_part: None, fraction: first.to_string() }),
        Some(frac) => {
            if frac.contains('.') {
                return Err(Error::DigitFormat("more than one decimal point".into()));
            }
            if first.is_empty() {
                return Err(Error::DigitFormat("missing integer part".into()));
            }
            Ok(DigitBlock { integer_part: Some(first.to_string()), fraction: frac.to_string() })
        }
    }
}

/// The bundled digits, after verifying the file checksum.
pub fn ground_truth() -> Result<DigitBlock> {
    let digest = Sha256::digest(GROUND_TRUTH_FILE.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    if hex != GROUND_TRUTH_SHA256 {
        return Err(Error::DigitFormat(format!("bundled digit file checksum mismatch: {hex}")));
    }
    parse_digit_file(GROUND_TRUTH_FILE)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// rp(M_h^[2]) for h = 0, 1, 2 and the brute-force values for h = 3, 4.
    const RP2_PREFIX: [u64; 5] = [2, 4, 2, 4, 2];

    #[test]
    fn recurrences_from_known_rp2() {
        let t = build_table(4, &RP2_PREFIX.to_vec()).unwrap();
        assert_eq!(&t.rp1[..4], &[2, 3, 6, 7]);
        let tsl: Vec<u64> = t.tsl.iter().map(|v| v.try_into().unwrap()).collect();
        assert_eq!(tsl, vec![1, 4, 11, 28, 63]);
        assert!(build_table(6, &RP2_PREFIX.to_vec()).is_err());
    }

    #[test]
    fn alpha_values() {
        let t = build_table(4, &RP2_PREFIX.to_vec()).unwrap();
        assert_eq!(alpha_h(&t, 0).unwrap().decimal_expansion(10), "0.5");
        assert_eq!(alpha_h(&t, 2).unwrap().decimal_expansion(10), "1.375");
        assert_eq!(alpha_h(&t, 4).unwrap().decimal_expansion(10), "1.96875");
        assert!(alpha_h(&t, 5).is_none());
    }

    #[test]
    fn tolerance_values() {
        assert_eq!(tolerance(2).unwrap(), DyadicRational::integer(2500));
        assert_eq!(tolerance(11).unwrap().decimal_expansion(20), "300.125");
        assert_eq!(tolerance(4).unwrap(), DyadicRational::integer(2401));
        assert!(matches!(tolerance(1), Err(Error::InvalidLevel(1))));
        assert!(tolerance(0).is_err());
    }

    #[test]
    fn level_four_certifies_nothing() {
        let c = certified_digits(4, &RP2_PREFIX.to_vec()).unwrap();
        assert_eq!(c.certified_count, 0);
        assert_eq!(c.lower, "1.7500");
        assert_eq!(format_digit_file(&c, false), "");
        assert_eq!(format_digit_file(&c, true), "# alpha N=4 certified=0\n");
    }

    #[test]
    fn certification_stops_at_first_disagreement() {
        let lower = DyadicRational::new(1999, 3); // 249.875
        let upper = DyadicRational::new(2001, 3); // 250.125
        assert_eq!(certify_between(&lower, &upper, 9).certified_count, 0);
        assert!(certify_between(&lower, &upper, 9).integer_part.is_empty());
        let lower = DyadicRational::new(10, 3); // 1.250
        let upper = DyadicRational::new(11, 3); // 1.375
        let c = certify_between(&lower, &upper, 9);
        assert_eq!((c.integer_part.as_str(), c.fraction_digits.as_str()), ("1", ""));
    }

    #[test]
    fn quartic_tail_values() {
        assert_eq!(quartic_tail(0), DyadicRational::integer(150));
        // Partial sums of n^4/2^n plus the tail from the next index give 150.
        let mut partial = DyadicRational::integer(0);
        for n in 0..80u64 {
            partial = &partial + &DyadicRational::new(BigInt::from(n).pow(4u32), n);
            assert_eq!(&partial + &quartic_tail(n + 1), DyadicRational::integer(150));
        }
        assert!(DyadicRational::integer(150) - partial < DyadicRational::new(1, 40));
    }

    #[test]
    fn digit_file_round_trip() {
        let c = CertifiedDigits {
            integer_part: "2".into(),
            fraction_digits: "4".repeat(150),
            certified_count: 150,
            level: 600,
            lower: String::new(),
            upper: String::new(),
        };
        let text = format_digit_file(&c, true);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# alpha N=600 certified=150");
        assert_eq!(lines[1].len(), 70);
        assert_eq!(lines[2].len(), 70);
        assert_eq!(lines[3].len(), 12);
        assert!(text.ends_with('\n'));
        let back = parse_digit_file(&text).unwrap();
        assert_eq!(back.integer_part.as_deref(), Some("2"));
        assert_eq!(back.fraction, c.fraction_digits);
    }

    #[test]
    fn digit_file_errors() {
        assert!(parse_digit_file("").is_err());
        assert!(parse_digit_file("# only a header\n").is_err());
        assert!(parse_digit_file("2.41x5\n").is_err());
        assert!(parse_digit_file("2.4.1\n").is_err());
        assert!(parse_digit_file(".41\n").is_err());
        assert_eq!(parse_digit_file("11111\n").unwrap().fraction, "11111");
    }

    #[test]
    fn bundled_digits_are_intact() {
        let g = ground_truth().unwrap();
        assert_eq!(g.integer_part.as_deref(), Some("2"));
        assert_eq!(g.fraction.len(), GROUND_TRUTH_DIGITS);
        assert!(g.fraction.starts_with("41464532311342664135721059929950736447077229680868"));
        assert!(g.fraction.ends_with("796587734387"));
        let c = CertifiedDigits {
            integer_part: "2".into(),
            certified_count: g.fraction.len(),
            fraction_digits: g.fraction,
            level: 0,
            lower: String::new(),
            upper: String::new(),
        };
        assert_eq!(format_digit_file(&c, false), GROUND_TRUTH_FILE);
    }
}
