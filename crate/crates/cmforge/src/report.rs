//! Serializable results of each command and their plain-text rendering.
//!
//! JSON output carries `"schema": 1`; big integers are decimal strings and
//! polynomials list coefficients from the leading one down.

use std::fmt::Write as _;

use serde::Serialize;

use crate::config::JobConfig;

pub const SCHEMA: u32 = 1;

pub type Matrix = [[u64; 2]; 2];

#[derive(Clone, Debug, Serialize)]
pub struct FieldReport {
    pub schema: u32,
    pub d: i64,
    pub disc: i64,
    /// Generator of the ring of integers, as text.
    pub theta: String,
    /// `theta^2 + b theta + c = 0`.
    pub theta_min_poly: [i64; 2],
    pub omega_k: u32,
    pub class_number: u32,
    pub forms: Vec<[i64; 3]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormBeta {
    pub form: [i64; 3],
    pub beta: Matrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub schema: u32,
    pub d: i64,
    #[serde(rename = "N")]
    pub n: u64,
    pub level: u64,
    pub ray_class_degree: u64,
    pub orbit_size: usize,
    pub kernel: Vec<Matrix>,
    /// One representative of `W / kernel` per entry.
    pub cosets: Vec<Matrix>,
    pub forms: Vec<FormBeta>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinpolyReport {
    pub schema: u32,
    pub job: JobConfig,
    pub level: u64,
    pub precision: u32,
    pub orbit_size: usize,
    /// How often each distinct root occurs among the evaluated values.
    pub multiplicity: usize,
    /// `"K"` when the orbit product is already rational, `"Q"` when conjugates were appended.
    pub over: &'static str,
    pub degree: usize,
    /// Degree equals `[K_(N) : K]` (or twice it over `Q`).
    pub generates: bool,
    pub coefficients: Vec<String>,
    pub discriminant: String,
    pub discriminant_factorization: String,
    pub discriminant_fully_factored: bool,
    pub unit: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ApproxReport {
    pub schema: u32,
    pub job: JobConfig,
    pub level: u64,
    pub precision: u32,
    pub orbit_size: usize,
    pub degree: usize,
    /// Real parts, five significant digits.
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MismatchEntry {
    pub p: u64,
    pub criterion: bool,
    pub representation: Option<(i64, u64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiophReportOut {
    pub schema: u32,
    pub n: u64,
    #[serde(rename = "N")]
    pub modulus: u64,
    pub prime_bound: u64,
    pub polynomial: Vec<String>,
    pub disc_excluded_primes: Vec<u64>,
    pub modulus_excluded_primes: Vec<u64>,
    pub checked: u64,
    pub representable: u64,
    pub mismatches: Vec<MismatchEntry>,
}

fn matrix(m: &Matrix) -> String {
    format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
}

/// `X^2 + 3X - 1` style rendering of descending decimal coefficients.
pub fn poly_text(coeffs: &[String]) -> String {
    let deg = coeffs.len().saturating_sub(1);
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        let k = deg - i;
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, c.as_str()),
        };
        if mag == "0" {
            continue;
        }
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let var = match k {
            0 => String::new(),
            1 => "X".into(),
            _ => format!("X^{k}"),
        };
        if mag != "1" || k == 0 {
            out.push_str(mag);
        }
        out.push_str(&var);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl FieldReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "K = Q(sqrt(-{}))", self.d).unwrap();
        writeln!(s, "d_K = {}", self.disc).unwrap();
        writeln!(s, "theta = {}", self.theta).unwrap();
        writeln!(s, "omega_K = {}", self.omega_k).unwrap();
        writeln!(s, "h_K = {}", self.class_number).unwrap();
        let forms: Vec<_> = self.forms.iter().map(|f| format!("[{}, {}, {}]", f[0], f[1], f[2])).collect();
        writeln!(s, "reduced forms: {}", forms.join(", ")).unwrap();
        s
    }
}

impl OrbitReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "K = Q(sqrt(-{})), N = {}, level {}", self.d, self.n, self.level).unwrap();
        writeln!(s, "[K_({}) : K] = {}, orbit size {}", self.level, self.ray_class_degree, self.orbit_size).unwrap();
        writeln!(s, "kernel: {}", self.kernel.iter().map(matrix).collect::<Vec<_>>().join(", ")).unwrap();
        writeln!(s, "cosets ({}):", self.cosets.len()).unwrap();
        for c in &self.cosets {
            writeln!(s, "  {}", matrix(c)).unwrap();
        }
        for f in &self.forms {
            writeln!(s, "form [{}, {}, {}]: beta = {}", f.form[0], f.form[1], f.form[2], matrix(&f.beta)).unwrap();
        }
        s
    }
}

impl MinpolyReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "min over {} (degree {}, level {}, P = {}):", self.over, self.degree, self.level, self.precision)
            .unwrap();
        writeln!(s, "{}", poly_text(&self.coefficients)).unwrap();
        writeln!(s, "disc = {}", self.discriminant_factorization).unwrap();
        writeln!(s, "unit: {}", self.unit).unwrap();
        if !self.generates {
            writeln!(s, "warning: degree is below the ray class field degree").unwrap();
        }
        s
    }
}

impl ApproxReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "approximate orbit polynomial (degree {}, level {}, P = {}):", self.degree, self.level, self.precision)
            .unwrap();
        for (i, c) in self.coefficients.iter().enumerate() {
            writeln!(s, "  X^{}: {}", self.degree - i, c).unwrap();
        }
        s
    }
}

impl DiophReportOut {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "p = x^2 + {} y^2, x = 1, y = 0 (mod {}), odd p <= {}", self.n, self.modulus, self.prime_bound).unwrap();
        writeln!(s, "f = {}", poly_text(&self.polynomial)).unwrap();
        writeln!(s, "excluded (divide nN): {:?}", self.modulus_excluded_primes).unwrap();
        writeln!(s, "excluded (divide disc f): {:?}", self.disc_excluded_primes).unwrap();
        writeln!(s, "checked {} primes, {} representable, {} mismatches", self.checked, self.representable, self.mismatches.len())
            .unwrap();
        for m in &self.mismatches {
            writeln!(s, "  mismatch at p = {}: criterion {}, representation {:?}", m.p, m.criterion, m.representation).unwrap();
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_text() {
        let c: Vec<String> = ["1", "16", "-12", "0", "-1", "1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(poly_text(&c), "X^5 + 16X^4 - 12X^3 - X + 1");
        let c: Vec<String> = ["-1", "0"].iter().map(|s| s.to_string()).collect();
        assert_eq!(poly_text(&c), "-X");
    }
}
