//! Reduced binary quadratic forms of a negative discriminant, their CM points
//! and the matrices `beta_Q` that move evaluation from `theta` to `theta_Q`.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::arith::{crt, factorize};
use crate::error::{Error, Result};
use crate::matrix::MatModN;
use crate::mp::{Complex, PrecisionContext};

/// `a X^2 + b XY + c Y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormClassGroup {
    pub disc: i64,
    /// Reduced forms ordered by `(a, b)`; the principal form comes first.
    pub forms: Vec<QuadForm>,
}

/// `re + coeff * sqrt(disc)` with `disc < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadIrrational {
    pub re: Ratio<i64>,
    pub coeff: Ratio<i64>,
    pub disc: i64,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        (-a < b && b <= a && a < c) || (0 <= b && b <= a && a == c)
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

pub fn enumerate_reduced_forms(disc: i64) -> Result<FormClassGroup> {
    if disc >= 0 || !matches!(disc.rem_euclid(4), 0 | 1) {
        return Err(Error::InvalidDiscriminant(disc));
    }
    let bound = num_integer::Roots::sqrt(&((-disc / 3) as u64)) as i64;
    let mut forms = Vec::new();
    for a in 1..=bound {
        for b in (-a + 1)..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let q = QuadForm::new(a, b, num / (4 * a));
            if q.is_reduced() && q.is_primitive() {
                forms.push(q);
            }
        }
    }
    forms.sort_by_key(|q| (q.a, q.b));
    Ok(FormClassGroup { disc, forms })
}

/// `theta_Q = (-b + sqrt(d_K)) / (2a)`.
pub fn theta_of_form(q: &QuadForm) -> QuadIrrational {
    QuadIrrational {
        re: Ratio::new(-q.b, 2 * q.a),
        coeff: Ratio::new(1, 2 * q.a),
        disc: q.disc(),
    }
}

impl QuadIrrational {
    /// Exact test of `a x^2 + b x + c = 0`.
    pub fn satisfies(&self, q: &QuadForm) -> bool {
        let (u, v, d) = (self.re, self.coeff, Ratio::from_integer(self.disc));
        let rational = (u * u + v * v * d) * q.a + u * q.b + q.c;
        let irrational = u * v * (2 * q.a) + v * q.b;
        rational == Ratio::from_integer(0) && irrational == Ratio::from_integer(0)
    }

    pub fn imag_f64(&self) -> f64 {
        let c = *self.coeff.numer() as f64 / *self.coeff.denom() as f64;
        c * libm::sqrt(-self.disc as f64)
    }

    pub fn to_complex(&self, ctx: &PrecisionContext) -> Complex {
        let im = ctx.ratio(&self.coeff) * ctx.int(-self.disc).sqrt();
        Complex::new(ctx.ratio(&self.re), im)
    }
}

/// Local matrix at one prime `p`, as integers.
fn local_beta(q: &QuadForm, p: u64) -> [i64; 4] {
    let QuadForm { a, b, c } = *q;
    let p = p as i64;
    let even = b % 2 == 0;
    if a % p != 0 {
        if even {
            [a, b / 2, 0, 1]
        } else {
            [a, (b - 1) / 2, 0, 1]
        }
    } else if c % p != 0 {
        if even {
            [-b / 2, -c, 1, 0]
        } else {
            [-(b + 1) / 2, -c, 1, 0]
        }
    } else if even {
        [-a - b / 2, -c - b / 2, 1, -1]
    } else {
        [-a - (b + 1) / 2, -c + (1 - b) / 2, 1, -1]
    }
}

/// `beta_Q` reduced mod `n`, assembled prime by prime with CRT.
pub fn beta_q_matrix(q: &QuadForm, n: u64) -> MatModN {
    let locals: Vec<(u64, [i64; 4])> = factorize(n)
        .into_iter()
        .map(|(p, e)| (p.pow(e), local_beta(q, p)))
        .collect();
    let entry = |i: usize| {
        let parts: Vec<(i64, u64)> = locals.iter().map(|&(pe, m)| (m[i], pe)).collect();
        crt(&parts).0 as i64
    };
    MatModN::new(n, entry(0), entry(1), entry(2), entry(3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_forms() {
        let g = enumerate_reduced_forms(-20).unwrap();
        assert_eq!(g.forms, [QuadForm::new(1, 0, 5), QuadForm::new(2, 2, 3)]);
        assert_eq!(enumerate_reduced_forms(-4).unwrap().forms, [QuadForm::new(1, 0, 1)]);
        assert_eq!(enumerate_reduced_forms(-7).unwrap().forms, [QuadForm::new(1, 1, 2)]);
        assert_eq!(enumerate_reduced_forms(-23).unwrap().forms.len(), 3);
        assert_eq!(enumerate_reduced_forms(-56).unwrap().forms.len(), 4);
        assert!(enumerate_reduced_forms(-5).is_err());
        assert!(enumerate_reduced_forms(8).is_err());
    }

    #[test]
    fn cm_points() {
        let t = theta_of_form(&QuadForm::new(1, 0, 5));
        assert_eq!((t.re, t.coeff, t.disc), (Ratio::from_integer(0), Ratio::new(1, 2), -20));
        let t = theta_of_form(&QuadForm::new(2, 2, 3));
        assert_eq!((t.re, t.coeff), (Ratio::new(-1, 2), Ratio::new(1, 4)));
        let t = theta_of_form(&QuadForm::new(1, 1, 2));
        assert_eq!((t.re, t.coeff, t.disc), (Ratio::new(-1, 2), Ratio::new(1, 2), -7));
        for disc in [-3, -4, -20, -23, -84, -143] {
            for q in enumerate_reduced_forms(disc).unwrap().forms {
                assert!(theta_of_form(&q).satisfies(&q));
                assert!(theta_of_form(&q).imag_f64() > 0.0);
            }
        }
    }

    #[test]
    fn beta_matrices() {
        let q2 = QuadForm::new(2, 2, 3);
        assert_eq!(beta_q_matrix(&q2, 8), MatModN::new(8, -1, -3, 1, 0));
        assert_eq!(beta_q_matrix(&q2, 25), MatModN::new(25, 2, 1, 0, 1));
        for n in [2, 4, 5, 8, 9, 25, 60] {
            assert_eq!(beta_q_matrix(&QuadForm::new(1, 0, 5), n), MatModN::identity(n));
        }
    }

    #[test]
    fn beta_is_invertible() {
        for disc in [-4, -7, -8, -20, -24] {
            for q in enumerate_reduced_forms(disc).unwrap().forms {
                for n in 2..=30 {
                    assert!(beta_q_matrix(&q, n).is_invertible(), "{q} N={n}");
                }
            }
        }
    }
}
