#![allow(dead_code)]

use apolarium::poly::{parse_poly, Poly};

/// Concise affine polynomials, mixing encompassing and non-encompassing ones.
pub const AFFINE: &[&str] = &[
    "x1^2+x2",
    "x1^2",
    "x1^2+x2^2",
    "x1*x2",
    "x1^3+x2^3",
    "x1^3+x1*x2+x2",
    "x1^2+x2^2+x3",
    "x1*x2+x3",
    "x1^3+x2",
    "x1^3+x1*x2",
    "x1*x2*x3",
    "x1^2*x2+x2^2+x1",
    "x1^4+x1^2*x2+x2^2",
    "x1^2+x1*x2+x3",
    "x1^3+x2^2",
    "x1+x2^2+x3^3",
    "x1^2*x2+x1",
    "x1^2+x2^3",
    "x1^3+x1*x2+x2^2+x3",
    "x1*x2+x3^2",
    "x1^4+x2",
    "x1*x2+x2*x3+x1",
    "x1^3+x2*x1^2+x2^2",
];

/// Inputs whose default extensions enlarge the corpus with encompassing
/// polynomials of higher degree.
pub const TO_EXTEND: &[&str] = &[
    "x1^3+x2^3",
    "x1^3+x1*x2+x2",
    "x1*x2*x3",
    "x1^3+x2^2",
    "x1^4+x2",
    "x1^2*x2+x1",
    "x1^3",
];

/// Forms in `x0, …` with nonzero dehomogenization at `x0`.
pub const FORMS: &[&str] = &[
    "x0^3+x1^3",
    "x0*x3+x1^2+x2^2",
    "x0*x2+x1^2",
    "x0^2*x1+x1^3",
    "x0*x1*x2",
    "x0^2+x1^2",
    "x0^3+x0*x1^2+x2^3",
    "x0*x1^2+x2^3",
    "x0^4+x1^4+x0*x1*x2^2",
    "x0^2*x2+x0*x1^2+x2^3",
    "x0^3+x1*x2*x3",
    "x1^3+x2^3+x0*(x1*y1+x2*y2)+x0^2*y0",
];

/// Cubic with `dim Ap = 12` and `dim Ap(f^2) = 67`.
pub const NONSMOOTHABLE_CUBIC: &str = "x3^3+x1*x2*x4+x3*x4^2+x2^2*x5+x2*x3*x5+x1*x5^2+x5^3";

/// Form with a twisted middle catalecticant of `F^2` of rank 21 and an
/// untwisted one of rank 25.
pub const TWIST_CONTROL: &str = "x1^3+x2^3+x0*(x1*y1+x2*y2)+x0^2*y0";

pub fn p(s: &str) -> Poly {
    parse_poly(s).unwrap()
}
