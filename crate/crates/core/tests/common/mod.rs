//! Reference implementations used only by the tests. They share no code with
//! the library's counting machinery: exact root counts come from Descartes
//! bisection over `BigRational`, and zeros of `h` from a floating-point
//! grid scan with Newton polishing.

#![allow(dead_code)]

use harmonic_valence::{Dyadic, Polynomial, WilmshurstInstance};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn dyadic_to_rational(x: &Dyadic) -> BigRational {
    let m = x.mantissa().clone();
    let e = x.exponent();
    if e >= 0 {
        BigRational::from_integer(m << (e as usize))
    } else {
        BigRational::new(m, BigInt::one() << ((-e) as usize))
    }
}

pub fn to_rational_poly(p: &Polynomial<Dyadic>) -> Vec<BigRational> {
    let mut c: Vec<BigRational> = p.coeffs().iter().map(dyadic_to_rational).collect();
    trim(&mut c);
    c
}

fn trim(c: &mut Vec<BigRational>) {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
}

fn derivative(c: &[BigRational]) -> Vec<BigRational> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(k, v)| v * BigRational::from_integer(BigInt::from(k)))
        .collect()
}

/// `(quotient, remainder)` of `a / b` over the rationals.
fn divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let f = r.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &f * bi;
        }
        q[shift] = f;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divmod(&x, &y);
        x = y;
        y = r;
    }
    x
}

/// Square-free part `p / gcd(p, p')`.
pub fn square_free(p: &[BigRational]) -> Vec<BigRational> {
    if p.len() <= 1 {
        return p.to_vec();
    }
    let g = gcd(p, &derivative(p));
    let (q, r) = divmod(p, &g);
    assert!(r.is_empty());
    q
}

fn variations(c: &[BigInt]) -> usize {
    let signs: Vec<bool> = c
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn primitive(mut c: Vec<BigInt>) -> Vec<BigInt> {
    let g = c
        .iter()
        .fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut c {
            *x = &*x / &g;
        }
    }
    c
}

/// Coefficients of `p(x + 1)`.
fn taylor_shift(p: &[BigInt]) -> Vec<BigInt> {
    let mut c = p.to_vec();
    let n = c.len();
    for i in 0..n {
        for k in (i..n - 1).rev() {
            let next = c[k + 1].clone();
            c[k] += next;
        }
    }
    c
}

/// Roots of `p` in the open unit interval, by Descartes bisection.
fn unit_count(p: &[BigInt]) -> usize {
    let mut reversed = p.to_vec();
    reversed.reverse();
    match variations(&taylor_shift(&reversed)) {
        0 => 0,
        1 => 1,
        _ => {
            let d = p.len() - 1;
            // 2^d p(x / 2) and 2^d p((x + 1) / 2)
            let left: Vec<BigInt> = p.iter().enumerate().map(|(k, c)| c << (d - k)).collect();
            let left = primitive(left);
            let right = taylor_shift(&left);
            let at_mid = usize::from(left.iter().fold(BigInt::zero(), |s, c| s + c).is_zero());
            unit_count(&left) + at_mid + unit_count(&right)
        }
    }
}

/// Integer polynomial with the same roots as `p(lo + (hi - lo) x)`.
fn rescale(p: &[BigRational], lo: &BigRational, width: &BigRational) -> Vec<BigInt> {
    // Horner in the rational polynomial ring: acc = acc * (lo + width x) + c
    let mut acc: Vec<BigRational> = vec![BigRational::zero()];
    for c in p.iter().rev() {
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i] = &next[i] + a * lo;
            next[i + 1] = &next[i + 1] + a * width;
        }
        next[0] = &next[0] + c;
        acc = next;
    }
    trim(&mut acc);
    let lcm = acc.iter().fold(BigInt::one(), |l, x| {
        num_integer::Integer::lcm(&l, x.denom())
    });
    primitive(
        acc.iter()
            .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
            .collect(),
    )
}

/// Distinct real roots in the open interval `(a, b)`; `None` is infinite.
pub fn brute_force_count(p: &Polynomial<Dyadic>, a: Option<&Dyadic>, b: Option<&Dyadic>) -> usize {
    let c = to_rational_poly(p);
    assert!(!c.is_empty(), "zero polynomial");
    if c.len() == 1 {
        return 0;
    }
    let sf = square_free(&c);
    if sf.len() == 1 {
        return 0;
    }
    let lead = sf.last().unwrap().abs();
    let bound = BigRational::one()
        + sf.iter()
            .map(|x| x.abs() / &lead)
            .fold(BigRational::zero(), |m, x| if x > m { x } else { m });
    let lo = a.map(dyadic_to_rational).unwrap_or_else(|| -bound.clone());
    let hi = b.map(dyadic_to_rational).unwrap_or(bound);
    if lo >= hi {
        return 0;
    }
    let width = &hi - &lo;
    unit_count(&rescale(&sf, &lo, &width))
}

/// Complex value of `h` and its Wirtinger derivatives at `z`, in `f64`.
fn harmonic_f64(inst: &WilmshurstInstance, z: (f64, f64)) -> ((f64, f64), (f64, f64), (f64, f64)) {
    let q: Vec<(f64, f64)> = inst
        .q()
        .coeffs()
        .iter()
        .map(|(a, b)| (a.to_f64(), b.to_f64()))
        .collect();
    let eps = inst.epsilon().to_f64();
    let n = inst.n();
    let mul = |u: (f64, f64), v: (f64, f64)| (u.0 * v.0 - u.1 * v.1, u.0 * v.1 + u.1 * v.0);
    let mut qv = (0.0, 0.0);
    let mut dq = (0.0, 0.0);
    for c in q.iter().rev() {
        dq = mul(dq, z);
        dq = (dq.0 + qv.0, dq.1 + qv.1);
        qv = mul(qv, z);
        qv = (qv.0 + c.0, qv.1 + c.1);
    }
    let mut zn1 = (1.0, 0.0);
    for _ in 0..n - 1 {
        zn1 = mul(zn1, z);
    }
    let zn = mul(zn1, z);
    let h = (eps * zn.0 + 2.0 * qv.0, eps * zn.1);
    let hz = (n as f64 * eps * zn1.0 + dq.0, n as f64 * eps * zn1.1 + dq.1);
    let hzbar = (dq.0, -dq.1);
    (h, hz, hzbar)
}

fn abs2(v: (f64, f64)) -> f64 {
    v.0 * v.0 + v.1 * v.1
}

/// Size of the terms of `h` at `z`, the scale for rounding error.
fn term_scale(inst: &WilmshurstInstance, z: (f64, f64)) -> f64 {
    let r = z.0.hypot(z.1);
    let q: f64 = inst
        .q()
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, (a, b))| a.to_f64().hypot(b.to_f64()) * r.powi(k as i32))
        .sum();
    inst.epsilon().to_f64() * r.powi(inst.n() as i32) + 2.0 * q
}

fn newton(inst: &WilmshurstInstance, mut z: (f64, f64)) -> Option<(f64, f64)> {
    for _ in 0..100 {
        let (h, a, b) = harmonic_f64(inst, z);
        if abs2(h).sqrt() <= 1e-14 * term_scale(inst, z) {
            return Some(z);
        }
        // h(z + d) ~ h + a d + b conj(d); solve for d
        let det = abs2(a) - abs2(b);
        if det.abs() < 1e-300 {
            return None;
        }
        let ca = (a.0, -a.1);
        let hb = (h.0 * b.0 + h.1 * b.1, h.0 * b.1 - h.1 * b.0);
        let ha = (h.0 * ca.0 - h.1 * ca.1, h.0 * ca.1 + h.1 * ca.0);
        let d = ((hb.0 - ha.0) / det, (hb.1 - ha.1) / det);
        z = (z.0 + d.0, z.1 + d.1);
        if !z.0.is_finite() || !z.1.is_finite() {
            return None;
        }
    }
    let (h, _, _) = harmonic_f64(inst, z);
    (abs2(h).sqrt() <= 1e-11 * term_scale(inst, z)).then_some(z)
}

/// Radius outside which `|eps z^n| > |2 Re q(z)|`.
pub fn zero_radius(inst: &WilmshurstInstance) -> f64 {
    let eps = inst.epsilon().to_f64();
    let s: f64 = inst
        .q()
        .coeffs()
        .iter()
        .map(|(a, b)| a.to_f64().hypot(b.to_f64()))
        .sum();
    1.0f64.max(2.0 * s / eps) * 1.01
}

/// Zeros of `h` found by `grid x grid` scans of `|h|` over `[-r, r]^2` for
/// `r = R, R/8, R/64, ...` down to 1, with Newton polishing from every grid
/// local minimum. Deduplicated.
pub fn sweep_zeros(inst: &WilmshurstInstance, grid: usize) -> Vec<(f64, f64)> {
    let mut zeros: Vec<(f64, f64)> = Vec::new();
    let mut r = zero_radius(inst);
    loop {
        scan(inst, grid, r, &mut zeros);
        if r <= 1.0 {
            break;
        }
        r = (r / 8.0).max(1.0);
    }
    zeros
}

fn scan(inst: &WilmshurstInstance, grid: usize, r: f64, zeros: &mut Vec<(f64, f64)>) {
    let step = 2.0 * r / (grid - 1) as f64;
    let coord = |i: usize| -r + step * i as f64;
    let mag: Vec<Vec<f64>> = (0..grid)
        .map(|i| {
            (0..grid)
                .map(|k| abs2(harmonic_f64(inst, (coord(i), coord(k))).0))
                .collect()
        })
        .collect();
    for i in 1..grid - 1 {
        for k in 1..grid - 1 {
            let v = mag[i][k];
            let is_min = (i - 1..=i + 1)
                .flat_map(|a| (k - 1..=k + 1).map(move |b| (a, b)))
                .all(|(a, b)| (a, b) == (i, k) || mag[a][b] >= v);
            if !is_min {
                continue;
            }
            if let Some(z) = newton(inst, (coord(i), coord(k))) {
                let tol = 1e-7 * (1.0 + z.0.hypot(z.1));
                if !zeros.iter().any(|w| (w.0 - z.0).hypot(w.1 - z.1) < tol) {
                    zeros.push(z);
                }
            }
        }
    }
}

/// Distance from `z` to the nearest line `arg z = j pi / n`.
pub fn distance_to_lines(z: (f64, f64), n: usize) -> f64 {
    (0..n)
        .map(|j| {
            let t = j as f64 * std::f64::consts::PI / n as f64;
            (z.1 * t.cos() - z.0 * t.sin()).abs()
        })
        .fold(f64::INFINITY, f64::min)
}
