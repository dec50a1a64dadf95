//! Dense univariate polynomials over [`Rational`], low-to-high coefficients.
//!
//! Just enough machinery for number-field arithmetic: ring operations,
//! remainder by a monic modulus, the extended Euclidean algorithm, and the
//! degree-<=4 irreducibility tests (rational roots + quadratic-factor
//! search) used when constructing a [`crate::NumberField`].

use alloc::string::String;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::{parse_rational, Rational, ScalarError};

/// Drop trailing zero coefficients; the zero polynomial becomes `[]`.
pub fn normalized(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &[Rational]) -> Option<usize> {
    let mut d = None;
    for (i, c) in p.iter().enumerate() {
        if !c.is_zero() {
            d = Some(i);
        }
    }
    d
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let zero = Rational::zero();
    (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect()
}

/// Remainder of `a` modulo a monic polynomial `m`.
pub fn rem_by_monic(a: Vec<Rational>, m: &[Rational]) -> Vec<Rational> {
    let d = m.len() - 1;
    let mut r = normalized(a);
    while r.len() > d {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - d;
        for (k, mk) in m.iter().take(d).enumerate() {
            r[shift + k] = &r[shift + k] - &(&lead * mk);
        }
        r = normalized(r);
    }
    r
}

/// General division with remainder; `b` need not be monic.
pub fn divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = b[db].recip().unwrap();
    let mut r = normalized(a.to_vec());
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] * &lead_inv;
        let shift = dr - db;
        q[shift] = c.clone();
        for (k, bk) in b.iter().enumerate().take(db + 1) {
            r[shift + k] = &r[shift + k] - &(&c * bk);
        }
        r = normalized(r);
    }
    (normalized(q), r)
}

/// Extended gcd: returns `(g, u, v)` with `u*a + v*b = g`.
pub fn xgcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let mut r0 = normalized(a.to_vec());
    let mut r1 = normalized(b.to_vec());
    let mut u0 = vec![Rational::one()];
    let mut u1: Vec<Rational> = Vec::new();
    let mut v0: Vec<Rational> = Vec::new();
    let mut v1 = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1);
        let nu = sub(&u0, &mul(&q, &u1));
        let nv = sub(&v0, &mul(&q, &v1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = normalized(nu);
        v0 = v1;
        v1 = normalized(nv);
    }
    (r0, u0, v0)
}

/// Exhaustive divisor list of `n` (|n| > 0), or `None` when `n` resists the
/// trial-division budget and the list could be incomplete.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut m = n.abs();
    if m.is_zero() {
        return None;
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(100_000u32);
    while &p * &p <= m && p <= limit {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m = &m / &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if m > BigInt::one() {
        if &m * &m > BigInt::from(10_000_000_000u64) && m > limit {
            // Leftover cofactor may be composite; a missed divisor would make
            // the root search unsound, so report "don't know".
            return None;
        }
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pw);
                pw = &pw * &p;
            }
        }
        divs = next;
        if divs.len() > 20_000 {
            return None;
        }
    }
    Some(divs)
}

/// All rational roots of `p`, or `None` if the search was inconclusive.
pub fn rational_roots(p: &[Rational]) -> Option<Vec<Rational>> {
    let p = normalized(p.to_vec());
    let d = match degree(&p) {
        None => return None,
        Some(d) => d,
    };
    if d == 0 {
        return Some(Vec::new());
    }
    // Clear denominators to an integer polynomial.
    let mut lcm = BigInt::one();
    for c in &p {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut low = 0;
    while ints[low].is_zero() {
        low += 1;
    }
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(Rational::zero());
    }
    let a0 = &ints[low];
    let ad = &ints[d];
    let (num_divs, den_divs) = (divisors(a0)?, divisors(ad)?);
    for nn in &num_divs {
        for dd in &den_divs {
            for sign in [1i64, -1] {
                let cand = Rational::from_big(nn * BigInt::from(sign), dd.clone());
                if eval(&p, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    Some(roots)
}

/// Irreducibility over `Q` for monic polynomials of degree 1..=4.
/// `Some(flag)` when conclusive, `None` when out of scope or inconclusive.
pub fn irreducible_over_q(monic: &[Rational]) -> Option<bool> {
    let d = degree(monic)?;
    match d {
        0 => Some(false),
        1 => Some(true),
        2 => {
            // x^2 + bx + c: reducible iff b^2 - 4c is a rational square.
            let disc = &(&monic[1] * &monic[1]) - &(&Rational::from_int(4) * &monic[0]);
            Some(!disc.is_square())
        }
        3 => rational_roots(monic).map(|r| r.is_empty()),
        4 => {
            match rational_roots(monic) {
                None => return None,
                Some(r) if !r.is_empty() => return Some(false),
                Some(_) => {}
            }
            Some(!quartic_has_quadratic_factor(monic)?)
        }
        _ => None,
    }
}

/// Quadratic-factor search for a monic quartic with no rational roots.
fn quartic_has_quadratic_factor(p: &[Rational]) -> Option<bool> {
    // Depress: x -> x - a3/4 preserves factorization over Q.
    let a3 = p[3].clone();
    let shift = -&(&a3 * &Rational::new(1, 4));
    let shifted = compose_linear(p, &shift);
    let (pc, qc, rc) = (&shifted[2], &shifted[1], &shifted[0]);
    // (x^2+ux+v)(x^2-ux+w): v+w-u^2 = pc, u(w-v) = qc, vw = rc.
    if qc.is_zero() {
        // u = 0 branch: v,w roots of t^2 - pc t + rc.
        let disc = &(pc * pc) - &(&Rational::from_int(4) * rc);
        if disc.is_square() {
            return Some(true);
        }
        // u != 0 forces w = v: v^2 = rc and u^2 = 2v - pc.
        if let Some(r) = rc.nth_root(2) {
            for v in [r.clone(), -r] {
                let u2 = &(&Rational::from_int(2) * &v) - pc;
                if !u2.is_zero() && u2.is_square() {
                    return Some(true);
                }
            }
        }
        return Some(false);
    }
    // u != 0: U = u^2 satisfies U^3 + 2p U^2 + (p^2-4r) U - q^2 = 0.
    let cubic = vec![
        -&(qc * qc),
        &(pc * pc) - &(&Rational::from_int(4) * rc),
        &Rational::from_int(2) * pc,
        Rational::one(),
    ];
    let roots = rational_roots(&cubic)?;
    for u2 in roots {
        if !u2.is_zero() && u2.is_square() {
            return Some(true);
        }
    }
    Some(false)
}

/// `p(x + s)` as a coefficient vector.
fn compose_linear(p: &[Rational], s: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    // Horner with the substituted variable (x + s).
    for c in p.iter().rev() {
        out = mul(&out, &[s.clone(), Rational::one()]);
        if out.is_empty() {
            out = vec![c.clone()];
        } else {
            out[0] = &out[0] + c;
        }
    }
    let mut out = normalized(out);
    out.resize(p.len(), Rational::zero());
    out
}

/// Render low-to-high coefficients as `x^3 - 2`-style text.
pub fn render(p: &[Rational]) -> String {
    let p = normalized(p.to_vec());
    if p.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if s.is_empty() {
            if c.is_negative() {
                s.push('-');
            }
        } else if c.is_negative() {
            s.push_str(" - ");
        } else {
            s.push_str(" + ");
        }
        let show_coeff = k == 0 || !mag.is_one();
        if show_coeff {
            s.push_str(&alloc::format!("{mag}"));
        }
        if k > 0 {
            if show_coeff {
                s.push('*');
            }
            s.push('x');
            if k > 1 {
                s.push_str(&alloc::format!("^{k}"));
            }
        }
    }
    s
}

/// Parse `x^3 - 2`, `x^2 + 1`, `2*x^2 - x + 1/2` into coefficients.
pub fn parse(text: &str) -> Result<Vec<Rational>, ScalarError> {
    let text = text.trim();
    let mut coeffs: Vec<Rational> = Vec::new();
    let mut rest = text;
    let mut sign = Rational::one();
    let bad = |t: &str| ScalarError::Parse(alloc::format!("invalid polynomial term `{t}`"));
    if rest.starts_with('-') {
        sign = -Rational::one();
        rest = rest[1..].trim_start();
    }
    loop {
        // Split off one term.
        let split = rest
            .char_indices()
            .skip(1)
            .find(|(i, c)| (*c == '+' || *c == '-') && !rest[..*i].trim_end().ends_with(['*', '^']))
            .map(|(i, _)| i);
        let (term, tail) = match split {
            Some(i) => (&rest[..i], &rest[i..]),
            None => (rest, ""),
        };
        let term = term.trim();
        if term.is_empty() {
            return Err(bad(text));
        }
        let (coeff, power) = parse_term(term).ok_or_else(|| bad(term))?;
        if coeffs.len() <= power {
            coeffs.resize(power + 1, Rational::zero());
        }
        coeffs[power] = &coeffs[power] + &(&sign * &coeff);
        if tail.is_empty() {
            break;
        }
        sign = if tail.starts_with('-') {
            -Rational::one()
        } else {
            Rational::one()
        };
        rest = tail[1..].trim_start();
    }
    Ok(normalized(coeffs))
}

fn parse_term(term: &str) -> Option<(Rational, usize)> {
    if let Some(xpos) = term.find('x') {
        let coeff_part = term[..xpos].trim().trim_end_matches('*').trim();
        let coeff = if coeff_part.is_empty() {
            Rational::one()
        } else {
            parse_rational(coeff_part).ok()?
        };
        let after = term[xpos + 1..].trim();
        let power = if after.is_empty() {
            1
        } else {
            let p = after.strip_prefix('^')?.trim();
            p.parse::<usize>().ok()?
        };
        Some((coeff, power))
    } else {
        Some((parse_rational(term).ok()?, 0))
    }
}
