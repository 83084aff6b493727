//! Factorization of univariate polynomials over the rationals.
//!
//! The route is classical: reduce to a squarefree primitive integer
//! polynomial, split it modulo a small well-chosen prime with the matrix
//! kernel method (swept deterministically over all shifts), lift the modular
//! factorization with quadratic Hensel steps past the coefficient bound, and
//! recombine subsets of the modular factors into true integer factors.
//! Multiplicities are recovered at the end by exact division.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::Rationals;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};
use crate::{Error, Result};
use std::sync::Arc;

// ---------------------------------------------------------------------------
// Dense univariate layers: Q[x], Z[x], and F_p[x].
// ---------------------------------------------------------------------------

type QP = Vec<BigRational>; // little-endian, no trailing zeros
type ZP = Vec<BigInt>;
type MP = Vec<u64>;

fn qp_trim(mut v: QP) -> QP {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn qp_deg(v: &QP) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

fn qp_sub(a: &QP, b: &QP) -> QP {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    qp_trim(out)
}

fn qp_scale(a: &QP, c: &BigRational) -> QP {
    if c.is_zero() {
        return vec![];
    }
    a.iter().map(|x| x * c).collect()
}

fn qp_mul(a: &QP, b: &QP) -> QP {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qp_trim(out)
}

fn qp_monic(a: &QP) -> QP {
    match a.last() {
        None => vec![],
        Some(l) => qp_scale(a, &(BigRational::one() / l)),
    }
}

/// Division with remainder; the divisor must be nonzero.
fn qp_divmod(a: &QP, b: &QP) -> (QP, QP) {
    let db = qp_deg(b).expect("division by zero polynomial");
    let lb = b.last().unwrap().clone();
    let mut rem = a.clone();
    let mut quo: QP = vec![];
    while let Some(dr) = qp_deg(&rem) {
        if dr < db {
            break;
        }
        let c = rem.last().unwrap() / &lb;
        let shift = dr - db;
        if quo.len() < shift + 1 {
            quo.resize(shift + 1, BigRational::zero());
        }
        quo[shift] = c.clone();
        let mut sub = vec![BigRational::zero(); shift];
        sub.extend(qp_scale(b, &c));
        rem = qp_sub(&rem, &sub);
    }
    (qp_trim(quo), rem)
}

fn qp_derivative(a: &QP) -> QP {
    if a.len() <= 1 {
        return vec![];
    }
    qp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

fn qp_gcd(a: &QP, b: &QP) -> QP {
    let (mut f, mut g) = (a.clone(), b.clone());
    while !g.is_empty() {
        let (_, r) = qp_divmod(&f, &g);
        f = g;
        g = r;
    }
    qp_monic(&f)
}

fn qp_try_div(a: &QP, b: &QP) -> Option<QP> {
    let (q, r) = qp_divmod(a, b);
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

/// Primitive integer polynomial and the rational scale it was divided by.
fn qp_to_primitive_z(a: &QP) -> (ZP, BigRational) {
    assert!(!a.is_empty());
    let mut den = BigInt::one();
    for c in a {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = a.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if content.is_zero() {
        content = BigInt::one();
    }
    if ints.last().unwrap().sign() == Sign::Minus {
        content = -content;
    }
    let prim: ZP = ints.iter().map(|c| c / &content).collect();
    (prim, BigRational::new(content, den))
}

fn zp_to_qp(a: &ZP) -> QP {
    a.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn zp_mul(a: &ZP, b: &ZP) -> ZP {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Exact division in Z[x]; None when not divisible.
fn zp_try_div(a: &ZP, b: &ZP) -> Option<ZP> {
    if a.is_empty() {
        return Some(vec![]);
    }
    let db = b.len().checked_sub(1)?;
    let lb = b.last().unwrap();
    let mut rem = a.clone();
    let mut quo = vec![BigInt::zero(); a.len().saturating_sub(db)];
    loop {
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
        if rem.is_empty() {
            return Some(quo);
        }
        let dr = rem.len() - 1;
        if dr < db {
            return None;
        }
        let (q, r) = rem.last().unwrap().div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        let shift = dr - db;
        quo[shift] = q.clone();
        for (i, c) in b.iter().enumerate() {
            rem[shift + i] -= &q * c;
        }
    }
}

fn zp_primitive(a: &ZP) -> ZP {
    let mut content = BigInt::zero();
    for c in a {
        content = content.gcd(c);
    }
    if content.is_zero() {
        return a.clone();
    }
    if a.last().unwrap().sign() == Sign::Minus {
        content = -content;
    }
    a.iter().map(|c| c / &content).collect()
}

// --- arithmetic modulo a small prime --------------------------------------

fn mp_trim(mut v: MP) -> MP {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn minv(a: u64, p: u64) -> u64 {
    // Extended Euclid on small values.
    let (mut t, mut newt): (i128, i128) = (0, 1);
    let (mut r, mut newr): (i128, i128) = (p as i128, (a % p) as i128);
    while newr != 0 {
        let q = r / newr;
        (t, newt) = (newt, t - q * newt);
        (r, newr) = (newr, r - q * newr);
    }
    assert_eq!(r, 1, "inverse of a unit");
    (((t % p as i128) + p as i128) % p as i128) as u64
}

fn mp_scale(a: &MP, c: u64, p: u64) -> MP {
    mp_trim(a.iter().map(|x| x * c % p).collect())
}

fn mp_monic(a: &MP, p: u64) -> MP {
    match a.last() {
        None => vec![],
        Some(&l) => mp_scale(a, minv(l, p), p),
    }
}

fn mp_sub(a: &MP, b: &MP, p: u64) -> MP {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] = c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] = (out[i] + p - c) % p;
    }
    mp_trim(out)
}

fn mp_mul(a: &MP, b: &MP, p: u64) -> MP {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    mp_trim(out)
}

fn mp_divmod(a: &MP, b: &MP, p: u64) -> (MP, MP) {
    let db = b.len().checked_sub(1).expect("division by zero");
    let linv = minv(*b.last().unwrap(), p);
    let mut rem = a.clone();
    let mut quo = vec![0u64; a.len().saturating_sub(db)];
    loop {
        rem = mp_trim(rem);
        if rem.len() <= db {
            break;
        }
        let dr = rem.len() - 1;
        let c = rem[dr] * linv % p;
        let shift = dr - db;
        quo[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            rem[shift + i] = (rem[shift + i] + p - c * bc % p) % p;
        }
    }
    (mp_trim(quo), mp_trim(rem))
}

fn mp_gcd(a: &MP, b: &MP, p: u64) -> MP {
    let (mut f, mut g) = (a.clone(), b.clone());
    while !g.is_empty() {
        let (_, r) = mp_divmod(&f, &g, p);
        f = g;
        g = r;
    }
    mp_monic(&f, p)
}

fn mp_derivative(a: &MP, p: u64) -> MP {
    if a.len() <= 1 {
        return vec![];
    }
    mp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * (i as u64 % p) % p)
            .collect(),
    )
}

fn zp_mod(a: &ZP, p: u64) -> MP {
    let pb = BigInt::from(p);
    mp_trim(
        a.iter()
            .map(|c| {
                let m = c.mod_floor(&pb);
                m.to_u64_digits().1.first().copied().unwrap_or(0)
            })
            .collect(),
    )
}

/// x^e mod (g, p) by square and multiply.
fn mp_powmod_x(e: u64, g: &MP, p: u64) -> MP {
    let mut result = vec![1u64];
    let mut base = mp_divmod(&vec![0, 1], g, p).1;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mp_divmod(&mp_mul(&result, &base, p), g, p).1;
        }
        base = mp_divmod(&mp_mul(&base, &base, p), g, p).1;
        e >>= 1;
    }
    result
}

// ---------------------------------------------------------------------------
// Splitting modulo p: kernel of the p-power map.
// ---------------------------------------------------------------------------

/// Monic irreducible factors of a monic squarefree g modulo p.
fn factor_squarefree_mod_p(g: &MP, p: u64) -> Vec<MP> {
    let n = g.len() - 1;
    if n <= 1 {
        return vec![g.clone()];
    }
    // Matrix of v -> v^p mod g in the basis 1, x, ..., x^{n-1}; column j is
    // x^{jp} mod g.
    let xp = mp_powmod_x(p, g, p);
    let mut cols: Vec<MP> = Vec::with_capacity(n);
    let mut cur: MP = vec![1];
    for _ in 0..n {
        cols.push(cur.clone());
        cur = mp_divmod(&mp_mul(&cur, &xp, p), g, p).1;
    }
    // Kernel of (M - I) by Gaussian elimination on columns as a row-major
    // matrix: rows indexed by basis degree.
    let mut mat = vec![vec![0u64; n]; n];
    for (j, col) in cols.iter().enumerate() {
        for (i, &c) in col.iter().enumerate() {
            mat[i][j] = c;
        }
        mat[j][j] = (mat[j][j] + p - 1) % p;
    }
    let kernel = mod_kernel(&mut mat, n, p);
    let r = kernel.len();
    let mut factors: Vec<MP> = vec![g.clone()];
    if r == 1 {
        return factors;
    }
    for v in &kernel {
        if factors.len() == r {
            break;
        }
        let vp = mp_trim(v.clone());
        if vp.len() <= 1 {
            continue; // constants split nothing
        }
        let mut next: Vec<MP> = Vec::new();
        for f in &factors {
            if f.len() - 1 <= 1 {
                next.push(f.clone());
                continue;
            }
            let mut h = f.clone();
            for s in 0..p {
                if h.len() - 1 == 0 {
                    break;
                }
                let mut shifted = vp.clone();
                shifted[0] = (shifted[0] + p - s) % p;
                let d = mp_gcd(&h, &mp_trim(shifted), p);
                if d.len() > 1 && d.len() < h.len() {
                    h = mp_divmod(&h, &d, p).0;
                    next.push(d);
                }
            }
            if h.len() > 1 {
                next.push(h);
            }
        }
        factors = next;
    }
    factors.iter().map(|f| mp_monic(f, p)).collect()
}

/// Kernel basis of an n x n matrix modulo p.
fn mod_kernel(mat: &mut [Vec<u64>], n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivot_col_of_row: Vec<Option<usize>> = vec![None; n];
    let mut used_cols = vec![false; n];
    let mut row = 0;
    for col in 0..n {
        let mut piv = None;
        for r in row..n {
            if mat[r][col] != 0 {
                piv = Some(r);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        mat.swap(row, piv);
        let inv = minv(mat[row][col], p);
        for c in 0..n {
            mat[row][c] = mat[row][c] * inv % p;
        }
        for r in 0..n {
            if r != row && mat[r][col] != 0 {
                let f = mat[r][col];
                for c in 0..n {
                    mat[r][c] = (mat[r][c] + p - f * mat[row][c] % p) % p;
                }
            }
        }
        pivot_col_of_row[row] = Some(col);
        used_cols[col] = true;
        row += 1;
        if row == n {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if used_cols[free] {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for r in 0..row {
            if let Some(pc) = pivot_col_of_row[r] {
                v[pc] = (p - mat[r][free]) % p;
            }
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Hensel lifting.
// ---------------------------------------------------------------------------

fn zb_mod(a: &ZP, m: &BigInt) -> ZP {
    a.iter().map(|c| c.mod_floor(m)).collect()
}

fn zb_trim(mut a: ZP) -> ZP {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zb_mul_mod(a: &ZP, b: &ZP, m: &BigInt) -> ZP {
    zb_trim(zb_mod(&zp_mul(a, b), m))
}

fn zb_sub_mod(a: &ZP, b: &ZP, m: &BigInt) -> ZP {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    zb_trim(zb_mod(&out, m))
}

fn zb_add_mod(a: &ZP, b: &ZP, m: &BigInt) -> ZP {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    zb_trim(zb_mod(&out, m))
}

/// Division with remainder modulo m by a monic divisor.
fn zb_divmod_monic(a: &ZP, b: &ZP, m: &BigInt) -> (ZP, ZP) {
    assert!(b.last().is_some_and(|c| c.is_one()), "divisor must be monic");
    let db = b.len() - 1;
    let mut rem = zb_trim(zb_mod(a, m));
    let mut quo = vec![BigInt::zero(); rem.len().saturating_sub(db)];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = rem[dr].clone();
        let shift = dr - db;
        quo[shift] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            let v = (&rem[shift + i] - &c * bc).mod_floor(m);
            rem[shift + i] = v;
        }
        rem = zb_trim(rem);
    }
    (zb_trim(zb_mod(&quo, m)), rem)
}

fn mp_to_zp(a: &MP) -> ZP {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic step: from f = g h and s g + t h = 1 (mod m) to the same
/// congruences mod m^2, keeping h monic.
fn hensel_step(
    f: &ZP,
    g: &ZP,
    h: &ZP,
    s: &ZP,
    t: &ZP,
    m: &BigInt,
) -> (ZP, ZP, ZP, ZP) {
    let m2 = m * m;
    let e = zb_sub_mod(f, &zp_mul(g, h), &m2);
    let (q, r) = zb_divmod_monic(&zb_mul_mod(s, &e, &m2), h, &m2);
    let g1 = zb_add_mod(&zb_add_mod(g, &zb_mul_mod(t, &e, &m2), &m2), &zb_mul_mod(&q, g, &m2), &m2);
    let h1 = zb_add_mod(h, &r, &m2);
    let b = zb_sub_mod(
        &zb_add_mod(&zb_mul_mod(s, &g1, &m2), &zb_mul_mod(t, &h1, &m2), &m2),
        &vec![BigInt::one()],
        &m2,
    );
    let (c, d) = zb_divmod_monic(&zb_mul_mod(s, &b, &m2), &h1, &m2);
    let s1 = zb_sub_mod(s, &d, &m2);
    let t1 = zb_sub_mod(&zb_sub_mod(t, &zb_mul_mod(t, &b, &m2), &m2), &zb_mul_mod(&c, &g1, &m2), &m2);
    (g1, h1, s1, t1)
}

/// Lift a pair (u, w) with f = u w mod p, both monic, to modulus >= target.
/// Returns the lifted pair and the modulus reached.
fn hensel_pair(f: &ZP, u0: &MP, w0: &MP, p: u64, target: &BigInt) -> (ZP, ZP, BigInt) {
    // Bezout coefficients mod p via the extended Euclid.
    let (mut r0, mut r1) = (u0.clone(), w0.clone());
    let (mut s0, mut s1): (MP, MP) = (vec![1], vec![]);
    let (mut t0, mut t1): (MP, MP) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = mp_divmod(&r0, &r1, p);
        let news = mp_sub(&s0, &mp_mul(&q, &s1, p), p);
        let newt = mp_sub(&t0, &mp_mul(&q, &t1, p), p);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, news);
        (t0, t1) = (t1, newt);
    }
    // r0 is a constant gcd (coprime factors); normalize to 1.
    let c = minv(r0[0], p);
    let s = mp_scale(&s0, c, p); // s u + t w = 1
    let t = mp_scale(&t0, c, p);
    let (mut g, mut h) = (mp_to_zp(u0), mp_to_zp(w0));
    // Keep h the monic side of the step: both are monic here.
    let (mut ss, mut tt) = (mp_to_zp(&s), mp_to_zp(&t));
    let mut m = BigInt::from(p);
    while &m < target {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &ss, &tt, &m);
        g = g1;
        h = h1;
        ss = s1;
        tt = t1;
        m = &m * &m;
    }
    (g, h, m)
}

/// Lift the full list of monic modular factors so their product matches the
/// monic image of f modulo a power of p at least `target`.
fn hensel_list(f_monic: &ZP, factors: &[MP], p: u64, target: &BigInt, modulus: &BigInt) -> Vec<ZP> {
    if factors.len() == 1 {
        return vec![zb_trim(zb_mod(f_monic, modulus))];
    }
    let half = factors.len() / 2;
    let (left, right) = factors.split_at(half);
    let mut u = vec![1u64];
    for fac in left {
        u = mp_mul(&u, fac, p);
    }
    let mut w = vec![1u64];
    for fac in right {
        w = mp_mul(&w, fac, p);
    }
    let (g, h, m) = hensel_pair(f_monic, &mp_monic(&u, p), &mp_monic(&w, p), p, target);
    let mut out = hensel_list(&g, left, p, target, &m);
    out.extend(hensel_list(&h, right, p, target, &m));
    out
}

// ---------------------------------------------------------------------------
// Recombination.
// ---------------------------------------------------------------------------

fn centered(a: &ZP, m: &BigInt) -> ZP {
    let half = m / 2;
    zb_trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Factor a primitive squarefree integer polynomial of degree >= 1 into
/// primitive irreducible integer polynomials.
fn factor_squarefree_z(g: &ZP) -> Result<Vec<ZP>> {
    let n = g.len() - 1;
    if n == 1 {
        return Ok(vec![g.clone()]);
    }
    // Choose a prime keeping the degree and squarefreeness.
    const PRIMES: [u64; 30] = [
        3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
        97, 101, 103, 107, 109, 113, 127,
    ];
    let lc = g.last().unwrap().clone();
    let mut chosen = None;
    for &p in &PRIMES {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let gp = zp_mod(g, p);
        if gp.len() != g.len() {
            continue;
        }
        let gp_monic = mp_monic(&gp, p);
        let d = mp_gcd(&gp_monic, &mp_derivative(&gp_monic, p), p);
        if d.len() == 1 {
            chosen = Some((p, gp_monic));
            break;
        }
    }
    let Some((p, gp_monic)) = chosen else {
        return Err(Error::Unsupported(
            "no small prime preserves squarefreeness for factoring".into(),
        ));
    };
    let modular = factor_squarefree_mod_p(&gp_monic, p);
    if modular.len() == 1 {
        return Ok(vec![g.clone()]);
    }
    // Coefficient bound: factors of g have coefficients below
    // 2^n * |g|_2 * |lc|; lift past twice that.
    let norm_sq: BigInt = g.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << (n + 1)) * (norm_sq.sqrt() + 1) * lc.abs();
    let target = &bound * 2 + 1;
    let big_l = {
        let mut m = BigInt::from(p);
        while m < target {
            m = &m * &m;
        }
        m
    };
    // Monic image of g modulo the lifted modulus.
    let lc_inv = modinv_big(&lc, &big_l);
    let f_monic: ZP = zb_trim(g.iter().map(|c| (c * &lc_inv).mod_floor(&big_l)).collect());
    let lifted = hensel_list(&f_monic, &modular, p, &target, &big_l);

    // Try subsets of the modular factors as true factors.
    let mut remaining: Vec<ZP> = lifted;
    let mut current = g.clone();
    let mut found: Vec<ZP> = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= remaining.len() {
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        for subset in combinations(&idxs, size) {
            let mut prod: ZP = vec![current.last().unwrap().clone()];
            for &i in &subset {
                prod = zb_mul_mod(&prod, &remaining[i], &big_l);
            }
            let cand = zp_primitive(&centered(&prod, &big_l));
            if cand.len() <= 1 {
                continue;
            }
            if let Some(qt) = zp_try_div(&current, &cand) {
                found.push(cand);
                current = zp_primitive(&qt);
                let keep: Vec<ZP> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, f)| f.clone())
                    .collect();
                remaining = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if current.len() > 1 {
        found.push(current);
    }
    Ok(found)
}

fn modinv_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "inverse modulo lifted prime power");
    e.x.mod_floor(m)
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Public interface on ring polynomials.
// ---------------------------------------------------------------------------

/// Extract dense coefficients of a polynomial univariate in `var`.
fn to_dense(f: &Polynomial<Rationals>, var: usize) -> Result<QP> {
    let mut out: QP = vec![];
    for (m, c) in f.terms() {
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 && i != var {
                return Err(Error::Input(format!(
                    "polynomial is not univariate in {}",
                    f.ring().vars[var]
                )));
            }
        }
        let d = m.0[var] as usize;
        if out.len() <= d {
            out.resize(d + 1, BigRational::zero());
        }
        out[d] = c.clone();
    }
    Ok(qp_trim(out))
}

fn from_dense(ring: &Arc<Ring<Rationals>>, var: usize, a: &QP) -> Polynomial<Rationals> {
    let mut acc = Polynomial::zero(ring);
    for (i, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut m = Monomial::one(ring.nvars());
        m.0[var] = i as u32;
        acc = acc.add(&Polynomial::monomial(ring, m, c.clone()));
    }
    acc
}

/// Monic irreducible factors over Q with multiplicities, and the constant
/// unit in front: f = unit * prod factor_i ^ mult_i.
pub fn factor_univariate(
    f: &Polynomial<Rationals>,
    var: usize,
) -> Result<(BigRational, Vec<(Polynomial<Rationals>, u32)>)> {
    let ring = f.ring().clone();
    let dense = to_dense(f, var)?;
    if dense.is_empty() {
        return Err(Error::Input("cannot factor the zero polynomial".into()));
    }
    if dense.len() == 1 {
        return Ok((dense[0].clone(), vec![]));
    }
    // Strip a power of the variable.
    let shift = dense.iter().position(|c| !c.is_zero()).unwrap();
    let body: QP = dense[shift..].to_vec();
    let mut result: Vec<(QP, u32)> = Vec::new();
    if shift > 0 {
        result.push((vec![BigRational::zero(), BigRational::one()], shift as u32));
    }
    if body.len() > 1 {
        // Squarefree part, then split it.
        let der = qp_derivative(&body);
        let sqfree = qp_try_div(&body, &qp_gcd(&body, &der)).expect("gcd divides");
        let (prim, _) = qp_to_primitive_z(&sqfree);
        let irreducibles = factor_squarefree_z(&prim)?;
        for z in irreducibles {
            let q = qp_monic(&zp_to_qp(&z));
            // Multiplicity by exact division in the original body.
            let mut mult = 0u32;
            let mut cur = body.clone();
            while let Some(next) = qp_try_div(&cur, &q) {
                mult += 1;
                cur = next;
            }
            debug_assert!(mult >= 1);
            result.push((q, mult));
        }
    }
    // unit = f / prod factors^mult, a constant.
    let mut prod: QP = vec![BigRational::one()];
    for (q, m) in &result {
        for _ in 0..*m {
            prod = qp_mul(&prod, q);
        }
    }
    let unit_poly = qp_try_div(&dense, &prod).expect("factorization divides the input");
    assert_eq!(unit_poly.len(), 1, "unit must be a constant");
    let unit = unit_poly[0].clone();
    let factors = result
        .into_iter()
        .map(|(q, m)| (from_dense(&ring, var, &q), m))
        .collect();
    Ok((unit, factors))
}

/// True when the polynomial, univariate in `var` with degree >= 1, is
/// irreducible over the rationals.
pub fn is_irreducible_univariate(f: &Polynomial<Rationals>, var: usize) -> Result<bool> {
    let (_, factors) = factor_univariate(f, var)?;
    Ok(factors.len() == 1 && factors[0].1 == 1)
}
