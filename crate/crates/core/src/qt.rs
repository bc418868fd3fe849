//! Exact arithmetic in Z[q][t, 1/t] and its fraction field Q(q, t).
//!
//! `IntPoly2` is a sparse integer polynomial in q and t where q-exponents are
//! nonnegative and t-exponents may be negative. `QT` is a reduced fraction of
//! two such polynomials in a canonical form, so `==` is mathematical equality.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::Error;

/// Exponent of q; never negative.
pub type QExp = u32;
/// Exponent of t; Laurent, may be negative.
pub type TExp = i32;

/// Sparse integer polynomial in q and t^{±1}.
///
/// Invariant: no zero coefficients are stored. Terms are keyed by
/// (q-exponent, t-exponent), so iteration order is ascending in
/// (q-degree, t-degree), which is also the canonical printing order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly2 {
    terms: BTreeMap<(QExp, TExp), BigInt>,
}

impl IntPoly2 {
    pub fn zero() -> Self {
        IntPoly2 { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        IntPoly2::term(1, 0, 0)
    }

    /// Single term c * q^eq * t^et.
    pub fn term(c: impl Into<BigInt>, eq: QExp, et: TExp) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((eq, et), c);
        }
        IntPoly2 { terms }
    }

    /// Builds from (q-exp, t-exp, coeff) triples, accumulating duplicates.
    pub fn from_terms(items: &[(QExp, TExp, i64)]) -> Self {
        let mut p = IntPoly2::zero();
        for &(eq, et, c) in items {
            p.add_term(eq, et, BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, 0))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(QExp, TExp), &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, eq: QExp, et: TExp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((eq, et)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(eq, et));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (&(eq, et), c) in &other.terms {
            r.add_term(eq, et, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        IntPoly2 {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = IntPoly2::zero();
        for (&(aq, at), ac) in &self.terms {
            for (&(bq, bt), bc) in &other.terms {
                r.add_term(aq + bq, at + bt, ac * bc);
            }
        }
        r
    }

    pub fn mul_bigint(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly2::zero();
        }
        IntPoly2 {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Largest (q-exp, t-exp) key in lexicographic order.
    pub fn leading(&self) -> Option<(&(QExp, TExp), &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn min_t(&self) -> TExp {
        self.terms.keys().map(|&(_, et)| et).min().unwrap_or(0)
    }

    pub fn max_t(&self) -> TExp {
        self.terms.keys().map(|&(_, et)| et).max().unwrap_or(0)
    }

    pub fn max_q(&self) -> QExp {
        self.terms.keys().map(|&(eq, _)| eq).max().unwrap_or(0)
    }

    /// Multiplies by t^d.
    pub fn shift_t(&self, d: TExp) -> Self {
        IntPoly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(eq, et), c)| ((eq, et + d), c.clone()))
                .collect(),
        }
    }

    /// Gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn eval_rational(&self, q0: &BigRational, t0: &BigRational) -> Result<BigRational, Error> {
        let mut acc = BigRational::zero();
        for (&(eq, et), c) in &self.terms {
            let mut term = BigRational::from(c.clone());
            term *= pow_rational(q0, eq as i64)?;
            term *= pow_rational(t0, et as i64)?;
            acc += term;
        }
        Ok(acc)
    }

    /// Dense view as a polynomial in t (coefficients dense in q).
    /// Requires min_t() >= 0.
    fn to_dense(&self) -> Vec<UPoly> {
        debug_assert!(self.min_t() >= 0);
        let dt = self.max_t() as usize;
        let dq = self.max_q() as usize;
        let mut rows = vec![vec![BigInt::zero(); dq + 1]; dt + 1];
        for (&(eq, et), c) in &self.terms {
            rows[et as usize][eq as usize] = c.clone();
        }
        rows.iter_mut().for_each(|r| utrim(r));
        rows
    }

    fn from_dense(rows: &[UPoly]) -> Self {
        let mut p = IntPoly2::zero();
        for (et, row) in rows.iter().enumerate() {
            for (eq, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    p.add_term(eq as QExp, et as TExp, c.clone());
                }
            }
        }
        p
    }

    /// Gcd in Z[q, t], normalized to positive leading coefficient.
    /// Both inputs must have nonnegative t-exponents.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return normalize_sign(other.clone());
        }
        if other.is_zero() {
            return normalize_sign(self.clone());
        }
        let g = bgcd(&self.to_dense(), &other.to_dense());
        normalize_sign(IntPoly2::from_dense(&g))
    }

    /// Exact division in Z[q, t]; the divisor must divide self.
    /// Both operands must have nonnegative t-exponents.
    pub fn div_exact(&self, g: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(IntPoly2::zero());
        }
        if g.is_one() {
            return Some(self.clone());
        }
        let q = bdiv_exact(&self.to_dense(), &g.to_dense())?;
        Some(IntPoly2::from_dense(&q))
    }
}

fn normalize_sign(p: IntPoly2) -> IntPoly2 {
    match p.leading() {
        Some((_, c)) if c.is_negative() => p.neg(),
        _ => p,
    }
}

// ---- dense univariate / bivariate helpers for gcd ----

/// Dense polynomial in q over Z; index is the q-exponent.
type UPoly = Vec<BigInt>;
/// Dense polynomial in t over Z[q]; index is the t-exponent.
type BPoly = Vec<UPoly>;

fn utrim(p: &mut UPoly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn uis_zero(p: &UPoly) -> bool {
    p.is_empty()
}

fn uadd_scaled(a: &UPoly, b: &UPoly, s: &BigInt, shift: usize) -> UPoly {
    let mut r = a.clone();
    if r.len() < b.len() + shift {
        r.resize(b.len() + shift, BigInt::zero());
    }
    for (i, c) in b.iter().enumerate() {
        r[i + shift] += c * s;
    }
    utrim(&mut r);
    r
}

fn umul_scalar(a: &UPoly, s: &BigInt) -> UPoly {
    if s.is_zero() {
        return vec![];
    }
    a.iter().map(|c| c * s).collect()
}

fn umul(a: &UPoly, b: &UPoly) -> UPoly {
    if uis_zero(a) || uis_zero(b) {
        return vec![];
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    utrim(&mut r);
    r
}

fn ucontent(a: &UPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn uprimitive(a: &UPoly) -> UPoly {
    let c = ucontent(a);
    if c.is_zero() || c.is_one() {
        return a.clone();
    }
    a.iter().map(|x| x / &c).collect()
}

/// Exact division over Z; None if not exactly divisible.
fn udiv_exact(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    if uis_zero(a) {
        return Some(vec![]);
    }
    if uis_zero(b) {
        return None;
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    if r.len() - 1 < db {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    let lcb = &b[db];
    while !uis_zero(&r) {
        let dr = r.len() - 1;
        if dr < db {
            return None;
        }
        let (qc, rem) = r[dr].div_rem(lcb);
        if !rem.is_zero() {
            return None;
        }
        q[dr - db] = qc.clone();
        let s = -qc;
        r = uadd_scaled(&r, b, &s, dr - db);
        if !uis_zero(&r) && r.len() - 1 >= dr {
            return None;
        }
    }
    utrim(&mut q);
    Some(q)
}

/// Primitive-PRS gcd over Z, positive leading coefficient.
fn ugcd(a: &UPoly, b: &UPoly) -> UPoly {
    if uis_zero(a) {
        let mut r = b.clone();
        if r.last().map(|c| c.is_negative()).unwrap_or(false) {
            r = umul_scalar(&r, &BigInt::from(-1));
        }
        return r;
    }
    if uis_zero(b) {
        return ugcd(b, a);
    }
    let g = ucontent(a).gcd(&ucontent(b));
    let mut x = uprimitive(a);
    let mut y = uprimitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !uis_zero(&y) {
        let r = upseudo_rem(&x, &y);
        x = y;
        y = uprimitive(&r);
    }
    if x.last().map(|c| c.is_negative()).unwrap_or(false) {
        x = umul_scalar(&x, &BigInt::from(-1));
    }
    umul_scalar(&x, &g)
}

fn upseudo_rem(a: &UPoly, b: &UPoly) -> UPoly {
    let db = b.len() - 1;
    let lcb = b[db].clone();
    let mut r = a.clone();
    while !uis_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        // r <- lcb * r - lcr * q^{dr-db} * b
        let scaled = umul_scalar(&r, &lcb);
        let s = -lcr;
        r = uadd_scaled(&scaled, b, &s, dr - db);
        if !uis_zero(&r) && r.len() - 1 >= dr {
            break; // defensive; cannot happen
        }
    }
    r
}

fn btrim(p: &mut BPoly) {
    while p.last().map(uis_zero).unwrap_or(false) {
        p.pop();
    }
}

fn bis_zero(p: &BPoly) -> bool {
    p.iter().all(uis_zero)
}

fn bcontent(a: &BPoly) -> UPoly {
    let mut g: UPoly = vec![];
    for row in a {
        if uis_zero(row) {
            continue;
        }
        g = ugcd(&g, row);
        if g.len() == 1 && g[0].is_one() {
            break;
        }
    }
    g
}

fn bprimitive(a: &BPoly) -> BPoly {
    let c = bcontent(a);
    if uis_zero(&c) || (c.len() == 1 && c[0].is_one()) {
        return a.clone();
    }
    a.iter()
        .map(|row| {
            if uis_zero(row) {
                vec![]
            } else {
                udiv_exact(row, &c).expect("content divides")
            }
        })
        .collect()
}

fn bpseudo_rem(a: &BPoly, b: &BPoly) -> BPoly {
    let db = b.len() - 1;
    let lcb = b[db].clone();
    let mut r = a.clone();
    btrim(&mut r);
    while !bis_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        // r <- lcb * r - lcr * t^{dr-db} * b
        let mut nr: BPoly = r.iter().map(|row| umul(row, &lcb)).collect();
        for (i, row) in b.iter().enumerate() {
            let prod = umul(row, &lcr);
            let idx = i + dr - db;
            if nr.len() <= idx {
                nr.resize(idx + 1, vec![]);
            }
            nr[idx] = usub(&nr[idx], &prod);
        }
        btrim(&mut nr);
        r = nr;
        if !bis_zero(&r) && r.len() - 1 >= dr {
            break; // defensive; cannot happen
        }
    }
    r
}

fn usub(a: &UPoly, b: &UPoly) -> UPoly {
    uadd_scaled(a, b, &BigInt::from(-1), 0)
}

fn bgcd(a: &BPoly, b: &BPoly) -> BPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    btrim(&mut a);
    btrim(&mut b);
    if bis_zero(&a) {
        return b;
    }
    if bis_zero(&b) {
        return a;
    }
    let g = ugcd(&bcontent(&a), &bcontent(&b));
    let mut x = bprimitive(&a);
    let mut y = bprimitive(&b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !bis_zero(&y) {
        let r = bpseudo_rem(&x, &y);
        x = y;
        y = bprimitive(&r);
        btrim(&mut y);
    }
    x.iter().map(|row| umul(row, &g)).collect()
}

/// Exact division in Z[q][t]; None if not divisible.
fn bdiv_exact(a: &BPoly, b: &BPoly) -> Option<BPoly> {
    let mut r = a.clone();
    btrim(&mut r);
    let mut b = b.clone();
    btrim(&mut b);
    if bis_zero(&b) {
        return None;
    }
    if bis_zero(&r) {
        return Some(vec![]);
    }
    let db = b.len() - 1;
    let lcb = b[db].clone();
    if r.len() - 1 < db {
        return None;
    }
    let mut q: BPoly = vec![vec![]; r.len() - db];
    while !bis_zero(&r) {
        let dr = r.len() - 1;
        if dr < db {
            return None;
        }
        let qc = udiv_exact(&r[dr], &lcb)?;
        q[dr - db] = qc.clone();
        for (i, row) in b.iter().enumerate() {
            let prod = umul(row, &qc);
            let idx = i + dr - db;
            r[idx] = usub(&r[idx], &prod);
        }
        btrim(&mut r);
        if !bis_zero(&r) && r.len() - 1 >= dr {
            return None;
        }
    }
    Some(q)
}

fn pow_rational(x: &BigRational, k: i64) -> Result<BigRational, Error> {
    if k == 0 {
        return Ok(BigRational::one());
    }
    if x.is_zero() && k < 0 {
        return Err(Error::PoleAtSpecialization);
    }
    let mut base = if k < 0 { x.recip() } else { x.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = BigRational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    Ok(acc)
}

/// Element of Q(q, t) as a reduced fraction num/den of `IntPoly2`s.
///
/// Canonical form: den is nonzero with min t-exponent 0, gcd(num', den) is a
/// unit where num' is num with its t-exponents cleared, and the leading
/// (largest (q,t) key) coefficient of den is positive. Structural equality is
/// therefore mathematical equality, enabling hash-based polynomial maps.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QT {
    num: IntPoly2,
    den: IntPoly2,
}

impl QT {
    pub fn zero() -> Self {
        QT { num: IntPoly2::zero(), den: IntPoly2::one() }
    }

    pub fn one() -> Self {
        QT { num: IntPoly2::one(), den: IntPoly2::one() }
    }

    pub fn from_int(c: i64) -> Self {
        QT { num: IntPoly2::term(c, 0, 0), den: IntPoly2::one() }
    }

    pub fn q() -> Self {
        QT::q_pow(1)
    }

    pub fn t() -> Self {
        QT::t_pow(1)
    }

    /// q^k for any integer k; negative powers become fractions.
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            QT { num: IntPoly2::term(1, k as QExp, 0), den: IntPoly2::one() }
        } else {
            QT { num: IntPoly2::one(), den: IntPoly2::term(1, (-k) as QExp, 0) }
        }
    }

    /// t^k for any integer k; t is a unit, so this stays a polynomial.
    pub fn t_pow(k: i64) -> Self {
        QT { num: IntPoly2::term(1, 0, k as TExp), den: IntPoly2::one() }
    }

    /// Integer-coefficient polynomial from (q-exp, t-exp, coeff) triples.
    pub fn poly(items: &[(QExp, TExp, i64)]) -> Self {
        QT { num: IntPoly2::from_terms(items), den: IntPoly2::one() }
    }

    /// Builds num/den in canonical form; errors if den is zero.
    pub fn new(num: IntPoly2, den: IntPoly2) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: IntPoly2, den: IntPoly2) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return QT::zero();
        }
        if den.is_one() {
            return QT { num, den };
        }
        // Clear t so both sides are true polynomials; the net unit t^shift
        // is restored onto num at the end.
        let nm = num.min_t();
        let dm = den.min_t();
        let mut num = num.shift_t(-nm);
        let mut den = den.shift_t(-dm);
        let shift = nm - dm;
        let g = num.gcd(&den);
        if !g.is_one() {
            num = num.div_exact(&g).expect("gcd divides num");
            den = den.div_exact(&g).expect("gcd divides den");
        }
        if den
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            num = num.neg();
            den = den.neg();
        }
        // den's min t-exponent is 0 by construction of the gcd.
        debug_assert_eq!(den.min_t(), 0);
        QT { num: num.shift_t(shift), den }
    }

    pub fn num(&self) -> &IntPoly2 {
        &self.num
    }

    pub fn den(&self) -> &IntPoly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value lies in Z[q, t]: unit denominator and no negative
    /// t-exponents. This is the integrality test used on table entries.
    pub fn is_int_polynomial(&self) -> bool {
        self.den.is_one() && self.num.min_t() >= 0
    }

    /// True when the value lies in Z[q, t, 1/t].
    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &QT) -> QT {
        if self.den.is_one() && other.den.is_one() {
            return QT { num: self.num.add(&other.num), den: IntPoly2::one() };
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        QT::reduce(num, den)
    }

    pub fn neg(&self) -> QT {
        QT { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &QT) -> QT {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QT) -> QT {
        if self.is_zero() || other.is_zero() {
            return QT::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return QT { num: self.num.mul(&other.num), den: IntPoly2::one() };
        }
        QT::reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn mul_int(&self, c: i64) -> QT {
        self.mul(&QT::from_int(c))
    }

    pub fn div(&self, other: &QT) -> Result<QT, Error> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QT::reduce(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn inv(&self) -> Result<QT, Error> {
        QT::one().div(self)
    }

    pub fn pow(&self, k: i64) -> Result<QT, Error> {
        if k == 0 {
            return Ok(QT::one());
        }
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = QT::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Substitutes q -> q_img, t -> t_img. t_img (and q_img when q appears in
    /// a denominator position) must be invertible where needed.
    pub fn substitute(&self, q_img: &QT, t_img: &QT) -> Result<QT, Error> {
        let n = eval_poly_at(&self.num, q_img, t_img)?;
        let d = eval_poly_at(&self.den, q_img, t_img)?;
        n.div(&d)
    }

    /// The involution q -> 1/q, t -> 1/t.
    pub fn invert_vars(&self) -> Result<QT, Error> {
        self.substitute(&QT::q_pow(-1), &QT::t_pow(-1))
    }

    /// Swaps q and t.
    pub fn swap_qt(&self) -> Result<QT, Error> {
        self.substitute(&QT::t(), &QT::q())
    }

    /// Exact evaluation at rational q0, t0 on the reduced form.
    pub fn specialize(&self, q0: &BigRational, t0: &BigRational) -> Result<BigRational, Error> {
        let d = self.den.eval_rational(q0, t0)?;
        if d.is_zero() {
            return Err(Error::PoleAtSpecialization);
        }
        let n = self.num.eval_rational(q0, t0)?;
        Ok(n / d)
    }

    /// Max degrees (q, t) of the numerator; meaningful for polynomial values.
    pub fn num_degrees(&self) -> (QExp, TExp) {
        (self.num.max_q(), self.num.max_t())
    }

    /// True if every numerator coefficient is nonnegative (used by the
    /// positivity scans; only meaningful for polynomial values).
    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.num.iter().all(|(_, c)| !c.is_negative())
    }
}

fn eval_poly_at(p: &IntPoly2, q_img: &QT, t_img: &QT) -> Result<QT, Error> {
    let mut acc = QT::zero();
    for (&(eq, et), c) in p.iter() {
        let mut term = QT { num: IntPoly2::term(c.clone(), 0, 0), den: IntPoly2::one() };
        term = term.mul(&q_img.pow(eq as i64)?);
        term = term.mul(&t_img.pow(et as i64)?);
        acc = acc.add(&term);
    }
    Ok(acc)
}

impl std::ops::Add for &QT {
    type Output = QT;
    fn add(self, rhs: &QT) -> QT {
        QT::add(self, rhs)
    }
}

impl std::ops::Sub for &QT {
    type Output = QT;
    fn sub(self, rhs: &QT) -> QT {
        QT::sub(self, rhs)
    }
}

impl std::ops::Mul for &QT {
    type Output = QT;
    fn mul(self, rhs: &QT) -> QT {
        QT::mul(self, rhs)
    }
}

impl std::ops::Neg for &QT {
    type Output = QT;
    fn neg(self) -> QT {
        QT::neg(self)
    }
}

/// Finite Pochhammer product (a; base)_k = prod_{j=0}^{k-1} (1 - a * base^j).
pub fn pochhammer(a: &QT, base: &QT, k: u32) -> QT {
    let mut acc = QT::one();
    let mut ab = a.clone();
    for _ in 0..k {
        acc = acc.mul(&QT::one().sub(&ab));
        ab = ab.mul(base);
    }
    acc
}

/// (q; q)_k.
pub fn q_factorial(k: u32) -> QT {
    pochhammer(&QT::q(), &QT::q(), k)
}

/// (t; t)_k.
pub fn t_factorial(k: u32) -> QT {
    pochhammer(&QT::t(), &QT::t(), k)
}

/// Gaussian binomial [m choose r] in the given variable (pass QT::q() or QT::t()).
pub fn gauss_binomial(m: u32, r: u32, var: &QT) -> QT {
    if r > m {
        return QT::zero();
    }
    let num = pochhammer(var, var, m);
    let den = pochhammer(var, var, r).mul(&pochhammer(var, var, m - r));
    num.div(&den).expect("Gaussian binomial denominator is nonzero")
}

// ---- canonical text form ----

fn format_poly(p: &IntPoly2, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (i, (&(eq, et), c)) in p.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mut parts: Vec<String> = Vec::new();
        if !abs.is_one() || (eq == 0 && et == 0) {
            parts.push(abs.to_string());
        }
        match eq {
            0 => {}
            1 => parts.push("q".into()),
            _ => parts.push(format!("q^{eq}")),
        }
        match et {
            0 => {}
            1 => parts.push("t".into()),
            _ => parts.push(format!("t^{et}")),
        }
        write!(f, "{}", parts.join("*"))?;
    }
    Ok(())
}

/// Canonical grammar: terms ascending by (q-degree, t-degree); explicit `*`
/// between factors and `^` before exponents (exponent 1 is bare, negative
/// t-exponents print as `t^-k`); fractions as `(num)/(den)`.
impl fmt::Display for QT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            format_poly(&self.num, f)
        } else {
            write!(f, "(")?;
            format_poly(&self.num, f)?;
            write!(f, ")/(")?;
            format_poly(&self.den, f)?;
            write!(f, ")")
        }
    }
}

// ---- JSON form ----

/// Serialized fraction: term lists [[q-exp, t-exp, "coeff"], ...].
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct QtJson {
    pub num: Vec<(QExp, TExp, String)>,
    pub den: Vec<(QExp, TExp, String)>,
}

impl QT {
    pub fn to_json(&self) -> QtJson {
        let dump = |p: &IntPoly2| {
            p.iter()
                .map(|(&(eq, et), c)| (eq, et, c.to_string()))
                .collect()
        };
        QtJson { num: dump(&self.num), den: dump(&self.den) }
    }

    pub fn from_json(j: &QtJson) -> Result<QT, Error> {
        let load = |v: &Vec<(QExp, TExp, String)>| -> Result<IntPoly2, Error> {
            let mut p = IntPoly2::zero();
            for (eq, et, c) in v {
                let c: BigInt = c
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
                p.add_term(*eq, *et, c);
            }
            Ok(p)
        };
        QT::new(load(&j.num)?, load(&j.den)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt(items: &[(QExp, TExp, i64)]) -> QT {
        QT::poly(items)
    }

    #[test]
    fn q_squared_minus_one_over_q_minus_one() {
        let num = qt(&[(2, 0, 1), (0, 0, -1)]);
        let den = qt(&[(1, 0, 1), (0, 0, -1)]);
        let r = num.div(&den).unwrap();
        assert_eq!(r, qt(&[(1, 0, 1), (0, 0, 1)]));
        assert!(r.is_int_polynomial());
    }

    #[test]
    fn one_minus_t_squared_factors() {
        let lhs = qt(&[(0, 0, 1), (0, 2, -1)]);
        let rhs = qt(&[(0, 0, 1), (0, 1, -1)]).mul(&qt(&[(0, 0, 1), (0, 1, 1)]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cancellation_to_structural_equality() {
        // (1-t)/(1-t^2) == 1/(1+t)
        let a = qt(&[(0, 0, 1), (0, 1, -1)])
            .div(&qt(&[(0, 0, 1), (0, 2, -1)]))
            .unwrap();
        let b = QT::one().div(&qt(&[(0, 0, 1), (0, 1, 1)])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn laurent_t_normalization() {
        // t^{-1} is a polynomial value (t is a unit); q^{-1} is a fraction.
        assert!(QT::t_pow(-1).is_laurent_polynomial());
        assert!(!QT::t_pow(-1).is_int_polynomial());
        assert!(!QT::q_pow(-1).is_laurent_polynomial());
        assert_eq!(QT::t_pow(-3).mul(&QT::t_pow(3)), QT::one());
        assert_eq!(QT::q_pow(-2).mul(&QT::q_pow(2)), QT::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(QT::one().div(&QT::zero()).is_err());
        assert!(QT::new(IntPoly2::one(), IntPoly2::zero()).is_err());
    }

    #[test]
    fn pochhammer_splits() {
        // (a; q)_{j+k} = (a; q)_j * (a q^j; q)_k with a = t, j = 2, k = 3
        let a = QT::t();
        let lhs = pochhammer(&a, &QT::q(), 5);
        let shifted = a.mul(&QT::q_pow(2));
        let rhs = pochhammer(&a, &QT::q(), 2).mul(&pochhammer(&shifted, &QT::q(), 3));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_binomial_is_polynomial() {
        let b = gauss_binomial(4, 2, &QT::q());
        // [4 choose 2]_q = 1 + q + 2q^2 + q^3 + q^4
        assert_eq!(
            b,
            qt(&[(0, 0, 1), (1, 0, 1), (2, 0, 2), (3, 0, 1), (4, 0, 1)])
        );
    }

    #[test]
    fn specialize_after_cancellation() {
        // (q;q)_2 / ((q;q)_1 (q;q)_1) = (1-q^2)/(1-q) = 1+q, which at q=1 is 2.
        let v = q_factorial(2)
            .div(&q_factorial(1).mul(&q_factorial(1)))
            .unwrap();
        let one = BigRational::one();
        assert_eq!(v.specialize(&one, &one).unwrap(), BigRational::from(BigInt::from(2)));
    }

    #[test]
    fn specialize_pole_is_an_error() {
        let v = QT::one().div(&qt(&[(0, 0, 1), (1, 0, -1)])).unwrap();
        let one = BigRational::one();
        assert!(matches!(
            v.specialize(&one, &one),
            Err(Error::PoleAtSpecialization)
        ));
    }

    #[test]
    fn substitution_swap_and_invert() {
        let v = qt(&[(1, 0, 1), (0, 1, 2)]); // q + 2t
        assert_eq!(v.swap_qt().unwrap(), qt(&[(0, 1, 1), (1, 0, 2)]));
        // (q + 2t) at q->1/q, t->1/t equals (t + 2q)/(qt)
        let inv = v.invert_vars().unwrap();
        let expect = qt(&[(0, 1, 1), (1, 0, 2)])
            .div(&qt(&[(1, 1, 1)]))
            .unwrap();
        assert_eq!(inv, expect);
    }

    #[test]
    fn field_axioms_on_seeded_samples() {
        let mut s = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        };
        let mut rand_qt = move || {
            let mut num = IntPoly2::zero();
            let mut den = IntPoly2::zero();
            for _ in 0..3 {
                let c = (next() % 7) as i64 - 3;
                num.add_term((next() % 3) as QExp, (next() % 5) as TExp - 2, BigInt::from(c));
                let c = (next() % 7) as i64 - 3;
                den.add_term((next() % 3) as QExp, (next() % 3) as TExp, BigInt::from(c));
            }
            if den.is_zero() {
                den = IntPoly2::one();
            }
            QT::new(num, den).unwrap()
        };
        for _ in 0..40 {
            let a = rand_qt();
            let b = rand_qt();
            let c = rand_qt();
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.sub(&a), QT::zero());
            if !a.is_zero() {
                assert_eq!(a.div(&a).unwrap(), QT::one());
                assert_eq!(a.mul(&a.inv().unwrap()), QT::one());
            }
        }
    }

    #[test]
    fn canonical_string_grammar() {
        let p = qt(&[(0, 0, 1), (0, 1, -1), (0, 2, -1), (0, 3, 1)]);
        assert_eq!(p.to_string(), "1 - t - t^2 + t^3");
        let r = qt(&[(1, 0, 1), (0, 0, 1)]).div(&qt(&[(0, 1, -1), (0, 0, 1)])).unwrap();
        assert_eq!(r.to_string(), "(-1 - q)/(-1 + t)");
        assert_eq!(QT::t_pow(-1).to_string(), "t^-1");
        assert_eq!(qt(&[(2, 3, 5)]).to_string(), "5*q^2*t^3");
        assert_eq!(QT::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let v = qt(&[(1, -2, 3), (0, 0, -1)])
            .div(&qt(&[(2, 0, 1), (0, 0, 7)]))
            .unwrap();
        let j = v.to_json();
        let back = QT::from_json(&j).unwrap();
        assert_eq!(v, back);
        let s = serde_json::to_string(&j).unwrap();
        let j2: QtJson = serde_json::from_str(&s).unwrap();
        assert_eq!(QT::from_json(&j2).unwrap(), v);
    }

    #[test]
    fn gcd_reduction_of_shared_cyclotomic_factors() {
        // ((1-q^2 t)(1-t)) / ((1-q^2 t)(1+t)) reduces to (1-t)/(1+t)
        let f1 = qt(&[(0, 0, 1), (2, 1, -1)]);
        let a = f1.mul(&qt(&[(0, 0, 1), (0, 1, -1)]));
        let b = f1.mul(&qt(&[(0, 0, 1), (0, 1, 1)]));
        let r = a.div(&b).unwrap();
        let expect = qt(&[(0, 0, 1), (0, 1, -1)])
            .div(&qt(&[(0, 0, 1), (0, 1, 1)]))
            .unwrap();
        assert_eq!(r, expect);
    }
}
