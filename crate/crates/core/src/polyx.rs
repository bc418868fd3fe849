//! Sparse Laurent polynomials in x_1, ..., x_n with coefficients in Q(q, t).
//!
//! Exponents are signed, so inverse variables are first-class; all division
//! routines are exact and report a leftover remainder as an error.

use std::collections::HashMap;
use std::fmt;

use crate::qt::QT;
use crate::Error;

/// Laurent polynomial in `nvars` variables over Q(q, t).
#[derive(Clone, Debug)]
pub struct XPoly {
    nvars: usize,
    terms: HashMap<Box<[i32]>, QT>,
}

impl PartialEq for XPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}
impl Eq for XPoly {}

impl XPoly {
    pub fn zero(nvars: usize) -> Self {
        XPoly { nvars, terms: HashMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        XPoly::constant(nvars, QT::one())
    }

    pub fn constant(nvars: usize, c: QT) -> Self {
        let mut p = XPoly::zero(nvars);
        p.add_term(&vec![0; nvars], c);
        p
    }

    /// The variable x_i (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        XPoly::var_pow(nvars, i, 1)
    }

    /// x_i^k (0-based, k may be negative).
    pub fn var_pow(nvars: usize, i: usize, k: i32) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = k;
        let mut p = XPoly::zero(nvars);
        p.add_term(&e, QT::one());
        p
    }

    pub fn monomial(nvars: usize, exps: &[i32], c: QT) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = XPoly::zero(nvars);
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &QT)> {
        self.terms.iter().map(|(e, c)| (&e[..], c))
    }

    pub fn coeff(&self, exps: &[i32]) -> QT {
        self.terms.get(exps).cloned().unwrap_or_else(QT::zero)
    }

    pub fn add_term(&mut self, exps: &[i32], c: QT) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(exps) {
            Some(cur) => {
                *cur = cur.add(&c);
                if cur.is_zero() {
                    self.terms.remove(exps);
                }
            }
            None => {
                self.terms.insert(exps.to_vec().into_boxed_slice(), c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        XPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut r = XPoly::zero(self.nvars);
        let mut e = vec![0i32; self.nvars];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                for i in 0..self.nvars {
                    e[i] = ea[i] + eb[i];
                }
                r.add_term(&e, ca.mul(cb));
            }
        }
        r
    }

    pub fn scale(&self, c: &QT) -> Self {
        if c.is_zero() {
            return XPoly::zero(self.nvars);
        }
        XPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v.mul(c))).collect(),
        }
    }

    /// Multiplies by the monomial x^shift (componentwise exponent shift).
    pub fn shift_exps(&self, shift: &[i32]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        XPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let ne: Vec<i32> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
                    (ne.into_boxed_slice(), c.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = XPoly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Swaps variables x_i and x_j (0-based).
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        assert!(i < self.nvars && j < self.nvars);
        if i == j {
            return self.clone();
        }
        XPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = e.to_vec();
                    ne.swap(i, j);
                    (ne.into_boxed_slice(), c.clone())
                })
                .collect(),
        }
    }

    /// x_i -> c * x_i for each listed variable: coefficient picks up c^{e_i}.
    /// c must be invertible if negative exponents of x_i occur.
    pub fn scale_vars(&self, vars: &[usize], c: &QT) -> Result<Self, Error> {
        let mut r = XPoly::zero(self.nvars);
        for (e, v) in &self.terms {
            let mut total: i64 = 0;
            for &i in vars {
                total += e[i] as i64;
            }
            r.add_term(e, v.mul(&c.pow(total)?));
        }
        Ok(r)
    }

    /// x_i -> q * x_i for each variable in `vars` (the q-shift operator).
    pub fn q_shift_vars(&self, vars: &[usize]) -> Self {
        self.scale_vars(vars, &QT::q()).expect("q is invertible")
    }

    /// x_i -> 1/x_i for each variable in `vars`.
    pub fn invert_vars(&self, vars: &[usize]) -> Self {
        XPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = e.to_vec();
                    for &i in vars {
                        ne[i] = -ne[i];
                    }
                    (ne.into_boxed_slice(), c.clone())
                })
                .collect(),
        }
    }

    /// The cyclic affine substitution on the window [lo, hi):
    /// x_lo -> q * x_{hi-1} and x_i -> x_{i-1} for lo < i < hi, i.e.
    /// (w f)(x_lo, ..., x_{hi-1}) = f(q x_{hi-1}, x_lo, ..., x_{hi-2}).
    pub fn cycle_q(&self, lo: usize, hi: usize) -> Self {
        assert!(lo < hi && hi <= self.nvars);
        let mut r = XPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.to_vec();
            // exponent vector rotates left within the window; the old first
            // exponent lands on the last variable and contributes q^{e_lo}.
            let first = ne[lo];
            for i in lo..hi - 1 {
                ne[i] = ne[i + 1];
            }
            ne[hi - 1] = first;
            r.add_term(&ne, c.mul(&QT::q_pow(first as i64)));
        }
        r
    }

    /// Inverse of `cycle_q` on the same window.
    pub fn cycle_q_inv(&self, lo: usize, hi: usize) -> Self {
        assert!(lo < hi && hi <= self.nvars);
        let mut r = XPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.to_vec();
            let last = ne[hi - 1];
            for i in (lo + 1..hi).rev() {
                ne[i] = ne[i - 1];
            }
            ne[lo] = last;
            r.add_term(&ne, c.mul(&QT::q_pow(-(last as i64))));
        }
        r
    }

    /// True if f is invariant under every adjacent swap inside [lo, hi).
    pub fn is_symmetric_in(&self, lo: usize, hi: usize) -> bool {
        (lo..hi.saturating_sub(1)).all(|i| self.swap_vars(i, i + 1) == *self)
    }

    /// Max total degree over terms; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<i32> {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<i32>())
            .max()
    }

    /// Largest exponent of x_i appearing.
    pub fn degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    fn min_exps(&self) -> Vec<i32> {
        let mut m = vec![0i32; self.nvars];
        for i in 0..self.nvars {
            m[i] = self.terms.keys().map(|e| e[i]).min().unwrap_or(0).min(0);
        }
        m
    }

    fn strict_min_exps(&self) -> Vec<i32> {
        (0..self.nvars)
            .map(|i| self.terms.keys().map(|e| e[i]).min().unwrap_or(0))
            .collect()
    }

    /// Graded-lex ascending key order: by total degree, then lex on exponents.
    pub fn sorted_terms(&self) -> Vec<(Vec<i32>, QT)> {
        let mut v: Vec<(Vec<i32>, QT)> = self
            .terms
            .iter()
            .map(|(e, c)| (e.to_vec(), c.clone()))
            .collect();
        v.sort_by(|a, b| {
            let da: i32 = a.0.iter().sum();
            let db: i32 = b.0.iter().sum();
            da.cmp(&db).then_with(|| a.0.cmp(&b.0))
        });
        v
    }

    fn leading_term(&self) -> Option<(Vec<i32>, QT)> {
        self.terms
            .iter()
            .max_by(|a, b| {
                let da: i32 = a.0.iter().sum();
                let db: i32 = b.0.iter().sum();
                da.cmp(&db).then_with(|| a.0.cmp(b.0))
            })
            .map(|(e, c)| (e.to_vec(), c.clone()))
    }

    /// Exact division of Laurent polynomials; errors with `NotDivisible` if
    /// the quotient does not exist. Exactness is preserved because monomials
    /// are units: both operands are normalized to honest polynomials with the
    /// divisor free of monomial factors, divided there, then shifted back.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self, Error> {
        assert_eq!(self.nvars, divisor.nvars);
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(XPoly::zero(self.nvars));
        }
        // Pull the full monomial factor out of the divisor.
        let dm = divisor.strict_min_exps();
        let neg_dm: Vec<i32> = dm.iter().map(|x| -x).collect();
        let g = divisor.shift_exps(&neg_dm);
        // Compensate on the dividend, then lift it to an honest polynomial.
        let f0 = self.shift_exps(&neg_dm);
        let fm = f0.min_exps();
        let neg_fm: Vec<i32> = fm.iter().map(|x| -x).collect();
        let mut f = f0.shift_exps(&neg_fm);

        let (ge, gc) = g.leading_term().expect("divisor is nonzero");
        let mut quot = XPoly::zero(self.nvars);
        let mut e = vec![0i32; self.nvars];
        while !f.is_zero() {
            let (fe, fc) = f.leading_term().unwrap();
            let mut ok = true;
            for i in 0..self.nvars {
                e[i] = fe[i] - ge[i];
                if e[i] < 0 {
                    ok = false;
                }
            }
            if !ok {
                return Err(Error::NotDivisible);
            }
            let qc = fc.div(&gc).expect("leading coefficient is nonzero");
            quot.add_term(&e, qc.clone());
            let t = XPoly::monomial(self.nvars, &e, qc);
            f = f.sub(&t.mul(&g));
        }
        Ok(quot.shift_exps(&fm))
    }

    /// Divides by prod_{lo <= i < j < hi} (x_i - x_j), one binomial at a time.
    pub fn vandermonde_divide(&self, lo: usize, hi: usize) -> Result<Self, Error> {
        let mut f = self.clone();
        for i in lo..hi {
            for j in i + 1..hi {
                let d = XPoly::var(self.nvars, i).sub(&XPoly::var(self.nvars, j));
                f = f.exact_divide(&d)?;
            }
        }
        Ok(f)
    }

    /// prod_{lo <= i < j < hi} (x_i - x_j).
    pub fn vandermonde(nvars: usize, lo: usize, hi: usize) -> Self {
        let vars: Vec<usize> = (lo..hi).collect();
        XPoly::vandermonde_of(nvars, &vars)
    }

    /// prod over listed variable pairs (earlier - later), the Vandermonde
    /// restricted to an arbitrary subset of variables.
    pub fn vandermonde_of(nvars: usize, vars: &[usize]) -> Self {
        let mut p = XPoly::one(nvars);
        for a in 0..vars.len() {
            for b in a + 1..vars.len() {
                let d = XPoly::var(nvars, vars[a]).sub(&XPoly::var(nvars, vars[b]));
                p = p.mul(&d);
            }
        }
        p
    }

    /// Elementary symmetric polynomial e_r in the listed variables.
    pub fn elem_sym(nvars: usize, vars: &[usize], r: usize) -> Self {
        elem_sym_pow(nvars, vars, r, 1)
    }

    /// e_r in the inverses of the listed variables.
    pub fn elem_sym_inv(nvars: usize, vars: &[usize], r: usize) -> Self {
        elem_sym_pow(nvars, vars, r, -1)
    }

    /// Substitutes a QT value for each variable (full evaluation).
    pub fn eval(&self, vals: &[QT]) -> Result<QT, Error> {
        assert_eq!(vals.len(), self.nvars);
        let mut acc = QT::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..self.nvars {
                if e[i] != 0 {
                    term = term.mul(&vals[i].pow(e[i] as i64)?);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

fn elem_sym_pow(nvars: usize, vars: &[usize], r: usize, p: i32) -> XPoly {
    if r > vars.len() {
        return XPoly::zero(nvars);
    }
    let mut acc = XPoly::zero(nvars);
    for combo in combinations(vars.len(), r) {
        let mut e = vec![0i32; nvars];
        for &k in &combo {
            e[vars[k]] = p;
        }
        acc.add_term(&e, QT::one());
    }
    acc
}

/// Exponent vectors of every monomial in `nvars` variables with total degree
/// at most `max_degree`, in a deterministic order (graded, then recursive).
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    if nvars == 0 {
        out.push(Vec::new());
        return out;
    }
    for d in 0..=max_degree {
        let mut cur = vec![0i32; nvars];
        fill(&mut cur, 0, d as i32, &mut out);
    }
    fn fill(cur: &mut Vec<i32>, pos: usize, left: i32, out: &mut Vec<Vec<i32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for take in (0..=left).rev() {
            cur[pos] = take;
            fill(cur, pos + 1, left - take, out);
        }
        cur[pos] = 0;
    }
    out
}

/// All permutations of {0, ..., n-1} with their signs.
pub fn permutations_signed(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    rec(&mut cur, 0, 1, &mut out);
    fn rec(cur: &mut Vec<usize>, k: usize, sign: i8, out: &mut Vec<(Vec<usize>, i8)>) {
        if k + 1 >= cur.len() {
            out.push((cur.clone(), sign));
            return;
        }
        rec(cur, k + 1, sign, out);
        for i in k + 1..cur.len() {
            cur.swap(k, i);
            rec(cur, k + 1, -sign, out);
            cur.swap(k, i);
        }
    }
    out
}

/// All r-element subsets of {0, ..., n-1} in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - r {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.sorted_terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut vars = String::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !vars.is_empty() {
                    vars.push('*');
                }
                if k == 1 {
                    vars.push_str(&format!("x{}", i + 1));
                } else {
                    vars.push_str(&format!("x{}^{}", i + 1, k));
                }
            }
            if vars.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{vars}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> XPoly {
        XPoly::var(n, i)
    }

    #[test]
    fn ring_operations() {
        let a = x(2, 0).add(&x(2, 1)); // x1 + x2
        let b = x(2, 0).sub(&x(2, 1)); // x1 - x2
        let prod = a.mul(&b);
        let expect = XPoly::var_pow(2, 0, 2).sub(&XPoly::var_pow(2, 1, 2));
        assert_eq!(prod, expect);
        assert_eq!(a.sub(&a), XPoly::zero(2));
    }

    #[test]
    fn exact_division_of_difference_of_squares() {
        let num = XPoly::var_pow(2, 0, 2).sub(&XPoly::var_pow(2, 1, 2));
        let den = x(2, 0).sub(&x(2, 1));
        let q = num.exact_divide(&den).unwrap();
        assert_eq!(q, x(2, 0).add(&x(2, 1)));
    }

    #[test]
    fn exact_division_detects_remainder() {
        let num = XPoly::var_pow(2, 0, 2).add(&XPoly::var_pow(2, 1, 2));
        let den = x(2, 0).sub(&x(2, 1));
        assert!(matches!(num.exact_divide(&den), Err(Error::NotDivisible)));
    }

    #[test]
    fn laurent_division() {
        // (1/x1 - 1/x2) / (x2 - x1) = 1/(x1 x2)
        let num = XPoly::var_pow(2, 0, -1).sub(&XPoly::var_pow(2, 1, -1));
        let den = x(2, 1).sub(&x(2, 0));
        let q = num.exact_divide(&den).unwrap();
        assert_eq!(q, XPoly::monomial(2, &[-1, -1], QT::one()));
    }

    #[test]
    fn vandermonde_division_of_antisymmetric_input() {
        // x1^2 x2 - x1 x2^2 ... antisymmetrized cube over 3 vars is
        // the Vandermonde itself; dividing gives 1.
        let v = XPoly::vandermonde(3, 0, 3);
        assert_eq!(v.vandermonde_divide(0, 3).unwrap(), XPoly::one(3));
        let f = v.mul(&x(3, 0).add(&x(3, 1)).add(&x(3, 2)));
        let q = f.vandermonde_divide(0, 3).unwrap();
        assert_eq!(q, x(3, 0).add(&x(3, 1)).add(&x(3, 2)));
    }

    #[test]
    fn cycle_substitution_convention() {
        // On the full window, w sends f to f(q x_n, x_1, ..., x_{n-1}).
        // So w(x_1) = q x_n and w(x_i) = x_{i-1} for i > 1.
        let n = 3;
        let w_x1 = x(n, 0).cycle_q(0, n);
        assert_eq!(w_x1, XPoly::var(n, n - 1).scale(&QT::q()));
        let w_x2 = x(n, 1).cycle_q(0, n);
        assert_eq!(w_x2, x(n, 0));
        let w_x3 = x(n, 2).cycle_q(0, n);
        assert_eq!(w_x3, x(n, 1));
    }

    #[test]
    fn cycle_inverse_round_trip() {
        let n = 3;
        let f = x(n, 0)
            .mul(&x(n, 1))
            .add(&XPoly::var_pow(n, 2, 2))
            .add(&XPoly::monomial(n, &[1, 0, -1], QT::t()));
        assert_eq!(f.cycle_q(0, n).cycle_q_inv(0, n), f);
        assert_eq!(f.cycle_q_inv(0, n).cycle_q(0, n), f);
        // windowed version leaves outside variables alone
        let g = f.cycle_q(1, 3);
        assert_eq!(g.cycle_q_inv(1, 3), f);
    }

    #[test]
    fn q_shift_and_scaling() {
        let f = XPoly::var_pow(2, 0, 2).add(&x(2, 1));
        let g = f.q_shift_vars(&[0]);
        let expect = XPoly::var_pow(2, 0, 2).scale(&QT::q_pow(2)).add(&x(2, 1));
        assert_eq!(g, expect);
    }

    #[test]
    fn symmetry_detection() {
        let sym = x(3, 0).add(&x(3, 1)).add(&x(3, 2));
        assert!(sym.is_symmetric_in(0, 3));
        let asym = x(3, 1).add(&x(3, 2)).add(&x(3, 1).mul(&x(3, 2)));
        assert!(!asym.is_symmetric_in(0, 3));
        assert!(asym.is_symmetric_in(1, 3));
    }

    #[test]
    fn elementary_symmetric_in_variable_subsets() {
        let e2 = XPoly::elem_sym(3, &[0, 1, 2], 2);
        let expect = x(3, 0)
            .mul(&x(3, 1))
            .add(&x(3, 0).mul(&x(3, 2)))
            .add(&x(3, 1).mul(&x(3, 2)));
        assert_eq!(e2, expect);
        let e1_inv = XPoly::elem_sym_inv(2, &[0, 1], 1);
        let expect_inv = XPoly::var_pow(2, 0, -1).add(&XPoly::var_pow(2, 1, -1));
        assert_eq!(e1_inv, expect_inv);
        assert_eq!(XPoly::elem_sym(3, &[0, 1], 3), XPoly::zero(3));
    }

    #[test]
    fn combination_enumeration() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3), Vec::<Vec<usize>>::new());
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn evaluation_at_points() {
        // e_2(1, t, t^2) = t + t^2 + t^3
        let e2 = XPoly::elem_sym(3, &[0, 1, 2], 2);
        let v = e2
            .eval(&[QT::one(), QT::t(), QT::t_pow(2)])
            .unwrap();
        assert_eq!(v, QT::poly(&[(0, 1, 1), (0, 2, 1), (0, 3, 1)]));
    }
}
