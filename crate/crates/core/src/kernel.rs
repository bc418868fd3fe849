//! Verification of the reproducing-kernel identities at desk scale.
//!
//! The kernel Pi(x,y) = prod_{i,k} (t x_i y_k; q)_inf / (x_i y_k; q)_inf is
//! handled as a power series truncated in total y-degree; the rational
//! identities around it (the index-set basis h^I_K, the cross-ratio sums
//! F(u;x,y), and their expansions) are verified exactly after clearing
//! denominators.  Every h^I_K shares, for fixed K, the x-symmetric
//! denominator prod_{k in K} prod_j (1 - t x_j y_k) times the Vandermonde
//! of the K-variables, so the triangular Hecke action descends to the
//! cleared numerators and all checks become polynomial identities.
//!
//! Variable layout: one polynomial ring in n + m variables, x_j at slot
//! j - 1 and y_k at slot n + k - 1 (indices 1-based in the API).

use crate::hecke::{self, Window};
use crate::macdonald::{self, eigen_p};
use crate::partitions::{partitions_up_to, Partition};
use crate::polyx::{combinations, permutations_signed, XPoly};
use crate::qt::{self, QT};
use crate::report::CheckReport;
use crate::symfunc;
use crate::Error;

/// Rational function as an unreduced fraction of (Laurent) polynomials.
/// Equality is decided by cross-multiplication; no gcd is ever taken.
#[derive(Clone, Debug)]
pub struct RatFn {
    pub num: XPoly,
    pub den: XPoly,
}

impl RatFn {
    pub fn new(num: XPoly, den: XPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn { num, den })
    }

    pub fn from_poly(p: XPoly) -> Self {
        let den = XPoly::one(p.nvars());
        RatFn { num: p, den }
    }

    pub fn eq_ratfn(&self, other: &RatFn) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn { num: self.num.mul(&other.num), den: self.den.mul(&other.den) }
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        RatFn {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn scale(&self, c: &QT) -> RatFn {
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Image under the inversion q -> 1/q, t -> 1/t, and every variable
    /// v -> 1/v, applied to numerator and denominator separately.
    pub fn invert_all(&self) -> Result<RatFn, Error> {
        let w = Window::new(0, self.num.nvars());
        Ok(RatFn { num: hecke::iota(&self.num, w)?, den: hecke::iota(&self.den, w)? })
    }
}

fn x_var(j: usize) -> usize {
    j - 1
}

fn y_var(n: usize, k: usize) -> usize {
    n + k - 1
}

/// 1 - c * V_a * V_b.
fn pair_factor(nvars: usize, c: &QT, a: usize, b: usize) -> XPoly {
    let mut e = vec![0i32; nvars];
    e[a] = 1;
    e[b] = 1;
    let mut f = XPoly::one(nvars);
    f.add_term(&e, c.neg());
    f
}

/// prod_{k in ks} prod_{j=1}^{n} (1 - t x_j y_k), ks 1-based.
fn pole_product(n: usize, m: usize, ks: &[usize]) -> XPoly {
    let nv = n + m;
    let mut p = XPoly::one(nv);
    for &k in ks {
        for j in 1..=n {
            p = p.mul(&pair_factor(nv, &QT::t(), x_var(j), y_var(n, k)));
        }
    }
    p
}

fn vandermonde_y(n: usize, m: usize, ks: &[usize]) -> XPoly {
    let vars: Vec<usize> = ks.iter().map(|&k| y_var(n, k)).collect();
    XPoly::vandermonde_of(n + m, &vars)
}

/// Sign relating the full Vandermonde to the split one:
/// Delta = sign * Delta_S * Delta_{S^c} * prod_{s in S, u not in S}(v_s - v_u),
/// where the count is over pairs with the complement element smaller.
fn split_sign(subset: &[usize]) -> i64 {
    let mut crossings = 0usize;
    for &s in subset {
        for u in 1..s {
            if !subset.contains(&u) {
                crossings += 1;
            }
        }
    }
    if crossings % 2 == 0 {
        1
    } else {
        -1
    }
}

fn monomial_on(nvars: usize, vars: &[usize], power: i32) -> XPoly {
    let mut e = vec![0i32; nvars];
    for &v in vars {
        e[v] = power;
    }
    XPoly::monomial(nvars, &e, QT::one())
}

/// Cleared numerator of h^I_K over the common denominator
/// prod_{k in K} prod_j (1 - t x_j y_k) * Vandermonde_K(y).
fn h_numerator(n: usize, m: usize, iset: &[usize], kset: &[usize]) -> XPoly {
    let nv = n + m;
    let r = iset.len();
    let mut total = XPoly::zero(nv);
    for (sigma, sgn) in permutations_signed(r) {
        let mut term = XPoly::constant(nv, QT::from_int(sgn as i64));
        for (mu, &i_mu) in iset.iter().enumerate() {
            let yv = y_var(n, kset[sigma[mu]]);
            let c = QT::t()
                .sub(&QT::one())
                .mul(&QT::t_pow((n - i_mu) as i64));
            term = term.scale(&c);
            for j in i_mu + 1..=n {
                term = term.mul(&pair_factor(nv, &QT::one(), x_var(j), yv));
            }
            for j in 1..i_mu {
                term = term.mul(&pair_factor(nv, &QT::t(), x_var(j), yv));
            }
        }
        for mu in 0..r {
            for nu in mu + 1..r {
                let a = y_var(n, kset[sigma[mu]]);
                let b = y_var(n, kset[sigma[nu]]);
                let lin = XPoly::var(nv, a).scale(&QT::t()).sub(&XPoly::var(nv, b));
                term = term.mul(&lin);
            }
        }
        total = total.add(&term);
    }
    total
}

fn h_denominator(n: usize, m: usize, kset: &[usize]) -> XPoly {
    pole_product(n, m, kset).mul(&vandermonde_y(n, m, kset))
}

fn validate_subset(set: &[usize], bound: usize, what: &str) -> Result<(), Error> {
    for w in set.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::OutOfRange(format!("{what} indices must be strictly increasing")));
        }
    }
    if set.iter().any(|&v| v < 1 || v > bound) {
        return Err(Error::OutOfRange(format!("{what} indices must lie in 1..={bound}")));
    }
    Ok(())
}

/// The rational function h^I_K(x,y): a signed sum over orderings of K of
/// products of simple-pole cross ratios, symmetric in the K-variables.
/// `iset` and `kset` are strictly increasing 1-based index lists of equal
/// length r <= min(n, m).
pub fn mimachi_h(n: usize, m: usize, iset: &[usize], kset: &[usize]) -> Result<RatFn, Error> {
    if iset.len() != kset.len() {
        return Err(Error::SizeMismatch(format!(
            "index sets of sizes {} and {} must match",
            iset.len(),
            kset.len()
        )));
    }
    validate_subset(iset, n, "x")?;
    validate_subset(kset, m, "y")?;
    RatFn::new(h_numerator(n, m, iset, kset), h_denominator(n, m, kset))
}

fn subsets_1based(n: usize, r: usize) -> Vec<Vec<usize>> {
    combinations(n, r)
        .into_iter()
        .map(|c| c.into_iter().map(|v| v + 1).collect())
        .collect()
}

fn swap_membership(iset: &[usize], i: usize) -> Vec<usize> {
    let mut out: Vec<usize> = iset
        .iter()
        .map(|&v| {
            if v == i {
                i + 1
            } else if v == i + 1 {
                i
            } else {
                v
            }
        })
        .collect();
    out.sort_unstable();
    out
}

/// Index of an increasing subset in the `subsets_1based` listing.
fn subset_index(list: &[Vec<usize>], set: &[usize]) -> usize {
    list.iter().position(|s| s == set).expect("subset in listing")
}

/// Cleared numerator of iota(h^I_K) over the same denominator as h^I_K:
/// iota multiplies the denominator by a monomial and a sign, which is
/// pushed into the numerator here.
fn h_numerator_inverted(n: usize, m: usize, iset: &[usize], kset: &[usize]) -> Result<XPoly, Error> {
    let nv = n + m;
    let r = iset.len();
    let h = h_numerator(n, m, iset, kset);
    let inv = hecke::iota(&h, Window::new(0, nv))?;
    let xs: Vec<usize> = (1..=n).map(x_var).collect();
    let yk: Vec<usize> = kset.iter().map(|&k| y_var(n, k)).collect();
    let mono = monomial_on(nv, &xs, r as i32).mul(&monomial_on(nv, &yk, (n + r) as i32 - 1));
    let sign = if (r * n + r * (r - 1) / 2) % 2 == 0 { 1 } else { -1 };
    Ok(inv
        .mul(&mono)
        .scale(&QT::t_pow((r * n) as i64).mul(&QT::from_int(sign))))
}

fn binom2(r: usize) -> i64 {
    (r * (r.saturating_sub(1)) / 2) as i64
}

/// Length statistic of the minimal coset representative attached to an
/// index set: |I| n - C(|I|,2) - sum(I).
fn coset_length(n: usize, iset: &[usize]) -> i64 {
    let r = iset.len() as i64;
    let s: i64 = iset.iter().map(|&v| v as i64).sum();
    r * n as i64 - binom2(iset.len()) - s
}

/// Triangular-action suite for the index-set basis: the three cases of the
/// Hecke action on h^I_K, the closed form of the inversion image, the
/// mirrored action on the inverted family, the symmetry in the marked
/// y-variables, and the generation of the whole family from the base index
/// set by a reduced word.
pub fn verify_mimachi_t_action(n: usize, m: usize, r: usize) -> Result<CheckReport, Error> {
    if r > n.min(m) {
        return Err(Error::OutOfRange(format!("subset size {r} exceeds min({n}, {m})")));
    }
    let nv = n + m;
    let xw = Window::new(0, n);
    let mut rep = CheckReport::new(&format!("index-set basis action n={n} m={m} r={r}"));
    let isets = subsets_1based(n, r);
    let ksets = subsets_1based(m, r);

    let mut case_same = None;
    let mut case_up = None;
    let mut case_down = None;
    let mut dual_same = None;
    let mut dual_up = None;
    let mut dual_down = None;
    let mut bad_closed = None;
    let mut bad_sym = None;
    let mut bad_word = None;

    for kset in &ksets {
        let hs: Vec<XPoly> = isets.iter().map(|i| h_numerator(n, m, i, kset)).collect();
        let hinvs: Vec<XPoly> = isets
            .iter()
            .map(|i| h_numerator_inverted(n, m, i, kset))
            .collect::<Result<_, _>>()?;

        for (idx, iset) in isets.iter().enumerate() {
            for i in 1..n {
                let th = hecke::t_op(&hs[idx], xw, i)?;
                let tinv = hecke::t_op(&hinvs[idx], xw, i)?;
                let in_i = iset.contains(&i);
                let in_next = iset.contains(&(i + 1));
                let ctx = || format!("I={iset:?} K={kset:?} i={i}");
                if in_i == in_next {
                    if th != hs[idx].scale(&QT::t()) {
                        case_same.get_or_insert_with(ctx);
                    }
                    if tinv != hinvs[idx].scale(&QT::t()) {
                        dual_same.get_or_insert_with(ctx);
                    }
                } else {
                    let other = subset_index(&isets, &swap_membership(iset, i));
                    if !in_i {
                        // i absent, i+1 present: plain exchange
                        if th != hs[other] {
                            case_up.get_or_insert_with(ctx);
                        }
                        let mix = hinvs[other]
                            .scale(&QT::t())
                            .add(&hinvs[idx].scale(&QT::t().sub(&QT::one())));
                        if tinv != mix {
                            dual_up.get_or_insert_with(ctx);
                        }
                    } else {
                        // i present, i+1 absent: mixing with weight t - 1
                        let mix = hs[other]
                            .scale(&QT::t())
                            .add(&hs[idx].scale(&QT::t().sub(&QT::one())));
                        if th != mix {
                            case_down.get_or_insert_with(ctx);
                        }
                        if tinv != hinvs[other] {
                            dual_down.get_or_insert_with(ctx);
                        }
                    }
                }
            }
        }

        // closed form of the inversion image
        for (idx, iset) in isets.iter().enumerate() {
            let isum: i64 = iset.iter().map(|&v| v as i64).sum();
            let tpow = QT::t_pow(-((r * n) as i64) - binom2(r) + isum);
            let xi: Vec<usize> = iset.iter().map(|&i| x_var(i)).collect();
            let yk: Vec<usize> = kset.iter().map(|&k| y_var(n, k)).collect();
            let mono = monomial_on(nv, &xi, 1).mul(&monomial_on(nv, &yk, 1));
            if hinvs[idx] != hs[idx].mul(&mono).scale(&tpow) {
                bad_closed.get_or_insert_with(|| format!("I={iset:?} K={kset:?}"));
            }
        }

        // symmetry in the marked y-variables: the numerator alternates
        // against the K-Vandermonde
        for (idx, iset) in isets.iter().enumerate() {
            for pair in kset.windows(2) {
                let swapped = hs[idx].swap_vars(y_var(n, pair[0]), y_var(n, pair[1]));
                if swapped != hs[idx].neg() {
                    bad_sym.get_or_insert_with(|| format!("I={iset:?} K={kset:?} swap {pair:?}"));
                }
            }
        }

        // the base index set generates the family under reduced words
        let base: Vec<usize> = (n - r + 1..=n).collect();
        let base_h = &hs[subset_index(&isets, &base)];
        for (idx, iset) in isets.iter().enumerate() {
            let mut word = Vec::new();
            for nu in (1..=r).rev() {
                for s in iset[nu - 1]..n - r + nu {
                    word.push(s);
                }
            }
            let reached = hecke::t_word(base_h, xw, &word)?;
            if reached != hs[idx] {
                bad_word.get_or_insert_with(|| format!("I={iset:?} K={kset:?}"));
            }
        }
    }

    rep.record("inert pairs scale by t", case_same.is_none(), case_same.clone());
    rep.record("exchange pairs move the index set", case_up.is_none(), case_up.clone());
    rep.record(
        "crossing pairs mix with weight t - 1",
        case_down.is_none(),
        case_down.clone(),
    );
    rep.record(
        "inverted family: inert pairs scale by t",
        dual_same.is_none(),
        dual_same.clone(),
    );
    rep.record(
        "inverted family: exchange pairs mix with weight t - 1",
        dual_up.is_none(),
        dual_up.clone(),
    );
    rep.record(
        "inverted family: crossing pairs move the index set",
        dual_down.is_none(),
        dual_down.clone(),
    );
    rep.record(
        "inversion image is a monomial multiple",
        bad_closed.is_none(),
        bad_closed.clone(),
    );
    if r >= 2 {
        rep.record(
            "symmetry in the marked y variables",
            bad_sym.is_none(),
            bad_sym.clone(),
        );
    }
    rep.record(
        "reduced words reach every index set from the base",
        bad_word.is_none(),
        bad_word.clone(),
    );
    Ok(rep)
}

/// Truncated kernel series: all terms of total y-degree at most `max_ydeg`,
/// with exact coefficients from the q-binomial expansion of each factor.
#[derive(Clone, Debug)]
pub struct XYSeries {
    pub n: usize,
    pub m: usize,
    pub max_ydeg: u32,
    pub poly: XPoly,
}

fn truncate_ydeg(f: &XPoly, n: usize, d: u32) -> XPoly {
    let mut out = XPoly::zero(f.nvars());
    for (e, c) in f.terms() {
        let ydeg: i32 = e[n..].iter().sum();
        if ydeg <= d as i32 {
            out.add_term(e, c.clone());
        }
    }
    out
}

pub fn pi_series(n: usize, m: usize, max_ydeg: u32) -> XYSeries {
    let nv = n + m;
    let mut coeffs = vec![QT::one()];
    for d in 1..=max_ydeg {
        let num = qt::pochhammer(&QT::t(), &QT::q(), d);
        let den = qt::pochhammer(&QT::q(), &QT::q(), d);
        coeffs.push(num.div(&den).expect("nonzero Pochhammer"));
    }
    let mut pi = XPoly::one(nv);
    for j in 1..=n {
        for k in 1..=m {
            let mut factor = XPoly::zero(nv);
            for (d, c) in coeffs.iter().enumerate() {
                let mut e = vec![0i32; nv];
                e[x_var(j)] = d as i32;
                e[y_var(n, k)] = d as i32;
                factor.add_term(&e, c.clone());
            }
            pi = truncate_ydeg(&pi.mul(&factor), n, max_ydeg);
        }
    }
    XYSeries { n, m, max_ydeg, poly: pi }
}

/// Norm constant attached to a partition in the kernel expansion:
/// prod over cells of (1 - t^{leg+1} q^{arm}) / (1 - t^{leg} q^{arm+1}).
pub fn kernel_norm(lam: &Partition) -> Result<QT, Error> {
    let mut b = QT::one();
    for (i, j) in lam.cells() {
        let a = lam.arm(i, j);
        let l = lam.leg(i, j);
        let num = QT::one().sub(&QT::q_pow(a as i64).mul(&QT::t_pow(l as i64 + 1)));
        let den = QT::one().sub(&QT::q_pow(a as i64 + 1).mul(&QT::t_pow(l as i64)));
        b = b.mul(&num.div(&den)?);
    }
    Ok(b)
}

fn embed(f: &XPoly, total: usize, offset: usize) -> XPoly {
    let mut out = XPoly::zero(total);
    for (e, c) in f.terms() {
        let mut ee = vec![0i32; total];
        ee[offset..offset + e.len()].copy_from_slice(e);
        out.add_term(&ee, c.clone());
    }
    out
}

/// Cleared numerator of the cross-ratio sum
/// F(u) = sum_{S subset avars} (-u)^{|S|} t^{C(|S|,2)}
///        prod_{s in S, s' not in S} (t a_s - a_{s'})/(a_s - a_{s'})
///        prod_{s in S, b in bvars} (1 - a_s b)/(1 - t a_s b)
/// over the master denominator
/// prod_{a in avars, b in bvars}(1 - t a b) * Vandermonde(avars).
fn f_numerator(nv: usize, avars: &[usize], bvars: &[usize], u: &QT) -> XPoly {
    let na = avars.len();
    let mut total = XPoly::zero(nv);
    for r in 0..=na {
        for s_rel in combinations(na, r) {
            let s_abs: Vec<usize> = s_rel.iter().map(|&p| avars[p]).collect();
            let comp_abs: Vec<usize> = (0..na)
                .filter(|p| !s_rel.contains(p))
                .map(|p| avars[p])
                .collect();
            // sign from splitting the Vandermonde along positions in avars
            let mut crossings = 0usize;
            for &p in &s_rel {
                crossings += (0..p).filter(|q| !s_rel.contains(q)).count();
            }
            let sign = if crossings % 2 == 0 { 1 } else { -1 };
            let u_pow = match u.pow(r as i64) {
                Ok(p) => p,
                Err(_) => {
                    if r == 0 {
                        QT::one()
                    } else {
                        QT::zero()
                    }
                }
            };
            let scalar = u_pow
                .mul(&QT::from_int(if r % 2 == 0 { 1 } else { -1 }))
                .mul(&QT::t_pow(binom2(r)))
                .mul(&QT::from_int(sign));
            if scalar.is_zero() {
                continue;
            }
            let mut term = XPoly::constant(nv, scalar);
            term = term.mul(&XPoly::vandermonde_of(nv, &s_abs));
            term = term.mul(&XPoly::vandermonde_of(nv, &comp_abs));
            for &s in &s_abs {
                for &c in &comp_abs {
                    let lin = XPoly::var(nv, s).scale(&QT::t()).sub(&XPoly::var(nv, c));
                    term = term.mul(&lin);
                }
            }
            for &s in &s_abs {
                for &b in bvars {
                    term = term.mul(&pair_factor(nv, &QT::one(), s, b));
                }
            }
            for &c in &comp_abs {
                for &b in bvars {
                    term = term.mul(&pair_factor(nv, &QT::t(), c, b));
                }
            }
            total = total.add(&term);
        }
    }
    total
}

fn xvars(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn yvars(n: usize, m: usize) -> Vec<usize> {
    (n..n + m).collect()
}

/// Expansion of the truncated kernel over eigenfunction pairs, and the
/// factorization of the generating operator through the cross-ratio sum.
pub fn verify_kernel_expansion(n: usize, m: usize, max_ydeg: u32) -> Result<CheckReport, Error> {
    if m > n {
        return Err(Error::OutOfRange(format!("y-alphabet size {m} exceeds x-alphabet size {n}")));
    }
    let nv = n + m;
    let mut rep =
        CheckReport::new(&format!("kernel expansion n={n} m={m} y-degree <= {max_ydeg}"));
    let pi = pi_series(n, m, max_ydeg);

    let mut sum = XPoly::zero(nv);
    for (_, lams) in partitions_up_to(max_ydeg) {
        for lam in lams {
            if lam.len() > m {
                continue;
            }
            let px = symfunc::m_expansion_to_xpoly(&eigen_p(&lam, n)?.p, n);
            let py = symfunc::m_expansion_to_xpoly(&eigen_p(&lam, m)?.p, m);
            let term = embed(&px, nv, 0).mul(&embed(&py, nv, n));
            sum = sum.add(&term.scale(&kernel_norm(&lam)?));
        }
    }
    let ok = sum == pi.poly;
    rep.record(
        "eigenfunction pair expansion reproduces the kernel",
        ok,
        (!ok).then(|| format!("n={n} m={m} degree {max_ydeg}")),
    );

    // generating operator factors through the cross-ratio multiplier
    let master = pole_product(n, m, &(1..=m).collect::<Vec<_>>())
        .mul(&XPoly::vandermonde(nv, 0, n));
    let xw = Window::new(0, n);
    let mut bad = None;
    for u in [QT::one(), QT::q()] {
        let lhs = macdonald::macdonald_d_at(&pi.poly, xw, &u)?.mul(&master);
        let rhs = pi.poly.mul(&f_numerator(nv, &xvars(n), &yvars(n, m), &u));
        if truncate_ydeg(&lhs, n, max_ydeg) != truncate_ydeg(&rhs, n, max_ydeg) {
            bad = Some(format!("u = {u}"));
            break;
        }
    }
    rep.record(
        "generating operator factors through the cross-ratio sum",
        bad.is_none(),
        bad.clone(),
    );
    Ok(rep)
}

/// The expansion identities for the cross-ratio sums over the index-set
/// basis, their u-specializations, the single-variable classical versions,
/// the inversion rescalings, and the duality exchanging the two alphabets.
pub fn verify_expansion_identities(n: usize, m: usize) -> Result<CheckReport, Error> {
    let nv = n + m;
    let mut rep = CheckReport::new(&format!("cross-ratio expansions n={n} m={m}"));
    let all_k: Vec<usize> = (1..=m).collect();
    let delta_full = vandermonde_y(n, m, &all_k);

    // partial fraction expansion of the t-shifted product, one x variable
    {
        let x = x_var(1);
        let mut lhs = XPoly::constant(nv, QT::t_pow(m as i64));
        for k in 1..=m {
            lhs = lhs.mul(&pair_factor(nv, &QT::one(), x, y_var(n, k)));
        }
        lhs = lhs.mul(&delta_full);
        let mut pole_x = XPoly::one(nv);
        for k in 1..=m {
            pole_x = pole_x.mul(&pair_factor(nv, &QT::t(), x, y_var(n, k)));
        }
        let mut rhs = pole_x.mul(&delta_full);
        for k in 1..=m {
            let rest: Vec<usize> = (1..=m).filter(|&l| l != k).collect();
            let sign = if (k - 1) % 2 == 0 { 1 } else { -1 };
            let mut term = XPoly::constant(
                nv,
                QT::t().sub(&QT::one()).mul(&QT::from_int(sign)),
            );
            for &l in &rest {
                term = term.mul(&pair_factor(nv, &QT::t(), x, y_var(n, l)));
                let lin = XPoly::var(nv, y_var(n, k))
                    .scale(&QT::t())
                    .sub(&XPoly::var(nv, y_var(n, l)));
                term = term.mul(&lin);
            }
            term = term.mul(&vandermonde_y(n, m, &rest));
            rhs = rhs.add(&term);
        }
        let ok = lhs == rhs;
        rep.record(
            "partial fraction expansion of the t-shifted product",
            ok,
            (!ok).then(|| format!("m = {m}")),
        );
    }

    // shared bracket: a_K(y) h^I_K cleared over pole_full * delta_full
    let bracket = |iset: &[usize], kset: &[usize]| -> XPoly {
        let comp: Vec<usize> = (1..=m).filter(|k| !kset.contains(k)).collect();
        let mut term = h_numerator(n, m, iset, kset)
            .mul(&pole_product(n, m, &comp))
            .mul(&vandermonde_y(n, m, &comp))
            .scale(&QT::from_int(split_sign(kset)));
        for &k in kset {
            for &l in &comp {
                let lin = XPoly::var(nv, y_var(n, k))
                    .scale(&QT::t())
                    .sub(&XPoly::var(nv, y_var(n, l)));
                term = term.mul(&lin);
            }
        }
        term
    };

    // the full cross-ratio product expands over the index-set basis
    {
        let mut lhs = XPoly::constant(nv, QT::t_pow((m * n) as i64));
        for j in 1..=n {
            for k in 1..=m {
                lhs = lhs.mul(&pair_factor(nv, &QT::one(), x_var(j), y_var(n, k)));
            }
        }
        lhs = lhs.mul(&delta_full);
        let mut rhs = XPoly::zero(nv);
        for r in 0..=n.min(m) {
            for iset in subsets_1based(n, r) {
                for kset in subsets_1based(m, r) {
                    rhs = rhs.add(&bracket(&iset, &kset));
                }
            }
        }
        let ok = lhs == rhs;
        rep.record(
            "cross-ratio product expands over the index-set basis",
            ok,
            (!ok).then(|| format!("n={n} m={m}")),
        );
    }

    let sample_points = [
        QT::one(),
        QT::q(),
        QT::t(),
        QT::q().mul(&QT::t()),
    ];

    // parameterized expansion at sample points
    {
        let mut bad = None;
        for u in &sample_points {
            let lhs = f_numerator(nv, &yvars(n, m), &xvars(n), u);
            let mut rhs = XPoly::zero(nv);
            for r in 0..=n.min(m) {
                let shifted = u.mul(&QT::t_pow(r as i64 - n as i64));
                let scalar = u
                    .pow(r as i64)
                    .expect("sample point invertible")
                    .mul(&QT::from_int(if r % 2 == 0 { 1 } else { -1 }))
                    .mul(&qt::pochhammer(&shifted, &QT::t(), (m - r) as u32))
                    .mul(&QT::t_pow(binom2(r) - (r * n) as i64));
                for iset in subsets_1based(n, r) {
                    for kset in subsets_1based(m, r) {
                        rhs = rhs.add(&bracket(&iset, &kset).scale(&scalar));
                    }
                }
            }
            if lhs != rhs {
                bad = Some(format!("u = {u}"));
                break;
            }
        }
        rep.record(
            "index-set expansion of the cross-ratio sum at sample points",
            bad.is_none(),
            bad.clone(),
        );
    }

    // specialization collapsing to the top stratum
    {
        let special = QT::t_pow(n as i64 - m as i64 + 1);
        let lhs = f_numerator(nv, &yvars(n, m), &xvars(n), &special);
        if m <= n {
            let mut rhs = XPoly::zero(nv);
            for iset in subsets_1based(n, m) {
                rhs = rhs.add(&h_numerator(n, m, &iset, &all_k));
            }
            let scalar = QT::from_int(if m % 2 == 0 { 1 } else { -1 })
                .mul(&QT::t_pow(-binom2(m)));
            let ok = lhs == rhs.scale(&scalar);
            rep.record(
                "specialized sum collapses to the top index stratum",
                ok,
                (!ok).then(|| format!("n={n} m={m}")),
            );
        } else {
            let ok = lhs.is_zero();
            rep.record(
                "specialized sum vanishes beyond the variable count",
                ok,
                (!ok).then(|| format!("n={n} m={m}")),
            );
        }
    }

    // single-variable top-stratum identity
    if m == 1 {
        let y = y_var(n, 1);
        let mut all_t = XPoly::one(nv);
        let mut all_plain = XPoly::one(nv);
        for j in 1..=n {
            all_t = all_t.mul(&pair_factor(nv, &QT::t(), x_var(j), y));
            all_plain = all_plain.mul(&pair_factor(nv, &QT::one(), x_var(j), y));
        }
        let lhs = all_t.sub(&all_plain.scale(&QT::t_pow(n as i64)));
        let mut rhs = XPoly::zero(nv);
        for i in 1..=n {
            let mut term = XPoly::constant(
                nv,
                QT::t_pow((n - i) as i64).mul(&QT::one().sub(&QT::t())),
            );
            for j in 1..i {
                term = term.mul(&pair_factor(nv, &QT::t(), x_var(j), y));
            }
            for j in i + 1..=n {
                term = term.mul(&pair_factor(nv, &QT::one(), x_var(j), y));
            }
            rhs = rhs.add(&term);
        }
        let ok = lhs == rhs;
        rep.record(
            "single-variable expansion of the top stratum",
            ok,
            (!ok).then(|| format!("n={n}")),
        );
    }

    // inversion rescalings of the building blocks
    {
        let mut bad_a = None;
        for ll in 1..=m {
            for lset in subsets_1based(m, ll) {
                for r in 0..=ll {
                    for kpos in combinations(ll, r) {
                        let kset: Vec<usize> = kpos.iter().map(|&p| lset[p]).collect();
                        let mut num = XPoly::one(nv);
                        let mut den = XPoly::one(nv);
                        for &k in &kset {
                            for &l in &lset {
                                if kset.contains(&l) {
                                    continue;
                                }
                                num = num.mul(
                                    &XPoly::var(nv, y_var(n, k))
                                        .scale(&QT::t())
                                        .sub(&XPoly::var(nv, y_var(n, l))),
                                );
                                den = den.mul(
                                    &XPoly::var(nv, y_var(n, k))
                                        .sub(&XPoly::var(nv, y_var(n, l))),
                                );
                            }
                        }
                        let a = RatFn::new(num, den)?;
                        let scaled =
                            a.scale(&QT::t_pow(-((r * (ll - r)) as i64)));
                        if !a.invert_all()?.eq_ratfn(&scaled) {
                            bad_a = Some(format!("K={kset:?} L={lset:?}"));
                        }
                    }
                }
            }
        }
        rep.record(
            "inversion rescales the y cross ratios",
            bad_a.is_none(),
            bad_a.clone(),
        );

        let mut bad_b = None;
        for ri in 1..=n {
            for rk in 1..=m {
                for iset in subsets_1based(n, ri) {
                    for kset in subsets_1based(m, rk) {
                        let mut num = XPoly::constant(nv, QT::t_pow((ri * rk) as i64));
                        let mut den = XPoly::one(nv);
                        for &i in &iset {
                            for &k in &kset {
                                num = num.mul(&pair_factor(nv, &QT::one(), x_var(i), y_var(n, k)));
                                den = den.mul(&pair_factor(nv, &QT::t(), x_var(i), y_var(n, k)));
                            }
                        }
                        let b = RatFn::new(num, den)?;
                        let scaled = b.scale(&QT::t_pow(-((ri * rk) as i64)));
                        if !b.invert_all()?.eq_ratfn(&scaled) {
                            bad_b = Some(format!("I={iset:?} K={kset:?}"));
                        }
                    }
                }
            }
        }
        rep.record(
            "inversion rescales the pole products",
            bad_b.is_none(),
            bad_b.clone(),
        );
    }

    // dual parameterized expansion at sample points
    {
        let mut bad = None;
        for u in &sample_points {
            let lhs = f_numerator(nv, &yvars(n, m), &xvars(n), u);
            let mut rhs = XPoly::zero(nv);
            for r in 0..=n.min(m) {
                let scalar = u
                    .pow(r as i64)
                    .expect("sample point invertible")
                    .mul(&QT::from_int(if r % 2 == 0 { 1 } else { -1 }))
                    .mul(&qt::pochhammer(u, &QT::t(), (m - r) as u32));
                for iset in subsets_1based(n, r) {
                    for kset in subsets_1based(m, r) {
                        let weight = QT::t_pow(-coset_length(n, &iset) - binom2(r));
                        let xi: Vec<usize> = iset.iter().map(|&i| x_var(i)).collect();
                        let yk: Vec<usize> = kset.iter().map(|&k| y_var(n, k)).collect();
                        let mono = monomial_on(nv, &xi, 1).mul(&monomial_on(nv, &yk, 1));
                        rhs = rhs.add(
                            &bracket(&iset, &kset)
                                .mul(&mono)
                                .scale(&scalar.mul(&weight)),
                        );
                    }
                }
            }
            if lhs != rhs {
                bad = Some(format!("u = {u}"));
                break;
            }
        }
        rep.record(
            "dual index-set expansion at sample points",
            bad.is_none(),
            bad.clone(),
        );
    }

    // dual specialization at u = 1
    {
        let lhs = f_numerator(nv, &yvars(n, m), &xvars(n), &QT::one());
        if m <= n {
            let mut rhs = XPoly::zero(nv);
            for iset in subsets_1based(n, m) {
                let xi: Vec<usize> = iset.iter().map(|&i| x_var(i)).collect();
                let mono = monomial_on(nv, &xi, 1);
                rhs = rhs.add(
                    &h_numerator(n, m, &iset, &all_k)
                        .mul(&mono)
                        .scale(&QT::t_pow(-coset_length(n, &iset))),
                );
            }
            let yall: Vec<usize> = (1..=m).map(|k| y_var(n, k)).collect();
            let scalar = QT::from_int(if m % 2 == 0 { 1 } else { -1 })
                .mul(&QT::t_pow(-binom2(m)));
            let rhs = rhs.mul(&monomial_on(nv, &yall, 1)).scale(&scalar);
            let ok = lhs == rhs;
            rep.record(
                "dual specialization collapses with monomial weights",
                ok,
                (!ok).then(|| format!("n={n} m={m}")),
            );
        } else {
            let ok = lhs.is_zero();
            rep.record(
                "dual specialization vanishes beyond the variable count",
                ok,
                (!ok).then(|| format!("n={n} m={m}")),
            );
        }
    }

    // single-variable dual identity
    if m == 1 {
        let y = y_var(n, 1);
        let mut all_t = XPoly::one(nv);
        let mut all_plain = XPoly::one(nv);
        for j in 1..=n {
            all_t = all_t.mul(&pair_factor(nv, &QT::t(), x_var(j), y));
            all_plain = all_plain.mul(&pair_factor(nv, &QT::one(), x_var(j), y));
        }
        let lhs = all_t.sub(&all_plain);
        let mut rhs = XPoly::zero(nv);
        for i in 1..=n {
            let mut e = vec![0i32; nv];
            e[x_var(i)] = 1;
            e[y] = 1;
            let mut term =
                XPoly::monomial(nv, &e, QT::one().sub(&QT::t()));
            for j in 1..i {
                term = term.mul(&pair_factor(nv, &QT::t(), x_var(j), y));
            }
            for j in i + 1..=n {
                term = term.mul(&pair_factor(nv, &QT::one(), x_var(j), y));
            }
            rhs = rhs.add(&term);
        }
        let ok = lhs == rhs;
        rep.record(
            "single-variable dual expansion",
            ok,
            (!ok).then(|| format!("n={n}")),
        );
    }

    // duality exchanging the two alphabets
    if m <= n {
        let delta_x = XPoly::vandermonde(nv, 0, n);
        let mut bad = None;
        for u in &sample_points {
            let lhs = f_numerator(nv, &xvars(n), &yvars(n, m), u).mul(&delta_full);
            let shifted = u.mul(&QT::t_pow(n as i64 - m as i64));
            let rhs = f_numerator(nv, &yvars(n, m), &xvars(n), &shifted)
                .mul(&delta_x)
                .scale(&qt::pochhammer(u, &QT::t(), (n - m) as u32));
            if lhs != rhs {
                bad = Some(format!("u = {u}"));
                break;
            }
        }
        rep.record(
            "duality exchanging the two alphabets",
            bad.is_none(),
            bad.clone(),
        );
    }

    Ok(rep)
}

/// Raising and lowering operators in x act on the truncated kernel as the
/// q-difference generating operator in y at arguments 1 and t^{n-m+1},
/// up to the monomial shift by y_1 ... y_m.
pub fn verify_kernel_raising(n: usize, m: usize, max_ydeg: u32) -> Result<CheckReport, Error> {
    if m > n {
        return Err(Error::OutOfRange(format!("y-alphabet size {m} exceeds x-alphabet size {n}")));
    }
    let nv = n + m;
    let mut rep = CheckReport::new(&format!(
        "kernel raising/lowering n={n} m={m} y-degree <= {max_ydeg}"
    ));
    let pi = pi_series(n, m, max_ydeg).poly;
    let xw = Window::new(0, n);
    let yw = Window::new(n, nv);
    let yall: Vec<usize> = (1..=m).map(|k| y_var(n, k)).collect();
    let y_mono = monomial_on(nv, &yall, 1);

    let lhs = truncate_ydeg(
        &macdonald::raising_b(&pi, xw, m)?.mul(&y_mono),
        n,
        max_ydeg,
    );
    let rhs = macdonald::macdonald_d_at(&pi, yw, &QT::one())?;
    let ok = lhs == rhs;
    rep.record(
        "raising in x matches the y-side operator at argument 1",
        ok,
        (!ok).then(|| format!("n={n} m={m} degree {max_ydeg}")),
    );

    let lhs = macdonald::lowering_a(&pi, xw, m)?;
    let special = QT::t_pow(n as i64 - m as i64 + 1);
    let rhs = truncate_ydeg(
        &macdonald::macdonald_d_at(&pi, yw, &special)?.mul(&y_mono),
        n,
        max_ydeg,
    );
    let ok = truncate_ydeg(&lhs, n, max_ydeg) == rhs;
    rep.record(
        "lowering in x matches the y-side operator at the shifted argument",
        ok,
        (!ok).then(|| format!("n={n} m={m} degree {max_ydeg}")),
    );
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_basics() {
        let pi = pi_series(2, 1, 0);
        assert_eq!(pi.poly, XPoly::one(3));

        // first layer of the one-variable kernel
        let pi = pi_series(1, 1, 3);
        let c = pi.poly.coeff(&[1, 1]);
        let expect = QT::one()
            .sub(&QT::t())
            .div(&QT::one().sub(&QT::q()))
            .unwrap();
        assert_eq!(c, expect);

        // truncation coherence
        let big = pi_series(2, 2, 3);
        let small = pi_series(2, 2, 2);
        assert_eq!(truncate_ydeg(&big.poly, 2, 2), small.poly);
    }

    #[test]
    fn first_layer_is_the_degree_one_eigenfunction_pair() {
        let pi = pi_series(2, 1, 1).poly;
        let b = kernel_norm(&Partition::new(&[1])).unwrap();
        let mut layer = XPoly::zero(3);
        layer.add_term(&[1, 0, 1], b.clone());
        layer.add_term(&[0, 1, 1], b);
        assert_eq!(truncate_ydeg(&pi, 2, 1).sub(&truncate_ydeg(&pi, 2, 0)), layer);
    }

    #[test]
    fn basis_function_base_cases() {
        // empty index sets give the constant 1
        let h = mimachi_h(2, 2, &[], &[]).unwrap();
        assert!(h.eq_ratfn(&RatFn::from_poly(XPoly::one(4))));

        // single pair: (t - 1) / (1 - t x y)
        let h = mimachi_h(1, 1, &[1], &[1]).unwrap();
        let num = XPoly::constant(2, QT::t().sub(&QT::one()));
        let den = pair_factor(2, &QT::t(), 0, 1);
        assert!(h.eq_ratfn(&RatFn { num, den }));

        let err = mimachi_h(2, 2, &[1], &[1, 2]);
        assert!(matches!(err, Err(Error::SizeMismatch(_))));
    }

    /// Assemble the basis function directly from its defining sum of
    /// cross-ratio products, with no denominator clearing.
    fn direct_h(n: usize, m: usize, iset: &[usize], kset: &[usize]) -> RatFn {
        let nv = n + m;
        let r = iset.len();
        let mut total = RatFn::from_poly(XPoly::zero(nv));
        for (sigma, _) in permutations_signed(r) {
            let mut term = RatFn::from_poly(XPoly::one(nv));
            for (mu, &i_mu) in iset.iter().enumerate() {
                let yv = y_var(n, kset[sigma[mu]]);
                let num = XPoly::constant(nv, QT::t().sub(&QT::one()));
                let den = pair_factor(nv, &QT::t(), x_var(i_mu), yv);
                term = term.mul(&RatFn { num, den });
                for j in i_mu + 1..=n {
                    let num = pair_factor(nv, &QT::one(), x_var(j), yv).scale(&QT::t());
                    let den = pair_factor(nv, &QT::t(), x_var(j), yv);
                    term = term.mul(&RatFn { num, den });
                }
            }
            for mu in 0..r {
                for nu in mu + 1..r {
                    let a = y_var(n, kset[sigma[mu]]);
                    let b = y_var(n, kset[sigma[nu]]);
                    let num = XPoly::var(nv, a).scale(&QT::t()).sub(&XPoly::var(nv, b));
                    let den = XPoly::var(nv, a).sub(&XPoly::var(nv, b));
                    term = term.mul(&RatFn { num, den });
                }
            }
            total = total.add(&term);
        }
        total
    }

    #[test]
    fn cleared_numerators_match_the_defining_sum() {
        let cases: [(usize, usize, Vec<usize>, Vec<usize>); 4] = [
            (2, 1, vec![1], vec![1]),
            (2, 1, vec![2], vec![1]),
            (2, 2, vec![1, 2], vec![1, 2]),
            (3, 2, vec![1, 3], vec![1, 2]),
        ];
        for (n, m, iset, kset) in cases {
            let cleared = mimachi_h(n, m, &iset, &kset).unwrap();
            let direct = direct_h(n, m, &iset, &kset);
            assert!(
                cleared.eq_ratfn(&direct),
                "mismatch at n={n} m={m} I={iset:?} K={kset:?}"
            );
        }
    }

    #[test]
    fn action_suites_pass() {
        for (n, m, r) in [(2, 1, 1), (2, 2, 1), (2, 2, 2), (3, 1, 1)] {
            let rep = verify_mimachi_t_action(n, m, r).unwrap();
            assert!(rep.passed(), "{}", rep.to_json());
        }
        assert!(verify_mimachi_t_action(1, 1, 2).is_err());
    }

    #[test]
    fn expansion_suites_pass() {
        for (n, m) in [(1, 1), (2, 1), (2, 2), (1, 2)] {
            let rep = verify_expansion_identities(n, m).unwrap();
            assert!(rep.passed(), "n={n} m={m}: {}", rep.to_json());
        }
    }

    #[test]
    fn kernel_expansion_small() {
        for (n, m, d) in [(1, 1, 3), (2, 2, 2)] {
            let rep = verify_kernel_expansion(n, m, d).unwrap();
            assert!(rep.passed(), "{}", rep.to_json());
        }
        assert!(verify_kernel_expansion(1, 2, 1).is_err());
    }

    #[test]
    fn kernel_raising_small() {
        let rep = verify_kernel_raising(2, 1, 2).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
    }
}
