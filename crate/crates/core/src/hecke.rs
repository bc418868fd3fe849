//! Affine Hecke algebra action on Laurent polynomials: the Demazure-Lusztig
//! operators T_i, the affine rotation, and the commuting Cherednik family
//! Y_i / Y*_i generated by them.
//!
//! Every operator takes a `Window` so the same action can be applied to a
//! designated block of variables (needed when two alphabets share one
//! polynomial ring). Indices inside a window are 1-based and relative.

use crate::polyx::XPoly;
use crate::qt::QT;
use crate::Error;

/// Half-open variable range [lo, hi) an operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: usize,
    pub hi: usize,
}

impl Window {
    pub fn full(n: usize) -> Self {
        Window { lo: 0, hi: n }
    }

    pub fn new(lo: usize, hi: usize) -> Self {
        assert!(lo <= hi);
        Window { lo, hi }
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    /// Absolute variable index for 1-based relative position.
    pub fn abs(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.len());
        self.lo + i - 1
    }

    /// All absolute indices in the window.
    pub fn vars(&self) -> Vec<usize> {
        (self.lo..self.hi).collect()
    }
}

fn check_pair(f: &XPoly, w: Window, i: usize) -> Result<(), Error> {
    if i < 1 || i + 1 > w.len() {
        return Err(Error::OutOfRange(format!(
            "adjacent pair index {i} in window of length {}",
            w.len()
        )));
    }
    if w.hi > f.nvars() {
        return Err(Error::TooFewVariables { needed: w.hi, got: f.nvars() });
    }
    Ok(())
}

/// Demazure-Lusztig operator on the pair (i, i+1) of the window:
/// T_i f = t f + (x_{i+1} - t x_i) (s_i f - f) / (x_{i+1} - x_i).
/// Polynomials go to polynomials because s_i f - f is divisible exactly.
pub fn t_op(f: &XPoly, w: Window, i: usize) -> Result<XPoly, Error> {
    check_pair(f, w, i)?;
    let a = w.abs(i);
    let b = a + 1;
    let swapped = f.swap_vars(a, b);
    let diff = swapped.sub(f);
    let denom = XPoly::var(f.nvars(), b).sub(&XPoly::var(f.nvars(), a));
    let quot = diff.exact_divide(&denom)?;
    let weight = XPoly::var(f.nvars(), b).sub(&XPoly::var(f.nvars(), a).scale(&QT::t()));
    Ok(f.scale(&QT::t()).add(&weight.mul(&quot)))
}

/// T_i^{-1} f = t^{-1} T_i f + (t^{-1} - 1) f, from the quadratic relation
/// (T_i - t)(T_i + 1) = 0.
pub fn t_inv_op(f: &XPoly, w: Window, i: usize) -> Result<XPoly, Error> {
    let tf = t_op(f, w, i)?;
    let tinv = QT::t_pow(-1);
    let c = tinv.sub(&QT::one());
    Ok(tf.scale(&tinv).add(&f.scale(&c)))
}

/// Normalized operator t^{-1} T_i.
pub fn t_bar(f: &XPoly, w: Window, i: usize) -> Result<XPoly, Error> {
    Ok(t_op(f, w, i)?.scale(&QT::t_pow(-1)))
}

/// Normalized inverse t T_i^{-1} = T_i + (1 - t).
pub fn t_bar_inv(f: &XPoly, w: Window, i: usize) -> Result<XPoly, Error> {
    let tf = t_op(f, w, i)?;
    let c = QT::one().sub(&QT::t());
    Ok(tf.add(&f.scale(&c)))
}

/// Affine rotation on the window: (w f)(x_1, ..., x_n) =
/// f(q x_n, x_1, ..., x_{n-1}) in window coordinates.
pub fn affine_omega(f: &XPoly, w: Window) -> XPoly {
    f.cycle_q(w.lo, w.hi)
}

pub fn affine_omega_inv(f: &XPoly, w: Window) -> XPoly {
    f.cycle_q_inv(w.lo, w.hi)
}

/// Cherednik operator Y_i on the window (1-based relative i):
/// the word T'_i ... T'_{n-1} w (T'_1)^{-1} ... (T'_{i-1})^{-1} with
/// normalized generators, applied rightmost factor first.
pub fn cherednik_y(f: &XPoly, w: Window, i: usize) -> Result<XPoly, Error> {
    let n = w.len();
    if i < 1 || i > n {
        return Err(Error::OutOfRange(format!("Y index {i} with {n} variables")));
    }
    let mut g = f.clone();
    for j in (1..i).rev() {
        g = t_bar_inv(&g, w, j)?;
    }
    g = affine_omega(&g, w);
    for j in (i..n).rev() {
        g = t_bar(&g, w, j)?;
    }
    Ok(g)
}

/// Dual Cherednik operator Y*_i on the window:
/// (T'_i)^{-1} ... (T'_{n-1})^{-1} w T'_1 ... T'_{i-1}, rightmost first.
pub fn cherednik_y_star(f: &XPoly, w: Window, i: usize) -> Result<XPoly, Error> {
    let n = w.len();
    if i < 1 || i > n {
        return Err(Error::OutOfRange(format!("Y* index {i} with {n} variables")));
    }
    let mut g = f.clone();
    for j in (1..i).rev() {
        g = t_bar(&g, w, j)?;
    }
    g = affine_omega(&g, w);
    for j in (i..n).rev() {
        g = t_bar_inv(&g, w, j)?;
    }
    Ok(g)
}

/// The involution sending every variable of the window to its inverse and
/// (q, t) to (1/q, 1/t). Conjugating Y_i by it yields Y*_i.
pub fn iota(f: &XPoly, w: Window) -> Result<XPoly, Error> {
    let inv = f.invert_vars(&w.vars());
    let mut r = XPoly::zero(f.nvars());
    for (e, c) in inv.terms() {
        r.add_term(e, c.invert_vars()?);
    }
    Ok(r)
}

/// One factor of an operator word. Indices are 1-based relative to the
/// window, matching the standalone operator functions.
#[derive(Clone, Debug)]
pub enum OpAtom {
    /// Plain transposition s_i of window positions i, i+1.
    S(usize),
    /// q-shift x_j -> q x_j at the listed window positions.
    Tau(Vec<usize>),
    T(usize),
    TInv(usize),
    TBar(usize),
    TBarInv(usize),
    Omega,
    OmegaInv,
    Y(usize),
    YStar(usize),
    /// Multiplication by a fixed polynomial.
    MulBy(XPoly),
}

/// Apply a word of operators, rightmost atom first, so the word reads the
/// same way as an operator product acting on f.
pub fn apply_word(f: &XPoly, w: Window, word: &[OpAtom]) -> Result<XPoly, Error> {
    let mut g = f.clone();
    for atom in word.iter().rev() {
        g = match atom {
            OpAtom::S(i) => {
                check_pair(&g, w, *i)?;
                g.swap_vars(w.abs(*i), w.abs(*i) + 1)
            }
            OpAtom::Tau(ps) => {
                let vars: Vec<usize> = ps.iter().map(|&p| w.abs(p)).collect();
                g.q_shift_vars(&vars)
            }
            OpAtom::T(i) => t_op(&g, w, *i)?,
            OpAtom::TInv(i) => t_inv_op(&g, w, *i)?,
            OpAtom::TBar(i) => t_bar(&g, w, *i)?,
            OpAtom::TBarInv(i) => t_bar_inv(&g, w, *i)?,
            OpAtom::Omega => affine_omega(&g, w),
            OpAtom::OmegaInv => affine_omega_inv(&g, w),
            OpAtom::Y(i) => cherednik_y(&g, w, *i)?,
            OpAtom::YStar(i) => cherednik_y_star(&g, w, *i)?,
            OpAtom::MulBy(p) => g.mul(p),
        };
    }
    Ok(g)
}

/// Number of inversions of the permutation obtained by multiplying the
/// adjacent transpositions of `word` left to right.
fn word_inversions(n: usize, word: &[usize]) -> Result<usize, Error> {
    let mut perm: Vec<usize> = (0..n).collect();
    for &i in word {
        if i < 1 || i >= n {
            return Err(Error::OutOfRange(format!(
                "generator index {i} for {n} strands"
            )));
        }
        perm.swap(i - 1, i);
    }
    let mut inv = 0;
    for a in 0..n {
        for b in a + 1..n {
            if perm[a] > perm[b] {
                inv += 1;
            }
        }
    }
    Ok(inv)
}

/// Apply T_{w} for a reduced word of adjacent transposition indices,
/// rightmost letter first. Non-reduced words are rejected because the
/// resulting operator would depend on the chosen word.
pub fn t_word(f: &XPoly, w: Window, word: &[usize]) -> Result<XPoly, Error> {
    let inv = word_inversions(w.len(), word)?;
    if inv != word.len() {
        return Err(Error::SizeMismatch(format!(
            "word of length {} is not reduced (permutation has {} inversions)",
            word.len(),
            inv
        )));
    }
    let mut g = f.clone();
    for &i in word.iter().rev() {
        g = t_op(&g, w, i)?;
    }
    Ok(g)
}

/// Machine check of the defining relations of the operator algebra in n
/// variables, evaluated on every monomial of total degree <= max_degree.
/// Produces one report row per relation family.
pub fn verify_hecke_relations(n: usize, max_degree: u32) -> Result<crate::report::CheckReport, Error> {
    use crate::report::CheckReport;
    let w = Window::full(n);
    let basis: Vec<XPoly> = crate::polyx::monomials_up_to(n, max_degree)
        .into_iter()
        .map(|e| XPoly::monomial(n, &e, QT::one()))
        .collect();
    let mut rep = CheckReport::new(&format!("hecke relations n={n} deg<={max_degree}"));

    // Each relation is packaged as "defect(f) must vanish"; the first basis
    // monomial with a nonzero defect is reported as the counterexample.
    let check = |rep: &mut CheckReport,
                 name: &str,
                 defect: &dyn Fn(&XPoly) -> Result<XPoly, Error>|
     -> Result<(), Error> {
        for f in &basis {
            if !defect(f)?.is_zero() {
                rep.record(name, false, Some(format!("input {f}")));
                return Ok(());
            }
        }
        rep.record(name, true, None);
        Ok(())
    };

    // (T_i - t)(T_i + 1) = 0, i.e. T_i^2 = (t-1) T_i + t.
    check(
        &mut rep,
        "quadratic (T_i - t)(T_i + 1) = 0",
        &|f| {
            for i in 1..n {
                let tf = t_op(f, w, i)?;
                let lhs = t_op(&tf, w, i)?;
                let rhs = tf
                    .scale(&QT::poly(&[(0, 1, 1), (0, 0, -1)]))
                    .add(&f.scale(&QT::t()));
                if lhs != rhs {
                    return Ok(lhs.sub(&rhs));
                }
            }
            Ok(XPoly::zero(n))
        },
    )?;

    // T_i T_j = T_j T_i for |i-j| >= 2.
    check(
        &mut rep,
        "commuting T_i T_j = T_j T_i, |i-j| >= 2",
        &|f| {
            for i in 1..n {
                for j in i + 2..n {
                    let lhs = t_op(&t_op(f, w, j)?, w, i)?;
                    let rhs = t_op(&t_op(f, w, i)?, w, j)?;
                    if lhs != rhs {
                        return Ok(lhs.sub(&rhs));
                    }
                }
            }
            Ok(XPoly::zero(n))
        },
    )?;

    // Braid T_i T_{i+1} T_i = T_{i+1} T_i T_{i+1}.
    check(
        &mut rep,
        "braid T_i T_{i+1} T_i = T_{i+1} T_i T_{i+1}",
        &|f| {
            for i in 1..n.saturating_sub(1) {
                let lhs = t_op(&t_op(&t_op(f, w, i)?, w, i + 1)?, w, i)?;
                let rhs = t_op(&t_op(&t_op(f, w, i + 1)?, w, i)?, w, i + 1)?;
                if lhs != rhs {
                    return Ok(lhs.sub(&rhs));
                }
            }
            Ok(XPoly::zero(n))
        },
    )?;

    // Rotation intertwines consecutive generators: w T_i = T_{i-1} w, i >= 2.
    check(
        &mut rep,
        "rotation w T_i = T_{i-1} w, i >= 2",
        &|f| {
            for i in 2..n {
                let lhs = affine_omega(&t_op(f, w, i)?, w);
                let rhs = t_op(&affine_omega(f, w), w, i - 1)?;
                if lhs != rhs {
                    return Ok(lhs.sub(&rhs));
                }
            }
            Ok(XPoly::zero(n))
        },
    )?;

    // The Cherednik family commutes.
    check(
        &mut rep,
        "commuting family [Y_i, Y_j] = 0",
        &|f| {
            for i in 1..=n {
                for j in i + 1..=n {
                    let lhs = cherednik_y(&cherednik_y(f, w, j)?, w, i)?;
                    let rhs = cherednik_y(&cherednik_y(f, w, i)?, w, j)?;
                    if lhs != rhs {
                        return Ok(lhs.sub(&rhs));
                    }
                }
            }
            Ok(XPoly::zero(n))
        },
    )?;

    // T'_i Y_{i+1} T'_i = Y_i with the normalized generator T' = t^{-1} T.
    check(
        &mut rep,
        "descent T'_i Y_{i+1} T'_i = Y_i",
        &|f| {
            for i in 1..n {
                let lhs = t_bar(&cherednik_y(&t_bar(f, w, i)?, w, i + 1)?, w, i)?;
                let rhs = cherednik_y(f, w, i)?;
                if lhs != rhs {
                    return Ok(lhs.sub(&rhs));
                }
            }
            Ok(XPoly::zero(n))
        },
    )?;

    // Dual descent T'_i Y*_i T'_i = Y*_{i+1}.
    check(
        &mut rep,
        "dual descent T'_i Y*_i T'_i = Y*_{i+1}",
        &|f| {
            for i in 1..n {
                let lhs = t_bar(&cherednik_y_star(&t_bar(f, w, i)?, w, i)?, w, i)?;
                let rhs = cherednik_y_star(f, w, i + 1)?;
                if lhs != rhs {
                    return Ok(lhs.sub(&rhs));
                }
            }
            Ok(XPoly::zero(n))
        },
    )?;

    // T'_i commutes with Y_j and Y*_j when j is not i or i+1.
    check(
        &mut rep,
        "distant T'_i Y_j = Y_j T'_i, j != i, i+1",
        &|f| {
            for i in 1..n {
                for j in 1..=n {
                    if j == i || j == i + 1 {
                        continue;
                    }
                    let lhs = t_bar(&cherednik_y(f, w, j)?, w, i)?;
                    let rhs = cherednik_y(&t_bar(f, w, i)?, w, j)?;
                    if lhs != rhs {
                        return Ok(lhs.sub(&rhs));
                    }
                }
            }
            Ok(XPoly::zero(n))
        },
    )?;

    check(
        &mut rep,
        "distant T'_i Y*_j = Y*_j T'_i, j != i, i+1",
        &|f| {
            for i in 1..n {
                for j in 1..=n {
                    if j == i || j == i + 1 {
                        continue;
                    }
                    let lhs = t_bar(&cherednik_y_star(f, w, j)?, w, i)?;
                    let rhs = cherednik_y_star(&t_bar(f, w, i)?, w, j)?;
                    if lhs != rhs {
                        return Ok(lhs.sub(&rhs));
                    }
                }
            }
            Ok(XPoly::zero(n))
        },
    )?;

    // Conjugating Y_i by the inversion involution yields Y*_i.
    check(
        &mut rep,
        "involution conjugate of Y_i is Y*_i",
        &|f| {
            for i in 1..=n {
                let lhs = iota(&cherednik_y(&iota(f, w)?, w, i)?, w)?;
                let rhs = cherednik_y_star(f, w, i)?;
                if lhs != rhs {
                    return Ok(lhs.sub(&rhs));
                }
            }
            Ok(XPoly::zero(n))
        },
    )?;

    Ok(rep)
}
