//! Integer partitions: dominance order, conjugation, hook lengths, and
//! enumeration in descending lexicographic order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::Error;

/// A partition: weakly decreasing positive parts.
///
/// The derived `Ord` is lexicographic on the parts, so sorting descending
/// puts (N) first and (1, ..., 1) last; that order refines dominance.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds from any list of nonnegative parts: zeros dropped, rest sorted.
    pub fn new(parts: &[u32]) -> Self {
        let mut v: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The i-th part (0-based), zero beyond the last.
    pub fn get(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        if self.0.is_empty() {
            return Partition::empty();
        }
        let cols = self.0[0] as usize;
        let mut v = vec![0u32; cols];
        for (j, slot) in v.iter_mut().enumerate() {
            *slot = self.0.iter().filter(|&&p| p as usize > j).count() as u32;
        }
        Partition(v)
    }

    /// n(lambda) = sum_i (i - 1) lambda_i with 1-based i.
    pub fn n_stat(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// True if self is dominated by other (both must have equal size):
    /// every prefix sum of self is at most the matching prefix sum of other.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.size(), other.size());
        let k = self.len().max(other.len());
        let mut sa = 0u64;
        let mut sb = 0u64;
        for i in 0..k {
            sa += self.get(i) as u64;
            sb += other.get(i) as u64;
            if sa > sb {
                return false;
            }
        }
        true
    }

    /// Arm length of cell (i, j), 0-based: boxes strictly right of the cell.
    pub fn arm(&self, i: usize, j: usize) -> u32 {
        self.get(i) - 1 - j as u32
    }

    /// Leg length of cell (i, j), 0-based: boxes strictly below the cell.
    pub fn leg(&self, i: usize, j: usize) -> u32 {
        self.conjugate().get(j) - 1 - i as u32
    }

    /// All cells (i, j) of the diagram, 0-based, row-major.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for (i, &p) in self.0.iter().enumerate() {
            for j in 0..p as usize {
                v.push((i, j));
            }
        }
        v
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn tableaux_count(&self) -> BigInt {
        let n = self.size() as u64;
        let mut num = BigInt::one();
        for k in 1..=n {
            num *= BigInt::from(k);
        }
        let conj = self.conjugate();
        let mut den = BigInt::one();
        for (i, &p) in self.0.iter().enumerate() {
            for j in 0..p as usize {
                let hook = (p - 1 - j as u32) + (conj.get(j) - 1 - i as u32) + 1;
                den *= BigInt::from(hook);
            }
        }
        num / den
    }

    /// All partitions mu of the same size with mu dominated by self,
    /// in descending lexicographic order (self first).
    pub fn dominance_downset(&self) -> Vec<Partition> {
        let mut v: Vec<Partition> = all_partitions(self.size())
            .into_iter()
            .filter(|mu| mu.dominated_by(self))
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

/// All partitions of n, in descending lexicographic order:
/// (n) first, (1, ..., 1) last.
pub fn all_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(n, n, &mut cur, &mut out);
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        let hi = rem.min(max);
        for p in (1..=hi).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    out
}

/// Partitions of every size from 1 through n inclusive, grouped by size.
pub fn partitions_up_to(n: u32) -> Vec<(u32, Vec<Partition>)> {
    (0..=n).map(|k| (k, all_partitions(k))).collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// Accepts comma- or dash-separated parts, with optional surrounding
/// brackets or parentheses: "3,1", "3-1", "[3,1]", "(3,1)".
impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s
            .trim()
            .trim_start_matches(['[', '('])
            .trim_end_matches([']', ')']);
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split([',', '-']) {
            let tok = tok.trim();
            let p: u32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad partition part {tok:?}")))?;
            parts.push(p);
        }
        Ok(Partition::new(&parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts)
    }

    #[test]
    fn conjugate_examples_and_involution() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[2, 2]).conjugate(), p(&[2, 2]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        for n in 1..=6 {
            for lam in all_partitions(n) {
                assert_eq!(lam.conjugate().conjugate(), lam);
                assert_eq!(lam.conjugate().size(), lam.size());
            }
        }
    }

    #[test]
    fn dominance_order() {
        assert!(p(&[2, 2]).dominated_by(&p(&[3, 1])));
        assert!(!p(&[3, 1]).dominated_by(&p(&[2, 2])));
        assert!(p(&[3, 1]).dominated_by(&p(&[3, 1])));
        // incomparable pair at size 6
        assert!(!p(&[3, 3]).dominated_by(&p(&[4, 1, 1])));
        assert!(!p(&[4, 1, 1]).dominated_by(&p(&[3, 3])));
        // dominance reverses under conjugation
        for lam in all_partitions(6) {
            for mu in all_partitions(6) {
                assert_eq!(
                    lam.dominated_by(&mu),
                    mu.conjugate().dominated_by(&lam.conjugate())
                );
            }
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(all_partitions(5).len(), 7);
        assert_eq!(all_partitions(6).len(), 11);
        let ps = all_partitions(4);
        assert_eq!(ps.first().unwrap(), &p(&[4]));
        assert_eq!(ps.last().unwrap(), &p(&[1, 1, 1, 1]));
        // strictly descending lexicographic
        for w in ps.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn n_stat_values() {
        assert_eq!(p(&[2, 2, 1]).n_stat(), 4);
        assert_eq!(p(&[2, 2, 1]).conjugate().n_stat(), 2);
        assert_eq!(p(&[5]).n_stat(), 0);
        assert_eq!(p(&[1, 1, 1, 1]).n_stat(), 6);
    }

    #[test]
    fn hooks_and_tableaux_counts() {
        assert_eq!(p(&[2, 1]).tableaux_count(), BigInt::from(2));
        assert_eq!(p(&[3, 2]).tableaux_count(), BigInt::from(5));
        assert_eq!(p(&[2, 2, 1]).tableaux_count(), BigInt::from(5));
        assert_eq!(p(&[5]).tableaux_count(), BigInt::from(1));
        // sum of squares over partitions of 5 equals 5!
        let total: BigInt = all_partitions(5)
            .iter()
            .map(|lam| {
                let f = lam.tableaux_count();
                &f * &f
            })
            .sum();
        assert_eq!(total, BigInt::from(120));
    }

    #[test]
    fn arm_and_leg() {
        let lam = p(&[3, 2]);
        assert_eq!(lam.arm(0, 0), 2);
        assert_eq!(lam.leg(0, 0), 1);
        assert_eq!(lam.arm(1, 1), 0);
        assert_eq!(lam.leg(0, 2), 0);
        assert_eq!(lam.cells().len(), 5);
    }

    #[test]
    fn downset_of_hook() {
        let d = p(&[3, 1]).dominance_downset();
        let expect = vec![p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])];
        assert_eq!(d, expect);
    }

    #[test]
    fn parse_formats() {
        assert_eq!("3,1".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("3-1".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("[4,2,2]".parse::<Partition>().unwrap(), p(&[4, 2, 2]));
        assert_eq!("(2)".parse::<Partition>().unwrap(), p(&[2]));
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert!("3,x".parse::<Partition>().is_err());
    }
}
