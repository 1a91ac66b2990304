//! Partitions, monomial symmetric polynomials, downturn walks, and the
//! d coefficients that weight the nonlinear terms of the string hierarchy.

use crate::exactnum::{binomial, Rat};
use crate::{Error, Result};
use num_bigint::BigInt;
use std::fmt;
use std::str::FromStr;

/// Weakly decreasing positive parts. Text form "[3,1,1]".
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::BadArgument("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                kind: "Partition",
                input: s.to_string(),
            })?;
        let mut parts = Vec::new();
        if !inner.trim().is_empty() {
            for piece in inner.split(',') {
                let p: u32 = piece.trim().parse().map_err(|_| Error::Parse {
                    kind: "Partition",
                    input: s.to_string(),
                })?;
                parts.push(p);
            }
        }
        let out = Partition::new(parts).map_err(|_| Error::Parse {
            kind: "Partition",
            input: s.to_string(),
        })?;
        // reject non-canonical input rather than silently resorting
        if format!("{out}") != s.trim() {
            return Err(Error::Parse {
                kind: "Partition",
                input: s.to_string(),
            });
        }
        Ok(out)
    }
}

/// All partitions of n with at most max_len parts, largest first part first
/// (reverse lexicographic).
pub fn partitions(n: u32, max_len: usize) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        let top = remaining.min(max_part);
        // a part below ceil(remaining/slots) cannot finish in time
        let low = remaining.div_ceil(slots as u32);
        for p in (low..=top).rev() {
            prefix.push(p);
            rec(remaining - p, p, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_len, &mut Vec::new(), &mut out);
    out
}

/// Ordered tuples of the given length with entries in 0..=each_max summing to
/// total.
pub fn compositions(total: u32, parts: usize, each_max: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, slots: usize, each_max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let cap = remaining.min(each_max);
        for k in 0..=cap {
            prefix.push(k);
            rec(remaining - k, slots - 1, each_max, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, each_max, &mut Vec::new(), &mut out);
    out
}

/// Monomial symmetric polynomial m_lambda evaluated at the given values: the
/// sum over distinct assignments of the parts (padded with zeros) of the
/// product values[i]^(exponent assigned to i).
pub fn monomial_symmetric(lambda: &Partition, values: &[Rat]) -> Result<Rat> {
    if values.len() < lambda.len() {
        return Err(Error::TooFewArguments {
            needed: lambda.len(),
            got: values.len(),
        });
    }
    let mut exps: Vec<u32> = lambda.parts().to_vec();
    exps.resize(values.len(), 0);
    // distinct permutations of exps over the positions; exps stays sorted
    // descending so equal entries are adjacent and skippable
    fn rec(exps: &mut Vec<u32>, values: &[Rat], pos: usize, partial: Rat, acc: &mut Rat) {
        if pos == values.len() {
            *acc += &partial;
            return;
        }
        let mut last: Option<u32> = None;
        for i in 0..exps.len() {
            let e = exps[i];
            if last == Some(e) {
                continue;
            }
            last = Some(e);
            let factor = if e == 0 {
                Rat::one()
            } else {
                values[pos].pow(e as i64).expect("nonnegative exponent")
            };
            let taken = exps.remove(i);
            rec(exps, values, pos + 1, &partial * &factor, acc);
            exps.insert(i, taken);
        }
    }
    let mut acc = Rat::zero();
    rec(&mut exps, values, 0, Rat::one(), &mut acc);
    Ok(acc)
}

/// c_nu = 2 nu binom(2nu-1, nu-1) = (nu+1) binom(2nu, nu+1); both forms are
/// computed and compared.
pub fn c_nu(nu: u32) -> Result<BigInt> {
    if nu < 2 {
        return Err(Error::BadNu(nu));
    }
    let n = nu as u64;
    let a = BigInt::from(2 * n) * binomial(2 * n - 1, n - 1);
    let b = BigInt::from(n + 1) * binomial(2 * n, n + 1);
    assert_eq!(a, b, "the two closed forms of c_nu disagree");
    Ok(a)
}

/// A lattice walk of 2 nu unit steps from height 1 to height -1 whose nu+1
/// down steps sit at the stored indices (1-based, strictly increasing).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DownturnWalk {
    downturns: Vec<u32>,
}

impl DownturnWalk {
    /// Every admissible walk; there are binom(2nu, nu+1) of them.
    pub fn enumerate(nu: u32) -> Result<Vec<DownturnWalk>> {
        if nu < 2 {
            return Err(Error::BadNu(nu));
        }
        let total = 2 * nu;
        let picks = (nu + 1) as usize;
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(picks);
        fn rec(start: u32, total: u32, picks: usize, current: &mut Vec<u32>, out: &mut Vec<DownturnWalk>) {
            if current.len() == picks {
                out.push(DownturnWalk {
                    downturns: current.clone(),
                });
                return;
            }
            let remaining = picks - current.len();
            for i in start..=(total - remaining as u32 + 1) {
                current.push(i);
                rec(i + 1, total, picks, current, out);
                current.pop();
            }
        }
        rec(1, total, picks, &mut current, &mut out);
        Ok(out)
    }

    pub fn downturn_steps(&self) -> &[u32] {
        &self.downturns
    }

    /// l_m = i_m - 2m.
    pub fn locations(&self) -> Vec<i64> {
        self.downturns
            .iter()
            .enumerate()
            .map(|(idx, &i)| i as i64 - 2 * (idx as i64 + 1))
            .collect()
    }

    /// Height just before the m-th down step: l_m + 2.
    pub fn heights_before(&self) -> Vec<i64> {
        self.locations().iter().map(|l| l + 2).collect()
    }

    /// Height just after the m-th down step: l_m + 1.
    pub fn heights_after(&self) -> Vec<i64> {
        self.locations().iter().map(|l| l + 1).collect()
    }
}

fn check_d_arguments(nu: u32, lambda: &Partition) -> Result<()> {
    if nu < 2 {
        return Err(Error::BadNu(nu));
    }
    if lambda.size() % 2 == 0 {
        return Err(Error::EvenPartitionSize(lambda.size()));
    }
    if lambda.len() > (nu + 1) as usize {
        return Err(Error::PartitionTooLong {
            len: lambda.len(),
            max: (nu + 1) as usize,
        });
    }
    Ok(())
}

fn m_lambda_at_integers(lambda: &Partition, values: &[i64]) -> Result<Rat> {
    let rats: Vec<Rat> = values.iter().map(|&v| Rat::from(v)).collect();
    monomial_symmetric(lambda, &rats)
}

/// d_lambda as a signed sum over downturn walks of the height monomials:
/// sum over walks of m_lambda(heights before) - m_lambda(heights after).
pub fn d_coeff_walks(nu: u32, lambda: &Partition) -> Result<BigInt> {
    check_d_arguments(nu, lambda)?;
    let mut acc = Rat::zero();
    for walk in DownturnWalk::enumerate(nu)? {
        acc += &m_lambda_at_integers(lambda, &walk.heights_before())?;
        acc -= &m_lambda_at_integers(lambda, &walk.heights_after())?;
    }
    acc.to_bigint()
}

/// d_lambda in the reflection-symmetric form: twice the sum of
/// m_lambda(mu - eta) over strictly decreasing mu with
/// (nu+1, nu, ..., 1) <= mu <= (2nu, 2nu-1, ..., nu) componentwise, where
/// eta = (2nu, 2nu-2, ..., 0).
pub fn d_coeff_symmetric(nu: u32, lambda: &Partition) -> Result<BigInt> {
    check_d_arguments(nu, lambda)?;
    let len = (nu + 1) as usize;
    let mut acc = Rat::zero();
    let mut mu = vec![0i64; len];
    fn rec(
        j: usize,
        len: usize,
        nu: i64,
        mu: &mut Vec<i64>,
        lambda: &Partition,
        acc: &mut Rat,
    ) -> Result<()> {
        if j == len {
            let shifted: Vec<i64> = mu
                .iter()
                .enumerate()
                .map(|(idx, &m)| m - 2 * (nu - idx as i64))
                .collect();
            *acc += &m_lambda_at_integers(lambda, &shifted)?;
            return Ok(());
        }
        let low = nu + 1 - j as i64;
        let high = 2 * nu - j as i64;
        for v in low..=high {
            if j > 0 && v >= mu[j - 1] {
                continue;
            }
            mu[j] = v;
            rec(j + 1, len, nu, mu, lambda, acc)?;
        }
        Ok(())
    }
    rec(0, len, nu as i64, &mut mu, lambda, &mut acc)?;
    (acc * Rat::from(2)).to_bigint()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_text_round_trip() {
        let p = part(&[3, 1, 1]);
        assert_eq!(p.to_string(), "[3,1,1]");
        assert_eq!("[3,1,1]".parse::<Partition>().unwrap(), p);
        assert!("[1,3]".parse::<Partition>().is_err());
        assert!("[0]".parse::<Partition>().is_err());
        assert!("3,1".parse::<Partition>().is_err());
    }

    #[test]
    fn partition_enumeration_order() {
        let ps: Vec<String> = partitions(5, 3).iter().map(|p| p.to_string()).collect();
        assert_eq!(
            ps,
            ["[5]", "[4,1]", "[3,2]", "[3,1,1]", "[2,2,1]"]
        );
        assert_eq!(partitions(3, 8).len(), 3);
        assert_eq!(partitions(0, 4).len(), 1); // the empty partition
    }

    #[test]
    fn composition_counts() {
        // weak compositions of 4 into 3 parts: binom(6,2) = 15
        assert_eq!(compositions(4, 3, 4).len(), 15);
        // capping each part at 1 leaves the permutations of (1,1,0)
        assert_eq!(compositions(2, 3, 1).len(), 3);
        assert!(compositions(5, 2, 2).is_empty());
    }

    #[test]
    fn monomial_symmetric_values() {
        let vals: Vec<Rat> = [1i64, 2, 3].iter().map(|&v| Rat::from(v)).collect();
        // m_[1,1] = e_2
        assert_eq!(
            monomial_symmetric(&part(&[1, 1]), &vals).unwrap(),
            Rat::from(11)
        );
        // m_[2,1] on (1,2,3): sum over ordered distinct pairs of x^2 y
        // = 1*2+1*3+4*1+4*3+9*1+9*2 = 48
        assert_eq!(
            monomial_symmetric(&part(&[2, 1]), &vals).unwrap(),
            Rat::from(48)
        );
        // padding with zeros
        assert_eq!(
            monomial_symmetric(&part(&[2]), &vals[..2]).unwrap(),
            Rat::from(5)
        );
        assert!(matches!(
            monomial_symmetric(&part(&[1, 1, 1, 1]), &vals),
            Err(Error::TooFewArguments { needed: 4, got: 3 })
        ));
    }

    #[test]
    fn c_nu_fixtures() {
        assert_eq!(c_nu(2).unwrap(), BigInt::from(12));
        assert_eq!(c_nu(3).unwrap(), BigInt::from(60));
        assert_eq!(c_nu(4).unwrap(), BigInt::from(280));
        assert_eq!(c_nu(5).unwrap(), BigInt::from(1260));
        assert!(matches!(c_nu(1), Err(Error::BadNu(1))));
    }

    #[test]
    fn walk_counts_match_binomial() {
        for nu in 2..=5u32 {
            let walks = DownturnWalk::enumerate(nu).unwrap();
            let expect = binomial(2 * nu as u64, nu as u64 + 1);
            assert_eq!(BigInt::from(walks.len()), expect);
        }
    }

    #[test]
    fn walk_heights() {
        // nu=2, downturns at (1,3,4): heights run 1,0,1,0,-1
        let w = DownturnWalk {
            downturns: vec![1, 3, 4],
        };
        assert_eq!(w.locations(), vec![-1, -1, -2]);
        assert_eq!(w.heights_before(), vec![1, 1, 0]);
        assert_eq!(w.heights_after(), vec![0, 0, -1]);
    }

    #[test]
    fn d_fixtures_nu2() {
        let d = |l: &[u32]| d_coeff_symmetric(2, &part(l)).unwrap();
        assert_eq!(d(&[1]), BigInt::from(12));
        assert_eq!(d(&[3]), BigInt::from(24));
        assert_eq!(d(&[2, 1]), BigInt::from(16));
        assert_eq!(d(&[1, 1, 1]), BigInt::from(0));
        assert_eq!(d(&[5]), BigInt::from(72));
        assert_eq!(d(&[4, 1]), BigInt::from(40));
        assert_eq!(d(&[3, 2]), BigInt::from(28));
        assert_eq!(d(&[3, 1, 1]), BigInt::from(0));
        assert_eq!(d(&[2, 2, 1]), BigInt::from(0));
    }

    #[test]
    fn d_fixtures_nu3_nu4() {
        let d3 = |l: &[u32]| d_coeff_symmetric(3, &part(l)).unwrap();
        assert_eq!(d3(&[1]), BigInt::from(60));
        assert_eq!(d3(&[3]), BigInt::from(180));
        assert_eq!(d3(&[2, 1]), BigInt::from(240));
        assert_eq!(d3(&[1, 1, 1]), BigInt::from(30));
        assert_eq!(d3(&[5]), BigInt::from(900));
        assert_eq!(d3(&[4, 1]), BigInt::from(1032));
        assert_eq!(d3(&[3, 2]), BigInt::from(780));
        assert_eq!(d3(&[3, 1, 1]), BigInt::from(294));
        assert_eq!(d3(&[2, 2, 1]), BigInt::from(242));
        assert_eq!(d3(&[2, 1, 1, 1]), BigInt::from(0));
        let d4 = |l: &[u32]| d_coeff_symmetric(4, &part(l)).unwrap();
        assert_eq!(d4(&[1]), BigInt::from(280));
        assert_eq!(d4(&[2, 1, 1, 1]), BigInt::from(1680));
        assert_eq!(d4(&[1, 1, 1, 1, 1]), BigInt::from(0));
    }

    #[test]
    fn d_anchor_identities() {
        for nu in 2..=5u32 {
            let c = c_nu(nu).unwrap();
            assert_eq!(d_coeff_symmetric(nu, &part(&[1])).unwrap(), c);
            assert_eq!(
                d_coeff_symmetric(nu, &part(&[3])).unwrap(),
                BigInt::from(nu) * &c
            );
        }
    }

    #[test]
    fn d_two_forms_agree_small() {
        for nu in 2..=3u32 {
            for size in [1u32, 3, 5] {
                for lambda in partitions(size, (nu + 1) as usize) {
                    assert_eq!(
                        d_coeff_walks(nu, &lambda).unwrap(),
                        d_coeff_symmetric(nu, &lambda).unwrap(),
                        "nu={nu} lambda={lambda}"
                    );
                }
            }
        }
    }

    #[test]
    fn d_argument_errors() {
        assert!(matches!(
            d_coeff_symmetric(2, &part(&[2])),
            Err(Error::EvenPartitionSize(2))
        ));
        assert!(matches!(
            d_coeff_symmetric(2, &part(&[1, 1, 1, 1, 1])),
            Err(Error::PartitionTooLong { len: 5, max: 3 })
        ));
    }
}
