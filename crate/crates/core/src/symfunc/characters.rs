//! Symmetric group characters by the Murnaghan-Nakayama rule.
//!
//! Characters are computed by recursive border-strip removal on beta-sets
//! (first-column hook lengths): removing a border strip of size k from the
//! diagram is subtracting k from one beta number so that the set stays
//! distinct, with sign (-1)^(number of beta numbers jumped over).

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::partition::Partition;

fn beta_set(lambda: &Partition) -> Vec<i64> {
    let m = lambda.rows();
    (0..m)
        .map(|i| lambda.parts()[i] as i64 + (m - 1 - i) as i64)
        .collect()
}

fn chi_rec(beta: &[i64], mu: &[u32], memo: &mut HashMap<(Vec<i64>, Vec<u32>), i64>) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (beta.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let k = mu[0] as i64;
    let rest = &mu[1..];
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        let t = b - k;
        if t < 0 || beta.contains(&t) {
            continue;
        }
        // Height of the strip = number of beta numbers strictly between t and b.
        let crossed = beta.iter().filter(|&&c| c > t && c < b).count();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.to_vec();
        nb[i] = t;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        total += sign * chi_rec(&nb, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Character value chi^lambda(mu) of the symmetric group S_n.
pub fn chi(lambda: &Partition, mu: &Partition) -> i64 {
    assert_eq!(lambda.size(), mu.size());
    let mut memo = HashMap::new();
    chi_rec(&beta_set(lambda), mu.parts(), &mut memo)
}

/// Centralizer order z_mu = prod k^(m_k) m_k!.
pub fn z_factor(mu: &Partition) -> BigInt {
    let mut z = BigInt::from(1);
    let mut mult = 0u32;
    let mut prev = 0u32;
    for &p in mu.parts().iter().chain(std::iter::once(&0)) {
        if p == prev {
            mult += 1;
        } else {
            if prev > 0 {
                for j in 1..=mult {
                    z *= BigInt::from(prev) * BigInt::from(j);
                }
            }
            prev = p;
            mult = 1;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn z_values() {
        assert_eq!(z_factor(&p("[1,1,1]")), BigInt::from(6));
        assert_eq!(z_factor(&p("[2,1]")), BigInt::from(2));
        assert_eq!(z_factor(&p("[3]")), BigInt::from(3));
        assert_eq!(z_factor(&p("[2,2]")), BigInt::from(8));
        assert_eq!(z_factor(&Partition::empty()), BigInt::from(1));
    }

    #[test]
    fn classical_character_table_s3() {
        // Rows lambda, columns mu in [1,1,1], [2,1], [3].
        let table = [
            ("[3]", [1, 1, 1]),
            ("[2,1]", [2, 0, -1]),
            ("[1,1,1]", [1, -1, 1]),
        ];
        let mus = ["[1,1,1]", "[2,1]", "[3]"];
        for (l, row) in table {
            for (m, expect) in mus.iter().zip(row) {
                assert_eq!(chi(&p(l), &p(m)), expect, "chi^{l}({m})");
            }
        }
    }

    #[test]
    fn identity_column_is_dimension() {
        // chi^lambda(1^n) = number of standard Young tableaux.
        assert_eq!(chi(&p("[2,2]"), &p("[1,1,1,1]")), 2);
        assert_eq!(chi(&p("[3,1]"), &p("[1,1,1,1]")), 3);
        assert_eq!(chi(&p("[3,2]"), &p("[1,1,1,1,1]")), 5);
    }

    #[test]
    fn orthogonality_of_rows() {
        // sum_mu chi^l(mu) chi^k(mu) / z_mu = delta_{lk}, |lambda| <= 5.
        use num_rational::BigRational;
        use num_traits::Zero;
        for n in 1..=5u32 {
            let parts = Partition::all_of(n);
            for a in &parts {
                for b in &parts {
                    let mut acc = BigRational::zero();
                    for mu in &parts {
                        let prod = BigInt::from(chi(a, mu)) * BigInt::from(chi(b, mu));
                        acc += BigRational::new(prod, z_factor(mu));
                    }
                    let expect = if a == b { 1 } else { 0 };
                    assert_eq!(acc, BigRational::from(BigInt::from(expect)), "{a} {b}");
                }
            }
        }
    }
}
