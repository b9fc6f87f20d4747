//! Brute-force reference implementations shared by the integration tests.
//! None of these call into the code they are used to check, except for the
//! group law itself.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use abelian::groups::{AbelianGroup, ClassGroup, CyclicProduct, GroupElement, ZnStar};
use num_bigint::{BigInt, BigUint};

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Cofactor expansion along the first row.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => {
            let mut total = 0;
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                total += sign * m[0][j] * det(&minor);
            }
            total
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Invariant factors from determinantal divisors: `D_i` is the gcd of all
/// `i x i` minors and `d_i = D_i / D_{i-1}`. Stops at the rank.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut prev = 1i128;
    for size in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, size) {
            for cs in subsets(cols, size) {
                let sub: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| i128::from(m[r][c])).collect())
                    .collect();
                g = gcd(g, det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

/// Exact membership for a square nonsingular `m`: `v` is in the column span
/// iff `adj(m) v` is divisible by `det(m)`.
pub fn square_membership(m: &[Vec<i64>], v: &[i64]) -> bool {
    let n = m.len();
    let a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let d = det(&a);
    assert_ne!(d, 0);
    // Cramer: x_j = det(m with column j replaced by v) / det(m)
    (0..n).all(|j| {
        let replaced: Vec<Vec<i128>> = (0..n)
            .map(|r| (0..n).map(|c| if c == j { i128::from(v[r]) } else { a[r][c] }).collect())
            .collect();
        det(&replaced) % d == 0
    })
}

/// Subgroup generated by `gens`, by closure under the group law.
pub fn closure(group: &dyn AbelianGroup, gens: &[GroupElement]) -> HashSet<GroupElement> {
    let mut seen = HashSet::new();
    let mut frontier = vec![group.identity()];
    seen.insert(group.identity());
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = group.op(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// Every element of a small group.
pub fn elements(group: &dyn AbelianGroup) -> Vec<GroupElement> {
    let spec = group.descriptor();
    let (kind, arg) = spec.split_once(':').unwrap();
    match kind {
        "znstar" => {
            let n: u64 = arg.parse().unwrap();
            let g = ZnStar::new(n).unwrap();
            (1..n.max(2))
                .filter(|&x| gcd(i128::from(x), i128::from(n)) == 1)
                .map(|x| g.element(x % n).unwrap())
                .collect()
        }
        "classgroup" => {
            let d: i64 = arg.parse().unwrap();
            let g = ClassGroup::new(d).unwrap();
            g.forms().iter().map(|f| g.element(f).unwrap()).collect()
        }
        "cyclic" => {
            let moduli: Vec<u64> = if arg.is_empty() {
                vec![]
            } else {
                arg.split(',').map(|s| s.parse().unwrap()).collect()
            };
            let g = CyclicProduct::new(&moduli).unwrap();
            let mut coords = vec![vec![]];
            for &m in &moduli {
                coords = coords
                    .into_iter()
                    .flat_map(|c: Vec<u64>| {
                        (0..m).map(move |x| {
                            let mut c = c.clone();
                            c.push(x);
                            c
                        })
                    })
                    .collect();
            }
            coords.iter().map(|c| g.element(c).unwrap()).collect()
        }
        _ => unreachable!("{spec}"),
    }
}

pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Prime-power invariants `(p, e)` of a small group, sorted, recovered from
/// the sizes of the kernels `G[p^j] = {x : x^(p^j) = 1}`: the number of
/// summands with exponent at least `j` is `log_p(|G[p^j]| / |G[p^(j-1)]|)`.
pub fn structure_by_counting(group: &dyn AbelianGroup) -> Vec<(u64, u32)> {
    let all = elements(group);
    let n = all.len() as u64;
    let id = group.identity();
    let mut out = Vec::new();
    for (p, _) in prime_factors(n) {
        let mut at_least = Vec::new();
        let mut prev = 1u64;
        let mut pj = 1u64;
        loop {
            pj *= p;
            let count = all
                .iter()
                .filter(|x| group.pow_u(x, &BigUint::from(pj)) == id)
                .count() as u64;
            if count == prev {
                break;
            }
            let mut ratio = count / prev;
            let mut r = 0;
            while ratio > 1 {
                ratio /= p;
                r += 1;
            }
            at_least.push(r);
            prev = count;
        }
        // at_least[j-1] summands have exponent >= j
        for j in 0..at_least.len() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            for _ in 0..(at_least[j] - next) {
                out.push((p, j as u32 + 1));
            }
        }
    }
    out.sort();
    out
}

/// Prime-power invariants of `Z_m1 + ... + Z_mr`.
pub fn cyclic_structure(moduli: &[u64]) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = moduli.iter().flat_map(|&m| prime_factors(m)).collect();
    out.sort();
    out
}

/// Prime-power invariants of `(Z/n)^*` from the structure of `(Z/p^e)^*`.
pub fn znstar_structure(n: u64) -> Vec<(u64, u32)> {
    let mut cyclic = Vec::new();
    for (p, e) in prime_factors(n) {
        if p == 2 {
            match e {
                1 => {}
                2 => cyclic.push(2),
                _ => {
                    cyclic.push(2);
                    cyclic.push(1 << (e - 2));
                }
            }
        } else {
            cyclic.push(p.pow(e - 1) * (p - 1));
        }
    }
    cyclic_structure(&cyclic)
}

/// Number of reduced primitive positive-definite forms of discriminant `d`,
/// counted straight from the definition over a box that contains them all.
pub fn class_number_by_count(d: i64) -> usize {
    let n = -d;
    let mut h = 0;
    let mut a = 1i64;
    while a * a <= n {
        for b in -a..=a {
            let num = b * b + n;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let reduced = b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0);
            let primitive = gcd(gcd(i128::from(a), i128::from(b)), i128::from(c)) == 1;
            if reduced && primitive {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

pub fn invariants_u64(dec: &abelian::Decomposition) -> Vec<(u64, u32)> {
    dec.invariants()
        .into_iter()
        .map(|(p, e)| (u64::try_from(p).unwrap(), e))
        .collect()
}

pub fn to_bigint_rows(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Counts of each prime-power invariant, handy in assertion messages.
pub fn multiset(xs: &[(u64, u32)]) -> BTreeMap<(u64, u32), usize> {
    let mut out = BTreeMap::new();
    for &x in xs {
        *out.entry(x).or_default() += 1;
    }
    out
}
