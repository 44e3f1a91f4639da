//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use polylab::algebra::IntPoly;

pub fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

/// Cofactor expansion along the first row.
pub fn det_cofactor(a: &[Vec<i128>]) -> i128 {
    let n = a.len();
    match n {
        0 => 1,
        1 => a[0][0],
        _ => (0..n)
            .map(|j| {
                if a[0][j] == 0 {
                    return 0;
                }
                let minor: Vec<Vec<i128>> = a[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| *v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * det_cofactor(&minor)
            })
            .sum(),
    }
}

/// Binomial coefficient from Pascal's triangle.
pub fn binom(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![BigInt::from(1); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}

/// All permutations of `0..n`, Heap's algorithm.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

pub fn cycle_lengths(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out
}

pub fn mul_i64(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `prod (z^c - 1)`, ascending coefficients.
pub fn expand_cycles(cycles: &[usize]) -> Vec<i64> {
    cycles.iter().fold(vec![1], |acc, &c| {
        let mut f = vec![0; c + 1];
        f[0] = -1;
        f[c] = 1;
        mul_i64(&acc, &f)
    })
}

/// Monic degree `n`, coefficient of `z^i` is `+1` when bit `i` of `code` is set, else `-1`.
pub fn sign_coeffs(n: usize, code: u64) -> Vec<i64> {
    let mut c: Vec<i64> = (0..n).map(|i| if code >> i & 1 == 1 { 1 } else { -1 }).collect();
    c.push(1);
    c
}

pub fn eval(c: &[i64], x: i64) -> i64 {
    c.iter().rev().fold(0, |acc, v| acc * x + v)
}

/// Remainder of `f` modulo a monic `g`, in `i64`.
pub fn rem_monic(f: &[i64], g: &[i64]) -> Vec<i64> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (i, gi) in g.iter().enumerate() {
            r[shift + i] -= lead * gi;
        }
        r.pop();
    }
    r
}

/// Reducibility of a degree `<= 5` monic `+-1` polynomial by trial division.
///
/// A proper factor of smallest degree has degree at most 2, constant term
/// `+-1` and roots of modulus below 2.
pub fn small_sign_reducible(f: &[i64]) -> bool {
    let n = f.len() - 1;
    assert!(n <= 5);
    let divides = |g: &[i64]| rem_monic(f, g).iter().all(|&v| v == 0);
    if divides(&[1, 1]) || divides(&[-1, 1]) {
        return true;
    }
    if n < 4 {
        return false;
    }
    (-4..=4).any(|a| [1, -1].iter().any(|&b| divides(&[b, a, 1])))
}

/// Monic irreducible polynomials of degree `n` over `F_p` by sieving products.
pub fn ff_irreducible_bruteforce(p: u64, n: usize) -> u64 {
    let monic = |d: usize| -> Vec<Vec<u64>> {
        let count = p.pow(d as u32);
        (0..count)
            .map(|mut code| {
                let mut c: Vec<u64> = (0..d)
                    .map(|_| {
                        let v = code % p;
                        code /= p;
                        v
                    })
                    .collect();
                c.push(1);
                c
            })
            .collect()
    };
    let index = |c: &[u64]| c[..n].iter().rev().fold(0u64, |acc, v| acc * p + v) as usize;
    let mut reducible = vec![false; p.pow(n as u32) as usize];
    for d in 1..=n / 2 {
        let small = monic(d);
        let large = monic(n - d);
        for a in &small {
            for b in &large {
                let mut c = vec![0u64; n + 1];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        c[i + j] = (c[i + j] + x * y) % p;
                    }
                }
                reducible[index(&c)] = true;
            }
        }
    }
    reducible.iter().filter(|r| !**r).count() as u64
}

pub fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf29ce484222325u64, |h, b| (h ^ *b as u64).wrapping_mul(0x100000001b3))
}
