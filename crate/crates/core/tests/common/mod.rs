//! Random instances and brute-force oracles shared by the integration tests.
//! None of the oracles call into the search code they check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use linkgroup::diagram::{PdCrossing, PdDocument};
use linkgroup::homology::IntegerMatrix;
use linkgroup::presentation::{GroupPresentation, Letter, Provenance, Word};
use linkgroup::quotients::FiniteGroup;

pub fn random_word<R: Rng>(rng: &mut R, gens: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| Letter::new(rng.gen_range(0..gens), rng.gen_bool(0.5)))
        .collect()
}

pub fn random_presentation<R: Rng>(rng: &mut R, max_gens: usize, max_rels: usize, max_len: usize) -> GroupPresentation {
    let gens = rng.gen_range(1..=max_gens);
    let rels = rng.gen_range(0..=max_rels);
    let names = (0..gens).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let words = (0..rels).map(|_| random_word(rng, gens, max_len)).collect();
    GroupPresentation::from_words(names, words, Provenance::Parsed).unwrap()
}

/// A structurally valid diagram: every arc of a multi-arc component ends at
/// a crossing under a randomly chosen arc; one-arc components either have no
/// crossing or a single kink.
pub fn random_diagram<R: Rng>(rng: &mut R, max_components: usize, max_arcs: usize) -> PdDocument {
    let count = rng.gen_range(1..=max_components);
    let mut components = Vec::new();
    let mut next = 0usize;
    for _ in 0..count {
        let len = rng.gen_range(1..=max_arcs);
        components.push(
            (0..len)
                .map(|_| {
                    next += 1;
                    format!("s{next}")
                })
                .collect::<Vec<_>>(),
        );
    }
    let all: Vec<String> = components.iter().flatten().cloned().collect();
    let mut crossings = Vec::new();
    for comp in &components {
        if comp.len() == 1 && rng.gen_bool(0.5) {
            continue;
        }
        for i in 0..comp.len() {
            crossings.push(PdCrossing {
                over: all.choose(rng).unwrap().clone(),
                under_in: comp[i].clone(),
                under_out: comp[(i + 1) % comp.len()].clone(),
                sign: if rng.gen_bool(0.5) { 1 } else { -1 },
            });
        }
    }
    crossings.shuffle(rng);
    PdDocument {
        name: String::new(),
        components,
        crossings,
    }
}

fn perm_mul(a: &[u32], b: &[u32]) -> Vec<u32> {
    // apply a, then b
    a.iter().map(|&x| b[x as usize]).collect()
}

fn perm_inv(a: &[u32]) -> Vec<u32> {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

fn closure_size(perms: &[Vec<u32>], degree: usize) -> usize {
    let id: Vec<u32> = (0..degree as u32).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(p) = stack.pop() {
        for g in perms {
            let q = perm_mul(&p, g);
            if seen.insert(q.clone()) {
                stack.push(q);
            }
        }
    }
    seen.len()
}

fn evaluates_to_identity(word: &Word, images: &[Vec<u32>], inverses: &[Vec<u32>], degree: usize) -> bool {
    let mut cur: Vec<u32> = (0..degree as u32).collect();
    for l in word.letters() {
        let p = if l.is_inverse() { &inverses[l.generator()] } else { &images[l.generator()] };
        cur = perm_mul(&cur, p);
    }
    cur.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

/// Every assignment of group elements to generators, checked directly with
/// permutation arithmetic.
pub fn naive_homs(p: &GroupPresentation, g: &FiniteGroup) -> (u64, u64) {
    let elems: Vec<Vec<u32>> = g.elements().iter().map(|e| e.images().to_vec()).collect();
    let inv: Vec<Vec<u32>> = elems.iter().map(|e| perm_inv(e)).collect();
    let n = p.generators().len();
    let words = p.relator_words();
    let (mut total, mut onto) = (0u64, 0u64);
    let mut idx = vec![0usize; n];
    loop {
        let images: Vec<Vec<u32>> = idx.iter().map(|&i| elems[i].clone()).collect();
        let inverses: Vec<Vec<u32>> = idx.iter().map(|&i| inv[i].clone()).collect();
        if words
            .iter()
            .all(|w| evaluates_to_identity(w, &images, &inverses, g.degree()))
        {
            total += 1;
            if closure_size(&images, g.degree()) == g.order() {
                onto += 1;
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == n {
                return (total, onto);
            }
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn all_perms(k: usize) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, left: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            prefix.push(x);
            go(prefix, left, out);
            prefix.pop();
            left.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..k as u32).collect(), &mut out);
    out
}

fn transitive(images: &[Vec<u32>], k: usize) -> bool {
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut stack = vec![0u32];
    while let Some(x) = stack.pop() {
        for p in images {
            for y in [p[x as usize], perm_inv(p)[x as usize]] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Index-`k` subgroups through transitive actions on `k` points: the total
/// is (#transitive actions) / (k-1)!, and conjugacy classes are the
/// orbits of actions under relabeling the points.
pub fn brute_low_index(p: &GroupPresentation, k: usize) -> (u64, u64) {
    let perms = all_perms(k);
    let n = p.generators().len();
    let words = p.relator_words();
    let mut actions = 0u64;
    let mut canon = BTreeSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let images: Vec<Vec<u32>> = idx.iter().map(|&i| perms[i].clone()).collect();
        let inverses: Vec<Vec<u32>> = images.iter().map(|e| perm_inv(e)).collect();
        if words.iter().all(|w| evaluates_to_identity(w, &images, &inverses, k)) && transitive(&images, k) {
            actions += 1;
            let form = perms
                .iter()
                .map(|c| {
                    let ci = perm_inv(c);
                    images.iter().map(|g| perm_mul(&perm_mul(&ci, g), c)).collect::<Vec<_>>()
                })
                .min()
                .unwrap();
            canon.insert(form);
        }
        let mut j = 0;
        loop {
            if j == n {
                let fact: u64 = (1..k as u64).product();
                return (canon.len() as u64, actions / fact);
            }
            idx[j] += 1;
            if idx[j] < perms.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize, bound: i64) -> IntegerMatrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let entries = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    IntegerMatrix::from_entries(rows, cols, entries)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
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
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k x k` minors, and the `k`-th factor is `d_k / d_{k-1}`. Zero factors
/// stand for rank deficiency.
pub fn minor_gcd_factors(a: &IntegerMatrix) -> Vec<BigInt> {
    let (m, n) = a.shape();
    let mut prev = BigInt::from(1);
    let mut out = Vec::new();
    for k in 1..=m.min(n) {
        let mut g = BigInt::zero();
        for rows in combinations(m, k) {
            for cols in combinations(n, k) {
                let entries = rows
                    .iter()
                    .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
                    .map(|(i, j)| a[(i, j)].clone())
                    .collect();
                g = g.gcd(&IntegerMatrix::from_entries(k, k, entries).determinant());
            }
        }
        if g.is_zero() {
            out.extend(std::iter::repeat_n(BigInt::zero(), m.min(n) - out.len()));
            return out;
        }
        out.push((&g / &prev).abs());
        prev = g;
    }
    out
}
