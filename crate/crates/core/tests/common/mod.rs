#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use qlogic::{Atom, Context, Logic};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// Every assignment of 0/1 to the atoms with exactly one true atom per
/// context, as bit strings over the sorted labels, in ascending order.
/// Exhaustive over all 2^n assignments.
pub fn brute_force_states(logic: &Logic) -> Vec<String> {
    let labels: Vec<&str> = logic.sorted_labels();
    let n = labels.len();
    assert!(n <= 24, "brute force is limited to 24 atoms");
    let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let masks: Vec<u32> =
        logic.contexts().iter().map(|c| c.members.iter().fold(0u32, |m, a| m | 1 << index[a.as_str()])).collect();
    let mut out = Vec::new();
    for bits in 0u32..(1 << n) {
        if masks.iter().all(|m| (bits & m).count_ones() == 1) {
            out.push((0..n).map(|i| if bits >> i & 1 == 1 { '1' } else { '0' }).collect());
        }
    }
    out.sort();
    out
}

/// Backtracking over the choice of the true atom in each context, taken
/// in reverse declaration order and without look-ahead. Returns the same
/// bit strings as [`brute_force_states`] but scales to the larger corpus
/// files.
pub fn per_context_states(logic: &Logic) -> Vec<String> {
    let labels: Vec<&str> = logic.sorted_labels();
    let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let contexts: Vec<Vec<usize>> =
        logic.contexts().iter().rev().map(|c| c.members.iter().map(|m| index[m.as_str()]).collect()).collect();
    let mut values: Vec<Option<bool>> = vec![None; labels.len()];
    let mut out = Vec::new();
    choose(&contexts, 0, &mut values, &mut out);
    out.sort();
    out
}

fn choose(contexts: &[Vec<usize>], k: usize, values: &mut Vec<Option<bool>>, out: &mut Vec<String>) {
    if k == contexts.len() {
        out.push(values.iter().map(|v| if v.expect("every atom is in a context") { '1' } else { '0' }).collect());
        return;
    }
    for &pick in &contexts[k] {
        let ok = contexts[k].iter().all(|&m| values[m].is_none_or(|v| v == (m == pick)));
        if !ok {
            continue;
        }
        let saved = values.clone();
        for &m in &contexts[k] {
            values[m] = Some(m == pick);
        }
        choose(contexts, k + 1, values, out);
        *values = saved;
    }
}

/// Builds an abstract logic from member index sets, keeping only atoms that
/// occur and dropping repeated member sets.
pub fn abstract_logic(dim: usize, names: &[String], sets: &[BTreeSet<usize>]) -> Option<Logic> {
    let mut seen = BTreeSet::new();
    let sets: Vec<&BTreeSet<usize>> = sets.iter().filter(|s| s.len() >= 2 && seen.insert((*s).clone())).collect();
    if sets.is_empty() {
        return None;
    }
    let used: BTreeSet<usize> = sets.iter().flat_map(|s| s.iter().copied()).collect();
    let atoms = used.iter().map(|&i| Atom::abstract_atom(names[i].clone())).collect();
    let contexts = sets
        .iter()
        .enumerate()
        .map(|(k, s)| Context::new(format!("k{k}"), s.iter().map(|&i| names[i].clone())))
        .collect();
    Some(Logic::new(dim, atoms, contexts).expect("generated logic is valid"))
}

fn atom_names(n: usize) -> Vec<String> {
    // mixed case and primes so label order differs from index order
    const BASE: [&str; 16] = ["q", "B", "x'", "a", "Z", "m", "c2", "K", "k", "E'", "e", "y_1", "H", "b", "p.0", "A"];
    (0..n).map(|i| BASE[i % BASE.len()].to_string()).collect()
}

/// Random abstract logics with at most 16 atoms in dimension 3 or 4.
pub fn random_logic() -> impl Strategy<Value = Logic> {
    (3usize..=4, 3usize..=16)
        .prop_flat_map(|(d, n)| {
            (Just(d), Just(n), prop::collection::vec(prop::collection::btree_set(0..n, 2..=d), 1..=9))
        })
        .prop_filter_map("needs a context", |(d, n, sets)| abstract_logic(d, &atom_names(n), &sets))
}

/// Random logic of `k` contexts of size 4 (dimension 4) in which every atom
/// lies in exactly `s` contexts. Returns `None` when the random grouping
/// hits a repeated member or a repeated context too often.
pub fn regular_logic(k: usize, s: usize, seed: u64) -> Option<Logic> {
    assert_eq!(k * 4 % s, 0);
    let n = k * 4 / s;
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut rng = StdRng::seed_from_u64(seed);
    'attempt: for _ in 0..500 {
        let mut slots: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, s)).collect();
        slots.shuffle(&mut rng);
        let mut sets = Vec::new();
        for chunk in slots.chunks(4) {
            let set: BTreeSet<usize> = chunk.iter().copied().collect();
            if set.len() != 4 || sets.contains(&set) {
                continue 'attempt;
            }
            sets.push(set);
        }
        if rng.gen_bool(0.5) {
            sets.reverse();
        }
        return abstract_logic(4, &names, &sets);
    }
    None
}

pub fn shuffled(logic: &Logic, seed: u64) -> Logic {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut atoms = logic.atoms().to_vec();
    let mut contexts = logic.contexts().to_vec();
    atoms.shuffle(&mut rng);
    contexts.shuffle(&mut rng);
    for c in &mut contexts {
        c.members.shuffle(&mut rng);
    }
    Logic::new(logic.dimension(), atoms, contexts).expect("permutation keeps validity")
}

/// `m v` for a row-major `d`×`d` matrix `m`.
pub fn apply(m: &[f64], v: &[f64]) -> Vec<f64> {
    let d = v.len();
    (0..d).map(|i| (0..d).map(|j| m[i * d + j] * v[j]).sum()).collect()
}

/// (â·b̂)² / d, the closed form for the maximally entangled state.
pub fn closed_form(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    let c = dot / (na * nb);
    c * c / a.len() as f64
}

/// Independent evaluation of ⟨ψ|P_a⊗P_b|ψ⟩ as a d²-dimensional matrix
/// product, with ψ = (1/√d) Σ |ii⟩.
pub fn kron_oracle(a: &[f64], b: &[f64]) -> f64 {
    use nalgebra::{DMatrix, DVector};
    let d = a.len();
    let ua = DVector::from_column_slice(a).normalize();
    let ub = DVector::from_column_slice(b).normalize();
    let pa = &ua * ua.transpose();
    let pb = &ub * ub.transpose();
    let big: DMatrix<f64> = pa.kronecker(&pb);
    let mut psi = DVector::zeros(d * d);
    for i in 0..d {
        psi[i * d + i] = 1.0 / (d as f64).sqrt();
    }
    (psi.transpose() * big * &psi)[(0, 0)]
}

/// Random orthogonal matrix (row-major), the Q factor of a matrix with
/// uniform entries.
pub fn random_orthogonal(d: usize, rng: &mut impl Rng) -> Vec<f64> {
    let m = nalgebra::DMatrix::from_fn(d, d, |_, _| rng.gen_range(-1.0..1.0));
    let q = m.qr().q();
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            out.push(q[(i, j)]);
        }
    }
    out
}

/// Corpus files in which every atom carries a ray.
pub fn realized_corpus() -> Vec<(&'static str, Logic)> {
    qlogic::corpus::ALL
        .iter()
        .map(|(name, text)| (*name, qlogic::parse_logic(text).expect("corpus parses")))
        .filter(|(_, l)| l.is_realized())
        .collect()
}

pub fn seed_rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Elements of ℚ(√2) with small numerators and denominators.
pub fn quad() -> impl Strategy<Value = qlogic::Quad> {
    (-40i64..=40, 1i64..=12, -40i64..=40, 1i64..=12).prop_map(|(a, b, c, d)| qlogic::Quad::from_ratios(a, b, c, d))
}

/// The field axioms for one triple; `Err` names the first that fails.
pub fn field_axioms(a: &qlogic::Quad, b: &qlogic::Quad, c: &qlogic::Quad) -> Result<(), &'static str> {
    use qlogic::Quad;
    let checks: [(&str, bool); 9] = [
        ("additive associativity", &(a + b) + c == a + &(b + c)),
        ("multiplicative associativity", &(a * b) * c == a * &(b * c)),
        ("additive commutativity", a + b == b + a),
        ("multiplicative commutativity", a * b == b * a),
        ("distributivity", a * &(b + c) == &(a * b) + &(a * c)),
        ("additive identity", a + &Quad::zero() == *a),
        ("multiplicative identity", a * &Quad::one() == *a),
        ("additive inverse", (a + &(-a.clone())).is_zero()),
        ("subtraction", &(a - b) + b == *a),
    ];
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(name);
    }
    if a.is_zero() {
        if a.inverse().is_ok() {
            return Err("zero has no inverse");
        }
    } else if a * &a.inverse().map_err(|_| "inverse")? != Quad::one() {
        return Err("multiplicative inverse");
    }
    Ok(())
}
