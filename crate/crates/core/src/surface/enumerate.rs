//! Primitive hyperbolic conjugacy classes of Gamma(2) up to a norm cutoff.
//!
//! Hyperbolic classes of PSL2(Z) are enumerated first, as cyclic words in the
//! positive generators R = [[1,1],[0,1]] and L = [[1,0],[1,1]] (every such class
//! has a positive representative that is unique up to rotation). Classes lying
//! in the normal subgroup Gamma(2) split into Gamma(2)-classes under
//! conjugation by the six coset representatives. Each piece is converted to
//! its canonical A/B word, and proper powers are discarded.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::moebius::{log_norm_from_trace, max_trace_for_norm, norm_from_trace, Moebius};
use super::words::CyclicWord;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimitiveClass {
    pub word: CyclicWord,
    /// Trace of the word's matrix (sign as multiplied out in SL2).
    pub trace: i64,
    pub norm: f64,
    pub log_norm: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnumerationLimits {
    /// Upper bound on visited positive words.
    pub max_nodes: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_nodes: 4_000_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Enumeration {
    pub max_norm: f64,
    /// Sorted by (|trace|, word).
    pub classes: Vec<PrimitiveClass>,
    pub nodes_visited: u64,
}

// positive matrix as [a, b, c, d]
type M4 = [i64; 4];

const R_: M4 = [1, 1, 0, 1];
const L_: M4 = [1, 0, 1, 1];

fn mul4(p: &M4, q: &M4) -> M4 {
    [
        p[0] * q[0] + p[1] * q[2],
        p[0] * q[1] + p[1] * q[3],
        p[2] * q[0] + p[3] * q[2],
        p[2] * q[1] + p[3] * q[3],
    ]
}

/// Whether `runs` (even length) is its own least rotation by pairs.
fn is_least_rotation(runs: &[u32]) -> bool {
    let n = runs.len();
    for r in (2..n).step_by(2) {
        for i in 0..n {
            let x = runs[(i + r) % n];
            let y = runs[i];
            if x < y {
                return false;
            }
            if x > y {
                break;
            }
        }
    }
    true
}

struct Search<'a> {
    t_max: i64,
    nodes: u64,
    flushed: &'a AtomicU64,
    abort: &'a AtomicBool,
    limit: u64,
    found: Vec<M4>,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) {
            let total = self.flushed.fetch_add(4096, Ordering::Relaxed) + 4096;
            if total > self.limit {
                self.abort.store(true, Ordering::Relaxed);
            }
        }
        !self.abort.load(Ordering::Relaxed) || !self.nodes.is_multiple_of(4096)
    }

    /// Extends `m` by a run of `letter` (true = L) of every admissible length.
    fn extend(&mut self, m: M4, runs: &mut Vec<u32>, letter_l: bool) {
        let g = if letter_l { L_ } else { R_ };
        let mut cur = m;
        let mut n = 0u32;
        loop {
            cur = mul4(&cur, &g);
            n += 1;
            if cur.iter().any(|&e| e > self.t_max) {
                break;
            }
            if !self.tick() {
                return;
            }
            runs.push(n);
            if letter_l {
                let trace = cur[0] + cur[3];
                if trace <= self.t_max
                    && cur[1] % 2 == 0
                    && cur[2] % 2 == 0
                    && is_least_rotation(runs)
                {
                    self.found.push(cur);
                }
            }
            self.extend(cur, runs, !letter_l);
            runs.pop();
        }
    }
}

fn coset_reps() -> [Moebius; 6] {
    let r = Moebius {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
    };
    let l = Moebius {
        a: 1,
        b: 0,
        c: 1,
        d: 1,
    };
    let s = Moebius {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };
    // products of small matrices cannot overflow
    let rs = Moebius {
        a: 1,
        b: -1,
        c: 1,
        d: 0,
    };
    let sr = Moebius {
        a: 0,
        b: -1,
        c: 1,
        d: 1,
    };
    debug_assert_eq!(r.mul(&s).ok(), Some(rs));
    debug_assert_eq!(s.mul(&r).ok(), Some(sr));
    [Moebius::IDENTITY, r, l, s, rs, sr]
}

/// Gamma(2) classes inside the PSL2(Z) class of `m`.
fn split_class(m: &M4) -> Result<Vec<CyclicWord>> {
    let mm = Moebius {
        a: m[0] as i128,
        b: m[1] as i128,
        c: m[2] as i128,
        d: m[3] as i128,
    };
    let mut out = BTreeSet::new();
    for g in coset_reps() {
        let p = mm.conjugate_by(&g)?;
        let w = CyclicWord::from_matrix(&p)?.canonical();
        if w.is_primitive() {
            out.insert(w);
        }
    }
    Ok(out.into_iter().collect())
}

/// Enumerates every primitive hyperbolic class of Gamma(2) with norm <= max_norm.
pub fn enumerate_primitive_classes(
    max_norm: f64,
    limits: &EnumerationLimits,
) -> Result<Enumeration> {
    if !(max_norm > 1.0) || !max_norm.is_finite() {
        return Err(Error::domain(format!(
            "max_norm must exceed 1, got {max_norm}"
        )));
    }
    let t_max = max_trace_for_norm(max_norm);
    if t_max > 3_000_000_000 {
        return Err(Error::Budget(format!("trace bound {t_max} too large")));
    }
    // the positive-word tree has on the order of t_max^2 nodes
    let estimate = (t_max as f64).powi(2);
    if estimate > limits.max_nodes as f64 {
        return Err(Error::Budget(format!(
            "about {estimate:.3e} words needed, limit {}",
            limits.max_nodes
        )));
    }
    if t_max == 0 {
        return Ok(Enumeration {
            max_norm,
            classes: Vec::new(),
            nodes_visited: 0,
        });
    }
    let t = t_max as i64;
    let flushed = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    // seeds: first run R^n1, second run L^m1
    let mut seeds: Vec<(u32, u32)> = Vec::new();
    let mut r = [1i64, 0, 0, 1];
    for n1 in 1..=t as u32 {
        r = mul4(&r, &R_);
        if r.iter().any(|&e| e > t) {
            break;
        }
        let mut m = r;
        for m1 in 1..=t as u32 {
            m = mul4(&m, &L_);
            if m.iter().any(|&e| e > t) {
                break;
            }
            seeds.push((n1, m1));
        }
    }
    let results: Vec<(Vec<M4>, u64)> = seeds
        .par_iter()
        .map(|&(n1, m1)| {
            let mut s = Search {
                t_max: t,
                nodes: 0,
                flushed: &flushed,
                abort: &abort,
                limit: limits.max_nodes,
                found: Vec::new(),
            };
            let mut m = [1i64, 0, 0, 1];
            for _ in 0..n1 {
                m = mul4(&m, &R_);
            }
            for _ in 0..m1 {
                m = mul4(&m, &L_);
            }
            let mut runs = vec![n1, m1];
            if m[0] + m[3] <= t && m[1] % 2 == 0 && m[2] % 2 == 0 {
                s.found.push(m);
            }
            s.extend(m, &mut runs, false);
            (s.found, s.nodes + 1)
        })
        .collect();
    if abort.load(Ordering::Relaxed) {
        return Err(Error::Budget(format!(
            "word frontier exceeded {} nodes before exhausting norms <= {max_norm}",
            limits.max_nodes
        )));
    }
    let nodes_visited = results.iter().map(|r| r.1).sum::<u64>() + seeds.len() as u64;
    let reps: Vec<M4> = results.into_iter().flat_map(|r| r.0).collect();
    let mut classes: Vec<PrimitiveClass> = reps
        .par_iter()
        .map(|m| -> Result<Vec<PrimitiveClass>> {
            let tr = (m[0] + m[3]) as u64;
            let norm = norm_from_trace(tr);
            let log_norm = log_norm_from_trace(tr);
            split_class(m)?
                .into_iter()
                .map(|w| {
                    let trace = w.to_matrix()?.trace() as i64;
                    Ok(PrimitiveClass {
                        word: w,
                        trace,
                        norm,
                        log_norm,
                    })
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    classes.sort_by(|a, b| {
        a.trace
            .unsigned_abs()
            .cmp(&b.trace.unsigned_abs())
            .then_with(|| a.word.syllables().cmp(&b.word.syllables()))
            .then_with(|| a.word.cmp(&b.word))
    });
    classes.dedup_by(|a, b| a.word == b.word);
    Ok(Enumeration {
        max_norm,
        classes,
        nodes_visited,
    })
}

impl Enumeration {
    /// Every stored word is primitive.
    pub fn check_primitivity(&self) -> Result<()> {
        match self.classes.iter().find(|c| !c.word.is_primitive()) {
            Some(c) => Err(Error::Malformed(format!("non-primitive word {}", c.word))),
            None => Ok(()),
        }
    }

    /// Every class has its inverse class in the list, at the same norm.
    pub fn check_inverse_pairing(&self) -> Result<()> {
        let words: std::collections::HashSet<&CyclicWord> =
            self.classes.iter().map(|c| &c.word).collect();
        for c in &self.classes {
            let inv = c.word.inverse();
            if !words.contains(&inv) {
                return Err(Error::Malformed(format!("inverse of {} missing", c.word)));
            }
        }
        Ok(())
    }

    /// Trace of every rotation of every word agrees with the stored trace.
    pub fn check_conjugation_invariance(&self) -> Result<()> {
        for c in &self.classes {
            for r in c.word.rotations() {
                if r.to_matrix()?.trace() as i64 != c.trace {
                    return Err(Error::Malformed(format!(
                        "rotation of {} changes trace",
                        c.word
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// All cyclically reduced words with at most `max_letters` letters whose
    /// trace is within the cutoff, canonicalized.
    fn brute_force(max_norm: f64, max_letters: u64) -> HashSet<CyclicWord> {
        let t_max = max_trace_for_norm(max_norm) as i128;
        let mut out = HashSet::new();
        let ml = max_letters as i64;
        let exps: Vec<i64> = (-ml..=ml).filter(|&e| e != 0).collect();
        fn rec(
            prefix: &mut Vec<i64>,
            used: u64,
            max_letters: u64,
            exps: &[i64],
            t_max: i128,
            out: &mut HashSet<CyclicWord>,
        ) {
            if prefix.len() >= 2 && prefix.len().is_multiple_of(2) {
                let w = CyclicWord(prefix.clone());
                let t = w.to_matrix().unwrap().trace().abs();
                if t > 2 && t <= t_max && w.is_primitive() {
                    out.insert(w.canonical());
                }
            }
            for &e in exps {
                let u = used + e.unsigned_abs();
                if u > max_letters {
                    continue;
                }
                prefix.push(e);
                rec(prefix, u, max_letters, exps, t_max, out);
                prefix.pop();
            }
        }
        rec(&mut Vec::new(), 0, max_letters, &exps, t_max, &mut out);
        out
    }

    #[test]
    fn matches_brute_force_on_small_cutoff() {
        let x = 120.0;
        let e = enumerate_primitive_classes(x, &EnumerationLimits::default()).unwrap();
        let got: HashSet<CyclicWord> = e.classes.iter().map(|c| c.word.clone()).collect();
        let want = brute_force(x, 7);
        assert_eq!(got, want);
    }

    #[test]
    fn ab_class_and_invariants() {
        let e = enumerate_primitive_classes(35.0, &EnumerationLimits::default()).unwrap();
        let ab = CyclicWord::parse("AB").unwrap().canonical();
        let c = e.classes.iter().find(|c| c.word == ab).expect("AB present");
        assert_eq!(c.trace, 6);
        assert!((c.norm - (17.0 + 12.0 * 2f64.sqrt())).abs() < 1e-12);
        let inv = ab.inverse();
        assert!(e.classes.iter().any(|c| c.word == inv));
        e.check_primitivity().unwrap();
        e.check_inverse_pairing().unwrap();
        e.check_conjugation_invariance().unwrap();
    }

    #[test]
    fn monotone_in_cutoff() {
        let small = enumerate_primitive_classes(400.0, &EnumerationLimits::default()).unwrap();
        let big = enumerate_primitive_classes(900.0, &EnumerationLimits::default()).unwrap();
        let bigset: HashSet<&CyclicWord> = big.classes.iter().map(|c| &c.word).collect();
        assert!(small.classes.iter().all(|c| bigset.contains(&c.word)));
        let below = big.classes.iter().filter(|c| c.norm <= 400.0).count();
        assert_eq!(below, small.classes.len());
    }

    #[test]
    fn budget_and_empty() {
        let e = enumerate_primitive_classes(1.5, &EnumerationLimits::default()).unwrap();
        assert!(e.classes.is_empty());
        let tight = EnumerationLimits { max_nodes: 10 };
        assert!(matches!(
            enumerate_primitive_classes(1e4, &tight),
            Err(Error::Budget(_))
        ));
    }
}
