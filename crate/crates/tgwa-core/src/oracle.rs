//! Brute-force reference implementations used by the test suites. Nothing
//! in the engine proper calls into this module.
//!
//! The breadth-first reducer applies the defining relations in every
//! possible order and position, tracking the ring coefficient attached to
//! each intermediate word. Two facts are checked along the way: no word is
//! ever reached with two different coefficients (strategy independence),
//! and degree-zero inputs reach the empty word.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use crate::poly::Poly;
use crate::tgw::{word_degree, Gen, Letter, TgwDatum};

/// Reduces a degree-zero word to its ring value by exhaustive breadth-first
/// relation application. Returns an error description when two rewrite paths
/// disagree or the identity monomial is never reached.
pub fn bfs_reduce_degree_zero(
    datum: &TgwDatum,
    coeff: &Poly,
    word: &[Letter],
) -> Result<Poly, String> {
    let rank = datum.rank();
    let deg = word_degree(rank, word);
    if deg.iter().any(|&g| g != 0) {
        return Err("oracle input must have degree zero".to_string());
    }
    if coeff.is_zero() {
        return Ok(Poly::zero(datum.nvars()));
    }
    let mut seen: BTreeMap<Vec<Letter>, Poly> = BTreeMap::new();
    let mut queue: VecDeque<Vec<Letter>> = VecDeque::new();
    seen.insert(word.to_vec(), coeff.clone());
    queue.push_back(word.to_vec());
    let push_left = |c: &Poly, w: &[Letter], pos: usize, r: &Poly| -> Poly {
        let g = word_degree(rank, &w[..pos]);
        c * &datum.sigma_apply(&g, r)
    };
    while let Some(w) = queue.pop_front() {
        let c = seen.get(&w).unwrap().clone();
        for p in 0..w.len().saturating_sub(1) {
            let (l, r) = (w[p], w[p + 1]);
            let next: Option<(Vec<Letter>, Poly)> = match (l.gen, r.gen) {
                (Gen::X, Gen::Y) if l.idx == r.idx => {
                    let mut nw = w.clone();
                    nw.drain(p..p + 2);
                    let s = datum.sigma[l.idx].apply(&datum.t[l.idx]);
                    Some((nw.clone(), push_left(&c, &nw, p, &s)))
                }
                (Gen::X, Gen::Y) => {
                    let mut nw = w.clone();
                    nw.swap(p, p + 1);
                    Some((nw, c.scale(&datum.mu[l.idx][r.idx])))
                }
                (Gen::Y, Gen::X) if l.idx == r.idx => {
                    let mut nw = w.clone();
                    nw.drain(p..p + 2);
                    Some((nw.clone(), push_left(&c, &nw, p, &datum.t[l.idx])))
                }
                (Gen::Y, Gen::X) => {
                    let mut nw = w.clone();
                    nw.swap(p, p + 1);
                    Some((nw, c.scale(&datum.mu[r.idx][l.idx].clone().recip())))
                }
                _ => None,
            };
            if let Some((nw, nc)) = next {
                match seen.get(&nw) {
                    Some(old) => {
                        if *old != nc {
                            return Err(format!(
                                "conflicting coefficients for {:?}: two rewrite paths disagree",
                                nw
                            ));
                        }
                    }
                    None => {
                        seen.insert(nw.clone(), nc);
                        queue.push_back(nw);
                    }
                }
            }
        }
    }
    seen.remove(&Vec::new())
        .ok_or_else(|| "empty word unreachable from degree-zero input".to_string())
}
