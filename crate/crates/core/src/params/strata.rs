use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num::rational::Rational64;
use num::traits::Zero;
use serde::{Serialize, Serializer};

use super::kappa::Kappa;
use super::weyl::{act_rat, check_unambiguous, cyc_rest, Gen, WeylWord};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StratumLabel {
    Empty,
    A1,
    A2,
    /// Index `i` names the pairing `{{i,4},{j,k}}` of the four leaves.
    A1x2(u8),
    A3(u8),
    A1x3,
    D4,
    A1x4,
}

impl StratumLabel {
    /// Number of singular points of the cubic surface (one per Dynkin component).
    pub fn singular_count(&self) -> usize {
        match self {
            StratumLabel::Empty => 0,
            StratumLabel::A1 | StratumLabel::A2 | StratumLabel::A3(_) | StratumLabel::D4 => 1,
            StratumLabel::A1x2(_) => 2,
            StratumLabel::A1x3 => 3,
            StratumLabel::A1x4 => 4,
        }
    }

    /// Nodes of the affine diagram that vanish in the normal form.
    pub fn pattern(&self) -> Vec<usize> {
        match *self {
            StratumLabel::Empty => vec![],
            StratumLabel::A1 => vec![0],
            StratumLabel::A2 => vec![0, 3],
            StratumLabel::A1x2(i) => {
                let (j, k) = cyc_rest(i as usize);
                vec![j, k]
            }
            StratumLabel::A3(i) => {
                let (j, k) = cyc_rest(i as usize);
                vec![0, j, k]
            }
            StratumLabel::A1x3 => vec![1, 2, 3],
            StratumLabel::D4 => vec![0, 1, 2, 3],
            StratumLabel::A1x4 => vec![1, 2, 3, 4],
        }
    }

    pub fn all_aligned() -> [StratumLabel; 8] {
        [
            StratumLabel::Empty,
            StratumLabel::A1,
            StratumLabel::A2,
            StratumLabel::A1x2(3),
            StratumLabel::A3(3),
            StratumLabel::A1x3,
            StratumLabel::D4,
            StratumLabel::A1x4,
        ]
    }

    /// A fixed rational representative of each normal form, aligned with
    /// the index triple `(i, j, k) = (3, 1, 2)`.
    pub fn sample_kappa(&self) -> Kappa {
        let r = |n, d| Rational64::new(n, d);
        let z = Rational64::zero();
        let k = match *self {
            StratumLabel::Empty => [r(1, 5), r(1, 7), r(1, 11), r(1, 13)],
            StratumLabel::A1 => [r(1, 5), r(1, 7), r(1, 11), r(218, 385)],
            StratumLabel::A2 => [r(1, 5), r(1, 7), z, r(23, 35)],
            StratumLabel::A1x2(i) => {
                let mut k = [z; 4];
                k[i as usize - 1] = r(1, 5);
                k[3] = r(1, 7);
                k
            }
            StratumLabel::A3(i) => {
                let mut k = [z; 4];
                k[i as usize - 1] = r(1, 5);
                k[3] = r(4, 5);
                k
            }
            StratumLabel::A1x3 => [z, z, z, r(1, 5)],
            StratumLabel::D4 => [z, z, z, r(1, 1)],
            StratumLabel::A1x4 => [z, z, z, z],
        };
        Kappa::from_k1234(k)
    }
}

impl fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratumLabel::Empty => write!(f, "Empty"),
            StratumLabel::A1 => write!(f, "A1"),
            StratumLabel::A2 => write!(f, "A2"),
            StratumLabel::A1x2(i) => write!(f, "A1x2({i})"),
            StratumLabel::A3(i) => write!(f, "A3({i})"),
            StratumLabel::A1x3 => write!(f, "A1x3"),
            StratumLabel::D4 => write!(f, "D4"),
            StratumLabel::A1x4 => write!(f, "A1x4"),
        }
    }
}

impl Serialize for StratumLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stratum {
    pub label: StratumLabel,
    pub normal_form: Kappa,
    /// Word taking the input to `normal_form`.
    pub word: WeylWord,
}

fn zero_set(k: &[Rational64; 5]) -> BTreeSet<usize> {
    (0..5).filter(|&i| k[i].is_zero()).collect()
}

fn label_from_zero_set(z: &BTreeSet<usize>) -> Result<StratumLabel> {
    let has0 = z.contains(&0);
    let leaves: Vec<usize> = z.iter().copied().filter(|&i| i != 0).collect();
    let pair_label = || -> u8 {
        if leaves.contains(&4) {
            leaves.iter().copied().find(|&l| l != 4).unwrap() as u8
        } else {
            (1..=3).find(|l| !leaves.contains(l)).unwrap() as u8
        }
    };
    Ok(match (has0, leaves.len()) {
        (false, 0) => StratumLabel::Empty,
        (true, 0) | (false, 1) => StratumLabel::A1,
        (true, 1) => StratumLabel::A2,
        (false, 2) => StratumLabel::A1x2(pair_label()),
        (true, 2) => StratumLabel::A3(pair_label()),
        (false, 3) => StratumLabel::A1x3,
        (true, 3) => StratumLabel::D4,
        (false, 4) => StratumLabel::A1x4,
        _ => return Err(Error::Inconsistent(format!("zero set {z:?} in the closed alcove"))),
    })
}

/// Moves a real rational point into the closed fundamental alcove
/// (all simple-root coordinates nonnegative).
pub fn reduce_to_alcove(k: &[Rational64; 5]) -> Result<([Rational64; 5], WeylWord)> {
    let mut cur = *k;
    let mut word = Vec::new();
    for _ in 0..100_000 {
        match (0..5).find(|&i| cur[i] < Rational64::zero()) {
            None => return Ok((cur, word)),
            Some(i) => {
                let g = Gen::Refl(i as u8);
                cur = act_rat(g, cur);
                word.push(g);
            }
        }
    }
    Err(Error::Inconsistent("alcove reduction did not terminate".into()))
}

fn search_pattern(start: [Rational64; 5], pattern: &[usize]) -> Result<([Rational64; 5], WeylWord)> {
    let gens: Vec<Gen> = (0..5).map(Gen::Refl).chain((1..=3).map(Gen::Klein)).collect();
    let mut seen: HashSet<[Rational64; 5]> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start);
    queue.push_back((start, Vec::new()));
    while let Some((k, w)) = queue.pop_front() {
        if pattern.iter().all(|&i| k[i].is_zero()) {
            return Ok((k, w));
        }
        if w.len() >= 4 {
            continue;
        }
        for g in &gens {
            let n = act_rat(*g, k);
            if seen.insert(n) {
                let mut w2 = w.clone();
                w2.push(*g);
                queue.push_back((n, w2));
            }
        }
    }
    Err(Error::Inconsistent(format!("no normal form with zeros at {pattern:?}")))
}

/// Stratum label, a normal-form representative and the word reaching it.
pub fn classify_stratum(k: &Kappa) -> Result<Stratum> {
    let Some(r) = k.exact() else {
        check_unambiguous(k)?;
        return Ok(Stratum { label: StratumLabel::Empty, normal_form: k.clone(), word: vec![] });
    };
    let (alc, mut word) = reduce_to_alcove(r)?;
    let label = label_from_zero_set(&zero_set(&alc))?;
    let (nf, tail) = search_pattern(alc, &label.pattern())?;
    word.extend(tail);
    Ok(Stratum { label, normal_form: Kappa::rational(nf)?, word })
}
