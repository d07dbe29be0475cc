//! Multi-indices near the diagonal and on the step-line.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{ParamSystem, Setting};

/// A composition n (head) with an optional m part (tail, Laguerre setting).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndex {
    head: Vec<usize>,
    tail: Option<Vec<usize>>,
}

/// Classification flags for a multi-index.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Classification {
    pub near_diagonal: bool,
    pub step_line: bool,
    pub tail_step_line: Option<bool>,
}

impl MultiIndex {
    pub fn new(head: Vec<usize>) -> Self {
        Self { head, tail: None }
    }

    pub fn with_tail(head: Vec<usize>, tail: Vec<usize>) -> Self {
        Self {
            head,
            tail: Some(tail),
        }
    }

    pub fn head(&self) -> &[usize] {
        &self.head
    }

    pub fn tail(&self) -> Option<&[usize]> {
        self.tail.as_deref()
    }

    /// All components, head then tail.
    pub fn all(&self) -> Vec<usize> {
        let mut v = self.head.clone();
        if let Some(t) = &self.tail {
            v.extend_from_slice(t);
        }
        v
    }

    /// Total size |n| (+ |m|).
    pub fn size(&self) -> usize {
        self.all().iter().sum()
    }

    pub fn head_size(&self) -> usize {
        self.head.iter().sum()
    }

    /// The unique step-line multi-index of size k in r components.
    pub fn canonical_stepline(r: usize, k: usize) -> Self {
        assert!(r >= 1);
        let base = k / r;
        let extra = k % r;
        Self::new((0..r).map(|i| base + usize::from(i < extra)).collect())
    }

    pub fn classify(&self) -> Classification {
        let all = self.all();
        Classification {
            near_diagonal: near_diagonal(&all),
            step_line: step_line(&all),
            tail_step_line: self.tail.as_deref().map(step_line),
        }
    }

    /// Checks the restriction required by the given system: components match
    /// the weight count, the full index is near the diagonal, and in the
    /// Laguerre setting the tail is on the step-line.
    pub fn validate_for(&self, sys: &ParamSystem) -> Result<()> {
        let fail = |reason: &str| {
            Err(Error::InvalidMultiIndex {
                index: format!("{:?}", self.all()),
                reason: reason.into(),
            })
        };
        match sys.setting() {
            Setting::Laguerre => {
                if self.head.len() != sys.num_w() {
                    return fail("head length must equal the number of w weights (q)");
                }
                match &self.tail {
                    None => return fail("Laguerre indices need a tail part for the v weights"),
                    Some(t) => {
                        if t.len() != sys.num_v() {
                            return fail("tail length must equal p - q");
                        }
                        if !step_line(t) {
                            return fail("tail must be on the step-line");
                        }
                    }
                }
            }
            Setting::Jacobi | Setting::Bessel => {
                if self.tail.is_some() {
                    return fail("tail part only exists in the Laguerre setting");
                }
                if self.head.len() != sys.r() {
                    return fail("index length must equal the number of weights");
                }
            }
        }
        if !near_diagonal(&self.all()) {
            return fail("index is not near the diagonal");
        }
        Ok(())
    }
}

fn near_diagonal(v: &[usize]) -> bool {
    match (v.iter().max(), v.iter().min()) {
        (Some(mx), Some(mn)) => mx - mn <= 1,
        _ => true,
    }
}

fn step_line(v: &[usize]) -> bool {
    if v.is_empty() {
        return true;
    }
    let dec = v.windows(2).all(|w| w[0] >= w[1]);
    dec && v[v.len() - 1] + 1 >= v[0]
}

/// Enumerates every valid multi-index of the given total size for the system.
pub fn valid_indices_of_size(sys: &ParamSystem, size: usize) -> Vec<MultiIndex> {
    let r = sys.r();
    let mut out = Vec::new();
    for comp in near_diagonal_compositions(r, size) {
        let mi = match sys.setting() {
            Setting::Laguerre => {
                let (h, t) = comp.split_at(sys.num_w());
                MultiIndex::with_tail(h.to_vec(), t.to_vec())
            }
            _ => MultiIndex::new(comp),
        };
        if mi.validate_for(sys).is_ok() {
            out.push(mi);
        }
    }
    out
}

fn near_diagonal_compositions(r: usize, size: usize) -> Vec<Vec<usize>> {
    // near-diagonal entries all equal floor(size/r) or one more; the sum
    // fixes how many of the larger value appear, so only placement varies
    subset_patterns(r, size, size / r)
}

fn subset_patterns(r: usize, size: usize, base: usize) -> Vec<Vec<usize>> {
    // entries in {base, base+1} summing to size
    let total_base = base * r;
    if size < total_base || size > total_base + r {
        return Vec::new();
    }
    let ones = size - total_base;
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..ones).collect();
    loop {
        let mut v = vec![base; r];
        for &i in &idx {
            v[i] += 1;
        }
        out.push(v);
        // next combination
        let mut i = ones;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + r - ones {
                idx[i] += 1;
                for j in i + 1..ones {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_matches_definitions() {
        let c = MultiIndex::new(vec![2, 1, 2]).classify();
        assert!(c.near_diagonal && !c.step_line);
        let c = MultiIndex::new(vec![2, 2, 1]).classify();
        assert!(c.near_diagonal && c.step_line);
        let c = MultiIndex::new(vec![3, 1]).classify();
        assert!(!c.near_diagonal);
    }

    #[test]
    fn canonical_stepline_fills_left_to_right() {
        assert_eq!(
            MultiIndex::canonical_stepline(3, 4),
            MultiIndex::new(vec![2, 1, 1])
        );
        assert_eq!(
            MultiIndex::canonical_stepline(2, 6),
            MultiIndex::new(vec![3, 3])
        );
    }

    #[test]
    fn laguerre_validation() {
        let sys = ParamSystem::from_i64(&[0, 0, 0], &[1]).unwrap();
        let good = MultiIndex::with_tail(vec![2], vec![1, 1]);
        assert!(good.validate_for(&sys).is_ok());
        let bad_tail = MultiIndex::with_tail(vec![2], vec![1, 2]);
        assert!(bad_tail.validate_for(&sys).is_err());
        let missing_tail = MultiIndex::new(vec![2]);
        assert!(missing_tail.validate_for(&sys).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let sys = ParamSystem::from_i64(&[0, 0], &[0, 1]).unwrap();
        // r=2, size 3: (2,1) and (1,2)
        assert_eq!(valid_indices_of_size(&sys, 3).len(), 2);
        // size 4: only (2,2); (3,1) is not near-diagonal
        assert_eq!(valid_indices_of_size(&sys, 4).len(), 1);
    }
}
