use std::fmt;

use serde::{Deserialize, Serialize};

/// A word in the reflection generators, zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|j| (j + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Normal form in the right-angled Coxeter group with commuting pairs
/// `commutes(i, j)`: cancel `jj` across commuting letters, then take the
/// lexicographically smallest reordering.
pub fn reduce(w: &Word, commutes: impl Fn(usize, usize) -> bool) -> Word {
    let mut stack: Vec<usize> = Vec::with_capacity(w.len());
    'letters: for &x in &w.0 {
        for p in (0..stack.len()).rev() {
            if stack[p] == x {
                stack.remove(p);
                continue 'letters;
            }
            if !commutes(stack[p], x) {
                break;
            }
        }
        stack.push(x);
    }
    let mut rest = stack;
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        // A letter may move to the front if it commutes with everything before it.
        let mut best: Option<usize> = None;
        for i in 0..rest.len() {
            if rest[..i].iter().all(|&y| commutes(y, rest[i]))
                && best.is_none_or(|b| rest[i] < rest[b])
            {
                best = Some(i);
            }
        }
        let b = best.expect("first letter is always free");
        out.push(rest.remove(b));
    }
    Word(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring_commutes(n: usize) -> impl Fn(usize, usize) -> bool {
        move |i, j| i != j && ((i + 1) % n == j || (j + 1) % n == i)
    }

    #[test]
    fn involution() {
        assert_eq!(reduce(&Word(vec![3, 3]), ring_commutes(6)), Word(vec![]));
    }

    #[test]
    fn commuting_swap() {
        assert_eq!(reduce(&Word(vec![1, 0]), ring_commutes(6)), Word(vec![0, 1]));
        assert_eq!(reduce(&Word(vec![3, 0]), ring_commutes(6)), Word(vec![3, 0]));
    }

    #[test]
    fn cancel_across_commuting() {
        assert_eq!(reduce(&Word(vec![0, 1, 0]), ring_commutes(6)), Word(vec![1]));
        assert_eq!(reduce(&Word(vec![0, 3, 0]), ring_commutes(6)), Word(vec![0, 3, 0]));
    }

    #[test]
    fn idempotent() {
        let c = ring_commutes(6);
        let w = Word(vec![4, 5, 0, 2, 1, 1, 3, 2, 5]);
        let r = reduce(&w, &c);
        assert_eq!(reduce(&r, &c), r);
    }
}
