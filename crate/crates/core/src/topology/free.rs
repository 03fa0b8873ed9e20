use std::fmt;

use rayon::prelude::*;

/// A word in the free group on `a, b, …`: letter `k > 0` is the `k`-th
/// generator and `-k` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord(pub Vec<i32>);

pub fn free_reduce(w: &FreeWord) -> FreeWord {
    let mut out: Vec<i32> = Vec::with_capacity(w.0.len());
    for &x in &w.0 {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    FreeWord(out)
}

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    pub fn gen(k: usize) -> Self {
        FreeWord(vec![k as i32 + 1])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        free_reduce(&FreeWord(v))
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|x| -x).collect())
    }

    /// Parses lowercase generators and uppercase inverses, e.g. `"BAba"`.
    pub fn parse(s: &str) -> Option<FreeWord> {
        s.chars()
            .map(|c| {
                if c.is_ascii_lowercase() {
                    Some((c as u8 - b'a') as i32 + 1)
                } else if c.is_ascii_uppercase() {
                    Some(-((c as u8 - b'A') as i32 + 1))
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(|v| free_reduce(&FreeWord(v)))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &x in &self.0 {
            let c = if x > 0 {
                (b'a' + (x - 1) as u8) as char
            } else {
                (b'A' + (-x - 1) as u8) as char
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// An automorphism of a free group, stored with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    images: Vec<FreeWord>,
    inverse_images: Vec<FreeWord>,
}

fn substitute(images: &[FreeWord], w: &FreeWord) -> FreeWord {
    let mut out = Vec::new();
    for &x in &w.0 {
        let img = &images[(x.unsigned_abs() - 1) as usize];
        if x > 0 {
            out.extend_from_slice(&img.0);
        } else {
            out.extend(img.0.iter().rev().map(|y| -y));
        }
    }
    free_reduce(&FreeWord(out))
}

impl Automorphism {
    /// Builds `φ` from generator images and a claimed inverse; returns
    /// `None` unless both composites are the identity on generators.
    pub fn new(images: Vec<FreeWord>, inverse_images: Vec<FreeWord>) -> Option<Self> {
        let rank = images.len();
        if inverse_images.len() != rank {
            return None;
        }
        let images: Vec<_> = images.iter().map(free_reduce).collect();
        let inverse_images: Vec<_> = inverse_images.iter().map(free_reduce).collect();
        for k in 0..rank {
            let g = FreeWord::gen(k);
            if substitute(&images, &substitute(&inverse_images, &g)) != g
                || substitute(&inverse_images, &substitute(&images, &g)) != g
            {
                return None;
            }
        }
        Some(Automorphism {
            images,
            inverse_images,
        })
    }

    pub fn identity(rank: usize) -> Self {
        let g: Vec<_> = (0..rank).map(FreeWord::gen).collect();
        Automorphism {
            images: g.clone(),
            inverse_images: g,
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        substitute(&self.images, w)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            images: other.images.iter().map(|w| self.apply(w)).collect(),
            inverse_images: self.inverse_images.iter().map(|w| substitute(&other.inverse_images, w)).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    pub fn pow(&self, k: usize) -> Automorphism {
        (0..k).fold(Automorphism::identity(self.rank()), |acc, _| self.compose(&acc))
    }
}

/// The trefoil fibre monodromy `a ↦ b⁻¹`, `b ↦ ab`, with inverse
/// `a ↦ ba`, `b ↦ a⁻¹`.
pub fn trefoil_monodromy() -> Automorphism {
    let w = |s: &str| FreeWord::parse(s).expect("valid word");
    Automorphism::new(vec![w("B"), w("ab")], vec![w("ba"), w("A")]).expect("monodromy is invertible")
}

/// All reduced words of length exactly `len` over `rank` generators, in
/// lexicographic order of letters `1, -1, 2, -2, …`.
fn words_of_length(rank: usize, len: usize) -> Vec<FreeWord> {
    let letters: Vec<i32> = (1..=rank as i32).flat_map(|k| [k, -k]).collect();
    let mut layer = vec![FreeWord::empty()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(layer.len() * (2 * rank - 1).max(1));
        for w in &layer {
            for &x in &letters {
                if w.0.last() != Some(&-x) {
                    let mut v = w.0.clone();
                    v.push(x);
                    next.push(FreeWord(v));
                }
            }
        }
        layer = next;
    }
    layer
}

/// Searches for `w` with `|w| ≤ radius` and `φᵏ(x) = w x w⁻¹` for every
/// generator `x`. Shorter conjugators win; ties go to the first in
/// enumeration order.
pub fn power_is_inner(phi: &Automorphism, k: usize, radius: usize) -> Option<FreeWord> {
    let pk = phi.pow(k);
    let rank = phi.rank();
    let gens: Vec<FreeWord> = (0..rank).map(FreeWord::gen).collect();
    let targets: Vec<FreeWord> = gens.iter().map(|g| pk.apply(g)).collect();
    for len in 0..=radius {
        let found = words_of_length(rank, len).into_par_iter().find_first(|w| {
            let wi = w.inverse();
            gens.iter().zip(&targets).all(|(g, t)| w.mul(g).mul(&wi) == *t)
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Action on the abelianization: column `j` holds the exponent sums of the
/// image of generator `j`.
pub fn homology_matrix(phi: &Automorphism) -> Vec<Vec<i64>> {
    let n = phi.rank();
    let mut m = vec![vec![0i64; n]; n];
    for (j, img) in phi.images().iter().enumerate() {
        for &x in &img.0 {
            let i = (x.unsigned_abs() - 1) as usize;
            m[i][j] += x.signum() as i64;
        }
    }
    m
}
