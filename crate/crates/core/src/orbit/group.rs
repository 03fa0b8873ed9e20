use crate::error::{Error, Result};
use crate::geometry::{inversion_in, InversiveSphere, MoebiusMap};
use crate::necklace::SpunNecklace;

use super::word::{reduce, Word};

/// The reflection group of a certified necklace.
#[derive(Debug, Clone)]
pub struct Generators {
    pub maps: Vec<MoebiusMap>,
    pub spheres: Vec<InversiveSphere>,
    /// `n_ij`: 2 for orthogonal pairs, 0 otherwise.
    pub coxeter: Vec<Vec<u8>>,
}

pub fn generators_from_necklace(sn: &SpunNecklace) -> Result<Generators> {
    if !sn.is_certified() {
        return Err(Error::ValidationRequired);
    }
    Ok(Generators {
        maps: sn.spheres().iter().map(inversion_in).collect(),
        spheres: sn.spheres().to_vec(),
        coxeter: sn.coxeter_matrix(),
    })
}

impl Generators {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn commutes(&self, i: usize, j: usize) -> bool {
        self.coxeter[i][j] == 2
    }

    pub fn reduce(&self, w: &Word) -> Word {
        reduce(w, |i, j| self.commutes(i, j))
    }

    /// Product `I_{w₁} ∘ … ∘ I_{wₘ}`.
    pub fn word_map(&self, w: &Word) -> MoebiusMap {
        w.0.iter().fold(MoebiusMap::identity(), |acc, &j| acc.compose(&self.maps[j]))
    }

    /// Image `I_{w₁} ∘ … ∘ I_{wₘ₋₁}(Σ_{wₘ})` computed by successive
    /// inversions.
    pub fn word_sphere(&self, w: &Word) -> Result<InversiveSphere> {
        let (&last, prefix) = w.0.split_last().ok_or(Error::NotABall)?;
        prefix
            .iter()
            .rev()
            .try_fold(self.spheres[last], |s, &j| s.inverted_in(&self.spheres[j]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::product_residual;
    use crate::necklace::{spin_necklace, toy_ring};
    use proptest::prelude::*;

    fn toy() -> Generators {
        let mut sn = spin_necklace(&toy_ring()).unwrap();
        sn.certify(1e-6);
        generators_from_necklace(&sn).unwrap()
    }

    #[test]
    fn uncertified_necklace_is_rejected() {
        let sn = spin_necklace(&toy_ring()).unwrap();
        assert!(matches!(generators_from_necklace(&sn), Err(Error::ValidationRequired)));
    }

    #[test]
    fn generators_are_involutions() {
        let g = toy();
        for m in &g.maps {
            assert!(product_residual(&[*m, *m], &MoebiusMap::identity()) < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn reduction_preserves_the_element(letters in prop::collection::vec(0usize..8, 0..8)) {
            let g = toy();
            let w = Word(letters);
            let r = g.reduce(&w);
            prop_assert!(r.len() <= w.len());
            let factors: Vec<MoebiusMap> = w.0.iter().chain(r.0.iter().rev()).map(|&j| g.maps[j]).collect();
            prop_assert!(product_residual(&factors, &MoebiusMap::identity()) < 1e-9);
        }
    }
}
