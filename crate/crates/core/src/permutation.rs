//! Vertex permutations and their cyclic structure.

use thiserror::Error;

use crate::trigraph::{Trigraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("image {image} of vertex {vertex} is out of range or repeated")]
    NotBijective { vertex: VertexId, image: VertexId },
    #[error("permutation of {perm} points applied to a graph of order {graph}")]
    OrderMismatch { perm: usize, graph: usize },
    #[error("edge {0}-{1} is mapped to a non-edge")]
    EdgeNotPreserved(VertexId, VertexId),
}

/// Bijection of `0..n`, stored as the image of each point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<VertexId>,
}

impl Permutation {
    pub fn new(image: Vec<VertexId>) -> Result<Self, PermutationError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for (v, &w) in image.iter().enumerate() {
            if w >= n || std::mem::replace(&mut seen[w], true) {
                return Err(PermutationError::NotBijective { vertex: v, image: w });
            }
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect() }
    }

    /// The cyclic shift `v ↦ v + 1 (mod n)`.
    pub fn rotation(n: usize) -> Self {
        Permutation { image: (0..n).map(|v| (v + 1) % n).collect() }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.image[v]
    }

    pub fn image(&self) -> &[VertexId] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(v, &w)| v == w)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (v, &w) in self.image.iter().enumerate() {
            inv[w] = v;
        }
        Permutation { image: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { image: self.image.iter().map(|&w| other.image[w]).collect() }
    }

    /// Orbits of `⟨self⟩`, each listed as `v, φ(v), φ²(v), …` from its
    /// minimum member; orbits sorted by that minimum.
    pub fn orbits(&self) -> Vec<Vec<VertexId>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                orbit.push(v);
                v = self.image[v];
            }
            out.push(orbit);
        }
        out
    }

    /// Order of the permutation: the lcm of its cycle lengths.
    pub fn order(&self) -> u128 {
        fn gcd(a: u128, b: u128) -> u128 {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        self.orbits().iter().fold(1u128, |acc, o| {
            let l = o.len() as u128;
            acc / gcd(acc, l) * l
        })
    }

    /// Checks that every edge of the underlying simple graph maps to an edge.
    pub fn check_automorphism(&self, g: &Trigraph) -> Result<(), PermutationError> {
        if self.len() != g.order() {
            return Err(PermutationError::OrderMismatch { perm: self.len(), graph: g.order() });
        }
        for (u, v, _) in g.edges() {
            if !g.is_adjacent(self.image[u], self.image[v]) {
                return Err(PermutationError::EdgeNotPreserved(u, v));
            }
        }
        Ok(())
    }

    pub fn is_automorphism(&self, g: &Trigraph) -> bool {
        self.check_automorphism(g).is_ok()
    }
}
