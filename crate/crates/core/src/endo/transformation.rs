use std::collections::HashMap;

use super::EndoError;
use crate::algebra::Monoid;

/// A set of self-maps of {0..n} containing the identity, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformationMonoid {
    degree: usize,
    maps: Vec<Vec<usize>>,
    identity: usize,
}

/// (f∘g)(v) = f(g(v)).
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

impl TransformationMonoid {
    pub fn from_maps(degree: usize, mut maps: Vec<Vec<usize>>) -> Result<Self, EndoError> {
        if maps.iter().any(|m| m.len() != degree || m.iter().any(|&x| x >= degree)) {
            return Err(EndoError::Malformed("map of the wrong degree".into()));
        }
        maps.sort_unstable();
        maps.dedup();
        let id: Vec<usize> = (0..degree).collect();
        let identity = maps.binary_search(&id).map_err(|_| EndoError::MissingIdentity)?;
        Ok(TransformationMonoid { degree, maps, identity })
    }

    /// Number of points the maps act on.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn map(&self, i: usize) -> &[usize] {
        &self.maps[i]
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn position(&self, map: &[usize]) -> Option<usize> {
        self.maps.binary_search_by(|m| m.as_slice().cmp(map)).ok()
    }

    pub fn contains(&self, map: &[usize]) -> bool {
        self.position(map).is_some()
    }

    /// Sorted image set of map i.
    pub fn image(&self, i: usize) -> Vec<usize> {
        let mut img = self.maps[i].clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Multiplication table with table[f][g] = f∘g.
    pub fn table(&self) -> Result<Monoid, EndoError> {
        let k = self.maps.len();
        let index: HashMap<&[usize], usize> =
            self.maps.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let mut table = Vec::with_capacity(k * k);
        for f in &self.maps {
            for g in &self.maps {
                let fg = compose(f, g);
                table.push(*index.get(fg.as_slice()).ok_or(EndoError::NotClosed)?);
            }
        }
        Monoid::from_flat(k, self.identity, table).map_err(|e| EndoError::Malformed(e.to_string()))
    }

    /// Indices of idempotent maps.
    pub fn retractions(&self) -> Vec<usize> {
        (0..self.maps.len())
            .filter(|&i| {
                let f = &self.maps[i];
                f.iter().all(|&x| f[x] == x)
            })
            .collect()
    }

    /// Indices of bijective maps.
    pub fn automorphisms(&self) -> Vec<usize> {
        (0..self.maps.len())
            .filter(|&i| {
                let mut seen = vec![false; self.degree];
                self.maps[i].iter().all(|&x| !std::mem::replace(&mut seen[x], true))
            })
            .collect()
    }
}
