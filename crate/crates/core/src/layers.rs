//! Onion-layer decomposition by iterated hull peeling.
//!
//! Layer indices are zero-based: `layers()[0]` is the outer hull. The suffix
//! set of layer `i` is the union of layers `i..L`; every point of layer `i`
//! is a vertex of the hull of its suffix set.
//!
//! `k_mid` is the number of outer layers that receive assignment blocks: the
//! largest `k >= 1` such that the first `k - 1` layers hold fewer than `n / 2`
//! points. Layers `0..k_mid` are those layers.

use alloc::vec;
use alloc::vec::Vec;

use crate::geom::{hull_indices, PointSet};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LayerDecomposition {
    layers: Vec<Vec<usize>>,
    layer_of: Vec<usize>,
    k_mid: usize,
}

/// Peels hulls until no point is left. Each layer is listed
/// counterclockwise from its lexicographically smallest point; layers of
/// one or two points are legal.
pub fn decompose(ps: &PointSet) -> LayerDecomposition {
    let n = ps.len();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut layers = Vec::new();
    let mut layer_of = vec![usize::MAX; n];
    while !remaining.is_empty() {
        let hull = hull_indices(ps, &remaining);
        for &v in &hull {
            layer_of[v] = layers.len();
        }
        let depth = layers.len();
        remaining.retain(|&q| layer_of[q] != depth);
        layers.push(hull);
    }
    let k_mid = middle_layer_count(&layers.iter().map(Vec::len).collect::<Vec<_>>(), n);
    LayerDecomposition {
        layers,
        layer_of,
        k_mid,
    }
}

/// Largest `k >= 1` with `2 * (sizes[0] + .. + sizes[k - 2]) < n`, or 0 when
/// there are no layers.
pub fn middle_layer_count(sizes: &[usize], n: usize) -> usize {
    let mut before = 0usize;
    let mut k_mid = 0;
    for (k, &size) in sizes.iter().enumerate() {
        if 2 * before < n {
            k_mid = k + 1;
        }
        before += size;
    }
    k_mid
}

impl LayerDecomposition {
    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn layer(&self, i: usize) -> &[usize] {
        &self.layers[i]
    }

    /// Number of layers, `L(P)`.
    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn k_mid(&self) -> usize {
        self.k_mid
    }

    pub fn layer_of(&self, point: usize) -> usize {
        self.layer_of[point]
    }

    pub fn point_count(&self) -> usize {
        self.layer_of.len()
    }

    /// Points that receive blocks, in index order.
    pub fn block_centers(&self) -> Vec<usize> {
        (0..self.layer_of.len())
            .filter(|&p| self.layer_of[p] < self.k_mid)
            .collect()
    }

    /// Union of layers `i..L`, sorted by index.
    pub fn suffix_set(&self, i: usize) -> Result<Vec<usize>> {
        if i >= self.layers.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.layers.len(),
            });
        }
        Ok((0..self.layer_of.len()).filter(|&q| self.layer_of[q] >= i).collect())
    }
}
