//! Injective element embeddings between universes.

use std::sync::Arc;

use crate::{CoreError, SubsetMask};

/// A per-instance injective map from source element ids to target element
/// ids, stored as a dense table. Injectivity and range are checked eagerly.
#[derive(Clone, Debug)]
pub struct Embedding {
    map: Arc<[usize]>,
    target_width: usize,
}

impl Embedding {
    pub fn new(map: Vec<usize>, target_width: usize) -> Result<Self, CoreError> {
        let mut seen = vec![usize::MAX; target_width];
        for (src, &tgt) in map.iter().enumerate() {
            if tgt >= target_width {
                return Err(CoreError::EmbeddingOutOfRange {
                    id: tgt,
                    width: target_width,
                });
            }
            if seen[tgt] != usize::MAX {
                return Err(CoreError::EmbeddingNotInjective {
                    a: seen[tgt],
                    b: src,
                    image: tgt,
                });
            }
            seen[tgt] = src;
        }
        Ok(Embedding {
            map: map.into(),
            target_width,
        })
    }

    /// The identity embedding of a universe into itself.
    pub fn identity(width: usize) -> Self {
        Embedding {
            map: (0..width).collect::<Vec<_>>().into(),
            target_width: width,
        }
    }

    /// Source ids `0..n` map to target ids `0..n` inside a wider target.
    pub fn prefix(source_width: usize, target_width: usize) -> Result<Self, CoreError> {
        Embedding::new((0..source_width).collect(), target_width)
    }

    pub fn source_width(&self) -> usize {
        self.map.len()
    }

    pub fn target_width(&self) -> usize {
        self.target_width
    }

    pub fn apply(&self, source_id: usize) -> usize {
        self.map[source_id]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    /// The embedded universe `f(U)` as a mask over the target.
    pub fn image_mask(&self) -> SubsetMask {
        let mut m = SubsetMask::empty(self.target_width);
        for &t in self.map.iter() {
            m.insert(t);
        }
        m
    }

    /// Lifts a source-width mask to its image in the target universe.
    pub fn lift(&self, source_mask: &SubsetMask) -> Result<SubsetMask, CoreError> {
        if source_mask.width() != self.map.len() {
            return Err(CoreError::WidthMismatch {
                expected: self.map.len(),
                got: source_mask.width(),
            });
        }
        let mut out = SubsetMask::empty(self.target_width);
        for id in source_mask.ids() {
            out.insert(self.map[id]);
        }
        Ok(out)
    }

    /// Pulls a target-width mask back: `f^{-1}(mask ∩ f(U))`.
    pub fn restrict(&self, target_mask: &SubsetMask) -> Result<SubsetMask, CoreError> {
        if target_mask.width() != self.target_width {
            return Err(CoreError::WidthMismatch {
                expected: self.target_width,
                got: target_mask.width(),
            });
        }
        let mut out = SubsetMask::empty(self.map.len());
        for (src, &tgt) in self.map.iter().enumerate() {
            if target_mask.contains(tgt) {
                out.insert(src);
            }
        }
        Ok(out)
    }

    /// Composition `next ∘ self`.
    pub fn then(&self, next: &Embedding) -> Result<Embedding, CoreError> {
        if next.source_width() != self.target_width {
            return Err(CoreError::WidthMismatch {
                expected: self.target_width,
                got: next.source_width(),
            });
        }
        Embedding::new(
            self.map.iter().map(|&t| next.map[t]).collect(),
            next.target_width,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_injective() {
        let err = Embedding::new(vec![0, 1, 1], 4).unwrap_err();
        match err {
            CoreError::EmbeddingNotInjective { a, b, image } => {
                assert_eq!((a, b, image), (1, 2, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lift_restrict_roundtrip() {
        let f = Embedding::new(vec![3, 0, 2], 5).unwrap();
        let s = SubsetMask::from_ids(3, &[0, 2]).unwrap();
        let lifted = f.lift(&s).unwrap();
        assert_eq!(lifted.ids(), vec![2, 3]);
        assert_eq!(f.restrict(&lifted).unwrap(), s);
        // restriction drops auxiliary elements
        let noisy = lifted.union(&SubsetMask::from_ids(5, &[1, 4]).unwrap());
        assert_eq!(f.restrict(&noisy).unwrap(), s);
    }
}
