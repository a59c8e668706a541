/// Index layout for carriers of the form `H × K`.
///
/// `(h, x)` is stored at `h * |K| + x`, so `{e} × K` occupies the first `|K|`
/// indices and `H × {e}` the multiples of `|K|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairIndex {
    pub n_h: usize,
    pub n_k: usize,
}

impl PairIndex {
    pub fn new(n_h: usize, n_k: usize) -> Self {
        Self { n_h, n_k }
    }

    #[inline]
    pub fn encode(&self, h: usize, x: usize) -> usize {
        h * self.n_k + x
    }

    #[inline]
    pub fn decode(&self, g: usize) -> (usize, usize) {
        (g / self.n_k, g % self.n_k)
    }

    pub fn size(&self) -> usize {
        self.n_h * self.n_k
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn decode_inverts_encode(n_h in 1usize..10, n_k in 1usize..10, h in 0usize..10, x in 0usize..10) {
            let p = PairIndex::new(n_h, n_k);
            let (h, x) = (h % n_h, x % n_k);
            prop_assert!(p.encode(h, x) < p.size());
            prop_assert_eq!(p.decode(p.encode(h, x)), (h, x));
        }
    }
}
