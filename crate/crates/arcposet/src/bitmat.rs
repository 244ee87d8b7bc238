//! Minimal square bit matrix used for reachability closures. Rows are
//! contiguous `u64` words; the closure algorithms only ever need row-level
//! OR and per-bit get/set, so this stays deliberately small.

#[derive(Clone, Debug)]
pub(crate) struct BitMatrix {
    row_words: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let row_words = n.div_ceil(64);
        BitMatrix {
            row_words,
            words: vec![0; n * row_words],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.words[r * self.row_words + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize) {
        self.words[r * self.row_words + c / 64] |= 1 << (c % 64);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.words[r * self.row_words..(r + 1) * self.row_words]
    }

    /// `dst |= src`, whole rows. No-op when `dst == src`.
    pub fn or_row_into(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let rw = self.row_words;
        let (dst_s, src_s): (&mut [u64], &[u64]) = if dst < src {
            let (a, b) = self.words.split_at_mut(src * rw);
            (&mut a[dst * rw..dst * rw + rw], &b[..rw])
        } else {
            let (a, b) = self.words.split_at_mut(dst * rw);
            (&mut b[..rw], &a[src * rw..src * rw + rw])
        };
        for (d, s) in dst_s.iter_mut().zip(src_s) {
            *d |= *s;
        }
    }

    pub fn count_row(&self, r: usize) -> usize {
        self.row(r).iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Whether two equally long word slices share no set bit.
pub(crate) fn disjoint(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

/// Indices of set bits in a word slice, ascending.
pub(crate) fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut rem = w;
        std::iter::from_fn(move || {
            if rem == 0 {
                None
            } else {
                let b = rem.trailing_zeros() as usize;
                rem &= rem - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_roundtrip() {
        let mut m = BitMatrix::new(130);
        m.set(0, 0);
        m.set(7, 64);
        m.set(129, 129);
        assert!(m.get(0, 0) && m.get(7, 64) && m.get(129, 129));
        assert!(!m.get(0, 1) && !m.get(64, 7));
        assert_eq!(m.count_row(7), 1);
    }

    #[test]
    fn or_row_merges_bits_in_both_directions() {
        let mut m = BitMatrix::new(70);
        m.set(1, 3);
        m.set(1, 69);
        m.set(5, 4);
        m.or_row_into(5, 1);
        assert_eq!(ones(m.row(5)).collect::<Vec<_>>(), vec![3, 4, 69]);
        m.or_row_into(1, 5);
        assert_eq!(ones(m.row(1)).collect::<Vec<_>>(), vec![3, 4, 69]);
    }

    #[test]
    fn ones_iterates_ascending_across_words() {
        let words = [1u64 << 63, 0b101];
        assert_eq!(ones(&words).collect::<Vec<_>>(), vec![63, 64, 66]);
    }
}
