//! Flat bitsets, with an optional rank index for dense renumbering.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn new(len: usize) -> Bitset {
        Bitset {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    /// Sets bit `i`, returning whether it was previously clear.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let w = &mut self.words[i >> 6];
        let mask = 1u64 << (i & 63);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    /// Sets every bit in `start..end`.
    pub fn insert_range(&mut self, start: usize, end: usize) {
        let mut i = start;
        while i < end && i & 63 != 0 {
            self.insert(i);
            i += 1;
        }
        while i + 64 <= end {
            self.words[i >> 6] = u64::MAX;
            i += 64;
        }
        while i < end {
            self.insert(i);
            i += 1;
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + t)
            })
        })
    }

    pub fn into_ones(self) -> impl Iterator<Item = usize> {
        self.words.into_iter().enumerate().flat_map(|(wi, w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + t)
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    pub fn is_subset(&self, other: &Bitset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

/// A frozen bitset with O(1) rank queries: the dense index of a set bit
/// among all set bits.
#[derive(Clone, Debug)]
pub struct RankedBitset {
    bits: Bitset,
    prefix: Vec<u32>,
}

impl RankedBitset {
    pub fn new(bits: Bitset) -> RankedBitset {
        let mut prefix = Vec::with_capacity(bits.words.len());
        let mut acc = 0u32;
        for w in &bits.words {
            prefix.push(acc);
            acc += w.count_ones();
        }
        RankedBitset { bits, prefix }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.bits.len && self.bits.get(i)
    }

    /// Number of set bits strictly below `i`.
    #[inline]
    pub fn rank(&self, i: usize) -> usize {
        let w = i >> 6;
        let below = self.bits.words[w] & ((1u64 << (i & 63)) - 1);
        self.prefix[w] as usize + below.count_ones() as usize
    }

    pub fn count(&self) -> usize {
        self.prefix.last().copied().unwrap_or(0) as usize
            + self.bits.words.last().map_or(0, |w| w.count_ones() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter()
    }

    pub fn into_ones(self) -> impl Iterator<Item = usize> {
        self.bits.into_ones()
    }
}
