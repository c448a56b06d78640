//! Permutations as image arrays, their sign, and a streaming derangement
//! generator for the symmetric-group sum.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("image array is not a bijection on 0..{0}")]
    NotBijective(usize),
}

/// A bijection of `{0, .., n-1}`, stored as `images[j] = pi(j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermutationError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(PermutationError::NotBijective(n));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn cycle_count(&self) -> usize {
        cycle_count(&self.images)
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i8 {
        sign_of_images(&self.images)
    }

    pub fn is_derangement(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &p)| j != p)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Sign of a validated image array, checking bijectivity first.
pub fn sign_of(images: &[usize]) -> Result<i8, PermutationError> {
    Permutation::new(images.to_vec()).map(|p| p.sign())
}

fn cycle_count(images: &[usize]) -> usize {
    let mut seen = vec![false; images.len()];
    let mut cycles = 0;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = images[j];
        }
    }
    cycles
}

/// `(-1)^(n - cycles)`. Caller guarantees a bijection.
pub(crate) fn sign_of_images(images: &[usize]) -> i8 {
    if (images.len() - cycle_count(images)).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Lexicographic stream of the derangements of `{0, .., m-1}`.
///
/// Depth-first with fixed-point pruning: a prefix is abandoned as soon as a
/// position would map to itself, so only derangements are ever completed.
/// An optional fixed prefix restricts the stream to one subtree, which is how
/// the symmetric-group sum is partitioned across workers.
#[derive(Debug, Clone)]
pub struct Derangements {
    m: usize,
    prefix_len: usize,
    images: Vec<usize>,
    used: Vec<bool>,
    depth: usize,
    started: bool,
    done: bool,
}

impl Derangements {
    pub fn new(m: usize) -> Self {
        Self::with_prefix(m, &[]).expect("empty prefix is always admissible")
    }

    /// Derangements whose first images are exactly `prefix`. Returns `None`
    /// when the prefix itself repeats a value, is out of range, or has a
    /// fixed point.
    pub fn with_prefix(m: usize, prefix: &[usize]) -> Option<Self> {
        if prefix.len() > m {
            return None;
        }
        let mut used = vec![false; m];
        for (j, &x) in prefix.iter().enumerate() {
            if x >= m || x == j || used[x] {
                return None;
            }
            used[x] = true;
        }
        let mut images = vec![usize::MAX; m];
        images[..prefix.len()].copy_from_slice(prefix);
        Some(Self {
            m,
            prefix_len: prefix.len(),
            images,
            used,
            depth: prefix.len(),
            started: false,
            done: false,
        })
    }

    /// Admissible prefixes of length `len`, in lexicographic order. Their
    /// subtrees partition the full stream.
    pub fn prefixes(m: usize, len: usize) -> Vec<Vec<usize>> {
        let len = len.min(m);
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(len);
        let mut used = vec![false; m];
        fn rec(
            m: usize,
            len: usize,
            cur: &mut Vec<usize>,
            used: &mut [bool],
            out: &mut Vec<Vec<usize>>,
        ) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            let j = cur.len();
            for x in 0..m {
                if x != j && !used[x] {
                    used[x] = true;
                    cur.push(x);
                    rec(m, len, cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        rec(m, len, &mut cur, &mut used, &mut out);
        out
    }

    /// Advances to the next complete derangement and returns its images.
    /// Borrowing variant of `Iterator::next` that avoids an allocation per item.
    pub fn advance(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if self.m == self.prefix_len {
            // Nothing to search: the prefix is the whole permutation (or m = 0).
            if self.started {
                self.done = true;
                return None;
            }
            self.started = true;
            return Some(&self.images);
        }
        if self.started {
            // Resume from the last filled position.
            self.depth = self.m - 1;
        } else {
            self.started = true;
            self.images[self.depth] = usize::MAX;
        }
        loop {
            let j = self.depth;
            let prev = self.images[j];
            let mut next = if prev == usize::MAX { 0 } else { prev + 1 };
            if prev != usize::MAX {
                self.used[prev] = false;
            }
            while next < self.m && (next == j || self.used[next]) {
                next += 1;
            }
            if next < self.m {
                self.images[j] = next;
                self.used[next] = true;
                if j + 1 == self.m {
                    return Some(&self.images);
                }
                self.depth += 1;
                self.images[self.depth] = usize::MAX;
            } else {
                self.images[j] = usize::MAX;
                if j == self.prefix_len {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
            }
        }
    }
}

impl Iterator for Derangements {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        self.advance().map(|images| Permutation {
            images: images.to_vec(),
        })
    }
}

/// Number of derangements of `m` points, `!m`.
pub fn subfactorial(m: u64) -> u128 {
    let (mut a, mut b) = (1u128, 0u128);
    if m == 0 {
        return 1;
    }
    for i in 2..=m as u128 {
        let c = (i - 1) * (a + b);
        a = b;
        b = c;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_examples() {
        assert_eq!(sign_of(&[1, 2, 3, 0]).unwrap(), -1);
        assert_eq!(sign_of(&[0, 1, 2, 3]).unwrap(), 1);
        assert_eq!(sign_of(&[1, 0, 3, 2]).unwrap(), 1);
        assert_eq!(sign_of(&[1, 0]).unwrap(), -1);
        assert_eq!(sign_of(&[]).unwrap(), 1);
        assert!(sign_of(&[0, 0, 1]).is_err());
        assert!(sign_of(&[0, 3]).is_err());
    }

    fn brute_derangements(m: usize) -> Vec<Vec<usize>> {
        // Heap-free enumeration of all m^m maps, filtered.
        let mut out = Vec::new();
        let total = m.pow(m as u32);
        for code in 0..total {
            let mut c = code;
            let mut img = Vec::with_capacity(m);
            for _ in 0..m {
                img.push(c % m);
                c /= m;
            }
            img.reverse();
            if Permutation::new(img.clone()).is_ok() && img.iter().enumerate().all(|(j, &x)| j != x)
            {
                out.push(img);
            }
        }
        out
    }

    #[test]
    fn stream_matches_brute_force_in_order() {
        for m in 0..=6 {
            let got: Vec<Vec<usize>> = Derangements::new(m).map(|p| p.images().to_vec()).collect();
            let want = if m == 0 {
                vec![vec![]]
            } else {
                brute_derangements(m)
            };
            assert_eq!(got, want, "m={m}");
            assert_eq!(got.len() as u128, subfactorial(m as u64));
        }
    }

    #[test]
    fn prefixes_partition_the_stream() {
        for m in 2..=7 {
            let full: Vec<Permutation> = Derangements::new(m).collect();
            for len in 0..=3 {
                let split: Vec<Permutation> = Derangements::prefixes(m, len)
                    .iter()
                    .flat_map(|p| Derangements::with_prefix(m, p).unwrap())
                    .collect();
                assert_eq!(split, full, "m={m} len={len}");
            }
        }
    }

    #[test]
    fn bad_prefixes_rejected() {
        assert!(Derangements::with_prefix(4, &[0]).is_none());
        assert!(Derangements::with_prefix(4, &[1, 1]).is_none());
        assert!(Derangements::with_prefix(4, &[7]).is_none());
    }

    #[test]
    fn subfactorials() {
        assert_eq!(subfactorial(4), 9);
        assert_eq!(subfactorial(8), 14833);
        assert_eq!(subfactorial(10), 1_334_961);
    }
}
