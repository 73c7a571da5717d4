use std::fmt;

/// A permutation of the four vertex labels {0,1,2,3} of a tetrahedron.
///
/// Face gluings carry a `Perm4` mapping the labels of one tetrahedron to the
/// labels of its partner.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4 {
    images: [u8; 4],
}

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4 { images: [0, 1, 2, 3] };

    pub fn new(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Perm4 { images })
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(a: u8, b: u8) -> Perm4 {
        let mut images = [0u8, 1, 2, 3];
        images.swap(a as usize, b as usize);
        Perm4 { images }
    }

    /// Builds the permutation sending `from[i]` to `to[i]`.
    pub fn mapping(from: [u8; 4], to: [u8; 4]) -> Perm4 {
        let mut images = [0u8; 4];
        for i in 0..4 {
            images[from[i] as usize] = to[i];
        }
        Perm4::new(images).expect("mapping arguments must each list 0..3")
    }

    #[inline]
    pub fn apply(&self, x: u8) -> u8 {
        self.images[x as usize]
    }

    pub fn images(&self) -> [u8; 4] {
        self.images
    }

    /// Composition: `self.compose(other)` applies `other` first, then `self`.
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        let mut images = [0u8; 4];
        for x in 0..4 {
            images[x] = self.apply(other.apply(x as u8));
        }
        Perm4 { images }
    }

    pub fn inverse(&self) -> Perm4 {
        let mut images = [0u8; 4];
        for x in 0..4u8 {
            images[self.apply(x) as usize] = x;
        }
        Perm4 { images }
    }

    pub fn is_even(&self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    /// All 24 permutations in lexicographic order of their image sequences.
    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::with_capacity(24);
        let mut labels = [0u8, 1, 2, 3];
        permute(&mut labels, 0, &mut out);
        out.sort_by_key(|p| p.images);
        out
    }

    /// The 4-digit image string, e.g. `0132`.
    pub fn digits(&self) -> String {
        self.images.iter().map(|d| (b'0' + d) as char).collect()
    }

    pub fn from_digits(s: &str) -> Option<Perm4> {
        let bytes = s.as_bytes();
        if bytes.len() != 4 {
            return None;
        }
        let mut images = [0u8; 4];
        for (i, &b) in bytes.iter().enumerate() {
            if !(b'0'..=b'3').contains(&b) {
                return None;
            }
            images[i] = b - b'0';
        }
        Perm4::new(images)
    }
}

fn permute(labels: &mut [u8; 4], k: usize, out: &mut Vec<Perm4>) {
    if k == 4 {
        out.push(Perm4 { images: *labels });
        return;
    }
    for i in k..4 {
        labels.swap(k, i);
        permute(labels, k + 1, out);
        labels.swap(k, i);
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm4({})", self.digits())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        for p in Perm4::all() {
            for q in Perm4::all() {
                let pq = p.compose(&q);
                for x in 0..4u8 {
                    assert_eq!(pq.apply(x), p.apply(q.apply(x)));
                }
            }
            assert_eq!(p.compose(&p.inverse()), Perm4::IDENTITY);
        }
    }

    #[test]
    fn all_has_24_distinct() {
        let all = Perm4::all();
        assert_eq!(all.len(), 24);
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn digit_round_trip() {
        for p in Perm4::all() {
            assert_eq!(Perm4::from_digits(&p.digits()), Some(p));
        }
    }
}
