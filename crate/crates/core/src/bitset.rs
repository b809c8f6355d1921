//! Single-word bitsets for vertex and color sets.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub};

macro_rules! word_set {
    ($(#[$meta:meta])* $name:ident, $elem:ty) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub u64);

        impl $name {
            pub const EMPTY: Self = Self(0);

            #[inline]
            pub fn singleton(x: $elem) -> Self {
                Self(1u64 << x)
            }

            #[inline]
            pub fn contains(self, x: $elem) -> bool {
                (x as u32) < 64 && self.0 >> x & 1 == 1
            }

            #[inline]
            pub fn insert(&mut self, x: $elem) {
                self.0 |= 1u64 << x;
            }

            #[inline]
            pub fn remove(&mut self, x: $elem) {
                self.0 &= !(1u64 << x);
            }

            #[inline]
            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            #[inline]
            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            #[inline]
            pub fn is_disjoint(self, other: Self) -> bool {
                self.0 & other.0 == 0
            }

            #[inline]
            pub fn is_subset(self, other: Self) -> bool {
                self.0 & !other.0 == 0
            }

            /// Smallest element.
            #[inline]
            pub fn first(self) -> Option<$elem> {
                if self.0 == 0 {
                    None
                } else {
                    Some(self.0.trailing_zeros() as $elem)
                }
            }

            pub fn iter(self) -> impl Iterator<Item = $elem> {
                let mut bits = self.0;
                std::iter::from_fn(move || {
                    if bits == 0 {
                        None
                    } else {
                        let x = bits.trailing_zeros();
                        bits &= bits - 1;
                        Some(x as $elem)
                    }
                })
            }
        }

        impl BitAnd for $name {
            type Output = Self;
            fn bitand(self, rhs: Self) -> Self {
                Self(self.0 & rhs.0)
            }
        }

        impl BitOr for $name {
            type Output = Self;
            fn bitor(self, rhs: Self) -> Self {
                Self(self.0 | rhs.0)
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                Self(self.0 & !rhs.0)
            }
        }

        impl Not for $name {
            type Output = Self;
            fn not(self) -> Self {
                Self(!self.0)
            }
        }

        impl BitAndAssign for $name {
            fn bitand_assign(&mut self, rhs: Self) {
                self.0 &= rhs.0;
            }
        }

        impl BitOrAssign for $name {
            fn bitor_assign(&mut self, rhs: Self) {
                self.0 |= rhs.0;
            }
        }

        impl FromIterator<$elem> for $name {
            fn from_iter<I: IntoIterator<Item = $elem>>(iter: I) -> Self {
                let mut s = Self::EMPTY;
                for x in iter {
                    s.insert(x);
                }
                s
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.iter()).finish()
            }
        }
    };
}

word_set!(
    /// Set of vertex indices below 64.
    VertexSet,
    usize
);

word_set!(
    /// Set of colors. Bit `c` stands for color `c`; colors are 1-based so bit 0 is unused.
    ColorSet,
    u8
);

impl VertexSet {
    /// `{0, .., n-1}`.
    pub fn below(n: usize) -> Self {
        if n >= 64 {
            Self(u64::MAX)
        } else {
            Self((1u64 << n) - 1)
        }
    }
}

impl ColorSet {
    /// The palette `[1, k]`.
    pub fn palette(k: u8) -> Self {
        debug_assert!(k <= 63);
        Self(((1u64 << k) - 1) << 1)
    }
}
