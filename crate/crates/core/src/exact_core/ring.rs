//! A minimal commutative-ring interface shared by the exact element types,
//! with a division-free determinant.

use num_traits::Zero;

use super::poly::PolyQ;
use super::rational::{int, Rational};

/// Exact commutative ring element. `zero_like`/`one_like` build constants
/// in the same ring as `self` (needed for quotient rings that carry their
/// modulus).
pub trait RingElem: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
}

impl RingElem for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        int(1)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl RingElem for PolyQ {
    fn zero_like(&self) -> Self {
        PolyQ::zero()
    }
    fn one_like(&self) -> Self {
        PolyQ::one()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// Determinant of a square matrix by Laplace expansion along rows, with
/// memoization over column subsets. Uses only ring operations, so it is valid
/// in any commutative ring. Cost `O(2^n * n)` products.
///
/// Panics if the matrix is empty or not square.
pub fn determinant<T: RingElem>(m: &[Vec<T>]) -> T {
    let n = m.len();
    assert!(
        n > 0 && m.iter().all(|r| r.len() == n),
        "square matrix required"
    );
    assert!(n <= 24, "matrix too large for subset expansion");
    let one = m[0][0].one_like();
    let mut table: Vec<Option<T>> = vec![None; 1 << n];
    table[0] = Some(one);
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = m[0][0].zero_like();
        // Sign: number of chosen columns to the right of c.
        for (c, entry) in m[row].iter().enumerate().take(n) {
            if mask & (1 << c) == 0 {
                continue;
            }
            if entry.is_zero_elem() {
                continue;
            }
            let rest = mask & !(1 << c);
            let minor = table[rest].as_ref().expect("filled in mask order");
            if minor.is_zero_elem() {
                continue;
            }
            let above = (rest >> c).count_ones();
            let term = entry.mul_ref(minor);
            acc = if above % 2 == 0 {
                acc.add_ref(&term)
            } else {
                acc.sub_ref(&term)
            };
        }
        table[mask] = Some(acc);
    }
    table[(1 << n) - 1].take().expect("full mask")
}
