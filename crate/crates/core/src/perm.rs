//! Codeword permutations from the general affine group GA(s, 2).
//!
//! An [`AffinePerm`] maps bit index `i` to `A·bits(i) ⊕ b`, where `A` is an
//! invertible `s×s` binary matrix and `b` a shift vector. Every such map is
//! an automorphism of RM(r, s). Factor-graph (stage) permutations are the
//! subset with a permutation matrix `A` and `b = 0`.
//!
//! Vectors are permuted by forward scatter: `out[π(i)] = v[i]`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// Largest supported dimension `s`.
pub const MAX_DIM: usize = 16;

/// Affine index permutation `i ↦ A·bits(i) ⊕ b` on `{0, .., 2^s - 1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffinePerm {
    dim: u8,
    /// `rows[r]` masks the input bits whose parity forms output bit `r`.
    rows: [u32; MAX_DIM],
    shift: u32,
}

fn parity(x: u32) -> u32 {
    x.count_ones() & 1
}

fn mask(dim: usize) -> u32 {
    if dim == 32 {
        u32::MAX
    } else {
        (1u32 << dim) - 1
    }
}

/// Gauss-Jordan inverse of a square GF(2) matrix given by rows.
fn invert_rows(rows: &[u32]) -> Option<Vec<u32>> {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut inv: Vec<u32> = (0..n).map(|r| 1u32 << r).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| (a[r] >> col) & 1 == 1)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        for r in 0..n {
            if r != col && (a[r] >> col) & 1 == 1 {
                a[r] ^= a[col];
                inv[r] ^= inv[col];
            }
        }
    }
    Some(inv)
}

impl AffinePerm {
    pub fn identity(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "dimension out of range");
        let mut rows = [0u32; MAX_DIM];
        for (r, row) in rows.iter_mut().enumerate().take(dim) {
            *row = 1 << r;
        }
        AffinePerm {
            dim: dim as u8,
            rows,
            shift: 0,
        }
    }

    /// Builds a permutation from matrix rows and a shift; rejects singular `A`.
    pub fn from_parts(rows: &[u32], shift: u32) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::ParsePerm(format!("dimension {dim} out of range")));
        }
        let m = mask(dim);
        if rows.iter().any(|&r| r & !m != 0) || shift & !m != 0 {
            return Err(Error::ParsePerm("entries exceed the dimension".into()));
        }
        if invert_rows(rows).is_none() {
            return Err(Error::SingularMatrix);
        }
        let mut out = [0u32; MAX_DIM];
        out[..dim].copy_from_slice(rows);
        Ok(AffinePerm {
            dim: dim as u8,
            rows: out,
            shift,
        })
    }

    /// Factor-graph permutation moving input bit `b` to output bit `layers[b]`.
    pub fn from_layer_map(layers: &[usize]) -> Result<Self> {
        let dim = layers.len();
        let mut rows = vec![0u32; dim];
        for (b, &t) in layers.iter().enumerate() {
            if t >= dim || rows[t] != 0 {
                return Err(Error::ParsePerm(format!("{layers:?} is not a permutation")));
            }
            rows[t] = 1 << b;
        }
        Self::from_parts(&rows, 0)
    }

    /// Uniform sample from GA(s, 2): rejection-sampled invertible `A`, uniform `b`.
    pub fn sample_affine<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "dimension out of range");
        let m = mask(dim);
        let mut rows = [0u32; MAX_DIM];
        loop {
            for row in rows.iter_mut().take(dim) {
                *row = rng.random::<u32>() & m;
            }
            if invert_rows(&rows[..dim]).is_some() {
                break;
            }
        }
        AffinePerm {
            dim: dim as u8,
            rows,
            shift: rng.random::<u32>() & m,
        }
    }

    /// Uniform factor-graph permutation: one of the `s!` layer orders, `b = 0`.
    pub fn sample_stage<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let mut layers: Vec<usize> = (0..dim).collect();
        layers.shuffle(rng);
        Self::from_layer_map(&layers).expect("shuffle yields a permutation")
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    /// Length of the permuted vectors, `2^s`.
    pub fn len(&self) -> usize {
        1 << self.dim
    }

    /// Always false: even a dimension-0 permutation acts on one index.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows[..self.dim()]
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    /// True for factor-graph permutations (permutation matrix, zero shift).
    pub fn is_stage_permutation(&self) -> bool {
        if self.shift != 0 || self.rows().iter().any(|r| r.count_ones() != 1) {
            return false;
        }
        let cols = self.rows().iter().fold(0u32, |acc, r| acc | r);
        cols == mask(self.dim())
    }

    fn mul_vec(&self, v: u32) -> u32 {
        self.rows()
            .iter()
            .enumerate()
            .fold(0u32, |acc, (r, &row)| acc | (parity(row & v) << r))
    }

    /// `j = A·bits(i) ⊕ b`.
    pub fn apply(&self, i: usize) -> usize {
        debug_assert!(i < self.len());
        (self.mul_vec(i as u32) ^ self.shift) as usize
    }

    /// Image of every index, `table[i] = apply(i)`, in `O(2^s)`.
    pub fn index_table(&self) -> Vec<u32> {
        let dim = self.dim();
        let cols: Vec<u32> = (0..dim).map(|c| self.mul_vec(1 << c)).collect();
        let n = self.len();
        let mut table = vec![0u32; n];
        table[0] = self.shift;
        for i in 1..n {
            let low = i.trailing_zeros() as usize;
            table[i] = table[i & (i - 1)] ^ cols[low];
        }
        table
    }

    /// Forward scatter `out[π(i)] = v[i]`.
    pub fn permute<T: Copy + Default>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.len(), "vector length must be 2^s");
        if self.is_identity() {
            return v.to_vec();
        }
        let mut out = vec![T::default(); v.len()];
        for (&j, &x) in self.index_table().iter().zip(v) {
            out[j as usize] = x;
        }
        out
    }

    /// `(A^{-1}, A^{-1} b)`.
    pub fn inverse(&self) -> Self {
        let inv = invert_rows(self.rows()).expect("AffinePerm matrix is invertible");
        let mut rows = [0u32; MAX_DIM];
        rows[..self.dim()].copy_from_slice(&inv);
        let mut out = AffinePerm {
            dim: self.dim,
            rows,
            shift: 0,
        };
        out.shift = out.mul_vec(self.shift);
        out
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &AffinePerm) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut rows = [0u32; MAX_DIM];
        for (r, out) in rows.iter_mut().enumerate().take(self.dim()) {
            let row = self.rows[r];
            *out = (0..self.dim())
                .filter(|&c| (row >> c) & 1 == 1)
                .fold(0u32, |acc, c| acc ^ other.rows[c]);
        }
        AffinePerm {
            dim: self.dim,
            rows,
            shift: self.mul_vec(other.shift) ^ self.shift,
        }
    }
}

impl fmt::Debug for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffinePerm({self})")
    }
}

/// `rows-as-hex;shift-as-hex`, e.g. `1,2,4;0` for the 3-bit identity.
impl fmt::Display for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows().iter().map(|r| format!("{r:x}")).collect();
        write!(f, "{};{:x}", rows.join(","), self.shift)
    }
}

impl FromStr for AffinePerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (rows, shift) = s
            .split_once(';')
            .ok_or_else(|| Error::ParsePerm(format!("missing ';' in {s:?}")))?;
        let hex = |t: &str| {
            u32::from_str_radix(t.trim(), 16).map_err(|e| Error::ParsePerm(format!("{t:?}: {e}")))
        };
        let rows = rows.split(',').map(hex).collect::<Result<Vec<_>>>()?;
        Self::from_parts(&rows, hex(shift)?)
    }
}
