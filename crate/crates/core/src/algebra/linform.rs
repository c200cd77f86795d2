use std::ops::{Add, Neg, Sub};

/// An integer combination a₁x₁ + … + a_kx_k of ambient variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    pub coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn zero(n: usize) -> Self {
        LinearForm { coeffs: vec![0; n] }
    }

    pub fn unit(i: usize, n: usize) -> Self {
        let mut f = Self::zero(n);
        f.coeffs[i] = 1;
        f
    }

    pub fn new(coeffs: Vec<i64>) -> Self {
        LinearForm { coeffs }
    }

    /// x_i + x_{i+1} + … + x_{j-1}
    pub fn range_sum(i: usize, j: usize, n: usize) -> Self {
        let mut f = Self::zero(n);
        for k in i..j {
            f.coeffs[k] = 1;
        }
        f
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        LinearForm { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }
}

impl Add for &LinearForm {
    type Output = LinearForm;
    fn add(self, o: &LinearForm) -> LinearForm {
        debug_assert_eq!(self.len(), o.len());
        LinearForm { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &LinearForm {
    type Output = LinearForm;
    fn sub(self, o: &LinearForm) -> LinearForm {
        debug_assert_eq!(self.len(), o.len());
        LinearForm { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        self.scale(-1)
    }
}

impl Add for LinearForm {
    type Output = LinearForm;
    fn add(self, o: LinearForm) -> LinearForm {
        &self + &o
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;
    fn sub(self, o: LinearForm) -> LinearForm {
        &self - &o
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        self.scale(-1)
    }
}
