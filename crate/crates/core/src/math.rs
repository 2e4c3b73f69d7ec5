//! Small numeric helpers shared across modules.

/// Binomial coefficient as a float.
///
/// Exact integer arithmetic while the result fits in `u64` (all `n <= 62`),
/// otherwise a running product over the smaller of `k` and `n - k`.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    if n <= 62 {
        let mut acc: u128 = 1;
        for j in 1..=k as u128 {
            // acc * (n - k + j) / j stays integral at every step
            acc = acc * (n as u128 - k as u128 + j) / j;
        }
        return acc as f64;
    }
    let mut acc = 1.0_f64;
    for j in 1..=k {
        acc = acc * (n - k + j) as f64 / j as f64;
    }
    acc
}

/// Neumaier-compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}
