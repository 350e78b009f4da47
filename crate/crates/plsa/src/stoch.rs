//! Small helpers for probability vectors.

/// Compensated summation; keeps row-sum checks meaningful for long rows.
pub(crate) fn kahan_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for x in values {
        let y = x - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Divides the row by its (compensated) sum. The caller guarantees sum > 0.
pub(crate) fn normalize(row: &mut [f64]) {
    let sum = kahan_sum(row.iter().copied());
    debug_assert!(sum > 0.0);
    for x in row.iter_mut() {
        *x /= sum;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_handles_many_small_terms() {
        let n = 100_000;
        let sum = kahan_sum((0..n).map(|_| 0.1));
        assert!((sum - n as f64 * 0.1).abs() < 1e-9);
    }

    #[test]
    fn normalize_produces_unit_sum() {
        let mut row = vec![0.2, 0.5, 1.7, 0.01];
        normalize(&mut row);
        assert!((kahan_sum(row.iter().copied()) - 1.0).abs() < 1e-15);
    }
}
