use super::AnalysisError;

/// Reference `N`-bit addition on 128-bit integers: `(sum mod 2^N, carry)`.
pub fn oracle_add(a: u64, b: u64, cin: bool, width: usize) -> Result<(u64, bool), AnalysisError> {
    if width == 0 || width > 64 {
        return Err(AnalysisError::OperandRange { value: 0, width });
    }
    let limit = 1u128 << width;
    for value in [a, b] {
        if value as u128 >= limit {
            return Err(AnalysisError::OperandRange { value, width });
        }
    }
    let total = a as u128 + b as u128 + cin as u128;
    Ok(((total % limit) as u64, total >> width & 1 == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(oracle_add(0, 0, false, 32), Ok((0, false)));
        assert_eq!(oracle_add((1 << 32) - 1, 1, false, 32), Ok((0, true)));
        assert_eq!(oracle_add(200, 100, true, 8), Ok((45, true)));
        assert_eq!(
            oracle_add(u64::MAX, u64::MAX, true, 64),
            Ok((u64::MAX, true))
        );
    }

    #[test]
    fn range_checked() {
        assert!(matches!(
            oracle_add(256, 0, false, 8),
            Err(AnalysisError::OperandRange { value: 256, .. })
        ));
    }
}
