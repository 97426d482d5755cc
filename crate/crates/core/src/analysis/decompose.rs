use super::AnalysisError;

/// Compositions of `k` into module sizes drawn from `allowed`, each listed
/// least-significant module first.
///
/// Enumeration runs over the most-significant-first reading (non-increasing
/// sizes) in ascending lexicographic order. When `max` truncates the list,
/// every uniform decomposition that fits is appended if it was cut off.
pub fn enumerate_decompositions(
    k: usize,
    allowed: &[usize],
    max: Option<usize>,
) -> Result<Vec<Vec<usize>>, AnalysisError> {
    let mut sizes: Vec<usize> = allowed.iter().copied().filter(|&s| s > 0).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let undecomposable = || AnalysisError::Undecomposable {
        k,
        sizes: allowed.to_vec(),
    };
    if k == 0 || sizes.is_empty() {
        return Err(undecomposable());
    }

    let mut all = Vec::new();
    let mut current = Vec::new();
    extend(k, &sizes, usize::MAX, &mut current, &mut all);
    if all.is_empty() {
        return Err(undecomposable());
    }
    all.sort();

    if let Some(max) = max {
        if all.len() > max {
            let uniform: Vec<Vec<usize>> = sizes
                .iter()
                .filter(|&&s| k.is_multiple_of(s))
                .map(|&s| vec![s; k / s])
                .collect();
            all.truncate(max);
            for u in uniform {
                if !all.contains(&u) {
                    all.push(u);
                }
            }
        }
    }
    for d in &mut all {
        d.reverse();
    }
    Ok(all)
}

fn extend(
    left: usize,
    sizes: &[usize],
    cap: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if left == 0 {
        out.push(current.clone());
        return;
    }
    for &s in sizes.iter().rev() {
        if s <= cap && s <= left {
            current.push(s);
            extend(left - s, sizes, s, current, out);
            current.pop();
        }
    }
}

/// Most-significant-first digit label, e.g. `[2,2,4,4,4,8]` gives `"844422"`.
/// Sizes of ten or more are separated by underscores to stay unambiguous.
pub fn msf_label(lsf: &[usize]) -> String {
    let parts: Vec<String> = lsf.iter().rev().map(|s| s.to_string()).collect();
    if lsf.iter().any(|&s| s >= 10) {
        parts.join("_")
    } else {
        parts.concat()
    }
}
