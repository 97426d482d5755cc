use crate::adders::{AdderSpec, ClaStyle, PrefixTopology};

/// The ten-adder 32-bit comparison set.
pub fn table3_roster() -> Vec<AdderSpec> {
    roster(32)
}

/// The comparison set at any width from 1 to 64. At 32 bits this is
/// exactly the reference roster; other widths scale each structure:
/// 4-bit skip blocks and CLA modules where they divide the width, four
/// equal select blocks, and a hybrid with a three-quarter lookahead part.
/// A 1-bit roster has no hybrid, since that needs at least one bit on
/// each side of the split.
pub fn roster(width: usize) -> Vec<AdderSpec> {
    let unit = if width.is_multiple_of(4) {
        4
    } else if width.is_multiple_of(2) {
        2
    } else {
        1
    };
    let blocks = if width.is_multiple_of(4) {
        vec![width / 4; 4]
    } else {
        split(width, 4)
    };
    let cla_modules = vec![unit; width / unit];
    let (k, fbha_modules) = if width == 32 {
        (24, vec![2, 2, 4, 4, 4, 8])
    } else {
        let k = width - (width / 4).max(1);
        (k, split(k, 4))
    };
    let mut specs = vec![
        AdderSpec::rca(width),
        AdderSpec::cska(width, unit),
        AdderSpec::cond_sum(width),
        AdderSpec::csla(width, &blocks),
        AdderSpec::cla(width, &cla_modules, ClaStyle::Conventional),
        AdderSpec::cla(width, &cla_modules, ClaStyle::DelayOptimized),
        AdderSpec::prefix(width, PrefixTopology::BrentKung),
        AdderSpec::prefix(width, PrefixTopology::Sklansky),
        AdderSpec::prefix(width, PrefixTopology::KoggeStone),
    ];
    if k > 0 {
        specs.push(AdderSpec::fbha(
            width,
            k,
            &fbha_modules,
            ClaStyle::DelayOptimized,
        ));
    }
    specs
}

/// Chunks of at most `size`, the short remainder first.
fn split(total: usize, size: usize) -> Vec<usize> {
    let mut out = Vec::new();
    if !total.is_multiple_of(size) {
        out.push(total % size);
    }
    out.extend(std::iter::repeat_n(size, total / size));
    out
}

/// The eight named 32-bit hybrids with a 24-bit lookahead part, least
/// significant module first, in the order `2x12, 4x6, 6x4, 8x3, 84444,
/// 66444, 844422, 664422`.
pub fn table2_variants() -> Vec<Vec<usize>> {
    [
        vec![2; 12],
        vec![4; 6],
        vec![6; 4],
        vec![8; 3],
        vec![8, 4, 4, 4, 4],
        vec![6, 6, 4, 4, 4],
        vec![8, 4, 4, 4, 2, 2],
        vec![6, 6, 4, 4, 2, 2],
    ]
    .into_iter()
    .map(|mut msf| {
        msf.reverse();
        msf
    })
    .collect()
}
