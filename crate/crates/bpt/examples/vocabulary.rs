//! Token id layouts for the three factorizations of the 7-bit grid, plus
//! the naive single-index vocabulary they replace.

use bpt::{naive_index, BptConfig, QuantizedVertex};

fn main() -> Result<(), bpt::Error> {
    let r = 128u64;
    eprintln!(
        "naive indexing needs r^3 = {} ids (e.g. (127,127,127) -> {})",
        r * r * r,
        naive_index(QuantizedVertex::new(127, 127, 127), 7)
    );
    eprintln!();
    eprintln!(
        "{:>6} {:>7} {:>16} {:>16} {:>16} {:>6} {:>6} {:>6} {:>7}",
        "B", "O", "offsets", "common-block", "center-block", "BOS", "EOS", "PAD", "total"
    );
    for (blocks, offsets) in [(4u16, 32u16), (8, 16), (16, 8)] {
        let layout = BptConfig::new(blocks, offsets, 7)?.layout();
        eprintln!(
            "{:>6} {:>7} {:>16} {:>16} {:>16} {:>6} {:>6} {:>6} {:>7}",
            blocks,
            offsets,
            format!("{:?}", layout.offset_range()),
            format!("{:?}", layout.common_block_range()),
            format!("{:?}", layout.center_block_range()),
            layout.bos(),
            layout.eos(),
            layout.pad(),
            layout.total()
        );
    }
    Ok(())
}
