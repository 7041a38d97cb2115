//! Recompute the six reference tables and diff each against its golden copy.

use fracpart::tables::{TableArtifact, TableId};
use fracpart::Precision;

fn main() -> fracpart::Result<()> {
    let only: Option<TableId> = std::env::args().nth(1).map(|s| s.parse()).transpose()?;
    for id in TableId::ALL.into_iter().filter(|id| only.is_none_or(|o| o == *id)) {
        let table = TableArtifact::compute(id, Precision::default())?;
        print!("{}", table.to_plain()?);
        print!("{}", table.diff()?.render());
        println!();
    }
    Ok(())
}
