pub mod cospec;
pub mod enumerate;
pub mod exec;
pub mod graphs;
pub mod polyalg;
pub mod spectral;

pub use exec::Exec;

/// Runs `rows` against an in-memory CSV writer.
pub(crate) fn write_csv(
    rows: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>,
) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    rows(&mut w).expect("writing to memory");
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 fields")
}
