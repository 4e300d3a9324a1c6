//! Row emission in CSV or JSON-lines. Floats are written in shortest
//! round-trip form by both encoders.

use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    JsonLines,
}

pub fn write_rows<T, W>(rows: &[T], format: Format, out: W) -> std::io::Result<()>
where
    T: Serialize,
    W: Write,
{
    match format {
        Format::Csv => {
            let mut wtr = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(out);
            for row in rows {
                wtr.serialize(row).map_err(csv_to_io)?;
            }
            wtr.flush()
        }
        Format::JsonLines => {
            let mut out = out;
            for row in rows {
                serde_json::to_writer(&mut out, row)?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
    }
}

fn csv_to_io(e: csv::Error) -> std::io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => std::io::Error::other(format!("{other:?}")),
    }
}
