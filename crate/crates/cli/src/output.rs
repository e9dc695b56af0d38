//! CSV and JSON emission of result tables.

use std::io::Write;

use serde::Serialize;

use crate::args::Format;
use crate::error::{CliError, CliResult};

/// A table row with a fixed column layout.
pub trait Row: Serialize {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

/// Scientific notation with 17 significant digits and '.' as decimal separator.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn io_error(e: impl std::fmt::Display) -> CliError {
    CliError::config(format!("cannot write output: {e}"))
}

pub fn write_table<R: Row>(rows: &[R], format: Format, out: &mut dyn Write) -> CliResult<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(R::HEADER).map_err(io_error)?;
            for row in rows {
                w.write_record(row.fields()).map_err(io_error)?;
            }
            w.flush().map_err(io_error)
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows).map_err(io_error)?;
            writeln!(out).map_err(io_error)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Demo {
        name: String,
        x: f64,
    }

    impl Row for Demo {
        const HEADER: &'static [&'static str] = &["name", "x"];
        fn fields(&self) -> Vec<String> {
            vec![self.name.clone(), fmt_f64(self.x)]
        }
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_f64(-0.5), "-5.0000000000000000e-1");
        let s = fmt_f64(1.0 / 3.0);
        assert_eq!(s.parse::<f64>().unwrap(), 1.0 / 3.0);
        assert_eq!(fmt_f64(f64::NAN), "NaN");
    }

    #[test]
    fn csv_quoting() {
        let rows = [Demo {
            name: "a,b \"c\"".into(),
            x: 0.25,
        }];
        let mut buf = Vec::new();
        write_table(&rows, Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "name,x\n\"a,b \"\"c\"\"\",2.5000000000000000e-1\n");
    }
}
