//! Deterministic serialisation: every float is written in scientific
//! notation with 12 significant digits, CSV uses LF line endings, JSON keys
//! come out in a fixed order.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use super::CliError;

/// `x` with 12 significant digits, e.g. `5.07458058005e-2`.
pub fn sci(x: f64) -> String {
    if x.is_finite() {
        format!("{:.11e}", x)
    } else {
        x.to_string()
    }
}

/// Pretty JSON with floats routed through [`sci`].
struct SciFormatter<'a> {
    inner: PrettyFormatter<'a>,
}

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(fn $name<W: ?Sized + Write>(&mut self, writer: &mut W $(, $arg: $ty)*) -> io::Result<()> {
            self.inner.$name(writer $(, $arg)*)
        })*
    };
}

impl Formatter for SciFormatter<'_> {
    delegate! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        begin_object_value();
        end_object_value();
    }

    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(sci(value).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(
        &mut buf,
        SciFormatter {
            inner: PrettyFormatter::with_indent(b"  "),
        },
    );
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = to_json(value)?;
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// One CSV cell.
pub enum Cell {
    Float(f64),
    Int(u64),
    Bool(bool),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Float(x) => sci(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

pub fn write_csv<I>(path: &Path, header: &[&str], rows: I) -> Result<usize, CliError>
where
    I: IntoIterator<Item = Vec<Cell>>,
{
    let file = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(io::BufWriter::new(file));
    writer.write_record(header)?;
    let mut count = 0;
    for row in rows {
        writer.write_record(row.iter().map(Cell::render))?;
        count += 1;
    }
    writer.flush().map_err(|e| CliError::io(path, e))?;
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sci(0.0507458058005029), "5.07458058005e-2");
        assert_eq!(sci(1.0), "1.00000000000e0");
        assert_eq!(sci(-15.629), "-1.56290000000e1");
    }

    #[test]
    fn json_floats_are_scientific() {
        #[derive(Serialize)]
        struct Row {
            a: f64,
            b: u64,
            c: Option<f64>,
            d: f64,
        }
        let text = to_json(&Row {
            a: 0.25,
            b: 3,
            c: None,
            d: f64::NAN,
        })
        .unwrap();
        assert_eq!(
            text,
            "{\n  \"a\": 2.50000000000e-1,\n  \"b\": 3,\n  \"c\": null,\n  \"d\": null\n}\n"
        );
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["a"], 0.25);
    }

    #[test]
    fn csv_has_header_and_lf() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.csv");
        let n = write_csv(
            &path,
            &["a", "b", "c"],
            vec![vec![Cell::Float(0.5), Cell::Int(7), Cell::Bool(true)]],
        )
        .unwrap();
        assert_eq!(n, 1);
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "a,b,c\n5.00000000000e-1,7,true\n");
    }
}
