//! Deterministic CSV formatting.

/// Shortest-roundtrip-independent rendering with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

/// Writes a header row followed by `rows`, comma separated with `\n` endings.
pub fn records<R, I>(headers: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = ::csv::WriterBuilder::new().terminator(::csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(headers).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

/// Writes a table with a single header row. All columns must have the same
/// length.
pub fn table(headers: &[&str], columns: &[&[f64]]) -> String {
    assert_eq!(headers.len(), columns.len());
    let rows = columns.first().map_or(0, |c| c.len());
    assert!(columns.iter().all(|c| c.len() == rows));
    records(headers, (0..rows).map(|i| columns.iter().map(move |c| fmt_f64(c[i]))))
}

/// Named columns of equal length.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, values: Vec<f64>) {
        self.headers.push(name.into());
        self.columns.push(values);
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.headers.iter().position(|h| h == name).map(|i| self.columns[i].as_slice())
    }

    pub fn to_csv(&self) -> String {
        let h: Vec<&str> = self.headers.iter().map(String::as_str).collect();
        let c: Vec<&[f64]> = self.columns.iter().map(Vec::as_slice).collect();
        table(&h, &c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_f64(0.28), "2.8000000000000003e-1");
        assert_eq!(fmt_f64(-9e-4), "-8.9999999999999998e-4");
        assert_eq!(fmt_f64(f64::NAN), "nan");
        let s = fmt_f64(std::f64::consts::PI);
        assert_eq!(s.parse::<f64>().unwrap(), std::f64::consts::PI);
    }

    #[test]
    fn table_layout() {
        let t = table(&["a", "b"], &[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(t.lines().count(), 3);
        assert!(t.starts_with("a,b\n1.0000000000000000e0,3.0000000000000000e0\n"));
    }
}
