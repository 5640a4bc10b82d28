//! Command output as sections of key/value pairs and tables, rendered as
//! aligned text or CSV.

use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Clone)]
pub enum Section {
    Fields(Vec<(String, String)>),
    Table { header: Vec<String>, rows: Vec<Vec<String>> },
    Raw(String),
}

#[derive(Debug, Clone, Default)]
pub struct Output {
    sections: Vec<Section>,
}

impl Output {
    pub fn fields(&mut self, fields: Vec<(&str, String)>) {
        self.sections.push(Section::Fields(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect()));
    }

    pub fn table(&mut self, header: &[&str], rows: Vec<Vec<String>>) {
        self.sections.push(Section::Table { header: header.iter().map(|s| s.to_string()).collect(), rows });
    }

    pub fn raw(&mut self, text: String) {
        self.sections.push(Section::Raw(text));
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 && !matches!(s, Section::Raw(_)) {
                out.push('\n');
            }
            match (s, format) {
                (Section::Raw(text), _) => out.push_str(text),
                (Section::Fields(f), Format::Text) => {
                    let w = f.iter().map(|(k, _)| k.len() + 1).max().unwrap_or(0);
                    for (k, v) in f {
                        writeln!(out, "{:<w$} {v}", format!("{k}:")).unwrap();
                    }
                }
                (Section::Fields(f), Format::Csv) => {
                    out.push_str("key,value\n");
                    for (k, v) in f {
                        writeln!(out, "{},{}", csv_cell(k), csv_cell(v)).unwrap();
                    }
                }
                (Section::Table { header, rows }, Format::Text) => {
                    let widths: Vec<usize> = (0..header.len())
                        .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
                        .collect();
                    let line = |cells: &[String]| {
                        cells
                            .iter()
                            .zip(&widths)
                            .map(|(c, w)| format!("{c:>w$}"))
                            .collect::<Vec<_>>()
                            .join("  ")
                    };
                    writeln!(out, "{}", line(header)).unwrap();
                    for r in rows {
                        writeln!(out, "{}", line(r)).unwrap();
                    }
                }
                (Section::Table { header, rows }, Format::Csv) => {
                    writeln!(out, "{}", header.iter().map(|h| csv_cell(h)).collect::<Vec<_>>().join(",")).unwrap();
                    for r in rows {
                        writeln!(out, "{}", r.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(",")).unwrap();
                    }
                }
            }
        }
        out
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn float(v: f64) -> String {
    format!("{v:.8}")
}
