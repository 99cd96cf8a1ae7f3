//! Row writers for `scan`: aligned text, CSV, or JSON lines.

use std::io::{self, Write};

use sextic_index::engstrom::IndexValue;
use sextic_index::scan::{Agreement, ScanPrime, ScanRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

pub enum RowWriter<W: Write> {
    Text(W),
    Csv(Box<csv::Writer<W>>, Vec<u64>),
    Json(W),
}

fn splitting_text(s: &[(u64, u64)]) -> String {
    let parts: Vec<String> = s.iter().map(|(e, f)| format!("({e},{f})")).collect();
    format!("{{{}}}", parts.join(","))
}

fn index_text(v: &IndexValue) -> String {
    match v {
        IndexValue::Known { value, .. } => value.to_string(),
        IndexValue::Zero(_) => "0".into(),
        IndexValue::NotTabulated => "?".into(),
    }
}

fn agreement_text(a: Agreement) -> &'static str {
    match a {
        Agreement::None => "",
        Agreement::Agree => "agree",
        Agreement::Disagree => "DISAGREE",
    }
}

fn prime_text(sp: &ScanPrime) -> String {
    if let Some(e) = &sp.error {
        return format!("p={}: error ({e})", sp.p);
    }
    let mut s = format!("p={}: ", sp.p);
    match &sp.splitting {
        Some(split) => s.push_str(&splitting_text(split)),
        None => s.push('-'),
    }
    if let Some(v) = &sp.index {
        s.push_str(&format!(" v{}={}", sp.p, index_text(v)));
    }
    s
}

impl<W: Write> RowWriter<W> {
    pub fn new(format: Format, primes: &[u64], out: W) -> io::Result<Self> {
        Ok(match format {
            Format::Text => RowWriter::Text(out),
            Format::Json => RowWriter::Json(out),
            Format::Csv => {
                let mut primes = primes.to_vec();
                primes.sort_unstable();
                primes.dedup();
                let mut w = csv::Writer::from_writer(out);
                let mut header = vec![
                    "a".to_string(),
                    "b".into(),
                    "c".into(),
                    "m".into(),
                    "irreducibility".into(),
                ];
                for p in &primes {
                    header.push(format!("splitting_{p}"));
                    header.push(format!("index_{p}"));
                    header.push(format!("error_{p}"));
                }
                header.extend(["criteria", "agreement", "monogenic"].map(String::from));
                w.write_record(&header)?;
                RowWriter::Csv(Box::new(w), primes)
            }
        })
    }

    pub fn write(&mut self, row: &ScanRow) -> io::Result<()> {
        match self {
            RowWriter::Text(out) => {
                let primes: Vec<String> = row.primes.iter().map(prime_text).collect();
                write!(
                    out,
                    "a={} b={} c={} m={}  {}  {}  {}",
                    row.a,
                    row.b,
                    row.c,
                    row.m,
                    row.irreducibility,
                    primes.join("  "),
                    row.monogenic
                )?;
                if !row.criteria.is_empty() {
                    write!(out, "  [{}]", row.criteria.join(", "))?;
                }
                if row.agreement == Agreement::Disagree {
                    write!(out, "  DISAGREE")?;
                }
                writeln!(out)
            }
            RowWriter::Json(out) => {
                serde_json::to_writer(&mut *out, row)?;
                writeln!(out)
            }
            RowWriter::Csv(w, primes) => {
                let mut rec = vec![
                    row.a.to_string(),
                    row.b.to_string(),
                    row.c.to_string(),
                    row.m.to_string(),
                    row.irreducibility.clone(),
                ];
                // reducible rows carry no per-prime data; keep the columns aligned
                for p in primes.iter() {
                    let sp = row.primes.iter().find(|sp| sp.p == *p);
                    rec.push(
                        sp.and_then(|sp| sp.splitting.as_deref())
                            .map(splitting_text)
                            .unwrap_or_default(),
                    );
                    rec.push(sp.and_then(|sp| sp.index.as_ref()).map(index_text).unwrap_or_default());
                    rec.push(sp.and_then(|sp| sp.error.clone()).unwrap_or_default());
                }
                rec.push(row.criteria.join(";"));
                rec.push(agreement_text(row.agreement).to_string());
                rec.push(row.monogenic.clone());
                w.write_record(&rec).map_err(io::Error::other)
            }
        }
    }

    pub fn finish(self) -> io::Result<()> {
        match self {
            RowWriter::Text(mut out) | RowWriter::Json(mut out) => out.flush(),
            RowWriter::Csv(mut w, _) => w.flush(),
        }
    }
}
