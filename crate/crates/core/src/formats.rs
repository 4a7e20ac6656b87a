//! CSV layouts for recordings, annotations and count series.
//!
//! ```text
//! recording.csv    frame,t0,t1,...,t767     (row-major, row 0 = image top)
//! annotations.csv  frame,delta              (one row per nonzero change)
//! counts.csv       frame,count
//! ```
//!
//! Temperatures are written with the shortest decimal form that parses back
//! to the identical `f64`, so recordings round-trip bit-exactly. Files are
//! written to a temporary sibling and renamed into place.

use std::collections::btree_map::Entry;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, FormatError, Result};
use crate::frames::{
    AnnotationTrack, CountSeries, DeltaMap, Recording, RecordingMeta, ThermalFrame, PIXELS,
};

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
}

fn at(path: &Path) -> impl Fn(FormatError) -> Error + '_ {
    move |source| Error::Format {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes through a temporary file in the destination directory, then renames.
pub fn write_atomically<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    {
        let mut w = BufWriter::new(tmp.as_file());
        body(&mut w).map_err(io_err)?;
        w.flush().map_err(io_err)?;
    }
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

fn reader<R: Read>(r: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(r)
}

fn csv_err(e: csv::Error) -> FormatError {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    FormatError::Malformed {
        line,
        message: e.to_string(),
    }
}

fn check_header<R: Read>(rdr: &mut csv::Reader<R>, expected: &[&str]) -> Result<(), FormatError> {
    let header = rdr.headers().map_err(csv_err)?;
    if header.len() != expected.len() || header.iter().zip(expected).any(|(a, b)| a != *b) {
        return Err(FormatError::Header {
            expected: expected.join(","),
        });
    }
    Ok(())
}

fn line_of(record: &csv::StringRecord) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(0)
}

fn parse_field<T: std::str::FromStr>(record: &csv::StringRecord, i: usize, what: &str) -> Result<T, FormatError> {
    let raw = record.get(i).unwrap_or("");
    raw.parse().map_err(|_| FormatError::Malformed {
        line: line_of(record),
        message: format!("invalid {what} `{raw}`"),
    })
}

fn recording_header() -> Vec<String> {
    std::iter::once("frame".to_string())
        .chain((0..PIXELS).map(|i| format!("t{i}")))
        .collect()
}

/// Reads a recording from any reader; `meta` supplies what the CSV lacks.
pub fn read_recording<R: Read>(r: R, meta: RecordingMeta) -> Result<Recording, FormatError> {
    let mut rdr = reader(r);
    let header = recording_header();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    check_header(&mut rdr, &header)?;

    let mut frames = Vec::new();
    let mut temps = Vec::with_capacity(PIXELS);
    for record in rdr.records() {
        let record = record.map_err(csv_err)?;
        let frame: usize = parse_field(&record, 0, "frame index")?;
        if frame != frames.len() {
            return Err(FormatError::NonContiguous {
                expected: frames.len(),
                found: frame,
            });
        }
        temps.clear();
        for field in record.iter().skip(1) {
            // "NaN"/"inf" parse fine and are rejected by the frame check below.
            let t: f64 = field.parse().map_err(|_| FormatError::Malformed {
                line: line_of(&record),
                message: format!("frame {frame}: invalid temperature `{field}`"),
            })?;
            temps.push(t);
        }
        frames.push(ThermalFrame::new(frame, &temps)?);
    }
    Recording::new(frames, meta)
}

pub fn parse_recording(path: &Path, meta: RecordingMeta) -> Result<Recording> {
    read_recording(open(path)?, meta).map_err(at(path))
}

pub fn write_recording_to<W: Write + ?Sized>(rec: &Recording, w: &mut W) -> std::io::Result<()> {
    writeln!(w, "{}", recording_header().join(","))?;
    let mut line = String::with_capacity(PIXELS * 8);
    for frame in rec.frames() {
        use std::fmt::Write as _;
        line.clear();
        let _ = write!(line, "{}", frame.index());
        for t in frame.temps().iter() {
            let _ = write!(line, ",{t}");
        }
        line.push('\n');
        w.write_all(line.as_bytes())?;
    }
    Ok(())
}

pub fn write_recording(rec: &Recording, path: &Path) -> Result<()> {
    write_atomically(path, |w| write_recording_to(rec, w))
}

/// Reads `frame,delta` rows. The initial count is not part of the file.
pub fn read_annotations<R: Read>(r: R, initial_count: u32) -> Result<AnnotationTrack, FormatError> {
    let mut rdr = reader(r);
    check_header(&mut rdr, &["frame", "delta"])?;
    let mut deltas = DeltaMap::new();
    for record in rdr.records() {
        let record = record.map_err(csv_err)?;
        if record.len() != 2 {
            return Err(FormatError::Malformed {
                line: line_of(&record),
                message: format!("expected 2 fields, found {}", record.len()),
            });
        }
        let frame: usize = parse_field(&record, 0, "frame index")?;
        let delta: i64 = parse_field(&record, 1, "delta")?;
        if delta == 0 {
            return Err(FormatError::ZeroDelta { frame });
        }
        match deltas.entry(frame) {
            Entry::Occupied(_) => return Err(FormatError::DuplicateFrame { frame }),
            Entry::Vacant(slot) => {
                slot.insert(delta);
            }
        }
    }
    AnnotationTrack::new(deltas, initial_count)
}

pub fn parse_annotations(path: &Path, initial_count: u32) -> Result<AnnotationTrack> {
    read_annotations(open(path)?, initial_count).map_err(at(path))
}

pub fn write_annotations_to<W: Write + ?Sized>(deltas: &DeltaMap, w: &mut W) -> std::io::Result<()> {
    writeln!(w, "frame,delta")?;
    for (frame, delta) in deltas {
        writeln!(w, "{frame},{delta}")?;
    }
    Ok(())
}

pub fn write_annotations(ann: &AnnotationTrack, path: &Path) -> Result<()> {
    write_atomically(path, |w| write_annotations_to(ann.deltas(), w))
}

/// Reads `frame,count` rows; frames must run 0, 1, 2, ...
pub fn read_counts<R: Read>(r: R) -> Result<CountSeries, FormatError> {
    let mut rdr = reader(r);
    check_header(&mut rdr, &["frame", "count"])?;
    let mut counts = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_err)?;
        if record.len() != 2 {
            return Err(FormatError::Malformed {
                line: line_of(&record),
                message: format!("expected 2 fields, found {}", record.len()),
            });
        }
        let frame: usize = parse_field(&record, 0, "frame index")?;
        if frame != counts.len() {
            return Err(FormatError::NonContiguous {
                expected: counts.len(),
                found: frame,
            });
        }
        counts.push(parse_field(&record, 1, "count")?);
    }
    Ok(CountSeries { counts })
}

pub fn parse_counts(path: &Path) -> Result<CountSeries> {
    read_counts(open(path)?).map_err(at(path))
}

pub fn write_counts_to<W: Write + ?Sized>(series: &CountSeries, w: &mut W) -> std::io::Result<()> {
    writeln!(w, "frame,count")?;
    for (frame, count) in series.counts.iter().enumerate() {
        writeln!(w, "{frame},{count}")?;
    }
    Ok(())
}

pub fn write_counts(series: &CountSeries, path: &Path) -> Result<()> {
    write_atomically(path, |w| write_counts_to(series, w))
}
