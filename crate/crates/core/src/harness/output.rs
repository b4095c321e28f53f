//! `stats.csv`, population snapshots, population files and P3 pixmaps.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;

use crate::domain::{AgentSequence, Population, Symbol};
use crate::evolution::GenerationStats;

use super::HarnessError;

pub const STATS_HEADER: &str =
    "generation,max_fitness,mean_fitness,mean_length,population_size,calculable_length,complexity,efficiency";

const STATS_COLUMNS: usize = 8;

/// A malformed line in a text input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }

    pub fn in_file(self, path: &Path) -> HarnessError {
        HarnessError::Format {
            path: path.to_path_buf(),
            line: self.line,
            message: self.message,
        }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormatError {}

fn real(x: f64) -> String {
    format!("{x:.9}")
}

/// The CSV text for `stats`: fixed header, one row per generation, reals
/// with nine digits after the point, unmeasurable fields left empty.
pub fn stats_csv(stats: &[GenerationStats<f64>]) -> String {
    let mut out = String::with_capacity(64 * (stats.len() + 1));
    out.push_str(STATS_HEADER);
    out.push('\n');
    for s in stats {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            s.generation,
            real(s.max_fitness),
            real(s.mean_fitness),
            real(s.mean_length),
            s.population_size,
            s.calculable_length,
            s.complexity.map(real).unwrap_or_default(),
            s.efficiency.map(real).unwrap_or_default(),
        );
    }
    out
}

pub fn write_stats_csv(stats: &[GenerationStats<f64>], path: &Path) -> Result<(), HarnessError> {
    fs::write(path, stats_csv(stats)).map_err(|e| HarnessError::io(path, e))
}

/// Reads back a file produced by [`stats_csv`].
pub fn parse_stats_csv(text: &str) -> Result<Vec<GenerationStats<f64>>, FormatError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == STATS_HEADER => {}
        _ => return Err(FormatError::new(1, "missing or unexpected header")),
    }
    lines
        .filter(|(_, l)| !l.is_empty())
        .map(|(index, row)| {
            let line = index + 1;
            let fields: Vec<&str> = row.split(',').collect();
            if fields.len() != STATS_COLUMNS {
                return Err(FormatError::new(
                    line,
                    format!("expected {STATS_COLUMNS} fields, found {}", fields.len()),
                ));
            }
            let int = |i: usize| {
                fields[i]
                    .parse::<usize>()
                    .map_err(|_| FormatError::new(line, format!("bad integer `{}`", fields[i])))
            };
            let float = |i: usize| {
                fields[i]
                    .parse::<f64>()
                    .map_err(|_| FormatError::new(line, format!("bad number `{}`", fields[i])))
            };
            let optional = |i: usize| {
                if fields[i].is_empty() {
                    Ok(None)
                } else {
                    float(i).map(Some)
                }
            };
            Ok(GenerationStats {
                generation: int(0)?,
                max_fitness: float(1)?,
                mean_fitness: float(2)?,
                mean_length: float(3)?,
                population_size: int(4)?,
                calculable_length: int(5)?,
                complexity: optional(6)?,
                efficiency: optional(7)?,
            })
        })
        .collect()
}

/// The members of one generation, one row per agent-sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub generation: usize,
    pub rows: Vec<Vec<Symbol>>,
}

impl Snapshot {
    pub fn of(generation: usize, population: &Population) -> Self {
        Self {
            generation,
            rows: population
                .members()
                .iter()
                .map(|m| m.symbols().to_vec())
                .collect(),
        }
    }

    pub fn text_file_name(&self) -> String {
        format!("snap_{}.txt", self.generation)
    }

    pub fn pixmap_file_name(&self) -> String {
        format!("snap_{}.ppm", self.generation)
    }

    /// Space-separated agent ids, one member per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let ids: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&ids.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Parses a population file: an `alphabet_size=<n>` header, then one member
/// per line as space-separated agent ids. Blank lines and `#` comments are
/// skipped.
pub fn parse_population(text: &str) -> Result<Population, FormatError> {
    let mut alphabet_size = None;
    let mut members = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some(size) = alphabet_size else {
            let value = content
                .split_once('=')
                .filter(|(k, _)| k.trim() == "alphabet_size")
                .map(|(_, v)| v.trim())
                .ok_or_else(|| FormatError::new(line, "expected `alphabet_size=<n>` header"))?;
            let size: usize = value
                .parse()
                .map_err(|_| FormatError::new(line, format!("bad alphabet size `{value}`")))?;
            if size < 2 {
                return Err(FormatError::new(line, "alphabet_size must be at least 2"));
            }
            alphabet_size = Some(size);
            continue;
        };
        let symbols = content
            .split_whitespace()
            .map(|t| {
                let s: Symbol = t
                    .parse()
                    .map_err(|_| FormatError::new(line, format!("bad agent id `{t}`")))?;
                if s >= size {
                    return Err(FormatError::new(
                        line,
                        format!("agent id {s} outside alphabet of size {size}"),
                    ));
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>, _>>()?;
        members.push(AgentSequence::new(symbols).expect("non-blank line has a token"));
    }
    let size =
        alphabet_size.ok_or_else(|| FormatError::new(1, "missing `alphabet_size=<n>` header"))?;
    Ok(Population::new(members, size).expect("ids checked against the alphabet"))
}

/// Colour of agent `symbol` in an alphabet of `alphabet_size`.
///
/// Hues are spaced evenly around the colour wheel (`360° · d / |D|`) at
/// saturation 0.75 and value 0.85, so no channel exceeds 217 and no agent is
/// ever drawn white. Only IEEE arithmetic is involved; output is identical
/// on every platform.
pub fn palette(symbol: Symbol, alphabet_size: usize) -> [u8; 3] {
    const SATURATION: f64 = 0.75;
    const VALUE: f64 = 0.85;
    let size = alphabet_size.max(1);
    let hue = 6.0 * (symbol % size) as f64 / size as f64;
    let sector = hue.floor();
    let fraction = hue - sector;
    let p = VALUE * (1.0 - SATURATION);
    let q = VALUE * (1.0 - SATURATION * fraction);
    let t = VALUE * (1.0 - SATURATION * (1.0 - fraction));
    let (r, g, b) = match sector as u8 {
        0 => (VALUE, t, p),
        1 => (q, VALUE, p),
        2 => (p, VALUE, t),
        3 => (p, q, VALUE),
        4 => (t, p, VALUE),
        _ => (VALUE, p, q),
    };
    let byte = |c: f64| (c * 255.0).round() as u8;
    [byte(r), byte(g), byte(b)]
}

const PADDING: [u8; 3] = [255, 255, 255];

/// Plain-text (P3) pixmap: one pixel row per member, one pixel per site,
/// left-aligned, ragged ends padded white.
pub fn render_snapshot(snapshot: &Snapshot, alphabet_size: usize) -> String {
    let width = snapshot.rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = format!("P3\n{} {}\n255\n", width, snapshot.rows.len());
    for row in &snapshot.rows {
        let pixels: Vec<String> = (0..width)
            .map(|col| {
                let [r, g, b] = row
                    .get(col)
                    .map_or(PADDING, |&symbol| palette(symbol, alphabet_size));
                format!("{r} {g} {b}")
            })
            .collect();
        out.push_str(&pixels.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(generation: usize, measurable: bool) -> GenerationStats<f64> {
        GenerationStats {
            generation,
            max_fitness: 1.0,
            mean_fitness: 1.0,
            mean_length: 2.0,
            population_size: 8,
            calculable_length: if measurable { 2 } else { 0 },
            complexity: measurable.then_some(2.0),
            efficiency: measurable.then_some(1.0),
        }
    }

    #[test]
    fn fixed_point_row() {
        let text = stats_csv(&[stats(0, true)]);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(STATS_HEADER));
        assert_eq!(
            lines.next(),
            Some("0,1.000000000,1.000000000,2.000000000,8,2,2.000000000,1.000000000")
        );
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn unmeasurable_fields_are_empty() {
        let text = stats_csv(&[stats(3, false)]);
        let row = text.lines().nth(1).unwrap();
        assert!(row.ends_with(",0,,"), "{row}");
        assert_eq!(row.split(',').count(), 8);
        assert_eq!(parse_stats_csv(&text).unwrap(), vec![stats(3, false)]);
    }

    #[test]
    fn parse_rejects_bad_rows() {
        assert_eq!(parse_stats_csv("nope\n").unwrap_err().line, 1);
        let text = format!("{STATS_HEADER}\n1,2,3\n");
        assert_eq!(parse_stats_csv(&text).unwrap_err().line, 2);
    }

    #[test]
    fn ragged_snapshot_pads_white() {
        let snapshot = Snapshot {
            generation: 0,
            rows: vec![vec![0], vec![0, 1]],
        };
        let image = render_snapshot(&snapshot, 2);
        let mut lines = image.lines();
        assert_eq!(lines.next(), Some("P3"));
        assert_eq!(lines.next(), Some("2 2"));
        assert_eq!(lines.next(), Some("255"));
        let [r, g, b] = palette(0, 2);
        assert_eq!(
            lines.next(),
            Some(format!("{r} {g} {b} 255 255 255").as_str())
        );
        let [r1, g1, b1] = palette(1, 2);
        assert_eq!(
            lines.next(),
            Some(format!("{r} {g} {b} {r1} {g1} {b1}").as_str())
        );
        assert_eq!(render_snapshot(&snapshot, 2), image);
    }

    #[test]
    fn palette_is_never_white_and_separates_small_alphabets() {
        for size in 2..=64 {
            let colours: Vec<[u8; 3]> = (0..size).map(|d| palette(d, size)).collect();
            assert!(colours.iter().all(|&c| c != PADDING));
            let mut unique = colours.clone();
            unique.sort_unstable();
            unique.dedup();
            assert_eq!(unique.len(), size, "alphabet {size}");
        }
        assert_eq!(palette(0, 3), [217, 54, 54]);
    }

    #[test]
    fn snapshot_text_and_population_file() {
        let snapshot = Snapshot {
            generation: 12,
            rows: vec![vec![2, 0], vec![1]],
        };
        assert_eq!(snapshot.to_text(), "2 0\n1\n");
        assert_eq!(snapshot.text_file_name(), "snap_12.txt");
        assert_eq!(snapshot.pixmap_file_name(), "snap_12.ppm");

        let population = parse_population("# demo\nalphabet_size=3\n2 0\n\n1\n").unwrap();
        assert_eq!(population.alphabet_size(), 3);
        assert_eq!(Snapshot::of(12, &population), snapshot);
    }

    #[test]
    fn population_file_errors() {
        assert_eq!(parse_population("0 1\n").unwrap_err().line, 1);
        assert_eq!(
            parse_population("alphabet_size=2\n0 2\n").unwrap_err().line,
            2
        );
        assert_eq!(
            parse_population("alphabet_size=2\n0 x\n").unwrap_err().line,
            2
        );
        assert!(parse_population("").is_err());
        assert!(parse_population("alphabet_size = 1").is_err());
    }
}
