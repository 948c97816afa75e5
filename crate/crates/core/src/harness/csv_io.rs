use std::io::{Read, Write};
use std::path::Path;

use super::SeriesStats;
use crate::Error;

/// One parsed row of a series file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPoint {
    pub episode: usize,
    pub reward: f64,
    pub error: f64,
}

const HEADER: [&str; 3] = ["episode", "reward", "error"];

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

/// Writes `episode,reward,error` rows with six decimals.
pub fn write_series<W: Write>(series: &SeriesStats, out: W) -> Result<(), Error> {
    let mut w = writer(out);
    w.write_record(HEADER)?;
    for e in &series.episodes {
        w.write_record([
            e.episode.to_string(),
            format!("{:.6}", e.mean_reward),
            format!("{:.6}", e.std_error),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv(series: &SeriesStats, path: impl AsRef<Path>) -> Result<(), Error> {
    let file = std::fs::File::create(path)?;
    write_series(series, std::io::BufWriter::new(file))
}

pub fn read_series<R: Read>(input: R) -> Result<Vec<SeriesPoint>, Error> {
    let mut reader = csv::Reader::from_reader(input);
    let header = reader.headers()?;
    if header.iter().ne(HEADER) {
        return Err(Error::InvalidConfig(format!(
            "expected header {}, found {}",
            HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    reader
        .records()
        .map(|record| {
            let record = record?;
            let field = |i: usize| {
                record
                    .get(i)
                    .ok_or_else(|| Error::InvalidConfig(format!("missing column {}", HEADER[i])))
            };
            let bad = |i: usize| Error::InvalidConfig(format!("invalid {} value", HEADER[i]));
            Ok(SeriesPoint {
                episode: field(0)?.parse().map_err(|_| bad(0))?,
                reward: field(1)?.parse().map_err(|_| bad(1))?,
                error: field(2)?.parse().map_err(|_| bad(2))?,
            })
        })
        .collect()
}

/// Per-step record of a query agent, as written by [`write_trace`].
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub run: usize,
    pub episode: usize,
    pub t: usize,
    pub x: String,
    pub q: String,
    pub success: bool,
    pub reward: f64,
}

pub fn write_trace<W: Write>(rows: &[TraceRow], out: W) -> Result<(), Error> {
    let mut w = writer(out);
    w.write_record(["run", "episode", "t", "x", "q", "success", "reward"])?;
    for r in rows {
        w.write_record([
            r.run.to_string(),
            r.episode.to_string(),
            r.t.to_string(),
            r.x.clone(),
            r.q.clone(),
            u8::from(r.success).to_string(),
            format!("{:.6}", r.reward),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::EpisodeStats;

    fn series(rewards: &[(f64, f64)]) -> SeriesStats {
        SeriesStats {
            runs: 20,
            episodes: rewards
                .iter()
                .enumerate()
                .map(|(episode, &(mean_reward, std_error))| EpisodeStats {
                    episode,
                    mean_reward,
                    std_error,
                    mean_steps: 1.0,
                    truncated_fraction: 0.0,
                })
                .collect(),
        }
    }

    fn render(s: &SeriesStats) -> String {
        let mut buf = Vec::new();
        write_series(s, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn empty_series_is_header_only() {
        assert_eq!(render(&series(&[])), "episode,reward,error\n");
    }

    #[test]
    fn two_episodes_three_lines() {
        let text = render(&series(&[(-2999.95, 0.05), (5.0, 0.0)]));
        assert_eq!(text, "episode,reward,error\n0,-2999.950000,0.050000\n1,5.000000,0.000000\n");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn round_trip() {
        let s = series(&[(-1234.5678912, 3.21354977), (-1.0 / 3.0, 1e-7), (10.0, 0.0)]);
        let points = read_series(render(&s).as_bytes()).unwrap();
        assert_eq!(points.len(), 3);
        for (p, e) in points.iter().zip(&s.episodes) {
            assert_eq!(p.episode, e.episode);
            assert!((p.reward - e.mean_reward).abs() <= 1e-6);
            assert!((p.error - e.std_error).abs() <= 1e-6);
        }
    }

    #[test]
    fn file_output() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let s = series(&[(1.0, 0.5)]);
        write_csv(&s, &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), render(&s));
        assert!(write_csv(&s, dir.path().join("missing/s.csv")).is_err());
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(read_series("a,b,c\n1,2,3\n".as_bytes()).is_err());
        assert!(read_series("episode,reward,error\n1,x,3\n".as_bytes()).is_err());
    }

    #[test]
    fn trace_format() {
        let rows = [TraceRow {
            run: 0,
            episode: 2,
            t: 7,
            x: "F/#..#".into(),
            q: "L/.#..".into(),
            success: true,
            reward: -1.0,
        }];
        let mut buf = Vec::new();
        write_trace(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "run,episode,t,x,q,success,reward\n0,2,7,F/#..#,L/.#..,1,-1.000000\n"
        );
    }
}
