//! Plain-text oracle cache.
//!
//! One `key=value` pair per line, keys prefixed by the problem id:
//!
//! ```text
//! griewangk.f_max=...
//! griewangk.optimum_fitness=0
//! griewangk.witness=100000000010000000001000000000
//! ```
//!
//! Floats are written in Rust's shortest round-trip form so a reload is exact.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use super::{BenchmarkProblem, Oracle, ProblemId};
use crate::error::{Error, Result};

/// Whether [`OracleCache::initialize`] read the cache or had to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Computed,
}

#[derive(Debug)]
pub struct OracleCache {
    path: PathBuf,
}

impl OracleCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn conflict(&self, message: impl Into<String>) -> Error {
        Error::CacheConflict {
            path: self.path.clone(),
            message: message.into(),
        }
    }

    /// Reads every record in the file; a missing file is an empty cache.
    pub fn load(&self) -> Result<BTreeMap<ProblemId, Oracle>> {
        let text = match fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
            Err(e) => return Err(e.into()),
        };
        let mut fields: BTreeMap<ProblemId, BTreeMap<String, String>> = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: &str| Error::Parse {
                what: format!("oracle cache line {}", lineno + 1),
                message: message.to_string(),
            };
            let (key, value) = line.split_once('=').ok_or_else(|| parse_err("expected key=value"))?;
            let (id, field) = key
                .trim()
                .split_once('.')
                .ok_or_else(|| parse_err("expected <problem>.<field>"))?;
            let id: ProblemId = id.parse()?;
            fields
                .entry(id)
                .or_default()
                .insert(field.to_string(), value.trim().to_string());
        }
        fields
            .into_iter()
            .map(|(id, f)| Ok((id, self.record_from_fields(id, &f)?)))
            .collect()
    }

    fn record_from_fields(&self, id: ProblemId, f: &BTreeMap<String, String>) -> Result<Oracle> {
        let get = |name: &str| {
            f.get(name)
                .ok_or_else(|| self.conflict(format!("record `{id}` lacks `{name}`")))
        };
        let float = |name: &str, s: &str| {
            s.parse::<f64>()
                .map_err(|e| self.conflict(format!("`{id}.{name}`: {e}")))
        };
        let f_max = match get("f_max")?.as_str() {
            "none" => None,
            s => Some(float("f_max", s)?),
        };
        Ok(Oracle {
            f_max,
            optimum_fitness: float("optimum_fitness", get("optimum_fitness")?)?,
            witness: get("witness")?.parse()?,
        })
    }

    fn render(records: &BTreeMap<ProblemId, Oracle>) -> String {
        let mut out = String::from("# grid oracle cache\n");
        for (id, o) in records {
            let f_max = o.f_max.map_or_else(|| "none".to_string(), |v| v.to_string());
            out.push_str(&format!("{id}.f_max={f_max}\n"));
            out.push_str(&format!("{id}.optimum_fitness={}\n", o.optimum_fitness));
            out.push_str(&format!("{id}.witness={}\n", o.witness));
        }
        out
    }

    /// Adds a record. An existing record with different values is an error;
    /// an identical one is left alone.
    pub fn store(&self, id: ProblemId, oracle: &Oracle) -> Result<()> {
        let mut records = self.load()?;
        if let Some(existing) = records.get(&id) {
            if existing != oracle {
                return Err(self.conflict(format!(
                    "cached record for `{id}` ({existing:?}) differs from computed ({oracle:?})"
                )));
            }
            return Ok(());
        }
        records.insert(id, oracle.clone());
        if let Some(parent) = self.path.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent)?;
            }
        }
        fs::write(&self.path, Self::render(&records))?;
        Ok(())
    }

    /// Installs the cached oracle into `problem`, computing and persisting it
    /// first if the cache has no record for the problem.
    pub fn initialize(&self, problem: &mut BenchmarkProblem) -> Result<CacheStatus> {
        let id = problem.id();
        if let Some(oracle) = self.load()?.remove(&id) {
            problem
                .set_oracle(oracle)
                .map_err(|e| self.conflict(format!("record for `{id}` rejected: {e}")))?;
            return Ok(CacheStatus::Hit);
        }
        let oracle = problem.compute_oracle()?;
        self.store(id, &oracle)?;
        problem.set_oracle(oracle)?;
        Ok(CacheStatus::Computed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compute_then_hit() {
        let dir = tempfile::tempdir().unwrap();
        let cache = OracleCache::new(dir.path().join("oracles.txt"));
        let mut p = BenchmarkProblem::new(ProblemId::Sphere);
        assert_eq!(cache.initialize(&mut p).unwrap(), CacheStatus::Computed);
        let mut q = BenchmarkProblem::new(ProblemId::Sphere);
        assert_eq!(cache.initialize(&mut q).unwrap(), CacheStatus::Hit);
        assert_eq!(p.oracle(), q.oracle());

        let mut m = BenchmarkProblem::new(ProblemId::OneMax);
        assert_eq!(cache.initialize(&mut m).unwrap(), CacheStatus::Computed);
        let text = fs::read_to_string(cache.path()).unwrap();
        assert!(text.contains("one_max.f_max=none"));
        assert!(text.contains("one_max.optimum_fitness=45"));
        assert_eq!(cache.load().unwrap().len(), 2);
    }

    #[test]
    fn conflicting_record_is_a_hard_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("oracles.txt");
        let cache = OracleCache::new(&path);
        let p = BenchmarkProblem::initialized(ProblemId::Step).unwrap();
        let good = p.oracle().unwrap().clone();
        cache.store(ProblemId::Step, &good).unwrap();
        cache.store(ProblemId::Step, &good).unwrap();

        let mut bad = good.clone();
        bad.f_max = Some(26.0);
        let before = fs::read_to_string(&path).unwrap();
        assert!(matches!(
            cache.store(ProblemId::Step, &bad),
            Err(Error::CacheConflict { .. })
        ));
        assert_eq!(fs::read_to_string(&path).unwrap(), before);
    }

    #[test]
    fn inconsistent_cached_record_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("oracles.txt");
        fs::write(
            &path,
            "step.f_max=25\nstep.optimum_fitness=54\nstep.witness=".to_string()
                + &"0".repeat(50)
                + "\n",
        )
        .unwrap();
        let mut p = BenchmarkProblem::new(ProblemId::Step);
        assert!(matches!(
            OracleCache::new(&path).initialize(&mut p),
            Err(Error::CacheConflict { .. })
        ));
    }

    #[test]
    fn malformed_lines_are_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("oracles.txt");
        fs::write(&path, "step f_max 25\n").unwrap();
        assert!(OracleCache::new(&path).load().is_err());
        fs::write(&path, "nosuch.f_max=1\n").unwrap();
        assert!(matches!(
            OracleCache::new(&path).load(),
            Err(Error::UnknownProblem(_))
        ));
    }
}
