//! File formats: instance bundles, run configuration, frontier reports
//! and matching files.
//!
//! Everything is line-oriented plain text. Configuration documents use
//! `key = value` lines; record files use comma-separated fields. Blank
//! lines and `#` comments are skipped everywhere. Floating point values
//! are written with Rust's shortest round-trip formatting, so parsing
//! an emitted file reproduces the original values exactly.

use std::fs;
use std::path::{Path, PathBuf};

use supmatch::engine::CrossoverKind;
use supmatch::error::{Error, Result};
use supmatch::generator::PoolEntry;
use supmatch::{
    GAConfig, Matching, MutationParams, ProblemInstance, RankWeights, RankedPreference,
    ReferencePoint, TopicTree,
};

pub fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })
}

fn parse_err(path: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        line,
        msg: msg.into(),
    }
}

/// Lines that carry content: trimmed, non-empty, not comments.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn split_key_value<'a>(line: &'a str, path: &str, lineno: usize) -> Result<(&'a str, &'a str)> {
    let (k, v) = line
        .split_once('=')
        .ok_or_else(|| parse_err(path, lineno, "expected `key = value`"))?;
    Ok((k.trim(), v.trim()))
}

fn parse_f64(s: &str, path: &str, line: usize) -> Result<f64> {
    s.parse()
        .map_err(|_| parse_err(path, line, format!("invalid number `{s}`")))
}

fn parse_usize(s: &str, path: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| parse_err(path, line, format!("invalid integer `{s}`")))
}

fn parse_weights_list(s: &str, path: &str, line: usize) -> Result<Vec<f64>> {
    s.split(',')
        .map(|w| parse_f64(w.trim(), path, line))
        .collect()
}

fn fmt_weights(weights: &[f64]) -> String {
    weights
        .iter()
        .map(|w| w.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

// ---------------------------------------------------------------------------
// Preference and quota files

/// Parses `participant-id,topic-1,...,topic-k` records.
pub fn parse_preference_pool(text: &str, path: &str) -> Result<Vec<PoolEntry>> {
    let mut entries = Vec::new();
    let mut k = None;
    for (lineno, line) in content_lines(text) {
        let mut fields = line.split(',').map(str::trim);
        let id = fields
            .next()
            .filter(|s| !s.is_empty())
            .ok_or_else(|| parse_err(path, lineno, "missing participant id"))?;
        let topics: Vec<String> = fields.map(str::to_string).collect();
        if topics.is_empty() || topics.iter().any(String::is_empty) {
            return Err(parse_err(path, lineno, "empty topic field"));
        }
        match k {
            None => k = Some(topics.len()),
            Some(expect) if expect != topics.len() => {
                return Err(parse_err(
                    path,
                    lineno,
                    format!("expected {expect} topics, found {}", topics.len()),
                ));
            }
            _ => {}
        }
        entries.push(PoolEntry {
            id: id.to_string(),
            topics,
        });
    }
    if entries.is_empty() {
        return Err(parse_err(path, 1, "no preference records"));
    }
    Ok(entries)
}

pub fn emit_preferences(ids: &[String], prefs: &[RankedPreference], tree: &TopicTree) -> String {
    let mut out = String::new();
    for (id, pref) in ids.iter().zip(prefs) {
        out.push_str(id);
        for &t in pref.topics() {
            out.push(',');
            out.push_str(tree.name(t));
        }
        out.push('\n');
    }
    out
}

/// Parses `supervisor-id,c_min,c_max` records into quota maps.
pub fn parse_quotas(text: &str, path: &str) -> Result<Vec<(String, u32, u32)>> {
    let mut rows = Vec::new();
    for (lineno, line) in content_lines(text) {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(parse_err(path, lineno, "expected `supervisor-id,c_min,c_max`"));
        }
        let lo = parse_usize(fields[1], path, lineno)? as u32;
        let hi = parse_usize(fields[2], path, lineno)? as u32;
        rows.push((fields[0].to_string(), lo, hi));
    }
    if rows.is_empty() {
        return Err(parse_err(path, 1, "no quota records"));
    }
    Ok(rows)
}

pub fn emit_quotas(ids: &[String], c_min: &[u32], c_max: &[u32]) -> String {
    let mut out = String::new();
    for ((id, lo), hi) in ids.iter().zip(c_min).zip(c_max) {
        out.push_str(&format!("{id},{lo},{hi}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// Instance bundle

const INSTANCE_KEYS: [&str; 6] = [
    "taxonomy",
    "students",
    "supervisors",
    "quotas",
    "weights",
    "alpha",
];

/// Loads a problem instance from its configuration document. Relative
/// file references resolve against the document's directory.
pub fn load_instance(path: &Path) -> Result<ProblemInstance> {
    let text = read_to_string(path)?;
    let name = path.display().to_string();
    let dir = path.parent().unwrap_or_else(|| Path::new("."));

    let mut taxonomy = None;
    let mut students = None;
    let mut supervisors = None;
    let mut quotas = None;
    let mut weights = None;
    let mut alpha = None;
    for (lineno, line) in content_lines(&text) {
        let (key, value) = split_key_value(line, &name, lineno)?;
        match key {
            "taxonomy" => taxonomy = Some(dir.join(value)),
            "students" => students = Some(dir.join(value)),
            "supervisors" => supervisors = Some(dir.join(value)),
            "quotas" => quotas = Some(dir.join(value)),
            "weights" => weights = Some(parse_weights_list(value, &name, lineno)?),
            "alpha" => alpha = Some(parse_f64(value, &name, lineno)?),
            other => {
                return Err(parse_err(
                    &name,
                    lineno,
                    format!("unknown key `{other}` (expected one of {INSTANCE_KEYS:?})"),
                ))
            }
        }
    }
    let missing = |what: &str| Error::Parse {
        path: name.clone(),
        line: 1,
        msg: format!("missing required key `{what}`"),
    };
    let taxonomy_path = taxonomy.ok_or_else(|| missing("taxonomy"))?;
    let students_path = students.ok_or_else(|| missing("students"))?;
    let supervisors_path = supervisors.ok_or_else(|| missing("supervisors"))?;
    let quotas_path = quotas.ok_or_else(|| missing("quotas"))?;
    let weights = RankWeights::new(weights.ok_or_else(|| missing("weights"))?)?;
    let alpha = alpha.ok_or_else(|| missing("alpha"))?;

    let tree = TopicTree::parse_named(
        &read_to_string(&taxonomy_path)?,
        &taxonomy_path.display().to_string(),
    )?;
    let student_pool = parse_preference_pool(
        &read_to_string(&students_path)?,
        &students_path.display().to_string(),
    )?;
    let supervisor_pool = parse_preference_pool(
        &read_to_string(&supervisors_path)?,
        &supervisors_path.display().to_string(),
    )?;
    let quota_rows = parse_quotas(
        &read_to_string(&quotas_path)?,
        &quotas_path.display().to_string(),
    )?;

    let mut student_ids = Vec::new();
    let mut student_prefs = Vec::new();
    for e in &student_pool {
        student_ids.push(e.id.clone());
        student_prefs.push(RankedPreference::from_names(&e.topics, &tree)?);
    }
    let mut supervisor_ids = Vec::new();
    let mut supervisor_prefs = Vec::new();
    for e in &supervisor_pool {
        supervisor_ids.push(e.id.clone());
        supervisor_prefs.push(RankedPreference::from_names(&e.topics, &tree)?);
    }
    // quotas are matched to supervisors by id
    let mut c_min = vec![0u32; supervisor_ids.len()];
    let mut c_max = vec![0u32; supervisor_ids.len()];
    let mut seen = vec![false; supervisor_ids.len()];
    for (id, lo, hi) in &quota_rows {
        match supervisor_ids.iter().position(|s| s == id) {
            Some(j) => {
                if seen[j] {
                    return Err(Error::InvalidInstance(format!(
                        "duplicate quota row for supervisor `{id}`"
                    )));
                }
                seen[j] = true;
                c_min[j] = *lo;
                c_max[j] = *hi;
            }
            None => {
                return Err(Error::InvalidInstance(format!(
                    "quota row for unknown supervisor `{id}`"
                )))
            }
        }
    }
    if let Some(j) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidInstance(format!(
            "no quota row for supervisor `{}`",
            supervisor_ids[j]
        )));
    }

    ProblemInstance::new(
        student_ids,
        supervisor_ids,
        student_prefs,
        supervisor_prefs,
        c_min,
        c_max,
        weights,
        alpha,
        tree,
    )
}

/// Writes the four record files plus the instance document into `dir`
/// using fixed file names. Returns the document path.
pub fn write_instance_bundle(dir: &Path, instance: &ProblemInstance) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|source| Error::File {
        path: dir.display().to_string(),
        source,
    })?;
    write_file(&dir.join("taxonomy.csv"), &instance.tree().emit())?;
    write_file(
        &dir.join("students.csv"),
        &emit_preferences(
            instance.student_ids(),
            instance.student_prefs(),
            instance.tree(),
        ),
    )?;
    write_file(
        &dir.join("supervisors.csv"),
        &emit_preferences(
            instance.supervisor_ids(),
            instance.supervisor_prefs(),
            instance.tree(),
        ),
    )?;
    write_file(
        &dir.join("quotas.csv"),
        &emit_quotas(instance.supervisor_ids(), instance.c_min(), instance.c_max()),
    )?;
    let doc = format!(
        "taxonomy = taxonomy.csv\n\
         students = students.csv\n\
         supervisors = supervisors.csv\n\
         quotas = quotas.csv\n\
         weights = {}\n\
         alpha = {}\n",
        fmt_weights(instance.weights().as_slice()),
        instance.alpha()
    );
    let doc_path = dir.join("instance.cfg");
    write_file(&doc_path, &doc)?;
    Ok(doc_path)
}

// ---------------------------------------------------------------------------
// Run configuration

/// The solver configuration document. `alpha` and `weights` are
/// optional overrides of the instance's values; `seed` is an optional
/// default that the `--seed` flag takes precedence over.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfigFile {
    pub pop_max: usize,
    pub it_max: usize,
    pub patience: usize,
    pub p_mt: f64,
    pub p_sw: f64,
    pub alpha: Option<f64>,
    pub crossover: CrossoverKind,
    pub k_points: usize,
    pub ref_x: f64,
    pub ref_y: f64,
    pub weights: Option<Vec<f64>>,
    pub seed: Option<u64>,
}

impl Default for RunConfigFile {
    fn default() -> Self {
        RunConfigFile {
            pop_max: 128,
            it_max: 250,
            patience: 20,
            p_mt: 0.05,
            p_sw: 0.2,
            alpha: None,
            crossover: CrossoverKind::Gsp,
            k_points: 8,
            ref_x: 1.0,
            ref_y: 1.0,
            weights: None,
            seed: None,
        }
    }
}

impl RunConfigFile {
    pub fn parse(text: &str, path: &str) -> Result<Self> {
        let mut cfg = RunConfigFile::default();
        for (lineno, line) in content_lines(text) {
            let (key, value) = split_key_value(line, path, lineno)?;
            match key {
                "pop_max" => cfg.pop_max = parse_usize(value, path, lineno)?,
                "it_max" => cfg.it_max = parse_usize(value, path, lineno)?,
                "patience" => cfg.patience = parse_usize(value, path, lineno)?,
                "p_mt" => cfg.p_mt = parse_f64(value, path, lineno)?,
                "p_sw" => cfg.p_sw = parse_f64(value, path, lineno)?,
                "alpha" => cfg.alpha = Some(parse_f64(value, path, lineno)?),
                "crossover" => cfg.crossover = CrossoverKind::parse(value)?,
                "k_points" => cfg.k_points = parse_usize(value, path, lineno)?,
                "ref_x" => cfg.ref_x = parse_f64(value, path, lineno)?,
                "ref_y" => cfg.ref_y = parse_f64(value, path, lineno)?,
                "weights" => cfg.weights = Some(parse_weights_list(value, path, lineno)?),
                "seed" => {
                    cfg.seed = Some(value.parse().map_err(|_| {
                        parse_err(path, lineno, format!("invalid seed `{value}`"))
                    })?)
                }
                other => {
                    return Err(parse_err(path, lineno, format!("unknown key `{other}`")))
                }
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read_to_string(path)?, &path.display().to_string())
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("pop_max = {}\n", self.pop_max));
        out.push_str(&format!("it_max = {}\n", self.it_max));
        out.push_str(&format!("patience = {}\n", self.patience));
        out.push_str(&format!("p_mt = {}\n", self.p_mt));
        out.push_str(&format!("p_sw = {}\n", self.p_sw));
        if let Some(alpha) = self.alpha {
            out.push_str(&format!("alpha = {alpha}\n"));
        }
        out.push_str(&format!("crossover = {}\n", self.crossover.as_str()));
        out.push_str(&format!("k_points = {}\n", self.k_points));
        out.push_str(&format!("ref_x = {}\n", self.ref_x));
        out.push_str(&format!("ref_y = {}\n", self.ref_y));
        if let Some(weights) = &self.weights {
            out.push_str(&format!("weights = {}\n", fmt_weights(weights)));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed = {seed}\n"));
        }
        out
    }

    /// Applies the overrides to an instance and builds the engine
    /// configuration for one run with the resolved seed.
    pub fn resolve(
        &self,
        mut instance: ProblemInstance,
        seed: u64,
    ) -> Result<(ProblemInstance, GAConfig)> {
        if let Some(weights) = &self.weights {
            instance = instance.with_weights(RankWeights::new(weights.clone())?)?;
        }
        if let Some(alpha) = self.alpha {
            instance = instance.with_alpha(alpha)?;
        }
        let config = GAConfig {
            pop_max: self.pop_max,
            it_max: self.it_max,
            patience: self.patience,
            mutation: MutationParams {
                p_mt: self.p_mt,
                p_sw: self.p_sw,
            },
            crossover: self.crossover,
            k_points: self.k_points,
            alpha: instance.alpha(),
            reference: ReferencePoint {
                x: self.ref_x,
                y: self.ref_y,
            },
            seed,
        };
        config.validate()?;
        Ok((instance, config))
    }

    /// The configuration as actually used by a run, for echoing next to
    /// its outputs.
    pub fn echo(&self, instance: &ProblemInstance, seed: u64) -> RunConfigFile {
        RunConfigFile {
            alpha: Some(instance.alpha()),
            weights: Some(instance.weights().as_slice().to_vec()),
            seed: Some(seed),
            ..self.clone()
        }
    }
}

// ---------------------------------------------------------------------------
// Matching files and frontier reports

/// Emits `student-id,supervisor-id` records.
pub fn emit_matching(matching: &Matching, instance: &ProblemInstance) -> String {
    let mut out = String::new();
    for i in 0..matching.n() {
        out.push_str(&format!(
            "{},{}\n",
            instance.student_ids()[i],
            instance.supervisor_ids()[matching.supervisor_of(i)]
        ));
    }
    out
}

/// Parses a matching file against its instance.
pub fn parse_matching(text: &str, instance: &ProblemInstance, path: &str) -> Result<Matching> {
    let mut assignment = vec![u32::MAX; instance.n()];
    for (lineno, line) in content_lines(text) {
        let (student, supervisor) = line
            .split_once(',')
            .ok_or_else(|| parse_err(path, lineno, "expected `student-id,supervisor-id`"))?;
        let i = instance
            .student_ids()
            .iter()
            .position(|s| s == student.trim())
            .ok_or_else(|| parse_err(path, lineno, format!("unknown student `{student}`")))?;
        let j = instance
            .supervisor_ids()
            .iter()
            .position(|s| s == supervisor.trim())
            .ok_or_else(|| {
                parse_err(path, lineno, format!("unknown supervisor `{supervisor}`"))
            })?;
        if assignment[i] != u32::MAX {
            return Err(parse_err(
                path,
                lineno,
                format!("student `{student}` assigned twice"),
            ));
        }
        assignment[i] = j as u32;
    }
    if let Some(i) = assignment.iter().position(|&j| j == u32::MAX) {
        return Err(parse_err(
            path,
            1,
            format!("student `{}` has no assignment", instance.student_ids()[i]),
        ));
    }
    Ok(Matching::from_assignment(assignment, instance.m()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontierEntry {
    pub f_students: f64,
    pub f_supervisors: f64,
    pub matching_file: String,
}

/// The frontier report: indicator value, reference point, exactness
/// flag and one record per nondominated point.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontierReport {
    pub s_metric: f64,
    pub ref_x: f64,
    pub ref_y: f64,
    pub exact: bool,
    pub entries: Vec<FrontierEntry>,
}

impl FrontierReport {
    pub fn emit(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("s_metric = {}\n", self.s_metric));
        out.push_str(&format!("ref_x = {}\n", self.ref_x));
        out.push_str(&format!("ref_y = {}\n", self.ref_y));
        out.push_str(&format!("exact = {}\n", self.exact));
        out.push('\n');
        out.push_str("# f_students,f_supervisors,matching\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{}\n",
                e.f_students, e.f_supervisors, e.matching_file
            ));
        }
        out
    }

    pub fn parse(text: &str, path: &str) -> Result<Self> {
        let mut s_metric = None;
        let mut ref_x = None;
        let mut ref_y = None;
        let mut exact = None;
        let mut entries = Vec::new();
        for (lineno, line) in content_lines(text) {
            if line.contains('=') {
                let (key, value) = split_key_value(line, path, lineno)?;
                match key {
                    "s_metric" => s_metric = Some(parse_f64(value, path, lineno)?),
                    "ref_x" => ref_x = Some(parse_f64(value, path, lineno)?),
                    "ref_y" => ref_y = Some(parse_f64(value, path, lineno)?),
                    "exact" => {
                        exact = Some(value.parse().map_err(|_| {
                            parse_err(path, lineno, format!("invalid boolean `{value}`"))
                        })?)
                    }
                    other => {
                        return Err(parse_err(path, lineno, format!("unknown key `{other}`")))
                    }
                }
            } else {
                let fields: Vec<&str> = line.split(',').map(str::trim).collect();
                if fields.len() != 3 {
                    return Err(parse_err(
                        path,
                        lineno,
                        "expected `f_students,f_supervisors,matching`",
                    ));
                }
                entries.push(FrontierEntry {
                    f_students: parse_f64(fields[0], path, lineno)?,
                    f_supervisors: parse_f64(fields[1], path, lineno)?,
                    matching_file: fields[2].to_string(),
                });
            }
        }
        let missing = |what: &str| parse_err(path, 1, format!("missing key `{what}`"));
        Ok(FrontierReport {
            s_metric: s_metric.ok_or_else(|| missing("s_metric"))?,
            ref_x: ref_x.ok_or_else(|| missing("ref_x"))?,
            ref_y: ref_y.ok_or_else(|| missing("ref_y"))?,
            exact: exact.ok_or_else(|| missing("exact"))?,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use supmatch::generator::{self, GenerateParams};
    use supmatch::rng::substream;

    fn sample_instance() -> ProblemInstance {
        let tree = generator::synthetic_taxonomy();
        let mut rng = substream(3, 60);
        let students = generator::synthetic_pool(&tree, 12, 5, "s", &mut rng);
        let supervisors = generator::synthetic_pool(&tree, 4, 5, "r", &mut rng);
        let params = GenerateParams {
            n: 9,
            m: 3,
            surplus_percent: 20.0,
            ..GenerateParams::default()
        };
        generator::generate_instance(&params, &tree, &students, &supervisors, &mut rng)
            .unwrap()
            .instance
    }

    #[test]
    fn instance_bundle_round_trips() {
        let inst = sample_instance();
        let dir = tempfile::tempdir().unwrap();
        let doc = write_instance_bundle(dir.path(), &inst).unwrap();
        let back = load_instance(&doc).unwrap();
        assert_eq!(inst, back);
    }

    #[test]
    fn run_config_round_trips() {
        let cfg = RunConfigFile {
            pop_max: 64,
            it_max: 99,
            patience: 7,
            p_mt: 0.15,
            p_sw: 0.35,
            alpha: Some(1.5),
            crossover: CrossoverKind::HopcroftKarp,
            k_points: 4,
            ref_x: 1.0,
            ref_y: 2.0,
            weights: Some(vec![0.5, 0.25, 0.125, 0.0625, 0.03125]),
            seed: Some(123456789),
        };
        let back = RunConfigFile::parse(&cfg.emit(), "<test>").unwrap();
        assert_eq!(cfg, back);
        // defaults parse from an empty document
        let dflt = RunConfigFile::parse("", "<test>").unwrap();
        assert_eq!(dflt, RunConfigFile::default());
    }

    #[test]
    fn run_config_rejects_unknown_keys_and_bad_values() {
        assert!(RunConfigFile::parse("bogus = 1\n", "<t>").is_err());
        assert!(RunConfigFile::parse("p_mt = zebra\n", "<t>").is_err());
        assert!(RunConfigFile::parse("crossover = simulated-annealing\n", "<t>").is_err());
    }

    #[test]
    fn config_overrides_apply_to_instance() {
        let inst = sample_instance();
        let cfg = RunConfigFile {
            alpha: Some(3.5),
            weights: Some(vec![0.4, 0.3, 0.2, 0.05, 0.05]),
            ..RunConfigFile::default()
        };
        let (effective, ga) = cfg.resolve(inst, 11).unwrap();
        assert_eq!(effective.alpha(), 3.5);
        assert_eq!(ga.alpha, 3.5);
        assert_eq!(effective.weights().as_slice()[0], 0.4);
        assert_eq!(ga.seed, 11);
    }

    #[test]
    fn matching_file_round_trips() {
        let inst = sample_instance();
        let m = Matching::random_feasible(&inst, &mut substream(4, 61));
        let text = emit_matching(&m, &inst);
        let back = parse_matching(&text, &inst, "<test>").unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn matching_parse_rejects_incomplete_files() {
        let inst = sample_instance();
        let m = Matching::random_feasible(&inst, &mut substream(5, 61));
        let text = emit_matching(&m, &inst);
        let truncated: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
        assert!(parse_matching(&truncated, &inst, "<test>").is_err());
        let doubled = format!("{text}{}", text.lines().next().unwrap());
        assert!(parse_matching(&doubled, &inst, "<test>").is_err());
    }

    #[test]
    fn frontier_report_round_trips() {
        let report = FrontierReport {
            s_metric: 0.79,
            ref_x: 1.0,
            ref_y: 1.0,
            exact: false,
            entries: vec![
                FrontierEntry {
                    f_students: 0.2,
                    f_supervisors: 0.6,
                    matching_file: "m_000.csv".into(),
                },
                FrontierEntry {
                    f_students: 0.5,
                    f_supervisors: 0.3,
                    matching_file: "m_001.csv".into(),
                },
            ],
        };
        let back = FrontierReport::parse(&report.emit(), "<test>").unwrap();
        assert_eq!(report, back);
    }
}
