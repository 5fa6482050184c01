//! The command pipeline behind the CLI: generate, lon, mllon, metrics and
//! the full sweep.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use log::info;
use serde::{Deserialize, Serialize};

use crate::artifact::{self, ExportFormat, Network, METRICS_CSV_HEADER, MULTILAYER};
use crate::basin::{check_capacity, enumerate_basins_with, BasinMap, EnumerateOptions, Provenance};
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::lon::{build_lon, Lon};
use crate::metrics::{compute_report_with, local_point_clouds, MetricsOptions, MetricsReport};
use crate::mllon::{build_mllon, flatten, Mllon, MllonConfig};
use crate::neighborhood::OperatorKind;
use crate::nk::NkInstance;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: usize,
    pub ks: Vec<usize>,
    pub seed: u64,
    /// Instances per K; replicate `r` uses seed `seed + r`.
    pub replicates: usize,
    pub operators: Vec<OperatorKind>,
    pub mllon: MllonConfig,
    pub out_dir: PathBuf,
    pub workers: usize,
    pub export: Vec<ExportFormat>,
    pub allow_large: bool,
    /// Compute all-pairs hop distances (`l_mean`).
    pub path_lengths: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 18,
            ks: vec![2, 4, 6, 8, 10, 12, 14, 16],
            seed: 1,
            replicates: 1,
            operators: vec![OperatorKind::BitFlip, OperatorKind::OneSwap],
            mllon: MllonConfig::default(),
            out_dir: PathBuf::from("out"),
            workers: 1,
            export: vec![ExportFormat::Csv],
            allow_large: false,
            path_lengths: true,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        if self.ks.is_empty() {
            return Err(Error::InvalidParameter("k list is empty".into()));
        }
        if let Some(k) = self.ks.iter().find(|&&k| k >= self.n) {
            return Err(Error::InvalidParameter(format!("k = {k} must be at most n - 1 = {}", self.n - 1)));
        }
        if self.workers == 0 {
            return Err(Error::InvalidParameter("worker count must be at least 1".into()));
        }
        if self.replicates == 0 {
            return Err(Error::InvalidParameter("replicates must be at least 1".into()));
        }
        if self.operators.is_empty() {
            return Err(Error::InvalidParameter("no operators selected".into()));
        }
        for (i, op) in self.operators.iter().enumerate() {
            if self.operators[..i].contains(op) {
                return Err(Error::InvalidParameter(format!("operator {op} listed twice")));
            }
        }
        self.mllon.validate()
    }

    pub fn seeds(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.replicates as u64).map(move |r| self.seed.wrapping_add(r))
    }

    fn enumerate_options(&self) -> EnumerateOptions {
        EnumerateOptions { workers: self.workers, allow_large: self.allow_large }
    }
}

pub fn instance_file_name(k: usize, seed: u64) -> String {
    format!("nk_k{k:02}_seed{seed}.json")
}

/// Writes one instance file per `(k, seed)` into `cfg.out_dir`.
pub fn cmd_generate(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    cfg.validate()?;
    fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::io(&cfg.out_dir, e))?;
    let mut written = Vec::new();
    for seed in cfg.seeds() {
        for &k in &cfg.ks {
            let inst = NkInstance::generate(cfg.n, k, seed)?;
            let path = cfg.out_dir.join(instance_file_name(k, seed));
            artifact::write_instance(&path, &inst)?;
            written.push(path);
        }
    }
    Ok(written)
}

pub struct LonOutcome {
    pub basins: BasinMap,
    pub lon: Lon,
}

pub fn compute_lon(inst: &NkInstance, op: OperatorKind, opts: &EnumerateOptions) -> Result<LonOutcome> {
    let started = Instant::now();
    let basins = enumerate_basins_with(inst, op, opts)?;
    let lon = match opts.workers {
        0 => build_lon(inst, op, &basins)?,
        w => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(|| build_lon(inst, op, &basins))?,
    };
    info!(
        "n={} k={} seed={} {op}: nv={} ne={} ({:.2?})",
        inst.n(),
        inst.k(),
        inst.seed(),
        lon.nv(),
        lon.ne(),
        started.elapsed()
    );
    Ok(LonOutcome { basins, lon })
}

/// Enumerates basins and builds the LON of one instance file.
pub fn cmd_lon(
    instance: &Path,
    op: OperatorKind,
    out_dir: &Path,
    opts: &EnumerateOptions,
    export: &[ExportFormat],
) -> Result<LonOutcome> {
    let inst = artifact::read_instance(instance)?;
    check_capacity(inst.n(), opts.allow_large)?;
    let outcome = compute_lon(&inst, op, opts)?;
    artifact::write_lon_artifact(out_dir, &outcome.basins, &outcome.lon, export)?;
    Ok(outcome)
}

/// Combines LON artifacts of one instance into a multi-layer artifact.
pub fn cmd_mllon(inputs: &[PathBuf], cfg: MllonConfig, out_dir: &Path, export: &[ExportFormat]) -> Result<Mllon> {
    if inputs.len() < 2 {
        return Err(Error::InvalidArgument(format!("mllon needs at least two LON artifacts, got {}", inputs.len())));
    }
    let mut loaded = Vec::with_capacity(inputs.len());
    for dir in inputs {
        loaded.push(artifact::read_lon_artifact(dir)?);
    }
    let first = loaded[0].1.provenance;
    for (dir, (_, lon)) in inputs.iter().zip(&loaded) {
        if lon.provenance != first {
            return Err(Error::Provenance(format!(
                "{} was built from n={} k={} seed={}, expected n={} k={} seed={}",
                dir.display(),
                lon.provenance.n,
                lon.provenance.k,
                lon.provenance.seed,
                first.n,
                first.k,
                first.seed
            )));
        }
    }
    let layers: Vec<_> = loaded.iter().map(|(bm, lon)| (lon.operator, bm, lon)).collect();
    let m = build_mllon(&layers, cfg)?;
    artifact::write_mllon_artifact(out_dir, &m, export)?;
    Ok(m)
}

pub struct MetricsOutcome {
    pub label: String,
    pub provenance: Provenance,
    pub report: MetricsReport,
}

pub fn write_metrics_for(
    graph: &Digraph,
    label: &str,
    provenance: &Provenance,
    out_dir: &Path,
    opts: &MetricsOptions,
) -> Result<MetricsReport> {
    let started = Instant::now();
    let report = compute_report_with(graph, opts)?;
    let clouds = local_point_clouds(graph)?;
    artifact::write_metrics_outputs(out_dir, label, provenance, &report, &clouds)?;
    info!(
        "k={} seed={} {label}: metrics for nv={} ne={} ({:.2?})",
        provenance.k,
        provenance.seed,
        graph.nv(),
        graph.ne(),
        started.elapsed()
    );
    Ok(report)
}

/// Computes the metric report and point clouds of a LON or multi-layer artifact.
pub fn cmd_metrics(network_dir: &Path, out_dir: &Path, opts: &MetricsOptions) -> Result<MetricsOutcome> {
    let Network { label, provenance, graph } = artifact::read_network(network_dir)?;
    let report = write_metrics_for(&graph, &label, &provenance, out_dir, opts)?;
    Ok(MetricsOutcome { label, provenance, report })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub network: String,
    pub provenance: Provenance,
    pub report: MetricsReport,
}

pub fn network_rank(label: &str) -> usize {
    match label {
        "bitflip" => 0,
        "swap" => 1,
        MULTILAYER => 2,
        _ => 3,
    }
}

/// Runs generate → lon (per operator) → mllon → metrics for every K and
/// replicate, then writes consolidated tables.
///
/// Layout: `<out>/seed<S>/k<KK>/{instance.json, lon_<op>/, mllon/, metrics_<network>/}`
/// plus `<out>/metrics.csv`, `<out>/table1.csv` and `<out>/table2.csv`.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    check_capacity(cfg.n, cfg.allow_large)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    pool.install(|| sweep_inner(cfg))
}

fn sweep_inner(cfg: &RunConfig) -> Result<Vec<SweepRow>> {
    let metrics_opts = MetricsOptions { path_lengths: cfg.path_lengths };
    let enum_opts = EnumerateOptions { workers: 0, ..cfg.enumerate_options() };
    let mut rows = Vec::new();
    for seed in cfg.seeds() {
        for &k in &cfg.ks {
            let dir = cfg.out_dir.join(format!("seed{seed}")).join(format!("k{k:02}"));
            fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
            let inst = NkInstance::generate(cfg.n, k, seed)?;
            artifact::write_instance(&dir.join("instance.json"), &inst)?;
            let provenance = Provenance::of(&inst);

            let mut layers = Vec::new();
            for &op in &cfg.operators {
                let outcome = compute_lon(&inst, op, &enum_opts)?;
                artifact::write_lon_artifact(
                    &dir.join(format!("lon_{}", op.name())),
                    &outcome.basins,
                    &outcome.lon,
                    &cfg.export,
                )?;
                let g = Digraph::from_lon(&outcome.lon);
                let report = write_metrics_for(
                    &g,
                    op.name(),
                    &provenance,
                    &dir.join(format!("metrics_{}", op.name())),
                    &metrics_opts,
                )?;
                rows.push(SweepRow { network: op.name().to_string(), provenance, report });
                layers.push(outcome);
            }

            if layers.len() >= 2 {
                let refs: Vec<_> = layers.iter().map(|o| (o.lon.operator, &o.basins, &o.lon)).collect();
                let m = build_mllon(&refs, cfg.mllon)?;
                artifact::write_mllon_artifact(&dir.join("mllon"), &m, &cfg.export)?;
                let g = flatten(&m);
                let report =
                    write_metrics_for(&g, MULTILAYER, &provenance, &dir.join("metrics_multilayer"), &metrics_opts)?;
                rows.push(SweepRow { network: MULTILAYER.to_string(), provenance, report });
            }
        }
    }
    rows.sort_by_key(|r| (r.provenance.seed, network_rank(&r.network), r.provenance.k));
    write_tables(&cfg.out_dir, &rows)?;
    Ok(rows)
}

fn write_tables(out: &Path, rows: &[SweepRow]) -> Result<()> {
    let fmt = |v: Option<f64>| v.map(artifact::fmt_real).unwrap_or_else(|| "NA".into());
    let mut all = format!("# tool={}\n{METRICS_CSV_HEADER}\n", artifact::TOOL);
    let mut t1 = format!("# tool={}\nnetwork,k,seed,nv,ne,knn,fnn\n", artifact::TOOL);
    let mut t2 = format!("# tool={}\nnetwork,k,seed,wcc,wcc_r,l,st,y2,zout,l_go\n", artifact::TOOL);
    for row in rows {
        let (p, r) = (&row.provenance, &row.report);
        all.push_str(&artifact::metrics_csv_row(&row.network, p, r));
        all.push('\n');
        t1.push_str(&format!("{},{},{},{},{},{},{}\n", row.network, p.k, p.seed, r.nv, r.ne, fmt(r.knn), fmt(r.fnn)));
        t2.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            row.network,
            p.k,
            p.seed,
            artifact::fmt_real(r.wcc_mean),
            fmt(r.wcc_rand),
            fmt(r.l_mean),
            fmt(r.st_mean),
            fmt(r.y2_mean),
            fmt(r.zout_mean),
            fmt(r.l_go_mean)
        ));
    }
    for (name, text) in [("metrics.csv", all), ("table1.csv", t1), ("table2.csv", t2)] {
        let path = out.join(name);
        fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_matches_experiment() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.n, 18);
        assert_eq!(cfg.ks, vec![2, 4, 6, 8, 10, 12, 14, 16]);
        assert_eq!(cfg.mllon, MllonConfig { p_sl: 0.0, p_co_mirror: 1.0, p_co_diff: 0.0 });
        cfg.validate().unwrap();
    }

    #[test]
    fn validation_errors() {
        let bad_k = RunConfig { ks: vec![18], ..RunConfig::default() };
        assert!(matches!(bad_k.validate(), Err(Error::InvalidParameter(_))));
        let no_workers = RunConfig { workers: 0, ..RunConfig::default() };
        assert!(no_workers.validate().is_err());
        let dup = RunConfig { operators: vec![OperatorKind::BitFlip; 2], ..RunConfig::default() };
        assert!(dup.validate().is_err());
    }

    #[test]
    fn mllon_needs_two_inputs() {
        let dir = tempfile::tempdir().unwrap();
        let err = cmd_mllon(&[dir.path().to_path_buf()], MllonConfig::default(), dir.path(), &[]).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }
}
