//! On-disk formats.
//!
//! Every file records where it came from: JSON documents carry `tool`, `n`,
//! `k`, `seed` (and `operator` where one applies), CSV files start with a
//! comment line
//!
//! ```text
//! # tool=mllon/0.1.0 n=18 k=2 seed=1 operator=bitflip
//! ```
//!
//! followed by a header row. Reals in CSV files are written with 17
//! significant digits.
//!
//! A LON artifact is a directory:
//!
//! | file             | content                                              |
//! |------------------|------------------------------------------------------|
//! | `meta.json`      | provenance, `nv`, `ne`                               |
//! | `basins.bin`     | header + `2^n` little-endian `u32` optimum ids       |
//! | `optima.csv`     | `id,solution_int,fitness,basin_size`                 |
//! | `nodes.csv`      | `id,solution_int,fitness,basin_size,is_global_opt`   |
//! | `edges.csv`      | `src_id,dst_id,weight`                               |
//! | `self_mass.csv`  | `id,self_mass`                                       |
//!
//! A multi-layer artifact holds `meta.json`, `supra_nodes.csv` and
//! `supra_edges.csv` (`src_layer,src_id,dst_layer,dst_id,weight,edge_kind`).

use std::fmt::Write as _;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::basin::{BasinMap, Optimum, Provenance};
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::lon::{Edge, Lon, LonNode};
use crate::metrics::{LocalClouds, MetricsReport, PointCloud};
use crate::mllon::{EdgeKind, Mllon, MllonConfig, SupraEdge, SupraNode};
use crate::neighborhood::OperatorKind;
use crate::nk::NkInstance;

pub const TOOL: &str = concat!("mllon/", env!("CARGO_PKG_VERSION"));

const BASINS_MAGIC: &[u8; 8] = b"MLLONBSN";
const BASINS_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Csv,
    Graphml,
    Edgelist,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ExportFormat::Csv),
            "graphml" => Ok(ExportFormat::Graphml),
            "edgelist" => Ok(ExportFormat::Edgelist),
            other => Err(Error::InvalidArgument(format!("unknown export format `{other}`"))),
        }
    }
}

/// 17 significant digits; parses back to the same value. Negative zero
/// prints as zero.
pub fn fmt_real(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_real).unwrap_or_else(|| "NA".to_string())
}

pub fn provenance_line(p: &Provenance, operator: &str) -> String {
    format!("# tool={TOOL} n={} k={} seed={} operator={operator}\n", p.n, p.k, p.seed)
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn read_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|e| Error::io(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::parse(path, e))?;
    text.push('\n');
    write_file(path, text.as_bytes())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    serde_json::from_str(&read_string(path)?).map_err(|e| Error::parse(path, e))
}

/// A CSV file with one provenance comment line and a header.
struct CsvWriter {
    path: PathBuf,
    out: BufWriter<fs::File>,
}

impl CsvWriter {
    fn create(path: &Path, provenance: &Provenance, operator: &str, header: &str) -> Result<Self> {
        let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = Self { path: path.to_path_buf(), out: BufWriter::new(file) };
        w.raw(&provenance_line(provenance, operator))?;
        w.raw(header)?;
        w.raw("\n")?;
        Ok(w)
    }

    fn raw(&mut self, s: &str) -> Result<()> {
        self.out.write_all(s.as_bytes()).map_err(|e| Error::io(&self.path, e))
    }

    fn row(&mut self, fields: &[&str]) -> Result<()> {
        self.raw(&fields.join(","))?;
        self.raw("\n")
    }

    fn finish(mut self) -> Result<()> {
        self.out.flush().map_err(|e| Error::io(&self.path, e))
    }
}

/// Data rows of a CSV file: comment lines and the header are skipped, and
/// the header must match `expected`.
fn read_csv(path: &Path, expected: &str) -> Result<Vec<Vec<String>>> {
    let text = read_string(path)?;
    let mut lines = text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == expected => {}
        other => {
            return Err(Error::parse(path, format!("expected header `{expected}`, found {other:?}")));
        }
    }
    let width = expected.split(',').count();
    lines
        .map(|l| {
            let fields: Vec<String> = l.split(',').map(|f| f.trim().to_string()).collect();
            if fields.len() != width {
                return Err(Error::parse(path, format!("row `{l}` has {} fields, expected {width}", fields.len())));
            }
            Ok(fields)
        })
        .collect()
}

fn field<T: FromStr>(path: &Path, s: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e: T::Err| Error::parse(path, format!("bad value `{s}`: {e}")))
}

fn parse_bool(path: &Path, s: &str) -> Result<bool> {
    match s {
        "1" | "true" => Ok(true),
        "0" | "false" => Ok(false),
        _ => Err(Error::parse(path, format!("bad boolean `{s}`"))),
    }
}

// ---------------------------------------------------------------------------
// Instances

#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    format: String,
    tool: String,
    n: usize,
    k: usize,
    seed: u64,
    links: Vec<Vec<usize>>,
    tables: Vec<Vec<f64>>,
}

pub fn write_instance(path: &Path, inst: &NkInstance) -> Result<()> {
    let doc = InstanceDoc {
        format: "nk-instance".into(),
        tool: TOOL.into(),
        n: inst.n(),
        k: inst.k(),
        seed: inst.seed(),
        links: inst.links().to_vec(),
        tables: inst.tables().to_vec(),
    };
    let mut text = serde_json::to_string(&doc).map_err(|e| Error::parse(path, e))?;
    text.push('\n');
    write_file(path, text.as_bytes())
}

pub fn read_instance(path: &Path) -> Result<NkInstance> {
    let doc: InstanceDoc = read_json(path)?;
    if doc.format != "nk-instance" {
        return Err(Error::parse(path, format!("not an instance file (format `{}`)", doc.format)));
    }
    NkInstance::from_parts(doc.n, doc.k, doc.seed, doc.links, doc.tables).map_err(|e| Error::parse(path, e))
}

// ---------------------------------------------------------------------------
// LON artifacts

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LonMeta {
    pub format: String,
    pub tool: String,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub operator: OperatorKind,
    pub nv: usize,
    pub ne: usize,
}

impl LonMeta {
    pub fn provenance(&self) -> Provenance {
        Provenance { n: self.n, k: self.k, seed: self.seed }
    }
}

fn write_basins_bin(path: &Path, bm: &BasinMap) -> Result<()> {
    let p = bm.provenance;
    let mut buf = Vec::with_capacity(40 + 4 * bm.assignment.len());
    buf.extend_from_slice(BASINS_MAGIC);
    buf.extend_from_slice(&BASINS_VERSION.to_le_bytes());
    buf.extend_from_slice(&(p.n as u32).to_le_bytes());
    buf.extend_from_slice(&(p.k as u64).to_le_bytes());
    buf.extend_from_slice(&p.seed.to_le_bytes());
    buf.push(match bm.operator {
        OperatorKind::BitFlip => 0,
        OperatorKind::OneSwap => 1,
    });
    buf.extend_from_slice(&[0u8; 3]);
    buf.extend_from_slice(&(bm.optima.len() as u32).to_le_bytes());
    for id in &bm.assignment {
        buf.extend_from_slice(&id.to_le_bytes());
    }
    write_file(path, &buf)
}

fn read_basins_bin(path: &Path) -> Result<(Provenance, OperatorKind, Vec<u32>, usize)> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let bad = |msg: &str| Error::parse(path, msg.to_string());
    if bytes.len() < 40 || &bytes[..8] != BASINS_MAGIC {
        return Err(bad("not a basin map file"));
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let u64_at = |o: usize| u64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    if u32_at(8) != BASINS_VERSION {
        return Err(bad("unsupported basin map version"));
    }
    let n = u32_at(12) as usize;
    let provenance = Provenance { n, k: u64_at(16) as usize, seed: u64_at(24) };
    let operator = match bytes[32] {
        0 => OperatorKind::BitFlip,
        1 => OperatorKind::OneSwap,
        _ => return Err(bad("unknown operator tag")),
    };
    let num_optima = u32_at(36) as usize;
    if n > crate::basin::HARD_LIMIT || bytes.len() != 40 + 4 * (1usize << n) {
        return Err(bad("assignment length does not match n"));
    }
    let assignment: Vec<u32> = bytes[40..].chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect();
    if assignment.iter().any(|&id| id as usize >= num_optima) {
        return Err(bad("assignment references a missing optimum"));
    }
    Ok((provenance, operator, assignment, num_optima))
}

pub fn write_lon_artifact(dir: &Path, bm: &BasinMap, lon: &Lon, export: &[ExportFormat]) -> Result<()> {
    create_dir(dir)?;
    let p = lon.provenance;
    let op = lon.operator.name();
    let meta = LonMeta {
        format: "lon".into(),
        tool: TOOL.into(),
        n: p.n,
        k: p.k,
        seed: p.seed,
        operator: lon.operator,
        nv: lon.nv(),
        ne: lon.ne(),
    };
    write_json(&dir.join("meta.json"), &meta)?;
    write_basins_bin(&dir.join("basins.bin"), bm)?;

    let mut w = CsvWriter::create(&dir.join("optima.csv"), &p, op, "id,solution_int,fitness,basin_size")?;
    for (id, o) in bm.optima.iter().enumerate() {
        w.row(&[&id.to_string(), &o.solution.to_string(), &fmt_real(o.fitness), &bm.basin_sizes[id].to_string()])?;
    }
    w.finish()?;

    let mut w = CsvWriter::create(&dir.join("nodes.csv"), &p, op, "id,solution_int,fitness,basin_size,is_global_opt")?;
    for n in &lon.nodes {
        w.row(&[
            &n.id.to_string(),
            &n.solution.to_string(),
            &fmt_real(n.fitness),
            &n.basin_size.to_string(),
            if n.is_global { "1" } else { "0" },
        ])?;
    }
    w.finish()?;

    let mut w = CsvWriter::create(&dir.join("edges.csv"), &p, op, "src_id,dst_id,weight")?;
    for e in &lon.edges {
        w.row(&[&e.src.to_string(), &e.dst.to_string(), &fmt_real(e.weight)])?;
    }
    w.finish()?;

    let mut w = CsvWriter::create(&dir.join("self_mass.csv"), &p, op, "id,self_mass")?;
    for (id, m) in lon.self_mass.iter().enumerate() {
        w.row(&[&id.to_string(), &fmt_real(*m)])?;
    }
    w.finish()?;

    let g = Digraph::from_lon(lon);
    if export.contains(&ExportFormat::Graphml) {
        write_graphml(&dir.join("lon.graphml"), &g, &p, op, |_, _| None)?;
    }
    if export.contains(&ExportFormat::Edgelist) {
        write_edgelist(&dir.join("lon.edgelist"), &g)?;
    }
    Ok(())
}

pub fn read_lon_meta(dir: &Path) -> Result<LonMeta> {
    let meta: LonMeta = read_json(&dir.join("meta.json"))?;
    if meta.format != "lon" {
        return Err(Error::parse(dir.join("meta.json"), "not a LON artifact"));
    }
    Ok(meta)
}

/// Reads a LON artifact back into its basin map and network.
pub fn read_lon_artifact(dir: &Path) -> Result<(BasinMap, Lon)> {
    let meta = read_lon_meta(dir)?;
    let provenance = meta.provenance();
    let bin = dir.join("basins.bin");
    let (bin_prov, bin_op, assignment, num_optima) = read_basins_bin(&bin)?;
    if bin_prov != provenance || bin_op != meta.operator {
        return Err(Error::Provenance(format!("{} disagrees with meta.json", bin.display())));
    }

    let path = dir.join("optima.csv");
    let mut optima = Vec::new();
    let mut basin_sizes = Vec::new();
    for (row, f) in read_csv(&path, "id,solution_int,fitness,basin_size")?.iter().enumerate() {
        if field::<usize>(&path, &f[0])? != row {
            return Err(Error::parse(&path, "optimum identifiers must be 0, 1, 2, ..."));
        }
        optima.push(Optimum { solution: field(&path, &f[1])?, fitness: field(&path, &f[2])? });
        basin_sizes.push(field(&path, &f[3])?);
    }
    if optima.len() != num_optima {
        return Err(Error::parse(&path, "optimum count disagrees with basins.bin"));
    }

    let path = dir.join("nodes.csv");
    let mut nodes = Vec::new();
    for (row, f) in read_csv(&path, "id,solution_int,fitness,basin_size,is_global_opt")?.iter().enumerate() {
        let id: u32 = field(&path, &f[0])?;
        if id as usize != row {
            return Err(Error::parse(&path, "node identifiers must be 0, 1, 2, ..."));
        }
        nodes.push(LonNode {
            id,
            solution: field(&path, &f[1])?,
            fitness: field(&path, &f[2])?,
            basin_size: field(&path, &f[3])?,
            is_global: parse_bool(&path, &f[4])?,
        });
    }
    if nodes.len() != num_optima {
        return Err(Error::parse(&path, "node count disagrees with basins.bin"));
    }

    let path = dir.join("edges.csv");
    let mut edges = Vec::new();
    for f in read_csv(&path, "src_id,dst_id,weight")? {
        let e = Edge { src: field(&path, &f[0])?, dst: field(&path, &f[1])?, weight: field(&path, &f[2])? };
        if e.src as usize >= nodes.len() || e.dst as usize >= nodes.len() {
            return Err(Error::parse(&path, format!("edge {} -> {} references a missing node", e.src, e.dst)));
        }
        edges.push(e);
    }

    let path = dir.join("self_mass.csv");
    let self_mass: Vec<f64> =
        read_csv(&path, "id,self_mass")?.iter().map(|f| field(&path, &f[1])).collect::<Result<_>>()?;
    if self_mass.len() != nodes.len() {
        return Err(Error::parse(&path, "self mass count disagrees with node count"));
    }

    let global_optima = nodes.iter().filter(|n| n.is_global).map(|n| n.id).collect();
    let bm = BasinMap { provenance, operator: meta.operator, assignment, optima, basin_sizes, global_optima };
    let lon = Lon { provenance, operator: meta.operator, nodes, edges, self_mass };
    Ok((bm, lon))
}

// ---------------------------------------------------------------------------
// Multi-layer artifacts

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MllonMeta {
    pub format: String,
    pub tool: String,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub operator: String,
    pub layers: Vec<OperatorKind>,
    pub config: MllonConfig,
    pub nv: usize,
    pub ne: usize,
    pub mirror_pairs: usize,
    pub overlap_pairs: usize,
}

pub const MULTILAYER: &str = "multilayer";

pub fn write_mllon_artifact(dir: &Path, m: &Mllon, export: &[ExportFormat]) -> Result<()> {
    create_dir(dir)?;
    let p = m.provenance;
    let meta = MllonMeta {
        format: "mllon".into(),
        tool: TOOL.into(),
        n: p.n,
        k: p.k,
        seed: p.seed,
        operator: MULTILAYER.into(),
        layers: m.layers.iter().map(|l| l.operator).collect(),
        config: m.config,
        nv: m.num_supra_nodes(),
        ne: m.num_supra_edges(),
        mirror_pairs: m.mirror_edges.len() / 2,
        overlap_pairs: m.overlap_edges.len() / 2,
    };
    write_json(&dir.join("meta.json"), &meta)?;

    let mut w = CsvWriter::create(
        &dir.join("supra_nodes.csv"),
        &p,
        MULTILAYER,
        "layer,id,operator,solution_int,fitness,basin_size,is_global_opt,self_loop",
    )?;
    for (l, lon) in m.layers.iter().enumerate() {
        for n in &lon.nodes {
            w.row(&[
                &l.to_string(),
                &n.id.to_string(),
                lon.operator.name(),
                &n.solution.to_string(),
                &fmt_real(n.fitness),
                &n.basin_size.to_string(),
                if n.is_global { "1" } else { "0" },
                &fmt_real(m.config.p_sl),
            ])?;
        }
    }
    w.finish()?;

    let mut w = CsvWriter::create(
        &dir.join("supra_edges.csv"),
        &p,
        MULTILAYER,
        "src_layer,src_id,dst_layer,dst_id,weight,edge_kind",
    )?;
    for e in m.supra_edges() {
        w.row(&[
            &e.src.layer.to_string(),
            &e.src.id.to_string(),
            &e.dst.layer.to_string(),
            &e.dst.id.to_string(),
            &fmt_real(e.weight),
            e.kind.name(),
        ])?;
    }
    w.finish()?;

    if export.contains(&ExportFormat::Graphml) || export.contains(&ExportFormat::Edgelist) {
        let g = crate::mllon::flatten(m);
        if export.contains(&ExportFormat::Graphml) {
            let kinds: Vec<EdgeKind> = {
                let mut indexed: Vec<(usize, usize, EdgeKind)> =
                    m.supra_edges().map(|e| (m.flat_index(e.src), m.flat_index(e.dst), e.kind)).collect();
                indexed.sort_unstable_by_key(|&(s, d, _)| (s, d));
                indexed.into_iter().map(|(_, _, k)| k).collect()
            };
            let mut next = kinds.into_iter();
            write_graphml(&dir.join("flat.graphml"), &g, &p, MULTILAYER, |_, _| next.next())?;
        }
        if export.contains(&ExportFormat::Edgelist) {
            write_edgelist(&dir.join("flat.edgelist"), &g)?;
        }
    }
    Ok(())
}

pub fn read_mllon_artifact(dir: &Path) -> Result<(MllonMeta, Mllon)> {
    let meta: MllonMeta = read_json(&dir.join("meta.json"))?;
    if meta.format != "mllon" {
        return Err(Error::parse(dir.join("meta.json"), "not a multi-layer artifact"));
    }
    let provenance = Provenance { n: meta.n, k: meta.k, seed: meta.seed };
    let mut layers: Vec<Lon> = meta
        .layers
        .iter()
        .map(|&operator| Lon { provenance, operator, nodes: vec![], edges: vec![], self_mass: vec![] })
        .collect();

    let path = dir.join("supra_nodes.csv");
    for f in read_csv(&path, "layer,id,operator,solution_int,fitness,basin_size,is_global_opt,self_loop")? {
        let layer: usize = field(&path, &f[0])?;
        let lon = layers
            .get_mut(layer)
            .ok_or_else(|| Error::parse(&path, format!("layer {layer} not declared in meta.json")))?;
        let id: u32 = field(&path, &f[1])?;
        if id as usize != lon.nodes.len() {
            return Err(Error::parse(&path, "supra nodes must be listed layer-major with consecutive ids"));
        }
        lon.nodes.push(LonNode {
            id,
            solution: field(&path, &f[3])?,
            fitness: field(&path, &f[4])?,
            basin_size: field(&path, &f[5])?,
            is_global: parse_bool(&path, &f[6])?,
        });
        lon.self_mass.push(0.0);
    }

    let path = dir.join("supra_edges.csv");
    let mut mirror_edges = Vec::new();
    let mut overlap_edges = Vec::new();
    for f in read_csv(&path, "src_layer,src_id,dst_layer,dst_id,weight,edge_kind")? {
        let node = |l: &str, i: &str| -> Result<SupraNode> {
            let n = SupraNode { layer: field(&path, l)?, id: field(&path, i)? };
            match layers.get(n.layer as usize) {
                Some(lon) if (n.id as usize) < lon.nodes.len() => Ok(n),
                _ => Err(Error::parse(&path, format!("edge references missing node {n:?}"))),
            }
        };
        let e = SupraEdge {
            src: node(&f[0], &f[1])?,
            dst: node(&f[2], &f[3])?,
            weight: field(&path, &f[4])?,
            kind: field(&path, &f[5])?,
        };
        match e.kind {
            EdgeKind::Intra => {
                if e.src.layer != e.dst.layer {
                    return Err(Error::parse(&path, "intra edge crosses layers"));
                }
                layers[e.src.layer as usize].edges.push(Edge { src: e.src.id, dst: e.dst.id, weight: e.weight });
            }
            EdgeKind::Mirror => mirror_edges.push(e),
            EdgeKind::Overlap => overlap_edges.push(e),
        }
    }
    let m = Mllon { provenance, config: meta.config, layers, mirror_edges, overlap_edges };
    Ok((meta, m))
}

// ---------------------------------------------------------------------------
// Networks for metrics

/// A network ready for metric computation.
pub struct Network {
    pub label: String,
    pub provenance: Provenance,
    pub graph: Digraph,
}

/// Loads either artifact kind.
pub fn read_network(dir: &Path) -> Result<Network> {
    let meta_path = dir.join("meta.json");
    let probe: serde_json::Value = read_json(&meta_path)?;
    match probe.get("format").and_then(|f| f.as_str()) {
        Some("lon") => {
            let (_, lon) = read_lon_artifact(dir)?;
            Ok(Network {
                label: lon.operator.name().to_string(),
                provenance: lon.provenance,
                graph: Digraph::from_lon(&lon),
            })
        }
        Some("mllon") => {
            let (_, m) = read_mllon_artifact(dir)?;
            Ok(Network { label: MULTILAYER.into(), provenance: m.provenance, graph: crate::mllon::flatten(&m) })
        }
        _ => Err(Error::parse(meta_path, "unknown artifact format")),
    }
}

// ---------------------------------------------------------------------------
// Graph exports

fn write_graphml(
    path: &Path,
    g: &Digraph,
    p: &Provenance,
    operator: &str,
    mut kind: impl FnMut(usize, usize) -> Option<EdgeKind>,
) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    for (id, target, ty) in [
        ("tool", "graph", "string"),
        ("n", "graph", "int"),
        ("k", "graph", "int"),
        ("seed", "graph", "long"),
        ("operator", "graph", "string"),
        ("layer", "node", "int"),
        ("lon_id", "node", "int"),
        ("solution_int", "node", "long"),
        ("fitness", "node", "double"),
        ("basin_size", "node", "long"),
        ("is_global_opt", "node", "boolean"),
        ("weight", "edge", "double"),
        ("edge_kind", "edge", "string"),
    ] {
        let _ = writeln!(s, "  <key id=\"{id}\" for=\"{target}\" attr.name=\"{id}\" attr.type=\"{ty}\"/>");
    }
    s.push_str("  <graph id=\"G\" edgedefault=\"directed\">\n");
    let _ = writeln!(s, "    <data key=\"tool\">{TOOL}</data>");
    let _ = writeln!(s, "    <data key=\"n\">{}</data>", p.n);
    let _ = writeln!(s, "    <data key=\"k\">{}</data>", p.k);
    let _ = writeln!(s, "    <data key=\"seed\">{}</data>", p.seed);
    let _ = writeln!(s, "    <data key=\"operator\">{operator}</data>");
    out.write_all(s.as_bytes()).map_err(|e| Error::io(path, e))?;
    for (i, node) in g.nodes().iter().enumerate() {
        s.clear();
        let _ = write!(
            s,
            "    <node id=\"n{i}\"><data key=\"layer\">{}</data><data key=\"lon_id\">{}</data>",
            node.layer, node.id
        );
        if let Some(v) = node.solution {
            let _ = write!(s, "<data key=\"solution_int\">{v}</data>");
        }
        if let Some(v) = node.fitness {
            let _ = write!(s, "<data key=\"fitness\">{}</data>", fmt_real(v));
        }
        if let Some(v) = node.basin_size {
            let _ = write!(s, "<data key=\"basin_size\">{v}</data>");
        }
        let _ = writeln!(s, "<data key=\"is_global_opt\">{}</data></node>", node.is_global);
        out.write_all(s.as_bytes()).map_err(|e| Error::io(path, e))?;
    }
    for (i, j, w) in g.edges() {
        s.clear();
        let _ = write!(s, "    <edge source=\"n{i}\" target=\"n{j}\"><data key=\"weight\">{}</data>", fmt_real(w));
        if let Some(k) = kind(i, j) {
            let _ = write!(s, "<data key=\"edge_kind\">{k}</data>");
        }
        s.push_str("</edge>\n");
        out.write_all(s.as_bytes()).map_err(|e| Error::io(path, e))?;
    }
    out.write_all(b"  </graph>\n</graphml>\n").map_err(|e| Error::io(path, e))?;
    out.flush().map_err(|e| Error::io(path, e))
}

/// Whitespace-separated `src dst weight` lines over flattened node indices.
fn write_edgelist(path: &Path, g: &Digraph) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    for (i, j, w) in g.edges() {
        writeln!(out, "{i} {j} {}", fmt_real(w)).map_err(|e| Error::io(path, e))?;
    }
    out.flush().map_err(|e| Error::io(path, e))
}

// ---------------------------------------------------------------------------
// Metrics outputs

pub const METRICS_CSV_HEADER: &str =
    "network,n,k,seed,nv,ne,knn,fnn,wcc_mean,wcc_rand,l_mean,l_reachable_fraction,st_mean,y2_mean,zout_mean,l_go_mean,l_go_reach_fraction";

/// One row of [`METRICS_CSV_HEADER`].
pub fn metrics_csv_row(label: &str, p: &Provenance, r: &MetricsReport) -> String {
    let mut fields = vec![label.to_string(), p.n.to_string(), p.k.to_string(), p.seed.to_string()];
    fields.push(r.nv.to_string());
    fields.push(r.ne.to_string());
    fields.extend(r.values()[2..].iter().map(|v| fmt_opt(*v)));
    fields.join(",")
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    tool: &'a str,
    network: &'a str,
    n: usize,
    k: usize,
    seed: u64,
    #[serde(flatten)]
    metrics: &'a MetricsReport,
}

pub fn write_report_json(path: &Path, label: &str, p: &Provenance, r: &MetricsReport) -> Result<()> {
    write_json(path, &ReportDoc { tool: TOOL, network: label, n: p.n, k: p.k, seed: p.seed, metrics: r })
}

pub fn read_report_json(path: &Path) -> Result<MetricsReport> {
    read_json(path)
}

fn write_cloud(path: &Path, p: &Provenance, label: &str, cloud: &PointCloud) -> Result<()> {
    let header = format!("{},{}", cloud.x_label, cloud.y_label);
    let mut w = CsvWriter::create(path, p, label, &header)?;
    for &(x, y) in &cloud.points {
        w.row(&[&fmt_real(x), &fmt_real(y)])?;
    }
    w.finish()
}

/// Writes `report.json`, `metrics.csv` and the three point-cloud files.
pub fn write_metrics_outputs(
    dir: &Path,
    label: &str,
    p: &Provenance,
    report: &MetricsReport,
    clouds: &LocalClouds,
) -> Result<()> {
    create_dir(dir)?;
    write_report_json(&dir.join("report.json"), label, p, report)?;
    let mut w = CsvWriter::create(&dir.join("metrics.csv"), p, label, METRICS_CSV_HEADER)?;
    w.raw(&metrics_csv_row(label, p, report))?;
    w.raw("\n")?;
    w.finish()?;
    write_cloud(&dir.join("cumstrength.csv"), p, label, &clouds.cumulative_strength)?;
    write_cloud(&dir.join("strength_basin.csv"), p, label, &clouds.strength_vs_basin)?;
    write_cloud(&dir.join("fitness_basin.csv"), p, label, &clouds.fitness_vs_basin)
}
