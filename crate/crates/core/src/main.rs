use clap::{Args, Parser, Subcommand, ValueEnum};
use hamzip::congruence;
use hamzip::foldverify::{self, FoldSpec, VerificationReport};
use hamzip::hampath::{self, CutPath};
use hamzip::report::{self, Survey};
use hamzip::solids::{Polyhedron, Solid};
use hamzip::unfold::{self, Net, NetJson};
use hamzip::zipper::{
    self, CandidateSource, GlueEvent, Pruned, Rejection, VertexCluster, ZipReport,
};
use hamzip::{svg, Error};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DATA: u8 = 3;

/// Hamiltonian unfoldings of the Platonic solids and their zippings.
#[derive(Parser)]
#[command(name = "hamzip", version)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Tolerance for matching reported dimensions and curvatures (testing only).
    #[arg(long, global = true)]
    tolerance_override: Option<f64>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex coordinates and faces of one solid or all five.
    Solids { solid: Option<Solid> },
    /// Labeled Hamiltonian paths.
    Paths(Selection),
    /// Develop one cut path into a net.
    Unfold(NetSource),
    /// Enumerate the zippings of one net or a batch of nets.
    Zip {
        #[command(flatten)]
        source: ZipSource,
        /// Also list rejected candidates and screened-out partner corners.
        #[arg(long)]
        dump_rejected: bool,
    },
    /// Group nets into congruence classes.
    Dedupe {
        #[command(flatten)]
        selection: Selection,
        /// Keep only nets with a refolding other than the identity.
        #[arg(long)]
        zippable: bool,
    },
    /// Check fold specifications; the bundled ones when none are named.
    Verify {
        files: Vec<PathBuf>,
        /// A bundled specification by name.
        #[arg(long)]
        shipped: Vec<String>,
    },
    /// Recompute the reference counts and dimensions.
    Report {
        /// A solid, or `all`.
        #[arg(default_value = "all")]
        scope: String,
    },
    /// Draw a net, or a fold specification over its target.
    Svg {
        #[command(flatten)]
        net: NetSource,
        /// Fold specification file to draw instead of a net.
        #[arg(long, conflicts_with_all = ["solid", "path", "net", "shipped"])]
        spec: Option<PathBuf>,
        /// Bundled fold specification to draw instead of a net.
        #[arg(long, conflicts_with_all = ["solid", "path", "net", "spec"])]
        shipped: Option<String>,
    },
}

#[derive(Args)]
struct Selection {
    solid: Solid,
    /// Only paths with these two endpoints.
    #[arg(long, num_args = 2, value_names = ["U", "V"], conflicts_with = "distance_classes")]
    between: Option<Vec<usize>>,
    /// All paths between one endpoint pair per graph distance.
    #[arg(long)]
    distance_classes: bool,
}

#[derive(Args)]
struct NetSource {
    solid: Option<Solid>,
    /// Cut path as comma-separated vertex indices.
    #[arg(long, value_delimiter = ',', requires = "solid")]
    path: Option<Vec<usize>>,
    /// Net JSON written by `unfold`.
    #[arg(long, conflicts_with_all = ["solid", "path"])]
    net: Option<PathBuf>,
}

#[derive(Args)]
struct ZipSource {
    solid: Option<Solid>,
    #[arg(long, value_delimiter = ',', requires = "solid", conflicts_with_all = ["between", "distance_classes"])]
    path: Option<Vec<usize>>,
    #[arg(long, conflicts_with = "solid")]
    net: Option<PathBuf>,
    #[arg(long, num_args = 2, value_names = ["U", "V"], requires = "solid", conflicts_with = "distance_classes")]
    between: Option<Vec<usize>>,
    #[arg(long, requires = "solid")]
    distance_classes: bool,
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

/// What a subcommand produced, plus whether it found a mismatch.
struct Output {
    text: String,
    mismatch: bool,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn csv_rows<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory CSV");
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV")).expect("CSV is UTF-8")
}

fn select(sel: &Selection) -> Result<(Polyhedron, Vec<CutPath>), Error> {
    let p = Polyhedron::new(sel.solid);
    let paths = if let Some(uv) = &sel.between {
        hampath::enumerate_paths_between(&p, uv[0], uv[1])?
    } else if sel.distance_classes {
        report::distance_class_corpus(&p)?
    } else {
        hampath::enumerate_paths(&p)
    };
    Ok((p, paths))
}

fn load_net(path: &PathBuf) -> Result<Net, Error> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let j: NetJson = serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.display().to_string(),
        source,
    })?;
    let p = Polyhedron::new(j.provenance.solid);
    unfold::unfold(&p, &j.provenance)
}

fn build_net(src: &NetSource) -> Result<Net, Failure> {
    if let Some(file) = &src.net {
        return Ok(load_net(file)?);
    }
    let solid = src
        .solid
        .ok_or_else(|| Failure::Usage("a solid or --net is required".into()))?;
    let p = Polyhedron::new(solid);
    let v = src
        .path
        .clone()
        .ok_or_else(|| Failure::Usage("--path is required with a solid".into()))?;
    Ok(unfold::unfold(&p, &CutPath::new(&p, v)?)?)
}

#[derive(Serialize)]
struct SolidJson<'a> {
    vertex_count: usize,
    edge_count: usize,
    face_count: usize,
    #[serde(flatten)]
    model: &'a Polyhedron,
}

fn cmd_solids(solid: Option<Solid>) -> Vec<Polyhedron> {
    Solid::ALL
        .into_iter()
        .filter(|s| solid.is_none_or(|x| x == *s))
        .map(Polyhedron::new)
        .collect()
}

#[derive(Serialize)]
struct PathRow {
    index: usize,
    distance: usize,
    vertices: String,
}

#[derive(Serialize)]
struct ZipView {
    solid: Solid,
    path: Vec<usize>,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reflex: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reflex_angle: Option<f64>,
    zippings: Vec<ZippingView>,
    /// Angle left over at the reflex corner, `2π − β`.
    #[serde(skip_serializing_if = "Option::is_none")]
    external_angle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rejected: Option<Vec<RejectionView>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pruned: Option<Vec<Pruned>>,
}

#[derive(Serialize)]
struct ZippingView {
    anchor: f64,
    source: CandidateSource,
    events: Vec<GlueEvent>,
    clusters: Vec<VertexCluster>,
    vertex_count: usize,
    identity: bool,
    flat_compatible: bool,
}

#[derive(Serialize)]
struct RejectionView {
    source: CandidateSource,
    #[serde(flatten)]
    rejection: Rejection,
}

#[derive(Serialize)]
struct ZipRow {
    path: String,
    anchor: f64,
    identity: bool,
    flat_compatible: bool,
    vertex_count: usize,
    curvatures_deg: String,
}

fn zip_view(net: &Net, z: &ZipReport, dump: bool) -> ZipView {
    let (reflex, reflex_angle) = match z {
        ZipReport::Discrete {
            reflex,
            reflex_angle,
            ..
        } => (Some(*reflex), Some(*reflex_angle)),
        ZipReport::Continuum => (None, None),
    };
    let zippings = z
        .candidates()
        .iter()
        .filter_map(|c| {
            c.outcome.as_ref().ok().map(|zz| ZippingView {
                anchor: c.anchor,
                source: c.source,
                events: zz.events.clone(),
                clusters: zz.clusters.clone(),
                vertex_count: zz.vertex_count(),
                identity: zz.identity,
                flat_compatible: zz.flat_compatible,
            })
        })
        .collect();
    let rejected = dump.then(|| {
        z.candidates()
            .iter()
            .filter_map(|c| {
                c.outcome.as_ref().err().map(|r| RejectionView {
                    source: c.source,
                    rejection: r.clone(),
                })
            })
            .collect()
    });
    ZipView {
        solid: net.path.solid,
        path: net.path.vertices.clone(),
        kind: if z.is_continuum() {
            "continuum"
        } else {
            "discrete"
        },
        reflex,
        reflex_angle,
        zippings,
        external_angle: reflex_angle
            .filter(|_| dump)
            .map(|b| 2.0 * std::f64::consts::PI - b),
        rejected,
        pruned: dump.then(|| z.pruned().to_vec()),
    }
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_zip(src: &ZipSource, dump: bool, format: Format) -> Result<Output, Failure> {
    let nets: Vec<Net> = if let Some(file) = &src.net {
        vec![load_net(file)?]
    } else {
        let solid = src
            .solid
            .ok_or_else(|| Failure::Usage("a solid or --net is required".into()))?;
        if let Some(v) = &src.path {
            let p = Polyhedron::new(solid);
            vec![unfold::unfold(&p, &CutPath::new(&p, v.clone())?)?]
        } else {
            let (p, paths) = select(&Selection {
                solid,
                between: src.between.clone(),
                distance_classes: src.distance_classes,
            })?;
            Survey::new(&p, &paths)?.nets
        }
    };
    let reports = nets
        .iter()
        .map(zipper::enumerate_zippings)
        .collect::<Result<Vec<_>, _>>()?;
    let text = match format {
        Format::Json => {
            let views: Vec<ZipView> = nets
                .iter()
                .zip(&reports)
                .map(|(n, z)| zip_view(n, z, dump))
                .collect();
            json(&views)
        }
        Format::Csv => {
            let rows: Vec<ZipRow> = nets
                .iter()
                .zip(&reports)
                .flat_map(|(n, z)| {
                    z.zippings().map(move |zz| ZipRow {
                        path: join(&n.path.vertices),
                        anchor: zz.anchor,
                        identity: zz.identity,
                        flat_compatible: zz.flat_compatible,
                        vertex_count: zz.vertex_count(),
                        curvatures_deg: zz
                            .curvature_profile()
                            .iter()
                            .map(|k| format!("{:.6}", k.to_degrees()))
                            .collect::<Vec<_>>()
                            .join(" "),
                    })
                })
                .collect();
            csv_rows(&rows)
        }
    };
    Ok(Output {
        text,
        mismatch: false,
    })
}

#[derive(Serialize)]
struct DedupeView {
    solid: Solid,
    nets: usize,
    congruence_classes: usize,
    path_classes: usize,
    classes: Vec<ClassView>,
}

#[derive(Serialize)]
struct ClassView {
    representative: Vec<usize>,
    size: usize,
}

#[derive(Serialize)]
struct ClassRow {
    class: usize,
    size: usize,
    representative: String,
}

fn cmd_dedupe(sel: &Selection, zippable: bool, format: Format) -> Result<Output, Failure> {
    let (p, paths) = select(sel)?;
    let s = Survey::new(&p, &paths)?;
    let keep: Vec<usize> = if zippable {
        s.zippable()
    } else {
        (0..s.nets.len()).collect()
    };
    let nets: Vec<Net> = keep.iter().map(|&i| s.nets[i].clone()).collect();
    let kept_paths: Vec<CutPath> = nets.iter().map(|n| n.path.clone()).collect();
    let classes = congruence::dedupe(&nets)?;
    let views: Vec<ClassView> = classes
        .iter()
        .map(|c| ClassView {
            representative: nets[c.representative()].path.vertices.clone(),
            size: c.size(),
        })
        .collect();
    let text = match format {
        Format::Json => json(&DedupeView {
            solid: sel.solid,
            nets: nets.len(),
            congruence_classes: classes.len(),
            path_classes: congruence::path_classes(&p, &kept_paths).len(),
            classes: views,
        }),
        Format::Csv => csv_rows(
            &views
                .iter()
                .enumerate()
                .map(|(i, v)| ClassRow {
                    class: i,
                    size: v.size,
                    representative: join(&v.representative),
                })
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Output {
        text,
        mismatch: false,
    })
}

#[derive(Serialize)]
struct CheckRow<'a> {
    label: &'a str,
    check: &'a str,
    pass: bool,
    detail: &'a str,
}

fn cmd_verify(files: &[PathBuf], shipped: &[String], format: Format) -> Result<Output, Failure> {
    let bundled = foldverify::shipped_specs();
    let mut specs: Vec<FoldSpec> = Vec::new();
    for name in shipped {
        let spec = bundled.iter().find(|(n, _)| n == name).ok_or_else(|| {
            Failure::Usage(format!("no bundled fold specification named `{name}`"))
        })?;
        specs.push(spec.1.clone());
    }
    for f in files {
        specs.push(FoldSpec::load(f)?);
    }
    if files.is_empty() && shipped.is_empty() {
        specs = bundled.into_iter().map(|(_, s)| s).collect();
    }
    let reports = specs
        .iter()
        .map(foldverify::verify_fold)
        .collect::<Result<Vec<VerificationReport>, _>>()?;
    let mismatch = reports.iter().any(|r| !r.pass);
    let text = match format {
        Format::Json => json(&reports),
        Format::Csv => {
            let mut rows = Vec::new();
            for r in &reports {
                for (check, c) in [
                    ("tiling", &r.tiling),
                    ("isometries", &r.isometries),
                    ("creases", &r.creases),
                    ("containment", &r.containment),
                    ("double_coverage", &r.double_coverage),
                    ("gluing", &r.gluing),
                ] {
                    rows.push(CheckRow {
                        label: &r.label,
                        check,
                        pass: c.pass,
                        detail: &c.detail,
                    });
                }
            }
            csv_rows(&rows)
        }
    };
    Ok(Output { text, mismatch })
}

fn cmd_report(scope: &str, tol: f64, format: Format) -> Result<Output, Failure> {
    let scope = match scope {
        "all" => None,
        s => Some(
            s.parse::<Solid>()
                .map_err(|e| Failure::Usage(e.to_string()))?,
        ),
    };
    let r = report::build_report(scope, tol)?;
    let text = match format {
        Format::Json => json(&r),
        Format::Csv => r.to_csv(),
    };
    Ok(Output {
        text,
        mismatch: !r.passed(),
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let tol = match cli.tolerance_override {
        Some(t) if !(t.is_finite() && t > 0.0) => {
            return Err(Failure::Usage(format!(
                "tolerance must be positive, got {t}"
            )))
        }
        Some(t) => t,
        None => report::DEFAULT_TOLERANCE,
    };
    let csv_unsupported = |what: &str| Failure::Usage(format!("`{what}` has no CSV form"));
    match &cli.command {
        Command::Solids { solid } => {
            if cli.format == Format::Csv {
                return Err(csv_unsupported("solids"));
            }
            let models = cmd_solids(*solid);
            let views: Vec<SolidJson> = models
                .iter()
                .map(|m| SolidJson {
                    vertex_count: m.num_vertices(),
                    edge_count: m.num_edges(),
                    face_count: m.num_faces(),
                    model: m,
                })
                .collect();
            Ok(Output {
                text: json(&views),
                mismatch: false,
            })
        }
        Command::Paths(sel) => {
            let (p, paths) = select(sel)?;
            let distance = |c: &CutPath| {
                let (u, v) = c.endpoints();
                p.graph_distance(u, v)
            };
            let text = match cli.format {
                Format::Json => json(&paths.iter().map(|c| &c.vertices).collect::<Vec<_>>()),
                Format::Csv => {
                    let rows = paths
                        .iter()
                        .enumerate()
                        .map(|(index, c)| {
                            Ok(PathRow {
                                index,
                                distance: distance(c)?,
                                vertices: join(&c.vertices),
                            })
                        })
                        .collect::<Result<Vec<_>, Error>>()?;
                    csv_rows(&rows)
                }
            };
            Ok(Output {
                text,
                mismatch: false,
            })
        }
        Command::Unfold(src) => {
            if cli.format == Format::Csv {
                return Err(csv_unsupported("unfold"));
            }
            let net = build_net(src)?;
            Ok(Output {
                text: json(&NetJson::from(&net)),
                mismatch: false,
            })
        }
        Command::Zip {
            source,
            dump_rejected,
        } => cmd_zip(source, *dump_rejected, cli.format),
        Command::Dedupe {
            selection,
            zippable,
        } => cmd_dedupe(selection, *zippable, cli.format),
        Command::Verify { files, shipped } => cmd_verify(files, shipped, cli.format),
        Command::Report { scope } => cmd_report(scope, tol, cli.format),
        Command::Svg { net, spec, shipped } => {
            if cli.format == Format::Csv {
                return Err(csv_unsupported("svg"));
            }
            let text = if let Some(file) = spec {
                svg::fold_svg(&FoldSpec::load(file)?)
            } else if let Some(name) = shipped {
                let (_, s) = foldverify::shipped_specs()
                    .into_iter()
                    .find(|(n, _)| n == name)
                    .ok_or_else(|| {
                        Failure::Usage(format!("no bundled fold specification named `{name}`"))
                    })?;
                svg::fold_svg(&s)
            } else {
                svg::net_svg(&build_net(net)?)
            };
            Ok(Output {
                text,
                mismatch: false,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n.into())
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let out = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_DATA);
        }
    };
    if let Some(path) = &cli.out {
        if let Err(source) = std::fs::write(path, &out.text) {
            eprintln!(
                "error: {}",
                Error::Io {
                    path: path.display().to_string(),
                    source
                }
            );
            return ExitCode::from(EXIT_DATA);
        }
    } else {
        let mut stdout = std::io::stdout().lock();
        if let Err(e) = stdout
            .write_all(out.text.as_bytes())
            .and_then(|_| stdout.flush())
        {
            if e.kind() != std::io::ErrorKind::BrokenPipe {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(EXIT_DATA);
            }
        }
    }
    if out.mismatch {
        ExitCode::from(EXIT_MISMATCH)
    } else {
        ExitCode::SUCCESS
    }
}
