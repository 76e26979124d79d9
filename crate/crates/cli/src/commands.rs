use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use lattice_order::imaging::{
    center_crop, derive_crop, default_max_region, load_image, match_grids, pixels_per_pitch, read_seeds_csv,
    region_grow, write_centers_csv, CenterSet, Connectivity, CropSpec, MatchReport, RegionGrowParams, SeedFailure,
};
use lattice_order::lattice::{perturb, scale_to_unit_box, LatticeKind, LatticeSpec, PerturbationSpec};
use lattice_order::persistence::{compute_persistence, PersistenceDiagram};
use lattice_order::scores::{infer_n, interpret, write_reports_csv, OrderScores, ScoreConfig, ScoreReport};
use lattice_order::{Error, PointCloud, Result, Unit};

use crate::io::{
    cloud_bytes, emit, is_image, json_bytes, json_files, load_cloud, load_diagram, load_nominal, require_input,
    require_output,
};
use crate::svg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Square,
    #[value(alias = "hexagonal")]
    Hex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CloudFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum UnitArg {
    Pixels,
    Micrometers,
    Normalized,
}

impl From<UnitArg> for Unit {
    fn from(u: UnitArg) -> Self {
        match u {
            UnitArg::Pixels => Unit::Pixels,
            UnitArg::Micrometers => Unit::Micrometers,
            UnitArg::Normalized => Unit::Normalized,
        }
    }
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct GenArgs {
    /// Lattice type.
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Points per side (the lattice has n*n points).
    #[arg(long)]
    pub n: usize,
    /// Standard deviation of isotropic Gaussian jitter (0 = none).
    #[arg(long, default_value_t = 0.0)]
    pub perturb: f64,
    /// Seed for the jitter.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = CloudFormat::Csv)]
    pub format: CloudFormat,
    /// Output file (stdout if omitted).
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

pub fn gen(args: &GenArgs) -> Result<()> {
    if let Some(out) = &args.out {
        require_output(out)?;
    }
    let kind = match args.kind {
        KindArg::Square => LatticeKind::Square,
        KindArg::Hex => LatticeKind::Hexagonal,
    };
    let mut cloud = LatticeSpec { kind, n: args.n }.generate()?;
    if args.perturb != 0.0 {
        cloud = perturb(&cloud, &PerturbationSpec { sigma: args.perturb, rng_seed: args.seed })?;
    }
    emit(args.out.as_deref(), &cloud_bytes(&cloud, args.format == CloudFormat::Json)?)
}

#[derive(Debug, Args)]
pub struct PersistOpts {
    /// Rips threshold (default: the enclosing radius, where truncation is lossless).
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Rescale the cloud into [-1, 1] on each axis before computing.
    #[arg(long)]
    pub normalize: bool,
    /// Histogram bins in the SVG rendering.
    #[arg(long, default_value_t = 20)]
    pub bins: usize,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct PersistArgs {
    /// Point cloud (CSV with x,y header, or JSON).
    pub cloud: PathBuf,
    /// Unit assumed for CSV input.
    #[arg(long, value_enum, default_value_t = UnitArg::Pixels)]
    pub unit: UnitArg,
    #[command(flatten)]
    pub opts: PersistOpts,
    /// Also render the diagram and histograms to this SVG file.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Diagram JSON output (stdout if omitted).
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

fn persistence_of(cloud: &PointCloud, opts: &PersistOpts) -> Result<PersistenceDiagram> {
    let diagram = if opts.normalize {
        compute_persistence(&scale_to_unit_box(cloud)?.0, opts.threshold)?
    } else {
        compute_persistence(cloud, opts.threshold)?
    };
    if diagram.infinite_h0_count > 1 {
        eprintln!(
            "note: threshold {} leaves {} components unmerged",
            diagram.threshold, diagram.infinite_h0_count
        );
    }
    Ok(diagram)
}

pub fn persist(args: &PersistArgs) -> Result<()> {
    require_input(&args.cloud)?;
    for out in args.out.iter().chain(&args.svg) {
        require_output(out)?;
    }
    let cloud = load_cloud(&args.cloud, args.unit.into())?;
    let diagram = persistence_of(&cloud, &args.opts)?;
    if let Some(path) = &args.svg {
        std::fs::write(path, svg::render(&diagram, args.opts.bins)?)?;
    }
    emit(args.out.as_deref(), &json_bytes(&diagram.to_json())?)
}

#[derive(Debug, Args)]
pub struct ScoreOpts {
    /// Lattice side length (default: square root of the point count in the diagram).
    #[arg(long)]
    pub n: Option<usize>,
    /// Largest normalized 0D score still treated as lattice-like.
    #[arg(long, default_value_t = ScoreConfig::default().epsilon_square)]
    pub epsilon_square: f64,
    /// Band around 0 and 1 for the "mostly" categories.
    #[arg(long, default_value_t = ScoreConfig::default().epsilon_h1)]
    pub epsilon_h1: f64,
}

impl ScoreOpts {
    fn config(&self) -> Result<ScoreConfig> {
        for (name, v) in [("epsilon-square", self.epsilon_square), ("epsilon-h1", self.epsilon_h1)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("--{name} must be a non-negative number")));
            }
        }
        Ok(ScoreConfig { epsilon_square: self.epsilon_square, epsilon_h1: self.epsilon_h1 })
    }

    fn report(&self, diagram: &PersistenceDiagram) -> Result<ScoreReport> {
        let n = match self.n {
            Some(n) => n,
            None => infer_n(diagram.h0.len() + diagram.infinite_h0_count).map_err(|e| match e {
                Error::NotSquareCount { count } => Error::InvalidParameter(format!(
                    "the diagram describes {count} points, which is not a perfect square; pass --n"
                )),
                other => other,
            })?,
        };
        let scores = OrderScores::compute(diagram, n)?;
        Ok(ScoreReport::new(&scores, &interpret(&scores, &self.config()?)))
    }
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct ScoreArgs {
    /// Diagram JSON produced by `persist`.
    #[arg(required_unless_present = "batch", conflicts_with = "batch")]
    pub diagram: Option<PathBuf>,
    /// Score every *.json diagram in this directory (sorted by file name).
    #[arg(long)]
    pub batch: Option<PathBuf>,
    #[command(flatten)]
    pub opts: ScoreOpts,
    /// Report format.
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
    /// Report output (stdout if omitted).
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

pub fn score(args: &ScoreArgs) -> Result<()> {
    if let Some(out) = &args.out {
        require_output(out)?;
    }
    args.opts.config()?;
    if let Some(dir) = &args.batch {
        return score_batch(dir, args);
    }
    let path = args.diagram.as_deref().expect("clap enforces diagram or --batch");
    require_input(path)?;
    let report = args.opts.report(&load_diagram(path)?)?;
    eprintln!("{}", report.interpretation());
    let bytes = match args.format {
        ReportFormat::Json => json_bytes(&report)?,
        ReportFormat::Csv => {
            let mut buf = Vec::new();
            write_reports_csv(&mut buf, std::slice::from_ref(&report), None)?;
            buf
        }
    };
    emit(args.out.as_deref(), &bytes)
}

fn score_batch(dir: &Path, args: &ScoreArgs) -> Result<()> {
    let files = json_files(dir)?;
    let mut labels = Vec::with_capacity(files.len());
    let mut reports = Vec::with_capacity(files.len());
    for path in &files {
        let label = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
        let report = load_diagram(path)
            .and_then(|d| args.opts.report(&d))
            .map_err(|e| annotate(&label, e))?;
        labels.push(label);
        reports.push(report);
    }
    let bytes = match args.format {
        ReportFormat::Csv => {
            let mut buf = Vec::new();
            write_reports_csv(&mut buf, &reports, Some(&labels))?;
            buf
        }
        ReportFormat::Json => {
            let rows: Vec<serde_json::Value> = labels
                .iter()
                .zip(&reports)
                .map(|(label, r)| {
                    let mut v = serde_json::to_value(r).expect("report serializes");
                    v["file"] = serde_json::Value::String(label.clone());
                    v
                })
                .collect();
            json_bytes(&rows)?
        }
    };
    emit(args.out.as_deref(), &bytes)
}

/// Prefix the offending file name while keeping the error class.
fn annotate(label: &str, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse { line, message: format!("{label}: {message}") },
        Error::Format(m) => Error::Format(format!("{label}: {m}")),
        Error::InvalidParameter(m) => Error::InvalidParameter(format!("{label}: {m}")),
        other => other,
    }
}

#[derive(Clone, Debug, Args)]
pub struct ExtractOpts {
    /// Seed points, CSV with x,y header, in (cropped) image pixel coordinates.
    #[arg(long, conflicts_with = "auto_seeds")]
    pub seeds: Option<PathBuf>,
    /// Seed at the nominal centers: a grid spec JSON, a cloud JSON, or an x,y CSV.
    #[arg(long)]
    pub auto_seeds: Option<PathBuf>,
    /// Largest admitted |intensity - seed intensity| (0-255).
    #[arg(long, default_value_t = 25)]
    pub tolerance: u8,
    /// Pixel neighborhood: 4 or 8.
    #[arg(long, default_value_t = 4)]
    pub connectivity: u8,
    /// Region size cap in pixels (default: 4x the expected indentation area
    /// when the process parameters are given, a quarter of the image otherwise).
    #[arg(long)]
    pub max_region_px: Option<usize>,
    /// Center-crop the image to a square of this side (pixels) first.
    #[arg(long, conflicts_with = "crop_grid_n")]
    pub crop: Option<usize>,
    /// Center-crop to hold this many strikes per side (needs the process parameters).
    #[arg(long, requires_all = ["pitch_um", "v_s", "f"])]
    pub crop_grid_n: Option<usize>,
    /// Image resolution in micrometers per pixel.
    #[arg(long)]
    pub pitch_um: Option<f64>,
    /// Scan speed in micrometers per second.
    #[arg(long)]
    pub v_s: Option<f64>,
    /// Strike frequency in Hz.
    #[arg(long)]
    pub f: Option<f64>,
}

impl ExtractOpts {
    fn inputs(&self) -> Vec<&Path> {
        self.seeds.iter().chain(&self.auto_seeds).map(PathBuf::as_path).collect()
    }

    fn ppp(&self) -> Result<Option<f64>> {
        match (self.pitch_um, self.v_s, self.f) {
            (Some(p), Some(v), Some(f)) => pixels_per_pitch(p, v, f).map(Some),
            (None, None, None) => Ok(None),
            _ => Err(Error::InvalidParameter("--pitch-um, --v-s and --f must be given together".into())),
        }
    }

    fn run(&self, image: &Path) -> Result<CenterSet> {
        let ppp = self.ppp()?;
        let connectivity = Connectivity::try_from(self.connectivity)?;
        let seeds = match (&self.seeds, &self.auto_seeds) {
            (Some(path), _) => read_seeds_csv(std::fs::File::open(path)?)?,
            (None, Some(path)) => load_nominal(path)?.into_points(),
            (None, None) => return Err(Error::InvalidParameter("pass --seeds or --auto-seeds".into())),
        };
        let mut img = load_image(image)?;
        if let Some(side) = self.crop {
            img = center_crop(&img, &CropSpec::square(side))?;
        } else if let Some(grid_n) = self.crop_grid_n {
            let spec = derive_crop(self.pitch_um.unwrap(), self.v_s.unwrap(), self.f.unwrap(), grid_n)?;
            img = center_crop(&img, &spec)?;
        }
        let params = RegionGrowParams {
            seeds,
            tolerance: self.tolerance,
            connectivity,
            max_region_px: self.max_region_px.unwrap_or_else(|| default_max_region(&img, ppp)),
        };
        let set = region_grow(&img, &params)?;
        for failure in &set.failures {
            match failure {
                SeedFailure::TooLarge { seed } => {
                    eprintln!("warning: seed {seed}: region exceeded {} px", params.max_region_px)
                }
                SeedFailure::TooSmall { seed, size } => eprintln!("warning: seed {seed}: region of only {size} px"),
            }
        }
        Ok(set)
    }
}

fn centers_bytes(set: &CenterSet) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_centers_csv(set, &mut buf)?;
    Ok(buf)
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct ExtractArgs {
    /// Grayscale image (PGM P5 or PNG).
    pub image: PathBuf,
    #[command(flatten)]
    pub opts: ExtractOpts,
    /// Centers CSV output, columns x,y,region_px (stdout if omitted).
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

pub fn extract(args: &ExtractArgs) -> Result<()> {
    require_input(&args.image)?;
    for p in args.opts.inputs() {
        require_input(p)?;
    }
    if let Some(out) = &args.out {
        require_output(out)?;
    }
    let set = args.opts.run(&args.image)?;
    emit(args.out.as_deref(), &centers_bytes(&set)?)
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct MatchArgs {
    /// Nominal centers: a grid spec JSON, a cloud JSON, or an x,y CSV (pixels).
    pub nominal: PathBuf,
    /// Extracted centers (CSV in pixels, or cloud JSON).
    pub centers: PathBuf,
    /// Largest accepted match distance (default: half the nominal nearest-neighbor spacing).
    #[arg(long)]
    pub max_dist: Option<f64>,
    /// Match report JSON output (stdout if omitted).
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

fn match_clouds(nominal: &PointCloud, centers: &PointCloud, max_dist: Option<f64>) -> Result<MatchReport> {
    let max_dist = match max_dist {
        Some(d) => d,
        None => half_spacing(nominal)?,
    };
    match_grids(nominal, centers, max_dist)
}

fn half_spacing(cloud: &PointCloud) -> Result<f64> {
    let p = cloud.points();
    let mut best = f64::INFINITY;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            best = best.min(p[i].dist(&p[j]));
        }
    }
    if !best.is_finite() {
        return Err(Error::InvalidParameter("need --max-dist for a single nominal point".into()));
    }
    Ok(best / 2.0)
}

pub fn match_cmd(args: &MatchArgs) -> Result<()> {
    require_input(&args.nominal)?;
    require_input(&args.centers)?;
    if let Some(out) = &args.out {
        require_output(out)?;
    }
    let nominal = load_nominal(&args.nominal)?;
    let centers = load_cloud(&args.centers, Unit::Pixels)?;
    let report = match_clouds(&nominal, &centers, args.max_dist)?;
    emit(args.out.as_deref(), &json_bytes(&report)?)
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct PipelineArgs {
    /// Image (PGM/PNG) to extract centers from, or a point cloud (CSV/JSON).
    pub input: PathBuf,
    /// Directory receiving the report bundle (created if missing).
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Nominal grid (spec JSON, cloud JSON or CSV); adds match.json and seeds
    /// extraction when no seeds are given.
    #[arg(long)]
    pub nominal: Option<PathBuf>,
    /// Largest accepted match distance (default: half the nominal spacing).
    #[arg(long)]
    pub max_dist: Option<f64>,
    /// Unit assumed for CSV cloud input.
    #[arg(long, value_enum, default_value_t = UnitArg::Pixels)]
    pub unit: UnitArg,
    #[command(flatten)]
    pub extract: ExtractOpts,
    /// Skip rescaling into [-1, 1] before computing persistence.
    #[arg(long)]
    pub no_normalize: bool,
    /// Rips threshold (default: the enclosing radius).
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Histogram bins in the SVG rendering.
    #[arg(long, default_value_t = 20)]
    pub bins: usize,
    #[command(flatten)]
    pub score: ScoreOpts,
}

/// Writes `centers.csv` (image input), `diagram.json`, `diagram.svg`,
/// `scores.json` and, with a nominal grid, `match.json`.
pub fn pipeline(args: &PipelineArgs) -> Result<()> {
    require_input(&args.input)?;
    for p in args.extract.inputs().into_iter().chain(args.nominal.as_deref()) {
        require_input(p)?;
    }
    args.score.config()?;
    std::fs::create_dir_all(&args.out_dir)?;
    let out = |name: &str| args.out_dir.join(name);

    let nominal = args.nominal.as_deref().map(load_nominal).transpose()?;
    let cloud = if is_image(&args.input) {
        let set = if args.extract.seeds.is_none() && args.extract.auto_seeds.is_none() {
            let Some(nominal_path) = &args.nominal else {
                return Err(Error::InvalidParameter("image input needs --seeds, --auto-seeds or --nominal".into()));
            };
            let opts = ExtractOpts { auto_seeds: Some(nominal_path.clone()), ..args.extract.clone() };
            opts.run(&args.input)?
        } else {
            args.extract.run(&args.input)?
        };
        std::fs::write(out("centers.csv"), centers_bytes(&set)?)?;
        // round-trip through the CSV so the bundle matches the chained commands
        load_cloud(&out("centers.csv"), Unit::Pixels)?
    } else {
        load_cloud(&args.input, args.unit.into())?
    };

    let opts = PersistOpts { threshold: args.threshold, normalize: !args.no_normalize, bins: args.bins };
    let diagram = persistence_of(&cloud, &opts)?;
    std::fs::write(out("diagram.json"), json_bytes(&diagram.to_json())?)?;
    std::fs::write(out("diagram.svg"), svg::render(&diagram, args.bins)?)?;

    let report = args.score.report(&load_diagram(&out("diagram.json"))?)?;
    std::fs::write(out("scores.json"), json_bytes(&report)?)?;
    eprintln!("{}", report.interpretation());

    if let Some(nominal) = &nominal {
        let m = match_clouds(nominal, &cloud, args.max_dist)?;
        std::fs::write(out("match.json"), json_bytes(&m)?)?;
    }
    Ok(())
}
