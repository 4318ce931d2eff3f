use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand};
use sdf_core::augment::Stage;
use sdf_core::colormap::write_ppm;
use sdf_core::engine::{f32_le_bytes, Engine, FRAME_LEN};
use sdf_core::render::{render_stereo, torso_pose};
use sdf_core::terrain::{Heightfield, TerrainFamily};
use sdf_core::{DepthImage, RunConfig};
use serde_json::json;

/// Target full-pipeline rate: 1024 environments at 50 frames per second.
const BENCH_TARGET_FPS: f64 = 1024.0 * 50.0;

#[derive(Parser)]
#[command(name = "sdf", version, about = "Parkour terrain, stereo depth rendering and depth augmentation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate heightfields (HFLD plus a 16-bit PGM preview).
    Gen(Common),
    /// Render the stereo pair of every environment at its first pose.
    Render(Common),
    /// Run render and augmentation, writing the final batch tensors.
    Augment(AugmentArgs),
    /// Time the full pipeline; one JSON line per trial on stdout.
    Bench(BenchArgs),
}

#[derive(Args, Clone)]
struct Common {
    /// Config file (sectioned key = value).
    #[arg(long, env = "SDF_CONFIG")]
    config: Option<PathBuf>,
    #[arg(long, env = "SDF_SEED")]
    seed: Option<u64>,
    #[arg(long, env = "SDF_ENVS", value_parser = clap::value_parser!(u64).range(1..))]
    envs: Option<u64>,
    #[arg(long, env = "SDF_FRAMES")]
    frames: Option<usize>,
    #[arg(long, env = "SDF_OUTPUT")]
    output: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, env = "SDF_WORKERS")]
    workers: Option<usize>,
    /// Forward motion per frame, meters.
    #[arg(long)]
    speed: Option<f64>,
    #[arg(long)]
    family: Option<TerrainFamily>,
    #[arg(long)]
    difficulty: Option<u8>,
    /// Stereo baseline, meters.
    #[arg(long)]
    baseline: Option<f64>,
    /// Use this HFLD file for every environment instead of generating terrain.
    #[arg(long)]
    heightfield: Option<PathBuf>,
    #[arg(long)]
    no_fuse: bool,
    #[arg(long)]
    no_conv: bool,
    #[arg(long)]
    no_gauss: bool,
    #[arg(long)]
    no_perlin: bool,
    #[arg(long)]
    no_scale: bool,
    #[arg(long)]
    no_failures: bool,
    #[arg(long)]
    no_delay: bool,
    /// Same as --no-conv --no-gauss --no-perlin --no-scale.
    #[arg(long)]
    no_noise: bool,
    /// Keep the nominal rig instead of randomizing it per environment.
    #[arg(long)]
    no_rig_randomization: bool,
}

#[derive(Args)]
struct AugmentArgs {
    #[command(flatten)]
    common: Common,
    /// Write every intermediate image of one environment for the last frame.
    #[arg(long)]
    dump_stages: bool,
    /// Environment traced by --dump-stages.
    #[arg(long, default_value_t = 0)]
    dump_env: usize,
    /// Also write every frame's tensors, frame-major.
    #[arg(long)]
    all_frames: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 3)]
    trials: usize,
}

impl Common {
    fn load(&self) -> Result<RunConfig> {
        let text = match &self.config {
            Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
            None => String::new(),
        };
        let mut cfg = RunConfig::load(&text, std::env::vars())
            .with_context(|| match &self.config {
                Some(p) => format!("invalid config {}", p.display()),
                None => "invalid configuration".to_string(),
            })?;
        if let Some(v) = self.seed {
            cfg.run.seed = v;
        }
        if let Some(v) = self.envs {
            cfg.run.envs = v as usize;
        }
        if let Some(v) = self.frames {
            cfg.run.frames = v;
        }
        if let Some(v) = &self.output {
            cfg.run.output = v.to_string_lossy().into_owned();
        }
        if let Some(v) = self.workers {
            cfg.run.workers = v;
        }
        if let Some(v) = self.speed {
            cfg.run.speed = v;
        }
        if let Some(v) = self.family {
            cfg.terrain.family = v;
        }
        if let Some(v) = self.difficulty {
            cfg.terrain.difficulty = v;
        }
        if let Some(v) = self.baseline {
            cfg.rig.baseline = v;
        }
        if self.no_rig_randomization {
            cfg.rig.randomize = false;
        }
        let t = &mut cfg.augment;
        t.fuse &= !self.no_fuse;
        t.conv &= !(self.no_conv || self.no_noise);
        t.gauss &= !(self.no_gauss || self.no_noise);
        t.perlin &= !(self.no_perlin || self.no_noise);
        t.scale &= !(self.no_scale || self.no_noise);
        t.failures &= !self.no_failures;
        t.delay &= !self.no_delay;
        cfg.validate()?;
        if cfg.run.workers > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.run.workers)
                .build_global()
                .context("starting worker pool")?;
        }
        Ok(cfg)
    }

    fn engine(&self, cfg: &RunConfig) -> Result<Engine> {
        match &self.heightfield {
            Some(p) => {
                let file = File::open(p).with_context(|| format!("heightfield {}", p.display()))?;
                let field = Heightfield::read_hfld(std::io::BufReader::new(file))
                    .with_context(|| format!("reading heightfield {}", p.display()))?;
                Ok(Engine::with_field(cfg, field)?)
            }
            None => Ok(Engine::new(cfg)?),
        }
    }
}

fn output_dir(cfg: &RunConfig) -> Result<PathBuf> {
    let dir = PathBuf::from(&cfg.run.output);
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    Ok(dir)
}

fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut out = BufWriter::new(file);
    f(&mut out)?;
    out.flush().with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn cmd_gen(args: &Common) -> Result<()> {
    let cfg = args.load()?;
    let dir = output_dir(&cfg)?;
    let engine = args.engine(&cfg)?;
    // Non-rough families share one field across environments.
    let count = if cfg.terrain.family == TerrainFamily::Rough && args.heightfield.is_none() {
        engine.env_count()
    } else {
        1
    };
    for env in 0..count {
        let field = engine.field(env);
        let path = dir.join(format!("terrain_{env:04}.hfld"));
        write_file(&path, |o| Ok(field.write_hfld(o)?))?;
        write_file(&path.with_extension("pgm"), |o| Ok(field.write_pgm16(o)?))?;
        let reloaded = Heightfield::read_hfld(std::io::BufReader::new(File::open(&path)?))?;
        ensure!(&reloaded == field, "{} did not round-trip", path.display());
        let mean = field.heights().iter().map(|&h| h as f64).sum::<f64>() / field.heights().len() as f64;
        println!(
            "{}: {}x{} cells at {} m, height min {:.4} max {:.4} mean {:.4}",
            path.display(),
            field.rows(),
            field.cols(),
            field.resolution(),
            field.min_height(),
            field.max_height(),
            mean
        );
    }
    Ok(())
}

fn write_depth_views(base: &Path, img: &DepthImage, normalized: bool) -> Result<()> {
    let as_meters = if normalized {
        img.map_valid(|_, v| v * 2.0)
    } else {
        img.clone()
    };
    write_file(&base.with_extension("pgm"), |o| Ok(as_meters.write_pgm8(o)?))?;
    write_file(&base.with_extension("ppm"), |o| Ok(write_ppm(img, normalized, o)?))?;
    Ok(())
}

fn cmd_render(args: &Common) -> Result<()> {
    let cfg = args.load()?;
    let dir = output_dir(&cfg)?;
    let engine = args.engine(&cfg)?;
    for env in 0..engine.env_count() {
        let pose = engine.course_pose(env, 0);
        let torso = torso_pose(pose.x, pose.y, pose.z, pose.yaw);
        let (left, right) = render_stereo(engine.field(env), &torso, engine.rig(env))?;
        for (side, img) in [("left", &left), ("right", &right)] {
            let base = dir.join(format!("{side}_{env:04}"));
            write_file(&base.with_extension("pfm"), |o| Ok(img.write_pfm(o)?))?;
            write_depth_views(&base, img, false)?;
        }
        println!(
            "env {env}: {}x{} pair, {:.1}% / {:.1}% invalid",
            left.width(),
            left.height(),
            100.0 * left.invalid_fraction(),
            100.0 * right.invalid_fraction()
        );
    }
    Ok(())
}

fn check_tensor(path: &Path, expected: usize) -> Result<()> {
    let bytes = fs::read(path).with_context(|| format!("reading back {}", path.display()))?;
    ensure!(
        bytes.len() == expected * 4,
        "{}: {} bytes, expected {}",
        path.display(),
        bytes.len(),
        expected * 4
    );
    for chunk in bytes.chunks_exact(4) {
        let v = f32::from_le_bytes(chunk.try_into().unwrap());
        ensure!((0.0..=1.0).contains(&v), "{}: value {v} outside [0, 1]", path.display());
    }
    Ok(())
}

fn cmd_augment(args: &AugmentArgs) -> Result<()> {
    let cfg = args.common.load()?;
    let dir = output_dir(&cfg)?;
    let mut engine = args.common.engine(&cfg)?;
    let n = engine.env_count();
    if args.dump_stages && args.dump_env >= n {
        bail!("--dump-env {} but only {n} environments", args.dump_env);
    }
    ensure!(cfg.run.frames >= 1, "frames must be at least 1");

    let mut all = if args.all_frames {
        let open = |name: &str| -> Result<BufWriter<File>> {
            let path = dir.join(name);
            Ok(BufWriter::new(
                File::create(&path).with_context(|| format!("creating {}", path.display()))?,
            ))
        };
        Some((open("student_frames.f32")?, open("clean_frames.f32")?))
    } else {
        None
    };
    let mut trace = None;
    for frame in 0..cfg.run.frames {
        let poses = engine.course_poses();
        if args.dump_stages && frame + 1 == cfg.run.frames {
            trace = Some(engine.step_traced(&poses, args.dump_env)?);
        } else {
            engine.step(&poses)?;
        }
        if let Some((s, c)) = &mut all {
            s.write_all(&f32_le_bytes(engine.student()))?;
            c.write_all(&f32_le_bytes(engine.clean()))?;
        }
    }
    if let Some((s, c)) = all {
        s.into_inner().map_err(|e| e.into_error())?;
        c.into_inner().map_err(|e| e.into_error())?;
    }

    let desc = engine.descriptor();
    let student = dir.join("student.f32");
    let clean = dir.join("clean.f32");
    fs::write(&student, f32_le_bytes(engine.student()))?;
    fs::write(&clean, f32_le_bytes(engine.clean()))?;
    check_tensor(&student, desc.elements())?;
    check_tensor(&clean, desc.elements())?;
    if args.all_frames {
        check_tensor(&dir.join("student_frames.f32"), cfg.run.frames * n * FRAME_LEN)?;
        check_tensor(&dir.join("clean_frames.f32"), cfg.run.frames * n * FRAME_LEN)?;
    }

    let mut stage_files = Vec::new();
    if let Some(t) = &trace {
        let mut panels: Vec<(String, &DepthImage, bool)> = vec![
            ("input_left".into(), &t.left, false),
            ("input_right".into(), &t.right, false),
        ];
        panels.extend(t.stages.panels().iter().map(|(name, img, norm)| (name.to_string(), *img, *norm)));
        for (k, (name, img, norm)) in panels.into_iter().enumerate() {
            let stem = format!("stage_{k:02}_{name}");
            write_depth_views(&dir.join(&stem), img, norm)?;
            stage_files.push(stem);
        }
    }

    let descriptor = json!({
        "shape": desc.shape,
        "dtype": desc.dtype,
        "layout": desc.layout,
        "byte_order": "little",
        "student": "student.f32",
        "clean": "clean.f32",
        "frames": cfg.run.frames,
        "seed": cfg.run.seed,
        "delay_frames": (0..n).map(|e| engine.delay_frames(e)).collect::<Vec<_>>(),
        "all_frames": args.all_frames.then_some(json!({
            "student": "student_frames.f32",
            "clean": "clean_frames.f32",
            "shape": [cfg.run.frames, n, 1, desc.shape[2], desc.shape[3]],
        })),
        "stage_dumps": stage_files,
        "config": cfg,
    });
    fs::write(dir.join("tensors.json"), serde_json::to_string_pretty(&descriptor)? + "\n")?;
    println!(
        "{} frames x {n} envs -> {} ({:?})",
        cfg.run.frames,
        dir.display(),
        desc.shape
    );
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> Result<()> {
    let cfg = args.common.load()?;
    let mut engine = args.common.engine(&cfg)?;
    let n = engine.env_count();
    let frames = cfg.run.frames.max(1);
    let warm = engine.course_poses();
    engine.step(&warm)?;
    for trial in 0..args.trials {
        let mut times = sdf_core::augment::StageTimes::default();
        let start = Instant::now();
        for _ in 0..frames {
            let poses = engine.course_poses();
            times.merge(&engine.step_timed(&poses)?);
        }
        let wall = start.elapsed().as_secs_f64();
        let env_fps = (n * frames) as f64 / wall;
        let stages: serde_json::Map<String, serde_json::Value> = Stage::ALL
            .iter()
            .map(|&s| (s.name().to_string(), json!(times.get(s).as_secs_f64())))
            .collect();
        let record = json!({
            "trial": trial,
            "envs": n,
            "frames": frames,
            "workers": rayon::current_num_threads(),
            "wall_s": wall,
            "env_frames_per_s": env_fps,
            "batch_hz": frames as f64 / wall,
            "target_env_frames_per_s": BENCH_TARGET_FPS,
            "meets_target": env_fps >= BENCH_TARGET_FPS,
            "busy_total_s": times.total.as_secs_f64(),
            "stage_sum_s": times.stage_sum().as_secs_f64(),
            "stages_s": stages,
        });
        println!("{record}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Render(a) => cmd_render(a),
        Command::Augment(a) => cmd_augment(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
