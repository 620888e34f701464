use std::path::{Path, PathBuf};

use mstc_core::config::CONFIG_KEYS;
use mstc_core::metrics::{
    ber_curve, complexity_counts, ebn0_for_ber, occupied_bandwidth_hz, papr_at_ccdf, papr_ccdf,
    psd_estimate, symbol_duration_exact, symbol_duration_s, x_at_y_loglinear,
};
use mstc_core::{
    default_config, derive_seed, narrowband_config, seeded_rng, transmit, BitBlock, MetricSeries,
    Modulation, Scheme, SystemConfig, Waveform,
};

use crate::error::CliError;
use crate::scenario::{Kind, Scenario};

/// One headline scalar of `summary.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub key: String,
    pub scheme: String,
    pub value: String,
}

impl SummaryRow {
    fn new(key: impl Into<String>, scheme: impl ToString, value: impl ToString) -> Self {
        SummaryRow {
            key: key.into(),
            scheme: scheme.to_string(),
            value: value.to_string(),
        }
    }

    fn maybe(key: impl Into<String>, scheme: impl ToString, value: Option<f64>) -> Self {
        match value {
            Some(v) => Self::new(key, scheme, v),
            None => Self::new(key, scheme, "NA"),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub files: Vec<PathBuf>,
    pub summary: Vec<SummaryRow>,
}

/// Scheme column for rows that compare schemes.
const ALL_SCHEMES: &str = "-";

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Conventional reference profile with the scenario's config overrides.
fn base_config(sc: &Scenario, narrowband: bool) -> Result<SystemConfig, CliError> {
    let mut cfg = if narrowband {
        narrowband_config(Scheme::ConventionalOfdm)
    } else {
        default_config(Scheme::ConventionalOfdm)
    };
    for (k, v) in &sc.overrides {
        if CONFIG_KEYS.contains(&k.as_str()) {
            cfg.set(k, v).map_err(usage)?;
        }
    }
    cfg.validate().map_err(usage)?;
    Ok(cfg)
}

/// Configuration of `scheme` derived from the conventional base: compressed
/// IFFT for full loading, or a shared grid with fewer active subcarriers.
fn scheme_config(base: &SystemConfig, scheme: Scheme) -> Result<SystemConfig, CliError> {
    let cfg = match base.active_subcarriers {
        Some(k) => {
            let streams = scheme.streams();
            if k % streams != 0 {
                return Err(usage(format!(
                    "active_subcarriers {k} not divisible into {streams} streams for {scheme}"
                )));
            }
            SystemConfig {
                scheme,
                active_subcarriers: Some(k / streams),
                ..base.clone()
            }
        }
        None => base.derive(scheme).map_err(usage)?,
    };
    cfg.validate().map_err(usage)?;
    Ok(cfg)
}

fn scheme_seed(sc: &Scenario, cfg: &SystemConfig) -> u64 {
    let idx = Scheme::ALL.iter().position(|s| *s == cfg.scheme).unwrap_or(0) as u64;
    derive_seed(derive_seed(sc.seed, cfg.rng_seed), idx)
}

fn save(dir: &Path, series: &MetricSeries, report: &mut RunReport) -> Result<(), CliError> {
    let path = dir.join(format!("{}.csv", series.label));
    series.save(&path).map_err(|e| match e {
        mstc_core::Error::Io(source) => CliError::Io {
            path: path.display().to_string(),
            source,
        },
        other => CliError::Sim(other),
    })?;
    report.files.push(path);
    Ok(())
}

fn grid(sc: &Scenario) -> Result<Vec<f64>, CliError> {
    let lo: f64 = sc.parse("ebn0_min")?;
    let hi: f64 = sc.parse("ebn0_max")?;
    let step: f64 = sc.parse("ebn0_step")?;
    if !(lo.is_finite() && hi.is_finite() && step > 0.0 && hi >= lo) {
        return Err(usage(format!("Eb/N0 grid {lo}..{hi} step {step}")));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| lo + i as f64 * step).collect())
}

fn run_papr(sc: &Scenario, dir: &Path, report: &mut RunReport) -> Result<(), CliError> {
    let trials: usize = sc.parse("trials")?;
    let level: f64 = sc.parse("level")?;
    if !(level > 0.0 && level < 1.0) {
        return Err(usage(format!("level {level} outside (0, 1)")));
    }
    let base = base_config(sc, false)?;
    let mut at = Vec::new();
    for &s in &sc.schemes {
        let cfg = scheme_config(&base, s)?;
        let series = papr_ccdf(&cfg, trials, scheme_seed(sc, &cfg)).map_err(usage)?;
        save(dir, &series, report)?;
        let v = papr_at_ccdf(&series, level);
        report.summary.push(SummaryRow::maybe("papr_db_at_ccdf", s, v));
        at.push((s, v));
    }
    if let Some((_, Some(conv))) = at.iter().find(|(s, _)| *s == Scheme::ConventionalOfdm) {
        for (s, v) in &at {
            if *s != Scheme::ConventionalOfdm {
                report
                    .summary
                    .push(SummaryRow::maybe("papr_reduction_db", s, v.map(|v| conv - v)));
            }
        }
    }
    let sweep = sc.value("sweep_sizes");
    if sweep != "none" {
        for tok in sweep.split(',') {
            let n: usize = tok.trim().parse().map_err(|e| usage(format!("sweep_sizes '{tok}': {e}")))?;
            let cfg = SystemConfig {
                fft_size: n,
                cp_len: base.cp_len * n / base.fft_size,
                ..base.clone()
            };
            cfg.validate().map_err(usage)?;
            let mut series = papr_ccdf(&cfg, trials, derive_seed(scheme_seed(sc, &cfg), n as u64)).map_err(usage)?;
            series.label = format!("papr_ccdf_conventional_n{n}");
            save(dir, &series, report)?;
            report.summary.push(SummaryRow::maybe(
                format!("papr_db_at_ccdf_n{n}"),
                Scheme::ConventionalOfdm,
                papr_at_ccdf(&series, level),
            ));
        }
    }
    report.summary.push(SummaryRow::new("papr_ccdf_level", ALL_SCHEMES, level));
    Ok(())
}

/// Eb/N0 at `target` BER. Error-free points carry no rate information and
/// are skipped, so targets below the simulated floor read as missing.
fn ber_readoff(series: &MetricSeries, target: f64) -> Option<f64> {
    let (x, y): (Vec<f64>, Vec<f64>) = series.points().filter(|&(_, y)| y > 0.0).unzip();
    x_at_y_loglinear(&x, &y, target)
}

fn run_ber(sc: &Scenario, dir: &Path, report: &mut RunReport) -> Result<(), CliError> {
    let g = grid(sc)?;
    let min_bits: u64 = sc.parse("min_bits")?;
    let max_errors: u64 = sc.parse("max_errors")?;
    let target: f64 = sc.parse("target_ber")?;
    let base = base_config(sc, false)?;
    for &s in &sc.schemes {
        let cfg = scheme_config(&base, s)?;
        let series = ber_curve(&cfg, &g, min_bits, max_errors, scheme_seed(sc, &cfg)).map_err(usage)?;
        save(dir, &series, report)?;
        report
            .summary
            .push(SummaryRow::maybe("ebn0_db_at_ber", s, ber_readoff(&series, target)));
        report.summary.push(SummaryRow::maybe(
            "ebn0_db_at_ber_theory",
            s,
            ebn0_for_ber(cfg.modulation, target).ok(),
        ));
        report
            .summary
            .push(SummaryRow::new("bits_per_complex_sample", s, cfg.bits_per_complex_sample()));
    }
    report.summary.push(SummaryRow::new("target_ber", ALL_SCHEMES, target));
    Ok(())
}

fn run_qam_compare(sc: &Scenario, dir: &Path, report: &mut RunReport) -> Result<(), CliError> {
    let g = grid(sc)?;
    let min_bits: u64 = sc.parse("min_bits")?;
    let max_errors: u64 = sc.parse("max_errors")?;
    let target: f64 = sc.parse("target_ber")?;
    let base = base_config(sc, false)?;
    let qam = SystemConfig {
        modulation: Modulation::Qam16,
        ..base.clone()
    };
    let bpsk = SystemConfig {
        modulation: Modulation::Bpsk,
        ..base
    };
    let mstc = scheme_config(&bpsk, Scheme::MstcOfdm)?;
    let mut x = Vec::new();
    for cfg in [&qam, &mstc] {
        let series = ber_curve(cfg, &g, min_bits, max_errors, scheme_seed(sc, cfg)).map_err(usage)?;
        save(dir, &series, report)?;
        let label = format!("{}_{}", cfg.scheme, cfg.modulation);
        let v = ber_readoff(&series, target);
        report.summary.push(SummaryRow::maybe("ebn0_db_at_ber", &label, v));
        x.push(v);
    }
    let theory = |t: f64| -> Option<f64> {
        Some(ebn0_for_ber(Modulation::Qam16, t).ok()? - ebn0_for_ber(Modulation::Bpsk, t).ok()?)
    };
    let gap = match (x[0], x[1]) {
        (Some(a), Some(b)) => Some(a - b),
        _ => None,
    };
    report.summary.push(SummaryRow::maybe("ebn0_gap_db", ALL_SCHEMES, gap));
    report.summary.push(SummaryRow::maybe("ebn0_gap_db_theory", ALL_SCHEMES, theory(target)));
    report
        .summary
        .push(SummaryRow::maybe("ebn0_gap_db_theory_at_1e-6", ALL_SCHEMES, theory(1e-6)));
    report.summary.push(SummaryRow::new("target_ber", ALL_SCHEMES, target));
    Ok(())
}

fn run_psd(sc: &Scenario, dir: &Path, report: &mut RunReport) -> Result<(), CliError> {
    let narrowband = match sc.value("profile") {
        "narrowband" => true,
        "default" => false,
        other => return Err(usage(format!("profile '{other}' (expected narrowband or default)"))),
    };
    let symbols: usize = sc.parse("symbols")?;
    let seg: usize = sc.parse("segment_len")?;
    let overlap: f64 = sc.parse("overlap")?;
    let threshold: f64 = sc.parse("threshold_db")?;
    let base = base_config(sc, narrowband)?;
    let mut widths = Vec::new();
    for &s in &sc.schemes {
        let cfg = scheme_config(&base, s)?;
        let blocks = symbols.div_ceil(cfg.symbols_per_block()).max(1);
        let payload = BitBlock::random(&mut seeded_rng(scheme_seed(sc, &cfg)), blocks * cfg.bits_per_block());
        let frame: Waveform = transmit(&payload, &cfg)?;
        let mut series = psd_estimate(&frame.bodies(), seg, overlap).map_err(usage)?;
        series.label = format!("psd_{s}");
        let series = series
            .with_meta("scheme", s)
            .with_meta("symbols", blocks * cfg.symbols_per_block());
        let bw = occupied_bandwidth_hz(&series, threshold).map_err(usage)?;
        let with_cp = psd_estimate(&frame, seg, overlap)
            .and_then(|p| occupied_bandwidth_hz(&p, threshold))
            .map_err(usage)?;
        save(dir, &series, report)?;
        report.summary.push(SummaryRow::new("occupied_bandwidth_hz", s, bw));
        report
            .summary
            .push(SummaryRow::new("occupied_bandwidth_with_cp_hz", s, with_cp));
        widths.push((s, bw));
    }
    if let Some(&(_, conv)) = widths.iter().find(|(s, _)| *s == Scheme::ConventionalOfdm) {
        for (s, bw) in &widths {
            report.summary.push(SummaryRow::new("bandwidth_ratio", s, bw / conv));
        }
    }
    Ok(())
}

fn run_timedomain(sc: &Scenario, dir: &Path, report: &mut RunReport) -> Result<(), CliError> {
    let blocks: usize = sc.parse("blocks")?;
    if blocks == 0 {
        return Err(usage("blocks must be at least 1"));
    }
    let base = base_config(sc, false)?;
    let conv_exact = symbol_duration_exact(&base).ok();
    for &s in &sc.schemes {
        let cfg = scheme_config(&base, s)?;
        let payload = BitBlock::random(&mut seeded_rng(scheme_seed(sc, &cfg)), blocks * cfg.bits_per_block());
        let frame: Waveform = transmit(&payload, &cfg)?;
        let fs = cfg.sampling_rate_hz;
        let t = (0..frame.samples().len()).map(|i| i as f64 / fs * 1e6).collect();
        let a = frame.samples().iter().map(|v| v.norm()).collect();
        let series = MetricSeries::new(format!("timedomain_{s}"), "time_us", "amplitude", t, a)?
            .with_meta("scheme", s)
            .with_meta("fft_size", cfg.fft_size)
            .with_meta("cp_len", cfg.cp_len)
            .with_meta("symbols", frame.symbol_count());
        save(dir, &series, report)?;
        report
            .summary
            .push(SummaryRow::new("symbol_duration_us", s, symbol_duration_s(&cfg) * 1e6));
        report
            .summary
            .push(SummaryRow::new("block_duration_us", s, frame.duration_s() / blocks as f64 * 1e6));
        if let (Some(conv), Ok(exact)) = (conv_exact, symbol_duration_exact(&cfg)) {
            report.summary.push(SummaryRow::new("symbol_duration_s_exact", s, exact));
            report.summary.push(SummaryRow::new("symbol_duration_ratio", s, exact / conv));
        }
    }
    Ok(())
}

fn run_complexity(sc: &Scenario, dir: &Path, report: &mut RunReport) -> Result<(), CliError> {
    let n: u64 = sc.parse("n")?;
    for &s in &sc.schemes {
        let at = complexity_counts(s, n).map_err(usage)?;
        let sizes: Vec<u64> = (3..=n.trailing_zeros()).map(|p| 1u64 << p).collect();
        let counts = sizes
            .iter()
            .map(|&m| complexity_counts(s, m))
            .collect::<Result<Vec<_>, _>>()?;
        let x: Vec<f64> = sizes.iter().map(|&m| m as f64).collect();
        for (name, y) in [
            ("multiplications", counts.iter().map(|c| c.multiplications as f64).collect()),
            ("additions", counts.iter().map(|c| c.additions as f64).collect()),
        ] {
            let series = MetricSeries::new(format!("complexity_{name}_{s}"), "n", name, x.clone(), y)?
                .with_meta("scheme", s);
            save(dir, &series, report)?;
        }
        report.summary.push(SummaryRow::new("multiplications", s, at.multiplications));
        report.summary.push(SummaryRow::new("additions", s, at.additions));
    }
    report.summary.push(SummaryRow::new("n", ALL_SCHEMES, n));
    Ok(())
}

/// Write `summary.csv` with columns `key,scheme,value`.
pub fn write_summary(path: &Path, rows: &[SummaryRow]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io {
        path: path.display().to_string(),
        source: e,
    };
    let mut w = csv::Writer::from_path(path).map_err(|e| io(e.into()))?;
    let result = (|| {
        w.write_record(["key", "scheme", "value"])?;
        for r in rows {
            w.write_record([&r.key, &r.scheme, &r.value])?;
        }
        w.flush()?;
        Ok::<(), csv::Error>(())
    })();
    result.map_err(|e| io(e.into()))
}

fn run_inner(sc: &Scenario) -> Result<RunReport, CliError> {
    let dir = &sc.output_dir;
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io {
        path: dir.display().to_string(),
        source: e,
    })?;
    let mut report = RunReport::default();
    match sc.kind {
        Kind::PaprCcdf => run_papr(sc, dir, &mut report)?,
        Kind::Ber => run_ber(sc, dir, &mut report)?,
        Kind::BerQamCompare => run_qam_compare(sc, dir, &mut report)?,
        Kind::Psd => run_psd(sc, dir, &mut report)?,
        Kind::Timedomain => run_timedomain(sc, dir, &mut report)?,
        Kind::Complexity => run_complexity(sc, dir, &mut report)?,
    }
    report.summary.push(SummaryRow::new("seed", ALL_SCHEMES, sc.seed));
    let path = dir.join("summary.csv");
    write_summary(&path, &report.summary)?;
    report.files.push(path);
    Ok(report)
}

/// Run a scenario, writing its CSV series and `summary.csv` into the output
/// directory.
pub fn run(sc: &Scenario) -> Result<RunReport, CliError> {
    match sc.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| usage(format!("--jobs {j}: {e}")))?
            .install(|| run_inner(sc)),
        None => run_inner(sc),
    }
}
