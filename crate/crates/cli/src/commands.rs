//! One function per subcommand, each returning a complete [`Table`].

use dipole_fade::gof::histogram;
use dipole_fade::model::{
    field_vector, h_coax, h_copl, optimal_pte, scaled_far_field, scaled_near_field, vector::norm,
    UnitVector3,
};
use dipole_fade::montecarlo::{
    empirical_ber, misalignment_loss_ecdf, sample_alignment, sample_channel,
    sample_field_magnitude, ChannelMode, Ecdf,
};
use dipole_fade::outage::{
    ber_backscatter, ber_bound, ber_exact_region, diversity_exponent_fit, outage_capacity,
    outage_pte, outage_pte_empirical, rayleigh_reference_cdf, CdfInverse, OutageSpec,
    DEFAULT_SNR_WINDOW,
};
use dipole_fade::stats::{
    linear_grid, pdf_beta_ff, pdf_beta_nf, pdf_h_conditional, pdf_h_full_with, pdf_j_ff, pdf_j_nf,
    support_ellipse, ComplexGrid, FullPdfOptions, RhombusCoordinates,
};
use dipole_fade::{Complex64, Error, RegionKind};

use crate::config::{Command, ModeArg, RunConfig};
use crate::output::{num, Table};

pub fn run(command: Command, cfg: &RunConfig) -> dipole_fade::Result<Table> {
    let mut table = match command {
        Command::FieldMap => field_map(cfg),
        Command::PdfJ => pdf_j(cfg),
        Command::PdfBeta => pdf_beta(cfg),
        Command::PdfHCond => pdf_h_cond(cfg),
        Command::PdfHFull => pdf_h_full(cfg),
        Command::Scatter => scatter(cfg),
        Command::Outage => outage(cfg),
    }?;
    let mut head = vec![format!(
        "{} {}",
        env!("CARGO_PKG_NAME"),
        env!("CARGO_PKG_VERSION")
    )];
    head.push(
        cfg.provenance(command)
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" "),
    );
    head.append(&mut table.comments);
    table.comments = head;
    Ok(table)
}

/// Bin edges halfway between grid nodes, clipped to the grid span, so that
/// every node owns one bin.
fn node_bins(grid: &[f64]) -> Vec<f64> {
    let mut edges = Vec::with_capacity(grid.len() + 1);
    edges.push(grid[0]);
    edges.extend(grid.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    edges.push(grid[grid.len() - 1]);
    edges
}

/// Histogram density estimate per grid node.
fn node_density(sample: &[f64], grid: &[f64]) -> Vec<f64> {
    let edges = node_bins(grid);
    let n = sample.len() as f64;
    histogram(sample, &edges)
        .iter()
        .zip(edges.windows(2))
        .map(|(&c, w)| c as f64 / (n * (w[1] - w[0])))
        .collect()
}

fn field_map(cfg: &RunConfig) -> dipole_fade::Result<Table> {
    let xs = linear_grid(-1.0, 1.0, cfg.grid.nx);
    let zs = linear_grid(-1.0, 1.0, cfg.grid.ny);
    let o_tx = UnitVector3::Z;
    let mut t = Table::new(&["x", "z", "beta_nf", "beta_ff"]);
    t.comment("slice y = 0 around a dipole along z at the origin; the origin itself is omitted");
    for &x in &xs {
        for &z in &zs {
            if x == 0.0 && z == 0.0 {
                continue;
            }
            let d = UnitVector3::new(x, 0.0, z)?;
            t.push(vec![
                num(x),
                num(z),
                num(norm(&scaled_near_field(&d, &o_tx))),
                num(norm(&scaled_far_field(&d, &o_tx))),
            ]);
        }
    }
    Ok(t)
}

fn marginal_table(
    cfg: &RunConfig,
    name: &str,
    grid: Vec<f64>,
    pdfs: [fn(f64) -> f64; 2],
    sample: impl Fn(RegionKind) -> dipole_fade::Result<Vec<f64>>,
) -> dipole_fade::Result<Table> {
    let near = sample(RegionKind::NearField)?;
    let far = sample(RegionKind::FarField)?;
    let hist_nf = node_density(&near, &grid);
    let hist_ff = node_density(&far, &grid);
    let mut t = Table::new(&[name, "pdf_nf", "pdf_ff", "hist_nf", "hist_ff"]);
    t.comment(format!("histograms from {} draws per column", cfg.samples));
    for (i, &x) in grid.iter().enumerate() {
        t.push(vec![
            num(x),
            num(pdfs[0](x)),
            num(pdfs[1](x)),
            num(hist_nf[i]),
            num(hist_ff[i]),
        ]);
    }
    Ok(t)
}

fn real_draws(set: dipole_fade::montecarlo::SampleSet) -> Vec<f64> {
    set.real().expect("real-valued sampler").to_vec()
}

fn pdf_j(cfg: &RunConfig) -> dipole_fade::Result<Table> {
    // Distinct streams for the two columns.
    marginal_table(
        cfg,
        "j",
        linear_grid(-1.0, 1.0, cfg.grid.nx),
        [pdf_j_nf, pdf_j_ff],
        |r| {
            let seed = cfg.seed.wrapping_add((r == RegionKind::FarField) as u64);
            Ok(real_draws(sample_alignment(cfg.samples, r, seed)?))
        },
    )
}

fn pdf_beta(cfg: &RunConfig) -> dipole_fade::Result<Table> {
    marginal_table(
        cfg,
        "beta",
        linear_grid(0.0, 1.0, cfg.grid.nx),
        [pdf_beta_nf, pdf_beta_ff],
        |r| {
            let seed = cfg.seed.wrapping_add((r == RegionKind::FarField) as u64);
            Ok(real_draws(sample_field_magnitude(cfg.samples, r, seed)?))
        },
    )
}

fn conditional_vector(
    cfg: &RunConfig,
) -> dipole_fade::Result<dipole_fade::model::ComplexFieldVector> {
    let d = UnitVector3::Z;
    let o_tx = UnitVector3::with_projection(d, cfg.dot)?;
    Ok(field_vector(cfg.kr, cfg.alpha_bar.0, &d, &o_tx))
}

fn pdf_h_cond(cfg: &RunConfig) -> dipole_fade::Result<Table> {
    let v = conditional_vector(cfg)?;
    let e = support_ellipse(&v);
    if e.degenerate {
        return Err(Error::DegenerateFieldVector {
            rho_abs: e.rho.abs(),
        });
    }
    let res = linear_grid(-1.05 * e.v_re_norm, 1.05 * e.v_re_norm, cfg.grid.nx);
    let ims = linear_grid(-1.05 * e.v_im_norm, 1.05 * e.v_im_norm, cfg.grid.ny);
    let mut t = Table::new(&["re", "im", "pdf"]);
    t.comment(format!(
        "v_re={} v_im={} rho={} b={} s0={}",
        num(e.v_re_norm),
        num(e.v_im_norm),
        num(e.rho),
        num(e.b),
        num(e.s0)
    ));
    for &x in &res {
        for &y in &ims {
            t.push(vec![
                num(x),
                num(y),
                num(pdf_h_conditional(Complex64::new(x, y), &v)?),
            ]);
        }
    }
    Ok(t)
}

fn pdf_h_full(cfg: &RunConfig) -> dipole_fade::Result<Table> {
    let coords = RhombusCoordinates::new(cfg.kr, cfg.alpha_bar.0)?;
    let grid = ComplexGrid::covering(&coords, cfg.grid.nx, cfg.grid.ny);
    let opts = FullPdfOptions {
        tolerance: cfg.tol,
        ..Default::default()
    };
    let curve = pdf_h_full_with(&grid, cfg.kr, cfg.alpha_bar.0, &opts)?;
    let (c, p) = (
        h_coax(cfg.kr, cfg.alpha_bar.0),
        h_copl(cfg.kr, cfg.alpha_bar.0),
    );
    let mut t = Table::new(&["re", "im", "pdf"]);
    t.comment(format!(
        "support vertices ±h_coax=({},{}) ±h_copl=({},{}); density is +inf on the line through the origin parallel to h_copl",
        num(c.re),
        num(c.im),
        num(p.re),
        num(p.im)
    ));
    for (i, &x) in grid.re.iter().enumerate() {
        for (j, &y) in grid.im.iter().enumerate() {
            t.push(vec![num(x), num(y), num(curve.at(i, j))]);
        }
    }
    Ok(t)
}

fn scatter(cfg: &RunConfig) -> dipole_fade::Result<Table> {
    let mode = match cfg.mode {
        ModeArg::BothRandom => ChannelMode::BothRandom,
        ModeArg::RxRandom => ChannelMode::rx_random_with_dot(cfg.dot)?,
    };
    let set = sample_channel(cfg.samples, cfg.kr, cfg.alpha_bar.0, mode, cfg.seed)?;
    let mut t = Table::new(&["re", "im"]);
    for h in set.complex().expect("channel draws are complex") {
        t.push(vec![num(h.re), num(h.im)]);
    }
    Ok(t)
}

fn log_grid(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    let (a, b) = (lo.log10(), hi.log10());
    let n = ((b - a) * per_decade as f64).round() as usize;
    (0..=n)
        .map(|i| 10f64.powf(a + (b - a) * i as f64 / n as f64))
        .collect()
}

/// Normalized PTE draws `|h|²/η_opt` at `kr`.
fn normalized_pte(cfg: &RunConfig, kr: f64) -> dipole_fade::Result<Vec<f64>> {
    let unit = Complex64::new(1.0, 0.0);
    let set = sample_channel(cfg.samples, kr, unit, ChannelMode::BothRandom, cfg.seed)?;
    let opt = optimal_pte(kr, unit);
    Ok(set
        .complex()
        .expect("channel draws are complex")
        .iter()
        .map(|h| h.norm_sqr() / opt)
        .collect())
}

fn row(t: &mut Table, section: &str, curve: &str, x: f64, y: f64, note: &str) {
    t.push(vec![
        section.into(),
        curve.into(),
        num(x),
        num(y),
        note.into(),
    ]);
}

fn outage(cfg: &RunConfig) -> dipole_fade::Result<Table> {
    let mut t = Table::new(&["section", "curve", "x", "y", "note"]);
    t.comment("loss_cdf: x = misalignment loss |h|²/η_opt in dB, y = CDF");
    t.comment("outage_pte: x = ε, y = η_ε/η_opt; outage_capacity: x = ε, y = bit/s/Hz at snr_opt");
    t.comment(
        "ber: x = snr_opt, y = BPSK error rate; diversity: y = fitted exponent L over x..note",
    );

    let db_grid: Vec<f64> = (0..=120).map(|i| -60.0 + 0.5 * i as f64).collect();
    for &kr in &cfg.kr_list.0 {
        let e = misalignment_loss_ecdf(kr, cfg.samples, cfg.seed)?;
        let label = format!("kr={}", num(kr));
        for &db in &db_grid {
            row(&mut t, "loss_cdf", &label, db, e.query(db), "");
        }
        if cfg.rayleigh {
            // Rayleigh fading with the same mean normalized PTE.
            let sigma2 =
                e.sorted().iter().map(|l| 10f64.powf(l / 10.0)).sum::<f64>() / e.len() as f64;
            let label = format!("rayleigh kr={}", num(kr));
            for &db in &db_grid {
                row(
                    &mut t,
                    "loss_cdf",
                    &label,
                    db,
                    rayleigh_reference_cdf(10f64.powf(db / 10.0), sigma2),
                    "",
                );
            }
        }
    }

    let region = RegionKind::from(cfg.region);
    let eps_grid = log_grid(1e-3, 0.5, 8);
    let pte_at_kr = Ecdf::new(normalized_pte(cfg, cfg.kr)?)?;
    let kr_label = format!("empirical kr={}", num(cfg.kr));
    for &eps in &eps_grid {
        let spec = OutageSpec::new(eps, region, 1.0, cfg.snr_opt, 1.0);
        if region != RegionKind::Transition {
            let spec = spec?;
            let est = outage_pte(&spec)?;
            let note = if est.accuracy_warning {
                "inaccurate"
            } else {
                ""
            };
            row(
                &mut t,
                "outage_pte",
                &format!("analytic {region}"),
                eps,
                est.value,
                note,
            );
            let c = outage_capacity(&spec, CdfInverse::Analytic)?;
            row(
                &mut t,
                "outage_capacity",
                &format!("analytic {region}"),
                eps,
                c.capacity,
                note,
            );
            row(
                &mut t,
                "outage_capacity",
                &format!("linearized {region}"),
                eps,
                c.linearized_bound,
                note,
            );
        }
        let spec = OutageSpec::new(eps, RegionKind::Transition, 1.0, cfg.snr_opt, 1.0)?;
        row(
            &mut t,
            "outage_pte",
            &kr_label,
            eps,
            outage_pte_empirical(&pte_at_kr, eps),
            "",
        );
        let c = outage_capacity(&spec, CdfInverse::Empirical(&pte_at_kr))?;
        row(&mut t, "outage_capacity", &kr_label, eps, c.capacity, "");
    }

    let snr_grid = log_grid(1e-1, 1e5, 10);
    let mut fits: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for r in [RegionKind::NearField, RegionKind::FarField] {
        let mut exact = Vec::new();
        let mut back = Vec::new();
        for &snr in &snr_grid {
            let e = ber_exact_region(snr, r)?;
            let b = ber_bound(snr, r)?;
            let bs = ber_backscatter(snr, r)?;
            row(&mut t, "ber", &format!("exact {r}"), snr, e, "");
            row(&mut t, "ber", &format!("tight {r}"), snr, b.tight, "");
            row(&mut t, "ber", &format!("bound {r}"), snr, b.bound, "");
            row(&mut t, "ber", &format!("backscatter {r}"), snr, bs, "");
            exact.push((snr, e));
            back.push((snr, bs));
        }
        fits.push((format!("exact {r}"), exact));
        fits.push((format!("backscatter {r}"), back));
    }
    let gains = pte_at_kr.sorted();
    let mut mc = Vec::new();
    for &snr in &snr_grid {
        let (m, se) = empirical_ber(gains, snr)?;
        row(
            &mut t,
            "ber",
            &kr_label,
            snr,
            m,
            &format!("stderr={}", num(se)),
        );
        mc.push((snr, m));
    }
    fits.push((kr_label.clone(), mc));

    let (lo, hi) = DEFAULT_SNR_WINDOW;
    for (label, pts) in &fits {
        let l = diversity_exponent_fit(pts, DEFAULT_SNR_WINDOW)?;
        row(&mut t, "diversity", label, lo, l, &num(hi));
    }
    Ok(t)
}
