//! Structural reproductions of the divisor figures as SVG, each with CSV and
//! JSON sidecars holding the plotted data.
//!
//! Every data mark is computed exactly from [`crate::divmatrix`] or
//! [`crate::parabolas`]; only the guide curves of parabolas are sampled.
//! Marks carry `data-*` attributes (`data-n`, `data-k`, ...) so documents can
//! be checked structurally.

mod svg;

use serde::{Deserialize, Serialize};

use crate::divmatrix::{build_divisor_matrix, build_inverse_matrix, IntMatrix};
use crate::error::{Error, Result};
use crate::exactnum::{divisor_count_oracle, DivisorPoint};
use crate::parabolas::ParabolaFamily;
use crate::series::Indicator;
use svg::{num, SvgWriter};

pub use svg::VERSION_COMMENT as SVG_VERSION_COMMENT;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FigureKind {
    MatrixHeatmap,
    RayDiagram,
    /// One panel per `(mu, nu)` family.
    ParabolaFamilies,
    /// All families overlaid on one window of `n`.
    ParabolaWindow,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureSpec {
    pub kind: FigureKind,
    /// Smallest `n` shown (window figures only; 1 elsewhere).
    pub n_min: u64,
    /// Largest `n` shown.
    pub n_max: u64,
    /// Highest ray drawn in the ray diagram; `None` means `n_max`.
    pub j_max: Option<u64>,
    pub mus: Vec<u64>,
    pub nus: Vec<u64>,
    /// First parabola index per family; `None` picks a default per family,
    /// see [`default_i_start`].
    pub i_start: Option<u64>,
    pub i_count: u64,
    pub mark_primes: bool,
    /// Sampling step in `k` for parabola guide curves.
    pub curve_step: f64,
}

impl FigureSpec {
    fn base(kind: FigureKind, n_max: u64) -> Self {
        Self {
            kind,
            n_min: 1,
            n_max,
            j_max: None,
            mus: Vec::new(),
            nus: Vec::new(),
            i_start: None,
            i_count: 0,
            mark_primes: false,
            curve_step: 0.05,
        }
    }

    pub fn matrix_heatmap(n_max: u64) -> Self {
        Self::base(FigureKind::MatrixHeatmap, n_max)
    }

    pub fn ray_diagram(n_max: u64) -> Self {
        Self {
            mark_primes: true,
            ..Self::base(FigureKind::RayDiagram, n_max)
        }
    }

    pub fn parabola_families(n_max: u64, mus: Vec<u64>, nus: Vec<u64>, i_count: u64) -> Self {
        Self {
            mus,
            nus,
            i_count,
            ..Self::base(FigureKind::ParabolaFamilies, n_max)
        }
    }

    pub fn parabola_window(
        n_min: u64,
        n_max: u64,
        mus: Vec<u64>,
        nus: Vec<u64>,
        i_count: u64,
    ) -> Self {
        Self {
            n_min,
            mus,
            nus,
            i_count,
            mark_primes: true,
            ..Self::base(FigureKind::ParabolaWindow, n_max)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidFigure(msg.to_string()));
        if self.n_max == 0 || self.n_min == 0 {
            return bad("n bounds must be positive");
        }
        if self.n_min > self.n_max {
            return bad("n_min exceeds n_max");
        }
        if self.j_max == Some(0) {
            return bad("j_max must be positive");
        }
        if !(self.curve_step > 0.0 && self.curve_step.is_finite()) {
            return bad("curve step must be a positive number");
        }
        match self.kind {
            FigureKind::MatrixHeatmap | FigureKind::RayDiagram => {
                if self.n_min != 1 {
                    return bad("matrix figures always start at n = 1");
                }
            }
            FigureKind::ParabolaFamilies | FigureKind::ParabolaWindow => {
                if self.mus.is_empty() || self.nus.is_empty() {
                    return bad("empty family selection");
                }
                if self.mus.iter().chain(&self.nus).any(|&v| v == 0) {
                    return bad("mu and nu must be positive");
                }
                if self.i_count == 0 {
                    return bad("i count must be at least 1");
                }
            }
        }
        Ok(())
    }

    fn families(&self) -> Result<Vec<ParabolaFamily>> {
        self.mus
            .iter()
            .flat_map(|&mu| self.nus.iter().map(move |&nu| ParabolaFamily::new(mu, nu)))
            .collect()
    }
}

/// Fixed colors and sizes; every field may be overridden.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Style {
    pub positive: String,
    pub negative: String,
    /// Ray colors, cycled by `j mod len`.
    pub rays: Vec<String>,
    /// Family colors, cycled by family position.
    pub families: Vec<String>,
    pub hollow: String,
    pub prime_line: String,
    pub point: String,
    /// Target drawing size in pixels (excluding margins).
    pub canvas: f64,
    pub margin: f64,
}

impl Default for Style {
    fn default() -> Self {
        let s = |v: &str| v.to_string();
        Self {
            positive: s("#1f4fd8"),
            negative: s("#d62728"),
            rays: vec![s("#d62728"), s("#2ca02c"), s("#1f4fd8")],
            families: vec![
                s("#d62728"),
                s("#ff7f0e"),
                s("#2ca02c"),
                s("#17becf"),
                s("#9467bd"),
                s("#8c564b"),
                s("#e377c2"),
                s("#7f7f7f"),
                s("#bcbd22"),
            ],
            hollow: s("#000000"),
            prime_line: s("#999999"),
            point: s("#bbbbbb"),
            canvas: 600.0,
            margin: 40.0,
        }
    }
}

/// Default first index of a family: `mu + nu` when the window starts at
/// `n = 1`, otherwise the first admissible index whose apex
/// `i^2 / (4 mu nu)` reaches `n_min`.
pub fn default_i_start(fam: &ParabolaFamily, n_min: u64) -> u64 {
    let mut i = fam.min_index();
    if n_min <= 1 {
        return i;
    }
    let reach = 4 * fam.mu() * fam.nu() * n_min;
    while i * i < reach {
        i += fam.delta();
    }
    i
}

fn family_indices(spec: &FigureSpec, fam: &ParabolaFamily) -> Vec<u64> {
    let start = spec
        .i_start
        .unwrap_or_else(|| default_i_start(fam, spec.n_min));
    (0..spec.i_count).map(|t| start + t * fam.delta()).collect()
}

fn is_prime(n: u64) -> bool {
    divisor_count_oracle(n) == 2
}

/// Heatmap with one square per nonzero entry: class `mark pos` for +1 and
/// `mark neg` for -1 (other nonzero values are classed by sign too).
pub fn render_matrix_heatmap(m: &IntMatrix, title: &str, style: &Style) -> String {
    let dim = m.dim().max(1) as f64;
    let cell = (style.canvas / dim).clamp(2.0, 24.0);
    let side = cell * dim + 2.0 * style.margin;
    let mut w = SvgWriter::new(side, side, title);
    w.text(
        style.margin,
        style.margin * 0.6,
        title,
        &[("class", "title".into())],
    );
    w.empty(
        "rect",
        &[
            ("class", "frame".into()),
            ("x", num(style.margin)),
            ("y", num(style.margin)),
            ("width", num(cell * dim)),
            ("height", num(cell * dim)),
            ("fill", "none".into()),
            ("stroke", "#cccccc".into()),
        ],
    );
    w.open("g", &[("class", "marks".into())]);
    for n in 1..=m.dim() {
        for k in 1..=m.dim() {
            let v = m.get(n, k);
            if v == 0 {
                continue;
            }
            let (class, fill) = if v > 0 {
                ("mark pos", &style.positive)
            } else {
                ("mark neg", &style.negative)
            };
            w.empty(
                "rect",
                &[
                    ("class", class.into()),
                    ("data-n", n.to_string()),
                    ("data-k", k.to_string()),
                    ("data-value", v.to_string()),
                    ("x", num(style.margin + (k - 1) as f64 * cell)),
                    ("y", num(style.margin + (n - 1) as f64 * cell)),
                    ("width", num(cell)),
                    ("height", num(cell)),
                    ("fill", fill.clone()),
                ],
            );
        }
    }
    w.close("g");
    w.finish()
}

/// Lattice `1 <= k <= n <= N`: a disc per divisor point on rays `j <= j_max`
/// (class `disc ray-{j mod 3}`), a hollow circle elsewhere, and one polyline
/// per ray with at least two points.
pub fn render_ray_diagram(
    n_max: u64,
    j_max: u64,
    mark_primes: bool,
    style: &Style,
) -> Result<String> {
    let rays = crate::divmatrix::ray_decomposition(n_max, j_max)?;
    let dim = n_max as f64;
    let cell = (style.canvas / dim).clamp(4.0, 30.0);
    let side = cell * dim + 2.0 * style.margin;
    let cx = |k: u64| style.margin + (k as f64 - 0.5) * cell;
    let cy = |n: u64| style.margin + (n as f64 - 0.5) * cell;
    let ray_class = |j: u64| (j % style.rays.len() as u64) as usize;

    let mut w = SvgWriter::new(side, side, &format!("Divisor rays n = jk, N = {n_max}"));
    w.open("g", &[("class", "labels".into())]);
    for n in 1..=n_max {
        let prime = mark_primes && is_prime(n);
        let mut attrs = vec![
            (
                "class",
                if prime {
                    "label row prime"
                } else {
                    "label row"
                }
                .to_string(),
            ),
            ("text-anchor", "end".into()),
            ("font-size", num(cell * 0.6)),
        ];
        if prime {
            attrs.push(("font-weight", "bold".into()));
        }
        w.text(
            style.margin - 4.0,
            cy(n) + cell * 0.2,
            &n.to_string(),
            &attrs,
        );
    }
    for k in 1..=n_max {
        w.text(
            cx(k),
            style.margin - 4.0,
            &k.to_string(),
            &[
                ("class", "label col".into()),
                ("text-anchor", "middle".into()),
                ("font-size", num(cell * 0.6)),
            ],
        );
    }
    w.close("g");

    w.open("g", &[("class", "rays".into())]);
    for layer in rays.layers.iter().filter(|l| l.points.len() >= 2) {
        let pts: Vec<String> = layer
            .points
            .iter()
            .map(|p| format!("{},{}", num(cx(p.k)), num(cy(p.n))))
            .collect();
        let c = ray_class(layer.j);
        w.empty(
            "polyline",
            &[
                ("class", format!("ray ray-{c}")),
                ("data-j", layer.j.to_string()),
                ("points", pts.join(" ")),
                ("fill", "none".into()),
                ("stroke", style.rays[c].clone()),
                ("stroke-width", num((cell * 0.08).max(0.5))),
            ],
        );
    }
    w.close("g");

    w.open("g", &[("class", "lattice".into())]);
    for n in 1..=n_max {
        for k in 1..=n {
            let on_ray = n % k == 0 && n / k <= j_max;
            if on_ray {
                continue;
            }
            w.empty(
                "circle",
                &[
                    ("class", "hollow".into()),
                    ("data-n", n.to_string()),
                    ("data-k", k.to_string()),
                    ("cx", num(cx(k))),
                    ("cy", num(cy(n))),
                    ("r", num(cell * 0.12)),
                    ("fill", "none".into()),
                    ("stroke", style.hollow.clone()),
                    ("stroke-width", "0.5".into()),
                ],
            );
        }
    }
    w.close("g");

    w.open("g", &[("class", "discs".into())]);
    for layer in &rays.layers {
        let c = ray_class(layer.j);
        for p in &layer.points {
            w.empty(
                "circle",
                &[
                    ("class", format!("disc ray-{c}")),
                    ("data-n", p.n.to_string()),
                    ("data-k", p.k.to_string()),
                    ("data-j", p.j.to_string()),
                    ("cx", num(cx(p.k))),
                    ("cy", num(cy(p.n))),
                    ("r", num(cell * 0.35)),
                    ("fill", style.rays[c].clone()),
                ],
            );
        }
    }
    w.close("g");
    Ok(w.finish())
}

/// Divisor points with `n` in the window, lying on one displayed parabola.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParabolaData {
    pub mu: u64,
    pub nu: u64,
    pub i: u64,
    pub points: Vec<DivisorPoint>,
}

fn parabola_data(spec: &FigureSpec) -> Result<Vec<ParabolaData>> {
    let mut out = Vec::new();
    for fam in spec.families()? {
        for i in family_indices(spec, &fam) {
            let points = fam
                .points_on_parabola(i, spec.n_max)
                .into_iter()
                .filter(|p| p.n >= spec.n_min)
                .collect();
            out.push(ParabolaData {
                mu: fam.mu(),
                nu: fam.nu(),
                i,
                points,
            });
        }
    }
    Ok(out)
}

fn window_points(n_min: u64, n_max: u64) -> Vec<DivisorPoint> {
    (n_min..=n_max)
        .flat_map(|n| {
            crate::divmatrix::divisor_row(n)
                .into_iter()
                .filter_map(move |k| DivisorPoint::new(n, k))
        })
        .collect()
}

/// Maps data coordinates (n horizontal, k vertical) into a panel.
struct Panel {
    x0: f64,
    y0: f64,
    width: f64,
    height: f64,
    n_lo: f64,
    n_hi: f64,
    k_hi: f64,
}

impl Panel {
    fn x(&self, n: f64) -> f64 {
        let span = (self.n_hi - self.n_lo).max(1.0);
        self.x0 + (n - self.n_lo) / span * self.width
    }

    fn y(&self, k: f64) -> f64 {
        self.y0 + self.height - k / self.k_hi.max(1.0) * self.height
    }

    /// Sampled arch `k in [0, i/mu]`, clipped to the panel's n range, as one
    /// or more runs of points.
    fn curve_runs(&self, fam: &ParabolaFamily, i: u64, step: f64) -> Vec<String> {
        let k_end = (i as f64 / fam.mu() as f64).min(self.k_hi);
        let samples = (k_end / step).ceil() as usize;
        let mut runs = Vec::new();
        let mut current: Vec<String> = Vec::new();
        for s in 0..=samples {
            let k = (s as f64 * step).min(k_end);
            let n = fam.evaluate(i, k);
            if n >= self.n_lo && n <= self.n_hi {
                current.push(format!("{},{}", num(self.x(n)), num(self.y(k))));
            } else if !current.is_empty() {
                runs.push(current.join(" "));
                current.clear();
            }
        }
        if current.len() >= 2 {
            runs.push(current.join(" "));
        }
        runs.retain(|r| r.contains(' '));
        runs
    }
}

fn draw_panel(
    w: &mut SvgWriter,
    spec: &FigureSpec,
    style: &Style,
    panel: &Panel,
    fams: &[(usize, ParabolaFamily)],
    data: &[ParabolaData],
    label: &str,
) {
    w.open("g", &[("class", "panel".into())]);
    w.empty(
        "rect",
        &[
            ("class", "frame".into()),
            ("x", num(panel.x0)),
            ("y", num(panel.y0)),
            ("width", num(panel.width)),
            ("height", num(panel.height)),
            ("fill", "none".into()),
            ("stroke", "#cccccc".into()),
        ],
    );
    w.text(
        panel.x0 + 4.0,
        panel.y0 + 12.0,
        label,
        &[("class", "label".into()), ("font-size", "10".into())],
    );

    if spec.mark_primes {
        for n in (spec.n_min..=spec.n_max).filter(|&n| is_prime(n)) {
            let x = panel.x(n as f64);
            w.empty(
                "line",
                &[
                    ("class", "prime".into()),
                    ("data-n", n.to_string()),
                    ("x1", num(x)),
                    ("y1", num(panel.y0)),
                    ("x2", num(x)),
                    ("y2", num(panel.y0 + panel.height)),
                    ("stroke", style.prime_line.clone()),
                    ("stroke-width", "0.5".into()),
                ],
            );
        }
    }

    for p in window_points(spec.n_min, spec.n_max) {
        w.empty(
            "circle",
            &[
                ("class", "pt".into()),
                ("data-n", p.n.to_string()),
                ("data-k", p.k.to_string()),
                ("cx", num(panel.x(p.n as f64))),
                ("cy", num(panel.y(p.k as f64))),
                ("r", "1.2".into()),
                ("fill", style.point.clone()),
            ],
        );
    }

    for (slot, fam) in fams {
        let color = style.families[slot % style.families.len()].clone();
        for d in data.iter().filter(|d| d.mu == fam.mu() && d.nu == fam.nu()) {
            for run in panel.curve_runs(fam, d.i, spec.curve_step) {
                w.empty(
                    "polyline",
                    &[
                        ("class", "curve".into()),
                        ("data-mu", d.mu.to_string()),
                        ("data-nu", d.nu.to_string()),
                        ("data-i", d.i.to_string()),
                        ("points", run),
                        ("fill", "none".into()),
                        ("stroke", color.clone()),
                        ("stroke-width", "0.6".into()),
                    ],
                );
            }
            for p in &d.points {
                w.empty(
                    "circle",
                    &[
                        ("class", "disc".into()),
                        ("data-mu", d.mu.to_string()),
                        ("data-nu", d.nu.to_string()),
                        ("data-i", d.i.to_string()),
                        ("data-n", p.n.to_string()),
                        ("data-k", p.k.to_string()),
                        ("cx", num(panel.x(p.n as f64))),
                        ("cy", num(panel.y(p.k as f64))),
                        ("r", "2.2".into()),
                        ("fill", color.clone()),
                    ],
                );
            }
        }
    }
    w.close("g");
}

/// Parabola figures: a grid of one panel per family, or every family
/// overlaid on one window.
///
/// Layers: prime lines (`line.prime`), every divisor point in range
/// (`circle.pt`), sampled guide curves (`polyline.curve`) and the exact
/// divisor points on the displayed parabolas (`circle.disc`).
pub fn render_parabolas(spec: &FigureSpec, style: &Style) -> Result<String> {
    spec.validate()?;
    let fams: Vec<(usize, ParabolaFamily)> = spec.families()?.into_iter().enumerate().collect();
    let data = parabola_data(spec)?;
    let (n_lo, n_hi) = (spec.n_min as f64, spec.n_max as f64);
    match spec.kind {
        FigureKind::ParabolaFamilies => {
            let cols = spec.nus.len();
            let rows = spec.mus.len();
            let size = (style.canvas / cols.max(rows) as f64).max(120.0);
            let gap = 10.0;
            let width = cols as f64 * (size + gap) + 2.0 * style.margin;
            let height = rows as f64 * (size + gap) + 2.0 * style.margin;
            let mut w = SvgWriter::new(width, height, "Parabola families");
            for (slot, fam) in &fams {
                let (r, c) = (slot / cols, slot % cols);
                let panel = Panel {
                    x0: style.margin + c as f64 * (size + gap),
                    y0: style.margin + r as f64 * (size + gap),
                    width: size,
                    height: size,
                    n_lo,
                    n_hi,
                    k_hi: n_hi,
                };
                let label = format!("mu={} nu={} delta={}", fam.mu(), fam.nu(), fam.delta());
                draw_panel(&mut w, spec, style, &panel, &[(*slot, *fam)], &data, &label);
            }
            Ok(w.finish())
        }
        FigureKind::ParabolaWindow => {
            let size = style.canvas;
            let mut w = SvgWriter::new(
                size + 2.0 * style.margin,
                size + 2.0 * style.margin,
                "Parabola window",
            );
            let panel = Panel {
                x0: style.margin,
                y0: style.margin,
                width: size,
                height: size,
                n_lo,
                n_hi,
                k_hi: n_hi,
            };
            let label = format!("{} <= n <= {}", spec.n_min, spec.n_max);
            draw_panel(&mut w, spec, style, &panel, &fams, &data, &label);
            Ok(w.finish())
        }
        _ => Err(Error::InvalidFigure("not a parabola figure".into())),
    }
}

/// Data behind a figure, written as the JSON sidecar.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureData {
    pub spec: FigureSpec,
    /// Divisor points drawn (heatmap support, ray discs, or window points).
    pub points: Vec<DivisorPoint>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<MatrixEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parabolas: Vec<ParabolaData>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatrixEntry {
    pub n: u64,
    pub k: u64,
    pub value: i64,
}

impl FigureData {
    /// Points as CSV with header `n,k,j`.
    pub fn points_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        for p in &self.points {
            writer
                .serialize(p)
                .map_err(|e| Error::Export(e.to_string()))?;
        }
        if self.points.is_empty() {
            writer
                .write_record(["n", "k", "j"])
                .map_err(|e| Error::Export(e.to_string()))?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| Error::Export(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Export(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Export(e.to_string()))
    }
}

/// A rendered document plus its data; `name` distinguishes the panels of
/// multi-document figures (`"divisor"`/`"inverse"` for heatmaps).
#[derive(Debug, Clone)]
pub struct Figure {
    pub name: String,
    pub svg: String,
    pub data: FigureData,
}

fn entries_of(m: &IntMatrix) -> Vec<MatrixEntry> {
    (1..=m.dim())
        .flat_map(|n| (1..=m.dim()).map(move |k| (n, k)))
        .filter(|&(n, k)| m.get(n, k) != 0)
        .map(|(n, k)| MatrixEntry {
            n: n as u64,
            k: k as u64,
            value: m.get(n, k),
        })
        .collect()
}

fn primes_in(spec: &FigureSpec) -> Vec<u64> {
    if !spec.mark_primes {
        return Vec::new();
    }
    (spec.n_min..=spec.n_max).filter(|&n| is_prime(n)).collect()
}

/// Renders any figure kind; heatmaps yield the divisor/inverse pair.
pub fn render_figure(spec: &FigureSpec, style: &Style) -> Result<Vec<Figure>> {
    spec.validate()?;
    let empty = |spec: &FigureSpec| FigureData {
        spec: spec.clone(),
        points: Vec::new(),
        entries: Vec::new(),
        parabolas: Vec::new(),
        primes: primes_in(spec),
    };
    match spec.kind {
        FigureKind::MatrixHeatmap => {
            let dim = spec.n_max as usize;
            let a = build_divisor_matrix(dim, Indicator::Oracle)?;
            let b = build_inverse_matrix(dim)?;
            let panel = |name: &str, title: &str, m: &IntMatrix| {
                let entries = entries_of(m);
                let points = entries
                    .iter()
                    .filter_map(|e| DivisorPoint::new(e.n, e.k))
                    .collect();
                Figure {
                    name: name.to_string(),
                    svg: render_matrix_heatmap(m, title, style),
                    data: FigureData {
                        points,
                        entries,
                        ..empty(spec)
                    },
                }
            };
            Ok(vec![
                panel("divisor", &format!("Divisor matrix, N = {dim}"), a.matrix()),
                panel("inverse", &format!("Inverse matrix, N = {dim}"), b.matrix()),
            ])
        }
        FigureKind::RayDiagram => {
            let j_max = spec.j_max.unwrap_or(spec.n_max);
            let rays = crate::divmatrix::ray_decomposition(spec.n_max, j_max)?;
            let mut points: Vec<DivisorPoint> =
                rays.layers.into_iter().flat_map(|l| l.points).collect();
            points.sort();
            Ok(vec![Figure {
                name: "rays".into(),
                svg: render_ray_diagram(spec.n_max, j_max, spec.mark_primes, style)?,
                data: FigureData {
                    points,
                    ..empty(spec)
                },
            }])
        }
        FigureKind::ParabolaFamilies | FigureKind::ParabolaWindow => Ok(vec![Figure {
            name: "parabolas".into(),
            svg: render_parabolas(spec, style)?,
            data: FigureData {
                points: window_points(spec.n_min, spec.n_max),
                parabolas: parabola_data(spec)?,
                ..empty(spec)
            },
        }]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::divisor_summatory_oracle;

    fn count_class(doc: &roxmltree::Document, class: &str) -> usize {
        doc.descendants()
            .filter(|n| {
                n.attribute("class").is_some_and(|c| {
                    c.split(' ').collect::<Vec<_>>() == class.split(' ').collect::<Vec<_>>()
                })
            })
            .count()
    }

    fn attr(node: &roxmltree::Node, name: &str) -> u64 {
        node.attribute(name).unwrap().parse().unwrap()
    }

    #[test]
    fn heatmap_marks_match_support() {
        let style = Style::default();
        let a = build_divisor_matrix(50, Indicator::Oracle).unwrap();
        let svg = render_matrix_heatmap(a.matrix(), "t", &style);
        let doc = roxmltree::Document::parse(&svg).unwrap();
        assert_eq!(
            count_class(&doc, "mark pos") as u64,
            divisor_summatory_oracle(50)
        );
        assert_eq!(count_class(&doc, "mark neg"), 0);

        let one = build_divisor_matrix(1, Indicator::Oracle).unwrap();
        let doc_svg = render_matrix_heatmap(one.matrix(), "t", &style);
        let doc = roxmltree::Document::parse(&doc_svg).unwrap();
        assert_eq!(count_class(&doc, "mark pos"), 1);
    }

    #[test]
    fn inverse_heatmap_has_both_signs() {
        let b = build_inverse_matrix(10).unwrap();
        let svg = render_matrix_heatmap(b.matrix(), "t", &Style::default());
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let pos = count_class(&doc, "mark pos");
        let neg = count_class(&doc, "mark neg");
        assert!(pos > 0 && neg > 0);
        assert_eq!(pos + neg, b.matrix().nonzero_count());
    }

    #[test]
    fn ray_diagram_structure() {
        let svg = render_ray_diagram(10, 10, true, &Style::default()).unwrap();
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let discs: Vec<_> = doc
            .descendants()
            .filter(|n| n.attribute("class").is_some_and(|c| c.starts_with("disc ")))
            .collect();
        assert_eq!(discs.len(), 27);
        for d in &discs {
            let (n, k, j) = (attr(d, "data-n"), attr(d, "data-k"), attr(d, "data-j"));
            assert!(k <= n && n == j * k);
            if j == 1 {
                assert_eq!(n, k);
            }
            assert!(d
                .attribute("class")
                .unwrap()
                .ends_with(&format!("ray-{}", j % 3)));
        }
        // 55 lattice points with k <= n
        assert_eq!(count_class(&doc, "hollow"), 55 - 27);
        let bold: Vec<u64> = doc
            .descendants()
            .filter(|n| n.attribute("class") == Some("label row prime"))
            .map(|n| n.text().unwrap().parse().unwrap())
            .collect();
        assert_eq!(bold, vec![2, 3, 5, 7]);
    }

    #[test]
    fn truncated_rays_leave_hollow_points() {
        let svg = render_ray_diagram(10, 2, false, &Style::default()).unwrap();
        let doc = roxmltree::Document::parse(&svg).unwrap();
        // rays j = 1 and j = 2 only: 10 + 5 discs
        let discs = doc
            .descendants()
            .filter(|n| n.attribute("class").is_some_and(|c| c.starts_with("disc ")))
            .count();
        assert_eq!(discs, 15);
        assert_eq!(count_class(&doc, "hollow"), 55 - 15);
    }

    #[test]
    fn parabola_window_marks() {
        let spec = FigureSpec::parabola_window(1, 99, vec![1], vec![1, 2, 3, 4], 50);
        let figs = render_figure(&spec, &Style::default()).unwrap();
        let fig = &figs[0];
        let doc = roxmltree::Document::parse(&fig.svg).unwrap();
        let expected_discs: usize = fig.data.parabolas.iter().map(|d| d.points.len()).sum();
        assert_eq!(count_class(&doc, "disc"), expected_discs);
        assert_eq!(count_class(&doc, "pt") as u64, divisor_summatory_oracle(99));
        for d in doc
            .descendants()
            .filter(|n| n.attribute("class") == Some("disc"))
        {
            let fam = ParabolaFamily::new(attr(&d, "data-mu"), attr(&d, "data-nu")).unwrap();
            assert!(fam.passes_through(attr(&d, "data-i"), attr(&d, "data-n"), attr(&d, "data-k")));
        }
        let primes: Vec<u64> = doc
            .descendants()
            .filter(|n| n.attribute("class") == Some("prime"))
            .map(|n| attr(&n, "data-n"))
            .collect();
        let expected: Vec<u64> = (1..=99).filter(|&n| divisor_count_oracle(n) == 2).collect();
        assert_eq!(primes, expected);
        assert_eq!(fig.data.primes, expected);
        assert_eq!(fig.data.parabolas.len(), 4 * 50);
    }

    #[test]
    fn window_default_start_reaches_window() {
        let fam = ParabolaFamily::new(1, 1).unwrap();
        assert_eq!(default_i_start(&fam, 1), 2);
        assert_eq!(default_i_start(&fam, 720), 54);
        let fam = ParabolaFamily::new(2, 2).unwrap();
        let i = default_i_start(&fam, 100);
        assert_eq!(i % 2, 0);
        assert!(i * i >= 4 * 4 * 100 && (i - 2) * (i - 2) < 4 * 4 * 100);
    }

    #[test]
    fn family_grid_has_one_panel_per_family() {
        let spec = FigureSpec::parabola_families(40, vec![1, 2, 3], vec![1, 2, 3], 6);
        let svg = render_parabolas(&spec, &Style::default()).unwrap();
        let doc = roxmltree::Document::parse(&svg).unwrap();
        assert_eq!(count_class(&doc, "panel"), 9);
        assert!(svg.contains("mu=2 nu=2 delta=2"));
    }

    #[test]
    fn invalid_specs_rejected() {
        let style = Style::default();
        let spec = FigureSpec::parabola_window(1, 50, vec![], vec![1], 5);
        assert!(matches!(
            render_parabolas(&spec, &style),
            Err(Error::InvalidFigure(_))
        ));
        let spec = FigureSpec::parabola_window(1, 50, vec![1], vec![1], 0);
        assert!(render_figure(&spec, &style).is_err());
        let spec = FigureSpec::parabola_window(60, 50, vec![1], vec![1], 1);
        assert!(render_figure(&spec, &style).is_err());
        let mut spec = FigureSpec::ray_diagram(10);
        spec.j_max = Some(0);
        assert!(render_figure(&spec, &style).is_err());
    }

    #[test]
    fn sidecars() {
        let figs = render_figure(&FigureSpec::ray_diagram(3), &Style::default()).unwrap();
        let csv = figs[0].data.points_csv().unwrap();
        assert_eq!(csv, "n,k,j\n1,1,1\n2,1,2\n2,2,1\n3,1,3\n3,3,1\n");
        let json: serde_json::Value =
            serde_json::from_str(&figs[0].data.to_json().unwrap()).unwrap();
        assert_eq!(json["spec"]["kind"], "ray_diagram");
        assert_eq!(json["points"].as_array().unwrap().len(), 5);
    }
}
