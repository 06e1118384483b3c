//! Closed-form bound formulas, reduction rules, seeded exact values, and
//! fixed-point propagation producing annotated bound tables for `Delta(j,k)`,
//! the smallest dimension in which any `j` masses admit an equipartition by
//! `k` affine hyperplanes.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Ramos' lower bound `max(k, ceil((2^k - 1) j / k))`, derived from masses
/// on the moment curve: any hyperplane meets the curve in at most `d` points.
pub fn ramos_lower(j: u64, k: u32) -> u64 {
    assert!(j >= 1 && k >= 1, "ramos_lower requires j, k >= 1");
    assert!(k <= 62, "ramos_lower: k too large");
    let factors = (1u128 << k) - 1;
    let ceil = (factors * j as u128 + k as u128 - 1) / k as u128;
    (ceil as u64).max(k as u64)
}

/// The conjectured exact value `ceil((2^k - 1) j / k)`. Rendered only in a
/// clearly labeled column; never merged into bounds.
pub fn ramos_conjecture(j: u64, k: u32) -> u64 {
    assert!(j >= 1 && k >= 1, "ramos_conjecture requires j, k >= 1");
    let factors = (1u128 << k) - 1;
    ((factors * j as u128 + k as u128 - 1) / k as u128) as u64
}

/// The Mani-Levitska–Vrećica–Živaljević upper bound:
/// for `j = 2^t + r` with `0 <= r <= 2^t - 1`, `Delta(j,k) <= 2^{t+k-1} + r`.
pub fn mani_upper(j: u64, k: u32) -> u64 {
    assert!(j >= 1 && k >= 1, "mani_upper requires j, k >= 1");
    let t = 63 - j.leading_zeros();
    let r = j - (1u64 << t);
    assert!(t + k - 1 <= 62, "mani_upper: bound overflows");
    (1u64 << (t + k - 1)) + r
}

/// Where a bound came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    RamosLower,
    ManiUpper,
    /// Merged from an F2 index certificate (opt-in, see [`BoundsTable::merge_index_certificate`]).
    IndexCertificate,
    /// `Delta(j,k) <= Delta(2j, k-1)`.
    ReductionHalve,
    /// `Delta(j,k) <= Delta(j+1, k) - 1` (Matschke).
    ReductionMatschke,
    /// A proven exact value seeded by name.
    SeededExact(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::RamosLower => write!(f, "RamosLower"),
            Provenance::ManiUpper => write!(f, "ManiUpper"),
            Provenance::IndexCertificate => write!(f, "IndexCertificate"),
            Provenance::ReductionHalve => write!(f, "ReductionHalve"),
            Provenance::ReductionMatschke => write!(f, "ReductionMatschke"),
            Provenance::SeededExact(name) => write!(f, "SeededExact({name})"),
        }
    }
}

/// Bounds for one `(j,k)` cell with a provenance tag per contributing rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub j: u64,
    pub k: u32,
    pub lower: u64,
    pub upper: u64,
    pub exact: Option<u64>,
    pub provenance: Vec<Provenance>,
}

/// Proven exact values seeded into tables, each tagged with a short name.
///
/// Within `1 <= j <= jmax`, `1 <= k <= kmax` this emits:
/// - `Delta(2,2) = 3` (Hadwiger),
/// - `Delta(1,3) = 3` (Hadwiger, via the halving reduction),
/// - `Delta(2^{t+1} - 1, 2) = 3*2^t - 1` (lower and upper bounds coincide),
/// - `Delta(2^t + 1, 2) = 3*2^{t-1} + 2` for `t >= 2` (degree-parity
///   certificate on the moment curve, cf. [`crate::moment::decide_ramos_two`]).
pub fn seeded_exact_values(jmax: u64, kmax: u32) -> Vec<(u64, u32, u64, String)> {
    let mut seeds = Vec::new();
    if jmax >= 2 && kmax >= 2 {
        seeds.push((2, 2, 3, "Hadwiger".to_string()));
    }
    if kmax >= 3 {
        seeds.push((1, 3, 3, "Hadwiger reduction".to_string()));
    }
    if kmax >= 2 {
        let mut t = 0u32;
        loop {
            let j = (1u64 << (t + 1)) - 1;
            if j > jmax {
                break;
            }
            seeds.push((j, 2, 3 * (1 << t) - 1, "bounds coincide".to_string()));
            t += 1;
        }
        let mut t = 2u32;
        loop {
            let j = (1u64 << t) + 1;
            if j > jmax {
                break;
            }
            seeds.push((
                j,
                2,
                3 * (1 << (t - 1)) + 2,
                format!("degree certificate t={t}"),
            ));
            t += 1;
        }
    }
    seeds.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    seeds
}

/// A grid of bound records over `1 <= j <= jmax`, `1 <= k <= kmax`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsTable {
    pub jmax: u64,
    pub kmax: u32,
    cells: Vec<BoundsRecord>,
}

impl BoundsTable {
    /// Raw formula grid: Ramos lower and Mani upper everywhere, no seeds.
    pub fn from_formulas(jmax: u64, kmax: u32) -> Self {
        assert!(jmax >= 1 && kmax >= 1);
        let mut cells = Vec::with_capacity((jmax * kmax as u64) as usize);
        for j in 1..=jmax {
            for k in 1..=kmax {
                cells.push(BoundsRecord {
                    j,
                    k,
                    lower: ramos_lower(j, k),
                    upper: mani_upper(j, k),
                    exact: None,
                    provenance: vec![Provenance::RamosLower, Provenance::ManiUpper],
                });
            }
        }
        BoundsTable { jmax, kmax, cells }
    }

    /// Formula grid with seeds applied and reductions propagated to a fixed
    /// point. This is the default table the CLI renders.
    pub fn build(jmax: u64, kmax: u32) -> Result<Self> {
        let mut table = Self::from_formulas(jmax, kmax);
        for (j, k, value, name) in seeded_exact_values(jmax, kmax) {
            table.apply_upper(j, k, value, Provenance::SeededExact(name));
        }
        propagate(&table)
    }

    pub fn record(&self, j: u64, k: u32) -> Option<&BoundsRecord> {
        if j < 1 || j > self.jmax || k < 1 || k > self.kmax {
            return None;
        }
        let idx = (j - 1) as usize * self.kmax as usize + (k - 1) as usize;
        Some(&self.cells[idx])
    }

    fn record_mut(&mut self, j: u64, k: u32) -> &mut BoundsRecord {
        let idx = (j - 1) as usize * self.kmax as usize + (k - 1) as usize;
        &mut self.cells[idx]
    }

    pub fn records(&self) -> impl Iterator<Item = &BoundsRecord> {
        self.cells.iter()
    }

    fn apply_upper(&mut self, j: u64, k: u32, value: u64, tag: Provenance) -> bool {
        if j < 1 || j > self.jmax || k < 1 || k > self.kmax {
            return false;
        }
        let rec = self.record_mut(j, k);
        if value < rec.upper {
            rec.upper = value;
            if !rec.provenance.contains(&tag) {
                rec.provenance.push(tag);
            }
            true
        } else {
            false
        }
    }

    /// Merge an F2 index certificate `Delta(j,k) <= d_star` as an upper
    /// bound. Disabled by default so tables reproduce the published numbers;
    /// call [`propagate`] afterwards to re-close the table.
    pub fn merge_index_certificate(&mut self, j: u64, k: u32, d_star: u64) -> bool {
        self.apply_upper(j, k, d_star, Provenance::IndexCertificate)
    }
}

/// Iterate the two reduction rules to a fixed point:
/// `upper(j,k) <- min(upper(j,k), upper(2j,k-1), upper(j+1,k) - 1)`
/// wherever the referenced cells are in range. Lower bounds are never
/// propagated. Marks `exact` where lower and upper meet.
pub fn propagate(table: &BoundsTable) -> Result<BoundsTable> {
    let mut out = table.clone();
    loop {
        let mut changed = false;
        for k in 1..=out.kmax {
            for j in (1..=out.jmax).rev() {
                let mut updates = Vec::new();
                if k >= 2 {
                    if let Some(src) = out.record(2 * j, k - 1) {
                        updates.push((src.upper, Provenance::ReductionHalve));
                    }
                }
                if let Some(src) = out.record(j + 1, k) {
                    updates.push((src.upper - 1, Provenance::ReductionMatschke));
                }
                for (value, tag) in updates {
                    changed |= out.apply_upper(j, k, value, tag);
                }
            }
        }
        if !changed {
            break;
        }
    }
    for rec in &mut out.cells {
        if rec.lower > rec.upper {
            return Err(Error::CellInconsistent {
                j: rec.j as u32,
                k: rec.k,
                lower: rec.lower as u32,
                upper: rec.upper as u32,
            });
        }
        rec.exact = (rec.lower == rec.upper).then_some(rec.lower);
    }
    Ok(out)
}

/// Single-cell query backed by an ambient grid large enough for the
/// reduction chains that feed `(j,k)`. Grid truncation can only weaken upper
/// bounds, never falsify them.
pub fn ambient_record(j: u64, k: u32) -> Result<BoundsRecord> {
    if j < 1 || k < 1 {
        return Err(Error::InvalidInput("bounds require j, k >= 1".into()));
    }
    if j > 1024 || k > 8 {
        return Err(Error::InvalidInput(
            "bounds queries support j <= 1024, k <= 8".into(),
        ));
    }
    let jmax = ((j + 2) << (k - 1)).clamp(18, 4096);
    let table = BoundsTable::build(jmax, k)?;
    Ok(table.record(j, k).expect("cell inside ambient grid").clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RenderFormat {
    Markdown,
    Csv,
    Json,
    Plain,
}

/// Cell text mimicking the published corner layout: Ramos lower on the
/// left, Mani upper on the right, the exact value or improved upper bound
/// in the center (`·` when neither is known).
fn cell_text(rec: &BoundsRecord) -> String {
    let formula_upper = mani_upper(rec.j, rec.k);
    let center = match rec.exact {
        Some(e) => format!("{e}"),
        None if rec.upper < formula_upper => format!("≤{}", rec.upper),
        None => "·".to_string(),
    };
    format!("{}≤ {} ≤{}", rec.lower, center, formula_upper)
}

/// Deterministic serialization of a bounds table.
pub fn render_table(table: &BoundsTable, format: RenderFormat, conjecture: bool) -> String {
    match format {
        RenderFormat::Markdown | RenderFormat::Plain => {
            let mut s = String::new();
            let sep = if format == RenderFormat::Markdown { "|" } else { " " };
            if format == RenderFormat::Markdown {
                s.push_str("| j\\k |");
                for k in 1..=table.kmax {
                    s.push_str(&format!(" {k} |"));
                }
                s.push('\n');
                s.push_str("|---|");
                for _ in 1..=table.kmax {
                    s.push_str("---|");
                }
                s.push('\n');
            } else {
                s.push_str("j\\k");
                for k in 1..=table.kmax {
                    s.push_str(&format!("  {k}"));
                }
                s.push('\n');
            }
            for j in 1..=table.jmax {
                if format == RenderFormat::Markdown {
                    s.push_str(&format!("| {j} |"));
                } else {
                    s.push_str(&format!("{j}"));
                }
                for k in 1..=table.kmax {
                    let rec = table.record(j, k).expect("in range");
                    s.push_str(&format!(" {} {sep}", cell_text(rec)));
                }
                s.push('\n');
            }
            if conjecture {
                s.push('\n');
                s.push_str("Conjectured values ⌈(2^k−1)j/k⌉ (Ramos conjecture, unproven):\n");
                for j in 1..=table.jmax {
                    let row: Vec<String> = (1..=table.kmax)
                        .map(|k| format!("{}", ramos_conjecture(j, k)))
                        .collect();
                    s.push_str(&format!("j={j}: {}\n", row.join(" ")));
                }
            }
            s
        }
        RenderFormat::Csv => {
            let mut s = String::from("j,k,lower,upper,exact,provenance");
            if conjecture {
                s.push_str(",conjectured");
            }
            s.push('\n');
            for rec in table.records() {
                let exact = rec.exact.map(|e| e.to_string()).unwrap_or_default();
                let prov = rec
                    .provenance
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(";");
                s.push_str(&format!(
                    "{},{},{},{},{},{}",
                    rec.j, rec.k, rec.lower, rec.upper, exact, prov
                ));
                if conjecture {
                    s.push_str(&format!(",{}", ramos_conjecture(rec.j, rec.k)));
                }
                s.push('\n');
            }
            s
        }
        RenderFormat::Json => {
            #[derive(Serialize)]
            struct Cell<'a> {
                #[serde(flatten)]
                rec: &'a BoundsRecord,
                #[serde(skip_serializing_if = "Option::is_none")]
                conjectured: Option<u64>,
            }
            #[derive(Serialize)]
            struct Doc<'a> {
                jmax: u64,
                kmax: u32,
                cells: Vec<Cell<'a>>,
            }
            let doc = Doc {
                jmax: table.jmax,
                kmax: table.kmax,
                cells: table
                    .records()
                    .map(|rec| Cell {
                        rec,
                        conjectured: conjecture.then(|| ramos_conjecture(rec.j, rec.k)),
                    })
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
    }
}

/// An upper bound claimed in the literature whose published proof has an
/// essential gap. Kept in a separate ledger, never merged into bound tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisputedClaim {
    pub subject: String,
    pub lower: String,
    pub claimed_upper: String,
    pub source: String,
}

/// The catalogue of claimed-but-unproven upper bounds (`t >= 1` where the
/// rows are parametric).
pub fn disputed_claims() -> Vec<DisputedClaim> {
    let row = |subject: &str, lower: &str, upper: &str, source: &str| DisputedClaim {
        subject: subject.into(),
        lower: lower.into(),
        claimed_upper: upper.into(),
        source: source.into(),
    };
    vec![
        row(
            "Delta(5,2)",
            "8",
            "8",
            "Mani-Levitska–Vrećica–Živaljević 2006, Thm 4",
        ),
        row(
            "Delta(2^t,2)",
            "(3/2)·2^t",
            "(3/2)·2^t",
            "Ramos 1996, Thm 6.3; Mani-Levitska–Vrećica–Živaljević 2006, Prop 25",
        ),
        row(
            "Delta(2^t+1,2)",
            "(3/2)·2^t+2",
            "(3/2)·2^t+2",
            "Živaljević 2011, Thm 2.1",
        ),
        row("Delta(2^t,3)", "(7/3)·2^t", "(5/2)·2^t", "Ramos 1996, Thm 6.3"),
        row("Delta(1,4)", "4", "5", "Ramos 1996, Thm 6.3"),
        row("Delta(2^t,4)", "(15/4)·2^t", "(9/2)·2^t", "Ramos 1996, Thm 6.3"),
        row("Delta(1,5)", "7", "9", "Ramos 1996, Thm 6.3"),
        row("Delta(2^t,5)", "(31/5)·2^t", "(15/2)·2^t", "Ramos 1996, Thm 6.3"),
    ]
}

/// Render the disputed-claims ledger.
pub fn render_disputed(format: RenderFormat) -> String {
    let claims = disputed_claims();
    match format {
        RenderFormat::Json => {
            let mut s = serde_json::to_string_pretty(&claims).expect("serializable");
            s.push('\n');
            s
        }
        RenderFormat::Csv => {
            let mut s = String::from("subject,lower,claimed_upper,source\n");
            for c in claims {
                s.push_str(&format!(
                    "{},{},{},\"{}\"\n",
                    c.subject, c.lower, c.claimed_upper, c.source
                ));
            }
            s
        }
        RenderFormat::Markdown | RenderFormat::Plain => {
            let mut s = String::from(
                "Upper bounds claimed in the literature with incomplete proofs \
                 (not merged into bounds):\n",
            );
            for c in claims {
                s.push_str(&format!(
                    "{} <= {} <= {} (claimed)  [{}]\n",
                    c.lower, c.subject, c.claimed_upper, c.source
                ));
            }
            s
        }
    }
}
