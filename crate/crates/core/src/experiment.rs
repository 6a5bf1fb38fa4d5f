//! Instance families, configuration, separation tables and the self-test
//! used by the command-line driver.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use rand::SeedableRng;
use serde::{Serialize, Serializer};

use crate::clause::{Clause, ClauseSet, Var};
use crate::error::{Error, Result};
use crate::hardness::{hd, whd};
use crate::limits::Limits;
use crate::mpsdope::{dope, pure_clause};
use crate::primes::prime_implicates;
use crate::trees::{
    alpha, clause_cv, extremal_tree, random_tree, smu1, tree_stats, tsmu1, LabeledTree,
};
use crate::trigger::{
    binomial, matching_number_seeded, min_equivalent_size, sperner_witness, transversal_number,
    MinEquivMode, TriggerHypergraph,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `D(smu1(exhst(k+1, h)))`.
    ExtremalDoped,
    /// `D(smu1(exhst(1, h)))`.
    HornChain,
    /// Unit clauses `{i}` for `i ≤ n` plus the all-negative clause.
    GN,
    File(PathBuf),
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "extremal_doped" => Family::ExtremalDoped,
            "horn_chain" => Family::HornChain,
            "g_n" => Family::GN,
            _ => match s.strip_prefix("file:") {
                Some(p) => Family::File(PathBuf::from(p)),
                None => return Err(Error::Domain(format!(
                    "unknown family {s:?}; expected extremal_doped, horn_chain, g_n or file:PATH"
                ))),
            },
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::ExtremalDoped => write!(f, "extremal_doped"),
            Family::HornChain => write!(f, "horn_chain"),
            Family::GN => write!(f, "g_n"),
            Family::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// A generated clause-set with its tree and doping map where applicable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instance {
    pub family: String,
    pub clauses: ClauseSet,
    pub tree: Option<String>,
    /// Doping variable of each base clause.
    pub doping: Vec<(Clause, Var)>,
}

fn doped_tree_instance(family: &str, t: &LabeledTree) -> Instance {
    let d = dope(&smu1(t));
    Instance {
        family: family.to_string(),
        clauses: d.doped.clone(),
        tree: Some(t.term()),
        doping: d.doping_map.into_iter().collect(),
    }
}

/// `G_n`: `{1}, …, {n}` and `{-1, …, -n}`.
pub fn g_n(n: usize) -> ClauseSet {
    let n = n as i32;
    let mut f: ClauseSet = (1..=n)
        .map(|i| Clause::from_ints(&[i]).expect("unit"))
        .collect();
    f.insert(Clause::from_ints(&(1..=n).map(|i| -i).collect::<Vec<_>>()).expect("negative clause"));
    f
}

/// `F^k_h = D(smu1(exhst(k+1, h)))`.
pub fn extremal_doped(k: usize, h: usize) -> Result<ClauseSet> {
    Ok(dope(&smu1(&extremal_tree(k + 1, h)?)).doped)
}

/// `F_h = D(smu1(exhst(1, h)))`, a doped Horn chain.
pub fn horn_chain(h: usize) -> Result<ClauseSet> {
    extremal_doped(0, h)
}

pub fn generate(family: &Family, k: usize, h: usize) -> Result<Instance> {
    Ok(match family {
        Family::ExtremalDoped => doped_tree_instance("extremal_doped", &extremal_tree(k + 1, h)?),
        Family::HornChain => doped_tree_instance("horn_chain", &extremal_tree(1, h)?),
        Family::GN => {
            if h == 0 {
                return Err(Error::Domain("g_n needs n ≥ 1 (given as h)".to_string()));
            }
            Instance {
                family: "g_n".to_string(),
                clauses: g_n(h),
                tree: None,
                doping: Vec::new(),
            }
        }
        Family::File(p) => Instance {
            family: family.to_string(),
            clauses: crate::dimacs::parse_dimacs(&std::fs::read_to_string(p)?)?,
            tree: None,
            doping: Vec::new(),
        },
    })
}

/// Settings read from a `key = value` file; `#` starts a comment.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Config {
    pub values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                message: format!("expected key = value, got {line:?}"),
            })?;
            values.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Limits with every recognised cap overridden.
    pub fn limits(&self) -> Result<Limits> {
        let mut l = Limits::default();
        for (k, v) in &self.values {
            let num = || -> Result<u64> {
                v.parse().map_err(|_| {
                    Error::Domain(format!("config value for {k} is not a number: {v:?}"))
                })
            };
            match k.as_str() {
                "sat_vars" => l.sat_vars = num()? as usize,
                "primes" => l.primes = num()? as usize,
                "phd_vars" => l.phd_vars = num()? as usize,
                "subset_clauses" => l.subset_clauses = num()? as usize,
                "exhaustive_primes" => l.exhaustive_primes = num()? as usize,
                "search_nodes" => l.search_nodes = num()?,
                "closure_clauses" => l.closure_clauses = num()? as usize,
                "models" => l.models = num()? as usize,
                "hypergraph_vertices" => l.hypergraph_vertices = num()? as usize,
                _ => {}
            }
        }
        Ok(l)
    }
}

/// A table cell: an exact value, a bound, or not computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Exact(u128),
    AtLeast(u128),
    AtMost(u128),
    Skipped,
}

impl Cell {
    pub fn exact(&self) -> Option<u128> {
        match *self {
            Cell::Exact(v) => Some(v),
            _ => None,
        }
    }

    pub fn lower(&self) -> Option<u128> {
        match *self {
            Cell::Exact(v) | Cell::AtLeast(v) => Some(v),
            _ => None,
        }
    }

    pub fn upper(&self) -> Option<u128> {
        match *self {
            Cell::Exact(v) | Cell::AtMost(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Exact(v) => write!(f, "{v}"),
            Cell::AtLeast(v) => write!(f, ">={v}"),
            Cell::AtMost(v) => write!(f, "<={v}"),
            Cell::Skipped => write!(f, "-"),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationRow {
    pub k: usize,
    pub h: usize,
    pub n: usize,
    pub c: usize,
    pub ell: usize,
    pub primes: Cell,
    pub hd: Cell,
    pub whd: Cell,
    pub tau: Cell,
    pub nu: Cell,
    pub sperner_bound: u128,
    pub min_equiv: Cell,
    /// Size found by the greedy search when the exact one is out of reach.
    pub min_equiv_upper: Cell,
}

pub const COLUMNS: [&str; 13] = [
    "k",
    "h",
    "n",
    "c",
    "ell",
    "primes",
    "hd",
    "whd",
    "tau",
    "nu",
    "sperner_bound",
    "min_equiv",
    "min_equiv_upper",
];

impl SeparationRow {
    pub fn fields(&self) -> Vec<String> {
        vec![
            self.k.to_string(),
            self.h.to_string(),
            self.n.to_string(),
            self.c.to_string(),
            self.ell.to_string(),
            self.primes.to_string(),
            self.hd.to_string(),
            self.whd.to_string(),
            self.tau.to_string(),
            self.nu.to_string(),
            self.sperner_bound.to_string(),
            self.min_equiv.to_string(),
            self.min_equiv_upper.to_string(),
        ]
    }

    /// `sperner_bound ≤ ν ≤ τ ≤ min_equiv`, on whatever is known, and
    /// `hd = k + 1`.
    pub fn check(&self) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::Integrity(format!(
                "row k={} h={}: {what}",
                self.k, self.h
            )))
        };
        if let Some(v) = self.hd.exact() {
            if v != self.k as u128 + 1 {
                return fail(&format!("hd = {v}, expected {}", self.k + 1));
            }
        }
        if let Some(nu) = self.nu.lower() {
            if nu < self.sperner_bound {
                return fail("matching below the Sperner bound");
            }
            if let Some(tau) = self.tau.upper() {
                if nu > tau {
                    return fail("matching number exceeds transversal number");
                }
            }
        }
        if let (Some(tau), Some(m)) = (self.tau.lower(), self.min_equiv.upper()) {
            if tau > m {
                return fail("equivalent clause-set smaller than the transversal number");
            }
        }
        if let (Some(tau), Some(m)) = (self.tau.lower(), self.min_equiv_upper.upper()) {
            if tau > m {
                return fail("heuristic clause-set smaller than the transversal number");
            }
        }
        Ok(())
    }
}

/// What to compute for a separation table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentSpec {
    pub k_range: std::ops::RangeInclusive<usize>,
    pub h_range: std::ops::RangeInclusive<usize>,
    /// Run the greedy search when the exhaustive one is capped.
    pub heuristic: bool,
    pub limits: Limits,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec {
            k_range: 0..=1,
            h_range: 2..=4,
            heuristic: true,
            limits: Limits::default(),
        }
    }
}

fn cell<T>(r: Result<T>, f: impl FnOnce(T) -> Cell) -> Result<Cell> {
    match r {
        Ok(v) => Ok(f(v)),
        Err(Error::CapExceeded { .. }) => Ok(Cell::Skipped),
        Err(e) => Err(e),
    }
}

fn search_cell(exact: bool, lower: usize, upper: usize) -> Cell {
    if exact {
        Cell::Exact(upper as u128)
    } else {
        Cell::AtLeast(lower as u128)
    }
}

/// One row for `F^k_h`.
pub fn separation_row(k: usize, h: usize, spec: &ExperimentSpec) -> Result<SeparationRow> {
    let limits = &spec.limits;
    let t = extremal_tree(k + 1, h)?;
    let d = dope(&smu1(&t));
    let f = &d.doped;
    let m = f.measures();
    let m_leaves = 1 + h - k;
    let sperner_bound = binomial(m_leaves, m_leaves / 2);
    let mut row = SeparationRow {
        k,
        h,
        n: m.n,
        c: m.c,
        ell: m.ell,
        primes: Cell::Skipped,
        hd: Cell::Skipped,
        whd: Cell::Skipped,
        tau: Cell::Skipped,
        nu: Cell::Skipped,
        sperner_bound,
        min_equiv: Cell::Skipped,
        min_equiv_upper: Cell::Skipped,
    };
    // Cheap guard so hopeless rows are not attempted: every non-empty subset
    // of a doped clause-set contributes at most one prime.
    if m.c >= 127 || (1u128 << m.c) - 1 > limits.primes as u128 {
        return Ok(row);
    }
    let primes = match prime_implicates(f, limits) {
        Ok(p) => p.primes,
        Err(Error::CapExceeded { .. }) => return Ok(row),
        Err(e) => return Err(e),
    };
    row.primes = Cell::Exact(primes.len() as u128);
    row.hd = cell(hd(f, limits), |v| Cell::Exact(v.value as u128))?;
    row.whd = cell(whd(f, limits), |v| Cell::Exact(v.value as u128))?;
    if primes.len() > limits.hypergraph_vertices {
        return Ok(row);
    }
    let g = TriggerHypergraph::from_primes(&primes, k)?;
    let tau = transversal_number(&g, limits);
    row.tau = search_cell(tau.exact, tau.lower, tau.upper);
    let seed: Vec<usize> = sperner_witness(&t, k)?
        .iter()
        .map(|v| {
            let c = clause_cv(&t, &d, v)?;
            g.index_of(&c)
                .ok_or_else(|| Error::Integrity(format!("{c} is not a prime implicate")))
        })
        .collect::<Result<_>>()?;
    let nu = matching_number_seeded(&g, &seed, limits);
    row.nu = search_cell(nu.exact, nu.lower, nu.upper);
    match min_equivalent_size(f, k, MinEquivMode::Exhaustive, limits) {
        Ok(me) => row.min_equiv = Cell::Exact(me.size as u128),
        Err(Error::CapExceeded { .. }) => {
            row.min_equiv = Cell::AtLeast(tau.lower as u128);
            if spec.heuristic {
                let me = min_equivalent_size(f, k, MinEquivMode::Heuristic, limits)?;
                row.min_equiv_upper = Cell::AtMost(me.size as u128);
            }
        }
        Err(e) => return Err(e),
    }
    row.check()?;
    Ok(row)
}

/// Rows for every admissible `(k, h)` (those with `h ≥ k + 1`), in `(k, h)`
/// order.
pub fn run_separation(spec: &ExperimentSpec) -> Result<Vec<SeparationRow>> {
    let mut rows = Vec::new();
    for k in spec.k_range.clone() {
        for h in spec.h_range.clone() {
            if h > k {
                rows.push(separation_row(k, h, spec)?);
            }
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Table,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            _ => Err(Error::Domain(format!("unknown format {s:?}"))),
        }
    }
}

fn io(e: impl fmt::Display) -> Error {
    Error::Io(e.to_string())
}

pub fn write_rows(rows: &[SeparationRow], format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(COLUMNS).map_err(io)?;
            for r in rows {
                w.write_record(r.fields()).map_err(io)?;
            }
            w.flush().map_err(io)?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows).map_err(io)?;
            writeln!(out).map_err(io)?;
        }
        Format::Table => {
            let cells: Vec<Vec<String>> = rows.iter().map(SeparationRow::fields).collect();
            let widths: Vec<usize> = (0..COLUMNS.len())
                .map(|i| {
                    cells
                        .iter()
                        .map(|r| r[i].len())
                        .chain([COLUMNS[i].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |vals: Vec<&str>| {
                vals.iter()
                    .zip(&widths)
                    .map(|(v, w)| format!("{v:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(COLUMNS.to_vec())).map_err(io)?;
            for r in &cells {
                writeln!(out, "{}", line(r.iter().map(String::as_str).collect())).map_err(io)?;
            }
        }
    }
    Ok(())
}

/// One named check of [`selftest`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Small known facts, computed end to end, plus a seeded sample of tree
/// round trips.
pub fn selftest(limits: &Limits, seed: u64) -> Result<Vec<SelfCheck>> {
    let mut out = Vec::new();
    let mut check = |name: &'static str, passed: bool, detail: String| {
        out.push(SelfCheck {
            name,
            passed,
            detail,
        })
    };

    let pc = pure_clause(&ClauseSet::from_lits(&[&[1, 2], &[-1, -3]])?);
    check(
        "pure clause",
        pc == Clause::from_ints(&[2, -3])?,
        pc.to_string(),
    );

    let t = LabeledTree::parse_term("(1 (2 (3 . .) (4 . .)) (5 . .))")?;
    let st = tree_stats(&t);
    check(
        "tree statistics",
        st.hts == 2 && st.height == 3,
        format!("{st:?}"),
    );

    let f = ClauseSet::from_lits(&[
        &[2, 3, 4],
        &[-4, 2],
        &[-2, 1, 5],
        &[-5, -2],
        &[-3, 1, 6],
        &[-6, -3],
        &[7, 8, 9],
        &[-9, 7],
        &[-7, -1, 10],
        &[-10, -7],
        &[-8, -1, 11],
        &[-11, -8],
    ])?;
    let (h, w) = (hd(&f, limits)?.value, whd(&f, limits)?.value);
    check(
        "hardness 3, w-hardness 2",
        h == 3 && w == 2,
        format!("hd={h} whd={w}"),
    );

    let trig = ClauseSet::from_lits(&[
        &[1, -3, -4],
        &[2, 3, -4],
        &[2, -3, 4],
        &[-2, 3, 4],
        &[1, 3, 4],
        &[1, 2],
    ])?;
    let p = prime_implicates(&trig, limits)?.primes;
    let g1 = TriggerHypergraph::from_primes(&p, 1)?;
    let c6 = Clause::from_ints(&[1, 2])?;
    let e1 = g1.edge_of(&c6).map(|e| e.to_vec());
    check(
        "trigger edge of {1,2} at level 1",
        p == trig && e1 == g1.index_of(&c6).map(|i| vec![i]),
        format!("{e1:?}"),
    );

    for hh in 2..=4 {
        let f = horn_chain(hh)?;
        let n = prime_implicates(&f, limits)?.len();
        let a = alpha(1, hh)? as u32;
        check(
            "doped chain prime count",
            n as u128 == (1u128 << a) - 1,
            format!("h={hh}: {n}"),
        );
    }

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for i in 0..50 {
        let t = random_tree(1 + i % 16, &mut rng);
        if tsmu1(&smu1(&t)).as_ref() != Ok(&t) {
            bad.push(t.term());
        }
    }
    check(
        "tree round trips",
        bad.is_empty(),
        format!("{} failures {bad:?}", bad.len()),
    );

    let spec = ExperimentSpec {
        limits: limits.clone(),
        ..Default::default()
    };
    let row = separation_row(0, 3, &spec)?;
    check(
        "separation row k=0 h=3",
        row.min_equiv == Cell::Exact(15) && row.hd == Cell::Exact(1) && row.c == 4,
        row.fields().join(","),
    );
    Ok(out)
}
