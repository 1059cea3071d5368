//! Export formats: module vectors as JSON, tables as CSV or JSON arrays. Rows are
//! always ordered by (length, word) so identical inputs give identical bytes.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::affine::{ClosedForms, ScanRow};
use crate::canonical::{split_pm, CanonicalBasis};
use crate::classic::ClassicKl;
use crate::cosets::{classify_rank2, coset_involutions, DoubleCoset};
use crate::coxeter::{CoxeterGroup, Element};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::module::{InvolutionModule, ModuleVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub w: String,
    pub coeff: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorJson {
    pub terms: Vec<TermJson>,
}

fn sorted_support(g: &CoxeterGroup, m: &ModuleVector) -> Vec<Element> {
    let mut s = m.support();
    g.sort_shortlex(&mut s);
    s
}

pub fn vector_to_json(g: &CoxeterGroup, m: &ModuleVector) -> VectorJson {
    VectorJson {
        terms: sorted_support(g, m)
            .into_iter()
            .map(|w| TermJson { w: g.format_word(w), coeff: m.get(w) })
            .collect(),
    }
}

pub fn vector_from_json(g: &CoxeterGroup, v: &VectorJson) -> Result<ModuleVector> {
    let mut m = ModuleVector::zero();
    for t in &v.terms {
        m.add_term(g.parse_word(&t.w)?, &t.coeff);
    }
    Ok(m)
}

/// One row per basis element, for CSV export of a vector.
#[derive(Clone, Debug, Serialize)]
pub struct VectorRow {
    pub w: String,
    pub l_w: usize,
    pub coeff: String,
}

pub fn vector_rows(g: &CoxeterGroup, m: &ModuleVector) -> Vec<VectorRow> {
    sorted_support(g, m)
        .into_iter()
        .map(|w| VectorRow { w: g.format_word(w), l_w: g.length(w), coeff: m.get(w).to_string() })
        .collect()
}

pub fn write_vector(g: &CoxeterGroup, m: &ModuleVector, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &vector_to_json(g, m))?;
            writeln!(out)?;
            Ok(())
        }
        Format::Csv => write_rows(&vector_rows(g, m), format, out),
    }
}

/// CSV with a header row, or a pretty JSON array.
pub fn write_rows<T: Serialize>(rows: &[T], format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementRow {
    pub w: String,
    pub l_w: usize,
    pub twisted: bool,
}

pub fn element_rows(module: &InvolutionModule, max_len: usize, twisted_only: bool) -> Result<Vec<ElementRow>> {
    let g = module.group();
    let elems: Vec<Element> = if twisted_only {
        module.enumerate_twisted(max_len)?.to_vec()
    } else {
        g.enumerate_up_to(max_len)?
    };
    Ok(elems
        .into_iter()
        .map(|w| ElementRow { w: g.format_word(w), l_w: g.length(w), twisted: module.is_twisted(w) })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct PpmRow {
    pub y: String,
    pub w: String,
    pub l_y: usize,
    pub l_w: usize,
    #[serde(rename = "Ppm")]
    pub ppm: String,
    #[serde(rename = "P")]
    pub p: String,
    #[serde(rename = "Pplus")]
    pub pplus: String,
    #[serde(rename = "Pminus")]
    pub pminus: String,
}

/// `P±`, `P` and the split for every twisted pair `y <= w`, `l(w) <= max_len`.
pub fn ppm_rows(cb: &CanonicalBasis, kl: &ClassicKl, max_len: usize) -> Result<Vec<PpmRow>> {
    let g = cb.group();
    let mut rows = Vec::new();
    for &w in cb.module().enumerate_twisted(max_len)?.iter() {
        let table = cb.pi_table(w)?;
        let mut ys: Vec<Element> = table.iter().map(|(y, _, _)| y).collect();
        g.sort_shortlex(&mut ys);
        for y in ys {
            let ppm = table.ppm(y);
            let p = kl.kl_poly(y, w)?;
            let (plus, minus) = split_pm(&ppm, &p)?;
            rows.push(PpmRow {
                y: g.format_word(y),
                w: g.format_word(w),
                l_y: g.length(y),
                l_w: g.length(w),
                ppm: ppm.to_string(),
                p: p.to_string(),
                pplus: plus.to_string(),
                pminus: minus.to_string(),
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct KlRow {
    pub y: String,
    pub w: String,
    pub l_y: usize,
    pub l_w: usize,
    #[serde(rename = "P")]
    pub p: String,
}

/// Classical `P_{y,w}` for all `y <= w` in `W`, `l(w) <= max_len`.
pub fn kl_rows(kl: &ClassicKl, max_len: usize) -> Result<Vec<KlRow>> {
    let g = kl.group();
    let mut rows = Vec::new();
    for w in g.enumerate_up_to(max_len)? {
        let table = kl.kl_table(w)?;
        let mut ys: Vec<Element> = table.keys().copied().collect();
        g.sort_shortlex(&mut ys);
        for y in ys {
            rows.push(KlRow {
                y: g.format_word(y),
                w: g.format_word(w),
                l_y: g.length(y),
                l_w: g.length(w),
                p: table[&y].to_string(),
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct RpolyRow {
    pub y: String,
    pub w: String,
    pub l_y: usize,
    pub l_w: usize,
    pub r: String,
}

pub fn rpoly_rows(module: &InvolutionModule, max_len: usize) -> Result<Vec<RpolyRow>> {
    let g = module.group();
    let mut rows = Vec::new();
    for &w in module.enumerate_twisted(max_len)?.iter() {
        for y in module.interval_below(w)? {
            rows.push(RpolyRow {
                y: g.format_word(y),
                w: g.format_word(w),
                l_y: g.length(y),
                l_w: g.length(w),
                r: module.r_poly(y, w).to_string(),
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetReport {
    #[serde(rename = "K")]
    pub k: Vec<String>,
    pub b: String,
    pub d: String,
    #[serde(rename = "J")]
    pub j: Vec<String>,
    pub case_tag: Option<String>,
    pub involutions: Vec<String>,
}

pub fn coset_report(module: &InvolutionModule, omega: &DoubleCoset) -> Result<CosetReport> {
    let g = module.group();
    let labels = |v: &[usize]| v.iter().map(|&s| g.system().labels()[s].clone()).collect();
    let case_tag = if omega.k.len() == 2 && omega.stable {
        Some(classify_rank2(module, omega)?.case.to_string())
    } else {
        None
    };
    let involutions = if omega.stable {
        coset_involutions(module, omega)?.into_iter().map(|w| g.format_word(w)).collect()
    } else {
        Vec::new()
    };
    Ok(CosetReport {
        k: labels(&omega.k),
        b: g.format_word(omega.b),
        d: g.format_word(omega.d),
        j: labels(&omega.j),
        case_tag,
        involutions,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanCsvRow {
    pub dprime_word: String,
    pub d_word: String,
    pub ppm: String,
    pub kl_neg_u: String,
    pub equal: bool,
    #[serde(rename = "N_u1")]
    pub n_u1: i64,
}

pub fn scan_rows(g: &CoxeterGroup, rows: &[ScanRow]) -> Vec<ScanCsvRow> {
    rows.iter()
        .map(|r| ScanCsvRow {
            dprime_word: g.format_word(r.lower.d),
            d_word: g.format_word(r.upper.d),
            ppm: r.ppm.to_string(),
            kl_neg_u: r.kl_neg_u.to_string(),
            equal: r.equal,
            n_u1: r.n_u1,
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormReport {
    pub exponents: Vec<u32>,
    pub length_gap: usize,
    pub ppm: String,
    pub kl: String,
    pub closed_form_ok: bool,
    pub length_ok: bool,
    pub kl_ok: bool,
    pub ppm_ok: bool,
    pub computed: VectorJson,
    pub closed_form: VectorJson,
}

pub fn closed_form_report(g: &CoxeterGroup, c: &ClosedForms) -> ClosedFormReport {
    ClosedFormReport {
        exponents: c.exponents.clone(),
        length_gap: c.length_gap,
        ppm: c.ppm.to_string(),
        kl: c.kl.to_string(),
        closed_form_ok: c.closed_form_ok,
        length_ok: c.length_ok,
        kl_ok: c.kl_ok,
        ppm_ok: c.ppm_ok,
        computed: vector_to_json(g, &c.computed),
        closed_form: vector_to_json(g, &c.closed_form),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems;

    #[test]
    fn vector_json_round_trip() {
        let m = InvolutionModule::new(systems::b(2).group());
        let g = m.group();
        let v = m.bar_basis(g.parse_word("s.t.s").unwrap());
        let j = vector_to_json(g, &v);
        let text = serde_json::to_string(&j).unwrap();
        let back: VectorJson = serde_json::from_str(&text).unwrap();
        assert_eq!(vector_from_json(g, &back).unwrap(), *v);
        assert_eq!(j.terms[0].w, "");
    }

    #[test]
    fn a2_ppm_table_is_all_one() {
        let m = InvolutionModule::new(systems::a(2).group());
        let cb = CanonicalBasis::new(m.clone());
        let kl = ClassicKl::new(m.group().clone());
        let rows = ppm_rows(&cb, &kl, 3).unwrap();
        assert!(rows.iter().all(|r| r.ppm == "1" && r.p == "1"));
        let mut buf = Vec::new();
        write_rows(&rows, Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("y,w,l_y,l_w,Ppm,P,Pplus,Pminus\n"));
    }
}
