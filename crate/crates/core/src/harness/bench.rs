//! Timing of decompose on sampled elements, one CSV row per configuration.

use std::io::{Read, Write};
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::elimination::decompose;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::forms::{Family, GroupKind};
use crate::harness::sample::{default_length, sample_word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub kind: String,
    pub l: usize,
    pub field: String,
    pub trials: usize,
    pub mean_ns: u64,
    pub median_ns: u64,
    /// mean generator applications per decomposition
    pub erec_ops: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BenchPlan {
    /// GF(7¹⁰), d = 20, 30, …, 60
    VaryL,
    /// d = 20, GF(7ⁿ) for n = 2, …, 12
    VaryField,
    /// one family over one field at the given ranks, e.g. `sweep:sp:gf(101):8,16,32`
    Sweep { family: Family, field: FieldSpec, ls: Vec<usize> },
}

impl FromStr for BenchPlan {
    type Err = Error;

    fn from_str(s: &str) -> Result<BenchPlan> {
        match s {
            "vary-l" => return Ok(BenchPlan::VaryL),
            "vary-field" => return Ok(BenchPlan::VaryField),
            _ => {}
        }
        let bad = || Error::Parse(format!("unknown plan '{s}' (vary-l, vary-field, sweep:<group>:<field>:<l,...>)"));
        let mut parts = s.splitn(4, ':');
        if parts.next() != Some("sweep") {
            return Err(bad());
        }
        let (Some(family), Some(field), Some(ls)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        let ls = ls
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Ok(BenchPlan::Sweep { family: family.parse()?, field: field.parse()?, ls })
    }
}

impl BenchPlan {
    pub fn configs(&self) -> Result<Vec<(GroupKind, FieldSpec)>> {
        let both = [Family::Sp, Family::OEven];
        let mut out = Vec::new();
        match self {
            BenchPlan::VaryL => {
                let spec = FieldSpec::Extension { p: 7, n: 10, modulus: None };
                for fam in both {
                    for d in (20..=60).step_by(10) {
                        out.push((GroupKind::new(fam, d / 2)?, spec.clone()));
                    }
                }
            }
            BenchPlan::VaryField => {
                for fam in both {
                    for n in 2..=12 {
                        out.push((GroupKind::new(fam, 10)?, FieldSpec::Extension { p: 7, n, modulus: None }));
                    }
                }
            }
            BenchPlan::Sweep { family, field, ls } => {
                for &l in ls {
                    out.push((GroupKind::new(*family, l)?, field.clone()));
                }
            }
        }
        Ok(out)
    }
}

fn median(sorted: &[u64]) -> u64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2
    }
}

/// Times `trials` decompositions per configuration. Configuration k draws its
/// samples from seed + k; only the decompose call is inside the timer.
pub fn run_bench(plan: &BenchPlan, trials: usize, seed: u64, length: Option<usize>) -> Result<Vec<BenchRecord>> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let mut out = Vec::new();
    for (k, (kind, spec)) in plan.configs()?.into_iter().enumerate() {
        let field = Field::new(spec)?;
        kind.check_field(&field)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
        let len = length.unwrap_or_else(|| default_length(kind));
        let mut times = Vec::with_capacity(trials);
        let mut ops = 0u64;
        for _ in 0..trials {
            let g = sample_word(kind, &field, len, &mut rng)?.evaluate(kind, &field)?;
            let start = Instant::now();
            let dec = decompose(kind, &g)?;
            times.push(start.elapsed().as_nanos() as u64);
            ops += dec.ops as u64;
        }
        let mean = times.iter().sum::<u64>() / trials as u64;
        times.sort_unstable();
        out.push(BenchRecord {
            kind: kind.family().name().to_string(),
            l: kind.l(),
            field: field.spec().to_string(),
            trials,
            mean_ns: mean,
            median_ns: median(&times),
            erec_ops: ops / trials as u64,
        });
    }
    Ok(out)
}

pub fn write_csv<W: Write>(records: &[BenchRecord], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for r in records {
        wr.serialize(r).map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    }
    wr.flush().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> Result<Vec<BenchRecord>> {
    csv::Reader::from_reader(r)
        .deserialize()
        .map(|rec| rec.map_err(|e| Error::Parse(format!("csv: {e}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plans_parse_and_expand() {
        assert_eq!(BenchPlan::VaryL.configs().unwrap().len(), 10);
        assert_eq!(BenchPlan::VaryField.configs().unwrap().len(), 22);
        let p: BenchPlan = "sweep:o-odd:gf(101):2,4".parse().unwrap();
        let c = p.configs().unwrap();
        assert_eq!(c[1].0, GroupKind::OOdd(4));
        assert!("sweep:sp:gf(101)".parse::<BenchPlan>().is_err());
        assert!("fast".parse::<BenchPlan>().is_err());
    }

    #[test]
    fn smoke_run_and_csv_round_trip() {
        let plan: BenchPlan = "sweep:sp:gf(101):2,3".parse().unwrap();
        let recs = run_bench(&plan, 1, 7, None).unwrap();
        assert_eq!(recs.len(), 2);
        assert!(recs.iter().all(|r| r.trials == 1 && r.erec_ops > 0));
        let mut buf = Vec::new();
        write_csv(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("kind,l,field,trials,mean_ns,median_ns,erec_ops\n"));
        assert_eq!(read_csv(&buf[..]).unwrap(), recs);
    }
}
