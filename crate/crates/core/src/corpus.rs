//! Built-in desk-scale corpus of triangle-free graphs.

use crate::error::Result;
use crate::graph::{generate, GeneratorSpec, Graph};

pub const DEFAULT_SEED: u64 = 2024;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: Graph,
}

/// Cycles C4–C12, Petersen, Grötzsch, Kneser(7,3) and two triangle-free
/// process graphs (n = 20, 30) drawn with `seed`.
pub fn builtin(seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let mut push = |name: String, spec: GeneratorSpec| -> Result<()> {
        out.push(CorpusEntry {
            name,
            graph: generate(&spec)?,
        });
        Ok(())
    };
    for n in 4..=12 {
        push(format!("C{n}"), GeneratorSpec::Cycle(n))?;
    }
    push("petersen".into(), GeneratorSpec::Petersen)?;
    let c5 = generate(&GeneratorSpec::Cycle(5))?;
    push("grotzsch".into(), GeneratorSpec::Mycielski(Box::new(c5)))?;
    push("kneser-7-3".into(), GeneratorSpec::kneser(7, 3))?;
    for n in [20, 30] {
        push(
            format!("tfp{n}-s{seed}"),
            GeneratorSpec::TriangleFreeProcess { n, seed },
        )?;
    }
    Ok(out)
}

/// Entries whose name contains `filter`.
pub fn filtered(seed: u64, filter: Option<&str>) -> Result<Vec<CorpusEntry>> {
    Ok(builtin(seed)?
        .into_iter()
        .filter(|e| filter.is_none_or(|f| e.name.contains(f)))
        .collect())
}
