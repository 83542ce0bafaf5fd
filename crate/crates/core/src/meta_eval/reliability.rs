use serde::Serialize;

use super::{members, Warnings, ALL_DATA};
use crate::corpus::{Corpus, Dimension};
use crate::scalar::Scalar;
use crate::stats::{icc_all, IccResult};

/// Inter-rater agreement for one scope. `dimension: None` stacks the three
/// dimensions as separate items.
#[derive(Debug, Clone, Serialize)]
pub struct Reliability<T> {
    pub scope: String,
    pub dimension: Option<Dimension>,
    pub items: usize,
    pub models: Vec<IccResult<T>>,
}

fn rows<T: Scalar>(corpus: &Corpus, idx: &[usize], dims: &[Dimension]) -> Vec<[T; 3]> {
    dims.iter()
        .flat_map(|&d| {
            idx.iter()
                .map(move |&i| corpus.instances[i].rating(d).scores().map(|s| T::of(f64::from(s))))
        })
        .collect()
}

/// ICC of the three raters under all three models, over the whole corpus
/// and per dataset, per dimension and with dimensions stacked.
pub fn reliability<T: Scalar>(corpus: &Corpus, warnings: &mut Warnings) -> Vec<Reliability<T>> {
    let mut scopes: Vec<Option<&str>> = vec![None];
    scopes.extend(corpus.datasets().into_iter().map(Some));
    let mut out = Vec::new();
    for scope in scopes {
        let idx = members(corpus, scope);
        let label = scope.unwrap_or(ALL_DATA).to_string();
        let mut dims: Vec<Option<Dimension>> = vec![None];
        dims.extend(Dimension::ALL.into_iter().map(Some));
        for dim in dims {
            let m = match dim {
                Some(d) => rows::<T>(corpus, &idx, &[d]),
                None => rows::<T>(corpus, &idx, &Dimension::ALL),
            };
            match icc_all(&m) {
                Ok(models) => out.push(Reliability {
                    scope: label.clone(),
                    dimension: dim,
                    items: m.len(),
                    models: models.to_vec(),
                }),
                Err(e) => warnings.push(format!("{label}: ICC unavailable: {e}")),
            }
        }
    }
    out
}
