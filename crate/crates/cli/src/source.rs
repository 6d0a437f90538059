use anyhow::{bail, Result};
use qdesign::zoo::{self, ZooEntry, ZooParams};
use qdesign::LinearCode;

use crate::{SourceArgs, ZooParamArgs};

pub fn zoo_params(p: &ZooParamArgs) -> ZooParams {
    ZooParams { q: p.q, m: p.m, k: p.k, n: p.n }
}

/// The code named by `--zoo` or `--file`, dualized on `--dual`. The zoo
/// entry is returned only when it describes the code actually used.
pub fn load(src: &SourceArgs) -> Result<(LinearCode, Option<ZooEntry>)> {
    let (code, entry) = match (&src.zoo, &src.file) {
        (Some(id), None) => {
            let e = zoo::build(id, &zoo_params(&src.params))?;
            (e.code.clone(), Some(e))
        }
        (None, Some(path)) => (qdesign::io::read_generator_file(path)?, None),
        _ => bail!("give exactly one of --zoo or --file"),
    };
    if src.dual {
        Ok((code.dual(), None))
    } else {
        Ok((code, entry))
    }
}
