//! Loading tensors, blockings and distributions from files or short presets.

use std::path::Path;

use apolarium::exact::parse_rat;
use apolarium::sweet::{cw_distribution, degree_blocking, dual_numbers_tensor, standard_cw_blocking, weight_blocking};
use apolarium::sweet::{BlockDistribution, Blocking, SweetFile};
use apolarium::tensor3::{cw, group_tensor, AbelianGroup, Tensor3};
use apolarium::{Error, Result};

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Format(format!("cannot read {path}: {e}")))
}

fn usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Format(format!("expected integers, got `{s}`"))))
        .collect()
}

fn i64_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Format(format!("expected integers, got `{s}`"))))
        .collect()
}

/// A tensor file path, or one of `cw:N`, `group:M[,M..]`, `dual`.
pub fn tensor(arg: &str) -> Result<Tensor3> {
    if Path::new(arg).exists() {
        return Tensor3::from_json(&read(arg)?);
    }
    match arg.split_once(':') {
        Some(("cw", n)) => cw(usize_list(n)?[0]),
        Some(("group", orders)) => Ok(group_tensor(&AbelianGroup::new(usize_list(orders)?)?).without_labels()),
        None if arg == "dual" => Ok(dual_numbers_tensor()),
        _ => Err(Error::Format(format!("`{arg}` is neither a file nor a tensor preset"))),
    }
}

/// A blocking file path, or one of `cw:N`, `weight:M[,M..]:G`, `degree:D[,D..]`.
pub fn blocking(arg: &str) -> Result<(Blocking, Option<BlockDistribution>)> {
    if Path::new(arg).exists() {
        let f = SweetFile::from_json(&read(arg)?)?;
        return Ok((f.blocking()?, f.distribution()?));
    }
    let parts: Vec<&str> = arg.split(':').collect();
    let b = match parts.as_slice() {
        ["cw", n] => standard_cw_blocking(usize_list(n)?[0])?,
        ["weight", orders, g] => weight_blocking(&AbelianGroup::new(usize_list(orders)?)?, usize_list(g)?[0])?,
        ["degree", ds] => degree_blocking(&i64_list(ds)?),
        _ => return Err(Error::Format(format!("`{arg}` is neither a file nor a blocking preset"))),
    };
    Ok((b, None))
}

/// A distribution file path, `cw:P:Q`, or `uniform` over the given triples
/// written as `a,b,c;a,b,c;…` with scalar labels.
pub fn distribution(arg: &str) -> Result<BlockDistribution> {
    if Path::new(arg).exists() {
        return SweetFile::from_json(&read(arg)?)?
            .distribution()?
            .ok_or_else(|| Error::Format(format!("{arg} has no support/probs")));
    }
    let parts: Vec<&str> = arg.splitn(3, ':').collect();
    match parts.as_slice() {
        ["cw", p, q] => cw_distribution(&parse_rat(p)?, &parse_rat(q)?),
        ["uniform", triples] => {
            let support = triples
                .split(';')
                .map(|t| {
                    let v = i64_list(t)?;
                    if v.len() != 3 {
                        return Err(Error::Format(format!("`{t}` is not a label triple")));
                    }
                    Ok([vec![v[0]], vec![v[1]], vec![v[2]]])
                })
                .collect::<Result<Vec<_>>>()?;
            BlockDistribution::uniform(support)
        }
        _ => Err(Error::Format(format!("`{arg}` is neither a file nor a distribution preset"))),
    }
}

/// Blocking plus distribution, the latter from `dist` or else from the
/// blocking file.
pub fn blocking_and_distribution(b: &str, dist: Option<&str>) -> Result<(Blocking, BlockDistribution)> {
    let (blk, inline) = blocking(b)?;
    let p = match dist {
        Some(d) => distribution(d)?,
        None => inline.ok_or_else(|| Error::Format("no distribution given".into()))?,
    };
    Ok((blk, p))
}

/// Per-axis weight vectors as JSON, e.g. `[[1],[1],[1]]`.
pub fn weights(s: &str) -> Result<[Vec<i64>; 3]> {
    serde_json::from_str(s).map_err(|e| Error::Format(format!("weights: {e}")))
}
