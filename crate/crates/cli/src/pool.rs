//! `--pool-a` / `--pool-b` argument syntax.
//!
//! * `ORDER:FAMILY[+FAMILY...]`, e.g. `8:sylvester+paley1`
//! * `file:PATH[,PATH...]`, matrices read from disk (order taken from the files)

use std::path::PathBuf;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PoolArg {
    Generated {
        order: usize,
        sylvester: bool,
        paley1: bool,
    },
    Files(Vec<PathBuf>),
}

pub fn parse_pool_arg(s: &str) -> Result<PoolArg, String> {
    if let Some(paths) = s.strip_prefix("file:") {
        let paths: Vec<PathBuf> = paths
            .split(',')
            .filter(|p| !p.is_empty())
            .map(PathBuf::from)
            .collect();
        if paths.is_empty() {
            return Err("file pool needs at least one path".into());
        }
        return Ok(PoolArg::Files(paths));
    }
    let (order, families) = s
        .split_once(':')
        .ok_or_else(|| format!("expected ORDER:FAMILIES or file:PATHS, got {s:?}"))?;
    let order = order
        .parse()
        .map_err(|_| format!("pool order {order:?} is not a number"))?;
    let (mut sylvester, mut paley1) = (false, false);
    for f in families.split('+') {
        match f {
            "sylvester" => sylvester = true,
            "paley1" => paley1 = true,
            other => {
                return Err(format!(
                    "unknown family {other:?} (expected sylvester or paley1)"
                ))
            }
        }
    }
    Ok(PoolArg::Generated {
        order,
        sylvester,
        paley1,
    })
}
