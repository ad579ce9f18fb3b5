use std::fmt;
use std::str::FromStr;

use super::perm::{all_permutations, group_on, permutation_group, Permutation};
use super::Group;
use crate::error::{Error, Result};
use crate::Config;

/// Parsed group description.
///
/// Grammar: `C<n>`, `D<n>` (dihedral of order `n`, `n` even and at least 4),
/// `S<n>` (`n <= 5`), `Q8`, `perm:<cycles>;<cycles>;...` with 1-based points,
/// and `prod(<spec>,<spec>,...)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Quaternion,
    /// Generators, each a list of cycles of 1-based points.
    Perm(Vec<Vec<Vec<usize>>>),
    Product(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let text = text.trim();
        if let Some(body) = text.strip_prefix("prod(") {
            let inner = body.strip_suffix(')').ok_or_else(|| Error::Parse(format!("unbalanced `{text}`")))?;
            let parts = split_top_level(inner)?;
            if parts.len() < 2 {
                return Err(Error::Parse("prod(...) needs at least two factors".into()));
            }
            return Ok(GroupSpec::Product(parts.into_iter().map(GroupSpec::parse).collect::<Result<_>>()?));
        }
        if let Some(body) = text.strip_prefix("perm:") {
            let gens = body.split(';').map(parse_cycle_list).collect::<Result<Vec<_>>>()?;
            return Ok(GroupSpec::Perm(gens));
        }
        if text == "Q8" {
            return Ok(GroupSpec::Quaternion);
        }
        let mut chars = text.chars();
        let kind = chars.next().ok_or_else(|| Error::Parse("empty group spec".into()))?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("unknown group spec `{text}`")));
        }
        let n: usize = digits.parse().map_err(|_| Error::Parse(format!("bad number in `{text}`")))?;
        match kind {
            'C' if n >= 1 => Ok(GroupSpec::Cyclic(n)),
            'D' if n >= 4 && n.is_multiple_of(2) => Ok(GroupSpec::Dihedral(n)),
            'S' if (1..=5).contains(&n) => Ok(GroupSpec::Symmetric(n)),
            'C' | 'D' | 'S' => Err(Error::Parse(format!("parameter out of range in `{text}`"))),
            _ => Err(Error::Parse(format!("unknown group spec `{text}`"))),
        }
    }

    pub fn build(&self, config: &Config) -> Result<Group> {
        let label = self.to_string();
        match self {
            GroupSpec::Cyclic(n) => {
                let n = *n;
                check_order(n, config)?;
                let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
                Group::from_table(label, n, table, 0, config)
            }
            GroupSpec::Dihedral(n) => {
                let n = *n;
                check_order(n, config)?;
                let m = n / 2;
                // r^i s^j has index j * m + i
                let mut table = Vec::with_capacity(n * n);
                for x in 0..n {
                    let (a, b) = (x % m, x / m);
                    for y in 0..n {
                        let (c, d) = (y % m, y / m);
                        let rot = if b == 0 { (a + c) % m } else { (a + m - c) % m };
                        table.push(((b + d) % 2) * m + rot);
                    }
                }
                Group::from_table(label, n, table, 0, config)
            }
            GroupSpec::Symmetric(n) => {
                let order = (1..=*n).product::<usize>();
                check_order(order, config)?;
                group_on(label, &all_permutations(*n), config)
            }
            GroupSpec::Quaternion => {
                check_order(8, config)?;
                Group::from_table(label, 8, quaternion_table(), 0, config)
            }
            GroupSpec::Perm(gens) => {
                let degree = gens.iter().flatten().flatten().copied().max().unwrap_or(1);
                let perms =
                    gens.iter().map(|cycles| cycles_to_permutation(cycles, degree)).collect::<Result<Vec<_>>>()?;
                permutation_group(label, &perms, config).map(|(g, _)| g)
            }
            GroupSpec::Product(parts) => {
                let factors = parts.iter().map(|p| p.build(config)).collect::<Result<Vec<_>>>()?;
                Group::product_of(&factors, config)
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse(s)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Quaternion => f.write_str("Q8"),
            GroupSpec::Perm(gens) => {
                f.write_str("perm:")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    if g.is_empty() {
                        f.write_str("()")?;
                    }
                    for c in g {
                        let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                        write!(f, "({})", pts.join(","))?;
                    }
                }
                Ok(())
            }
            GroupSpec::Product(parts) => {
                let inner: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "prod({})", inner.join(","))
            }
        }
    }
}

fn check_order(order: usize, config: &Config) -> Result<()> {
    if order > config.max_order {
        return Err(Error::OrderBound { order, max: config.max_order });
    }
    Ok(())
}

fn split_top_level(text: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced `{text}`")));
                }
            }
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced `{text}`")));
    }
    parts.push(text[start..].trim());
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::Parse(format!("empty factor in `{text}`")));
    }
    Ok(parts)
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(Error::Parse("empty generator".into()));
    }
    let mut cycles = Vec::new();
    let mut rest = text.as_str();
    while !rest.is_empty() {
        let (inner, tail) = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| Error::Parse(format!("malformed cycles `{text}`")))?;
        rest = tail;
        if inner.is_empty() {
            continue;
        }
        let points = inner
            .split(',')
            .map(|p| match p.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v),
                _ => Err(Error::Parse(format!("bad point `{p}` in `{text}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        cycles.push(points);
    }
    Ok(cycles)
}

fn cycles_to_permutation(cycles: &[Vec<usize>], degree: usize) -> Result<Permutation> {
    if cycles.is_empty() {
        return Ok(Permutation::identity(degree));
    }
    let text: String = cycles
        .iter()
        .map(|c| {
            let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            format!("({})", pts.join(","))
        })
        .collect();
    Permutation::parse_cycles(&text, degree)
}

fn quaternion_table() -> Vec<usize> {
    // units 1, i, j, k as 0..4; unit_mul[a][b] = (sign, unit)
    const UNIT_MUL: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    // element 2 * unit + sign
    let mut table = Vec::with_capacity(64);
    for x in 0..8 {
        for y in 0..8 {
            let (s, u) = UNIT_MUL[x / 2][y / 2];
            let sign = (x % 2 + y % 2 + s) % 2;
            table.push(2 * u + sign);
        }
    }
    table
}
