use super::{Group, Perm};
use crate::error::{Error, Result};

/// Builds a named group.
///
/// Accepted names: `cyclic(n)`, `dihedral(n)` (order `2n`, `n ≥ 3`),
/// `symmetric(n)`, `alternating(n)` (`n ≥ 3`), `quaternion8`, `wc3`.
///
/// Generator names: cyclic `x`; dihedral `x` (rotation) and `y` (reflection),
/// so `dihedral(4)` is `⟨x, y : x⁴, y², (xy)²⟩` with `x = (1,2,3,4)`,
/// `y = (1,3)`; symmetric and alternating `x`, `y`; quaternion8 `i`, `j`
/// in the regular representation; wc3 the signed permutations of three
/// coordinates with sign changes `x`, `y`, `z`, the coordinate 3-cycle `a`
/// and the coordinate transposition `b`.
pub fn catalog(name: &str) -> Result<Group> {
    let key: String = name
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_lowercase();
    let unknown = || Error::UnknownCatalog(name.to_string());
    let (family, arg) = match key.find('(') {
        Some(open) => {
            let close = key.strip_suffix(')').ok_or_else(unknown)?;
            let n: usize = close[open + 1..].parse().map_err(|_| unknown())?;
            (&key[..open], Some(n))
        }
        None => (key.as_str(), None),
    };
    let named: Vec<(&str, Perm)>;
    let degree;
    match (family, arg) {
        ("cyclic", Some(n)) if n >= 1 => {
            degree = n;
            named = vec![("x", shift(n))];
        }
        ("dihedral", Some(n)) if n >= 3 => {
            degree = n;
            let refl = (0..n).map(|i| (n + 2 - i) % n).collect();
            named = vec![("x", shift(n)), ("y", Perm::from_images(refl)?)];
        }
        ("symmetric", Some(n)) if n >= 1 => {
            degree = n;
            named = if n == 1 {
                vec![]
            } else {
                vec![("x", shift(n)), ("y", Perm::from_cycles(n, &[vec![1, 2]])?)]
            };
        }
        ("alternating", Some(n)) if n >= 3 => {
            degree = n;
            let long = if n % 2 == 1 {
                shift(n)
            } else {
                Perm::from_cycles(n, &[(2..=n).collect()])?
            };
            named = vec![("x", Perm::from_cycles(n, &[vec![1, 2, 3]])?), ("y", long)];
        }
        ("quaternion8", None) | ("q8", None) => {
            degree = 8;
            named = vec![("i", quaternion_right(1)), ("j", quaternion_right(2))];
        }
        ("wc3", None) => {
            degree = 6;
            let c = |s: &str| Perm::parse_cycles(s, 6);
            named = vec![
                ("x", c("(1,2)")?),
                ("y", c("(3,4)")?),
                ("z", c("(5,6)")?),
                ("a", c("(1,3,5)(2,4,6)")?),
                ("b", c("(1,3)(2,4)")?),
            ];
        }
        _ => return Err(unknown()),
    }
    Group::from_named(
        Some(key.clone()),
        degree,
        named.into_iter().map(|(s, p)| (s.to_string(), p)).collect(),
    )
}

fn shift(n: usize) -> Perm {
    Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap()
}

/// Right multiplication by the unit `u` (1 = i, 2 = j, 3 = k) on the eight
/// quaternions `±1, ±i, ±j, ±k`, point `2*unit + sign`.
fn quaternion_right(u: usize) -> Perm {
    // unit product table: (unit, sign) for a*b, units 0=1,1=i,2=j,3=k
    const T: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let images = (0..8)
        .map(|p| {
            let (a, neg) = (p / 2, p % 2 == 1);
            let (c, s) = T[a][u];
            2 * c + usize::from(neg ^ s)
        })
        .collect();
    Perm::from_images(images).unwrap()
}
