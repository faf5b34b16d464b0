//! Named complexes, addressed as `name` or `name:param` strings.

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Facets of the minimal 6-vertex triangulation of the real projective plane.
pub const P26_FACETS: [[usize; 3]; 10] = [
    [1, 2, 3],
    [1, 2, 6],
    [1, 3, 5],
    [1, 4, 5],
    [1, 4, 6],
    [2, 3, 4],
    [2, 4, 5],
    [2, 5, 6],
    [3, 4, 6],
    [3, 5, 6],
];

/// Registry entries: (syntax, description).
pub const NAMES: &[(&str, &str)] = &[
    ("P26", "6-vertex triangulation of RP^2"),
    ("simplex:n", "full n-simplex on n+1 vertices"),
    ("boundary:n", "boundary of the n-simplex (an (n-1)-sphere) on n+1 vertices"),
    ("points:k", "k isolated vertices"),
    ("cycle:n", "n-gon, n >= 3"),
    ("path:n", "path with n vertices"),
    ("empty:m", "the empty complex {∅} on m ghost vertices (m defaults to 0)"),
    ("point-with-ghost", "a point plus one ghost vertex"),
    ("cone:<name>", "cone over a named complex, apex last"),
];

pub fn p26() -> SimplicialComplex {
    SimplicialComplex::from_facets(6, &P26_FACETS).expect("static facet list")
}

pub fn simplex(n: usize) -> SimplicialComplex {
    let all = crate::complex::full_mask(n + 1);
    SimplicialComplex::from_simplices(n + 1, [Simplex::from_mask(all)])
}

pub fn boundary(n: usize) -> SimplicialComplex {
    let all = crate::complex::full_mask(n + 1);
    let facets = (1..=n + 1).map(|v| Simplex::from_mask(all).without(v));
    SimplicialComplex::from_simplices(n + 1, facets.collect::<Vec<_>>())
}

pub fn points(k: usize) -> SimplicialComplex {
    SimplicialComplex::from_simplices(k, (1..=k).map(|v| Simplex::EMPTY.with(v)).collect::<Vec<_>>())
}

pub fn cycle(n: usize) -> SimplicialComplex {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let edges = (1..=n).map(|v| Simplex::EMPTY.with(v).with(v % n + 1));
    SimplicialComplex::from_simplices(n, edges.collect::<Vec<_>>())
}

pub fn path(n: usize) -> SimplicialComplex {
    if n <= 1 {
        return points(n);
    }
    let edges = (1..n).map(|v| Simplex::EMPTY.with(v).with(v + 1));
    SimplicialComplex::from_simplices(n, edges.collect::<Vec<_>>())
}

pub fn point_with_ghost() -> SimplicialComplex {
    SimplicialComplex::from_simplices(2, [Simplex::EMPTY.with(1)])
}

pub fn cone(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    k.cone()
}

/// Resolves a registry name such as `P26`, `boundary:3` or `cone:cycle:5`.
pub fn by_name(name: &str) -> Result<SimplicialComplex> {
    let name = name.trim();
    let unknown = || Error::UnknownName(name.to_string());
    if name.eq_ignore_ascii_case("p26") {
        return Ok(p26());
    }
    if name == "point-with-ghost" {
        return Ok(point_with_ghost());
    }
    if name == "empty" {
        return Ok(SimplicialComplex::empty(0));
    }
    let (head, param) = name.split_once(':').ok_or_else(unknown)?;
    if head == "cone" {
        return cone(&by_name(param)?);
    }
    let n: usize = param.parse().map_err(|_| unknown())?;
    if n + 1 > crate::complex::MAX_VERTICES {
        return Err(Error::TooManyVertices { m: n + 1, max: crate::complex::MAX_VERTICES });
    }
    Ok(match head {
        "simplex" => simplex(n),
        "boundary" if n >= 1 => boundary(n),
        "points" => points(n),
        "cycle" if n >= 3 => cycle(n),
        "path" => path(n),
        "empty" => SimplicialComplex::empty(n),
        _ => return Err(unknown()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(simplex(2).f_vector(), vec![3, 3, 1]);
        assert_eq!(boundary(3).f_vector(), vec![4, 6, 4]);
        assert_eq!(boundary(1), points(2));
        assert_eq!(points(3).f_vector(), vec![3]);
        assert_eq!(cycle(4).f_vector(), vec![4, 4]);
        assert_eq!(path(3).f_vector(), vec![3, 2]);
        assert_eq!(points(0), SimplicialComplex::empty(0));
        assert_eq!(simplex(0), points(1));
    }

    #[test]
    fn names() {
        assert_eq!(by_name("P26").unwrap(), p26());
        assert_eq!(by_name("boundary:3").unwrap(), boundary(3));
        assert_eq!(by_name("cone:cycle:5").unwrap().num_vertices(), 6);
        assert_eq!(by_name("empty:2").unwrap().ghost_vertices(), vec![1, 2]);
        assert!(matches!(by_name("cycle:2"), Err(Error::UnknownName(_))));
        assert!(matches!(by_name("torus"), Err(Error::UnknownName(_))));
        assert!(by_name("simplex:x").is_err());
    }
}
