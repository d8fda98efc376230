//! Built-in body corpus used by the verification suites and the CLI.
//!
//! Spans dimensions 1..8, isotropic and anisotropic boxes, flat and fat
//! balls, a mixed product, and a degenerate embedding. Names follow the CLI
//! body grammar, so each entry round-trips through the parser.

use crate::bodies::BodySpec;

/// The standard corpus as `(name, body)` pairs. Names are unique and valid
/// CLI body expressions.
pub fn corpus() -> Vec<(String, BodySpec)> {
    let mut out: Vec<(String, BodySpec)> = Vec::new();
    out.push(("point:3".into(), BodySpec::Point { dim: 3 }));
    for n in 1..=8 {
        out.push((format!("cube:{n}"), BodySpec::cube(n)));
    }
    for s in [0.1, 0.5, 1.0, 2.0, 10.0] {
        out.push((format!("cube:6,{s}"), BodySpec::scaled(s, BodySpec::cube(6))));
    }
    out.push((
        "box:1,2,3".into(),
        BodySpec::Box { lengths: vec![1.0, 2.0, 3.0] },
    ));
    out.push((
        "box:0.5,0.5,4,4".into(),
        BodySpec::Box { lengths: vec![0.5, 0.5, 4.0, 4.0] },
    ));
    for dim in 2..=6 {
        for r in [0.5, 1.0, 2.0] {
            out.push((format!("ball:{dim},{r}"), BodySpec::Ball { dim, radius: r }));
        }
    }
    out.push((
        "product(box:1,2;ball:2,1)".into(),
        BodySpec::product(
            BodySpec::Box { lengths: vec![1.0, 2.0] },
            BodySpec::Ball { dim: 2, radius: 1.0 },
        ),
    ));
    out.push((
        "embed(cube:3;2)".into(),
        BodySpec::embedded(BodySpec::cube(3), 2),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact;

    #[test]
    fn corpus_shape() {
        let c = corpus();
        assert_eq!(c.len(), 33);
        let mut names: Vec<&str> = c.iter().map(|(n, _)| n.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 33);
    }

    #[test]
    fn every_body_is_valid_and_has_a_sequence() {
        for (name, body) in corpus() {
            body.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
            let seq = exact::sequence_of(&body).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(seq.n(), body.ambient_dim(), "{name}");
            assert_eq!(seq.values()[0], 1.0, "{name}");
        }
    }
}
