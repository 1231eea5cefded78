use super::{ArcColoredDigraph, GraphError};

/// A directed walk: a start vertex followed by (color, next vertex) steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub start: usize,
    pub steps: Vec<(usize, usize)>,
}

impl Walk {
    pub fn new(start: usize) -> Self {
        Walk { start, steps: Vec::new() }
    }

    pub fn push(&mut self, color: usize, to: usize) {
        self.steps.push((color, to));
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> usize {
        self.steps.last().map_or(self.start, |&(_, v)| v)
    }

    pub fn is_closed(&self) -> bool {
        self.end() == self.start
    }

    /// v_0, v_1, ..., v_k.
    pub fn vertices(&self) -> Vec<usize> {
        std::iter::once(self.start).chain(self.steps.iter().map(|&(_, v)| v)).collect()
    }

    pub fn colors(&self) -> Vec<usize> {
        self.steps.iter().map(|&(c, _)| c).collect()
    }

    /// WW′, defined when W ends where W′ starts.
    pub fn concat(&self, other: &Walk) -> Result<Walk, GraphError> {
        if self.end() != other.start {
            return Err(GraphError::NotAWalk(format!(
                "cannot append a walk starting at {} to one ending at {}",
                other.start,
                self.end()
            )));
        }
        let mut w = self.clone();
        w.steps.extend_from_slice(&other.steps);
        Ok(w)
    }

    /// Checks every step against the arc set of its color.
    pub fn validate(&self, d: &ArcColoredDigraph) -> Result<(), GraphError> {
        let mut at = self.start;
        for (i, &(c, v)) in self.steps.iter().enumerate() {
            if c >= d.color_count() || !d.has_arc(c, at, v) {
                return Err(GraphError::NotAWalk(format!("step {i}: ({at},{v}) of color {c} is not an arc")));
            }
            at = v;
        }
        Ok(())
    }
}

/// The image of a walk under a vertex map, checked arc by arc.
pub fn map_walk(walk: &Walk, d: &ArcColoredDigraph, map: &[usize]) -> Result<Walk, GraphError> {
    let image = Walk {
        start: map[walk.start],
        steps: walk.steps.iter().map(|&(c, v)| (c, map[v])).collect(),
    };
    image.validate(d)?;
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle3() -> ArcColoredDigraph {
        ArcColoredDigraph::new(
            vec!["0".into(), "1".into(), "2".into()],
            vec!["a".into()],
            vec![vec![(0, 1), (1, 2), (2, 0)]],
        )
        .unwrap()
    }

    fn full_cycle() -> Walk {
        Walk { start: 0, steps: vec![(0, 1), (0, 2), (0, 0)] }
    }

    #[test]
    fn identity_and_rotation() {
        let d = cycle3();
        let w = full_cycle();
        assert!(w.validate(&d).is_ok() && w.is_closed());
        assert_eq!(map_walk(&w, &d, &[0, 1, 2]).unwrap(), w);
        let rotated = map_walk(&w, &d, &[1, 2, 0]).unwrap();
        assert_eq!(rotated.vertices(), vec![1, 2, 0, 1]);
        assert_eq!(rotated.colors(), w.colors());
    }

    #[test]
    fn non_endomorphism_fails() {
        assert!(matches!(
            map_walk(&full_cycle(), &cycle3(), &[0, 2, 1]),
            Err(GraphError::NotAWalk(_))
        ));
    }

    #[test]
    fn concatenation() {
        let a = Walk { start: 0, steps: vec![(0, 1)] };
        let b = Walk { start: 1, steps: vec![(0, 2)] };
        assert_eq!(a.concat(&b).unwrap().vertices(), vec![0, 1, 2]);
        assert!(b.concat(&b).is_err());
    }
}
