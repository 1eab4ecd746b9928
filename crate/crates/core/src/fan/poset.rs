use crate::error::{Error, Result};
use crate::polyhedron::FaceRecord;

/// A finite graded poset with a bottom of dimension -1 and a unique top,
/// stored as "strictly below" lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePoset {
    dims: Vec<isize>,
    below: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl FacePoset {
    /// Builds a poset from element dimensions and strict down-sets.
    ///
    /// The down-sets must be transitively closed; the result is checked to be
    /// graded with a bottom of dimension -1 and a unique top.
    pub fn new(dims: Vec<isize>, below: Vec<Vec<usize>>) -> Result<FacePoset> {
        if dims.len() != below.len() || dims.is_empty() {
            return Err(Error::NotGraded("dimension and relation tables disagree".into()));
        }
        let n = dims.len();
        let mut below: Vec<Vec<usize>> = below
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        for (i, b) in below.iter().enumerate() {
            if b.contains(&i) || b.iter().any(|&j| j >= n) {
                return Err(Error::NotGraded(format!("element {i} has a malformed down-set")));
            }
        }
        let bottoms: Vec<usize> = (0..n).filter(|&i| below[i].is_empty()).collect();
        let [bottom] = bottoms[..] else {
            return Err(Error::NotGraded(format!("expected one minimum, found {}", bottoms.len())));
        };
        if dims[bottom] != -1 {
            return Err(Error::NotGraded("the minimum must have dimension -1".into()));
        }
        let top = (0..n)
            .max_by_key(|&i| below[i].len())
            .expect("non-empty");
        if below[top].len() != n - 1 {
            return Err(Error::NotGraded("no unique maximum".into()));
        }
        for i in 0..n {
            for &j in &below[i] {
                if dims[j] >= dims[i] {
                    return Err(Error::NotGraded(format!(
                        "element {j} lies below {i} but has dimension {} >= {}",
                        dims[j], dims[i]
                    )));
                }
                if !below[j].iter().all(|k| below[i].contains(k)) {
                    return Err(Error::NotGraded("relation is not transitive".into()));
                }
            }
        }
        for i in 0..n {
            for &j in &below[i] {
                let covered = !below[i].iter().any(|k| below[*k].contains(&j));
                if covered && dims[i] - dims[j] != 1 {
                    return Err(Error::NotGraded(format!(
                        "cover {j} < {i} jumps from dimension {} to {}",
                        dims[j], dims[i]
                    )));
                }
            }
        }
        for b in below.iter_mut() {
            b.shrink_to_fit();
        }
        Ok(FacePoset {
            dims,
            below,
            bottom,
            top,
        })
    }

    /// The poset of a polyhedron's face lattice.
    pub fn from_face_lattice(faces: &[FaceRecord]) -> Result<FacePoset> {
        let n = faces.len();
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for f in faces {
            for &p in &f.parent_ids {
                if p >= n {
                    return Err(Error::NotGraded(format!("parent id {p} out of range")));
                }
                children[p].push(f.id);
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| faces[i].dim);
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &i in &order {
            let mut set: Vec<usize> = Vec::new();
            for &c in &children[i] {
                set.push(c);
                set.extend(below[c].iter().copied());
            }
            set.sort_unstable();
            set.dedup();
            below[i] = set;
        }
        FacePoset::new(faces.iter().map(|f| f.dim).collect(), below)
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim_of(&self, i: usize) -> isize {
        self.dims[i]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top_dim(&self) -> isize {
        self.dims[self.top]
    }

    /// Elements strictly below `i`.
    pub fn below(&self, i: usize) -> &[usize] {
        &self.below[i]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.below[b].binary_search(&a).is_ok()
    }

    /// Number of elements of each dimension, from -1 up to the top.
    pub fn face_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; (self.top_dim() + 2) as usize];
        for &d in &self.dims {
            counts[(d + 1) as usize] += 1;
        }
        counts
    }

    /// Every interval `[x, y]` with `x < y` has as many elements of even as
    /// of odd dimension.
    pub fn is_eulerian(&self) -> bool {
        for y in 0..self.len() {
            for &x in &self.below[y] {
                let mut sum: i64 = if self.dims[y] % 2 == 0 { 1 } else { -1 };
                sum += if self.dims[x] % 2 == 0 { 1 } else { -1 };
                for &z in &self.below[y] {
                    if z != x && self.leq(x, z) {
                        sum += if self.dims[z] % 2 == 0 { 1 } else { -1 };
                    }
                }
                if sum != 0 {
                    return false;
                }
            }
        }
        true
    }
}
