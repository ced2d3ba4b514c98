use crate::scalar::ExactField;

/// Sparse vector: `(column, value)` pairs sorted by column, no zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: ExactField> SparseVec<F> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn from_dense(v: &[F]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    /// Entries may come in any order; repeated columns are summed.
    pub fn from_entries(mut entries: Vec<(usize, F)>) -> Self {
        entries.sort_by_key(|(c, _)| *c);
        let mut out: Vec<(usize, F)> = Vec::with_capacity(entries.len());
        for (c, x) in entries {
            match out.last_mut() {
                Some((last, acc)) if *last == c => *acc = acc.clone() + x,
                _ => out.push((c, x)),
            }
        }
        out.retain(|(_, x)| !x.is_zero());
        SparseVec { entries: out }
    }

    pub fn unit(col: usize) -> Self {
        SparseVec { entries: vec![(col, F::one())] }
    }

    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut v = vec![F::zero(); len];
        for (c, x) in &self.entries {
            v[*c] = x.clone();
        }
        v
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn pivot(&self) -> Option<usize> {
        self.entries.first().map(|(c, _)| *c)
    }

    pub fn get(&self, col: usize) -> F {
        match self.entries.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn scale(&mut self, s: &F) {
        for (_, x) in &mut self.entries {
            *x = x.clone() * s.clone();
        }
    }

    /// `self -= s · other`.
    pub fn sub_scaled(&mut self, s: &F, other: &SparseVec<F>) {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ca, _)), Some((cb, _))) if ca == cb => {
                    let (c, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let z = x - s.clone() * y.clone();
                    if !z.is_zero() {
                        out.push((c, z));
                    }
                }
                (Some((ca, _)), Some((cb, _))) if ca < cb => out.push(a.next().unwrap()),
                (Some(_), Some(_)) | (None, Some(_)) => {
                    let (c, y) = b.next().unwrap();
                    out.push((*c, -(s.clone() * y.clone())));
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn map_cols(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_entries(self.entries.iter().map(|(c, x)| (f(*c), x.clone())).collect())
    }
}

impl<F: ExactField> Default for SparseVec<F> {
    fn default() -> Self {
        Self::new()
    }
}

/// Incrementally maintained reduced row echelon form.
///
/// Every stored row has a leading 1 at its pivot and zeros in every other
/// pivot column, so the final row set is canonical: it depends only on the
/// span of what was inserted, not on insertion order.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ncols: usize,
    rows: Vec<SparseVec<F>>,
    pivot_row: Vec<Option<usize>>,
}

impl<F: ExactField> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Reduce `v` against the stored rows; the result has no entries in
    /// pivot columns.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let hits: Vec<(usize, F)> = v
            .entries()
            .iter()
            .filter_map(|(c, x)| self.pivot_row[*c].map(|r| (r, x.clone())))
            .collect();
        for (r, x) in hits {
            v.sub_scaled(&x, &self.rows[r]);
        }
        v
    }

    /// Returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        debug_assert!(v.entries().last().is_none_or(|(c, _)| *c < self.ncols));
        let mut v = self.reduce(v);
        let Some(pivot) = v.pivot() else {
            return false;
        };
        let lead = v.entries()[0].1.inv();
        v.scale(&lead);
        for row in &mut self.rows {
            let x = row.get(pivot);
            if !x.is_zero() {
                row.sub_scaled(&x, &v);
            }
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(v);
        true
    }

    pub fn insert_dense(&mut self, v: &[F]) -> bool {
        self.insert(SparseVec::from_dense(v))
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Rows sorted by pivot column: the reduced row echelon form.
    pub fn into_sorted_rows(mut self) -> Vec<SparseVec<F>> {
        self.rows.sort_by_key(|r| r.pivot());
        self.rows
    }

    pub fn sorted_rows(&self) -> Vec<SparseVec<F>> {
        self.clone().into_sorted_rows()
    }
}
