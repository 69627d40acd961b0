//! Dense linear algebra over GF(2), used for induced maps on homology.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<bool>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![false; cols]; rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.data[r][c] = v;
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r][c] ^= true;
    }

    pub fn column(&self, c: usize) -> Vec<bool> {
        self.data.iter().map(|row| row[c]).collect()
    }

    /// Row echelon form; returns the pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&k| self.data[k][c]) else { continue };
            self.data.swap(r, p);
            for k in 0..self.rows {
                if k != r && self.data[k][c] {
                    let (src, dst) = if k < r {
                        let (a, b) = self.data.split_at_mut(r);
                        (&b[0], &mut a[k])
                    } else {
                        let (a, b) = self.data.split_at_mut(k);
                        (&a[r], &mut b[0])
                    };
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d ^= *s;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    /// A basis of the null space, as column vectors.
    pub fn kernel(&self) -> Vec<Vec<bool>> {
        let mut m = self.clone();
        let pivots = m.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![false; self.cols];
                v[f] = true;
                for (r, &p) in pivots.iter().enumerate() {
                    if m.data[r][f] {
                        v[p] = true;
                    }
                }
                v
            })
            .collect()
    }
}
