//! Per-pair triangle profiles: for a pair `(i, j)`, the multiset of color
//! pairs `(color(i, k), color(k, j))` over all `k`, run-length encoded.

/// Sorted `(code, multiplicity)` list, `code = color(i,k) * palette + color(k,j)`.
pub type Profile = Vec<(u64, u32)>;

/// Reusable buffers for profile computation.
#[derive(Default)]
pub struct ProfileScratch {
    codes: Vec<u64>,
    column: Vec<u32>,
    counts: Vec<u32>,
    touched: Vec<u32>,
}

impl ProfileScratch {
    pub fn profile(&mut self, colors: &[u32], n: usize, palette: usize, i: usize, j: usize) -> Profile {
        let mut out = Vec::new();
        self.profile_into(colors, n, palette, i, j, &mut out);
        out
    }

    pub fn profile_into(&mut self, colors: &[u32], n: usize, palette: usize, i: usize, j: usize, out: &mut Profile) {
        let mut column = std::mem::take(&mut self.column);
        column.clear();
        column.extend((0..n).map(|k| colors[k * n + j]));
        self.profile_of(&colors[i * n..(i + 1) * n], &column, palette, out);
        self.column = column;
    }

    /// Profile from row `i` and column `j` given as contiguous slices.
    pub fn profile_of(&mut self, row: &[u32], column: &[u32], palette: usize, out: &mut Profile) {
        let p = palette as u64;
        out.clear();
        self.codes.clear();
        self.codes.extend(row.iter().zip(column).map(|(&a, &b)| a as u64 * p + b as u64));
        self.codes.sort_unstable();
        for &c in &self.codes {
            match out.last_mut() {
                Some((last, m)) if *last == c => *m += 1,
                _ => out.push((c, 1)),
            }
        }
    }

    /// Profile from a row grouped by color and a contiguous column.
    pub fn profile_grouped(&mut self, row: &RowGroups, column: &[u32], palette: usize, out: &mut Profile) {
        let p = palette as u64;
        out.clear();
        if self.counts.len() < palette {
            self.counts.resize(palette, 0);
        }
        for &(a, start, end) in &row.groups {
            let base = a as u64 * p;
            let members = &row.order[start as usize..end as usize];
            if let [k] = members {
                out.push((base + column[*k as usize] as u64, 1));
                continue;
            }
            if let [k, l] = members {
                let (x, y) = (column[*k as usize] as u64, column[*l as usize] as u64);
                match x.cmp(&y) {
                    std::cmp::Ordering::Equal => out.push((base + x, 2)),
                    std::cmp::Ordering::Less => out.extend([(base + x, 1), (base + y, 1)]),
                    std::cmp::Ordering::Greater => out.extend([(base + y, 1), (base + x, 1)]),
                }
                continue;
            }
            self.touched.clear();
            for &k in &row.order[start as usize..end as usize] {
                let b = column[k as usize];
                let slot = &mut self.counts[b as usize];
                if *slot == 0 {
                    self.touched.push(b);
                }
                *slot += 1;
            }
            if self.touched.len() > 1 {
                self.touched.sort_unstable();
            }
            for &b in &self.touched {
                let slot = &mut self.counts[b as usize];
                out.push((base + b as u64, *slot));
                *slot = 0;
            }
        }
    }
}

/// The points of one row sorted by color, with the range of each color.
#[derive(Debug, Clone, Default)]
pub struct RowGroups {
    order: Vec<u32>,
    groups: Vec<(u32, u32, u32)>,
}

impl RowGroups {
    pub fn new(row: &[u32]) -> Self {
        let mut order: Vec<u32> = (0..row.len() as u32).collect();
        order.sort_unstable_by_key(|&k| row[k as usize]);
        let mut groups: Vec<(u32, u32, u32)> = Vec::new();
        for (pos, &k) in order.iter().enumerate() {
            let c = row[k as usize];
            match groups.last_mut() {
                Some((last, _, end)) if *last == c => *end = pos as u32 + 1,
                _ => groups.push((c, pos as u32, pos as u32 + 1)),
            }
        }
        Self { order, groups }
    }
}

/// `colors` with rows and columns swapped.
pub fn transposed(colors: &[u32], n: usize) -> Vec<u32> {
    let mut t = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            t[j * n + i] = colors[i * n + j];
        }
    }
    t
}

/// Splits a profile code back into its `(color(i,k), color(k,j))` pair.
#[inline]
pub fn decode(code: u64, palette: usize) -> (u32, u32) {
    ((code / palette as u64) as u32, (code % palette as u64) as u32)
}
