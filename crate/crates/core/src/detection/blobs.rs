use crate::background::ForegroundMask;
use crate::frames::{pixel_coords, COLS, PIXELS, ROWS};

/// An 8-connected foreground component.
#[derive(Debug, Clone, PartialEq)]
pub struct Blob {
    pub frame_index: usize,
    /// Row-major pixel indices, ascending.
    pub pixels: Vec<usize>,
    pub centroid: Centroid,
}

/// Fractional (row, column) position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Centroid {
    pub v: f64,
    pub h: f64,
}

impl Centroid {
    pub fn distance(&self, other: &Centroid) -> f64 {
        (self.v - other.v).hypot(self.h - other.h)
    }
}

impl Blob {
    pub fn size(&self) -> usize {
        self.pixels.len()
    }
}

/// Mean (row, column) of a pixel set; `None` when empty.
pub fn centroid_of(pixels: &[usize]) -> Option<Centroid> {
    if pixels.is_empty() {
        return None;
    }
    let (sv, sh) = pixels.iter().fold((0usize, 0usize), |(sv, sh), &p| {
        let (r, c) = pixel_coords(p);
        (sv + r, sh + c)
    });
    let n = pixels.len() as f64;
    Some(Centroid {
        v: sv as f64 / n,
        h: sh as f64 / n,
    })
}

struct DisjointSet {
    parent: Vec<u16>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u16).collect(),
        }
    }

    fn find(&mut self, mut x: u16) -> u16 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u16, b: u16) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Components of at least `l_min` pixels, ordered by centroid column then row.
///
/// Two-pass union-find labelling: the first pass links each foreground pixel
/// to its already-visited neighbours (W, NW, N, NE), the second groups pixels
/// by root.
pub fn extract_blobs(mask: &ForegroundMask, frame_index: usize, l_min: usize) -> Vec<Blob> {
    let bits = mask.bits();
    let mut sets = DisjointSet::new(PIXELS);
    for r in 0..ROWS {
        for c in 0..COLS {
            let i = r * COLS + c;
            if !bits[i] {
                continue;
            }
            if c > 0 && bits[i - 1] {
                sets.union(i as u16, (i - 1) as u16);
            }
            if r > 0 {
                let up = i - COLS;
                if bits[up] {
                    sets.union(i as u16, up as u16);
                }
                if c > 0 && bits[up - 1] {
                    sets.union(i as u16, (up - 1) as u16);
                }
                if c + 1 < COLS && bits[up + 1] {
                    sets.union(i as u16, (up + 1) as u16);
                }
            }
        }
    }

    // Roots are the smallest index in each set, so scanning in order
    // assigns component slots deterministically.
    let mut slot_of_root = vec![usize::MAX; PIXELS];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in mask.foreground() {
        let root = sets.find(i as u16) as usize;
        if slot_of_root[root] == usize::MAX {
            slot_of_root[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot_of_root[root]].push(i);
    }

    let mut blobs: Vec<Blob> = groups
        .into_iter()
        .filter(|g| g.len() >= l_min)
        .map(|pixels| Blob {
            frame_index,
            centroid: centroid_of(&pixels).expect("component is nonempty"),
            pixels,
        })
        .collect();
    blobs.sort_by(|a, b| {
        a.centroid
            .h
            .total_cmp(&b.centroid.h)
            .then(a.centroid.v.total_cmp(&b.centroid.v))
            .then(a.pixels[0].cmp(&b.pixels[0]))
    });
    blobs
}
