//! Uniform bucket grid over a point set, used for k-nearest-neighbor
//! candidate graphs.

use crate::geom::Point2;

pub struct Grid {
    origin: Point2,
    cell: f64,
    nx: usize,
    ny: usize,
    /// CSR layout: points of cell `c` are `items[start[c]..start[c + 1]]`.
    start: Vec<usize>,
    items: Vec<usize>,
}

impl Grid {
    /// Cell size chosen for about two points per occupied cell on uniform data.
    pub fn build(points: &[Point2]) -> Self {
        let n = points.len().max(1);
        let (mut lo, mut hi) = (Point2::new(f64::INFINITY, f64::INFINITY), Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in points {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        if points.is_empty() {
            lo = Point2::default();
            hi = Point2::default();
        }
        let w = hi.x - lo.x;
        let h = hi.y - lo.y;
        let mut cell = (2.0 * w * h / n as f64).sqrt().max(2.0 * w.max(h) / n as f64);
        if !(cell > 0.0) {
            cell = 1.0;
        }
        let max_cells = 4 * n;
        let mut nx = (w / cell) as usize + 1;
        let mut ny = (h / cell) as usize + 1;
        while nx * ny > max_cells {
            cell *= 1.5;
            nx = (w / cell) as usize + 1;
            ny = (h / cell) as usize + 1;
        }
        let mut grid = Grid {
            origin: lo,
            cell,
            nx,
            ny,
            start: vec![0; nx * ny + 1],
            items: vec![0; points.len()],
        };
        let keys: Vec<usize> = points.iter().map(|&p| grid.cell_index(p)).collect();
        for &c in &keys {
            grid.start[c + 1] += 1;
        }
        for c in 0..nx * ny {
            grid.start[c + 1] += grid.start[c];
        }
        let mut fill = grid.start.clone();
        for (i, &c) in keys.iter().enumerate() {
            grid.items[fill[c]] = i;
            fill[c] += 1;
        }
        grid
    }

    fn coords(&self, p: Point2) -> (usize, usize) {
        let cx = ((p.x - self.origin.x) / self.cell) as usize;
        let cy = ((p.y - self.origin.y) / self.cell) as usize;
        (cx.min(self.nx - 1), cy.min(self.ny - 1))
    }

    fn cell_index(&self, p: Point2) -> usize {
        let (cx, cy) = self.coords(p);
        cy * self.nx + cx
    }

    fn cell_items(&self, cx: usize, cy: usize) -> &[usize] {
        let c = cy * self.nx + cx;
        &self.items[self.start[c]..self.start[c + 1]]
    }

    /// The `k` nearest other points of `points[i]`, ties by index.
    pub fn knn(&self, points: &[Point2], i: usize, k: usize) -> Vec<usize> {
        let p = points[i];
        let (cx, cy) = self.coords(p);
        let mut best: Vec<(f64, usize)> = Vec::with_capacity(4 * k);
        let max_ring = self.nx.max(self.ny);
        for r in 0..=max_ring {
            let x0 = cx as i64 - r as i64;
            let x1 = cx as i64 + r as i64;
            let y0 = cy as i64 - r as i64;
            let y1 = cy as i64 + r as i64;
            for y in y0..=y1 {
                if y < 0 || y >= self.ny as i64 {
                    continue;
                }
                let on_edge_row = y == y0 || y == y1;
                let mut x = x0;
                while x <= x1 {
                    if x >= 0 && x < self.nx as i64 {
                        for &j in self.cell_items(x as usize, y as usize) {
                            if j != i {
                                best.push((p.dist(points[j]), j));
                            }
                        }
                    }
                    // interior rows only touch the two boundary columns
                    x = if on_edge_row || x == x1 { x + 1 } else { x1 };
                }
            }
            if best.len() >= k {
                best.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                best.truncate(k);
                if best[k - 1].0 <= r as f64 * self.cell {
                    break;
                }
            }
        }
        best.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        best.truncate(k);
        best.into_iter().map(|(_, j)| j).collect()
    }

    /// Nearest other point in each of `cones` equal angular sectors around
    /// `points[i]` (Yao neighbors), ties by index; empty cones are skipped.
    pub fn cone_nearest(&self, points: &[Point2], i: usize, cones: usize) -> Vec<usize> {
        let p = points[i];
        let (cx, cy) = self.coords(p);
        let width = 2.0 * std::f64::consts::PI / cones as f64;
        let mut best: Vec<Option<(f64, usize)>> = vec![None; cones];
        let max_ring = self.nx.max(self.ny);
        for r in 0..=max_ring {
            let x0 = cx as i64 - r as i64;
            let x1 = cx as i64 + r as i64;
            let y0 = cy as i64 - r as i64;
            let y1 = cy as i64 + r as i64;
            for y in y0.max(0)..=y1.min(self.ny as i64 - 1) {
                let on_edge_row = y == y0 || y == y1;
                let mut x = x0;
                while x <= x1 {
                    if x >= 0 && x < self.nx as i64 {
                        for &j in self.cell_items(x as usize, y as usize) {
                            if j == i {
                                continue;
                            }
                            let d = points[j] - p;
                            let ang = d.y.atan2(d.x).rem_euclid(2.0 * std::f64::consts::PI);
                            let c = ((ang / width) as usize).min(cones - 1);
                            let cand = (p.dist(points[j]), j);
                            let better = match best[c] {
                                None => true,
                                Some(b) => cand.0 < b.0 || (cand.0 == b.0 && cand.1 < b.1),
                            };
                            if better {
                                best[c] = Some(cand);
                            }
                        }
                    }
                    x = if on_edge_row || x == x1 { x + 1 } else { x1 };
                }
            }
            let reach = r as f64 * self.cell;
            if best.iter().all(|b| b.is_some_and(|b| b.0 <= reach)) {
                break;
            }
        }
        best.into_iter().flatten().map(|(_, j)| j).collect()
    }
}
