//! Whole-instance construction: split the points into tiles, run the tile
//! algorithm on each tile's centered net in its canonical frame, add a
//! 2-spanner per cluster, and take one shortest-path tree of the union.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use crate::cnet::{build_cnet, cluster_spanner};
use crate::error::{Result, SltError};
use crate::geom::Point2;
use crate::graph::{root_stretch, shortest_path_tree, GeoGraph, RootedTree, VertexKind};
use crate::instance::Instance;
use crate::restricted::restricted_tile_detailed;
use crate::steiner::{check_eps, steiner_tile_detailed};
use crate::tiling::{canonical_frame, tile_of, TileId, TilingParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Steiner,
    Restricted,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Steiner => "steiner",
            Mode::Restricted => "restricted",
        }
    }
}

/// How tiles are scheduled. `Parallel` runs on a dedicated worker pool when
/// the `parallel` feature is enabled and falls back to sequential otherwise.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Sequential,
    Parallel { threads: usize },
}

impl Execution {
    pub fn with_threads(threads: usize) -> Self {
        if threads <= 1 {
            Execution::Sequential
        } else {
            Execution::Parallel { threads }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TileStats {
    pub tile: TileId,
    pub points: usize,
    pub net: usize,
    /// Weight of the tile's paths plus its cluster spanners.
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BuildReport {
    pub mode: Mode,
    pub tiles: Vec<TileStats>,
    pub union_weight: f64,
    pub total_weight: f64,
    pub max_stretch: f64,
    pub steiner_points: usize,
    pub wall_time: Duration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum VRef {
    Input(usize),
    Steiner(usize),
}

struct TileOutput {
    steiner: Vec<Point2>,
    edges: Vec<(VRef, VRef)>,
    stats: TileStats,
}

/// Non-source points grouped by tile, in tile order.
pub fn partition_tiles(inst: &Instance, params: &TilingParams) -> Result<BTreeMap<TileId, Vec<usize>>> {
    let mut tiles: BTreeMap<TileId, Vec<usize>> = BTreeMap::new();
    for (i, &p) in inst.points().iter().enumerate() {
        if i == inst.source_index() {
            continue;
        }
        let t = tile_of(p, params).map_err(|_| SltError::PointAtSource(i))?;
        tiles.entry(t).or_default().push(i);
    }
    Ok(tiles)
}

fn process_tile(inst: &Instance, params: &TilingParams, tile: TileId, members: &[usize], mode: Mode) -> Result<TileOutput> {
    let eps = inst.eps();
    let src = inst.source_index();
    let world: Vec<Point2> = members.iter().map(|&i| inst.points()[i]).collect();
    let cn = build_cnet(&world, inst.source(), eps)?;
    let frame = canonical_frame(tile, params);
    let mut steiner = Vec::new();
    let mut edges = Vec::new();
    let mut push = |g: &GeoGraph, map: &dyn Fn(usize) -> VRef| {
        for e in g.edges() {
            edges.push((map(e.u), map(e.v)));
        }
    };
    match mode {
        Mode::Steiner => {
            let net: Vec<Point2> = cn.net.iter().map(|&l| frame.to_canonical(world[l])).collect();
            let t = steiner_tile_detailed(&net, eps)?;
            let m = net.len();
            for v in &t.graph.vertices()[m + 1..] {
                steiner.push(frame.from_canonical(v.pos));
            }
            push(&t.graph, &|id| {
                if id < m {
                    VRef::Input(members[cn.net[id]])
                } else if id == m {
                    VRef::Input(src)
                } else {
                    VRef::Steiner(id - m - 1)
                }
            });
        }
        Mode::Restricted => {
            let canon: Vec<Point2> = world.iter().map(|&q| frame.to_canonical(q)).collect();
            let t = restricted_tile_detailed(&cn.net, &canon, eps)?;
            let n = canon.len();
            push(&t.graph, &|id| VRef::Input(if id < n { members[id] } else { src }));
        }
    }
    for cluster in cn.clusters() {
        let pts: Vec<Point2> = cluster.iter().map(|&l| world[l]).collect();
        for (a, b) in cluster_spanner(&pts) {
            edges.push((VRef::Input(members[cluster[a]]), VRef::Input(members[cluster[b]])));
        }
    }
    let pos = |v: VRef| match v {
        VRef::Input(i) => inst.points()[i],
        VRef::Steiner(j) => steiner[j],
    };
    let weight = edges.iter().map(|&(u, v)| pos(u).dist(pos(v))).sum();
    Ok(TileOutput {
        stats: TileStats {
            tile,
            points: members.len(),
            net: cn.net.len(),
            weight,
        },
        steiner,
        edges,
    })
}

fn map_tiles<T, F>(tiles: &[(TileId, Vec<usize>)], exec: Execution, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(TileId, &[usize]) -> Result<T> + Sync,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel { threads } => {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| SltError::ThreadPool(e.to_string()))?;
            let out: Vec<Result<T>> = pool.install(|| tiles.par_iter().map(|(t, m)| f(*t, m)).collect());
            out.into_iter().collect()
        }
        _ => tiles.iter().map(|(t, m)| f(*t, m)).collect(),
    }
}

fn check_instance(inst: &Instance) -> Result<()> {
    check_eps(inst.eps())?;
    if inst.len() < 2 {
        return Err(SltError::InvalidInstance("need at least two points".into()));
    }
    Ok(())
}

/// Union of all tile graphs and cluster spanners over the input points
/// (ids kept) followed by Steiner points in tile order.
pub fn union_graph(inst: &Instance, mode: Mode, exec: Execution) -> Result<(GeoGraph, Vec<TileStats>)> {
    check_instance(inst)?;
    let params = TilingParams::new(inst.eps(), inst.source())?;
    let tiles: Vec<(TileId, Vec<usize>)> = partition_tiles(inst, &params)?.into_iter().collect();
    let outputs = map_tiles(&tiles, exec, |t, m| process_tile(inst, &params, t, m, mode))?;

    let mut g = GeoGraph::new();
    for (i, &p) in inst.points().iter().enumerate() {
        let kind = if i == inst.source_index() { VertexKind::Source } else { VertexKind::Input };
        g.add_vertex(p, kind);
    }
    let mut stats = Vec::with_capacity(outputs.len());
    for out in outputs {
        let base = g.num_vertices();
        for &q in &out.steiner {
            g.add_vertex(q, VertexKind::Steiner);
        }
        let id = |v: VRef| match v {
            VRef::Input(i) => i,
            VRef::Steiner(j) => base + j,
        };
        for (u, v) in out.edges {
            g.add_edge(id(u), id(v));
        }
        stats.push(out.stats);
    }
    g.dedup_edges();
    Ok((g, stats))
}

pub fn build_slt(inst: &Instance, mode: Mode) -> Result<(RootedTree, BuildReport)> {
    build_slt_with(inst, mode, Execution::Sequential)
}

pub fn build_slt_with(inst: &Instance, mode: Mode, exec: Execution) -> Result<(RootedTree, BuildReport)> {
    let start = Instant::now();
    let (g, tiles) = union_graph(inst, mode, exec)?;
    let union_weight = g.weight();
    let tree = shortest_path_tree(&g, inst.source_index())?
        .prune_steiner_leaves()
        .contract_steiner_relays();
    let wall_time = start.elapsed();
    let report = BuildReport {
        mode,
        tiles,
        union_weight,
        total_weight: tree.weight(),
        max_stretch: root_stretch(&tree, inst)?,
        steiner_points: tree.num_vertices() - inst.len(),
        wall_time,
    };
    Ok((tree, report))
}
