//! Browser bindings: random graphs, Betti tables and the Hilbert function of
//! H0 over R^2, exchanged as graph text and JSON.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use h0pres::gen::{random_r2_graph, rng, GraphParams};
use h0pres::io::{parse_graph, write_graph};
use h0pres::oracle::{h0_dimensions, GradeGrid};
use h0pres::{betti_r2, Backend, BettiTable, FilteredGraph, Grade};

/// A grade as exact text plus floats for drawing.
#[derive(Serialize, Debug, PartialEq)]
pub struct Point {
    pub text: String,
    pub x: f64,
    pub y: f64,
}

impl From<&Grade> for Point {
    fn from(g: &Grade) -> Self {
        Point {
            text: g.to_string(),
            x: g.x().to_f64(),
            y: g.y().to_f64(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct Tables {
    pub beta0: Vec<Point>,
    pub beta1: Vec<Point>,
    pub beta2: Vec<Point>,
    pub beta0_h1: Vec<Point>,
    /// `(row, column, coefficient)`, 1-based.
    pub matrix: Vec<(usize, usize, i8)>,
}

#[derive(Serialize, Debug)]
pub struct Heatmap {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// `dims[j][i]` is the number of components at `(xs[i], ys[j])`.
    pub dims: Vec<Vec<usize>>,
}

fn points(t: &BettiTable) -> Vec<Point> {
    t.sorted().iter().map(Point::from).collect()
}

fn read(text: &str) -> Result<FilteredGraph, String> {
    let g = parse_graph(text, None).map_err(|e| e.to_string())?;
    let violations = g.validate();
    if !violations.is_empty() {
        return Err(violations
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("\n"));
    }
    if !g.poset().is_r2() {
        return Err("the demo works over R^2 (`poset rn 2`)".into());
    }
    Ok(g)
}

pub fn random_text(seed: u64, vertices: usize, edges: usize, grid: i64) -> String {
    let params = GraphParams {
        vertices: vertices.max(1),
        edges,
        grid: grid.max(1),
        jitter: (grid / 4).max(1),
        self_loops: false,
    };
    write_graph(&random_r2_graph(&mut rng(seed), &params), "")
}

pub fn tables(text: &str) -> Result<Tables, String> {
    let g = read(text)?;
    let r = betti_r2(&g, Backend::Fast).map_err(|e| e.to_string())?;
    let mut matrix: Vec<_> = r
        .matrix
        .entries
        .iter()
        .map(|e| (e.row + 1, e.col + 1, e.coef))
        .collect();
    matrix.sort_by_key(|&(row, col, _)| (col, row));
    Ok(Tables {
        beta0: points(&r.beta0),
        beta1: points(&r.beta1),
        beta2: points(&r.beta2),
        beta0_h1: points(&r.beta0_h1),
        matrix,
    })
}

pub fn heatmap(text: &str) -> Result<Heatmap, String> {
    let g = read(text)?;
    let grid = GradeGrid::for_graph(&g, GradeGrid::DEFAULT_CAP).map_err(|e| e.to_string())?;
    let axes = grid.axes().expect("R^2 grid");
    let as_f64 = |a: &Vec<h0pres::Rational>| a.iter().map(|v| v.to_f64()).collect::<Vec<_>>();
    let (xs, ys) = (as_f64(&axes[0]), as_f64(&axes[1]));
    let mut dims = vec![vec![0; xs.len()]; ys.len()];
    // grid points are enumerated with y varying fastest
    for (k, (_, d)) in h0_dimensions(&g, &grid).into_iter().enumerate() {
        dims[k % ys.len()][k / ys.len()] = d;
    }
    Ok(Heatmap { xs, ys, dims })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsValue> {
    r.map(|v| serde_json::to_string(&v).expect("plain data"))
        .map_err(|e| JsValue::from_str(&e))
}

/// Graph text for a random bifiltered graph on `[0, grid)^2`.
#[wasm_bindgen(js_name = randomGraph)]
pub fn random_graph(seed: u32, vertices: u32, edges: u32, grid: u32) -> String {
    random_text(seed.into(), vertices as usize, edges as usize, grid.into())
}

/// Betti tables and presentation matrix of a graph, as JSON.
#[wasm_bindgen(js_name = bettiTables)]
pub fn betti_tables(text: &str) -> Result<String, JsValue> {
    to_js(tables(text))
}

/// Number of components at every point of the grade grid, as JSON.
#[wasm_bindgen(js_name = hilbertFunction)]
pub fn hilbert_function(text: &str) -> Result<String, JsValue> {
    to_js(heatmap(text))
}
