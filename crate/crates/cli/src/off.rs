//! OFF mesh export of two- and three-dimensional systems: vertices as
//! decimal approximations (exact values in comments), faces reconstructed
//! from tight sets.

use anyhow::{bail, Result};
use rockforge_core::polytope::{build_graph, irredundant_rows_from, PolytopeGraph};
use rockforge_core::rational::{format_rational, Rational};
use rockforge_core::system::InequalitySystem;

/// Decimal approximation with the given number of fraction digits.
fn approx(q: &Rational, digits: u32) -> String {
    let scale = rockforge_core::rational::Int::from(10u32).pow(digits);
    let scaled = (q * Rational::from_integer(scale.clone())).round().to_integer();
    let negative = scaled < 0.into();
    let mag = scaled.magnitude().to_string();
    let mut int_part;
    let frac_part;
    if mag.len() > digits as usize {
        let split = mag.len() - digits as usize;
        int_part = mag[..split].to_string();
        frac_part = mag[split..].to_string();
    } else {
        int_part = "0".to_string();
        frac_part = format!("{:0>width$}", mag, width = digits as usize);
    }
    if negative {
        int_part.insert(0, '-');
    }
    format!("{int_part}.{frac_part}")
}

/// Cyclic order of a facet's vertices around its centroid, using float
/// angles in a projection plane; presentation only, the geometry stays
/// exact in the comments.
fn order_cycle(points: &[(usize, &Vec<Rational>)], normal: &[Rational]) -> Vec<usize> {
    let to_f = |q: &Rational| -> f64 {
        let n = q.numer().to_string().parse::<f64>().unwrap_or(0.0);
        let d = q.denom().to_string().parse::<f64>().unwrap_or(1.0);
        n / d
    };
    let nf: Vec<f64> = normal.iter().map(to_f).collect();
    // Drop the coordinate where the normal is largest in magnitude.
    let drop = (0..nf.len())
        .max_by(|&a, &b| nf[a].abs().partial_cmp(&nf[b].abs()).unwrap())
        .unwrap_or(0);
    let project = |p: &Vec<Rational>| -> (f64, f64) {
        let coords: Vec<f64> = (0..p.len()).filter(|&k| k != drop).map(|k| to_f(&p[k])).collect();
        (coords[0], coords[1])
    };
    let projected: Vec<(usize, (f64, f64))> =
        points.iter().map(|(i, p)| (*i, project(p))).collect();
    let cx = projected.iter().map(|(_, (x, _))| x).sum::<f64>() / projected.len() as f64;
    let cy = projected.iter().map(|(_, (_, y))| y).sum::<f64>() / projected.len() as f64;
    let mut with_angle: Vec<(f64, usize)> = projected
        .into_iter()
        .map(|(i, (x, y))| ((y - cy).atan2(x - cx), i))
        .collect();
    with_angle.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Flip when the dropped normal component is negative.
    let ordered: Vec<usize> = with_angle.into_iter().map(|(_, i)| i).collect();
    if nf[drop] < 0.0 {
        ordered.into_iter().rev().collect()
    } else {
        ordered
    }
}

/// Writes the OFF text of a polytope in ambient dimension two or three.
pub fn export_off(system: &InequalitySystem, digits: u32) -> Result<String> {
    if system.d() > 3 {
        bail!("OFF export requires ambient dimension at most 3, got {}", system.d());
    }
    let graph = build_graph(system).map_err(|e| anyhow::anyhow!("{e}"))?;
    match system.d() {
        3 => export_3d(system, &graph, digits),
        2 => export_2d(&graph, digits),
        _ => bail!("nothing to export in dimension {}", system.d()),
    }
}

fn vertex_lines(graph: &PolytopeGraph, digits: u32, pad_z: bool) -> Vec<String> {
    graph
        .vertices()
        .iter()
        .map(|rec| {
            let approxes: Vec<String> = rec
                .point
                .iter()
                .map(|q| approx(q, digits))
                .chain(pad_z.then(|| "0.0".to_string()))
                .collect();
            let exact: Vec<String> = rec.point.iter().map(format_rational).collect();
            format!("{}  # exact: ({})", approxes.join(" "), exact.join(", "))
        })
        .collect()
}

fn header(digits: u32) -> String {
    format!("OFF
# coordinates rounded to {digits} fraction digits; exact values in comments
")
}

fn export_2d(graph: &PolytopeGraph, digits: u32) -> Result<String> {
    // A polygon: one face listing the boundary cycle.
    let points: Vec<(usize, &Vec<Rational>)> = graph
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, r)| (i, &r.point))
        .collect();
    let normal = vec![Rational::from_integer(0.into()), Rational::from_integer(0.into()), Rational::from_integer(1.into())];
    let cycle = order_cycle(&points, &normal);
    let mut out = header(digits);
    out.push_str(&format!("{} 1 {}\n", graph.vertex_count(), graph.edges().len()));
    for line in vertex_lines(graph, digits, true) {
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(&format!(
        "{} {}\n",
        cycle.len(),
        cycle.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    ));
    Ok(out)
}

fn export_3d(system: &InequalitySystem, graph: &PolytopeGraph, digits: u32) -> Result<String> {
    let facet_rows = irredundant_rows_from(system, graph.vertices());
    let mut faces = Vec::new();
    for (row, &is_facet) in facet_rows.iter().enumerate() {
        if !is_facet {
            continue;
        }
        let members: Vec<(usize, &Vec<Rational>)> = graph
            .vertices()
            .iter()
            .enumerate()
            .filter(|(_, rec)| rec.tight_rows.contains(&row))
            .map(|(i, rec)| (i, &rec.point))
            .collect();
        if members.len() < 3 {
            continue;
        }
        faces.push(order_cycle(&members, system.row(row)));
    }
    let mut out = header(digits);
    out.push_str(&format!(
        "{} {} {}\n",
        graph.vertex_count(),
        faces.len(),
        graph.edges().len()
    ));
    for line in vertex_lines(graph, digits, false) {
        out.push_str(&line);
        out.push('\n');
    }
    for face in faces {
        out.push_str(&format!(
            "{} {}\n",
            face.len(),
            face.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        ));
    }
    Ok(out)
}
