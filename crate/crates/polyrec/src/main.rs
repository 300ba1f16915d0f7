//! Command-line surface: generate fixtures, derive lattices/graphs/labels,
//! enumerate orientations, run the reconstruction pipelines, and audit
//! cubical inputs. Subcommands compose through JSON files; `-` reads stdin.
//!
//! Exit codes: 0 success/pass, 1 audit violations or failed reconstruction,
//! 2 invalid input. Diagnostics go to stderr, data to stdout or `-o`.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use polyrec::cubical::{self, CubicalComplexSpec};
use polyrec::error::Error;
use polyrec::files::{
    from_json_str, to_json_pretty, GraphFile, LabelsFile, LatticeFile, OrientationReport,
    ReconstructionReport,
};
use polyrec::graph::{dual_graph, graph_isomorphic, graph_of, Graph};
use polyrec::labels::extract_labels;
use polyrec::lattice::{lattice_isomorphic, validate_polytopality, FaceLattice, PolytopeSpec};
use polyrec::orient::EnumLimits;
use polyrec::reconstruct;
use polyrec::{generate, Result};

#[derive(Parser)]
#[command(name = "polyrec", about = "Combinatorial polytope toolkit", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a polytope file for a standard family:
    /// simplex D | cube D | cross D | cyclic D N | prism K | pyramid K |
    /// capped D NCAPS [--seed S] | glued-octahedra | moebius
    Generate {
        family: String,
        params: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Face lattice of a polytope file, with a validation report on stderr.
    Lattice {
        polytope: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Vertex-edge graph of a polytope file.
    Graph {
        polytope: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dual graph (facets adjacent across ridges) of a polytope file.
    Dualgraph {
        polytope: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Edge-labeled vertex figures extracted from a polytope file.
    Labels {
        polytope: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerate acyclic orientations, score them, and report the good ones.
    Orientations {
        graph: String,
        labels: String,
        /// Cap on the number of enumerated orientations.
        #[arg(long)]
        max_count: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rebuild the face lattice from a graph file and a labels file.
    Reconstruct {
        graph: String,
        labels: String,
        /// Polytope file with the expected answer; the report then carries
        /// an isomorphism verdict.
        #[arg(long)]
        truth: Option<String>,
        #[arg(long)]
        max_count: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rebuild a simple polytope from its graph alone.
    ReconstructSimple {
        graph: String,
        #[arg(long)]
        truth: Option<String>,
        #[arg(long)]
        max_count: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rebuild a capped cubical polytope from its dual graph alone.
    ReconstructCapped {
        graph: String,
        #[arg(long)]
        truth: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cubical audits (bipartiteness, regularity, three-facet condition) of
    /// a polytope file or a cubical-complex file.
    Audit {
        file: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The non-reconstructibility demonstration: a cyclic 4-polytope on 6
    /// vertices and the 5-simplex share the complete graph K6 but have
    /// non-isomorphic lattices.
    DemoCyclic,
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn write_output(output: &Option<PathBuf>, data: &str) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, data)?,
        None => print!("{data}"),
    }
    Ok(())
}

fn load_polytope(path: &str) -> Result<PolytopeSpec> {
    let spec: PolytopeSpec = from_json_str(&read_input(path)?)?;
    spec.validate()?;
    Ok(spec)
}

fn load_graph(path: &str) -> Result<Graph> {
    let gf: GraphFile = from_json_str(&read_input(path)?)?;
    gf.into_graph()
}

fn limits(max_count: Option<u64>) -> EnumLimits {
    let mut l = EnumLimits::default();
    if let Some(c) = max_count {
        l.max_orientations = c;
    }
    l
}

fn reconstruction_report(
    lat: &FaceLattice,
    truth: &Option<String>,
) -> Result<(ReconstructionReport, bool)> {
    let mut report = ReconstructionReport {
        facets: reconstruct::facet_vertex_sets(lat),
        lattice: LatticeFile::from_lattice(lat),
        isomorphic_to_truth: None,
        witness: None,
    };
    let mut ok = true;
    if let Some(path) = truth {
        let spec = load_polytope(path)?;
        let truth_lat = FaceLattice::build(&spec)?;
        match lattice_isomorphic(lat, &truth_lat) {
            Some(witness) => {
                report.isomorphic_to_truth = Some(true);
                report.witness = Some(witness);
            }
            None => {
                report.isomorphic_to_truth = Some(false);
                ok = false;
            }
        }
    }
    Ok((report, ok))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Generate { family, params, seed, output } => {
            let need = |k: usize| -> Result<Vec<u32>> {
                if params.len() != k {
                    return Err(Error::InvalidInput(format!(
                        "family '{family}' expects {k} parameter(s), got {}",
                        params.len()
                    )));
                }
                Ok(params.clone())
            };
            let json = match family.as_str() {
                "simplex" => to_json_pretty(&generate::simplex(need(1)?[0])?)?,
                "cube" => to_json_pretty(&generate::cube(need(1)?[0])?)?,
                "cross" => to_json_pretty(&generate::cross_polytope(need(1)?[0])?)?,
                "cyclic" => {
                    let p = need(2)?;
                    to_json_pretty(&generate::cyclic(p[0], p[1])?)?
                }
                "prism" => to_json_pretty(&generate::prism(need(1)?[0])?)?,
                "pyramid" => {
                    let k = need(1)?[0];
                    to_json_pretty(&generate::pyramid(&generate::cyclic(2, k)?)?)?
                }
                "capped" => {
                    let p = need(2)?;
                    let (spec, log) = generate::random_capped(p[0], p[1], seed)?;
                    eprintln!("capping log: {}", serde_json::to_string(&log)?);
                    to_json_pretty(&spec)?
                }
                "glued-octahedra" => to_json_pretty(&generate::glued_octahedra())?,
                "moebius" => to_json_pretty(&cubical::moebius_strip())?,
                other => {
                    return Err(Error::InvalidInput(format!("unknown family '{other}'")))
                }
            };
            write_output(&output, &json)?;
            Ok(0)
        }
        Cmd::Lattice { polytope, output } => {
            let spec = load_polytope(&polytope)?;
            let lat = FaceLattice::build(&spec)?;
            write_output(&output, &to_json_pretty(&LatticeFile::from_lattice(&lat))?)?;
            let report = validate_polytopality(&lat);
            if report.is_ok() {
                eprintln!(
                    "validation: ok (dimension {}, {} faces, {} non-empty)",
                    lat.dimension(),
                    lat.len(),
                    lat.count_nonempty_faces()
                );
                Ok(0)
            } else {
                for v in &report.violations {
                    eprintln!("violation: {v}");
                }
                Ok(1)
            }
        }
        Cmd::Graph { polytope, output } => {
            let lat = FaceLattice::build(&load_polytope(&polytope)?)?;
            let g = graph_of(&lat)?;
            write_output(&output, &to_json_pretty(&GraphFile::from_graph(&g))?)?;
            Ok(0)
        }
        Cmd::Dualgraph { polytope, output } => {
            let lat = FaceLattice::build(&load_polytope(&polytope)?)?;
            let g = dual_graph(&lat)?;
            write_output(&output, &to_json_pretty(&GraphFile::from_graph(&g))?)?;
            Ok(0)
        }
        Cmd::Labels { polytope, output } => {
            let lat = FaceLattice::build(&load_polytope(&polytope)?)?;
            let labels = extract_labels(&lat)?;
            write_output(&output, &to_json_pretty(&LabelsFile::from_labels(&labels))?)?;
            Ok(0)
        }
        Cmd::Orientations { graph, labels, max_count, output } => {
            let g = load_graph(&graph)?;
            let labels: LabelsFile = from_json_str(&read_input(&labels)?)?;
            let labels = labels.into_labels();
            let search = polyrec::orient::find_good_orientations(&g, &labels, &limits(max_count))?;
            let report = OrientationReport {
                f: search.f,
                n_acyclic: search.n_acyclic,
                n_good: search.good.len() as u64,
                good: search.good.iter().map(|o| o.arcs().to_vec()).collect(),
            };
            write_output(&output, &to_json_pretty(&report)?)?;
            Ok(0)
        }
        Cmd::Reconstruct { graph, labels, truth, max_count, output } => {
            let g = load_graph(&graph)?;
            let labels: LabelsFile = from_json_str(&read_input(&labels)?)?;
            let lat = reconstruct::reconstruct_lattice(&g, &labels.into_labels(), &limits(max_count))?;
            let (report, ok) = reconstruction_report(&lat, &truth)?;
            write_output(&output, &to_json_pretty(&report)?)?;
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::ReconstructSimple { graph, truth, max_count, output } => {
            let g = load_graph(&graph)?;
            let lat = reconstruct::reconstruct_simple(&g, &limits(max_count))?;
            let (report, ok) = reconstruction_report(&lat, &truth)?;
            write_output(&output, &to_json_pretty(&report)?)?;
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::ReconstructCapped { graph, truth, output } => {
            let g = load_graph(&graph)?;
            let rec = cubical::reconstruct_capped(&g)?;
            let (report, ok) = reconstruction_report(&rec.lattice, &truth)?;
            write_output(&output, &to_json_pretty(&report)?)?;
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Audit { file, output } => {
            let text = read_input(&file)?;
            let report = match from_json_str::<CubicalComplexSpec>(&text) {
                Ok(cx) => {
                    cx.validate()?;
                    cubical::run_audit_complex(&cx)
                }
                Err(_) => {
                    let spec: PolytopeSpec = from_json_str(&text)?;
                    spec.validate()?;
                    let lat = FaceLattice::build(&spec)?;
                    cubical::run_audit(&lat)?
                }
            };
            let passed = report.passed();
            write_output(&output, &to_json_pretty(&report)?)?;
            Ok(if passed { 0 } else { 1 })
        }
        Cmd::DemoCyclic => {
            let cyclic = FaceLattice::build(&generate::cyclic(4, 6)?)?;
            let simplex = FaceLattice::build(&generate::simplex(5)?)?;
            let g_cyclic = graph_of(&cyclic)?;
            let g_simplex = graph_of(&simplex)?;
            let graphs_isomorphic = graph_isomorphic(&g_cyclic, &g_simplex).is_some();
            let lattices_isomorphic = lattice_isomorphic(&cyclic, &simplex).is_some();
            let report = serde_json::json!({
                "cyclic_polytope": {"d": 4, "n": 6, "facets": cyclic.facet_masks().len(),
                                    "graph_edges": g_cyclic.edges().len()},
                "simplex": {"d": 5, "facets": simplex.facet_masks().len(),
                            "graph_edges": g_simplex.edges().len()},
                "graphs_isomorphic": graphs_isomorphic,
                "lattices_isomorphic": lattices_isomorphic,
            });
            let mut s = serde_json::to_string_pretty(&report)?;
            s.push('\n');
            print!("{s}");
            eprintln!(
                "both graphs are K6; the face lattices differ ({} vs {} facets): \
                 the graph alone does not determine the polytope",
                cyclic.facet_masks().len(),
                simplex.facet_masks().len()
            );
            Ok(if graphs_isomorphic && !lattices_isomorphic { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::NotPolytopal(_) | Error::NotCapped(_) | Error::Internal(_) => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
