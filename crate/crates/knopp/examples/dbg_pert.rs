use knopp::core::{core_by_cluster_hull, core_by_support, CoreParams};
use knopp::corpus;
use knopp::geometry::hausdorff_distance;

fn main() {
    let item = corpus::find("tet_fin").unwrap();
    let w = item.window().unwrap();
    let p = item.perturbed_window(0.5, 1009).unwrap();
    let model = item.model().unwrap();
    let params = CoreParams { directions: item.directions, delta: 1e-2, ..CoreParams::default() };
    let s0 = core_by_support(&w, &model, &params).unwrap();
    let s1 = core_by_support(&p, &model, &params).unwrap();
    println!("support shift {:.4}", hausdorff_distance(&s0.result, &s1.result).unwrap());
    let h0 = core_by_cluster_hull(&w, &model, &params).unwrap();
    let h1 = core_by_cluster_hull(&p, &model, &params).unwrap();
    println!("hull shift {:.4}", hausdorff_distance(&h0.result, &h1.result).unwrap());
    println!("hull0 verts {:?}", h0.result.vertices().unwrap());
    println!("hull1 verts {:?}", h1.result.vertices().unwrap());
}
