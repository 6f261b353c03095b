use obscov::decomp::{chain_decompose, component_degree};
use obscov::io::ParsedInstance;

const INST: &str = "p ocov 13 4
e 3 4
e 3 5
e 4 6
e 5 6
e 7 8
e 7 9
e 8 10
e 9 10
e 9 11
e 10 12
e 11 12
e 1 8
e 2 12
e 0 5
e 2 6
e 2 11
e 3 7
l 1 8 3/2
l 2 6 5/2
l 2 11 2/3
l 3 4 5/2
l 3 5 7/3
l 3 7 1/1
l 4 6 1/1
l 8 10 9/1
l 9 11 9/2
l 10 12 7/1
";

fn main() {
    let ParsedInstance::Covering(inst) = obscov::io::parse_instance(INST).unwrap() else { panic!() };
    let dec = chain_decompose(&inst.graph).unwrap();
    for c in &dec.components {
        println!("comp {:?} degree {}", c.nodes(), component_degree(&inst.graph, c));
    }
    let ec = obscov::weighted::corner_cover(&inst, &dec).unwrap();
    println!("EC = {ec:?}");
    let aux = obscov::weighted::build_auxiliary(&inst, &dec, &ec);
    println!("aux nodes {} edges {:?}", aux.graph.node_count(), aux.graph.edges());
    println!("labels {:?}", aux.labels);
    println!("satisfied {:?}", aux.satisfied);
    let f1 = obscov::weighted::select_f1(&inst, &aux);
    println!("F1 = {f1:?}");
    let (reduced, _) = obscov::weighted::reduce_degrees(&inst, &dec, &f1);
    println!("reduced edges: {:?}", reduced.graph.edges());
    let dec2 = chain_decompose(&reduced.graph).unwrap();
    for c in &dec2.components {
        println!("reduced comp {:?} degree {}", c.nodes(), component_degree(&reduced.graph, c));
    }
}
