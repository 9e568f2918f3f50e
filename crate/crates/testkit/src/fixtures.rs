//! Small hand-written knowledge bases with known answers.

use kg_core::vocab::rdf;
use kg_core::{Graph, Term, Triple};

pub const EDU: &str = "http://example.edu#";

pub fn edu(local: &str) -> Term {
    Term::iri(format!("{EDU}{local}"))
}

const PREFIXES: &str = "@prefix : <http://example.edu#> .\n@prefix edu: <http://example.edu#> .\n";

fn with_prefixes(body: &str) -> String {
    format!("{PREFIXES}{body}")
}

pub fn city_locality() -> String {
    with_prefixes(":City rdfs:subClassOf :Locality .\n:Warsaw rdf:type :City .\n")
}

pub fn district_subproperty() -> String {
    with_prefixes(":is_district_of rdfs:subPropertyOf :is_part_of .\n:Ursynów :is_district_of :Warsaw .\n")
}

pub fn district_range() -> String {
    with_prefixes(":is_district_of rdfs:range :City .\n:Ursynów :is_district_of :Warsaw .\n")
}

/// The three RDFS examples together.
pub fn warsaw_kb() -> String {
    with_prefixes(
        ":City rdfs:subClassOf :Locality .\n\
         :is_district_of rdfs:subPropertyOf :is_part_of ;\n    rdfs:range :City .\n\
         :Ursynów :is_district_of :Warsaw .\n",
    )
}

pub fn fathers() -> String {
    with_prefixes(":Ola :has_father :Jan .\n:Ola :has_father :Marcin .\n:has_father rdf:type owl:FunctionalProperty .\n")
}

pub fn pumpkin() -> String {
    with_prefixes(":Herbivore owl:disjointWith :Carnivore .\n:Pumpkin rdf:type :Carnivore .\n")
}

pub fn pumpkin_contradiction() -> String {
    format!("{}:Pumpkin rdf:type :Herbivore .\n", pumpkin())
}

/// Boy defined as the intersection of Child and Man, plus two individuals.
pub fn boys() -> String {
    format!(
        "{}:Jas rdf:type :Child , :Man .\n:Ania rdf:type :Child .\n:Ala rdf:type :Boy .\n",
        boy_listing().text
    )
}

/// A Turtle document together with the triples it must parse to, written
/// in N-Triples with the parser's blank node labels.
pub struct Listing {
    pub name: &'static str,
    pub text: String,
    pub expected: String,
}

const O: &str = "http://www.w3.org/2002/07/owl#";
const R: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
const S: &str = "http://www.w3.org/2000/01/rdf-schema#";

fn nt(lines: &[(&str, &str, &str)]) -> String {
    let term = |t: &str| {
        if let Some(l) = t.strip_prefix("_:") {
            format!("_:{l}")
        } else if let Some(l) = t.strip_prefix(':') {
            format!("<{EDU}{l}>")
        } else if let Some(l) = t.strip_prefix("owl:") {
            format!("<{O}{l}>")
        } else if let Some(l) = t.strip_prefix("rdf:") {
            format!("<{R}{l}>")
        } else if let Some(l) = t.strip_prefix("rdfs:") {
            format!("<{S}{l}>")
        } else {
            panic!("fixture term {t}")
        }
    };
    lines
        .iter()
        .map(|(s, p, o)| format!("{} {} {} .\n", term(s), term(p), term(o)))
        .collect()
}

pub fn inverse_listing() -> Listing {
    Listing {
        name: "inverse property",
        text: with_prefixes(":is_parent_of rdf:type owl:ObjectProperty ;\n               owl:inverseOf :has_parent .\n"),
        expected: nt(&[
            (":is_parent_of", "rdf:type", "owl:ObjectProperty"),
            (":is_parent_of", "owl:inverseOf", ":has_parent"),
        ]),
    }
}

pub fn functional_listing() -> Listing {
    Listing {
        name: "functional property",
        text: with_prefixes(":has_father rdf:type owl:ObjectProperty ,\n                 owl:FunctionalProperty .\n"),
        expected: nt(&[
            (":has_father", "rdf:type", "owl:ObjectProperty"),
            (":has_father", "rdf:type", "owl:FunctionalProperty"),
        ]),
    }
}

pub fn transitive_listing() -> Listing {
    Listing {
        name: "transitive property",
        text: with_prefixes(
            ":is_part_of rdf:type owl:ObjectProperty ,\n                      owl:TransitiveProperty ;\n             rdfs:domain :Region ;\n             rdfs:range :Region .\n",
        ),
        expected: nt(&[
            (":is_part_of", "rdf:type", "owl:ObjectProperty"),
            (":is_part_of", "rdf:type", "owl:TransitiveProperty"),
            (":is_part_of", "rdfs:domain", ":Region"),
            (":is_part_of", "rdfs:range", ":Region"),
        ]),
    }
}

pub fn carnivore_listing() -> Listing {
    Listing {
        name: "existential restriction",
        text: with_prefixes(
            ":Carnivore rdf:type owl:Class ;\n       rdfs:subClassOf [ rdf:type owl:Restriction ;\n                        owl:onProperty :eats ;\n                        owl:someValuesFrom :Meat\n                      ] .\n",
        ),
        expected: nt(&[
            (":Carnivore", "rdf:type", "owl:Class"),
            ("_:b0", "rdf:type", "owl:Restriction"),
            ("_:b0", "owl:onProperty", ":eats"),
            ("_:b0", "owl:someValuesFrom", ":Meat"),
            (":Carnivore", "rdfs:subClassOf", "_:b0"),
        ]),
    }
}

pub fn boy_listing() -> Listing {
    Listing {
        name: "intersection",
        text: with_prefixes(
            ":Boy rdf:type owl:Class ;\n\t     owl:equivalentClass [ rdf:type owl:Class ;\n\t\t\t                   owl:intersectionOf ( :Child  :Man )\n\t\t\t                 ] .\n",
        ),
        expected: nt(&[
            (":Boy", "rdf:type", "owl:Class"),
            ("_:b0", "rdf:type", "owl:Class"),
            ("_:b1", "rdf:first", ":Child"),
            ("_:b1", "rdf:rest", "_:b2"),
            ("_:b2", "rdf:first", ":Man"),
            ("_:b2", "rdf:rest", "rdf:nil"),
            ("_:b0", "owl:intersectionOf", "_:b1"),
            (":Boy", "owl:equivalentClass", "_:b0"),
        ]),
    }
}

pub fn listings() -> Vec<Listing> {
    vec![
        inverse_listing(),
        functional_listing(),
        transitive_listing(),
        carnivore_listing(),
        boy_listing(),
    ]
}

pub const PURCHASES_CSV: &str = "\
Buyer,Seller,Product,Number of pieces
Marcin Kowalski,Shop1,Natural yoghurt,5
Aleksandra Nowak,Shop2,Butter,2
";

pub const PURCHASES_SPEC: &str = "\
prefix.edu = http://example.edu#
class = edu:Purchase
column.Buyer = edu:buyer
column.Seller = edu:seller
column.Product = edu:product
column.Number of pieces = edu:number_of_pieces
";

/// The five triples expected for purchase `row` (1-based) of
/// [`PURCHASES_CSV`].
pub fn purchase_triples(row: usize) -> Vec<Triple> {
    let (buyer, seller, product, pieces) = match row {
        1 => ("MarcinKowalski", "Shop1", "NaturalYoghurt", "5"),
        2 => ("AleksandraNowak", "Shop2", "Butter", "2"),
        _ => panic!("no purchase row {row}"),
    };
    let p = edu(&format!("purchase{row}"));
    vec![
        Triple::new(p.clone(), Term::iri(rdf::TYPE), edu("Purchase")),
        Triple::new(p.clone(), edu("product"), edu(product)),
        Triple::new(p.clone(), edu("number_of_pieces"), Term::literal(pieces)),
        Triple::new(p.clone(), edu("buyer"), edu(buyer)),
        Triple::new(p, edu("seller"), edu(seller)),
    ]
}

/// Products and their allergens.
pub fn allergens() -> String {
    with_prefixes(
        ":WheatFlour rdf:type :Product ; :contains_allergen :gluten .\n\
         :DarkSoySauce rdf:type :Product ; :contains_allergen :soya .\n\
         :Sausages rdf:type :Product ; :contains_allergen :soya , :gluten .\n\
         :Cream rdf:type :Product ; :contains_allergen :milk .\n\
         :Peanuts rdf:type :Product ; :contains_allergen :nuts .\n",
    )
}

pub const GLUTEN_FREE_CLOSED: &str = "\
PREFIX : <http://example.edu#>
ASSUME closed
SELECT ?p
?p a :Product .
NOT { ?p :contains_allergen :gluten . }
";

pub const GLUTEN_FREE_OPEN: &str = "\
PREFIX : <http://example.edu#>
ASSUME open
SELECT ?p
?p a :Product .
NOT { ?p :contains_allergen :gluten . }
";

/// Ten frames: two small hierarchies, individuals of each, a default
/// overridden by a defined value and a constrained slot.
pub const FRAMES: &str = "\
(Food
  <:edible yes>)
(Vegetables
  <:IS-A Food>
  <:taste bland | default>)
(Carrots
  <:IS-A Vegetables>
  <:colour orange | one-of orange purple>
  <:taste sweet | default>)
(carrot1
  <:INSTANCE-OF Carrots>
  <:taste earthy>)
(carrot2
  <:INSTANCE-OF Carrots>
  <:colour purple>)
(Locality
  <:kind settlement | default>)
(City
  <:IS-A Locality>
  <:country | type Country>)
(Country
  <:IS-A Locality>)
(poland
  <:INSTANCE-OF Country>)
(warsaw
  <:INSTANCE-OF City>
  <:country poland>
  <:voivodeship mazowieckie>
  <:population 1 860 281>)
";

pub const FRAMES_NS: &str = "http://example.edu/frames#";

/// A region with two cities of three districts each.
type Region = (&'static str, [(&'static str, [&'static str; 3]); 2]);

/// A containment hierarchy: one country, two regions, two cities per region
/// and three districts per city. `is_part_of` is transitively closed;
/// `part_of_direct` and `has_part` hold the direct edges in both directions.
///
/// Returns `(train, held_out)`; every held-out entity also occurs in
/// training.
pub fn containment() -> (Graph, Vec<Triple>) {
    let e = |l: &str| Term::iri(format!("{GEO}{l}"));
    let part_of = e("is_part_of");
    let has_part = e("has_part");
    let direct = e("part_of_direct");

    let tree: [Region; 2] = [
        (
            "Mazowieckie",
            [("Warsaw", ["Ursynów", "Mokotów", "Wola"]), ("Radom", ["Zamłynie", "Ustronie", "Glinice"])],
        ),
        (
            "Malopolskie",
            [("Krakow", ["Podgórze", "Nowa_Huta", "Krowodrza"]), ("Tarnow", ["Mościce", "Grabówka", "Klikowa"])],
        ),
    ];
    let mut parent: Vec<(&str, &str)> = Vec::new();
    for (region, cities) in &tree {
        parent.push((region, "Poland"));
        for (city, districts) in cities {
            parent.push((city, region));
            parent.extend(districts.iter().map(|d| (*d, *city)));
        }
    }
    let up = |x: &str| parent.iter().find(|(c, _)| *c == x).map(|(_, p)| *p);

    let mut triples = Vec::new();
    for &(child, p) in &parent {
        triples.push(Triple::new(e(p), has_part.clone(), e(child)));
        triples.push(Triple::new(e(child), direct.clone(), e(p)));
        let mut anc = Some(p);
        while let Some(a) = anc {
            triples.push(Triple::new(e(child), part_of.clone(), e(a)));
            anc = up(a);
        }
    }
    triples.sort();

    // Every seventh triple is held out until ten are taken.
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (i, t) in triples.into_iter().enumerate() {
        if i % 7 == 3 && test.len() < 10 {
            test.push(t);
        } else {
            train.push(t);
        }
    }
    (Graph::from_triples(train).expect("fixture"), test)
}

pub const GEO: &str = "http://example.org/geo#";

pub fn geo(local: &str) -> Term {
    Term::iri(format!("{GEO}{local}"))
}
