//! Ground states and near-collision relative equilibria.

use vortex_model::{fmt_f64, FullConfiguration, RingSystem};

use crate::closed::{antiprism8_height, bipyramid10_height, golden, prism9_height};
use crate::orient::ring_form;
use crate::CatalogError;

#[derive(Clone, Debug)]
pub struct FixtureEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub omega: f64,
    pub full: FullConfiguration,
    /// Ring systems about each available symmetry axis, by increasing `m`.
    pub forms: Vec<RingSystem>,
    /// Stated coordinate tolerance for decimal entries; `None` for closed forms.
    pub tolerance: Option<f64>,
    pub provenance: &'static str,
}

impl FixtureEntry {
    pub fn n_vortices(&self) -> usize {
        self.full.len()
    }

    pub fn labels(&self) -> Vec<(usize, usize, usize)> {
        self.forms.iter().map(|f| (f.m(), f.n(), f.p())).collect()
    }

    /// The ring system with polygon order `m`.
    pub fn form(&self, m: usize) -> Result<&RingSystem, CatalogError> {
        self.forms
            .iter()
            .find(|f| f.m() == m)
            .ok_or_else(|| CatalogError::NotFound(format!("{} has no Z_{m} form", self.name)))
    }

    /// The form with the largest `m`.
    pub fn primary(&self) -> &RingSystem {
        self.forms.last().expect("fixture without forms")
    }

    /// Configuration JSON of the chosen form plus name, omega and provenance.
    pub fn to_json(&self, form: &RingSystem) -> String {
        let body = form.to_json();
        format!(
            "{{\"name\": \"{}\", \"omega\": {}, {}, \"provenance\": \"{}\"}}",
            self.name,
            fmt_f64(self.omega),
            &body[1..body.len() - 1],
            self.provenance
        )
    }
}

pub const NAMES: [&str; 14] = [
    "antipodal",
    "triangle",
    "tetrahedron",
    "bipyramid5",
    "octahedron",
    "bipyramid7",
    "antiprism8",
    "prism9",
    "bipyramid10",
    "equilibrium11",
    "icosahedron",
    "collision10",
    "collision11",
    "collision12",
];

const E1: [f64; 3] = [1.0, 0.0, 0.0];
const E3: [f64; 3] = [0.0, 0.0, 1.0];

fn horizontal(deg: f64) -> [f64; 3] {
    let t = deg.to_radians();
    [t.cos(), t.sin(), 0.0]
}

fn unit(v: [f64; 3]) -> [f64; 3] {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / r, v[1] / r, v[2] / r]
}

fn at_height(z: f64, deg: f64) -> [f64; 3] {
    let r = (1.0 - z * z).sqrt();
    let t = deg.to_radians();
    [r * t.cos(), r * t.sin(), z]
}

fn rings(m: usize, n: usize, p: usize, u: Vec<[f64; 3]>) -> Result<RingSystem, CatalogError> {
    Ok(RingSystem::new(m, n, p, u)?)
}

struct Draft {
    description: &'static str,
    omega: f64,
    full: Vec<[f64; 3]>,
    axes: Vec<([f64; 3], usize)>,
    tolerance: Option<f64>,
    provenance: &'static str,
}

fn closed(description: &'static str, provenance: &'static str, full: Vec<[f64; 3]>, axes: Vec<([f64; 3], usize)>) -> Draft {
    Draft {
        description,
        omega: 0.0,
        full,
        axes,
        tolerance: None,
        provenance,
    }
}

fn draft(name: &str) -> Result<Draft, CatalogError> {
    let d = match name {
        "antipodal" => closed(
            "two antipodal vortices",
            "exact",
            vec![[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]],
            vec![(E3, 2)],
        ),
        "triangle" => closed(
            "equilateral triangle on the equator",
            "exact",
            rings(3, 1, 0, vec![E1])?.lift().vortices,
            vec![(E3, 3)],
        ),
        "tetrahedron" => closed(
            "regular tetrahedron",
            "exact: vertices (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1) over sqrt 3",
            [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]].map(unit).to_vec(),
            vec![(E1, 2), ([1.0, 1.0, 1.0], 3)],
        ),
        "bipyramid5" => closed(
            "triangular bipyramid",
            "exact: equatorial triangle plus both poles",
            rings(3, 1, 2, vec![E1])?.lift().vortices,
            vec![(E1, 2), (E3, 3)],
        ),
        "octahedron" => closed(
            "regular octahedron",
            "exact: vertices +-e1, +-e2, +-e3",
            vec![
                [1.0, 0.0, 0.0],
                [-1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [0.0, -1.0, 0.0],
                [0.0, 0.0, 1.0],
                [0.0, 0.0, -1.0],
            ],
            vec![([1.0, 1.0, 0.0], 2), ([1.0, 1.0, 1.0], 3), (E3, 4)],
        ),
        "bipyramid7" => closed(
            "pentagonal bipyramid",
            "exact: equatorial pentagon plus both poles",
            rings(5, 1, 2, vec![E1])?.lift().vortices,
            vec![(E1, 2), (E3, 5)],
        ),
        "antiprism8" => {
            let z: f64 = antiprism8_height();
            closed(
                "square antiprism",
                "closed form: ring heights +-sqrt((2 sqrt 58 - 13)/7), squares staggered by 45 degrees",
                rings(4, 2, 0, vec![at_height(z, 0.0), at_height(-z, 45.0)])?.lift().vortices,
                vec![(E3, 2), (E3, 4)],
            )
        }
        "prism9" => {
            let z = prism9_height().mid();
            closed(
                "triaugmented triangular prism",
                "closed form: outer heights +-sqrt(x), x the smallest positive root of 64x^4+105x^3-87x^2-45x+27",
                rings(3, 3, 0, vec![at_height(z, 0.0), at_height(0.0, 60.0), at_height(-z, 0.0)])?
                    .lift()
                    .vortices,
                vec![(horizontal(60.0), 2), (E3, 3)],
            )
        }
        "bipyramid10" => {
            let z: f64 = bipyramid10_height();
            closed(
                "gyroelongated square bipyramid",
                "closed form: ring heights +-sqrt(2 sqrt 106 - 19)/3 plus both poles",
                rings(4, 2, 2, vec![at_height(z, 0.0), at_height(-z, 45.0)])?.lift().vortices,
                vec![(horizontal(22.5), 2), (E3, 4)],
            )
        }
        "equilibrium11" => Draft {
            description: "Z_2-symmetric equilibrium with five rings and the North pole",
            omega: 0.0,
            full: rings(2, 5, 1, GENERATORS11.to_vec())?.lift().vortices,
            axes: vec![(E3, 2)],
            tolerance: Some(1e-13),
            provenance: "decimal generators, each coordinate within 1e-13",
        },
        "icosahedron" => {
            let f: f64 = golden();
            let mut v = Vec::new();
            for a in [1.0, -1.0] {
                for b in [f, -f] {
                    v.push(unit([0.0, a, b]));
                    v.push(unit([a, b, 0.0]));
                    v.push(unit([b, 0.0, a]));
                }
            }
            closed(
                "regular icosahedron",
                "exact: cyclic permutations of (0, +-1, +-golden ratio)",
                v,
                vec![(E3, 2), ([f, 0.0, 2.0 * f + 1.0], 3), ([0.0, 1.0, f], 5)],
            )
        }
        "collision10" => Draft {
            description: "relative equilibrium of 10 vortices near total collision",
            omega: 50.0,
            full: COLLISION10.to_vec(),
            axes: vec![(E3, 1)],
            tolerance: Some(4e-13),
            provenance: "decimal coordinates at omega = 50, each within 4e-13",
        },
        "collision11" => Draft {
            description: "relative equilibrium of 11 vortices near total collision",
            omega: 50.0,
            full: COLLISION11.to_vec(),
            axes: vec![(E3, 1)],
            tolerance: Some(6e-11),
            provenance: "decimal coordinates at omega = 50, each within 6e-11",
        },
        "collision12" => Draft {
            description: "Z_3-symmetric relative equilibrium of 12 vortices near total collision",
            omega: 50.0,
            full: rings(3, 4, 0, GENERATORS12.to_vec())?.lift().vortices,
            axes: vec![(E3, 3)],
            tolerance: Some(3e-13),
            provenance: "decimal generators at omega = 50, each within 3e-13",
        },
        _ => return Err(CatalogError::NotFound(name.to_string())),
    };
    Ok(d)
}

pub fn fixture(name: &str) -> Result<FixtureEntry, CatalogError> {
    let d = draft(name)?;
    let key = NAMES.iter().find(|&&n| n == name).copied().expect("drafted names are listed");
    let forms = match key {
        // Decimal generators are kept verbatim rather than re-derived.
        "equilibrium11" => vec![rings(2, 5, 1, GENERATORS11.to_vec())?],
        "collision12" => vec![rings(3, 4, 0, GENERATORS12.to_vec())?],
        _ => d.axes.iter().map(|&(a, m)| ring_form(&d.full, a, m)).collect::<Result<_, _>>()?,
    };
    Ok(FixtureEntry {
        name: key,
        description: d.description,
        omega: d.omega,
        full: FullConfiguration::new(d.full)?,
        forms,
        tolerance: d.tolerance,
        provenance: d.provenance,
    })
}

pub fn all_fixtures() -> Vec<FixtureEntry> {
    NAMES.iter().map(|n| fixture(n).expect("built-in fixture")).collect()
}

const GENERATORS11: [[f64; 3]; 5] = [
    [0.414622789752781, 0.748445554893721, 0.517607180763029],
    [-0.984889687565531, -0.009599383086507, 0.172916613347094],
    [0.514196162925374, -0.840060801883643, 0.172916613347109],
    [0.402032242619801, 0.725718055903693, -0.558304020431036],
    [0.518800630696144, -0.287404425636917, -0.805136387026196],
];

const COLLISION10: [[f64; 3]; 10] = [
    [-0.321250364476975, 0.125503906002515, 0.938641024514443],
    [-0.281614324121647, -0.177060196674640, 0.943049871005264],
    [-0.110832315744048, 0.301948550025117, 0.946859689143297],
    [0.329289157466230, 0.047176175895631, 0.943049871005264],
    [-0.056029765308738, -0.338564275556233, 0.939273600564037],
    [0.163769131776852, 0.303533686063892, 0.938641024514443],
    [0.055171327848398, -0.150307266747506, 0.987098703345485],
    [0.093915265535320, 0.096705006907256, 0.990872375504786],
    [-0.134176736522985, 0.012982250865822, 0.990872375504786],
    [0.261758623547594, -0.221917836781855, 0.939273600564037],
];

const COLLISION11: [[f64; 3]; 11] = [
    [0.139326894549961, 0.025868279023347, 0.989908505163702],
    [-0.023823734155396, -0.359048230308640, 0.933014896988857],
    [-0.233002228449082, 0.278282639870440, 0.931809387098295],
    [0.216459904805164, -0.258525569202590, 0.941440194425656],
    [0.034791923532369, 0.340414859454908, 0.939631441321124],
    [-0.275029387518199, -0.219648813034752, 0.936009206650121],
    [-0.341231039929540, 0.025576001826382, 0.939631441321107],
    [0.357646782971700, -0.039648210890842, 0.933014896988869],
    [-0.089752690493977, 0.107194750077486, 0.990178640501257],
    [-0.049951742661942, -0.132612121654087, 0.989908505163703],
    [0.264565317348943, 0.232146414838348, 0.936009206650103],
];

const GENERATORS12: [[f64; 3]; 4] = [
    [0.034887632581048, 0.136341626351998, 0.990047379682701],
    [-0.249324115175042, 0.243756694911171, 0.937240715759919],
    [0.214399606524508, 0.302490526779084, 0.928726165202127],
    [-0.042756936922558, 0.368292756396255, 0.928726165202127],
];
