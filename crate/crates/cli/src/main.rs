//! `pointfree`: command-line access to finite pcd-lattices, strong
//! inclusions and round-ideal compactifications.
//!
//! Exit status: 0 on success, 1 when the property asked about is false (the
//! counterexample goes to standard output), 2 on any other error.

mod inputs;

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use pointfree::check::{self, Suite};
use pointfree::compactify::{compare, extension_map, GammaCompactification};
use pointfree::framemap::ContinuousMap;
use pointfree::io::{self, Document};
use pointfree::lattice::{Basis, PcdLattice};
use pointfree::relation::{
    check_strong_inclusion, interpolative_core_on_basis, least_strong_inclusion, strong_regularity_failure,
};
use pointfree::{Error, Result};

use inputs::Inputs;

#[derive(Parser)]
#[command(name = "pointfree", version, about = "Finite pointfree topology: strong inclusions and compactifications")]
struct Cli {
    /// Also run the invariant suite on every structure the command builds.
    #[arg(long, global = true)]
    check_all: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a lattice document describes a pcd-lattice.
    Validate { lattice: String },
    /// Print a derived relation of a lattice.
    Derive {
        lattice: String,
        what: Derived,
        /// Whitespace-separated labels restricting `core` to a basis.
        #[arg(long)]
        basis: Option<String>,
    },
    /// The least strong inclusion containing a seed relation.
    Si {
        lattice: String,
        #[arg(long)]
        seed_rel: String,
        /// Whitespace-separated labels of the carrier (default: all elements).
        #[arg(long)]
        carrier: Option<String>,
    },
    /// Build γL from a strongly regular basis and maps into compact regular frames.
    Compactify {
        lattice: String,
        #[arg(long, num_args = 1..)]
        maps: Vec<String>,
        /// Whitespace-separated basis labels (default: all elements).
        #[arg(long)]
        basis: Option<String>,
    },
    /// Extend a map along the compactification it belongs to.
    Extend {
        lattice: String,
        map: String,
        #[arg(long)]
        through: String,
    },
    /// Order two compactifications of the same lattice.
    Compare { first: String, second: String },
    /// Print the downset lattice of a seeded random poset.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        size: usize,
        /// Print the poset instead of the lattice.
        #[arg(long)]
        poset: bool,
    },
    /// Hasse diagram in DOT; for a compactification, its frame with `B_d` highlighted.
    Dot { input: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Derived {
    Wellinside,
    Pseudo,
    Core,
}

/// A property failed; the text is the counterexample.
struct False(String);

enum Failure {
    False(False),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(r) => Failure::False(False(format!("not a pcd-lattice: {r}"))),
            Error::Precondition(p) => Failure::False(False(p.to_string())),
            e => Failure::Error(e),
        }
    }
}

type Out = std::result::Result<(), Failure>;

struct Run {
    inputs: Inputs,
    check_all: bool,
    suite: Suite,
}

fn labels(l: &PcdLattice, s: &str) -> Result<Basis> {
    let elems = s
        .split_whitespace()
        .map(|x| l.index_of(x).ok_or_else(|| Error::Malformed(format!("label {x} is not an element"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Basis::from_elems(l.len(), elems))
}

fn print_docs(docs: impl IntoIterator<Item = Document>) {
    let docs: Vec<Document> = docs.into_iter().collect();
    print!("{}", io::render_all(&docs));
}

fn names(l: &PcdLattice, b: &Basis) -> String {
    b.iter().map(|x| l.name(x)).collect::<Vec<_>>().join(" ")
}

impl Run {
    fn lattice(&mut self, r: &str) -> Result<(String, Arc<PcdLattice>)> {
        let name = self.inputs.resolve(r, "lattice")?;
        let l = self.inputs.bundle().lattice(&name)?;
        if self.check_all {
            self.suite.extend(check::check_lattice(&l));
        }
        Ok((name, l))
    }

    fn map(&mut self, r: &str) -> Result<(String, ContinuousMap)> {
        let name = self.inputs.resolve(r, "map")?;
        let f = self.inputs.bundle().map(&name)?;
        if self.check_all {
            self.suite.extend(check::check_map(&f));
        }
        Ok((name, f))
    }

    fn gamma(&mut self, name: &str, l: Arc<PcdLattice>, basis: &Basis, maps: &[ContinuousMap]) -> Result<GammaCompactification> {
        if let Some(x) = strong_regularity_failure(&l, basis) {
            return Err(Error::Precondition(pointfree::Precondition {
                what: format!("basis of {name} is not strongly regular at {}", l.name(x)),
                witness: vec![x],
            }));
        }
        let g = pointfree::compactify::gamma_compactification(l, basis, maps)?;
        if self.check_all {
            self.suite.extend(check::check_gamma(&g, maps));
        }
        Ok(g)
    }

    fn compactification(&mut self, r: &str) -> Result<(String, GammaCompactification)> {
        let name = self.inputs.resolve(r, "compactification")?;
        let (l, b, maps) = self.inputs.bundle().compactification_parts(&name)?;
        if self.check_all {
            self.suite.extend(check::check_lattice(&l));
            for f in &maps {
                self.suite.extend(check::check_map(f));
            }
        }
        let g = self.gamma(&name, l, &b, &maps)?;
        Ok((name, g))
    }

    fn run(&mut self, cmd: Command) -> Out {
        match cmd {
            Command::Validate { lattice } => {
                let (name, l) = self.lattice(&lattice)?;
                println!("{name}: pcd-lattice with {} elements", l.len());
                println!("boolean: {}", l.is_boolean());
                match l.regularity_failure(&l.full_basis()) {
                    None => println!("regular: true"),
                    Some(x) => println!("regular: false (at {})", l.name(x)),
                }
            }
            Command::Derive { lattice, what, basis } => {
                let (name, l) = self.lattice(&lattice)?;
                let doc = match what {
                    Derived::Wellinside => {
                        io::relation_document(&format!("{name}.wellinside"), &name, &l, &l.well_inside_relation())
                    }
                    Derived::Pseudo => {
                        let pairs = l.elements().map(|x| (x, l.pseudocomplement(x)));
                        let r = pointfree::relation::Relation::from_pairs(l.len(), pairs);
                        io::relation_document(&format!("{name}.pseudo"), &name, &l, &r)
                    }
                    Derived::Core => {
                        let b = match &basis {
                            Some(s) => labels(&l, s)?,
                            None => l.full_basis(),
                        };
                        let core = interpolative_core_on_basis(&l, &b);
                        match strong_regularity_failure(&l, &b) {
                            None => println!("# strongly regular basis"),
                            Some(x) => println!("# not strongly regular at {}", l.name(x)),
                        }
                        io::relation_document(&format!("{name}.core"), &name, &l, &core)
                    }
                };
                print_docs([Document::Relation(doc)]);
            }
            Command::Si {
                lattice,
                seed_rel,
                carrier,
            } => {
                let (name, l) = self.lattice(&lattice)?;
                let rel = self.inputs.resolve(&seed_rel, "relation")?;
                let (rl, seed) = self.inputs.bundle().relation(&rel)?;
                if *rl != *l {
                    return Err(Error::Mismatch(format!("{rel} is not a relation on {name}")).into());
                }
                let p = match &carrier {
                    Some(s) => labels(&l, s)?,
                    None => l.full_basis(),
                };
                let si = least_strong_inclusion(&l, &p, &seed)?;
                let report = check_strong_inclusion(&l, &si, &p)?;
                println!("# carrier: {}", names(&l, &p));
                print_docs([Document::Relation(io::relation_document(&format!("{rel}.si"), &name, &l, &si))]);
                if !report.is_strong_inclusion() {
                    return Err(Error::Internal(format!("generated relation fails:\n{report}")).into());
                }
            }
            Command::Compactify { lattice, maps, basis } => {
                self.inputs.preload(maps.iter().map(String::as_str)).map_err(Failure::from)?;
                let (name, l) = self.lattice(&lattice)?;
                let b = match &basis {
                    Some(s) => labels(&l, s)?,
                    None => l.full_basis(),
                };
                let mut fs = Vec::new();
                for m in &maps {
                    fs.push(self.map(m)?);
                }
                let only: Vec<ContinuousMap> = fs.iter().map(|(_, f)| f.clone()).collect();
                let g = self.gamma(&name, l.clone(), &b, &only)?;
                print_gamma(&name, &l, &g, &fs);
            }
            Command::Extend { lattice, map, through } => {
                self.inputs
                    .preload([lattice.as_str(), map.as_str(), through.as_str()])
                    .map_err(Failure::from)?;
                let (lname, l) = self.lattice(&lattice)?;
                let (mname, f) = self.map(&map)?;
                let (kname, g) = self.compactification(&through)?;
                if **f.source() != *l || **g.compactification.source() != *l {
                    return Err(Error::Mismatch(format!("map and compactification must start at {lname}")).into());
                }
                let frame = format!("{kname}.frame");
                let target = match self.inputs.bundle().get(&mname) {
                    Some(Document::Map(d)) => d.target.clone(),
                    _ => unreachable!("resolved above"),
                };
                let ext = extension_map(&g.frame, &f, &f.target().full_basis())?;
                println!("# extension of {mname} through {kname}; composing with {kname}.mu gives {mname}");
                print_docs([
                    Document::Lattice(io::lattice_document(&frame, g.frame.lattice())),
                    Document::Lattice(io::lattice_document(&target, f.target())),
                    Document::Map(io::map_document(&format!("{mname}.ext"), &frame, &target, &ext)),
                ]);
            }
            Command::Compare { first, second } => {
                self.inputs
                    .preload([first.as_str(), second.as_str()])
                    .map_err(Failure::from)?;
                let (n1, k1) = self.compactification(&first)?;
                let (n2, k2) = self.compactification(&second)?;
                let c = compare(&k1.compactification, &k2.compactification)?;
                println!("{n1} {} {n2}", c.verdict);
                let f1 = format!("{n1}.frame");
                let f2 = if n1 == n2 { format!("{n2}.frame2") } else { format!("{n2}.frame") };
                let mut docs = vec![
                    Document::Lattice(io::lattice_document(&f1, k1.frame.lattice())),
                    Document::Lattice(io::lattice_document(&f2, k2.frame.lattice())),
                ];
                let h12 = format!("{n1}.through.{n2}");
                let mut h21 = format!("{n2}.through.{n1}");
                if h21 == h12 {
                    h21.push_str(".2");
                }
                if let Some(h) = &c.k1_through_k2 {
                    docs.push(Document::Map(io::map_document(&h12, &f2, &f1, h)));
                }
                if let Some(h) = &c.k2_through_k1 {
                    docs.push(Document::Map(io::map_document(&h21, &f1, &f2, h)));
                }
                print_docs(docs);
            }
            Command::Gen { seed, size, poset } => {
                let name = format!("gen-{seed}-{size}");
                let d = io::generate_downsets(seed, size)?;
                let doc = if poset {
                    io::poset_document(&name, &d.poset)
                } else {
                    io::lattice_document(&name, &d.lattice)
                };
                if self.check_all {
                    self.suite.extend(check::check_lattice(&Arc::new(d.lattice)));
                }
                print_docs([Document::Lattice(doc)]);
            }
            Command::Dot { input } => match self.inputs.resolve_any(&input)? {
                Document::Lattice(d) => {
                    let l = io::build_lattice(&d)?;
                    if self.check_all {
                        self.suite.extend(check::check_lattice(&Arc::new(l.clone())));
                    }
                    print!("{}", io::export_dot(&d.name, &l, None));
                }
                Document::Compactification(d) => {
                    let (_, g) = self.compactification(&d.name)?;
                    print!("{}", io::export_frame_dot(&d.name, &g.frame));
                }
                other => {
                    return Err(Error::Malformed(format!("cannot draw a {} document", other.kind())).into());
                }
            },
        }
        Ok(())
    }
}

fn print_gamma(name: &str, l: &PcdLattice, g: &GammaCompactification, maps: &[(String, ContinuousMap)]) {
    let frame = format!("{name}.gamma");
    let fr = &g.frame;
    println!("# carrier: {}", names(l, fr.carrier()));
    println!("# strong inclusion: {} pairs", fr.inclusion().relation().len());
    println!("# round ideals: {}", fr.ideals().len());
    println!("# basis B_d: {}", names(fr.lattice(), fr.basis()));
    let mut docs = vec![
        Document::Lattice(io::lattice_document(name, l)),
        Document::Lattice(io::lattice_document(&frame, fr.lattice())),
        Document::Map(io::map_document(&format!("{name}.mu"), name, &frame, g.compactification.map())),
    ];
    for ((mname, f), ext) in maps.iter().zip(&g.extensions) {
        let target = format!("{mname}.target");
        docs.push(Document::Lattice(io::lattice_document(&target, f.target())));
        docs.push(Document::Map(io::map_document(&format!("{mname}.ext"), &frame, &target, ext)));
    }
    print_docs(docs);
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut run = Run {
        inputs: Inputs::default(),
        check_all: cli.check_all,
        suite: Suite::default(),
    };
    let result = run.run(cli.command);
    let mut code = match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::False(False(why))) => {
            println!("false: {why}");
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.check_all {
        print!("{}", run.suite);
        if !run.suite.passed() {
            code = ExitCode::from(1);
        }
    }
    code
}
