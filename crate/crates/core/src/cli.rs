//! The `qloop` command line. `run` is the whole program minus process exit,
//! so tests can drive it in-process.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Rational64;

use crate::barcomp::{bar_element, bar_generator, bar_padded, jet};
use crate::crystal::{kashiwara_e, kashiwara_f};
use crate::error::{Error, Result};
use crate::lattice::{crystal_report, generate_lattice, mod_v_basis, Seed};
use crate::loopalg::{normal_order_h, straighten_rank1, CartanData, Element, Window};
use crate::pairing::PairingContext;
use crate::parse::{parse_cartan, parse_element, parse_seed};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qloop", version, about = "Exact computations in the positive half of a quantum loop algebra")]
struct Cli {
    /// Cartan configuration file (`rank N`, one `row ...` per node, `sym ...`)
    #[arg(long, global = true, value_name = "FILE")]
    cartan: Option<std::path::PathBuf>,
    /// Lowest loop degree of the window
    #[arg(long, global = true, allow_hyphen_values = true)]
    dmin: Option<i64>,
    /// Highest loop degree of the window
    #[arg(long, global = true, allow_hyphen_values = true)]
    dmax: Option<i64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Side {
    E,
    F,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Rewrite a single-node element into decreasing divided-power words
    Straighten {
        x: String,
        /// node to straighten (defaults to the only node present)
        #[arg(long)]
        node: Option<usize>,
    },
    /// Move H-letters to the right of E-letters
    NormalOrder { x: String },
    /// Truncated coproduct (needs a window)
    Coprod { x: String },
    /// Hopf pairing of two elements
    Pair { x: String, y: String },
    /// The derivation F'(i,n)
    Fprime {
        i: usize,
        #[arg(allow_hyphen_values = true)]
        n: i64,
        x: String,
    },
    /// Kashiwara operator E~ or F~ (needs a window)
    Kashiwara {
        side: Side,
        i: usize,
        #[arg(allow_hyphen_values = true)]
        n: i64,
        x: String,
    },
    /// Truncated bar-involution (needs a window)
    Bar {
        x: String,
        /// cut the tails below the window so that relations are preserved inside it
        #[arg(long)]
        padded: bool,
    },
    /// Bar image of one generator with symbolic xi letters (needs a window)
    BarGen {
        i: usize,
        #[arg(allow_hyphen_values = true)]
        l: i64,
    },
    /// Jet of an element at a rational level (needs a window)
    Jet {
        #[arg(allow_hyphen_values = true)]
        m: String,
        x: String,
    },
    /// Lattice generated by Kashiwara words (needs a window)
    Lattice {
        #[arg(long)]
        depth: usize,
        /// `1` or `b(j,[parts])`; repeatable, defaults to `1`
        #[arg(long)]
        seed: Vec<String>,
        /// print the crystal report instead of the generators
        #[arg(long)]
        report: bool,
    },
    /// Run a verification suite (needs a window)
    Verify {
        suite: String,
        /// lattice depth for the crystal suite
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

struct Session {
    cartan: CartanData,
    window: Option<Window>,
}

impl Session {
    fn ctx(&self) -> Result<PairingContext> {
        let w = self.window.ok_or_else(|| Error::Invalid("this command needs --dmin and --dmax".into()))?;
        Ok(PairingContext::new(self.cartan.clone(), w))
    }

    /// For exact commands the window only sizes caches.
    fn exact_ctx(&self) -> PairingContext {
        PairingContext::new(self.cartan.clone(), self.window.unwrap_or(Window::new(0, 0).expect("valid")))
    }

    fn elem(&self, s: &str) -> Result<Element> {
        parse_element(s, self.cartan.rank())
    }

    fn node(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.cartan.rank() {
            return Err(Error::UnknownNode { node: i, rank: self.cartan.rank() });
        }
        Ok(i - 1)
    }
}

fn parse_level(s: &str) -> Result<Rational64> {
    let bad = || Error::Invalid(format!("level '{}' is not a rational number", s));
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if b == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(a, b))
        }
        None => Ok(Rational64::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn session(cli: &Cli) -> Result<Session> {
    let path = cli.cartan.as_ref().ok_or_else(|| Error::Invalid("--cartan FILE is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Cartan(format!("{}: {}", path.display(), e)))?;
    let cartan = parse_cartan(&text)?;
    let window = match (cli.dmin, cli.dmax) {
        (Some(a), Some(b)) => Some(Window::new(a, b)?),
        (None, None) => None,
        _ => return Err(Error::Invalid("--dmin and --dmax go together".into())),
    };
    Ok(Session { cartan, window })
}

/// Output text and whether a verification failed.
fn dispatch(s: &Session, cmd: &Cmd) -> Result<(String, bool)> {
    let line = |x: String| Ok((x + "\n", false));
    match cmd {
        Cmd::Straighten { x, node } => {
            let x = s.elem(x)?;
            let node = match node {
                Some(i) => s.node(*i)?,
                None => x.max_node().unwrap_or(0),
            };
            line(straighten_rank1(&x, node, &s.cartan)?.to_string())
        }
        Cmd::NormalOrder { x } => line(normal_order_h(&s.elem(x)?, &s.cartan)?.to_string()),
        Cmd::Coprod { x } => line(s.ctx()?.coproduct(&s.elem(x)?)?.to_string()),
        Cmd::Pair { x, y } => line(s.exact_ctx().hopf_pair(&s.elem(x)?, &s.elem(y)?)?.to_string()),
        Cmd::Fprime { i, n, x } => line(s.exact_ctx().fprime(s.node(*i)?, *n, &s.elem(x)?)?.to_string()),
        Cmd::Kashiwara { side, i, n, x } => {
            let ctx = s.ctx()?;
            let (i, x) = (s.node(*i)?, s.elem(x)?);
            let y = match side {
                Side::E => kashiwara_e(&ctx, i, *n, &x)?,
                Side::F => kashiwara_f(&ctx, i, *n, &x)?,
            };
            line(y.to_string())
        }
        Cmd::Bar { x, padded } => {
            let ctx = s.ctx()?;
            let x = s.elem(x)?;
            line(if *padded { bar_padded(&ctx, &x)? } else { bar_element(&ctx, &x)? }.to_string())
        }
        Cmd::BarGen { i, l } => line(bar_generator(s.node(*i)?, *l, s.ctx()?.window.dmin).to_string()),
        Cmd::Jet { m, x } => line(jet(&s.ctx()?, &s.elem(x)?, parse_level(m)?)?.to_string()),
        Cmd::Lattice { depth, seed, report } => {
            let ctx = s.ctx()?;
            if *report {
                return Ok((crystal_report(&ctx, *depth)?.join("\n") + "\n", false));
            }
            let seeds: Vec<Seed> = if seed.is_empty() {
                vec![Seed::One]
            } else {
                seed.iter().map(|t| parse_seed(t, s.cartan.rank())).collect::<Result<_>>()?
            };
            let lat = generate_lattice(&ctx, *depth, &seeds)?;
            let mut out = String::new();
            for g in &lat.generators {
                out.push_str(&format!("GEN {} = {}\n", g.label(&lat.seeds), g.element));
            }
            out.push_str(&format!("RANK {}\n", lat.rank()));
            for t in mod_v_basis(&lat).text {
                out.push_str(&t);
                out.push('\n');
            }
            Ok((out, false))
        }
        Cmd::Verify { suite, depth } => {
            let ctx = s.ctx()?;
            let rep = if suite == "crystal" { verify::crystal(&ctx, *depth)? } else { verify::run(suite, &ctx)? };
            Ok((rep.render(), !rep.ok()))
        }
    }
}

/// Runs the program on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Cmd::Verify { suite, .. } = &cli.cmd {
        if !verify::SUITES.contains(&suite.as_str()) {
            let _ = writeln!(err, "error: unknown suite '{}' (known: {})", suite, verify::SUITES.join(", "));
            return EXIT_USAGE;
        }
    }
    let result = session(&cli).and_then(|s| dispatch(&s, &cli.cmd));
    match result {
        Ok((text, failed)) => {
            let _ = out.write_all(text.as_bytes());
            if failed {
                EXIT_FAILED
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            EXIT_USAGE
        }
    }
}
