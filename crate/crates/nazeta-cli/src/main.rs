//! nazeta: evaluate rank-two non-abelian zetas, certify critical-line zeros,
//! inspect lattice invariants, and run the verification suites.
//!
//! Every invocation prints one structured JSON document on stdout with a
//! stable key order and decimal-string numerics; timing goes to stderr so
//! identical inputs give byte-identical stdout.

use clap::{Parser, Subcommand};
use nazeta::hpnum::{cplx, real, Cplx, Prec, Real};
use nazeta::lattice::{self, LatticeK};
use nazeta::zetalib::{FieldDescriptor, Ideal};
use nazeta::{rank2, zeros, zetalib};
use std::io::Write;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "nazeta", version, about = "rank-two non-abelian zeta functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for scans and quadrature (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a zeta-type function at a point
    Eval {
        /// zeta | xi | dedekind | rank2 | rank2T | eisenstein
        #[arg(long)]
        kind: String,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Evaluation point "re,im"
        #[arg(long)]
        s: String,
        /// Truncation parameter for rank2T
        #[arg(long = "T")]
        t: Option<f64>,
        /// Upper half-plane point "re,im" for eisenstein
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        digits: Option<u32>,
        /// Also report the raw discriminant-power normalization (differs
        /// from the symmetric completion by a K-dependent constant)
        #[arg(long, default_value_t = false)]
        raw_normalization: bool,
    },
    /// Scan the critical line and list refined zero ordinates (CSV)
    Zeros {
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        tmax: f64,
        /// Truncation parameter (Q only for T != 1)
        #[arg(long = "T", default_value_t = 1.0)]
        t: f64,
        #[arg(long)]
        digits: Option<u32>,
        /// CSV output path for the zero list
        #[arg(long)]
        out: Option<String>,
    },
    /// Certify a critical-strip box by the argument principle
    Certify {
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        tmax: f64,
        /// Truncation parameter (Q only for T != 1)
        #[arg(long = "T", default_value_t = 1.0)]
        t: f64,
        #[arg(long)]
        digits: Option<u32>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Lattice invariants: h0 | h1 | deg | stable | cusps
    Lattice {
        subaction: String,
        #[arg(long, default_value = "Q")]
        field: String,
        /// "x,y" over Q (z = x + iy); "zre,zim,r" over imaginary quadratic
        #[arg(long)]
        tau: String,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long)]
        digits: Option<u32>,
    },
    /// Run the verification suites
    Verify {
        /// identities | zeros | lattice | eisenstein | all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        digits: Option<u32>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn resolve_digits(flag: Option<u32>) -> u32 {
    flag.or_else(|| {
        std::env::var("NAZETA_DIGITS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(nazeta::hpnum::DEFAULT_DIGITS)
}

/// Decimal string of a Real at the working precision (no binary round-trip).
fn dec(x: &Real, digits: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let s = x.to_string_radix(10, Some(digits as usize + 2));
    s
}

fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn cplx_json(v: &Cplx, digits: u32) -> String {
    format!(
        "{{\"re\": {}, \"im\": {}}}",
        json_str(&dec(&v.real().clone(), digits)),
        json_str(&dec(&v.imag().clone(), digits))
    )
}

/// Parse "re,im" as decimal strings straight into working-precision floats
/// (no f64 round-trip).
fn parse_pair(s: &str, p: Prec) -> Result<(Real, Real), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected \"re,im\", got {s}"));
    }
    let re = parse_real(parts[0], p)?;
    let im = parse_real(parts[1], p)?;
    Ok((re, im))
}

fn parse_real(s: &str, p: Prec) -> Result<Real, String> {
    let parsed = rug::Float::parse(s.trim()).map_err(|e| format!("bad number {s}: {e}"))?;
    Ok(Real::with_val(p.bits(), parsed))
}

fn domain_err(e: nazeta::Error) -> i32 {
    eprintln!("error: {e}");
    3
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    let started = Instant::now();
    let code = run(cli.command);
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    std::process::exit(code);
}

fn run(cmd: Command) -> i32 {
    match cmd {
        Command::Eval {
            kind,
            field,
            s,
            t,
            z,
            digits,
            raw_normalization,
        } => cmd_eval(&kind, &field, &s, t, z.as_deref(), digits, raw_normalization),
        Command::Zeros {
            field,
            tmax,
            t,
            digits,
            out,
        } => cmd_zeros(&field, tmax, t, digits, out.as_deref(), false),
        Command::Certify {
            field,
            tmax,
            t,
            digits,
            out,
        } => cmd_zeros(&field, tmax, t, digits, out.as_deref(), true),
        Command::Lattice {
            subaction,
            field,
            tau,
            scale,
            digits,
        } => cmd_lattice(&subaction, &field, &tau, scale, digits),
        Command::Verify {
            suite,
            digits,
            seed,
        } => cmd_verify(&suite, digits, seed),
    }
}

fn cmd_eval(
    kind: &str,
    field_label: &str,
    s_spec: &str,
    t_param: Option<f64>,
    z_spec: Option<&str>,
    digits: Option<u32>,
    raw_normalization: bool,
) -> i32 {
    let digits = resolve_digits(digits);
    let p = Prec::new(digits);
    let field = match FieldDescriptor::from_label(field_label) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let (sre, sim) = match parse_pair(s_spec, p) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let s = cplx(p, sre, sim);

    let value = match kind {
        "zeta" => zetalib::riemann_zeta(&s, p),
        "xi" => zetalib::completed_xi(&s, p),
        "dedekind" => zetalib::dedekind_zeta(&s, &field, p),
        "rank2" => rank2::rank2_zeta(&s, &field, p),
        "rank2T" => {
            let tv = t_param.unwrap_or(1.0);
            rank2::rank2_zeta_t(&s, &real(p, tv), p)
        }
        "eisenstein" => {
            let zs = match z_spec {
                Some(zs) => zs,
                None => {
                    eprintln!("error: --kind eisenstein needs --z re,im");
                    return 2;
                }
            };
            match parse_pair(zs, p) {
                Ok((zr, zi)) => nazeta::eisenstein::eisenstein_fourier(&cplx(p, zr, zi), &s, p),
                Err(e) => {
                    eprintln!("error: {e}");
                    return 2;
                }
            }
        }
        other => {
            eprintln!("error: unknown kind {other}");
            return 2;
        }
    };
    let value = match value {
        Ok(v) => v,
        Err(e) => return domain_err(e),
    };

    let mut extra = String::new();
    if raw_normalization {
        match rank2::rank2_zeta_raw_normalization(&s, &field, p) {
            Ok(v) => extra = format!(", \"raw_normalization\": {}", cplx_json(&v, digits)),
            Err(e) => return domain_err(e),
        }
    }
    let t_json = match t_param {
        Some(tv) => format!("{tv}"),
        None => "null".into(),
    };
    println!(
        "{{\"schema\": 1, \"command\": \"eval\", \"kind\": {}, \"field\": {}, \"s\": {}, \"T\": {}, \"digits\": {}, \"value\": {}{}}}",
        json_str(kind),
        json_str(field_label),
        cplx_json(&s, digits),
        t_json,
        digits,
        cplx_json(&value, digits),
        extra
    );
    0
}

fn cmd_zeros(
    field_label: &str,
    tmax: f64,
    t_param: f64,
    digits: Option<u32>,
    out: Option<&str>,
    certify: bool,
) -> i32 {
    let digits = resolve_digits(digits);
    let p = Prec::new(digits);
    let field = match FieldDescriptor::from_label(field_label) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let report = match zeros::certify_box(&field, t_param, 0.05, tmax, 0.05, p) {
        Ok(r) => r,
        Err(e) => return domain_err(e),
    };

    // CSV zero list
    let csv = {
        let mut s = String::from("t,width\n");
        for (t, w) in &report.on_line_zeros {
            s.push_str(&format!("{},{}\n", dec(t, digits), dec(w, 8)));
        }
        s
    };
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, &csv) {
            eprintln!("error: cannot write {path}: {e}");
            return 3;
        }
    }

    let zeros_json: Vec<String> = report
        .on_line_zeros
        .iter()
        .map(|(t, w)| {
            format!(
                "{{\"t\": {}, \"width\": {}}}",
                json_str(&dec(t, digits)),
                json_str(&dec(w, 8))
            )
        })
        .collect();
    println!(
        "{{\"schema\": 1, \"command\": {}, \"field\": {}, \"T\": {}, \"rect\": {{\"sigma0\": {}, \"sigma1\": {}, \"t0\": {}, \"t1\": {}}}, \"digits\": {}, \"on_line_zeros\": [{}], \"contour_count\": {}, \"pole_correction\": {}, \"certified\": {}, \"note\": {}}}",
        json_str(if certify { "certify" } else { "zeros" }),
        json_str(field_label),
        t_param,
        report.rect.sigma0,
        report.rect.sigma1,
        report.rect.t0,
        report.rect.t1,
        digits,
        zeros_json.join(", "),
        report.contour_count,
        report.pole_correction,
        report.certified,
        json_str(&report.note),
    );
    if !report.certified {
        eprintln!(
            "certification failed: contour {} + poles {} vs {} on-line zeros",
            report.contour_count,
            report.pole_correction,
            report.on_line_zeros.len()
        );
        return 4;
    }
    let _ = certify;
    0
}

fn cmd_lattice(
    subaction: &str,
    field_label: &str,
    tau_spec: &str,
    scale: f64,
    digits: Option<u32>,
) -> i32 {
    let digits = resolve_digits(digits);
    let p = Prec::new(digits);
    let field = match FieldDescriptor::from_label(field_label) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let parts: Vec<Real> = match tau_spec
        .split(',')
        .map(|t| parse_real(t, p))
        .collect::<Result<Vec<Real>, _>>()
    {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: bad --tau: {e}");
            return 2;
        }
    };
    let lattice_val = if field.is_rationals() {
        if parts.len() != 2 {
            eprintln!("error: over Q, --tau wants \"x,y\"");
            return 2;
        }
        LatticeK::rational(
            &Cplx::with_val(p.bits(), (parts[0].clone(), parts[1].clone())),
            &real(p, scale),
            p,
        )
    } else if field.is_imag_quadratic() {
        if parts.len() != 3 {
            eprintln!("error: over an imaginary quadratic field, --tau wants \"zre,zim,r\"");
            return 2;
        }
        LatticeK::imag_quadratic(
            &field,
            Ideal::ring(),
            &Cplx::with_val(p.bits(), (parts[0].clone(), parts[1].clone())),
            &parts[2],
            &real(p, scale),
            p,
        )
    } else {
        eprintln!("error: lattice operations need Q or an imaginary quadratic field");
        return 3;
    };
    let l = match lattice_val {
        Ok(l) => l,
        Err(e) => return domain_err(e),
    };

    let payload = match subaction {
        "h0" => match lattice::h0(&l, p) {
            Ok(v) => format!("\"h0\": {}", json_str(&dec(&v, digits))),
            Err(e) => return domain_err(e),
        },
        "h1" => match lattice::h1(&l, p) {
            Ok(v) => format!("\"h1\": {}", json_str(&dec(&v, digits))),
            Err(e) => return domain_err(e),
        },
        "deg" => {
            let v = lattice::degree(&l, p);
            format!("\"deg\": {}", json_str(&dec(&v, digits)))
        }
        "stable" => {
            let by_cusps = match lattice::is_semistable_k(&l, p) {
                Ok(v) => v,
                Err(e) => return domain_err(e),
            };
            let by_shortest = if field.is_rationals() {
                match &l.tau {
                    lattice::Tau::Plane(z) => match lattice::is_semistable_q(z, p) {
                        Ok(v) => v,
                        Err(e) => return domain_err(e),
                    },
                    _ => unreachable!(),
                }
            } else {
                match lattice::hayashi_check(&l, &real(p, 8), p) {
                    Ok(v) => v,
                    Err(e) => return domain_err(e),
                }
            };
            if by_cusps != by_shortest {
                eprintln!("error: stability criteria disagree (distance {by_cusps} vs direct {by_shortest})");
                return 3;
            }
            format!("\"semistable_distance\": {by_cusps}, \"semistable_direct\": {by_shortest}")
        }
        "cusps" => {
            let cusps = match lattice::enumerate_candidate_cusps(&l, &real(p, 1.0), p) {
                Ok(v) => v,
                Err(e) => return domain_err(e),
            };
            let items: Vec<String> = cusps
                .iter()
                .map(|c| {
                    let mu = lattice::mu_distance(c, &l, p)
                        .map(|m| dec(&m, digits))
                        .unwrap_or_else(|_| "nan".into());
                    format!(
                        "{{\"alpha\": [{}, {}], \"beta\": [{}, {}], \"norm_b\": {}, \"mu\": {}}}",
                        c.alpha.u, c.alpha.v, c.beta.u, c.beta.v, c.norm_b, json_str(&mu)
                    )
                })
                .collect();
            format!("\"cusps\": [{}]", items.join(", "))
        }
        other => {
            eprintln!("error: unknown lattice subaction {other}");
            return 2;
        }
    };
    println!(
        "{{\"schema\": 1, \"command\": \"lattice\", \"subaction\": {}, \"field\": {}, \"tau\": {}, \"scale\": {}, \"digits\": {}, {}}}",
        json_str(subaction),
        json_str(field_label),
        json_str(tau_spec),
        scale,
        digits,
        payload
    );
    0
}

fn cmd_verify(suite: &str, digits: Option<u32>, seed: u64) -> i32 {
    let digits = resolve_digits(digits);
    let checks = match nazeta::verify::run_suite(suite, seed, digits) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let all_pass = nazeta::verify::all_passed(&checks);
    let first_failure = checks.iter().find(|c| !c.pass);

    let items: Vec<String> = checks
        .iter()
        .map(|c| {
            format!(
                "{{\"name\": {}, \"pass\": {}, \"detail\": {}}}",
                json_str(&c.name),
                c.pass,
                json_str(&c.detail)
            )
        })
        .collect();
    let failure_json = match first_failure {
        Some(c) => format!(
            "{{\"name\": {}, \"detail\": {}}}",
            json_str(&c.name),
            json_str(&c.detail)
        ),
        None => "null".into(),
    };
    let mut stdout = std::io::stdout().lock();
    writeln!(
        stdout,
        "{{\"schema\": 1, \"command\": \"verify\", \"suite\": {}, \"seed\": {}, \"digits\": {}, \"checks\": [{}], \"all_pass\": {}, \"first_failure\": {}}}",
        json_str(suite),
        seed,
        digits,
        items.join(", "),
        all_pass,
        failure_json
    )
    .ok();
    if all_pass {
        0
    } else {
        1
    }
}
