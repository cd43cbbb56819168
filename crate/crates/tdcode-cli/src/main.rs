//! Command-line surface: encode/decode, channel simulation, bound and rate
//! computation, invariant verification suites, and a seeded Monte-Carlo
//! experiment runner with JSON reports.
//!
//! Exit codes: 0 success, 1 decode failure or invariant violation, 2 usage
//! or parameter errors.

mod config;
mod experiment;
mod verify;

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use tdcode::channel::{run_channel, ChannelSpec, EditKinds};
use tdcode::codec::CodecB;
use tdcode::confusable::{gv_lower_bound, BMode};
use tdcode::constrained::{count_irr, growth_rate};
use tdcode::seq;

#[derive(Parser)]
#[command(name = "tdcode", about = "Codec for short-duplication + edit channels", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Anchored,
    Strict,
}

impl From<Mode> for BMode {
    fn from(m: Mode) -> BMode {
        match m {
            Mode::Anchored => BMode::Anchored,
            Mode::Strict => BMode::Strict,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Encode hex data into a codeword sequence.
    Encode {
        #[arg(long, default_value_t = 4)]
        q: u8,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, value_enum, default_value_t = Mode::Anchored)]
        mode: Mode,
        /// Substring-edit locality; the production value is 17.
        #[arg(long, default_value_t = 17)]
        l: usize,
        /// Message as a hex string (use "-" to read from stdin).
        #[arg(long)]
        data: String,
        /// Auxiliary-code parameter file (key = value lines).
        #[arg(long)]
        config: Option<String>,
        #[arg(long)]
        json: bool,
        /// Render the codeword as A/C/G/T (q = 4 only).
        #[arg(long)]
        dna: bool,
    },
    /// Decode a received sequence back to hex data.
    Decode {
        #[arg(long, default_value_t = 4)]
        q: u8,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, value_enum, default_value_t = Mode::Anchored)]
        mode: Mode,
        #[arg(long, default_value_t = 17)]
        l: usize,
        /// Received sequence (use "-" to read from stdin).
        #[arg(long)]
        input: String,
        #[arg(long)]
        config: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Pass a sequence (stdin or --input) through a seeded channel.
    Channel {
        #[arg(long, default_value_t = 4)]
        q: u8,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        dups: usize,
        #[arg(long, default_value_t = 0)]
        edits: usize,
        /// Comma-separated subset of sub,ins,del.
        #[arg(long, default_value = "sub")]
        kinds: String,
        #[arg(long)]
        input: Option<String>,
    },
    /// Emit counting and rate bounds as JSON.
    Bounds {
        #[arg(long, default_value_t = 4)]
        q: u8,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        p: usize,
    },
    /// Run a named invariant suite (or "all").
    Verify {
        suite: String,
        /// Scale factor for trial counts (1 = full).
        #[arg(long, default_value_t = 1)]
        scale: usize,
    },
    /// Seeded Monte-Carlo roundtrip experiment with a JSON report.
    Experiment {
        #[arg(long, default_value_t = 4)]
        q: u8,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, value_enum, default_value_t = Mode::Anchored)]
        mode: Mode,
        #[arg(long, default_value_t = 17)]
        l: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed0: u64,
        #[arg(long, default_value_t = 10)]
        dups: usize,
        /// Edits per trial; defaults to p.
        #[arg(long)]
        edits: Option<usize>,
        #[arg(long, default_value = "sub,ins,del")]
        kinds: String,
        #[arg(long)]
        config: Option<String>,
    },
}

fn fail_usage(msg: &str) -> ! {
    eprintln!("{}", serde_json::json!({ "error": "usage", "message": msg }));
    std::process::exit(2);
}

fn fail_decode(msg: &str) -> ! {
    eprintln!("{}", serde_json::json!({ "error": "decode", "message": msg }));
    std::process::exit(1);
}

fn parse_kinds(spec: &str) -> EditKinds {
    let mut kinds =
        EditKinds { substitution: false, insertion: false, deletion: false };
    for tok in spec.split(',').filter(|t| !t.is_empty()) {
        match tok.trim() {
            "sub" => kinds.substitution = true,
            "ins" => kinds.insertion = true,
            "del" => kinds.deletion = true,
            other => fail_usage(&format!("unknown edit kind {other:?}")),
        }
    }
    kinds
}

fn read_arg_or_stdin(arg: &str) -> String {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).unwrap_or_else(|e| {
            fail_usage(&format!("cannot read stdin: {e}"));
        });
        buf
    } else {
        arg.to_string()
    }
}

fn hex_to_bits(hex: &str, capacity: usize) -> Vec<bool> {
    let hex = hex.trim();
    let mut bits = Vec::with_capacity(hex.len() * 4);
    for c in hex.chars() {
        let v = c
            .to_digit(16)
            .unwrap_or_else(|| fail_usage(&format!("bad hex digit {c:?}")));
        for i in (0..4).rev() {
            bits.push(v >> i & 1 == 1);
        }
    }
    if bits.len() > capacity {
        // Allow padding slack within the last nibble only.
        if bits.len() - capacity < 4 && bits[capacity..].iter().all(|b| !b) {
            bits.truncate(capacity);
        } else {
            fail_usage(&format!("data is {} bits, capacity is {capacity}", bits.len()));
        }
    }
    bits.resize(capacity, false);
    bits
}

fn bits_to_hex(bits: &[bool]) -> String {
    bits.chunks(4)
        .map(|c| {
            let mut v = 0u32;
            for (i, &b) in c.iter().enumerate() {
                if b {
                    v |= 1 << (3 - i);
                }
            }
            char::from_digit(v, 16).unwrap()
        })
        .collect()
}

fn build_codec(
    q: u8,
    n: usize,
    p: usize,
    mode: Mode,
    l: usize,
    config: &Option<String>,
) -> CodecB {
    let aux = config.as_ref().map(|path| {
        config::load_aux_params(path).unwrap_or_else(|e| {
            fail_usage(&format!("config {path}: {e}"));
        })
    });
    CodecB::with_aux(q, n, p, mode.into(), l, aux)
        .unwrap_or_else(|e| fail_usage(&format!("cannot build codec: {e}")))
}

fn main() {
    let cli = Cli::parse();
    match cli.command {
        Command::Encode { q, n, p, mode, l, data, config, json, dna } => {
            let codec = build_codec(q, n, p, mode, l, &config);
            let hex = read_arg_or_stdin(&data);
            let bits = hex_to_bits(&hex, codec.capacity_bits());
            let cw = codec
                .encode(&bits)
                .unwrap_or_else(|e| fail_usage(&format!("encode failed: {e}")));
            let rendered = if dna {
                seq::format_dna(&cw.full).unwrap_or_else(|e| fail_usage(&e.to_string()))
            } else {
                seq::format_seq(&cw.full, q)
            };
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "codeword": rendered,
                        "n": n,
                        "payload_symbols": cw.x.len(),
                        "buffer_symbols": cw.buffer.len(),
                        "syndrome_symbols": cw.r.len(),
                        "total_symbols": cw.full.len(),
                        "capacity_bits": codec.capacity_bits(),
                    })
                );
            } else {
                println!("{rendered}");
            }
        }
        Command::Decode { q, n, p, mode, l, input, config, json } => {
            let codec = build_codec(q, n, p, mode, l, &config);
            let text = read_arg_or_stdin(&input);
            let y = seq::parse_seq(&text, q)
                .unwrap_or_else(|e| fail_usage(&format!("bad sequence: {e}")));
            match codec.decode(&y) {
                Ok(bits) => {
                    let hex = bits_to_hex(&bits);
                    if json {
                        println!(
                            "{}",
                            serde_json::json!({ "data": hex, "bits": bits.len() })
                        );
                    } else {
                        println!("{hex}");
                    }
                }
                Err(e) => fail_decode(&e.to_string()),
            }
        }
        Command::Channel { q, seed, dups, edits, kinds, input } => {
            let text = read_arg_or_stdin(input.as_deref().unwrap_or("-"));
            let x = seq::parse_seq(&text, q)
                .unwrap_or_else(|e| fail_usage(&format!("bad sequence: {e}")));
            let spec = ChannelSpec {
                q,
                max_dups: dups,
                num_edits: edits,
                edit_kinds: parse_kinds(&kinds),
                seed,
            };
            println!("{}", seq::format_seq(&run_channel(&x, &spec), q));
        }
        Command::Bounds { q, n, p } => {
            if q < 3 {
                fail_usage("q must be at least 3");
            }
            let irr = count_irr(q, n).unwrap_or_else(|e| fail_usage(&e.to_string()));
            let gv = gv_lower_bound(q, n, p).unwrap_or_else(|e| fail_usage(&e.to_string()));
            let rate = if q >= 4 { Some(growth_rate(q)) } else { None };
            let log2_irr = irr.to_f64().map(|v| v.log2()).unwrap_or(irr.bits() as f64);
            println!(
                "{}",
                serde_json::json!({
                    "q": q,
                    "n": n,
                    "p": p,
                    "irr_count": irr.to_string(),
                    "log2_irr_count": log2_irr,
                    "gv_bound": gv.to_f64(),
                    "log2_gv_bound": gv.log2(),
                    "growth_rate": rate,
                    "rate_bits_per_symbol": rate.map(|r| r.log2()),
                })
            );
        }
        Command::Verify { suite, scale } => {
            let ok = verify::run_suite(&suite, scale.max(1));
            std::process::exit(if ok { 0 } else { 1 });
        }
        Command::Experiment { q, n, p, mode, l, trials, seed0, dups, edits, kinds, config } => {
            let codec = build_codec(q, n, p, mode, l, &config);
            let report = experiment::run(
                &codec,
                trials,
                seed0,
                dups,
                edits.unwrap_or(p),
                parse_kinds(&kinds),
            );
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            if !report.failures.is_empty() {
                std::process::exit(1);
            }
        }
    }
}
