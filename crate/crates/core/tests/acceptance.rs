//! Acceptance criteria 1-10. Each criterion prints one `PASS`/`FAIL` line
//! to stderr; the test fails if any criterion is red.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use robust_gray::bits;
use robust_gray::brc;
use robust_gray::channel::{run_experiment, Experiment, Mode};
use robust_gray::cli;
use robust_gray::config::{Format, RunConfig};
use robust_gray::rs::OuterCode;
use robust_gray::small_codes::{unary_decode, unary_distance, UnaryVariant};
use robust_gray::{CodeParams, Field, FieldElement, InnerCode, RobustGrayCode};

/// Pinned pilot for criterion 9: 223 hits of `|j - ĵ| >= 1000` in 1e5 trials.
const PILOT_TAIL_1000: f64 = 0.00223;
const TAIL_SEED: u64 = 2024;
const TAIL_CANDIDATES: usize = 256;

fn small_params() -> CodeParams {
    CodeParams {
        p: 0.05,
        field_width: 3,
        k: 2,
        inner_n: 6,
        buffer: 5,
        rho: 3,
        beta: 0.1,
        xi: 0.5,
    }
}

fn small_code() -> RobustGrayCode {
    let inner = InnerCode::parse("100110\n010101\n001011").unwrap();
    RobustGrayCode::new(small_params(), inner).unwrap()
}

fn tail_params() -> CodeParams {
    CodeParams {
        p: 0.02,
        field_width: 4,
        k: 11,
        inner_n: 14,
        buffer: 25,
        rho: 7,
        beta: 0.05,
        xi: 0.5,
    }
}

/// `w_i` assembled piece by piece: header of `z_i`, parity buffers, payloads.
fn oracle_w(code: &RobustGrayCode, i: u64) -> Vec<bool> {
    let n = code.params().n();
    let z = if i == 0 { 0 } else { i.trailing_zeros() as u64 };
    let (payload, _) = code.base().encode(i).unwrap();
    let parity = i & 1 == 1;
    let mut w = code.header_code().encode(z).unwrap();
    for m in 0..n {
        w.extend(std::iter::repeat(parity).take(code.params().buffer));
        let np = code.params().inner_n;
        w.extend_from_slice(&payload[m * np..(m + 1) * np]);
    }
    w.extend(std::iter::repeat(parity).take(code.params().buffer));
    w
}

fn criterion_1() -> Result<String, String> {
    let code = small_code();
    let mut prev = code.encode(0).unwrap();
    for j in 1..code.size() {
        let g = code.encode(j).unwrap();
        let dist = bits::hamming(&prev, &g);
        if dist != 1 {
            return Err(format!("distance {dist} between g_{} and g_{j}", j - 1));
        }
        prev = g;
    }
    Ok(format!("N = {} consecutive pairs at distance 1", code.size()))
}

fn criterion_2() -> Result<String, String> {
    let code = small_code();
    let mut words: Vec<Vec<bool>> = (0..code.size()).map(|j| code.encode(j).unwrap()).collect();
    words.sort();
    let dup = words.windows(2).filter(|w| w[0] == w[1]).count();
    if dup > 0 {
        return Err(format!("{dup} duplicate codewords"));
    }
    Ok(format!("{} distinct codewords", words.len()))
}

fn criterion_3() -> Result<String, String> {
    let code = small_code();
    let mut sum = 0u64;
    let mut prev = oracle_w(&code, 0);
    if prev != code.make_w(0).unwrap() {
        return Err("w_0 differs from the assembled oracle".into());
    }
    for i in 0..code.intermediate_size() {
        let w = oracle_w(&code, i);
        sum += bits::hamming(&prev, &w) as u64;
        let r = code.compr(i).unwrap();
        if r != sum {
            return Err(format!("compr({i}) = {r}, path length {sum}"));
        }
        prev = w;
    }
    Ok(format!("all {} prefix sums match", code.intermediate_size()))
}

fn criterion_4() -> Result<String, String> {
    let code = small_code();
    let bad: Vec<u64> = (0..code.size())
        .into_par_iter()
        .filter(|&j| {
            let g = code.encode(j).unwrap();
            code.decode(&g).map(|d| d.j_hat) != Ok(j)
        })
        .collect();
    if !bad.is_empty() {
        return Err(format!("{} mismatches, first j = {}", bad.len(), bad[0]));
    }
    Ok(format!("all {} indices recovered", code.size()))
}

/// Reflected code by its recursive definition: `0 R_{k-1}` then `1 reverse(R_{k-1})`.
fn recursive_brc(k: u32) -> Vec<u64> {
    let mut list = vec![0u64];
    for b in 0..k {
        let rev: Vec<u64> = list.iter().rev().map(|&g| g | 1 << b).collect();
        list.extend(rev);
    }
    list
}

fn criterion_5() -> Result<String, String> {
    let mut checked = 0u64;
    for k in 1..=12u32 {
        let list = recursive_brc(k);
        for z in 0..k {
            let mut count = 0u64;
            for i in 0..list.len() as u64 {
                if i > 0 && (list[i as usize - 1] ^ list[i as usize]) >> z & 1 == 1 {
                    count += 1;
                }
                let closed = (i + (1 << z)) >> (z + 1);
                let got = brc::flip_count(z, i);
                if got != count || got != closed {
                    return Err(format!("k={k} z={z} i={i}: got {got}, enumerated {count}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (k, z, i) triples"))
}

fn brute_unary(x: &[bool], variant: UnaryVariant) -> usize {
    (0..=x.len())
        .min_by_key(|&j| (unary_distance(x, j, variant), j))
        .unwrap()
}

fn criterion_6() -> Result<String, String> {
    (1..=64usize)
        .into_par_iter()
        .map(|len| {
            let mut rng = ChaCha8Rng::seed_from_u64(len as u64);
            for trial in 0..10_000 {
                // Mix uniform inputs with near-codewords so ties and short runs occur.
                let x: Vec<bool> = if trial % 2 == 0 {
                    (0..len).map(|_| rng.gen()).collect()
                } else {
                    let j = rng.gen_range(0..=len);
                    (0..len).map(|t| (t < j) ^ rng.gen_bool(0.1)).collect()
                };
                for variant in [UnaryVariant::Plain, UnaryVariant::Complement] {
                    let fast = unary_decode(&x, variant);
                    let slow = brute_unary(&x, variant);
                    if fast != slow {
                        return Err(format!("len {len} {variant:?}: {fast} vs {slow}"));
                    }
                }
            }
            Ok(())
        })
        .collect::<Result<Vec<()>, String>>()?;
    Ok("64 lengths x 1e4 inputs, both variants".into())
}

/// All (erasure set, error set, error values) with `2e + t <= 4` on 7 positions.
fn rs_patterns() -> Vec<Vec<(usize, Option<u16>)>> {
    let mut out = Vec::new();
    for mask in 0u32..1 << 7 {
        let positions: Vec<usize> = (0..7).filter(|&b| mask >> b & 1 == 1).collect();
        // Assign each chosen position to erasure or error.
        for roles in 0u32..1 << positions.len() {
            let e = roles.count_ones() as usize;
            let t = positions.len() - e;
            if 2 * e + t > 4 {
                continue;
            }
            let mut patterns = vec![Vec::new()];
            for (idx, &pos) in positions.iter().enumerate() {
                let mut next = Vec::new();
                for p in &patterns {
                    if roles >> idx & 1 == 1 {
                        for v in 1..8u16 {
                            let mut q: Vec<(usize, Option<u16>)> = p.clone();
                            q.push((pos, Some(v)));
                            next.push(q);
                        }
                    } else {
                        let mut q = p.clone();
                        q.push((pos, None));
                        next.push(q);
                    }
                }
                patterns = next;
            }
            out.extend(patterns);
        }
    }
    out
}

fn criterion_7() -> Result<String, String> {
    let field = Field::new(3).unwrap();
    let code = OuterCode::new(field.clone(), 3).unwrap();
    let patterns = rs_patterns();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let messages: Vec<Vec<FieldElement>> = (0..10_000)
        .map(|_| (0..3).map(|_| FieldElement(rng.gen_range(0..8))).collect())
        .collect();
    let failures: usize = messages
        .par_iter()
        .map(|msg| {
            // Direct evaluation at α^0..α^6, independent of the encoder.
            let cw: Vec<FieldElement> = (0..7)
                .map(|m| {
                    let x = field.alpha_pow(m);
                    msg.iter().rev().fold(FieldElement::ZERO, |acc, &c| field.mul(acc, x) + c)
                })
                .collect();
            if code.encode(msg).unwrap() != cw {
                return patterns.len();
            }
            patterns
                .iter()
                .filter(|pattern| {
                    let mut rx: Vec<Option<FieldElement>> = cw.iter().copied().map(Some).collect();
                    for &(pos, err) in pattern.iter() {
                        rx[pos] = err.map(|v| cw[pos] + FieldElement(v));
                    }
                    code.decode(&rx).as_ref() != Ok(msg)
                })
                .count()
        })
        .sum();
    if failures > 0 {
        return Err(format!("{failures} failed decodes"));
    }
    Ok(format!("{} patterns x 1e4 messages, zero failures", patterns.len()))
}

fn criterion_8() -> Result<String, String> {
    let mut sets = vec![small_code()];
    sets.push(RobustGrayCode::with_seeded_inner(tail_params(), TAIL_CANDIDATES, TAIL_SEED).unwrap());
    for (fw, k, nn, b, rho) in [(2, 1, 2, 1, 1), (3, 4, 8, 9, 5), (4, 5, 12, 41, 5), (4, 12, 16, 3, 1), (5, 8, 20, 11, 3)] {
        let params = CodeParams {
            field_width: fw,
            k,
            inner_n: nn,
            buffer: b,
            rho,
            ..small_params()
        };
        sets.push(RobustGrayCode::with_seeded_inner(params, 16, 1).unwrap());
    }
    let mut worst = f64::INFINITY;
    for code in &sets {
        let p = code.params();
        let (n, nn) = (p.n() as f64, p.inner_n as f64);
        let header = code.header_code().len() as f64;
        let bound = (p.k as f64 / n) * (p.field_width as f64 / nn)
            / (1.0 + (p.buffer as f64 / nn) * (1.0 + 1.0 / n) + header / (n * nn));
        let rate = (code.size() as f64).log2() / code.len() as f64;
        if !(rate >= bound) {
            return Err(format!("{p:?}: rate {rate} < bound {bound}"));
        }
        worst = worst.min(rate - bound);
    }
    Ok(format!("{} parameter sets, min slack {worst:.3e}", sets.len()))
}

fn criterion_9() -> Result<String, String> {
    let code = RobustGrayCode::with_seeded_inner(tail_params(), TAIL_CANDIDATES, TAIL_SEED).unwrap();
    let exp = Experiment {
        trials: 100_000,
        t_grid: vec![1, 2, 5, 10, 20, 50, 100, 200, 500, 1000],
        seed: TAIL_SEED,
        mode: Mode::Uniform,
    };
    let r = run_experiment(&code, &exp).unwrap();
    if let Some(w) = r.tails.windows(2).find(|w| w[1].tail_estimate > w[0].tail_estimate) {
        return Err(format!("tail increases from t={} to t={}", w[0].t, w[1].t));
    }
    let last = r.tails.last().unwrap();
    if last.tail_estimate >= 0.01 {
        return Err(format!("Pr[dev >= 1000] = {} >= 0.01", last.tail_estimate));
    }
    let width = last.ci_high - last.ci_low;
    if (last.tail_estimate - PILOT_TAIL_1000).abs() > 3.0 * width {
        return Err(format!(
            "Pr[dev >= 1000] = {} drifted from pilot {PILOT_TAIL_1000} by more than 3 x {width}",
            last.tail_estimate
        ));
    }
    Ok(format!(
        "d = {}, Pr[dev >= 1000] = {} in [{:.5}, {:.5}], Pr[dev >= 1] = {}",
        code.len(),
        last.tail_estimate,
        last.ci_low,
        last.ci_high,
        r.tails[0].tail_estimate
    ))
}

fn criterion_10() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut sizes = Vec::new();
    for format in [Format::Csv, Format::Json] {
        let mut files = Vec::new();
        for threads in [1, 8] {
            let path = dir.path().join(format!("run-{threads}.{format:?}"));
            let cfg = RunConfig {
                params: tail_params(),
                trials: 20_000,
                t_grid: vec![1, 10, 100, 1000],
                seed: Some(99),
                threads: Some(threads),
                format,
                out: Some(path.clone()),
                inner_candidates: TAIL_CANDIDATES,
                ..RunConfig::default()
            };
            cli::cmd_simulate(&cfg, &mut std::io::sink()).map_err(|e| e.to_string())?;
            files.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        if files[0] != files[1] {
            return Err(format!("{format:?} output differs between 1 and 8 threads"));
        }
        sizes.push(files[0].len());
    }
    Ok(format!("csv {} bytes, json {} bytes identical across thread counts", sizes[0], sizes[1]))
}

/// Written to the raw stderr handle so the lines survive output capture.
fn report(line: String) {
    let _ = writeln!(std::io::stderr(), "{line}");
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Result<String, String>); 10] = [
        ("gray property", criterion_1),
        ("injectivity", criterion_2),
        ("compr oracle", criterion_3),
        ("noiseless round trip", criterion_4),
        ("reflected code flip counts", criterion_5),
        ("unary decoder equivalence", criterion_6),
        ("RS errors and erasures", criterion_7),
        ("rate bound", criterion_8),
        ("tail decay", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut red = Vec::new();
    for (idx, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => report(format!("criterion {:>2} PASS {name}: {detail} ({secs:.1}s)", idx + 1)),
            Err(detail) => {
                report(format!("criterion {:>2} FAIL {name}: {detail} ({secs:.1}s)", idx + 1));
                red.push(idx + 1);
            }
        }
    }
    assert!(red.is_empty(), "failed criteria: {red:?}");
}
