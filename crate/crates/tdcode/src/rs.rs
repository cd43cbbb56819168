//! Systematic Reed-Solomon codes over `GF(2^gamma)` with errors-and-erasures
//! decoding (Berlekamp-Massey plus Forney), supporting shortened lengths.
//!
//! A code `RS(n, k)` has minimum distance `d = n - k + 1` and decodes any
//! pattern of `t` errors and `e` erasures with `2t + e <= d - 1`.

use crate::error::{Error, Result};
use crate::gf::Field;

/// A received symbol: a value or an erasure.
pub type Received = Option<u16>;

pub struct ReedSolomon<'f> {
    field: &'f Field,
    /// Shortened code length (`<= 2^gamma - 1`).
    pub n: usize,
    /// Dimension.
    pub k: usize,
    /// Generator polynomial, low-to-high, degree `n - k`.
    gen: Vec<u16>,
}

impl<'f> ReedSolomon<'f> {
    pub fn new(field: &'f Field, n: usize, k: usize) -> Result<Self> {
        let nmax = field.num_elements() - 1;
        if n > nmax || k >= n || k == 0 {
            return Err(Error::InvalidParams(format!(
                "RS({n}, {k}) invalid over GF(2^{})",
                field.gamma
            )));
        }
        let mut gen = vec![1u16];
        for i in 1..=(n - k) {
            gen = field.poly_mul(&gen, &[field.alpha_pow(i), 1]);
        }
        Ok(ReedSolomon { field, n, k, gen })
    }

    pub fn distance(&self) -> usize {
        self.n - self.k + 1
    }

    /// Systematic encoding: output is `msg` followed by `n - k` parity
    /// symbols. The message occupies the high-degree coefficients.
    pub fn encode(&self, msg: &[u16]) -> Result<Vec<u16>> {
        if msg.len() != self.k {
            return Err(Error::InvalidParams(format!(
                "message length {} != k = {}",
                msg.len(),
                self.k
            )));
        }
        let f = self.field;
        let npar = self.n - self.k;
        // Polynomial long division of msg * x^{n-k} by gen.
        let mut rem = vec![0u16; npar];
        for &m in msg {
            let coef = f.add(m, rem[npar - 1]);
            for j in (1..npar).rev() {
                rem[j] = f.add(rem[j - 1], f.mul(coef, self.gen[j]));
            }
            rem[0] = f.mul(coef, self.gen[0]);
        }
        let mut out = Vec::with_capacity(self.n);
        out.extend_from_slice(msg);
        out.extend(rem.iter().rev());
        Ok(out)
    }

    /// Errors-and-erasures decoding. Returns the corrected codeword.
    ///
    /// Positions are indexed as in `encode`'s output; position `i`
    /// corresponds to the evaluation point `alpha^{n-1-i}` of the shortened
    /// code.
    pub fn decode(&self, received: &[Received]) -> Result<Vec<u16>> {
        if received.len() != self.n {
            return Err(Error::InvalidParams(format!(
                "received length {} != n = {}",
                received.len(),
                self.n
            )));
        }
        let f = self.field;
        let npar = self.n - self.k;
        let erasures: Vec<usize> = received
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.is_none().then_some(i))
            .collect();
        if erasures.len() > npar {
            return Err(Error::RsDecodeFailure(format!(
                "{} erasures exceed distance budget {}",
                erasures.len(),
                npar
            )));
        }
        let word: Vec<u16> = received.iter().map(|r| r.unwrap_or(0)).collect();

        // Syndromes S_j = word(alpha^j), j = 1..=npar, with position i at
        // power n-1-i.
        let mut syndromes = vec![0u16; npar];
        let mut all_zero = true;
        for (j, syn) in syndromes.iter_mut().enumerate() {
            let mut acc = 0u16;
            for (i, &w) in word.iter().enumerate() {
                if w != 0 {
                    let power = ((j + 1) * (self.n - 1 - i)) % (f.num_elements() - 1);
                    acc = f.add(acc, f.mul(w, f.alpha_pow(power)));
                }
            }
            *syn = acc;
            all_zero &= acc == 0;
        }
        if all_zero && erasures.is_empty() {
            return Ok(word);
        }

        // Erasure locator polynomial: product of (1 - X_i x) over erased
        // locations X_i = alpha^{n-1-i}.
        let mut erasure_loc = vec![1u16];
        for &i in &erasures {
            let xi = f.alpha_pow(self.n - 1 - i);
            erasure_loc = f.poly_mul(&erasure_loc, &[1, xi]);
        }

        // Modified syndromes: Xi(x) = [S(x) * erasure_loc(x)] mod x^npar.
        let s_poly: Vec<u16> = syndromes.clone();
        let mut modified = f.poly_mul(&s_poly, &erasure_loc);
        modified.truncate(npar);

        // Berlekamp-Massey on the modified syndromes for the error locator.
        let t_budget = (npar - erasures.len()) / 2;
        let error_loc = berlekamp_massey(f, &modified[erasures.len()..], t_budget);

        // Combined locator and Chien search.
        let locator = f.poly_mul(&error_loc, &erasure_loc);
        let mut positions = Vec::new();
        for i in 0..self.n {
            let xi_inv = f.inv(f.alpha_pow(self.n - 1 - i));
            if f.poly_eval(&locator, xi_inv) == 0 {
                positions.push(i);
            }
        }
        if positions.len() != locator.len() - 1 {
            return Err(Error::RsDecodeFailure(format!(
                "locator degree {} but {} roots found",
                locator.len() - 1,
                positions.len()
            )));
        }

        // Forney: error evaluator Omega(x) = [S(x) * locator(x)] mod x^npar;
        // in characteristic 2 the formal derivative keeps odd-power terms.
        let mut omega = f.poly_mul(&s_poly, &locator);
        omega.truncate(npar);
        let mut corrected = word.clone();
        for &i in &positions {
            let xi_inv = f.inv(f.alpha_pow(self.n - 1 - i));
            let num = f.poly_eval(&omega, xi_inv);
            let mut den = 0u16;
            for (idx, &c) in locator.iter().enumerate() {
                if idx % 2 == 1 {
                    let mut term = c;
                    for _ in 0..idx - 1 {
                        term = f.mul(term, xi_inv);
                    }
                    den = f.add(den, term);
                }
            }
            if den == 0 {
                return Err(Error::RsDecodeFailure("Forney denominator vanished".into()));
            }
            // Syndromes start at alpha^1, so no extra X_k factor appears.
            corrected[i] = f.add(corrected[i], f.div(num, den));
        }

        // Verify: all syndromes of the corrected word must vanish.
        for j in 1..=npar {
            let mut acc = 0u16;
            for (i, &w) in corrected.iter().enumerate() {
                if w != 0 {
                    let power = (j * (self.n - 1 - i)) % (f.num_elements() - 1);
                    acc = f.add(acc, f.mul(w, f.alpha_pow(power)));
                }
            }
            if acc != 0 {
                return Err(Error::RsDecodeFailure("residual syndrome after correction".into()));
            }
        }
        Ok(corrected)
    }

    /// Decodes and returns just the message symbols.
    pub fn decode_message(&self, received: &[Received]) -> Result<Vec<u16>> {
        Ok(self.decode(received)?[..self.k].to_vec())
    }
}

/// Berlekamp-Massey over the given syndrome sequence, with error capacity
/// `t_budget`; returns the locator polynomial (low-to-high).
fn berlekamp_massey(f: &Field, syndromes: &[u16], t_budget: usize) -> Vec<u16> {
    let mut c = vec![1u16];
    let mut b = vec![1u16];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bb = 1u16;
    for n in 0..syndromes.len() {
        let mut d = syndromes[n];
        for i in 1..=l {
            if i < c.len() {
                d = f.add(d, f.mul(c[i], syndromes[n - i]));
            }
        }
        if d == 0 {
            m += 1;
        } else if 2 * l <= n {
            let t = c.clone();
            let coef = f.div(d, bb);
            if c.len() < b.len() + m {
                c.resize(b.len() + m, 0);
            }
            for (i, &bi) in b.iter().enumerate() {
                c[i + m] = f.add(c[i + m], f.mul(coef, bi));
            }
            l = n + 1 - l;
            b = t;
            bb = d;
            m = 1;
        } else {
            let coef = f.div(d, bb);
            if c.len() < b.len() + m {
                c.resize(b.len() + m, 0);
            }
            for (i, &bi) in b.iter().enumerate() {
                c[i + m] = f.add(c[i + m], f.mul(coef, bi));
            }
            m += 1;
        }
    }
    let _ = t_budget;
    while c.last() == Some(&0) && c.len() > 1 {
        c.pop();
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;

    #[test]
    fn all_zero_message_is_all_zero_codeword() {
        let f = Field::new(4).unwrap();
        let rs = ReedSolomon::new(&f, 15, 3).unwrap();
        let cw = rs.encode(&[0, 0, 0]).unwrap();
        assert!(cw.iter().all(|&x| x == 0));
    }

    #[test]
    fn systematic_prefix() {
        let f = Field::new(4).unwrap();
        let rs = ReedSolomon::new(&f, 15, 3).unwrap();
        let cw = rs.encode(&[7, 1, 9]).unwrap();
        assert_eq!(&cw[..3], &[7, 1, 9]);
        assert_eq!(cw.len(), 15);
    }

    #[test]
    fn roundtrip_no_errors() {
        let f = Field::new(4).unwrap();
        let rs = ReedSolomon::new(&f, 15, 3).unwrap();
        let cw = rs.encode(&[3, 14, 5]).unwrap();
        let rx: Vec<Received> = cw.iter().map(|&x| Some(x)).collect();
        assert_eq!(rs.decode_message(&rx).unwrap(), vec![3, 14, 5]);
    }

    /// Every pattern with 2t + e <= 12 on random (15, 3) codewords over
    /// GF(16) must decode exactly. Sampled here; the acceptance suite runs
    /// the full sweep.
    #[test]
    fn errors_and_erasures_within_distance() {
        let f = Field::new(4).unwrap();
        let rs = ReedSolomon::new(&f, 15, 3).unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(0x45);
        for _ in 0..60 {
            let msg: Vec<u16> = (0..3).map(|_| rng.random_range(0..16)).collect();
            let cw = rs.encode(&msg).unwrap();
            for t in 0..=6usize {
                let e_max = 12 - 2 * t;
                for e in 0..=e_max {
                    let mut rx: Vec<Received> = cw.iter().map(|&x| Some(x)).collect();
                    let mut positions: Vec<usize> = (0..15).collect();
                    positions.shuffle(&mut rng);
                    for &pos in positions.iter().take(t) {
                        let old = cw[pos];
                        let mut new = rng.random_range(0..15u16);
                        if new >= old {
                            new += 1;
                        }
                        rx[pos] = Some(new);
                    }
                    for &pos in positions.iter().skip(t).take(e) {
                        rx[pos] = None;
                    }
                    let got = rs.decode_message(&rx).unwrap();
                    assert_eq!(got, msg, "t={t} e={e}");
                }
            }
        }
    }

    #[test]
    fn shortened_code_roundtrip() {
        let f = Field::new(5).unwrap();
        let rs = ReedSolomon::new(&f, 18, 6).unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(0x51);
        for _ in 0..200 {
            let msg: Vec<u16> = (0..6).map(|_| rng.random_range(0..32)).collect();
            let cw = rs.encode(&msg).unwrap();
            let mut rx: Vec<Received> = cw.iter().map(|&x| Some(x)).collect();
            // 4 errors + 4 erasures: 2*4 + 4 = 12 = d - 1.
            let mut positions: Vec<usize> = (0..18).collect();
            positions.shuffle(&mut rng);
            for &pos in positions.iter().take(4) {
                let old = cw[pos];
                let mut new = rng.random_range(0..31u16);
                if new >= old {
                    new += 1;
                }
                rx[pos] = Some(new);
            }
            for &pos in positions.iter().skip(4).take(4) {
                rx[pos] = None;
            }
            assert_eq!(rs.decode_message(&rx).unwrap(), msg);
        }
    }

    /// Sampled minimum-distance check: distinct codewords differ in at
    /// least d positions.
    #[test]
    fn sampled_minimum_distance() {
        let f = Field::new(4).unwrap();
        let rs = ReedSolomon::new(&f, 15, 3).unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(0x9);
        for _ in 0..300 {
            let m1: Vec<u16> = (0..3).map(|_| rng.random_range(0..16)).collect();
            let m2: Vec<u16> = (0..3).map(|_| rng.random_range(0..16)).collect();
            if m1 == m2 {
                continue;
            }
            let c1 = rs.encode(&m1).unwrap();
            let c2 = rs.encode(&m2).unwrap();
            let dist = c1.iter().zip(&c2).filter(|(a, b)| a != b).count();
            assert!(dist >= rs.distance(), "distance {dist} < {}", rs.distance());
        }
    }
}
