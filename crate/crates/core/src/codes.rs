//! Binary linear codes, exact weight distributions, the MacWilliams
//! transform, self-duality checks, circulant generators, and ingestion of
//! externally published weight enumerators.
//!
//! Codeword enumeration walks the code in Gray-code order (one generator row
//! XORed per step) and partitions the codeword space across worker threads.
//! Weight counts are arbitrary-precision integers throughout: published
//! enumerators at n = 256 are far beyond 64-bit range.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use std::path::Path;

use crate::error::{Error, Result};

/// Default cap on full codeword enumeration (2^28 codewords).
pub const ENUMERATION_LIMIT: usize = 28;

/// An [n, k] binary linear code given by a full-row-rank generator matrix.
///
/// Rows are bit-packed into 64-bit words, least significant bit first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryLinearCode {
    n: usize,
    k: usize,
    rows: Vec<Vec<u64>>,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

fn row_weight(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

fn rows_dot_parity(a: &[u64], b: &[u64]) -> bool {
    let mut acc = 0u64;
    for (x, y) in a.iter().zip(b) {
        acc ^= x & y;
    }
    acc.count_ones() % 2 == 1
}

/// Rank over GF(2) by destructive Gaussian elimination on a copy.
fn gf2_rank(rows: &[Vec<u64>], n: usize) -> usize {
    let mut mat: Vec<Vec<u64>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let word = col / 64;
        let bit = 1u64 << (col % 64);
        let Some(pivot) = (rank..mat.len()).find(|&r| mat[r][word] & bit != 0) else {
            continue;
        };
        mat.swap(rank, pivot);
        let pivot_row = mat[rank].clone();
        for (r, row) in mat.iter_mut().enumerate() {
            if r != rank && row[word] & bit != 0 {
                for (w, p) in row.iter_mut().zip(&pivot_row) {
                    *w ^= p;
                }
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    rank
}

impl BinaryLinearCode {
    /// Build from bit rows; fails unless the rows are independent over GF(2).
    pub fn new(n: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        let k = rows.len();
        if n == 0 {
            return Err(Error::Domain("code length must be positive".into()));
        }
        for row in &rows {
            if row.len() != words_for(n) {
                return Err(Error::Domain("generator row has wrong word count".into()));
            }
            // no stray bits above n
            if n % 64 != 0 {
                let mask = !0u64 << (n % 64);
                if row[words_for(n) - 1] & mask != 0 {
                    return Err(Error::Domain("generator row has bits beyond n".into()));
                }
            }
        }
        if gf2_rank(&rows, n) != k {
            return Err(Error::RankDeficient);
        }
        Ok(BinaryLinearCode { n, k, rows })
    }

    /// Parse the text format: one row per line, characters '0'/'1'.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut n = 0usize;
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if n == 0 {
                n = line.len();
            } else if line.len() != n {
                return Err(Error::Domain(format!(
                    "row {} has length {}, expected {n}",
                    idx + 1,
                    line.len()
                )));
            }
            let mut row = vec![0u64; words_for(n)];
            for (j, c) in line.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => row[j / 64] |= 1 << (j % 64),
                    _ => {
                        return Err(Error::Domain(format!(
                            "row {} has invalid character '{c}'",
                            idx + 1
                        )))
                    }
                }
            }
            rows.push(row);
        }
        if n == 0 {
            return Err(Error::Domain("empty generator matrix".into()));
        }
        Self::new(n, rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }
}

/// Exact weight distribution A_0..A_n of a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    n: usize,
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn new(n: usize, counts: Vec<BigUint>) -> Result<Self> {
        if counts.len() != n + 1 {
            return Err(Error::Domain(format!(
                "distribution must have n+1 = {} entries, got {}",
                n + 1,
                counts.len()
            )));
        }
        if !counts[0].is_one() {
            return Err(Error::Domain("A_0 must equal 1".into()));
        }
        Ok(WeightDistribution { n, counts })
    }

    pub fn from_sparse(n: usize, entries: &[(usize, u64)]) -> Result<Self> {
        let mut counts = vec![BigUint::zero(); n + 1];
        for &(w, c) in entries {
            if w > n {
                return Err(Error::Domain(format!("weight {w} exceeds length {n}")));
            }
            counts[w] = BigUint::from(c);
        }
        Self::new(n, counts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, w: usize) -> &BigUint {
        &self.counts[w]
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// The dimension k with Σ A_w = 2^k, when the total is a power of two.
    pub fn dimension(&self) -> Option<usize> {
        let total = self.total();
        let bits = total.bits();
        if bits == 0 {
            return None;
        }
        let k = (bits - 1) as usize;
        if (BigUint::one() << k) == total {
            Some(k)
        } else {
            None
        }
    }

    /// Consistency with a self-dual origin: n even, Σ A_w = 2^{n/2}, and all
    /// odd-weight counts zero.
    pub fn check_self_dual_consistent(&self) -> Result<()> {
        if self.n % 2 != 0 {
            return Err(Error::Domain(format!(
                "self-dual codes have even length, got n = {}",
                self.n
            )));
        }
        if self.dimension() != Some(self.n / 2) {
            return Err(Error::Domain(format!(
                "count total is not 2^(n/2) for n = {}",
                self.n
            )));
        }
        if let Some(w) = (0..=self.n).find(|&w| w % 2 == 1 && !self.counts[w].is_zero()) {
            return Err(Error::OddWeightPresent { w });
        }
        Ok(())
    }

    pub fn min_distance(&self) -> Option<usize> {
        (1..=self.n).find(|&w| !self.counts[w].is_zero())
    }
}

/// Exact weight distribution by full codeword enumeration in Gray-code order.
///
/// Refuses codes with k beyond `limit` (default [`ENUMERATION_LIMIT`]); large
/// codes must arrive through the catalog instead.
pub fn weight_distribution(code: &BinaryLinearCode) -> Result<WeightDistribution> {
    weight_distribution_with_limit(code, ENUMERATION_LIMIT)
}

pub fn weight_distribution_with_limit(
    code: &BinaryLinearCode,
    limit: usize,
) -> Result<WeightDistribution> {
    if code.k > limit {
        return Err(Error::DimensionTooLarge {
            k: code.k,
            limit,
        });
    }
    let n = code.n;
    let k = code.k;
    let words = words_for(n);

    // Split the space over prefixes of the high rows; each worker holds the
    // low rows fixed and walks them in Gray-code order.
    let low = k.min(18);
    let high = k - low;
    let counts: Vec<u64> = (0u64..(1u64 << high))
        .into_par_iter()
        .map(|prefix| {
            let mut acc = vec![0u64; words];
            for j in 0..high {
                if prefix >> j & 1 == 1 {
                    for (a, b) in acc.iter_mut().zip(&code.rows[low + j]) {
                        *a ^= b;
                    }
                }
            }
            let mut local = vec![0u64; n + 1];
            local[row_weight(&acc)] += 1;
            for step in 1u64..(1u64 << low) {
                let j = step.trailing_zeros() as usize;
                for (a, b) in acc.iter_mut().zip(&code.rows[j]) {
                    *a ^= b;
                }
                local[row_weight(&acc)] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    *x += y;
                }
                a
            },
        );
    WeightDistribution::new(n, counts.into_iter().map(BigUint::from).collect())
}

/// Exact dual distribution via the MacWilliams identity
/// W_{C⊥}(x,y) = 2^{-k} W_C(x+y, x-y), expanded through Krawtchouk sums.
pub fn macwilliams_transform(
    dist: &WeightDistribution,
    k: usize,
) -> Result<WeightDistribution> {
    let n = dist.n;
    if dist.dimension() != Some(k) {
        return Err(Error::Domain(format!(
            "distribution total is not 2^{k}"
        )));
    }
    // Pascal triangle up to n
    let mut binom = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for i in 0..=n {
        binom[i][0] = BigInt::one();
        for j in 1..=i {
            binom[i][j] = &binom[i - 1][j - 1]
                + if j <= i - 1 {
                    binom[i - 1][j].clone()
                } else {
                    BigInt::zero()
                };
        }
    }
    let pow2k = BigInt::one() << k;
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        // K_j(w) = Σ_i (-1)^i C(w,i) C(n-w, j-i)
        let mut acc = BigInt::zero();
        for w in 0..=n {
            if dist.counts[w].is_zero() {
                continue;
            }
            let aw = BigInt::from(dist.counts[w].clone());
            let mut kraw = BigInt::zero();
            for i in 0..=j.min(w) {
                if j - i > n - w {
                    continue;
                }
                let term = &binom[w][i] * &binom[n - w][j - i];
                if i % 2 == 0 {
                    kraw += term;
                } else {
                    kraw -= term;
                }
            }
            acc += aw * kraw;
        }
        let (q, r) = num_integer::Integer::div_rem(&acc, &pow2k);
        if !r.is_zero() || q.is_negative() {
            return Err(Error::NonIntegerTransform { w: j });
        }
        out.push(q.magnitude().clone());
    }
    WeightDistribution::new(n, out)
}

/// True iff k = n/2 and G·Gᵀ = 0 over GF(2).
pub fn is_self_dual(code: &BinaryLinearCode) -> bool {
    if code.n != 2 * code.k {
        return false;
    }
    for i in 0..code.k {
        for j in i..code.k {
            if rows_dot_parity(&code.rows[i], &code.rows[j]) {
                return false;
            }
        }
    }
    true
}

/// [n, n/2] pure double circulant code with generator [I | A], where A is
/// the circulant matrix whose first row is given. Callers filter by
/// [`is_self_dual`].
pub fn pure_double_circulant(first_row: &[bool]) -> Result<BinaryLinearCode> {
    let half = first_row.len();
    if half == 0 {
        return Err(Error::Domain("empty circulant row".into()));
    }
    let n = 2 * half;
    let words = words_for(n);
    let mut rows = Vec::with_capacity(half);
    for i in 0..half {
        let mut row = vec![0u64; words];
        row[i / 64] |= 1 << (i % 64);
        for j in 0..half {
            // row i of the circulant: entry j is first_row[(j - i) mod half]
            if first_row[(j + half - i) % half] {
                let col = half + j;
                row[col / 64] |= 1 << (col % 64);
            }
        }
        rows.push(row);
    }
    // [I | A] always has full row rank
    Ok(BinaryLinearCode {
        n,
        k: half,
        rows,
    })
}

/// The binomial benchmark distribution A_{2w'} = C(n/2, w'), odd entries 0.
pub fn ub_distribution(n: usize) -> Result<WeightDistribution> {
    if n % 2 != 0 || n == 0 {
        return Err(Error::Domain(format!(
            "binomial distribution needs even positive n, got {n}"
        )));
    }
    let k = n / 2;
    let mut counts = vec![BigUint::zero(); n + 1];
    let mut c = BigUint::one();
    for wp in 0..=k {
        counts[2 * wp] = c.clone();
        if wp < k {
            // C(k, wp+1) = C(k, wp) (k - wp) / (wp + 1)
            c = c * BigUint::from(k - wp) / BigUint::from(wp + 1);
        }
    }
    WeightDistribution::new(n, counts)
}

/// A named weight distribution with parameters and a free-text source tag.
#[derive(Debug, Clone)]
pub struct CodeCatalogEntry {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub source: String,
    pub distribution: WeightDistribution,
}

fn validate_entry(entry: &CodeCatalogEntry) -> Result<()> {
    let fail = |msg: String| Error::CatalogInvalid {
        name: entry.name.clone(),
        msg,
    };
    if entry.distribution.n() != entry.n {
        return Err(fail("distribution length differs from n".into()));
    }
    if !entry.distribution.count(0).is_one() {
        return Err(fail("A_0 must equal 1".into()));
    }
    if entry.distribution.dimension() != Some(entry.k) {
        return Err(fail(format!("count total is not 2^{}", entry.k)));
    }
    if entry.n == 2 * entry.k {
        // treated as claiming self-duality; all weights must be even
        if let Err(Error::OddWeightPresent { w }) =
            entry.distribution.check_self_dual_consistent()
        {
            return Err(fail(format!("odd weight {w} in an [n, n/2] entry")));
        }
    }
    Ok(())
}

/// Parse catalog text: entries start with a header `n k name source...`,
/// followed by `w count` lines for the nonzero counts. Blank lines and
/// `#` comments are skipped. A_0 = 1 is implicit and may be omitted.
pub fn parse_catalog(text: &str) -> Result<Vec<CodeCatalogEntry>> {
    let mut entries: Vec<CodeCatalogEntry> = Vec::new();
    let mut current: Option<(String, usize, usize, String, Vec<(usize, BigUint)>)> = None;

    fn finish(
        acc: Option<(String, usize, usize, String, Vec<(usize, BigUint)>)>,
        out: &mut Vec<CodeCatalogEntry>,
    ) -> Result<()> {
        if let Some((name, n, k, source, sparse)) = acc {
            let mut counts = vec![BigUint::zero(); n + 1];
            counts[0] = BigUint::one();
            for (w, c) in sparse {
                if w > n {
                    return Err(Error::CatalogInvalid {
                        name,
                        msg: format!("weight {w} exceeds n = {n}"),
                    });
                }
                counts[w] = c;
            }
            let entry = CodeCatalogEntry {
                distribution: WeightDistribution::new(n, counts).map_err(|e| {
                    Error::CatalogInvalid {
                        name: name.clone(),
                        msg: e.to_string(),
                    }
                })?,
                name,
                n,
                k,
                source,
            };
            validate_entry(&entry)?;
            out.push(entry);
        }
        Ok(())
    }

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() >= 3 {
            // header: n k name [source...]
            let n: usize = fields[0].parse().map_err(|_| Error::CatalogParse {
                line: lineno,
                msg: format!("bad length field '{}'", fields[0]),
            })?;
            let k: usize = fields[1].parse().map_err(|_| Error::CatalogParse {
                line: lineno,
                msg: format!("bad dimension field '{}'", fields[1]),
            })?;
            finish(current.take(), &mut entries)?;
            current = Some((
                fields[2].to_string(),
                n,
                k,
                fields[3..].join(" "),
                Vec::new(),
            ));
        } else if fields.len() == 2 {
            let (w, c) = (fields[0], fields[1]);
            let w: usize = w.parse().map_err(|_| Error::CatalogParse {
                line: lineno,
                msg: format!("bad weight field '{w}'"),
            })?;
            let c: BigUint = c.parse().map_err(|_| Error::CatalogParse {
                line: lineno,
                msg: format!("bad count field '{c}'"),
            })?;
            match current.as_mut() {
                Some((_, _, _, _, sparse)) => sparse.push((w, c)),
                None => {
                    return Err(Error::CatalogParse {
                        line: lineno,
                        msg: "count line before any entry header".into(),
                    })
                }
            }
        } else {
            return Err(Error::CatalogParse {
                line: lineno,
                msg: format!("expected 'w count' or 'n k name source', got '{line}'"),
            });
        }
    }
    finish(current.take(), &mut entries)?;
    Ok(entries)
}

/// Load validated catalog entries from a file, or from every `*.txt` file of
/// a directory (sorted by file name).
pub fn load_catalog(path: &Path) -> Result<Vec<CodeCatalogEntry>> {
    let mut out = Vec::new();
    if path.is_dir() {
        let mut files: Vec<_> = std::fs::read_dir(path)?
            .filter_map(|e| e.ok())
            .map(|e| e.path())
            .filter(|p| p.extension().map_or(false, |ext| ext == "txt"))
            .collect();
        files.sort();
        for f in files {
            let text = std::fs::read_to_string(&f)?;
            out.extend(parse_catalog(&text)?);
        }
    } else {
        let text = std::fs::read_to_string(path)?;
        out.extend(parse_catalog(&text)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Built-in codes
// ---------------------------------------------------------------------------

/// The [2,1] repetition code {00, 11}.
pub fn repetition2() -> BinaryLinearCode {
    BinaryLinearCode::new(2, vec![vec![0b11]]).expect("static generator")
}

/// The [8,4] extended Hamming code, generator [I | J - I].
pub fn extended_hamming8() -> BinaryLinearCode {
    let rows = [
        0b0111_0001u64,
        0b1011_0010,
        0b1101_0100,
        0b1110_1000,
    ];
    BinaryLinearCode::new(8, rows.iter().map(|&r| vec![r]).collect()).expect("static generator")
}

/// A [16,8,4] self-dual pure double circulant code (first row 01010111);
/// weight distribution 1, 12·y⁴, 64·y⁶, 102·y⁸, 64·y¹⁰, 12·y¹², y¹⁶.
pub fn double_circulant16() -> BinaryLinearCode {
    let first: Vec<bool> = [0, 1, 0, 1, 0, 1, 1, 1].iter().map(|&b| b == 1).collect();
    pure_double_circulant(&first).expect("static generator")
}

/// The [24,12,8] extended binary Golay code.
pub fn golay24() -> BinaryLinearCode {
    const H: [u64; 12] = [
        0b100111110001,
        0b010011111010,
        0b001001111101,
        0b100100111110,
        0b110010011101,
        0b111001001110,
        0b111100100101,
        0b111110010010,
        0b011111001001,
        0b001111100110,
        0b010101010111,
        0b101010101011,
    ];
    let rows = (0..12)
        .map(|i| vec![(1u64 << i) | (H[i] << 12)])
        .collect();
    BinaryLinearCode::new(24, rows).expect("static generator")
}

/// The Reed-Muller code RM(2,5): a [32,16,8] doubly-even self-dual code
/// with weight distribution 1, 620·y⁸, 13888·y¹², 36518·y¹⁶, ...
pub fn reed_muller_32() -> BinaryLinearCode {
    let mut rows = Vec::with_capacity(16);
    let eval = |mono: &[usize]| -> Vec<u64> {
        let mut row = vec![0u64; 1];
        for pt in 0u32..32 {
            if mono.iter().all(|&i| pt >> i & 1 == 1) {
                row[0] |= 1 << pt;
            }
        }
        row
    };
    rows.push(eval(&[]));
    for i in 0..5 {
        rows.push(eval(&[i]));
    }
    for i in 0..5 {
        for j in (i + 1)..5 {
            rows.push(eval(&[i, j]));
        }
    }
    BinaryLinearCode::new(32, rows).expect("static generator")
}

/// Built-in catalog entries, including the published [32,16,8] enumerator
/// with A_8 = 364 (Conway-Sloane 1990) that has no small generator here.
pub fn builtin_catalog() -> Vec<CodeCatalogEntry> {
    let make = |name: &str, code: &BinaryLinearCode, source: &str| {
        let distribution = weight_distribution(code).expect("builtin enumeration");
        CodeCatalogEntry {
            name: name.to_string(),
            n: code.n(),
            k: code.k(),
            source: source.to_string(),
            distribution,
        }
    };
    let mut out = vec![
        make("rep2", &repetition2(), "repetition code"),
        make("ham8", &extended_hamming8(), "extended Hamming code (e8)"),
        make(
            "dc16",
            &double_circulant16(),
            "pure double circulant [16,8,4], first row 01010111",
        ),
        make("golay24", &golay24(), "extended binary Golay code"),
        make("rm32", &reed_muller_32(), "Reed-Muller RM(2,5)"),
    ];
    // [32,16,8] self-dual code of Conway-Sloane 1990 with A_8 = 364
    let cs32 = CodeCatalogEntry {
        name: "cs32".to_string(),
        n: 32,
        k: 16,
        source: "Conway-Sloane 1990 singly-even [32,16,8]".to_string(),
        distribution: WeightDistribution::from_sparse(
            32,
            &[
                (0, 1),
                (8, 364),
                (10, 2048),
                (12, 6720),
                (14, 14336),
                (16, 18598),
                (18, 14336),
                (20, 6720),
                (22, 2048),
                (24, 364),
                (32, 1),
            ],
        )
        .expect("static distribution"),
    };
    validate_entry(&cs32).expect("static distribution");
    out.push(cs32);
    out
}
