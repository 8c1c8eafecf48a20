//! Monotone maps between finite ordinals `[n] = {0, ..., n}`.
//!
//! A monotone map `[m] -> [n]` is stored as a vector of length `m + 1`.

/// Whether `f` is a monotone map into `[n]`.
pub fn is_monotone(f: &[usize], n: usize) -> bool {
    !f.is_empty() && f.windows(2).all(|w| w[0] <= w[1]) && f.iter().all(|&x| x <= n)
}

pub fn is_surjective(f: &[usize], n: usize) -> bool {
    is_monotone(f, n) && f[0] == 0 && f[f.len() - 1] == n && f.windows(2).all(|w| w[1] - w[0] <= 1)
}

pub fn is_injective(f: &[usize]) -> bool {
    f.windows(2).all(|w| w[0] < w[1])
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..=n).collect()
}

pub fn is_identity(f: &[usize]) -> bool {
    f.iter().enumerate().all(|(i, &x)| i == x)
}

/// `g ∘ f`.
pub fn after(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&t| g[t]).collect()
}

/// Epi-mono factorisation `f = inj ∘ surj`.
pub fn factor(f: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut inj: Vec<usize> = Vec::with_capacity(f.len());
    let mut surj = Vec::with_capacity(f.len());
    for &x in f {
        if inj.last() != Some(&x) {
            inj.push(x);
        }
        surj.push(inj.len() - 1);
    }
    (surj, inj)
}

/// Coface `δ_i: [n-1] -> [n]` skipping `i`.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|t| if t < i { t } else { t + 1 }).collect()
}

/// Codegeneracy `σ_i: [n+1] -> [n]` hitting `i` twice.
pub fn codegeneracy(n: usize, i: usize) -> Vec<usize> {
    (0..=n + 1)
        .map(|t| if t <= i { t } else { t - 1 })
        .collect()
}

/// All monotone maps `[m] -> [n]` in lexicographic order.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn rec(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            rec(m, n, v, cur, out);
            cur.pop();
        }
    }
    rec(m, n, 0, &mut cur, &mut out);
    out
}

/// All monotone surjections `[m] -> [p]`.
pub fn surjections(m: usize, p: usize) -> Vec<Vec<usize>> {
    monotone_maps(m, p)
        .into_iter()
        .filter(|f| is_surjective(f, p))
        .collect()
}

/// Number of monotone maps `[m] -> [n]`, i.e. `C(m + n + 1, m + 1)`.
pub fn count_monotone(m: usize, n: usize) -> u128 {
    let (a, b) = (m + n + 1, m + 1);
    let mut r: u128 = 1;
    for i in 0..b {
        r = r * (a - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Degeneracy word of a surjection in Eilenberg–Zilber normal form
/// (strictly decreasing indices `j` with `s(j) = s(j+1)`).
pub fn word_of_surjection(s: &[usize]) -> Vec<usize> {
    let mut w: Vec<usize> = (0..s.len().saturating_sub(1))
        .filter(|&t| s[t] == s[t + 1])
        .collect();
    w.reverse();
    w
}

/// Inverse of [`word_of_surjection`] for a word applied to a `p`-simplex.
pub fn surjection_of_word(word: &[usize], p: usize) -> Option<Vec<usize>> {
    if word.windows(2).any(|w| w[0] <= w[1]) {
        return None;
    }
    let m = p + word.len();
    if word.iter().any(|&j| j >= m) {
        return None;
    }
    let mut s = vec![0; m + 1];
    for t in 1..=m {
        s[t] = if word.contains(&(t - 1)) {
            s[t - 1]
        } else {
            s[t - 1] + 1
        };
    }
    Some(s)
}

/// The section of a surjection picking the least preimage of each point.
pub fn min_section(s: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for (t, &x) in s.iter().enumerate() {
        if out.len() == x {
            out.push(t);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_binomials() {
        for m in 0..4 {
            for n in 0..4 {
                assert_eq!(monotone_maps(m, n).len() as u128, count_monotone(m, n));
            }
        }
        assert_eq!(count_monotone(1, 2), 6);
    }

    #[test]
    fn words_round_trip() {
        for m in 0..5 {
            for p in 0..=m {
                for s in surjections(m, p) {
                    let w = word_of_surjection(&s);
                    assert_eq!(surjection_of_word(&w, p).unwrap(), s);
                }
            }
        }
        assert_eq!(word_of_surjection(&[0, 0, 0]), vec![1, 0]);
        assert!(surjection_of_word(&[0, 1], 0).is_none());
    }

    #[test]
    fn factorisation() {
        let (s, i) = factor(&[0, 2, 2, 3]);
        assert_eq!(s, vec![0, 1, 1, 2]);
        assert_eq!(i, vec![0, 2, 3]);
        assert_eq!(after(&i, &s), vec![0, 2, 2, 3]);
        assert_eq!(min_section(&[0, 0, 1, 1, 2]), vec![0, 2, 4]);
    }
}
