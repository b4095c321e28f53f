//! Test-only reference implementations, written independently of the
//! library's code paths.

#![allow(dead_code)]

/// Naive recomputation of every population measure from raw symbol lists.
#[derive(Debug, Clone, PartialEq)]
pub struct NaiveReport {
    pub sample_sizes: Vec<usize>,
    pub calculable_length: usize,
    pub entropies: Vec<f64>,
    pub complexity: Option<f64>,
    pub efficiency: Option<f64>,
}

pub fn naive_sample_size(members: &[Vec<usize>], site: usize) -> usize {
    let mut n = 0;
    for m in members {
        if m.len() >= site {
            n += 1;
        }
    }
    n
}

/// Entropy in base `alphabet_size` via `log2`, summed over every symbol of
/// the alphabet (absent symbols contribute nothing).
pub fn naive_entropy(members: &[Vec<usize>], site: usize, alphabet_size: usize) -> f64 {
    let mut counts = vec![0usize; alphabet_size];
    let mut total = 0usize;
    for m in members {
        if m.len() >= site {
            counts[m[site - 1]] += 1;
            total += 1;
        }
    }
    let mut h = 0.0;
    for &c in &counts {
        if c > 0 {
            let p = c as f64 / total as f64;
            h -= p * p.log2();
        }
    }
    h / (alphabet_size as f64).log2()
}

pub fn naive_report(members: &[Vec<usize>], alphabet_size: usize) -> NaiveReport {
    let max_length = members.iter().map(Vec::len).max().unwrap_or(0);
    let sample_sizes: Vec<usize> = (1..=max_length)
        .map(|site| naive_sample_size(members, site))
        .collect();
    let mut calculable_length = 0;
    for l in 1..=max_length {
        if naive_sample_size(members, l) >= alphabet_size * l {
            calculable_length = l;
        }
    }
    let entropies: Vec<f64> = (1..=calculable_length)
        .map(|site| naive_entropy(members, site, alphabet_size))
        .collect();
    let (complexity, efficiency) = if calculable_length == 0 {
        (None, None)
    } else {
        let c = calculable_length as f64 - entropies.iter().sum::<f64>();
        (Some(c), Some(c / calculable_length as f64))
    };
    NaiveReport {
        sample_sizes,
        calculable_length,
        entropies,
        complexity,
        efficiency,
    }
}

fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let average = (i + j) as f64 / 2.0 + 1.0;
        for k in i..=j {
            ranks[order[k]] = average;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        cov += (a - mx) * (b - my);
        vx += (a - mx) * (a - mx);
        vy += (b - my) * (b - my);
    }
    cov / (vx * vy).sqrt()
}

/// Levenshtein distance between two symbol lists.
pub fn edit_distance(a: &[usize], b: &[usize]) -> usize {
    let mut previous: Vec<usize> = (0..=b.len()).collect();
    for (i, x) in a.iter().enumerate() {
        let mut current = vec![i + 1; b.len() + 1];
        for (j, y) in b.iter().enumerate() {
            let substitution = previous[j] + usize::from(x != y);
            current[j + 1] = substitution.min(previous[j + 1] + 1).min(current[j] + 1);
        }
        previous = current;
    }
    previous[b.len()]
}
