//! First-order Viterbi decoding over a score lattice.
//!
//! A tag sequence `y` scores `start[y0] + Σ emissions[i][yi] + Σ transitions[y(i-1)][yi]`.
//! Among equally scored sequences the decoder returns the one that is
//! smallest when compared from the last position backwards, each position
//! compared by tag index.

/// Best tag index sequence. `emissions[i]` and `start` have one score per tag,
/// `transitions` is `tags × tags`.
pub fn viterbi(emissions: &[Vec<f64>], start: &[f64], transitions: &[Vec<f64>]) -> Vec<usize> {
    let n = emissions.len();
    if n == 0 {
        return Vec::new();
    }
    let tags = start.len();
    let mut score: Vec<f64> = (0..tags).map(|t| start[t] + emissions[0][t]).collect();
    let mut back: Vec<Vec<usize>> = Vec::with_capacity(n);
    back.push(vec![0; tags]);
    let mut next = vec![0.0; tags];
    for emission in &emissions[1..] {
        let mut ptr = vec![0; tags];
        for cur in 0..tags {
            let mut best = f64::NEG_INFINITY;
            let mut arg = 0;
            for (prev, &s) in score.iter().enumerate() {
                let cand = s + transitions[prev][cur];
                if cand > best {
                    best = cand;
                    arg = prev;
                }
            }
            next[cur] = best + emission[cur];
            ptr[cur] = arg;
        }
        std::mem::swap(&mut score, &mut next);
        back.push(ptr);
    }
    let mut last = 0;
    for t in 1..tags {
        if score[t] > score[last] {
            last = t;
        }
    }
    let mut path = vec![0; n];
    path[n - 1] = last;
    for i in (1..n).rev() {
        path[i - 1] = back[i][path[i]];
    }
    path
}

/// Score of one tag sequence under the lattice.
pub fn sequence_score(
    emissions: &[Vec<f64>],
    start: &[f64],
    transitions: &[Vec<f64>],
    path: &[usize],
) -> f64 {
    let mut total = 0.0;
    for (i, &t) in path.iter().enumerate() {
        total += emissions[i][t];
        total += if i == 0 {
            start[t]
        } else {
            transitions[path[i - 1]][t]
        };
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_single() {
        assert!(viterbi(&[], &[0.0, 0.0], &[vec![0.0; 2], vec![0.0; 2]]).is_empty());
        let path = viterbi(&[vec![0.5, 2.0, 1.0]], &[0.0; 3], &[vec![9.0; 3], vec![9.0; 3], vec![9.0; 3]]);
        assert_eq!(path, [1]);
    }

    #[test]
    fn transitions_override_emissions() {
        let emissions = vec![vec![1.0, 0.0], vec![1.0, 0.9]];
        let transitions = vec![vec![-5.0, 0.0], vec![0.0, 0.0]];
        assert_eq!(viterbi(&emissions, &[0.0, 0.0], &transitions), [0, 1]);
    }

    #[test]
    fn ties_prefer_low_indices_from_the_end() {
        let flat = vec![vec![0.0; 3]; 3];
        assert_eq!(viterbi(&flat, &[0.0; 3], &vec![vec![0.0; 3]; 3]), [0, 0, 0]);
    }
}
