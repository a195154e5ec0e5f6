//! Bitmask subsets of the ground set `{1, ..., n}` (bit `i` is element `i + 1`).

/// A subset of the ground set.
pub type Subset = u32;

/// Maximal supported ground-set size.
pub const MAX_N: usize = 16;

pub fn full(n: usize) -> Subset {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub fn size(s: Subset) -> usize {
    s.count_ones() as usize
}

pub fn contains(s: Subset, i: usize) -> bool {
    s & (1 << i) != 0
}

pub fn is_subset(a: Subset, b: Subset) -> bool {
    a & !b == 0
}

/// Zero-based elements in increasing order.
pub fn elements(s: Subset) -> Vec<usize> {
    (0..32).filter(|&i| contains(s, i)).collect()
}

pub fn from_elements(items: impl IntoIterator<Item = usize>) -> Subset {
    items.into_iter().fold(0, |acc, i| acc | (1 << i))
}

/// All `k`-subsets of an `n`-set in increasing numeric order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = Subset> {
    (0..=full(n)).filter(move |s| size(*s) == k)
}

/// Labels a subset the way the examples in the literature do: `∅`, `E`, or
/// the concatenated 1-based elements (`124`). Ground sets with more than nine
/// elements use comma separators.
pub fn label(s: Subset, n: usize) -> String {
    if s == 0 {
        return "∅".into();
    }
    if s == full(n) {
        return "E".into();
    }
    let parts: Vec<String> = elements(s).iter().map(|i| (i + 1).to_string()).collect();
    if n <= 9 {
        parts.concat()
    } else {
        parts.join(",")
    }
}

/// Inverse of [`label`]; also accepts `empty`, `{}` and comma lists.
pub fn parse_label(text: &str, n: usize) -> Option<Subset> {
    let t = text.trim();
    match t {
        "∅" | "empty" | "{}" | "" => return Some(0),
        "E" => return Some(full(n)),
        _ => {}
    }
    let t = t.trim_start_matches('{').trim_end_matches('}');
    let items: Vec<usize> = if t.contains(',') || n > 9 {
        t.split(',').map(|p| p.trim().parse::<usize>().ok()).collect::<Option<_>>()?
    } else {
        t.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()?
    };
    if items.iter().any(|&i| i == 0 || i > n) {
        return None;
    }
    Some(from_elements(items.into_iter().map(|i| i - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for s in 0..=full(5) {
            assert_eq!(parse_label(&label(s, 5), 5), Some(s));
        }
        assert_eq!(label(0b1011, 5), "124");
        assert_eq!(label(0b1011, 11), "1,2,4");
        assert_eq!(parse_label("1,2,4", 11), Some(0b1011));
        assert_eq!(parse_label("7", 5), None);
    }
}
