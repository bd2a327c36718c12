use crate::constructions::PathPartition;

/// Partitions of `total` in reverse lexicographic order, `[4], [3,1], [2,2], ...`,
/// optionally restricted to parts no larger than `max_part`.
pub fn enumerate_partitions(total: usize, max_part: Option<usize>) -> Partitions {
    let cap = max_part.unwrap_or(total).min(total);
    let next = if total == 0 || cap == 0 {
        None
    } else {
        let mut first = vec![cap; total / cap];
        if !total.is_multiple_of(cap) {
            first.push(total % cap);
        }
        Some(first)
    };
    Partitions { next }
}

pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = PathPartition;

    fn next(&mut self) -> Option<PathPartition> {
        let current = self.next.take()?;
        let mut a = current.clone();
        let mut ones = 0;
        while a.last() == Some(&1) {
            a.pop();
            ones += 1;
        }
        if let Some(v) = a.pop() {
            let w = v - 1;
            let mut rem = ones + v;
            while rem >= w {
                a.push(w);
                rem -= w;
            }
            if rem > 0 {
                a.push(rem);
            }
            self.next = Some(a);
        }
        Some(PathPartition::new(current).expect("parts are positive"))
    }
}
