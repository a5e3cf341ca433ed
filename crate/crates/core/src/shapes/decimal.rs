// Schoolbook arithmetic on decimal digit strings.

pub(crate) fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Drops redundant leading zeroes, keeping a lone `0`.
pub(crate) fn strip(s: &str) -> String {
    let t = s.trim_start_matches('0');
    if t.is_empty() {
        "0".to_owned()
    } else {
        t.to_owned()
    }
}

pub(crate) fn add(a: &str, b: &str) -> String {
    let (a, b) = (a.as_bytes(), b.as_bytes());
    let mut out = Vec::with_capacity(a.len().max(b.len()) + 1);
    let mut carry = 0u8;
    let (mut i, mut j) = (a.len(), b.len());
    while i > 0 || j > 0 || carry > 0 {
        let mut d = carry;
        if i > 0 {
            i -= 1;
            d += a[i] - b'0';
        }
        if j > 0 {
            j -= 1;
            d += b[j] - b'0';
        }
        out.push(b'0' + d % 10);
        carry = d / 10;
    }
    out.reverse();
    strip(std::str::from_utf8(&out).expect("ascii digits"))
}

pub(crate) fn mul(a: &str, b: &str) -> String {
    let (a, b) = (a.as_bytes(), b.as_bytes());
    let mut acc = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().rev().enumerate() {
        for (j, &y) in b.iter().rev().enumerate() {
            acc[i + j] += u32::from(x - b'0') * u32::from(y - b'0');
        }
        // keep cells small
        for k in 0..acc.len() - 1 {
            acc[k + 1] += acc[k] / 10;
            acc[k] %= 10;
        }
    }
    let digits: String = acc.iter().rev().map(|&d| char::from(b'0' + d as u8)).collect();
    strip(&digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_arithmetic() {
        assert_eq!(add("007", "5"), "12");
        assert_eq!(add("0", "0"), "0");
        assert_eq!(add("999", "1"), "1000");
        assert_eq!(mul("12", "34"), "408");
        assert_eq!(mul("0", "34"), "0");
        assert_eq!(mul("99", "99"), "9801");
        assert_eq!(strip("000"), "0");
    }
}
