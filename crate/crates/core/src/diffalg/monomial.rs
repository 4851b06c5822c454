use std::cmp::Ordering;
use std::fmt;

/// A differential product `u^(α₁)···u^(α_j)`.
///
/// The derivative orders are kept sorted ascending, which makes the
/// representation canonical: two monomials are equal iff their order lists
/// are. The empty list is the constant monomial `1`.
///
/// Monomials are totally ordered by `(degree, order, orders)`, which is the
/// order terms appear in serialized output.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DiffMonomial {
    orders: Vec<u32>,
}

impl DiffMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn u() -> Self {
        Self::derivative(0)
    }

    /// The single factor `u^(t)`.
    pub fn derivative(t: u32) -> Self {
        Self { orders: vec![t] }
    }

    /// `u^j`.
    pub fn u_pow(j: usize) -> Self {
        Self { orders: vec![0; j] }
    }

    pub fn from_orders(mut orders: Vec<u32>) -> Self {
        orders.sort_unstable();
        Self { orders }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// Number of factors, `j`.
    pub fn degree(&self) -> usize {
        self.orders.len()
    }

    /// Total number of derivatives, `α`.
    pub fn order(&self) -> u32 {
        self.orders.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.orders.is_empty()
    }

    /// Multiplies by one more factor `u^(t)`.
    pub fn times(&self, t: u32) -> Self {
        let mut orders = self.orders.clone();
        let at = orders.partition_point(|&o| o <= t);
        orders.insert(at, t);
        Self { orders }
    }

    /// Product-rule expansion of the derivative: each distinct factor
    /// `u^(a)` with multiplicity `c` contributes `c` copies of the monomial
    /// with one `a` raised to `a + 1`.
    pub fn derivative_terms(&self) -> Vec<(DiffMonomial, u32)> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.orders.len() {
            let a = self.orders[i];
            let run = self.orders[i..].iter().take_while(|&&o| o == a).count();
            let mut orders = self.orders.clone();
            // Bumping the last copy of `a` keeps the list sorted.
            orders[i + run - 1] = a + 1;
            out.push((Self { orders }, run as u32));
            i += run;
        }
        out
    }

    /// All monomials of degree `j` and order `α`: the partitions of `α` into
    /// at most `j` parts, zero-padded, in ascending canonical order.
    pub fn all_with(j: usize, alpha: u32) -> Vec<DiffMonomial> {
        fn go(slots: usize, remaining: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<DiffMonomial>) {
            if slots == 0 {
                if remaining == 0 {
                    out.push(DiffMonomial { orders: cur.clone() });
                }
                return;
            }
            // The remaining slots all hold values ≥ v.
            let mut v = min;
            while v as u64 * slots as u64 <= remaining as u64 {
                cur.push(v);
                go(slots - 1, remaining - v, v, cur, out);
                cur.pop();
                v += 1;
            }
        }
        let mut out = Vec::new();
        go(j, alpha, 0, &mut Vec::with_capacity(j), &mut out);
        out.sort();
        out
    }
}

impl Ord for DiffMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.order().cmp(&other.order()))
            .then_with(|| self.orders.cmp(&other.orders))
    }
}

impl PartialOrd for DiffMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `u`, `u'`, `u''`, then `u^(t)` for `t ≥ 3`.
pub(crate) fn factor_name(t: u32) -> String {
    match t {
        0 => "u".to_string(),
        1 => "u'".to_string(),
        2 => "u''".to_string(),
        _ => format!("u^({t})"),
    }
}

impl fmt::Display for DiffMonomial {
    /// Factors joined by `·`, repeated factors as powers: `u^2·(u')^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.orders.len() {
            let a = self.orders[i];
            let run = self.orders[i..].iter().take_while(|&&o| o == a).count();
            if !first {
                f.write_str("·")?;
            }
            first = false;
            let name = factor_name(a);
            match (run, a) {
                (1, _) => f.write_str(&name)?,
                (_, 0) => write!(f, "{name}^{run}")?,
                _ => write!(f, "({name})^{run}")?,
            }
            i += run;
        }
        Ok(())
    }
}
