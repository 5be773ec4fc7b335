//! Benchmark fixtures shared by the criterion benches.

use d4_core::context::BiquadraticContext;
use d4_core::normcond::phi;
use d4_core::quartic::{build_field, D4Field};

/// Family member `m` over `Q(sqrt(a), sqrt(b))`.
pub fn field(a: i64, b: i64, m: u64) -> D4Field {
    let ctx = BiquadraticContext::new(a, b).expect("valid context");
    build_field(&ctx, &phi(&ctx).expect("nonempty family"), m).expect("admissible m")
}
