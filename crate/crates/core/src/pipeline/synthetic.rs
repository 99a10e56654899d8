use std::fmt::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, Normal};

/// Header of the raw backorder CSV, in the order the public dataset ships it.
pub const RAW_COLUMNS: &[&str] = &[
    "sku",
    "national_inv",
    "lead_time",
    "in_transit_qty",
    "forecast_3_month",
    "forecast_6_month",
    "forecast_9_month",
    "sales_1_month",
    "sales_3_month",
    "sales_6_month",
    "sales_9_month",
    "min_bank",
    "potential_issue",
    "pieces_past_due",
    "perf_6_month_avg",
    "perf_12_month_avg",
    "local_bo_qty",
    "deck_risk",
    "oe_constraint",
    "ppap_risk",
    "stop_auto_buy",
    "rev_stop",
    "went_on_backorder",
];

fn jitter(rng: &mut ChaCha8Rng, noise: &Normal<f64>, s: f64) -> f64 {
    1.0 + s * noise.sample(rng)
}

fn flag(rng: &mut ChaCha8Rng, p: f64) -> &'static str {
    if rng.gen::<f64>() < p {
        "Yes"
    } else {
        "No"
    }
}

/// Seeded stand-in for the raw backorder table with the same header,
/// heavy-tailed quantities, near-collinear forecast/sales horizons, a few
/// missing lead times and `-99` performance sentinels.
///
/// Exactly `backorders` of the `rows` records are labelled `Yes`; those
/// items carry less stock relative to demand, so the classes are separable
/// but overlapping.
pub fn synthetic_raw_csv(rows: usize, backorders: usize, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<bool> = (0..rows).map(|i| i < backorders).collect();
    labels.shuffle(&mut rng);
    let demand = LogNormal::new(3.0, 1.2).expect("valid lognormal");
    let noise = Normal::new(0.0, 1.0).expect("valid normal");

    let mut out = RAW_COLUMNS.join(",");
    out.push('\n');
    for (i, &bo) in labels.iter().enumerate() {
        let y = f64::from(u8::from(bo));
        let d: f64 = demand.sample(&mut rng);
        let national_inv = if rng.gen::<f64>() < 0.02 {
            -(rng.gen_range(1.0..20.0f64)).round()
        } else if bo {
            (d * rng.gen_range(0.0..0.6)).round()
        } else {
            (d * rng.gen_range(0.3..6.0)).round()
        };
        let lead_time = if rng.gen::<f64>() < 0.03 {
            String::new()
        } else {
            rng.gen_range(2..=12).to_string()
        };
        let in_transit = (d * rng.gen_range(0.0..1.0) * (1.0 - 0.5 * y)).round();
        let f3 = (d * 3.0 * jitter(&mut rng, &noise, 0.1) + y * d).max(0.0).round();
        let f6 = (f3 * 2.0 * jitter(&mut rng, &noise, 0.05)).max(0.0).round();
        let f9 = (f3 * 3.0 * jitter(&mut rng, &noise, 0.05)).max(0.0).round();
        let s1 = (d * jitter(&mut rng, &noise, 0.25)).max(0.0).round();
        let s3 = (s1 * 3.0 * jitter(&mut rng, &noise, 0.08)).max(0.0).round();
        let s6 = (s3 * 2.0 * jitter(&mut rng, &noise, 0.06)).max(0.0).round();
        let s9 = (s6 * 1.5 * jitter(&mut rng, &noise, 0.04)).max(0.0).round();
        let min_bank = (d * rng.gen_range(0.0..1.5)).round();
        let potential_issue = flag(&mut rng, 0.01 + 0.04 * y);
        let past_due = if rng.gen::<f64>() < 0.04 + 0.1 * y {
            (d * rng.gen_range(0.0..1.0)).round()
        } else {
            0.0
        };
        let (perf6, perf12) = if rng.gen::<f64>() < 0.05 {
            (-99.0, -99.0)
        } else {
            let p6: f64 = rng.gen_range(0.5..1.0) - 0.25 * y * rng.gen::<f64>();
            (p6, (p6 + 0.05 * noise.sample(&mut rng)).clamp(0.0, 1.0))
        };
        let local_bo = if rng.gen::<f64>() < 0.03 + 0.15 * y {
            rng.gen_range(1..10) as f64
        } else {
            0.0
        };
        let deck = flag(&mut rng, 0.2 + 0.1 * y);
        let oe = flag(&mut rng, 0.01);
        let ppap = flag(&mut rng, 0.12 + 0.05 * y);
        let stop = flag(&mut rng, 0.96);
        let rev = flag(&mut rng, 0.01);

        writeln!(
            out,
            "{},{national_inv},{lead_time},{in_transit},{f3},{f6},{f9},{s1},{s3},{s6},{s9},{min_bank},{potential_issue},{past_due},{perf6:.2},{perf12:.2},{local_bo},{deck},{oe},{ppap},{stop},{rev},{}",
            1_000_000 + i,
            if bo { "Yes" } else { "No" }
        )
        .expect("writing to a String");
    }
    out
}
