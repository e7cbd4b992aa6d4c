use gni_core::*;
fn main() {
    for seed in 0..8u64 {
        let g = synth::gen_random_graph(7, 0.4, seed).unwrap();
        let theta = synth::precision_from_graph(&g, &synth::PrecisionParams::default()).unwrap();
        let sigma = synth::covariance_from_precision(&theta).unwrap();
        let data = synth::sample_gaussian(&sigma, 40, 100 + seed).unwrap();
        let s = dataset::sample_covariance(&dataset::standardize(&data).unwrap()).unwrap();
        let lambda = s.max_abs_offdiag() * 0.3;
        let mut prev_dual = f64::NEG_INFINITY;
        let mut prev_primal = f64::NEG_INFINITY;
        let mut first_primal = None;
        let mut last_primal = 0.0;
        let mut worst_dual = 0.0f64;
        for sweeps in 1..=8 {
            let settings = glasso::GlassoSettings { tol: 0.0, max_iter: sweeps, ..Default::default() };
            let fit = glasso::glasso_fit(&s, lambda, 40, &settings, None).unwrap();
            let dual = fit.w.entries().clone().cholesky().unwrap().l().diagonal().iter().map(|d| d.ln()).sum::<f64>() * 2.0;
            let logdet_t = -dual;
            let tr: f64 = s.entries().iter().zip(fit.theta.entries().iter()).map(|(a,b)| a*b).sum();
            let l1: f64 = (0..7).flat_map(|k| (0..7).map(move |l| (k,l))).filter(|(k,l)| k!=l).map(|(k,l)| fit.theta.entries()[(k,l)].abs()).sum();
            let primal = logdet_t - tr - lambda*l1;
            if dual < prev_dual { worst_dual = worst_dual.max(prev_dual - dual); }
            prev_dual = dual; prev_primal = primal;
            if first_primal.is_none() { first_primal = Some(primal); }
            last_primal = primal;
        }
        let _ = prev_primal;
        println!("seed {seed}: worst dual decrease {worst_dual:e}, primal net gain {:.3e}", last_primal - first_primal.unwrap());
    }
}
