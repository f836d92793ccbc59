// scratch debug: replicate the sigma=0.75 omega=1 probe scan
use thermoplate_core::*;

fn main() {
    let model = EigenModel::default();
    let lambda = 14107900.792337263f64;
    let (sigma, omega) = (0.75, 1.0);
    let search = SearchParams::default();
    match resolvent_norm(&model, lambda, sigma, omega, &search) {
        Ok(s) => println!("ok norm={} argmax={} resid={}", s.norm, s.argmax_mode, s.identity_residual),
        Err(e) => println!("err: {e}"),
    }
    // probe modes manually
    let mut worst = (0.0f64, 0u64);
    let mut n = 1u64;
    while n <= 1_000_000 {
        let block = generator_block(model.eigenvalue(n).unwrap(), sigma, omega).unwrap();
        let f = [C64::new(1.0/block.weights[0].sqrt(),0.0), C64::new(0.0,1.0/block.weights[1].sqrt()), C64::new(1.0,0.0)];
        let u = solve_block(&block, lambda, &f).unwrap();
        let lhs = block.eta*u[2].norm_sqr();
        let rhs = block.weighted_inner(&f,&u).re;
        let un = block.weighted_norm(&u);
        let r = (lhs-rhs).abs()/(block.weighted_norm(&f)*un + (lambda.abs()+block.eta)*un*un);
        if r > worst.0 { worst = (r, n); }
        n *= 2;
    }
    println!("coarse worst: {:?}", worst);
}
