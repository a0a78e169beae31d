// quick probe of the Newton path at a deep-boundary target
fn main() {
    let p = delzant::catalog::cp2();
    for s in [5.0_f64, 10.0, 20.0] {
        let x = [s, 0.0];
        match delzant::geometry::legendre_inverse(&p, &x) {
            Ok(xi) => {
                let g = delzant::geometry::potential_grad(&p, &xi).unwrap();
                let r = ((g[0]-x[0]).powi(2) + (g[1]-x[1]).powi(2)).sqrt();
                println!("s={s}: xi={xi:?} residual={r:e}");
            }
            Err(e) => println!("s={s}: {e}"),
        }
    }
}
