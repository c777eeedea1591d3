use qident::number::rat;
use qident::qseries::*;

fn main() {
    let (lhs, rhs) = jacobi_triple_sides(8, &rat(30)).unwrap();
    println!("lhs xw={:?} qtr={:?}", lhs.x_window(), lhs.q_trunc_exp());
    println!("rhs xw={:?} qtr={:?}", rhs.x_window(), rhs.q_trunc_exp());
    let (lhs, rhs) = quintuple_sides(8, &rat(30)).unwrap();
    println!("q lhs xw={:?} qtr={:?}", lhs.x_window(), lhs.q_trunc_exp());
    println!("q rhs xw={:?} qtr={:?}", rhs.x_window(), rhs.q_trunc_exp());
}
