//! The Fourier transform of a finite Abelian group: the dense matrix, the
//! fast path, and the shift-invariant states it maps to basis states.
//!
//! ```bash
//! cargo run -p qfourier --example fourier_transform
//! ```

use qfourier::fourier::{apply_ft, fourier_basis_state, ft_matrix, shift_operator};
use qfourier::group::GroupSpec;

fn main() -> qfourier::Result<()> {
    let b2 = GroupSpec::boolean(2)?;
    println!("FT of B^2 (= H tensor H):\n{}", ft_matrix(&b2)?.to_text());

    let z6 = GroupSpec::cyclic(6)?;
    let m = ft_matrix(&z6)?;
    println!("Z_6 unitarity error: {:.2e}", m.unitarity_error());

    let g = GroupSpec::new(&[3, 4])?;
    let chi = g.element(&[2, 1])?;
    let mut state = fourier_basis_state(&g, &chi)?;

    // shifting only multiplies |chi> by a phase
    let before = state.clone();
    shift_operator(&g, &g.element(&[1, 3])?, &mut state, 0)?;
    let overlap = before.inner(&state)?;
    println!("|<chi|U_h|chi>| = {:.12}", overlap.norm());

    apply_ft(&g, &mut state, 0)?;
    let p = state.probabilities(0)?;
    let idx = g.index_of(&chi)?;
    println!("after FT: P(g = {chi}) = {:.12}", p[idx]);
    Ok(())
}
