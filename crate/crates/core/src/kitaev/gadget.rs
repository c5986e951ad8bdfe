//! `Lambda(U)` built from `U` itself, a control qubit and an ancilla
//! register, for unitaries that fix `|0>`.

use num_complex::Complex64;

use super::PowerOracle;
use crate::error::{Error, Result};
use crate::simulator::{RegisterId, RegisterLayout, StateVector};

const C: RegisterId = 0;
const X: RegisterId = 1;
const Y: RegisterId = 2;

/// Registers `(C, X, Y)` with `X` and `Y` padded to the next power of two.
pub fn gadget_layout(u: &dyn PowerOracle) -> Result<RegisterLayout> {
    let d = u.dim().next_power_of_two();
    RegisterLayout::new(&[2, d, d])
}

fn check_layout(u: &dyn PowerOracle, state: &StateVector) -> Result<()> {
    let expected = gadget_layout(u)?;
    if state.layout().dims() != expected.dims() {
        return Err(Error::InvalidArgument(format!(
            "gadget needs registers {:?}, got {:?}",
            expected.dims(),
            state.layout().dims()
        )));
    }
    Ok(())
}

/// `Lambda(tau)[C, a, b]`: `|1>|x>|y> -> |1>|x>|x xor y>`.
fn controlled_xor(state: &mut StateVector, a: RegisterId, b: RegisterId) {
    let layout = state.layout().clone();
    let stride_b = layout.stride(b).unwrap_or(1);
    state.permute(|i| {
        if layout.label(i, C) == 0 {
            return i;
        }
        let x = layout.label(i, a);
        let y = layout.label(i, b);
        i - y * stride_b + (x ^ y) * stride_b
    });
}

fn negate_control(state: &mut StateVector) {
    let layout = state.layout().clone();
    let stride = layout.stride(C).unwrap_or(1);
    state.permute(|i| {
        if layout.label(i, C) == 0 {
            i + stride
        } else {
            i - stride
        }
    });
}

/// `U^(2^j)` on the first `dim` labels of `reg`, identity on the padding.
fn apply_padded(
    u: &dyn PowerOracle,
    j: u32,
    state: &mut StateVector,
    reg: RegisterId,
    control: Option<usize>,
) -> Result<()> {
    let dim = u.dim();
    let layout = state.layout().clone();
    let mut err = None;
    state.transform_register_if(
        reg,
        |start| control.is_none_or(|c| layout.label(start, C) == c),
        |fibre| {
            if let Err(e) = u.apply_power(j, &mut fibre[..dim]) {
                err = Some(e);
            }
        },
    )?;
    err.map_or(Ok(()), Err)
}

/// `N[C] Lt[C,X,Y] Lt[C,Y,X] U[X] Lt[C,Y,X] Lt[C,X,Y] N[C]`, where `Lt` is
/// the controlled xor. With `Y = |0>` this acts as `Lambda(U^(2^j))` on
/// `(C, X)` and returns `Y` to `|0>`.
pub fn controlled_u_gadget(u: &dyn PowerOracle, j: u32, state: &mut StateVector) -> Result<()> {
    if !u.fixes_zero() {
        return Err(Error::ZeroNotFixed);
    }
    check_layout(u, state)?;
    negate_control(state);
    controlled_xor(state, X, Y);
    controlled_xor(state, Y, X);
    apply_padded(u, j, state, X, None)?;
    controlled_xor(state, Y, X);
    controlled_xor(state, X, Y);
    negate_control(state);
    Ok(())
}

/// `Lambda(U^(2^j))` on `(C, X)` applied directly; `Y` untouched.
pub fn controlled_u_direct(u: &dyn PowerOracle, j: u32, state: &mut StateVector) -> Result<()> {
    check_layout(u, state)?;
    apply_padded(u, j, state, X, Some(1))
}

/// `1 - Tr(rho^2)` for the reduced state of `reg`; zero iff `reg` is
/// unentangled with the rest.
pub fn linear_entropy(state: &StateVector, reg: RegisterId) -> Result<f64> {
    let layout = state.layout();
    let dim = layout.dim(reg)?;
    let stride = layout.stride(reg)?;
    let amps = state.amplitudes();
    let mut rho = vec![Complex64::new(0.0, 0.0); dim * dim];
    for start in layout.fibre_starts(reg) {
        for a in 0..dim {
            let va = amps[start + a * stride];
            if va.norm_sqr() == 0.0 {
                continue;
            }
            for b in 0..dim {
                rho[a * dim + b] += va * amps[start + b * stride].conj();
            }
        }
    }
    let purity: f64 = rho.iter().map(|z| z.norm_sqr()).sum();
    Ok((1.0 - purity).max(0.0))
}
