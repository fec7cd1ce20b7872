"""
Per-element potentials.

With positions split as pi(z) = 2^p + q and pi*(z) = 2^p* + q*:

    Phi_z = alpha * b(z)                 if p <= p* + kappa
            beta * pi(z) - gamma * b(z)  otherwise

    Psi_z = 0                            if p <= p* + kappa - 1
            2 * beta * q                 otherwise

All arithmetic is exact.
"""

from fractions import Fraction

from ..core.permutation import position_decompose
from ..exceptions import UnknownElementError
from .params import PairState, PotentialParams


def phi_value(pos: int, off_pos: int, budget: Fraction, params: PotentialParams) -> Fraction:
    """Phi for one element given its DLM position, OFF position and budget."""
    p, _ = position_decompose(pos)
    p_off, _ = position_decompose(off_pos)
    if p <= p_off + params.kappa:
        return params.alpha * Fraction(budget)
    return params.beta * pos - params.gamma * Fraction(budget)


def psi_value(pos: int, off_pos: int, params: PotentialParams) -> Fraction:
    """Psi for one element given its DLM and OFF positions."""
    p, q = position_decompose(pos)
    p_off, _ = position_decompose(off_pos)
    if p <= p_off + params.kappa - 1:
        return Fraction(0)
    return 2 * params.beta * q


def _check_element(pair: PairState, z: int) -> None:
    if not 0 <= z < pair.n:
        raise UnknownElementError(f"element {z} is not in 0..{pair.n - 1}")


def phi_z(pair: PairState, params: PotentialParams, z: int) -> Fraction:
    _check_element(pair, z)
    return phi_value(
        pair.alg.pi.position(z), pair.off.position(z), pair.alg.budgets[z], params
    )


def psi_z(pair: PairState, params: PotentialParams, z: int) -> Fraction:
    _check_element(pair, z)
    return psi_value(pair.alg.pi.position(z), pair.off.position(z), params)


def total_potential(pair: PairState, params: PotentialParams) -> tuple[Fraction, Fraction]:
    """Return (Phi, Psi) summed over the universe."""
    phi = Fraction(0)
    psi = Fraction(0)
    for z in range(pair.n):
        phi += phi_z(pair, params, z)
        psi += psi_z(pair, params, z)
    return phi, psi


def position_is_safe(pos: int, off_pos: int, params: PotentialParams) -> bool:
    """Safe means p <= p* + kappa - 1 for the decomposed positions."""
    p, _ = position_decompose(pos)
    p_off, _ = position_decompose(off_pos)
    return p <= p_off + params.kappa - 1


def is_safe(pair: PairState, params: PotentialParams, w: int) -> bool:
    """w is safe when p(w) <= p*(w) + kappa - 1."""
    _check_element(pair, w)
    return position_is_safe(pair.alg.pi.position(w), pair.off.position(w), params)


def check_non_negative(pair: PairState, params: PotentialParams) -> int | None:
    """Return the first element with a negative Phi_z or Psi_z, or None."""
    for z in range(pair.n):
        if phi_z(pair, params, z) < 0 or psi_z(pair, params, z) < 0:
            return z
    return None


def alg_shift_delta(
    pos: int, off_pos: int, budget: Fraction, params: PotentialParams
) -> Fraction:
    """
    Change of Phi_w + Psi_w when w moves one position back on DLM's list.

    OFF's list and w's budget stay fixed. Bounded by 0 for a safe w and by
    3 * beta otherwise.
    """
    before = phi_value(pos, off_pos, budget, params) + psi_value(pos, off_pos, params)
    after = phi_value(pos + 1, off_pos, budget, params) + psi_value(
        pos + 1, off_pos, params
    )
    return after - before


def off_shift_delta(
    pos: int, off_pos: int, budget: Fraction, params: PotentialParams
) -> tuple[Fraction, Fraction]:
    """
    Changes (dPhi_w, dPsi_w) when w moves one position back on OFF's list.

    Both are at most 0 for every budget below 3/2 * pos.
    """
    d_phi = phi_value(pos, off_pos + 1, budget, params) - phi_value(
        pos, off_pos, budget, params
    )
    d_psi = psi_value(pos, off_pos + 1, params) - psi_value(pos, off_pos, params)
    return d_phi, d_psi
