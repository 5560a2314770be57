"""Generalized thermal states, work accounting, and the frame as a battery.

A bath subsystem sits in tau = exp(-sum_i beta_i A_i)/Z where the charges A_i
need not commute; the summed exponent is handled with a single
eigendecomposition, so no operator-splitting error enters the inequality
tests. Work of type A_i is the negative change of that charge in the bath
(and system, when one is present); the weighted works are bounded by the drop
in the system's free entropy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .conservation import partial_sum
from .linalg import (
    check_density,
    hermitize,
    hermitian_eig,
    operator_norm,
    partial_trace,
    von_neumann_entropy,
)
from .protocol import ProtocolResult

# Absorbs fp noise in inequality checks; violations beyond this are real.
SECOND_LAW_SLACK = 1e-9
# Ledger cumulants are long fp sums; deviations within this of the bound pass.
BATTERY_FP_SLACK = 1e-12


@dataclass(frozen=True)
class ThermalSpec:
    """Charges with their inverse generalized temperatures."""

    charges: tuple
    betas: tuple

    def __post_init__(self):
        charges = tuple(self.charges)
        betas = tuple(float(b) for b in self.betas)
        if len(charges) != len(betas):
            raise ValueError("need one inverse temperature per charge")
        if not charges:
            raise ValueError("need at least one charge")
        dims = {c.dim for c in charges}
        if len(dims) != 1:
            raise ValueError(f"charges act on mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "charges", charges)
        object.__setattr__(self, "betas", betas)

    @property
    def dim(self) -> int:
        return self.charges[0].dim

    def exponent(self) -> np.ndarray:
        """The weighted charge sum sum_i beta_i A_i."""
        return hermitize(sum(b * c.matrix for b, c in zip(self.betas, self.charges)))


def thermal_state(spec: ThermalSpec, d: int):
    """Generalized Gibbs state exp(-sum beta_i A_i)/Z on dimension d.

    Returns ``(tau, ln_z)``. The exponent is diagonalized once; weights are
    shifted by the smallest eigenvalue to avoid overflow.
    """
    if spec.dim != d:
        raise ValueError(f"charges act on dimension {spec.dim}, expected {d}")
    w, v = hermitian_eig(spec.exponent())
    shift = float(w[0])
    weights = np.exp(-(w - shift))
    z_shifted = float(np.sum(weights))
    tau = hermitize((v * (weights / z_shifted)) @ v.conj().T)
    ln_z = float(np.log(z_shifted) - shift)
    return tau, ln_z


def free_entropy(rho, spec: ThermalSpec) -> float:
    """F = sum_i beta_i <A_i> - S(rho); minimized by the thermal state at -ln Z."""
    rho = check_density(rho)
    if rho.shape[0] != spec.dim:
        raise ValueError(f"state dimension {rho.shape[0]} does not match charges ({spec.dim})")
    weighted = sum(
        b * float(np.trace(c.matrix @ rho).real) for b, c in zip(spec.betas, spec.charges)
    )
    return weighted - von_neumann_entropy(rho)


@dataclass(frozen=True)
class WorkRecord:
    """Per-charge extracted work and the two second-law margins.

    ``margin_bath_only`` is -sum_i beta_i W_i (nonnegative for any unitary on
    a thermal bath); ``margin_with_system`` is -dF_S - sum_i beta_i W_i
    (nonnegative when a system rides along and starts in product with the
    bath).
    """

    works: dict
    delta_free_entropy: float
    margin_bath_only: float
    margin_with_system: float

    def to_json_dict(self) -> dict:
        return {
            "works": dict(self.works),
            "delta_free_entropy": self.delta_free_entropy,
            "margin_bath_only": self.margin_bath_only,
            "margin_with_system": self.margin_with_system,
        }


def work_accounting(before, after, dims, bath, spec: ThermalSpec, system=()) -> WorkRecord:
    """Charge bookkeeping for a joint evolution over ``dims`` subsystems.

    ``bath`` and ``system`` list the slots in each partition block (the system
    block may be empty). Work of type A_i is -d<A_i on system slots>
    - d<A_i on bath slots>; the free-entropy change is evaluated on the
    reduced system state.
    """
    before = np.asarray(before, dtype=complex)
    after = np.asarray(after, dtype=complex)
    dims = [int(d) for d in dims]
    total = int(np.prod(dims))
    if before.shape != (total, total) or after.shape != (total, total):
        raise ValueError(f"joint states do not match dims {tuple(dims)}")
    bath = tuple(int(s) for s in bath)
    system = tuple(int(s) for s in system)
    if set(bath) & set(system):
        raise ValueError("bath and system slots overlap")
    if not bath:
        raise ValueError("need at least one bath slot")
    for slot in (*bath, *system):
        if slot < 0 or slot >= len(dims):
            raise ValueError(f"slot {slot} out of range for {len(dims)} subsystems")
        if dims[slot] != spec.dim:
            raise ValueError(f"slot {slot} has dimension {dims[slot]}, charges need {spec.dim}")

    diff = after - before
    works = {}
    for charge in spec.charges:
        delta_bath = float(np.trace(partial_sum(charge, dims, bath) @ diff).real)
        delta_sys = 0.0
        if system:
            delta_sys = float(np.trace(partial_sum(charge, dims, system) @ diff).real)
        works[charge.label] = -delta_sys - delta_bath

    delta_f = 0.0
    if system:
        rho_before = partial_trace(before, dims, system)
        rho_after = partial_trace(after, dims, system)
        delta_f = _block_free_entropy(rho_after, dims, system, spec) - _block_free_entropy(
            rho_before, dims, system, spec
        )

    weighted = sum(b * works[c.label] for b, c in zip(spec.betas, spec.charges))
    return WorkRecord(
        works=works,
        delta_free_entropy=delta_f,
        margin_bath_only=-weighted,
        margin_with_system=-delta_f - weighted,
    )


def _block_free_entropy(rho_block, dims, slots, spec: ThermalSpec) -> float:
    block_dims = [dims[s] for s in slots]
    weighted = sum(
        b * float(np.trace(partial_sum(c, block_dims, range(len(slots))) @ rho_block).real)
        for b, c in zip(spec.betas, spec.charges)
    )
    return weighted - von_neumann_entropy(hermitize(rho_block))


def implicit_work(before, after, charges, dims=None) -> dict:
    """Work each charge type would register if the evolution were ideal: -d<A total>."""
    before = np.asarray(before, dtype=complex)
    after = np.asarray(after, dtype=complex)
    charges = tuple(charges)
    if dims is None:
        dims = [charges[0].dim]
    works = {}
    for charge in charges:
        a_tot = partial_sum(charge, dims, range(len(dims)))
        works[charge.label] = -float(np.trace(a_tot @ (after - before)).real)
    return works


@dataclass(frozen=True)
class BatteryCheck:
    """One charge's ledger-vs-work deviation against its trace-norm bound."""

    deviation: float
    bound: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {"deviation": self.deviation, "bound": self.bound, "passed": self.passed}


def battery_deviation_check(result: ProtocolResult, works: dict, epsilon: float,
                            charges, n_sys_bath: int = 1) -> dict:
    """Check that frame charge gains track the implicit work to within precision.

    For each charge: |ledger cumulative - W| must not exceed epsilon times the
    operator norm of the charge lifted over the system+bath slots, with
    epsilon the measured trace error of the same run.
    """
    if result.ledger is None or not result.ledger.entries:
        raise ValueError("protocol result carries no battery ledger")
    cumulative = result.ledger.cumulative()
    checks = {}
    for charge in charges:
        if charge.label not in cumulative:
            raise ValueError(f"ledger has no entries for charge {charge.label!r}")
        deviation = abs(cumulative[charge.label] - works[charge.label])
        bound = epsilon * operator_norm(
            partial_sum(charge, [charge.dim] * n_sys_bath, range(n_sys_bath))
        )
        checks[charge.label] = BatteryCheck(
            deviation, bound, deviation <= bound + BATTERY_FP_SLACK
        )
    return checks
