"""Experiment runner: convergence sweeps, conservation audits, thermodynamics.

Experiments are described by a single JSON config; matrices are given as
row-major [re, im] pairs, with the shorthands "X", "Y", "Z", "I", "H" (the
Hadamard gate) accepted wherever a matrix is expected. All randomness flows
from the config seed, so identical config + seed produce byte-identical
output files.

Exit status: 0 on pass, 1 when a validity-flagged bound or inequality is
violated, 2 on config errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .basis import OperatorBasis, build_state_basis
from .bounds import convergence_sweep
from .conservation import ExtensiveObservable
from .linalg import dagger, exp_neg_i, is_hermitian
from .protocol import ProtocolSpec, run_protocol
from .rand import haar_unitary, random_density, rng_from_seed
from .thermo import (
    SECOND_LAW_SLACK,
    ThermalSpec,
    battery_deviation_check,
    implicit_work,
    thermal_state,
    work_accounting,
)

SCHEMA_VERSION = 1

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
}


class ConfigError(Exception):
    """Config file is malformed or missing required fields."""


def parse_matrix(value, d: int | None = None) -> np.ndarray:
    """A named 2x2 shorthand or a row-major [re, im] nested list."""
    if isinstance(value, str):
        if value not in PAULI:
            raise ConfigError(f"unknown matrix shorthand {value!r}; known: {sorted(PAULI)}")
        m = PAULI[value]
    else:
        try:
            m = np.array([[complex(re, im) for re, im in row] for row in value])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"cannot parse matrix: {exc}") from None
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ConfigError(f"matrix is not square: shape {m.shape}")
    if d is not None and m.shape[0] != d:
        raise ConfigError(f"matrix dimension {m.shape[0]} does not match configured dimension {d}")
    return m


def _require(config: dict, key: str):
    if key not in config:
        raise ConfigError(f"config is missing required field {key!r}")
    return config[key]


def parse_unitary(spec, d: int, rng) -> np.ndarray:
    """Unitary from {"exp": matrix, "scale": s}, {"matrix": m}, or {"random": true}."""
    if not isinstance(spec, dict):
        raise ConfigError("unitary spec must be an object")
    if "exp" in spec:
        gen = parse_matrix(spec["exp"], d)
        if not is_hermitian(gen):
            raise ConfigError("unitary generator must be Hermitian")
        return exp_neg_i(gen, float(spec.get("scale", 1.0)))
    if "matrix" in spec:
        return parse_matrix(spec["matrix"], d)
    if spec.get("random"):
        return haar_unitary(d, rng)
    raise ConfigError("unitary spec needs one of 'exp', 'matrix', 'random'")


def parse_state(spec, d: int, rng) -> np.ndarray:
    """State from {"basis": i}, {"plus": true} (qubit), {"matrix": m}, or {"random": true}."""
    if not isinstance(spec, dict):
        raise ConfigError("state spec must be an object")
    if "basis" in spec:
        i = int(spec["basis"])
        if not 0 <= i < d:
            raise ConfigError(f"basis state index {i} out of range for dimension {d}")
        rho = np.zeros((d, d), dtype=complex)
        rho[i, i] = 1.0
        return rho
    if spec.get("plus"):
        psi = np.ones(d, dtype=complex) / np.sqrt(d)
        return np.outer(psi, psi.conj())
    if "matrix" in spec:
        return parse_matrix(spec["matrix"], d)
    if spec.get("random"):
        return random_density(d, rng)
    raise ConfigError("state spec needs one of 'basis', 'plus', 'matrix', 'random'")


def parse_charges(config: dict, d: int) -> tuple:
    charges = []
    for i, entry in enumerate(config.get("charges", [])):
        if isinstance(entry, str):
            charges.append(ExtensiveObservable(parse_matrix(entry, d), label=entry))
        elif isinstance(entry, dict):
            label = entry.get("label", f"A{i}")
            charges.append(ExtensiveObservable(parse_matrix(_require(entry, "matrix"), d), label=label))
        else:
            charges.append(ExtensiveObservable(parse_matrix(entry, d), label=f"A{i}"))
    return tuple(charges)


def load_basis(config: dict, d: int) -> OperatorBasis:
    name = config.get("basis", "default")
    if name == "default":
        return build_state_basis(d)
    text = Path(name).read_text()
    basis = OperatorBasis.from_json(text)
    if basis.dim != d:
        raise ConfigError(f"basis file has dimension {basis.dim}, config says {d}")
    return basis


def _write_json(path: Path, doc: dict) -> None:
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def run_converge(config: dict, out: Path, rng, verbose: bool) -> int:
    d = int(_require(config, "dimension"))
    n_list = _require(config, "N_list")
    basis = load_basis(config, d)
    target = parse_unitary(_require(config, "unitary"), d, rng)
    rho = parse_state(config.get("state", {"plus": True}), d, rng)
    spec = ProtocolSpec(target=target, n_rounds=int(n_list[0]), basis=basis, rho_s=rho)

    table = convergence_sweep(spec, n_list)
    (out / "converge.csv").write_text(table.to_csv())
    violations = table.violations()
    _write_json(out / "converge.json", {
        "schema": SCHEMA_VERSION,
        "mode": "converge",
        "slope": table.slope,
        "intercept": table.intercept,
        "rows": [
            {"N": r.n_rounds, "measured_error": r.measured_error,
             "analytic_bound": r.analytic_bound, "valid": r.valid}
            for r in table.rows
        ],
        "violations": len(violations),
    })
    print(f"converge: {len(table.rows)} round counts, slope {table.slope:+.3f}, "
          f"{len(violations)} bound violation(s)")
    return 1 if violations else 0


def run_conserve(config: dict, out: Path, rng, verbose: bool) -> int:
    d = int(_require(config, "dimension"))
    n = int(_require(config, "N"))
    basis = load_basis(config, d)
    charges = parse_charges(config, d)
    if not charges:
        raise ConfigError("conserve mode needs a 'charges' list")
    target = parse_unitary(_require(config, "unitary"), d, rng)
    rho = parse_state(config.get("state", {"plus": True}), d, rng)
    spec = ProtocolSpec(target=target, n_rounds=n, basis=basis, rho_s=rho, charges=charges)

    result = run_protocol(spec)
    residual = result.ledger.max_closure_residual()
    ok = residual <= 1e-10
    _write_json(out / "conserve.json", {
        "schema": SCHEMA_VERSION,
        "mode": "conserve",
        "max_closure_residual": residual,
        "total_error": result.total_error,
        "total_bound": result.total_bound,
        "bound_valid": result.bound_valid,
        "ledger": result.ledger.to_json_dict(include_entries=True),
    })
    print(f"conserve: {len(result.ledger.entries)} collision entries, "
          f"max closure residual {residual:.3e}")
    if result.bound_valid and result.total_error > result.total_bound:
        return 1
    return 0 if ok else 1


def run_thermo(config: dict, out: Path, rng, verbose: bool) -> int:
    d = int(_require(config, "dimension"))
    charges = parse_charges(config, d)
    betas = tuple(float(b) for b in _require(config, "betas"))
    spec = ThermalSpec(charges=charges, betas=betas)
    bath_subsystems = int(config.get("bath_subsystems", 2))
    draws = int(config.get("draws", 200))

    tau, ln_z = thermal_state(spec, d)
    bath0 = tau
    for _ in range(bath_subsystems - 1):
        bath0 = np.kron(bath0, tau)
    dims = [d] * bath_subsystems

    records = []
    worst = np.inf
    for _ in range(draws):
        u = haar_unitary(d**bath_subsystems, rng)
        after = u @ bath0 @ dagger(u)
        record = work_accounting(bath0, after, dims, bath=range(bath_subsystems), spec=spec)
        worst = min(worst, record.margin_bath_only)
        records.append(record.to_json_dict())

    ok = worst >= -SECOND_LAW_SLACK
    _write_json(out / "thermo.json", {
        "schema": SCHEMA_VERSION,
        "mode": "thermo",
        "ln_z": ln_z,
        "draws": draws,
        "worst_margin": worst,
        "records": records if verbose else records[:10],
    })
    print(f"thermo: {draws} random bath unitaries, worst second-law margin {worst:.3e}")
    return 0 if ok else 1


def run_battery(config: dict, out: Path, rng, verbose: bool) -> int:
    d = int(_require(config, "dimension"))
    n_list = config.get("N_list") or [int(_require(config, "N"))]
    basis = load_basis(config, d)
    charges = parse_charges(config, d)
    if not charges:
        raise ConfigError("battery mode needs a 'charges' list")
    target = parse_unitary(_require(config, "unitary"), d, rng)
    rho = parse_state(config.get("state", {"plus": True}), d, rng)

    runs = []
    all_passed = True
    for n in n_list:
        spec = ProtocolSpec(target=target, n_rounds=int(n), basis=basis, rho_s=rho, charges=charges)
        result = run_protocol(spec)
        ideal_after = target @ rho @ dagger(target)
        works = implicit_work(rho, ideal_after, charges)
        checks = battery_deviation_check(result, works, result.total_error, charges)
        all_passed &= all(c.passed for c in checks.values())
        runs.append({
            "N": int(n),
            "total_error": result.total_error,
            "works": works,
            "ledger_cumulative": result.ledger.cumulative(),
            "checks": {label: c.to_json_dict() for label, c in checks.items()},
        })

    _write_json(out / "battery.json", {
        "schema": SCHEMA_VERSION,
        "mode": "battery",
        "runs": runs,
    })
    worst = max(c["deviation"] for r in runs for c in r["checks"].values())
    print(f"battery: {len(runs)} run(s), worst ledger-vs-work deviation {worst:.3e}")
    return 0 if all_passed else 1


MODES = {
    "converge": run_converge,
    "conserve": run_conserve,
    "thermo": run_thermo,
    "battery": run_battery,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="swapframe",
        description="Run partial-swap reference-frame experiments from a JSON config.",
    )
    parser.add_argument("--config", required=True, help="path to the JSON experiment config")
    parser.add_argument("--out", default=None,
                        help="directory for CSV/JSON outputs (default: config 'out' field or '.')")
    parser.add_argument("--seed", type=int, default=None, help="override the config seed")
    parser.add_argument("--mode", default=None, choices=sorted(MODES), help="override the config mode")
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args(argv)

    try:
        config = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2

    mode = args.mode or config.get("mode")
    if mode not in MODES:
        print(f"error: unknown mode {mode!r}; expected one of {sorted(MODES)}", file=sys.stderr)
        return 2
    seed = args.seed if args.seed is not None else int(config.get("seed", 0))

    out = Path(args.out if args.out is not None else config.get("out", "."))
    out.mkdir(parents=True, exist_ok=True)
    try:
        return MODES[mode](config, out, rng_from_seed(seed), args.verbose)
    except (ConfigError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
