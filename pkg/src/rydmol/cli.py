"""Command-line front end.

Subcommands::

    rydmol shift-scan   Rydberg excitation shift vs core-molecule separation
    rydmol magic-field  field-insensitive Lambda-doublet transitions
    rydmol scales       closed-form interaction scales
    rydmol gate KIND    blockade-phase | cnot-mol | cnot-atom | address | swap | chain

Every subcommand accepts ``--config`` (YAML or JSON). Physical values in the
config carry their unit in the key name (``r_min_nm``, ``rabi_khz``); unknown
keys are rejected. Flags override config values. Each output file gets a
sibling ``<file>.manifest.json`` recording what produced it.

Exit codes: 0 success, 2 usage or schema error, 3 physics-domain error,
4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import platform
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Literal, Optional

import numpy as np
import scipy
import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from . import __version__
from .errors import PhysicsDomainError, SchemaError
from .interaction_scales import (
    ddi_blockade_radius,
    direct_ddi_strength,
    gate_range,
    lattice_capacity,
    rydberg_molecule_dipole,
    vdw_blockade_radius,
)
from .lambda_doublet import (
    HyperfineLevel,
    LambdaDoubletSpec,
    find_magic_field,
    frequency_slope,
    transition_frequency,
)
from .quantum_engine import (
    addressing_crosstalk,
    blockade_phase_gate,
    cnot_atom_target,
    cnot_molecule_target,
    entanglement_swap,
    qubit_register,
    repeater_chain,
)
from .rotor_stark import RigidRotorSpec, shift_scan
from .rydberg_core import RydbergLevel, solve_radial
from .species import species_defaults, species_version
from .units import CONSTANTS_VERSION, Quantity, to_au

TWO_PI = 2.0 * math.pi
GATE_KINDS = ("blockade-phase", "cnot-mol", "cnot-atom", "address", "swap", "chain")


class UsageError(SchemaError):
    pass


# ---------------------------------------------------------------- config schema

class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class KRbBlock(_Strict):
    b_rot_mhz: float = Field(gt=0)
    d0_au: Optional[float] = Field(default=None, ge=0)
    d0_debye: Optional[float] = Field(default=None, ge=0)
    j_max: int = Field(default=8, ge=4)
    convention: Literal["paper", "standard"] = "paper"


class CHBlock(_Strict):
    j: float = 1.5
    de_hf_f_mhz: float
    de_hf_e_mhz: float
    g_f: float = Field(gt=0)
    g_e: float = Field(gt=0)
    doublet_splitting_mhz: float
    transition_dipole_debye: float = Field(ge=0)


class RbBlock(_Strict):
    quantum_defect_s: float = Field(ge=0)
    n: int = Field(ge=1)


class SpeciesBlock(_Strict):
    krb: Optional[KRbBlock] = None
    ch: Optional[CHBlock] = None
    rb: Optional[RbBlock] = None


class OutputBlock(_Strict):
    format: Literal["csv", "json"] = "csv"
    path: Optional[str] = None
    precision: int = Field(default=12, ge=1, le=17)


class ShiftScanRun(_Strict):
    n: Optional[int] = Field(default=None, ge=1)
    l: int = Field(default=0, ge=0)
    quantum_defect: Optional[float] = Field(default=None, ge=0)
    r_min_nm: float = 60.0
    r_max_nm: float = 250.0
    points: int = 100
    jmax_report: int = Field(default=3, ge=0)


class MagicFieldRun(_Strict):
    transitions: list[str] = ["1,1,e->2,1,f", "2,1,e->1,1,f"]
    b_min_g: float = Field(default=0.1, ge=0)
    b_max_g: float = 10.0
    scan_out: Optional[str] = None
    scan_points: int = Field(default=1001, ge=2)
    scan_max_g: float = Field(default=10.0, gt=0)


class ScalesRun(_Strict):
    n: int = 50
    rabi_khz: float = Field(default=100.0, gt=0)
    mu_debye: float = Field(default=1.0, ge=0)
    r_nm: float = Field(default=100.0, gt=0)
    t_gate_us: float = Field(default=1.0, gt=0)
    beam_diameter_mm: float = Field(default=1.0, gt=0)
    lattice_wavelength_nm: float = Field(default=1000.0, gt=0)
    a_coeff: float = Field(default=0.6, ge=0, le=1)
    n_molecule: int = Field(default=25, ge=1)


class GateRun(_Strict):
    # blockade-phase
    rabi_pi_khz: float = Field(default=100.0, gt=0)
    rabi_2pi_khz: float = Field(default=100.0, gt=0)
    v_int_mhz: Optional[float] = None
    sweep_min: float = Field(default=1e1, gt=0)
    sweep_max: float = Field(default=1e6, gt=0)
    sweep_points: int = Field(default=51, ge=0)
    lifetime_us: Optional[float] = Field(default=None, gt=0)
    # cnot-mol / cnot-atom / address
    stark_shift_mhz: Optional[float] = None
    shift_file: Optional[str] = None
    r_nm: float = Field(default=100.0, gt=0)
    rabi_mw_khz: float = Field(default=100.0, gt=0)
    rabi_ryd_mhz: float = Field(default=1.0, gt=0)
    rabi_raman_khz: float = Field(default=100.0, gt=0)
    # swap / chain
    samples: int = Field(default=0, ge=0)
    num_links: int = Field(default=4, ge=1)
    elementary_fidelity: float = Field(default=0.99, ge=0, le=1)
    gate_fidelity: float = Field(default=0.99, ge=0, le=1)


RUN_MODELS = {"shift-scan": ShiftScanRun, "magic-field": MagicFieldRun,
              "scales": ScalesRun, "gate": GateRun}


class RunConfig(_Strict):
    species: SpeciesBlock = SpeciesBlock()
    run: dict = {}
    output: OutputBlock = OutputBlock()
    seed: Optional[int] = None


def _format_validation(exc: ValidationError, prefix: str = "") -> str:
    parts = []
    for e in exc.errors():
        path = ".".join(str(p) for p in (prefix, *e["loc"]) if p != "")
        parts.append(f"{path}: {e['msg']}")
    return "; ".join(parts)


def load_config_file(path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SchemaError(f"cannot parse {path}: {exc}") from exc
    if doc is None:
        return {}
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: top level must be a mapping")
    return doc


def _set_path(doc: dict, dotted: str, value) -> None:
    keys = dotted.split(".")
    node = doc
    for k in keys[:-1]:
        node = node.setdefault(k, {})
        if not isinstance(node, dict):
            raise SchemaError(f"{dotted}: {k} is not a mapping")
    node[keys[-1]] = value


def build_config(command: str, doc: dict, overrides: dict):
    """Merge flag overrides into the document and validate it.

    Returns ``(RunConfig, run_model, effective_document)``.
    """
    doc = json.loads(json.dumps(doc))  # deep copy, JSON-clean
    for dotted, value in overrides.items():
        if value is not None:
            _set_path(doc, dotted, value)
    try:
        cfg = RunConfig.model_validate(doc)
    except ValidationError as exc:
        raise SchemaError(_format_validation(exc)) from exc
    try:
        run = RUN_MODELS[command].model_validate(cfg.run)
    except ValidationError as exc:
        raise SchemaError(_format_validation(exc, "run")) from exc
    return cfg, run, doc


# ---------------------------------------------------------------- species

def krb_spec(cfg: RunConfig) -> RigidRotorSpec:
    block = cfg.species.krb
    if block is None:
        return RigidRotorSpec.krb()
    if block.d0_au is not None and block.d0_debye is not None:
        raise SchemaError("species.krb: give d0_au or d0_debye, not both")
    d0_au = block.d0_au if block.d0_debye is None else None
    if d0_au is None and block.d0_debye is None:
        d0_au = species_defaults("krb")["d0_au"]
    return RigidRotorSpec.from_lab(block.b_rot_mhz, block.d0_debye, d0_au=d0_au,
                                   j_max=block.j_max, convention=block.convention)


def ch_spec(cfg: RunConfig) -> LambdaDoubletSpec:
    b = cfg.species.ch
    if b is None:
        return LambdaDoubletSpec.ch()
    return LambdaDoubletSpec(j=b.j, de_hf_f=b.de_hf_f_mhz, de_hf_e=b.de_hf_e_mhz, g_f=b.g_f,
                             g_e=b.g_e, doublet_splitting=b.doublet_splitting_mhz,
                             transition_dipole=b.transition_dipole_debye)


def rb_defaults(cfg: RunConfig) -> tuple[int, float]:
    b = cfg.species.rb
    if b is None:
        d = species_defaults("rb")
        return d["n"], d["quantum_defect_s"]
    return b.n, b.quantum_defect_s


def parse_transition(text: str) -> tuple[HyperfineLevel, HyperfineLevel]:
    """``"F,mF,parity->F,mF,parity"``, e.g. ``"1,1,e->2,1,f"``."""
    try:
        a, b = text.split("->")
        levels = []
        for part in (a, b):
            f_qn, m_f, parity = (s.strip() for s in part.split(","))
            levels.append(HyperfineLevel(parity, float(f_qn), float(m_f)))
    except ValueError as exc:
        raise SchemaError(f"bad transition {text!r}; expected 'F,mF,p->F,mF,p'") from exc
    return levels[0], levels[1]


# ---------------------------------------------------------------- output

class Table:
    def __init__(self, header, rows):
        self.header = list(header)
        self.rows = [list(r) for r in rows]


def _fmt(x, precision):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), f".{precision}g")
    return "" if x is None else str(x)


def _round(obj, precision):
    if isinstance(obj, dict):
        return {k: _round(v, precision) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v, precision) for v in obj]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return float(format(x, f".{precision}g")) if math.isfinite(x) else None
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def render(data, fmt: str, precision: int) -> str:
    if isinstance(data, Table):
        if fmt == "json":
            recs = [dict(zip(data.header, r)) for r in data.rows]
            return json.dumps(_round(recs, precision), indent=2, ensure_ascii=False) + "\n"
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(data.header)
        for r in data.rows:
            w.writerow([_fmt(x, precision) for x in r])
        return buf.getvalue()
    return json.dumps(_round(data, precision), indent=2, ensure_ascii=False) + "\n"


def write_output(text: str, path, *, doc, seed, started, command):
    if path is None:
        sys.stdout.write(text)
        return
    path = Path(path)
    path.write_text(text, encoding="utf-8")
    write_manifest(path, doc=doc, seed=seed, started=started, command=command)


def config_hash(doc) -> str:
    canon = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def write_manifest(path: Path, *, doc, seed, started, command):
    manifest = {
        "output": path.name,
        "output_sha256": hashlib.sha256(path.read_bytes()).hexdigest(),
        "command": command,
        "config": doc,
        "config_sha256": config_hash(doc),
        "constants_version": CONSTANTS_VERSION,
        "species_version": species_version(),
        "seed": seed,
        "wall_clock_s": round(time.perf_counter() - started, 6),
        "versions": {"rydmol": __version__, "numpy": np.__version__,
                     "scipy": scipy.__version__, "python": platform.python_version()},
    }
    Path(str(path) + ".manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")


# ---------------------------------------------------------------- commands

def cmd_shift_scan(cfg, run: ShiftScanRun, threads: int) -> Table:
    n_def, defect_def = rb_defaults(cfg)
    n = run.n if run.n is not None else n_def
    defect = run.quantum_defect if run.quantum_defect is not None else (
        defect_def if run.l == 0 else 0.0)
    if run.points < 1 or not run.r_max_nm > run.r_min_nm or run.r_min_nm <= 0:
        raise UsageError(f"empty R range [{run.r_min_nm}, {run.r_max_nm}] nm "
                         f"with {run.points} points")
    spec = krb_spec(cfg)
    if run.jmax_report > spec.max_reported_j:
        raise UsageError(f"jmax_report {run.jmax_report} exceeds {spec.max_reported_j} "
                         f"for j_max = {spec.j_max}")
    wf = solve_radial(RydbergLevel(n, run.l, defect))
    r = to_au(np.linspace(run.r_min_nm, run.r_max_nm, run.points), "nm")
    curve = shift_scan(spec, wf, r, threads=threads)
    header, rows = curve.to_rows(run.jmax_report)
    return Table(header, rows)


def cmd_magic_field(cfg, run: MagicFieldRun):
    spec = ch_spec(cfg)
    results = []
    pairs = [(t, *parse_transition(t)) for t in run.transitions]
    for text, a, b in pairs:
        transition_frequency(spec, a, b, 0.0)  # selection rule check
        b_star = find_magic_field(spec, a, b, (run.b_min_g, run.b_max_g))
        results.append({
            "transition": text,
            "b_star_g": b_star,
            "nu_at_b_star_mhz": transition_frequency(spec, a, b, b_star),
            "slope_at_b_star_mhz_per_g": frequency_slope(spec, a, b, b_star),
        })
    scan = None
    if run.scan_out:
        grid = np.linspace(0.0, run.scan_max_g, run.scan_points)
        cols = [transition_frequency(spec, a, b, grid) for _, a, b in pairs]
        header = ["B_G"] + [f"nu_MHz[{t}]" for t, _, _ in pairs]
        scan = Table(header, [[g, *(c[i] for c in cols)] for i, g in enumerate(grid)])
    return {"magic_fields": results}, scan


def cmd_scales(cfg, run: ScalesRun) -> Table:
    omega = Quantity(TWO_PI * run.rabi_khz * 1e3, "rad/s")
    mu = Quantity(run.mu_debye, "debye")
    r = Quantity(run.r_nm, "nm")
    t = Quantity(run.t_gate_us, "us")
    vdw = vdw_blockade_radius(run.n, omega)
    ddi = ddi_blockade_radius(run.n, omega)
    d_ryd = rydberg_molecule_dipole(run.a_coeff, run.n_molecule)
    om_txt = f"n={run.n}; omega=2pi*{run.rabi_khz:g} kHz"
    rows = [
        ["direct_ddi_strength", f"mu={run.mu_debye:g} D; r={run.r_nm:g} nm",
         direct_ddi_strength(mu, r).value, "rad/s"],
        ["gate_range", f"mu={run.mu_debye:g} D; t_gate={run.t_gate_us:g} us",
         gate_range(mu, t).value, "nm"],
        ["lattice_capacity",
         f"d={run.beam_diameter_mm:g} mm; lambda={run.lattice_wavelength_nm:g} nm",
         lattice_capacity(Quantity(run.beam_diameter_mm, "mm"),
                          Quantity(run.lattice_wavelength_nm, "nm")), "sites"],
        ["vdw_blockade_radius", om_txt, vdw.value, "um"],
        ["ddi_blockade_radius", om_txt, ddi.value, "um"],
    ]
    mol_txt = f"a={run.a_coeff:g}; n={run.n_molecule}"
    for unit in ("au_dipole", "debye", "kilodebye"):
        rows.append(["rydberg_molecule_dipole", mol_txt, d_ryd.to(unit).value, unit])
    return Table(["law", "inputs", "result", "unit"], rows)


def _shift_from_file(path, r_nm) -> float:
    """J=1 minus J=0 excitation shift (MHz) at `r_nm`, linearly interpolated."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        need = {"R_nm", "shift_J0_MHz", "shift_J1_MHz"}
        if reader.fieldnames is None or not need <= set(reader.fieldnames):
            raise SchemaError(f"{path}: missing columns {sorted(need)}")
        rows = [(float(r["R_nm"]), float(r["shift_J1_MHz"]) - float(r["shift_J0_MHz"]))
                for r in reader]
    rows.sort()
    R = np.array([a for a, _ in rows])
    if not R.size or not R[0] <= r_nm <= R[-1]:
        raise PhysicsDomainError(f"r_nm = {r_nm} outside the range of {path}")
    return float(np.interp(r_nm, R, [b for _, b in rows]))


def _gate_shift(run: GateRun) -> tuple[float, str]:
    if run.shift_file is not None and run.stark_shift_mhz is not None:
        raise SchemaError("run: give shift_file or stark_shift_mhz, not both")
    if run.shift_file is not None:
        return _shift_from_file(run.shift_file, run.r_nm), f"{run.shift_file}@{run.r_nm:g}nm"
    if run.stark_shift_mhz is None:
        raise SchemaError("run: need stark_shift_mhz or shift_file")
    return run.stark_shift_mhz, "config"


def cmd_gate(kind, cfg, run: GateRun, threads: int):
    decay = None if run.lifetime_us is None else 1.0 / (run.lifetime_us * 1e-6)
    w_pi, w_2pi = TWO_PI * run.rabi_pi_khz * 1e3, TWO_PI * run.rabi_2pi_khz * 1e3
    if kind == "blockade-phase":
        if run.v_int_mhz is not None:
            return blockade_phase_gate(w_pi, w_2pi, TWO_PI * run.v_int_mhz * 1e6, decay).to_dict()
        if run.sweep_points < 2 or not run.sweep_max > run.sweep_min:
            raise UsageError("blockade sweep needs sweep_points >= 2 and sweep_max > sweep_min")
        ratios = np.logspace(math.log10(run.sweep_min), math.log10(run.sweep_max),
                             run.sweep_points)
        with ThreadPoolExecutor(max_workers=max(threads, 1)) as pool:
            res = list(pool.map(lambda x: blockade_phase_gate(w_pi, w_2pi, x * w_2pi, decay),
                                ratios))
        return Table(["v_int_over_omega", "nonlocal_phase_rad", "fidelity", "leakage",
                      "survival"],
                     [[x, g.extras["nonlocal_phase"], g.fidelity, g.leakage, g.survival]
                      for x, g in zip(ratios, res)])
    if kind in ("cnot-mol", "cnot-atom", "address"):
        shift_mhz, source = _gate_shift(run)
        shift = TWO_PI * shift_mhz * 1e6
        if kind == "cnot-mol":
            out = cnot_molecule_target(shift, TWO_PI * run.rabi_mw_khz * 1e3,
                                       TWO_PI * run.rabi_ryd_mhz * 1e6, decay).to_dict()
        elif kind == "cnot-atom":
            out = cnot_atom_target(shift, TWO_PI * run.rabi_raman_khz * 1e3).to_dict()
        else:
            out = {"protocol": "address",
                   "params": {"shift": abs(shift), "omega_mw": TWO_PI * run.rabi_mw_khz * 1e3},
                   "crosstalk": addressing_crosstalk(abs(shift), TWO_PI * run.rabi_mw_khz * 1e3)}
        out["shift_mhz"] = shift_mhz
        out["shift_source"] = source
        return out
    if kind == "swap":
        reg = qubit_register(["q1", "q2", "q3", "q4"])
        psi = reg.superposition({("0", "0", "0", "0"): 1, ("1", "1", "0", "0"): 1})
        outcomes = entanglement_swap(psi)
        bells = {"phi+": np.array([1, 0, 0, 1]) / math.sqrt(2),
                 "phi-": np.array([1, 0, 0, -1]) / math.sqrt(2)}
        counts = {o.outcome: 0 for o in outcomes}
        if run.samples:
            rng = np.random.default_rng(cfg.seed)
            p = np.array([o.probability for o in outcomes])
            for k in rng.choice(len(outcomes), size=run.samples, p=p / p.sum()):
                counts[outcomes[k].outcome] += 1
        rows = []
        for o in outcomes:
            fid = {k: abs(np.vdot(v, o.state.amplitudes)) ** 2 for k, v in bells.items()}
            best = max(fid, key=fid.get)
            rows.append([o.outcome, o.probability, best, fid["phi+"], fid["phi-"],
                         counts[o.outcome]])
        return Table(["outcome", "probability", "state_34", "fidelity_phi_plus",
                      "fidelity_phi_minus", "samples"], rows)
    if kind == "chain":
        f = repeater_chain(run.num_links, elementary_fidelity=run.elementary_fidelity,
                           gate_fidelity=run.gate_fidelity)
        return {"protocol": "chain", "num_links": run.num_links,
                "elementary_fidelity": run.elementary_fidelity,
                "gate_fidelity": run.gate_fidelity, "final_fidelity": f}
    raise UsageError(f"unknown gate kind {kind!r}")


# ---------------------------------------------------------------- argparse

def _common(p):
    p.add_argument("--config", type=Path, help="YAML or JSON run configuration")
    p.add_argument("--out", dest="output.path", help="output file (default: stdout)")
    p.add_argument("--format", dest="output.format", choices=["csv", "json"])
    p.add_argument("--precision", dest="output.precision", type=int,
                   help="significant digits in the output")
    p.add_argument("--threads", type=int, default=1, help="worker threads for grid scans")
    p.add_argument("--seed", dest="seed", type=int)
    p.add_argument("--json-errors", action="store_true",
                   help="print errors to stderr as JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rydmol", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"rydmol {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("shift-scan", help="excitation shift vs separation (CSV)")
    _common(p)
    p.add_argument("--n", dest="run.n", type=int)
    p.add_argument("--l", dest="run.l", type=int)
    p.add_argument("--quantum-defect", dest="run.quantum_defect", type=float)
    p.add_argument("--r-min-nm", dest="run.r_min_nm", type=float)
    p.add_argument("--r-max-nm", dest="run.r_max_nm", type=float)
    p.add_argument("--points", dest="run.points", type=int)
    p.add_argument("--jmax-report", dest="run.jmax_report", type=int)

    p = sub.add_parser("magic-field", help="field-insensitive transitions (JSON)")
    _common(p)
    p.add_argument("--transition", dest="run.transitions", action="append",
                   help="'F,mF,p->F,mF,p'; repeatable")
    p.add_argument("--b-min-g", dest="run.b_min_g", type=float)
    p.add_argument("--b-max-g", dest="run.b_max_g", type=float)
    p.add_argument("--scan-out", dest="run.scan_out", help="write nu(B) CSV here")
    p.add_argument("--scan-points", dest="run.scan_points", type=int)

    p = sub.add_parser("scales", help="interaction scale table")
    _common(p)
    p.add_argument("--n", dest="run.n", type=int)
    p.add_argument("--rabi-khz", dest="run.rabi_khz", type=float)
    p.add_argument("--mu-debye", dest="run.mu_debye", type=float)
    p.add_argument("--r-nm", dest="run.r_nm", type=float)
    p.add_argument("--t-gate-us", dest="run.t_gate_us", type=float)
    p.add_argument("--a-coeff", dest="run.a_coeff", type=float)
    p.add_argument("--n-molecule", dest="run.n_molecule", type=int)

    p = sub.add_parser("gate", help="pulse-sequence protocols")
    p.add_argument("kind", choices=GATE_KINDS)
    _common(p)
    p.add_argument("--rabi-pi-khz", dest="run.rabi_pi_khz", type=float)
    p.add_argument("--rabi-2pi-khz", dest="run.rabi_2pi_khz", type=float)
    p.add_argument("--v-int-mhz", dest="run.v_int_mhz", type=float)
    p.add_argument("--sweep-points", dest="run.sweep_points", type=int)
    p.add_argument("--lifetime-us", dest="run.lifetime_us", type=float)
    p.add_argument("--stark-shift-mhz", dest="run.stark_shift_mhz", type=float)
    p.add_argument("--shift-file", dest="run.shift_file")
    p.add_argument("--r-nm", dest="run.r_nm", type=float)
    p.add_argument("--rabi-mw-khz", dest="run.rabi_mw_khz", type=float)
    p.add_argument("--rabi-ryd-mhz", dest="run.rabi_ryd_mhz", type=float)
    p.add_argument("--rabi-raman-khz", dest="run.rabi_raman_khz", type=float)
    p.add_argument("--samples", dest="run.samples", type=int)
    p.add_argument("--num-links", dest="run.num_links", type=int)
    p.add_argument("--elementary-fidelity", dest="run.elementary_fidelity", type=float)
    p.add_argument("--gate-fidelity", dest="run.gate_fidelity", type=float)
    return parser


def _fail(code, exc, json_errors):
    if json_errors:
        err = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
        sys.stderr.write(json.dumps(err) + "\n")
    else:
        sys.stderr.write(f"rydmol: error: {exc}\n")
    return code


def run_command(args) -> None:
    started = time.perf_counter()
    overrides = {k: v for k, v in vars(args).items() if "." in k or k == "seed"}
    doc = load_config_file(args.config) if args.config else {}
    cfg, run, eff = build_config(args.command, doc, overrides)
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    fmt, prec, out_path = cfg.output.format, cfg.output.precision, cfg.output.path
    command = args.command if args.command != "gate" else f"gate {args.kind}"
    meta = dict(doc=eff, seed=cfg.seed, started=started, command=command)

    if args.command == "shift-scan":
        data = cmd_shift_scan(cfg, run, args.threads)
    elif args.command == "magic-field":
        data, scan = cmd_magic_field(cfg, run)
        if scan is not None:
            Path(run.scan_out).write_text(render(scan, "csv", prec), encoding="utf-8")
            write_manifest(Path(run.scan_out), **meta)
    elif args.command == "scales":
        data = cmd_scales(cfg, run)
    else:
        data = cmd_gate(args.kind, cfg, run, args.threads)
    write_output(render(data, fmt, prec), out_path, **meta)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with 2 on usage errors
    try:
        run_command(args)
    except SchemaError as exc:
        return _fail(2, exc, args.json_errors)
    except PhysicsDomainError as exc:
        return _fail(3, exc, args.json_errors)
    except OSError as exc:
        return _fail(4, exc, args.json_errors)
    return 0


if __name__ == "__main__":
    sys.exit(main())
