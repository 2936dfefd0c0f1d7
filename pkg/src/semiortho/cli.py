"""
Command-line front end.

    semiortho gen         --measure spec.json --n N --out out.json
    semiortho verify      --measure spec.json --n N --tol T
    semiortho asymptotics --measure spec.json --x X --n-max N --out conv.csv

Exit codes: 0 pass, 1 check failure, 2 usage or spec error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._mat2 import I2, J
from .asymptotics import (
    DomainError,
    bernstein_szego_measure,
    lonp_convergence_report,
    matrix_szego_data,
)
from .matrix_op import (
    Y_POLY,
    MatPoly2,
    lomp_mixing,
    lomp_normalizers,
    lomp_sequence,
    lonp_frame,
    matrix_poly_from_sof_sequence,
    matrix_poly_recurrence,
    quasi_orthogonality_report,
    real_recurrence_coeffs,
    standard_lonp_sequence,
)
from .measures import (
    DEFAULT_NODES,
    CircleMeasure,
    associated_matrix_measure,
    lebesgue,
    matrix_inner,
    positivity_check,
    vector_inner,
    table_weight,
    trig_poly_weight,
)
from .opuc import AdmissibilityError, SchurSequence, schur_from_measure, szego_sequence
from .sof import gram_block, schur_matrix, vsof_sequence

POLY_TOL = 1e-10
FRAME_TOL = 1e-12
WEIGHT_FAMILIES = ("lebesgue", "trig-poly", "table")


class SpecError(ValueError):
    """Malformed or invalid measure specification."""


@dataclass(frozen=True)
class MeasureSpec:
    kind: str
    schur: tuple = ()
    eps0: float = 2 * math.pi
    random: dict | None = None
    family: str | None = None
    cos: tuple = ()
    sin: tuple = ()
    table: tuple = ()
    atoms: tuple = ()

    def schur_sequence(self, seed: int = 0) -> SchurSequence:
        if self.kind != "schur":
            raise SpecError("only kind=schur carries Schur parameters")
        if self.random is not None:
            rng = np.random.default_rng(seed)
            max_abs = float(self.random.get("max_abs", 0.8))
            length = self.random.get("length")
            if length is None:
                return SchurSequence.random(rng, 8, max_abs, self.eps0)
            r = max_abs * rng.random(int(length))
            phase = 2 * math.pi * rng.random(int(length))
            return SchurSequence(tuple(r * np.exp(1j * phase)), self.eps0)
        return SchurSequence(self.schur, self.eps0)

    def circle_measure(self, nodes=None, seed=0, signed=False) -> CircleMeasure:
        """Schur specs size their grid to the weight unless ``nodes`` is given."""
        if self.kind == "schur":
            return bernstein_szego_measure(self.schur_sequence(seed), nodes)
        nodes = DEFAULT_NODES if nodes is None else nodes
        if self.family == "lebesgue":
            m = lebesgue(nodes)
            return CircleMeasure(m.weight, self.atoms, nodes, signed)
        if self.family == "trig-poly":
            return trig_poly_weight(self.cos, self.sin, self.atoms, nodes, signed)
        return table_weight(self.table, self.atoms, nodes, signed)

    def resolve(self, n_params: int, nodes=None, seed=0, signed=False):
        """The circle measure and enough Schur parameters for ``n_params`` indices."""
        m = self.circle_measure(nodes, seed, signed)
        if self.kind == "schur":
            return m, self.schur_sequence(seed)
        return m, schur_from_measure(m, n_params)


def _field(obj, name, types, where):
    if name not in obj:
        raise SpecError(f"missing field '{where}{name}'")
    val = obj[name]
    if not isinstance(val, types):
        raise SpecError(f"field '{where}{name}' has the wrong type")
    return val


def _number(val, where):
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise SpecError(f"field '{where}' must be a number")
    if not math.isfinite(val):
        raise SpecError(f"field '{where}' must be finite")
    return float(val)


def spec_from_dict(d: dict) -> MeasureSpec:
    if not isinstance(d, dict):
        raise SpecError("spec must be a JSON object")
    kind = _field(d, "kind", str, "")
    eps0 = _number(d.get("eps0", 2 * math.pi), "eps0")
    if not eps0 > 0:
        raise SpecError("field 'eps0' must be positive")
    atoms = []
    for i, a in enumerate(d.get("atoms", [])):
        if not isinstance(a, dict):
            raise SpecError(f"field 'atoms[{i}]' must be an object")
        t = _number(a.get("theta"), f"atoms[{i}].theta")
        m = _number(a.get("mass"), f"atoms[{i}].mass")
        if not m > 0:
            raise SpecError(f"field 'atoms[{i}].mass' must be positive")
        if not 0 <= t < 2 * math.pi:
            raise SpecError(f"field 'atoms[{i}].theta' must lie in [0, 2*pi)")
        atoms.append((t, m))
    if kind == "schur":
        if "weight" in d:
            raise SpecError("field 'weight' not allowed with kind=schur")
        if atoms:
            raise SpecError("field 'atoms' not allowed with kind=schur")
        if ("schur" in d) == ("random" in d):
            raise SpecError("kind=schur needs exactly one of 'schur' or 'random'")
        if "random" in d:
            rnd = _field(d, "random", dict, "")
            return MeasureSpec("schur", eps0=eps0, random=dict(rnd))
        head = []
        for i, pair in enumerate(_field(d, "schur", list, "")):
            if not isinstance(pair, list) or len(pair) != 2:
                raise SpecError(f"field 'schur[{i}]' must be a [re, im] pair")
            a = complex(_number(pair[0], f"schur[{i}][0]"), _number(pair[1], f"schur[{i}][1]"))
            if not abs(a) < 1:
                raise SpecError(f"field 'schur[{i}]' has |a_{i + 1}| = {abs(a):.17g}, need < 1")
            head.append(a)
        return MeasureSpec("schur", tuple(head), eps0)
    if kind == "weight":
        if "schur" in d or "random" in d:
            raise SpecError("field 'schur' not allowed with kind=weight")
        w = _field(d, "weight", dict, "")
        family = _field(w, "family", str, "weight.")
        if family not in WEIGHT_FAMILIES:
            raise SpecError(f"field 'weight.family' must be one of {WEIGHT_FAMILIES}")
        if family == "lebesgue":
            return MeasureSpec("weight", family=family, atoms=tuple(atoms))
        coeffs = _field(w, "coeffs", (dict, list), "weight.")
        if family == "trig-poly":
            if not isinstance(coeffs, dict):
                raise SpecError("field 'weight.coeffs' must be {'cos': [...], 'sin': [...]}")
            cos = tuple(_number(c, "weight.coeffs.cos") for c in coeffs.get("cos", []))
            sin = tuple(_number(c, "weight.coeffs.sin") for c in coeffs.get("sin", []))
            if not cos:
                raise SpecError("field 'weight.coeffs.cos' needs at least the constant term")
            return MeasureSpec("weight", family=family, cos=cos, sin=sin, atoms=tuple(atoms))
        if not isinstance(coeffs, list) or len(coeffs) < 2:
            raise SpecError("field 'weight.coeffs' must be a list of at least two samples")
        table = tuple(_number(c, "weight.coeffs") for c in coeffs)
        return MeasureSpec("weight", family=family, table=table, atoms=tuple(atoms))
    raise SpecError("field 'kind' must be 'schur' or 'weight'")


def parse_spec(path) -> MeasureSpec:
    """Read and validate a JSON measure spec."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        line = text.splitlines()[exc.lineno - 1] if text.splitlines() else ""
        raise SpecError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}\n    {line}") from None
    return spec_from_dict(d)


# ---------------------------------------------------------------- generate


def _cpair(a):
    return [float(np.real(a)), float(np.imag(a))]


def generate(schur: SchurSequence, N: int) -> dict:
    """Every object of the construction up to index ``N`` as plain lists."""
    phis = szego_sequence(schur, N)
    F = matrix_poly_recurrence(schur, N + 1)
    P = lomp_sequence(schur, N, F)
    Q = standard_lonp_sequence(schur, N, P)
    return {
        "N": N,
        "eps0": schur.eps0,
        "schur": [_cpair(schur[n]) for n in range(1, 2 * N + 3)],
        "phi": [[_cpair(c) for c in p.coeffs] for p in phis],
        "H": [schur_matrix(schur[n]).tolist() for n in range(N + 1)],
        "C": [gram_block(schur, n).tolist() for n in range(N + 1)],
        "F": [F[n].tolist() for n in range(N + 1)],
        "P": [p.tolist() for p in P],
        "Q": [q.tolist() for q in Q],
    }


def dumps(payload: dict) -> str:
    # float repr is the shortest string that round-trips a 64-bit float
    return json.dumps(payload, indent=1) + "\n"


def run_generate(spec: MeasureSpec, N: int, out_path, nodes=None, seed=0) -> dict:
    _, schur = spec.resolve(2 * N + 2, nodes, seed)
    payload = generate(schur, N)
    Path(out_path).write_text(dumps(payload), encoding="utf-8")
    return payload


def load_generated(path) -> dict:
    """Inverse of :func:`run_generate`: matrix polynomials become :class:`MatPoly2`."""
    d = json.loads(Path(path).read_text(encoding="utf-8"))
    out = dict(d)
    for key in ("F", "P", "Q"):
        out[key] = [MatPoly2(c) for c in d[key]]
    out["phi"] = [np.array([complex(*c) for c in p]) for p in d["phi"]]
    return out


# ---------------------------------------------------------------- verify


@dataclass
class Check:
    name: str
    residual: float
    tolerance: float
    passed: bool
    note: str = ""


@dataclass
class RunReport:
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, name, residual, tolerance, note=""):
        residual = float(residual)
        self.checks.append(Check(name, residual, tolerance, residual <= tolerance, note))

    def render(self) -> str:
        width = max([len(c.name) for c in self.checks] + [5])
        lines = [f"{'check':<{width}}  {'residual':>10}  {'tol':>8}  result"]
        for c in self.checks:
            verdict = "PASS" if c.passed else "FAIL"
            extra = f"  {c.note}" if c.note else ""
            lines.append(
                f"{c.name:<{width}}  {c.residual:>10.3e}  {c.tolerance:>8.1e}  {verdict}{extra}"
            )
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'} ({self.seconds:.2f} s)")
        return "\n".join(lines)


def _rel(err, a, b):
    scale = math.sqrt(float(np.max(np.abs(a))) * float(np.max(np.abs(b))))
    return float(np.max(np.abs(err))) / scale


def verify_construction(m: CircleMeasure, schur: SchurSequence, N: int, tol: float) -> RunReport:
    """Run the full invariant suite for indices up to ``N`` against measure ``m``."""
    report = RunReport()
    omega = associated_matrix_measure(m)
    pos = positivity_check(omega)
    x, _, r, sg = omega.grid
    excess = float(np.max(np.maximum(np.abs(sg) - r, 0.0), initial=0.0))
    report.add("positivity", excess, 0.0, "" if pos else pos.summary().splitlines()[0])
    if not pos:
        return report

    fs = vsof_sequence(schur, N)
    blocks = [gram_block(schur, n) for n in range(N + 1)]
    F = matrix_poly_recurrence(schur, N + 1)
    F_sof = matrix_poly_from_sof_sequence(schur, N + 1)

    gram = ident = 0.0
    for n in range(N + 1):
        for k in range(N + 1):
            G = vector_inner(fs[n].pair, fs[k].pair, m)
            want = blocks[n] if n == k else np.zeros((2, 2))
            ref_n = blocks[n] if n else np.diag([schur.eps0, schur.eps0])
            ref_k = blocks[k] if k else np.diag([schur.eps0, schur.eps0])
            gram = max(gram, _rel(G - want, ref_n, ref_k))
            ident = max(ident, _rel(G - 2 * matrix_inner(F[n], F[k], omega), ref_n, ref_k))
    report.add("gram_blocks", gram, tol)
    report.add("sof_matrix_identity", ident, tol)

    report.add("dual_route", max(a.max_abs_diff(b) for a, b in zip(F, F_sof)), POLY_TOL)

    second = 0.0
    for n in range(1, N + 1):
        rc = real_recurrence_coeffs(schur, n)
        rhs = J @ F[n + 1] + rc.L_tilde @ F[n] + rc.M_tilde @ F[n - 1]
        second = max(second, (F[n] @ Y_POLY).max_abs_diff(rhs))
    report.add("second_recurrence", second, POLY_TOL)

    rows = quasi_orthogonality_report(F[: N + 1], omega, schur)
    report.add(
        "quasi_orthogonality", max(max(r.lower, r.penultimate, r.norm) for r in rows), tol
    )

    P = lomp_sequence(schur, N, F)
    bookkeeping = 0.0
    for n in range(N + 1):
        _, _, at, bt = lomp_mixing(schur, n)
        back = at @ P[n] + (bt @ P[n - 1] if n else 0 * P[n])
        bookkeeping = max(bookkeeping, F[n].max_abs_diff(back))
        a0, b0, _, _ = lomp_mixing(schur, n)
        _, _, at1, bt1 = lomp_mixing(schur, n + 1)
        bookkeeping = max(
            bookkeeping,
            float(np.max(np.abs(a0 @ bt1 + b0 @ at - I2))),
            float(np.max(np.abs(a0 @ at1))),
            float(np.max(np.abs(b0 @ bt))),
        )
    report.add("lomp_bookkeeping", bookkeeping, POLY_TOL)

    lomp_orth = lomp_norm = 0.0
    for n in range(N + 1):
        _, norm = lomp_normalizers(schur, n)
        for k in range(n):
            xk = MatPoly2.monomial(k)
            val = matrix_inner(P[n], xk, omega)
            lomp_orth = max(lomp_orth, _rel(val, norm, matrix_inner(xk, xk, omega)))
        got = matrix_inner(P[n], P[n], omega)
        lomp_norm = max(lomp_norm, _rel(got - norm, norm, norm))
        top = matrix_inner(P[n], MatPoly2.monomial(n), omega)
        if abs(np.linalg.det(top)) <= tol * float(np.max(np.abs(top))) ** 2:
            lomp_orth = math.inf
    report.add("lomp_orthogonality", lomp_orth, tol)
    report.add("lomp_norms", lomp_norm, tol)

    Q = standard_lonp_sequence(schur, N, P)
    frame = 0.0
    for n in range(N + 1):
        fr = lonp_frame(schur, n)
        frame = max(frame, float(np.max(np.abs(fr.Xi.T @ fr.Xi - I2))))
        lead = Q[n].leading
        asym = float(np.max(np.abs(lead - lead.T))) / float(np.max(np.abs(lead)))
        frame = max(frame, asym)
        if np.min(np.linalg.eigvalsh(0.5 * (lead + lead.T))) <= 0:
            frame = math.inf
    report.add("lonp_frame", frame, FRAME_TOL)

    lonp = 0.0
    for n in range(N + 1):
        for k in range(N + 1):
            want = I2 if n == k else 0 * I2
            lonp = max(lonp, float(np.max(np.abs(matrix_inner(Q[n], Q[k], omega) - want))))
    report.add("lonp_orthonormality", lonp, tol)
    return report


def run_verify(spec: MeasureSpec, N: int, tol=1e-8, nodes=None, seed=0) -> RunReport:
    start = time.perf_counter()
    m = spec.circle_measure(nodes, seed, signed=True)
    omega = associated_matrix_measure(m)
    if not positivity_check(omega):
        report = verify_construction(m, SchurSequence(), N, tol)
    else:
        _, schur = spec.resolve(2 * N + 2, nodes, seed, signed=True)
        report = verify_construction(m, schur, N, tol)
    report.seconds = time.perf_counter() - start
    return report


# ---------------------------------------------------------------- asymptotics


def run_asymptotics(spec: MeasureSpec, x, n_max: int, out_path, nodes=None, seed=0):
    """Write the LONP convergence table ``n,err,rate`` for ``n = 0..n_max``."""
    if spec.atoms:
        raise AdmissibilityError("Szego-class routines do not accept measures with atoms")
    m, schur = spec.resolve(2 * n_max + 2, nodes, seed)
    omega = associated_matrix_measure(m)
    data = matrix_szego_data(omega)
    report = lonp_convergence_report(omega, schur, x, range(n_max + 1), data)
    with open(out_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "err", "rate"])
        for row in report.rows:
            w.writerow([row.n, f"{row.err:.17g}", f"{row.rate:.17g}"])
    return report


# ---------------------------------------------------------------- entry point


def _build_parser():
    p = argparse.ArgumentParser(prog="semiortho", description=__doc__.splitlines()[1])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--measure", required=True, help="JSON measure spec")
        sp.add_argument(
            "--nodes",
            type=int,
            default=None,
            help=f"quadrature nodes (default {DEFAULT_NODES}; Schur specs grow it to resolve the weight)",
        )
        sp.add_argument("--seed", type=int, default=0)

    g = sub.add_parser("gen", help="generate polynomials and matrices as JSON")
    common(g)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--out", required=True)

    v = sub.add_parser("verify", help="run the invariant suite")
    common(v)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--tol", type=float, default=1e-8)

    a = sub.add_parser("asymptotics", help="LONP convergence table as CSV")
    common(a)
    a.add_argument("--x", type=complex, required=True)
    a.add_argument("--n-max", type=int, required=True)
    a.add_argument("--out", required=True)
    return p


def _fmt_matrix(a):
    return "\n".join("  " + "  ".join(f"{v.real:+.17g}{v.imag:+.17g}j" for v in row) for row in a)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        spec = parse_spec(args.measure)
        if getattr(args, "n", 0) < 0 or getattr(args, "n_max", 0) < 0:
            raise SpecError("indices must be nonnegative")
        if args.command == "gen":
            run_generate(spec, args.n, args.out, args.nodes, args.seed)
            print(f"wrote {args.out}")
            return 0
        if args.command == "verify":
            report = run_verify(spec, args.n, args.tol, args.nodes, args.seed)
            print(report.render())
            return 0 if report.passed else 1
        x = args.x.real if args.x.imag == 0 else args.x
        report = run_asymptotics(spec, x, args.n_max, args.out, args.nodes, args.seed)
        print(f"z = {report.z:.17g}")
        print("limit D(dOmega; z)^-1 / sqrt(2 pi):")
        print(_fmt_matrix(report.limit))
        print(f"wrote {args.out}")
        return 0
    except (SpecError, AdmissibilityError, DomainError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
