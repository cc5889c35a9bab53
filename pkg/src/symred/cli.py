"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 infeasible or undecided result,
3 precondition failure, 4 input/output error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import Polynomial, matrix_from_json, matrix_to_json
from .errors import CapacityError, ConvergenceError, PreconditionError, SymredError, UnsupportedError
from .groups import GroupRepresentation, group_from_json, parse_group_spec

EXIT_OK, EXIT_USAGE, EXIT_RESULT, EXIT_PRECONDITION, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


@dataclass
class Outcome:
    status: str
    value: object = None
    certificate: object = None
    diagnostics: dict = field(default_factory=dict)
    text: list[str] = field(default_factory=list)
    code: int = EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# input and output helpers


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _write_text(path: str, text: str):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _load_group(spec: str | None) -> GroupRepresentation | None:
    if spec is None:
        return None
    if spec.endswith(".json") or os.path.exists(spec):
        return group_from_json(_read_json(spec))
    return parse_group_spec(spec)


def _poly_from(data) -> Polynomial:
    if isinstance(data, dict) and "poly" in data:
        data = data["poly"]
    return Polynomial.from_json(data)


def _load_poly(path: str) -> Polynomial:
    return _poly_from(_read_json(path))


def _expand_basis(p: Polynomial, kind: str, n: int) -> Polynomial:
    from .invariants import InvariantBasis

    basis = {"e": InvariantBasis.elementary, "p": InvariantBasis.powersum}.get(kind)
    if basis is None:
        raise PreconditionError(f"unknown basis {kind!r}; use e or p")
    b = basis(n)
    if p.nvars > n:
        raise PreconditionError(f"expression uses {p.nvars} generators but n = {n}")
    return b.substitute(p.embed(n) if p.nvars < n else p)


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.ndarray):
        return _jsonable(v.tolist())
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    return str(v)


def _emit(out: Outcome, fmt: str, stream) -> None:
    if fmt == "json":
        doc = {"status": out.status, "value": _jsonable(out.value)}
        if out.certificate is not None:
            doc["certificate"] = _jsonable(out.certificate)
        doc["diagnostics"] = _jsonable(out.diagnostics)
        stream.write(json.dumps(doc, indent=2) + "\n")
    else:
        for line in out.text or [str(out.value)]:
            stream.write(line + "\n")


def _fmt_matrix(m) -> str:
    m = np.asarray(m)
    rows = []
    for row in m:
        cells = []
        for v in row:
            if isinstance(v, complex) or np.iscomplexobj(v):
                v = complex(v)
                cells.append(f"{v.real:.6g}{v.imag:+.6g}i" if abs(v.imag) > 1e-12 else f"{v.real:.6g}")
            else:
                cells.append(str(v) if not isinstance(v, float) else f"{v:.6g}")
        rows.append("[" + ", ".join(cells) + "]")
    return "[" + ", ".join(rows) + "]"


# ---------------------------------------------------------------------------
# subcommands


def cmd_sab(args) -> Outcome:
    from .symmetry_adapted import symmetry_adapted_basis

    rep = _load_group(args.group)
    sab = symmetry_adapted_basis(rep, args.flavor, args.tol)
    data = sab.to_json()
    if args.out:
        _write_text(args.out, json.dumps(data, indent=2) + "\n")
    summary = [{"name": n, "multiplicity": c.multiplicity, "dim": c.dim, "kind": c.kind}
               for n, c in zip(sab.names, sab.components)]
    text = [f"{rep.name} ({sab.flavor}), degree {sab.dim}"]
    text += [f"  {s['name']}: multiplicity {s['multiplicity']}, dimension {s['dim']}" for s in summary]
    if args.out:
        text.append(f"basis written to {args.out}")
    return Outcome("ok", data if not args.out else summary, diagnostics={"components": summary}, text=text)


def cmd_blockdiag(args) -> Outcome:
    from .symmetry_adapted import SymmetryAdaptedBasis, block_diagonalize, symmetry_adapted_basis

    rep = _load_group(args.group)
    x = matrix_from_json(_read_json(args.input))
    sab = SymmetryAdaptedBasis.from_json(_read_json(args.basis)) if args.basis else \
        symmetry_adapted_basis(rep, args.flavor, args.tol)
    bd = block_diagonalize(rep, x, sab, args.tol)
    blocks = [np.round(b, 12) for b in bd.blocks]
    text = [f"block sizes {bd.block_sizes()}, off-block mass {bd.off_block_mass:.3e}"]
    text += [f"  {n}: {_fmt_matrix(b)} x{c.dim}" for n, b, c in zip(sab.names, blocks, bd.components)]
    return Outcome("ok", [matrix_to_json(b) for b in blocks],
                   diagnostics={"block_sizes": bd.block_sizes(), "off_block_mass": bd.off_block_mass,
                                "spectrum": bd.spectrum()}, text=text)


def cmd_theta(args) -> Outcome:
    from .lp import simplex_solve
    from .sdp import cycle_edges, solve_sdp, theta_cycle_closed_form, theta_cyclic_lp, theta_sdp

    if args.cycle is not None:
        lp = theta_cyclic_lp(args.cycle)
        res = simplex_solve(lp)
        if not res.optimal:
            return Outcome(res.status, None, text=[f"lp {res.status}"], code=EXIT_RESULT)
        value = float(res.value)
        shown = int(round(value)) if abs(value - round(value)) < 1e-12 else value
        return Outcome("optimal", shown, certificate={"x": [float(v) for v in res.x]},
                       diagnostics={"closed_form": theta_cycle_closed_form(args.cycle), "method": "cyclic-lp"},
                       text=[f"{shown}"])
    if not args.input:
        raise UsageError("theta needs --cycle K or --in graph.json")
    data = _read_json(args.input)
    try:
        n, edges = int(data["n"]), data["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"graph JSON needs n and edges: {exc}") from exc
    sdp = theta_sdp(edges, n)
    if args.group:
        sdp = sdp.with_group(_load_group(args.group))
    elif sorted(tuple(sorted(e)) for e in edges) == sorted(cycle_edges(n)):
        from .groups import dihedral_group

        sdp = sdp.with_group(dihedral_group(n, "vertices"))
    sol = solve_sdp(sdp)
    if sol.status != "optimal":
        return Outcome(sol.status, None, text=[sol.status], code=EXIT_RESULT)
    return Outcome("optimal", float(sol.value), diagnostics={"method": sol.method}, text=[f"{float(sol.value):.10g}"])


def cmd_reduce_sdp(args) -> Outcome:
    from .sdp import SDPProblem, check_invariance, export_sdpa, reduce_sdp

    rep = _load_group(args.group)
    sdp = SDPProblem.from_json(_read_json(args.input), rep)
    report = check_invariance(sdp, args.tol)
    if not report.invariant:
        return Outcome("not-invariant", None, diagnostics={"message": report.message},
                       text=[f"invariance check failed: {report.message}"], code=EXIT_PRECONDITION)
    red = reduce_sdp(sdp, args.tol)
    diag = {"block_sizes": red.block_sizes, "rows": len(red.rhs), "original_dim": sdp.dim}
    text = [f"blocks {red.block_sizes} from dimension {sdp.dim}, {len(red.rhs)} constraints"]
    if args.out:
        try:
            export_sdpa(red, args.out)
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc}") from exc
        text.append(f"SDPA written to {args.out}")
    value = None
    if red.is_lp:
        sol = red.solve()
        if sol.status != "optimal":
            return Outcome(sol.status, None, diagnostics=diag, text=text + [f"reduced LP {sol.status}"],
                           code=EXIT_RESULT)
        value = float(sol.value)
        text.append(f"optimal value {value:.10g}")
    return Outcome("exported" if value is None else "optimal", value, diagnostics=diag, text=text)


def cmd_sos(args) -> Outcome:
    from .sdp import export_sdpa
    from .sos import block_sos, gram_certificate, gram_feasibility, gram_setup, invariant_sos_blocks

    f = _load_poly(args.input)
    rep = _load_group(args.group)
    method = args.method or ("blocks" if rep is not None else "gram")
    if method == "blocks":
        if rep is None:
            raise UsageError("--method blocks needs --group")
        data = invariant_sos_blocks(rep, f)
        system = data.system()
        res = block_sos(rep, f)
        cert = res.certificate
        diag = {"method": "blocks", "block_sizes": data.sizes, "components": data.names}
        status, reason = res.status, res.reason
    else:
        problem = gram_setup(f)
        system = problem.system
        res = gram_feasibility(problem, rep)
        cert = gram_certificate(res) if res.status == "feasible" else None
        diag = {"method": "gram", "basis": [list(m) for m in problem.basis], "dof": res.dof}
        status, reason = res.status, res.reason
        if res.forced is not None:
            diag["forced_diagonal"] = {"monomial": list(res.forced[0]), "value": str(res.forced[1])}
    if args.emit_sdpa:
        try:
            export_sdpa(system.to_sdpa(), args.emit_sdpa)
        except OSError as exc:
            raise InputError(f"cannot write {args.emit_sdpa}: {exc}") from exc
    diag["reason"] = reason
    text = [f"{status}" + (f": {reason}" if reason else "")]
    if cert is not None:
        text += [f"  block {n or k}: size {a.shape[0]}" for k, (n, a) in enumerate(zip(cert.names or [""] * len(cert.a),
                                                                                   cert.a))]
    code = EXIT_OK if status == "feasible" else EXIT_RESULT
    return Outcome(status, status == "feasible", cert.to_json() if cert is not None else None, diag, text, code)


def cmd_rewrite(args) -> Outcome:
    from .invariants import InvariantBasis, rewrite_in_invariants

    f = _load_poly(args.input)
    basis = {"e": InvariantBasis.elementary, "p": InvariantBasis.powersum}[args.basis](f.nvars)
    g = rewrite_in_invariants(f, basis)
    s = g.format(basis.names)
    return Outcome("ok", s, certificate=g.to_json(), diagnostics={"names": basis.names}, text=[s])


def _parse_irrep(s: str):
    t = s.strip()
    if t.startswith("("):
        try:
            return tuple(int(v) for v in t.strip("()").split(",") if v.strip())
        except ValueError as exc:
            raise UsageError(f"bad partition {s!r}") from exc
    return t


def cmd_hmatrix(args) -> Outcome:
    from .groups import DihedralGroup, SymmetricGroup
    from .invariants import dihedral_h_matrices, symmetric_h_matrices

    rep = _load_group(args.group)
    g = rep.group
    if isinstance(g, SymmetricGroup):
        table = symmetric_h_matrices(g.n)
    elif isinstance(g, DihedralGroup) and rep.degree == 2:
        table = dihedral_h_matrices(g.n)
    else:
        raise PreconditionError("hmatrix supports S:n and D:n")
    if args.irrep:
        key = _parse_irrep(args.irrep)
        if key not in table:
            raise PreconditionError(f"no irreducible {args.irrep!r}; available {[str(k) for k in table]}")
        table = {key: table[key]}
    value = {}
    text = []
    for key, h in table.items():
        name = "(" + ",".join(map(str, key)) + ")" if isinstance(key, tuple) else key
        value[name] = h.format()
        text.append(f"H[{name}] with s = {[str(p) for p in h.s]}")
        text += ["  " + " | ".join(row) for row in h.format()]
    return Outcome("ok", value, certificate={k: h.to_json() for k, h in zip(value, table.values())},
                   diagnostics={"generators": next(iter(table.values())).generators.names}, text=text)


def cmd_higher_specht(args) -> Outcome:
    from .groups import standard_tableaux
    from .invariants import higher_specht_family, symmetric_covariant_generators

    try:
        shape = tuple(int(v) for v in args.shape.split(","))
    except ValueError as exc:
        raise UsageError(f"bad shape {args.shape!r}") from exc
    if any(a < b for a, b in zip(shape, shape[1:])) or min(shape) <= 0:
        raise PreconditionError(f"{shape} is not a partition")
    if sum(shape) > 6:
        raise PreconditionError("higher Specht polynomials are supported for n <= 6")
    tabs = standard_tableaux(shape)
    if args.list:
        items = []
        text = []
        for t, fam in higher_specht_family(shape).items():
            for h in fam:
                items.append({"T": [list(r) for r in t.rows], "V": [list(r) for r in h.v.rows],
                              "word": list(h.word), "index": list(h.index), "charge": h.charge,
                              "monomial": str(h.monomial), "polynomial": str(h.polynomial)})
                text.append(f"T={t.rows} V={h.v.rows} w={''.join(map(str, h.word))} "
                            f"i={''.join(map(str, h.index))} charge={h.charge}: {h.polynomial}")
        return Outcome("ok", items, diagnostics={"count": len(items)}, text=text)
    gens = symmetric_covariant_generators(shape)
    text = [f"shape {shape}: {len(tabs)} standard tableaux, {len(tabs) ** 2} polynomials"]
    text += [f"  copy {k + 1}: {p}" for k, p in enumerate(gens)]
    return Outcome("ok", [str(p) for p in gens], diagnostics={"standard_tableaux": len(tabs)}, text=text)


def cmd_orbitspace(args) -> Outcome:
    from .invariants import InvariantBasis
    from .orbit_space import HilbertMap, grid_minimize, moment_relaxation_qk, reformulate

    data = _read_json(args.input)
    f = _poly_from(data)
    cons = [Polynomial.from_json(c) for c in data.get("constraints", [])] if isinstance(data, dict) else []
    rep = _load_group(args.group)
    basis = {"e": InvariantBasis.elementary, "p": InvariantBasis.powersum}[args.basis](f.nvars)
    hm = HilbertMap(basis.polys, rep, names=basis.names)
    prob = reformulate(hm, f, cons)
    names = basis.names
    diag = {"objective": prob.objective.format(names), "constraints": [g.format(names) for g in prob.constraints],
            "J": [[e.format(names) for e in row] for row in prob.j.entries]}
    text = [f"objective {diag['objective']}", f"J = {prob.j.format(names)}"]
    value = None
    if args.grid is not None:
        res = grid_minimize(prob, [(-args.grid, args.grid)] * hm.m)
        value = res.value
        diag["grid_point"] = res.point
        text.append(f"grid minimum {res.value:.9g} at {[round(v, 9) for v in res.point]}")
    if args.qk is not None:
        rel = moment_relaxation_qk(prob, args.qk, args.m)
        diag["qk"] = {"order": args.qk, "blocks": rel.blocks, "block_sizes": rel.data.block_struct,
                      "moments": len(rel.moments), "offset": str(rel.offset)}
        text.append(f"Q_{args.qk}: blocks {dict(zip(rel.blocks, rel.data.block_struct))}, "
                    f"{len(rel.moments)} moments, constant offset {rel.offset}")
        if args.out:
            try:
                rel.export(args.out)
            except OSError as exc:
                raise InputError(f"cannot write {args.out}: {exc}") from exc
            text.append(f"SDPA written to {args.out}")
    return Outcome("ok", value if value is not None else diag["objective"], diagnostics=diag, text=text)


def cmd_degree(args) -> Outcome:
    from .degree_principle import minimize_all

    data = _read_json(args.input)
    f = _poly_from(data)
    cons = [Polynomial.from_json(c) for c in data.get("constraints", [])] if isinstance(data, dict) else []
    kind = data.get("basis") if isinstance(data, dict) else None
    if kind:
        if args.n is None:
            raise UsageError("--n is required when the input is written in a basis")
        f = _expand_basis(f, kind, args.n)
        cons = [_expand_basis(g, kind, args.n) for g in cons]
    elif args.n is not None and args.n != f.nvars:
        raise PreconditionError(f"--n {args.n} does not match the polynomial's {f.nvars} variables")
    res = minimize_all(f, cons, box=args.box, via=args.via)
    out = res.to_json()
    text = [f"minimum {res.value:.10g} on orbit type {res.partition} (r = {res.r})",
            f"point {[round(v, 9) for v in res.point]}"]
    if res.unbounded:
        text.append("objective appears unbounded below")
    if res.boundary:
        text.append("minimiser touches the search box")
    return Outcome("ok", out, diagnostics={"subproblems": len(res.subresults), "via": args.via}, text=text)


def cmd_sage(args) -> Outcome:
    from .fixtures import trivial_group
    from .sage import Signomial, sage_bound, sage_feasible

    f = Signomial.from_json(_read_json(args.input))
    rep = _load_group(args.group) or trivial_group(f.n)
    if args.bound:
        lam = sage_bound(f, rep)
        return Outcome("ok", lam, diagnostics={"method": "bisection"}, text=[f"{lam:.10g}"],
                       code=EXIT_OK if np.isfinite(lam) else EXIT_RESULT)
    res = sage_feasible(f, rep, args.tol)
    cert = None
    if res.certificate is not None:
        cert = {"templates": [{"beta": [str(v) for v in t.beta], "values": [str(v) for v in vals],
                               "nu": r.certificate.nu, "entropy": r.entropy, "d": str(t.d)}
                              for t, vals, r in zip(res.certificate.templates, res.certificate.values,
                                                    res.certificate.results)]}
    status = "feasible" if res.feasible else "infeasible"
    text = [f"{status} (margin {res.margin:.6g}, free parameters {res.dof})" + (f": {res.reason}" if res.reason else "")]
    return Outcome(status, res.feasible, cert, {"margin": res.margin, "dof": res.dof, "reason": res.reason}, text,
                   EXIT_OK if res.feasible else EXIT_RESULT)


def cmd_demo(args) -> Outcome:
    from .demos import DEMOS

    if args.list:
        return Outcome("ok", list(DEMOS), text=list(DEMOS))
    if args.all:
        names = list(DEMOS)
    elif args.name:
        if args.name not in DEMOS:
            raise UsageError(f"unknown demo {args.name!r}; try --list")
        names = [args.name]
    else:
        raise UsageError("demo needs a name, --all or --list")
    results = [DEMOS[n]() for n in names]
    passed = all(r.passed for r in results)
    text = []
    for r in results:
        if len(results) == 1:
            text.append(str(r.value))
        text.append(r.line())
        if args.verbose or not r.passed:
            text += ["    " + ln for ln in r.details]
    if len(results) > 1:
        text.append(f"{sum(r.passed for r in results)}/{len(results)} passed")
    value = results[0].value if len(results) == 1 else {r.name: r.passed for r in results}
    return Outcome("pass" if passed else "fail", value, diagnostics={"results": [r.to_json() for r in results]},
                   text=text, code=EXIT_OK if passed else EXIT_RESULT)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS)

    p = _Parser(prog="symred", description="Symmetry reduction for SDPs, sums of squares and SAGE certificates.")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--tol", type=float, default=1e-9)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("sab", parents=[common], help="symmetry-adapted basis")
    s.add_argument("--group", required=True)
    s.add_argument("--flavor", choices=["complex", "real"], default="complex")
    s.add_argument("--out")
    s.set_defaults(func=cmd_sab)

    s = sub.add_parser("blockdiag", parents=[common], help="block-diagonalize an invariant matrix")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--group", required=True)
    s.add_argument("--basis")
    s.add_argument("--flavor", choices=["complex", "real"], default="complex")
    s.set_defaults(func=cmd_blockdiag)

    s = sub.add_parser("theta", parents=[common], help="Lovasz theta number")
    s.add_argument("--cycle", type=int)
    s.add_argument("--in", dest="input")
    s.add_argument("--group")
    s.set_defaults(func=cmd_theta)

    s = sub.add_parser("reduce-sdp", parents=[common], help="reduce an invariant SDP and export SDPA")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--group", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_reduce_sdp)

    s = sub.add_parser("sos", parents=[common], help="sum-of-squares feasibility")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--group")
    s.add_argument("--method", choices=["blocks", "gram"])
    s.add_argument("--emit-sdpa", dest="emit_sdpa")
    s.set_defaults(func=cmd_sos)

    s = sub.add_parser("rewrite", parents=[common], help="rewrite a symmetric polynomial")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--basis", choices=["e", "p"], default="e")
    s.set_defaults(func=cmd_rewrite)

    s = sub.add_parser("hmatrix", parents=[common], help="H-matrices of covariants")
    s.add_argument("--group", required=True)
    s.add_argument("--irrep")
    s.set_defaults(func=cmd_hmatrix)

    s = sub.add_parser("higher-specht", parents=[common], help="higher Specht polynomials")
    s.add_argument("--shape", required=True)
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_higher_specht)

    s = sub.add_parser("orbitspace", parents=[common], help="orbit-space reformulation")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--group")
    s.add_argument("--basis", choices=["e", "p"], default="e")
    s.add_argument("--qk", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--grid", type=float, metavar="BOX")
    s.add_argument("--out")
    s.set_defaults(func=cmd_orbitspace)

    s = sub.add_parser("degree", parents=[common], help="degree-principle minimisation")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--box", type=float, default=10.0)
    s.add_argument("--via", choices=["grid", "sos"], default="grid")
    s.set_defaults(func=cmd_degree)

    s = sub.add_parser("sage", parents=[common], help="SAGE certificates for signomials")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--group")
    s.add_argument("--bound", action="store_true")
    s.set_defaults(func=cmd_sage)

    s = sub.add_parser("demo", parents=[common], help="named end-to-end examples")
    s.add_argument("name", nargs="?")
    s.add_argument("--all", action="store_true")
    s.add_argument("--list", action="store_true")
    s.add_argument("--verbose", "-v", action="store_true")
    s.set_defaults(func=cmd_demo)
    return p


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    fmt = "text"
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        fmt = args.format
        if args.command is None:
            raise UsageError("symred: a subcommand is required")
        if args.tol <= 0:
            raise UsageError("--tol must be positive")
        out = args.func(args)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        if fmt == "text":
            stderr.write(parser.format_usage())
        return EXIT_USAGE
    except InputError as exc:
        _report(Outcome("io-error", None, diagnostics={"message": str(exc)}, text=[str(exc)]), fmt, stdout, stderr)
        return EXIT_IO
    except ConvergenceError as exc:
        _report(Outcome("undecided", None, diagnostics={"message": str(exc)}, text=[str(exc)]), fmt, stdout, stderr)
        return EXIT_RESULT
    except (PreconditionError, UnsupportedError, CapacityError, SymredError) as exc:
        msg = str(exc)
        _report(Outcome("precondition-failed", None, diagnostics={"message": msg}, text=[msg]), fmt, stdout, stderr)
        return EXIT_PRECONDITION
    _emit(out, fmt, stdout)
    return out.code


def _report(out: Outcome, fmt: str, stdout, stderr):
    if fmt == "json":
        _emit(out, fmt, stdout)
    else:
        stderr.write("error: " + "\n".join(out.text) + "\n")


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
