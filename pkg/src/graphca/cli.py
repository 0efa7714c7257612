"""``graphca`` command line.

Every command prints one JSON report on stdout; diagnostics go to stderr.
Exit status: 0 on success, 1 when a covering array fails verification, 2 on
usage errors and unreadable or invalid input files.

``GRAPHCA_LIMITS`` (e.g. ``chi=20,omega=24``) raises the vertex limits of the
exact chromatic-number and clique searches.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from pathlib import Path

import numpy as np

from graphca import constructions as cons
from graphca.algebra.groups import (
    FiniteGroup,
    cayley_graph,
    check_connection_set,
    even_cycles,
    left_translation,
    parse_group_spec,
)
from graphca.algebra.oa import bush_oa, is_orthogonal_array, oa_prime_power
from graphca.approx import approx_ca, ratio_certificate
from graphca.ca import CoveringArray, verify_ca
from graphca.errors import FormatError, GraphCAError, InvalidAutomorphism, InvalidInputCA, SizeLimitExceeded
from graphca.factorization import factorize
from graphca.fileio import (
    format_coords,
    read_ca,
    read_col,
    read_connection_set,
    read_group,
    write_ca,
    write_col,
)
from graphca.graph import CHI_LIMIT, CLIQUE_LIMIT, exact_chromatic_number, greedy_coloring, make_graph, max_clique
from graphca.products import product

log = logging.getLogger("graphca")

MAX_FACTORS = 6


class UsageError(GraphCAError):
    pass


class VerificationFailed(GraphCAError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class Session:
    """Collects inputs and outputs for the command report."""

    def __init__(self, command):
        self.command = command
        self.inputs = []
        self.outputs = []
        self.start = time.perf_counter()

    def read(self, path):
        path = Path(path)
        try:
            digest = hashlib.sha256(path.read_bytes()).hexdigest()
        except OSError as exc:
            raise FormatError(f"cannot read file ({exc.strerror})", path) from None
        self.inputs.append({"path": str(path), "sha256": digest})
        return path

    def wrote(self, path):
        self.outputs.append(str(path))

    def report(self, body, ok=True):
        return {
            "command": self.command,
            "ok": ok,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "report": body,
            "wall_time_ms": round((time.perf_counter() - self.start) * 1000, 3),
        }


def limits():
    chi, omega = CHI_LIMIT, CLIQUE_LIMIT
    raw = os.environ.get("GRAPHCA_LIMITS", "").strip()
    if raw:
        for item in raw.split(","):
            key, _, value = item.partition("=")
            key = key.strip()
            if key not in ("chi", "omega") or not value.strip().isdigit():
                raise UsageError(f"GRAPHCA_LIMITS: cannot parse {item!r} (expected chi=N,omega=N)")
            if key == "chi":
                chi = int(value)
            else:
                omega = int(value)
    return chi, omega


# ---------------------------------------------------------------------------
# argument helpers


def _load_graph(session, path):
    return read_col(session.read(path))


def _load_group(session, spec) -> FiniteGroup:
    if spec is None:
        raise UsageError("--group is required for this command")
    if Path(spec).is_file():
        return read_group(session.read(spec))
    try:
        return parse_group_spec(spec)
    except (ValueError, GraphCAError) as exc:
        raise UsageError(f"--group {spec!r}: {exc}") from None


def _load_conn_set(session, grp, spec):
    if spec is None:
        raise UsageError("--conn-set is required for this command")
    if Path(spec).is_file():
        return read_connection_set(session.read(spec), grp)
    if spec == "even-cycles":
        m = {1: 1, 2: 2, 6: 3, 24: 4}.get(grp.order)
        if m is None:
            raise UsageError("even-cycles needs a symmetric group")
        return sorted(even_cycles(m))
    items = [x.strip() for x in spec.split(",") if x.strip()]
    return [grp.index(int(x) if x.isdigit() and x not in grp.names else x) for x in items]


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _write_verified_ca(session, ca: CoveringArray, path):
    write_ca(ca, path)
    session.wrote(path)
    back = read_ca(path, ca.graph)
    if not np.array_equal(back.by_vertex(), ca.by_vertex()):
        raise VerificationFailed(f"{path} did not read back identically")
    rep = verify_ca(back, ca.graph)
    if not rep.ok:
        raise VerificationFailed(f"{path} fails verification", rep.as_dict())
    return rep


def _write_graph(session, graph, path):
    write_col(graph, path)
    session.wrote(path)
    back = read_col(path)
    if back.edges != graph.edges or back.vertex_count != graph.vertex_count:
        raise VerificationFailed(f"{path} did not read back identically")


# ---------------------------------------------------------------------------
# commands


def cmd_make(args, session):
    if args.family == "cayley":
        grp = _load_group(session, args.group)
        S = _load_conn_set(session, grp, args.conn_set)
        graph = cayley_graph(grp, S)
    elif args.family == "circulant":
        if args.n is None or args.S is None:
            raise UsageError("circulant needs --n and --S")
        graph = make_graph("circulant", args.n, _int_list(args.S))
    else:
        if args.n is None:
            raise UsageError(f"{args.family} needs --n")
        graph = make_graph(args.family, args.n)
    _write_graph(session, graph, args.out)
    return {"vertices": graph.vertex_count, "edges": len(graph.edges)}


def cmd_product(args, session):
    if not 2 <= len(args.factors) <= MAX_FACTORS:
        raise UsageError(f"product takes between 2 and {MAX_FACTORS} factors")
    factors = [_load_graph(session, p) for p in args.factors]
    prod = product(args.op, factors)
    _write_graph(session, prod.graph, args.out)
    if args.coords:
        Path(args.coords).write_text(format_coords(prod.coords))
        session.wrote(args.coords)
    return {
        "op": prod.op,
        "factor_sizes": list(prod.sizes),
        "vertices": prod.graph.vertex_count,
        "edges": len(prod.graph.edges),
    }


def cmd_factor(args, session):
    graph = _load_graph(session, args.graph)
    fz = factorize(graph)
    src = Path(args.graph)
    stem = src.with_suffix("") if src.suffix == ".col" else src
    out_dir = Path(args.out_dir) if args.out_dir else stem.parent
    factors = []
    for i, f in enumerate(fz.factors):
        path = out_dir / f"{stem.name}.factor{i}.col"
        _write_graph(session, f, path)
        factors.append({"path": str(path), "vertices": f.vertex_count, "edges": len(f.edges)})
    print(f"{fz.k} factor(s)", file=sys.stderr)
    for i, f in enumerate(factors):
        print(f"  factor {i}: V={f['vertices']} E={f['edges']}", file=sys.stderr)
    return {"factor_count": fz.k, "factors": factors}


def cmd_oa(args, session):
    oa = bush_oa(args.g) if args.bush else oa_prime_power(args.g)
    ca = CoveringArray(oa.matrix, args.g)
    out = args.out or f"oa{args.g}.ca"
    write_ca(ca, out)
    session.wrote(out)
    back = read_ca(out)
    if not is_orthogonal_array(back.matrix, args.g):
        raise VerificationFailed(f"{out} is not an orthogonal array")
    return {"rows": oa.rows, "columns": oa.matrix.shape[1], "g": args.g, "construction": "bush" if args.bush else "field"}


def _factor_cas(session, graphs, ca_paths, g):
    if len(ca_paths) > len(graphs):
        raise UsageError("more --ca-in files than factor graphs")
    cas, notes = [], []
    for i, graph in enumerate(graphs):
        if i < len(ca_paths):
            ca = read_ca(session.read(ca_paths[i]), graph)
            if g is not None and ca.g != g:
                raise UsageError(f"{ca_paths[i]} uses g={ca.g}, expected {g}")
            cas.append(ca)
        else:
            if g is None:
                raise UsageError("--g is required when factor arrays are not supplied")
            cas.append(cons.coloring_construction(graph, g))
            notes.append(f"factor {i}: array from the colouring construction")
    return cas, notes


def _cayley_phi(args, grp, S, g1):
    if args.phi is not None:
        return _int_list(args.phi)
    if grp is not None:
        report = check_connection_set(grp, S)
        if not report.conjugation_closed:
            raise UsageError("left translation needs S closed under conjugation; pass --phi")
        return list(left_translation(grp, sorted(S)[0]))
    n = g1.vertex_count
    shifts = [args.shift] if args.shift is not None else sorted(g1.adj[0])
    for j in shifts:
        phi = [(k + j) % n for k in range(n)]
        try:
            cons.check_neighbour_automorphism(g1, phi)
            return phi
        except InvalidAutomorphism:
            continue
    raise UsageError("no shift automorphism found; pass --phi")


def cmd_build(args, session):
    strategy = args.strategy
    graphs = [_load_graph(session, p) for p in args.graph]
    notes = []
    u = 1
    if strategy in ("strong", "box", "direct", "lex"):
        if not 2 <= len(graphs) <= MAX_FACTORS:
            raise UsageError(f"{strategy} needs between 2 and {MAX_FACTORS} --graph factors")
        cas, notes = _factor_cas(session, graphs, args.ca_in, args.g)
        out = {
            "strong": cons.strong_concat,
            "box": lambda c: cons.box_or_direct_concat(c, "cartesian"),
            "direct": cons.direct_min,
            "lex": cons.lex_concat,
        }[strategy](cas)
        sizes = [c.cols for c in cas]
    elif strategy == "coloring":
        if len(graphs) != 1 or args.g is None:
            raise UsageError("coloring needs one --graph and --g")
        col = cons.auto_coloring(graphs[0])
        out = cons.coloring_construction(graphs[0], args.g, col)
        u = cons.coloring_multiplier(graphs[0], args.g, col)
        sizes = [col.color_count]
        notes.append(f"{col.color_count} colours")
    elif strategy == "cayley2":
        grp = S = None
        if args.group is not None:
            grp = _load_group(session, args.group)
            S = _load_conn_set(session, grp, args.conn_set)
            g1 = cayley_graph(grp, S)
            rest = graphs
        else:
            if len(graphs) < 2:
                raise UsageError("cayley2 needs --graph G1 --graph G2, or --group/--conn-set and --graph G2")
            g1, rest = graphs[0], graphs[1:]
        if len(rest) != 1:
            raise UsageError("cayley2 needs exactly one second factor")
        ca1 = _base_ca(session, args, g1)
        out = cons.cayley_box_2color(ca1, _cayley_phi(args, grp, S, g1), rest[0])
        sizes = [ca1.cols]
    elif strategy in ("cayley3", "cayley4"):
        grp = _load_group(session, args.group)
        S = _load_conn_set(session, grp, args.conn_set)
        if len(graphs) != 1:
            raise UsageError(f"{strategy} needs exactly one --graph (the second factor)")
        g1 = cayley_graph(grp, S)
        ca1 = _base_ca(session, args, g1)
        witness = args.witness.split(",") if args.witness else None
        fn = cons.cayley_box_3color if strategy == "cayley3" else cons.cayley_box_4color
        out = fn(ca1, grp, S, witness, graphs[0])
        sizes = [ca1.cols]
    elif strategy == "approx":
        if len(graphs) != 1 or args.g is None:
            raise UsageError("approx needs one --graph and --g")
        res = approx_ca(graphs[0], args.g)
        out, u, sizes = res.ca, res.u, [res.v1]
        notes.extend(res.warnings)
    else:
        raise UsageError(f"unknown strategy {strategy!r}")

    report = cons.construction_report(strategy, sizes, out, notes, u=u)
    body = {"construction": report.as_dict(), "vertices": out.rows}
    if args.graph_out:
        _write_graph(session, out.graph, args.graph_out)
    if args.out:
        body["verification"] = _write_verified_ca(session, out, args.out).as_dict()
    else:
        body["verification"] = verify_ca(out).as_dict()
    return body


def _base_ca(session, args, g1):
    if args.ca_in:
        ca = read_ca(session.read(args.ca_in[0]), g1)
        return ca
    if args.g is None:
        raise UsageError("--g is required when --ca-in is not given")
    return cons.coloring_construction(g1, args.g)


def cmd_approx(args, session):
    graph = _load_graph(session, args.graph)
    res = approx_ca(graph, args.g)
    body = {"approx": res.as_dict(), "certificate": ratio_certificate(res)}
    if args.out:
        body["verification"] = _write_verified_ca(session, res.ca, args.out).as_dict()
    if args.report:
        Path(args.report).write_text(json.dumps(body, indent=2) + "\n")
        session.wrote(args.report)
    return body


def cmd_verify(args, session):
    graph = _load_graph(session, args.graph)
    ca = read_ca(session.read(args.ca), graph)
    rep = verify_ca(ca, graph)
    for u, v, pair in rep.failing_edges:
        print(f"edge ({u}, {v}) missing pair {pair}", file=sys.stderr)
    if not rep.ok:
        raise VerificationFailed(f"{len(rep.failing_edges)} edge(s) fail", rep.as_dict())
    return rep.as_dict()


def cmd_analyze(args, session):
    graph = _load_graph(session, args.graph)
    chi_limit, omega_limit = limits()
    greedy = greedy_coloring(graph).color_count
    try:
        omega = max_clique(graph, omega_limit)
    except SizeLimitExceeded:
        omega = None
    try:
        chi = exact_chromatic_number(graph, chi_limit)
    except SizeLimitExceeded:
        chi = None
    upper = chi if chi is not None else greedy
    low = f"K_{omega}" if omega is not None else "K_omega"
    body = {
        "vertices": graph.vertex_count,
        "edges": len(graph.edges),
        "omega": omega,
        "greedy_chi": greedy,
        "exact_chi": chi,
        "bounds": f"CAN({low},g) <= CAN(G,g) <= CAN(K_{upper},g)",
        "limits": {"chi": chi_limit, "omega": omega_limit},
    }
    print(body["bounds"], file=sys.stderr)
    return body


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="graphca", description="Covering arrays on graphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("make", help="write a standard graph")
    m.add_argument("--family", required=True, choices=["path", "cycle", "complete", "edgeless", "circulant", "cayley"])
    m.add_argument("--n", type=int)
    m.add_argument("--S", help="circulant connection set, e.g. 1,4")
    m.add_argument("--group", help="cyclic:N, dihedral:2N, quaternion8, symmetric:N or a group JSON file")
    m.add_argument("--conn-set", help="comma-separated elements, 'even-cycles', or a JSON file")
    m.add_argument("-o", "--out", required=True)
    m.set_defaults(func=cmd_make)

    pr = sub.add_parser("product", help="graph product of .col files")
    pr.add_argument("--op", required=True, choices=["cartesian", "box", "direct", "strong", "lex", "lexicographic"])
    pr.add_argument("factors", nargs="+")
    pr.add_argument("-o", "--out", required=True)
    pr.add_argument("--coords")
    pr.set_defaults(func=cmd_product)

    f = sub.add_parser("factor", help="Cartesian prime factorization")
    f.add_argument("graph")
    f.add_argument("--out-dir")
    f.set_defaults(func=cmd_factor)

    o = sub.add_parser("oa", help="write an orthogonal array")
    o.add_argument("--g", type=int, required=True)
    o.add_argument("--bush", action="store_true", help="composite g via prime-power components")
    o.add_argument("-o", "--out")
    o.set_defaults(func=cmd_oa)

    b = sub.add_parser("build", help="run a construction")
    b.add_argument(
        "--strategy",
        required=True,
        choices=["strong", "box", "direct", "lex", "coloring", "cayley2", "cayley3", "cayley4", "approx"],
    )
    b.add_argument("--graph", action="append", default=[])
    b.add_argument("--g", type=int)
    b.add_argument("--group")
    b.add_argument("--conn-set")
    b.add_argument("--ca-in", action="append", default=[])
    b.add_argument("--witness", help="s1,s2 element names or indices")
    b.add_argument("--phi", help="automorphism of G1 as a comma-separated image list")
    b.add_argument("--shift", type=int, help="circulant shift j, phi(k) = k + j mod n")
    b.add_argument("--out", "-o")
    b.add_argument("--graph-out", help="also write the covered graph")
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("approx", help="approximation through Cartesian factors")
    a.add_argument("--graph", required=True)
    a.add_argument("--g", type=int, required=True)
    a.add_argument("-o", "--out")
    a.add_argument("--report")
    a.set_defaults(func=cmd_approx)

    v = sub.add_parser("verify", help="check a covering array against a graph")
    v.add_argument("--graph", required=True)
    v.add_argument("--ca", required=True)
    v.set_defaults(func=cmd_verify)

    an = sub.add_parser("analyze", help="clique number, chromatic number and CAN bounds")
    an.add_argument("--graph", required=True)
    an.set_defaults(func=cmd_analyze)
    return p


# options whose values may start with '-' (group elements such as -1 or -i)
_DASH_VALUES = ("--conn-set", "--witness", "--phi", "--S", "--shift")


def _attach_values(argv):
    out, it = [], iter(argv)
    for a in it:
        if a in _DASH_VALUES:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def run(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_attach_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    session = Session(args.command)
    try:
        body = args.func(args, session)
    except (VerificationFailed, InvalidInputCA) as exc:
        print(f"graphca: {exc}", file=sys.stderr)
        body = {"error": str(exc)}
        if getattr(exc, "report", None):
            body["verification"] = exc.report
        print(json.dumps(session.report(body, ok=False)))
        return 1
    except (GraphCAError, OSError) as exc:
        print(f"graphca: {exc}", file=sys.stderr)
        print(json.dumps(session.report({"error": str(exc)}, ok=False)))
        return 2
    print(json.dumps(session.report(body)))
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
