import argparse
import logging
import sys
import traceback
from datetime import datetime

import pandas as pd

import config
from algebra.mobius import (MobiusTransform, fixed_points_count, from_signature, iterate_distinct, order,
                            unit_circle_form)
from algebra.scalar import Scalar
from counting import loopspace, matchgate
from counting.oracle import csp_brute, holant_brute, tutte
from database.database import add_run_record, create_connection, history_frame, initialize_database
from errors import InvariantViolation, ParseError, SixVertexError, ValidationError
from planar import generators
from planar.instance import uniform_instance
from planar.instance_format import load_instance, save_instance
from planar.rotation_map import medial
from reductions import compilers, harness
from signatures.classifier import classify
from signatures.signature import SixVertexSignature, parse_signature, to_six_vertex

logger = logging.getLogger("sixvertex")

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_INVARIANT = 0, 1, 2, 3
TUTTE_WEIGHTS = SixVertexSignature(1, 1, 2, 1, 1, 2)


# --- GLOBAL ERROR HANDLER (AIRBAG) ---
def exception_hook(exctype, value, tb):
    """
    Menangkap semua error yang tidak terduga agar proses keluar dengan kode 3
    dan traceback tetap tercatat.
    """
    traceback_str = ''.join(traceback.format_tb(tb))
    print("CRITICAL ERROR CAUGHT:", file=sys.stderr)
    print(f"{exctype.__name__}: {value}", file=sys.stderr)
    print(traceback_str, file=sys.stderr)
    logger.critical("unhandled %s: %s", exctype.__name__, value)
    sys.exit(EXIT_INVARIANT)


class CliParser(argparse.ArgumentParser):
    """argparse with exit status 1 on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def emit(lines):
    for line in lines:
        print(line)


# ---------------------------------------------------------------
# Parsing bantu
# ---------------------------------------------------------------
def six_vertex(text):
    try:
        return to_six_vertex(parse_signature(text))
    except SixVertexError as e:
        raise ValidationError(f"--sig {text!r}: {e}") from e


def graph_spec(text):
    """cycle:N | random:N:SEED | multigraph:E:SEED, as a plane RotationMap."""
    kind, *params = text.split(":")
    try:
        numbers = [int(p) for p in params]
    except ValueError as e:
        raise ParseError(f"graph spec {text!r} needs integer parameters") from e
    if kind == "cycle" and len(numbers) == 1:
        return generators.cycle_graph(numbers[0])
    if kind == "random" and len(numbers) == 2:
        return generators.random_plane_graph(numbers[0], numbers[1])
    if kind == "multigraph" and len(numbers) == 2:
        return generators.random_plane_multigraph(numbers[0], numbers[1])
    raise ParseError(f"unknown graph spec {text!r}; use cycle:N, random:N:SEED or multigraph:E:SEED")


def read_instance(args):
    instance, err = load_instance(args.instance)
    if err:
        raise ValidationError(err)
    if args.sig:
        instance = instance.with_signature(six_vertex(args.sig))
    return instance


def uniform_six_vertex(instance):
    """The one six-vertex signature on all 4-valent vertices, or None."""
    found = {instance.signature_of(v) for v in instance.four_valent()}
    if len(found) != 1:
        return None
    try:
        return to_six_vertex(found.pop())
    except SixVertexError:
        return None


# ---------------------------------------------------------------
# Perintah
# ---------------------------------------------------------------
def cmd_classify(args):
    verdict = classify(six_vertex(args.sig))
    emit([verdict.summary()] + verdict.as_lines())
    return verdict.summary()


def _auto_method(f):
    if f is None:
        return "brute"
    if not f.c and not f.z:
        return "loopspace"
    witnesses = classify(f).witnesses
    if "C3_M" in witnesses:
        return "fkt"
    if "C3_Mhat" in witnesses:
        return "fkt-hat"
    logger.warning("no polynomial-time evaluator applies to %s; using brute force", f)
    return "brute"


def evaluate(instance, method, jobs):
    if method == "brute":
        return holant_brute(instance, jobs=jobs)
    if method == "loopspace":
        return loopspace.evaluate(instance)
    if method == "fkt":
        return matchgate.fkt_eval(instance)
    if method == "fkt-hat":
        return matchgate.fkt_eval_hat(instance)
    raise ValidationError(f"unknown method {method!r}")


def cmd_eval(args):
    if args.tutte:
        if not args.graph:
            raise ValidationError("eval --tutte needs --graph")
        graph = graph_spec(args.graph)
        value = tutte(graph, 3, 3)
        holant = holant_brute(uniform_instance(medial(graph), TUTTE_WEIGHTS), jobs=args.jobs)
        emit([f"tutte_2T33={2 * value}", f"holant={holant}", f"match={'yes' if holant == 2 * value else 'no'}"])
        if holant != 2 * value:
            raise InvariantViolation("medial Holant at the Tutte weights differs from 2 T(G; 3, 3)")
        return f"2T={2 * value}"
    if not args.instance:
        raise ValidationError("eval needs --instance (or --tutte --graph)")
    instance = read_instance(args)
    method = args.method
    if method == "auto":
        f = uniform_six_vertex(instance)
        if f is not None:
            verdict = classify(f)
            print(f"verdict={verdict.summary()}")
        method = _auto_method(f)
    elif method == "loopspace":
        f = uniform_six_vertex(instance)
        if f is not None and (f.c or f.z):
            verdict = classify(f)
            raise ValidationError(f"loopspace needs c = z = 0 (got c={f.c}, z={f.z}); "
                                  f"classifier: {verdict.summary()}, "
                                  f"witnesses {','.join(verdict.ordered_witnesses()) or '-'}")
    value = evaluate(instance, method, args.jobs)
    lines = [f"method={method}", f"value={value}"]
    if args.verify:
        if instance.num_edges > config.oracle_cap():
            lines.append("verified=skipped")
        else:
            reference = holant_brute(instance, jobs=args.jobs)
            lines.append(f"brute={reference}")
            lines.append(f"verified={'yes' if reference == value else 'no'}")
            if reference != value:
                emit(lines)
                raise InvariantViolation(f"{method} gave {value}, brute force gave {reference}")
    emit(lines)
    return f"{method}={value}"


GENERATORS = {
    "cycle": lambda args: generators.cycle_medial(args.n),
    "grid": lambda args: generators.grid_patch(args.n, args.m),
    "random": lambda args: generators.medial_of_random_plane_graph(args.n, args.seed),
    "multigraph": lambda args: medial(generators.random_plane_multigraph(args.n, args.seed)),
}


def cmd_gen(args):
    rotation = GENERATORS[args.kind](args)
    instance = uniform_instance(rotation, six_vertex(args.sig)).validate()
    save_instance(instance, args.out)
    emit([f"out={args.out}", f"vertices={instance.num_vertices}", f"edges={instance.num_edges}"])
    return f"{args.kind}:{instance.num_edges}"


def cmd_medial(args):
    graph = graph_spec(args.graph)
    rotation = medial(graph)
    lines = [f"graph_vertices={graph.num_vertices}", f"graph_edges={graph.num_edges}",
             f"medial_vertices={rotation.num_vertices}", f"medial_edges={rotation.num_edges}"]
    if args.out:
        save_instance(uniform_instance(rotation, six_vertex(args.sig)), args.out)
        lines.append(f"out={args.out}")
    emit(lines)
    return f"medial:{rotation.num_vertices}"


def binary_literal(text):
    g = parse_signature(text)
    if g.arity != 2:
        raise ParseError(f"plcsp constraint needs a binary table g00,g01,g10,g11, got {text!r}")
    return g


def _constraint(text, resolve):
    try:
        scope_text, sig_text = text.split(":", 1)
        scope = tuple(int(u) for u in scope_text.split(","))
    except ValueError as e:
        raise ParseError(f"constraint {text!r} must look like 'u,w:table'") from e
    return scope, resolve(sig_text.strip())


def cmd_compile(args):
    if args.source == "plcsp":
        constraints = [_constraint(c, binary_literal)
                       for c in args.constraint]
        instance = compilers.compile_plcsp(args.vars, constraints)
    else:
        f = six_vertex(args.sig) if args.sig else None
        if f is None:
            raise ValidationError("compile --from csp needs --sig")
        tables = {"g1": compilers.g1_of(f), "g2": compilers.g2_of(f)}

        def resolve(name):
            if name not in tables:
                raise ParseError(f"csp constraint table must be g1 or g2, got {name!r}")
            return tables[name]
        constraints = [_constraint(c, resolve) for c in args.constraint]
        instance = compilers.compile_csp_inner(args.vars, constraints, f, padding=args.padding)
    source = csp_brute(args.vars, constraints)
    lines = [f"vertices={instance.num_vertices}", f"edges={instance.num_edges}", f"source={source}"]
    if args.out:
        save_instance(instance, args.out)
        lines.append(f"out={args.out}")
    if instance.num_edges <= config.oracle_cap():
        compiled = holant_brute(instance, jobs=args.jobs)
        lines += [f"compiled={compiled}", f"match={'yes' if compiled == source else 'no'}"]
        if compiled != source:
            emit(lines)
            raise InvariantViolation("compiled instance value differs from the source #CSP")
    emit(lines)
    return f"{args.source}:{source}"


def cmd_harness(args):
    if args.suite == "square":
        lines = []
        for b in args.b:
            sig, outer, inner = harness.run_square(Scalar.parse(b), signed=args.signed)
            f = sig.entries
            ok = f[0b0011] == outer and f[0b0110] == inner and f[0b1001] == inner
            ok = ok and f[0b1100] == (-outer if args.signed else outer)
            lines.append(f"b={b} outer={f[0b0011]} inner={f[0b0110]} x_entry={f[0b1100]} "
                         f"match={'yes' if ok else 'no'}")
        emit(lines)
        return f"square:{len(args.b)}"
    if args.suite == "lattice":
        recovered, direct, spec = harness.run_lattice(
            Scalar.parse(args.alpha), Scalar.parse(args.beta), args.m,
            Scalar.parse(args.phi) if args.phi else None, Scalar.parse(args.psi) if args.psi else None,
            seed=args.seed)
        emit([f"basis={spec.basis}", f"recovered={recovered}", f"direct={direct}",
              f"match={'yes' if recovered == direct else 'no'}"])
        if recovered != direct:
            raise InvariantViolation("lattice recovery differs from the direct sum")
        return f"lattice:{recovered}"

    f = six_vertex(args.sig)
    if args.suite == "chi":
        run = harness.run_chi(f, args.m, args.which, jobs=args.jobs)
    elif args.suite == "binary":
        g, target = harness.default_binary(Scalar.parse(args.t), Scalar.parse(args.target))
        run = harness.run_binary(f, g, target, args.m, jobs=args.jobs)
    else:
        run = harness.run_jordan(f, args.m, jobs=args.jobs)
    emit(run.as_lines())
    if not run.matches:
        raise InvariantViolation(f"{args.suite} recovery {run.recovered} differs from direct {run.direct}")
    return f"{args.suite}:{run.recovered}"


def cmd_audit_loops(args):
    instance = read_instance(args)
    decomposition = loopspace.decompose(instance, leader=args.leader)
    report = loopspace.entry_exit_audit(decomposition)
    lines = report.as_lines()
    csp = loopspace.induced_csp(decomposition)
    for scope, table in csp.constraints():
        lines.append(f"table={','.join(map(str, scope))} values={table.literal()}")
    value, solver = loopspace.solve_csp(csp)
    lines += [f"solver={solver}", f"value={value}"]
    emit(lines)
    return f"circuits={report.num_circuits}"


def cmd_mobius(args):
    if args.from_signature:
        phi = from_signature(six_vertex(args.from_signature), args.which)
    elif args.coeffs:
        parts = args.coeffs.split(",")
        if len(parts) != 4:
            raise ParseError("--coeffs needs four comma separated scalars a,b,c,d")
        phi = MobiusTransform(*(Scalar.parse(p) for p in parts))
    else:
        raise ValidationError("mobius needs --from-signature or --coeffs")
    form = unit_circle_form(phi)
    lines = [f"map={phi}", f"det={phi.det}", f"circle_form={form if form else 'none'}",
             f"order={order(phi)}", f"fixed_points={fixed_points_count(phi)}"]
    if args.count:
        orbit = iterate_distinct(phi, Scalar.parse(args.t0), args.count)
        lines.append(f"distinct_iterates={orbit.distinct}")
        lines.append(f"period={orbit.period if orbit.period else '-'}")
        if orbit.pole_at is not None:
            lines.append(f"pole_at={orbit.pole_at}")
    emit(lines)
    return f"order={order(phi)}"


def _grid(text):
    try:
        lo, hi = (int(p) for p in text.split(":"))
    except ValueError as e:
        raise ParseError(f"range {text!r} must look like LO:HI") from e
    return range(lo, hi + 1)


def sweep_frame(template, p_range, q_range):
    """Classify every (p, q) of the grid; template entries may be p, q or scalar literals."""
    slots = template.split(",")
    if len(slots) != 6:
        raise ParseError("sweep template needs six comma separated entries")
    rows = []
    for p in p_range:
        for q in q_range:
            weights = [Scalar(p) if s.strip() == "p" else Scalar(q) if s.strip() == "q" else Scalar.parse(s)
                       for s in slots]
            verdict = classify(SixVertexSignature(*weights))
            rows.append({"p": p, "q": q, "planar_class": verdict.planar_class,
                         "general_class": verdict.general_class, "case": verdict.case_tag,
                         "witnesses": ";".join(verdict.ordered_witnesses())})
    return pd.DataFrame(rows, columns=["p", "q", "planar_class", "general_class", "case", "witnesses"])


def cmd_sweep(args):
    frame = sweep_frame(args.template, _grid(args.p), _grid(args.q))
    if args.out:
        frame.to_csv(args.out, index=False)
        print(f"out={args.out}")
    else:
        print(frame.to_csv(index=False), end="")
    counts = frame["planar_class"].value_counts()
    return ";".join(f"{k}={v}" for k, v in sorted(counts.items()))


def cmd_history(args):
    conn = create_connection()
    if conn is None:
        raise ValidationError("cannot open the history database")
    try:
        frame = history_frame(conn, args.filter, args.search, args.limit)
    finally:
        conn.close()
    print(frame.to_string(index=False) if not frame.empty else "no runs recorded")
    return None


COMMANDS = {
    "classify": cmd_classify, "eval": cmd_eval, "gen": cmd_gen, "medial": cmd_medial,
    "compile": cmd_compile, "harness": cmd_harness, "audit-loops": cmd_audit_loops,
    "mobius": cmd_mobius, "sweep": cmd_sweep, "history": cmd_history,
}


def build_parser():
    parser = CliParser(prog="sixvertex", description="Six-vertex model trichotomy toolkit")
    parser.add_argument("--verbose", "-v", action="count", default=0)
    parser.add_argument("--no-record", action="store_true", help="do not log this run to the history database")
    parser.add_argument("--jobs", type=int, default=1)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    p = sub.add_parser("classify")
    p.add_argument("--sig", required=True, help="six scalars a,b,c,x,y,z")

    p = sub.add_parser("eval")
    p.add_argument("--instance")
    p.add_argument("--sig")
    p.add_argument("--method", choices=["auto", "brute", "loopspace", "fkt", "fkt-hat"], default="auto")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--tutte", action="store_true")
    p.add_argument("--graph", help="cycle:N | random:N:SEED | multigraph:E:SEED")

    p = sub.add_parser("gen")
    p.add_argument("--kind", choices=sorted(GENERATORS), required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sig", default="1,1,1,1,1,1")
    p.add_argument("--out", required=True)

    p = sub.add_parser("medial")
    p.add_argument("--graph", required=True)
    p.add_argument("--sig", default="1,1,2,1,1,2")
    p.add_argument("--out")

    p = sub.add_parser("compile")
    p.add_argument("--from", dest="source", choices=["plcsp", "csp"], required=True)
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--constraint", action="append", default=[],
                   help="'u,w:g00,g01,g10,g11' for plcsp, 'u,w:g1' or 'u,w:g2' for csp")
    p.add_argument("--sig")
    p.add_argument("--padding", choices=sorted(compilers.PADDINGS), default="chi1")
    p.add_argument("--out")

    p = sub.add_parser("harness")
    p.add_argument("suite", choices=["chi", "binary", "jordan", "lattice", "square"])
    p.add_argument("--sig", default="1,2,0,1,2,0")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--which", choices=["chi1", "chi2"], default="chi1")
    p.add_argument("--t", default="2")
    p.add_argument("--target", default="5")
    p.add_argument("--alpha", default="7")
    p.add_argument("--beta", default="-1")
    p.add_argument("--phi")
    p.add_argument("--psi")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--b", action="append", default=None)
    p.add_argument("--signed", action="store_true")

    p = sub.add_parser("audit-loops")
    p.add_argument("--instance", required=True)
    p.add_argument("--sig")
    p.add_argument("--leader", choices=["lowest", "highest"], default="lowest")

    p = sub.add_parser("mobius")
    p.add_argument("--from-signature")
    p.add_argument("--which", choices=["inner", "cross"], default="inner")
    p.add_argument("--coeffs")
    p.add_argument("--t0", default="i")
    p.add_argument("--count", type=int, default=0)

    p = sub.add_parser("sweep")
    p.add_argument("--template", default="1,p,q,1,p,q")
    p.add_argument("--p", default="0:3")
    p.add_argument("--q", default="0:3")
    p.add_argument("--out")

    p = sub.add_parser("history")
    p.add_argument("--filter")
    p.add_argument("--search")
    p.add_argument("--limit", type=int)
    return parser


def record(args, argv, result):
    if args.no_record or args.command == "history":
        return
    conn = create_connection()
    if conn is None:
        return
    try:
        add_run_record(conn, datetime.now().isoformat(timespec="seconds"), args.command,
                       result or "", " ".join(argv))
    except Exception as e:
        logger.warning("could not record run: %s", e)
    finally:
        conn.close()


def run(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else config.LOG_LEVEL
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    if args.command == "harness" and args.suite == "square" and not args.b:
        args.b = ["2"]
    try:
        if not args.no_record:
            initialize_database()
        result = COMMANDS[args.command](args)
    except InvariantViolation as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except SixVertexError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    record(args, argv, result)
    return EXIT_OK


if __name__ == "__main__":
    # Pasang Airbag
    sys.excepthook = exception_hook
    sys.exit(run())
