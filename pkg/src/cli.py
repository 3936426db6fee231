"""
Command line entry point: ``eventgraph <command> ...``.

Results go to stdout (or ``--output``), logs to stderr. Exit status is 0 on
success, 1 when a check that should hold fails, 2 on usage errors and
malformed input.
"""
import argparse
import asyncio
import json
import logging
import re
import sys
import tomllib
from pathlib import Path
from typing import Callable, Sequence

from tqdm import tqdm

from src.conf import messages
from src.conf.config import VERSION, settings
from src.repository.files import (format_ieq, format_labellings, format_poi, graph_from_labels, graph_to_json,
                                  inequality_to_model, read_distributions, read_graph, read_ieq, read_states,
                                  read_weighting, states_to_json)
from src.services.classicality import enumerate_classical_labellings
from src.services.errors import EventGraphError
from src.services.event_graph import (EventGraph, complete_graph, cycle_graph, empty_graph, path_graph, star_extension,
                                      star_graph, wheel_graph)
from src.services.exclusivity import noncontextuality_inequalities, stab_polytope, verify_stab_isomorphism
from src.services.inequalities import FAMILIES, table_k5_representatives
from src.services.polytope import (Polytope, classical_polytope, classify_facets, membership, render_inequality,
                                   verify_facet)
from src.services.prep_nc import (check_cycle_compliance, evaluate_on_confusability, random_distribution_set)
from src.services.quantum import analytic_witnesses, evaluate_states, search_violation, seeded_rng

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

_NAMED_GRAPH = re.compile(r"^([KCPSWE])(\d+)$")
_CONSTRUCTORS = {"K": complete_graph, "C": cycle_graph, "P": path_graph, "S": star_graph, "W": wheel_graph,
                 "E": empty_graph}


class UsageError(Exception):
    pass


def load_graph(spec: str) -> EventGraph:
    """A graph file, or a name such as ``K5``, ``C6``, ``W5``, ``P4``, ``S4`` or ``E3``."""
    named = _NAMED_GRAPH.match(spec)
    if named and not Path(spec).exists():
        return _CONSTRUCTORS[named.group(1)](int(named.group(2)))
    return read_graph(spec)


def _seed(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(messages.NEGATIVE_SEED.format(seed=value))
    return value


def _comments(**extra) -> dict:
    return {"seed": settings.seed, **extra}


def _banner() -> str:
    return f"# eventgraph-polytopes {VERSION}\n# seed={settings.seed}\n"


def _emit(args: argparse.Namespace, text: str, report: dict, headed: bool = False) -> None:
    """
    Writes the text or, with ``--json``, the report. Both carry the version and
    the seed; ``headed`` text already starts with them.
    """
    if args.json:
        out = json.dumps({"version": VERSION, "seed": settings.seed, **report}, indent=2, default=str) + "\n"
    else:
        out = text if headed else _banner() + text
    if getattr(args, "output", None):
        Path(args.output).write_text(out, encoding="utf-8")
        logger.info("wrote %s", args.output)
    else:
        sys.stdout.write(out)


def _ineq_report(ineqs, labels) -> list[dict]:
    return [inequality_to_model(i, labels).model_dump() for i in ineqs]


def _polytope(graph: EventGraph, args: argparse.Namespace) -> Polytope:
    if not args.cache:
        return classical_polytope(graph, progress=settings.allow_large, threads=settings.threads)
    from src.database.db import DBSession, init_db
    from src.repository import polytopes as repos_polytopes

    init_db()
    db = DBSession()
    try:
        polytope = asyncio.run(repos_polytopes.load_polytope(graph, db))
        if polytope is None or polytope.facets is None:
            polytope = classical_polytope(graph, progress=settings.allow_large, threads=settings.threads)
            asyncio.run(repos_polytopes.save_polytope(graph, polytope, db))
        else:
            logger.info("graph %s: facets read from the cache", graph.key())
        return polytope
    finally:
        db.close()


def cmd_vertices(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    if args.bits:
        labellings = sorted(enumerate_classical_labellings(graph, threads=settings.threads),
                            key=lambda lab: (sum(lab.values), lab.values))
        text = format_labellings(labellings)
        _emit(args, text, {"graph": graph.key(), "labellings": [str(lab) for lab in labellings]})
        return EXIT_OK
    polytope = classical_polytope(graph, facets=False, threads=settings.threads)
    text = format_poi(graph.edges, polytope.vertices, _comments(graph=graph.key()))
    _emit(args, text, {"graph": graph.key(), "vertex_count": len(polytope.vertices),
                       "vertices": [[str(x) for x in v] for v in polytope.vertices]}, headed=True)
    return EXIT_OK


def cmd_facets(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    polytope = _polytope(graph, args)
    text = format_ieq(graph.edges, polytope.facets, polytope.equalities, _comments(graph=graph.key()))
    _emit(args, text, {"graph": graph.key(), "vertex_count": len(polytope.vertices),
                       "facet_count": len(polytope.facets), "facets": _ineq_report(polytope.facets, graph.edges)},
          headed=True)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    polytope = _polytope(graph, args)
    classes = classify_facets(graph, polytope.facets)
    lines = [f"# {len(polytope.facets)} facets in {len(classes)} classes"]
    for k, orbit in enumerate(classes, start=1):
        kind = "trivial" if orbit.trivial else "non-trivial"
        lines.append(f"class {k}: size {orbit.size} ({kind}) {render_inequality(orbit.representative, graph.edges)}")
    report = {"graph": graph.key(), "facet_count": len(polytope.facets),
              "classes": [{"size": c.size, "trivial": c.trivial,
                           "representative": inequality_to_model(c.representative, graph.edges).model_dump()}
                          for c in classes]}
    _emit(args, "\n".join(lines) + "\n", report)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    weighting = read_weighting(args.weighting, graph)
    result = membership(_polytope(graph, args), weighting)
    if result.member:
        text = "classical\n"
    else:
        text = f"NOT classical; violated: {render_inequality(result.violated, graph.edges)} (excess {result.excess})\n"
    report = {"member": result.member, "excess": str(result.excess),
              "violated": None if result.member else inequality_to_model(result.violated, graph.edges).model_dump()}
    _emit(args, text, report)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    lines, rows, failed = [], [], False
    for ineq in read_ieq(args.ineq).facets:
        check = verify_facet(graph, ineq)
        failed |= not check.facet
        verdict = "facet" if check.facet else ("valid, face of dimension %d" % check.face_dimension
                                               if check.valid else "NOT valid")
        lines.append(f"{render_inequality(ineq, graph.edges)}: {verdict}")
        rows.append({"inequality": ineq.to_text(), "valid": check.valid, "facet": check.facet,
                     "face_dimension": check.face_dimension})
    _emit(args, "\n".join(lines) + "\n", {"graph": graph.key(), "checks": rows})
    return EXIT_FAILED if failed else EXIT_OK


def cmd_star(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    if not args.derive_nc:
        star = star_extension(graph)
        text = json.dumps({"version": VERSION, "seed": settings.seed, **json.loads(graph_to_json(star.graph))}) + "\n"
        _emit(args, text, {"graph": star.graph.key(), "handle": star.handle}, headed=True)
        return EXIT_OK
    derived = noncontextuality_inequalities(graph)
    stab = stab_polytope(graph)
    isomorphic = verify_stab_isomorphism(graph)
    text = "# noncontextuality inequalities\n"
    text += format_ieq(derived.coord_labels, derived.facets, derived.equalities)
    text += "# STAB facets\n" + format_ieq(stab.coord_labels, stab.facets, stab.equalities)
    text += f"# isomorphism: {str(isomorphic).lower()}\n"
    _emit(args, text, {"graph": graph.key(), "isomorphic": isomorphic,
                       "inequalities": _ineq_report(derived.facets, derived.coord_labels),
                       "stab": _ineq_report(stab.facets, stab.coord_labels)})
    return EXIT_OK if isomorphic else EXIT_FAILED


def cmd_family(args: argparse.Namespace) -> int:
    if args.family not in FAMILIES:
        raise UsageError(f"unknown family {args.family!r}, choose from {', '.join(FAMILIES)}")
    graph, inequalities = FAMILIES[args.family](args.n)
    text = format_ieq(graph.edges, inequalities, comments=_comments(family=args.family, n=args.n))
    _emit(args, text, {"family": args.family, "n": args.n, "graph": graph.key(),
                       "inequalities": _ineq_report(inequalities, graph.edges)}, headed=True)
    return EXIT_OK


def _target(args: argparse.Namespace):
    if args.row:
        table = table_k5_representatives()
        if args.row not in table:
            raise UsageError(f"unknown table row {args.row!r}, choose from {', '.join(table)}")
        graph = complete_graph(5)
        return graph, [table[args.row].inequality]
    if not args.ineq:
        raise UsageError("give --ineq FILE or --row NAME")
    stored = read_ieq(args.ineq)
    graph = load_graph(args.graph) if args.graph else graph_from_labels(stored.coord_labels)
    return graph, list(stored.facets)


def cmd_violate(args: argparse.Namespace) -> int:
    graph, inequalities = _target(args)
    lines, rows = [], []
    for ineq in inequalities:
        result = search_violation(ineq, graph, args.dim, budget=args.budget, restarts=args.restarts,
                                  seed=settings.seed, threads=settings.threads)
        lines.append(f"{render_inequality(ineq, graph.edges)}: value {result.value:.10f} "
                     f"violation {result.violation:.10f}")
        rows.append({"inequality": ineq.to_text(), "value": result.value, "violation": result.violation,
                     "restart": result.restart, "evaluations": result.evaluations,
                     "states": json.loads(states_to_json(result.states))})
        if args.states_out:
            Path(args.states_out).write_text(states_to_json(result.states), encoding="utf-8")
    _emit(args, "\n".join(lines) + "\n", {"dim": args.dim, "results": rows})
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    graph, inequalities = _target(args)
    if args.witness:
        witnesses = analytic_witnesses()
        if args.witness not in witnesses:
            raise UsageError(f"unknown witness {args.witness!r}, choose from {', '.join(witnesses)}")
        states = witnesses[args.witness]
    elif args.states:
        states = read_states(args.states)
    else:
        raise UsageError("give --states FILE or --witness NAME")
    lines, rows = [], []
    for ineq in inequalities:
        result = evaluate_states(ineq, graph, states)
        lines.append(f"value {float(result.value):.10f} violation {float(result.violation):.10f}")
        rows.append({"inequality": ineq.to_text(), "value": float(result.value),
                     "violation": float(result.violation)})
    _emit(args, "\n".join(lines) + "\n", {"results": rows})
    return EXIT_OK


def cmd_prepnc(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    n = graph.n
    if graph != cycle_graph(n):
        raise UsageError("prepnc needs a cycle graph such as C5")
    extra = read_ieq(args.ineq).facets if args.ineq else ()
    if args.distributions:
        trials = [read_distributions(args.distributions)]
    else:
        rng = seeded_rng(settings.seed)
        trials = (random_distribution_set(n, args.ontic_size, rng) for _ in range(args.trials))
    checked, violations, worst = 0, 0, None
    extra_max = [None] * len(extra)
    total = None if args.distributions else args.trials
    for distributions in tqdm(trials, total=total, desc="prepnc", disable=not args.verbose):
        report = check_cycle_compliance(distributions, n)
        checked += 1
        violations += not report.compliant
        top = max(report.values)
        worst = top if worst is None else max(worst, top)
        for k, evaluation in enumerate(evaluate_on_confusability(distributions, graph, extra)):
            extra_max[k] = evaluation.value if extra_max[k] is None else max(extra_max[k], evaluation.value)
    lines = [f"C{n}: {checked} distribution sets, {violations} violations, largest value {worst} (bound {n - 2})"]
    lines += [f"experimental {render_inequality(i, graph.edges)}: largest value {v}" for i, v in zip(extra, extra_max)]
    _emit(args, "\n".join(lines) + "\n", {"n": n, "trials": checked, "violations": violations,
                                          "largest": str(worst), "bound": n - 2,
                                          "experimental": [str(v) for v in extra_max]})
    return EXIT_FAILED if violations else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eventgraph", description="Classical polytopes of event graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    parser.add_argument("--json", action="store_true", help="machine-readable report")
    parser.add_argument("--config", help="key = value settings file")
    parser.add_argument("--threads", type=int, help="worker processes, 0 for all cores")
    parser.add_argument("--seed", type=_seed, help="random seed, a non-negative integer")
    parser.add_argument("--allow-large", action="store_true", help="lift the facet enumeration size guard")
    parser.add_argument("--cache", action="store_true", help="reuse facets stored in the database")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler: Callable[[argparse.Namespace], int], help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-o", "--output", help="write the result to this file")
        p.set_defaults(handler=handler)
        return p

    p = command("vertices", cmd_vertices, "classical labellings (.poi)")
    p.add_argument("graph")
    p.add_argument("--bits", action="store_true", help="one bit string per labelling")
    p = command("facets", cmd_facets, "facets of the classical polytope (.ieq)")
    p.add_argument("graph")
    p = command("classify", cmd_classify, "facets grouped by symmetry")
    p.add_argument("graph")
    p = command("check", cmd_check, "membership of an edge weighting")
    p.add_argument("graph")
    p.add_argument("weighting")
    p = command("verify", cmd_verify, "validity and facet property of inequalities")
    p.add_argument("graph")
    p.add_argument("--ineq", required=True)
    p = command("star", cmd_star, "star extension and noncontextuality inequalities")
    p.add_argument("graph")
    p.add_argument("--derive-nc", action="store_true")
    p = command("family", cmd_family, "closed-form inequality families")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    for name, handler, help_text in (("violate", cmd_violate, "search quantum violations"),
                                     ("eval", cmd_eval, "evaluate inequalities on given states")):
        p = command(name, handler, help_text)
        p.add_argument("--ineq")
        p.add_argument("--row", help="K5 table representative such as k5_c5")
        p.add_argument("--graph")
        if name == "violate":
            p.add_argument("--dim", type=int, required=True)
            p.add_argument("--budget", type=int)
            p.add_argument("--restarts", type=int)
            p.add_argument("--states-out", help="write the best states found to this file")
        else:
            p.add_argument("--states")
            p.add_argument("--witness")
    p = command("prepnc", cmd_prepnc, "preparation noncontextual weightings on a cycle")
    p.add_argument("--graph", required=True, help="cycle such as C5")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--ontic-size", type=int, default=4)
    p.add_argument("--distributions", help="check one distributions file instead of random trials")
    p.add_argument("--ineq", help="also evaluate these inequalities, asserting nothing")
    return parser


def _configure(args: argparse.Namespace) -> None:
    if args.config:
        try:
            values = tomllib.loads(Path(args.config).read_text(encoding="utf-8"))
        except tomllib.TOMLDecodeError as err:
            raise UsageError(f"{args.config}: {err}") from None
        for key, value in values.items():
            if key not in type(settings).model_fields:
                raise UsageError(f"{args.config}: unknown setting {key!r}")
            setattr(settings, key, value)
    if args.threads is not None:
        settings.threads = args.threads
    if args.seed is not None:
        settings.seed = args.seed
    if settings.seed < 0:
        raise UsageError(messages.NEGATIVE_SEED.format(seed=settings.seed))
    if args.allow_large:
        settings.allow_large = True
    logging.basicConfig(level=logging.DEBUG if args.verbose else settings.log_level, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def run(argv: Sequence[str] | None = None) -> int:
    """
    Parses ``argv`` and runs the chosen command.

    :param argv: Arguments without the program name, ``sys.argv[1:]`` by default.
    :type argv: Sequence[str] | None
    :return: Exit status.
    :rtype: int
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    saved = settings.model_dump()
    try:
        _configure(args)
        return args.handler(args)
    except (UsageError, EventGraphError, OSError) as err:
        print(f"eventgraph: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        for key, value in saved.items():
            setattr(settings, key, value)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
