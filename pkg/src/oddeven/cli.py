"""Command-line interface: ``oddeven <command> ...``.

Exit codes: 0 success / certified, 2 not-applicable / unknown, 1 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import alternating, certify, generators
from .geometry import (
    Arrangement,
    ArrangementError,
    classify_bounded,
    delete,
    enumerate_topes,
    is_centrally_simple,
    is_simple,
    parse_signs,
    rank_of,
    restrict,
)
from .graph import (
    Circuit,
    SearchBudget,
    TopeGraph,
    build_graph,
    circuit_to_json,
    find_hamiltonian,
    graph_to_json,
    matching_to_json,
    max_matching,
    signed_oe,
    to_dot,
    verify_circuit,
)
from .randomgen import random_simple_arrangement

EXIT_OK, EXIT_ERROR, EXIT_NA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 means "not applicable" here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int = 0
    budget: int = 10_000_000
    out: Optional[str] = None
    as_json: bool = False

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        return cls(ns.command, ns.seed, getattr(ns, "budget", 10_000_000), ns.out, ns.json)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load(path: str) -> tuple[Arrangement, dict]:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        arr = Arrangement.loads(text)
    except ArrangementError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    data = json.loads(text)
    meta = data.get("meta", {}) if isinstance(data, dict) else {}
    return arr, meta if isinstance(meta, dict) else {}


def _arrangement_json(arr: Arrangement, meta: Optional[dict] = None) -> dict:
    out = arr.to_json()
    if meta:
        out["meta"] = meta
    return out


# --- gen -----------------------------------------------------------------------


def _need(ns, *names):
    for name in names:
        if getattr(ns, name) is None:
            raise UsageError(f"gen {ns.family} needs --{name.replace('_', '-')}")


def _gen(ns, cfg: RunConfig):
    fam = ns.family
    report = None
    meta = {"family": fam}
    if fam == "cube":
        _need(ns, "n")
        arr = generators.cube_arrangement(ns.n)
        meta["n"] = ns.n
    elif fam == "coxeter-a":
        _need(ns, "n")
        arr = generators.coxeter_A(ns.n)
        meta["n"] = ns.n
    elif fam == "alternating":
        _need(ns, "n", "d")
        alphas = ns.alphas.split(",") if ns.alphas else alternating.default_alphas(ns.n)
        arr = alternating.realize(ns.n, ns.d, alphas)
        meta.update(n=ns.n, d=ns.d, alphas=[str(a) for a in alphas])
    elif fam == "random-simple":
        _need(ns, "n", "d")
        arr = random_simple_arrangement(ns.n, ns.d, cfg.seed)
        meta.update(n=ns.n, d=ns.d, seed=cfg.seed)
    elif fam == "product":
        if ns.factor:
            factors = [_load(p)[0] for p in ns.factor]
        else:
            lines = [int(v) for v in (ns.lines or "3,3").split(",")]
            factors = [random_simple_arrangement(k, 2, cfg.seed + j) for j, k in enumerate(lines)]
        report = generators.product_construction(factors)
        arr = report.arrangement
    elif fam == "cylinder-lift":
        _need(ns, "input")
        arr = generators.cylinder_lift(_load(ns.input)[0], ns.extra)
        meta["extra"] = ns.extra
    elif fam == "planar-seed":
        _need(ns, "n")
        seed = generators.planar_seed_search(ns.n, ns.budget, cfg.seed, ns.restarts)
        arr = seed.arrangement
        report = generators.ConstructionReport(
            arr, "planar-seed", {"n_lines": ns.n, "budget": ns.budget, "restarts": ns.restarts, "seed": cfg.seed},
            seed.signed_oe, [], {"evaluations": seed.evaluations},
        )
    elif fam == "theorem8":
        if ns.input:
            source = _load(ns.input)[0]
        else:
            _need(ns, "n")
            source = generators.planar_seed_search(ns.n, ns.budget, cfg.seed, ns.restarts)
        report = generators.theorem8_assembly(source, cfg.seed)
        arr = report.arrangement
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown family {fam}")

    if report is not None:
        meta["report"] = report.to_json()
    doc = _arrangement_json(arr, meta)
    summary = {"family": fam, "hyperplanes": arr.n, "dim": arr.dim, "central": arr.central}
    if ns.enumerate:
        topes = enumerate_topes(arr)
        summary.update(topes=len(topes), signed_oe=signed_oe(topes))
        if report is not None and report.predicted_signed_oe is not None:
            summary["predicted_signed_oe"] = report.predicted_signed_oe
    if cfg.out:
        _emit(cfg, _dump(doc))
        if cfg.as_json:
            sys.stdout.write(_dump(summary))
        else:
            sys.stdout.write(" ".join(f"{k}={v}" for k, v in summary.items()) + "\n")
    else:
        sys.stdout.write(_dump(doc))
    if report is not None and ns.enumerate and report.predicted_signed_oe is not None:
        if summary["signed_oe"] != report.predicted_signed_oe:
            raise UsageError("enumerated invariant disagrees with the construction's prediction")
    return EXIT_OK


# --- analyze ----------------------------------------------------------------------


def analyze(arr: Arrangement, per_hyperplane: bool = True) -> dict:
    g = build_graph(arr)
    b, c = g.color_counts()
    out = {
        "n": arr.n,
        "dim": arr.dim,
        "central": arr.central,
        "rank": rank_of(arr),
        "topes": len(g.topes),
        "edges": len(g.edges),
        "burnt_umber": b,
        "chartreuse": c,
        "signed_oe": b - c,
        "oe_invariant": abs(b - c),
        "simple": is_simple(arr),
        "centrally_simple": is_centrally_simple(arr),
    }
    if not arr.central:
        bounded, unbounded = classify_bounded(arr, list(g.topes))
        out["bounded_topes"] = len(bounded)
        out["signed_oe_bounded"] = signed_oe(bounded)
    if per_hyperplane and arr.dim > 0:
        rows = []
        for i in range(arr.n):
            rows.append({
                "hyperplane": i,
                "oe_deletion": abs(signed_oe(enumerate_topes(delete(arr, i)))),
                "restriction_topes": len(enumerate_topes(restrict(arr, i))),
            })
        out["per_hyperplane"] = rows
    return out


def _analyze(ns, cfg: RunConfig):
    arr, _ = _load(ns.file)
    rep = analyze(arr, not ns.no_per_hyperplane)
    if cfg.as_json:
        _emit(cfg, _dump(rep))
        return EXIT_OK
    lines = [
        f"hyperplanes {rep['n']}  dim {rep['dim']}  central {rep['central']}  rank {rep['rank']}",
        f"topes {rep['topes']}  edges {rep['edges']}",
        f"b (burnt umber) {rep['burnt_umber']}  c (chartreuse) {rep['chartreuse']}",
        f"signed invariant {rep['signed_oe']}  odd-even invariant {rep['oe_invariant']}",
        f"simple {rep['simple']}  centrally simple {rep['centrally_simple']}",
    ]
    if "bounded_topes" in rep:
        lines.append(f"bounded topes {rep['bounded_topes']}  signed sum over bounded {rep['signed_oe_bounded']}")
    for row in rep.get("per_hyperplane", []):
        lines.append(
            f"  H{row['hyperplane']}: oe(deletion) {row['oe_deletion']}  "
            f"topes(restriction) {row['restriction_topes']}"
        )
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


# --- hamilton ------------------------------------------------------------------------


def recognize_alternating(arr: Arrangement, meta: dict, topes=None) -> Optional[tuple[int, int]]:
    """(n, d) if the tope set is exactly that of the alternating model."""
    if not arr.central or arr.n == 0:
        return None
    d = meta.get("d", rank_of(arr)) if meta.get("family") == "alternating" else rank_of(arr)
    if not isinstance(d, int) or not 1 <= d <= arr.n:
        return None
    topes = enumerate_topes(arr) if topes is None else topes
    if list(topes) != alternating.enumerate_alt_topes(arr.n, d):
        return None
    return arr.n, d


def _hamilton(ns, cfg: RunConfig):
    arr, meta = _load(ns.file)
    g = build_graph(arr)
    if ns.construct:
        nd = recognize_alternating(arr, meta, g.topes)
        if nd is None:
            raise UsageError("--construct supports alternating arrangements only")
        n, d = nd
        if n % 2 == 1 and d == 3:
            seq = alternating.ham_circuit_n_3(n)
        elif n % 2 == 1 and d == n - 1:
            seq = alternating.ham_circuit_n_nminus1(n)
        else:
            raise UsageError(f"no construction for A({n},{d}); need n odd and d = 3 or d = n - 1")
        circuit = Circuit.from_signs(g, seq)
        check = verify_circuit(g, circuit)
        if not check:
            raise UsageError(f"constructed circuit failed verification: {check.reason}")
        outcome, reason = "found", f"constructed for A({n},{d})"
    else:
        res = find_hamiltonian(g, SearchBudget(cfg.budget))
        circuit, outcome, reason = res.circuit, res.outcome, res.reason
    if outcome != "found":
        msg = f"{outcome} ({reason.replace('!=', '≠')})" if reason else outcome
        if cfg.as_json:
            _emit(cfg, _dump({"outcome": outcome, "reason": reason}))
        else:
            sys.stdout.write(msg + "\n")
        return EXIT_NA
    doc = {"outcome": "found", "reason": reason, **circuit_to_json(g, circuit)}
    if cfg.out or cfg.as_json:
        _emit(cfg, _dump(doc))
    else:
        sys.stdout.write(f"found circuit of length {len(circuit)}\n")
        sys.stdout.write("\n".join(doc["topes"]) + "\n")
    return EXIT_OK


# --- match ---------------------------------------------------------------------------


def _match(ns, cfg: RunConfig):
    arr, _ = _load(ns.file)
    g = build_graph(arr)
    m = max_matching(g)
    doc = matching_to_json(g, m)
    if cfg.out or cfg.as_json:
        _emit(cfg, _dump(doc))
    else:
        sys.stdout.write(f"maximum matching {len(m)} of {len(g.topes)} topes; perfect {doc['perfect']}\n")
    return EXIT_OK


# --- certify ---------------------------------------------------------------------------


_CHECKS = {
    "1": lambda arr, ns, cfg: certify.check_thm1(arr, SearchBudget(cfg.budget), ns.file),
    "3": lambda arr, ns, cfg: certify.check_thm3(arr, ns.file),
    "7": lambda arr, ns, cfg: certify.check_thm7(arr, _hyperplane(ns), ns.file, budget=SearchBudget(cfg.budget)),
    "9": lambda arr, ns, cfg: certify.check_thm9(arr, ns.file),
    "10": lambda arr, ns, cfg: certify.check_thm10_bound(arr, ns.file),
    "11": lambda arr, ns, cfg: certify.check_thm11(arr, _hyperplane(ns), ns.file),
    "sw": lambda arr, ns, cfg: certify.check_simmons_wetzel(arr, ns.file),
}


def _hyperplane(ns) -> int:
    if ns.hyperplane is None:
        raise UsageError("this check needs --hyperplane")
    return ns.hyperplane


def _certify(ns, cfg: RunConfig):
    if ns.harness:
        certs = certify.run_harness(seed=cfg.seed, budget=SearchBudget(min(cfg.budget, 200_000)))
    else:
        if not ns.file:
            raise UsageError("certify needs a file or --harness")
        arr, _ = _load(ns.file)
        if ns.theorem == "all":
            certs = certify.certify_instance(ns.file, arr, SearchBudget(cfg.budget))
        else:
            try:
                certs = [_CHECKS[ns.theorem](arr, ns, cfg)]
            except certify.HypothesisError as exc:
                msg = f"not-applicable: {exc}"
                if cfg.as_json:
                    _emit(cfg, _dump({"kind": ns.theorem, "verdict": "not-applicable", "reason": str(exc)}))
                else:
                    sys.stdout.write(msg + "\n")
                return EXIT_NA
    if cfg.as_json:
        payload = [c.to_json() for c in certs]
        _emit(cfg, _dump(payload[0] if len(payload) == 1 and not ns.harness else payload))
    else:
        _emit(cfg, certify.format_table(certs))
    if any(c.is_bug for c in certs):
        sys.stderr.write("error: a proven statement was refuted; this is an implementation bug\n")
        return EXIT_ERROR
    if len(certs) == 1 and not ns.harness:
        return EXIT_OK if certs[0].certified else EXIT_NA
    return EXIT_OK


# --- export ------------------------------------------------------------------------------


def _export(ns, cfg: RunConfig):
    arr, _ = _load(ns.file)
    g = build_graph(arr)
    circuit = None
    if ns.circuit:
        try:
            with open(ns.circuit) as fh:
                data = json.load(fh)
            circuit = Circuit.from_signs(g, [parse_signs(s) for s in data["topes"]])
        except (OSError, KeyError, ValueError) as exc:
            raise UsageError(f"cannot read circuit {ns.circuit}: {exc}") from exc
        check = verify_circuit(g, circuit)
        if not check:
            raise UsageError(f"circuit does not verify: {check.reason}")
    if ns.format == "dot":
        _emit(cfg, to_dot(g, circuit))
    else:
        doc = graph_to_json(g)
        if circuit is not None:
            doc["circuit"] = circuit_to_json(g, circuit)
        _emit(cfg, _dump(doc))
    return EXIT_OK


# --- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="rng seed (default 0)")
    common.add_argument("-o", "--out", help="output file (default stdout)")

    p = _Parser(prog="oddeven", description="Tope graphs, odd-even invariants and Hamiltonian circuits.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="generate an arrangement")
    g.add_argument(
        "family",
        choices=["cube", "coxeter-a", "alternating", "product", "cylinder-lift",
                 "planar-seed", "theorem8", "random-simple"],
    )
    g.add_argument("--n", type=int, help="size parameter (hyperplanes, lines, or rank)")
    g.add_argument("--d", type=int, help="dimension")
    g.add_argument("--alphas", help="comma-separated increasing rationals (alternating)")
    g.add_argument("--factor", action="append", help="factor arrangement file (product; repeatable)")
    g.add_argument("--lines", help="comma-separated line counts of random planar factors (product)")
    g.add_argument("--input", help="input arrangement file (cylinder-lift, theorem8)")
    g.add_argument("--extra", type=int, default=1, help="extra dimensions (cylinder-lift)")
    g.add_argument("--budget", type=int, default=2000, help="local-search steps per restart (planar-seed, theorem8)")
    g.add_argument("--restarts", type=int, default=3, help="search restarts (planar-seed, theorem8)")
    g.add_argument("--enumerate", action="store_true", help="enumerate topes in the summary")
    g.set_defaults(func=_gen)

    a = sub.add_parser("analyze", parents=[common], help="tope and invariant statistics")
    a.add_argument("file")
    a.add_argument("--no-per-hyperplane", action="store_true", help="skip deletion/restriction stats")
    a.set_defaults(func=_analyze)

    h = sub.add_parser("hamilton", parents=[common], help="Hamiltonian circuit by construction or search")
    h.add_argument("file")
    mode = h.add_mutually_exclusive_group(required=True)
    mode.add_argument("--construct", action="store_true")
    mode.add_argument("--search", action="store_true")
    h.add_argument("--budget", type=int, default=10_000_000, help="search expansions (default 1e7)")
    h.set_defaults(func=_hamilton)

    m = sub.add_parser("match", parents=[common], help="maximum matching of the tope graph")
    m.add_argument("file")
    m.set_defaults(func=_match)

    c = sub.add_parser("certify", parents=[common], help="check the odd-even theorems")
    c.add_argument("file", nargs="?")
    c.add_argument("--theorem", choices=["1", "3", "7", "9", "10", "11", "sw", "all"], default="all")
    c.add_argument("--hyperplane", type=int, help="hyperplane index (theorems 7 and 11)")
    c.add_argument("--harness", action="store_true", help="run every check over the built-in corpus")
    c.add_argument("--budget", type=int, default=10_000_000, help="search expansions (default 1e7)")
    c.set_defaults(func=_certify)

    e = sub.add_parser("export", parents=[common], help="export the tope graph")
    e.add_argument("file")
    e.add_argument("--format", choices=["dot", "json"], default="dot")
    e.add_argument("--dot", dest="format", action="store_const", const="dot", help="same as --format dot")
    e.add_argument("--circuit", help="circuit JSON to highlight")
    e.set_defaults(func=_export)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig.from_args(ns)
    try:
        return ns.func(ns, cfg)
    except (UsageError, ArrangementError, certify.HypothesisError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
