"""Command-line surface: build/table/verify/series with a JSONL result cache.

All outputs are byte-deterministic for a fixed configuration: rows are
assembled in ascending n regardless of thread count, floats are printed with
repr, exact rationals as "p/q", and booleans as lowercase true/false.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .arithmetic import FactorSieve, mertens_table, pi_k_tables, primorial
from .cohomology import (
    DEFAULT_FIELD_PRIME,
    betti_numbers,
    euler_characteristic,
    hodge_nullity,
    lefschetz_number,
    whitney_complex,
    witten_nullity,
    wu_characteristic,
)
from .errors import RankDiscrepancyError
from .graphs import (
    Graph,
    GraphKind,
    build_graph,
    complete_graph,
    components,
    cycle_graph,
    graph_product,
    induced_subgraph,
    kummer_involution,
    verify_component_diameter_bound,
)
from .morse import (
    barycentric_morse_complex,
    betti_timeline,
    chi_timeline,
    classify_vertex,
    critical_counts,
    morse_betti,
    morse_inequality_check,
)
from .topology import inductive_dimension, sphere_dimension

BETTI_COLUMNS = 7  # b0..b6 and c0..c6 in report CSVs

ALL_CHECKS = (
    "mertens",
    "hopf",
    "morse-weak",
    "morse-strong",
    "diameter",
    "formulas",
    "morse-equiv",
    "kummer",
    "kunneth",
    "witten",
)


@dataclass
class RunConfig:
    command: str
    n_max: int = 250
    kind: str = "prime"
    field_prime: int = DEFAULT_FIELD_PRIME
    sieve_limit: int | None = None
    threads: int = 1
    cache_path: str | None = None
    output_path: str | None = None
    format: str = "csv"
    checks: tuple[str, ...] = ALL_CHECKS
    what: str = "dimension"
    d: int = 4


@dataclass
class CacheRecord:
    kind: str
    n: int
    fvector: list[int]
    betti: list[int]
    chi: int
    mertens: int
    critical_counts: list[int]
    tool_version: str
    field_prime: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": self.kind,
                "n": self.n,
                "fvector": self.fvector,
                "betti": self.betti,
                "chi": self.chi,
                "mertens": self.mertens,
                "critical_counts": self.critical_counts,
                "tool_version": self.tool_version,
                "field_prime": self.field_prime,
            },
            separators=(",", ":"),
        )


def _load_cache(path: str, kind: str, field_prime: int) -> dict[int, CacheRecord]:
    records: dict[int, CacheRecord] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except FileNotFoundError:
        return records
    good = 0
    for line in lines:
        if not line.strip():
            good += 1
            continue
        try:
            raw = json.loads(line)
            rec = CacheRecord(**raw)
        except (json.JSONDecodeError, TypeError):
            print(f"warning: truncating corrupt cache tail at line {good + 1}", file=sys.stderr)
            with open(path, "w", encoding="utf-8") as fh:
                fh.write("".join(l + "\n" for l in lines[:good]))
            break
        good += 1
        if rec.tool_version == __version__ and rec.field_prime == field_prime and rec.kind == kind:
            records[rec.n] = rec
    return records


def _append_cache(path: str, records: list[CacheRecord]) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.to_json() + "\n")


def _write_out(config: RunConfig, text: str) -> None:
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _bool(x) -> str:
    return "true" if x else "false"


# --- build -------------------------------------------------------------------


def cmd_build(config: RunConfig) -> int:
    sieve = FactorSieve(config.sieve_limit or max(config.n_max, 2))
    G = build_graph(GraphKind(config.kind, config.n_max), sieve)
    if config.format == "json":
        text = G.to_json() + "\n"
    elif config.format == "dot":
        text = G.to_dot()
    else:
        lines = ["a,b"] + [f"{a},{b}" for a, b in G.edges()]
        text = "\n".join(lines) + "\n"
    _write_out(config, text)
    return 0


# --- table -------------------------------------------------------------------


def _table_row(rec: CacheRecord, tables) -> str:
    n = rec.n
    b = list(rec.betti) + [0] * (BETTI_COLUMNS - len(rec.betti))
    c = list(rec.critical_counts) + [0] * (BETTI_COLUMNS - len(rec.critical_counts))
    weak, strong, _ = morse_inequality_check(rec.betti, rec.critical_counts)
    half = n // 2
    npi = int(tables[(1, False)][n])
    npih = int(tables[(1, False)][half])
    h1 = n < 4 or rec.betti[0] == 1 + npi - npih
    h3 = all(
        (rec.betti[k] if k < len(rec.betti) else 0)
        == int(tables[(k + 1, True)][n]) - int(tables[(k + 1, True)][half])
        for k in (1, 2, 3)
    )
    cells = [str(n), str(rec.mertens), str(rec.chi)]
    cells += [str(x) for x in b[:BETTI_COLUMNS]]
    cells += [str(x) for x in c[:BETTI_COLUMNS]]
    cells += [_bool(weak), _bool(strong), _bool(h1), _bool(h3)]
    return ",".join(cells)


def cmd_table(config: RunConfig) -> int:
    n_max = config.n_max
    sieve = FactorSieve(config.sieve_limit or max(n_max, 2))
    if n_max > sieve.limit:
        print(f"error: n_max {n_max} exceeds sieve limit {sieve.limit}", file=sys.stderr)
        return 2
    G = build_graph(GraphKind(config.kind, n_max), sieve)
    events = [classify_vertex(G, lambda v: v, x, sieve=sieve) for x in G.labels]
    mert = mertens_table(sieve, n_max)
    tables = pi_k_tables(sieve, n_max, 4)
    cached = _load_cache(config.cache_path, config.kind, config.field_prime) if config.cache_path else {}

    def compute(n: int) -> CacheRecord:
        sub = [v for v in G.labels if v <= n]
        K = whitney_complex(induced_subgraph(G, sub))
        bv = betti_numbers(K, field_prime=config.field_prime)
        return CacheRecord(
            kind=config.kind,
            n=n,
            fvector=list(K.f_vector),
            betti=list(bv.b),
            chi=euler_characteristic(K),
            mertens=int(mert[n]),
            critical_counts=critical_counts(events, n),
            tool_version=__version__,
            field_prime=config.field_prime,
        )

    todo = [n for n in range(2, n_max + 1) if n not in cached]
    fresh: dict[int, CacheRecord] = {}
    try:
        if config.threads > 1 and todo:
            with ThreadPoolExecutor(max_workers=config.threads) as pool:
                for rec in pool.map(compute, todo):
                    fresh[rec.n] = rec
        else:
            for n in todo:
                fresh[n] = compute(n)
    except RankDiscrepancyError as exc:
        done = set(cached) | set(fresh)
        bad = min(n for n in range(2, n_max + 1) if n not in done)
        print(f"error: rank discrepancy near n={bad}: {exc}", file=sys.stderr)
        return 1
    if config.cache_path and fresh:
        _append_cache(config.cache_path, [fresh[n] for n in sorted(fresh)])
    header = (
        ["n", "mertens", "chi"]
        + [f"b{k}" for k in range(BETTI_COLUMNS)]
        + [f"c{k}" for k in range(BETTI_COLUMNS)]
        + ["weak", "strong", "h1", "h3"]
    )
    lines = [",".join(header)]
    for n in range(2, n_max + 1):
        rec = cached.get(n) or fresh[n]
        lines.append(_table_row(rec, tables))
    _write_out(config, "\n".join(lines) + "\n")
    return 0


# --- verify ------------------------------------------------------------------


def _corpus_small_graphs(count: int = 60, seed: int = 5) -> list[Graph]:
    """Seeded random connected graphs on at most 7 vertices."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 200:
        attempts += 1
        k = rng.randint(2, 7)
        vs = list(range(1, k + 1))
        edges = [(a, b) for a in vs for b in vs if a < b and rng.random() < 0.55]
        G = Graph(vs, edges)
        if len(components(G)) == 1:
            out.append(G)
    return out


def check_mertens(config: RunConfig, sieve: FactorSieve, G: Graph) -> tuple[bool, str]:
    chi = chi_timeline(G, config.n_max)
    mert = mertens_table(sieve, config.n_max)
    for n in range(2, config.n_max + 1):
        if chi[n] != 1 - mert[n]:
            return False, f"first counterexample n={n}"
    return True, f"chi(G(n)) = 1 - M(n) for 2 <= n <= {config.n_max}"


def check_hopf(config: RunConfig, sieve: FactorSieve, G: Graph) -> tuple[bool, str]:
    chi = chi_timeline(G, config.n_max)
    events = [classify_vertex(G, lambda v: v, x, sieve=sieve) for x in G.labels]
    total = 0
    by_n = {ev.n: ev for ev in events}
    for n in range(2, config.n_max + 1):
        ev = by_n.get(n)
        if ev is not None:
            if ev.kind == "critical" and ev.ph_index != -ev.mu:
                return False, f"first counterexample n={n} (index != -mu)"
            total += ev.ph_index
        if total != chi[n]:
            return False, f"first counterexample n={n} (sum != chi)"
    return True, f"indices sum to chi and equal -mu up to n={config.n_max}"


def _morse_sweep(config: RunConfig, sieve: FactorSieve, G: Graph, strong: bool) -> tuple[bool, str]:
    timeline = betti_timeline(G, field_prime=config.field_prime)
    events = [classify_vertex(G, lambda v: v, x, sieve=sieve) for x in G.labels]
    for n in range(2, config.n_max + 1):
        b = [int(timeline[k][n]) for k in sorted(timeline)]
        c = critical_counts(events, n)
        weak_ok, strong_ok, _ = morse_inequality_check(b, c)
        ok = strong_ok if strong else weak_ok
        if not ok:
            return False, f"first counterexample n={n}"
    return True, f"inequalities hold for 2 <= n <= {config.n_max}"


def check_diameter(config: RunConfig, sieve: FactorSieve, G: Graph) -> tuple[bool, str]:
    bad = verify_component_diameter_bound(G, config.n_max, bound=5, anchor=2)
    if bad is not None:
        return False, f"first counterexample n={bad}"
    return True, f"component diameter <= 5 for 4 <= n <= {config.n_max}"


def check_formulas(config: RunConfig, sieve: FactorSieve, G: Graph) -> tuple[bool, str]:
    timeline = betti_timeline(G, field_prime=config.field_prime)
    tables = pi_k_tables(sieve, config.n_max, 4)
    for n in range(4, config.n_max + 1):
        b0 = int(timeline[0][n])
        if b0 != 1 + int(tables[(1, False)][n]) - int(tables[(1, False)][n // 2]):
            return False, f"H1 fails first at n={n}"
    for k in (1, 2, 3):
        if k not in timeline:
            continue
        for n in range(4, config.n_max + 1):
            want = int(tables[(k + 1, True)][n]) - int(tables[(k + 1, True)][n // 2])
            if int(timeline[k][n]) != want:
                return False, f"H3(k={k}) fails first at n={n}"
    return True, f"b0 and odd-tuple formulas hold up to n={config.n_max}"


def check_morse_equiv(config: RunConfig, sieve: FactorSieve, G: Graph) -> tuple[bool, str]:
    for H in _corpus_small_graphs():
        got = morse_betti(barycentric_morse_complex(H), field_prime=config.field_prime)
        want = tuple(betti_numbers(whitney_complex(H), field_prime=config.field_prime).b)
        if got != want:
            return False, f"corpus graph with {H.n_vertices} vertices disagrees"
    for n in range(2, min(config.n_max, 120) + 1):
        sub = induced_subgraph(G, [v for v in G.labels if v <= n])
        got = morse_betti(barycentric_morse_complex(sub), field_prime=config.field_prime)
        want = tuple(betti_numbers(whitney_complex(sub), field_prime=config.field_prime).b)
        if got != want:
            return False, f"Prime({n}) disagrees"
    return True, "Morse cohomology equals simplicial cohomology on the corpus"


def check_kummer(config: RunConfig, sieve: FactorSieve, G: Graph) -> tuple[bool, str]:
    m = primorial(config.d)
    if m > sieve.limit:
        sieve = FactorSieve(m)
    D = build_graph(GraphKind.divisor(m), sieve)
    verdict = sphere_dimension(D)
    want_dim = config.d - 2
    if not (verdict.is_sphere and verdict.dim == want_dim):
        return False, f"Divisor({m}) not recognized as a {want_dim}-sphere"
    K = whitney_complex(D)
    b = betti_numbers(K, field_prime=config.field_prime).b
    expected = tuple([1] + [0] * (want_dim - 1) + [1]) if want_dim >= 1 else (2,)
    if tuple(b) != expected:
        return False, f"Divisor({m}) Betti {b} != {expected}"
    if list(b) != list(reversed(b)):
        return False, f"duality fails for Divisor({m})"
    perm = kummer_involution(m, sieve)
    st, br = lefschetz_number(K, perm)
    if (st, br) != (0, 0):
        return False, f"Lefschetz numbers {(st, br)} != (0, 0)"
    return True, f"Divisor({m}): sphere dim {want_dim}, betti {tuple(b)}, duality ok, involution ok, lefschetz (0, 0)"


def check_kunneth(config: RunConfig, sieve: FactorSieve, G: Graph) -> tuple[bool, str]:
    corpus = {
        "K1": complete_graph(1),
        "K2": complete_graph(2),
        "K3": complete_graph(3),
        "C4": cycle_graph(4),
        "C5": cycle_graph(5),
    }
    for name_g, A in corpus.items():
        for name_h, B in corpus.items():
            P = graph_product(A, B)
            KA, KB, KP = whitney_complex(A), whitney_complex(B), whitney_complex(P)
            if euler_characteristic(KP) != euler_characteristic(KA) * euler_characteristic(KB):
                return False, f"chi fails on {name_g} x {name_h}"
            ba = betti_numbers(KA, field_prime=config.field_prime).b
            bb = betti_numbers(KB, field_prime=config.field_prime).b
            bp = betti_numbers(KP, field_prime=config.field_prime).b
            conv = [0] * (len(ba) + len(bb) - 1)
            for i, x in enumerate(ba):
                for j, y in enumerate(bb):
                    conv[i + j] += x * y
            got = list(bp) + [0] * (len(conv) - len(bp))
            if got[: len(conv)] != conv or any(got[len(conv) :]):
                return False, f"Kunneth fails on {name_g} x {name_h}"
            if inductive_dimension(P) < inductive_dimension(A) + inductive_dimension(B):
                return False, f"dimension superadditivity fails on {name_g} x {name_h}"
    return True, "product laws hold on the pair corpus"


def check_witten(config: RunConfig, sieve: FactorSieve, G: Graph) -> tuple[bool, str]:
    for n in range(2, min(config.n_max, 60) + 1):
        sub = induced_subgraph(G, [v for v in G.labels if v <= n])
        K = whitney_complex(sub)
        if not K.f_vector:
            continue
        base = [hodge_nullity(K, k) for k in range(K.dim + 1)]
        f = {v: v / n for v in sub.labels}
        for s in (0.0, 0.5, 1.0):
            if witten_nullity(K, f, s) != base:
                return False, f"kernel moved at n={n}, s={s}"
    return True, "deformed kernels independent of s on Prime(n <= 60)"


CHECK_FUNCS = {
    "mertens": check_mertens,
    "hopf": check_hopf,
    "morse-weak": lambda cfg, sieve, G: _morse_sweep(cfg, sieve, G, strong=False),
    "morse-strong": lambda cfg, sieve, G: _morse_sweep(cfg, sieve, G, strong=True),
    "diameter": check_diameter,
    "formulas": check_formulas,
    "morse-equiv": check_morse_equiv,
    "kummer": check_kummer,
    "kunneth": check_kunneth,
    "witten": check_witten,
}


def cmd_verify(config: RunConfig) -> int:
    sieve = FactorSieve(config.sieve_limit or max(config.n_max, primorial(config.d), 2))
    G = build_graph(GraphKind(config.kind, config.n_max), sieve)
    all_ok = True
    for name in config.checks:
        ok, detail = CHECK_FUNCS[name](config, sieve, G)
        all_ok &= ok
        print(f"{name}: {'pass' if ok else 'FAIL'} - {detail}")
    return 0 if all_ok else 1


# --- series ------------------------------------------------------------------


def cmd_series(config: RunConfig) -> int:
    sieve = FactorSieve(config.sieve_limit or max(config.n_max, 2))
    G = build_graph(GraphKind(config.kind, config.n_max), sieve)
    lines = []
    if config.what == "dimension":
        lines.append("n,dim_exact,dim_float")
        xs, ys = [], []
        for n in range(6, config.n_max + 1):
            sub = [v for v in G.labels if v <= n]
            d = inductive_dimension(G, within=sub)
            lines.append(f"{n},{d.numerator}/{d.denominator},{float(d)!r}")
            xs.append(n)
            ys.append(float(d))
        A = np.column_stack([np.ones(len(xs)), np.array(xs, dtype=float), np.log(np.array(xs, dtype=float))])
        coef, *_ = np.linalg.lstsq(A, np.array(ys), rcond=None)
        a, b, c = (float(v) for v in coef)
        print(f"# fit dim(n) ~ a + b*n + c*log(n): a={a!r} b={b!r} c={c!r}", file=sys.stderr)
    else:
        lines.append("n,wu,chi_scaled")
        for n in range(2, config.n_max + 1):
            sub = induced_subgraph(G, [v for v in G.labels if v <= n])
            K = whitney_complex(sub)
            wu = wu_characteristic(K)
            lines.append(f"{n},{wu},{100 - 15 * euler_characteristic(K)}")
    _write_out(config, "\n".join(lines) + "\n")
    return 0


# --- argument parsing ---------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="primetop", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--kind", choices=["prime", "integer", "divisor"], default="prime")
        p.add_argument("--field-prime", type=int, default=DEFAULT_FIELD_PRIME)
        p.add_argument("--sieve-limit", type=int, default=None)
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        p.add_argument("--cache", dest="cache_path", default=None)
        p.add_argument("--out", dest="output_path", default=None)

    b = sub.add_parser("build", help="write one graph in json/dot/csv form")
    common(b)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--format", choices=["json", "dot", "csv"], default="json")

    t = sub.add_parser("table", help="per-n invariants and checks as CSV")
    common(t)
    t.add_argument("--n-max", type=int, default=250)

    v = sub.add_parser("verify", help="run verification sweeps")
    common(v)
    v.add_argument("--n-max", type=int, default=250)
    v.add_argument("--checks", default=",".join(ALL_CHECKS))
    v.add_argument("--d", type=int, default=4)

    s = sub.add_parser("series", help="per-n data series as CSV")
    common(s)
    s.add_argument("--n-max", type=int, default=259)
    s.add_argument("--what", choices=["dimension", "wu"], default="dimension")
    return parser


def parse_config(argv=None) -> tuple[argparse.ArgumentParser, RunConfig]:
    parser = _build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(command=args.command)
    config.kind = args.kind
    config.field_prime = args.field_prime
    config.sieve_limit = args.sieve_limit
    config.threads = max(1, args.threads)
    config.cache_path = args.cache_path
    config.output_path = args.output_path
    if args.command == "build":
        if args.n < 2:
            parser.error("--n must be at least 2")
        config.n_max = args.n
        config.format = args.format
    else:
        config.n_max = args.n_max
        if config.n_max < 2:
            parser.error("--n-max must be at least 2")
    if args.command == "verify":
        names = tuple(x for x in args.checks.split(",") if x)
        for name in names:
            if name not in CHECK_FUNCS:
                parser.error(f"unknown check {name!r}")
        config.checks = names
        config.d = args.d
    if args.command == "series":
        config.what = args.what
    return parser, config


def main(argv=None) -> int:
    _, config = parse_config(argv)
    handler = {"build": cmd_build, "table": cmd_table, "verify": cmd_verify, "series": cmd_series}
    try:
        return handler[config.command](config)
    except RankDiscrepancyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
