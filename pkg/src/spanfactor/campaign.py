"""Verification campaigns: per-graph theorem checks and their text reports.

A report is plain text, one record per line, ``key=value`` fields separated
by single spaces::

    campaign family=trees seed=0 max_n=8 max_edges=10 max_mult=1 count=0 theorems=sp-delta
    record index=0 graph=2:0-1 theorem=sp-delta status=pass
    record index=5 graph=... theorem=bounds status=fail witness=matching_deficiency:3<4
    summary records=12 pass=11 fail=1 cap=0

``graph`` is the compact ``n:u-v,...`` encoding, ``spec`` names a generator
when the graph came from one, and ``witness`` (failures and caps only) holds
the offending object without spaces.  Records appear in instance order
whatever the number of worker processes, so a report depends only on the
command line.
"""

from __future__ import annotations

from dataclasses import dataclass
from multiprocessing import Pool
from typing import Callable, Iterable, Iterator, NamedTuple

from .bounds import bound_values, factor_from_partition, lovasz_partition, yu_liu_check
from .coloring import chromatic_index, enumerate_max_k_ecs, is_proper, nu_k
from .errors import ResourceCapError
from .families import (
    connected_graphs,
    connected_multigraphs,
    cubic_graphs,
    random_suite,
    regular_with_perfect_matching,
    trees,
)
from .graph import (
    Multigraph,
    Subgraph,
    components,
    decode,
    delete_vertices,
    encode,
    is_connected,
    is_forest,
    is_odd_cycle,
    is_tree,
    max_multiplicity,
    prop21_tree,
    tightness_graph,
)
from .matching import SUBSET_CAP, maximum_matching, tutte_berge_deficiency
from .sp import (
    TheoremViolation,
    exchange_to_spanning_max,
    sp2_bruteforce,
    sp3_bruteforce,
    sp_factor_search,
    sp_formula,
    spanning_kecs_search,
    spanning_max_exists,
)
from .trees import classify_AB, is_sp_delta_tree, layered_star_decomposition, sp_delta_connected, trees_isomorphic

ENUMERATION_CAP = 30
EXCHANGE_MAX_EDGES = 12
LOVASZ_MAX_DEGREE = 6


class Outcome(NamedTuple):
    status: str  # pass | fail | cap
    witness: str = ""


def _fail(witness: str) -> Outcome:
    return Outcome("fail", witness.replace(" ", ""))


PASS = Outcome("pass")


# --- checks ----------------------------------------------------------------
# Each returns an Outcome, or None when the theorem does not apply.


def check_sp_equality(G: Multigraph) -> Outcome:
    """The three definitions of sp and the deficiency formula agree."""
    values = (
        sp_factor_search(G).sp_value,
        sp2_bruteforce(G),
        sp3_bruteforce(G, ENUMERATION_CAP),
        sp_formula(G),
    )
    if len(set(values)) != 1:
        return _fail("sp1,sp2,sp3,formula=" + ",".join(map(str, values)))
    return PASS


def check_exchange(G: Multigraph) -> Outcome | None:
    """Every non-spanning maximum k-ECS is carried to a spanning one."""
    if G.m > EXCHANGE_MAX_EDGES:
        return None
    for k in range(1, G.max_degree + 1):
        A = spanning_kecs_search(G, k)
        if A is None:
            continue
        target = nu_k(G, k)
        for H in enumerate_max_k_ecs(G, k, ENUMERATION_CAP):
            if H.host.is_spanning():
                continue
            start = ",".join(map(str, H.host.sorted_edges()))
            try:
                R = exchange_to_spanning_max(G, k, A, H)
            except TheoremViolation as exc:
                return _fail(f"k={k};H={start};{exc}")
            if not (R.host.is_spanning() and len(R.host) == target and is_proper(R) and R.k == k):
                return _fail(f"k={k};H={start}")
    return PASS


def check_sp_delta(G: Multigraph) -> Outcome | None:
    """sp = Δ exactly for odd cycles and for trees the recognizer accepts."""
    if not is_connected(G):
        return None
    exact = sp_factor_search(G).sp_value == G.max_degree
    shape = sp_delta_connected(G)
    if exact != shape:
        return _fail(f"sp=Δ:{exact};shape:{shape}")
    if exact and not (is_odd_cycle(G) or is_tree(G)):
        return _fail("sp=Δ on a graph that is neither an odd cycle nor a tree")
    if is_tree(G) and G.n >= 2:
        rec = is_sp_delta_tree(G)
        if rec.holds:
            rebuilt, pos = rec.certificate.replay()
            same_edges = sorted(tuple(sorted((pos[u], pos[v]))) for u, v in G.edges) == sorted(
                tuple(sorted(e)) for e in rebuilt.edges
            )
            if not (trees_isomorphic(G, rebuilt) and same_edges):
                return _fail("certificate replay differs")
    return PASS


def _is_star_forest(H: Subgraph) -> bool:
    F, _ = H.to_multigraph()
    if not is_forest(F):
        return False
    for comp in components(F):
        if len(comp) > 2 and sum(1 for v in comp if F.degrees[v] > 1) != 1:
            return False
    return True


def check_star_decomposition(G: Multigraph) -> Outcome | None:
    """Layered star decomposition at every non-maximum-degree vertex."""
    if not is_tree(G) or G.n < 3:
        return None
    delta = G.max_degree
    sp_is_delta = sp_factor_search(G).sp_value == delta
    for v in classify_AB(G).B:
        H = layered_star_decomposition(G, v)
        missed = H.missed()
        if not _is_star_forest(H):
            return _fail(f"v={v};not a star forest")
        if H.max_degree > delta - 1:
            return _fail(f"v={v};centre degree {H.max_degree}")
        if missed not in ([], [v]):
            return _fail(f"v={v};missed={missed}")
        if sp_is_delta and missed != [v]:
            return _fail(f"v={v};covers v although sp=Δ")
    return PASS


def check_bounds(G: Multigraph) -> Outcome:
    """Every upper bound holds, and the tightness families meet theirs."""
    exact = sp_factor_search(G).sp_value
    report = bound_values(G, exact)
    for r in report.records:
        if not r.holds:
            return _fail(f"{r.name}:{r.value}<{exact}")
    nu = len(maximum_matching(G))
    if G.n - 2 * nu <= 1 and exact != G.n - 2 * nu + 1:
        return _fail(f"matching_deficiency not tight:{exact}")
    if G.is_regular() and is_connected(G) and 2 * nu < G.n and exact != 2:
        return _fail(f"regular without perfect matching has sp={exact}")
    if 2 <= G.max_degree and G.n <= SUBSET_CAP and not yu_liu_check(G, 1, G.max_degree):
        return _fail("yu-liu a=1 b=Δ fails")
    if G.min_degree >= 2:
        pf = factor_from_partition(G)
        if not pf.factor.is_valid() or pf.fallback:
            return _fail("partition factor invalid")
    return PASS


def check_lovasz(G: Multigraph) -> Outcome | None:
    """Vertex partition for every (s, t) with ``s, t <= Δ <= s + t - 1``."""
    delta = G.max_degree
    if delta < 1 or delta > LOVASZ_MAX_DEGREE:
        return None
    for s in range(1, delta + 1):
        for t in range(max(1, delta + 1 - s), delta + 1):
            part = lovasz_partition(G, s, t)
            H, _ = delete_vertices(G, part.L)
            L, _ = delete_vertices(G, part.H)
            if H.max_degree > s or L.max_degree > t or part.moves > part.initial_potential:
                return _fail(f"s={s};t={t};H={part.H}")
    return PASS


def check_matching(G: Multigraph) -> Outcome:
    """Tutte-Berge, ν_1 = ν, and the Shannon and Vizing bounds on χ′."""
    nu = len(maximum_matching(G))
    tb = tutte_berge_deficiency(G)
    if tb.deficiency != G.n - 2 * nu:
        return _fail(f"deficiency={tb.deficiency};nu={nu}")
    if nu_k(G, 1) != nu:
        return _fail(f"nu_1={nu_k(G, 1)};nu={nu}")
    if G.m:
        chi, col = chromatic_index(G)
        delta = G.max_degree
        if not is_proper(col) or not (delta <= chi <= min(3 * delta // 2, delta + max_multiplicity(G))):
            return _fail(f"chi={chi};Δ={delta};μ={max_multiplicity(G)}")
    return PASS


def check_spanning_max_2(G: Multigraph) -> Outcome | None:
    """Regular graphs have a spanning maximum 2-edge-colorable subgraph."""
    if not G.is_regular() or G.max_degree < 1:
        return None
    found, R = spanning_max_exists(G, 2)
    if not found or not (R.host.is_spanning() and is_proper(R) and len(R.host) == nu_k(G, 2)):
        return _fail("no spanning maximum 2-ECS constructed")
    return PASS


def check_prop21(G: Multigraph, a: int, b: int, n: int) -> Outcome:
    k = a * n**b
    nu = len(maximum_matching(G))
    value = sp_factor_search(G).sp_value
    if (G.n, nu, value) != (3 * k + 1, k + 1, k):
        return _fail(f"V,nu,sp={G.n},{nu},{value};expected={3 * k + 1},{k + 1},{k}")
    if not value > a * (G.n / nu) ** b:
        return _fail(f"sp={value}<=a(V/nu)^b")
    return PASS


def check_tightness_gap(G: Multigraph, r: int) -> Outcome:
    value = sp_factor_search(G).sp_value
    if value != 1:
        return _fail(f"sp={value}")
    if r >= 3:
        ratio = bound_values(G, value).get("degree_ratio_nonregular")
        if ratio is None or ratio.value - value != -(-r // 2) - 1:
            return _fail(f"gap={None if ratio is None else ratio.value - value}")
    return PASS


CHECKS: dict[str, Callable[[Multigraph], Outcome | None]] = {
    "sp-equality": check_sp_equality,
    "exchange": check_exchange,
    "sp-delta": check_sp_delta,
    "star-decomposition": check_star_decomposition,
    "bounds": check_bounds,
    "lovasz": check_lovasz,
    "matching": check_matching,
    "spanning-max-2": check_spanning_max_2,
}
GENERATED_THEOREMS = ("prop21", "tightness-gap")
THEOREMS = tuple(CHECKS) + GENERATED_THEOREMS

FAMILY_THEOREMS = {
    "exhaustive": tuple(CHECKS),
    "trees": ("sp-delta", "star-decomposition", "bounds", "matching"),
    "random": ("bounds", "matching", "lovasz", "sp-equality", "exchange", "spanning-max-2"),
    "generated": ("prop21", "tightness-gap", "spanning-max-2", "bounds"),
}


# --- instances ---------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    graph: str
    spec: str = ""


@dataclass(frozen=True)
class CampaignConfig:
    family: str
    max_n: int = 6
    max_edges: int = 10
    max_mult: int = 1
    seed: int = 0
    count: int = 100
    theorems: tuple[str, ...] = ()

    def selected(self) -> tuple[str, ...]:
        base = FAMILY_THEOREMS[self.family]
        if not self.theorems:
            return base
        return tuple(t for t in base if t in self.theorems)

    def header(self) -> str:
        return (
            f"campaign family={self.family} seed={self.seed} max_n={self.max_n} max_edges={self.max_edges} "
            f"max_mult={self.max_mult} count={self.count} theorems={','.join(self.selected()) or '-'} "
            f"enumeration_cap={ENUMERATION_CAP}"
        )


def instances(cfg: CampaignConfig) -> Iterator[Instance]:
    if cfg.family == "exhaustive":
        for G in connected_graphs(cfg.max_n):
            if G.m <= cfg.max_edges:
                yield Instance(encode(G))
        if cfg.max_mult > 1:
            for G in connected_multigraphs(cfg.max_n, cfg.max_mult, cfg.max_edges):
                yield Instance(encode(G))
    elif cfg.family == "trees":
        for T in trees(cfg.max_n):
            yield Instance(encode(T))
    elif cfg.family == "random":
        for s, G in random_suite(cfg.count, cfg.max_n, cfg.max_edges, cfg.max_mult, cfg.seed):
            yield Instance(encode(G), f"random(n={cfg.max_n},m={cfg.max_edges},mu={cfg.max_mult},seed={s})")
    elif cfg.family == "generated":
        for a in (1, 2):
            for b in (1, 2):
                for n in (4, 5):
                    yield Instance(encode(prop21_tree(a, b, n)), f"prop21(a={a},b={b},n={n})")
        for r in range(1, 6):
            H = regular_with_perfect_matching(r)
            f = maximum_matching(H).sorted_edges()[0]
            yield Instance(encode(tightness_graph(H, f)), f"tightness(r={r})")
        for i, G in enumerate(cubic_graphs(cfg.count, 14, cfg.seed)):
            yield Instance(encode(G), f"cubic(seed={cfg.seed},i={i})")
    else:
        raise ValueError(f"unknown family {cfg.family!r}")


def _spec_args(spec: str) -> dict[str, int]:
    inner = spec[spec.index("(") + 1 : -1]
    return {k: int(v) for k, v in (kv.split("=") for kv in inner.split(","))}


def run_instance(inst: Instance, theorems: tuple[str, ...]) -> list[tuple[str, Outcome]]:
    G = decode(inst.graph)
    out: list[tuple[str, Outcome]] = []
    for name in theorems:
        try:
            if name == "prop21":
                if not inst.spec.startswith("prop21"):
                    continue
                res = check_prop21(G, **_spec_args(inst.spec))
            elif name == "tightness-gap":
                if not inst.spec.startswith("tightness"):
                    continue
                res = check_tightness_gap(G, _spec_args(inst.spec)["r"])
            else:
                res = CHECKS[name](G)
        except ResourceCapError as exc:
            res = Outcome("cap", f"{exc.cap}:{exc.limit}<{exc.actual}")
        except TheoremViolation as exc:
            res = _fail(str(exc))
        if res is not None:
            out.append((name, res))
    return out


def _worker(args: tuple[int, Instance, tuple[str, ...]]) -> tuple[int, Instance, list[tuple[str, Outcome]]]:
    index, inst, theorems = args
    return index, inst, run_instance(inst, theorems)


class CampaignResult(NamedTuple):
    lines: list[str]
    passed: int
    failed: int
    capped: int

    @property
    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def format_record(index: int, inst: Instance, theorem: str, res: Outcome) -> str:
    fields = [f"index={index}", f"graph={inst.graph}"]
    if inst.spec:
        fields.append(f"spec={inst.spec}")
    fields += [f"theorem={theorem}", f"status={res.status}"]
    if res.witness:
        fields.append(f"witness={res.witness}")
    return "record " + " ".join(fields)


def run_campaign(cfg: CampaignConfig, jobs: int = 1, items: Iterable[Instance] | None = None) -> CampaignResult:
    theorems = cfg.selected()
    tasks = ((i, inst, theorems) for i, inst in enumerate(items if items is not None else instances(cfg)))
    lines = [cfg.header()]
    tally = {"pass": 0, "fail": 0, "cap": 0}
    if jobs > 1:
        with Pool(jobs) as pool:
            results: Iterable = pool.imap(_worker, tasks, chunksize=16)
            for index, inst, outs in results:
                for name, res in outs:
                    lines.append(format_record(index, inst, name, res))
                    tally[res.status] += 1
    else:
        for task in tasks:
            index, inst, outs = _worker(task)
            for name, res in outs:
                lines.append(format_record(index, inst, name, res))
                tally[res.status] += 1
    total = sum(tally.values())
    lines.append(f"summary records={total} pass={tally['pass']} fail={tally['fail']} cap={tally['cap']}")
    return CampaignResult(lines, tally["pass"], tally["fail"], tally["cap"])
