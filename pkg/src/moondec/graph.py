"""Relation graphs between catalog q-series.

An edge src -> dst with labels (d, r) records src(q^r) = f(dst(q)) with
deg f = d.  Building runs the relation search over every ordered catalog
pair whose area quotient is a natural number; refinement repeatedly splits
edges whose f decomposes as g o h, introducing the intermediate series
h(dst(q)) (re-indexed through its power support) as a new node, until every
edge is degree-wise unsplittable.

Catalog format: one JSON record per line with fields ``name`` (text),
``area`` (rational text "p" or "p/q"), ``coeffs`` (array of rational text,
index k = coefficient of q^k).  The 1/q term is implicit and must not be
listed; an optional ``lead`` field (default "1") exists only so that
documents claiming a different principal part are rejected explicitly.
Blank lines and lines starting with '#' are ignored.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from moondec.bivariate import PolyOverPoly
from moondec.decompose import decompose_one_level
from moondec.errors import (
    CatalogParseError,
    DuplicateNameError,
    IdenticalPowersError,
    NonMonicPrincipalPartError,
    UnderdeterminedSystemError,
    UnknownNodeError,
    VerificationFailureError,
)
from moondec.parsing import parse_ratfun
from moondec.ratfun import MoebiusUnit, RatFun, compose, ratfun_text
from moondec.relations import degree_from_areas, find_relation
from moondec.series import (
    EXACT,
    GeneralLaurent,
    QSeries,
    eval_poly_at_series,
    eval_ratfun_at_series,
    power_support,
    substitute_power,
)

_RATIONAL_RE = re.compile(r"^-?\d+(?:/\d+)?$")


def _parse_rational(text, lineno) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise CatalogParseError(f"not a rational literal: {text!r}", lineno)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise CatalogParseError(f"zero denominator: {text!r}", lineno) from None


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    area: Fraction
    series: QSeries


@dataclass(frozen=True)
class GraphNode:
    name: str
    series: QSeries
    origin: str  # "catalog" or "synthetic"


@dataclass(frozen=True)
class GraphEdge:
    src: str
    dst: str
    degree: int
    power: int
    fun: RatFun


@dataclass(frozen=True)
class RelationGraph:
    nodes: tuple[GraphNode, ...]
    edges: tuple[GraphEdge, ...]

    def node(self, name: str) -> GraphNode:
        for n in self.nodes:
            if n.name == name:
                return n
        raise UnknownNodeError(f"unknown node {name!r}")


@dataclass(frozen=True)
class ModularRelation:
    series_name: str
    k1: int
    k2: int
    p: PolyOverPoly


def _decode_lines(source):
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    return source.splitlines()


def load_catalog(source) -> list[CatalogEntry]:
    """Parse and validate a catalog document (see module docstring)."""
    entries = []
    seen = set()
    for lineno, raw in enumerate(_decode_lines(source), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CatalogParseError(f"bad JSON ({exc.msg}, offset {exc.pos})",
                                    lineno) from exc
        if not isinstance(rec, dict):
            raise CatalogParseError("record must be an object", lineno)
        missing = {"name", "area", "coeffs"} - rec.keys()
        if missing:
            raise CatalogParseError(f"missing fields {sorted(missing)}", lineno)
        unknown = rec.keys() - {"name", "area", "coeffs", "lead"}
        if unknown:
            raise CatalogParseError(f"unknown fields {sorted(unknown)}", lineno)
        name = rec["name"]
        if not isinstance(name, str) or not name:
            raise CatalogParseError("name must be a nonempty string", lineno)
        if name in seen:
            raise DuplicateNameError(f"duplicate catalog name {name!r}")
        lead = _parse_rational(rec.get("lead", "1"), lineno)
        if lead != 1:
            raise NonMonicPrincipalPartError(
                f"entry {name!r} has principal part {lead}/q; must be 1/q")
        area = _parse_rational(rec["area"], lineno)
        if area <= 0:
            raise CatalogParseError(f"area must be positive, got {area}", lineno)
        if not isinstance(rec["coeffs"], list):
            raise CatalogParseError("coeffs must be an array", lineno)
        coeffs = [_parse_rational(c, lineno) for c in rec["coeffs"]]
        seen.add(name)
        entries.append(CatalogEntry(name, area, QSeries.from_coeffs(coeffs)))
    return entries


def _edge_sort_key(e: GraphEdge):
    return (e.src, e.dst, e.power)


def _relate_pair(task):
    """One ordered catalog pair; safe to run in a separate process."""
    src, dst, e_max = task

    def skip(reason):
        return None, [{"kind": "skip", "from": src.name, "to": dst.name,
                       "reason": reason}]

    e = degree_from_areas(src.area, dst.area)
    if e is None:
        return skip("area-quotient-not-natural")
    if e > e_max:
        return skip(f"degree-{e}-exceeds-emax-{e_max}")
    need = 2 * e + 1
    if src.series.prec < need or dst.series.prec < need:
        return skip("insufficient-precision")
    try:
        rel = find_relation(src.series, dst.series, e)
    except UnderdeterminedSystemError:
        return skip("underdetermined-system")
    if rel is None:
        return skip("no-relation")
    return GraphEdge(src.name, dst.name, rel.e, rel.r, rel.f), []


def build_graph(catalog, e_max: int, jobs: int = 1):
    """Pairwise relation search; returns (graph, report records).

    Self-pairs are skipped (identity relations carry no information);
    per-pair failures become skip records, never errors.  Pairs are
    independent, so jobs > 1 runs them in worker processes; the merged
    edge list is sorted, making the output schedule-independent.
    """
    nodes = tuple(GraphNode(c.name, c.series, "catalog") for c in catalog)
    tasks = [(src, dst, e_max) for src in catalog for dst in catalog
             if src.name != dst.name]
    if jobs > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_relate_pair, tasks))
    else:
        results = [_relate_pair(t) for t in tasks]
    edges = []
    report = []
    for edge, records in results:
        if edge is not None:
            edges.append(edge)
        report.extend(records)
    edges.sort(key=_edge_sort_key)
    return RelationGraph(nodes, tuple(edges)), report


def _series_monic_unit(t: GeneralLaurent):
    """Deterministic unit w making w(t) monic with a pole: 1/q^s + ...

    Scales when t already has a pole, inverts (around the constant value
    when needed) otherwise.  None when t is constant to precision.
    """
    if t.is_zero:
        return None
    if t.lead < 0:
        lc = t.coeffs[0]
        if lc == 1:
            return MoebiusUnit.identity()
        return MoebiusUnit.make(1, 0, 0, lc)
    if t.lead == 0:
        c0 = t.coeff(0)
        rest = t.add_scalar(-c0)
        if rest.is_zero:
            return None
        return MoebiusUnit.make(0, rest.coeffs[0], 1, -c0)
    return MoebiusUnit.make(0, t.coeffs[0], 1, 0)


def _reindex(t: GeneralLaurent, s: int) -> QSeries:
    """t = j3(q^s) -> j3; requires monic lead -s and support in s*Z."""
    prec = t.prec // s
    return QSeries.from_coeffs([t.coeff(k * s) for k in range(prec + 1)])


def _verified_fully(src_series: QSeries, dst_series: QSeries,
                    edge: GraphEdge) -> bool:
    """Edge check: the defining difference vanishes through its entire
    certified range, and that range reaches at least degree + 2."""
    diff = substitute_power(src_series, edge.power) - \
        eval_ratfun_at_series(edge.fun, dst_series)
    return diff.is_zero and diff.prec >= edge.degree + 2


class _Refiner:
    def __init__(self, graph: RelationGraph):
        self.nodes = list(graph.nodes)
        self.by_name = {n.name: n for n in self.nodes}
        self.report: list[dict] = []
        self.synthetic: list[str] = []
        self.next_id = 1 + max(
            (int(n.name[1:]) for n in self.nodes
             if n.origin == "synthetic" and re.match(r"^X\d+$", n.name)),
            default=0)

    def warn(self, edge: GraphEdge, reason: str):
        self.report.append({"kind": "warning", "from": edge.src,
                            "to": edge.dst, "r": edge.power, "reason": reason})

    def match_or_create(self, series: QSeries) -> str:
        """Node identity by coefficient prefix; a prefix match that
        diverges deeper is an inconsistency, not a new node."""
        if series.prec < 0:
            raise VerificationFailureError(
                "intermediate series has no certified coefficients")
        for node in self.nodes:
            key_len = min(16, node.series.prec + 1, series.prec + 1)
            if node.series.coeffs[:key_len] != series.coeffs[:key_len]:
                continue
            overlap = min(node.series.prec, series.prec)
            if node.series.coeffs[:overlap + 1] == series.coeffs[:overlap + 1]:
                return node.name
            raise VerificationFailureError(
                f"series agrees with node {node.name!r} on the identity "
                "prefix but diverges inside the certified overlap")
        name = f"X{self.next_id}"
        self.next_id += 1
        node = GraphNode(name, series, "synthetic")
        self.nodes.append(node)
        self.by_name[name] = node
        self.synthetic.append(name)
        return name

    def try_split(self, edge: GraphEdge, dec):
        """One decomposition f = g o h of an edge -> two edges, or None."""
        dst_series = self.by_name[edge.dst].series
        t0 = eval_ratfun_at_series(dec.inner, dst_series)
        w = _series_monic_unit(t0)
        if w is None:
            self.warn(edge, "inner-series-constant-to-precision")
            return None
        inner = w.apply_to(dec.inner)
        outer = compose(dec.outer, w.inverse().as_ratfun())
        t = eval_ratfun_at_series(inner, dst_series)
        s = power_support(t)
        if s != -t.lead:
            self.warn(edge, f"support-{s}-does-not-match-pole-order-{-t.lead}")
            return None
        if edge.power % s != 0:
            self.warn(edge, f"support-{s}-does-not-divide-r-{edge.power}")
            return None
        j3 = _reindex(t, s)
        name = self.match_or_create(j3)
        first = GraphEdge(edge.src, name, outer.degree, edge.power // s, outer)
        second = GraphEdge(name, edge.dst, inner.degree, s, inner)
        for new_edge in (first, second):
            if not _verified_fully(self.by_name[new_edge.src].series,
                                   self.by_name[new_edge.dst].series,
                                   new_edge):
                raise VerificationFailureError(
                    f"refined edge {new_edge.src}->{new_edge.dst} "
                    f"(d={new_edge.degree}, r={new_edge.power}) "
                    "does not verify against the node series")
        return first, second


def refine_graph(graph: RelationGraph):
    """Split decomposable edges until a fixpoint; returns (graph, report).

    Every inequivalent one-level decomposition of an edge is used, so all
    complete chains appear; splits whose intermediate series cannot be
    re-indexed (support or divisibility failure) are skipped with a
    warning and the original edge is kept.
    """
    state = _Refiner(graph)
    edges = sorted(graph.edges, key=_edge_sort_key)
    round_bound = 1 + sum(max(1, e.degree.bit_length())
                          for e in edges if e.degree >= 2)
    rounds = 0
    changed = True
    while changed:
        rounds += 1
        assert rounds <= round_bound, "refinement failed to reach a fixpoint"
        changed = False
        emitted: dict[tuple, GraphEdge] = {}

        def emit(e: GraphEdge):
            key = (e.src, e.dst, e.power)
            if key in emitted:
                if emitted[key].fun != e.fun:
                    state.report.append({
                        "kind": "warning", "from": e.src, "to": e.dst,
                        "r": e.power,
                        "reason": "conflicting-duplicate-edge-dropped"})
                return
            emitted[key] = e

        for edge in edges:
            splits = decompose_one_level(edge.fun) if edge.degree >= 2 else ()
            if not splits:
                emit(edge)
                continue
            produced = []
            for dec in splits:
                result = state.try_split(edge, dec)
                if result is not None:
                    produced.extend(result)
            if produced:
                changed = True
                for e in produced:
                    emit(e)
            else:
                emit(edge)
        edges = sorted(emitted.values(), key=_edge_sort_key)
    for name in state.synthetic:
        state.report.append({"kind": "synthetic", "name": name,
                             "matches_catalog": False})
    return RelationGraph(tuple(state.nodes), tuple(edges)), state.report


def _is_indecomposable(fun: RatFun, cache: dict) -> bool:
    if fun.degree < 2:
        return True
    if fun not in cache:
        cache[fun] = not decompose_one_level(fun)
    return cache[fun]


def maximal_chains(graph: RelationGraph, src: str, dst: str):
    """All simple directed paths src -> dst along indecomposable edges,
    sorted by length descending (ties broken lexicographically)."""
    names = {n.name for n in graph.nodes}
    for name in (src, dst):
        if name not in names:
            raise UnknownNodeError(f"unknown node {name!r}")
    if src == dst:
        return [[]]
    cache: dict = {}
    adjacency: dict[str, list[GraphEdge]] = {}
    for e in sorted(graph.edges, key=_edge_sort_key):
        if _is_indecomposable(e.fun, cache):
            adjacency.setdefault(e.src, []).append(e)
    paths = []

    def dfs(at, visited, trail):
        if at == dst:
            paths.append(list(trail))
            return
        for e in adjacency.get(at, ()):
            if e.dst not in visited or e.dst == dst:
                visited.add(e.dst)
                trail.append(e)
                dfs(e.dst, visited, trail)
                trail.pop()
                visited.discard(e.dst)

    dfs(src, {src}, [])
    paths.sort(key=lambda p: (-len(p),
                              tuple((e.src, e.dst, e.power) for e in p)))
    return paths


def modular_polynomial(f1: RatFun, k1: int, f2: RatFun, k2: int) -> PolyOverPoly:
    """P(x, y) = num(f1)(x)*den(f2)(y) - num(f2)(y)*den(f1)(x), reduced.

    For two relations s1 = f1(s2(q^k1)) = f2(s2(q^k2)) with k1 != k2, the
    result vanishes identically at (s2(q^k1), s2(q^k2)).  The formula is
    the resultant of f1_N(x) - t*f1_D(x) and f2_N(y) - t*f2_D(y) with
    respect to the shared value t: chaining the two relations eliminates
    the series they have in common.
    """
    if k1 == k2:
        raise IdenticalPowersError("the two powers must differ")
    top = max(len(f1.num.coeffs), len(f1.den.coeffs)) - 1
    coeffs = [f2.den.scale(f1.num.coeff(i)) - f2.num.scale(f1.den.coeff(i))
              for i in range(top + 1)]
    return PolyOverPoly.from_coeffs(coeffs).content_reduced()


def eval_modular_polynomial(p: PolyOverPoly, xs: GeneralLaurent,
                            ys: GeneralLaurent) -> GeneralLaurent:
    """P(xs, ys) by Horner in the outer variable."""
    acc = GeneralLaurent(0, (), EXACT)
    for c in reversed(p.coeffs):
        acc = acc * xs + eval_poly_at_series(c, ys)
    return acc


def export_graph(graph: RelationGraph, fmt: str) -> bytes:
    """Deterministic serialization: 'dot' or 'jsonlines'."""
    if fmt == "dot":
        lines = ["digraph relations {"]
        for n in graph.nodes:
            attrs = " [shape=box style=dashed]" if n.origin == "synthetic" else ""
            lines.append(f'  "{n.name}"{attrs};')
        for e in graph.edges:
            lines.append(f'  "{e.src}" -> "{e.dst}" '
                         f'[label="d={e.degree},r={e.power}"];')
        lines.append("}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "jsonlines":
        lines = []
        for n in graph.nodes:
            lines.append(json.dumps(
                {"type": "node", "name": n.name, "origin": n.origin,
                 "coeffs": [str(c) for c in n.series.coeffs]},
                separators=(",", ":")))
        for e in graph.edges:
            lines.append(json.dumps(
                {"type": "edge", "from": e.src, "to": e.dst,
                 "d": e.degree, "r": e.power, "f": ratfun_text(e.fun)},
                separators=(",", ":")))
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown export format {fmt!r}")


def load_graph(source) -> RelationGraph:
    """Re-ingest a jsonlines export; inverse of export_graph."""
    nodes = []
    edges = []
    seen = set()
    for lineno, raw in enumerate(_decode_lines(source), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CatalogParseError(f"bad JSON ({exc.msg}, offset {exc.pos})",
                                    lineno) from exc
        kind = rec.get("type")
        if kind == "node":
            name = rec["name"]
            if name in seen:
                raise DuplicateNameError(f"duplicate node {name!r}")
            seen.add(name)
            coeffs = [_parse_rational(c, lineno) for c in rec["coeffs"]]
            origin = rec.get("origin", "catalog")
            if origin not in ("catalog", "synthetic"):
                raise CatalogParseError(f"bad origin {origin!r}", lineno)
            nodes.append(GraphNode(name, QSeries.from_coeffs(coeffs), origin))
        elif kind == "edge":
            edges.append(GraphEdge(rec["from"], rec["to"], int(rec["d"]),
                                   int(rec["r"]), parse_ratfun(rec["f"])))
        else:
            raise CatalogParseError(f"unknown record type {kind!r}", lineno)
    graph = RelationGraph(tuple(nodes), tuple(edges))
    seen_edges = set()
    for e in edges:
        graph.node(e.src)
        graph.node(e.dst)
        if e.fun.degree != e.degree:
            raise CatalogParseError(
                f"edge {e.src}->{e.dst}: function degree {e.fun.degree} "
                f"does not match label d={e.degree}", 0)
        key = (e.src, e.dst, e.power)
        if key in seen_edges:
            raise DuplicateNameError(
                f"duplicate edge ({e.src}, {e.dst}, r={e.power})")
        seen_edges.add(key)
    return graph
