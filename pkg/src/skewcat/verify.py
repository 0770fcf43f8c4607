"""
Desk-scale verification suites.

Each suite returns a :class:`Report`: a list of cases with a status
(pass, fail or unknown) and, for failures, a replayable witness.  Reports
depend only on their inputs and the seed; thread count changes wall time,
never output.
"""

from __future__ import annotations

import json
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .closure import ClosureBounds, member_exact, skew_closure
from .linmap import (
    ResourceError, adjoint, check_tensor_category_with_duals, lemma32_compose,
    lemma32_tensor, linear_combination, linearly_independent, mobius_coefficient,
    mobius_expand_hat, t, t_hat,
)
from .partitions import (
    CORNERS, PRIMARY, Partition, all_partitions, canonical_labels, involution, ker, rotate,
)
from .skew import compatible, conditioned_compose, enumerate_connected_tensors
from .symmetric import (
    EXPANSIONS, H3, R, R1, generator_indices, nontrivial_generators, sign_oracle, star_oracle,
)
from .words import (
    SearchOracle, Verdict, Word, apply_map, canonical_word, conj, inv, is_strongly_invariant,
    mul, reduce, relation_families, emit_presentation_relations, sandwich_n1_n2,
    word_of_partition,
)

DEFAULT_SEED = 20240601
SAMPLE_LIMIT = 10 ** 5


def thread_count(threads: int | None = None) -> int:
    if threads is None:
        threads = int(os.environ.get("SKEWCAT_THREADS", "1") or 1)
    return max(1, threads)


def _pmap(fn: Callable, items: Iterable, threads: int | None) -> list:
    """Ordered map, optionally on a thread pool."""
    items = list(items)
    threads = thread_count(threads)
    if threads == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(threads) as pool:
        return list(pool.map(fn, items))


def _jsonable(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, Verdict):
        return x.value
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


@dataclass
class Case:
    description: str
    status: str
    witness: object = None

    def to_json(self) -> dict:
        out = {"description": self.description, "status": self.status}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


@dataclass
class Report:
    suite: str
    params: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    cases: list = field(default_factory=list)

    def add(self, description: str, ok, witness=None) -> Case:
        if isinstance(ok, str):
            status = ok
        elif ok is None:
            status = "unknown"
        else:
            status = "pass" if ok else "fail"
        case = Case(description, status, witness)
        self.cases.append(case)
        return case

    @property
    def status(self) -> str:
        states = {c.status for c in self.cases}
        if "fail" in states:
            return "fail"
        return "unknown" if "unknown" in states else "pass"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def failures(self) -> list[Case]:
        return [c for c in self.cases if c.status == "fail"]

    def to_json(self) -> dict:
        return {"suite": self.suite, "params": _jsonable(self.params), "seed": self.seed,
                "status": self.status, "cases": [c.to_json() for c in self.cases]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def to_text(self) -> str:
        lines = [f"{self.suite}: {self.status}"]
        for c in self.cases:
            lines.append(f"  [{c.status}] {c.description}")
            if c.status != "pass" and c.witness is not None:
                lines.append(f"      witness: {json.dumps(_jsonable(c.witness), sort_keys=True)}")
        return "\n".join(lines)


def partitions_up_to(points: int, max_blocks: int | None = None) -> list[Partition]:
    return [p for m in range(points + 1) for k in range(m + 1)
            for p in all_partitions(k, m - k, max_blocks)]


def _sweep(report: Report, description: str, items, check, threads):
    """Run check on every item; record pass, or the first failure with a count."""
    results = _pmap(check, items, threads)
    bad = [w for group in results for w in group]
    report.add(description, not bad,
               {"failures": len(bad), "first": bad[0]} if bad else None)


# Functor identities and independence ---------------------------------------

def suite_functor(n: int, arity_bound: int, threads: int | None = None,
                  seed: int = DEFAULT_SEED) -> Report:
    """Functor identities for T-hat over all p, q with at most arity_bound points each."""
    if n > 4 or arity_bound > 6:
        raise ResourceError("functor sweep limited to n <= 4 and arity bound <= 6")
    if n < 1 or arity_bound < 0:
        raise ValueError("n must be positive and the arity bound non-negative")
    report = Report("functor", {"n": n, "arityBound": arity_bound}, seed)
    parts = partitions_up_to(arity_bound)

    def adj(p):
        return [] if adjoint(t_hat(p, n)) == t_hat(involution(p), n) else [{"p": p}]

    def tens(p):
        out = []
        for q in parts:
            res = lemma32_tensor(p, q, n)
            if not res.is_zero:
                out.append({"p": p, "q": q, "residual": res})
        return out

    def comp(mode):
        def run(p):
            out = []
            for q in parts:
                if q.k != p.l:
                    continue
                zero_case = not compatible(p, q) or len(set(p.lower)) > n
                if mode == "zero" and not zero_case or mode == "stated" and zero_case:
                    continue
                res = lemma32_compose(p, q, n, exact=(mode == "exact"))
                if not res.is_zero:
                    out.append({"p": p, "q": q, "residual": res})
            return out
        return run

    _sweep(report, "(i) adjoint of T-hat_p is T-hat of the involution", parts, adj, threads)
    _sweep(report, "(ii) tensor product equals the sum over connected tensor products",
           parts, tens, threads)
    _sweep(report, "(iii) composition vanishes for incompatible pairs and b > n",
           parts, comp("zero"), threads)
    _sweep(report, "(iii) composition equals prod_{c=a}^{b-1}(n-c) times the sum over M",
           parts, comp("stated"), threads)
    _sweep(report, "(iii) composition equals the sum over M with per-element loop counts",
           parts, comp("exact"), threads)

    def indep(shape):
        k, l = shape  # noqa: E741
        fam = [t_hat(p, n) for p in all_partitions(k, l, max_blocks=n)]
        ok, rank = linearly_independent(fam)
        return [] if ok else [{"k": k, "l": l, "size": len(fam), "rank": rank}]

    shapes = [(k, m - k) for m in range(arity_bound + 1) for k in range(m + 1)]
    _sweep(report, "T-hat_p for p in P_n(k, l) are linearly independent", shapes, indep,
           threads)
    return report


# Moebius expansions -------------------------------------------------------

def expansion_case(report: Report, name: str, p: Partition, expected: dict, n: int):
    got = mobius_expand_hat(p)
    report.add(f"T-hat of {name} expands as {_fmt_expansion(expected)}", got == expected,
               None if got == expected else {"got": _fmt_expansion(got)})
    lhs = t_hat(p, n)
    rhs = linear_combination(((c, t(q, n)) for q, c in expected.items()), n, p.k, p.l)
    report.add(f"T-hat of {name} equals its T expansion as maps at n = {n}", lhs == rhs,
               None if lhs == rhs else {"residual": lhs - rhs})
    closed = {q: mobius_coefficient(p, q) for q in got}
    report.add(f"recursive and closed-form Moebius coefficients agree for {name}",
               closed == got, None if closed == got else {"closed": _fmt_expansion(closed)})


def _fmt_expansion(coeffs: dict) -> str:
    return " ".join(f"{c:+d}*T[{q}]" for q, c in sorted(coeffs.items()))


# Word/partition correspondence --------------------------------------------

def derived_set(oracle, bounds: ClosureBounds) -> dict[Partition, Verdict]:
    """memberExact verdict of every partition inside the bounds with at most rank blocks."""
    cap = oracle.rank if bounds.max_blocks is None else min(oracle.rank, bounds.max_blocks)
    return {p: member_exact(p, oracle) for p in partitions_up_to(bounds.max_points, cap)}


def suite_skew_word_correspondence(generators: Iterable[Partition], oracle,
                                   bounds: ClosureBounds | None = None,
                                   threads: int | None = None,
                                   seed: int = DEFAULT_SEED) -> Report:
    bounds = bounds or ClosureBounds(8)
    generators = sorted(set(generators))
    report = Report("skew-word", {"generators": generators, "oracle": oracle,
                                  "maxPoints": bounds.max_points,
                                  "maxBlocks": bounds.max_blocks}, seed)
    closure = skew_closure(generators, bounds)
    report.add("closure saturated within bounds", closure.saturated,
               None if closure.saturated else {"elements": len(closure)})
    elements = closure.sorted()

    # soundness: the word of every element lies in N
    def sound(p):
        if p.blocks > oracle.rank:
            return [], [{"partition": p, "reason": "more blocks than the oracle rank"}]
        v = member_exact(p, oracle)
        if v is Verdict.IN:
            return [], []
        item = {"partition": p, "word": word_of_partition(p), "verdict": v}
        return ([item], []) if v is Verdict.NOT_IN else ([], [item])

    res = _pmap(sound, elements, threads)
    bad = [x for b, _ in res for x in b]
    unk = [x for _, u in res for x in u]
    report.add("word of every closure element is in N",
               "fail" if bad else ("unknown" if unk else "pass"),
               ({"failures": len(bad), "first": bad[0]} if bad else
                {"unknown": len(unk), "first": unk[0]} if unk else None))

    # word side: one-row words of the truncation are closed under the group operations
    words = sorted({canonical_word(word_of_partition(p)) for p in elements if p.is_one_row})
    in_bounds = _word_bounds(bounds)

    def word_ok(w):
        w = canonical_word(w)
        return not in_bounds(w) or ker(w.letters) in closure

    unary = []
    for w in words:
        unary.append(("inv", w, inv(w)))
        for i in range(1, len(w.support) + 2):
            unary.append(("conj", w, conj(w, Word((i,)))))
        for s in range(1, len(w.support) + 1):
            for t_ in range(s + 1, len(w.support) + 2):
                unary.append(("swap", w, apply_map(w, {s: t_, t_: s})))
    pairs = [(u, v) for u in words for v in words]
    if len(pairs) > SAMPLE_LIMIT:
        pairs = random.Random(seed).sample(pairs, SAMPLE_LIMIT)
    missing = [{"op": op, "word": w, "result": r} for op, w, r in unary if not word_ok(r)]
    missing += [{"op": "mul", "left": u, "right": v, "result": mul(u, v)}
                for u, v in pairs if not word_ok(mul(u, v))]
    report.add(f"one-row words closed under mul, inv, conj, relabelling "
               f"({len(words)} words, {len(pairs)} products)", not missing,
               {"failures": len(missing), "first": missing[0]} if missing else None)

    # partition side: the oracle-derived set is closed under every skew operation
    verdicts = derived_set(oracle, bounds)
    derived = sorted(p for p, v in verdicts.items() if v is Verdict.IN)
    by_upper: dict[tuple, list[Partition]] = {}
    for q in derived:
        by_upper.setdefault((q.k, canonical_labels(q.upper)), []).append(q)

    def image_ok(r):
        if r not in verdicts:   # outside the window
            return True
        return verdicts[r] is not Verdict.NOT_IN

    def closed(p):
        out = []
        for r in [involution(p)] + [rotate(p, c) for c in CORNERS
                                    if (p.upper if c.startswith("upper") else p.lower)]:
            if not image_ok(r):
                out.append({"op": "unary", "p": p, "result": r})
        for q in derived:
            if p.points + q.points > bounds.max_points:
                break
            for r in enumerate_connected_tensors(p, q):
                if not image_ok(r):
                    out.append({"op": "connected tensor", "p": p, "q": q, "result": r})
        for q in by_upper.get((p.l, canonical_labels(p.lower)), ()):
            if p.k + q.l <= bounds.max_points:
                r, _ = conditioned_compose(q, p)
                if not image_ok(r):
                    out.append({"op": "conditioned compose", "p": p, "q": q, "result": r})
        return out

    _sweep(report, f"oracle-derived set ({len(derived)} partitions) closed under skew operations",
           derived, closed, threads)

    missing = [p for p in derived if p not in closure]
    report.add("saturated closure agrees with memberExact inside the window",
               "pass" if not missing else "unknown",
               {"onlyDerived": len(missing), "first": missing[0]} if missing else None)
    return report


def _word_bounds(bounds: ClosureBounds):
    def inside(w: Word) -> bool:
        if len(w) > bounds.max_points:
            return False
        return bounds.max_blocks is None or len(w.support) <= bounds.max_blocks
    return inside


# Easiness -----------------------------------------------------------------

def suite_easiness(generators: Iterable[Word], oracle, brute_force: bool | None = None,
                   seed: int = DEFAULT_SEED) -> Report:
    generators = sorted({reduce(g) for g in generators} - {Word()})
    report = Report("easiness", {"generators": generators, "oracle": oracle}, seed)
    res = is_strongly_invariant(oracle, generators)
    report.add(f"sS_n-invariance verdict: {res.verdict.value}",
               "unknown" if res.verdict is Verdict.UNKNOWN else "pass",
               {"witnesses": len(res.witnesses),
                "first": res.to_json()["witnesses"][0]} if res.witnesses else None)
    if brute_force is None:
        brute_force = oracle.rank <= 4
    if brute_force:
        from itertools import product
        n = oracle.rank
        brute = Verdict.IN
        for g in generators:
            for values in product(range(1, n + 1), repeat=n):
                v = oracle.member(apply_map(g, dict(zip(range(1, n + 1), values))))
                if v is Verdict.NOT_IN:
                    brute = Verdict.NOT_IN
                    break
                if v is Verdict.UNKNOWN:
                    brute = Verdict.UNKNOWN
            if brute is Verdict.NOT_IN:
                break
        report.add(f"agrees with brute force over all {n}^{n} self-maps",
                   brute is res.verdict, {"bruteForce": brute, "generatorCheck": res.verdict})
    return report


# The symmetric-group example ----------------------------------------------

MERGE_WITNESS = ({3: 2}, reduce((1, 2, 1, 3) * 2))


def n2_oracle(n: int, **bounds) -> SearchOracle:
    _, gens = sandwich_n1_n2(star_oracle(n), nontrivial_generators(n))
    return SearchOracle(gens, n, separator=sign_oracle(n), **bounds)


def section_five_suite(n: int = 4, expansion_n: int = 3, seed: int = DEFAULT_SEED) -> Report:
    if n < 3:
        raise ValueError("the example needs n >= 3")
    if n > 6:
        raise ResourceError("the example is limited to n <= 6")
    report = Report("symmetric-example", {"n": n, "expansionN": expansion_n}, seed)
    oracle = star_oracle(n)
    ident = tuple(range(n + 1))

    # (a) generators and a non-member
    bad = [list(idx) for idx in generator_indices(n) if oracle.image(reduce(idx)) != ident]
    report.add(f"every generator of N_S maps to the identity of S_{n + 1}", not bad,
               {"indices": bad} if bad else None)
    w = reduce((1, 2) * 4)
    report.add("(a1 a2)^4 is not in N_S", oracle.member(w) is Verdict.NOT_IN,
               {"word": w, "image": list(oracle.image(w))})

    # (b) non-easiness with the merge 3 -> 2 on (a1 a2 a1 a3)^2
    res = is_strongly_invariant(oracle, nontrivial_generators(n))
    phi, r_word = MERGE_WITNESS
    image = apply_map(r_word, phi)
    hit = any(g == r_word and m == phi for g, m, _ in res.witnesses)
    report.add("N_S is not strongly invariant; merging 3 into 2 on (a1 a2 a1 a3)^2 "
               "gives (a1 a2)^4", res.verdict is Verdict.NOT_IN and hit
               and image == reduce((1, 2) * 4) and oracle.member(image) is Verdict.NOT_IN,
               {"image": image, "witnesses": len(res.witnesses)})

    # (c) exact membership
    for name, p, want in (("primary", PRIMARY, Verdict.IN), ("h3", H3, Verdict.IN),
                          ("r", R, Verdict.IN), ("ker((1,2)^4)", R1, Verdict.NOT_IN)):
        got = member_exact(p, oracle)
        report.add(f"memberExact({name}) = {want.value}", got is want, {"verdict": got})

    # (d) expansions
    for name, (p, expected) in EXPANSIONS.items():
        expansion_case(report, name, p, expected, expansion_n)

    # (e) the strongly invariant neighbours
    n1, _ = sandwich_n1_n2(oracle, nontrivial_generators(n))
    n2 = n2_oracle(n)
    for desc, v in (("a1 a2 is in N2", n2.member(reduce((1, 2)))),
                    ("(a1 a2 a1 a3)^6 is in N1", n1(reduce((1, 2, 1, 3) * 6))),
                    ("(a1 a2)^3 is in N1", n1(reduce((1, 2) * 3)))):
        report.add(desc, v is Verdict.IN, {"verdict": v})
    v = n1(r_word)
    report.add("(a1 a2 a1 a3)^2 is not in N1", v is Verdict.NOT_IN, {"verdict": v})
    inv2 = is_strongly_invariant(n2, n2.generators)
    report.add("N2 is strongly invariant", inv2.verdict is Verdict.IN,
               {"verdict": inv2.verdict, "unknown": len(inv2.unknown)})

    # (f) presentation
    fams = relation_families(emit_presentation_relations(generator_indices(n), n))
    want = [(1, 1), (1, 2, 2, 1, 2, 2), (1, 2, 1, 2, 1, 2), (1, 2, 1, 3, 1, 2, 1, 3)]
    report.add("presentation has the four relation families", sorted(fams) == sorted(want),
               {"families": [list(f) for f in fams]})
    return report


# Tensor categories --------------------------------------------------------

def suite_tensor_category(generators: Iterable[Partition], oracle, n: int, arity_bound: int,
                          bounds: ClosureBounds | None = None, saturate: bool = True,
                          seed: int = DEFAULT_SEED) -> Report:
    """Span of T-hat over the (saturated, backfilled) category at dimension n."""
    if n > 4 or arity_bound > 6:
        raise ResourceError("tensor-category check limited to n <= 4 and arity bound <= 6")
    generators = sorted(set(generators))
    report = Report("tensor-category", {"generators": generators, "n": n,
                                        "arityBound": arity_bound}, seed)
    parts = set(generators)
    if saturate:
        pts = max([arity_bound] + [g.points for g in generators])
        bounds = bounds or ClosureBounds(max(pts, 2))
        closure = skew_closure(generators, bounds)
        parts |= closure.elements
        report.add("closure saturated within bounds", closure.saturated)
        if oracle is not None:
            cap = min(n, oracle.rank)
            extra = [p for p in partitions_up_to(arity_bound, cap)
                     if p not in parts and member_exact(p, oracle) is Verdict.IN]
            parts |= set(extra)
            report.add(f"memberExact backfill added {len(extra)} partitions", "pass",
                       {"added": extra[:5]} if extra else None)
    res = check_tensor_category_with_duals(parts, n, arity_bound)
    first = res.violations[0] if res.violations else None
    report.add(f"span of T-hat is a tensor category with duals ({res.checked} checks)",
               res.passed,
               {"violations": len(res.violations), "axiom": first[0], "what": first[1],
                "residual": first[2]} if first else None)
    return report


# Registry -----------------------------------------------------------------

def run_suite(name: str, n: int = 4, arity_bound: int = 4, max_points: int = 8,
              threads: int | None = None, seed: int = DEFAULT_SEED) -> Report:
    """Named suites as exposed on the command line."""
    if name == "functor":
        return suite_functor(n, arity_bound, threads, seed)
    if name == "skew-word":
        return suite_skew_word_correspondence((PRIMARY, H3, R), star_oracle(n),
                                              ClosureBounds(max_points), threads, seed)
    if name == "easiness":
        return suite_easiness(nontrivial_generators(n), star_oracle(n), seed=seed)
    if name in ("section5", "example-s"):
        return section_five_suite(n, seed=seed)
    if name == "tensor-category":
        return suite_tensor_category((PRIMARY, H3, R), star_oracle(n), n, arity_bound,
                                     ClosureBounds(max(max_points, 8)), seed=seed)
    raise KeyError(name)


SUITES = ("functor", "skew-word", "easiness", "section5", "tensor-category")
