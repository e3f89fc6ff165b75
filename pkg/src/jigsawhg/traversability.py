"""Traversable triples, their edge-duty blueprints, and the generator census.

A family of j-sets is traversable in an edge set when every two members are
joined by an edge walk whose consecutive intersections contain a family
member; a triple is traversable when both colours traverse its family.
Edge-minimal triples of a given size and edge counts are censused
exhaustively (desk scale only), characterised by blueprint matrix pairs,
and re-derived through the two-phase white/red + blue generator whose
output set must contain every censused triple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence, Tuple

from .combinatorics import JSet, iter_jsets, rank_jset, rank_space, subsets_of
from .engine import Triple
from .errors import ValidationError
from .unionfind import UnionFind

_colex = lambda t: t[::-1]  # sort key giving colexicographic order


@dataclass(frozen=True)
class BlueprintMatrix:
    """Non-negative integer matrix with one row per family member and
    one column per duty count z = 0..binom(k,j)."""

    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValidationError("blueprint matrix must be non-empty")
        width = len(self.entries[0])
        if any(len(row) != width for row in self.entries):
            raise ValidationError("ragged blueprint matrix")
        if any(v < 0 for row in self.entries for v in row):
            raise ValidationError("negative blueprint entry")

    @property
    def a(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])


@dataclass(frozen=True)
class Blueprint:
    """Duty-count matrices of the red colouring pass and blue marking pass,
    plus the red BFS order of the family (as colex ranks)."""

    red: BlueprintMatrix
    blue: BlueprintMatrix
    bfs_order: Tuple[int, ...]


def matrix_weights(matrix: BlueprintMatrix) -> Tuple[int, int]:
    """(weighted duty sum, entry sum): the first recovers the number of
    coloured/marked j-sets, the second the number of edges."""
    f = sum(z * v for row in matrix.entries for z, v in enumerate(row))
    g = sum(v for row in matrix.entries for v in row)
    return f, g


def is_traversable_family(
    jstar: Iterable[Sequence[int]],
    jref: Iterable[Sequence[int]],
    edges: Iterable[Sequence[int]],
) -> bool:
    """True when every two members of jstar are joined by an edge walk whose
    consecutive intersections contain a member of jref.

    Singletons (and the empty family) are traversable by convention; a
    member contained in no edge makes a larger family non-traversable.
    """
    star = {tuple(x) for x in jstar}
    ref = {tuple(x) for x in jref}
    if not star <= ref:
        raise ValidationError("jstar must be a subset of jref")
    if len(star) <= 1:
        return True
    edge_list = [tuple(e) for e in edges]
    ref_sets = [frozenset(x) for x in ref]
    masks = []
    for e in edge_list:
        es = frozenset(e)
        mask = 0
        for bit, js in enumerate(ref_sets):
            if js <= es:
                mask |= 1 << bit
        masks.append(mask)
    uf = UnionFind(len(edge_list))
    for i in range(len(edge_list)):
        for t in range(i + 1, len(edge_list)):
            if masks[i] & masks[t]:
                uf.union(i, t)
    component = None
    for js in star:
        fs = frozenset(js)
        holder = next((i for i, e in enumerate(edge_list) if fs <= frozenset(e)), None)
        if holder is None:
            return False
        root = uf.find(holder)
        if component is None:
            component = root
        elif component != root:
            return False
    return True


def _pair_traversable(masks: Sequence[int], n_members: int) -> bool:
    """Mask-level traversability of (family, edge set); masks flag which
    family members each edge contains."""
    if n_members <= 1:
        return True
    if not masks:
        return False
    full = (1 << n_members) - 1
    union = 0
    for m in masks:
        union |= m
    if union != full:
        return False
    uf = UnionFind(len(masks))
    for i in range(len(masks)):
        for t in range(i + 1, len(masks)):
            if masks[i] & masks[t]:
                uf.union(i, t)
    holders = [next(i for i, m in enumerate(masks) if m & (1 << bit)) for bit in range(n_members)]
    root = uf.find(holders[0])
    return all(uf.find(h) == root for h in holders[1:])


def _pair_edge_minimal(masks: Sequence[int], n_members: int) -> bool:
    if not _pair_traversable(masks, n_members):
        return False
    for drop in range(len(masks)):
        reduced = masks[:drop] + masks[drop + 1 :]
        if _pair_traversable(reduced, n_members):
            return False
    return True


def is_traversable_triple(triple: Triple) -> bool:
    """Both colours must traverse the triple's j-set family."""
    jsets = _triple_jsets(triple)
    return is_traversable_family(jsets, jsets, triple.e1) and is_traversable_family(
        jsets, jsets, triple.e2
    )


def is_edge_minimal_triple(triple: Triple) -> bool:
    """Traversable, and removing any single edge of either colour breaks
    that colour's traversability."""
    jsets = _triple_jsets(triple)
    for edge_set in (triple.e1, triple.e2):
        masks = _member_masks(jsets, sorted(edge_set, key=_colex))
        if not _pair_edge_minimal(masks, len(jsets)):
            return False
    return True


def _triple_jsets(triple: Triple) -> list[JSet]:
    limit = 0
    for r in triple.j0:
        limit = max(limit, r)
    n = triple.j
    while math.comb(n, triple.j) <= limit:
        n = max(n + 1, 2 * n)
    return triple.jsets(n)


def _member_masks(members: Sequence[JSet], edges: Sequence[JSet]) -> list[int]:
    member_sets = [frozenset(x) for x in members]
    out = []
    for e in edges:
        es = frozenset(e)
        mask = 0
        for bit, js in enumerate(member_sets):
            if js <= es:
                mask |= 1 << bit
        out.append(mask)
    return out


def _census_guard(n: int, k: int, j: int, ell: int, r: int, b: int) -> None:
    if not 1 <= j < k <= n:
        raise ValidationError(f"need 1 <= j < k <= n, got n={n}, k={k}, j={j}")
    if rank_space(n, j) > 15:
        raise ValidationError(f"census guard exceeded: binom({n},{j}) > 15")
    if not 1 <= ell <= 6:
        raise ValidationError(f"census guard exceeded: ell={ell} not in [1, 6]")
    if not (0 <= r <= ell and 0 <= b <= ell):
        raise ValidationError(f"census guard exceeded: r={r}, b={b} not in [0, ell]")


def _edge_minimal_families(members: Sequence[JSet], cand: Sequence[JSet], cand_masks: Sequence[int], size: int):
    """All edge subsets of the given size forming an edge-minimal traversable
    pair with the member family."""
    n_members = len(members)
    full = (1 << n_members) - 1
    out = []
    for combo in combinations(range(len(cand)), size):
        masks = [cand_masks[i] for i in combo]
        if n_members > 1:
            union = 0
            for m in masks:
                union |= m
            if union != full:
                continue
        if _pair_edge_minimal(masks, n_members):
            out.append(tuple(cand[i] for i in combo))
    return out


def census_triples(n: int, k: int, j: int, ell: int, r: int, b: int) -> set[Triple]:
    """Every edge-minimal traversable triple with |J0| = ell, |E1| = r, |E2| = b.

    Exhaustive enumeration under hard desk-scale guards. Edge-minimality of a
    triple factors into per-colour edge-minimality of (J0, E), so the census
    is the product of the two per-colour families over each J0.
    """
    _census_guard(n, k, j, ell, r, b)
    all_jsets = list(iter_jsets(n, j))
    all_ksets = list(iter_jsets(n, k))
    out: set[Triple] = set()
    for j0 in combinations(all_jsets, ell):
        member_sets = [frozenset(x) for x in j0]
        cand = []
        cand_masks = []
        for e in all_ksets:
            es = frozenset(e)
            mask = 0
            for bit, js in enumerate(member_sets):
                if js <= es:
                    mask |= 1 << bit
            if mask:
                cand.append(e)
                cand_masks.append(mask)
        red_families = _edge_minimal_families(j0, cand, cand_masks, r)
        if not red_families:
            continue
        blue_families = (
            red_families if b == r else _edge_minimal_families(j0, cand, cand_masks, b)
        )
        if not blue_families:
            continue
        ranks = frozenset(rank_jset(x, n) for x in j0)
        for e1 in red_families:
            for e2 in blue_families:
                out.add(Triple(ranks, frozenset(e1), frozenset(e2), j))
    return out


def blueprint(triple: Triple, n: int, k: int, j: int) -> Blueprint:
    """Duty matrices of the red BFS colouring pass and the blue marking pass.

    The red pass explores the family from its colex-minimal member, taking
    each active member's unseen red edges in colex order and colouring the
    contained family members white in colex order; this yields the BFS order.
    The blue pass walks that order, revealing at step i (in colex order) the
    blue edges containing member i and none of the later members, marking
    unmarked family members. Entry (i, z) counts edges that coloured (or
    marked) exactly z members when revealed.
    """
    if triple.j != j:
        raise ValidationError(f"triple carries j={triple.j}, expected {j}")
    space = rank_space(n, j)
    if any(rk < 0 or rk >= space for rk in triple.j0):
        raise ValidationError("j-set rank out of range")
    jsets = sorted(triple.jsets(n), key=_colex)
    ell = len(jsets)
    duty = math.comb(k, j)
    j0set = set(jsets)

    red_rows = [[0] * (duty + 1) for _ in range(ell)]
    e1_sorted = sorted(triple.e1, key=_colex)
    tau = [jsets[0]]
    white = {jsets[0]}
    seen: set = set()
    pos = 0
    while pos < len(tau):
        active = frozenset(tau[pos])
        for e in e1_sorted:
            if e in seen or not active <= frozenset(e):
                continue
            seen.add(e)
            newly = [x for x in subsets_of(e, j) if x in j0set and x not in white]
            for x in newly:
                white.add(x)
                tau.append(x)
            red_rows[pos][len(newly)] += 1
        pos += 1
    if len(tau) < ell:
        raise ValidationError("triple is not traversable in the red edges")

    blue_rows = [[0] * (duty + 1) for _ in range(ell)]
    e2_sorted = sorted(triple.e2, key=_colex)
    marked = {tau[0]}
    for i in range(ell):
        active = frozenset(tau[i])
        later = [frozenset(x) for x in tau[i + 1 :]]
        for e in e2_sorted:
            es = frozenset(e)
            if not active <= es:
                continue
            if any(lt <= es for lt in later):
                continue
            newly = [x for x in jsets if frozenset(x) <= es and x not in marked]
            marked.update(newly)
            blue_rows[i][len(newly)] += 1

    return Blueprint(
        red=BlueprintMatrix(tuple(tuple(row) for row in red_rows)),
        blue=BlueprintMatrix(tuple(tuple(row) for row in blue_rows)),
        bfs_order=tuple(rank_jset(x, n) for x in tau),
    )


def _enumerate_matrices(a: int, m: int, duty: int) -> list[BlueprintMatrix]:
    """All a x (duty+1) non-negative matrices with weighted duty sum a-1 and
    entry sum m. No guard; callers bound the parameters."""
    cells = [(i, z) for i in range(a) for z in range(duty + 1)]
    out: list[BlueprintMatrix] = []
    rows = [[0] * (duty + 1) for _ in range(a)]

    def rec(idx: int, rem_f: int, rem_g: int) -> None:
        if rem_f > duty * rem_g:
            return
        if idx == len(cells):
            if rem_f == 0 and rem_g == 0:
                out.append(BlueprintMatrix(tuple(tuple(row) for row in rows)))
            return
        i, z = cells[idx]
        v = 0
        while v <= rem_g and z * v <= rem_f:
            rows[i][z] = v
            rec(idx + 1, rem_f - z * v, rem_g - v)
            v += 1
        rows[i][z] = 0

    rec(0, a - 1, m)
    return out


def enumerate_blueprint_matrices(a: int, m: int, k: int, j: int) -> set[BlueprintMatrix]:
    """All blueprint matrices with a rows, entry sum m, and duty columns for (k, j)."""
    if not 1 <= j < k:
        raise ValidationError(f"need 1 <= j < k, got k={k}, j={j}")
    duty = math.comb(k, j)
    if a > 6 or m > 5 or duty > 12:
        raise ValidationError("matrix enumeration guard exceeded (a <= 6, m <= 5, binom(k,j) <= 12)")
    if a < 1 or m < 0:
        raise ValidationError(f"invalid matrix parameters a={a}, m={m}")
    return set(_enumerate_matrices(a, m, duty))


class _Discard(Exception):
    """Internal: the current generator instance hit a discard rule."""


class _ChoiceCursor:
    def __init__(self, choices: Sequence[int]):
        self.choices = list(choices)
        self.pos = 0

    def pick(self, candidates: Sequence):
        if not candidates:
            raise _Discard
        if self.pos >= len(self.choices):
            raise ValidationError("choice sequence exhausted before the run completed")
        idx = self.choices[self.pos]
        self.pos += 1
        if not 0 <= idx < len(candidates):
            raise ValidationError(f"choice index {idx} out of range [0, {len(candidates)})")
        return candidates[idx]

    def exhausted(self) -> bool:
        return self.pos == len(self.choices)


def _validate_matrix_pair(red: BlueprintMatrix, blue: BlueprintMatrix, k: int, j: int) -> int:
    duty = math.comb(k, j)
    if red.ncols != duty + 1 or blue.ncols != duty + 1:
        raise ValidationError(f"matrices need {duty + 1} duty columns for k={k}, j={j}")
    if red.a != blue.a:
        raise ValidationError("matrix pair must share the row count")
    ell = red.a
    if matrix_weights(red)[0] != ell - 1 or matrix_weights(blue)[0] != ell - 1:
        raise ValidationError("matrix duty weights must equal row count minus one")
    return ell


def wrb_generate(
    red: BlueprintMatrix,
    blue: BlueprintMatrix,
    n: int,
    k: int,
    j: int,
    choices: Sequence[int],
) -> Optional[Triple]:
    """Deterministic replay of the two-phase triple generator.

    choices supplies every selection as an index into a colex-ordered
    candidate list: the initial j-set; each red edge containing the active
    member; each coloured j-subset of that edge; each blue edge containing
    the active member together with an earlier one. Returns None when a
    discard rule fires (duplicate red edge, duplicate white j-set, missing
    next active member, duplicate blue edge, or an empty candidate list);
    raises on an index out of range or a length mismatch.
    """
    if not 1 <= j < k <= n:
        raise ValidationError(f"need 1 <= j < k <= n, got n={n}, k={k}, j={j}")
    ell = _validate_matrix_pair(red, blue, k, j)
    all_jsets = list(iter_jsets(n, j))
    all_ksets = list(iter_jsets(n, k))
    cursor = _ChoiceCursor(choices)
    try:
        j0 = [cursor.pick(all_jsets)]
        j0set = {j0[0]}
        e1: list[JSet] = []
        e1set: set = set()
        for i in range(ell):
            if i >= len(j0):
                raise _Discard  # missing next active member
            active = frozenset(j0[i])
            for z in range(red.ncols):
                for _ in range(red.entries[i][z]):
                    cand = [e for e in all_ksets if active <= frozenset(e)]
                    e = cursor.pick(cand)
                    if e in e1set:
                        raise _Discard
                    e1.append(e)
                    e1set.add(e)
                    for _ in range(z):
                        js = cursor.pick(subsets_of(e, j))
                        if js in j0set:
                            raise _Discard
                        j0.append(js)
                        j0set.add(js)
        e2: list[JSet] = []
        e2set: set = set()
        for i in range(ell):
            active = frozenset(j0[i])
            earlier = [frozenset(x) for x in j0[:i]]
            for z in range(blue.ncols):
                for _ in range(blue.entries[i][z]):
                    cand = [
                        e
                        for e in all_ksets
                        if active <= frozenset(e) and any(x <= frozenset(e) for x in earlier)
                    ]
                    e = cursor.pick(cand)
                    if e in e2set:
                        raise _Discard
                    e2.append(e)
                    e2set.add(e)
    except _Discard:
        return None
    if not cursor.exhausted():
        raise ValidationError("unused trailing choices")
    ranks = frozenset(rank_jset(x, n) for x in j0)
    return Triple(ranks, frozenset(e1), frozenset(e2), j)


def _wr_outputs(n: int, k: int, j: int, ell: int, r: int) -> set[Tuple[Tuple[JSet, ...], frozenset]]:
    """Distinct (family, red edge set) pairs over every red matrix and every
    non-discarded run of the white/red phase."""
    duty = math.comb(k, j)
    all_jsets = list(iter_jsets(n, j))
    all_ksets = list(iter_jsets(n, k))
    results: set[Tuple[Tuple[JSet, ...], frozenset]] = set()

    for matrix in _enumerate_matrices(ell, r, duty):
        slot_lists = [
            [z for z in range(duty + 1) for _ in range(matrix.entries[i][z])] for i in range(ell)
        ]
        j0: list[JSet] = []
        j0set: set = set()
        e1: list[JSet] = []
        e1set: set = set()

        def run_step(i: int) -> None:
            if i == ell:
                results.add((tuple(sorted(j0, key=_colex)), frozenset(e1)))
                return
            if i >= len(j0):
                return
            active = frozenset(j0[i])
            slots = slot_lists[i]

            def run_slot(si: int) -> None:
                if si == len(slots):
                    run_step(i + 1)
                    return
                z = slots[si]
                for e in all_ksets:
                    if not active <= frozenset(e) or e in e1set:
                        continue
                    e1.append(e)
                    e1set.add(e)
                    run_claims(e, 0, si)
                    e1.pop()
                    e1set.discard(e)

            def run_claims(e: JSet, x: int, si: int) -> None:
                z = slots[si]
                if x == z:
                    run_slot(si + 1)
                    return
                for js in subsets_of(e, j):
                    if js in j0set:
                        continue
                    j0.append(js)
                    j0set.add(js)
                    run_claims(e, x + 1, si)
                    j0.pop()
                    j0set.discard(js)

            run_slot(0)

        for start in all_jsets:
            j0 = [start]
            j0set = {start}
            e1 = []
            e1set = set()
            run_step(0)
    return results


def enumerate_Q(n: int, k: int, j: int, ell: int, r: int, b: int) -> set[Triple]:
    """Every output of a non-discarded generator run over all matrix pairs.

    The blue phase constrains an edge only through the active member and one
    earlier member, never through its duty column, so its reachable edge
    sets are exactly the b-subsets of the k-sets containing at least two
    family members; the red side is enumerated by running the white/red
    phase over every red matrix. Equality with the literal
    choice-sequence union is exercised against an independent oracle in the
    test suite.
    """
    _census_guard(n, k, j, ell, r, b)
    duty = math.comb(k, j)
    out: set[Triple] = set()
    if ell - 1 > r * duty or ell - 1 > b * duty:
        return out  # no matrix has the required duty weight
    all_ksets = list(iter_jsets(n, k))
    for j0, e1 in _wr_outputs(n, k, j, ell, r):
        member_sets = [frozenset(x) for x in j0]
        ranks = frozenset(rank_jset(x, n) for x in j0)
        if b == 0:
            out.add(Triple(ranks, e1, frozenset(), j))
            continue
        twoplus = [
            e for e in all_ksets if sum(1 for ms in member_sets if ms <= frozenset(e)) >= 2
        ]
        for e2 in combinations(twoplus, b):
            out.add(Triple(ranks, e1, frozenset(e2), j))
    return out
