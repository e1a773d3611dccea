"""Disjoint-transitive representations: construction and bounded search.

A representation witness for a semigroup h consists of a ground set X, a
partition of the pair set of X whose blocks generate a closure isomorphic
to h, and the isomorphism itself; the zero of h, when present, must land
on the empty relation.  Constructive witnesses come from the class
models; ``search_d_transitive`` sweeps all candidate partitions at
bounded ground size and either finds the canonically first witness or
certifies exhaustion of the declared bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _accel
from .classify import canonical_model
from .errors import GuardExceededError
from .generation import GeneratedSemigroup, generate
from .naive import closure_pairs, compose_pairs
from .partitions import LabeledPartition, Partition, ProductKind
from .relations import GroundSet
from .semigroups import AbstractSemigroup, find_isomorphism


@dataclass(frozen=True)
class DTransitiveWitness:
    """A verified d-transitive monomorphism, spelled out concretely.

    ``iso[x]`` is the closure element index that input element x maps to;
    ``generator_map[b]`` is the input element whose image is block b.
    """

    ground: GroundSet
    blocks: LabeledPartition
    closure: GeneratedSemigroup
    iso: tuple[int, ...]
    generator_map: tuple[int, ...]


@dataclass(frozen=True)
class SearchBounds:
    max_ground: int
    block_counts: tuple[int, ...]


@dataclass(frozen=True)
class SearchReport:
    witness: DTransitiveWitness | None
    candidates_examined: int
    bounds: SearchBounds

    @property
    def found(self) -> bool:
        return self.witness is not None


# ---------------------------------------------------------------------------
# constructive witnesses
# ---------------------------------------------------------------------------

def _witness_from_blocks(h: AbstractSemigroup, blocks: LabeledPartition,
                         iso: tuple[int, ...],
                         closure: GeneratedSemigroup) -> DTransitiveWitness:
    inverse = [0] * h.size
    for x, y in enumerate(iso):
        inverse[y] = x
    generator_map = tuple(inverse[closure.generator_indices[b]]
                          for b in range(blocks.block_count))
    witness = DTransitiveWitness(blocks.ground, blocks, closure, iso,
                                 generator_map)
    if not verify_witness(h, witness):
        raise RuntimeError("constructed witness failed verification")
    return witness


def represent_right_zero(h: AbstractSemigroup) -> DTransitiveWitness:
    """Witness for a right-zero semigroup: one column strip per element."""
    return _represent_one_sided(h, right=True)


def represent_left_zero(h: AbstractSemigroup) -> DTransitiveWitness:
    """Witness for a left-zero semigroup: one row strip per element."""
    return _represent_one_sided(h, right=False)


def _represent_one_sided(h: AbstractSemigroup, right: bool) -> DTransitiveWitness:
    m = h.size
    t = h.table
    for x in range(m):
        for y in range(m):
            expected = y if right else x
            if t[x][y] != expected:
                side = "right" if right else "left"
                raise ValueError(f"not a {side} zero semigroup")
    ground = GroundSet(m, labels=h.names)
    pair_ground = GroundSet(m * m)
    if right:
        base = Partition(pair_ground, [idx % m for idx in range(m * m)])
    else:
        base = Partition(pair_ground, [idx // m for idx in range(m * m)])
    blocks = LabeledPartition(ground, base, labels=h.names)
    closure = generate(blocks.block_relations(), labels=h.names)
    iso = tuple(range(m))
    return _witness_from_blocks(h, blocks, iso, closure)


def represent_member(h: AbstractSemigroup, kind: ProductKind) -> DTransitiveWitness:
    """Witness for a member of one of the four product classes.

    The canonical model isomorphism is composed with the identity
    embedding of the closure into the relation semigroup; the generator
    set is the model's product partition.
    """
    model = canonical_model(h, kind)
    closure = model.semigroup
    blocks = _blocks_of(closure.ground, model.kind)
    inverse = [0] * h.size
    for i, x in enumerate(model.to_input):
        inverse[x] = i
    iso = tuple(inverse)
    return _witness_from_blocks(h, blocks, iso, closure)


def _blocks_of(ground: GroundSet, kind: ProductKind) -> LabeledPartition:
    from .partitions import product

    return product(Partition.finest(ground), kind)


# ---------------------------------------------------------------------------
# admissible generator counts
# ---------------------------------------------------------------------------

def _closes_to_all(h: AbstractSemigroup, subset) -> bool:
    m = h.size
    closure = set(subset)
    frontier = list(closure)
    while frontier:
        fresh = []
        for a in list(closure):
            for b in frontier:
                for p in (h.table[a][b], h.table[b][a]):
                    if p not in closure:
                        closure.add(p)
                        fresh.append(p)
        frontier = fresh
    return len(closure) == m


def admissible_generator_counts(h: AbstractSemigroup) -> tuple[int, ...]:
    """Sizes of zero-free generating subsets of h.

    The zero can never be a generator image (its image must be the empty
    relation, and blocks are nonempty), so candidate block counts are the
    sizes of generating subsets avoiding the zero.  Supersets of a
    generating set generate, so the result is a contiguous range; it is
    empty when no zero-free subset generates (for instance when the zero
    is not a product of nonzero elements).
    """
    m = h.size
    if m > 16:
        raise GuardExceededError(
            "generator-count enumeration is limited to 16 elements; pass "
            "block_counts explicitly")
    zero = h.zero()
    nonzero = [i for i in range(m) if i != zero]
    if not _closes_to_all(h, nonzero):
        return ()
    for s in range(1, len(nonzero) + 1):
        if any(_closes_to_all(h, c) for c in combinations(nonzero, s)):
            return tuple(range(s, len(nonzero) + 1))
    return ()


def _stirling2(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    row = [1] + [0] * k
    for i in range(1, n + 1):
        new = [0] * (k + 1)
        for j in range(1, min(i, k) + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]


def count_candidates(max_ground: int, block_counts) -> int:
    """Exact number of candidate partitions a search sweep will examine."""
    total = 0
    for n in range(1, max_ground + 1):
        m2 = n * n
        for k in block_counts:
            if k <= m2:
                total += _stirling2(m2, k)
    return total


# ---------------------------------------------------------------------------
# the bounded search
# ---------------------------------------------------------------------------

def search_d_transitive(h: AbstractSemigroup, max_ground: int = 4,
                        block_counts=None,
                        max_candidates: int = 20_000_000,
                        batch_size: int = 65536) -> SearchReport:
    """Find a d-transitive witness at ground size up to ``max_ground``.

    Candidate partitions of the pair set are enumerated in restricted
    growth order with block counts restricted to the sizes of zero-free
    generating subsets of h (any witness partition must have such a block
    count, so the restriction loses nothing).  Survivors of the closure
    and invariant prefilter get an exact isomorphism check; the first
    witness in canonical order is returned.  An exhausted report lists the
    exact bounds swept.
    """
    if max_ground < 1:
        raise ValueError("max_ground must be >= 1")
    m = h.size
    if block_counts is None:
        counts = admissible_generator_counts(h)
    else:
        counts = tuple(sorted(set(int(k) for k in block_counts)))
        if any(k < 1 for k in counts):
            raise ValueError("block counts must be positive")
    bounds = SearchBounds(max_ground, counts)
    if not counts:
        return SearchReport(None, 0, bounds)
    if max_ground > _accel.MAX_PACKED_GROUND:
        raise GuardExceededError(
            f"search supports ground sizes up to {_accel.MAX_PACKED_GROUND}")
    estimate = count_candidates(max_ground, counts)
    if estimate > max_candidates:
        raise GuardExceededError(
            f"{estimate} candidate partitions exceed the guard of "
            f"{max_candidates}; lower the bounds or raise max_candidates")

    zero = h.zero()
    need_empty = 1 if zero is not None else 0
    target_idem = len(h.idempotents())
    target_has_identity = 1 if h.identity() is not None else 0

    examined = 0
    for n in range(1, max_ground + 1):
        m2 = n * n
        counts_n = [k for k in counts if k <= m2]
        if not counts_n:
            continue
        maxk = max(counts_n)
        admissible_mask = 0
        for k in counts_n:
            admissible_mask |= 1 << k
        for rows in _accel.rgs_batches(m2, maxk, batch_size):
            flags = np.empty(rows.shape[0], dtype=np.uint8)
            batch_examined = int(_accel.scan_candidates(
                rows, n, admissible_mask, m, need_empty, target_idem,
                target_has_identity, flags))
            survivors = np.nonzero(flags == 2)[0]
            hit = None
            for si in survivors:
                witness = _confirm_candidate(h, n, rows[si])
                if witness is not None:
                    hit = (int(si), witness)
                    break
            if hit is not None:
                si, witness = hit
                examined += int(np.count_nonzero(flags[:si + 1] >= 1))
                return SearchReport(witness, examined, bounds)
            examined += batch_examined
    return SearchReport(None, examined, bounds)


def _confirm_candidate(h: AbstractSemigroup, n: int,
                       assignment) -> DTransitiveWitness | None:
    ground = GroundSet(n)
    base = Partition(GroundSet(n * n), [int(v) for v in assignment])
    blocks = LabeledPartition(ground, base)
    closure = generate(blocks.block_relations())
    iso = find_isomorphism(h, closure.to_abstract())
    if iso is None:
        return None
    inverse = [0] * h.size
    for x, y in enumerate(iso):
        inverse[y] = x
    labels = tuple(h.names[inverse[closure.generator_indices[b]]]
                   for b in range(blocks.block_count))
    blocks = LabeledPartition(ground, base, labels)
    return _witness_from_blocks(h, blocks, iso, closure)


# ---------------------------------------------------------------------------
# independent verification
# ---------------------------------------------------------------------------

def verify_witness(h: AbstractSemigroup, w: DTransitiveWitness) -> bool:
    """Recheck a witness from scratch on the set-of-pairs route.

    Confirms that the blocks partition the pair set, that the claimed map
    is a bijective homomorphism onto the closure of the blocks, that the
    zero (if any) lands on the empty relation, and that the generator
    preimages generate h.
    """
    m = h.size
    n = w.ground.size
    assignment = w.blocks.base.assignment
    if len(assignment) != n * n or len(w.iso) != m:
        return False
    k = w.blocks.block_count
    if len(w.generator_map) != k:
        return False
    block_pairs = [set() for _ in range(k)]
    for idx, b in enumerate(assignment):
        block_pairs[b].add((idx // n, idx % n))
    if any(not pairs for pairs in block_pairs):
        return False
    if sum(len(pairs) for pairs in block_pairs) != n * n:
        return False

    closed = closure_pairs([frozenset(p) for p in block_pairs], cap=m)
    if closed is None:
        return False
    elements, _ = closed
    if len(elements) != m:
        return False

    if len(w.closure) != m:
        return False
    image = [frozenset(w.closure.elements[w.iso[x]].pairs()) for x in range(m)]
    if len(set(image)) != m or set(image) != set(elements):
        return False
    for x in range(m):
        for y in range(m):
            if compose_pairs(image[x], image[y]) != image[h.table[x][y]]:
                return False
    zero = h.zero()
    if zero is not None and image[zero] != frozenset():
        return False
    for b in range(k):
        if image[w.generator_map[b]] != frozenset(block_pairs[b]):
            return False
    gen_set = set(w.generator_map)
    closure_idx = set(gen_set)
    frontier = list(closure_idx)
    while frontier:
        fresh = []
        for a in list(closure_idx):
            for b in frontier:
                for p in (h.table[a][b], h.table[b][a]):
                    if p not in closure_idx:
                        closure_idx.add(p)
                        fresh.append(p)
        frontier = fresh
    return len(closure_idx) == m
