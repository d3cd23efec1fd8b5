"""Countable multiset families: canonical finite counts plus omega-repeated elements.

A family is a countable multiset considered up to index bijection, so only the
multiplicity of each element matters. Multiplicities live in N u {omega}; the
omega part records elements repeated countably infinitely often. All operations
keep families in a canonical sorted form so equality and hashing are structural.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

OMEGA = float("inf")

BRACKETING = "bracketing"
FLATTENING = "flattening"
UNCONSTRAINED = "unconstrained"

_SHAPES = (BRACKETING, FLATTENING, UNCONSTRAINED)


def is_omega(count) -> bool:
    return count == OMEGA


def count_mul(a, b):
    # 0 * omega is 0 here (an absent element stays absent), never NaN
    if a == 0 or b == 0:
        return 0
    return a * b


def canonical_key(e):
    """Sort key giving a deterministic total order on same-kind elements.

    Frozensets order by (size, sorted member keys), tuples componentwise;
    objects may supply their own ``sort_key`` method.
    """
    sk = getattr(e, "sort_key", None)
    if callable(sk):
        return sk()
    if isinstance(e, frozenset):
        return (len(e), tuple(sorted(canonical_key(x) for x in e)))
    if isinstance(e, tuple):
        return tuple(canonical_key(x) for x in e)
    if isinstance(e, (int, float, Fraction, str)):
        return e
    raise TypeError(f"no canonical order for {e!r} of type {type(e).__name__}")


@dataclass(frozen=True)
class Family:
    """Canonical countable multiset: sorted (element, count) pairs + omega part."""

    finite: tuple = ()
    omega: tuple = ()

    @staticmethod
    def of(*elements) -> "Family":
        return canonicalize((e, 1) for e in elements)

    @staticmethod
    def from_counts(pairs, omega=()) -> "Family":
        raw = list(pairs) + [(e, OMEGA) for e in omega]
        return canonicalize(raw)

    def count(self, e):
        for x in self.omega:
            if x == e:
                return OMEGA
        for x, c in self.finite:
            if x == e:
                return c
        return 0

    def support(self) -> tuple:
        return tuple(e for e, _ in self.finite) + self.omega

    def items(self) -> tuple:
        """(element, count) pairs; omega-part elements carry count OMEGA."""
        return self.finite + tuple((e, OMEGA) for e in self.omega)

    @property
    def finite_total(self) -> int:
        return sum(c for _, c in self.finite)

    @property
    def size_measure(self) -> int:
        # finite occurrences plus one per omega-repeated element
        return self.finite_total + len(self.omega)

    @property
    def is_finite(self) -> bool:
        return not self.omega

    @property
    def is_empty(self) -> bool:
        return not self.finite and not self.omega

    def without(self, e) -> "Family":
        """Drop every occurrence of ``e`` (finite and omega)."""
        return canonicalize((x, c) for x, c in self.items() if x != e)

    def map(self, h) -> "Family":
        return canonicalize((h(x), c) for x, c in self.items())

    def pad(self, e, k) -> "Family":
        return disjoint_union(self, canonicalize([(e, k)]))

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.finite, self.omega))
            object.__setattr__(self, "_hash", h)
        return h

    def sort_key(self):
        key = self.__dict__.get("_sort_key")
        if key is None:
            # lexicographic on the flattened sorted word, so {+,+,-} < {+,-,-}
            word = tuple(k for e, c in self.finite
                         for k in (canonical_key(e),) * c)
            key = (
                self.finite_total,
                len(self.omega),
                word,
                tuple(canonical_key(e) for e in self.omega),
            )
            object.__setattr__(self, "_sort_key", key)
        return key

    def __repr__(self):
        fin = ", ".join(f"{e!r}:{c}" for e, c in self.finite)
        if self.omega:
            om = ", ".join(repr(e) for e in self.omega)
            return f"Family({{{fin}}}, omega={{{om}}})"
        return f"Family({{{fin}}})"


EMPTY = Family()


def canonicalize(raw) -> Family:
    """Canonical family from (element, count) pairs; counts in N u {OMEGA}.

    Zero counts are dropped, repeated entries accumulate, and an omega count
    absorbs any finite count of the same element.
    """
    counts: dict = {}
    om: dict = {}
    for e, c in raw:
        if is_omega(c):
            om[e] = True
            continue
        if isinstance(c, float):
            if not c.is_integer():
                raise ValueError(f"non-integer count {c!r}")
            c = int(c)
        if not isinstance(c, int) or isinstance(c, bool):
            raise ValueError(f"bad count {c!r}")
        if c < 0:
            raise ValueError(f"negative count {c!r}")
        if c == 0:
            continue
        counts[e] = counts.get(e, 0) + c
    for e in om:
        counts.pop(e, None)
    fin = tuple(sorted(counts.items(), key=lambda p: canonical_key(p[0])))
    ome = tuple(sorted(om, key=canonical_key))
    return Family(fin, ome)


def disjoint_union(*fams: Family) -> Family:
    return canonicalize(itertools.chain.from_iterable(f.items() for f in fams))


def is_subfamily(sub: Family, sup: Family) -> bool:
    """count_sub(e) <= count_sup(e) for all e; omega <= omega, omega > finite."""
    return all(sub.count(e) <= sup.count(e) for e in sub.support())


def intersect(a: Family, b: Family) -> Family:
    """Pointwise minimum of counts (both arguments subfamilies of a common parent)."""
    support = {e: None for e in a.support() + b.support()}
    return canonicalize((e, min(a.count(e), b.count(e))) for e in support)


def map_family(h, fam: Family) -> Family:
    """Image family under h; counts of merged preimages add, omega absorbing."""
    return fam.map(h)


def subfamilies(fam: Family, omega_finite_cap: int = 2) -> list:
    """All subfamilies, sorted by (size, omega count, element order).

    Taking finitely many copies of an omega element is capped at
    ``omega_finite_cap`` to keep the list finite.
    """
    axes = []
    for e, c in fam.finite:
        axes.append([(e, t) for t in range(c + 1)])
    for e in fam.omega:
        takes = [(e, t) for t in range(omega_finite_cap + 1)] + [(e, OMEGA)]
        axes.append(takes)
    out = []
    for combo in itertools.product(*axes) if axes else [()]:
        out.append(canonicalize(combo))
    out = list(dict.fromkeys(out))
    out.sort(key=Family.sort_key)
    return out


def families_within(pool, max_size: int, max_omega: int, omega_pool=None) -> list:
    """Every family with finite part drawn from ``pool`` (total size <= max_size)
    and omega part a subset of ``omega_pool`` (at most ``max_omega`` elements).

    Deterministic order: (finite size, omega count, element order).
    """
    pool = sorted(dict.fromkeys(pool), key=canonical_key)
    om_pool = pool if omega_pool is None else sorted(dict.fromkeys(omega_pool), key=canonical_key)
    fams = []
    for k in range(max_size + 1):
        for combo in itertools.combinations_with_replacement(pool, k):
            pairs = [(e, 1) for e in combo]
            for j in range(max_omega + 1):
                for osub in itertools.combinations(om_pool, j):
                    fams.append(canonicalize(pairs + [(e, OMEGA) for e in osub]))
    fams = list(dict.fromkeys(fams))
    fams.sort(key=Family.sort_key)
    return fams


@dataclass(frozen=True)
class Caps:
    """Bounds on partition search.

    ``block_count`` caps the number of blocks, where an omega-repeated block
    entry counts once; ``block_size`` caps each block's size measure;
    ``omega_splits`` caps how many entries may supply omega to one element.
    """

    block_count: int = 4
    block_size: int = 4
    omega_splits: int = 2


@dataclass(frozen=True)
class Partition:
    """Multiset of blocks: ((block family, multiplicity), ...), multiplicity in
    N>=1 u {OMEGA}. Recombining the blocks reproduces the parent family."""

    blocks: tuple
    kind: str

    def recombine(self) -> Family:
        return canonicalize(
            (e, count_mul(c, m)) for b, m in self.blocks for e, c in b.items()
        )

    @property
    def n_blocks(self):
        return sum(m for _, m in self.blocks) if self.blocks else 0

    def __repr__(self):
        inner = ", ".join(f"{b!r}x{m}" for b, m in self.blocks)
        return f"Partition[{inner}]"


class PartitionStream:
    """Iterable over the partitions of a family, one shape at a time.

    Shapes: ``bracketing`` (all blocks finite, block multiplicities may be
    omega), ``flattening`` (finitely many blocks in total, blocks may be
    infinite), ``unconstrained`` (both relaxations; used for the strong laws).

    ``truncated`` reports whether the caps clipped the search space; it is
    never silently folded into the output and should be read after iterating.
    """

    def __init__(self, fam: Family, shape: str, caps: Caps, block_filter=None):
        if shape not in _SHAPES:
            raise ValueError(f"unknown partition shape {shape!r}")
        self.family = fam
        self.shape = shape
        self.caps = caps
        self.block_filter = block_filter
        self.truncated = self._static_truncation()

    def _static_truncation(self) -> bool:
        fam, caps = self.family, self.caps
        if fam.finite_total > caps.block_size:
            return True  # the one-block partition is clipped
        if fam.finite_total > caps.block_count:
            return True  # the all-singletons partition is clipped
        if fam.omega:
            # omega splits and finite takes from omega elements are capped
            return True
        return False

    def __iter__(self):
        return self._generate()

    # -- internals ---------------------------------------------------------

    def _block_universe(self):
        fam, caps = self.family, self.caps
        allow_inf_blocks = self.shape != BRACKETING
        axes = []
        for e, c in fam.finite:
            axes.append([(e, t) for t in range(min(c, caps.block_size) + 1)])
        for e in fam.omega:
            takes = [(e, t) for t in range(caps.block_size + 1)]
            if allow_inf_blocks:
                takes.append((e, OMEGA))
            axes.append(takes)
        blocks = []
        for combo in itertools.product(*axes) if axes else [()]:
            size = sum(1 if is_omega(t) else t for _, t in combo)
            if 1 <= size <= caps.block_size:
                blocks.append(canonicalize(combo))
        blocks = list(dict.fromkeys(blocks))
        if self.block_filter is not None:
            blocks = [b for b in blocks if self.block_filter(b)]
        blocks.sort(key=Family.sort_key, reverse=True)
        return blocks

    def _generate(self):
        fam = self.family
        universe = self._block_universe()
        fin_pos = {e: i for i, (e, _) in enumerate(fam.finite)}
        om_pos = {e: i for i, e in enumerate(fam.omega)}
        compiled = []
        for block in universe:
            touch = []   # (finite element index, take)
            om_fin = []  # omega elements taken finitely
            for e, t in block.finite:
                i = fin_pos.get(e)
                if i is None:
                    om_fin.append(om_pos[e])
                else:
                    touch.append((i, t))
            om_take = tuple(om_pos[e] for e in block.omega)
            compiled.append((block, tuple(touch), tuple(om_fin), om_take))
        rem = [c for _, c in fam.finite]
        osup = [0] * len(fam.omega)
        need = (1 << len(fam.omega)) - 1
        yield from self._rec(compiled, 0, rem, osup, need, [], 0)

    def _rec(self, compiled, start, rem, osup, need, entries, weight):
        # ``weight`` counts blocks, with an omega-multiplicity entry as one;
        # rem/osup/entries are mutated and restored around each recursion
        caps = self.caps
        complete = need == 0 and not any(rem)
        if complete:
            yield Partition(tuple(entries), self.shape)
        room = caps.block_count - weight
        if room <= 0:
            if not complete:
                self.truncated = True
            return
        allow_inf_mult = self.shape != FLATTENING
        for j in range(start, len(compiled)):
            block, touch, om_fin, om_take = compiled[j]
            fits = True
            for i, t in touch:
                if t > rem[i]:
                    fits = False
                    break
            if not fits:
                continue
            blocked = False
            for i in om_take:
                if osup[i] >= caps.omega_splits:
                    self.truncated = True
                    blocked = True
                    break
            if blocked:
                continue
            if touch:
                mmax = min(rem[i] // t for i, t in touch)
                if mmax > room:
                    self.truncated = True
                    mmax = room
                finite_mults = range(1, mmax + 1)
                omega_mult_ok = False
            else:
                finite_mults = range(1, room + 1)
                omega_mult_ok = allow_inf_mult
            for m in finite_mults:
                for i, t in touch:
                    rem[i] -= m * t
                need2 = need
                for i in om_take:
                    osup[i] += 1
                    need2 &= ~(1 << i)
                entries.append((block, m))
                yield from self._rec(compiled, j + 1, rem, osup, need2,
                                     entries, weight + m)
                entries.pop()
                for i in om_take:
                    osup[i] -= 1
                for i, t in touch:
                    rem[i] += m * t
            if omega_mult_ok:
                suppliers = set(om_take) | set(om_fin)
                if all(osup[i] < caps.omega_splits for i in suppliers):
                    need2 = need
                    for i in suppliers:
                        osup[i] += 1
                        need2 &= ~(1 << i)
                    entries.append((block, OMEGA))
                    yield from self._rec(compiled, j + 1, rem, osup, need2,
                                         entries, weight + 1)
                    entries.pop()
                    for i in suppliers:
                        osup[i] -= 1
                elif suppliers:
                    self.truncated = True


def enumerate_partitions(fam: Family, shape: str, caps: Caps = Caps(),
                         block_filter=None) -> PartitionStream:
    """Stream of the partitions of ``fam`` with the given shape, within caps.

    Each partition is produced exactly once up to block reordering; blocks are
    nonempty. Cap clipping is reported on the stream's ``truncated`` flag.
    ``block_filter`` restricts blocks (e.g. to summable ones, when the consumer
    only quantifies over such partitions); filtering prunes the search tree.
    """
    return PartitionStream(fam, shape, caps, block_filter)
