"""The partition-sum relation on families, its zig-zag equivalence closure,
and the induced quotient instances.

One step of the relation replaces a family by the family of block sums of one
of its partitions into summable blocks (absorbing any number of extra zeros,
which realizes partitions with empty blocks). The equivalence closure is
explored inside a cap-bounded universe of families; all verdicts are relative
to those caps and say so.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .family import (
    EMPTY,
    OMEGA,
    UNCONSTRAINED,
    Caps,
    Family,
    canonicalize,
    count_mul,
    enumerate_partitions,
    families_within,
    is_omega,
    map_family,
)
from .core import (
    Budget,
    ClassElement,
    ConstructionError,
    Defined,
    FiniteCarrier,
    Hom,
    QuotientInstance,
    SigmaInstance,
    UNDEFINED,
    check_hom,
    partition_sums,
)


@dataclass(frozen=True)
class CongruenceCaps:
    """Bounds for congruence exploration: the family universe (size and omega
    entries), the partition caps, and the zig-zag chain depth."""

    max_family_size: int = 4
    max_omega_elems: int = 1
    block_count: int = 4
    block_size: int = 4
    omega_splits: int = 2
    depth: int = 4

    @property
    def caps(self) -> Caps:
        return Caps(self.block_count, self.block_size, self.omega_splits)


@dataclass(frozen=True)
class LeadsTo:
    holds: bool
    witness: object = None  # the partition, when holds
    truncated: bool = False

    def __bool__(self):
        return self.holds


def _matches_up_to_zeros(sums: Family, target: Family, zero) -> bool:
    """target == sums plus any number (possibly omega) of extra zeros."""
    for e in sums.support() + target.support():
        if e == zero:
            continue
        if sums.count(e) != target.count(e):
            return False
    have, want = sums.count(zero), target.count(zero)
    if is_omega(have):
        return is_omega(want)
    return want >= have


def leads_to(inst: SigmaInstance, a: Family, b: Family,
             caps: CongruenceCaps = CongruenceCaps()) -> LeadsTo:
    """One-step relation: some partition of ``a`` into summable blocks has
    block sums forming exactly ``b`` (up to extra zeros, i.e. empty blocks)."""
    stream = enumerate_partitions(a, UNCONSTRAINED, caps.caps,
                                  block_filter=lambda blk: inst.sum(blk).defined)
    for part in stream:
        sums = partition_sums(inst, part)
        if sums is None:
            continue
        if _matches_up_to_zeros(sums, b, inst.zero):
            return LeadsTo(True, part, stream.truncated)
    return LeadsTo(False, None, stream.truncated)


@dataclass
class CongruenceVerdict:
    related: bool
    chain: list = field(default_factory=list)  # [(family, step), ...]; step
    # is "forward", "backward" or None on the last entry
    depth_exhausted: bool = False
    truncated: bool = False

    def to_payload(self, fmt=repr) -> dict:
        return {
            "related": self.related,
            "chain": [{"family": fmt(f), "step": s} for f, s in self.chain],
            "depth_exhausted": self.depth_exhausted,
            "truncated": self.truncated,
        }


class CongruenceGraph:
    """The one-step relation restricted to a bounded universe of families.

    Nodes are every family over the element pool within the size caps; edges
    are one-step moves. Undirected reachability is the cap-relative rendering
    of the zig-zag equivalence closure.
    """

    def __init__(self, inst: SigmaInstance, caps: CongruenceCaps = CongruenceCaps(),
                 pool=None, extra_elements=()):
        self.inst = inst
        self.caps = caps
        if pool is None:
            pool = inst.samples()
        pool = list(pool) + list(extra_elements) + [inst.zero]
        self.pool = sorted(dict.fromkeys(pool), key=lambda e: Family.of(e).sort_key())
        self.universe = families_within(self.pool, caps.max_family_size,
                                        caps.max_omega_elems)
        self._uset = set(self.universe)
        self.truncated = False
        self._succ: dict = {}
        self._build()

    def _zero_paddings(self, fam: Family):
        yield fam
        zero = self.inst.zero
        if not is_omega(fam.count(zero)):
            room = self.caps.max_family_size - fam.finite_total
            for k in range(1, room + 1):
                yield fam.pad(zero, k)
            if len(fam.omega) < self.caps.max_omega_elems:
                yield fam.pad(zero, OMEGA)

    def _build(self):
        summable = lambda blk: self.inst.sum(blk).defined
        for fam in self.universe:
            targets = set()
            stream = enumerate_partitions(fam, UNCONSTRAINED, self.caps.caps,
                                          block_filter=summable)
            for part in stream:
                sums = partition_sums(self.inst, part)
                if sums is None:
                    continue
                for padded in self._zero_paddings(sums):
                    if padded in self._uset:
                        targets.add(padded)
                    else:
                        self.truncated = True
            self.truncated |= stream.truncated
            self._succ[fam] = targets
        self._undirected: dict = {fam: set() for fam in self.universe}
        for fam, targets in self._succ.items():
            for t in targets:
                self._undirected[fam].add(t)
                self._undirected[t].add(fam)

    def successors(self, fam: Family) -> set:
        return self._succ[fam]

    def related(self, a: Family, b: Family, depth: int) -> CongruenceVerdict:
        if a not in self._uset or b not in self._uset:
            raise ConstructionError("family outside the explored universe")
        if a == b:
            return CongruenceVerdict(True, [(a, None)], truncated=self.truncated)
        parent = {a: None}
        frontier = [a]
        exhausted = False
        for _ in range(depth):
            new = []
            for fam in frontier:
                for nxt in sorted(self._undirected[fam], key=Family.sort_key):
                    if nxt in parent:
                        continue
                    parent[nxt] = fam
                    if nxt == b:
                        return self._verdict(parent, a, b)
                    new.append(nxt)
            frontier = new
            if not frontier:
                break
        else:
            exhausted = bool(frontier)
        return CongruenceVerdict(False, [], depth_exhausted=exhausted,
                                 truncated=self.truncated)

    def _verdict(self, parent, a, b) -> CongruenceVerdict:
        path = [b]
        while path[-1] != a:
            path.append(parent[path[-1]])
        path.reverse()
        chain = []
        for cur, nxt in zip(path, path[1:]):
            step = "forward" if nxt in self._succ[cur] else "backward"
            chain.append((cur, step))
        chain.append((b, None))
        return CongruenceVerdict(True, chain, truncated=self.truncated)

    def components(self) -> list:
        """Connected components (sorted, deterministic) of the undirected graph."""
        seen = set()
        comps = []
        for fam in self.universe:
            if fam in seen:
                continue
            comp = []
            stack = [fam]
            seen.add(fam)
            while stack:
                cur = stack.pop()
                comp.append(cur)
                for nxt in self._undirected[cur]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
            comp.sort(key=Family.sort_key)
            comps.append(comp)
        comps.sort(key=lambda c: c[0].sort_key())
        return comps


def equivalent(inst: SigmaInstance, a: Family, b: Family, depth: int = 4,
               caps: CongruenceCaps = CongruenceCaps(),
               graph: CongruenceGraph | None = None) -> CongruenceVerdict:
    """Are two families joined by a zig-zag chain of one-step moves of length
    at most ``depth``, inside the cap-bounded universe?"""
    if graph is None:
        extra = [e for f in (a, b) for e in f.support()]
        graph = CongruenceGraph(inst, caps, extra_elements=extra)
    return graph.related(a, b, depth)


def free_strong_quotient(weak: SigmaInstance, strong: SigmaInstance, f: Hom,
                         caps: CongruenceCaps = CongruenceCaps(), *,
                         name=None) -> QuotientInstance:
    """Quotient of the cap-bounded family universe by the zig-zag closure,
    restricted to classes whose image under ``f`` is summable in the strong
    target; a class family sums to the class of the disjoint union of
    representatives whenever that class is again in the carrier.

    For several (target, hom) pairs build one quotient per pair and combine
    with ``intersect_instances``; the class elements coincide across quotients
    of the same source at the same caps, so the carriers intersect cleanly.
    The result is a lower approximation of the free strong structure, and all
    of its verdicts are relative to the caps.
    """
    if not isinstance(f, Hom) or f.verified_budget is None:
        raise ConstructionError("f must be a verified hom")
    if f.source is not weak or f.target is not strong:
        raise ConstructionError("f must map the weak instance to the strong one")
    if strong.flavor != "strong":
        raise ConstructionError("target instance is not declared strong")

    graph = CongruenceGraph(weak, caps)
    class_of_family: dict = {}
    classes = []
    admitted = []
    for comp in graph.components():
        rep = comp[0]
        cls = ClassElement(rep)
        image_summable = strong.sum(map_family(f.fn, rep)).defined
        for fam in comp:
            # image summability is constant on a component: every step is a
            # genuine one-step move, which strong targets respect
            if strong.sum(map_family(f.fn, fam)).defined != image_summable:
                raise ConstructionError(
                    "component mixes summable and unsummable images")
            class_of_family[fam] = cls
        classes.append(cls)
        if image_summable:
            admitted.append(cls)
    admitted_set = frozenset(admitted)

    def class_of(fam: Family):
        return class_of_family.get(fam)

    def rule(fam_of_classes: Family):
        union = canonicalize(
            (e, count_mul(ce, c))
            for cls, c in fam_of_classes.items()
            for e, ce in cls.rep.items()
        )
        cls = class_of_family.get(union)
        if cls is None or cls not in admitted_set:
            return UNDEFINED
        return Defined(cls)

    inst = QuotientInstance(
        name or f"free_strong({weak.name})",
        FiniteCarrier(admitted), class_of_family[EMPTY], rule,
        class_of=class_of, classes=classes, flavor="strong",
    )
    inst.base = weak
    inst.graph = graph
    inst.congruence_caps = caps
    return inst


def intersect_instances(instances, *, name=None) -> SigmaInstance:
    """Pointwise intersection: a family sums to x exactly when every instance
    agrees on Defined(x). Carriers are intersected; zeros must coincide."""
    instances = list(instances)
    if not instances:
        raise ConstructionError("need at least one instance")
    first = instances[0]
    if any(i.zero != first.zero for i in instances):
        raise ConstructionError("carrier mismatch: zeros differ")
    if len(instances) == 1:
        return first

    if all(i.carrier.is_finite for i in instances):
        common = [e for e in first.carrier.elements
                  if all(e in i.carrier for i in instances[1:])]
        carrier = FiniteCarrier(common)
    else:
        carrier = SymbolicCarrierIntersection(instances)

    def rule(fam: Family):
        results = [i.sum(fam) for i in instances]
        head = results[0]
        if head.defined and all(r == head for r in results[1:]):
            return head
        return UNDEFINED

    flavor = "strong" if all(i.flavor == "strong" for i in instances) else "weak"
    return SigmaInstance(name or "&".join(i.name for i in instances),
                         carrier, first.zero, rule, flavor=flavor,
                         codec=first.codec)


class SymbolicCarrierIntersection:
    is_finite = False

    def __init__(self, instances):
        self.instances = instances
        self.samples_pool = tuple(
            e for e in instances[0].samples()
            if all(e in i.carrier for i in instances[1:])
        )

    def __contains__(self, e):
        return all(e in i.carrier for i in self.instances)

    def sample(self):
        return self.samples_pool


@dataclass(frozen=True)
class Factorization:
    """Outcome of factoring a hom into a strong instance through the quotient:
    the unit (x -> class of {x}), the extension on classes, and whether the
    triangle commutes with both maps verified."""

    quotient: QuotientInstance
    unit: Hom
    extension: Hom
    commutes: bool


def factorize(weak: SigmaInstance, strong: SigmaInstance, f: Hom,
              caps: CongruenceCaps = CongruenceCaps(),
              budget: Budget | None = None) -> Factorization:
    """Build the quotient along f and factor f through it.

    The unit sends x to the class of the singleton family {x}; the extension
    sends a class to the target sum of the image of its representative.
    ``commutes`` holds when f equals extension-after-unit pointwise on the
    samples and both maps pass check_hom at the budget.
    """
    quotient = free_strong_quotient(weak, strong, f, caps)
    if budget is None:
        budget = Budget(
            max_finite_size=min(caps.max_family_size, caps.block_size),
            max_omega_elems=caps.max_omega_elems,
            block_count=caps.block_count,
            block_size=caps.block_size,
            omega_splits=caps.omega_splits,
            trials=0,
        )

    def unit_fn(x):
        cls = quotient.class_of(Family.of(x))
        if cls is None:
            raise ConstructionError(f"singleton of {x!r} is outside the universe")
        return cls

    def ext_fn(cls):
        return strong.sum(map_family(f.fn, cls.rep)).value

    unit_ok = check_hom(unit_fn, weak, quotient, budget)
    ext_ok = check_hom(ext_fn, quotient, strong, budget)
    pointwise = all(f(x) == ext_fn(unit_fn(x)) for x in weak.samples())
    commutes = unit_ok.ok and ext_ok.ok and pointwise
    unit = Hom(weak, quotient, unit_fn, "unit",
               budget if unit_ok.ok else None)
    extension = Hom(quotient, strong, ext_fn, "extension",
                    budget if ext_ok.ok else None)
    return Factorization(quotient, unit, extension, commutes)
