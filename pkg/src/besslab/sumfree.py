"""Cyclic-difference equation families over tangent sets and solution-free
set constructors (Behrend sphere, base-digit, shift-intersection, greedy).

`verify` is the single source of truth: every constructor re-checks its own
output against the claimed equations before returning, so a theorem failing
at desk scale surfaces as an assertion, never as a silently wrong set.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterable, Optional, Sequence

from besslab.core import ParameterError


@dataclass(frozen=True)
class TangentSet:
    """Distinct non-negative multipliers b_1 < b_2 < ... < b_r."""

    values: tuple[int, ...]

    def __init__(self, values: Iterable[int]):
        vals = tuple(sorted(int(v) for v in values))
        if len(set(vals)) != len(vals):
            raise ParameterError("tangent set values must be distinct")
        if vals and vals[0] < 0:
            raise ParameterError("tangent set values must be non-negative")
        object.__setattr__(self, "values", vals)

    @property
    def r(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Equation:
    """Homogeneous linear equation sum(coeffs[i] * m_i) = 0."""

    coeffs: tuple[int, ...]
    tag: str = "raw-cyclic"  # type1 | type2 | type3 | type4 | raw-cyclic

    def __post_init__(self):
        if sum(self.coeffs) != 0:
            raise ParameterError(f"equation {self.coeffs} is not homogeneous")
        if any(c == 0 for c in self.coeffs):
            raise ParameterError("zero coefficients are not allowed")

    @property
    def arity(self) -> int:
        return len(self.coeffs)

    def canonical_key(self) -> tuple[int, ...]:
        # identical up to variable renaming and global sign
        a = tuple(sorted(self.coeffs))
        b = tuple(sorted(-c for c in self.coeffs))
        return min(a, b)

    def __str__(self) -> str:  # pragma: no cover
        terms = " + ".join(f"{c}*m{i + 1}" for i, c in enumerate(self.coeffs))
        return f"{terms} = 0 [{self.tag}]"


@dataclass(frozen=True)
class EquationFamily:
    equations: tuple[Equation, ...]

    def __len__(self) -> int:
        return len(self.equations)

    def __iter__(self):
        return iter(self.equations)

    def keys(self) -> set[tuple[int, ...]]:
        return {eq.canonical_key() for eq in self.equations}

    def merged_with(self, other: "EquationFamily") -> "EquationFamily":
        out = list(self.equations)
        seen = self.keys()
        for eq in other.equations:
            k = eq.canonical_key()
            if k not in seen:
                seen.add(k)
                out.append(eq)
        return EquationFamily(tuple(out))

    def to_json(self) -> list[list[int]]:
        return [list(eq.coeffs) for eq in self.equations]


def cyclic_coeffs(order: Sequence[int]) -> tuple[int, ...]:
    """Coefficients of the cyclic-difference equation of a tangent subset in
    the given cyclic order: coefficient of m_i is order[i+1] - order[i]."""
    l = len(order)
    return tuple(order[(i + 1) % l] - order[i] for i in range(l))


def equations_for(tangent: TangentSet, L: int) -> EquationFamily:
    """All cyclic-difference equations of the l-subsets (3 <= l <= L) of the
    tangent set, deduplicated up to variable renaming and global sign.

    For a generic tangent set the family has C(r,3) + 3*C(r,4) members at
    L=4 (types 1 and 2-4); coincidences in structured sets are merged.
    """
    if L < 3:
        raise ParameterError("L must be at least 3")
    if L > tangent.r:
        raise ParameterError(f"L={L} exceeds the tangent set size r={tangent.r}")
    out: list[Equation] = []
    seen: set[tuple[int, ...]] = set()
    for l in range(3, L + 1):
        for subset in combinations(tangent.values, l):
            s0, rest = subset[0], subset[1:]
            for perm in permutations(rest):
                if perm[0] > perm[-1]:  # each cycle once, reflections merged
                    continue
                order = (s0,) + perm
                eq = Equation(cyclic_coeffs(order), tag=_classify(subset, perm))
                key = eq.canonical_key()
                if key not in seen:
                    seen.add(key)
                    out.append(eq)
    return EquationFamily(tuple(out))


def _classify(subset: tuple[int, ...], perm: tuple[int, ...]) -> str:
    if len(subset) == 3:
        return "type1"
    if len(subset) == 4:
        s2, s3, s4 = subset[1], subset[2], subset[3]
        if perm == (s2, s3, s4):
            return "type2"
        if perm == (s2, s4, s3):
            return "type3"
        if perm == (s3, s2, s4):
            return "type4"
    return "raw-cyclic"


@dataclass
class Witness:
    """Nontrivial solution: the assignment satisfies the equation but the
    values are not all equal."""

    equation: Equation
    assignment: tuple[int, ...]


def verify(values: Iterable[int], family: EquationFamily) -> Optional[Witness]:
    """None iff the set has no nontrivial solution to any family equation."""
    vals = sorted(set(values))
    vset = set(vals)
    for eq in family:
        found = _solve(vals, vset, eq.coeffs)
        if found is not None:
            return Witness(eq, found)
    return None


def _solve(vals: list[int], vset: set[int], coeffs: tuple[int, ...]) -> Optional[tuple[int, ...]]:
    s = len(coeffs)
    if len(vals) == 0:
        return None
    if s == 3:
        c1, c2, c3 = coeffs
        for m1 in vals:
            for m2 in vals:
                num = -(c1 * m1 + c2 * m2)
                if num % c3:
                    continue
                m3 = num // c3
                if m3 in vset and not (m1 == m2 == m3):
                    return (m1, m2, m3)
        return None
    if s == 4:
        c1, c2, c3, c4 = coeffs
        table: dict[int, list[tuple[int, int]]] = {}
        for m1 in vals:
            base = c1 * m1
            for m2 in vals:
                table.setdefault(base + c2 * m2, []).append((m1, m2))
        for m3 in vals:
            base = c3 * m3
            for m4 in vals:
                hits = table.get(-(base + c4 * m4))
                if not hits:
                    continue
                for m1, m2 in hits:
                    if not (m1 == m2 == m3 == m4):
                        return (m1, m2, m3, m4)
        return None
    # arities beyond 4: plain nested enumeration
    for assignment in product(vals, repeat=s):
        if sum(c * m for c, m in zip(coeffs, assignment)) == 0:
            if len(set(assignment)) > 1:
                return assignment
    return None


def addition_ok(x: int, current: Sequence[int], family: EquationFamily) -> bool:
    """True iff adding x to the current set creates no nontrivial solution.

    Only solutions that use x need checking; positions with equal
    coefficients are symmetric and checked once.
    """
    pool = sorted(set(current) | {x})
    pset = set(pool)
    for eq in family:
        coeffs = eq.coeffs
        tried: set[int] = set()
        for i, ci in enumerate(coeffs):
            if ci in tried:
                continue
            tried.add(ci)
            rest = coeffs[:i] + coeffs[i + 1 :]
            target = -ci * x
            hit = _solve_fixed(pool, pset, rest, target, x, i)
            if hit is not None:
                return False
    return True


def _solve_fixed(
    pool: list[int],
    pset: set[int],
    coeffs: tuple[int, ...],
    target: int,
    x: int,
    xpos: int,
) -> Optional[tuple[int, ...]]:
    """Assignment of the remaining positions summing to target, such that the
    full assignment (x re-inserted at xpos) is not all-equal."""
    k = len(coeffs)

    def full(rest: tuple[int, ...]) -> tuple[int, ...]:
        return rest[:xpos] + (x,) + rest[xpos:]

    if k == 2:
        c1, c2 = coeffs
        for m1 in pool:
            num = target - c1 * m1
            if num % c2:
                continue
            m2 = num // c2
            if m2 in pset:
                cand = full((m1, m2))
                if len(set(cand)) > 1:
                    return cand
        return None
    if k == 3:
        c1, c2, c3 = coeffs
        for m1 in pool:
            base = target - c1 * m1
            for m2 in pool:
                num = base - c2 * m2
                if num % c3:
                    continue
                m3 = num // c3
                if m3 in pset:
                    cand = full((m1, m2, m3))
                    if len(set(cand)) > 1:
                        return cand
        return None
    for rest in product(pool, repeat=k):
        if sum(c * m for c, m in zip(coeffs, rest)) == target:
            cand = full(rest)
            if len(set(cand)) > 1:
                return cand
    return None


@dataclass(frozen=True)
class BehrendParams:
    """Sphere-construction parameters: digits 0 <= x_i < d/D, k of them,
    encoded in base d, on the shell sum(x_i^2) = r_shell."""

    d: int
    k: int
    D: int
    r_shell: int


@dataclass
class SumFreeSet:
    """A verified solution-free subset of [n] together with its equations."""

    n: int
    values: tuple[int, ...]
    family: EquationFamily
    provenance: str  # behrend | digit | shift-intersect | greedy | explicit
    seed: Optional[int] = None
    warning: Optional[str] = None
    behrend: Optional[BehrendParams] = None
    digit_base: Optional[int] = None
    digit_alphabet: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        self.values = tuple(sorted(set(self.values)))
        for x in self.values:
            if not 1 <= x <= self.n:
                raise ParameterError(f"set value {x} outside [1, {self.n}]")

    def verify(self) -> Optional[Witness]:
        return verify(self.values, self.family)

    def __len__(self) -> int:
        return len(self.values)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "M": list(self.values),
            "equations": self.family.to_json(),
            "provenance": self.provenance,
            "seed": self.seed,
            "warning": self.warning,
        }


def _assert_verified(s: SumFreeSet) -> SumFreeSet:
    witness = s.verify()
    if witness is not None:
        raise AssertionError(
            f"constructor defect: {s.provenance} set admits nontrivial solution "
            f"{witness.assignment} of {witness.equation}"
        )
    return s


def behrend_set(n: int, a: Sequence[int]) -> SumFreeSet:
    """Solution-free set for a_1 m_1 + ... + a_l m_l = (a_1+...+a_l) m_{l+1}.

    Digit vectors x with 0 <= x_i < d/D on a fixed sphere sum(x_i^2) =
    r_shell, encoded in base d. The base is scanned (digits carry no
    asymptotics at desk scale) and r_shell maximizes |M|, smallest shell and
    base winning ties.
    """
    a = tuple(int(v) for v in a)
    if len(a) < 2 or any(v < 1 for v in a):
        raise ParameterError("behrend_set needs at least two positive coefficients")
    if n < 1:
        raise ParameterError("behrend_set needs n >= 1")
    D = sum(a)
    eq = Equation(a + (-D,), tag="raw-cyclic")
    family = EquationFamily((eq,))

    best: Optional[tuple[int, int, int, list[int]]] = None  # (-size, d, r_shell, values)
    dmax = math.isqrt(n)
    for d in range(D + 1, dmax + 1):
        k = 1
        while d ** (k + 1) <= n:
            k += 1
        t = -(-d // D)  # ceil(d/D): digits 0..t-1 are exactly those below d/D
        if t < 2:
            continue
        shells: dict[int, list[int]] = {}
        for vec in product(range(t), repeat=k):
            value = sum(x * d**i for i, x in enumerate(vec))
            if 1 <= value <= n:
                shells.setdefault(sum(x * x for x in vec), []).append(value)
        for r_shell in sorted(shells):
            cand = (-len(shells[r_shell]), d, r_shell, shells[r_shell])
            if best is None or cand[:3] < best[:3]:
                best = cand
    if best is None:
        return _assert_verified(
            SumFreeSet(n, (1,), family, "behrend", warning="degenerate-singleton")
        )
    size, d, r_shell, values = -best[0], best[1], best[2], best[3]
    k = 1
    while d ** (k + 1) <= n:
        k += 1
    params = BehrendParams(d=d, k=k, D=D, r_shell=r_shell)
    return _assert_verified(
        SumFreeSet(n, tuple(sorted(values)), family, "behrend", behrend=params)
    )


def greedy_solution_free(n: int, family: EquationFamily, verify_each: bool = True) -> tuple[int, ...]:
    """Grow a solution-free subset of [n] by ascending scan; every acceptance
    is confirmed by a full verify pass."""
    chosen: list[int] = []
    for x in range(1, n + 1):
        if addition_ok(x, chosen, family):
            chosen.append(x)
            if verify_each and verify(chosen, family) is not None:
                raise AssertionError("greedy incremental check disagrees with verify")
    return tuple(chosen)


def digit_set(n: int, a: Sequence[int]) -> SumFreeSet:
    """Solution-free set for a1 x + a4 y = a2 u + a3 v via base-(a3+1) digits.

    Requires a1 < a2 < a3 < a4 with a1 + a4 = a2 + a3. Digits come from an
    auxiliary set B inside [0, (a3+1)/a2) that is solution-free for
    a1 x + (a4-a3-1) y + v = a2 u; B is the better of a shifted Behrend set
    and a deterministic greedy set (the Behrend route degenerates on tiny
    auxiliary intervals).
    """
    a = tuple(int(v) for v in a)
    if len(a) != 4:
        raise ParameterError("digit_set needs exactly four coefficients")
    a1, a2, a3, a4 = a
    if not (a1 < a2 < a3 < a4):
        raise ParameterError("digit_set needs a1 < a2 < a3 < a4")
    if a1 + a4 != a2 + a3:
        raise ParameterError("digit_set needs a1 + a4 = a2 + a3")
    if n < 1:
        raise ParameterError("digit_set needs n >= 1")
    main = Equation((a1, a4, -a2, -a3), tag="raw-cyclic")
    family = EquationFamily((main,))
    base = a3 + 1
    hi = -(-base // a2) - 1  # strictly below base/a2

    # Auxiliary digit alphabet B in {0..hi}, free of nontrivial solutions to
    # a1 x + (a4-a3-1) y + v = a2 u where nontriviality ranges over all four
    # variables. When a4 = a3+1 the y coefficient vanishes and any second
    # digit yields a nontrivial solution (x=u=v=b, y!=b), so B degenerates to
    # {0}. Shorter numbers are padded with zero digits in the carry argument,
    # hence 0 must belong to B: the greedy route starts at 0 and the Behrend
    # route is shifted onto 0 (shifts keep homogeneous solution-freeness).
    if a4 - a3 - 1 == 0:
        b_set: tuple[int, ...] = (0,)
    else:
        aux = EquationFamily((Equation((a1, a4 - a3 - 1, 1, -a2), tag="raw-cyclic"),))
        grown: list[int] = []
        for x in range(0, hi + 1):
            if addition_ok(x, grown, aux):
                grown.append(x)
        candidates: list[tuple[int, ...]] = [tuple(grown)]
        if hi >= 1:
            aux_behrend = behrend_set(hi + 1, (a1, a4 - a3 - 1, 1)).values
            candidates.append(tuple(x - aux_behrend[0] for x in aux_behrend))
        b_set = max(candidates, key=len)
        if verify(b_set, aux) is not None:
            raise AssertionError("auxiliary digit set fails its equation")

    digits = sorted(set(b_set))
    width = 1
    while base**width <= n:
        width += 1
    if len(digits) > 1 and len(digits) ** width > 5_000_000:
        raise ParameterError("digit_set enumeration too large for these parameters")
    values: list[int] = []
    for length in range(1, width + 1):
        for vec in product(digits, repeat=length):
            if vec[-1] == 0:  # canonical representation: no leading zeros
                continue
            value = sum(x * base**i for i, x in enumerate(vec))
            if 1 <= value <= n:
                values.append(value)
    warning = None if values else "empty-digit-set"
    return _assert_verified(
        SumFreeSet(
            n,
            tuple(sorted(values)),
            family,
            "digit",
            warning=warning,
            digit_base=base,
            digit_alphabet=tuple(sorted(digits)),
        )
    )


def shift_intersect(
    sets: Sequence[SumFreeSet],
    seed: Optional[int] = None,
    trials: int = 64,
    shifts: Optional[Sequence[int]] = None,
) -> SumFreeSet:
    """Best-of-`trials` intersection M_1 ∩ (M_2+mu_2) ∩ ... ∩ [n] over
    uniformly drawn shifts; shift invariance keeps every factor solution-free
    for its own equations, so the intersection is solution-free for the union
    family (re-verified anyway)."""
    if not sets:
        raise ParameterError("shift_intersect needs at least one set")
    n = sets[0].n
    if any(s.n != n for s in sets):
        raise ParameterError("all sets must live in the same [n]")
    union_family = sets[0].family
    for s in sets[1:]:
        union_family = union_family.merged_with(s.family)
    if len(sets) == 1:
        return _assert_verified(
            SumFreeSet(n, sets[0].values, union_family, "shift-intersect", seed=seed)
        )
    if shifts is not None:
        if len(shifts) != len(sets) - 1:
            raise ParameterError("need one shift per set beyond the first")
        rounds = [tuple(int(mu) for mu in shifts)]
    else:
        if seed is None:
            raise ParameterError("shift_intersect draws are seeded; pass seed")
        rng = random.Random(seed)
        rounds = [
            tuple(rng.randint(-n, n) for _ in range(len(sets) - 1)) for _ in range(trials)
        ]
    best: Optional[set[int]] = None
    for mus in rounds:
        acc = set(sets[0].values)
        for s, mu in zip(sets[1:], mus):
            acc &= {x + mu for x in s.values}
            if not acc:
                break
        if best is None or len(acc) > len(best):
            best = acc
    assert best is not None
    warning = "empty-intersection" if not best else None
    return _assert_verified(
        SumFreeSet(
            n, tuple(sorted(best)), union_family, "shift-intersect", seed=seed, warning=warning
        )
    )


def _ladder(n: int, r: int) -> list[int]:
    """Doubly exponential tangent ladder, rounded and deduplicated upward."""
    logn = math.log2(max(n, 2))
    values: list[int] = []
    log_b = logn ** (1.0 / 2**r)
    for _ in range(r):
        b = round(2.0**log_b)
        values.append(max(b, 0))
        log_b = log_b * log_b
    out: list[int] = []
    used: set[int] = set()
    for b in values:
        while b in used:
            b += 1
        used.add(b)
        out.append(b)
    return sorted(out)


def _paper_recipe_factor(n: int, eq: Equation) -> tuple[SumFreeSet, Optional[str]]:
    """Single-equation solution-free set along the paper split: types 1-2 via
    the sphere construction, types 3-4 via digits, greedy otherwise."""
    pos = sorted(c for c in eq.coeffs if c > 0)
    neg = sorted(-c for c in eq.coeffs if c < 0)
    if eq.tag in ("type1", "type2") and len(neg) == 1:
        return behrend_set(n, pos), None
    if eq.tag in ("type3", "type4") and len(pos) == 2 and len(neg) == 2:
        lo, hi_ = min(pos + neg), max(pos + neg)
        if lo in pos and hi_ in pos:
            quad = (lo, neg[0], neg[1], hi_)
            if quad[0] < quad[1] < quad[2] < quad[3]:
                built = digit_set(n, quad)
                if len(built) > 0:
                    return built, None
                # degenerate digit alphabet: fall through to greedy
    one = EquationFamily((eq,))
    grown = greedy_solution_free(n, one, verify_each=False)
    fallback = _assert_verified(SumFreeSet(n, grown, one, "greedy"))
    return fallback, f"greedy fallback for {eq.tag} equation {eq.coeffs}"


def build_RL_sumfree(
    n: int,
    r: int,
    L: int,
    mode: str = "greedy",
    tangent: Optional[Iterable[int]] = None,
    seed: Optional[int] = None,
    trials: int = 64,
) -> tuple[TangentSet, SumFreeSet]:
    """Tangent set R plus an R_L-sum-free subset of [n].

    paper-recipe follows the doubly exponential ladder and the per-equation
    constructor split, combined by shift-intersection (deterministic: the
    internal shift seed defaults to 0); explicit takes R as given; greedy
    draws R from the seeded RNG until the equation family is generic. The
    result always passes verify(equations_for(R, L)).
    """
    if L > r:
        raise ParameterError(f"L={L} exceeds r={r}")
    if L not in (3, 4):
        raise ParameterError("L must be 3 or 4")
    if mode == "explicit":
        if tangent is None:
            raise ParameterError("explicit mode needs a tangent set")
        R = TangentSet(tangent)
        if R.r != r:
            raise ParameterError(f"tangent set has {R.r} elements, expected {r}")
        family = equations_for(R, L)
        values = greedy_solution_free(n, family)
        return R, _assert_verified(SumFreeSet(n, values, family, "explicit"))
    if mode == "greedy":
        if seed is None:
            raise ParameterError("greedy mode is randomized; pass a seed")
        rng = random.Random(seed)
        expected = math.comb(r, 3) + (3 * math.comb(r, 4) if L == 4 else 0)
        span = max(8 * r, 40)
        R = None
        for _ in range(200):
            cand = TangentSet([0] + rng.sample(range(1, span + 1), r - 1))
            if len(equations_for(cand, L)) == expected:
                R = cand
                break
        if R is None:
            raise ParameterError("could not draw a generic tangent set")
        family = equations_for(R, L)
        values = greedy_solution_free(n, family)
        return R, _assert_verified(SumFreeSet(n, values, family, "greedy", seed=seed))
    if mode == "paper-recipe":
        R = TangentSet(_ladder(n, r))
        if R.r != r:
            raise ParameterError("ladder collapsed below r distinct values")
        family = equations_for(R, L)
        warnings: list[str] = []
        factors: list[SumFreeSet] = []
        for eq in family:
            factor, warn = _paper_recipe_factor(n, eq)
            if warn:
                warnings.append(warn)
            factors.append(factor)
        combined = shift_intersect(factors, seed=0 if seed is None else seed, trials=trials)
        note = "; ".join(w for w in ([combined.warning] if combined.warning else []) + warnings)
        result = SumFreeSet(
            n,
            combined.values,
            family.merged_with(combined.family),
            "shift-intersect",
            seed=0 if seed is None else seed,
            warning=note or None,
        )
        return R, _assert_verified(result)
    raise ParameterError(f"unknown mode {mode!r}")
