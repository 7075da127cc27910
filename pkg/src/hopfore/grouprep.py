"""Finite abelian groups, their characters into a field, and additive cocycles."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .exactnum import Field, FieldError, Scalar


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class AbelianGroup:
    """Z_{n_1} x ... x Z_{n_k}; elements are exponent tuples."""

    invariants: tuple[int, ...]

    def __post_init__(self):
        inv = tuple(int(n) for n in self.invariants)
        if any(n < 1 for n in inv):
            raise GroupError(f"bad invariants {self.invariants}")
        object.__setattr__(self, "invariants", inv)

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def order(self) -> int:
        return math.prod(self.invariants)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.invariants) if self.invariants else 1

    def element(self, exps: Sequence[int]) -> "GroupElement":
        if len(exps) != self.rank:
            raise GroupError(f"expected {self.rank} exponents, got {len(exps)}")
        return GroupElement(self, tuple(int(e) % n for e, n in zip(exps, self.invariants)))

    def __call__(self, *exps) -> "GroupElement":
        if len(exps) == 1 and isinstance(exps[0], (tuple, list)):
            exps = tuple(exps[0])
        return self.element(exps)

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def generators(self) -> list["GroupElement"]:
        out = []
        for i in range(self.rank):
            e = [0] * self.rank
            e[i] = 1
            out.append(self.element(e))
        return out

    def elements(self) -> Iterator["GroupElement"]:
        for exps in itertools.product(*(range(n) for n in self.invariants)):
            yield GroupElement(self, exps)

    def mul_raw(self, a: tuple, b: tuple) -> tuple:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.invariants))

    def pow_raw(self, a: tuple, k: int) -> tuple:
        return tuple((x * k) % n for x, n in zip(a, self.invariants))

    def __str__(self):
        return " x ".join(f"Z{n}" for n in self.invariants) or "1"


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    exps: tuple[int, ...]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.group, self.group.mul_raw(self.exps, other.exps))

    def __pow__(self, k: int) -> "GroupElement":
        return GroupElement(self.group, self.group.pow_raw(self.exps, k))

    def inverse(self) -> "GroupElement":
        return self ** -1

    def is_identity(self) -> bool:
        return not any(self.exps)

    @property
    def order(self) -> int:
        return math.lcm(*(n // math.gcd(e, n) for e, n in zip(self.exps, self.group.invariants))) if self.exps else 1

    def __repr__(self):
        return f"g{list(self.exps)}"


class Character:
    """A homomorphism G -> k^x, stored by its values on the standard generators.

    Validity (omega_i^{n_i} = 1) is checked by is_valid(); constructing an
    invalid tuple is allowed so that negative controls can be built.
    """

    __slots__ = ("group", "field", "images", "_key")

    def __init__(self, group: AbelianGroup, field: Field, images: Sequence):
        if len(images) != group.rank:
            raise GroupError(f"character needs {group.rank} images, got {len(images)}")
        imgs = tuple(field(v) for v in images)
        if any(v.is_zero() for v in imgs):
            raise GroupError("character values must be nonzero")
        self.group = group
        self.field = field
        self.images = imgs
        self._key = tuple(v.raw for v in imgs)

    @classmethod
    def trivial(cls, group: AbelianGroup, field: Field) -> "Character":
        return cls(group, field, [1] * group.rank)

    def is_valid(self) -> bool:
        return all((w ** n).is_one() for w, n in zip(self.images, self.group.invariants))

    def __call__(self, g: GroupElement | Sequence[int]) -> Scalar:
        exps = g.exps if isinstance(g, GroupElement) else tuple(g)
        out = self.field.one
        for w, e in zip(self.images, exps):
            if e:
                out = out * w ** e
        return out

    def __mul__(self, other: "Character") -> "Character":
        return Character(self.group, self.field, [a * b for a, b in zip(self.images, other.images)])

    def __truediv__(self, other: "Character") -> "Character":
        return Character(self.group, self.field, [a / b for a, b in zip(self.images, other.images)])

    def __pow__(self, k: int) -> "Character":
        return Character(self.group, self.field, [a ** k for a in self.images])

    def inverse(self) -> "Character":
        return self ** -1

    def is_trivial(self) -> bool:
        return all(v.is_one() for v in self.images)

    def order(self) -> int:
        return char_order(self)

    def __eq__(self, other):
        return isinstance(other, Character) and self._key == other._key and self.field == other.field

    def __hash__(self):
        return hash(self._key)

    def sort_key(self):
        return tuple(v.sort_key() for v in self.images)

    def __repr__(self):
        return "[" + ", ".join(str(v) for v in self.images) + "]"

    def to_json(self) -> list[str]:
        return [str(v) for v in self.images]


def char_eval(chi: Character, g) -> Scalar:
    return chi(g)


def char_order(chi: Character) -> int:
    """Order of chi in the character group (always finite for finite G)."""
    out = 1
    for w in chi.images:
        o = chi.field.multiplicative_order(w)
        if o is None:
            raise GroupError(f"character value {w} is not a root of unity")
        out = math.lcm(out, o)
    return out


def same_chi_coset(lam: Character, sigma: Character, chi: Character) -> bool:
    """True iff lam = chi^t sigma for some t."""
    ratio = lam / sigma
    s = char_order(chi)
    cur = Character.trivial(chi.group, chi.field)
    for _ in range(s):
        if cur == ratio:
            return True
        cur = cur * chi
    return False


def coset_members(lam: Character, chi: Character) -> list[Character]:
    """lam, chi lam, chi^2 lam, ... (|chi| entries)."""
    out = [lam]
    for _ in range(char_order(chi) - 1):
        out.append(out[-1] * chi)
    return out


class CharacterCoset:
    """The coset [lam] = {chi^t lam}; its representative is the member with least sort key."""

    __slots__ = ("chi", "rep", "members")

    def __init__(self, lam: Character, chi: Character):
        members = coset_members(lam, chi)
        self.chi = chi
        self.members = frozenset(members)
        self.rep = min(members, key=Character.sort_key)

    def __contains__(self, lam: Character) -> bool:
        return lam in self.members

    def __eq__(self, other):
        return isinstance(other, CharacterCoset) and self.rep == other.rep and self.chi == other.chi

    def __hash__(self):
        return hash(self.rep)

    def sort_key(self):
        return self.rep.sort_key()

    def __repr__(self):
        return f"[{self.rep!r}]"


def enumerate_characters(group: AbelianGroup, field: Field) -> list[Character]:
    """All characters G -> k^x, in canonical (sort key) order."""
    choices = [field.roots_of_unity(n) for n in group.invariants]
    out = [Character(group, field, list(c)) for c in itertools.product(*choices)]
    return sorted(out, key=Character.sort_key)


def character_cosets(group: AbelianGroup, field: Field, chi: Character) -> list[CharacterCoset]:
    seen = {}
    for lam in enumerate_characters(group, field):
        c = CharacterCoset(lam, chi)
        seen.setdefault(c.rep, c)
    return sorted(seen.values(), key=CharacterCoset.sort_key)


class Cocycle:
    """alpha : G -> k with alpha(gh) = alpha(g) + tau(g) alpha(h).

    tau is the character twisting the cocycle; alpha is stored by its values on
    the generators and extended by the cocycle rule.
    """

    __slots__ = ("tau", "values", "_cache")

    def __init__(self, tau: Character, values: Sequence):
        if len(values) != tau.group.rank:
            raise GroupError(f"cocycle needs {tau.group.rank} values, got {len(values)}")
        self.tau = tau
        self.values = tuple(tau.field(v) for v in values)
        self._cache: dict = {}

    @classmethod
    def zero(cls, tau: Character) -> "Cocycle":
        return cls(tau, [0] * tau.group.rank)

    @property
    def field(self) -> Field:
        return self.tau.field

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def __call__(self, g: GroupElement | Sequence[int]) -> Scalar:
        exps = g.exps if isinstance(g, GroupElement) else tuple(g)
        hit = self._cache.get(exps)
        if hit is not None:
            return hit
        F = self.field
        # alpha(g_1^{e_1} ... g_k^{e_k}), peeling generators off the left
        total = F.zero
        prefix = F.one
        for i, e in enumerate(exps):
            w = self.tau.images[i]
            partial = F.zero
            pw = F.one
            for _ in range(e):
                partial = partial + pw
                pw = pw * w
            total = total + prefix * partial * self.values[i]
            prefix = prefix * w ** e
        self._cache[exps] = total
        return total

    def __repr__(self):
        return "[" + ", ".join(str(v) for v in self.values) + "]"


@dataclass
class CocycleCheck:
    ok: bool
    failures: list[str]


def cocycle_check(alpha: Cocycle, tau: Character | None = None) -> CocycleCheck:
    """Check that generator values extend to a well-defined cocycle.

    Needs: sum_{j<n_i} tau(g_i)^j alpha(g_i) = 0 for each generator of order
    n_i, and alpha(g_i)(1 - tau(g_j)) = alpha(g_j)(1 - tau(g_i)) so that the
    extension does not depend on the order of the factors.
    """
    tau = tau or alpha.tau
    F = alpha.field
    G = tau.group
    failures = []
    for i, n in enumerate(G.invariants):
        w = tau.images[i]
        s = F.zero
        pw = F.one
        for _ in range(n):
            s = s + pw
            pw = pw * w
        if not (s * alpha.values[i]).is_zero():
            failures.append(f"generator {i}: order sum {s * alpha.values[i]} != 0")
    for i in range(G.rank):
        for j in range(i + 1, G.rank):
            lhs = alpha.values[i] * (1 - tau.images[j])
            rhs = alpha.values[j] * (1 - tau.images[i])
            if lhs != rhs:
                failures.append(f"generators {i},{j}: commutation {lhs} != {rhs}")
    return CocycleCheck(not failures, failures)


def coboundary(tau: Character, gamma: Scalar) -> Cocycle:
    """alpha(g) = gamma (1 - tau(g))."""
    F = tau.field
    gamma = F(gamma)
    return Cocycle(tau, [gamma * (1 - w) for w in tau.images])


__all__ = [
    "AbelianGroup", "Character", "CharacterCoset", "Cocycle", "CocycleCheck", "FieldError", "GroupElement",
    "GroupError", "char_eval", "char_order", "character_cosets", "coboundary", "cocycle_check",
    "coset_members", "enumerate_characters", "same_chi_coset",
]
