"""Module expressions: a tiny prefix grammar.

    V(lam)              one-dimensional V_lam
    Vt(lam, t)          serial module V_t(lam)
    Block(lam, f[, r])  V(lam, f^r), f a polynomial in y
    Verma(lam)          the finite Verma quotient of a quotient algebra
    sum(e1, e2, ...)    direct sum
    tensor(e1, e2, ...) tensor product (left to right)
    scramble(e, seed)   random weight-preserving change of basis

A character lam is `[v1, ..., vk]` (values on the generators), a bare value
for cyclic groups, a name from the config, `trivial` or `chi`, or a product
of those with `*` and integer powers `^k`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..exactnum import UniPoly
from ..grouprep import Character, CharacterCoset
from ..weightmod import (
    Block,
    Simple1,
    WeightModule,
    canonical_label,
    Serial,
    make_block,
    make_serial,
    make_simple_onedim,
    make_verma_quotient,
    mod_direct_sum_all,
    mod_scramble,
    mod_tensor,
)
from .config import ConfigError, InstanceConfig, named_character, scalar


class ExprError(ValueError):
    pass


@dataclass
class Built:
    module: WeightModule
    label: object | None  # set when the expression is a single labelled constructor
    text: str


def split_args(body: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ExprError(f"unbalanced brackets in {body!r}")
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ExprError(f"unbalanced brackets in {body!r}")
    tail = "".join(cur).strip()
    if tail or out:
        out.append(tail)
    return out


_CALL = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*\((.*)\)\s*$", re.S)


class Evaluator:
    def __init__(self, pres, cfg: InstanceConfig | None = None, seed: int = 0):
        self.pres = pres
        self.cfg = cfg or InstanceConfig(field="", group=[], chi=[], a=[])
        self.seed = seed

    # characters --------------------------------------------------------
    def character(self, text: str) -> Character:
        pres = self.pres
        F = pres.field
        parts = split_top(text, "*")
        out = Character.trivial(pres.group, F)
        for part in parts:
            # a trailing ^k is a character power (same result as a scalar power on cyclic groups)
            m = re.match(r"^(.+)\^\s*(-?\d+)$", part)
            if m and (m.group(1).endswith("]") or "[" not in m.group(1)):
                ch = self._char_atom(m.group(1).strip()) ** int(m.group(2))
            else:
                ch = self._char_atom(part)
            out = out * ch
        if not out.is_valid():
            raise ExprError(f"{text!r} is not a character of {pres.group}")
        return out

    def _char_atom(self, t: str) -> Character:
        pres = self.pres
        F = pres.field
        if t == "trivial":
            return Character.trivial(pres.group, F)
        if t == "chi":
            return pres.chi
        named = named_character(pres, self.cfg, t)
        if named is not None:
            return named
        if t.startswith("[") and t.endswith("]"):
            vals = split_args(t[1:-1])
        else:
            vals = [t]
        if len(vals) != pres.group.rank:
            raise ExprError(f"character {t!r} needs {pres.group.rank} values")
        try:
            return Character(pres.group, F, [scalar(F, v) for v in vals])
        except (ValueError, ConfigError) as exc:
            raise ExprError(f"bad character {t!r}: {exc}") from None

    def poly(self, text: str) -> UniPoly:
        try:
            return UniPoly.parse(self.pres.field, text)
        except ValueError as exc:
            raise ExprError(f"bad polynomial {text!r}: {exc}") from None

    # modules -----------------------------------------------------------
    def build(self, text: str) -> Built:
        m = _CALL.match(text)
        if not m:
            raise ExprError(f"expected a constructor call, got {text!r}")
        name, body = m.group(1), m.group(2)
        args = split_args(body)
        pres = self.pres
        if name in ("V", "V1", "Simple"):
            self._arity(name, args, 1)
            lam = self.character(args[0])
            return Built(make_simple_onedim(pres, lam), Simple1(lam), text)
        if name == "Vt":
            self._arity(name, args, 2)
            lam = self.character(args[0])
            t = self._int(args[1])
            return Built(make_serial(pres, lam, t), canonical_label(Serial(lam, t)), text)
        if name == "Block":
            if len(args) not in (2, 3):
                raise ExprError("Block takes (lam, f) or (lam, f, r)")
            lam = self.character(args[0])
            f = self.poly(args[1])
            r = self._int(args[2]) if len(args) == 3 else 1
            M = make_block(pres, lam, f, r)
            label = Block(CharacterCoset(lam, pres.chi), f, r) if f != UniPoly.gen(pres.field) else None
            return Built(M, label, text)
        if name == "Verma":
            self._arity(name, args, 1)
            return Built(make_verma_quotient(pres, self.character(args[0])), None, text)
        if name == "sum":
            parts = [self.build(a) for a in args]
            if not parts:
                raise ExprError("sum needs at least one argument")
            return Built(mod_direct_sum_all([p.module for p in parts]), None, text)
        if name == "tensor":
            parts = [self.build(a) for a in args]
            if not parts:
                raise ExprError("tensor needs at least one argument")
            M = parts[0].module
            for p in parts[1:]:
                M = mod_tensor(M, p.module)
            return Built(M, parts[0].label if len(parts) == 1 else None, text)
        if name == "scramble":
            if len(args) not in (1, 2):
                raise ExprError("scramble takes (expr) or (expr, seed)")
            inner = self.build(args[0])
            seed = self._int(args[1]) if len(args) == 2 else self.seed
            return Built(mod_scramble(inner.module, seed), inner.label, text)
        raise ExprError(f"unknown constructor {name!r}")

    @staticmethod
    def _arity(name, args, k):
        if len(args) != k:
            raise ExprError(f"{name} takes {k} argument(s), got {len(args)}")

    @staticmethod
    def _int(t: str) -> int:
        try:
            return int(t)
        except ValueError:
            raise ExprError(f"expected an integer, got {t!r}") from None


def split_top(text: str, sep: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur).strip())
    return [p for p in out if p]
