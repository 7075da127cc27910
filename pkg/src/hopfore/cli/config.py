"""Instance configuration: a flat file of `key = value` lines (TOML subset).

    field = "Fp(17)"
    group = [16]
    chi = [2]            # chi on the generators; x g = chi^-1(g) g x
    a = [1]
    alpha = [0]          # optional cocycle values on the generators
    ideal = "power_central"   # none | power_zero | power_central
    n = 8
    beta = 1
    degree = 8           # optional default degree cap
    budget = 500000      # optional oracle budget
    lambda = [3]         # extra keys holding lists name characters for module expressions
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from ..exactnum import Field, evaluate_expression, parse_field
from ..grouprep import AbelianGroup, Character
from ..hopfcore import HopfPresentation, QuotientSpec, make_hopf

RESERVED = {"field", "group", "chi", "a", "alpha", "ideal", "n", "beta", "degree", "budget", "normalize"}


class ConfigError(ValueError):
    pass


@dataclass
class InstanceConfig:
    field: str
    group: list[int]
    chi: list
    a: list[int]
    alpha: list | None = None
    ideal: str = "none"
    n: int | None = None
    beta: object = None
    degree: int | None = None
    budget: int | None = None
    normalize: bool = True
    characters: dict = field(default_factory=dict)

    def echo(self) -> dict:
        out = {
            "field": self.field,
            "group": self.group,
            "chi": [str(v) for v in self.chi],
            "a": self.a,
            "alpha": None if self.alpha is None else [str(v) for v in self.alpha],
            "ideal": self.ideal,
        }
        if self.ideal != "none":
            out["n"] = self.n
        if self.ideal == "power_central":
            out["beta"] = str(self.beta)
        if self.characters:
            out["characters"] = {k: [str(v) for v in vs] for k, vs in sorted(self.characters.items())}
        return out


def _as_list(key: str, v) -> list:
    if isinstance(v, list):
        return v
    if isinstance(v, (int, str)):
        return [v]
    raise ConfigError(f"{key}: expected a list, got {v!r}")


def parse_config_text(text: str) -> InstanceConfig:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config syntax: {exc}") from None
    for k in ("field", "group", "chi", "a"):
        if k not in data:
            raise ConfigError(f"config is missing {k!r}")
    for k, v in data.items():
        if isinstance(v, dict):
            raise ConfigError(f"{k}: tables are not supported (flat key = value only)")
    ideal = str(data.get("ideal", "none"))
    if ideal not in ("none", "power_zero", "power_central"):
        raise ConfigError(f"ideal: expected none, power_zero or power_central, got {ideal!r}")
    if ideal != "none" and "n" not in data:
        raise ConfigError(f"ideal = {ideal} needs n")
    if ideal == "power_central" and "beta" not in data:
        raise ConfigError("ideal = power_central needs beta")
    chars = {k: _as_list(k, v) for k, v in data.items() if k not in RESERVED}
    return InstanceConfig(
        field=str(data["field"]),
        group=[int(v) for v in _as_list("group", data["group"])],
        chi=_as_list("chi", data["chi"]),
        a=[int(v) for v in _as_list("a", data["a"])],
        alpha=_as_list("alpha", data["alpha"]) if "alpha" in data else None,
        ideal=ideal,
        n=int(data["n"]) if "n" in data else None,
        beta=data.get("beta"),
        degree=int(data["degree"]) if "degree" in data else None,
        budget=int(data["budget"]) if "budget" in data else None,
        normalize=bool(data.get("normalize", True)),
        characters=chars,
    )


def load_config(path: str) -> InstanceConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config_text(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None


def scalar(F: Field, v):
    if isinstance(v, bool):
        raise ConfigError(f"boolean {v!r} is not a field element")
    if isinstance(v, int):
        return F(v)
    return evaluate_expression(str(v), F, {F.gen_name: F.generator} if F.gen_name else {})


def build_presentation(cfg: InstanceConfig) -> HopfPresentation:
    F = parse_field(cfg.field)
    G = AbelianGroup(tuple(cfg.group))
    if len(cfg.chi) != G.rank:
        raise ConfigError(f"chi has {len(cfg.chi)} values for {G.rank} generators")
    if len(cfg.a) != G.rank:
        raise ConfigError(f"a has {len(cfg.a)} exponents for {G.rank} generators")
    chi = Character(G, F, [scalar(F, v) for v in cfg.chi])
    alpha = None
    if cfg.alpha is not None:
        if len(cfg.alpha) != G.rank:
            raise ConfigError(f"alpha has {len(cfg.alpha)} values for {G.rank} generators")
        alpha = [scalar(F, v) for v in cfg.alpha]
    if cfg.ideal == "none":
        Q = QuotientSpec.none()
    elif cfg.ideal == "power_zero":
        Q = QuotientSpec.power_zero(cfg.n)
    else:
        Q = QuotientSpec.power_central(cfg.n, scalar(F, cfg.beta))
    return make_hopf(F, G, chi, G.element(cfg.a), alpha, Q, normalize=cfg.normalize)


def named_character(pres: HopfPresentation, cfg: InstanceConfig, name: str) -> Character | None:
    vals = cfg.characters.get(name)
    if vals is None:
        return None
    F = pres.field
    if len(vals) != pres.group.rank:
        raise ConfigError(f"{name} has {len(vals)} values for {pres.group.rank} generators")
    return Character(pres.group, F, [scalar(F, v) for v in vals])
