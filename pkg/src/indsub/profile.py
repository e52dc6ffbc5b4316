"""Named numeric constants for every stage of the pipeline.

Each polynomial threshold is stored as ``coeff * d ** exp``.  A profile
carries a ``scale`` that multiplies every exponent when the threshold is
evaluated, so ``d ** 35`` becomes ``d ** 3`` at ``scale = 3/35``.  The
``paper`` profile reproduces the literal constants (which no machine can
run); ``relaxed`` rescales exponents and re-fits the coefficients so that
the thresholds take prescribed desk-scale values at ``d_ref``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping

from .errors import InvalidInput


@dataclass(frozen=True)
class Power:
    coeff: float
    exp: float

    def at(self, d: float, scale: float = 1.0) -> float:
        if self.coeff == 0:
            return 0.0
        log = math.log(abs(self.coeff)) + self.exp * scale * math.log(d)
        if log > 700:
            return math.copysign(math.inf, self.coeff)
        return math.copysign(math.exp(log), self.coeff)


# name: (paper term, relaxed value at d_ref, kind)
POWER_KNOBS: dict[str, tuple[Power, float, str]] = {
    # unbalanced bipartite lemma
    "unbalanced_ratio": (Power(1e5, 4), 10.0, "ratio"),
    "unbalanced_p": (Power(0.1, -1), 0.3, "prob"),
    "unbalanced_edge_cap": (Power(4, 1), 12.0, "degree"),
    "aux_density": (Power(10, 2), 1.5, "ratio"),
    # X'/Y structure
    "largesub_x_degree": (Power(1, 1), 2.0, "degree"),
    "largesub_degree_cap": (Power(8, 1), 8.0, "degree"),
    "largesub_z_fraction": (Power(0.25, 0), 0.25, "fraction"),
    "largesub_cut_floor": (Power(1 / 8, 1), 0.375, "ratio"),
    "largesub_nbr_cap": (Power(1, 6), 6.0, "degree"),
    "largesub_switch": (Power(1, -6), 0.02, "fraction"),
    "largesub_y_floor": (Power(1 / 3, -7), 0.05, "fraction"),
    # connected-good extraction
    "cg_connectivity": (Power(100, 2), 2.0, "degree"),
    "cg_boundary": (Power(400, 4), 8.0, "count"),
    "cg_peel_degree": (Power(1, 5), 2.0, "degree"),
    "cg_min_degree": (Power(1, 6), 3.0, "degree"),
    "cg_degree_cap": (Power(1, 7000), 100.0, "degree"),
    # bounded maximum degree lemma and its structure
    "maxdeg_delta_cap": (Power(1, 35), 27.0, "degree"),
    "maxdeg_min_degree": (Power(0.2, 1), 1.0, "degree"),
    "maxdeg_u_degree": (Power(1, 1), 3.0, "degree"),
    "maxdeg_u_fraction": (Power(1 / 20, 0), 0.05, "fraction"),
    "sparsify_p": (Power(1, -36), 0.5, "prob"),
    "branchable_floor": (Power(1, 6), 1.0, "count"),
    "structure_connectivity": (Power(11, 2), 2.0, "degree"),
    "concentration_fraction": (Power(0.5, 0), 0.5, "fraction"),
    # main theorem dispatcher
    "theorem_min_degree": (Power(1, 1), 2.0, "degree"),
    "case1_b_degree": (Power(1, 35), 27.0, "degree"),
    "case1_p": (Power(0.25, -6), 0.7, "prob"),
    "case1_good_floor": (Power(1e-5, -31), 0.01, "fraction"),
    "b_size_diag": (Power(100, -34), 0.5, "fraction"),
    "case2_peel": (Power(0.2, 1), 1.0, "degree"),
    "case2_claim": (Power(6e5, 4), 60.0, "ratio"),
    "case2_dense_fraction": (Power(1 / 6, 0), 1 / 6, "fraction"),
}

# name: (paper value, relaxed value)
LENGTH_KNOBS: dict[str, tuple[int, int]] = {
    "ball_radius": (50, 2),
    "separation": (101, 5),
    "hstar_path_cap": (203, 11),
    "structure_path_cap": (300, 12),
    "branch_separation": (3, 3),
    "girth_theorem": (10**8, 12),
    "girth_maxdegree": (10**8, 12),
    "girth_case2": (10**5, 12),
    "girth_unbalanced": (5, 5),
    "girth_largesub": (5, 5),
    "cg_girth_floor": (20 * 7000, 0),
}


@dataclass(frozen=True)
class ConstantsProfile:
    name: str
    scale: float = 1.0
    d_ref: int = 3
    powers: Mapping[str, Power] = field(default_factory=dict)
    lengths: Mapping[str, int] = field(default_factory=dict)

    @classmethod
    def paper(cls) -> "ConstantsProfile":
        return cls("paper", 1.0, 3,
                   {k: p for k, (p, _, _) in POWER_KNOBS.items()},
                   {k: v for k, (v, _) in LENGTH_KNOBS.items()})

    @classmethod
    def relaxed(cls, scale: float = 3 / 35, d_ref: int = 3) -> "ConstantsProfile":
        if not 0 < scale <= 1:
            raise InvalidInput("scale must lie in (0, 1]")
        powers = {}
        for k, (p, target, _) in POWER_KNOBS.items():
            powers[k] = Power(target / d_ref ** (p.exp * scale), p.exp)
        return cls("relaxed", scale, d_ref, powers,
                   {k: v for k, (_, v) in LENGTH_KNOBS.items()})

    def value(self, name: str, d: float) -> float:
        try:
            term = self.powers[name]
        except KeyError:
            raise InvalidInput(f"unknown profile knob {name!r}") from None
        # rounding keeps refitted relaxed values exact at d_ref (3.0, not 3.0000000004)
        return float(f"{term.at(d, self.scale):.12g}")

    def length(self, name: str) -> int:
        try:
            return self.lengths[name]
        except KeyError:
            raise InvalidInput(f"unknown profile length {name!r}") from None

    def prob(self, name: str, d: float) -> float:
        p = self.value(name, d)
        if not 0 < p <= 1:
            raise InvalidInput(f"profile probability {name}={p} outside (0, 1] at d={d}")
        return p

    def with_overrides(self, **overrides) -> "ConstantsProfile":
        """Replace knobs.  A plain number pins a power knob to that constant."""
        powers = dict(self.powers)
        lengths = dict(self.lengths)
        for k, v in overrides.items():
            if k in lengths:
                lengths[k] = int(v)
            elif k in powers:
                powers[k] = v if isinstance(v, Power) else Power(float(v), 0.0)
            else:
                raise InvalidInput(f"unknown profile knob {k!r}")
        tag = self.name if self.name.endswith("+overrides") else self.name + "+overrides"
        return ConstantsProfile(tag, self.scale, self.d_ref, powers, lengths)

    def validate(self, d: float) -> None:
        for k, (_, _, kind) in POWER_KNOBS.items():
            v = self.value(k, d)
            if kind == "prob" and not 0 < v <= 1:
                raise InvalidInput(f"{k}={v} is not a probability")
            if kind == "degree" and v < 1:
                raise InvalidInput(f"degree threshold {k}={v} below 1")
            if v < 0:
                raise InvalidInput(f"{k}={v} is negative")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "scale": self.scale,
            "d_ref": self.d_ref,
            "powers": {k: [float(p.coeff), float(p.exp)] for k, p in sorted(self.powers.items())},
            "lengths": dict(sorted(self.lengths.items())),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "ConstantsProfile":
        return cls(data["name"], float(data["scale"]), int(data["d_ref"]),
                   {k: Power(float(c), float(e)) for k, (c, e) in data["powers"].items()},
                   {k: int(v) for k, v in data["lengths"].items()})

    def describe(self, d: float, names=None) -> str:
        """``k=v`` pairs for the named knobs evaluated at ``d``."""
        parts = []
        for k in names or sorted(self.powers):
            if k in self.lengths:
                parts.append(f"{k}={self.lengths[k]}")
            else:
                parts.append(f"{k}={self.value(k, d):.6g}")
        return " ".join(parts)
