"""Experiment configuration: sections ``[model]``, ``[run]``, ``[output]``.

Values are ``key = value``; lists are written in brackets, e.g.
``motifs = [edge, custom(3; 1-2, 2-3)]`` and ``beta = [-1.1, 0.4]``.
"""
from __future__ import annotations

import configparser
import copy
import dataclasses
import re
from dataclasses import dataclass, field

from .model import ErgmModel
from .motifs import Motif, parse_motif

ALGORITHMS = ("cftp", "mcmc", "oracle", "validate", "scaling")
_INITIAL_RE = re.compile(r"^erdos_renyi\(\s*([0-9.eE+-]+)\s*\)$")


def split_list(text: str) -> list[str]:
    """Split ``[a, b(c, d), e]`` on top-level commas."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"expected a bracketed list, got {text!r}")
    s = s[1:-1]
    items, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            items.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    tail = "".join(cur).strip()
    if tail or items:
        items.append(tail)
    if any(not it for it in items):
        raise ValueError(f"empty list item in {text!r}")
    return items


def parse_initial(text: str):
    """``empty``, ``complete`` or ``erdos_renyi(p)`` -> (kind, p)."""
    s = text.strip()
    if s in ("empty", "complete"):
        return s, None
    match = _INITIAL_RE.match(s)
    if not match:
        raise ValueError(f"unknown initial state {text!r}")
    p = float(match.group(1))
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"erdos_renyi parameter out of range: {p}")
    return "erdos_renyi", p


@dataclass
class ExperimentConfig:
    # model
    n: int = 4
    motifs: list[Motif] = field(default_factory=lambda: [parse_motif("edge")])
    beta: list[float] = field(default_factory=lambda: [0.0])
    # run
    algorithm: str = "cftp"
    seed: int = 1
    seeds: int = 1
    schedule: str = "doubling"
    max_depth: int = 2**30
    n_steps: int = 0
    initial: str = "empty"
    replicates: int = 1
    n_values: list[int] = field(default_factory=list)
    workers: int = 1
    # output
    out: str = "out"
    stride: int = 100

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.schedule not in ("unit", "doubling"):
            raise ValueError(f"unknown schedule {self.schedule!r}")
        if len(self.beta) != len(self.motifs):
            raise ValueError(
                f"{len(self.beta)} parameters given for {len(self.motifs)} motifs"
            )
        if not self.motifs or self.motifs[0] != parse_motif("edge"):
            raise ValueError("the first motif must be 'edge'")
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if self.seeds < 1 or self.replicates < 1:
            raise ValueError("seeds and replicates must be >= 1")
        if self.n_steps < 0 or self.stride < 0 or self.max_depth < 1:
            raise ValueError("n_steps/stride must be >= 0 and max_depth >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        parse_initial(self.initial)

    def model(self, n: int | None = None) -> ErgmModel:
        return ErgmModel(self.n if n is None else n, tuple(self.motifs), tuple(self.beta))

    def run_seeds(self, count: int | None = None) -> list[int]:
        """Per-run seeds ``seed, seed + 1, ...`` (wrapping at 2**64)."""
        k = self.seeds if count is None else count
        return [(self.seed + r) % 2**64 for r in range(k)]

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)

    # text form ------------------------------------------------------------

    def to_text(self) -> str:
        lines = [
            "[model]",
            f"n = {self.n}",
            "motifs = [" + ", ".join(g.spec() for g in self.motifs) + "]",
            "beta = [" + ", ".join(repr(float(b)) for b in self.beta) + "]",
            "",
            "[run]",
            f"algorithm = {self.algorithm}",
            f"seed = {self.seed}",
            f"seeds = {self.seeds}",
            f"schedule = {self.schedule}",
            f"max_depth = {self.max_depth}",
            f"n_steps = {self.n_steps}",
            f"initial = {self.initial}",
            f"replicates = {self.replicates}",
            "n_values = [" + ", ".join(str(v) for v in self.n_values) + "]",
            f"workers = {self.workers}",
            "",
            "[output]",
            f"out = {self.out}",
            f"stride = {self.stride}",
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, base: "ExperimentConfig | None" = None) -> "ExperimentConfig":
        # motif specs contain ';' so only '#' starts an inline comment
        cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
        cp.read_string(text)
        unknown = set(cp.sections()) - {"model", "run", "output"}
        if unknown:
            raise ValueError(f"unknown config sections: {sorted(unknown)}")
        values = dataclasses.asdict(base) if base else {}
        if base:
            values["motifs"] = list(base.motifs)
        parsers = {
            "model": {
                "n": int,
                "motifs": lambda v: [parse_motif(s) for s in split_list(v)],
                "beta": lambda v: [float(s) for s in split_list(v)],
            },
            "run": {
                "algorithm": str,
                "seed": int,
                "seeds": int,
                "schedule": normalize_schedule,
                "max_depth": int,
                "n_steps": int,
                "initial": str,
                "replicates": int,
                "n_values": lambda v: [int(s) for s in split_list(v)],
                "workers": int,
            },
            "output": {"out": str, "stride": int},
        }
        for section in cp.sections():
            for key, raw in cp.items(section):
                if key not in parsers[section]:
                    raise ValueError(f"unknown key {key!r} in [{section}]")
                try:
                    values[key] = parsers[section][key](raw.strip())
                except ValueError as exc:
                    raise ValueError(f"[{section}] {key}: {exc}") from None
        return cls(**values)


def normalize_schedule(text: str) -> str:
    s = text.strip()
    if s in ("double", "doubling"):
        return "doubling"
    if s == "unit":
        return "unit"
    raise ValueError(f"unknown schedule {text!r}")


_TWO_STAR80 = dict(
    n=80, motifs=[parse_motif("edge"), parse_motif("two_star")], beta=[-1.1, 0.4]
)

PRESETS = {
    "two-star80": ExperimentConfig(
        **_TWO_STAR80, algorithm="cftp", seeds=100, schedule="doubling", out="out/two-star80"
    ),
    "two-star80-mcmc-er01": ExperimentConfig(
        **_TWO_STAR80, algorithm="mcmc", n_steps=80_000, initial="erdos_renyi(0.1)",
        replicates=100, stride=100, out="out/two-star80-mcmc-er01",
    ),
    "two-star80-mcmc-er08": ExperimentConfig(
        **_TWO_STAR80, algorithm="mcmc", n_steps=80_000, initial="erdos_renyi(0.8)",
        replicates=100, stride=100, out="out/two-star80-mcmc-er08",
    ),
    "oracle4": ExperimentConfig(
        n=4, motifs=[parse_motif("edge"), parse_motif("triangle")], beta=[0.2, 0.3],
        algorithm="validate", out="out/validate",
    ),
}


def preset(name: str) -> ExperimentConfig:
    try:
        return copy.deepcopy(PRESETS[name])
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
