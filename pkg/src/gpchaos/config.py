"""Run configuration shared by the command line and YAML config documents.

Every field is reachable both as ``--flag-name`` and as a ``flag-name:`` key in
a config document; command-line flags override the document.
"""
from __future__ import annotations

import argparse
import dataclasses
import math
from dataclasses import dataclass, fields
from functools import cached_property

import yaml

from .errors import ParseError, ValidationError
from .indicators import DEFAULT_SECTION_PERIOD
from .integrator import IntegratorConfig
from .model import CASES, InteractionParams, ModelParams, PotentialParams
from .regimes import GridAxis, LyapunovConfig, RegimeThresholds

__all__ = ["COMMANDS", "RunConfig", "parse_config", "parse_args", "load_document", "serialize"]

COMMANDS = ("simulate", "portrait", "poincare", "potential", "wavefunction",
            "lyapunov", "scan", "bands", "reproduce-figure")

# interaction-side parameters that may not be combined with a case preset
EXPLICIT_FIELDS = ("g0", "a", "b", "omega1", "chi0", "c", "d", "omega2", "k1", "k2", "mu")


def _meta(help, flag=None, **kw):
    return {"help": help, "flag": flag, **kw}


def _f(default, help, **kw):
    return dataclasses.field(default=default, metadata=_meta(help, **kw))


@dataclass(frozen=True)
class RunConfig:
    command: str = _f(None, "operation to run", choices=COMMANDS)
    case: str | None = _f(None, "interaction preset", choices=tuple(CASES))
    # explicit model (mutually exclusive with --case)
    g0: float | None = _f(None, "two-body base strength")
    a: float | None = _f(None, "two-body DC weight")
    b: float | None = _f(None, "two-body AC weight")
    omega1: float | None = _f(None, "two-body modulation frequency")
    chi0: float | None = _f(None, "three-body base strength")
    c: float | None = _f(None, "three-body DC weight")
    d: float | None = _f(None, "three-body AC weight")
    omega2: float | None = _f(None, "three-body modulation frequency")
    k1: float | None = _f(None, "first lattice wave number")
    k2: float | None = _f(None, "second lattice wave number")
    mu: float | None = _f(None, "chemical potential")
    # lattice (allowed with or without a preset)
    V: float | None = _f(None, "sets both lattice amplitudes", flag="--V")
    v1: float | None = _f(None, "first lattice amplitude")
    v2: float | None = _f(None, "second lattice amplitude")
    F: float | None = _f(None, "tilt coefficient", flag="--F")
    # initial condition
    phi0: float = _f(0.1, "initial phi")
    y0: float = _f(0.0, "initial dphi/dx")
    x0: float = _f(0.0, "initial x")
    # integrator
    step: float = _f(0.005, "RK4 step")
    x_end: float = _f(1000.0, "final x")
    stride: int = _f(1, "record every Nth step")
    blowup_threshold: float = _f(1e8, "divergence magnitude")
    adaptive: bool = _f(False, "step-halving refinement")
    discard_fraction: float = _f(0.1, "leading fraction dropped from portraits")
    # lyapunov
    method: str = _f("benettin", "Lyapunov estimator", choices=("benettin", "variational"))
    delta0: float = _f(1e-6, "initial separation")
    renorm_interval: float = _f(1.0, "x-interval between renormalisations")
    discard: float | None = _f(None, "x-length excluded from the exponent (default: 10%% of span)")
    # poincare
    section_period: float = _f(DEFAULT_SECTION_PERIOD, "stroboscopic period")
    section_x0: float | None = _f(None, "first section coordinate (default: x0)")
    # classification
    t_small: float = _f(0.05, "regular/small boundary")
    t_strong: float = _f(0.8, "small/strong boundary")
    t_global: float = _f(8.0, "strong/global boundary")
    # scan grid
    v_min: float = _f(0.0, "scan V start")
    v_max: float = _f(1.0, "scan V stop")
    v_step: float = _f(0.02, "scan V step")
    f_min: float = _f(0.0, "scan F start")
    f_max: float = _f(1.0, "scan F stop")
    f_step: float = _f(0.02, "scan F step")
    v_fixed: float | None = _f(None, "V column for bands")
    grid: str | None = _f(None, "existing scan CSV for bands")
    # potential
    x_min: float = _f(0.0, "potential profile start")
    x_max: float | None = _f(None, "potential profile stop (default: x_end)")
    n: int = _f(2001, "potential profile samples")
    # reproduce-figure
    figure: str = _f("all", "figure number 2-10 or 'all'")
    # output
    out: str | None = _f(None, "output path ('-' or unset: stdout)")
    plot: bool = _f(True, "render figures next to file outputs")
    workers: int = _f(1, "parallel scan workers")

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValidationError(f"command must be one of {', '.join(COMMANDS)}")
        if self.case is not None and self.case not in CASES:
            raise ValidationError("case must be one of A, B, C, D")
        explicit = [k for k in EXPLICIT_FIELDS if getattr(self, k) is not None]
        if self.case is not None and explicit:
            raise ValidationError(
                "exactly one of case preset or explicit parameters "
                f"(got --case with {', '.join(explicit)})")
        needs_model = self.command not in ("potential", "reproduce-figure") and not (
            self.command == "bands" and self.grid)
        if needs_model and self.case is None and not explicit:
            raise ValidationError("exactly one of case preset or explicit parameters is required")
        if self.V is not None and (self.v1 is not None or self.v2 is not None):
            raise ValidationError("V sets v1 and v2; give either V or v1/v2")
        if self.workers < 1:
            raise ValidationError("workers >= 1")
        if not 0 <= self.discard_fraction < 1:
            raise ValidationError("0 <= discard_fraction < 1")
        if self.n < 2:
            raise ValidationError("n >= 2")
        if not self.section_period > 0:
            raise ValidationError("section_period > 0")
        if self.command == "bands" and self.v_fixed is None:
            raise ValidationError("bands needs v_fixed")
        # building the nested objects runs their invariant checks up front
        self.integrator, self.model, self.lyapunov_config, self.thresholds
        if self.command in ("scan", "reproduce-figure"):
            self.v_grid, self.f_grid

    # nested views ---------------------------------------------------------

    @cached_property
    def model(self) -> ModelParams:
        if self.case is not None:
            m = CASES[self.case].params
        else:
            def val(k, default):
                v = getattr(self, k)
                return default if v is None else v
            m = ModelParams(
                InteractionParams(val("g0", 0.0), val("a", 0.0), val("b", 0.0), val("omega1", 1.0),
                                  val("chi0", 0.0), val("c", 0.0), val("d", 0.0), val("omega2", 1.0)),
                PotentialParams(0.0, 0.0, val("k1", 1.0), val("k2", 1.0), 0.0),
                val("mu", 0.0),
            )
        if self.V is not None:
            m = m.with_lattice(V=self.V)
        return m.with_lattice(v1=self.v1, v2=self.v2, F=self.F)

    @cached_property
    def integrator(self) -> IntegratorConfig:
        cfg = IntegratorConfig(self.step, self.x_end, self.stride, self.blowup_threshold, self.adaptive)
        if not self.x_end > self.x0:
            raise ValidationError("x_end > x0")
        return cfg

    @cached_property
    def lyapunov_config(self) -> LyapunovConfig:
        return LyapunovConfig(self.delta0, self.renorm_interval, self.discard,
                              self.phi0, self.y0, self.x0)

    @cached_property
    def thresholds(self) -> RegimeThresholds:
        return RegimeThresholds(self.t_small, self.t_strong, self.t_global)

    @cached_property
    def v_grid(self) -> GridAxis:
        return GridAxis(self.v_min, self.v_max, self.v_step)

    @cached_property
    def f_grid(self) -> GridAxis:
        return GridAxis(self.f_min, self.f_max, self.f_step)

    def __eq__(self, other):
        if not isinstance(other, RunConfig):
            return NotImplemented
        return all(getattr(self, f.name) == getattr(other, f.name) for f in fields(self))

    def __hash__(self):
        return hash(tuple(getattr(self, f.name) for f in fields(self)))


def _flag(f):
    return f.metadata.get("flag") or "--" + f.name.replace("_", "-")


def _key(f):
    return _flag(f)[2:]


def _kind(f):
    t = str(f.type)
    if "bool" in t:
        return bool
    if "int" in t:
        return int
    if "float" in t:
        return float
    return str


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser():
    p = _Parser(prog="gpchaos", description="Chaos analysis of the stationary GP equation "
                "in a tilted bichromatic optical lattice.")
    p.add_argument("positional_command", nargs="?", choices=COMMANDS, metavar="COMMAND",
                   help=", ".join(COMMANDS))
    p.add_argument("--config", help="YAML document whose keys mirror the flag names")
    for f in fields(RunConfig):
        kind = _kind(f)
        kw = {"dest": f.name, "default": argparse.SUPPRESS, "help": f.metadata["help"]}
        if kind is bool:
            p.add_argument(_flag(f), action=argparse.BooleanOptionalAction, **kw)
        else:
            p.add_argument(_flag(f), type=kind, choices=f.metadata.get("choices"), **kw)
    return p


def _coerce(f, value, where):
    kind = _kind(f)
    if value is None:
        return None
    try:
        if kind is bool:
            if not isinstance(value, bool):
                raise TypeError
            return value
        if kind is int:
            if isinstance(value, bool) or int(value) != value:
                raise TypeError
            return int(value)
        if kind is float:
            if isinstance(value, bool):
                raise TypeError
            return float(value)
        return str(value)
    except (TypeError, ValueError):
        raise ParseError(f"{where}: expected {kind.__name__} for '{_key(f)}', got {value!r}") from None


def load_document(text):
    """Parse a YAML config document into a dict of RunConfig field values."""
    try:
        root = yaml.compose(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}" if mark else "document"
        raise ParseError(f"{where}: {getattr(exc, 'problem', exc)}") from None
    if root is None:
        return {}
    if not isinstance(root, yaml.MappingNode):
        raise ParseError(f"line {root.start_mark.line + 1}: config document must be a mapping")
    by_key = {_key(f): f for f in fields(RunConfig)}
    by_key.update({f.name: f for f in fields(RunConfig)})
    out = {}
    loader_values = yaml.safe_load(text)
    for key_node, _ in root.value:
        line = key_node.start_mark.line + 1
        key = key_node.value
        if key not in by_key:
            raise ParseError(f"line {line}: unknown key '{key}'")
        f = by_key[key]
        out[f.name] = _coerce(f, loader_values[key], f"line {line}")
    return out


def parse_args(argv):
    """Parse command-line flags (optionally with --config) into a validated RunConfig."""
    ns = vars(build_parser().parse_args(list(argv)))
    values = {}
    doc = ns.pop("config", None)
    if doc is not None:
        try:
            with open(doc) as fh:
                values.update(load_document(fh.read()))
        except OSError as exc:
            raise ParseError(f"--config: {exc}") from None
    positional = ns.pop("positional_command", None)
    values.update(ns)
    if positional is not None:
        if "command" in ns and ns["command"] != positional:
            raise ParseError(f"--command {ns['command']} conflicts with positional {positional}")
        values["command"] = positional
    if values.get("command") is None:
        raise ParseError("a command is required (positional or --command)")
    return RunConfig(**values)


def parse_config(source):
    """RunConfig from a flag list/string or from a YAML document string.

    A string starting with ``-`` or a known command is read as flags.
    """
    if isinstance(source, str):
        stripped = source.strip()
        first = stripped.split(None, 1)[0] if stripped else ""
        if first.startswith("-") or first in COMMANDS:
            import shlex
            return parse_args(shlex.split(source))
        values = load_document(source)
        if values.get("command") is None:
            raise ParseError("document: 'command' is required")
        return RunConfig(**values)
    return parse_args(source)


def serialize(cfg: RunConfig) -> str:
    """YAML document that parse_config maps back to an equal RunConfig."""
    doc = {}
    for f in fields(RunConfig):
        v = getattr(cfg, f.name)
        if v is None:
            continue
        doc[_key(f)] = v
    return yaml.safe_dump(doc, sort_keys=False)


def describe(cfg: RunConfig):
    """Flat metadata of everything that shapes the numbers; output and worker settings excluded."""
    skip = {"out", "plot", "workers", "grid"}
    meta = {_key(f): getattr(cfg, f.name) for f in fields(RunConfig)
            if f.name not in skip and getattr(cfg, f.name) is not None}
    if cfg.command != "reproduce-figure":
        meta["model"] = cfg.model.to_dict()
    return meta
