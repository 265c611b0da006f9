"""Flat ``key=value`` run configuration with unit suffixes in key names.

Every physical key ends in its unit (``rod.E_N_per_mm2``, ``sim.dt_ms``);
values are converted to SI on load. Lines starting with ``#`` are comments.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .chain import ChainConfig
from .rod import RodConfig
from .signals import Signal

COMMANDS = ("simulate", "eigen", "chain", "validate")
FORMATS = ("csv", "json")

# unit suffix -> factor to SI
UNITS = {
    "m": 1.0, "mm": 1e-3,
    "m2": 1.0, "mm2": 1e-6,
    "kg_per_m": 1.0,
    "N_per_m2": 1.0, "N_per_mm2": 1e6, "GPa": 1e9,
    "s": 1.0, "ms": 1e-3,
    "Hz": 1.0,
    "N": 1.0, "m_per_s": 1.0,
    "kg": 1.0, "N_per_m": 1.0,
}


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None, key: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key {key!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.key = key


@dataclass(frozen=True)
class RunConfig:
    """Everything a CLI run needs, in SI units."""

    command: str = "simulate"
    rod: RodConfig = field(default_factory=RodConfig)
    chain_masses: tuple[float, ...] = (1.0, 1.0)
    chain_stiffnesses: tuple[float, ...] = (1.0, 1.0)
    dt: float = 1e-6
    t_final: float = 1e-2
    n_elements: tuple[int, ...] = (100,)
    k_max: int = 6
    out_dir: str = "out"
    fmt: str = "csv"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}", key="command")
        if self.fmt not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}", key="output.format")
        if not (self.dt > 0 and self.t_final > 0):
            raise ConfigError("time step and horizon must be positive", key="sim")
        if not self.dt < self.t_final:
            raise ConfigError("time step must be smaller than the horizon", key="sim.dt")
        if not self.n_elements or min(self.n_elements) < 1:
            raise ConfigError("n_elements must list positive counts", key="rod.n_elements")
        try:
            self.chain
        except ValueError as exc:
            raise ConfigError(str(exc), key="chain") from None
        if self.k_max < 1:
            raise ConfigError("k_max must be positive", key="eigen.k_max")


    @property
    def chain(self) -> ChainConfig:
        """Chain model driven by the same boundary signals as the rod."""
        return ChainConfig(self.chain_masses, self.chain_stiffnesses,
                           dirichlet=self.rod.dirichlet, neumann=self.rod.neumann)


def _split_unit(key: str) -> tuple[str, str | None]:
    """``rod.E_N_per_mm2`` -> (``rod.E``, ``N_per_mm2``)."""
    section, _, name = key.rpartition(".")
    for unit in sorted(UNITS, key=len, reverse=True):
        if name.endswith("_" + unit):
            base = name[: -len(unit) - 1]
            return (f"{section}.{base}" if section else base), unit
    return key, None


# canonical key (without unit) -> (kind, canonical unit for dumping)
_KEYS = {
    "command": ("str", None),
    "rod.length": ("float", "m"),
    "rod.rho": ("float", "kg_per_m"),
    "rod.E": ("float", "N_per_m2"),
    "rod.A": ("float", "m2"),
    "rod.n_elements": ("ints", None),
    "sim.dt": ("float", "s"),
    "sim.T": ("float", "s"),
    "eigen.k_max": ("int", None),
    "bc.tau.kind": ("str", None),
    "bc.tau": ("float", "N"),
    "bc.tau_pulse": ("float", "s"),
    "bc.tau_freq": ("float", "Hz"),
    "bc.nu.kind": ("str", None),
    "bc.nu": ("float", "m_per_s"),
    "bc.nu_pulse": ("float", "s"),
    "bc.nu_freq": ("float", "Hz"),
    "chain.N": ("int", None),
    "chain.mass": ("floats", "kg"),
    "chain.stiffness": ("floats", "N_per_m"),
    "output.dir": ("str", None),
    "output.format": ("str", None),
}

_COMPATIBLE = {
    "m": {"m", "mm"}, "m2": {"m2", "mm2"}, "kg_per_m": {"kg_per_m"},
    "N_per_m2": {"N_per_m2", "N_per_mm2", "GPa"}, "s": {"s", "ms"}, "Hz": {"Hz"},
    "N": {"N"}, "m_per_s": {"m_per_s"}, "kg": {"kg"}, "N_per_m": {"N_per_m"},
}


def _convert(kind, raw, factor):
    if kind == "str":
        return raw
    if kind == "int":
        return int(raw)
    if kind == "ints":
        return tuple(int(x) for x in raw.split(","))
    if kind == "floats":
        return tuple(float(x) * factor for x in raw.split(","))
    return float(raw) * factor


def parse_config(text: str, **overrides) -> RunConfig:
    """Parse ``key=value`` text. Unknown keys, bad units and bad values
    raise :class:`ConfigError` naming the line and key."""
    values: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected key=value", line=lineno)
        key, raw = (s.strip() for s in line.split("=", 1))
        base, unit = _split_unit(key)
        if base not in _KEYS:
            base, unit = key, None
        if base not in _KEYS:
            raise ConfigError("unknown key", line=lineno, key=key)
        kind, canonical = _KEYS[base]
        if canonical is None and unit is not None:
            raise ConfigError("key takes no unit suffix", line=lineno, key=key)
        if canonical is not None:
            if unit is None:
                raise ConfigError(f"missing unit suffix (e.g. _{canonical})", line=lineno, key=key)
            if unit not in _COMPATIBLE[canonical]:
                raise ConfigError(f"unit {unit!r} is not a {canonical} quantity", line=lineno, key=key)
        factor = UNITS[unit] if unit else 1.0
        try:
            values[base] = _convert(kind, raw, factor)
        except ValueError:
            raise ConfigError(f"cannot parse {raw!r} as {kind}", line=lineno, key=key) from None
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return _build(values)
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from None


def _signal(values, name, default: Signal) -> Signal:
    kind = values.get(f"bc.{name}.kind", default.kind)
    return Signal(
        kind=kind,
        amplitude=values.get(f"bc.{name}", default.amplitude),
        duration=values.get(f"bc.{name}_pulse", default.duration),
        frequency=values.get(f"bc.{name}_freq", default.frequency),
    )


def _build(values: dict) -> RunConfig:
    d = RunConfig()
    n_el = values.get("rod.n_elements", d.n_elements)
    rod = RodConfig(
        length=values.get("rod.length", d.rod.length),
        rho=values.get("rod.rho", d.rod.rho),
        E=values.get("rod.E", d.rod.E),
        A=values.get("rod.A", d.rod.A),
        n_elements=n_el[0],
        dirichlet=_signal(values, "nu", d.rod.dirichlet),
        neumann=_signal(values, "tau", d.rod.neumann),
    )
    N = values.get("chain.N", len(d.chain_masses))
    masses = values.get("chain.mass", (1.0,))
    stiff = values.get("chain.stiffness", (1.0,))
    if len(masses) == 1:
        masses = masses * N
    if len(stiff) == 1:
        stiff = stiff * N
    if len(masses) != N or len(stiff) != N:
        raise ConfigError("chain.mass / chain.stiffness must list 1 or chain.N values")
    return RunConfig(
        command=values.get("command", d.command),
        rod=rod,
        chain_masses=tuple(masses),
        chain_stiffnesses=tuple(stiff),
        dt=values.get("sim.dt", d.dt),
        t_final=values.get("sim.T", d.t_final),
        n_elements=tuple(n_el),
        k_max=values.get("eigen.k_max", d.k_max),
        out_dir=values.get("output.dir", d.out_dir),
        fmt=values.get("output.format", d.fmt),
    )


def dump_config(cfg: RunConfig) -> str:
    """Serialize in canonical SI keys; ``parse_config`` inverts it exactly."""
    r = cfg.rod
    lines = [
        f"command={cfg.command}",
        f"rod.length_m={r.length!r}",
        f"rod.rho_kg_per_m={r.rho!r}",
        f"rod.E_N_per_m2={r.E!r}",
        f"rod.A_m2={r.A!r}",
        "rod.n_elements=" + ",".join(str(n) for n in cfg.n_elements),
        f"sim.dt_s={cfg.dt!r}",
        f"sim.T_s={cfg.t_final!r}",
        f"eigen.k_max={cfg.k_max}",
    ]
    for name, sig in (("tau", r.neumann), ("nu", r.dirichlet)):
        unit = "N" if name == "tau" else "m_per_s"
        lines += [
            f"bc.{name}.kind={sig.kind}",
            f"bc.{name}_{unit}={sig.amplitude!r}",
            f"bc.{name}_pulse_s={sig.duration!r}",
            f"bc.{name}_freq_Hz={sig.frequency!r}",
        ]
    lines += [
        f"chain.N={cfg.chain.N}",
        "chain.mass_kg=" + ",".join(repr(m) for m in cfg.chain.masses),
        "chain.stiffness_N_per_m=" + ",".join(repr(c) for c in cfg.chain.stiffnesses),
        f"output.dir={cfg.out_dir}",
        f"output.format={cfg.fmt}",
    ]
    return "\n".join(lines) + "\n"


BENCHMARK = """\
# rod benchmark: 1 m rod, fixed at x=0, 1 kN end load for 0.5 ms
rod.length_m=1.0
rod.rho_kg_per_m=0.785
rod.E_N_per_mm2=200e3
rod.A_mm2=100
rod.n_elements=100
sim.dt_ms=1e-3
sim.T_ms=10
bc.tau.kind=pulse
bc.tau_N=1000
bc.tau_pulse_ms=0.5
bc.nu.kind=constant
bc.nu_m_per_s=0
"""


def benchmark_config(**overrides) -> RunConfig:
    return parse_config(BENCHMARK, **overrides)

