"""Experiment configuration files.

A config is an INI file with an ``[experiment]`` section (``kind``, and
optionally ``name``, ``output_dir``, ``seed``, ``threads``) and a
``[parameters]`` section whose keys depend on the kind.  Numbers may be
written as ``2^-3``, ``1/3`` or ``inf``; lists are comma separated and lists
of functions are separated by ``;``.  Functions are written as a catalogue
name followed by ``key=value`` fields, for example
``ball center=0,0 radius=1``.
"""

import configparser
import math
from dataclasses import dataclass, field

from ..errors import ConfigError, MaxlabError
from ..fields import BallIndicator, Constant, LogPower, RadialProfile, SmoothBump

REQUIRED = object()


def parse_number(text):
    tok = str(text).strip().replace(" ", "")
    if tok.startswith("(") and tok.endswith(")"):
        tok = tok[1:-1]
    low = tok.lower()
    if low in ("inf", "+inf", "infinity"):
        return math.inf
    if low in ("-inf", "-infinity"):
        return -math.inf
    try:
        if "^" in tok:
            base, exp = tok.split("^", 1)
            return parse_number(base) ** parse_number(exp)
        if "/" in tok:
            num, den = tok.split("/", 1)
            return parse_number(num) / parse_number(den)
        return float(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a number: {text!r}") from exc


def parse_numbers(text):
    parts = [p for p in str(text).split(",") if p.strip()]
    if not parts:
        raise ConfigError(f"empty list: {text!r}")
    return [parse_number(p) for p in parts]


def parse_int(text):
    v = parse_number(text)
    if v != int(v):
        raise ConfigError(f"not an integer: {text!r}")
    return int(v)


def parse_ints(text):
    return [parse_int(p) for p in str(text).split(",") if p.strip()]


def parse_bool(text):
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


_FUNCTIONS = {
    "const": (Constant, {"c": parse_number}),
    "ball": (BallIndicator, {"center": parse_numbers, "radius": parse_number}),
    "bump": (SmoothBump, {"center": parse_numbers, "width": parse_number, "height": parse_number}),
    "logpower": (LogPower, {"beta": parse_number, "gamma": parse_number, "center": parse_numbers,
                            "support": parse_number, "scale": parse_number, "floor": parse_number}),
    "profile": (RadialProfile, {"radii": parse_numbers, "values": parse_numbers,
                                "center": parse_numbers}),
}


def parse_function(text):
    """Build a catalogue function from ``"name key=value ..."``."""
    words = str(text).split()
    if not words or words[0] not in _FUNCTIONS:
        raise ConfigError(f"unknown function {text!r}; expected one of {sorted(_FUNCTIONS)}")
    cls, fields = _FUNCTIONS[words[0]]
    kwargs = {}
    for w in words[1:]:
        key, sep, val = w.partition("=")
        if not sep or key not in fields:
            raise ConfigError(f"bad field {w!r} for {words[0]}; allowed {sorted(fields)}")
        v = fields[key](val)
        kwargs[key] = tuple(v) if isinstance(v, list) else v
    try:
        return cls(**kwargs)
    except (TypeError, MaxlabError) as exc:
        raise ConfigError(f"cannot build {text!r}: {exc}") from exc


def parse_functions(text):
    return [parse_function(p) for p in str(text).split(";") if p.strip()]


def _canonical_function(text):
    return " ".join(str(text).split())


PARSERS = {
    "int": parse_int,
    "ints": parse_ints,
    "float": parse_number,
    "floats": parse_numbers,
    "bool": parse_bool,
    "str": lambda s: str(s).strip(),
    "function": parse_function,
    "functions": parse_functions,
}


@dataclass(frozen=True)
class Param:
    kind: str
    default: object = REQUIRED
    choices: tuple = ()


@dataclass
class ExperimentConfig:
    """A validated experiment description.

    ``params`` holds parsed values; ``resolved`` holds the same settings as
    plain text or numbers, with every default filled in, for reports.
    """

    kind: str
    name: str
    output_dir: str
    seed: int
    threads: int
    params: dict = field(default_factory=dict)
    resolved: dict = field(default_factory=dict)


def _json_value(kind, raw, value):
    if kind in ("function", "functions"):
        return "; ".join(_canonical_function(p) for p in str(raw).split(";") if p.strip())
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, list):
        return [("inf" if v > 0 else "-inf") if isinstance(v, float) and math.isinf(v) else v
                for v in value]
    return value


def resolve(kind, raw_params, schema, name=None, output_dir=".", seed=0, threads=None):
    """Validate ``raw_params`` (text values) against ``schema`` and fill defaults."""
    unknown = sorted(set(raw_params) - set(schema))
    if unknown:
        raise ConfigError(f"unknown parameters for {kind}: {unknown}")
    params, resolved = {}, {}
    for key, spec in schema.items():
        if key in raw_params:
            raw = raw_params[key]
        elif spec.default is REQUIRED:
            raise ConfigError(f"missing required parameter {key!r} for {kind}")
        elif spec.default is None:
            params[key] = None
            resolved[key] = None
            continue
        else:
            raw = spec.default
        value = PARSERS[spec.kind](raw)
        if spec.choices and value not in spec.choices:
            raise ConfigError(f"{key} must be one of {list(spec.choices)}, got {value!r}")
        params[key] = value
        resolved[key] = _json_value(spec.kind, raw, value)
    return ExperimentConfig(kind, name or kind, output_dir, int(seed), threads, params, resolved)


def load_config(path, schemas):
    """Read an INI config and validate it against ``schemas[kind]``."""
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return config_from_parser(cp, schemas)


def loads_config(text, schemas):
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config: {exc}") from exc
    return config_from_parser(cp, schemas)


def config_from_parser(cp, schemas):
    if not cp.has_section("experiment"):
        raise ConfigError("config needs an [experiment] section")
    exp = dict(cp.items("experiment"))
    kind = exp.pop("kind", None)
    if kind is None:
        raise ConfigError("[experiment] needs a kind")
    if kind not in schemas:
        raise ConfigError(f"unknown kind {kind!r}; expected one of {sorted(schemas)}")
    name = exp.pop("name", kind)
    output_dir = exp.pop("output_dir", ".")
    seed = parse_int(exp.pop("seed", "0"))
    threads = exp.pop("threads", None)
    threads = None if threads is None else parse_int(threads)
    if exp:
        raise ConfigError(f"unknown [experiment] keys: {sorted(exp)}")
    extra = [s for s in cp.sections() if s not in ("experiment", "parameters")]
    if extra:
        raise ConfigError(f"unknown sections: {extra}")
    raw = dict(cp.items("parameters")) if cp.has_section("parameters") else {}
    return resolve(kind, raw, schemas[kind], name, output_dir, seed, threads)
