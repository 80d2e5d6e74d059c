"""JSON file formats for distributions, channels, fixtures and simulation configs."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .prob import Channel, ProbVec, ValidationError, broken_typewriter, bsc, identity_channel, msb_channel


class FileFormatError(ValueError):
    """Malformed input file; the message names the file and the offending field."""


@lru_cache(maxsize=None)
def schema() -> dict:
    return json.loads(resources.files("sdrs.data").joinpath("schema.json").read_text())


def data_path(name: str) -> Path:
    return Path(str(resources.files("sdrs.data").joinpath(name)))


def _validate(doc, kind: str, where: str):
    s = dict(schema())
    s.update(s[kind])
    errors = sorted(jsonschema.Draft202012Validator(s).iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        e = errors[0]
        raise FileFormatError(f"{where}: field {e.json_path}: {e.message}")


def read_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _label(x):
    return tuple(x) if isinstance(x, list) else x


def probvec_from_dict(doc, where="probvec") -> ProbVec:
    _validate(doc, "probvec_file", where)
    try:
        return ProbVec(tuple(map(_label, doc["support"])), doc["probs"])
    except ValidationError as exc:
        raise FileFormatError(f"{where}: {exc}") from None


def channel_from_dict(doc, where="channel") -> Channel:
    if "builtin" in doc:
        return _builtin_channel(doc, where)
    _validate(doc, "channel_file", where)
    try:
        return Channel(tuple(map(_label, doc["support_in"])),
                       tuple(map(_label, doc["support_out"])), doc["rows"])
    except ValidationError as exc:
        raise FileFormatError(f"{where}: {exc}") from None


def _builtin_channel(doc, where) -> Channel:
    name = doc["builtin"]
    if name == "bsc":
        if "p" not in doc:
            raise FileFormatError(f"{where}: field $.p: required for builtin 'bsc'")
        return bsc(float(doc["p"]))
    if name == "broken_typewriter":
        return broken_typewriter()
    if name == "msb":
        return msb_channel()
    if name == "identity":
        return identity_channel(range(int(doc.get("size", 2))))
    raise FileFormatError(f"{where}: field $.builtin: unknown channel {name!r}")


def load_probvec(path) -> ProbVec:
    return probvec_from_dict(read_json(path), str(path))


def load_channel(path) -> Channel:
    """Channel from a file path, or ``builtin:<name>[:<p>]`` for the stock channels."""
    s = str(path)
    if s.startswith("builtin:"):
        parts = s.split(":")
        doc = {"builtin": parts[1]}
        if len(parts) > 2:
            doc["p"] = float(parts[2])
        return channel_from_dict(doc, s)
    return channel_from_dict(read_json(path), s)


def load_switch_fixture(path=None):
    """``(DiscreteIC, SwitchSpec)`` from a fixture file; defaults to the shipped one."""
    from .switchsplit import DiscreteIC, SwitchSpec

    path = data_path("switch_fixture.json") if path is None else path
    doc = read_json(path)
    _validate(doc, "switch_fixture", str(path))
    try:
        ic = DiscreteIC(probvec_from_dict(doc["p_x1"], f"{path}: p_x1"),
                        probvec_from_dict(doc["p_x2"], f"{path}: p_x2"),
                        channel_from_dict(doc["ch1"], f"{path}: ch1"),
                        channel_from_dict(doc["ch2"], f"{path}: ch2"))
    except ValidationError as exc:
        raise FileFormatError(f"{path}: {exc}") from None
    return ic, SwitchSpec(doc["switch"]["p_h"], doc["switch"]["p_v"])


def load_sim_config(path) -> dict:
    doc = read_json(path)
    validate_sim_config(doc, str(path))
    return doc


def validate_sim_config(doc, where="config"):
    _validate(doc, "simulate_config", where)


def validate_example1(doc):
    _validate(doc, "example1_report", "example1 report")
