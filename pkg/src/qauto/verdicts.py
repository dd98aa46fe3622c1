"""Uniform decider output: Yes/No/Unknown with witness and soundness."""

from __future__ import annotations

from dataclasses import dataclass, field

YES = "yes"
NO = "no"
UNKNOWN = "unknown"

EXACT = "exact"
SOUND_REFUTATION = "sound-refutation-only"
BOUNDED = "bounded"


@dataclass(frozen=True)
class Verdict:
    tag: str
    method: str
    soundness: str
    witness: object = None
    reason: str | None = None

    def __post_init__(self):
        if self.tag not in (YES, NO, UNKNOWN):
            raise ValueError(f"bad verdict tag {self.tag!r}")
        if self.tag == UNKNOWN and self.reason is None:
            raise ValueError("Unknown verdict needs a reason")

    @property
    def is_yes(self):
        return self.tag == YES

    @property
    def is_no(self):
        return self.tag == NO

    @property
    def is_unknown(self):
        return self.tag == UNKNOWN

    def to_json(self):
        out = {"verdict": self.tag, "method": self.method, "soundness": self.soundness}
        if self.witness is not None:
            out["witness"] = _json_safe(self.witness)
        if self.reason is not None:
            out["reason"] = self.reason
        return out


def _json_safe(x):
    from fractions import Fraction
    from .rationals import format_rational
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {_key_str(k): _json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return repr(x)


def _key_str(k):
    return k if isinstance(k, str) else repr(k)


def yes(method, witness=None, soundness=EXACT):
    return Verdict(YES, method, soundness, witness=witness)


def no(method, witness=None, soundness=EXACT):
    return Verdict(NO, method, soundness, witness=witness)


def unknown(method, reason, soundness=BOUNDED):
    return Verdict(UNKNOWN, method, soundness, reason=reason)
