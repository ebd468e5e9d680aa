"""Windowed digit-set conversion engine.

A :class:`LocalRule` is a sliding-window map: output digit at position j
is a function Phi of the input digits at positions j+t .. j-r (window
length p = t + r + 1, most significant end first), with Phi(0,...,0) = 0.
Applying a rule to a digit string therefore needs no carry propagation:
every output position is computed independently, which is what makes the
resulting addition algorithms parallel.

Most rules come from a :class:`CarryRule`: a digit selector Q examined on
a sub-window around each position, whose value is added back at fixed
offsets with fixed coefficients.  Such a rule preserves represented
values exactly when its offset/coefficient pattern is a multiple of the
base's defining polynomial; :func:`derive_local_rule` checks that and the
closure of the output alphabet.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .core import Alphabet, BaseSpec, DigitString, normalize
from .algebra import laurent, reduce_mod_base
from .errors import (
    AlphabetMismatchError,
    DigitOutOfAlphabetError,
    LetterNotFixedError,
    OutputEscapesAlphabetError,
    PatternNotMultipleError,
    ZeroNotFixedError,
)

DEFAULT_TABLE_BUDGET = 10 ** 5
DEFAULT_ENUM_BUDGET = 10 ** 7
SAMPLE_COUNT = 20000


@dataclass(frozen=True)
class CarryRule:
    """Digit selector + reinjection pattern defining a windowed conversion.

    ``selector(sub)`` reads the sub-window (z_{j+ta}, ..., z_{j-tm}) most
    significant first and returns the carry q_j.  Each placement
    ``(delta, gamma)`` adds ``gamma * q_{j-delta}`` to output position j,
    i.e. carry q_i is weighted by gamma at position i + delta.
    """

    selector: Callable
    selector_anticipation: int  # ta: how far ahead the selector looks
    selector_memory: int        # tm: how far behind
    placements: tuple           # ((delta, gamma), ...)
    name: str = ""

    @property
    def selector_window(self) -> int:
        return self.selector_anticipation + self.selector_memory + 1

    def pattern_poly(self):
        """Value shift caused by a unit carry, as a Laurent polynomial."""
        if not self.placements:
            return laurent([])
        lo = min(d for d, _ in self.placements)
        hi = max(d for d, _ in self.placements)
        coeffs = [0] * (hi - lo + 1)
        for delta, gamma in self.placements:
            coeffs[hi - delta] += gamma
        return laurent(coeffs, lo)

    def shifted(self, h: int) -> "CarryRule":
        """Selector conjugated by digit shift -h (same placements)."""
        inner = self.selector

        def selector(sub, _inner=inner, _h=h):
            return _inner(tuple(d + _h for d in sub))

        return CarryRule(selector, self.selector_anticipation,
                         self.selector_memory, self.placements,
                         name=f"{self.name} shifted by {h}")

    def negated(self) -> "CarryRule":
        inner = self.selector

        def selector(sub, _inner=inner):
            return -_inner(tuple(-d for d in sub))

        return CarryRule(selector, self.selector_anticipation,
                         self.selector_memory, self.placements,
                         name=f"{self.name} negated")


@dataclass(frozen=True)
class LocalRule:
    """A verified sliding-window digit-set conversion."""

    input_alphabet: Alphabet
    output_alphabet: Alphabet
    anticipation: int  # t
    memory: int        # r
    window_fn: Callable
    table: Optional[dict] = field(default=None, repr=False, compare=False)
    carry: Optional[CarryRule] = field(default=None, repr=False, compare=False)
    name: str = ""

    @property
    def window_length(self) -> int:
        return self.anticipation + self.memory + 1

    def phi(self, window) -> int:
        """Output digit for one window (msd-first tuple of length p)."""
        if self.table is not None:
            return self.table[tuple(window)]
        return self.window_fn(tuple(window))

    def to_json(self) -> dict:
        data = {
            "name": self.name,
            "anticipation": self.anticipation,
            "memory": self.memory,
            "input_alphabet": self.input_alphabet.to_json(),
            "output_alphabet": self.output_alphabet.to_json(),
        }
        if self.carry is not None:
            cr = self.carry
            data["carry"] = {
                "selector_anticipation": cr.selector_anticipation,
                "selector_memory": cr.selector_memory,
                "placements": [list(pl) for pl in cr.placements],
                "selector_table": {
                    " ".join(map(str, sub)): cr.selector(sub)
                    for sub in itertools.product(
                        list(self.input_alphabet),
                        repeat=cr.selector_window)
                },
            }
        elif self.table is not None:
            data["table"] = {
                " ".join(map(str, w)): out for w, out in sorted(self.table.items())
            }
        return data


def rule_from_json(data: dict) -> LocalRule:
    """Rebuild a rule from its JSON export (table or carry form).

    No re-verification happens here; feed the result to the oracle.
    """
    in_alpha = Alphabet.from_json(data["input_alphabet"])
    out_alpha = Alphabet.from_json(data["output_alphabet"])
    t, r = data["anticipation"], data["memory"]
    if "carry" in data:
        cd = data["carry"]
        sel_table = {tuple(int(x) for x in key.split()): int(v)
                     for key, v in cd["selector_table"].items()}

        def selector(sub, _tab=sel_table):
            return _tab[tuple(sub)]

        carry = CarryRule(selector, cd["selector_anticipation"],
                          cd["selector_memory"],
                          tuple(tuple(pl) for pl in cd["placements"]),
                          name=data.get("name", ""))
        ta, tm = carry.selector_anticipation, carry.selector_memory
        placements = carry.placements
        sub_len = carry.selector_window

        def window_fn(window, _t=t):
            out = window[_t]
            for delta, gamma in placements:
                i0 = _t + delta - ta
                out += gamma * selector(window[i0:i0 + sub_len])
            return out

        return LocalRule(in_alpha, out_alpha, t, r, window_fn,
                         table=None, carry=carry, name=data.get("name", ""))
    table = {tuple(int(x) for x in key.split()): int(v)
             for key, v in data["table"].items()}

    def window_fn(window, _tab=table):
        return _tab[tuple(window)]

    return LocalRule(in_alpha, out_alpha, t, r, window_fn,
                     table=table, carry=None, name=data.get("name", ""))


def derive_local_rule(carry: CarryRule, base: BaseSpec,
                      input_alphabet: Alphabet, output_alphabet: Alphabet,
                      *, table_budget: int = DEFAULT_TABLE_BUDGET,
                      enum_budget: int = DEFAULT_ENUM_BUDGET,
                      rng: Optional[random.Random] = None) -> LocalRule:
    """Turn a carry rule into a checked LocalRule.

    Checks, in order: the placement pattern represents 0 in the base (so
    the conversion preserves values); the window parameters (t, r) cover
    every read; all outputs stay inside ``output_alphabet`` --- verified
    exhaustively when |A|**p fits ``enum_budget``, else on ``SAMPLE_COUNT``
    random windows.  The full output table is materialized when |A|**p
    fits ``table_budget``.
    """
    if not reduce_mod_base(carry.pattern_poly(), base).is_zero:
        raise PatternNotMultipleError(
            f"carry placements {carry.placements} do not represent 0 in "
            f"base {base.describe()}")
    ta, tm = carry.selector_anticipation, carry.selector_memory
    t = max([0] + [ta - delta for delta, _ in carry.placements])
    r = max([0] + [tm + delta for delta, _ in carry.placements])
    p = t + r + 1
    selector = carry.selector
    placements = carry.placements
    sub_len = carry.selector_window

    def window_fn(window, _t=t):
        # window[i] holds the digit at position j + t - i
        out = window[_t]
        for delta, gamma in placements:
            i0 = _t + delta - ta
            out += gamma * selector(window[i0:i0 + sub_len])
        return out

    letters = list(input_alphabet)
    size = len(letters)
    total = size ** p
    table = None
    if total <= enum_budget:
        windows = itertools.product(letters, repeat=p)
        collect = total <= table_budget
        table = {} if collect else None
        for w in windows:
            out = window_fn(w)
            if out not in output_alphabet:
                raise OutputEscapesAlphabetError(
                    f"window {w} maps to {out}, outside {output_alphabet}",
                    window=list(w), output=out)
            if collect:
                table[w] = out
    else:
        rng = rng or random.Random(0xC0FFEE)
        for _ in range(SAMPLE_COUNT):
            w = tuple(rng.choice(letters) for _ in range(p))
            out = window_fn(w)
            if out not in output_alphabet:
                raise OutputEscapesAlphabetError(
                    f"window {w} maps to {out}, outside {output_alphabet}",
                    window=list(w), output=out)
    zero_window = (0,) * p
    if window_fn(zero_window) != 0:
        raise ZeroNotFixedError(
            f"all-zero window maps to {window_fn(zero_window)}, expected 0")
    rule = LocalRule(input_alphabet, output_alphabet, t, r,
                     window_fn, table=table, carry=carry, name=carry.name)
    if table is not None:
        _spot_check_table(rule, rng or random.Random(0xC0FFEE))
    return rule


def _spot_check_table(rule: LocalRule, rng: random.Random,
                      samples: int = 64) -> None:
    """Table and closure must agree (guards table-construction bugs)."""
    letters = list(rule.input_alphabet)
    for _ in range(samples):
        w = tuple(rng.choice(letters) for _ in range(rule.window_length))
        assert rule.table[w] == rule.window_fn(w)


def apply_rule(rule: LocalRule, ds: DigitString,
               background: int = 0) -> DigitString:
    """Slide the rule across a digit string.

    The window at position j reads inputs j+t .. j-r, so positions up to
    r above the msd and t below the lsd can still produce nonzero output:
    the output support is [lsd - t, msd + r].  The result is normalized.
    Raises if any input digit falls outside the rule's input alphabet.

    ``background`` is the digit seen outside the string's support (default
    0).  A nonzero background must be a fixed letter of the rule; the
    finite output then records the window where the image differs from
    the constant background stream.
    """
    for d in ds.digits:
        if d not in rule.input_alphabet:
            raise DigitOutOfAlphabetError(
                f"digit {d} outside input alphabet {rule.input_alphabet}",
                digit=d)
    if background != 0 and background not in fixed_letters(rule):
        raise LetterNotFixedError(
            f"background digit {background} is not fixed by rule "
            f"{rule.name!r}", digit=background)
    if ds.is_zero and background == 0:
        return DigitString.zero()
    t, r = rule.anticipation, rule.memory
    out_msd = ds.msd_exponent + r
    out_lsd = ds.lsd_exponent - t

    def digit(e):
        if ds.lsd_exponent <= e <= ds.msd_exponent:
            return ds.digit_at(e)
        return background

    out = []
    for j in range(out_msd, out_lsd - 1, -1):
        window = tuple(digit(j + t - i) for i in range(rule.window_length))
        out.append(rule.phi(window))
    if background != 0:
        return DigitString(tuple(out), out_lsd)
    return normalize(DigitString(tuple(out), out_lsd))


def carries(rule: LocalRule, ds: DigitString) -> dict:
    """Per-position selector values q_j (for tracing); carry rules only."""
    cr = rule.carry
    if cr is None:
        return {}
    result = {}
    lo = ds.lsd_exponent - cr.selector_anticipation
    hi = ds.msd_exponent + cr.selector_memory
    for j in range(hi, lo - 1, -1):
        sub = tuple(ds.digit_at(j + cr.selector_anticipation - i)
                    for i in range(cr.selector_window))
        q = cr.selector(sub)
        if q:
            result[j] = q
    return result


def fixed_letters(rule: LocalRule) -> set:
    """Digits h with Phi(h, ..., h) = h (constant windows mapped to self)."""
    p = rule.window_length
    return {h for h in rule.input_alphabet if rule.phi((h,) * p) == h}


def shift_alphabet(rule: LocalRule, h: int) -> LocalRule:
    """Conjugate the rule by the digit translation x -> x - h.

    Valid (value-preserving on constant-h-padded windows) exactly when h
    is a fixed letter of the rule; enforced here.
    """
    if h == 0:
        return rule
    if h not in fixed_letters(rule):
        raise LetterNotFixedError(
            f"digit {h} is not fixed by rule {rule.name!r}", digit=h)
    in_alpha = rule.input_alphabet.shifted(h)
    out_alpha = rule.output_alphabet.shifted(h)
    inner = rule.window_fn

    def window_fn(window, _inner=inner, _h=h):
        return _inner(tuple(d + _h for d in window)) - _h

    table = None
    if rule.table is not None:
        table = {tuple(d - h for d in w): out - h
                 for w, out in rule.table.items()}
    carry = rule.carry.shifted(h) if rule.carry is not None else None
    return LocalRule(in_alpha, out_alpha, rule.anticipation, rule.memory,
                     window_fn, table=table, carry=carry,
                     name=f"{rule.name} on {in_alpha}")


def negate_rule(rule: LocalRule) -> LocalRule:
    """Mirror the rule through digit negation: Phi~(w) = -Phi(-w)."""
    inner = rule.window_fn

    def window_fn(window, _inner=inner):
        return -_inner(tuple(-d for d in window))

    table = None
    if rule.table is not None:
        table = {tuple(-d for d in w): -out for w, out in rule.table.items()}
    carry = rule.carry.negated() if rule.carry is not None else None
    return LocalRule(rule.input_alphabet.negated(),
                     rule.output_alphabet.negated(),
                     rule.anticipation, rule.memory,
                     window_fn, table=table, carry=carry,
                     name=f"{rule.name} negated")


def compose_rules(outer: LocalRule, inner: LocalRule,
                  *, table_budget: int = DEFAULT_TABLE_BUDGET) -> LocalRule:
    """Rule equal to applying ``inner`` first, then ``outer``.

    Window parameters add: t = t_o + t_i, r = r_o + r_i.  The inner
    output alphabet must embed in the outer input alphabet.
    """
    if not (outer.input_alphabet.m <= inner.output_alphabet.m
            and inner.output_alphabet.M <= outer.input_alphabet.M):
        raise AlphabetMismatchError(
            f"inner output {inner.output_alphabet} not contained in outer "
            f"input {outer.input_alphabet}")
    t = outer.anticipation + inner.anticipation
    r = outer.memory + inner.memory
    ti, ri = inner.anticipation, inner.memory
    pi = inner.window_length

    def window_fn(window, _outer=outer, _inner=inner, _t=t):
        mid = []
        for off in range(_outer.anticipation, -_outer.memory - 1, -1):
            i0 = _t - (off + ti)
            mid.append(_inner.phi(window[i0:i0 + pi]))
        return _outer.phi(tuple(mid))

    size = inner.input_alphabet.size
    p = t + r + 1
    table = None
    if size ** p <= table_budget:
        table = {w: window_fn(w)
                 for w in itertools.product(list(inner.input_alphabet), repeat=p)}
    return LocalRule(inner.input_alphabet, outer.output_alphabet, t, r,
                     window_fn, table=table, carry=None,
                     name=f"{inner.name} then {outer.name}")
