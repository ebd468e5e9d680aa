"""Constant-parallel-time addition pipelines.

Adding two strings over alphabet A digit-by-digit lands in A+A; a fixed
sequence of windowed conversion passes brings the digits back into A.
The number of passes is fixed when the pipeline is built -- it depends
only on the system, never on the data -- so every output digit of a sum
is a function of a bounded window of input digits.

Each pass handles digits one step outside the target alphabet: the
current string is clamped into the eliminator's input range, the clipped
excess is carried over unchanged, and the eliminator output absorbs one
unit of excess per pass.  For beta**2 = a*beta - 1 with the canonical
alphabet a faster two-stage pipeline applies the rules to the whole
digit range directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Alphabet, DigitString, NumerationSystem, PISOT_MINUS, digitwise_negate,
    digitwise_sum, normalize,
)
from .errors import AlphabetLacksNegativesError, DigitOutOfAlphabetError
from .local import LocalRule, apply_rule
from .rules import RulePair, doubling_reducer, gde_pisot_minus, rules_for_alphabet

# pass kinds
MAP = "map"          # apply rule to the whole string, no clamping
TOP_PASS = "top"     # clamp into {m..M+1}, eliminate the top digit
BOTTOM_PASS = "bottom"  # clamp into {m-1..M}, eliminate the bottom digit


@dataclass(frozen=True)
class AdderPipeline:
    """A fixed plan of conversion passes for one numeration system."""

    system: NumerationSystem
    plan: tuple  # ((kind, rule), ...)
    rules: RulePair

    @property
    def effective_window(self) -> tuple:
        """Total (anticipation, memory) of the composed pipeline."""
        t = sum(rule.anticipation for _, rule in self.plan)
        r = sum(rule.memory for _, rule in self.plan)
        return (t, r)

    @property
    def input_range(self) -> tuple:
        """Digit range the plan provably reduces to the alphabet."""
        m, M = self.system.alphabet.m, self.system.alphabet.M
        n_top = sum(1 for kind, _ in self.plan if kind == TOP_PASS)
        n_bot = sum(1 for kind, _ in self.plan if kind == BOTTOM_PASS)
        if any(kind == MAP for kind, _ in self.plan):
            return (self.plan[0][1].input_alphabet.m,
                    self.plan[0][1].input_alphabet.M)
        return (m - n_bot, M + n_top)

    def to_json(self) -> dict:
        return {
            "system": self.system.to_json(),
            "passes": [{"kind": kind, "rule": rule.name,
                        "anticipation": rule.anticipation,
                        "memory": rule.memory}
                       for kind, rule in self.plan],
            "effective_window": list(self.effective_window),
        }


def build_pipeline(system: NumerationSystem, *,
                   fast_paths: bool = True) -> AdderPipeline:
    """Choose and fix the pass plan for a system.

    Generic plan: max(M, -m) rounds, each eliminating one unit of excess
    above the alphabet (and below it, for mixed-sign alphabets).  The
    canonical {0..a-1} alphabet for beta**2 = a*beta - 1 instead uses the
    two-stage direct plan with window (5, 5).
    """
    base, alphabet = system.base, system.alphabet
    pair = rules_for_alphabet(base, alphabet)
    if (fast_paths and base.kind == PISOT_MINUS
            and alphabet.m == 0):
        a = base.param("a")
        plan = ((MAP, doubling_reducer(a)), (MAP, gde_pisot_minus(a)))
        return AdderPipeline(system, plan, pair)
    m, M = alphabet.m, alphabet.M
    steps = []
    for _ in range(max(M, -m)):
        if pair.gde is not None:
            steps.append((TOP_PASS, pair.gde))
        if pair.sde is not None:
            steps.append((BOTTOM_PASS, pair.sde))
    return AdderPipeline(system, tuple(steps), pair)


def _clamp_split(z: DigitString, lo: int, hi: int):
    """z = u + v with u digitwise clamped into [lo, hi]."""
    u = []
    v = []
    nonzero = False
    for d in z.digits:
        c = min(max(d, lo), hi)
        u.append(c)
        v.append(d - c)
        nonzero = nonzero or d != c
    u_ds = DigitString(tuple(u), z.lsd_exponent)
    v_ds = DigitString(tuple(v), z.lsd_exponent) if nonzero else None
    return u_ds, v_ds


def reduce_to_alphabet(z: DigitString, pipeline: AdderPipeline,
                       trace: list = None) -> DigitString:
    """Run the fixed pass plan on a digit string.

    The input digits must lie within the pipeline's provable input range
    (alphabet sum A+A always qualifies).  Appends (pass-kind, string)
    snapshots to ``trace`` when given.
    """
    lo, hi = pipeline.input_range
    for d in z.digits:
        if not lo <= d <= hi:
            raise DigitOutOfAlphabetError(
                f"digit {d} outside reducible range [{lo}, {hi}]", digit=d)
    m, M = pipeline.system.alphabet.m, pipeline.system.alphabet.M
    for kind, rule in pipeline.plan:
        if kind == MAP:
            u = z
            z = apply_rule(rule, z)
        else:
            if kind == TOP_PASS:
                u, v = _clamp_split(z, m, M + 1)
            else:
                u, v = _clamp_split(z, m - 1, M)
            w = apply_rule(rule, u)
            z = digitwise_sum(w, v) if v is not None else w
        if trace is not None:
            from .local import carries
            trace.append({"kind": kind, "string": z,
                          "carries": carries(rule, u)})
    return normalize(z)


def _check_digits(x: DigitString, alphabet: Alphabet) -> None:
    for d in x.digits:
        if d not in alphabet:
            raise DigitOutOfAlphabetError(
                f"digit {d} outside alphabet {alphabet}", digit=d)


def add(x: DigitString, y: DigitString, pipeline: AdderPipeline,
        trace: list = None) -> DigitString:
    """Parallel addition: digitwise sum, then the fixed conversion plan."""
    alphabet = pipeline.system.alphabet
    _check_digits(x, alphabet)
    _check_digits(y, alphabet)
    z = digitwise_sum(x, y)
    if trace is not None:
        trace.append({"kind": "digitwise-sum", "string": z, "carries": {}})
    result = reduce_to_alphabet(z, pipeline, trace)
    _check_digits(result, alphabet)
    return result


def subtract(x: DigitString, y: DigitString, pipeline: AdderPipeline,
             trace: list = None) -> DigitString:
    """Parallel subtraction; needs an alphabet with digits of both signs."""
    alphabet = pipeline.system.alphabet
    if alphabet.m == 0 or alphabet.M == 0:
        raise AlphabetLacksNegativesError(
            f"subtraction needs a mixed-sign alphabet, got {alphabet}")
    _check_digits(x, alphabet)
    _check_digits(y, alphabet)
    z = digitwise_sum(x, digitwise_negate(y))
    if trace is not None:
        trace.append({"kind": "digitwise-difference", "string": z,
                      "carries": {}})
    result = reduce_to_alphabet(z, pipeline, trace)
    _check_digits(result, alphabet)
    return result
