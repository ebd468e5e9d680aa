"""Benchmark: fixed-pass parallel addition vs a sequential reference.

The parallel adder computes each pass's output positions independently,
so a pass can be sharded across worker processes; the sequential
reference runs the identical pass plan in one left-to-right scan.  Both
produce the same digits, which the benchmark asserts.  As an independent
cross-check, a classical sequential ripple-carry adder (digit d = v mod a
with a propagating carry, available for integer and rational bases)
recomputes the sum and the values are compared modulo large random
primes -- exact value comparison of million-digit strings would need
million-bit integers, while the modular check is linear time with error
probability below 2**-180 for three 62-bit primes.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Optional

from .adder import MAP, TOP_PASS, AdderPipeline
from .core import (
    BaseSpec, INTEGER, NEGATIVE_INTEGER, NumerationSystem, RATIONAL_NEG,
    RATIONAL_POS,
)
from .errors import UnsupportedBaseError

_PRIMES_BITS = 62
_N_PRIMES = 3


# --- flat-table rule application over plain lists --------------------------


def _flat_table(rule):
    """(flat list indexed by window code, S, m, p) for fast scanning."""
    import itertools

    S = rule.input_alphabet.size
    m = rule.input_alphabet.m
    p = rule.window_length
    flat = [0] * (S ** p)
    for code, w in enumerate(itertools.product(range(m, m + S), repeat=p)):
        flat[code] = rule.window_fn(w)
    return flat, S, m, p


_G: dict = {}  # worker state, inherited through fork


def _scan_chunk(args):
    lo, hi = args
    P = _G["P"]
    flat = _G["flat"]
    S = _G["S"]
    m = _G["m"]
    p = _G["p"]
    roll = S ** (p - 1)
    code = 0
    for i in range(p):
        code = code * S + (P[lo + i] - m)
    out = []
    append = out.append
    for c in range(lo, hi):
        append(flat[code])
        if c + 1 < hi:
            code = (code % roll) * S + (P[c + p] - m)
    return out


def _apply_pass(digits, rule, table, workers):
    """One rule pass over a plain digit list (msd first, lsd exponent kept
    by the caller).  Output covers t extra positions up front, r behind.

    The pool is forked per pass so the workers inherit the current pass
    state in ``_G`` (fork-based start method assumed; arguments stay tiny).
    """
    flat, S, m, p = table
    t, r = rule.anticipation, rule.memory
    pad = [0] * (t + r)
    P = pad + digits + pad
    width = len(digits) + t + r
    _G.update(P=P, flat=flat, S=S, m=m, p=p)
    if workers <= 1 or width < 4 * workers:
        return _scan_chunk((0, width))
    bounds = [width * i // workers for i in range(workers + 1)]
    chunks = [(bounds[i], bounds[i + 1]) for i in range(workers)]
    with Pool(workers) as pool:
        parts = pool.map(_scan_chunk, chunks)
    out = []
    for part in parts:
        out.extend(part)
    return out


def run_pipeline_flat(pipeline: AdderPipeline, digits, workers: int = 1):
    """Run the pass plan on an lsd-exponent-0 digit list; msd first.

    Returns the output digit list (msd first, least significant digit at
    exponent -(total anticipation)).  ``workers`` > 1 shards each pass
    across a fork-based process pool.
    """
    tables = [(kind, rule, _flat_table(rule)) for kind, rule in pipeline.plan]
    m, M = pipeline.system.alphabet.m, pipeline.system.alphabet.M
    z = list(digits)
    for kind, rule, table in tables:
        if kind == MAP:
            z = _apply_pass(z, rule, table, workers)
            continue
        lo, hi = (m, M + 1) if kind == TOP_PASS else (m - 1, M)
        u = [min(max(d, lo), hi) for d in z]
        v = [d - c for d, c in zip(z, u)]
        w = _apply_pass(u, rule, table, workers)
        r = rule.memory  # output index of the input msd position
        for i, x in enumerate(v):
            if x:
                w[r + i] += x
        z = w
    return z


# --- classical sequential ripple adder -------------------------------------


def ripple_digit_sum(z, base: BaseSpec):
    """Sequential normalization of a digit-sum list (msd first, lsd at 0).

    Classical division with remainder: at each position take d = v mod a
    and push the carry one position up.  Works for integer and rational
    bases with the carry staying bounded; digits out in {0..a-1}.
    Returns an msd-first digit list with lsd exponent 0 (grown at the top
    as needed).
    """
    kind = base.kind
    if kind == INTEGER:
        a, b, neg = base.param("b"), 1, False
    elif kind == NEGATIVE_INTEGER:
        a, b, neg = base.param("b"), 1, True
    elif kind == RATIONAL_POS:
        a, b, neg = base.param("a"), base.param("b"), False
    elif kind == RATIONAL_NEG:
        a, b, neg = base.param("a"), base.param("b"), True
    else:
        raise UnsupportedBaseError(
            f"no sequential ripple adder for base {base.describe()}")
    out = []
    carry = 0
    for v in reversed(z):  # lsd first
        v += carry
        d = v % a
        out.append(d)
        carry = b * (v - d) // a
        if neg:
            carry = -carry
    guard = 0
    while carry != 0:
        d = carry % a
        out.append(d)
        carry = b * (carry - d) // a
        if neg:
            carry = -carry
        guard += 1
        if guard > 64:
            raise UnsupportedBaseError(
                "ripple carry did not terminate for this digit range")
    out.reverse()
    return out


# --- probabilistic value equality for huge strings --------------------------


def _random_prime(rng: random.Random, bits: int) -> int:
    while True:
        n = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if _is_probable_prime(n):
            return n


def _is_probable_prime(n: int, rounds: int = 24) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    rng = random.Random(n)
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _eval_mod(digits, lsd_exponent: int, base: BaseSpec, p: int) -> int:
    """Value of a digit list (msd first) modulo p, beta reduced mod p."""
    poly = base.defining_poly
    if len(poly) != 2:
        raise UnsupportedBaseError("modular evaluation needs a linear base")
    b, c = poly  # b*beta + c = 0 -> beta = -c/b mod p
    beta = (-c) * pow(b, -1, p) % p
    acc = 0
    for d in digits:
        acc = (acc * beta + d) % p
    # pow handles negative exponents with a modulus (modular inverse)
    return acc * pow(beta, lsd_exponent, p) % p


def values_equal_mod_primes(x_digits, x_lsd, y_digits, y_lsd,
                            base: BaseSpec, seed: int = 1,
                            n_primes: int = _N_PRIMES) -> bool:
    """Monte-Carlo value equality for linear bases (see module docstring)."""
    rng = random.Random(seed)
    for _ in range(n_primes):
        p = _random_prime(rng, _PRIMES_BITS)
        if _eval_mod(x_digits, x_lsd, base, p) != \
                _eval_mod(y_digits, y_lsd, base, p):
            return False
    return True


# --- the benchmark -----------------------------------------------------------


@dataclass
class BenchResult:
    system: NumerationSystem
    length: int
    timings: dict            # workers -> seconds (pipeline only)
    ripple_seconds: float
    outputs_identical: bool  # across worker counts
    ripple_value_match: Optional[bool]

    @property
    def passed(self) -> bool:
        return self.outputs_identical and self.ripple_value_match is not False

    def to_json(self) -> dict:
        return {
            "system": self.system.to_json(),
            "length": self.length,
            "timings": {str(k): v for k, v in self.timings.items()},
            "ripple_seconds": self.ripple_seconds,
            "outputs_identical": self.outputs_identical,
            "ripple_value_match": self.ripple_value_match,
            "passed": self.passed,
        }


def run_benchmark(pipeline: AdderPipeline, length: int = 10 ** 6,
                  worker_counts=(1, 8), seed: int = 7) -> BenchResult:
    """Add two random strings with each worker count; compare everything.

    The single-worker run is the sequential reference; all runs must
    produce identical digits.  When the base is linear the classical
    ripple adder recomputes the value for the modular cross-check.
    """
    system = pipeline.system
    alphabet = system.alphabet
    rng = random.Random(seed)
    x = [rng.randint(alphabet.m, alphabet.M) for _ in range(length)]
    y = [rng.randint(alphabet.m, alphabet.M) for _ in range(length)]
    z = [a + b for a, b in zip(x, y)]
    timings = {}
    outputs = {}
    for workers in worker_counts:
        t0 = time.perf_counter()
        outputs[workers] = run_pipeline_flat(pipeline, z, workers=workers)
        timings[workers] = time.perf_counter() - t0
    first = outputs[worker_counts[0]]
    identical = all(outputs[w] == first for w in worker_counts[1:])

    ripple_match = None
    ripple_seconds = 0.0
    if len(system.base.defining_poly) == 2 and alphabet.m >= 0:
        t0 = time.perf_counter()
        ripple = ripple_digit_sum(z, system.base)
        ripple_seconds = time.perf_counter() - t0
        total_t = sum(rule.anticipation for _, rule in pipeline.plan)
        ripple_match = values_equal_mod_primes(
            first, -total_t, ripple, 0, system.base, seed=seed)
    return BenchResult(system, length, timings, ripple_seconds,
                       identical, ripple_match)
