"""Series criteria and inequalities deciding the logarithm property.

Each series evaluator returns a SeriesReport carrying certified term
enclosures and running partial sums; no convergence of an infinite series is
ever asserted from finitely many terms, the verdict strings are descriptive.

Fractional powers are certified root enclosures (default relative tolerance
2^-64).  Wherever the exponent tower allows it, a term is rewritten as a
single k-th root of a rational -- e.g. the weighted-error term
k^-1 (k^delta eps)^(1/(delta+1)) collapses to (eps/k)^(1/(delta+1)) -- so one
enclosure per term suffices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _scan
from .bestapprox import ApproxRecord, best_linear, best_simultaneous, linear_profile
from .errors import DegenerateInputError, DomainError, PrecisionError
from .exact import (CertifiedScalar, CertifiedVector, Verdict, as_vector,
                    certified_dist_nearest_lattice, certified_form_dist, rational)
from .roots import pow_enclosure

DEFAULT_REL_BITS = 64


def _pow_cs(x: CertifiedScalar, num: int, den: int,
            rel_bits: int = DEFAULT_REL_BITS) -> CertifiedScalar:
    lo, hi = pow_enclosure(x.lo, x.hi, num, den, rel_bits=rel_bits)
    return CertifiedScalar.from_bounds(lo, hi)


def _sup_norm(vec) -> int:
    v = max(abs(int(c)) for c in vec)
    if v == 0:
        raise DomainError("zero vector has no norm record")
    return v


# ---------------------------------------------------------------------------
# series reports


@dataclass(frozen=True)
class SeriesReport:
    label: str
    terms: tuple[tuple[int, CertifiedScalar], ...]  # (index n, term value)
    partial_sums: tuple[CertifiedScalar, ...]
    tail_estimate: CertifiedScalar
    verdict: str

    def window_sum(self, lo: int, hi: int) -> CertifiedScalar:
        """Sum of the terms with index n in [lo, hi] (inclusive)."""
        total = CertifiedScalar.exact(0)
        seen = False
        for n, t in self.terms:
            if lo <= n <= hi:
                total = total + t
                seen = True
        if not seen:
            raise DomainError(f"no terms with index in [{lo}, {hi}]")
        return total


def _assemble(label: str, terms: list[tuple[int, CertifiedScalar]]) -> SeriesReport:
    sums = []
    acc = CertifiedScalar.exact(0)
    for _n, t in terms:
        acc = acc + t
        sums.append(acc)
    if terms:
        tail_lo = terms[max(0, len(terms) - max(1, len(terms) // 5))][0]
        tail = CertifiedScalar.exact(0)
        for n, t in terms:
            if n >= tail_lo:
                tail = tail + t
    else:
        tail = CertifiedScalar.exact(0)
    verdict = (f"partial sums up to {len(terms)} terms; no convergence claim"
               if terms else "empty report")
    return SeriesReport(label, tuple(terms), tuple(sums), tail, verdict)


def series_thm5(theta, x_seq, n_terms: int, *,
                rel_bits: int = DEFAULT_REL_BITS) -> SeriesReport:
    """Terms (|X_{n+1}|^d * |<X_n, theta>|_Z)^(1/(d+1)) for n = 0..n_terms-1.

    x_seq must hold at least n_terms+1 integer vectors of strictly
    increasing sup norm.
    """
    theta = as_vector(theta)
    d = theta.dim
    x_seq = [tuple(int(c) for c in x) for x in x_seq]
    if n_terms < 0:
        raise DomainError("term count must be >= 0")
    if n_terms and len(x_seq) < n_terms + 1:
        raise DomainError(f"{n_terms} terms need {n_terms + 1} vectors, got {len(x_seq)}")
    norms = [_sup_norm(x) for x in x_seq]
    for a, b in zip(norms, norms[1:]):
        if b <= a:
            raise DomainError("vector norms must be strictly increasing")
    terms = []
    for n in range(n_terms):
        eps = certified_form_dist(x_seq[n], theta)
        if eps.is_exact and eps.value == 0:
            raise DegenerateInputError(
                f"<X_{n}, theta> is exactly an integer; the series degenerates")
        base = eps * CertifiedScalar.exact(Fraction(norms[n + 1]) ** d)
        terms.append((n, _pow_cs(base, 1, d + 1, rel_bits)))
    return _assemble("vector-sequence series", terms)


def series_lemma22(theta, k_max: int, delta, *,
                   rel_bits: int = DEFAULT_REL_BITS,
                   budget: int = _scan.DEFAULT_BUDGET) -> SeriesReport:
    """Terms k^-1 (k^delta eps_l(k))^(1/(delta+1)) for k = 1..k_max.

    delta >= 1 (delta = d recovers the harmonic form of the dyadic
    condition).  eps_l is evaluated once per step of its profile.
    """
    theta = as_vector(theta)
    delta = rational(delta)
    if delta < 1:
        raise DomainError("delta must be >= 1")
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    prof = linear_profile(theta, k_max, budget=budget)
    # exponent 1/(delta+1) = q/(p+q) for delta = p/q; the term collapses to
    # (eps_l(k)/k)^(1/(delta+1))
    p, q = delta.numerator, delta.denominator
    terms = []
    for k in range(1, k_max + 1):
        eps = prof.value(k)
        base = eps * CertifiedScalar.exact(Fraction(1, k))
        terms.append((k, _pow_cs(base, q, p + q, rel_bits)))
    return _assemble(f"harmonic weighted-error series (delta={delta})", terms)


def dyadic_condition_iii(theta, n_max: int, *,
                         rel_bits: int = DEFAULT_REL_BITS,
                         budget: int = _scan.DEFAULT_BUDGET) -> SeriesReport:
    """Terms (2^(n d) eps_l(2^n))^(1/(d+1)) for n = 0..n_max-1."""
    theta = as_vector(theta)
    d = theta.dim
    if n_max < 0:
        raise DomainError("term count must be >= 0")
    terms = []
    if n_max:
        prof = linear_profile(theta, 2 ** (n_max - 1), budget=budget)
        for n in range(n_max):
            eps = prof.value(2 ** n)
            base = eps * CertifiedScalar.exact(Fraction(2) ** (n * d))
            terms.append((n, _pow_cs(base, 1, d + 1, rel_bits)))
    return _assemble("dyadic weighted-error series", terms)


def series_prop32(theta, q_seq, n_terms: int, *,
                  rel_bits: int = DEFAULT_REL_BITS) -> SeriesReport:
    """Terms (q_n^(1/d) |q_{n-1} theta|_Z)^(1/(d+1)) for n = 1..n_terms.

    Rewritten as (q_n * eps^d)^(1/(d(d+1))) so a single root enclosure per
    term suffices.  q_seq needs n_terms+1 strictly increasing positive
    entries.
    """
    theta = as_vector(theta)
    d = theta.dim
    q_seq = [int(q) for q in q_seq]
    if n_terms < 0:
        raise DomainError("term count must be >= 0")
    if n_terms and len(q_seq) < n_terms + 1:
        raise DomainError(f"{n_terms} terms need {n_terms + 1} denominators")
    if any(q <= 0 for q in q_seq):
        raise DomainError("denominators must be positive")
    for a, b in zip(q_seq, q_seq[1:]):
        if b <= a:
            raise DomainError("denominator sequence must be strictly increasing")
    terms = []
    for n in range(1, n_terms + 1):
        eps = certified_dist_nearest_lattice(q_seq[n - 1], theta)
        base = CertifiedScalar.from_bounds(eps.lo ** d, eps.hi ** d) \
            * CertifiedScalar.exact(Fraction(q_seq[n]))
        terms.append((n, _pow_cs(base, 1, d * (d + 1), rel_bits)))
    return _assemble("simultaneous-denominator series", terms)


# ---------------------------------------------------------------------------
# transfer inequality


@dataclass(frozen=True)
class TransferReport:
    dimension: int
    h: Fraction
    constant: Fraction  # C = 1/(2(d+1))
    lhs: CertifiedScalar  # eps_l(h)
    rhs: CertifiedScalar  # eps_s(C h^d) / (C h^(d-1))
    holds: bool


def transfer_check(theta, h, *, budget: int = _scan.DEFAULT_BUDGET) -> TransferReport:
    """Check eps_l(h) <= eps_s(C h^d) / (C h^(d-1)) with C = 1/(2(d+1)).

    Both sides are evaluated by exhaustive certified scans and compared
    exactly; an inconclusive comparison raises PrecisionError.
    """
    theta = as_vector(theta)
    d = theta.dim
    h = rational(h)
    c = Fraction(1, 2 * (d + 1))
    if h < 1:
        raise DomainError("h must be >= 1")
    if c * h ** d < 1:
        raise DomainError(
            f"C h^d = {c * h ** d} < 1: no multiplier available on the right side")
    h_floor = h.numerator // h.denominator
    lhs, _w = _scan.linear_min(theta, h_floor, budget=budget)
    q_cut = (c * h ** d).numerator // (c * h ** d).denominator
    recs, den, _z = _scan.simultaneous_scan(theta, q_cut, budget=budget, records=False)
    q_star, dist = recs[-1]
    eps_s = CertifiedScalar(Fraction(dist, den), q_star * theta.radius)
    scale = 1 / (c * h ** (d - 1))
    rhs = eps_s * CertifiedScalar.exact(scale)
    verdict = lhs.require_compare(rhs, "transfer inequality sides")
    return TransferReport(d, h, c, lhs, rhs, verdict is not Verdict.GREATER)


# ---------------------------------------------------------------------------
# Diophantine-type evidence


@dataclass(frozen=True)
class TypeEvidence:
    """Scaled best-approximation sequences backing a limsup/liminf claim.

    kind 'limsup' scales record n by the *next* record height (evidence that
    the scaled sequence stays away from 0 infinitely often); kind 'liminf'
    scales by the record's own height (evidence it always stays away from 0).
    Raw data only: no membership verdicts here.
    """

    mode: str   # "simultaneous" | "linear"
    kind: str   # "limsup" | "liminf"
    tau: Fraction
    samples: tuple[tuple[int, CertifiedScalar], ...]
    running_inf: Fraction       # min of sample lower bounds
    tail_sup: Fraction          # max of sample lower bounds over the last half

    @property
    def positive_inf(self) -> bool:
        return self.running_inf > 0

    @property
    def positive_tail_sup(self) -> bool:
        return self.tail_sup > 0


def _evidence(mode, kind, tau, samples) -> TypeEvidence:
    if samples:
        lows = [s.lo for _n, s in samples]
        run_inf = min(lows)
        tail = lows[len(lows) // 2:]
        tail_sup = max(tail)
    else:
        run_inf = Fraction(0)
        tail_sup = Fraction(0)
    return TypeEvidence(mode, kind, tau, tuple(samples), run_inf, tail_sup)


def type_evidence(theta, tau, mode: str, depth: int, *,
                  records: list[ApproxRecord] | None = None,
                  rel_bits: int = DEFAULT_REL_BITS,
                  budget: int = _scan.DEFAULT_BUDGET) -> tuple[TypeEvidence, TypeEvidence]:
    """Scaled record sequences for Diophantine-type evidence.

    Returns (limsup_evidence, liminf_evidence) over the first `depth`
    records.  For simultaneous mode the scalings are q_{n+1}^((1+tau)/d) and
    q_n^((1+tau)/d) applied to |q_n theta|_Z; for linear mode they are
    h_{n+1}^(d(1+tau)) and h_n^(d(1+tau)) applied to the record values.

    records, when given, replaces the internal scan (use for constructed
    vectors whose records exceed any scan budget); it must hold at least
    depth+1 records.
    """
    theta = as_vector(theta)
    d = theta.dim
    tau = rational(tau)
    if tau < 0:
        raise DomainError("tau must be >= 0")
    if depth < 0:
        raise DomainError("depth must be >= 0")
    if mode not in ("simultaneous", "linear"):
        raise DomainError("mode must be 'simultaneous' or 'linear'")
    if depth == 0:
        return (_evidence(mode, "limsup", tau, []), _evidence(mode, "liminf", tau, []))
    if records is None:
        records = _collect_records(theta, mode, depth + 1, budget)
    if len(records) < depth + 1:
        raise DomainError(
            f"need {depth + 1} records for depth {depth}, have {len(records)}")
    one_tau = 1 + tau
    if mode == "simultaneous":
        exp_num, exp_den = one_tau.numerator, one_tau.denominator * d
    else:
        exp_num, exp_den = d * one_tau.numerator, one_tau.denominator
    limsup_samples = []
    liminf_samples = []
    for n in range(depth):
        value = records[n].value
        for kind, height in (("limsup", records[n + 1].height),
                             ("liminf", records[n].height)):
            lo, hi = pow_enclosure(Fraction(height), Fraction(height),
                                   exp_num, exp_den, rel_bits=rel_bits)
            scaled = CertifiedScalar.from_bounds(lo, hi) * value
            (limsup_samples if kind == "limsup" else liminf_samples).append((n, scaled))
    return (_evidence(mode, "limsup", tau, limsup_samples),
            _evidence(mode, "liminf", tau, liminf_samples))


def _collect_records(theta, mode, count, budget):
    """Scan with doubling height until `count` records emerge (or budget)."""
    cut = 256
    while True:
        if mode == "simultaneous":
            recs = best_simultaneous(theta, cut, budget=budget)
        else:
            recs = best_linear(theta, cut, budget=budget)
        if len(recs) >= count:
            return recs
        if recs and recs[-1].value.is_exact and recs[-1].value.value == 0:
            raise DegenerateInputError(
                "record sequence terminates at an exact lattice hit "
                f"after {len(recs)} records")
        cut *= 2  # budget guard inside the scan stops the doubling


# ---------------------------------------------------------------------------
# window bound


@dataclass(frozen=True)
class WindowBound:
    index: int
    delta: Fraction
    l_lower: CertifiedScalar   # window start L_n
    l_upper: CertifiedScalar   # window end L_{n+1}
    bound: CertifiedScalar     # measure bound 2(L_{n+1> eps_n + d L_n^(-1/delta) |X_n|)

    def integer_window(self) -> tuple[int, int]:
        """Largest integer range (start, end) certainly inside (L_n, L_{n+1}]."""
        lo = self.l_lower.hi
        hi = self.l_upper.lo
        start = lo.numerator // lo.denominator + 1
        end = hi.numerator // hi.denominator
        if end < start:
            raise DomainError("window contains no certified integers")
        return start, end


def window_bound(theta, x_seq, delta, n: int, *,
                 rel_bits: int = DEFAULT_REL_BITS) -> WindowBound:
    """Window boundaries L_n = (|X_n|/eps_{n-1})^(delta/(delta+1)) and the
    measure bound 2(L_{n+1} eps_n + d L_n^(-1/delta) |X_n|).

    Needs x_seq[n-1], x_seq[n], x_seq[n+1], so n >= 1.
    """
    theta = as_vector(theta)
    d = theta.dim
    delta = rational(delta)
    if delta < 1:
        raise DomainError("delta must be >= 1")
    if n < 1:
        raise DomainError("window index must be >= 1 (needs the previous vector)")
    x_seq = [tuple(int(c) for c in x) for x in x_seq]
    if len(x_seq) < n + 2:
        raise DomainError(f"window {n} needs {n + 2} vectors, got {len(x_seq)}")
    p, q = delta.numerator, delta.denominator

    def window_edge(idx):
        """L_idx = (|X_idx| / eps_{idx-1})^(delta/(delta+1))."""
        eps = certified_form_dist(x_seq[idx - 1], theta)
        if eps.hi == 0:
            raise DegenerateInputError("zero form distance: window edge undefined")
        if eps.lo <= 0:
            raise PrecisionError(
                f"form distance at step {idx - 1} not conclusively positive")
        norm = Fraction(_sup_norm(x_seq[idx]))
        lo, hi = pow_enclosure(norm / eps.hi, norm / eps.lo, p, p + q, rel_bits=rel_bits)
        return CertifiedScalar.from_bounds(lo, hi), eps, norm

    l_n, eps_prev, norm_n = window_edge(n)
    l_next, eps_n, _ = window_edge(n + 1)
    # L_n^(-1/delta) = (eps_{n-1}/|X_n|)^(1/(delta+1))
    lo, hi = pow_enclosure(eps_prev.lo / norm_n, eps_prev.hi / norm_n,
                           q, p + q, rel_bits=rel_bits)
    inv_root = CertifiedScalar.from_bounds(lo, hi)
    two = CertifiedScalar.exact(2)
    dim_norm = CertifiedScalar.exact(d * norm_n)
    bound = two * (l_next * eps_n + inv_root * dim_norm)
    return WindowBound(n, delta, l_n, l_next, bound)
