"""Hamming-weight controlled bijections between integer intervals.

Two shapes are produced, each as a self-checking certificate:

* ``graham``: [0, r] -> [s, s+r] with |theta(x)| >= |x|;
* ``generalized``: T = [s, s+r-1] -> B = [s-r-t+1, s-t] with
  |theta(x)| >= |x| - |t|, for r, t >= 1 and s >= r+t-1.

Here |x| is the Hamming weight. Weight conditions of the form
|y| >= |x| - c give a chain bipartite graph (neighbourhoods are nested by
weight), so pairing both sides in order of decreasing weight is a perfect
matching whenever one exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from projlab.errors import ConstructionError, DomainError
from projlab.report import Diagnosis, Report


@dataclass(frozen=True)
class BijectionCertificate:
    shape: str  # "graham" or "generalized"
    s: int
    r: int
    t: int | None
    pairs: tuple[tuple[int, int], ...]
    method: str = "recursive"

    @property
    def domain(self) -> tuple[int, int]:
        if self.shape == "graham":
            return 0, self.r
        return self.s, self.s + self.r - 1

    @property
    def codomain(self) -> tuple[int, int]:
        if self.shape == "graham":
            return self.s, self.s + self.r
        return self.s - self.r - self.t + 1, self.s - self.t

    @property
    def slack(self) -> int:
        """Weight loss allowed per pair."""
        return 0 if self.shape == "graham" else self.t.bit_count()

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def to_json(self) -> dict:
        out = {"shape": self.shape, "s": self.s, "r": self.r}
        if self.t is not None:
            out["t"] = self.t
        out["pairs"] = [[x, y] for x, y in self.pairs]
        out["method"] = self.method
        return out

    @classmethod
    def from_json(cls, data: dict) -> "BijectionCertificate":
        return cls(
            data["shape"],
            int(data["s"]),
            int(data["r"]),
            None if data.get("t") is None else int(data["t"]),
            tuple((int(x), int(y)) for x, y in data["pairs"]),
            data.get("method", "recursive"),
        )


class NoBijectionExists(ConstructionError):
    """No bijection meets the weight bound; ``hall`` records why.

    ``hall`` is (w, need, have): ``need`` domain elements require an image
    of weight >= w but only ``have`` codomain elements reach that weight.
    """

    def __init__(self, s: int, r: int, t: int | None, hall: tuple[int, int, int]):
        self.s, self.r, self.t, self.hall = s, r, t, hall
        w, need, have = hall
        super().__init__(
            f"no weight-feasible bijection for s={s}, r={r}, t={t}: "
            f"{need} elements need image weight >= {w}, only {have} available"
        )


def hall_violation(domain: range, codomain: range, slack: int) -> tuple[int, int, int] | None:
    """First weight threshold at which the codomain runs short, if any."""
    need_at = [max(x.bit_count() - slack, 0) for x in domain]
    have_at = [y.bit_count() for y in codomain]
    for w in sorted(set(need_at), reverse=True):
        need = sum(1 for v in need_at if v >= w)
        have = sum(1 for v in have_at if v >= w)
        if need > have:
            return w, need, have
    return None


def check_certificate(c: BijectionCertificate) -> Diagnosis:
    """Bijectivity between the declared intervals plus the weight bound."""
    problems = []
    if c.shape not in ("graham", "generalized"):
        return Diagnosis(False, [f"unknown shape {c.shape!r}"])
    if c.shape == "generalized" and (c.t is None or c.t < 1):
        return Diagnosis(False, ["generalized certificate needs t >= 1"])
    d_lo, d_hi = c.domain
    c_lo, c_hi = c.codomain
    xs = [x for x, _ in c.pairs]
    ys = [y for _, y in c.pairs]
    if sorted(xs) != list(range(d_lo, d_hi + 1)):
        problems.append(f"domain is not exactly [{d_lo}, {d_hi}] with each element once")
    if sorted(ys) != list(range(c_lo, c_hi + 1)):
        problems.append(f"codomain is not exactly [{c_lo}, {c_hi}] with each element once")
    slack = c.slack
    for x, y in c.pairs:
        if y < 0 or y.bit_count() < x.bit_count() - slack:
            problems.append(f"weight violation at ({x}, {y}): |{y}| < |{x}| - {slack}")
    return Diagnosis(not problems, problems)


def _sorted_matching(domain: range, codomain: range, slack: int) -> list[int] | None:
    """Images of ``domain`` (in order) under the weight-sorted pairing, or None."""
    xs = sorted(domain, key=lambda v: (-v.bit_count(), v))
    ys = sorted(codomain, key=lambda v: (-v.bit_count(), v))
    image = {}
    for x, y in zip(xs, ys):
        if y.bit_count() < x.bit_count() - slack:
            return None
        image[x] = y
    return [image[x] for x in domain]


@lru_cache(maxsize=1 << 16)
def _graham_images(s: int, r: int) -> tuple[int, ...]:
    images = _sorted_matching(range(r + 1), range(s, s + r + 1), 0)
    if images is None:
        raise NoBijectionExists(s, r, None, hall_violation(range(r + 1), range(s, s + r + 1), 0))
    return tuple(images)


def graham_bijection(s: int, r: int) -> BijectionCertificate:
    """theta: [0, r] -> [s, s+r] with |theta(x)| >= |x|."""
    if s < 0 or r < 0:
        raise DomainError(f"need s, r >= 0, got s={s}, r={r}")
    images = _graham_images(s, r)
    return BijectionCertificate("graham", s, r, None, tuple(zip(range(r + 1), images)))


@lru_cache(maxsize=1 << 16)
def _generalized_images(s: int, r: int, t: int) -> tuple[int, ...]:
    """Images of s, s+1, ..., s+r-1, built by splitting on the leading column."""
    if r == 1:
        return (s - t,)
    top = s + r - 1
    low = s - r - t + 1
    lead = 1 << (top.bit_length() - 1)

    if low >= lead:
        # leading column is all ones: drop it, every weight falls by one
        return tuple(y + lead for y in _generalized_images(s - lead, r, t))

    if lead >= s:
        # 100...0 is a row of T: T1 = [lead, top] goes to the bottom of B
        head = _generalized_images(s, lead - s, t) if lead > s else ()
        return head + _graham_images(low, top - lead)

    if lead <= s - t:
        # 100...0 is a row of B: B2 = [lead, s-t] pairs with T2 = [s, ...]
        r2 = s - t - lead + 1
        head = _generalized_images(s, r2, t)
        full = (lead << 1) - 1
        t1_lo = s + r2
        g = _graham_images(full - top, top - t1_lo)
        # theta4(y) = ~g(p-1-y) maps B1 = [low, lead-1] onto T1; invert it
        inverse = {full - g[lead - 1 - y]: y for y in range(low, lead)}
        return head + tuple(inverse[x] for x in range(t1_lo, top + 1))

    # 100...0 falls in the gap (s-t, s): T sits above it and B below it
    domain, codomain = range(s, top + 1), range(low, s - t + 1)
    images = _sorted_matching(domain, codomain, t.bit_count())
    if images is None:
        raise NoBijectionExists(s, r, t, hall_violation(domain, codomain, t.bit_count()))
    return tuple(images)


def _images_any(s: int, r: int, t: int) -> tuple[tuple[int, ...], str]:
    """Recursive split first; if a sub-instance has no bijection, match the
    whole instance directly."""
    try:
        return _generalized_images(s, r, t), "recursive"
    except NoBijectionExists:
        domain, codomain = range(s, s + r), range(s - r - t + 1, s - t + 1)
        images = _sorted_matching(domain, codomain, t.bit_count())
        if images is None:
            raise NoBijectionExists(s, r, t, hall_violation(domain, codomain, t.bit_count())) from None
        return tuple(images), "matching"


def generalized_bijection(s: int, r: int, t: int) -> BijectionCertificate:
    """theta: [s, s+r-1] -> [s-r-t+1, s-t] with |theta(x)| >= |x| - |t|.

    Raises :class:`NoBijectionExists` when no such map exists; this happens
    for some t with |t| = 1 and t >= 4, e.g. (s, r, t) = (5, 2, 4).
    """
    if r < 1 or t < 1 or s < r + t - 1:
        raise DomainError(f"need r, t >= 1 and s >= r + t - 1; got s={s}, r={r}, t={t}")
    images, method = _images_any(s, r, t)
    cert = BijectionCertificate("generalized", s, r, t, tuple(zip(range(s, s + r), images)), method)
    diagnosis = check_certificate(cert)
    if not diagnosis:
        raise ConstructionError("; ".join(diagnosis.problems))
    return cert


def reverse_triangle(x: int, t: int) -> bool:
    """|x - t| >= |x| - |t| for x >= t >= 0."""
    if not x >= t >= 0:
        raise DomainError(f"need x >= t >= 0, got x={x}, t={t}")
    return (x - t).bit_count() >= x.bit_count() - t.bit_count()


def sweep_generalized(limit: int = 256, ts=None) -> Report:
    """Certificates for every r, t >= 1, s >= r+t-1 with s + r <= limit.

    ``ts`` restricts t to the given values. Instances with no feasible
    bijection at all are reported as violations carrying a Hall witness.
    """
    params = {"shape": "generalized", "limit": limit}
    if ts is not None:
        params["t"] = sorted(ts)
    report = Report("bijection", params)
    weight = [v.bit_count() for v in range(limit + 1)]
    with report.timed():
        for s in range(limit):
            for t in range(1, s + 1):
                if ts is not None and t not in ts:
                    continue
                slack = weight[t]
                for r in range(1, min(limit - s, s - t + 1) + 1):
                    report.tuples_checked += 1
                    try:
                        images, _ = _images_any(s, r, t)
                    except NoBijectionExists as exc:
                        report.violations.append({"s": s, "r": r, "t": t, "hall": list(exc.hall)})
                        continue
                    lo = s - r - t + 1
                    passed = sorted(images) == list(range(lo, s - t + 1)) and all(
                        weight[y] >= weight[x] - slack for x, y in zip(range(s, s + r), images)
                    )
                    if not passed:
                        report.violations.append({"s": s, "r": r, "t": t})
    return report


def sweep_graham(limit: int = 128) -> Report:
    """Certificates for every 0 <= s, r <= limit."""
    report = Report("bijection", {"shape": "graham", "limit": limit})
    with report.timed():
        for s in range(limit + 1):
            for r in range(limit + 1):
                diagnosis = check_certificate(graham_bijection(s, r))
                report.record({"s": s, "r": r}, diagnosis.ok, keep=False)
    return report


def _popcounts(bits: int) -> np.ndarray:
    values = np.arange(1 << bits, dtype=np.uint32)
    return np.bitwise_count(values).astype(np.int8)


def verify_reverse_triangle(bits: int = 16) -> Report:
    """Exhaustive |x - t| >= |x| - |t| over 0 <= t <= x < 2^bits."""
    report = Report("obs44", {"bits": bits})
    weight = _popcounts(bits)
    with report.timed():
        for x in range(1 << bits):
            t = np.arange(x + 1)
            bad = weight[x - t] < weight[x] - weight[t]
            report.tuples_checked += x + 1
            for tt in np.flatnonzero(bad):
                report.violations.append({"x": x, "t": int(tt)})
    return report
