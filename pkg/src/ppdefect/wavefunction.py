"""One-dimensional wavefunctions in position or momentum representation.

Four forms are supported:

``Gaussian``
    ``A exp(-q (u - c)**2 + i k (u - c))`` with ``q = 1/(4 sigma**2) + i chirp``.
    The family is closed under the Fourier transform and free evolution, so
    both are exact.
``Rectangle``
    A flat top of given width, prepared in its ``support`` representation and
    optionally evolved freely for a reduced time ``elapsed`` (hbar t / m).  It
    can be viewed in either representation; the other view is a sinc, and
    evolved views are written with Fresnel integrals.
``Grid``
    Uniformly sampled amplitudes, transformed with the FFT.
``Superposition``
    Weighted sum of any of the above in one representation.

Conventions: hbar = 1, ``<p|x> = exp(-i p x) / sqrt(2 pi)`` and free evolution
multiplies momentum amplitudes by ``exp(-i p**2 tau / 2)``.
"""

import csv
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

import numpy as np
from scipy import special

from .errors import ResolutionError
from .numerics import DEFAULT_SPEC, QuadratureSpec, integrate_complex

# Amplitude envelope cutoff used to truncate infinite-axis integrals.
ENVELOPE_CUTOFF = 1e-18
_GAUSS_REACH = 2.0 * math.sqrt(math.log(1.0 / ENVELOPE_CUTOFF))

DEFAULT_GRID_POINTS = 2**16
DEFAULT_GRID_REACH = 8.0
# Fraction of probability allowed in the outer 1/32 of a transformed grid.
GRID_EDGE_TOLERANCE = 1e-8


class Representation(str, Enum):
    POSITION = "position"
    MOMENTUM = "momentum"

    @property
    def other(self) -> "Representation":
        return Representation.MOMENTUM if self is Representation.POSITION else Representation.POSITION

    @property
    def axis(self) -> str:
        return "x" if self is Representation.POSITION else "p"


POSITION = Representation.POSITION
MOMENTUM = Representation.MOMENTUM


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"interval requires lo < hi, got [{self.lo}, {self.hi}]")

    @classmethod
    def centered(cls, width: float, center: float = 0.0) -> "Interval":
        return cls(center - 0.5 * width, center + 0.5 * width)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)


FULL_AXIS = Interval(-math.inf, math.inf)


def _result(u, values):
    if np.ndim(u) == 0:
        return complex(values)
    return values


def _fresnel(s):
    S, C = special.fresnel(s)
    return C + 1j * S


class Wavefunction:
    """Common interface of all forms."""

    representation: Representation

    def __call__(self, u):
        return self.evaluate(u)

    def evaluate(self, u):
        raise NotImplementedError

    def window(self):
        """(lo, hi) outside which the amplitude is negligible, or None for slowly decaying tails."""
        return None

    def breakpoints(self) -> tuple:
        return ()

    def spread(self) -> Optional[float]:
        """Characteristic width used to size default grids."""
        return None

    def fourier_transform(self) -> "Wavefunction":
        raise NotImplementedError

    def propagated(self, tau: float) -> "Wavefunction":
        raise NotImplementedError

    def scaled(self, factor: complex) -> "Wavefunction":
        raise NotImplementedError

    def rescaled(self, factor: float, representation: Representation) -> "Wavefunction":
        """Return ``u -> psi(u / factor) / sqrt(factor)`` read in ``representation``."""
        raise NotImplementedError

    def in_representation(self, representation: Representation) -> "Wavefunction":
        return self if self.representation is representation else self.fourier_transform()


@dataclass(frozen=True)
class Gaussian(Wavefunction):
    sigma: float
    center: float = 0.0
    amplitude: Optional[complex] = None
    representation: Representation = POSITION
    chirp: float = 0.0
    kick: float = 0.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.amplitude is None:
            object.__setattr__(self, "amplitude", complex((2.0 * math.pi * self.sigma**2) ** -0.25))
        else:
            object.__setattr__(self, "amplitude", complex(self.amplitude))
        object.__setattr__(self, "representation", Representation(self.representation))

    @property
    def q(self) -> complex:
        return complex(1.0 / (4.0 * self.sigma**2), self.chirp)

    @classmethod
    def from_q(cls, q, center, amplitude, representation, kick=0.0) -> "Gaussian":
        q = complex(q)
        return cls(
            sigma=0.5 / math.sqrt(q.real),
            center=float(center),
            amplitude=amplitude,
            representation=representation,
            chirp=q.imag,
            kick=float(kick),
        )

    def evaluate(self, u):
        y = np.asarray(u, dtype=float) - self.center
        return _result(u, self.amplitude * np.exp(-self.q * y * y + 1j * self.kick * y))

    def window(self):
        reach = _GAUSS_REACH * self.sigma
        return (self.center - reach, self.center + reach)

    def spread(self):
        return self.sigma

    def exponent_coefficients(self):
        """(alpha, beta, gamma) with psi(u) = exp(-alpha u**2 + beta u + gamma)."""
        q, c, k = self.q, self.center, self.kick
        if self.amplitude == 0:
            return q, 0j, -np.inf + 0j
        return q, 2 * q * c + 1j * k, -q * c * c - 1j * k * c + np.log(self.amplitude)

    def fourier_transform(self):
        q = self.q
        amp = self.amplitude * np.sqrt(1.0 / (2.0 * q)) * np.exp(-1j * self.kick * self.center)
        if self.representation is POSITION:
            center, kick = self.kick, -self.center
        else:
            center, kick = -self.kick, self.center
        return Gaussian.from_q(1.0 / (4.0 * q), center, amp, self.representation.other, kick)

    def propagated(self, tau):
        if tau == 0:
            return self
        if self.representation is POSITION:
            return self.fourier_transform().propagated(tau).fourier_transform()
        c = self.center
        return Gaussian.from_q(
            self.q + 0.5j * tau,
            c,
            self.amplitude * np.exp(-0.5j * tau * c * c),
            MOMENTUM,
            self.kick - tau * c,
        )

    def scaled(self, factor):
        return replace(self, amplitude=self.amplitude * factor)

    def rescaled(self, factor, representation):
        return Gaussian.from_q(
            self.q / factor**2,
            self.center * factor,
            self.amplitude / math.sqrt(factor),
            representation,
            self.kick / factor,
        )

    def norm_squared(self) -> float:
        return abs(self.amplitude) ** 2 * self.sigma * math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class Rectangle(Wavefunction):
    """Flat-top state prepared in ``support`` and evolved for reduced time ``elapsed``.

    At the two edges the rectangle takes half its height, the value to which
    the Fourier integral converges at a jump.
    """

    width: float
    center: float = 0.0
    amplitude: Optional[complex] = None
    representation: Representation = POSITION
    support: Optional[Representation] = None
    elapsed: float = 0.0

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError(f"width must be positive, got {self.width}")
        if self.amplitude is None:
            object.__setattr__(self, "amplitude", complex(1.0 / math.sqrt(self.width)))
        else:
            object.__setattr__(self, "amplitude", complex(self.amplitude))
        object.__setattr__(self, "representation", Representation(self.representation))
        support = self.representation if self.support is None else Representation(self.support)
        object.__setattr__(self, "support", support)

    @property
    def edges(self):
        return (self.center - 0.5 * self.width, self.center + 0.5 * self.width)

    @property
    def compact(self) -> bool:
        """True when the current view is the flat-top one."""
        return self.representation is self.support

    def _flat_top(self, u):
        lo, hi = self.edges
        tol = 1e-12 * max(1.0, abs(lo), abs(hi))
        inside = np.where((u > lo) & (u < hi), 1.0, 0.0)
        on_edge = (np.abs(u - lo) <= tol) | (np.abs(u - hi) <= tol)
        return self.amplitude * np.where(on_edge, 0.5, inside)

    def _sinc(self, u, sign):
        # (A / sqrt(2 pi)) * integral over the support of exp(sign * i * u * s) ds
        w, c = self.width, self.center
        return self.amplitude * np.exp(sign * 1j * u * c) * w * np.sinc(w * u / (2.0 * math.pi)) / math.sqrt(2.0 * math.pi)

    def _fresnel_position_support(self, x):
        tau = self.elapsed
        scale = math.sqrt(math.pi * abs(tau))
        lo, hi = self.edges
        f_hi = _fresnel((hi - x) / scale)
        f_lo = _fresnel((lo - x) / scale)
        if tau > 0:
            return self.amplitude * np.exp(-0.25j * math.pi) / math.sqrt(2.0) * (f_hi - f_lo)
        return self.amplitude * np.exp(0.25j * math.pi) / math.sqrt(2.0) * np.conj(f_hi - f_lo)

    def _fresnel_momentum_support(self, x):
        tau = self.elapsed
        scale = math.sqrt(abs(tau) / math.pi)
        lo, hi = self.edges
        f_hi = _fresnel((hi - x / tau) * scale)
        f_lo = _fresnel((lo - x / tau) * scale)
        diff = np.conj(f_hi - f_lo) if tau > 0 else f_hi - f_lo
        return self.amplitude / math.sqrt(2.0 * abs(tau)) * np.exp(0.5j * x * x / tau) * diff

    def evaluate(self, u):
        v = np.asarray(u, dtype=float)
        tau = self.elapsed
        if self.support is POSITION:
            if self.representation is POSITION:
                out = self._flat_top(v) if tau == 0 else self._fresnel_position_support(v)
            else:
                out = self._sinc(v, -1) * np.exp(-0.5j * tau * v * v)
        else:
            if self.representation is MOMENTUM:
                out = self._flat_top(v) * np.exp(-0.5j * tau * v * v)
            else:
                out = self._sinc(v, +1) if tau == 0 else self._fresnel_momentum_support(v)
        return _result(u, out)

    def window(self):
        return self.edges if self.compact else None

    def breakpoints(self):
        return self.edges if self.compact else ()

    def spread(self):
        return 0.5 * self.width if self.compact and self.elapsed == 0 else None

    def fourier_transform(self):
        return replace(self, representation=self.representation.other)

    def propagated(self, tau):
        return replace(self, elapsed=self.elapsed + tau)

    def scaled(self, factor):
        return replace(self, amplitude=self.amplitude * factor)

    def rescaled(self, factor, representation):
        if not self.compact or self.elapsed != 0:
            raise ValueError("only an unevolved rectangle in its flat-top view can be rescaled")
        return Rectangle(
            width=self.width * factor,
            center=self.center * factor,
            amplitude=self.amplitude / math.sqrt(factor),
            representation=representation,
        )

    def norm_squared(self) -> float:
        return abs(self.amplitude) ** 2 * self.width


def _dft(samples, step, origin, out_origin, sign):
    """Sample (1/sqrt(2 pi)) * sum_n step * psi_n * exp(sign * i * u_k * x_n) on the conjugate grid."""
    n = samples.size
    out_step = 2.0 * math.pi / (n * step)
    idx = np.arange(n)
    pre = samples * np.exp(sign * 1j * out_origin * idx * step)
    core = np.fft.fft(pre) if sign < 0 else np.fft.ifft(pre) * n
    phase = np.exp(sign * 1j * (out_origin * origin + idx * out_step * origin))
    return step / math.sqrt(2.0 * math.pi) * phase * core, out_step


def _edge_fraction(samples):
    density = np.abs(samples) ** 2
    total = density.sum()
    if total == 0:
        return 0.0
    m = max(1, samples.size // 32)
    return float((density[:m].sum() + density[-m:].sum()) / total)


@dataclass(frozen=True, eq=False)
class Grid(Wavefunction):
    """Uniform samples ``samples[n] = psi(origin + n * step)``.

    Norms and interval probabilities use the cell rule: sample ``n`` carries
    the density over ``[u_n - step/2, u_n + step/2]``.  With that rule the
    discrete Fourier transform preserves the norm exactly.
    """

    samples: np.ndarray
    step: float
    origin: float = 0.0
    representation: Representation = POSITION

    def __post_init__(self):
        arr = np.array(self.samples, dtype=complex)
        if arr.ndim != 1 or arr.size < 2:
            raise ValueError("grid needs a 1-d array with at least two samples")
        if not self.step > 0:
            raise ValueError(f"grid step must be positive, got {self.step}")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "representation", Representation(self.representation))

    @property
    def coords(self) -> np.ndarray:
        return self.origin + self.step * np.arange(self.samples.size)

    @property
    def last(self) -> float:
        return self.origin + self.step * (self.samples.size - 1)

    def same_axis(self, other: "Grid") -> bool:
        return (
            self.samples.size == other.samples.size
            and math.isclose(self.step, other.step, rel_tol=1e-12)
            and math.isclose(self.origin, other.origin, rel_tol=1e-12, abs_tol=1e-12 * self.step)
        )

    def evaluate(self, u):
        v = np.asarray(u, dtype=float)
        x = self.coords
        re = np.interp(v, x, self.samples.real, left=0.0, right=0.0)
        im = np.interp(v, x, self.samples.imag, left=0.0, right=0.0)
        return _result(u, re + 1j * im)

    def window(self):
        return (self.origin, self.last)

    def spread(self):
        return 0.5 * (self.last - self.origin) / DEFAULT_GRID_REACH

    def norm_squared(self) -> float:
        return float(self.step * np.sum(np.abs(self.samples) ** 2))

    def normalize(self) -> "Grid":
        norm = self.norm_squared()
        if norm == 0:
            raise ValueError("cannot normalize a zero grid")
        return replace(self, samples=self.samples / math.sqrt(norm))

    def interval_probability(self, lo: float, hi: float) -> float:
        x = self.coords
        h = self.step
        overlap = np.clip(np.minimum(x + 0.5 * h, hi) - np.maximum(x - 0.5 * h, lo), 0.0, None)
        return float(np.sum(np.abs(self.samples) ** 2 * overlap))

    def integral(self, lo: float = -math.inf, hi: float = math.inf) -> complex:
        x = self.coords
        h = self.step
        overlap = np.clip(np.minimum(x + 0.5 * h, hi) - np.maximum(x - 0.5 * h, lo), 0.0, None)
        return complex(np.sum(self.samples * overlap))

    def fourier_transform(self, check_resolution: bool = True) -> "Grid":
        n = self.samples.size
        out_step = 2.0 * math.pi / (n * self.step)
        out_origin = -(n // 2) * out_step
        sign = -1 if self.representation is POSITION else +1
        out, _ = _dft(self.samples, self.step, self.origin, out_origin, sign)
        if check_resolution and _edge_fraction(out) > GRID_EDGE_TOLERANCE:
            raise ResolutionError(
                f"{self.representation.value} grid with step {self.step:g} does not resolve "
                f"its transform: {_edge_fraction(out):.2e} of the probability sits at the band edges"
            )
        return Grid(out, out_step, out_origin, self.representation.other)

    def propagated(self, tau, check_resolution: bool = True):
        """Spectral free evolution.

        With ``check_resolution`` a :class:`ResolutionError` is raised when the
        spectrum or the evolved state reaches the grid edges.  Discontinuous
        samples (rectangles) never pass the spectral check and need it off.
        """
        if tau == 0:
            return self
        if self.representation is MOMENTUM:
            p = self.coords
            return replace(self, samples=self.samples * np.exp(-0.5j * tau * p * p))
        n = self.samples.size
        p_step = 2.0 * math.pi / (n * self.step)
        p_origin = -(n // 2) * p_step
        spectrum, _ = _dft(self.samples, self.step, self.origin, p_origin, -1)
        if check_resolution and _edge_fraction(spectrum) > GRID_EDGE_TOLERANCE:
            raise ResolutionError(f"grid step {self.step:g} is too coarse for the momentum content")
        p = p_origin + p_step * np.arange(n)
        spectrum = spectrum * np.exp(-0.5j * tau * p * p)
        out, _ = _dft(spectrum, p_step, p_origin, self.origin, +1)
        if check_resolution and _edge_fraction(out) > GRID_EDGE_TOLERANCE:
            raise ResolutionError(
                f"evolved state reaches the edge of the [{self.origin:g}, {self.last:g}] box; "
                "enlarge the grid span"
            )
        return replace(self, samples=out)

    def scaled(self, factor):
        return replace(self, samples=self.samples * factor)

    def rescaled(self, factor, representation):
        return Grid(self.samples / math.sqrt(factor), self.step * factor, self.origin * factor, representation)


@dataclass(frozen=True)
class Superposition(Wavefunction):
    parts: tuple
    representation: Representation = field(init=False)

    def __post_init__(self):
        parts = tuple((complex(w), wf) for w, wf in self.parts)
        if not parts:
            raise ValueError("superposition needs at least one part")
        reps = {wf.representation for _, wf in parts}
        if len(reps) != 1:
            raise ValueError("all parts of a superposition must share one representation")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "representation", reps.pop())

    def evaluate(self, u):
        v = np.asarray(u, dtype=float)
        total = sum(w * np.asarray(wf.evaluate(v)) for w, wf in self.parts)
        return _result(u, total)

    def window(self):
        windows = [wf.window() for _, wf in self.parts]
        if any(w is None for w in windows):
            return None
        return (min(w[0] for w in windows), max(w[1] for w in windows))

    def breakpoints(self):
        return tuple(sorted({b for _, wf in self.parts for b in wf.breakpoints()}))

    def spread(self):
        spreads = [wf.spread() for _, wf in self.parts]
        if any(s is None for s in spreads):
            return None
        return max(spreads)

    def _map(self, fn):
        return Superposition(tuple((w, fn(wf)) for w, wf in self.parts))

    def fourier_transform(self):
        return self._map(lambda wf: wf.fourier_transform())

    def propagated(self, tau):
        return self._map(lambda wf: wf.propagated(tau))

    def scaled(self, factor):
        return Superposition(tuple((w * factor, wf) for w, wf in self.parts))

    def rescaled(self, factor, representation):
        return self._map(lambda wf: wf.rescaled(factor, representation))


# ---------------------------------------------------------------------------
# Operations


def evaluate(wf: Wavefunction, u):
    """Amplitude of ``wf`` at ``u`` in its own representation."""
    return wf.evaluate(u)


def fourier_transform(wf: Wavefunction) -> Wavefunction:
    """Switch between position and momentum representation."""
    return wf.fourier_transform()


def terms(wf: Wavefunction):
    """Flatten nested superpositions into (weight, atom) pairs."""
    if isinstance(wf, Superposition):
        out = []
        for w, part in wf.parts:
            out.extend((w * w2, atom) for w2, atom in terms(part))
        return out
    return [(1.0 + 0j, wf)]


def _gauss_product(a: Gaussian, b: Gaussian):
    aa, ba, ga = a.exponent_coefficients()
    ab, bb, gb = b.exponent_coefficients()
    return np.conj(aa) + ab, np.conj(ba) + bb, np.conj(ga) + gb


def _gauss_integral(alpha, beta, gamma, lo=-math.inf, hi=math.inf):
    """Integral of exp(-alpha u**2 + beta u + gamma) over [lo, hi]."""
    if np.isneginf(gamma.real):
        return 0j
    full = np.sqrt(math.pi / alpha) * np.exp(beta * beta / (4 * alpha) + gamma)
    if not math.isfinite(lo) and not math.isfinite(hi):
        return complex(full)
    root = np.sqrt(alpha)
    shift = beta / (2 * alpha)

    def cdf(u):
        if u == math.inf:
            return 1.0
        if u == -math.inf:
            return -1.0
        return special.erf(root * (u - shift))

    return complex(0.5 * full * (cdf(hi) - cdf(lo)))


def _window_for_pair(a, b):
    wa, wb = a.window(), b.window()
    if wa is not None and wb is not None:
        return (max(wa[0], wb[0]), min(wa[1], wb[1]))
    return wa if wa is not None else wb


def _quadrature_overlap(a, b, spec, lo=-math.inf, hi=math.inf):
    """Integral of conj(a) * b, choosing a representation where one factor is bounded."""
    for rep in (a.representation, a.representation.other):
        if rep is not a.representation and (math.isfinite(lo) or math.isfinite(hi)):
            break
        xa, xb = a.in_representation(rep), b.in_representation(rep)
        win = _window_for_pair(xa, xb)
        if win is None:
            continue
        w_lo, w_hi = max(win[0], lo), min(win[1], hi)
        if w_lo >= w_hi:
            return 0j
        pts = [p for p in (*xa.breakpoints(), *xb.breakpoints())]
        return integrate_complex(lambda u: np.conj(xa.evaluate(u)) * xb.evaluate(u), w_lo, w_hi, spec, points=pts)
    raise ValueError(f"cannot bound the overlap integral of {type(a).__name__} and {type(b).__name__}")


def _atom_inner(a, b, spec):
    if isinstance(a, Gaussian) and isinstance(b, Gaussian):
        return _gauss_integral(*_gauss_product(a, b))
    if isinstance(a, Grid) and isinstance(b, Grid) and a.same_axis(b):
        return complex(a.step * np.vdot(a.samples, b.samples))
    if isinstance(a, Rectangle) and isinstance(b, Rectangle) and a.support is b.support:
        # Unitarity: <U(ta) a0 | U(tb) b0> = <a0 | U(tb - ta) b0>.
        shift = -a.elapsed
        a0 = a.propagated(shift).in_representation(a.support)
        b0 = b.propagated(shift).in_representation(a.support)
        if b0.elapsed == 0:
            lo = max(a0.edges[0], b0.edges[0])
            hi = min(a0.edges[1], b0.edges[1])
            return complex(np.conj(a0.amplitude) * b0.amplitude * max(hi - lo, 0.0))
        return _quadrature_overlap(a0, b0, spec)
    return _quadrature_overlap(a, b, spec)


def inner_product(a: Wavefunction, b: Wavefunction, spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """<a|b>, conjugate-linear in ``a``.  ``b`` is transformed to ``a``'s representation."""
    b = b.in_representation(a.representation)
    total = 0j
    for wa, xa in terms(a):
        for wb, xb in terms(b):
            total += np.conj(wa) * wb * _atom_inner(xa, xb, spec)
    return complex(total)


def norm_squared(wf: Wavefunction, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    if isinstance(wf, (Gaussian, Rectangle, Grid)):
        return wf.norm_squared()
    return inner_product(wf, wf, spec).real


def _clip_interval(wf, lo, hi):
    if math.isfinite(lo) and math.isfinite(hi):
        return lo, hi
    win = wf.window()
    if win is None:
        raise ValueError("semi-infinite interval on a wavefunction without a bounded window")
    return max(lo, win[0]), min(hi, win[1])


def _closed_gaussian_probability(wf, lo, hi):
    total = 0j
    atoms = terms(wf)
    for wa, a in atoms:
        for wb, b in atoms:
            if not (isinstance(a, Gaussian) and isinstance(b, Gaussian)):
                raise TypeError("closed-form interval probabilities need Gaussian parts only")
            total += np.conj(wa) * wb * _gauss_integral(*_gauss_product(a, b), lo, hi)
    return total.real


def interval_probability(
    wf: Wavefunction,
    iv: Interval,
    spec: QuadratureSpec = DEFAULT_SPEC,
    method: str = "auto",
) -> float:
    """Integral of |wf|**2 over ``iv`` in the wavefunction's own representation.

    ``method`` is ``"auto"`` (closed forms for a single Gaussian or flat-top
    rectangle, quadrature otherwise), ``"quadrature"`` or ``"closed"``
    (Gaussians and superpositions of Gaussians, via the complex error function).
    """
    lo, hi = iv.lo, iv.hi
    if method not in ("auto", "quadrature", "closed"):
        raise ValueError(f"unknown method {method!r}")
    if isinstance(wf, Grid):
        return wf.interval_probability(lo, hi)
    if method == "closed":
        return _closed_gaussian_probability(wf, lo, hi)
    if not iv.is_finite and lo == -math.inf and hi == math.inf and method == "auto":
        return norm_squared(wf, spec)
    if method == "auto":
        if isinstance(wf, Gaussian):
            return _closed_gaussian_probability(wf, lo, hi)
        if isinstance(wf, Rectangle) and wf.compact:
            e_lo, e_hi = wf.edges
            return abs(wf.amplitude) ** 2 * max(min(hi, e_hi) - max(lo, e_lo), 0.0)
    lo, hi = _clip_interval(wf, lo, hi)
    if lo >= hi:
        return 0.0
    return integrate_complex(lambda u: np.abs(wf.evaluate(u)) ** 2, lo, hi, spec, points=wf.breakpoints()).real


def amplitude_integral(
    wf: Wavefunction,
    iv: Interval = FULL_AXIS,
    spec: QuadratureSpec = DEFAULT_SPEC,
    method: str = "quadrature",
) -> complex:
    """Integral of the amplitude itself over ``iv`` (``"quadrature"`` or ``"closed"``)."""
    if isinstance(wf, Grid):
        return wf.integral(iv.lo, iv.hi)
    if method == "closed":
        total = 0j
        for w, atom in terms(wf):
            if not isinstance(atom, Gaussian):
                raise TypeError("closed-form amplitude integrals need Gaussian parts only")
            total += w * _gauss_integral(*atom.exponent_coefficients(), iv.lo, iv.hi)
        return total
    lo, hi = _clip_interval(wf, iv.lo, iv.hi)
    return integrate_complex(wf.evaluate, lo, hi, spec, points=wf.breakpoints())


def momentum_companion(phiL: Wavefunction, scenario) -> Wavefunction:
    """Momentum-localized state with the same shape: <p|phiB> = sqrt(L/B) <x = L p / B|phiL>.

    Returned in momentum representation; use :func:`fourier_transform` for positions.
    """
    if phiL.representation is not POSITION:
        raise ValueError("phiL must be given in position representation")
    return phiL.rescaled(scenario.B / scenario.L, MOMENTUM)


def sample(
    wf: Wavefunction,
    n: int = DEFAULT_GRID_POINTS,
    half_width: Optional[float] = None,
    center: float = 0.0,
) -> Grid:
    """Sample ``wf`` on ``center + (k - n//2) * step``, spanning ``+-half_width``.

    By default the span is 8 characteristic widths of the widest component.
    """
    if half_width is None:
        spread = wf.spread()
        if spread is None:
            raise ValueError("wavefunction has no characteristic width; pass half_width")
        half_width = DEFAULT_GRID_REACH * spread
    step = 2.0 * half_width / n
    origin = center - (n // 2) * step
    coords = origin + step * np.arange(n)
    return Grid(np.asarray(wf.evaluate(coords), dtype=complex), step, origin, wf.representation)


def l2_distance(a: Grid, b: Wavefunction) -> float:
    """L2 distance between a grid and any wavefunction, on the grid's nodes."""
    diff = a.samples - np.asarray(b.evaluate(a.coords))
    return math.sqrt(a.step * float(np.sum(np.abs(diff) ** 2)))


def write_grid_csv(grid: Grid, path) -> None:
    axis = grid.representation.axis
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([axis, "re", "im"])
        for u, z in zip(grid.coords, grid.samples):
            writer.writerow([f"{u:.17g}", f"{z.real:.17g}", f"{z.imag:.17g}"])


def read_grid_csv(path) -> Grid:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = [h.strip() for h in next(reader)]
        rows = [[float(v) for v in row] for row in reader if row]
    if header not in (["x", "re", "im"], ["p", "re", "im"]):
        raise ValueError(f"unexpected grid header {header}; expected x,re,im or p,re,im")
    data = np.array(rows, dtype=float)
    if data.shape[0] < 2:
        raise ValueError("grid file needs at least two rows")
    steps = np.diff(data[:, 0])
    step = float(steps.mean())
    if not np.allclose(steps, step, rtol=1e-9, atol=0.0) or step <= 0:
        raise ValueError("grid file must have a uniform, increasing axis")
    rep = POSITION if header[0] == "x" else MOMENTUM
    return Grid(data[:, 1] + 1j * data[:, 2], step, float(data[0, 0]), rep)
