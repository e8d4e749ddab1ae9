"""Scripted sessions behind ``padicprec demo`` and ``padicprec bench``.

Each demo is a function ``(cfg, mode) -> iterator of (input, output)``
run once per mode on identically seeded inputs.  Outputs are strings in digit
notation; the caller lays the modes out side by side.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .demos import charpoly, det, euclid_gcd, gcd_inputs, random_matrix, random_poly, somos4
from .elements import PAdicRing, random_element
from .errors import PrecisionError

DEFAULT_SEED = 2


@dataclass
class RunConfig:
    demo: str
    prime: int | None = None
    prec: int | None = None
    ring_prec: int = 20
    relcap: int | None = None
    abscap: int | None = None
    seed: int = DEFAULT_SEED
    modes: tuple = ("CR", "LC", "LF")
    fmt: str = "text"
    n: list | None = None
    dim: int | None = None
    degree: int | None = None
    count: int | None = None
    sizes: list = field(default_factory=list)
    table: str = "sizes"
    hist_degree: int = 7

    def __post_init__(self):
        if self.prime is not None and self.prime < 2:
            raise ValueError("prime must be at least 2")
        for name in ("prec", "ring_prec", "relcap", "abscap", "dim", "degree", "count"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"{name} must be at least 1")


def make_ring(cfg: RunConfig, mode: str, p: int, field: bool = False) -> PAdicRing:
    return PAdicRing(
        p, cfg.ring_prec, mode, field=field, relcap=cfg.relcap, abscap=cfg.abscap
    )


def _ring_label(p, field):
    return f"{'Q' if field else 'Z'}{p}"


# -- demos ----------------------------------------------------------------------


def demo_arithmetic(cfg: RunConfig, mode: str):
    p = cfg.prime or 3
    prec = cfg.prec or 5
    R = make_ring(cfg, mode, p)
    rng = random.Random(cfg.seed)
    name = _ring_label(p, False)
    x = random_element(R, prec, rng)
    yield f"x = random_element({name}, prec={prec}); x", str(x)
    yield f"{p}*x", str(p * x)
    s = x
    for _ in range(p - 1):
        s = s + x
    yield " + ".join(["x"] * p), str(s)
    del s
    hi, lo = 2 * prec, prec
    x = random_element(R, hi, rng)
    y = random_element(R, lo, rng)
    yield f"x = random_element({name}, prec={hi}); y = random_element({name}, prec={lo})", f"{x}, {y}"
    u, v = x + y, x - y
    yield "u, v = x + y, x - y; u + v", str(u + v)
    yield "2*x", str(2 * x)


def demo_somos(cfg: RunConfig, mode: str):
    p = cfg.prime or 2
    prec = cfg.prec or 15
    R = make_ring(cfg, mode, p)
    name = _ring_label(p, False)
    u = [R(1, prec), R(1, prec), R(1, prec), R(3, prec)]
    yield f"u0 = u1 = u2 = {name}(1,{prec}); u3 = {name}(3,{prec})", None
    for n in cfg.n or [18, 100]:
        yield f"somos4(u0, u1, u2, u3, {n})", lambda n=n: str(somos4(*u, n))


def demo_matmul(cfg: RunConfig, mode: str):
    p = cfg.prime or 2
    prec = cfg.prec or 5
    dim = cfg.dim or 2
    count = cfg.count or 26
    R = make_ring(cfg, mode, p)
    rng = random.Random(cfg.seed)
    M = random_matrix(R, dim, prec, rng)
    for _ in range(count - 1):
        M = M * random_matrix(R, dim, prec, rng)
    yield (
        f"M = product of {count} random_element(MatrixSpace({_ring_label(p, False)},{dim}), prec={prec}); M",
        str(M),
    )


def demo_charpoly(cfg: RunConfig, mode: str):
    p = cfg.prime or 2
    prec = cfg.prec or 10
    dim = cfg.dim or 3
    R = make_ring(cfg, mode, p, field=True)
    M = random_matrix(R, dim, prec, random.Random(cfg.seed), unit=True)
    yield f"M = random_element(MatrixSpace({_ring_label(p, True)},{dim}), prec={prec})", None
    yield "M.determinant()", lambda: str(det(M))
    yield "M.charpoly()", lambda: str(charpoly(M))


def demo_gcd(cfg: RunConfig, mode: str):
    p = cfg.prime or 2
    prec = cfg.prec or 5
    degree = cfg.degree or 10
    R = make_ring(cfg, mode, p, field=True)
    A, B, D = gcd_inputs(R, cfg.seed, degree=degree, prec=prec, ddegree=5, dprec=prec + 3)
    yield (
        f"P, Q = random polynomials of degree {degree}, prec={prec}; "
        f"D = x^5 + random polynomial of degree 4, prec={prec + 3}; D",
        str(D),
    )
    yield "euclidean(D*P, D*Q)", lambda: str(euclid_gcd(A, B))


def _format_lattice(rows) -> str:
    cells = [[str(x) for x in r] for r in rows]
    width = max(len(c) for r in cells for c in r)
    return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)


def demo_lattice(cfg: RunConfig, mode: str):
    p = cfg.prime or 2
    R = make_ring(cfg, mode, p)
    name = _ring_label(p, False)
    x, y = R(987, 10), R(21, 5)
    yield f"x = {name}(987,10); y = {name}(21,5)", None
    yield "precision_lattice([x, y])", _format_lattice(R.precision_lattice([x, y]))
    u, v = x + y, x - y
    yield "u, v = x + y, x - y", None
    yield "precision_lattice([u, v])", _format_lattice(R.precision_lattice([u, v]))
    yield "number_of_diffused_digits([u, v])", f"diffused digits: {R.number_of_diffused_digits([u, v])}"
    yield "u + v", str(u + v)


DEMOS = {
    "arithmetic": demo_arithmetic,
    "somos": demo_somos,
    "matmul": demo_matmul,
    "charpoly": demo_charpoly,
    "gcd": demo_gcd,
    "lattice": demo_lattice,
}


@dataclass
class Transcript:
    mode: str
    steps: list = field(default_factory=list)  # (input, output or None)
    failed: bool = False  # a non-precision error escaped


def run_session(cfg: RunConfig, mode: str) -> Transcript:
    """Run one demo in one mode; precision failures end the transcript."""
    out = Transcript(mode)
    it = DEMOS[cfg.demo](cfg, mode)
    while True:
        try:
            key, value = next(it)
        except StopIteration:
            break
        except PrecisionError as exc:
            out.steps.append(("(error)", f"PrecisionError: {exc}"))
            break
        except Exception as exc:  # noqa: BLE001 - reported, run continues with other modes
            out.steps.append(("(error)", f"{type(exc).__name__}: {exc}"))
            out.failed = True
            break
        if callable(value):
            try:
                value = value()
            except PrecisionError as exc:
                out.steps.append((key, f"PrecisionError: {exc}"))
                break
            except Exception as exc:  # noqa: BLE001
                out.steps.append((key, f"{type(exc).__name__}: {exc}"))
                out.failed = True
                break
        out.steps.append((key, value))
    return out


# -- benchmarks -----------------------------------------------------------------


def bench_gcd(cfg: RunConfig, mode: str, degree: int):
    """Instrumentation of one Euclidean run on random polynomials of ``degree``."""
    p = cfg.prime or 2
    prec = cfg.prec or 20
    R = make_ring(cfg, mode, p, field=True)
    rng = random.Random(cfg.seed)
    P = random_poly(R, degree, prec, rng)
    Q = random_poly(R, degree, prec, rng)
    G = euclid_gcd(P, Q)
    del P, Q, G
    return R.instrumentation()


def bench_charpoly(cfg: RunConfig, mode: str, dim: int):
    p = cfg.prime or 2
    prec = cfg.prec or 10
    R = make_ring(cfg, mode, p, field=True)
    M = random_matrix(R, dim, prec, random.Random(cfg.seed), unit=True)
    cp = charpoly(M)
    del M, cp
    return R.instrumentation()


BENCHES = {"gcd": bench_gcd, "charpoly": bench_charpoly}


__all__ = [
    "DEFAULT_SEED",
    "RunConfig",
    "Transcript",
    "DEMOS",
    "BENCHES",
    "run_session",
    "make_ring",
]
