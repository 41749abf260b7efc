"""Line-oriented code descriptor files.

Example::

    qcc/1
    p: 2
    n: 5
    m: 1
    g: f2:3
    f: f2:17
    h: f2:21
    h_eta: f4:7:2
    h_cosets: 2
    a: f2:12
    bch: 3 1 2
    k: 1
    d: 3

Keys always appear in this order.  ``m`` through ``bch`` are present only for
4^m + 1 codes and ``d`` only once a distance has been computed.  Reading a
descriptor recomputes every field and raises :class:`DescriptorError` naming
the first field that disagrees.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from .cyclic_code import (
    CyclicStabiliserCode,
    GeneratingTriple,
    exact_distance,
    validate_triple,
)
from .errors import BudgetExceeded, DescriptorError, QCCError
from .fourm import FourMCode, construct_from_cosets
from .poly import BinaryPoly, QuartPoly, from_hex, to_hex

HEADER = "qcc/1"
KEYS = ("p", "n", "m", "g", "f", "h", "h_eta", "h_cosets", "a", "bch", "k", "d")
REQUIRED = ("p", "n", "g", "f", "h", "k")
FOURM_KEYS = ("m", "h_eta", "h_cosets", "a", "bch")


@dataclass(frozen=True)
class CodeDescriptor:
    n: int
    g: BinaryPoly
    f: BinaryPoly
    h: BinaryPoly
    k: int
    p: int = 2
    m: int | None = None
    h_eta: QuartPoly | None = None
    h_cosets: tuple[int, ...] | None = None
    a: BinaryPoly | None = None
    bch: tuple[int, int, int] | None = None
    d: int | None = None

    @property
    def triple(self) -> GeneratingTriple:
        return GeneratingTriple(self.n, self.g, self.f, self.h)

    @property
    def is_fourm(self) -> bool:
        return self.m is not None

    def code(self) -> CyclicStabiliserCode:
        return CyclicStabiliserCode.from_triple(self.triple)

    def fourm_code(self) -> FourMCode:
        if not self.is_fourm:
            raise DescriptorError("descriptor does not describe a 4^m+1 code")
        return construct_from_cosets(self.m, self.g, self.h_cosets)

    def label(self) -> str:
        d = self.d if self.d is not None else (self.bch[0] if self.bch else "?")
        return f"[[{self.n},{self.k},{d}]]"

    def dumps(self) -> str:
        values = {
            "p": str(self.p),
            "n": str(self.n),
            "m": None if self.m is None else str(self.m),
            "g": to_hex(self.g),
            "f": to_hex(self.f),
            "h": to_hex(self.h),
            "h_eta": None if self.h_eta is None else to_hex(self.h_eta),
            "h_cosets": None if self.h_cosets is None else " ".join(map(str, self.h_cosets)),
            "a": None if self.a is None else to_hex(self.a),
            "bch": None if self.bch is None else " ".join(map(str, self.bch)),
            "k": str(self.k),
            "d": None if self.d is None else str(self.d),
        }
        lines = [HEADER] + [f"{key}: {values[key]}" for key in KEYS if values[key] is not None]
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps())


def from_fourm(code: FourMCode, d: int | None = None) -> CodeDescriptor:
    t = code.triple
    return CodeDescriptor(
        n=code.n, g=t.g, f=t.f, h=t.h, k=code.k, m=code.m, h_eta=code.h,
        h_cosets=code.h_cosets, a=code.a, bch=code.bch, d=d,
    )


def from_triple(t: GeneratingTriple, d: int | None = None) -> CodeDescriptor:
    check = validate_triple(t)
    if not check:
        raise DescriptorError("invalid triple: " + "; ".join(check.failures))
    code = CyclicStabiliserCode.from_triple(t)
    return CodeDescriptor(n=t.n, g=t.g, f=t.f, h=t.h, k=code.k, d=d)


def _parse_fields(text: str) -> dict[str, str]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != HEADER:
        raise DescriptorError(f"missing header line {HEADER!r}")
    fields: dict[str, str] = {}
    for ln in lines[1:]:
        key, sep, value = ln.partition(":")
        key = key.strip()
        if not sep or key not in KEYS:
            raise DescriptorError(f"unrecognised line {ln!r}")
        if key in fields:
            raise DescriptorError(f"duplicate key {key!r}")
        fields[key] = value.strip()
    missing = [k for k in REQUIRED if k not in fields]
    if missing:
        raise DescriptorError(f"missing fields: {', '.join(missing)}")
    present = [k for k in FOURM_KEYS if k in fields]
    if present and len(present) != len(FOURM_KEYS):
        raise DescriptorError("4^m+1 fields must appear together: " + ", ".join(FOURM_KEYS))
    return fields


def _binary(fields: dict[str, str], key: str) -> BinaryPoly:
    try:
        u = from_hex(fields[key])
    except ValueError as exc:
        raise DescriptorError(f"{key}: {exc}") from None
    if not isinstance(u, BinaryPoly):
        raise DescriptorError(f"{key} must be an f2 polynomial")
    return u


def _ints(fields: dict[str, str], key: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in fields[key].split())
    except ValueError:
        raise DescriptorError(f"{key} must be whitespace-separated integers") from None


def _int(fields: dict[str, str], key: str) -> int:
    values = _ints(fields, key)
    if len(values) != 1:
        raise DescriptorError(f"{key} must be a single integer")
    return values[0]


def loads(text: str, *, verify_distance: bool = True) -> CodeDescriptor:
    """Parse and re-verify a descriptor.

    The triple must pass validate_triple, k must match the symplectic rank, and
    4^m + 1 fields must match a fresh construction.  A stored ``d`` is
    recomputed when ``verify_distance`` is set and the enumeration fits the
    default budget.
    """
    fields = _parse_fields(text)
    p, n, k = _int(fields, "p"), _int(fields, "n"), _int(fields, "k")
    if p != 2:
        raise DescriptorError("p: only p = 2 descriptors are supported")
    desc = CodeDescriptor(n=n, g=_binary(fields, "g"), f=_binary(fields, "f"),
                          h=_binary(fields, "h"), k=k, p=p)
    check = validate_triple(desc.triple)
    if not check:
        raise DescriptorError("triple: " + "; ".join(check.failures))
    code = desc.code()
    if code.k != k:
        raise DescriptorError(f"k: stored {k}, recomputed {code.k}")

    if "m" in fields:
        m = _int(fields, "m")
        leaders = _ints(fields, "h_cosets")
        try:
            h_eta = from_hex(fields["h_eta"])
        except ValueError as exc:
            raise DescriptorError(f"h_eta: {exc}") from None
        try:
            fresh = construct_from_cosets(m, desc.g, leaders)
        except QCCError as exc:
            raise DescriptorError(f"m/g/h_cosets: {exc}") from None
        stored = {"h_eta": h_eta if isinstance(h_eta, QuartPoly) else h_eta.to_quart(),
                  "a": _binary(fields, "a"), "bch": _ints(fields, "bch"),
                  "f": desc.f, "h": desc.h}
        recomputed = {"h_eta": fresh.h, "a": fresh.a, "bch": tuple(fresh.bch),
                      "f": fresh.triple.f, "h": fresh.triple.h}
        for key, value in stored.items():
            if value != recomputed[key]:
                raise DescriptorError(f"{key}: stored value disagrees with the construction")
        desc = replace(desc, m=m, h_eta=fresh.h, h_cosets=fresh.h_cosets, a=fresh.a,
                       bch=tuple(fresh.bch))

    if "d" in fields:
        d = _int(fields, "d")
        if verify_distance:
            try:
                got = exact_distance(code).d
            except BudgetExceeded:
                got = None
            if got is not None and got != d:
                raise DescriptorError(f"d: stored {d}, recomputed {got}")
        desc = replace(desc, d=d)
    return desc


def read(path: str | Path, **kwargs) -> CodeDescriptor:
    return loads(Path(path).read_text(), **kwargs)
