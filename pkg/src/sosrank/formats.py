"""Text and JSON formats for forms, ideals and Newton graphs.

Polynomial text: terms like ``+3/2 x1^2 x2``, either one per line or several
on one line (``x1^2 - x1 x2 + x2^2``).  Zero exponents are omitted and the
constant monomial is written ``1``.  Ideal text: one generator per line as
``x1^a x2^b x3^c``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .combinatorics import MultiIndex
from .errors import ParseError
from .hermitian import SignedForm
from .ideal import MonomialIdeal, canonical_key

_FACTOR = re.compile(r"x(\d+)(?:\^(\d+))?")
_COEFF = re.compile(r"(\d+)(?:/(\d+))?")


def format_monomial(a, sep: str = " ") -> str:
    parts = []
    for i, e in enumerate(a, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return sep.join(parts) if parts else "1"


def format_fraction(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _parse_factors(text: str) -> dict[int, int]:
    exps: dict[int, int] = {}
    pos = 0
    text = text.strip()
    while pos < len(text):
        if text[pos] in " *\t":
            pos += 1
            continue
        m = _FACTOR.match(text, pos)
        if not m:
            raise ParseError(f"cannot parse monomial factor at {text[pos:]!r}")
        var = int(m.group(1))
        if var < 1:
            raise ParseError("variables are numbered from x1")
        exps[var] = exps.get(var, 0) + int(m.group(2) or 1)
        pos = m.end()
    return exps


def parse_monomial(text: str, n: int) -> MultiIndex:
    text = text.strip()
    if text == "1":
        return MultiIndex([0] * n)
    exps = _parse_factors(text)
    if not exps:
        raise ParseError(f"empty monomial {text!r}")
    if max(exps) > n:
        raise ParseError(f"variable x{max(exps)} exceeds n={n}")
    return MultiIndex(exps.get(i, 0) for i in range(1, n + 1))


def parse_terms(text: str, n: int | None = None) -> tuple[int, dict[MultiIndex, Fraction]]:
    """Parse polynomial text into ``(n, {exponents: coefficient})``.

    ``n`` defaults to the largest variable index present (at least 1).
    """
    body = " ".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    if not body:
        raise ParseError("empty polynomial")
    chunks = [c for c in re.split(r"(?=[+-])", body) if c.strip()]
    raw = []
    for chunk in chunks:
        chunk = chunk.strip()
        sign = 1
        if chunk[0] in "+-":
            sign = -1 if chunk[0] == "-" else 1
            chunk = chunk[1:].strip()
        coeff = Fraction(1)
        m = _COEFF.match(chunk)
        if m:
            den = int(m.group(2) or 1)
            if den == 0:
                raise ParseError("zero denominator")
            coeff = Fraction(int(m.group(1)), den)
            chunk = chunk[m.end():]
            if chunk.strip().startswith("*"):
                chunk = chunk.strip()[1:]
            exps = _parse_factors(chunk) if chunk.strip() else {}
        else:
            if not chunk:
                raise ParseError("dangling sign")
            exps = _parse_factors(chunk)
            if not exps:
                raise ParseError(f"cannot parse term {chunk!r}")
        raw.append((sign * coeff, exps))
    top = max((max(e) for _, e in raw if e), default=1)
    if n is None:
        n = top
    elif top > n:
        raise ParseError(f"variable x{top} exceeds n={n}")
    terms: dict[MultiIndex, Fraction] = {}
    for c, exps in raw:
        key = MultiIndex(exps.get(i, 0) for i in range(1, n + 1))
        terms[key] = terms.get(key, Fraction(0)) + c
    return n, {k: v for k, v in terms.items() if v}


def parse_form(text: str, n: int | None = None) -> SignedForm:
    n, terms = parse_terms(text, n)
    if not terms:
        raise ParseError("polynomial is identically zero")
    degrees = {k.degree() for k in terms}
    if len(degrees) != 1:
        raise ParseError(f"polynomial is not homogeneous (degrees {sorted(degrees)})")
    return SignedForm(n, degrees.pop(), terms)


def format_terms(terms, one_per_line: bool = True) -> str:
    items = sorted(((MultiIndex(k), Fraction(v)) for k, v in terms.items() if v),
                   key=lambda kv: canonical_key(kv[0]))
    out = []
    for k, v in items:
        sign = "-" if v < 0 else "+"
        mag = abs(v)
        mono = format_monomial(k)
        if mono == "1":
            out.append(f"{sign}{format_fraction(mag)}")
        else:
            out.append(f"{sign}{format_fraction(mag)} {mono}")
    if not out:
        return "0"
    return "\n".join(out) if one_per_line else " ".join(out)


def format_form(f: SignedForm, one_per_line: bool = True) -> str:
    return format_terms(f.coefficients, one_per_line)


def form_to_json(f: SignedForm) -> dict:
    return {
        "n": f.n,
        "degree": f.degree,
        "terms": [
            {"exponents": list(k), "num": v.numerator, "den": v.denominator}
            for k, v in f.coefficients.items()
        ],
    }


def form_from_json(obj: dict) -> SignedForm:
    coeffs = {}
    for t in obj["terms"]:
        key = MultiIndex(t["exponents"])
        if key in coeffs:
            raise ParseError(f"duplicate term {t['exponents']}")
        coeffs[key] = Fraction(int(t["num"]), int(t["den"]))
    return SignedForm(int(obj["n"]), int(obj["degree"]), coeffs)


def parse_ideal(text: str, n: int | None = None) -> MonomialIdeal:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("ideal has no generators")
    factor_sets = [_parse_factors(ln) if ln != "1" else {} for ln in lines]
    top = max((max(f) for f in factor_sets if f), default=1)
    if n is None:
        n = top
    elif top > n:
        raise ParseError(f"variable x{top} exceeds n={n}")
    gens = [MultiIndex(f.get(i, 0) for i in range(1, n + 1)) for f in factor_sets]
    degrees = {g.degree() for g in gens}
    if len(degrees) != 1:
        raise ParseError("generators must all have the same degree")
    try:
        return MonomialIdeal(n, degrees.pop(), tuple(gens))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_ideal(I: MonomialIdeal) -> str:
    return "\n".join(format_monomial(g) for g in I.generators)
