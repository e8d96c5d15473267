"""Emitters: text, JSON, LaTeX, and DOT renderings of the calculus.

JSON documents are schema-versioned and carry every rational as a
string, so no consumer can lose exactness; the truncation order used
to produce a document is always recorded in it.  Emission is
deterministic: equal inputs yield identical bytes.
"""

from __future__ import annotations

import json

from .embedded import EmbeddedRelation
from .immersed import NormalForm
from .lens import PosetJ, is_central, render_poset
from .rings import (
    AlphaPoly,
    PolyX,
    SeriesT,
    format_polyx,
    rat_to_str,
)

SCHEMA = "sphere-calculus/1"


def _dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def polyx_obj(p: PolyX):
    return [rat_to_str(c) for c in p.coeffs]


def alpha_obj(a: AlphaPoly):
    return [polyx_obj(c) for c in a.coeffs]


def _rat_latex(c) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    num, den = c.numerator, c.denominator
    sign = "-" if num < 0 else ""
    return r"%s\frac{%d}{%d}" % (sign, abs(num), den)


def polyx_latex(p: PolyX, var: str = "x") -> str:
    if not p:
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        if i == 0:
            term = _rat_latex(c)
        else:
            xs = var if i == 1 else "%s^{%d}" % (var, i)
            if c == 1:
                term = xs
            elif c == -1:
                term = "-" + xs
            else:
                term = _rat_latex(c) + xs
        parts.append(term)
    s = parts[0]
    for term in parts[1:]:
        s += " - " + term[1:] if term.startswith("-") else " + " + term
    return s


def _wrap(expr: str, always=False) -> str:
    if always or " " in expr or expr.startswith("-"):
        return "(" + expr + ")"
    return expr


def alpha_text(a: AlphaPoly, var: str = "alpha") -> str:
    if not a:
        return "0"
    parts = []
    for i, c in enumerate(a.coeffs):
        if not c:
            continue
        base = var if i == 1 else "%s^%d" % (var, i)
        if i == 0:
            parts.append(format_polyx(c))
        elif c == PolyX.const(1):
            parts.append(base)
        else:
            parts.append("%s*%s" % (_wrap(format_polyx(c)), base))
    return " + ".join(parts)


def alpha_latex(a: AlphaPoly, var: str = r"\alpha") -> str:
    if not a:
        return "0"
    parts = []
    for i, c in enumerate(a.coeffs):
        if not c:
            continue
        base = var if i == 1 else "%s^{%d}" % (var, i)
        if i == 0:
            parts.append(polyx_latex(c))
        elif c == PolyX.const(1):
            parts.append(base)
        else:
            parts.append(r"\left(%s\right)%s" % (polyx_latex(c), base))
    return " + ".join(parts)


# ---------------------------------------------------------------- series


def series_json(name: str, f: SeriesT) -> str:
    return _dump({
        "schema": SCHEMA,
        "kind": "series",
        "name": name,
        "order": f.order,
        "coefficients": [polyx_obj(c) for c in f.coeffs],
    })


def series_text(name: str, f: SeriesT) -> str:
    parts = []
    for i, c in enumerate(f.coeffs):
        if not c:
            continue
        if i == 0:
            parts.append(format_polyx(c))
        else:
            ts = "t" if i == 1 else "t^%d" % i
            if c == PolyX.const(1):
                parts.append(ts)
            else:
                parts.append("%s*%s" % (_wrap(format_polyx(c)), ts))
    body = " + ".join(parts) or "0"
    return "%s = %s + O(t^%d)\n" % (name, body, f.order)


def series_latex(name: str, f: SeriesT) -> str:
    parts = []
    for i, c in enumerate(f.coeffs):
        if not c:
            continue
        if i == 0:
            parts.append(polyx_latex(c))
        else:
            ts = "t" if i == 1 else "t^{%d}" % i
            if c == PolyX.const(1):
                parts.append(ts)
            else:
                parts.append(r"\left(%s\right)%s" % (polyx_latex(c), ts))
    body = " + ".join(parts) or "0"
    return "%s = %s + O(t^{%d})\n" % (name, body, f.order)


# ------------------------------------------------------------- embedded


def _mono_text(s_exp, b_exp, d_exp) -> str:
    out = []
    for sym, e in (("S", s_exp), ("B", b_exp), ("Delta", d_exp)):
        if e == 1:
            out.append(sym)
        elif e > 1:
            out.append("%s^%d" % (sym, e))
    return " ".join(out) or "1"


def _mono_latex(s_exp, b_exp, d_exp) -> str:
    out = []
    for sym, e in (("S", s_exp), ("B", b_exp), (r"\Delta", d_exp)):
        if e == 1:
            out.append(sym)
        elif e > 1:
            out.append("%s^{%d}" % (sym, e))
    return " ".join(out) or "1"


def embedded_text(rel: EmbeddedRelation) -> str:
    parts = []
    for power, coeff, mono in rel.terms():
        piece = _mono_text(*mono)
        if coeff != PolyX.const(1):
            piece = "%s %s" % (_wrap(format_polyx(coeff), always=True), piece)
        if power:
            sig = "sigma" if power == 1 else "sigma^%d" % power
            piece = "%s %s" % (sig, piece)
        parts.append(piece)
    body = " + ".join(parts) or "0"
    return "exp(t sigma) == %s   (n=%d, epsilon=%d, order %d)\n" % (
        body, rel.n, rel.epsilon, rel.order)


def embedded_latex(rel: EmbeddedRelation) -> str:
    parts = []
    for power, coeff, mono in rel.terms():
        piece = _mono_latex(*mono)
        if coeff != PolyX.const(1):
            piece = r"\left(%s\right)%s" % (polyx_latex(coeff), piece)
        if power:
            sig = r"\sigma" if power == 1 else r"\sigma^{%d}" % power
            piece = "%s %s" % (sig, piece)
        parts.append(piece)
    body = " + ".join(parts) or "0"
    return r"e^{t\sigma} \equiv %s" % body + "\n"


def embedded_json(rel: EmbeddedRelation) -> str:
    return _dump({
        "schema": SCHEMA,
        "kind": "embedded-relation",
        "n": rel.n,
        "epsilon": rel.epsilon,
        "order": rel.order,
        "cosh_terms": [
            {"sigma_power": p, "coefficient": polyx_obj(c),
             "monomial": {"S": m[0], "B": m[1], "Delta": m[2]}}
            for p, c, m in rel.cosh_terms
        ],
        "sinh_terms": [
            {"sigma_power": p, "coefficient": polyx_obj(c),
             "monomial": {"S": m[0], "B": m[1], "Delta": m[2]}}
            for p, c, m in rel.sinh_terms
        ],
    })


# ------------------------------------------------------------- immersed


def _lhs_text(nf: NormalForm, side: str) -> str:
    factor = "" if nf.r == 0 else (
        "(x^2-4)*" if nf.r == 1 else "(x^2-4)^%d*" % nf.r)
    return "D_w(%s%s(t*alpha))" % (factor, side)


def _rhs_text(nf: NormalForm, coeffs, kernel: str) -> str:
    if not coeffs:
        return "0"
    terms = []
    for i, c in enumerate(coeffs):
        qs = "" if i == 0 else ("q*" if i == 1 else "q^%d*" % i)
        terms.append("%s%s%s" % (_wrap(alpha_text(c), always=True), "*" + qs
                                 if qs else "*", kernel))
    body = " + ".join(terms)
    den = "" if nf.s == 0 else ("(2-x*q)" if nf.s == 1
                                else "(2-x*q)^%d" % nf.s)
    pre = "B^%d" % (-nf.a) if nf.a else ""
    head = "/".join(x for x in [pre or "1", den] if x)
    return "D_w(%s * (%s))" % (head, body)


def normal_form_text(nf: NormalForm) -> str:
    lines = [
        "structure equation  p=%d s=%d a=%d  (r=%d, k=%d, k0=%d)"
        % (nf.p, nf.s, nf.a, nf.r, nf.k, nf.k0),
        "%s = %s" % (_lhs_text(nf, "cosh"), _rhs_text(nf, nf.c, "Q'")),
        "%s = %s" % (_lhs_text(nf, "sinh"), _rhs_text(nf, nf.d, "Q")),
    ]
    return "\n".join(lines) + "\n"


def normal_form_latex(nf: NormalForm) -> str:
    factor = "" if nf.r == 0 else (
        "(x^2-4)" if nf.r == 1 else "(x^2-4)^{%d}" % nf.r)
    den = "" if nf.s == 0 else "(2-xq)^{%d}" % nf.s
    pre = "B^{%d}" % (-nf.a) if nf.a else ""
    lines = []
    for side, coeffs, kernel in (
        (r"\cosh", nf.c, "Q'"), (r"\sinh", nf.d, "Q")
    ):
        if not coeffs:
            rhs = "0"
        else:
            terms = []
            for i, c in enumerate(coeffs):
                qs = "" if i == 0 else ("q" if i == 1 else "q^{%d}" % i)
                terms.append(r"\left(%s\right)%s %s"
                             % (alpha_latex(c), qs, kernel))
            body = " + ".join(terms)
            if den:
                head = r"\frac{%s}{%s}" % (pre or "1", den)
            else:
                head = pre
            rhs = r"D_w\!\left(%s\left(%s\right)\right)" % (head, body)
        lines.append(
            r"D_w\!\left(%s %s(t\alpha)\right) = %s" % (factor, side, rhs))
    return "\n".join(lines) + "\n"


def normal_form_json(nf: NormalForm) -> str:
    return _dump({
        "schema": SCHEMA,
        "kind": "normal-form",
        "p": nf.p,
        "s": nf.s,
        "a": nf.a,
        "r": nf.r,
        "k": nf.k,
        "k0": nf.k0,
        "c": [alpha_obj(c) for c in nf.c],
        "d": [alpha_obj(d) for d in nf.d],
    })


# ----------------------------------------------------------------- lens


def chi_json(p: int, parity: int, classes) -> str:
    return _dump({
        "schema": SCHEMA,
        "kind": "character-variety",
        "p": p,
        "parity": parity & 1,
        "classes": [
            {"m": c.m, "trivial": c.trivial, "s": c.s} for c in classes
        ],
    })


def chi_text(p: int, parity: int, classes) -> str:
    body = ", ".join(
        ("{%d}" % c.m) if c.trivial else str(c.m) for c in classes)
    return "chi(L(%d,1), parity %s) = { %s }\n" % (
        p, "odd" if parity & 1 else "even", body)


def poset_json(j: PosetJ) -> str:
    return _dump({
        "schema": SCHEMA,
        "kind": "charge-poset",
        "n": j.n,
        "p": j.p,
        "parity": j.parity,
        "vertices": [
            {"m": m, "k": rat_to_str(k), "trivial": is_central(j.p, m)}
            for m, k in j.vertices
        ],
        "edges": [
            {"from": {"m": m1, "k": rat_to_str(k1)},
             "to": {"m": m2, "k": rat_to_str(k2)},
             "energy": rat_to_str(e)}
            for (m1, k1), (m2, k2), e in j.edges
        ],
    })


def poset_emit(j: PosetJ, format: str) -> str:
    if format == "json":
        return poset_json(j)
    return render_poset(j, format)
