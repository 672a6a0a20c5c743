"""Command line front end. Every command prints one JSON document to stdout.

Exit codes: 0 success, 1 validation or axiom failure, 2 inconclusive bounded
search.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import corpus as _corpus
from .closure import IDEAL_CLOSURE_NAMES, apply_closure
from .congruence import (
    CongruenceRel,
    congruence_to_document,
    load_congruence,
    prime_congruences,
    radical_congruence,
    spec_c,
)
from .fragment import cd_example, fragment_member, fragment_to_document, parse_bool_poly, partners_scan
from .ideals import IdealSet, NotAnIdeal, enumerate_ideals, spec_k
from .lattice import (
    i_rad_compact,
    idealization,
    lattice_to_document,
    lattice_to_dot,
    lattice_to_semiring,
    load_lattice,
    radicalization,
    realize_space,
    semiring_to_lattice,
    zariski_space,
)
from .semiring import (
    CapabilityError,
    DocumentError,
    FiniteSemiring,
    SemiringError,
    classify,
    load_finite_semiring,
    semiring_to_document,
)
from .topology import (
    SearchBoundError,
    find_homeomorphism,
    is_spectral,
    load_space,
    sierpinski_space,
    space_from_poset,
    space_to_document,
    space_to_dot,
    Poset,
)
from .valuation import spv, spv_topology, valuation_to_document

OK, FAIL, INCONCLUSIVE = "ok", "validation-failure", "inconclusive"
EXIT = {OK: 0, FAIL: 1, INCONCLUSIVE: 2}


@dataclass
class CommandResult:
    status: str
    payload: dict = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]

    def to_document(self) -> dict:
        return {"status": self.status, "result": self.payload, "diagnostics": self.diagnostics}


# ---------------------------------------------------------------- inputs


BUILTIN_SPACES = {
    "point": lambda: space_from_poset(Poset(("p",), ((True,),))),
    "sierpinski": sierpinski_space,
    "V": lambda: space_from_poset(
        Poset(("g", "a", "b"), ((True, True, True), (False, True, False), (False, False, True)))
    ),
}


def _read(arg: str):
    p = Path(arg)
    if p.exists():
        try:
            return json.loads(p.read_text())
        except json.JSONDecodeError as exc:
            raise DocumentError(f"{arg}: not valid JSON: {exc}") from None
    return None


def load_semiring_arg(arg: str) -> FiniteSemiring:
    """A semiring document path or a builtin name (``B``, ``chain3``, ``S4_3``...)."""
    doc = _read(arg)
    if doc is not None:
        return load_finite_semiring(doc, name=Path(arg).stem)
    if arg in _corpus.NAMED:
        return _corpus.named(arg)
    if arg.startswith("S") and "_" in arg:
        try:
            n = int(arg[1:].split("_")[0])
        except ValueError:
            n = 0
        if 1 <= n <= 5:
            for S in _corpus.enumerate_semirings(n):
                if S.name == arg:
                    return S
    raise DocumentError(f"{arg!r} is neither a readable document nor a builtin semiring")


def load_space_arg(arg: str):
    doc = _read(arg)
    if doc is not None:
        return load_space(doc)
    if arg in BUILTIN_SPACES:
        return BUILTIN_SPACES[arg]()
    raise DocumentError(f"{arg!r} is neither a readable document nor a builtin space")


def _labels(S: FiniteSemiring, text: str) -> list[int]:
    text = text.strip()
    items = json.loads(text) if text.startswith("[") else [t for t in text.split(",") if t.strip()]
    return [S.index(str(t).strip()) for t in items]


def _blocks(S: FiniteSemiring, text: str) -> CongruenceRel:
    """``[["0","a"],["1"]]`` or ``0,a|1``; singletons may be omitted."""
    text = text.strip()
    if text.startswith("["):
        blocks = json.loads(text)
    else:
        blocks = [b.split(",") for b in text.split("|") if b.strip()]
    blocks = [[str(x).strip() for x in b] for b in blocks]
    seen = {x for b in blocks for x in b}
    blocks += [[x] for x in S.names if x not in seen]
    return load_congruence(S, blocks)


def _write_dot(path: str | None, text: str, res: CommandResult) -> None:
    if path:
        Path(path).write_text(text)
        res.diagnostics.append(f"wrote DOT to {path}")


def _space_payload(X) -> dict:
    P = X.specialization()
    doc = space_to_document(X)
    doc["specialization"] = [[P.points[a], P.points[b]] for a, b in P.covers()]
    v = is_spectral(X)
    doc["spectral"] = v.spectral
    return doc


# ---------------------------------------------------------------- commands


def cmd_validate(a) -> CommandResult:
    doc = _read(a.doc)
    if doc is None:
        S = load_semiring_arg(a.doc)
        return CommandResult(OK, {"kind": "semiring", "elements": list(S.names)})
    if isinstance(doc, dict) and "result" in doc:
        # output of an earlier command: validate the document it carries
        doc = doc["result"]
        for key in ("semiring", "lattice", "spectrum"):
            if isinstance(doc, dict) and key in doc:
                doc = doc[key]
                break
    if not isinstance(doc, dict):
        raise DocumentError("unrecognized document")
    if "add" in doc:
        S = load_finite_semiring(doc)
        return CommandResult(OK, {"kind": "semiring", "elements": list(S.names)})
    if "points" in doc:
        X = load_space(doc)
        return CommandResult(OK, {"kind": "space", "points": list(X.points), "spectral": is_spectral(X).spectral})
    if "leq" in doc or "join" in doc:
        L = load_lattice(doc)
        return CommandResult(OK, {"kind": "lattice", "elements": list(L.names), "distributive": L.is_distributive()})
    raise DocumentError("unrecognized document")


def cmd_props(a) -> CommandResult:
    S = load_semiring_arg(a.doc)
    return CommandResult(OK, {"semiring": S.name, "properties": classify(S).__dict__})


def cmd_ideals(a) -> CommandResult:
    S = load_semiring_arg(a.doc)
    out = [{"members": I.labels, "kind": I.kind} for I in enumerate_ideals(S, a.kind)]
    return CommandResult(OK, {"semiring": S.name, "kind": a.kind, "ideals": out})


def cmd_speck(a) -> CommandResult:
    S = load_semiring_arg(a.doc)
    X = spec_k(S)
    res = CommandResult(OK, _space_payload(X))
    _write_dot(a.dot, space_to_dot(X, "SpecK"), res)
    return res


def cmd_specc(a) -> CommandResult:
    S = load_semiring_arg(a.doc)
    X = spec_c(S)
    payload = _space_payload(X)
    payload["primes"] = [congruence_to_document(C) for C in prime_congruences(S)]
    res = CommandResult(OK, payload)
    _write_dot(a.dot, space_to_dot(X, "SpecC"), res)
    return res


def cmd_spv(a) -> CommandResult:
    S = load_semiring_arg(a.doc)
    X = spv_topology(S)
    payload = _space_payload(X)
    payload["valuations"] = [valuation_to_document(v) for v in spv(S)]
    res = CommandResult(OK, payload)
    _write_dot(a.dot, space_to_dot(X, "Spv"), res)
    return res


def cmd_zar(a) -> CommandResult:
    S = load_semiring_arg(a.doc)
    X = zariski_space(S)
    res = CommandResult(OK, _space_payload(X))
    _write_dot(a.dot, space_to_dot(X, "Zar"), res)
    return res


def cmd_closure(a) -> CommandResult:
    S = load_semiring_arg(a.doc)
    I = IdealSet(S, frozenset(_labels(S, a.ideal)))
    if not I.is_ideal:
        raise NotAnIdeal(f"{I} is not an ideal of {S.name}")
    C = _blocks(S, a.congruence) if a.congruence else None
    J, derivation = apply_closure(S, a.op, I, C)
    return CommandResult(OK, {"op": a.op, "ideal": I.labels, "closure": J.labels, "derivation": derivation})


def cmd_radical_congruence(a) -> CommandResult:
    S = load_semiring_arg(a.doc)
    C = _blocks(S, a.blocks)
    R = radical_congruence(S, C)
    G = radical_congruence(S, C, method="gp")
    res = CommandResult(OK, {"congruence": congruence_to_document(C), "radical": congruence_to_document(R)})
    if R != G:
        res.status = FAIL
        res.diagnostics.append(f"generalized-power radical {G} differs from the prime intersection {R}")
    return res


def cmd_duality(a) -> CommandResult:
    if a.direction == "to-lattice":
        S = load_semiring_arg(a.doc)
        L = semiring_to_lattice(S)
        res = CommandResult(OK, {"lattice": lattice_to_document(L)})
    elif a.direction == "from-lattice":
        doc = _read(a.doc)
        if doc is None:
            raise DocumentError(f"cannot read lattice document {a.doc!r}")
        L = load_lattice(doc)
        S = lattice_to_semiring(L)
        res = CommandResult(OK, {"semiring": semiring_to_document(S)})
    else:
        doc = _read(a.doc)
        if doc is not None and "add" not in doc:
            L = load_lattice(doc)
            S = lattice_to_semiring(L)
            L2 = semiring_to_lattice(S)
            same = (L2.join, L2.meet, L2.leq) == (L.join, L.meet, L.leq)
        else:
            S = load_semiring_arg(a.doc)
            L = semiring_to_lattice(S)
            S2 = lattice_to_semiring(L)
            same = S2.table_key() == S.table_key()
        res = CommandResult(OK if same else FAIL, {"lattice": lattice_to_document(L), "identical": same})
    _write_dot(a.dot, lattice_to_dot(L), res)
    return res


def _quotient_payload(R) -> dict:
    S = R.semiring
    return {"semiring": semiring_to_document(S), "congruence": congruence_to_document(R.congruence)}


def cmd_idealize(a) -> CommandResult:
    S = load_semiring_arg(a.doc)
    return CommandResult(OK, _quotient_payload(idealization(S)))


def cmd_radicalize(a) -> CommandResult:
    S = load_semiring_arg(a.doc)
    R = i_rad_compact(S) if a.with_idealization else radicalization(S)
    return CommandResult(OK, _quotient_payload(R))


def cmd_realize(a) -> CommandResult:
    X = load_space_arg(a.space)
    R = realize_space(X)
    Y = R.spectrum
    payload = {
        "semiring": semiring_to_document(R.semiring),
        "spectrum": space_to_document(Y),
        "homeomorphism": {X.points[p]: Y.points[q] for p, q in enumerate(R.homeomorphism)},
    }
    res = CommandResult(OK, payload)
    _write_dot(a.dot, space_to_dot(Y, "Spec"), res)
    return res


def cmd_enumerate(a) -> CommandResult:
    if not 1 <= a.order <= 5:
        raise CapabilityError("enumeration is available for orders 1 to 5")
    out = []
    for S in _corpus.enumerate_semirings(a.order):
        doc = semiring_to_document(S)
        doc["name"] = S.name
        out.append(doc)
    return CommandResult(OK, {"order": a.order, "count": len(out), "semirings": out})


def cmd_cd_example(a) -> CommandResult:
    n = a.n
    degree = a.degree if a.degree is not None else 2 * n + 4
    F = cd_example(degree)
    target = (f"x^{2 * n} + y^{2 * n}", f"x^{n}y^{n}")
    m = fragment_member(F, target)
    scan = {}
    for k in range(1, min(4, degree) + 1):
        scan[f"x^{k}"] = [str(q) for q in partners_scan(F, parse_bool_poly(f"x^{k}"))]
    payload = {"fragment": fragment_to_document(F), "membership": m.to_document(), "monomial_partners": scan}
    status = OK if m.proven else INCONCLUSIVE
    res = CommandResult(status, payload)
    if not m.proven:
        res.diagnostics.append(m.reason)
    return res


def cmd_homeo(a) -> CommandResult:
    X, Y = load_space_arg(a.first), load_space_arg(a.second)
    f = find_homeomorphism(X, Y)
    if f is None:
        return CommandResult(FAIL, {"homeomorphic": False})
    res = CommandResult(OK, {"homeomorphic": True, "map": {X.points[p]: Y.points[q] for p, q in enumerate(f)}})
    _write_dot(a.dot, space_to_dot(X, "X"), res)
    return res


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semispec", description="Finite idempotent semirings, spectra and closures.")
    p.add_argument("-v", "--verbose", action="store_true", help="pretty-print JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, doc=True, dot=False, help=None):
        sp = sub.add_parser(name, help=help)
        if doc:
            sp.add_argument("doc", help="JSON document path or builtin name")
        if dot:
            sp.add_argument("--dot", help="write a DOT diagram here")
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, help="check a semiring, space or lattice document")
    add("props", cmd_props, help="property flags of a semiring")
    sp = add("ideals", cmd_ideals, help="enumerate ideals")
    sp.add_argument("--kind", default="all", choices=["all", "proper", "k", "prime", "prime-k"])
    add("speck", cmd_speck, dot=True, help="prime k-spectrum")
    add("specc", cmd_specc, dot=True, help="prime congruence spectrum")
    add("spv", cmd_spv, dot=True, help="valuation spectrum")
    add("zar", cmd_zar, dot=True, help="Zariski space of prime elements")
    sp = add("closure", cmd_closure, help="apply a closure operation to an ideal")
    sp.add_argument("--op", required=True, choices=IDEAL_CLOSURE_NAMES)
    sp.add_argument("--ideal", required=True, help="element labels, e.g. 0,a or a JSON array")
    sp.add_argument("--congruence", help="blocks, e.g. '0,a|1' or a JSON array of arrays")
    sp = add("radical-congruence", cmd_radical_congruence, help="radical of a congruence")
    sp.add_argument("--blocks", required=True)
    sp = add("duality", cmd_duality, doc=False, dot=True, help="semiring/lattice equivalence")
    sp.add_argument("direction", choices=["to-lattice", "from-lattice", "roundtrip"])
    sp.add_argument("doc")
    add("idealize", cmd_idealize, help="quotient by x + 1 ~ 1")
    sp = add("radicalize", cmd_radicalize, help="quotient by x^2 ~ x")
    sp.add_argument("--with-idealization", action="store_true", help="also impose x + 1 ~ 1")
    sp = add("realize", cmd_realize, doc=False, dot=True, help="realize a spectral space as a prime k-spectrum")
    sp.add_argument("space")
    sp = add("enumerate", cmd_enumerate, doc=False, help="all idempotent semirings of an order")
    sp.add_argument("--order", type=int, required=True)
    sp = add("cd-example", cmd_cd_example, doc=False, help="bounded product-congruence fragment on B[x,y]")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--degree", type=int)
    sp = add("homeo", cmd_homeo, doc=False, dot=True, help="search for a homeomorphism")
    sp.add_argument("first")
    sp.add_argument("second")
    return p


def _dispatch(args) -> CommandResult:
    try:
        return args.func(args)
    except (SemiringError, KeyError, ValueError) as exc:
        msg = f"unknown label {exc}" if isinstance(exc, KeyError) else str(exc)
        return CommandResult(FAIL, {}, [f"{type(exc).__name__}: {msg}"])


def run(argv=None) -> CommandResult:
    return _dispatch(build_parser().parse_args(argv))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    res = _dispatch(args)
    print(json.dumps(res.to_document(), indent=2 if args.verbose else None))
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
