"""Static tier checking: synthesize signatures and report safe/normal violations.

Rules (closed terms, i.e. signature (0;0), are constants of every arity):

* ``SComp(h, normals, safes)``: ``h`` has signature ``(len(normals); len(safes))``;
  every normal argument has no safe inputs (``safe-into-normal`` otherwise); all
  non-closed arguments agree on the ambient ``(m; n)``, normals contributing ``(m; 0)``.
* ``SI``/``SRec(g, h0, h1)``: with ``g : (p; q)`` both steps have ``(1+p; q+1)`` and
  the result is ``(1+p; q)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .terms import CLOSED, Basic, Proj, Recursion, SComp, Signature, Term

RULES = (
    "safe-into-normal",
    "comp-arity",
    "ambient-mismatch",
    "si-step-shape",
    "unknown-node",
)


@dataclass
class CheckReport:
    accepted: bool
    signature: Signature | None
    violations: list[tuple[str, str]] = field(default_factory=list)
    signatures: dict[str, Signature] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "accepted": self.accepted,
            "signature": None if self.signature is None else [self.signature.normal, self.signature.safe],
            "violations": [{"path": p, "rule": r} for p, r in self.violations],
        }


def _child(path: str, label: str) -> str:
    return ("" if path == "/" else path) + "/" + label


class _Checker:
    def __init__(self):
        self.violations: list[tuple[str, str]] = []
        self.signatures: dict[str, Signature] = {}

    def flag(self, path: str, rule: str):
        self.violations.append((path, rule))

    def synth(self, t: Term, path: str) -> Signature | None:
        if isinstance(t, Basic):
            sig = t.SIGNATURE
        elif isinstance(t, Proj):
            sig = t.signature
        elif isinstance(t, SComp):
            sig = self._comp(t, path)
        elif isinstance(t, Recursion):
            sig = self._recursion(t, path)
        else:
            self.flag(path, "unknown-node")
            sig = None
        if sig is not None:
            self.signatures[path] = sig
        return sig

    def _comp(self, t: SComp, path: str) -> Signature | None:
        hs = self.synth(t.h, _child(path, "h"))
        ok = True
        if hs is not None and hs != Signature(len(t.normals), len(t.safes)):
            self.flag(_child(path, "h"), "comp-arity")
            ok = False
        ms: set[int] = set()
        ns: set[int] = set()
        for i, a in enumerate(t.normals):
            p = _child(path, f"normals[{i}]")
            s = self.synth(a, p)
            if s is None:
                ok = False
                continue
            if s.safe > 0:
                self.flag(p, "safe-into-normal")
                ok = False
            if s != CLOSED:
                ms.add(s.normal)
        for i, a in enumerate(t.safes):
            s = self.synth(a, _child(path, f"safes[{i}]"))
            if s is None:
                ok = False
                continue
            if s != CLOSED:
                ms.add(s.normal)
                ns.add(s.safe)
        if len(ms) > 1 or len(ns) > 1:
            self.flag(path, "ambient-mismatch")
            return None
        if not ok:
            return None
        return Signature(ms.pop() if ms else 0, ns.pop() if ns else 0)

    def _recursion(self, t: Recursion, path: str) -> Signature | None:
        gs = self.synth(t.g, _child(path, "g"))
        h0s = self.synth(t.h0, _child(path, "h0"))
        h1s = self.synth(t.h1, _child(path, "h1"))
        if gs is None or h0s is None or h1s is None:
            return None
        steps = [(lbl, s) for lbl, s in (("h0", h0s), ("h1", h1s)) if s != CLOSED]
        if gs != CLOSED:
            p, q = gs
        elif steps:
            lbl, s = steps[0]
            if s.normal < 1 or s.safe < 1:
                self.flag(_child(path, lbl), "si-step-shape")
                return None
            p, q = s.normal - 1, s.safe - 1
        else:
            p, q = 0, 0
        want = Signature(1 + p, q + 1)
        ok = True
        for lbl, s in steps:
            if s != want:
                self.flag(_child(path, lbl), "si-step-shape")
                ok = False
        return Signature(1 + p, q) if ok else None


def check_tiers(t: Term) -> CheckReport:
    c = _Checker()
    sig = c.synth(t, "/")
    accepted = not c.violations and sig is not None
    return CheckReport(accepted, sig, c.violations, c.signatures)


def signature_of(t: Term) -> Signature:
    """Signature of a well-tiered term; raises ``ValueError`` listing violations otherwise."""
    rep = check_tiers(t)
    if not rep.accepted:
        raise ValueError(f"ill-tiered term: {rep.violations}")
    return rep.signature
