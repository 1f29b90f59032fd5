"""Step-by-step principality certificate for an isotropic class.

The certificate walks the lattice-checkable part of the argument that a
K3^[n]-type Lagrangian fibration with fibration class lambda is principally
polarized. Two steps are analytic (deformation invariance of the type and the
type of Beauville-Mukai systems); they are recorded with status
``paper-supplied`` and never computed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional

from .errors import CertificateError, K3PolError, VerificationError
from .lattice import Lattice, LatticeVector, divisibility, is_primitive, k3n_lattice, pairing
from .mukai import alpha_label, beauville_mukai_vector, h_lambda, mukai_lattice
from .periods import positivity_check
from .zlinalg import gram_of, integral_coordinates

PASS = "pass"
FAIL = "fail"
CITED = "paper-supplied"


@dataclass
class Step:
    step: str
    claim: str
    paper_tag: str
    status: str
    witness: dict = field(default_factory=dict)


@dataclass
class Certificate:
    n: int
    lam: tuple
    steps: List[Step] = field(default_factory=list)
    conclusion: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.conclusion is not None and all(s.status != FAIL for s in self.steps)

    def step(self, name: str) -> Step:
        return next(s for s in self.steps if s.step == name)


def _run(cert: Certificate, name: str, claim: str, tag: str, fn: Callable[[], dict]) -> dict:
    try:
        witness = fn()
    except K3PolError as exc:
        cert.steps.append(Step(name, claim, tag, FAIL, {"error": str(exc)}))
        raise CertificateError(f"step {name!r} failed: {exc}", step=name, certificate=cert) from exc
    cert.steps.append(Step(name, claim, tag, PASS, witness))
    return witness


def _fail(msg: str):
    raise VerificationError(msg)


def principality_certificate(n: int, lam: LatticeVector, b_override: Optional[int] = None) -> Certificate:
    """Build the certificate; raises :class:`CertificateError` at the first failing step.

    ``b_override`` replaces the b used for the Beauville-Mukai witness. It
    exists to exercise the failure path: a b from a different isometry class
    makes the invariant comparison fail.
    """
    cert = Certificate(n, tuple(lam.coords))
    state: dict = {}

    def isotropy():
        if lam.lattice != k3n_lattice(n):
            _fail(f"lambda is not a vector of the rank-23 lattice for n = {n}")
        if not is_primitive(lam):
            _fail(f"lambda has content {lam.content()}, not primitive")
        sq = pairing(lam, lam)
        if sq != 0:
            _fail(f"lambda is not isotropic: (lambda, lambda) = {sq}")
        return {"self_pairing": sq, "content": lam.content()}

    def div():
        d = divisibility(lam)
        if (n - 1) % (d * d):
            _fail(f"d^2 = {d * d} does not divide n - 1 = {n - 1}")
        state["d"] = d
        return {"d": d, "n_minus_1": n - 1}

    def invariant():
        h = h_lambda(n, lam)
        if h.d != state["d"]:
            _fail("divisibility disagrees between steps")
        state["h"] = h
        return {
            "d": h.d,
            "b": h.b,
            "b_star": h.invariant.b_star,
            "gram_H": [list(r) for r in h.gram],
            "witness_basis": [list(w.coords) for w in h.witness_basis],
        }

    def bm():
        h = state["h"]
        b = h.invariant.b_star if b_override is None else b_override
        wit = beauville_mukai_vector(n, h.d, b)
        state["bm"] = wit
        return {
            "b": b,
            "s": wit.s,
            "beta": list(wit.beta.coords),
            "v": [wit.v.r, list(wit.v.c.coords), wit.v.s],
            "alpha": [0, [0] * len(wit.alpha.c.coords), 1],
            "checks": {name: {"value": val, "status": PASS if ok else FAIL}
                       for name, (val, ok) in wit.checks.items()},
        }

    def equality():
        lab = alpha_label(state["bm"])
        inv_l = state["h"].invariant
        if lab.invariant != inv_l:
            _fail(f"h(alpha) = {lab.invariant} differs from h(lambda) = {inv_l}")
        return {
            "h_lambda": [inv_l.n, inv_l.d, inv_l.b_star],
            "h_alpha": [lab.invariant.n, lab.invariant.d, lab.invariant.b_star],
            "b_alpha": lab.b,
        }

    def positivity():
        lam_side = positivity_check(lam.lattice, lam)
        wit = state["bm"]
        mk = mukai_lattice()
        perp = wit.v_perp
        sub = Lattice(gram_of(mk, perp))
        alpha_coords = integral_coordinates([b.coords for b in perp], wit.alpha.to_lattice().coords)
        alpha_side = positivity_check(sub, sub.vector(alpha_coords))
        for side in (lam_side, alpha_side):
            if side["signature"][0] != 1 or side["signature"][1] != 0:
                _fail("restricted form is not of signature (1, k)")
        return {
            "lambda": {"signature": list(lam_side["signature"]), "pairing": lam_side["pairing"]},
            "alpha": {"signature": list(alpha_side["signature"]), "pairing": alpha_side["pairing"]},
        }

    _run(cert, "isotropy", "lambda is primitive and isotropic",
         "isotropy of the fibration class", isotropy)
    _run(cert, "divisibility", "d = Div(lambda) and d^2 divides n - 1",
         "divisibility constraint on isotropic classes", div)
    _run(cert, "monodromy_invariant",
         "H(lambda) is isometric to H_(n,d) and (iota(lambda) - b v)/d is integral with gcd(d, b) = 1",
         "rank-two monodromy invariant", invariant)
    _run(cert, "beauville_mukai_witness",
         "v = (0, d beta, s) is primitive, (v,v) = 2n-2, alpha is orthogonal to v with Div(alpha) = d",
         "Beauville-Mukai systems with prescribed invariant", bm)
    _run(cert, "invariant_equality", "h(alpha) = h(lambda)",
         "equal invariants give deformation-equivalent pairs", equality)
    _run(cert, "positivity",
         "an isotropic class pairs nonzero with every positive class in signature (1, k)",
         "isotropic classes pair positively with the positive cone", positivity)

    cert.steps.append(Step(
        "deformation_invariance",
        "the polarization type is constant in families of Lagrangian fibrations",
        "deformation invariance of the polarization type", CITED))
    cert.steps.append(Step(
        "beauville_mukai_principal",
        "Beauville-Mukai systems have polarization type (1, ..., 1)",
        "principal polarization of Jacobian fibrations", CITED))
    cert.conclusion = {
        "polarization_type": [1] * n,
        "status": CITED,
        "depends_on": ["deformation_invariance", "beauville_mukai_principal"],
    }
    return cert


def certificate_to_dict(cert: Certificate) -> dict:
    return {
        "n": cert.n,
        "lambda": list(cert.lam),
        "ok": cert.ok,
        "steps": [
            {"step": s.step, "claim": s.claim, "paper_tag": s.paper_tag,
             "status": s.status, "witness": s.witness}
            for s in cert.steps
        ],
        "conclusion": cert.conclusion,
    }
