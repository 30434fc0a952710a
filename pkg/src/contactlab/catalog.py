"""Named Lie algebras with contact (or symplectic) data and their recorded verdicts."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .analysis import classify_dim5, decompose, is_ds_contact
from .constructions import FrobeniusInput, SymplecticAlgebra, build_an, contactize
from .forms import (ContactStructure, KForm, betti_numbers, contact_structure, is_transversely_unimodular,
                    xi_commutator_equivalences)
from .lie import (Fingerprint, LieAlgebra, center, contains_in_commutator, fingerprint, is_nilpotent, is_solvable,
                  is_unimodular, killing_signature)

H = Fraction(1, 2)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: LieAlgebra
    contact_form: KForm | None
    provenance: str
    expected: dict = field(default_factory=dict)
    symplectic: KForm | None = None  # for even-dimensional symplectic entries

    @property
    def is_contact(self) -> bool:
        return self.contact_form is not None

    def structure(self) -> ContactStructure:
        if self.contact_form is None:
            raise ValueError(f"{self.name} carries no contact form")
        return contact_structure(self.algebra, self.contact_form)


def _alg(labels, brackets):
    return LieAlgebra.from_brackets(labels, brackets)


def _eta(alg: LieAlgebra, coeffs: dict) -> KForm:
    return KForm.covector([Fraction(coeffs.get(l, 0)) for l in alg.labels])


XI_STAR = {"xi": 1}
TRANSCRIPTION = "paper transcription uncertain"
ENTRY_NAME = {"g0+": "g0_plus", "g1+": "g1_plus", "g0-": "g0_minus", "g1-": "g1_minus"}

SL2 = _alg(["xi", "u", "v"], {("u", "v"): {"xi": 1}, ("xi", "u"): {"u": 1}, ("xi", "v"): {"v": -1}})
SU2 = _alg(["xi", "u", "v"], {("u", "v"): {"xi": 1}, ("xi", "u"): {"v": 1}, ("xi", "v"): {"u": -1}})
AFF = _alg(["x", "y"], {("x", "y"): {"y": 1}})


def heisenberg(n: int) -> LieAlgebra:
    labels = [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)] + ["z"]
    return _alg(labels, {(f"x{i + 1}", f"y{i + 1}"): {"z": 1} for i in range(n)})


E4 = ["e1", "e2", "e3", "e4"]
EX_H4 = _alg(E4, {("e1", "e4"): {"e1": -1}, ("e3", "e4"): {"e2": -1}})
EX_H4_OMEGA = KForm(2, 4, {(0, 3): 1, (1, 2): 1})

E6 = [f"e{i}" for i in range(1, 7)]
EX_H6 = _alg(E6, {("e2", "e5"): {"e4": 1}, ("e3", "e4"): {"e5": 1}, ("e4", "e6"): {"e4": 1}, ("e5", "e6"): {"e5": 1}})
EX_H6_OMEGA = KForm(2, 6, {(0, 1): 1, (0, 4): 1, (2, 3): -1, (4, 5): -1})

XE4 = ["xi"] + E4
CONVERSE_1 = _alg(XE4, {("xi", "e1"): {"e2": 1, "xi": -1}, ("e1", "e2"): {"e2": 1}, ("e3", "e4"): {"e4": 1}})

XE6 = ["xi"] + E6
CONVERSE_2 = _alg(XE6, {
    ("xi", "e4"): {"e1": -1}, ("xi", "e5"): {"e4": 1}, ("xi", "e6"): {"e5": -1},
    ("e1", "e5"): {"e1": 1}, ("e1", "e6"): {"xi": -2, "e4": 1}, ("e2", "e3"): {"xi": 1, "e3": 1},
    ("e3", "e4"): {"e1": 1}, ("e3", "e5"): {"e4": -1}, ("e3", "e6"): {"e5": 1},
    ("e4", "e5"): {"xi": 2, "e4": 1}, ("e4", "e6"): {"e5": -2}, ("e5", "e6"): {"e6": 2},
})

SASAKIAN_1 = _alg(XE6, {
    ("e1", "e2"): {"e2": 1, "xi": 2}, ("e3", "e4"): {"e4": 1, "xi": 2}, ("e5", "e6"): {"e2": 1, "e4": -1, "xi": 2},
    ("xi", "e6"): {"e5": -1}, ("e2", "e6"): {"e5": 2}, ("e4", "e6"): {"e5": 2},
    ("xi", "e5"): {"e6": 1}, ("e2", "e5"): {"e6": -2}, ("e4", "e5"): {"e6": -2},
    ("e1", "e5"): {"e5": H}, ("e3", "e5"): {"e5": -H}, ("e1", "e6"): {"e6": H}, ("e3", "e6"): {"e6": -H},
})



def _sasakian_2(sign: int) -> LieAlgebra:
    return _alg(XE6, {
        ("e1", "e2"): {"e2": 1, "xi": 2}, ("e3", "e4"): {"e4": 1, "xi": 2}, ("e5", "e6"): {"xi": 2},
        ("xi", "e6"): {"e5": -1}, ("e2", "e6"): {"e5": 2 * sign}, ("e4", "e6"): {"e5": 2 * sign},
        ("xi", "e5"): {"e6": 1}, ("e2", "e5"): {"e6": -2}, ("e4", "e5"): {"e6": -2},
    })


SASAKIAN_2 = _sasakian_2(-1)
# [e2,e6] and [e4,e6] with the sign of the first Sasakian example; rho(e2) then commutes with A
SASAKIAN_2_SIGNFIX = _sasakian_2(1)

GAMMA_EXAMPLE = _alg(["xi", "x", "y", "e1", "e2", "e3", "e4"], {
    ("xi", "e1"): {"e1": 1}, ("xi", "e2"): {"e2": 2}, ("xi", "e3"): {"e3": -1}, ("xi", "e4"): {"e4": -2},
    ("x", "e1"): {"e1": 1}, ("x", "e2"): {"e2": 1}, ("x", "y"): {"xi": 1, "y": 1},
    ("y", "e1"): {"e1": -1}, ("y", "e2"): {"e2": -2}, ("y", "e3"): {"e3": 1}, ("y", "e4"): {"e4": 2},
    ("e1", "e3"): {"xi": 1, "y": 1}, ("e2", "e4"): {"xi": 1, "y": 1}, ("e3", "e2"): {"e1": 1},
})

DIATTA_FOREMAN = _alg([f"e{i}" for i in range(1, 6)], {
    ("e1", "e4"): {"e1": 1}, ("e3", "e4"): {"e3": -1}, ("e2", "e5"): {"e2": 1}, ("e3", "e5"): {"e3": -1},
})

D5 = ["xi", "x", "y", "u", "v"]
G0_PLUS = _alg(D5, {("x", "y"): {"xi": 1, "y": 1}, ("u", "v"): {"xi": 1}, ("xi", "u"): {"v": 1},
                    ("xi", "v"): {"u": -1}, ("y", "u"): {"v": -1}, ("y", "v"): {"u": 1}})
G1_PLUS = _alg(D5, {("x", "y"): {"xi": 1, "y": 1}, ("u", "v"): {"xi": 1}, ("xi", "u"): {"u": 1},
                    ("xi", "v"): {"v": -1}, ("y", "u"): {"u": -1}, ("y", "v"): {"v": 1}})
G0_MINUS = _alg(D5, {("x", "y"): {"xi": 1, "y": 1}, ("u", "v"): {"xi": 1, "y": 1}, ("xi", "u"): {"v": 1},
                     ("xi", "v"): {"u": -1}, ("x", "u"): {"u": H}, ("x", "v"): {"v": H},
                     ("y", "u"): {"v": -1}, ("y", "v"): {"u": 1}})
G1_MINUS = _alg(D5, {("x", "y"): {"xi": 1, "y": 1}, ("u", "v"): {"xi": 1, "y": 1}, ("xi", "u"): {"u": 1},
                     ("xi", "v"): {"v": -1}, ("x", "u"): {"u": H}, ("x", "v"): {"v": H},
                     ("y", "u"): {"u": -1}, ("y", "v"): {"v": 1}})

# transversely unimodular but not unimodular: [e1,e2] = e2, [e1,e3] = 2 e3, eta = e^2 + e^3
R3_2 = _alg(["e1", "e2", "e3"], {("e1", "e2"): {"e2": 1}, ("e1", "e3"): {"e3": 2}})

AFF_C = _alg(["x1", "x2", "y1", "y2"], {("x1", "y1"): {"y1": 1}, ("x1", "y2"): {"y2": 1},
                                         ("x2", "y1"): {"y2": 1}, ("x2", "y2"): {"y1": -1}})
AFF2 = _alg(["x1", "y1", "x2", "y2"], {("x1", "y1"): {"y1": 1}, ("x2", "y2"): {"y2": 1}})


def _v(alg, coeffs):
    return tuple(Fraction(coeffs.get(l, 0)) for l in alg.labels)


# further verdicts computed once and frozen; the suite re-derives them
_EXTRA = {
    "sl2": dict(nilpotent=False, center_dim=0, ad_xi_nilpotent=False),
    "su2": dict(nilpotent=False, center_dim=0, ad_xi_nilpotent=False),
    "h3": dict(betti=(1, 2, 2, 1), ad_xi_nilpotent=True),
    "h5": dict(betti=(1, 4, 5, 5, 4, 1), ad_xi_nilpotent=True),
    "h7": dict(betti=(1, 6, 14, 14, 14, 14, 6, 1), ad_xi_nilpotent=True),
    "contactization_h4": dict(nilpotent=False, betti=(1, 2, 2, 2, 1, 0), ad_xi_nilpotent=True),
    "converse_1": dict(betti=(1, 2, 1, 0, 0, 0), center_dim=0, tu=False, ds=False),
    "converse_2": dict(betti=(1, 1, 1, 2, 1, 1, 1, 0), center_dim=0, tu=False, ds=False),
    "sasakian_2_signfix": dict(nilpotent=False, betti=(1, 2, 1, 1, 2, 1, 0, 0), ad_xi_nilpotent=False),
    "gamma_example": dict(unimodular=False, solvable=True, betti=(1, 2, 1, 0, 0, 0, 0, 0), center_dim=0,
                          ad_xi_nilpotent=False, tu=False, xi_in_commutator=False),
    "diatta_foreman": dict(betti=(1, 2, 1, 1, 2, 1), center_dim=0, ds=False, xi_in_commutator=True),
    "g0_plus": dict(betti=(1, 1, 0, 1, 1, 0), ad_xi_nilpotent=False, xi_in_commutator=True),
    "g1_plus": dict(betti=(1, 1, 0, 1, 1, 0), ad_xi_nilpotent=False, xi_in_commutator=True),
    "g0_minus": dict(betti=(1, 2, 1, 0, 0, 0), ad_xi_nilpotent=False, xi_in_commutator=False),
    "g1_minus": dict(betti=(1, 2, 1, 0, 0, 0), ad_xi_nilpotent=False, xi_in_commutator=False),
    "r3_2": dict(solvable=True, betti=(1, 1, 0, 0), center_dim=0, ds=False, xi_in_commutator=True),
    "aff": dict(betti=(1, 1, 0), center_dim=0),
    "h4_symplectic": dict(unimodular=False, solvable=True, betti=(1, 2, 2, 1, 0), center_dim=1),
}


def _entries() -> list[CatalogEntry]:
    out = []

    def add(name, alg, eta, provenance, expected, symplectic=None):
        expected = {**_EXTRA.get(name, {}), **expected}
        out.append(CatalogEntry(name, alg, eta, provenance, expected, symplectic))

    add("sl2", SL2, _eta(SL2, XI_STAR), "sl(2,R): [u,v] = xi, [xi,u] = u, [xi,v] = -v",
        dict(reeb=_v(SL2, {"xi": 1}), unimodular=True, solvable=False, ds=True, tu=True, xi_in_commutator=True,
             betti=(1, 0, 0, 1), killing_signature=(2, 1, 0)))
    add("su2", SU2, _eta(SU2, XI_STAR), "su(2): [u,v] = xi, [xi,u] = v, [xi,v] = -u",
        dict(reeb=_v(SU2, {"xi": 1}), unimodular=True, solvable=False, ds=True, tu=True, xi_in_commutator=True,
             betti=(1, 0, 0, 1), killing_signature=(0, 3, 0)))
    for n in (1, 2, 3):
        h = heisenberg(n)
        add(f"h{2 * n + 1}", h, _eta(h, {"z": 1}), f"Heisenberg h_{2 * n + 1}: [x_i, y_i] = z",
            dict(reeb=_v(h, {"z": 1}), unimodular=True, solvable=True, nilpotent=True, ds=True, tu=True,
                 xi_in_commutator=True, center_dim=1))
    g = contactize(SymplecticAlgebra(EX_H4, EX_H4_OMEGA))
    add("contactization_h4", g.algebra, g.eta,
        "contactization of h: [e1,e4] = -e1, [e3,e4] = -e2 with omega = e^14 + e^23",
        dict(reeb=_v(g.algebra, {"xi": 1}), unimodular=False, solvable=True, ds=True, tu=False, xi_in_commutator=True,
             center_dim=1, xi_witness=((1, "e2", "e3"),)))
    add("converse_1", CONVERSE_1, _eta(CONVERSE_1, {"xi": 1, "e2": 1, "e4": 1}),
        "[xi,e1] = e2 - xi, [e1,e2] = e2, [e3,e4] = e4; eta = xi^* + e^2 + e^4",
        dict(reeb=_v(CONVERSE_1, {"xi": 1}), unimodular=False, solvable=True, ad_xi_nilpotent=True,
             xi_in_commutator=True, trace=("e1", 2),
             xi_witness=((1, "e1", "e2"), (-1, "xi", "e1"))))
    add("converse_2", CONVERSE_2, _eta(CONVERSE_2, XI_STAR),
        "[xi,e4] = -e1, [xi,e5] = e4, [xi,e6] = -e5, [e1,e5] = e1, [e1,e6] = -2xi + e4, [e2,e3] = xi + e3, "
        "[e3,e4] = e1, [e3,e5] = -e4, [e3,e6] = e5, [e4,e5] = 2xi + e4, [e4,e6] = -2e5, [e5,e6] = 2e6; eta = xi^*",
        dict(reeb=_v(CONVERSE_2, {"xi": 1}), unimodular=False, solvable=False, ad_xi_nilpotent=True,
             xi_in_commutator=True, trace=("e2", 1),
             xi_witness=((-H, "e1", "e6"), (H, "xi", "e5"))))
    add("sasakian_1", SASAKIAN_1, _eta(SASAKIAN_1, XI_STAR),
        "[e1,e2] = e2 + 2xi, [e3,e4] = e4 + 2xi, [e5,e6] = e2 - e4 + 2xi, [xi,e6] = -e5, [e2,e6] = 2e5, "
        "[e4,e6] = 2e5, [xi,e5] = e6, [e2,e5] = -2e6, [e4,e5] = -2e6, [e1,e5] = e5/2, [e3,e5] = -e5/2, "
        "[e1,e6] = e6/2, [e3,e6] = -e6/2; eta = xi^*",
        dict(jacobi=False, note=TRANSCRIPTION, note_trace="recorded tr(ad_e1) = 1 is not reproduced", trace=("e1", 2),
             xi_witness=((H, "e1", "e2"), (H, "e3", "e4"), (-H, "e5", "e6")),
             xi_witness_value=_v(SASAKIAN_1, {"xi": 1, "e4": 1})))
    add("sasakian_2", SASAKIAN_2, _eta(SASAKIAN_2, XI_STAR),
        "[e1,e2] = e2 + 2xi, [e3,e4] = e4 + 2xi, [e5,e6] = 2xi, [xi,e6] = -e5, [e2,e6] = -2e5, [e4,e6] = -2e5, "
        "[xi,e5] = e6, [e2,e5] = -2e6, [e4,e5] = -2e6; eta = xi^*",
        dict(jacobi=False, note=TRANSCRIPTION, trace=("e1", 1)))
    add("sasakian_2_signfix", SASAKIAN_2_SIGNFIX, _eta(SASAKIAN_2_SIGNFIX, XI_STAR),
        "sign-corrected sasakian_2: [e2,e6] = 2e5, [e4,e6] = 2e5, other brackets unchanged",
        dict(reeb=_v(SASAKIAN_2_SIGNFIX, {"xi": 1}), unimodular=False, solvable=False, ds=True, tu=False,
             xi_in_commutator=True, trace=("e1", 1), center_dim=0, xi_witness=((H, "e5", "e6"),)))
    add("gamma_example", GAMMA_EXAMPLE, _eta(GAMMA_EXAMPLE, XI_STAR),
        "[xi,e1] = e1, [xi,e2] = 2e2, [xi,e3] = -e3, [xi,e4] = -2e4, [x,e1] = e1, [x,e2] = e2, [x,y] = xi + y, "
        "[y,e1] = -e1, [y,e2] = -2e2, [y,e3] = e3, [y,e4] = 2e4, [e1,e3] = xi + y, [e2,e4] = xi + y, "
        "[e3,e2] = e1; eta = xi^*",
        dict(reeb=_v(GAMMA_EXAMPLE, {"xi": 1}), ds=True, gamma=(("e3", "e2"), {"e1": 1})))
    add("diatta_foreman", DIATTA_FOREMAN, _eta(DIATTA_FOREMAN, {"e1": 1, "e2": 1, "e3": 1}),
        "[e1,e4] = e1, [e3,e4] = -e3, [e2,e5] = e2, [e3,e5] = -e3; eta = e^1 + e^2 + e^3",
        dict(reeb=tuple(Fraction(c, 3) for c in (1, 1, 1, 0, 0)), unimodular=True,
             solvable=True, ad_xi_nilpotent=True, ad_xi_square_zero=True, tu=True))
    for label, alg in (("g0+", G0_PLUS), ("g1+", G1_PLUS), ("g0-", G0_MINUS), ("g1-", G1_MINUS)):
        sign = label[-1]
        add(ENTRY_NAME[label], alg, _eta(alg, XI_STAR), f"five-dimensional DS-contact normal form {label}",
            dict(reeb=_v(alg, {"xi": 1}), ds=True, dim5_label=label, center_dim=0,
                 solvable=(sign == "-"), unimodular=False, tu=False))
    add("r3_2", R3_2, _eta(R3_2, {"e2": 1, "e3": 1}),
        "constructed: [e1,e2] = e2, [e1,e3] = 2e3; eta = e^2 + e^3",
        dict(reeb=_v(R3_2, {"e2": 2, "e3": -1}), unimodular=False, tu=True, ad_xi_nilpotent=True))
    # non-contact entries
    add("aff", AFF, None, "aff(R): [x,y] = y", dict(unimodular=False, solvable=True), symplectic=KForm(2, 2, {(0, 1): 1}))
    add("h4_symplectic", EX_H4, None, "h: [e1,e4] = -e1, [e3,e4] = -e2", dict(trace=("e4", 1)), symplectic=EX_H4_OMEGA)
    # as transcribed this violates Jacobi at (e2, e3, e4), so it is kept only as a flagged record
    add("h6_symplectic", EX_H6, None, "h: [e2,e5] = e4, [e3,e4] = e5, [e4,e6] = e4, [e5,e6] = e5 "
        "with omega = e^12 + e^15 - e^34 - e^56",
        dict(jacobi=False, note=TRANSCRIPTION, trace=("e6", -2)))
    return out


@lru_cache(maxsize=None)
def _catalog_cached() -> tuple[CatalogEntry, ...]:
    return tuple(_entries())


def catalog() -> list[CatalogEntry]:
    return list(_catalog_cached())


def contact_entries() -> list[CatalogEntry]:
    """Contact entries whose transcription passes Jacobi."""
    return [e for e in catalog() if e.is_contact and e.expected.get("jacobi", True)]


def flagged_entries() -> list[CatalogEntry]:
    return [e for e in catalog() if e.expected.get("note") == TRANSCRIPTION]


def get(name: str) -> CatalogEntry:
    for e in _catalog_cached():
        if e.name == name:
            return e
    raise KeyError(name)


@lru_cache(maxsize=None)
def normal_form_fingerprints() -> dict[str, Fingerprint]:
    return {name: fingerprint(alg) for name, alg in
            (("g0+", G0_PLUS), ("g1+", G1_PLUS), ("g0-", G0_MINUS), ("g1-", G1_MINUS))}


@lru_cache(maxsize=None)
def simple3_fingerprints() -> tuple[Fingerprint, ...]:
    return (fingerprint(SL2), fingerprint(SU2))


# Frobenius inputs used by the realization tests and the fuzzer
def frobenius_inputs() -> dict[str, FrobeniusInput]:
    return {
        "aff": FrobeniusInput(AFF, KForm.covector([0, -1]), nu=1),
        "a1": build_an(1),
        "a2": build_an(2),
        "aff_c": FrobeniusInput(AFF_C, KForm.covector([0, 0, -1, 0]), nu=2),
        "aff_aff": FrobeniusInput(AFF2, KForm.covector([0, -1, 0, -1]), nu=1),
    }


def _combo(alg: LieAlgebra, terms) -> tuple:
    idx = {l: i for i, l in enumerate(alg.labels)}
    out = [Fraction(0)] * alg.dim
    for c, a, b in terms:
        for k, v in enumerate(alg.bracket_basis(idx[a], idx[b])):
            out[k] += Fraction(c) * v
    return tuple(out)


def derive(entry: CatalogEntry, keys=None) -> dict:
    """Recompute the verdicts named in ``entry.expected`` (or ``keys``) from scratch."""

    alg = entry.algebra
    keys = set(entry.expected) if keys is None else set(keys)
    idx = {l: i for i, l in enumerate(alg.labels)}
    got = {}
    got["jacobi"] = alg.is_valid
    if "trace" in keys:
        lab, _ = entry.expected["trace"]
        got["trace"] = (lab, alg.ad_basis(idx[lab]).trace())
    if "xi_witness" in keys:
        got["xi_witness_value"] = _combo(alg, entry.expected["xi_witness"])
    if not got["jacobi"]:
        return got
    simple = {"unimodular": is_unimodular, "solvable": is_solvable, "nilpotent": is_nilpotent,
              "betti": betti_numbers, "killing_signature": killing_signature,
              "center_dim": lambda a: center(a).dim}
    for k, f in simple.items():
        if k in keys:
            got[k] = f(alg)
    if entry.contact_form is None:
        return got
    c = entry.structure()
    got["reeb"] = c.reeb
    if "xi_witness" in keys:
        got["xi_witness_holds"] = got["xi_witness_value"] == c.reeb
    ad_xi = alg.ad(c.reeb)
    if "ad_xi_nilpotent" in keys:
        got["ad_xi_nilpotent"] = (ad_xi ** alg.dim).is_zero()
    if "ad_xi_square_zero" in keys:
        got["ad_xi_square_zero"] = (ad_xi @ ad_xi).is_zero()
    if "tu" in keys:
        got["tu"] = is_transversely_unimodular(c)
    if "ds" in keys:
        got["ds"] = is_ds_contact(c)
    if "xi_in_commutator" in keys:
        eq = xi_commutator_equivalences(c)
        got["xi_in_commutator"] = contains_in_commutator(alg, c.reeb)
        got["xi_equivalences_agree"] = len(set(eq.values())) == 1 and eq["xi_in_commutator"] == got["xi_in_commutator"]
    if "dim5_label" in keys:
        got["dim5_label"] = classify_dim5(c)
    if "gamma" in keys:
        (a, b), _ = entry.expected["gamma"]
        d = decompose(c)
        _, _, qpart = d.split(alg.bracket_basis(idx[a], idx[b]))
        got["gamma"] = ((a, b), {alg.labels[i]: v for i, v in enumerate(d.q_vector(qpart)) if v})
    return got


_ALWAYS = {"xi_witness_holds": True, "xi_equivalences_agree": True}


def verify_entry(entry: CatalogEntry) -> dict:
    """Mismatches ``{key: (expected, derived)}``; empty when every recorded verdict is reproduced."""
    got = derive(entry)
    bad = {}
    for k, want in entry.expected.items():
        if k.startswith("note") or k == "xi_witness":
            continue
        if k == "gamma":
            want = (want[0], {l: Fraction(v) for l, v in want[1].items()})
        if k == "trace":
            want = (want[0], Fraction(want[1]))
        if got.get(k) != want:
            bad[k] = (want, got.get(k))
    for k, want in _ALWAYS.items():
        if k in got and "xi_witness_value" not in entry.expected and got[k] != want:
            bad[k] = (want, got[k])
    return bad
