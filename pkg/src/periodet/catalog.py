"""Built-in named checks run by ``periodet --all``."""
from __future__ import annotations

from .config import CheckConfig, ConnectionSpec, FieldParams

BETA_HALF = ConnectionSpec.rank_one(("0", "1"), ("1/2", "1/2"))
BETA_THIRD = ConnectionSpec.rank_one(("0", "1"), ("1/3", "1/4"))
RANK1_D3 = ConnectionSpec.rank_one(("0", "1", "3"), ("1/3", "1/4", "1/5"))
RANK2_TRIANGULAR = ConnectionSpec(
    ("0", "1"),
    ((("1/2", "1"), ("0", "1/3")), (("1/4", "0"), ("0", "1/5"))),
)

FERMAT_CASES = ((3, 7), (3, 13), (4, 5), (4, 13), (5, 11))
SIGN_TABLE_MS = (3, 4, 5, 6, 8)

CANONICAL_CASES = {
    "0-inf": (["0", "inf"], {"inf": "-1"}),
    "0-1-inf": (["0", "1", "inf"], {"1": "-1", "inf": "1"}),
    "0-1-2-inf": (["0", "1", "2", "inf"], {"1": "-1/2", "2": "1/4", "inf": "-1/2"}),
}


def catalog() -> list[CheckConfig]:
    out = [
        CheckConfig("periods", "beta-1/2", BETA_HALF, params={"heuristic": True}),
        CheckConfig("periods", "beta-1/3", BETA_THIRD, params={"heuristic": True}),
        CheckConfig("periods", "rank1-d3", RANK1_D3, tol=1e-6),
        CheckConfig("periods", "rank2-triangular", RANK2_TRIANGULAR, tol=1e-6),
        CheckConfig("symbol", "symbols-rank1-d3", RANK1_D3),
        CheckConfig("monodromy", "monodromy-catalog"),
        CheckConfig("gamma", "gamma-suite", params={"count": 100, "ms": [2, 3, 5]}),
        CheckConfig("reciprocity", "reciprocity-42", params={"count": 100}),
    ]
    for m, q in FERMAT_CASES:
        out.append(CheckConfig("fermat-count", f"fermat-{m}-{q}", field=FieldParams(m=m, q=q)))
    for m in SIGN_TABLE_MS:
        out.append(CheckConfig("jacobi", f"sign-table-{m}",
                               params={"mode": "sign-table", "ms": [m], "qmax": 200}))
    out.append(CheckConfig("jacobi", "gauss-moduli", tol=1e-8,
                           params={"mode": "gauss-moduli", "limit": 10_000}))
    out.append(CheckConfig("jacobi", "psi-independence-5-2", field=FieldParams(p=5, e=2), tol=1e-8,
                           params={"mode": "psi-independence",
                                   "alpha": {"1/3": 1, "1/4": 1, "5/12": -1, "1/6": -1}}))
    for key, (D, units) in CANONICAL_CASES.items():
        out.append(CheckConfig("chow", f"canonical-class-{key}",
                               params={"D": D, "expected_units": units}))
    return out


def by_name(name: str) -> CheckConfig:
    for c in catalog():
        if c.name == name:
            return c
    raise KeyError(name)
