"""Check configurations: dataclasses, validation and TOML round-tripping."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from typing import Any

import tomli
import tomli_w

from .algebra import QMatrix, as_fraction
from .connection import ConnectionDataError, LogConnection

CHECK_KINDS = ("periods", "monodromy", "gamma", "symbol", "reciprocity", "chow", "jacobi",
               "fermat-count")


class ConfigError(ValueError):
    pass


def parse_rational(s, where: str) -> Fraction:
    try:
        return as_fraction(s)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"{where}: cannot parse {s!r} as a rational") from exc


@dataclass(frozen=True)
class ConnectionSpec:
    points: tuple[str, ...]
    residues: tuple[tuple[tuple[str, ...], ...], ...]

    @property
    def rank(self) -> int:
        return len(self.residues[0])

    def build(self, label: str = "", where: str = "connection") -> LogConnection:
        pts = [parse_rational(p, f"{where}.points") for p in self.points]
        mats = []
        for i, m in enumerate(self.residues):
            rows = [[parse_rational(x, f"{where}.residues[{i}]") for x in row] for row in m]
            mats.append(QMatrix.of(rows))
        return LogConnection(tuple(pts), tuple(mats), label=label)

    @classmethod
    def rank_one(cls, points, exponents) -> "ConnectionSpec":
        return cls(tuple(str(p) for p in points), tuple(((str(e),),) for e in exponents))

    def to_dict(self) -> dict:
        return {"points": list(self.points),
                "residues": [[list(r) for r in m] for m in self.residues]}

    @classmethod
    def from_dict(cls, d: dict, where: str) -> "ConnectionSpec":
        try:
            pts = tuple(str(p) for p in d["points"])
            res = tuple(tuple(tuple(str(x) for x in row) for row in m) for m in d["residues"])
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"{where}: connection needs 'points' and 'residues'") from exc
        if len(pts) != len(res):
            raise ConfigError(f"{where}: {len(pts)} points but {len(res)} residue matrices")
        r = len(res[0]) if res else 0
        for i, m in enumerate(res):
            if len(m) != r or any(len(row) != r for row in m):
                raise ConfigError(f"{where}: residue {i} is not {r}x{r}")
        spec = cls(pts, res)
        try:
            spec.build(where=where)  # parse every entry now so errors carry the field name
        except ConnectionDataError as exc:
            raise ConfigError(f"{where}: {exc}") from exc
        return spec


@dataclass(frozen=True)
class PathOptions:
    base: tuple[float, float] | None = None
    disc_scale: float = 1.0

    @property
    def base_point(self) -> complex | None:
        return None if self.base is None else complex(*self.base)


@dataclass(frozen=True)
class FieldParams:
    p: int | None = None
    e: int = 1
    m: int | None = None
    q: int | None = None


@dataclass(frozen=True)
class CheckConfig:
    check: str
    name: str = ""
    connection: ConnectionSpec | None = None
    path: PathOptions = dc_field(default_factory=PathOptions)
    tol: float | None = None
    field: FieldParams = dc_field(default_factory=FieldParams)
    seed: int = 42
    params: dict = dc_field(default_factory=dict, hash=False)

    def __post_init__(self):
        if self.check not in CHECK_KINDS:
            raise ConfigError(f"unknown check kind {self.check!r}; expected one of {CHECK_KINDS}")

    @property
    def label(self) -> str:
        return self.name or self.check

    # serialization -----------------------------------------------------
    def to_dict(self) -> dict:
        d: dict[str, Any] = {"check": self.check, "name": self.name, "seed": self.seed}
        if self.connection is not None:
            d["connection"] = self.connection.to_dict()
        path = {}
        if self.path.base is not None:
            path["base"] = list(self.path.base)
        if self.path.disc_scale != 1.0:
            path["disc_scale"] = self.path.disc_scale
        if path:
            d["path"] = path
        if self.tol is not None:
            d["tol"] = self.tol
        fp = {k: v for k, v in asdict(self.field).items() if v is not None and not (k == "e" and v == 1)}
        if fp:
            d["field"] = fp
        if self.params:
            d["params"] = dict(self.params)
        return d

    @classmethod
    def from_dict(cls, d: dict, where: str = "check") -> "CheckConfig":
        if not isinstance(d, dict):
            raise ConfigError(f"{where}: expected a table")
        known = {"check", "name", "connection", "path", "tol", "field", "seed", "params"}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"{where}: unknown keys {sorted(extra)}")
        if "check" not in d:
            raise ConfigError(f"{where}: missing 'check'")
        conn = d.get("connection")
        conn = ConnectionSpec.from_dict(conn, f"{where}.connection") if conn is not None else None
        p = d.get("path", {})
        base = p.get("base")
        if base is not None and (len(base) != 2):
            raise ConfigError(f"{where}.path.base: expected [re, im]")
        path = PathOptions(None if base is None else (float(base[0]), float(base[1])),
                           float(p.get("disc_scale", 1.0)))
        fd = d.get("field", {})
        bad = set(fd) - {"p", "e", "m", "q"}
        if bad:
            raise ConfigError(f"{where}.field: unknown keys {sorted(bad)}")
        fp = FieldParams(**{k: int(v) for k, v in fd.items()})
        tol = d.get("tol")
        try:
            return cls(check=str(d["check"]), name=str(d.get("name", "")), connection=conn,
                       path=path, tol=None if tol is None else float(tol), field=fp,
                       seed=int(d.get("seed", 42)), params=dict(d.get("params", {})))
        except ConfigError as exc:
            raise ConfigError(f"{where}: {exc}") from exc


def loads(text: str) -> list[CheckConfig]:
    try:
        doc = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ConfigError(f"TOML syntax error: {exc}") from exc
    checks = doc.get("check")
    if checks is None:
        raise ConfigError("config needs at least one [[check]] table")
    if isinstance(checks, dict):
        checks = [checks]
    return [CheckConfig.from_dict(c, f"check[{i}]") for i, c in enumerate(checks)]


def load(path: str) -> list[CheckConfig]:
    with open(path, "rb") as fh:
        return loads(fh.read().decode())


def dumps(configs: list[CheckConfig]) -> str:
    return tomli_w.dumps({"check": [c.to_dict() for c in configs]})
