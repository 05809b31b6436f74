"""Named, ordered families of invariant polynomials and their file formats.

Text format: header lines starting with ``#`` followed by one polynomial per
line in canonical text form::

    # family: catalecticant
    # shape: d=2 t=2 a=2 d_prime=1
    # params: {"K":[1,2],"L":[2,1],"j":1,"n":2,"r":2}
    # count: 1
    4*y[...]*... - ...

JSON format (``"format": 1``) stores each polynomial both as canonical text
and as a structured term list.  Both formats round-trip byte for byte.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterable

from .algebra.poly import MultiPoly, parse_poly
from .algebra.variables import KIND_COEFF_Y
from .errors import ParseError, VariableMismatch
from .model import MonomialLabel, Shape

FORMAT_VERSION = 1


class Family(enum.Enum):
    SEQUENCE_COPY = "sequence-copy"
    SYMMETRIZATION = "symmetrization"
    LIE_MINORS = "lie-minors"
    N_MATRIX_MINORS = "n-matrix-minors"
    PENCIL_MIXED_MINORS = "pencil-mixed-minors"
    LOW_RANK_MINORS = "low-rank-minors"
    DETERMINANTAL_SYZYGIES = "determinantal-syzygies"
    CATALECTICANT = "catalecticant"
    CROSS_TARGET = "cross-target"
    BLOCK_VERONESE = "block-veronese"
    RESULTANT_QUARTICS = "resultant-quartics"
    CROSS_ROW_MINORS = "cross-row-minors"


def _canonical_params(params: dict) -> dict:
    return json.loads(json.dumps(params or {}, sort_keys=True))


def _dump_params(params: dict) -> str:
    return json.dumps(params, sort_keys=True, separators=(",", ":"))


def label_fits(label: MonomialLabel, shape: Shape) -> bool:
    cols = {label.j} | ({label.n} if label.is_cross else set())
    return label.max_index() <= shape.d and max(cols) <= shape.t and label.row <= shape.d_prime and min(label.multiset) >= 1


@dataclass(frozen=True)
class InvariantSet:
    family: Family
    shape: Shape
    polys: tuple
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))
        object.__setattr__(self, "params", _canonical_params(self.params))
        self.validate()

    def validate(self) -> None:
        for p in self.polys:
            for v in p.variables():
                if v.kind != KIND_COEFF_Y:
                    raise VariableMismatch(f"{v} is not a coefficient variable")
                try:
                    lab = MonomialLabel.from_var(v)
                except ValueError as exc:
                    raise VariableMismatch(f"{v} is not a valid label") from exc
                if not label_fits(lab, self.shape):
                    raise VariableMismatch(f"{v} does not belong to shape {self.shape}")

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def variables(self) -> tuple:
        return tuple(sorted({v for p in self.polys for v in p.variables()}))

    def degrees(self) -> list:
        return [p.degree() for p in self.polys]

    def with_polys(self, polys: Iterable[MultiPoly]) -> "InvariantSet":
        return InvariantSet(self.family, self.shape, tuple(polys), self.params)

    # -- text ---------------------------------------------------------------

    def header_lines(self) -> list:
        s = self.shape
        return [
            f"# family: {self.family.value}",
            f"# shape: d={s.d} t={s.t} a={s.a} d_prime={s.d_prime}",
            f"# params: {_dump_params(self.params)}",
            f"# count: {len(self.polys)}",
        ]

    def to_text(self) -> str:
        return "\n".join(self.header_lines() + [p.to_text() for p in self.polys]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "InvariantSet":
        header: dict = {}
        polys = []
        for line in text.splitlines():
            if not line.strip():
                continue
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(":")
                header[key.strip()] = value.strip()
            else:
                polys.append(parse_poly(line))
        try:
            family = Family(header["family"])
            shape = Shape(**{k: int(v) for k, v in (kv.split("=") for kv in header["shape"].split())})
            params = json.loads(header.get("params", "{}"))
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad invariant file header: {exc}") from exc
        if "count" in header and int(header["count"]) != len(polys):
            raise ParseError("polynomial count does not match header")
        return cls(family, shape, tuple(polys), params)

    # -- JSON ---------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "format": FORMAT_VERSION,
            "family": self.family.value,
            "shape": self.shape.as_dict(),
            "params": self.params,
            "count": len(self.polys),
            "invariants": [{"text": p.to_text(), "terms": p.to_json_terms()} for p in self.polys],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "InvariantSet":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if data.get("format") != FORMAT_VERSION:
            raise ParseError(f"unsupported format version {data.get('format')!r}")
        polys = []
        for item in data["invariants"]:
            p = MultiPoly.from_json_terms(item["terms"])
            if p.to_text() != item["text"]:
                raise ParseError("structured terms disagree with the text form")
            polys.append(p)
        return cls(Family(data["family"]), Shape(**data["shape"]), tuple(polys), data.get("params", {}))

    @classmethod
    def load(cls, text: str) -> "InvariantSet":
        """Parse either format, detected from the first non-blank character."""
        return cls.from_json(text) if text.lstrip().startswith("{") else cls.from_text(text)
