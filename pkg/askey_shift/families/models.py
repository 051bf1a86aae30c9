"""
Pydantic models for the family catalog.

A family entry mirrors one block of ``catalog/*.yaml``:
- FamilyDescriptor: framework, coordinate, parameters, closed forms
- ParameterSpec: one parameter and how it is sampled and shifted
- SeriesSpec: the terminating (q-)hypergeometric series that builds P_n
- VariantDescriptor: one new factorization (a split of the potential)

Catalog keys that are single capitals (``V``, ``B``, ``D1``...) are kept as
aliases so the YAML reads like the formulas while the attributes stay lowercase.
"""

from __future__ import annotations

from enum import Enum
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


class UnknownVariantError(LookupError):
    """Raised when a family has no variant with the requested label."""

    def __init__(self, family: str, label: str):
        self.family = family
        self.label = label
        super().__init__(f"family {family!r} has no variant {label!r}")


class Framework(str, Enum):
    OQM = "oQM"
    IDQM = "idQM"
    RDQM_FINITE = "rdQM-finite"
    RDQM_SEMI = "rdQM-semi"
    RDQMJ = "rdQMJ"

    @property
    def is_rdqm(self) -> bool:
        return self in (Framework.RDQM_FINITE, Framework.RDQM_SEMI)

    @property
    def is_discrete(self) -> bool:
        """Real-shift frameworks, Jackson measure included."""
        return self.is_rdqm or self is Framework.RDQMJ


class CoordinateKind(str, Enum):
    ETA_POLY = "eta-poly"
    X_POLY = "x-poly"
    Z_LAURENT = "z-laurent"
    T_LAURENT = "t-laurent"
    ETA_DIRECT = "eta-direct"


class ParameterKind(str, Enum):
    ADD = "add"  # shifts by delta
    MUL = "mul"  # q^lambda, shifts by q^delta
    HALF = "half"  # q^(lambda/2)
    SIZE = "size"  # N itself
    NEGSIZE = "negsize"  # -N
    QSIZE = "qsize"  # q^-N
    PHASE = "phase"  # unit modulus, never shifts

    @property
    def is_size(self) -> bool:
        return self in (ParameterKind.SIZE, ParameterKind.NEGSIZE, ParameterKind.QSIZE)


class ParameterSpec(BaseModel):
    """One family parameter."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    kind: ParameterKind
    complex: bool = False
    lo: Optional[str] = None
    hi: Optional[str] = None
    square: bool = False  # sampled as the square of a rational root


class SeriesSpec(BaseModel):
    """Terminating series in ratio form.

    ``hyper`` terms use rising factorials of ``upper``/``lower``; ``qhyper``
    terms use q-shifted factorials in ``base`` (default q) together with the
    ``((-1)^k base^(k(k-1)/2))^(1+r-s)`` balancing factor.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["hyper", "qhyper"]
    upper: list[str]
    lower: list[str] = Field(default_factory=list)
    argument: str
    prefactor: Optional[str] = None
    base: Optional[str] = None
    normalize: bool = False


class ConjugatePair(BaseModel):
    """Two parameters drawn as complex conjugates for the listed variants."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    params: tuple[str, str]
    variants: list[str]

    @field_validator("variants", mode="before")
    @classmethod
    def _labels_as_text(cls, value: Any) -> Any:
        return [str(item) for item in value]

    def applies_to(self, variant: str | None) -> bool:
        return (variant or "base") in self.variants


class DifferentialCoefficients(BaseModel):
    """First-order differential operator ``d1 d/deta + d0``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    d1: str
    d0: str


class VariantDescriptor(BaseModel):
    """One new factorization of a family."""

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    label: str
    f_tilde: str
    b_tilde: str
    delta_bar: list[str] = Field(default_factory=list)

    # idQM: V = V1 V2
    v1: Optional[str] = Field(default=None, alias="V1")
    v2: Optional[str] = Field(default=None, alias="V2")

    # rdQM: B = B1 B2, D = D1 D2, new forward relation shifts x by `shift`
    b1: Optional[str] = Field(default=None, alias="B1")
    b2: Optional[str] = Field(default=None, alias="B2")
    d1: Optional[str] = Field(default=None, alias="D1")
    d2: Optional[str] = Field(default=None, alias="D2")
    shift: Optional[int] = None

    # rdQMJ: BJ = BJ1 BJ2, DJ = DJ1 DJ2, eta scaled by `scale`
    bj1: Optional[str] = Field(default=None, alias="BJ1")
    bj2: Optional[str] = Field(default=None, alias="BJ2")
    dj1: Optional[str] = Field(default=None, alias="DJ1")
    dj2: Optional[str] = Field(default=None, alias="DJ2")
    scale: Optional[str] = None

    # oQM: explicit first-order operators
    forward: Optional[DifferentialCoefficients] = Field(default=None, alias="F")
    backward: Optional[DifferentialCoefficients] = Field(default=None, alias="B")

    @field_validator("label", "f_tilde", "b_tilde", "scale", mode="before")
    @classmethod
    def _as_text(cls, value: Any) -> Any:
        return value if value is None else str(value)

    @field_validator("delta_bar", mode="before")
    @classmethod
    def _shift_as_text(cls, value: Any) -> Any:
        return [str(item) for item in value]


class FamilyDescriptor(BaseModel):
    """A catalog entry: everything needed to build P_n and its operators."""

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    id: str
    name: str
    framework: Framework
    coordinate: Literal["eta", "x", "z", "t"]
    parameters: list[ParameterSpec] = Field(default_factory=list)
    delta: list[str] = Field(default_factory=list)
    kappa: str
    energy: str
    series: SeriesSpec
    constants: dict[str, str] = Field(default_factory=dict)
    blacklist: list[str] = Field(default_factory=list)
    conjugate_pair: Optional[ConjugatePair] = None
    eta: Optional[str] = None

    # classic forward/backward scalars (oQM, idQM)
    f: Optional[str] = None
    b: Optional[str] = None

    # oQM: H = -4 c2 d^2 - 4 c1 d, F = cF d
    c2: Optional[str] = None
    c1: Optional[str] = None
    c_f: Optional[str] = Field(default=None, alias="cF")

    # idQM
    potential: Optional[str] = Field(default=None, alias="V")
    phi: Optional[str] = None

    # rdQM
    birth: Optional[str] = Field(default=None, alias="B")
    death: Optional[str] = Field(default=None, alias="D")

    # rdQMJ
    birth_j: Optional[str] = Field(default=None, alias="BJ")
    death_j: Optional[str] = Field(default=None, alias="DJ")
    jackson_factor: Optional[str] = Field(default=None, alias="A")
    r: Optional[str] = None

    variants: list[VariantDescriptor] = Field(default_factory=list)

    @field_validator("delta", "blacklist", mode="before")
    @classmethod
    def _texts(cls, value: Any) -> Any:
        return [str(item) for item in value]

    @field_validator("kappa", "energy", "f", "b", "c2", "c1", "c_f", "phi", "r", mode="before")
    @classmethod
    def _text(cls, value: Any) -> Any:
        return value if value is None else str(value)

    @property
    def coordinate_kind(self) -> CoordinateKind:
        if self.framework is Framework.OQM:
            return CoordinateKind.ETA_POLY
        if self.framework is Framework.RDQMJ:
            return CoordinateKind.ETA_DIRECT
        if self.coordinate == "z":
            return CoordinateKind.Z_LAURENT
        if self.coordinate == "t":
            return CoordinateKind.T_LAURENT
        return CoordinateKind.X_POLY

    @property
    def has_new_factorization(self) -> bool:
        return bool(self.variants)

    @property
    def is_finite(self) -> bool:
        return any(spec.kind.is_size for spec in self.parameters)

    @property
    def parameter_names(self) -> list[str]:
        return [spec.name for spec in self.parameters]

    @property
    def variant_labels(self) -> list[str]:
        return [variant.label for variant in self.variants]

    @property
    def constraints(self) -> list[str]:
        """Human-readable sampling constraints (blacklist plus parameter ranges)."""
        notes = [f"{text} != 0" for text in self.blacklist]
        for spec in self.parameters:
            if spec.lo is not None or spec.hi is not None:
                notes.append(f"{spec.lo or '-inf'} <= {spec.name} <= {spec.hi or 'inf'}")
            if spec.kind is ParameterKind.PHASE:
                notes.append(f"|{spec.name}| = 1")
        return notes

    def variant(self, label: str) -> VariantDescriptor:
        for variant in self.variants:
            if variant.label == label:
                return variant
        raise UnknownVariantError(self.id, label)

    def parameter(self, name: str) -> ParameterSpec:
        for spec in self.parameters:
            if spec.name == name:
                return spec
        raise KeyError(name)
