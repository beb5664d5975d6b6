"""Request/response layer shared by the HTTP API and the CLI.

Handlers take a validated input document and return a response model;
the FastAPI app exposes them over HTTP and the command line drives the
same functions in process, so both faces render identical data. All
rationals cross the wire as strings to keep the arithmetic exact.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, field_validator

from .classify import (
    BadParameters,
    BadToricType,
    classify_pair,
    danilov_gizatullin,
    smooth_exceptional_zigzag,
    toric_classes,
    toric_type,
    toric_zigzag,
)
from .dpd import (
    DpdPair,
    InvalidPair,
    NotGizatullin,
    QDivisor,
    ToricInput,
    extended_divisor,
    is_gizatullin,
    is_toric,
    singular_points,
    swap,
)
from .dualgraph import ExtendedDivisor, render_ascii, to_dot
from .exactmath import format_rational, parse_rational
from .rigidity import is_rigid


class PairDocument(BaseModel):
    """A divisor pair as lists of (point, coefficient) string entries."""

    d_plus: list[tuple[str, str]] = []
    d_minus: list[tuple[str, str]] = []

    @field_validator("d_plus", "d_minus")
    @classmethod
    def _parseable_and_duplicate_free(cls, entries):
        seen = set()
        for point, coeff in entries:
            p = parse_rational(point)
            parse_rational(coeff)
            if p in seen:
                raise ValueError(f"duplicate point {point}")
            seen.add(p)
        return entries

    def to_pair(self) -> DpdPair:
        return DpdPair(
            QDivisor.of(
                (parse_rational(p), parse_rational(c)) for p, c in self.d_plus
            ),
            QDivisor.of(
                (parse_rational(p), parse_rational(c)) for p, c in self.d_minus
            ),
        )

    @classmethod
    def from_pair(cls, pair: DpdPair) -> "PairDocument":
        return cls(
            d_plus=[
                (format_rational(p), format_rational(c))
                for p, c in pair.d_plus.entries
            ],
            d_minus=[
                (format_rational(p), format_rational(c))
                for p, c in pair.d_minus.entries
            ],
        )


class SingularPointOut(BaseModel):
    point: str
    delta: int
    e: int


class AnalyzeReport(BaseModel):
    summary: str
    gizatullin: bool
    toric: bool
    smooth: bool
    zigzag: Optional[str]
    zigzag_weights: Optional[list[int]]
    w_s: Optional[int]
    toric_de: Optional[tuple[int, int]]
    singular_points: list[SingularPointOut]
    exceptional_smooth_family: Optional[bool]


class FeatherOut(BaseModel):
    at: str
    fiber_index: int
    bridge: int
    box: list[int]


class ExtendedReport(BaseModel):
    zigzag: str
    s_index: int
    n_index: int
    display: str
    spine: list[int]
    feathers: list[FeatherOut]
    dot: str


class MoveOut(BaseModel):
    feather: str
    source: str
    target: str


class RigidityReportOut(BaseModel):
    rigid: bool
    distinguished: bool
    stable_generalization: bool
    stable_specialization: bool
    mother: list[tuple[int, int]]
    jump_pairs: list[MoveOut]
    generalization_moves: list[MoveOut]
    display: str


class ClassifyReport(BaseModel):
    alpha_plus: bool
    alpha_star: bool
    beta: bool
    cstar_verdict: str
    inverse_conjugate: Optional[str]
    fibration_classes: str


class ToricReport(BaseModel):
    d: int
    e: int
    zigzag: str
    classes: int


class DgReport(BaseModel):
    k: int
    r: int
    pair: PairDocument
    extended: ExtendedReport


def _extended_report(ext: ExtendedDivisor) -> ExtendedReport:
    feathers = [
        FeatherOut(
            at=f"C_{i + 2}",
            fiber_index=i,
            bridge=fe.bridge_weight,
            box=list(fe.box),
        )
        for i, fe in ext.fiber.feathers
    ]
    return ExtendedReport(
        zigzag=str(ext.zigzag()),
        s_index=ext.s_index,
        n_index=ext.n,
        display=render_ascii(ext),
        spine=list(ext.fiber.spine),
        feathers=feathers,
        dot=to_dot(ext.tree(), spine_prefix="C"),
    )


def analyze_pair(doc: PairDocument) -> AnalyzeReport:
    pair = doc.to_pair()
    ok, _, _ = is_gizatullin(pair)
    if not ok:
        raise NotGizatullin(
            "fractional parts must live in at most one point each"
        )
    sing = [
        SingularPointOut(point=format_rational(p), delta=d, e=e)
        for p, (d, e) in singular_points(pair)
    ]
    smooth = not sing
    if is_toric(pair):
        try:
            d, e = toric_type(pair)
            z = toric_zigzag(d, e)
            return AnalyzeReport(
                summary=f"toric (d,e)=({d},{e}) zigzag {z}",
                gizatullin=True,
                toric=True,
                smooth=smooth,
                zigzag=str(z),
                zigzag_weights=list(z.weights),
                w_s=None,
                toric_de=(d, e),
                singular_points=sing,
                exceptional_smooth_family=None,
            )
        except BadToricType:
            return AnalyzeReport(
                summary="toric, A^1 x C* (no V_{d,e} normal form)",
                gizatullin=True,
                toric=True,
                smooth=smooth,
                zigzag=None,
                zigzag_weights=None,
                w_s=None,
                toric_de=None,
                singular_points=sing,
                exceptional_smooth_family=None,
            )
    ext = extended_divisor(pair)
    z = ext.zigzag()
    exceptional = smooth_exceptional_zigzag(z) if z.is_standard() else None
    flag = "smooth" if smooth else "singular"
    return AnalyzeReport(
        summary=f"zigzag {z} {flag}",
        gizatullin=True,
        toric=False,
        smooth=smooth,
        zigzag=str(z),
        zigzag_weights=list(z.weights),
        w_s=ext.fiber.spine[ext.s_index - 2],
        toric_de=None,
        singular_points=sing,
        exceptional_smooth_family=exceptional,
    )


def extended_pair(doc: PairDocument, reverse: bool = False) -> ExtendedReport:
    pair = doc.to_pair()
    return _extended_report(extended_divisor(swap(pair) if reverse else pair))


def rigidity_pair(
    doc: PairDocument, reverse: bool = False
) -> RigidityReportOut:
    pair = doc.to_pair()
    ext = extended_divisor(swap(pair) if reverse else pair)
    rep = is_rigid(ext.fiber)
    jumps = [
        MoveOut(feather=f"B_{rho + 1}", source=f"D_{i}", target=f"D_{ip}")
        for rho, i, ip in rep.jump_pairs
    ]
    moves = [
        MoveOut(feather=f"B_{rho + 1}", source=f"D_{i}", target=f"D_{mu}")
        for rho, i, mu in rep.generalization_moves
    ]
    lines = [
        f"rigid: {'yes' if rep.rigid else 'no'}",
        f"distinguished: {'yes' if rep.distinguished else 'no'}",
    ]
    lines += [f"jump: {m.feather} -> {m.target}" for m in jumps]
    lines += [f"generalization: {m.feather} -> {m.target}" for m in moves]
    return RigidityReportOut(
        rigid=rep.rigid,
        distinguished=rep.distinguished,
        stable_generalization=rep.stable_generalization,
        stable_specialization=rep.stable_specialization,
        mother=sorted(rep.mother.items()),
        jump_pairs=jumps,
        generalization_moves=moves,
        display="\n".join(lines),
    )


def classify_doc(doc: PairDocument) -> ClassifyReport:
    rep = classify_pair(doc.to_pair())
    return ClassifyReport(
        alpha_plus=rep.alpha_plus,
        alpha_star=rep.alpha_star,
        beta=rep.beta,
        cstar_verdict=rep.cstar_verdict,
        inverse_conjugate=(
            str(rep.inverse_conjugate)
            if rep.inverse_conjugate is not None
            else None
        ),
        fibration_classes=rep.fibration_classes,
    )


def toric_report(d: int, e: int) -> ToricReport:
    z = toric_zigzag(d, e)
    return ToricReport(d=d, e=e, zigzag=str(z), classes=toric_classes(d, e))


def dg_report(k: int, r: int) -> DgReport:
    pair, ext = danilov_gizatullin(k, r)
    return DgReport(
        k=k,
        r=r,
        pair=PairDocument.from_pair(pair),
        extended=_extended_report(ext),
    )


app = FastAPI(title="dpdkit", version="1.0.0")


def _http(exc: ValueError) -> HTTPException:
    kind = {
        NotGizatullin: "not_gizatullin",
        ToricInput: "toric_input",
        BadToricType: "toric_input",
        BadParameters: "bad_parameters",
        InvalidPair: "invalid_pair",
    }.get(type(exc), "invalid_input")
    status = 422 if kind in ("invalid_pair", "invalid_input") else 400
    return HTTPException(
        status_code=status, detail={"error": kind, "message": str(exc)}
    )


@app.post("/analyze", response_model=AnalyzeReport)
def http_analyze(doc: PairDocument) -> AnalyzeReport:
    try:
        return analyze_pair(doc)
    except ValueError as exc:
        raise _http(exc) from exc


@app.post("/extended", response_model=ExtendedReport)
def http_extended(doc: PairDocument, reverse: bool = False) -> ExtendedReport:
    try:
        return extended_pair(doc, reverse)
    except ValueError as exc:
        raise _http(exc) from exc


@app.post("/rigidity", response_model=RigidityReportOut)
def http_rigidity(
    doc: PairDocument, reverse: bool = False
) -> RigidityReportOut:
    try:
        return rigidity_pair(doc, reverse)
    except ValueError as exc:
        raise _http(exc) from exc


@app.post("/classify", response_model=ClassifyReport)
def http_classify(doc: PairDocument) -> ClassifyReport:
    try:
        return classify_doc(doc)
    except ValueError as exc:
        raise _http(exc) from exc


@app.get("/toric/{d}/{e}", response_model=ToricReport)
def http_toric(d: int, e: int) -> ToricReport:
    try:
        return toric_report(d, e)
    except ValueError as exc:
        raise _http(exc) from exc


@app.get("/dg/{k}/{r}", response_model=DgReport)
def http_dg(k: int, r: int) -> DgReport:
    try:
        return dg_report(k, r)
    except ValueError as exc:
        raise _http(exc) from exc
