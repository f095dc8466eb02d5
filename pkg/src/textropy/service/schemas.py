"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

Mode = Literal["natural", "artificial"]
Lang = Literal["english", "spanish", "other"]
JColumn = Literal["J_1D", "J_thetaD"]


class TokenizeRequest(BaseModel):
    text: str
    mode: Mode
    lang: Lang = "other"
    dialect: Optional[str] = None
    source_name: str = ""


class TokenizeResponse(BaseModel):
    tokens: list[str]
    count: int
    mode: Mode
    source_name: str = ""


class AnalyzeRequest(BaseModel):
    text: str
    mode: Mode
    lang: Lang = "other"
    dialect: Optional[str] = None
    name: str = ""
    class_label: Optional[str] = None


class TextRecordModel(BaseModel):
    name: str
    class_label: str
    mode: Mode
    L: int
    D: int
    theta: Optional[int] = None
    d: float
    h: float
    e: float
    s: float
    c: float
    g: Optional[float] = None
    g_tail: Optional[float] = None
    J_1D: Optional[float] = None
    J_thetaD: Optional[float] = None
    L_tail: Optional[int] = None
    source_path: str = ""
    content_digest: str = ""


class ProfileRequest(BaseModel):
    text: str
    mode: Mode
    lang: Lang = "other"
    dialect: Optional[str] = None
    include_cdf: bool = False
    max_ranks: Optional[int] = Field(default=None, ge=1)


class ProfileEntryModel(BaseModel):
    rank: int
    symbol: str
    frequency: float


class CdfPointModel(BaseModel):
    rank: int
    cumulative: float


class ProfileResponse(BaseModel):
    L: float
    D: int
    theta: int
    entries: list[ProfileEntryModel]
    cdf: Optional[list[CdfPointModel]] = None


class MergedProfileRow(BaseModel):
    rank: int
    symbol: str
    use_percent: float


class MergedProfileResponse(BaseModel):
    label: str
    L: float
    D: int
    theta: int
    rows: list[MergedProfileRow]


class CorpusConfigModel(BaseModel):
    mode_overrides: dict[str, str] = Field(default_factory=dict)
    natural_extensions: list[str] = [".txt", ".md"]
    default_mode: str = "natural"
    dialect_table_path: Optional[str] = None
    label_from_subdir: bool = True
    default_label: str = "other"
    workers: int = 0


class CorpusRequest(BaseModel):
    root: str
    config: CorpusConfigModel = Field(default_factory=CorpusConfigModel)
    fit_labels: bool = True


class CorpusResponse(BaseModel):
    library: dict
    n_records: int
    labels: dict[str, int]
    warnings: list[str]


class HeapsFitModel(BaseModel):
    k: float
    beta: float
    rms_log_error: float
    n_points: int


class AlphaFitModel(BaseModel):
    alpha: float
    q: float
    sse: float
    n_points: int


class FitRequest(BaseModel):
    library: dict
    kind: Literal["heaps", "alpha"]
    label: str


class FitResponse(BaseModel):
    label: str
    kind: Literal["heaps", "alpha"]
    heaps: Optional[HeapsFitModel] = None
    alpha: Optional[AlphaFitModel] = None


class GroupSummaryModel(BaseModel):
    label: str
    n: int
    J1D_mean: Optional[float] = None
    J1D_std: Optional[float] = None
    JthetaD_mean: Optional[float] = None
    JthetaD_std: Optional[float] = None
    corr_J1D_L: Optional[float] = None
    corr_JthetaD_Ltail: Optional[float] = None
    tail_corr_basis: str


class WelchModel(BaseModel):
    t: float
    df: float
    p: float
    n1: int
    n2: int
    pooled: bool


class CompareRequest(BaseModel):
    library: dict
    groups: list[str]
    column: JColumn = "J_1D"
    pooled: bool = False

    @model_validator(mode="after")
    def _two_groups(self):
        if len(self.groups) != 2:
            raise ValueError("exactly two group labels are required")
        return self


class CompareResponse(BaseModel):
    column: JColumn
    groups: list[GroupSummaryModel]
    welch: WelchModel


class ClassifyRequest(BaseModel):
    library: dict
    d: float
    h: float


class MergedProfileRequest(BaseModel):
    library: dict
    label: str


class ClassifyResponse(BaseModel):
    label: str
    residuals: dict[str, float]


class PlotRequest(BaseModel):
    library: dict
    figure: str


class DialectModel(BaseModel):
    name: str
    line_comments: list[str]
    block_comments: list[list[str]]
    string_delimiters: list[str]
    escape_char: Optional[str] = None
    apostrophe_transpose: bool = False


class DialectTableResponse(BaseModel):
    default: str
    extensions: dict[str, str]
    dialects: dict[str, DialectModel]


class HealthResponse(BaseModel):
    status: str
    version: str
