import typing as t


class FieldData(t.TypedDict):
    p: int
    k: int
    q: int
    modulus: list[int]


class OrbitData(t.TypedDict):
    """One orbit representative: coordinates as element encodings, 1-based support."""

    rep: list[int]
    support: list[int]


class CodeData(t.TypedDict):
    alpha: list[int]
    basis: list[str]
    params: list[int | None]


class ResultDocument(t.TypedDict, total=False):
    """The JSON document produced by running a job.

    Everything but `timing` only depends on the job and the configuration, so that
    running the same job twice gives the same bytes.
    """

    schema_version: int
    job: dict[str, t.Any]
    job_hash: str
    task: str
    field: FieldData
    beta: list[list[int]]
    construction: str
    path: str
    generators: list[str]
    groebner_basis: list[str]
    orbits: list[OrbitData]
    orbit_count: int
    cell_count: int
    code: CodeData
    verdicts: dict[str, bool]
    timing: dict[str, float]


class GoldenData(t.TypedDict, total=False):
    """A bundled golden: a job and the values its result must reproduce."""

    name: str
    slow: bool
    job: dict[str, t.Any]
    expected: dict[str, t.Any]
