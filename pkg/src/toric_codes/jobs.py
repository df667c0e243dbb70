"""Job files: the schema, and the runner producing result documents."""

import contextlib
import random
import time
import typing as t
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

import sympy
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from toric_codes import utils
from toric_codes._config.config import PathName
from toric_codes._config.config_base import Config
from toric_codes.codes import (
    EvaluationCode,
    build_evaluation_code,
    graded_vanishing_space,
    singleton_bound,
)
from toric_codes.gf import FieldElement, field_create
from toric_codes.groebner import (
    Ideal,
    ideal_equal,
    is_groebner_basis,
    minimal_generators,
)
from toric_codes.poly import GradedRing
from toric_codes.typing import OrbitData, ResultDocument
from toric_codes.vanishing import BudgetExceeded, get_pipeline
from toric_codes.vanishing.cellular import cell_ideal, point_orbit_ideal
from toric_codes.vanishing.elimination import (
    Domain,
    RationalMap,
    parameterized_vanishing_ideal,
)
from toric_codes.vanishing.orbits import (
    Fingerprinter,
    OrbitPoint,
    Region,
    count_cells,
    enumerate_orbit_points,
    region_points,
)
from toric_codes.vanishing.toric import (
    ToricData,
    colon_matches_saturation,
    named_construction,
    toric_vanishing_ideal,
)

logger = utils.get_logger(__name__)

SCHEMA_VERSION = 1

Task = t.Literal[
    "param_ideal",
    "affine_ideal",
    "cell_ideal",
    "point_ideal",
    "toric_ideal",
    "orbits",
    "code",
]
Point = tuple[FieldElement, ...]


class JobError(utils.ToricError):
    """Errors occuring while loading or running a job."""

    pass


class JobModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class MapSpec(JobModel):
    """A rational map given by numerator and denominator texts in y_1..y_s."""

    f: list[str] = Field(min_length=1)
    g: list[str] | None = None
    s: int | None = Field(default=None, ge=1)
    domain: Domain = "full_affine"

    @model_validator(mode="after")
    def same_length(self) -> "MapSpec":
        if self.g is not None and len(self.g) != len(self.f):
            raise ValueError(
                f"{len(self.f)} numerators but {len(self.g)} denominators."
            )
        return self


class Options(JobModel):
    """Per job budgets and pipeline choice; unset values fall back to the config."""

    path: PathName | None = None
    max_pairs: int | None = Field(default=None, ge=1)
    max_points: int | None = Field(default=None, ge=1)
    max_codewords: int | None = Field(default=None, ge=1)


class Job(JobModel):
    """A computation request.

    The field is GF(p^k). The grading is given either by `beta` or by exactly one
    named construction. Supports are 1-based; points are lists of element encodings.
    """

    p: int
    k: int = Field(default=1, ge=1)
    beta: list[list[int]] | None = None
    hirzebruch: int | None = Field(default=None, ge=1)
    wps: list[int] | None = None
    product: list[int] | None = None
    task: Task
    rational_map: MapSpec | None = Field(default=None, alias="map")
    alpha: list[int] | None = None
    irrelevant: list[str] | None = Field(default=None, alias="B")
    support: list[int] | None = None
    point: list[int] | None = None
    points: list[list[int]] | None = None
    region: Region | None = None
    raw: bool = False
    ideal: list[str] | None = None
    standard_basis: bool = False
    options: Options = Field(default_factory=Options)

    @field_validator("p")
    @classmethod
    def prime_characteristic(cls, value: int) -> int:
        if not sympy.isprime(value):
            raise ValueError(f"p must be a prime, got {value}")
        return value

    @model_validator(mode="after")
    def check_task_inputs(self) -> "Job":
        given = [
            name
            for name in ("beta", "hirzebruch", "wps", "product")
            if getattr(self, name) is not None
        ]
        if len(given) != 1:
            raise ValueError(
                "exactly one of beta, hirzebruch, wps or product is required, got "
                f"{given or 'none'}"
            )
        required: dict[str, tuple[str, ...]] = {
            "param_ideal": ("rational_map",),
            "cell_ideal": ("support",),
            "point_ideal": ("point",),
            "code": ("alpha",),
        }
        for name in required.get(self.task, ()):
            if getattr(self, name) is None:
                raise ValueError(f"task '{self.task}' requires '{name}'")
        if self.task == "toric_ideal" and self.beta is not None and not self.irrelevant:
            raise ValueError("task 'toric_ideal' with a custom beta requires 'B'")
        if self.region in ("toric", "irrelevant") and (
            self.beta is not None and not self.irrelevant
        ):
            raise ValueError(f"region '{self.region}' with a custom beta requires 'B'")
        if self.region == "image" and self.rational_map is None:
            raise ValueError("region 'image' requires 'map'")
        return self

    def construction(
        self,
    ) -> tuple[t.Literal["hirzebruch", "wps", "product"], list[int]]:
        if self.hirzebruch is not None:
            return "hirzebruch", [self.hirzebruch]
        if self.wps is not None:
            return "wps", self.wps
        if self.product is not None:
            return "product", self.product
        raise JobError("The job has a custom grading.")

    def echo(self) -> dict[str, t.Any]:
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)


@dataclass
class JobOutcome:
    """What running a job produced, besides its result document."""

    job: Job
    document: ResultDocument
    ring: GradedRing
    ideal: Ideal | None = None
    code: EvaluationCode | None = None
    orbits: list[OrbitPoint] | None = None

    @property
    def passed(self) -> bool:
        return all(self.document.get("verdicts", {}).values())


def load_job(path: Path | str) -> Job:
    """Read and validate a job file.

    Raises
    ------
    pydantic.ValidationError
        If the file is not valid JSON or does not match the schema.

    """
    return Job.model_validate_json(Path(path).read_text())


@contextlib.contextmanager
def budgets(options: Options) -> Iterator[None]:
    """Apply the job budgets to the global config for the duration of a job."""
    config = Config.config
    saved = (
        config.groebner.max_pairs,
        config.enumeration.max_points,
        config.codes.max_codewords,
    )
    try:
        if options.max_pairs is not None:
            config.groebner.max_pairs = options.max_pairs
        if options.max_points is not None:
            config.enumeration.max_points = options.max_points
        if options.max_codewords is not None:
            config.codes.max_codewords = options.max_codewords
        yield
    finally:
        (
            config.groebner.max_pairs,
            config.enumeration.max_points,
            config.codes.max_codewords,
        ) = saved


class JobRunner(Config):
    """Run one job.

    Parameters
    ----------
    job
        The validated job.

    """

    def __init__(self, job: Job) -> None:
        self.job = job
        self.field = field_create(job.p, job.k)
        self.toric = self._toric_data()
        beta = self.toric.beta if self.toric is not None else job.beta
        assert beta is not None
        self.ring = GradedRing(self.field, beta)
        self.rational_map = (
            RationalMap.from_texts(
                self.field,
                job.rational_map.f,
                job.rational_map.g,
                job.rational_map.domain,
                job.rational_map.s,
            )
            if job.rational_map is not None
            else None
        )
        self.path: PathName = job.options.path or self.config.path
        self.verdicts: dict[str, bool] = {}

    def _toric_data(self) -> ToricData | None:
        job = self.job
        if job.beta is None:
            kind, params = job.construction()
            return named_construction(kind, tuple(params))
        if not job.irrelevant:
            return None
        ring = GradedRing(field_create(job.p, job.k), job.beta)
        exponents = []
        for text in job.irrelevant:
            monomial = ring.parse(text)
            if not monomial.is_monomial():
                raise JobError(f"'{text}' is not a monomial.")
            exponents.append(monomial.monomials()[0])
        return ToricData.custom(job.beta, exponents)

    # -- regions --------------------------------------------------------------------

    def _default_region(self) -> Region:
        if self.job.region is not None:
            return self.job.region
        if self.rational_map is not None:
            return "image"
        if self.job.task == "toric_ideal":
            return "toric"
        return "affine"

    def _orbits(self, region: Region) -> list[OrbitPoint]:
        return enumerate_orbit_points(
            self.ring,
            region,
            toric=self.toric,
            rational_map=self.rational_map,
            raw=self.job.raw,
        )

    def _soundness_points(self) -> list[Point]:
        """Return the points every generator of the computed ideal must vanish at."""
        job = self.job
        if job.task == "point_ideal":
            assert job.point is not None
            fingerprint = Fingerprinter(self.ring.beta)
            target = fingerprint(self.field.point(job.point))
            return [
                p for p in region_points(self.ring) if fingerprint(p) == target
            ] or [target.rep]
        if job.task == "cell_ideal":
            assert job.support is not None
            support = {i - 1 for i in job.support}
            return [
                p
                for p in region_points(self.ring)
                if {i for i, v in enumerate(p) if v} == support
            ]
        region = self._default_region()
        if job.task == "toric_ideal" and region == "image":
            assert self.toric is not None
            toric = self.toric
            return [
                p
                for p in region_points(
                    self.ring, "image", rational_map=self.rational_map
                )
                if not toric.in_irrelevant_locus(p)
            ]
        return region_points(
            self.ring, region, toric=self.toric, rational_map=self.rational_map
        )

    def check_soundness(self, ideal: Ideal) -> None:
        """Evaluate the generators at sampled points of the region."""
        section = self.config.verification
        if section.sample_size == 0:
            return
        try:
            points = self._soundness_points()
        except BudgetExceeded as e:
            logger.warning(f"Soundness check skipped: {e}")
            return
        if len(points) > section.sample_size:
            points = random.Random(section.seed).sample(points, section.sample_size)
        gens = ideal.groebner_basis()
        self.verdicts["soundness"] = all(
            not g.evaluate(p) for g in gens for p in points
        )
        logger.info(f"Soundness checked at {len(points)} points.")

    # -- tasks ----------------------------------------------------------------------

    def _affine_ideal(self) -> Ideal:
        pipeline = get_pipeline(self.path)
        ideal = pipeline.affine_ideal(self.ring)
        if self.path == "both":
            self.verdicts["path_equivalence"] = True
        return ideal

    def _compare_closed_form(self, ideal: Ideal, closed: Ideal | None) -> None:
        if closed is not None:
            self.verdicts["closed_form"] = ideal_equal(ideal, closed)

    def compute_ideal(self) -> Ideal:
        job = self.job
        if job.task == "param_ideal":
            assert self.rational_map is not None
            return parameterized_vanishing_ideal(self.ring, self.rational_map)
        if job.task == "affine_ideal":
            ideal = self._affine_ideal()
            if self.toric is not None:
                self._compare_closed_form(
                    ideal, self.toric.closed_form_affine(self.ring)
                )
            return ideal
        if job.task == "cell_ideal":
            assert job.support is not None
            return cell_ideal(self.ring, [i - 1 for i in job.support])
        if job.task == "point_ideal":
            assert job.point is not None
            return point_orbit_ideal(self.ring, job.point)
        if job.task == "toric_ideal":
            assert self.toric is not None
            if self.rational_map is not None:
                affine = parameterized_vanishing_ideal(self.ring, self.rational_map)
            else:
                affine = self._affine_ideal()
            ideal = toric_vanishing_ideal(self.ring, self.toric, affine=affine)
            if self.config.verification.check_saturation:
                self.verdicts["colon_is_saturated"] = colon_matches_saturation(
                    affine, self.toric.irrelevant_ideal(self.ring)
                )
            if self.rational_map is None:
                self._compare_closed_form(
                    ideal, self.toric.closed_form_toric(self.ring)
                )
            return ideal
        raise JobError(f"Task '{job.task}' does not compute an ideal.")

    def _region_ideal(self, region: Region) -> Ideal:
        """Return the vanishing ideal of a region, for standard monomial bases."""
        if self.job.ideal is not None:
            return Ideal(self.ring, self.job.ideal)
        if region == "image":
            assert self.rational_map is not None
            return parameterized_vanishing_ideal(self.ring, self.rational_map)
        if region == "toric":
            assert self.toric is not None
            return toric_vanishing_ideal(self.ring, self.toric, path=self.path)
        if region == "affine":
            return self._affine_ideal()
        raise JobError(f"No standard basis is available for the '{region}' region.")

    def build_code(self) -> tuple[EvaluationCode, list[OrbitPoint] | None]:
        job = self.job
        assert job.alpha is not None
        orbits = None
        points: Sequence[OrbitPoint | Point]
        region = self._default_region()
        if job.points is not None:
            points = [self.field.point(p) for p in job.points]
        else:
            orbits = self._orbits(region)
            points = orbits
        ideal = None
        if job.ideal is not None or job.standard_basis:
            ideal = self._region_ideal(region)
        code = build_evaluation_code(self.ring, points, job.alpha, ideal)
        n, k, delta = code.params
        full = self.ring.graded_monomial_basis(job.alpha)
        kernel = graded_vanishing_space(self.ring, points, job.alpha)
        self.verdicts["rank_nullity"] = len(kernel) + k == len(full)
        if ideal is not None:
            self.verdicts["standard_basis_rank"] = len(code.basis) == k
        self.verdicts["singleton"] = singleton_bound((n, k, delta))
        if delta is not None:
            self.verdicts["row_weights"] = all(
                w >= delta for w in code.row_weights() if w
            )
        return code, orbits

    # -- documents ------------------------------------------------------------------

    def _base_document(self) -> ResultDocument:
        job = self.job
        echo = job.echo()
        document: ResultDocument = {
            "schema_version": SCHEMA_VERSION,
            "job": echo,
            "job_hash": utils.get_hash_from_data(
                echo, self.config.hash_algo, self.config.hash_len
            ),
            "task": job.task,
            "field": {
                "p": self.field.p,
                "k": self.field.k,
                "q": self.field.order,
                "modulus": list(self.field.modulus),
            },
            "beta": [list(row) for row in self.ring.beta],
        }
        if self.toric is not None:
            document["construction"] = self.toric.name
        return document

    @staticmethod
    def _orbit_data(orbits: list[OrbitPoint]) -> list[OrbitData]:
        return [
            {"rep": list(o.values), "support": [i + 1 for i in o.support]}
            for o in orbits
        ]

    def run(self) -> JobOutcome:
        job = self.job
        start = time.perf_counter()
        document = self._base_document()
        outcome = JobOutcome(job, document, self.ring)
        with budgets(job.options):
            if job.task == "orbits":
                orbits = self._orbits(self._default_region())
                outcome.orbits = orbits
                document["orbits"] = self._orbit_data(orbits)
                document["orbit_count"] = len(orbits)
                document["cell_count"] = count_cells(orbits)
            elif job.task == "code":
                code, orbits = self.build_code()
                outcome.code, outcome.orbits = code, orbits
                n, k, delta = code.params
                document["code"] = {
                    "alpha": list(job.alpha or ()),
                    "basis": [m.format(self.ring.var_names) for m in code.basis],
                    "params": [n, k, delta],
                }
                if orbits is not None:
                    document["orbit_count"] = len(orbits)
            else:
                ideal = self.compute_ideal()
                outcome.ideal = ideal
                gb = ideal.groebner_basis()
                document["path"] = self.path
                document["generators"] = sorted(
                    str(g) for g in minimal_generators(ideal)
                )
                document["groebner_basis"] = sorted(str(g) for g in gb)
                self.verdicts["homogeneous"] = all(g.is_homogeneous() for g in gb)
                self.verdicts["groebner_basis"] = is_groebner_basis(
                    gb, self.ring.default_order
                )
                self.check_soundness(ideal)
        document["verdicts"] = dict(sorted(self.verdicts.items()))
        if self.config.report_timing:
            document["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
        failed = [name for name, ok in self.verdicts.items() if not ok]
        if failed:
            logger.warning(f"Failed checks for task '{job.task}': {failed}.")
        return outcome


def run_job(job: Job | Mapping[str, t.Any] | Path | str) -> JobOutcome:
    """Validate and run a job given as a model, a mapping or a file path.

    Raises
    ------
    pydantic.ValidationError
        If the job does not match the schema.
    BudgetError
        If a resource budget was exhausted.

    """
    if isinstance(job, (Path, str)):
        job = load_job(job)
    elif not isinstance(job, Job):
        job = Job.model_validate(job)
    logger.info(f"Running task '{job.task}' over GF({job.p}^{job.k}).")
    return JobRunner(job).run()
