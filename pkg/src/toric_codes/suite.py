"""The bundled golden jobs and the `verify` report."""

import json
import time
import typing as t
from dataclasses import dataclass, field
from pathlib import Path

import tabulate
from pydantic import ValidationError

from toric_codes import utils
from toric_codes._config.config_base import Config
from toric_codes.groebner import Ideal, ideal_equal
from toric_codes.jobs import JobOutcome, run_job
from toric_codes.typing import GoldenData
from toric_codes.vanishing.orbits import Fingerprinter

logger = utils.get_logger(__name__)


class GoldenError(utils.ToricError):
    """A golden file is malformed."""

    pass


@dataclass
class GoldenResult:
    name: str
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0
    skipped: bool = False

    @property
    def passed(self) -> bool:
        return self.skipped or not self.failures


@dataclass
class SuiteReport:
    results: list[GoldenResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def render(self) -> str:
        """Return a markdown table with one line per golden."""
        ran = [r for r in self.results if not r.skipped]
        if not self.results:
            return "0 jobs"
        rows = [
            [
                r.name,
                "skipped" if r.skipped else ("ok" if r.passed else "FAILED"),
                "" if r.skipped else f"{r.seconds:.2f}",
                "; ".join(r.failures),
            ]
            for r in self.results
        ]
        table = tabulate.tabulate(
            rows, headers=["Golden", "Status", "Seconds", "Failures"], tablefmt="github"
        )
        failed = sum(not r.passed for r in ran)
        return f"{table}\n\n{len(ran)} jobs, {failed} failed"


def load_golden(path: Path) -> GoldenData:
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise GoldenError(f"{path.name} is not valid JSON: {e}") from None
    if not isinstance(data, dict) or "job" not in data or "expected" not in data:
        raise GoldenError(f"{path.name} needs a 'job' and an 'expected' entry.")
    data.setdefault("name", path.stem)
    return t.cast(GoldenData, data)


def _compare_orbit_points(
    outcome: JobOutcome, points: t.Sequence[t.Sequence[int]]
) -> list[str]:
    """Match listed points to the computed orbits, up to representatives."""
    if outcome.orbits is None:
        return ["no orbits were computed"]
    fingerprint = Fingerprinter(outcome.ring.beta)
    computed = {o.key for o in outcome.orbits}
    listed = [fingerprint(outcome.ring.field.point(p)) for p in points]
    covered = {o.key for o in listed}
    failures = []
    missing = [str(o) for o in listed if o.key not in computed]
    if missing:
        failures.append(f"points {missing} are not in a computed orbit")
    if len(covered) != len(computed):
        failures.append(f"{len(computed)} orbits, the points cover {len(covered)}")
    return failures


def compare(outcome: JobOutcome, expected: t.Mapping[str, t.Any]) -> list[str]:
    """Return the differences between a job outcome and the expected values."""
    failures = []
    document = outcome.document
    for name, ok in document.get("verdicts", {}).items():
        if not ok:
            failures.append(f"check '{name}' failed")
    if "generators" in expected:
        if outcome.ideal is None:
            failures.append("no ideal was computed")
        elif not ideal_equal(
            outcome.ideal, Ideal(outcome.ring, expected["generators"])
        ):
            failures.append("ideal differs from the expected generators")
    if "generator_count" in expected:
        count = len(document.get("generators", []))
        if count != expected["generator_count"]:
            failures.append(
                f"{count} generators, expected {expected['generator_count']}"
            )
    code = document.get("code")
    if "params" in expected:
        params = code["params"] if code else None
        if params != expected["params"]:
            failures.append(f"params {params}, expected {expected['params']}")
    if "basis" in expected:
        basis = sorted(code["basis"]) if code else None
        if basis != sorted(expected["basis"]):
            failures.append(f"basis {basis}, expected {sorted(expected['basis'])}")
    if "orbit_points" in expected:
        failures.extend(_compare_orbit_points(outcome, expected["orbit_points"]))
    for key in ("orbit_count", "cell_count"):
        if key in expected and document.get(key) != expected[key]:
            failures.append(f"{key} {document.get(key)}, expected {expected[key]}")
    return failures


def run_golden(golden: GoldenData) -> GoldenResult:
    result = GoldenResult(golden["name"])
    start = time.perf_counter()
    try:
        outcome = run_job(golden["job"])
    except (utils.ToricError, ValidationError) as e:
        result.failures.append(f"{type(e).__name__}: {e}")
    else:
        result.failures.extend(compare(outcome, golden["expected"]))
    result.seconds = time.perf_counter() - start
    if result.failures:
        logger.warning(f"Golden '{result.name}' failed: {result.failures}")
    return result


def verify_suite(
    directory: Path | str | None = None, *, include_slow: bool = False
) -> SuiteReport:
    """Run every golden of a directory (default: `suite.dir`).

    Goldens flagged `slow` are reported as skipped unless `include_slow` is set.
    """
    directory = Path(directory or Config.config.suite.dir)
    results = []
    for path in sorted(directory.glob("*.json")):
        golden = load_golden(path)
        if golden.get("slow", False) and not include_slow:
            results.append(GoldenResult(golden["name"], skipped=True))
            continue
        logger.info(f"Running golden '{golden['name']}'.")
        results.append(run_golden(golden))
    return SuiteReport(results)
