# Times the affine vanishing ideal of every pipeline on a few small varieties.
import timeit
import typing as t

import tabulate

from toric_codes.gf import field_create
from toric_codes.groebner import ideal_equal
from toric_codes.poly import GradedRing
from toric_codes.vanishing import VanishingPipeline, get_pipeline
from toric_codes.vanishing.toric import (
    ToricData,
    construct_hirzebruch,
    construct_product_projective,
    construct_wps,
)

PIPELINES = [get_pipeline("elimination"), get_pipeline("cellular")]
VARIETIES: list[tuple[ToricData, int]] = [
    (construct_wps([1, 1]), 5),
    (construct_wps([1, 1, 2]), 3),
    (construct_hirzebruch(2), 3),
    (construct_hirzebruch(3), 5),
    (construct_product_projective([1, 1]), 3),
]
NUM_EXECUTIONS = 3

pipeline: VanishingPipeline
ring: GradedRing


def benchmark_pipeline() -> None:
    pipeline.affine_ideal(ring)


def build_markdown() -> t.Generator[list[list[str]], list[str], None]:
    data: list[list[str]] = []
    while True:
        new_line: list[str] = yield data
        data.append(new_line)


if __name__ == "__main__":
    markdown_generator: t.Generator[list[list[str]], list[str], None] = build_markdown()
    next(markdown_generator)
    md = []

    for toric, q in VARIETIES:
        ring = toric.ring(field_create(q))
        timings = []
        for pipeline in PIPELINES:
            res = timeit.timeit(
                benchmark_pipeline,
                globals={"pipeline": pipeline, "ring": ring},
                number=NUM_EXECUTIONS,
            )
            timings.append(f"{round(res / NUM_EXECUTIONS, 3)} s")

        # both pipelines must describe the same ideal
        ideals = [p.affine_ideal(ring) for p in PIPELINES]
        agree = ideal_equal(*ideals)
        md = markdown_generator.send(
            [toric.name, str(q), *timings, str(len(ideals[1].gens)), str(agree)]
        )

    headers = [
        "Variety",
        "q",
        "Elimination",
        "Cellular",
        "Generators",
        "Agree",
    ]
    md_table = tabulate.tabulate(
        md,
        headers=headers,
        tablefmt="github",
    )
    print(md_table)
