import argparse
import logging
from math import gcd
from typing import Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from ..arithmetic.modulus import K_q, inverse_mod
from ..arithmetic.primes import von_mangoldt_table
from ..errors import RaceError
from ..pipeline import RacePipeline
from ..variance.bias import arithmetic_M_tilde
from .output import add_output_arguments, write_results
from .top_races import DEFAULT_Q_MAX, LONG_SCAN_Q, nonsquare_representatives, scan_moduli, scan_top_races

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s [%(levelname)8s] %(message)s (%(filename)s:%(lineno)s)'
)
logger = logging.getLogger(__name__)

# published values, used as reference columns
TOP_TEN = [
    (24, 5, 1, 0.999988),
    (24, 11, 1, 0.999983),
    (12, 11, 1, 0.999977),
    (24, 23, 1, 0.999889),
    (24, 7, 1, 0.999834),
    (24, 19, 1, 0.999719),
    (8, 3, 1, 0.999569),
    (12, 5, 1, 0.999206),
    (24, 17, 1, 0.999125),
    (3, 2, 1, 0.999063),
]

NR_NEIGHBOURS = {151: 0.745487, 157: 0.750767, 163: 0.590585, 167: 0.780096, 173: 0.659642}

MIRROR_REFERENCE = {
    (10, 10): (5.60, 5.31),
    (2, 6): (7.10, 6.82),
    (7, 8): (9.59, 9.06),
}

SAMPLE_MODULI = (244, 997)
SAMPLE_ROWS = 20
TOP_TABLE_ROWS = 120
PRIME_POWER_SEARCH = 10 ** 5


def _class_rows(pipeline: RacePipeline, q: int, method: str) -> List[dict]:
    """delta(q;a,1) for one nonsquare a per inverse pair, ascending"""
    rows = []
    for a, a_inv in nonsquare_representatives(q):
        record = pipeline.density(q, a, 1, method=method).to_record()
        record["a_inv"] = a_inv
        rows.append(record)
    rows.sort(key=lambda r: r["value"])
    return rows


def table_top_ten(pipeline: RacePipeline, method: str = "auto", **_) -> pd.DataFrame:
    rows = []
    for q, a, b, published in TOP_TEN:
        record = pipeline.density(q, a, b, method=method).to_record()
        record["published"] = published
        rows.append(record)
    return pd.DataFrame(rows)


def table_residue_classes(pipeline: RacePipeline, q: int = 163, method: str = "auto", **_) -> pd.DataFrame:
    return pd.DataFrame(_class_rows(pipeline, q, method))


def first_prime_powers(q: int, a: int, count: int = 4, limit: int = PRIME_POWER_SEARCH) -> List[int]:
    """Smallest prime powers congruent to a or a^-1 modulo q"""
    n, _ = von_mangoldt_table(limit)
    classes = {a % q, inverse_mod(a, q)}
    hits = n[np.isin(n % q, list(classes))]
    return [int(m) for m in hits[:count]]


def table_prime_powers(pipeline: RacePipeline, method: str = "auto", y: float = 1e6, **_) -> pd.DataFrame:
    """The q = 101 experiment: small prime powers in a, a^-1 against the density"""
    q = 101
    rows = _class_rows(pipeline, q, method)
    for record in rows:
        powers = first_prime_powers(q, record["a"])
        for i, m in enumerate(powers, start=1):
            record[f"prime_power_{i}"] = m
        record["M_tilde"] = arithmetic_M_tilde(q, record["a"], y)
    return pd.DataFrame(rows)


def table_NR(pipeline: RacePipeline, method: str = "auto", **_) -> pd.DataFrame:
    nr_method = "zeros" if method == "zeros" else "erf"
    rows = []
    for q, published in NR_NEIGHBOURS.items():
        record = pipeline.density_NR(q, method=nr_method).to_record()
        record["published"] = published
        rows.append(record)
    return pd.DataFrame(rows)


def table_K_q(pipeline: RacePipeline, method: str = "auto", **_) -> pd.DataFrame:
    """delta(420;a,1) with gcd(420, a - 1) and K_420(a - 1)"""
    q = 420
    rows = _class_rows(pipeline, q, method)
    for record in rows:
        record["gcd_q_a_minus_1"] = gcd(q, record["a"] - 1)
        record["K_q"] = K_q(q, record["a"] - 1)
    return pd.DataFrame(rows)


def table_erf_sample(pipeline: RacePipeline, method: str = "erf", **_) -> pd.DataFrame:
    rows = []
    for q in SAMPLE_MODULI:
        found = _class_rows(pipeline, q, "erf" if method == "auto" else method)[:SAMPLE_ROWS]
        for record in found:
            record["error_bound"] = (record["upper"] - record["lower"]) / 2
        rows.extend(found)
    return pd.DataFrame(rows)


def table_mirror(pipeline: RacePipeline, X: float = 1e7, npoints: int = 400, **_) -> pd.DataFrame:
    frame = pipeline.mirror_groups(11, X, npoints)
    published = [MIRROR_REFERENCE.get((r, s), (np.nan, np.nan)) for r, s in zip(frame["ratio"], frame["ratio_inverse"])]
    frame["published_observed"] = [p[0] for p in published]
    frame["published_theoretical"] = [p[1] for p in published]
    return frame


def table_top_races(pipeline: RacePipeline, q_max: int = DEFAULT_Q_MAX, workers: int = 1, **_) -> pd.DataFrame:
    rows = scan_top_races(
        scan_moduli(q_max),
        limit=TOP_TABLE_ROWS,
        workers=workers,
        config={"zeros_dir": pipeline.zeros_dir, "zero_height": pipeline.zero_height}
    )
    return pd.DataFrame(rows)


TABLES: Dict[int, Callable[..., pd.DataFrame]] = {
    1: table_top_ten,
    2: table_NR,
    3: table_residue_classes,
    4: table_prime_powers,
    5: table_NR,
    6: table_K_q,
    7: table_erf_sample,
    8: table_mirror,
    9: table_top_races,
}


def build_table(number: int, pipeline: Optional[RacePipeline] = None, **options) -> pd.DataFrame:
    """Regenerate one published table

    Args:
        number: Table number (2 and 5 both give the residue-versus-nonresidue table)
        pipeline: Pipeline to compute with
        **options: method, X, npoints, y, q_max, workers

    Returns:
        DataFrame with one row per table row
    """
    if number not in TABLES:
        raise ValueError(f"Unknown table {number}; choose from {sorted(TABLES)}")
    pipeline = pipeline or RacePipeline()
    logger.info(f"Building table {number}")
    frame = TABLES[number](pipeline, **options)
    logger.info(f"Table {number}: {len(frame)} rows")
    return frame


def main(argv: Optional[List[str]] = None):
    """Main entry point for the table CLI"""
    parser = argparse.ArgumentParser(
        description="Regenerate the published density and variance tables"
    )

    parser.add_argument(
        "--table",
        type=int,
        choices=sorted(TABLES),
        required=True,
        help="Table number"
    )

    parser.add_argument(
        "--method",
        choices=["auto", "erf", "zeros"],
        default="auto",
        help="Density method override"
    )

    parser.add_argument(
        "--X",
        type=float,
        default=1e7,
        help="Sieve limit for the mirror-variance table"
    )

    parser.add_argument(
        "--npoints",
        type=int,
        default=400,
        help="Grid points for the mirror-variance table"
    )

    parser.add_argument(
        "--y",
        type=float,
        default=1e6,
        help="Truncation point of the prime-power sums in table 4"
    )

    parser.add_argument(
        "--q-max",
        type=int,
        default=DEFAULT_Q_MAX,
        help="Largest modulus scanned for table 9"
    )

    parser.add_argument(
        "--workers",
        type=int,
        default=1,
        help="Worker processes for table 9"
    )

    parser.add_argument(
        "--allow-long",
        action="store_true",
        help="Allow the long scan behind table 9"
    )

    parser.add_argument(
        "--zeros-dir",
        type=str,
        help="Directory of zero files (defaults to RACE_ZEROS_DIR)"
    )

    add_output_arguments(parser)

    args = parser.parse_args(argv)

    # Set logging level
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    if args.table == 9 and args.q_max > LONG_SCAN_Q and not args.allow_long:
        parser.error("table 9 scans every modulus up to --q-max; pass --allow-long")

    try:
        frame = build_table(
            args.table,
            RacePipeline(zeros_dir=args.zeros_dir),
            method=args.method,
            X=args.X,
            npoints=args.npoints,
            y=args.y,
            q_max=args.q_max,
            workers=args.workers
        )
        write_results(frame, args.output_format, args.output_file)

    except (RaceError, ValueError, OSError) as e:
        logger.error(f"Error building table {args.table}: {str(e)}", exc_info=True)
        return 1

    return 0


if __name__ == "__main__":
    exit(main())
