import argparse
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..arithmetic.modulus import inverse_mod, is_square_mod, modulus_context
from ..bounds.explicit import density_theorem_bound
from ..errors import RaceError
from ..pipeline import RacePipeline
from .output import add_output_arguments, write_results

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s [%(levelname)8s] %(message)s (%(filename)s:%(lineno)s)'
)
logger = logging.getLogger(__name__)

DEFAULT_Q_MAX = 1000
EXTRA_MODULI = (1020, 1320, 1560, 1680, 1848)
LONG_SCAN_Q = 100
DEFAULT_THRESHOLD = 0.9


def scan_moduli(q_max: int, extra: Iterable[int] = EXTRA_MODULI) -> List[int]:
    """Moduli 3 <= q <= q_max with q not 2 mod 4, plus the extra ones"""
    moduli = [q for q in range(3, q_max + 1) if q % 4 != 2]
    moduli.extend(q for q in extra if q > q_max and q % 4 != 2)
    return moduli


def nonsquare_representatives(q: int) -> List[Tuple[int, int]]:
    """One (a, a^-1) per inverse pair of nonsquares, a the smaller

    Every density delta(q;a,b) with a nonsquare and b square equals
    delta(q;ab^-1,1), and delta(q;a,1) = delta(q;a^-1,1).
    """
    rows = []
    for a in modulus_context(q).reduced_residues:
        a = int(a)
        if is_square_mod(q, a):
            continue
        a_inv = inverse_mod(a, q)
        if a <= a_inv:
            rows.append((a, a_inv))
    return rows


def _scan_modulus(task: Tuple[int, float, Dict]) -> List[dict]:
    q, threshold, config = task
    pipeline = RacePipeline(**config)
    rows = []
    for a, a_inv in nonsquare_representatives(q):
        result = pipeline.density(q, a, 1)
        if result.value >= threshold:
            record = result.to_record()
            record["a_inv"] = a_inv
            rows.append(record)
    return rows


def scan_top_races(
    moduli: Sequence[int],
    threshold: float = DEFAULT_THRESHOLD,
    limit: Optional[int] = None,
    workers: int = 1,
    config: Optional[Dict] = None
) -> List[dict]:
    """All densities delta(q;a,1) at least threshold among the moduli, largest first

    Moduli whose published density ceiling lies below the threshold are
    skipped without computation.

    Args:
        moduli: Moduli to scan
        threshold: Smallest density to report
        limit: Keep at most this many rows
        workers: Worker processes
        config: RacePipeline keyword arguments

    Returns:
        Records sorted by descending value
    """
    config = config or {}
    tasks = []
    for q in moduli:
        ceiling = density_theorem_bound(q)
        if ceiling is not None and ceiling < threshold:
            logger.debug(f"Skipping {q}: densities stay below {ceiling}")
            continue
        tasks.append((q, threshold, config))
    logger.info(f"Scanning {len(tasks)} of {len(moduli)} moduli for densities >= {threshold}")

    rows: List[dict] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for (q, _, _), found in zip(tasks, pool.map(_scan_modulus, tasks)):
                logger.info(f"Modulus {q}: {len(found)} races above threshold")
                rows.extend(found)
    else:
        for i, task in enumerate(tasks, start=1):
            found = _scan_modulus(task)
            logger.info(f"[{i}/{len(tasks)}] modulus {task[0]}: {len(found)} races above threshold")
            rows.extend(found)

    rows.sort(key=lambda r: (-r["value"], r["q"], r["a"]))
    distinct = len({round(r["value"], 6) for r in rows})
    logger.info(f"Found {len(rows)} races ({distinct} distinct densities) >= {threshold}")
    return rows[:limit] if limit is not None else rows


def main(argv: Optional[List[str]] = None):
    """Main entry point for the top-races CLI"""
    parser = argparse.ArgumentParser(
        description="Rank the most biased two-way prime races"
    )

    parser.add_argument(
        "--q-max",
        type=int,
        default=DEFAULT_Q_MAX,
        help="Largest modulus of the regular scan"
    )

    parser.add_argument(
        "--threshold",
        type=float,
        default=DEFAULT_THRESHOLD,
        help="Smallest density to report"
    )

    parser.add_argument(
        "--limit",
        type=int,
        help="Report at most this many races"
    )

    parser.add_argument(
        "--no-extra-moduli",
        action="store_true",
        help=f"Do not add the moduli {', '.join(map(str, EXTRA_MODULI))}"
    )

    parser.add_argument(
        "--workers",
        type=int,
        default=1,
        help="Worker processes"
    )

    parser.add_argument(
        "--allow-long",
        action="store_true",
        help=f"Allow scans beyond q = {LONG_SCAN_Q} (hours of computation)"
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

    moduli = scan_moduli(args.q_max, () if args.no_extra_moduli else EXTRA_MODULI)
    if max(moduli, default=0) > LONG_SCAN_Q and not args.allow_long:
        parser.error(f"scanning moduli up to {max(moduli)} is a long run; pass --allow-long")

    try:
        rows = scan_top_races(
            moduli,
            threshold=args.threshold,
            limit=args.limit,
            workers=args.workers,
            config={"zeros_dir": args.zeros_dir}
        )
        write_results(rows, args.output_format, args.output_file)

    except (RaceError, ValueError, OSError) as e:
        logger.error(f"Error scanning races: {str(e)}", exc_info=True)
        return 1

    return 0


if __name__ == "__main__":
    exit(main())
