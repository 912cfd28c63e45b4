import argparse
import logging
from typing import List, Optional

from ..characters.dirichlet import character_group
from ..errors import RaceError
from ..lfunctions.zeros import find_zeros, save_zeros
from .output import add_output_arguments, write_results

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s [%(levelname)8s] %(message)s (%(filename)s:%(lineno)s)'
)
logger = logging.getLogger(__name__)


def find_and_save(q: int, height: float, directory: str, label: Optional[int] = None) -> List[dict]:
    """Find zeros for one or every nonprincipal character modulo q and write zero files

    Args:
        q: Modulus
        height: Height T
        directory: Output directory
        label: Restrict to this character label

    Returns:
        One summary record per written file
    """
    group = character_group(q)
    characters = [group.character(label)] if label is not None else [chi for chi in group if not chi.is_principal]
    rows = []
    for chi in characters:
        if chi.is_principal:
            raise ValueError(f"Character {chi.name} is principal and has no zeros to find")
        zeros = find_zeros(chi, height)
        path = save_zeros(zeros, directory)
        first = float(zeros.ordinates[0]) if len(zeros) else None
        rows.append({
            "q": q,
            "chi": chi.label,
            "conductor": zeros.conductor,
            "height": zeros.height,
            "count": len(zeros),
            "first": first,
            "path": str(path),
        })
    return rows


def main(argv: Optional[List[str]] = None):
    """Main entry point for the zero-finding CLI"""
    parser = argparse.ArgumentParser(
        description="Find critical zeros of Dirichlet L-functions and write zero files"
    )

    parser.add_argument(
        "action",
        choices=["find"],
        help="Action to run"
    )

    parser.add_argument(
        "--q",
        type=int,
        required=True,
        help="Modulus"
    )

    parser.add_argument(
        "--chi",
        type=int,
        help="Character label (all nonprincipal characters when omitted)"
    )

    parser.add_argument(
        "--height",
        type=float,
        default=2500.0,
        help="Height T up to which zeros are found"
    )

    parser.add_argument(
        "--zeros-dir",
        type=str,
        default="zeros",
        help="Directory the zero files are written to"
    )

    add_output_arguments(parser)

    args = parser.parse_args(argv)

    # Set logging level
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        rows = find_and_save(args.q, args.height, args.zeros_dir, args.chi)
        write_results(rows, args.output_format, args.output_file)

    except (RaceError, ValueError, OSError) as e:
        logger.error(f"Error finding zeros: {str(e)}", exc_info=True)
        return 1

    return 0


if __name__ == "__main__":
    exit(main())
