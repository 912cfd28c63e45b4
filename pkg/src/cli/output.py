from typing import Any, Dict, Iterable, List, Optional, Union
from pathlib import Path
import argparse
import json
import logging
import sys

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

Records = Union[pd.DataFrame, Iterable[Dict[str, Any]]]


def add_output_arguments(parser: argparse.ArgumentParser) -> None:
    """Flags shared by every command: output format, output file, verbosity"""
    parser.add_argument(
        "--output-format",
        choices=["csv", "json"],
        default="csv",
        help="Output format (csv or json)"
    )

    parser.add_argument(
        "--output-file",
        type=str,
        help="Optional file to write results to (standard output otherwise)"
    )

    parser.add_argument(
        "--verbose",
        action="store_true",
        help="Enable verbose logging"
    )


def _plain(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"Cannot serialise {type(value).__name__}")


def to_frame(records: Records) -> pd.DataFrame:
    if isinstance(records, pd.DataFrame):
        return records
    return pd.DataFrame(list(records))


def render(records: Records, output_format: str) -> str:
    """CSV with rounded density columns alongside full precision, or JSON records"""
    frame = to_frame(records)
    if output_format == "json":
        rows: List[Dict[str, Any]] = frame.astype(object).where(frame.notna(), None).to_dict(orient="records")
        return json.dumps(rows, indent=2, ensure_ascii=False, default=_plain) + "\n"
    if output_format != "csv":
        raise ValueError(f"Unknown output format {output_format}")
    frame = frame.copy()
    if "value" in frame.columns:
        frame.insert(frame.columns.get_loc("value"), "delta", frame["value"].map(
            lambda v: f"{v:.6f}" if pd.notna(v) else ""
        ))
    return frame.to_csv(index=False)


def write_results(records: Records, output_format: str, output_file: Optional[str] = None) -> None:
    text = render(records, output_format)
    if output_file:
        output_path = Path(output_file)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info(f"Wrote results to {output_path}")
    else:
        sys.stdout.write(text)
