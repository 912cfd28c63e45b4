#!/usr/bin/env python3
"""
Setup script for the chebyshev-race environment.
This script:
1. Verifies the interpreter version
2. Installs dependencies
3. Writes the RACE_* configuration
4. Creates the zero and cache directories
5. Optionally precomputes zero files
"""

import os
import sys
import subprocess
import argparse
import logging
from pathlib import Path
from typing import List

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s [%(levelname)8s] %(message)s'
)
logger = logging.getLogger(__name__)

# Moduli whose densities always go through the zeros method
SMALL_MODULI = (3, 4, 5, 7, 8, 12, 24)


def verify_python_version():
    """Verify the interpreter is 3.8 or newer"""
    if sys.version_info < (3, 8):
        logger.error("Python 3.8 or higher is required")
        sys.exit(1)
    logger.info(f"Python version: {sys.version}")


def install_dependencies(dev_mode: bool = False):
    """Install required packages"""
    logger.info("Installing dependencies...")

    try:
        subprocess.run(
            [sys.executable, "-m", "pip", "install", "-r", "requirements.txt"],
            check=True
        )

        if dev_mode:
            subprocess.run(
                [sys.executable, "-m", "pip", "install", "-e", ".[dev]"],
                check=True
            )

        logger.info("Dependencies installed successfully")
    except subprocess.CalledProcessError as e:
        logger.error(f"Error installing dependencies: {e}")
        sys.exit(1)


def write_config(zeros_dir: str, zero_height: float, prime_cache: str, env_file: str = ".env"):
    """Write the RACE_* variables read by RacePipeline"""
    env_path = Path(env_file)
    if env_path.exists():
        logger.info(f"{env_file} already exists, leaving it untouched")
        return

    env_content = [
        "# Zero data",
        f"RACE_ZEROS_DIR={zeros_dir}",
        f"RACE_ZERO_HEIGHT={zero_height}",
        "",
        "# Error targets",
        "RACE_QUAD_TARGET=1e-10",
        "RACE_SERIES_CONSTANT=10",
        "RACE_ARITHMETIC_CONSTANT=1",
        "",
        "# Prime sieve cache",
        f"RACE_PRIME_CACHE={prime_cache}",
        ""
    ]

    env_path.write_text("\n".join(env_content))
    logger.info(f"Configuration written to {env_file}")


def create_directories(directories: List[str]):
    """Create the data directories"""
    for directory in directories:
        Path(directory).mkdir(parents=True, exist_ok=True)
        logger.info(f"Created directory: {directory}")


def precompute_zeros(zeros_dir: str, height: float):
    """Find and save zeros for the small moduli"""
    for q in SMALL_MODULI:
        logger.info(f"Precomputing zeros modulo {q} up to {height}")
        subprocess.run(
            ["race-zeros", "find", "--q", str(q), "--height", str(height), "--zeros-dir", zeros_dir],
            check=True
        )


def verify_installation():
    """Run the fast part of the test suite"""
    logger.info("Verifying installation...")

    try:
        subprocess.run(
            [sys.executable, "-m", "pytest", "-m", "not slow", "--no-cov", "tests/test_arithmetic.py", "tests/test_pipeline.py"],
            check=True
        )
        logger.info("Installation verified successfully")
    except subprocess.CalledProcessError as e:
        logger.error(f"Error verifying installation: {e}")
        sys.exit(1)


def main():
    """Main setup function"""
    parser = argparse.ArgumentParser(
        description="Set up the chebyshev-race environment"
    )

    parser.add_argument(
        "--dev",
        action="store_true",
        help="Install development dependencies"
    )

    parser.add_argument(
        "--zeros-dir",
        type=str,
        default="zeros",
        help="Directory for zero files"
    )

    parser.add_argument(
        "--zero-height",
        type=float,
        default=2500.0,
        help="Height for zero finding"
    )

    parser.add_argument(
        "--prime-cache",
        type=str,
        default="cache/primes.bin",
        help="Prime sieve cache file"
    )

    parser.add_argument(
        "--precompute-zeros",
        action="store_true",
        help="Find zeros for the small moduli now"
    )

    parser.add_argument(
        "--env-file",
        type=str,
        default=".env",
        help="Environment file path"
    )

    parser.add_argument(
        "--skip-verify",
        action="store_true",
        help="Skip installation verification"
    )

    args = parser.parse_args()

    # Change to project root directory
    project_root = Path(__file__).parent.parent
    os.chdir(project_root)

    try:
        verify_python_version()
        install_dependencies(args.dev)
        write_config(args.zeros_dir, args.zero_height, args.prime_cache, args.env_file)
        create_directories([args.zeros_dir, str(Path(args.prime_cache).parent), "results"])

        if args.precompute_zeros:
            precompute_zeros(args.zeros_dir, args.zero_height)

        if not args.skip_verify:
            verify_installation()

        logger.info("Setup completed successfully!")
        logger.info("\nQuick start:")
        logger.info("1. Compute a density:")
        logger.info("   race-density --q 4 --a 3 --b 1")
        logger.info("\n2. Regenerate a table:")
        logger.info("   race-table --table 1")

    except KeyboardInterrupt:
        logger.info("\nSetup interrupted by user")
        sys.exit(1)
    except Exception as e:
        logger.error(f"Setup failed: {e}", exc_info=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
