#!/usr/bin/env python3
"""
Quick launcher for the André-Quillen engine.
Checks the environment, then hands the arguments to the command-line driver.
"""

import sys


def check_requirements():
    """Check if required packages are installed"""
    try:
        import cachetools
        import dotenv
        import networkx
        import pandas
        import pydantic
        return True
    except ImportError as e:
        print(f"❌ Missing required package: {e}", file=sys.stderr)
        print("Please run: pip install -r requirements.txt", file=sys.stderr)
        return False


def check_config():
    """Check that environment overrides are usable"""
    from config import Config
    try:
        Config.validate()
    except ValueError as e:
        print(f"❌ Invalid configuration: {e}", file=sys.stderr)
        print("See SETUP.md for the supported variables", file=sys.stderr)
        return False
    return True


def main():
    """Main launcher function"""
    if sys.version_info < (3, 8):
        print("❌ Python 3.8+ required", file=sys.stderr)
        sys.exit(1)

    if not check_requirements() or not check_config():
        sys.exit(1)

    if len(sys.argv) == 1:
        sys.argv.append("--help")

    from app import main as run_app
    try:
        sys.exit(run_app())
    except KeyboardInterrupt:
        print("\n👋 Computation stopped by user", file=sys.stderr)
        sys.exit(130)


if __name__ == "__main__":
    main()
