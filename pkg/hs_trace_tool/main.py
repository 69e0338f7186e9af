#!/usr/bin/env python3
"""
HS Trace Tool - Main Entry Point
Simple wrapper to handle console script execution
"""

import sys


def main():
    """Main entry point for the hstrace command"""
    try:
        from .cli import HSUnifiedCLI
    except ImportError as e:
        print(f"❌ Error importing modules: {e}", file=sys.stderr)
        print("   Make sure the HS Trace Tool package is properly installed (numpy, tqdm)", file=sys.stderr)
        return 1

    cli = HSUnifiedCLI()
    return cli.run()


if __name__ == "__main__":
    sys.exit(main())
