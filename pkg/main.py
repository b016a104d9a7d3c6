#!/usr/bin/env python3
"""
Slupecki Lab - polymorphisms of reflexive digraphs

Decides the k-Slupecki and k-idempotent-trivial properties by exhaustive
search, verifies uniform gadgets, and builds the ordinal-sum witnesses.

Usage:
    python main.py family <name> [params] -o g.dg
    python main.py check slupecki|idtrivial -k K -i g.dg [--json]
    python main.py hom count|list|graph|identity -i g.dg [--target h.dg] [--pin v=w]
    python main.py gadget verify -i g.dg --gadget k.dg --pins "0,3" --u 5
    python main.py gadget builtin <family> [param] -i g.dg [--direct]
    python main.py bmk <m> <k> [--argmax] | bmk --table M K [--csv]
    python main.py witness ternary|binary <m> <n> <k> [-o f.op] [--verify]
    python main.py topo -i g.dg [--max-dim D]
    python main.py verify op -i g.dg --op f.op [--relation theta|arcs]
    python main.py --help       - Show help

Exit codes: 0 computed, 2 inconclusive (budget), 1 error.
"""

import multiprocessing
import sys
import signal


def signal_handler(signum, frame):
    """Handle Ctrl+C"""
    print("\n[STOP] Interrupted", file=sys.stderr)
    sys.exit(130)


def show_help():
    """Show help"""
    print(__doc__)
    print("Families:")
    from slupecki.families import FAMILIES
    print("  " + ", ".join(sorted(FAMILIES)) + ", suspension, poset-suspension")
    print()
    print("Gadget families:")
    print("  directed-cycle, symmetric-even-cycle, crown, adhoc4, gn, hn")
    print()


def main():
    """Main entry point"""
    signal.signal(signal.SIGINT, signal_handler)

    if len(sys.argv) < 2 or sys.argv[1].lower() in ['--help', '-h', 'help']:
        show_help()
        return 0

    from slupecki.cli import run
    return run(sys.argv[1:])


if __name__ == "__main__":
    multiprocessing.freeze_support()
    sys.exit(main())
