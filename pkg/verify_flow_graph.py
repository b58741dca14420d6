"""
Runs the verify pipeline on a shipped curve and prints the check table.

To Run: `python verify_flow_graph.py [data/ex82.json] [n]`
"""

import logging
import sys

from src.config import DATA_DIR, LOG_LEVEL
from src.graph.verify_flow_graph import run_verify
from src.serialization import load_context, render_pretty


if __name__ == "__main__":
    logging.basicConfig(level=LOG_LEVEL)
    path = sys.argv[1] if len(sys.argv) > 1 else f"{DATA_DIR}/ex82.json"
    n = int(sys.argv[2]) if len(sys.argv) > 2 else 2

    final_state = run_verify(load_context(path), n=n)
    print("\n---FINAL STATE---")
    print(render_pretty(final_state.get("checks", [])))
    if final_state.get("error"):
        print(f"error: {final_state['error']}")
