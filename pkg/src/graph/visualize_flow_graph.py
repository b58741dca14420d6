"""
Renders the verify pipeline as mermaid text.
"""

from src.graph.verify_flow_graph import build_graph


def mermaid() -> str:
    return build_graph().get_graph().draw_mermaid()


if __name__ == "__main__":
    print(mermaid())
