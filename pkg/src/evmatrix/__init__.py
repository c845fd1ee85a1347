"""Evidence-matrix curation workbench.

Builds initial evidence matrices from a citation graph, then supports
iterative human curation with relevance feedback, ranked suggestions,
2D projections, and keyword summaries.
"""

__version__ = "0.1.0"
