"""treebed: exact small-scale workbench for tree embeddings under degree conditions.

Library layout:
  graph       undirected hosts, peripheries, cuts, matchings, walks
  trees       guest trees and the certified splitting procedures
  embed       constructive embedders plus the exhaustive oracle
  generators  extremal host/tree families and seeded random corpora
  decompose   rich-subgraph machinery: refinement, classification, reports
  lab         experiment harness, report emission, CLI backend
  kernel      compiled/pure backend selection for the hot search loops
"""

from . import kernel

__version__ = "0.1.0"

KERNEL_BACKEND = kernel.BACKEND
