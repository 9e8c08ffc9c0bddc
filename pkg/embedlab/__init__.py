"""embedlab: finite workbench for the countable metric space M and its embeddings.

Feature packages (metric, roundness, free_space, embeddings) hold the
library; ``embedlab.cli`` is the single command-line entry point.
"""

__version__ = "0.1.0"
