"""doelab: design-of-experiments and sensitivity-analysis toolbox.

Three stages: turn a scenario configuration into fully
parameterized experiment recipes, hand those to an experimental
process (built-in toy models or anything external that honors the
file contracts), then ingest the results and compute factor
effects with the analysis method configured for the design type.
"""

__version__ = "0.1.0"
