"""uisbench: a workbench for comparing uncertain inference systems.

Six engines (certainty factors, odds-likelihood updating, independent-evidence
probabilities, linear regression, fuzzy memberships, belief functions) share a
single inference interface over a two-reading diagnostic micro-domain.  The
package also provides the exact-posterior oracle, synthetic system-building
agents, a replication experiment with mixed-design ANOVA, an interactive
session service, and a CLI.
"""

__version__ = "0.1.0"

from . import agents, anova, config, domain, engines, experiment, session  # noqa: F401
