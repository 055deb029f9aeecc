"""latred - complex lattice reduction toolkit.

LLL, effective LLL and LLL-deep reduction of complex bases, their
fixed-complexity parallel forms, complexity and quality metrics, and a
Monte Carlo harness for lattice-reduction-aided MIMO detection.
"""

__version__ = "0.1.0"
__author__ = "latred contributors"
__license__ = "Elastic License 2.0 (ELv2)"
