"""Reward shaping toolkit for structured chain-of-thought completions.

Thin wrapper over the compiled extension: completion parsing, hard /
continuous / hybrid reward scoring, schedule weights, GRPO-style group
normalization, the synthetic-policy training simulator, and run analytics.
"""

from rewardlab._core import *  # noqa: F401,F403
from rewardlab._core import __doc__ as _core_doc

__doc__ = _core_doc if _core_doc else __doc__
__version__ = "0.1.0"
