"""Canonical scenario pipelines.

Modules:
- base: Run configuration, scenario registry and shared helpers
- stationary: Frozen stationary data must not move
- global_flow: Global run concentrating at infinite time
- blowup: Finite-time blow-up and bubble extraction
- comparison_demo: Ordered pairs of profiles and runs
- chain_audit: Intersection-chain fixtures and monotonicity
- runner: Run one scenario into a directory
- sweep: Run one scenario across a parameter axis
"""

from core.scenarios.base import Evolution, RunConfig, ScenarioBase, ScenarioError
from core.scenarios.blowup import BlowUpScenario
from core.scenarios.chain_audit import ChainAuditScenario
from core.scenarios.comparison_demo import ComparisonScenario
from core.scenarios.global_flow import GlobalFlowScenario
from core.scenarios.stationary import StationaryScenario

__all__: list[str] = [
    "BlowUpScenario",
    "ChainAuditScenario",
    "ComparisonScenario",
    "Evolution",
    "GlobalFlowScenario",
    "RunConfig",
    "ScenarioBase",
    "ScenarioError",
    "StationaryScenario",
]
