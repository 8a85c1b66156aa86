"""Coordination cost simulator for agent ecosystems.

Cost accounting, ecosystem topologies, a verification harness library, a
period-stepped simulator, scaling experiments and a firm-boundary model.
"""

__version__ = "0.1.0"

from .costs import (ConfigError, CostBreakdown, CostParams, CouplingForm, LiabilityParams,
                    TaskSample, cost_per_task, coupling_verification_cost, integration_cost,
                    local_verification_cost, marginal_cost_of_action, total_cost)
from .ecosystem import (Activation, DriftParams, EcosystemState, Regime, add_provider,
                        apply_drift, edge_count, touch_pair)
from .harness import (CheckVocabulary, HarnessLibrary, HarnessParams, effective_gamma,
                      required_checks, reuse_trace, verify_task)
from .config import (BetaQ, ConstantQ, ConstantWidth, PoissonPlusOne, ScalingLinear,
                     ScenarioConfig, TruncatedZipf, VerificationMode)
from .engine import RunTrace, oracle_total_cost, run, sample_task, sample_tasks, step_period
from .experiments import (Thresholds, bootstrap_mean_ci, classify_scaling, instability_probe,
                          prediction1_experiment, prediction2_experiment, reuse_experiment,
                          sublinearity_check, sweep)
from .powerlaw import PowerLawFit, fit_power_law, fit_power_law_auto, select_xmin
from .unbundling import (Firm, SectorConfig, equilibrium_size, firm_step,
                         unbundling_experiment)
from .scenario_io import (Scenario, dump_scenario, execute, load_scenario, preset,
                          run_scenario)
