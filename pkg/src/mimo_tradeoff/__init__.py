"""Energy/spectral-efficiency trade-off of a massive MIMO downlink.

Zero-forcing precoding with transmit-antenna selection: closed-form model
(:mod:`.analytic`), channel simulation (:mod:`.channel`), optimization
(:mod:`.optimize`), Monte Carlo validation (:mod:`.montecarlo`) and a CSV
command line (:mod:`.cli`).
"""

from .analytic import (PowerModel, SystemConfig, TradeoffPoint, antenna_gain_expectation,
                       average_capacity, circuit_power, ee_at_se, ee_grad_power_sign,
                       energy_efficiency, evaluate_point, power_for_se, se_grad_antennas,
                       se_grad_power, spectral_efficiency, total_power)
from .channel import (AntennaSelection, ChannelMatrix, Precoder, generate_channel,
                      instantaneous_capacity, norm_inverse_bounds, select_antennas,
                      selected_capacity, verify_received_signal, zf_precoder)
from .errors import ConfigError, DomainError, ScenarioError, SingularChannelError
from .montecarlo import (SampleStats, TrialPlan, run_trials, validate_average_capacity,
                         validate_gain_expectation)
from .optimize import (FeasibleRegion, ParetoFront, ee_se_regimes, joint_optimize,
                       optimal_antennas, optimal_power, pareto_front)
from .scenario import Scenario, Sweep, parse_scenario, serialize_scenario

__version__ = "0.1.0"
