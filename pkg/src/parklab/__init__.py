"""Probabilistic parking: m cars, n spots, a coin that sends bumped cars forward with probability p."""
from .errors import BudgetExceededError, ParameterError, ParkingError, SelfCheckError
from .protocol import Direction, ModelParams, ParkingTrace, classical_is_parking_function, run_protocol

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "Direction",
    "ModelParams",
    "ParameterError",
    "ParkingError",
    "ParkingTrace",
    "SelfCheckError",
    "classical_is_parking_function",
    "run_protocol",
]
