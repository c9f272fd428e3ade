"""Package for Gaussian-process regression and confidence bounds."""

from czlearn.gp.confidence import ConfidenceParams, beta, lcb, ucb
from czlearn.gp.model import GpModel
