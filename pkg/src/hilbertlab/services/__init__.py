"""Services package."""

from hilbertlab.services.evaluation import EvaluationService
from hilbertlab.services.verification import VerificationService

__all__ = ["EvaluationService", "VerificationService"]
