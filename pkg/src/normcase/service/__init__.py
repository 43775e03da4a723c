"""The administrative layer: cases, clients, users, persistence and the API."""

from .config import Config, load_config
from .core import CaseService, Conflict, Invalid, NotFound, ServiceError
from .models import CaseStatus, UrgencyClock, compute_urgency

__all__ = [
    "CaseService",
    "CaseStatus",
    "Config",
    "Conflict",
    "Invalid",
    "NotFound",
    "ServiceError",
    "UrgencyClock",
    "compute_urgency",
    "load_config",
]
