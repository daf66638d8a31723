from .config import Settings, settings
from .errors import (
    BudgetExceededError,
    DivergenceError,
    FinfishError,
    IdentityViolationError,
    InexactDivisionError,
    PreconditionError,
    StructuralError,
)
