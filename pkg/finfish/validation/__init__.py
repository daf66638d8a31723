from .report import SuiteReport
from .runner import SUITES, SuiteRunner
