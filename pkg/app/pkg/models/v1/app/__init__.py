"""Models for application abstraction."""

# ruff: noqa

from app.pkg.models.v1.app.bench import *
from app.pkg.models.v1.app.enums import *
from app.pkg.models.v1.app.match import *
from app.pkg.models.v1.app.oracle import *
from app.pkg.models.v1.app.stats import *
from app.pkg.models.v1.app.validation import *
