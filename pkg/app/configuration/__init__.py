"""Collect or build all requirements for startup.

Containers register all dependencies of the command handlers. Before a
handler runs you **MUST** call wire_packages.

Examples:
    Wiring is done by :func:`app.create_app`, or by hand::

        >>> __containers__.wire_packages()
"""

from app.internal.services import Services
from app.pkg.models.core import Container, Containers

__all__ = ["__containers__"]

__containers__ = Containers(
    pkg_name=__name__,
    containers=[
        Container(container=Services),
    ],
)
