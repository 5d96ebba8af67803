"""Models for dependency_injector containers."""

from dataclasses import dataclass, field
from typing import Callable

from dependency_injector import containers

__all__ = ["Container", "Containers"]


@dataclass(frozen=True)
class Container:
    """Model for contain single container.

    Attributes:
        container:
            dependency_injector declarative container callable object.
        packages:
            Array of packages to which the injector will be available.
            Default: ["app"]
    """

    container: Callable[..., containers.Container]

    packages: list[str] = field(default_factory=lambda: ["app"])


class WiredContainer(dict):
    """Wired container instances keyed by container class name."""

    def __getitem__(self, item: object) -> containers.Container:
        """Get container by its class.

        Examples:
            ::

                >>> from app.configuration import __containers__
                >>> from app.internal.services import Services

                >>> __containers__.wire_packages()
                >>> __containers__.wired_containers[Services]

        Returns:
            Container instance.
        """

        return super().__getitem__(item.__name__)


@dataclass(frozen=True)
class Containers:
    """Frozen dataclass model, for contains all declarative containers."""

    #: str: __name__ of the main package.
    pkg_name: str

    #: list[Container]: List of `Container` model.
    containers: list[Container]

    #: WiredContainer: Instances of the wired dependency_injector containers.
    wired_containers: WiredContainer = field(
        init=False,
        default_factory=WiredContainer,
    )

    def wire_packages(self, pkg_name: str | None = None, unwire: bool = False) -> None:
        """Wire packages to the declarative containers.

        Args:
            pkg_name:
                Optional ``__name__`` of running module.
            unwire:
                Optional bool parameter. If `True`, un wiring all containers.

        Notes:
            Handlers in ``app.internal.cli`` take their services through
            ``Provide[...]`` markers, which resolve only after wiring. Set
            ``pkg_name="tests"`` to use the injector from test modules too.

        Returns:
            None
        """
        pkg_name = pkg_name if pkg_name else self.pkg_name
        for container in self.containers:
            self.__wire(container, unwire, pkg_name)

    def __wire(self, container: Container, unwire: bool, pkg_name: str) -> containers.Container:
        """Wire one container, reusing the instance wired before."""

        container_name = container.container.__name__
        cont = self.wired_containers.get(container_name) or container.container()

        if unwire:
            cont.unwire()
            return cont

        cont.wire(packages=[pkg_name, *container.packages])
        self.wired_containers.setdefault(container_name, cont)
        return cont
