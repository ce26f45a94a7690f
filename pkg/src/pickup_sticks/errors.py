"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ContractViolation(RuntimeError):
    """A caller broke a precondition that is not a plain domain check."""


def require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)
