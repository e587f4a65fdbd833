"""Exception hierarchy shared by all toolkit modules.

Two branches matter for the CLI: InputError maps to exit code 2,
CapError to exit code 3.  Everything derives from ToolkitError so
callers can catch the whole family at once.
"""


class ToolkitError(Exception):
    """Base class of all errors raised by this package."""


class InputError(ToolkitError):
    """Invalid or inconsistent input."""


class CapError(ToolkitError):
    """A size or search cap was exceeded; the input was rejected, not truncated."""


class EmptyGenerators(InputError):
    pass


class NonPositiveGenerator(InputError):
    pass


class GcdNotOne(InputError):
    pass


class NotInMonoid(InputError):
    pass


class EmptyList(InputError):
    pass


class NotZeroSum(InputError):
    pass


class BoundTooSmall(InputError):
    pass


class CarrierNotClosed(InputError):
    pass


class ZeroConstantTerm(InputError):
    pass


class DegreeTooSmall(InputError):
    pass


class ConstantPolynomial(InputError):
    pass


class SizeCapExceeded(CapError):
    pass


class GroupTooLarge(CapError):
    pass


class CapExceeded(CapError):
    pass
