"""Resource budgets shared by the algebra, group and command line code."""

import os
import pytypeutils as tus

_ENV_PREFIX = 'KMGROUPS_'

class Limits:
    """The budgets that bound every potentially unbounded computation.
    Instances are immutable; use replace to derive a modified copy.

    Attributes:
        max_height (int): the largest root height the graded basis may be
            extended to
        max_component_dim (int): the largest number of bracket candidates
            considered for a single degree
        nilpotency_cap (int): how many times ad(e_alpha) may be applied
            before it must have vanished
        search_budget (int): iteration cap for Weyl group searches
        straighten_budget (int): rewriting steps allowed for a single
            product in the enveloping algebra
        serre_check_height (int): for non-symmetrizable matrices, the height
            up to which every degree is compared with the Serre presentation
    """
    __slots__ = ('max_height', 'max_component_dim', 'nilpotency_cap',
                 'search_budget', 'straighten_budget', 'serre_check_height')

    def __init__(self, max_height: int = 24, max_component_dim: int = 4096,
                 nilpotency_cap: int = 64, search_budget: int = 100000,
                 straighten_budget: int = 2000000, serre_check_height: int = 6):
        tus.check(
            max_height=(max_height, int),
            max_component_dim=(max_component_dim, int),
            nilpotency_cap=(nilpotency_cap, int),
            search_budget=(search_budget, int),
            straighten_budget=(straighten_budget, int),
            serre_check_height=(serre_check_height, int)
        )
        for name in self.__slots__:
            val = locals()[name]
            if val < 1:
                raise ValueError(f'{name} must be positive, got {val}')
            object.__setattr__(self, name, val)

    def __setattr__(self, name, value):
        raise AttributeError('Limits is immutable')

    def replace(self, **kwargs) -> 'Limits':
        """Returns a copy of these limits with the given attributes
        overridden"""
        vals = dict((name, getattr(self, name)) for name in self.__slots__)
        vals.update(kwargs)
        return Limits(**vals)

    @classmethod
    def from_env(cls, environ=None) -> 'Limits':
        """Loads limits from KMGROUPS_<NAME> environment variables, using the
        defaults for anything unset.

        Args:
            environ (dict, optional): the environment to read; defaults to
                os.environ
        """
        if environ is None:
            environ = os.environ
        kwargs = dict()
        for name in cls.__slots__:
            raw = environ.get(_ENV_PREFIX + name.upper())
            if raw is None:
                continue
            try:
                kwargs[name] = int(raw)
            except ValueError:
                raise ValueError(
                    f'{_ENV_PREFIX}{name.upper()} should be an integer, '
                    + f'got {raw!r}') from None
        return cls(**kwargs)

    def __repr__(self):
        parts = ', '.join(f'{n}={getattr(self, n)}' for n in self.__slots__)
        return f'Limits({parts})'

DEFAULT = Limits()
