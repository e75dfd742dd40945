"""The two coefficient fields supported by the group code: the rationals and
prime fields F_p. Scalars are sympy domain elements of QQ or GF(p)."""

import re
import typing
import pytypeutils as tus
from sympy import isprime
from sympy.polys.domains import QQ, GF

import kmgroups.errors as errors

_RATIONAL = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$')

def parse_rational(text: str):
    """Parses a literal of the form 'a' or 'a/b' into an element of QQ

    Args:
        text (str): the literal

    Returns:
        QQ: the parsed value
    """
    tus.check(text=(text, str))
    match = _RATIONAL.match(text)
    if match is None:
        raise errors.ParseError(f'not a rational literal: {text!r}')
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise errors.ParseError(f'zero denominator in {text!r}')
    return QQ(num, den)

def format_rational(val) -> typing.Union[int, str]:
    """Renders an element of QQ for JSON output: an int when integral and
    the string 'a/b' otherwise"""
    num, den = int(QQ.numer(val)), int(QQ.denom(val))
    if den == 1:
        return num
    return f'{num}/{den}'

class FieldSpec:
    """Either the rationals or the prime field F_p.

    Attributes:
        p (int, optional): the characteristic, None for the rationals
        domain (sympy Domain): QQ or GF(p) with canonical representatives
    """
    def __init__(self, p: typing.Optional[int] = None):
        if p is not None:
            tus.check(p=(p, int))
            if not isprime(p):
                raise ValueError(f'F_p requires a prime p, got {p}')
            self.domain = GF(p, symmetric=False)
        else:
            self.domain = QQ
        self.p = p

    @classmethod
    def parse(cls, text: str) -> 'FieldSpec':
        """Parses 'Q' or 'Fp:<p>'"""
        tus.check(text=(text, str))
        text = text.strip()
        if text == 'Q':
            return cls()
        if text.startswith('Fp:'):
            try:
                p = int(text[3:])
            except ValueError:
                raise errors.ParseError(f'bad field literal {text!r}') from None
            if not isprime(p):
                raise errors.ParseError(f'{p} is not prime')
            return cls(p)
        raise errors.ParseError(f'field must be Q or Fp:<p>, got {text!r}')

    @property
    def is_rational(self) -> bool:
        """Returns True for the rationals"""
        return self.p is None

    @property
    def zero(self):
        """Returns the additive identity"""
        return self.domain.zero

    @property
    def one(self):
        """Returns the multiplicative identity"""
        return self.domain.one

    def reduce(self, val):
        """Maps a rational (or integer) into this field. Over F_p the
        denominator must be prime to p.

        Raises:
            IntegralityError: if the denominator is divisible by p
        """
        if self.p is None:
            return QQ.convert(val)
        if isinstance(val, self.domain.dtype):
            return val
        val = QQ.convert(val)
        num, den = int(QQ.numer(val)), int(QQ.denom(val))
        if den % self.p == 0:
            raise errors.IntegralityError(
                f'{num}/{den} has no reduction modulo {self.p}')
        return self.domain(num * pow(den, -1, self.p))

    def parse_scalar(self, text: str):
        """Parses an 'a/b' literal and reduces it into this field"""
        try:
            return self.reduce(parse_rational(text))
        except errors.IntegralityError as exc:
            raise errors.ParseError(str(exc)) from None

    def inverse(self, val):
        """Returns the inverse of a nonzero element"""
        if not val:
            raise ZeroDivisionError('zero has no inverse')
        return self.one / val

    def to_json(self, val) -> typing.Union[int, str]:
        """Renders a field element for JSON output"""
        if self.p is None:
            return format_rational(val)
        return int(val)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.p == other.p

    def __hash__(self):
        return hash(('FieldSpec', self.p))

    def __repr__(self):
        return 'Q' if self.p is None else f'Fp:{self.p}'

RATIONALS = FieldSpec()
