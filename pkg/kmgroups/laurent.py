"""Laurent polynomials in t over QQ or F_p and 2x2 matrices of them."""

import re
import typing
import pytypeutils as tus

import kmgroups.errors as errors
from kmgroups.fields import FieldSpec

_TERM = re.compile(r'^(?P<coeff>\d+(?:/\d+)?)?(?P<star>\*)?(?P<t>t(?:\^(?P<exp>-?\d+))?)?$')

class LaurentPoly:
    """A finite sum of c_n t^n with n in Z.

    Attributes:
        field (FieldSpec): where the coefficients live
        coeffs (dict[int, scalar]): exponent to nonzero coefficient, read
            only
    """
    __slots__ = ('field', 'coeffs')

    def __init__(self, field: FieldSpec, coeffs: typing.Dict[int, typing.Any] = None):
        self.field = field
        clean = dict()
        if coeffs:
            for exp, val in coeffs.items():
                val = field.reduce(val)
                if val:
                    clean[int(exp)] = val
        self.coeffs = clean

    @classmethod
    def monomial(cls, field: FieldSpec, coeff, exp: int = 0) -> 'LaurentPoly':
        """Returns coeff t^exp"""
        return cls(field, {exp: coeff})

    @classmethod
    def zero(cls, field: FieldSpec) -> 'LaurentPoly':
        """Returns 0"""
        return cls(field)

    @classmethod
    def one(cls, field: FieldSpec) -> 'LaurentPoly':
        """Returns 1"""
        return cls(field, {0: field.one})

    @classmethod
    def parse(cls, text: str, field: FieldSpec) -> 'LaurentPoly':
        """Parses literals such as '1+2t^-1-t^2', '3/2*t' or '0'"""
        tus.check(text=(text, str), field=(field, FieldSpec))
        compact = text.replace(' ', '')
        if not compact:
            raise errors.ParseError('empty Laurent polynomial')
        # split before every sign that does not belong to an exponent
        pieces = re.split(r'(?<!\^)(?=[+-])', compact)
        total = dict()
        for piece in pieces:
            if not piece:
                continue
            sign = 1
            if piece[0] in '+-':
                sign = -1 if piece[0] == '-' else 1
                piece = piece[1:]
            match = _TERM.match(piece)
            if (match is None or not piece or (match.group('star') and not match.group('t'))
                    or (match.group('star') and not match.group('coeff'))):
                raise errors.ParseError(f'bad Laurent term {piece!r} in {text!r}')
            coeff = field.parse_scalar(match.group('coeff') or '1')
            exp = 0
            if match.group('t'):
                exp = int(match.group('exp')) if match.group('exp') is not None else 1
            total[exp] = total.get(exp, field.zero) + (coeff if sign > 0 else -coeff)
        return cls(field, total)

    @property
    def is_zero(self) -> bool:
        """Returns True for 0"""
        return not self.coeffs

    @property
    def valuation(self) -> typing.Optional[int]:
        """Returns the lowest exponent (None for 0)"""
        return min(self.coeffs) if self.coeffs else None

    @property
    def degree(self) -> typing.Optional[int]:
        """Returns the highest exponent (None for 0)"""
        return max(self.coeffs) if self.coeffs else None

    @property
    def is_monomial(self) -> bool:
        """Returns True for c t^n with c != 0"""
        return len(self.coeffs) == 1

    def coefficient(self, exp: int):
        """Returns the coefficient of t^exp"""
        return self.coeffs.get(exp, self.field.zero)

    def _check_peer(self, other):
        if not isinstance(other, LaurentPoly):
            raise TypeError(f'expected LaurentPoly, got {type(other)}')
        if other.field != self.field:
            raise ValueError(f'mixed fields {self.field} and {other.field}')

    def __add__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        self._check_peer(other)
        acc = dict(self.coeffs)
        for exp, val in other.coeffs.items():
            acc[exp] = acc.get(exp, self.field.zero) + val
        return LaurentPoly(self.field, acc)

    def __neg__(self) -> 'LaurentPoly':
        return LaurentPoly(self.field, dict((e, -v) for e, v in self.coeffs.items()))

    def __sub__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        return self + (-other)

    def __mul__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        self._check_peer(other)
        acc = dict()
        for e1, v1 in self.coeffs.items():
            for e2, v2 in other.coeffs.items():
                acc[e1 + e2] = acc.get(e1 + e2, self.field.zero) + v1 * v2
        return LaurentPoly(self.field, acc)

    def scale(self, val) -> 'LaurentPoly':
        """Returns val times this polynomial"""
        val = self.field.reduce(val)
        return LaurentPoly(self.field, dict((e, val * v) for e, v in self.coeffs.items()))

    def shift(self, exp: int) -> 'LaurentPoly':
        """Returns t^exp times this polynomial"""
        return LaurentPoly(self.field, dict((e + exp, v) for e, v in self.coeffs.items()))

    def unit_inverse(self) -> 'LaurentPoly':
        """Returns the inverse of a monomial, the only units"""
        if not self.is_monomial:
            raise ValueError(f'{self} is not a unit')
        (exp, val), = self.coeffs.items()
        return LaurentPoly(self.field, {-exp: self.field.inverse(val)})

    def __eq__(self, other):
        return (isinstance(other, LaurentPoly) and other.field == self.field
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def to_text(self) -> str:
        """Renders the polynomial in the literal format, lowest exponent first"""
        if not self.coeffs:
            return '0'
        out = []
        for exp in sorted(self.coeffs):
            val = self.field.to_json(self.coeffs[exp])
            text = str(val)
            negative = text.startswith('-')
            mag = text[1:] if negative else text
            if exp == 0:
                term = mag
            else:
                power = 't' if exp == 1 else f't^{exp}'
                term = power if mag == '1' else f'{mag}*{power}'
            if out:
                out.append(('-' if negative else '+') + term)
            else:
                out.append(('-' if negative else '') + term)
        return ''.join(out)

    def __repr__(self):
        return f'LaurentPoly({self.to_text()!r}, {self.field!r})'

class LaurentMat:
    """A 2x2 matrix over the Laurent polynomials.

    Attributes:
        entries (tuple[LaurentPoly]): row-major (a, b, c, d)
    """
    __slots__ = ('entries',)

    def __init__(self, entries: typing.Sequence[LaurentPoly]):
        tus.check_listlike(entries=(entries, LaurentPoly, 4))
        fields_seen = set(e.field for e in entries)
        if len(fields_seen) != 1:
            raise ValueError('all entries must share a field')
        self.entries = tuple(entries)

    @property
    def field(self) -> FieldSpec:
        """Returns the coefficient field"""
        return self.entries[0].field

    @classmethod
    def from_scalars(cls, field: FieldSpec, rows: typing.Sequence[typing.Sequence]) -> 'LaurentMat':
        """Builds a constant matrix from [[a, b], [c, d]]"""
        return cls([LaurentPoly.monomial(field, v) for row in rows for v in row])

    @classmethod
    def identity(cls, field: FieldSpec) -> 'LaurentMat':
        """Returns I"""
        one, zero = LaurentPoly.one(field), LaurentPoly.zero(field)
        return cls([one, zero, zero, one])

    @classmethod
    def parse(cls, text: str, field: FieldSpec) -> 'LaurentMat':
        """Parses four ';'-separated entries, row-major"""
        tus.check(text=(text, str))
        parts = text.split(';')
        if len(parts) != 4:
            raise errors.ParseError(f'expected four entries separated by ";", got {len(parts)}')
        return cls([LaurentPoly.parse(p, field) for p in parts])

    def __getitem__(self, key) -> LaurentPoly:
        i, j = key
        return self.entries[2 * i + j]

    def __add__(self, other: 'LaurentMat') -> 'LaurentMat':
        return LaurentMat([a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: 'LaurentMat') -> 'LaurentMat':
        return LaurentMat([a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> 'LaurentMat':
        return LaurentMat([-a for a in self.entries])

    def __mul__(self, other: 'LaurentMat') -> 'LaurentMat':
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return LaurentMat([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])

    def scale(self, val) -> 'LaurentMat':
        """Returns val times this matrix"""
        return LaurentMat([e.scale(val) for e in self.entries])

    def det(self) -> LaurentPoly:
        """Returns ad - bc"""
        a, b, c, d = self.entries
        return a * d - b * c

    def trace(self) -> LaurentPoly:
        """Returns a + d"""
        return self.entries[0] + self.entries[3]

    def is_special(self) -> bool:
        """Returns True if the determinant is 1"""
        return self.det() == LaurentPoly.one(self.field)

    def inverse(self) -> 'LaurentMat':
        """Returns the inverse of a matrix whose determinant is a monomial"""
        det = self.det()
        if not det.is_monomial:
            raise errors.NotInGroup(f'determinant {det.to_text()} is not a unit')
        inv = det.unit_inverse()
        a, b, c, d = self.entries
        return LaurentMat([d * inv, -b * inv, -c * inv, a * inv])

    def __eq__(self, other):
        return isinstance(other, LaurentMat) and other.entries == self.entries

    def __hash__(self):
        return hash(self.entries)

    def to_text(self) -> str:
        """Renders the matrix in the literal format"""
        return ';'.join(e.to_text() for e in self.entries)

    def __repr__(self):
        return f'LaurentMat({self.to_text()!r})'
