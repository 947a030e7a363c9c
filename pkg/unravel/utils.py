from .exceptions import ParseError


def format_vector(values, sep=','):
    return sep.join(str(v) for v in values)


def parse_ranks(text):
    """Parse a comma-separated certificate such as ``0,1,0``."""
    try:
        ranks = tuple(int(part) for part in text.split(',') if part.strip() != '')
    except ValueError:
        raise ParseError('certificate', f'ranks must be integers, got {text!r}')
    if any(r < 0 for r in ranks):
        raise ParseError('certificate', 'ranks must be non-negative')
    return ranks


def sorted_desc(values):
    return tuple(sorted(values, reverse=True))


def lift_base(n):
    """Base of the exponential weight lifting used for LexiMin."""
    return n + 2
