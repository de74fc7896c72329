class NonUnitConstantTerm(ValueError):
    def __init__(self, constant_term: int) -> None:
        super().__init__(
            f'Unable to invert a series with constant term {constant_term}. '
            'Only series starting with +1 or -1 have an inverse over the integers.'
        )


class UnsupportedLevel(ValueError):
    def __init__(self, k: int) -> None:
        super().__init__(f'No closed form is known for f_(m,k) with k={k}. Supported levels are 0, 1 and 2.')


class IndexOutOfRange(IndexError):
    pass


class TruncationMismatch(ValueError):
    pass


class NoConsistentConvention(RuntimeError):
    pass
