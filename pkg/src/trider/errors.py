class InputError(ValueError):
    """Malformed or inconsistent input: bad keys, dimension mismatches,
    schema violations, degrees out of range.

    Distinct from mathematical failures (identity violations, missing
    preimages), which are reported through return values.
    """
