from dataclasses import dataclass


@dataclass(frozen=True)
class Budget:
    """Size limits for every enumeration in the package."""

    field_size: int = 10**7          # largest q^m we will enumerate
    table_size: int = 2**17          # log/exp tables are built up to this size
    add_table_size: int = 1024       # full addition table up to this size
    jacobian_order: int = 10**5
    place_search: int = 4000         # places examined by collision searches
    function_search: int = 20000     # candidates examined by bounded function searches
    cover_lpoly_genus: int = 8       # largest cover genus for fiber-count L-polynomials


DEFAULT = Budget()
