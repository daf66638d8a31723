from .mseries import MSeries, SeriesRing, solve_fixed_point
from .catalog import SeriesCatalog
