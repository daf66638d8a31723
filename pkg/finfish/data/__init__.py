from .cache_manager import CacheManager
from .tables import FISH_FIELDS, TREE_FIELDS, JointTable
