# synctrans utilities
from .config import get_config_value, load_config
from .logger import get_logger

__all__ = ['load_config', 'get_config_value', 'get_logger']
