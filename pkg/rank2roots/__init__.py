from rank2roots.shared.config import init_settings

# Initialize settings first
settings = init_settings()

__version__ = settings.VERSION
